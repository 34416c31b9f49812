//! `U`-orbits of patterns under `A ↦ A.u`, their stabilizers and families,
//! the main/minor/core structure of a pattern, and orbit characters `ψ_A`.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::cyclo::{ClassFunction, ClassLayout, Cyclo, CycloInt};
use crate::ffield::{Field, Fq};
use crate::linalg::Matrix;
use crate::matgroup::{ClassPartition, Coords, G2Syl, GroupError};
use crate::monomial::{f_coords, kappa, DotAction, Pattern, J, S12, S13, S15, S16, S17, S23};
use crate::report::Report;

/// The five families of orbit modules, keyed by the rightmost nonzero
/// entry of the first row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    F12,
    F3,
    F4,
    F5,
    F6,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::F12, Family::F3, Family::F4, Family::F5, Family::F6];

    /// Size of every orbit in the family.
    pub fn orbit_size(self, q: u64) -> u64 {
        match self {
            Family::F6 => q.pow(3),
            Family::F5 | Family::F4 => q.pow(2),
            Family::F3 => q,
            Family::F12 => 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::F12 => "F12",
            Family::F3 => "F3",
            Family::F4 => "F4",
            Family::F5 => "F5",
            Family::F6 => "F6",
        };
        f.write_str(s)
    }
}

pub fn family_of(a: &Pattern<'_>) -> Family {
    if !a.a17().is_zero() {
        Family::F6
    } else if !a.a16().is_zero() {
        Family::F5
    } else if !a.a15().is_zero() {
        Family::F4
    } else if !a.a13().is_zero() {
        Family::F3
    } else {
        Family::F12
    }
}

/// An orbit with its stabilizer listed element by element.
#[derive(Debug, Clone)]
pub struct OrbitModule<'f> {
    pub seed: Pattern<'f>,
    pub orbit: Vec<Pattern<'f>>,
    pub stabilizer: Vec<Coords<'f>>,
    pub family: Family,
}

/// Serialized summary of an orbit.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitSummary<'f> {
    pub seed: Pattern<'f>,
    pub family: Family,
    pub orbit_size: usize,
    pub stab_size: usize,
}

impl<'f> OrbitModule<'f> {
    pub fn summary(&self) -> OrbitSummary<'f> {
        OrbitSummary {
            seed: self.seed,
            family: self.family,
            orbit_size: self.orbit.len(),
            stab_size: self.stabilizer.len(),
        }
    }
}

fn generator_actions<'f>(group: &G2Syl<'f>) -> Vec<DotAction<'f>> {
    group.root_generators().iter().map(|g| DotAction::new(group, g)).collect()
}

/// Breadth-first closure of `{seed}` under the root generators.
pub fn orbit_bfs<'f>(group: &G2Syl<'f>, seed: &Pattern<'f>) -> Vec<Pattern<'f>> {
    let gens = generator_actions(group);
    let mut seen = HashSet::from([seed.index()]);
    let mut out = vec![*seed];
    let mut queue = VecDeque::from([*seed]);
    while let Some(a) = queue.pop_front() {
        for g in &gens {
            let b = g.apply(&a);
            if seen.insert(b.index()) {
                out.push(b);
                queue.push_back(b);
            }
        }
    }
    out
}

/// `Stab_U(A)` by testing every element of `U`.
pub fn stabilizer_brute<'f>(
    group: &G2Syl<'f>,
    a: &Pattern<'f>,
    budget: u64,
) -> Result<Vec<Coords<'f>>, GroupError> {
    Ok(group.all_coords(budget)?.filter(|u| DotAction::new(group, u).apply(a) == *a).collect())
}

/// The orbit of `a` with its brute-force stabilizer.
pub fn orbit_of<'f>(group: &G2Syl<'f>, a: &Pattern<'f>, budget: u64) -> Result<OrbitModule<'f>, GroupError> {
    let stabilizer = stabilizer_brute(group, a, budget)?;
    Ok(OrbitModule { seed: *a, orbit: orbit_bfs(group, a), stabilizer, family: family_of(a) })
}

/// The partition of `V` into orbits.
#[derive(Debug, Clone)]
pub struct OrbitPartition {
    /// Orbit number of each pattern index.
    pub orbit_of: Vec<u32>,
    /// Members of each orbit as pattern indices, ascending; orbits are
    /// ordered by smallest member.
    pub orbits: Vec<Vec<u32>>,
}

impl OrbitPartition {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }
}

/// All orbits of `V`, by breadth-first search from each unvisited pattern.
pub fn orbit_partition(group: &G2Syl<'_>, budget: u64) -> Result<OrbitPartition, GroupError> {
    group.check_budget(group.order(), budget)?;
    let field = group.field();
    let n = group.order() as usize;
    let gens = generator_actions(group);
    let mut orbit_of = vec![u32::MAX; n];
    let mut orbits = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if orbit_of[start] != u32::MAX {
            continue;
        }
        let id = orbits.len() as u32;
        orbit_of[start] = id;
        let mut members = vec![start as u32];
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            let a = Pattern::from_index(field, x);
            for g in &gens {
                let y = g.apply(&a).index();
                if orbit_of[y] == u32::MAX {
                    orbit_of[y] = id;
                    members.push(y as u32);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }
    Ok(OrbitPartition { orbit_of, orbits })
}

/// A basis of the patterns fixed by `u`: the kernel of `M_u − I` for the
/// matrix of `A ↦ A.u`.
pub fn fixed_basis<'f>(group: &G2Syl<'f>, u: &Coords<'f>) -> Vec<Pattern<'f>> {
    let field = group.field();
    let m = DotAction::new(group, u).matrix();
    let rows: Vec<Vec<Fq<'f>>> = (0..6)
        .map(|s| (0..6).map(|r| if r == s { m[s][r] - field.one() } else { m[s][r] }).collect())
        .collect();
    Matrix::from_rows(&rows)
        .kernel()
        .into_iter()
        .map(|v| Pattern::new(std::array::from_fn(|s| v[s])))
        .collect()
}

/// Calls `f` on every `F_q`-combination of `basis`.
pub fn for_each_in_span<'f>(field: &'f Field, basis: &[Pattern<'f>], f: &mut impl FnMut(&Pattern<'f>)) {
    let elems: Vec<Fq<'f>> = field.elements().collect();
    let multiples: Vec<Vec<Pattern<'f>>> =
        basis.iter().map(|b| elems.iter().map(|&c| b.scale(c)).collect()).collect();
    fn rec<'f>(level: usize, acc: Pattern<'f>, m: &[Vec<Pattern<'f>>], f: &mut impl FnMut(&Pattern<'f>)) {
        if level == m.len() {
            f(&acc);
            return;
        }
        for x in &m[level] {
            rec(level + 1, acc + *x, m, f);
        }
    }
    rec(0, Pattern::zero(field), &multiples, f);
}

/// The patterns fixed by `u`.
pub fn fixed_patterns<'f>(group: &G2Syl<'f>, u: &Coords<'f>) -> Vec<Pattern<'f>> {
    let mut out = Vec::new();
    for_each_in_span(group.field(), &fixed_basis(group, u), &mut |a| out.push(*a));
    out
}

/// `|Stab_U(A)|` for every pattern index, accumulated from the fixed
/// point sets of all `u ∈ U`.
pub fn stabilizer_sizes(group: &G2Syl<'_>, budget: u64) -> Result<Vec<u64>, GroupError> {
    let mut sizes = vec![0u64; group.order() as usize];
    for u in group.all_coords(budget)? {
        for_each_in_span(group.field(), &fixed_basis(group, &u), &mut |a| sizes[a.index()] += 1);
    }
    Ok(sizes)
}

/// The stabilizer of `a` as the parametrised set of its family, one element
/// per parameter tuple.
pub fn stabilizer_closed_form<'f>(group: &G2Syl<'f>, a: &Pattern<'f>) -> Vec<Coords<'f>> {
    let field = group.field();
    let z = field.zero();
    let els: Vec<Fq<'f>> = field.elements().collect();
    let mut out = Vec::new();
    match family_of(a) {
        Family::F6 => {
            let inv17 = a.a17().inv().expect("nonzero");
            for &t1 in &els {
                let t3 = -(a.a16() * t1) * inv17;
                let t4 = (a.a15() * t1 * 2 + a.a16() * t1 * t1) * inv17;
                for &t5 in &els {
                    for &t6 in &els {
                        out.push([t1, z, t3, t4, t5, t6]);
                    }
                }
            }
        }
        Family::F5 => {
            let inv16 = a.a16().inv().expect("nonzero");
            for &t2 in &els {
                for &t3 in &els {
                    let t4 = (-(a.a13() * t2) - a.a15() * t3 * 2) * inv16;
                    for &t5 in &els {
                        for &t6 in &els {
                            out.push([z, t2, t3, t4, t5, t6]);
                        }
                    }
                }
            }
        }
        Family::F4 => {
            let inv = (a.a15() * 2).inv().expect("nonzero");
            for &t2 in &els {
                let t3 = -(a.a13() * t2) * inv;
                for &t4 in &els {
                    for &t5 in &els {
                        for &t6 in &els {
                            out.push([z, t2, t3, t4, t5, t6]);
                        }
                    }
                }
            }
        }
        Family::F3 => {
            for idx in 0..group.order() as usize {
                let t = group.coords_of_index(idx);
                if t[1].is_zero() {
                    out.push(t);
                }
            }
        }
        Family::F12 => out.extend((0..group.order() as usize).map(|i| group.coords_of_index(i))),
    }
    out
}

/// Set equality between the parametrised stabilizer and the brute-force one.
pub fn stabilizer_matches_closed_form<'f>(
    group: &G2Syl<'f>,
    a: &Pattern<'f>,
    budget: u64,
) -> Result<Result<(), String>, GroupError> {
    let brute = stabilizer_brute(group, a, budget)?;
    let mut formula: Vec<usize> = stabilizer_closed_form(group, a).iter().map(|t| group.index(t)).collect();
    let n = formula.len();
    formula.sort_unstable();
    formula.dedup();
    if formula.len() != n {
        return Ok(Err(format!("{a:?}: parametrisation repeats elements")));
    }
    let brute: Vec<usize> = brute.iter().map(|t| group.index(t)).collect();
    if let Some(x) = formula.iter().find(|x| brute.binary_search(x).is_err()) {
        return Ok(Err(format!("{a:?}: {:?} is not in the stabilizer", group.coords_of_index(*x))));
    }
    if let Some(x) = brute.iter().find(|x| formula.binary_search(x).is_err()) {
        return Ok(Err(format!("{a:?}: stabilizer element {:?} is missing", group.coords_of_index(*x))));
    }
    Ok(Ok(()))
}

/// The unique core pattern in the orbit of `a`.
pub fn canonical_core<'f>(a: &Pattern<'f>) -> Pattern<'f> {
    let field = a.field();
    let z = Pattern::zero(field);
    match family_of(a) {
        Family::F6 => {
            let inv = a.a17().inv().expect("nonzero");
            let c12 = a.a12() + (a.a13() * a.a16() + a.a15() * a.a15()) * inv;
            z.with(S12, c12).with(S17, a.a17()).with(S23, a.a23())
        }
        Family::F5 => {
            let inv = a.a16().inv().expect("nonzero");
            z.with(S13, a.a13() + a.a15() * a.a15() * inv).with(S16, a.a16()).with(S23, a.a23())
        }
        Family::F4 => z.with(S15, a.a15()).with(S23, a.a23()),
        Family::F3 => z.with(S13, a.a13()).with(S23, a.a23()),
        Family::F12 => *a,
    }
}

/// Position sets and flags describing the shape of a pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternStructure<'f> {
    pub main: Vec<(usize, usize)>,
    pub minor: Vec<(usize, usize)>,
    pub core: Vec<(usize, usize)>,
    pub verge: Pattern<'f>,
    pub verge1: Pattern<'f>,
    pub is_core: bool,
    pub is_staircase: bool,
    pub is_hook_separated: bool,
}

/// The hook `H_i = {(a,b) ∈ J : b = i or a = 9 − i}`.
pub fn hook(i: usize) -> Vec<(usize, usize)> {
    J.iter().copied().filter(|&(a, b)| b == i || a + i == 9).collect()
}

fn slot_of(pos: (usize, usize)) -> usize {
    match pos {
        (1, 2) => S12,
        (1, 3) => S13,
        (1, 4) | (1, 5) => S15,
        (1, 6) => S16,
        (1, 7) => S17,
        (2, 3) => S23,
        _ => unreachable!("position outside J"),
    }
}

pub fn structure_of<'f>(a: &Pattern<'f>) -> PatternStructure<'f> {
    let field = a.field();
    let mut main = Vec::new();
    for row in [1, 2] {
        if let Some(&p) = J.iter().filter(|&&(i, j)| i == row && !a.entry(i, j).is_zero()).last() {
            main.push(p);
        }
    }
    let minor: Vec<(usize, usize)> = J
        .iter()
        .copied()
        .filter(|&(i, j)| j <= 4 && main.contains(&(i, 9 - j)))
        .collect();
    let mut core = main.clone();
    core.extend(&minor);
    core.sort_unstable();
    let keep = |ps: &[(usize, usize)]| {
        ps.iter().fold(Pattern::zero(field), |acc, &p| acc.with(slot_of(p), a.get(slot_of(p))))
    };
    let verge = keep(&main);
    let verge1 = keep(&main.iter().copied().filter(|p| p.0 == 1).collect::<Vec<_>>());
    let is_core = a.support().iter().all(|p| core.contains(p));
    let cols: HashSet<usize> = main.iter().map(|p| p.1).collect();
    let is_staircase = cols.len() == main.len();
    let is_hook_separated =
        (1..=8).all(|i| hook(i).iter().filter(|p| main.contains(p)).count() <= 1);
    PatternStructure { main, minor, core, verge, verge1, is_core, is_staircase, is_hook_separated }
}

/// `ψ_A(u) = Σ_{C ∈ orbit, C.u = C} χ_C(u)` on each conjugacy class.
pub fn psi<'f>(
    group: &G2Syl<'f>,
    orbit: &[Pattern<'f>],
    classes: &ClassPartition,
    layout: &Arc<ClassLayout>,
) -> ClassFunction {
    let p = group.field().p();
    let values = classes
        .classes
        .iter()
        .map(|c| {
            let u = group.coords_of_index(c.rep);
            let act = DotAction::new(group, &u);
            let fu = f_coords(&u);
            let mut acc = CycloInt::zero(p);
            for b in orbit {
                if act.apply(b) == *b {
                    acc.add_zeta(kappa(b, &fu).trace() as i64, 1);
                }
            }
            acc.to_cyclo()
        })
        .collect();
    ClassFunction::new(layout.clone(), values).expect("one value per class")
}

/// Checks `g·[B] = θ(s)·[C]` in the group algebra, where
/// `[B] = |U|⁻¹ Σ_y conj(χ_B(y)) y`: compares the coefficient of every `z`.
pub fn left_multiple_holds<'f>(
    group: &G2Syl<'f>,
    g: &Coords<'f>,
    b: &Pattern<'f>,
    c: &Pattern<'f>,
    s: Fq<'f>,
    budget: u64,
) -> Result<bool, GroupError> {
    let p = group.field().p() as i64;
    let g_inv = group.inv_coords(g);
    let st = s.trace() as i64;
    for z in group.all_coords(budget)? {
        let lhs = -(kappa(b, &f_coords(&group.mul_coords(&g_inv, &z))).trace() as i64);
        let rhs = st - kappa(c, &f_coords(&z)).trace() as i64;
        if (lhs - rhs).rem_euclid(p) != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For `A = A12 e12 + A13 e13 + A23 e23` with `A13 ≠ 0` and `t1 A13 = A23`:
/// left multiplication by `y1(t1)` carries the orbit of `A` onto the orbit
/// of `A − A23 e23`, commutes with the right action, and sends each `[B]`
/// to `χ_{g.B}(g)[g.B]`.
pub fn check_row_operation_isomorphism<'f>(
    group: &G2Syl<'f>,
    a: &Pattern<'f>,
    budget: u64,
) -> Result<Result<(), String>, GroupError> {
    let field = group.field();
    let t1 = a.a23() * a.a13().inv().map_err(|_| GroupError::BadIndex(0))?;
    let g = group.root_coords(1, t1);
    let gm = group.closed_form(&g);
    let orbit = orbit_bfs(group, a);
    let target = orbit_bfs(group, &a.with(S23, field.zero()));
    let mut image: Vec<usize> =
        orbit.iter().map(|b| crate::monomial::act_left(&gm, b).index()).collect();
    image.sort_unstable();
    let n = image.len();
    image.dedup();
    let mut tgt: Vec<usize> = target.iter().map(Pattern::index).collect();
    tgt.sort_unstable();
    if image.len() != n || image != tgt {
        return Ok(Err(format!("{a:?}: row operation does not map the orbit onto its target")));
    }
    for u in group.all_coords(budget)? {
        let act = DotAction::new(group, &u);
        for b in &orbit {
            let l = crate::monomial::act_left_coords(&g, &act.apply(b));
            let r = act.apply(&crate::monomial::act_left_coords(&g, b));
            if l != r {
                return Ok(Err(format!("{a:?}: g.(B.u) != (g.B).u for B = {b:?}, u = {u:?}")));
            }
        }
    }
    for b in &orbit {
        let gb = crate::monomial::act_left_coords(&g, b);
        let s = kappa(&gb, &f_coords(&g));
        if !left_multiple_holds(group, &g, b, &gb, s, budget)? {
            return Ok(Err(format!("{a:?}: twist fails for B = {b:?}")));
        }
    }
    Ok(Ok(()))
}

/// Orbit, family and stabilizer checks over all of `V`.
pub fn verify_orbits(group: &G2Syl<'_>, budget: u64) -> Result<Report, GroupError> {
    let field = group.field();
    let q = group.q();
    let mut r = Report::new("orbits");
    let part = orbit_partition(group, budget)?;
    let sizes = stabilizer_sizes(group, budget)?;

    let mut fam_ok = Ok(());
    let mut os_ok = Ok(());
    let mut core_ok = Ok(());
    for orbit in &part.orbits {
        let seed = Pattern::from_index(field, orbit[0] as usize);
        let fam = family_of(&seed);
        for &m in orbit {
            let b = Pattern::from_index(field, m as usize);
            if family_of(&b) != fam && fam_ok.is_ok() {
                fam_ok = Err(format!("{seed:?} and {b:?} share an orbit across families"));
            }
            if orbit.len() as u64 * sizes[m as usize] != group.order() && os_ok.is_ok() {
                os_ok = Err(format!("{b:?}: orbit {} stabilizer {}", orbit.len(), sizes[m as usize]));
            }
        }
        if orbit.len() as u64 != fam.orbit_size(q) && fam_ok.is_ok() {
            fam_ok = Err(format!("{seed:?} in {fam} has orbit size {}", orbit.len()));
        }
        let cores: Vec<Pattern> = orbit
            .iter()
            .map(|&m| Pattern::from_index(field, m as usize))
            .filter(|b| structure_of(b).is_core)
            .collect();
        let core = canonical_core(&seed);
        let expected_staircase = fam != Family::F3 || seed.a23().is_zero();
        let unique = cores.len() == 1 && cores[0] == core;
        let staircase = structure_of(&core).is_staircase == expected_staircase;
        if (!unique || !staircase || part.orbit_of[core.index()] != part.orbit_of[seed.index()])
            && core_ok.is_ok()
        {
            core_ok = Err(format!("{seed:?}: core patterns {cores:?}, closed form {core:?}"));
        }
    }
    r.check_result("family orbit sizes", fam_ok);
    r.check_result("orbit-stabilizer", os_ok);
    r.check_result("unique core pattern per orbit", core_ok);

    let mut table_ok = Ok(());
    for a in Pattern::all(field) {
        let param: Vec<Coords> = stabilizer_closed_form(group, &a);
        let mut idx: Vec<usize> = param.iter().map(|t| group.index(t)).collect();
        idx.sort_unstable();
        idx.dedup();
        let all_fix = param.iter().all(|u| DotAction::new(group, u).apply(&a) == a);
        if (idx.len() != param.len() || !all_fix || idx.len() as u64 != sizes[a.index()]) && table_ok.is_ok() {
            table_ok = Err(format!(
                "{a:?}: parametrised set of {} elements, brute-force stabilizer {}",
                idx.len(),
                sizes[a.index()]
            ));
        }
    }
    r.check_result("stabilizers equal the parametrised sets", table_ok);
    Ok(r)
}

/// Number of orbits per family.
pub fn family_orbit_counts(field: &Field, part: &OrbitPartition) -> Vec<(Family, usize)> {
    Family::ALL
        .iter()
        .map(|&f| {
            let n = part
                .orbits
                .iter()
                .filter(|o| family_of(&Pattern::from_index(field, o[0] as usize)) == f)
                .count();
            (f, n)
        })
        .collect()
}

/// Inner products of orbit characters at one `q`.
pub fn verify_inner_products(group: &G2Syl<'_>, budget: u64) -> Result<Report, GroupError> {
    let field = group.field();
    let q = group.q() as i64;
    let p = field.p();
    let mut r = Report::new("orbit-characters");
    let classes = crate::matgroup::conjugacy_classes(group, budget)?;
    let layout = classes.layout(group, "U");
    let psi_of = |a: &Pattern| psi(group, &orbit_bfs(group, a), &classes, &layout);
    let ip = |f: &ClassFunction, g: &ClassFunction| crate::cyclo::inner_product(f, g).expect("same layout");
    let units: Vec<Fq> = field.units().collect();
    let elems: Vec<Fq> = field.elements().collect();
    let z = Pattern::zero(field);

    let mut self_ok = Ok(());
    let mut cross_ok = Ok(());
    for &c15 in &units {
        let fs: Vec<ClassFunction> = elems.iter().map(|&c23| psi_of(&z.with(S15, c15).with(S23, c23))).collect();
        for (i, fi) in fs.iter().enumerate() {
            for (j, fj) in fs.iter().enumerate() {
                let want = if i == j { 2 * q - 1 } else { q - 1 };
                let got = ip(fi, fj);
                if got != Cyclo::from_int(p, want) {
                    let e = format!("A15={} A23 {}/{}: {got} != {want}", c15.value(), elems[i].value(), elems[j].value());
                    if i == j && self_ok.is_ok() {
                        self_ok = Err(e);
                    } else if i != j && cross_ok.is_ok() {
                        cross_ok = Err(e);
                    }
                }
            }
        }
    }
    r.check_result("F4 hook-separated self product 2q-1", self_ok);
    r.check_result("F4 cores with different A23 give q-1", cross_ok);

    let mut f3_ok = Ok(());
    for &c13 in &units {
        for &c12 in &elems {
            let a = z.with(S13, c13).with(S12, c12);
            let f = psi_of(&a);
            if ip(&f, &f) != Cyclo::one(p) && f3_ok.is_ok() {
                f3_ok = Err(format!("{a:?}"));
            }
        }
    }
    r.check_result("F3 cores with A23 = 0 are irreducible", f3_ok);

    let mut lin_ok = Ok(());
    for &c12 in &elems {
        for &c23 in &elems {
            let a = z.with(S12, c12).with(S23, c23);
            let f = psi_of(&a);
            if ip(&f, &f) != Cyclo::one(p) && lin_ok.is_ok() {
                lin_ok = Err(format!("{a:?}"));
            }
        }
    }
    r.check_result("F12 patterns are linear characters", lin_ok);
    Ok(r)
}
