//! The superclass partition of `U`, the supermodules spanned by pattern
//! families, their characters, and a checker for the supercharacter theory
//! axioms.
//!
//! Superclasses are recognised from coordinates. The set `C2(t2)` is the
//! union of two kinds of pieces, `y2(t2)y4(t4)` for `t4 ≠ 0` and
//! `y2(t2)y5(t5)`; [`c2_piece`] reports which one an element lies in.
//! Supercharacters are evaluated at every element by summing `χ_A(u)` over
//! the patterns fixed by `u`, grouped by supermodule.

use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::cyclo::{inner_product, theta, ClassFunction, ClassLayout, Cyclo, CycloInt};
use crate::ffield::{Field, Fq};
use crate::matgroup::{conjugacy_classes, ClassPartition, Coords, G2Syl, GroupError};
use crate::monomial::{f_coords, kappa, DotAction, Pattern, S12, S13, S15, S16, S17, S23};
use crate::orbits::{fixed_basis, for_each_in_span};
use crate::report::Report;

/// A superclass, with parameters stored as field element encodings
/// (all nonzero).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SuperclassId {
    C0,
    C1(u32),
    C2(u32),
    C12(u32, u32),
    C3(u32),
    C4(u32),
    C5(u32),
    C6(u32),
}

impl SuperclassId {
    /// All superclasses in column order.
    pub fn all(q: u32) -> Vec<SuperclassId> {
        use SuperclassId::*;
        let units = 1..q;
        let mut v = vec![C0];
        v.extend(units.clone().map(C1));
        v.extend(units.clone().map(C2));
        v.extend(units.clone().flat_map(|a| (1..q).map(move |b| C12(a, b))));
        v.extend(units.clone().map(C3));
        v.extend(units.clone().map(C4));
        v.extend(units.clone().map(C5));
        v.extend(units.map(C6));
        v
    }

    /// Position in [`SuperclassId::all`].
    pub fn index(self, q: u32) -> usize {
        use SuperclassId::*;
        let n = (q - 1) as usize;
        let i = |t: u32| (t - 1) as usize;
        match self {
            C0 => 0,
            C1(t) => 1 + i(t),
            C2(t) => 1 + n + i(t),
            C12(a, b) => 1 + 2 * n + i(a) * n + i(b),
            C3(t) => 1 + 2 * n + n * n + i(t),
            C4(t) => 1 + 3 * n + n * n + i(t),
            C5(t) => 1 + 4 * n + n * n + i(t),
            C6(t) => 1 + 5 * n + n * n + i(t),
        }
    }

    pub fn size(self, q: u64) -> u64 {
        use SuperclassId::*;
        match self {
            C0 | C6(_) => 1,
            C5(_) => q,
            C4(_) => q * q,
            C3(_) => q.pow(3),
            C1(_) | C2(_) | C12(..) => q.pow(4),
        }
    }
}

impl fmt::Display for SuperclassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SuperclassId::*;
        match self {
            C0 => write!(f, "C0"),
            C1(t) => write!(f, "C1({t})"),
            C2(t) => write!(f, "C2({t})"),
            C12(a, b) => write!(f, "C12({a},{b})"),
            C3(t) => write!(f, "C3({t})"),
            C4(t) => write!(f, "C4({t})"),
            C5(t) => write!(f, "C5({t})"),
            C6(t) => write!(f, "C6({t})"),
        }
    }
}

impl Serialize for SuperclassId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The superclass of `y(t)`.
pub fn superclass_of(t: &Coords<'_>) -> SuperclassId {
    use SuperclassId::*;
    let v = |i: usize| t[i].value();
    match (v(0), v(1)) {
        (0, 0) => match (v(2), v(3), v(4), v(5)) {
            (0, 0, 0, 0) => C0,
            (0, 0, 0, t6) => C6(t6),
            (0, 0, t5, _) => C5(t5),
            (0, t4, _, _) => C4(t4),
            (t3, _, _, _) => C3(t3),
        },
        (0, t2) => C2(t2),
        (t1, 0) => C1(t1),
        (t1, t2) => C12(t1, t2),
    }
}

/// The two kinds of pieces making up `C2(t2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum C2Piece {
    /// The piece through `y2(t2) y4(t4)`, `t4 ≠ 0`.
    Y2Y4 { t2: u32, t4: u32 },
    /// The piece through `y2(t2) y5(t5)`.
    Y2Y5 { t2: u32, t5: u32 },
}

/// For `y(0, t2, t3, t4, t5, t6)` with `t2 ≠ 0`, the piece of `C2(t2)` it
/// lies in: `t4 + t3²/t2` is constant on each piece, and when it vanishes
/// so is `t5 − t3³/t2²`.
pub fn c2_piece(t: &Coords<'_>) -> Option<C2Piece> {
    if !t[0].is_zero() || t[1].is_zero() {
        return None;
    }
    let inv = t[1].inv().ok()?;
    let t2 = t[1].value();
    let t4 = t[3] + t[2] * t[2] * inv;
    if !t4.is_zero() {
        Some(C2Piece::Y2Y4 { t2, t4: t4.value() })
    } else {
        let t5 = t[4] - t[2] * t[2] * t[2] * inv * inv;
        Some(C2Piece::Y2Y5 { t2, t5: t5.value() })
    }
}

/// Members of a piece of `C2`, from its parametrisation.
pub fn c2_piece_members<'f>(field: &'f Field, piece: C2Piece) -> Vec<Coords<'f>> {
    let z = field.zero();
    let e = |v: u32| field.elem(v).expect("valid encoding");
    let els: Vec<Fq<'f>> = field.elements().collect();
    let mut out = Vec::new();
    match piece {
        C2Piece::Y2Y4 { t2, t4 } => {
            let (t2, t4) = (e(t2), e(t4));
            let inv = t2.inv().expect("nonzero");
            for &s3 in &els {
                for &s5 in &els {
                    for &s6 in &els {
                        out.push([z, t2, s3, t4 - s3 * s3 * inv, s5, s6]);
                    }
                }
            }
        }
        C2Piece::Y2Y5 { t2, t5 } => {
            let (t2, t5) = (e(t2), e(t5));
            let inv = t2.inv().expect("nonzero");
            for &s3 in &els {
                for &s6 in &els {
                    out.push([z, t2, s3, -(s3 * s3 * inv), t5 + s3 * s3 * s3 * inv * inv, s6]);
                }
            }
        }
    }
    out
}

/// All pieces of `C2(t2)`.
pub fn c2_pieces(q: u32, t2: u32) -> Vec<C2Piece> {
    let mut v: Vec<C2Piece> = (1..q).map(|t4| C2Piece::Y2Y4 { t2, t4 }).collect();
    v.extend((0..q).map(|t5| C2Piece::Y2Y5 { t2, t5 }));
    v
}

/// Members of a superclass, from its parametrisation.
pub fn superclass_members<'f>(field: &'f Field, id: SuperclassId) -> Vec<Coords<'f>> {
    use SuperclassId::*;
    let z = field.zero();
    let e = |v: u32| field.elem(v).expect("valid encoding");
    let els: Vec<Fq<'f>> = field.elements().collect();
    // tuples over the free trailing coordinates
    let tails = |k: usize| -> Vec<Vec<Fq<'f>>> {
        let mut out = vec![Vec::new()];
        for _ in 0..k {
            out = out.iter().flat_map(|v| els.iter().map(move |&x| [v.clone(), vec![x]].concat())).collect();
        }
        out
    };
    let with_tail = |head: &[Fq<'f>]| -> Vec<Coords<'f>> {
        tails(6 - head.len())
            .into_iter()
            .map(|tl| {
                let mut c = [z; 6];
                for (i, x) in head.iter().chain(&tl).enumerate() {
                    c[i] = *x;
                }
                c
            })
            .collect()
    };
    match id {
        C0 => vec![[z; 6]],
        C6(t) => vec![[z, z, z, z, z, e(t)]],
        C5(t) => with_tail(&[z, z, z, z, e(t)]),
        C4(t) => with_tail(&[z, z, z, e(t)]),
        C3(t) => with_tail(&[z, z, e(t)]),
        C1(t) => with_tail(&[e(t), z]),
        C12(a, b) => with_tail(&[e(a), e(b)]),
        C2(t2) => c2_pieces(field.q(), t2).into_iter().flat_map(|p| c2_piece_members(field, p)).collect(),
    }
}

/// The superclass partition of `U`.
#[derive(Debug, Clone)]
pub struct Superclasses {
    pub ids: Vec<SuperclassId>,
    /// Position in `ids` of the superclass of each element index.
    pub of: Vec<u32>,
    pub layout: Arc<ClassLayout>,
}

pub fn superclasses(group: &G2Syl<'_>, budget: u64) -> Result<Superclasses, GroupError> {
    let q = group.field().q();
    let ids = SuperclassId::all(q);
    let mut sizes = vec![0u64; ids.len()];
    let mut of = Vec::with_capacity(group.order() as usize);
    for u in group.all_coords(budget)? {
        let k = superclass_of(&u).index(q);
        sizes[k] += 1;
        of.push(k as u32);
    }
    let labels = ids.iter().map(ToString::to_string).collect();
    let layout = ClassLayout::new("superclasses", labels, sizes, group.order())
        .expect("superclasses cover U");
    Ok(Superclasses { ids, of, layout })
}

/// Checks that the parametrised superclasses partition `U` with the
/// expected sizes and that each is a union of conjugacy classes.
pub fn verify_partition(
    group: &G2Syl<'_>,
    classes: &ClassPartition,
    budget: u64,
) -> Result<Report, GroupError> {
    let field = group.field();
    let q = field.q();
    let q64 = q as u64;
    group.check_budget(group.order(), budget)?;
    let mut r = Report::new("superclasses");
    let ids = SuperclassId::all(q);
    r.check("count q^2+4q-4", ids.len() as u64 == q64 * q64 + 4 * q64 - 4, || {
        format!("{} superclasses", ids.len())
    });

    let mut hits = vec![0u8; group.order() as usize];
    let mut member_ok = Ok(());
    let mut size_ok = Ok(());
    for &id in &ids {
        let members = superclass_members(field, id);
        if members.len() as u64 != id.size(q64) && size_ok.is_ok() {
            size_ok = Err(format!("{id}: {} members, expected {}", members.len(), id.size(q64)));
        }
        for u in &members {
            hits[group.index(u)] = hits[group.index(u)].saturating_add(1);
            if superclass_of(u) != id && member_ok.is_ok() {
                member_ok = Err(format!("{:?} listed in {id} but classified as {}", u, superclass_of(u)));
            }
        }
    }
    r.check_result("parametrised sets agree with the classifier", member_ok);
    r.check_result("superclass sizes", size_ok);
    let bad = hits.iter().position(|&h| h != 1);
    r.check("every element in exactly one superclass", bad.is_none(), || {
        let i = bad.unwrap();
        format!("{:?} lies in {} superclasses", group.coords_of_index(i), hits[i])
    });
    let total: u64 = ids.iter().map(|id| id.size(q64)).sum();
    r.check("sizes sum to q^6", total == group.order(), || format!("{total}"));
    r.check("identity is a singleton superclass", superclass_of(&group.zero_coords()) == SuperclassId::C0, || {
        "identity misclassified".into()
    });

    let mut piece_ok = Ok(());
    for t2 in 1..q {
        for piece in c2_pieces(q, t2) {
            let members = c2_piece_members(field, piece);
            let want = match piece {
                C2Piece::Y2Y4 { .. } => q64.pow(3),
                C2Piece::Y2Y5 { .. } => q64.pow(2),
            };
            let tagged = members.iter().all(|u| c2_piece(u) == Some(piece));
            if (members.len() as u64 != want || !tagged) && piece_ok.is_ok() {
                piece_ok = Err(format!("{piece:?}: {} members", members.len()));
            }
        }
    }
    r.check_result("C2 pieces have sizes q^3 and q^2", piece_ok);

    let mut reps_ok = Ok(());
    let e = |v: u32| field.elem(v).expect("valid");
    for a in 1..q {
        let reps: Vec<(Vec<(usize, Fq)>, SuperclassId)> = vec![
            (vec![(6, e(a))], SuperclassId::C6(a)),
            (vec![(5, e(a))], SuperclassId::C5(a)),
            (vec![(4, e(a))], SuperclassId::C4(a)),
            (vec![(3, e(a))], SuperclassId::C3(a)),
            (vec![(1, e(a))], SuperclassId::C1(a)),
            (vec![(2, e(a)), (4, e(1))], SuperclassId::C2(a)),
            (vec![(2, e(a)), (5, e(0))], SuperclassId::C2(a)),
            (vec![(2, e(a)), (1, e(1))], SuperclassId::C12(1, a)),
        ];
        for (factors, id) in reps {
            let u = group.coords_from_matrix(&group.root_product(&factors))?;
            if superclass_of(&u) != id && reps_ok.is_ok() {
                reps_ok = Err(format!("{factors:?} gives {}", superclass_of(&u)));
            }
        }
    }
    r.check_result("named representatives lie in their superclasses", reps_ok);

    let mut union_ok = Ok(());
    for c in &classes.classes {
        let id = superclass_of(&group.coords_of_index(c.rep));
        if let Some(&m) = c.members.iter().find(|&&m| superclass_of(&group.coords_of_index(m)) != id) {
            union_ok = Err(format!(
                "class of {:?} meets {id} and {}",
                group.coords_of_index(c.rep),
                superclass_of(&group.coords_of_index(m))
            ));
            break;
        }
    }
    r.check_result("each superclass is a union of conjugacy classes", union_ok);
    Ok(r)
}

/// A supermodule, labelled by its defining parameters (encodings).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SupermoduleId {
    /// One-dimensional `M(A12 e12 + A23 e23)`.
    Lin(u32, u32),
    M13(u32),
    M15(u32),
    M16(u32),
    M17(u32),
}

impl SupermoduleId {
    /// All supermodules in row order.
    pub fn all(q: u32) -> Vec<SupermoduleId> {
        use SupermoduleId::*;
        let mut v: Vec<SupermoduleId> = (0..q).flat_map(|a| (0..q).map(move |b| Lin(a, b))).collect();
        for f in [M13, M15, M16, M17] {
            v.extend((1..q).map(f));
        }
        v
    }

    pub fn index(self, q: u32) -> usize {
        use SupermoduleId::*;
        let sq = (q * q) as usize;
        let n = (q - 1) as usize;
        match self {
            Lin(a, b) => (a * q + b) as usize,
            M13(a) => sq + (a - 1) as usize,
            M15(a) => sq + n + (a - 1) as usize,
            M16(a) => sq + 2 * n + (a - 1) as usize,
            M17(a) => sq + 3 * n + (a - 1) as usize,
        }
    }

    pub fn dim(self, q: u64) -> u64 {
        use SupermoduleId::*;
        match self {
            Lin(..) => 1,
            M13(_) => q,
            M15(_) => q.pow(3),
            M16(_) | M17(_) => q.pow(4),
        }
    }

    /// The patterns whose basis vectors span the module.
    pub fn patterns<'f>(self, field: &'f Field) -> Vec<Pattern<'f>> {
        Pattern::all(field).filter(|a| supermodule_of(a) == Some(self)).collect()
    }
}

impl fmt::Display for SupermoduleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SupermoduleId::*;
        match self {
            Lin(a, b) => write!(f, "M(A12={a},A23={b})"),
            M13(a) => write!(f, "M(A13={a})"),
            M15(a) => write!(f, "M(A15={a})"),
            M16(a) => write!(f, "M(A16={a})"),
            M17(a) => write!(f, "M(A17={a})"),
        }
    }
}

impl Serialize for SupermoduleId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The supermodule containing `[A]`, if any. Patterns with `A13 ≠ 0` or
/// `A17 ≠ 0` as rightmost first-row entry and `A23 ≠ 0` lie in none.
pub fn supermodule_of(a: &Pattern<'_>) -> Option<SupermoduleId> {
    use SupermoduleId::*;
    let v = |s: usize| a.get(s).value();
    if v(S17) != 0 {
        (v(S23) == 0).then_some(M17(v(S17)))
    } else if v(S16) != 0 {
        Some(M16(v(S16)))
    } else if v(S15) != 0 {
        Some(M15(v(S15)))
    } else if v(S13) != 0 {
        (v(S23) == 0).then_some(M13(v(S13)))
    } else {
        Some(Lin(v(S12), v(S23)))
    }
}

/// The closed-form value of `Ψ_M` on a superclass.
pub fn closed_form_value(field: &Field, m: SupermoduleId, k: SuperclassId) -> Cyclo {
    use SuperclassId::*;
    use SupermoduleId::*;
    let p = field.p();
    let q = field.q() as i64;
    let e = |v: u32| field.elem(v).expect("valid encoding");
    let scaled = |n: i64, x: Fq| theta(x) * Cyclo::from_int(p, n);
    let zero = Cyclo::zero(p);
    let int = |n: i64| Cyclo::from_int(p, n);
    match m {
        Lin(a12, a23) => match k {
            C1(t1) => theta(e(a12) * e(t1)),
            C2(t2) => theta(e(a23) * e(t2)),
            C12(t1, t2) => theta(e(a12) * e(t1)) * theta(e(a23) * e(t2)),
            _ => Cyclo::one(p),
        },
        M13(a) => match k {
            C1(_) | C2(_) | C12(..) => zero,
            C3(t) => scaled(q, -(e(a) * e(t))),
            _ => int(q),
        },
        M15(a) => match k {
            C1(_) | C2(_) | C12(..) | C3(_) => zero,
            C4(t) => scaled(q.pow(3), e(a) * e(t) * 2),
            _ => int(q.pow(3)),
        },
        M16(a) => match k {
            C0 | C6(_) => int(q.pow(4)),
            C5(t) => scaled(q.pow(4), e(a) * e(t)),
            _ => zero,
        },
        M17(a) => match k {
            C0 => int(q.pow(4)),
            C6(t) => scaled(q.pow(4), e(a) * e(t)),
            _ => zero,
        },
    }
}

/// Values of every supercharacter on every superclass.
#[derive(Debug, Clone)]
pub struct SupercharacterTable {
    pub q: u32,
    pub supermodules: Vec<SupermoduleId>,
    pub superclasses: Vec<SuperclassId>,
    pub layout: Arc<ClassLayout>,
    /// `values[m][k]`.
    pub values: Vec<Vec<Cyclo>>,
}

impl SupercharacterTable {
    pub fn character(&self, m: usize) -> ClassFunction {
        ClassFunction::new(self.layout.clone(), self.values[m].clone()).expect("row length")
    }
}

fn cyclo_int_from_counts(p: u32, counts: &[i64]) -> CycloInt {
    let mut c = CycloInt::zero(p);
    for (j, &n) in counts.iter().enumerate() {
        if n != 0 {
            c.add_zeta(j as i64, n);
        }
    }
    c
}

/// Evaluates every `Ψ_M` at every `u ∈ U` as `Σ χ_A(u)` over the patterns
/// `A ∈ M` fixed by `u`. Reports constancy on superclasses and agreement
/// with [`closed_form_value`] at every element.
pub fn compute_supercharacter_table(
    group: &G2Syl<'_>,
    supers: &Superclasses,
    budget: u64,
) -> Result<(SupercharacterTable, Report), GroupError> {
    let field = group.field();
    let (p, q) = (field.p(), field.q());
    let pu = p as usize;
    let mods = SupermoduleId::all(q);
    let nm = mods.len();
    let nk = supers.ids.len();
    let expected: Vec<Vec<Vec<i64>>> = mods
        .iter()
        .map(|&m| {
            supers
                .ids
                .iter()
                .map(|&k| closed_form_value(field, m, k).to_int().expect("integral").canonical())
                .collect()
        })
        .collect();
    let mut first: Vec<Vec<Option<Vec<i64>>>> = vec![vec![None; nk]; nm];
    let mut label_of = vec![u32::MAX; group.order() as usize];
    for a in Pattern::all(field) {
        if let Some(m) = supermodule_of(&a) {
            label_of[a.index()] = m.index(q) as u32;
        }
    }
    let mut acc = vec![0i64; nm * pu];
    let mut const_ok = Ok(());
    let mut closed_ok = Ok(());
    for (ui, u) in group.all_coords(budget)?.enumerate() {
        acc.iter_mut().for_each(|x| *x = 0);
        let fu = f_coords(&u);
        for_each_in_span(field, &fixed_basis(group, &u), &mut |a| {
            let l = label_of[a.index()];
            if l != u32::MAX {
                acc[l as usize * pu + kappa(a, &fu).trace() as usize] += 1;
            }
        });
        let k = supers.of[ui] as usize;
        for m in 0..nm {
            let counts = &acc[m * pu..(m + 1) * pu];
            let last = counts[pu - 1];
            let canon: Vec<i64> = counts[..pu - 1].iter().map(|c| c - last).collect();
            match &first[m][k] {
                None => first[m][k] = Some(canon.clone()),
                Some(f) if *f != canon && const_ok.is_ok() => {
                    const_ok = Err(format!("{} not constant on {} at {:?}", mods[m], supers.ids[k], u));
                }
                _ => {}
            }
            if canon != expected[m][k] && closed_ok.is_ok() {
                closed_ok = Err(format!(
                    "{} at {:?} in {}: computed {}, closed form {}",
                    mods[m],
                    u,
                    supers.ids[k],
                    cyclo_int_from_counts(p, counts).to_cyclo(),
                    closed_form_value(field, mods[m], supers.ids[k])
                ));
            }
        }
    }
    let values: Vec<Vec<Cyclo>> = first
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| {
                    let c = c.as_ref().expect("every superclass is nonempty");
                    let mut full = c.clone();
                    full.push(0);
                    cyclo_int_from_counts(p, &full).to_cyclo()
                })
                .collect()
        })
        .collect();
    let mut r = Report::new("supercharacters");
    r.check_result("constant on superclasses", const_ok);
    r.check_result("values equal the closed forms", closed_ok);
    let table = SupercharacterTable {
        q,
        supermodules: mods,
        superclasses: supers.ids.clone(),
        layout: supers.layout.clone(),
        values,
    };
    Ok((table, r))
}

/// `Ψ_M` as the sum of the orbit characters of the orbits inside `M`,
/// evaluated at every element; fails with a witness if the result is not
/// constant on some superclass.
pub fn build_supercharacter(
    group: &G2Syl<'_>,
    m: SupermoduleId,
    supers: &Superclasses,
    budget: u64,
) -> Result<Result<ClassFunction, String>, GroupError> {
    let field = group.field();
    let p = field.p();
    let patterns = m.patterns(field);
    let mut values: Vec<Option<CycloInt>> = vec![None; supers.ids.len()];
    for (ui, u) in group.all_coords(budget)?.enumerate() {
        let act = DotAction::new(group, &u);
        let fu = f_coords(&u);
        let mut acc = CycloInt::zero(p);
        for c in &patterns {
            if act.apply(c) == *c {
                acc.add_zeta(kappa(c, &fu).trace() as i64, 1);
            }
        }
        let k = supers.of[ui] as usize;
        match &values[k] {
            None => values[k] = Some(acc),
            Some(v) if *v != acc => {
                return Ok(Err(format!("{m} not constant on {}: differs at {:?}", supers.ids[k], u)))
            }
            _ => {}
        }
    }
    let values = values.into_iter().map(|v| v.expect("nonempty").to_cyclo()).collect();
    Ok(Ok(ClassFunction::new(supers.layout.clone(), values).expect("one value per superclass")))
}

/// Sum of the supermodule dimensions: `2q⁵ − q⁴ − q³ + 2q² − q`.
pub fn supermodule_dimension_sum(q: u64) -> u64 {
    2 * q.pow(5) + 2 * q * q - q.pow(4) - q.pow(3) - q
}

/// The axioms of a supercharacter theory, plus degrees and closed forms.
pub fn verify_supercharacter_theory(
    group: &G2Syl<'_>,
    budget: u64,
) -> Result<(SupercharacterTable, Report), GroupError> {
    let field = group.field();
    let (p, q) = (field.p(), field.q());
    let q64 = q as u64;
    let classes = conjugacy_classes(group, budget)?;
    let mut r = verify_partition(group, &classes, budget)?;
    r.suite = "supertheory".into();
    let supers = superclasses(group, budget)?;
    let (table, values_report) = compute_supercharacter_table(group, &supers, budget)?;
    let n = q64 * q64 + 4 * q64 - 4;
    r.check(
        "(a) as many supercharacters as superclasses",
        table.supermodules.len() == supers.ids.len() && supers.ids.len() as u64 == n,
        || format!("{} supercharacters, {} superclasses", table.supermodules.len(), supers.ids.len()),
    );
    for c in values_report.checks {
        r.checks.push(crate::report::Check { name: format!("(b) {}", c.name), ..c });
    }
    let chars: Vec<ClassFunction> = (0..table.supermodules.len()).map(|m| table.character(m)).collect();
    let mut orth_ok = Ok(());
    'outer: for i in 0..chars.len() {
        if chars[i].values.iter().all(Cyclo::is_zero) {
            orth_ok = Err(format!("{} vanishes", table.supermodules[i]));
            break;
        }
        for j in i + 1..chars.len() {
            let ip = inner_product(&chars[i], &chars[j]).expect("same layout");
            if !ip.is_zero() {
                orth_ok = Err(format!("<{}, {}> = {ip}", table.supermodules[i], table.supermodules[j]));
                break 'outer;
            }
        }
    }
    r.check_result("(c) pairwise orthogonal", orth_ok);
    let c0 = SuperclassId::C0.index(q);
    r.check(
        "(d) the identity forms a superclass",
        supers.layout.sizes[c0] == 1 && supers.of[0] as usize == c0,
        || "identity superclass is not a singleton".into(),
    );
    let mut deg_ok = Ok(());
    for (m, row) in table.supermodules.iter().zip(&table.values) {
        if row[c0] != Cyclo::from_int(p, m.dim(q64) as i64) || m.patterns(field).len() as u64 != m.dim(q64) {
            deg_ok = Err(format!("{m}: degree {}", row[c0]));
            break;
        }
    }
    r.check_result("degrees equal supermodule dimensions", deg_ok);
    let sum: u64 = table.supermodules.iter().map(|m| m.dim(q64)).sum();
    r.check("sum of supermodule dimensions is 2q^5-q^4-q^3+2q^2-q", sum == supermodule_dimension_sum(q64), || {
        format!("{sum}")
    });
    Ok((table, r))
}
