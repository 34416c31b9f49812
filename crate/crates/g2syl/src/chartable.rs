//! Conjugacy classes and irreducible characters of `U` for `p > 3`.
//!
//! Class representatives and character values are closed forms; every
//! closed form is checked against brute force: classes by BFS, characters
//! by inducing linear characters from `K = Y1Y3Y4Y5Y6`, `T = Y2Y3Y4Y5Y6`
//! and `H = Y1Y4Y5Y6`. Parameters are stored as field element encodings.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::cyclo::{ClassFunction, ClassLayout, Cyclo, CycloInt};
use crate::ffield::{Field, Fq};
use crate::matgroup::{classes_under, conjugacy_classes, ClassPartition, ConjClass, Coords, G2Syl, GroupError};
use crate::report::Report;
use crate::supertheory::{compute_supercharacter_table, superclass_of, superclasses, SuperclassId, SupermoduleId};

#[derive(Debug, thiserror::Error)]
pub enum ChartableError {
    #[error("character tables are only available for p > 3 (the commutator relations change at p = 3); got p = {0}")]
    SmallCharacteristic(u32),
    #[error("parameter out of range: {0}")]
    Param(String),
    #[error("closed form disagrees with brute force: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

pub fn require_large_p(field: &Field) -> Result<(), ChartableError> {
    if field.p() <= 3 {
        Err(ChartableError::SmallCharacteristic(field.p()))
    } else {
        Ok(())
    }
}

fn fe(field: &Field, v: u32) -> Fq<'_> {
    field.elem(v).expect("encoding below q")
}

fn random_coords<'f, R: Rng + ?Sized>(field: &'f Field, rng: &mut R) -> Coords<'f> {
    std::array::from_fn(|_| fe(field, rng.gen_range(0..field.q())))
}

// ---------------------------------------------------------------------------
// Conjugation formulas.

/// Element shapes with a closed conjugation formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConjShape {
    Root(usize),
    Y3Y5,
    Y2Y4Y5,
    Y2Y1,
}

impl ConjShape {
    pub const ALL: [ConjShape; 9] = [
        ConjShape::Root(1),
        ConjShape::Root(2),
        ConjShape::Root(3),
        ConjShape::Root(4),
        ConjShape::Root(5),
        ConjShape::Root(6),
        ConjShape::Y3Y5,
        ConjShape::Y2Y4Y5,
        ConjShape::Y2Y1,
    ];

    /// Coordinate slots the shape may occupy.
    pub fn support(self) -> &'static [usize] {
        match self {
            ConjShape::Root(1) => &[0],
            ConjShape::Root(2) => &[1],
            ConjShape::Root(3) => &[2],
            ConjShape::Root(4) => &[3],
            ConjShape::Root(5) => &[4],
            ConjShape::Root(6) => &[5],
            ConjShape::Root(i) => panic!("no root subgroup {i}"),
            ConjShape::Y3Y5 => &[2, 4],
            ConjShape::Y2Y4Y5 => &[1, 3, 4],
            ConjShape::Y2Y1 => &[0, 1],
        }
    }

    /// `s` with the slots outside the support set to zero.
    pub fn element<'f>(self, s: &Coords<'f>) -> Coords<'f> {
        let zero = s[0].field().zero();
        let mut t = [zero; 6];
        for &i in self.support() {
            t[i] = s[i];
        }
        t
    }
}

impl fmt::Display for ConjShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConjShape::Root(i) => write!(f, "y{i}"),
            ConjShape::Y3Y5 => write!(f, "y3y5"),
            ConjShape::Y2Y4Y5 => write!(f, "y2y4y5"),
            ConjShape::Y2Y1 => write!(f, "y2y1"),
        }
    }
}

/// `u y u^{-1}` for `u = y(r)` and `y` of the given shape with coordinates
/// `t`, from the closed conjugation formulas.
pub fn conjugate_by_formula<'f>(shape: ConjShape, t: &Coords<'f>, r: &Coords<'f>) -> Coords<'f> {
    let z = t[0].field().zero();
    let [t1, t2, t3, t4, t5, t6] = *t;
    let [r1, r2, r3, r4, r5, _] = *r;
    let cube = |x: Fq<'f>| x * x * x;
    match shape {
        ConjShape::Root(6) => [z, z, z, z, z, t6],
        ConjShape::Root(5) => [z, z, z, z, t5, r2 * t5],
        ConjShape::Root(4) => [z, z, z, t4, r1 * t4 * 3, (r1 * r2 * t4 + r3 * t4) * 3],
        ConjShape::Root(3) => [
            z,
            z,
            t3,
            r1 * t3 * 2,
            r1 * r1 * t3 * 3,
            r1 * r1 * r2 * t3 * 3 - r1 * t3 * t3 * 3 - t3 * r4 * 3,
        ],
        ConjShape::Root(2) => [
            z,
            t2,
            -(r1 * t2),
            -(t2 * r1 * r1),
            -(t2 * cube(r1)),
            -(t2 * r5) - t2 * t2 * cube(r1) - t2 * cube(r1) * r2,
        ],
        ConjShape::Root(1) => [
            t1,
            z,
            r2 * t1,
            -(r2 * t1 * t1) - t1 * r3 * 2,
            r2 * cube(t1) - r1 * r3 * t1 * 6 + r3 * t1 * t1 * 3 - t1 * r4 * 3,
            r2 * r2 * cube(t1) * 2 - r1 * r2 * r3 * t1 * 6 + r2 * r3 * t1 * t1 * 3
                - r2 * r4 * t1 * 3
                - t1 * r3 * r3 * 3,
        ],
        ConjShape::Root(i) => panic!("no root subgroup {i}"),
        ConjShape::Y3Y5 => [
            z,
            z,
            t3,
            r1 * t3 * 2,
            t5 + r1 * r1 * t3 * 3,
            r2 * t5 + r1 * r1 * r2 * t3 * 3 - r1 * t3 * t3 * 3 - t3 * r4 * 3,
        ],
        ConjShape::Y2Y4Y5 => [
            z,
            t2,
            -(r1 * t2),
            t4 - t2 * r1 * r1,
            t5 - t2 * cube(r1) + r1 * t4 * 3,
            -(t2 * r5) - t2 * t2 * cube(r1) - t2 * cube(r1) * r2
                + r1 * r2 * t4 * 3
                + r3 * t4 * 3
                + r2 * t5,
        ],
        ConjShape::Y2Y1 => [
            t1,
            t2,
            r2 * t1 - r1 * t2,
            -(r2 * t1 * t1) - t1 * r3 * 2 - t2 * r1 * r1 + t1 * t2 * r1 * 2,
            r2 * cube(t1) - r1 * r3 * t1 * 6 + r3 * t1 * t1 * 3 - t1 * r4 * 3 - t2 * cube(r1)
                - r1 * t1 * t1 * t2 * 3
                + t1 * t2 * r1 * r1 * 3,
            r2 * r2 * cube(t1) * 2 - r1 * r2 * r3 * t1 * 6 + r2 * r3 * t1 * t1 * 3
                - r2 * r4 * t1 * 3
                - t1 * r3 * r3 * 3
                - t2 * r5
                - t2 * t2 * cube(r1)
                - t2 * cube(r1) * r2
                - r1 * r2 * t1 * t1 * t2 * 6
                + t1 * t2 * r1 * r1 * r2 * 3
                + r1 * r1 * t1 * t2 * t2 * 3,
        ],
    }
}

/// Compares [`conjugate_by_formula`] with matrix-free conjugation on
/// `samples` random pairs per shape.
pub fn verify_conjugation_formulas<R: Rng + ?Sized>(
    group: &G2Syl<'_>,
    samples: usize,
    rng: &mut R,
) -> Result<Report, ChartableError> {
    let field = group.field();
    require_large_p(field)?;
    let mut r = Report::new("conjugation-formulas");
    for shape in ConjShape::ALL {
        let mut bad = None;
        for _ in 0..samples {
            let u = random_coords(field, rng);
            let t = shape.element(&random_coords(field, rng));
            let direct = group.conj_coords(&u, &group.inv_coords(&u), &t);
            let formula = conjugate_by_formula(shape, &t, &u);
            if direct != formula {
                bad = Some((u, t, direct, formula));
                break;
            }
        }
        r.check(format!("u {shape} u^-1 on {samples} random pairs"), bad.is_none(), || {
            let (u, t, d, f) = bad.unwrap();
            let v = |c: &Coords<'_>| c.iter().map(|x| x.value()).collect::<Vec<_>>();
            format!("u={:?} y={:?}: direct {:?}, formula {:?}", v(&u), v(&t), v(&d), v(&f))
        });
    }
    Ok(r)
}

// ---------------------------------------------------------------------------
// Class representatives.

/// A conjugacy class representative of `U`. Variant order is the column
/// order of the character table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassRep {
    Identity,
    Y1Y6 { t1: u32, t6: u32 },
    Y2Y4Y5 { t2: u32, t4: u32, t5: u32 },
    Y2Y1 { t2: u32, t1: u32 },
    Y3Y5 { t3: u32, t5: u32 },
    Y4 { t4: u32 },
    Y5 { t5: u32 },
    Y6 { t6: u32 },
}

impl ClassRep {
    /// All representatives, sorted.
    pub fn all(q: u32) -> Vec<ClassRep> {
        use ClassRep::*;
        let mut v = vec![Identity];
        for t1 in 1..q {
            v.extend((0..q).map(|t6| Y1Y6 { t1, t6 }));
        }
        for t2 in 1..q {
            for t4 in 0..q {
                v.extend((0..q).map(|t5| Y2Y4Y5 { t2, t4, t5 }));
            }
        }
        for t2 in 1..q {
            v.extend((1..q).map(|t1| Y2Y1 { t2, t1 }));
        }
        for t3 in 1..q {
            v.extend((0..q).map(|t5| Y3Y5 { t3, t5 }));
        }
        v.extend((1..q).map(|t4| Y4 { t4 }));
        v.extend((1..q).map(|t5| Y5 { t5 }));
        v.extend((1..q).map(|t6| Y6 { t6 }));
        v
    }

    /// The representative with these coordinates, if they have one of the
    /// listed shapes.
    pub fn recognise(t: &Coords<'_>) -> Option<ClassRep> {
        use ClassRep::*;
        let v: [u32; 6] = std::array::from_fn(|i| t[i].value());
        Some(match v {
            [0, 0, 0, 0, 0, 0] => Identity,
            [t1, 0, 0, 0, 0, t6] if t1 != 0 => Y1Y6 { t1, t6 },
            [0, t2, 0, t4, t5, 0] if t2 != 0 => Y2Y4Y5 { t2, t4, t5 },
            [t1, t2, 0, 0, 0, 0] if t1 != 0 && t2 != 0 => Y2Y1 { t2, t1 },
            [0, 0, t3, 0, t5, 0] if t3 != 0 => Y3Y5 { t3, t5 },
            [0, 0, 0, t4, 0, 0] => Y4 { t4 },
            [0, 0, 0, 0, t5, 0] => Y5 { t5 },
            [0, 0, 0, 0, 0, t6] => Y6 { t6 },
            _ => return None,
        })
    }

    pub fn coords<'f>(&self, field: &'f Field) -> Coords<'f> {
        use ClassRep::*;
        let v = match *self {
            Identity => [0; 6],
            Y1Y6 { t1, t6 } => [t1, 0, 0, 0, 0, t6],
            Y2Y4Y5 { t2, t4, t5 } => [0, t2, 0, t4, t5, 0],
            Y2Y1 { t2, t1 } => [t1, t2, 0, 0, 0, 0],
            Y3Y5 { t3, t5 } => [0, 0, t3, 0, t5, 0],
            Y4 { t4 } => [0, 0, 0, t4, 0, 0],
            Y5 { t5 } => [0, 0, 0, 0, t5, 0],
            Y6 { t6 } => [0, 0, 0, 0, 0, t6],
        };
        v.map(|x| fe(field, x))
    }

    /// Coordinate slots of the class members that range freely over `F_q`,
    /// and those determined by the rest. Other slots are fixed.
    pub fn member_shape(&self) -> (&'static [usize], &'static [usize]) {
        use ClassRep::*;
        match self {
            Identity | Y6 { .. } => (&[], &[]),
            Y5 { .. } => (&[5], &[]),
            Y4 { .. } => (&[4, 5], &[]),
            Y3Y5 { .. } => (&[3, 5], &[4]),
            Y2Y4Y5 { .. } => (&[2, 5], &[3, 4]),
            Y1Y6 { .. } => (&[2, 3, 4], &[5]),
            Y2Y1 { .. } => (&[2, 3, 4, 5], &[]),
        }
    }

    pub fn class_size(&self, q: u64) -> u64 {
        q.pow(self.member_shape().0.len() as u32)
    }

    /// The superclass containing this class.
    pub fn superclass(&self) -> SuperclassId {
        use ClassRep::*;
        match *self {
            Identity => SuperclassId::C0,
            Y1Y6 { t1, .. } => SuperclassId::C1(t1),
            Y2Y4Y5 { t2, .. } => SuperclassId::C2(t2),
            Y2Y1 { t2, t1 } => SuperclassId::C12(t1, t2),
            Y3Y5 { t3, .. } => SuperclassId::C3(t3),
            Y4 { t4 } => SuperclassId::C4(t4),
            Y5 { t5 } => SuperclassId::C5(t5),
            Y6 { t6 } => SuperclassId::C6(t6),
        }
    }
}

impl fmt::Display for ClassRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ClassRep::*;
        match self {
            Identity => write!(f, "I"),
            Y1Y6 { t1, t6 } => write!(f, "y1({t1})y6({t6})"),
            Y2Y4Y5 { t2, t4, t5 } => write!(f, "y2({t2})y4({t4})y5({t5})"),
            Y2Y1 { t2, t1 } => write!(f, "y2({t2})y1({t1})"),
            Y3Y5 { t3, t5 } => write!(f, "y3({t3})y5({t5})"),
            Y4 { t4 } => write!(f, "y4({t4})"),
            Y5 { t5 } => write!(f, "y5({t5})"),
            Y6 { t6 } => write!(f, "y6({t6})"),
        }
    }
}

impl Serialize for ClassRep {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Reorders `partition` by representative, where each class must contain
/// exactly one element recognised by `recognise`.
fn attach_reps<'f, R: Ord + Copy + fmt::Display>(
    group: &G2Syl<'f>,
    partition: ClassPartition,
    recognise: impl Fn(&Coords<'f>) -> Option<R>,
) -> Result<(ClassPartition, Vec<R>), String> {
    let mut tagged = Vec::with_capacity(partition.len());
    for class in partition.classes {
        let found: Vec<R> =
            class.members.iter().filter_map(|&m| recognise(&group.coords_of_index(m))).collect();
        if found.len() != 1 {
            let labels: Vec<String> = found.iter().map(|r| r.to_string()).collect();
            return Err(format!(
                "class of {:?} contains {} representatives {labels:?}",
                group.from_coords(group.coords_of_index(class.rep)),
                found.len()
            ));
        }
        tagged.push((found[0], class));
    }
    tagged.sort_by_key(|(r, _)| *r);
    let mut class_of = partition.class_of;
    for (i, (_, c)) in tagged.iter().enumerate() {
        for &m in &c.members {
            class_of[m] = i as u32;
        }
    }
    let (reps, classes): (Vec<R>, Vec<ConjClass>) = tagged.into_iter().unzip();
    Ok((ClassPartition { classes, class_of }, reps))
}

/// The conjugacy classes of `U`, each tagged with its representative.
#[derive(Debug, Clone)]
pub struct UClasses {
    pub partition: ClassPartition,
    pub reps: Vec<ClassRep>,
    pub layout: Arc<ClassLayout>,
}

/// Brute-force classes of `U` matched against [`ClassRep`].
pub fn u_classes(group: &G2Syl<'_>, budget: u64) -> Result<UClasses, ChartableError> {
    require_large_p(group.field())?;
    let partition = conjugacy_classes(group, budget)?;
    let (partition, reps) = attach_reps(group, partition, ClassRep::recognise).map_err(ChartableError::Mismatch)?;
    let labels = reps.iter().map(ToString::to_string).collect();
    let sizes = partition.classes.iter().map(|c| c.size() as u64).collect();
    let layout = ClassLayout::new("U", labels, sizes, group.order()).expect("classes partition U");
    Ok(UClasses { partition, reps, layout })
}

/// Number of conjugacy classes of `U`: `q³ + 2q² − q − 1`.
pub fn class_count(q: u64) -> u64 {
    q.pow(3) + 2 * q * q - q - 1
}

/// Class counts, sizes and member shapes, the conjugation formulas, and
/// the decomposition of superclasses into classes.
pub fn verify_classes<R: Rng + ?Sized>(
    group: &G2Syl<'_>,
    budget: u64,
    samples: usize,
    rng: &mut R,
) -> Result<(UClasses, Report), ChartableError> {
    let field = group.field();
    require_large_p(field)?;
    let q = group.q();
    let mut r = Report::new("classes");
    r.extend(verify_conjugation_formulas(group, samples, rng)?);
    let partition = conjugacy_classes(group, budget)?;
    r.check("class count is q^3+2q^2-q-1", partition.len() as u64 == class_count(q), || {
        format!("{} classes", partition.len())
    });
    let mut expected = BTreeMap::new();
    for rep in ClassRep::all(q as u32) {
        *expected.entry(rep.class_size(q) as usize).or_insert(0usize) += 1;
    }
    let found = partition.size_multiset();
    r.check("class size multiset", found == expected.clone().into_iter().collect::<Vec<_>>(), || {
        format!("found {found:?}, expected {expected:?}")
    });
    let classes = match attach_reps(group, partition, ClassRep::recognise) {
        Ok((partition, reps)) => {
            let labels = reps.iter().map(ToString::to_string).collect();
            let sizes = partition.classes.iter().map(|c| c.size() as u64).collect();
            let layout = ClassLayout::new("U", labels, sizes, group.order()).expect("classes partition U");
            r.check("every class contains exactly one listed representative", true, String::new);
            UClasses { partition, reps, layout }
        }
        Err(w) => {
            r.check("every class contains exactly one listed representative", false, || w.clone());
            return Err(ChartableError::Mismatch(w));
        }
    };
    r.check("representatives are distinct and complete", classes.reps == ClassRep::all(q as u32), || {
        format!("{} representatives found", classes.reps.len())
    });
    let mut shape_ok = Ok(());
    for (rep, class) in classes.reps.iter().zip(&classes.partition.classes) {
        if let Err(w) = check_member_shape(group, rep, class) {
            shape_ok = Err(w);
            break;
        }
    }
    r.check_result("classes have the listed free and determined coordinates", shape_ok);
    let mut union_ok = Ok(());
    let mut per_super: BTreeMap<SuperclassId, usize> = BTreeMap::new();
    'outer: for (rep, class) in classes.reps.iter().zip(&classes.partition.classes) {
        *per_super.entry(rep.superclass()).or_insert(0) += 1;
        for &m in &class.members {
            let s = superclass_of(&group.coords_of_index(m));
            if s != rep.superclass() {
                union_ok = Err(format!("class of {rep} meets {s}"));
                break 'outer;
            }
        }
    }
    if union_ok.is_ok() {
        for id in SuperclassId::all(q as u32) {
            let want = match id {
                SuperclassId::C1(_) | SuperclassId::C3(_) => q as usize,
                SuperclassId::C2(_) => (q * q) as usize,
                _ => 1,
            };
            let got = per_super.get(&id).copied().unwrap_or(0);
            if got != want {
                union_ok = Err(format!("{id} is a union of {got} classes, expected {want}"));
                break;
            }
        }
    }
    r.check_result("superclasses are the listed unions of classes", union_ok);
    Ok((classes, r))
}

/// Fixed slots equal the representative's, the free slots range over all
/// of `F_q^{free}` exactly once, and the class has the listed size.
fn check_member_shape(group: &G2Syl<'_>, rep: &ClassRep, class: &ConjClass) -> Result<(), String> {
    let q = group.q();
    let (free, hatted) = rep.member_shape();
    if class.size() as u64 != rep.class_size(q) {
        return Err(format!("{rep}: size {} instead of {}", class.size(), rep.class_size(q)));
    }
    let base = rep.coords(group.field());
    let mut seen = std::collections::HashSet::new();
    for &m in &class.members {
        let t = group.coords_of_index(m);
        for i in 0..6 {
            if !free.contains(&i) && !hatted.contains(&i) && t[i] != base[i] {
                return Err(format!("{rep}: member {:?} moves slot {}", group.from_coords(t), i + 1));
            }
        }
        let key: Vec<u32> = free.iter().map(|&i| t[i].value()).collect();
        if !seen.insert(key) {
            return Err(format!("{rep}: free slots do not determine the member {:?}", group.from_coords(t)));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Subgroups and induction.

/// Pattern subgroups used to build characters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Subgroup {
    U,
    /// `Y1Y3Y4Y5Y6`.
    K,
    /// `Y2Y3Y4Y5Y6`.
    T,
    /// `Y1Y4Y5Y6`.
    H,
    /// `Y4Y5Y6`.
    N,
}

impl Subgroup {
    pub fn roots(self) -> &'static [usize] {
        match self {
            Subgroup::U => &[1, 2, 3, 4, 5, 6],
            Subgroup::K => &[1, 3, 4, 5, 6],
            Subgroup::T => &[2, 3, 4, 5, 6],
            Subgroup::H => &[1, 4, 5, 6],
            Subgroup::N => &[4, 5, 6],
        }
    }

    /// Membership: the coordinates outside the roots vanish.
    pub fn contains(self, t: &Coords<'_>) -> bool {
        (1..=6).all(|i| self.roots().contains(&i) || t[i - 1].is_zero())
    }

    pub fn order(self, q: u64) -> u64 {
        q.pow(self.roots().len() as u32)
    }

    pub fn generators<'f>(self, group: &G2Syl<'f>) -> Vec<Coords<'f>> {
        let basis = group.field().prime_basis();
        self.roots().iter().flat_map(|&i| basis.iter().map(move |&b| group.root_coords(i, b))).collect()
    }

    /// Enumeration indices of the members.
    pub fn elements(self, group: &G2Syl<'_>) -> Vec<usize> {
        (0..group.order() as usize).filter(|&i| self.contains(&group.coords_of_index(i))).collect()
    }
}

/// Values of `Ind_S^G θ∘φ` on the classes of `G ⊇ S`, where `φ` is additive on `S`:
/// `|C_G(g)|/|S| · Σ_{h ∈ g^G ∩ S} θ(φ(h))`.
pub fn induce_by_class_sums<'f>(
    group: &G2Syl<'f>,
    classes: &ClassPartition,
    ambient_order: u64,
    sub: Subgroup,
    phi: impl Fn(&Coords<'f>) -> Fq<'f>,
) -> Vec<Cyclo> {
    let p = group.field().p();
    let sub_order = sub.order(group.q());
    classes
        .classes
        .iter()
        .map(|c| {
            let mut acc = CycloInt::zero(p);
            for &m in &c.members {
                let h = group.coords_of_index(m);
                if sub.contains(&h) {
                    acc.add_zeta(phi(&h).trace() as i64, 1);
                }
            }
            let factor = BigRational::new(BigInt::from(ambient_order), BigInt::from(sub_order * c.size() as u64));
            acc.to_cyclo().scale(&factor)
        })
        .collect()
}

/// `Ind_S^U θ∘φ` at one element: `(1/|S|) Σ_{x ∈ U} θ(φ(x g x^{-1}))` over
/// the `x` with `x g x^{-1} ∈ S`.
pub fn induce_at<'f>(
    group: &G2Syl<'f>,
    sub: Subgroup,
    phi: impl Fn(&Coords<'f>) -> Fq<'f>,
    g: &Coords<'f>,
    budget: u64,
) -> Result<Cyclo, GroupError> {
    let p = group.field().p();
    let mut acc = CycloInt::zero(p);
    for x in group.all_coords(budget)? {
        let h = group.conj_coords(&x, &group.inv_coords(&x), g);
        if sub.contains(&h) {
            acc.add_zeta(phi(&h).trace() as i64, 1);
        }
    }
    let factor = BigRational::new(BigInt::from(1), BigInt::from(sub.order(group.q())));
    Ok(acc.to_cyclo().scale(&factor))
}

// ---------------------------------------------------------------------------
// Irreducible characters.

/// Family of an irreducible character, named by degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IrrFamily {
    Lin,
    Q3,
    Q4,
    Q5,
    Q6,
}

impl IrrFamily {
    pub const ALL: [IrrFamily; 5] = [IrrFamily::Lin, IrrFamily::Q3, IrrFamily::Q4, IrrFamily::Q5, IrrFamily::Q6];
}

impl fmt::Display for IrrFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IrrFamily::Lin => "lin",
            IrrFamily::Q3 => "3q",
            IrrFamily::Q4 => "4q",
            IrrFamily::Q5 => "5q",
            IrrFamily::Q6 => "6q2",
        })
    }
}

impl Serialize for IrrFamily {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// An irreducible character of `U` by family and parameters. The
/// parameters `a13` of `Q3`, `a15` of `Q4`, `a16` of `Q5` and `a17` of `Q6`
/// are nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IrrId {
    Lin { a12: u32, a23: u32 },
    Q3 { a13: u32 },
    Q4 { a15: u32, a23: u32 },
    Q5 { a16: u32, a23: u32, a13: u32 },
    Q6 { a17: u32, a12: u32 },
}

impl IrrId {
    pub fn all(q: u32) -> Vec<IrrId> {
        use IrrId::*;
        let mut v = Vec::new();
        for a12 in 0..q {
            v.extend((0..q).map(|a23| Lin { a12, a23 }));
        }
        v.extend((1..q).map(|a13| Q3 { a13 }));
        for a15 in 1..q {
            v.extend((0..q).map(|a23| Q4 { a15, a23 }));
        }
        for a16 in 1..q {
            for a23 in 0..q {
                v.extend((0..q).map(|a13| Q5 { a16, a23, a13 }));
            }
        }
        for a17 in 1..q {
            v.extend((0..q).map(|a12| Q6 { a17, a12 }));
        }
        v
    }

    pub fn family(&self) -> IrrFamily {
        match self {
            IrrId::Lin { .. } => IrrFamily::Lin,
            IrrId::Q3 { .. } => IrrFamily::Q3,
            IrrId::Q4 { .. } => IrrFamily::Q4,
            IrrId::Q5 { .. } => IrrFamily::Q5,
            IrrId::Q6 { .. } => IrrFamily::Q6,
        }
    }

    pub fn degree(&self, q: u64) -> u64 {
        match self.family() {
            IrrFamily::Lin => 1,
            IrrFamily::Q6 => q * q,
            _ => q,
        }
    }

    pub fn validate(&self, q: u32) -> Result<(), ChartableError> {
        let (starred, free): (u32, Vec<u32>) = match *self {
            IrrId::Lin { a12, a23 } => (1, vec![a12, a23]),
            IrrId::Q3 { a13 } => (a13, vec![]),
            IrrId::Q4 { a15, a23 } => (a15, vec![a23]),
            IrrId::Q5 { a16, a23, a13 } => (a16, vec![a23, a13]),
            IrrId::Q6 { a17, a12 } => (a17, vec![a12]),
        };
        if starred == 0 || starred >= q || free.iter().any(|&a| a >= q) {
            return Err(ChartableError::Param(format!("{self} at q = {q}")));
        }
        Ok(())
    }

    /// Subgroup from which the character is induced.
    pub fn inducing_subgroup(&self) -> Subgroup {
        match self.family() {
            IrrFamily::Lin => Subgroup::U,
            IrrFamily::Q3 => Subgroup::K,
            IrrFamily::Q4 | IrrFamily::Q5 => Subgroup::T,
            IrrFamily::Q6 => Subgroup::H,
        }
    }

    /// Exponent of the linear character `θ∘φ` being induced, at an element
    /// of [`IrrId::inducing_subgroup`].
    pub fn inducing_exponent<'f>(&self, field: &'f Field, t: &Coords<'f>) -> Fq<'f> {
        let e = |v| fe(field, v);
        let [t1, t2, t3, t4, t5, t6] = *t;
        match *self {
            IrrId::Lin { a12, a23 } => e(a12) * t1 + e(a23) * t2,
            IrrId::Q3 { a13 } => -(e(a13) * t3),
            IrrId::Q4 { a15, a23 } => e(a23) * t2 + e(a15) * t4 * 2,
            IrrId::Q5 { a16, a23, a13 } => e(a23) * t2 - e(a13) * t3 + e(a16) * t5,
            IrrId::Q6 { a17, a12 } => e(a12) * t1 + e(a17) * t6,
        }
    }
}

impl fmt::Display for IrrId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrrId::Lin { a12, a23 } => write!(f, "chi_lin(A12={a12},A23={a23})"),
            IrrId::Q3 { a13 } => write!(f, "chi_3q(A13={a13})"),
            IrrId::Q4 { a15, a23 } => write!(f, "chi_4q(A15={a15},A23={a23})"),
            IrrId::Q5 { a16, a23, a13 } => write!(f, "chi_5q(A16={a16},A23={a23},A13={a13})"),
            IrrId::Q6 { a17, a12 } => write!(f, "chi_6q2(A17={a17},A12={a12})"),
        }
    }
}

impl Serialize for IrrId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn zeta(x: Fq<'_>) -> CycloInt {
    let mut c = CycloInt::zero(x.field().p());
    c.add_zeta(x.trace() as i64, 1);
    c
}

/// `Σ_{r ∈ F_q} θ(f(r))`, summed term by term.
fn expsum<'f>(field: &'f Field, f: impl Fn(Fq<'f>) -> Fq<'f>) -> CycloInt {
    let mut c = CycloInt::zero(field.p());
    for r in field.elements() {
        c.add_zeta(f(r).trace() as i64, 1);
    }
    c
}

/// Closed-form value of an irreducible character on a class.
pub fn closed_form_int(field: &Field, id: IrrId, rep: ClassRep) -> CycloInt {
    use ClassRep::*;
    let p = field.p();
    let q = field.q() as i64;
    let e = |v| fe(field, v);
    let int = |n| CycloInt::from_int(p, n);
    let zero = || CycloInt::zero(p);
    match id {
        IrrId::Lin { a12, a23 } => match rep {
            Y1Y6 { t1, .. } => zeta(e(a12) * e(t1)),
            Y2Y4Y5 { t2, .. } => zeta(e(a23) * e(t2)),
            Y2Y1 { t2, t1 } => zeta(e(a12) * e(t1) + e(a23) * e(t2)),
            _ => int(1),
        },
        IrrId::Q3 { a13 } => match rep {
            Identity | Y4 { .. } | Y5 { .. } | Y6 { .. } => int(q),
            Y3Y5 { t3, .. } => zeta(-(e(a13) * e(t3))).scale(q),
            _ => zero(),
        },
        IrrId::Q4 { a15, a23 } => {
            let a15 = e(a15);
            match rep {
                Identity | Y5 { .. } | Y6 { .. } => int(q),
                Y2Y4Y5 { t2, t4, .. } => {
                    let (t2, t4) = (e(t2), e(t4));
                    expsum(field, |r| -(a15 * t2 * r * r * 2)).mul(&zeta(a15 * t4 * 2 + e(a23) * t2))
                }
                Y4 { t4 } => zeta(a15 * e(t4) * 2).scale(q),
                _ => zero(),
            }
        }
        IrrId::Q5 { a16, a23, a13 } => {
            let (a16, a13) = (e(a16), e(a13));
            match rep {
                Identity | Y6 { .. } => int(q),
                Y2Y4Y5 { t2, t4, t5 } => {
                    let (t2, t4, t5) = (e(t2), e(t4), e(t5));
                    expsum(field, |r| a13 * t2 * r - a16 * t2 * r * r * r + a16 * t4 * r * 3)
                        .mul(&zeta(a16 * t5 + e(a23) * t2))
                }
                Y3Y5 { t3, t5 } => {
                    let (t3, t5) = (e(t3), e(t5));
                    expsum(field, |r| a16 * t3 * r * r * 3).mul(&zeta(a16 * t5 - a13 * t3))
                }
                Y5 { t5 } => zeta(a16 * e(t5)).scale(q),
                _ => zero(),
            }
        }
        IrrId::Q6 { a17, a12 } => {
            let a17 = e(a17);
            match rep {
                Identity => int(q * q),
                Y1Y6 { t1, t6 } => {
                    let t1 = e(t1);
                    expsum(field, |r| -(a17 * t1 * r * r * 3)).mul(&zeta(a17 * e(t6) + e(a12) * t1))
                }
                Y6 { t6 } => zeta(a17 * e(t6)).scale(q * q),
                _ => zero(),
            }
        }
    }
}

pub fn closed_form(field: &Field, id: IrrId, rep: ClassRep) -> Cyclo {
    closed_form_int(field, id, rep).to_cyclo()
}

/// An irreducible character with its values on the classes of `U`.
#[derive(Debug, Clone)]
pub struct IrrChar {
    pub id: IrrId,
    pub family: IrrFamily,
    pub values: ClassFunction,
}

/// Evaluates the closed form of `id` on every class.
pub fn irr_char(field: &Field, classes: &UClasses, id: IrrId) -> Result<IrrChar, ChartableError> {
    require_large_p(field)?;
    id.validate(field.q())?;
    let values = classes.reps.iter().map(|&rep| closed_form(field, id, rep)).collect();
    let values = ClassFunction::new(classes.layout.clone(), values).expect("one value per class");
    Ok(IrrChar { id, family: id.family(), values })
}

/// Rows of irreducible characters on the classes of `U`.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub q: u32,
    pub classes: Vec<ClassRep>,
    pub layout: Arc<ClassLayout>,
    pub chars: Vec<IrrId>,
    pub values: Vec<Vec<Cyclo>>,
}

impl CharacterTable {
    pub fn character(&self, i: usize) -> ClassFunction {
        ClassFunction::new(self.layout.clone(), self.values[i].clone()).expect("one value per class")
    }
}

pub fn character_table(field: &Field, classes: &UClasses, ids: &[IrrId]) -> Result<CharacterTable, ChartableError> {
    require_large_p(field)?;
    for id in ids {
        id.validate(field.q())?;
    }
    let values =
        ids.par_iter().map(|&id| classes.reps.iter().map(|&rep| closed_form(field, id, rep)).collect()).collect();
    Ok(CharacterTable {
        q: field.q(),
        classes: classes.reps.clone(),
        layout: classes.layout.clone(),
        chars: ids.to_vec(),
        values,
    })
}

/// Induced values of every character in `table`, computed by class sums,
/// compared with the closed forms. Returns the first disagreement.
pub fn check_against_induction(group: &G2Syl<'_>, classes: &UClasses, table: &CharacterTable) -> Result<(), String> {
    let field = group.field();
    table
        .chars
        .par_iter()
        .zip(&table.values)
        .find_map_first(|(id, row)| {
            let induced = induce_by_class_sums(group, &classes.partition, group.order(), id.inducing_subgroup(), |t| {
                id.inducing_exponent(field, t)
            });
            induced.iter().zip(row).zip(&table.classes).find(|((a, b), _)| a != b).map(|((a, b), rep)| {
                format!("{id} at {rep}: induced {a}, closed form {b}")
            })
        })
        .map_or(Ok(()), Err)
}

// ---------------------------------------------------------------------------
// Exact Gram matrices.

type Sparse = Vec<(u32, i64)>;

fn sparse(c: &CycloInt) -> Sparse {
    c.coeffs().iter().enumerate().filter(|(_, &v)| v != 0).map(|(j, &v)| (j as u32, v)).collect()
}

fn to_sparse(c: &Cyclo) -> Sparse {
    sparse(&c.to_int().expect("character values are algebraic integers"))
}

/// Checks `Σ_k w_k a_k conj(b_k) = δ_{ab} · diag(a)` for all pairs of rows,
/// returning the first failing pair and its value.
fn gram_check(
    rows: &[Vec<Sparse>],
    weights: &[i64],
    p: u32,
    diag: impl Fn(usize) -> i64 + Sync,
) -> Result<(), (usize, usize, CycloInt)> {
    let pu = p as usize;
    (0..rows.len())
        .into_par_iter()
        .find_map_first(|i| {
            let mut acc = vec![0i64; pu];
            for j in i..rows.len() {
                acc.iter_mut().for_each(|a| *a = 0);
                for (k, w) in weights.iter().enumerate() {
                    for &(ja, ca) in &rows[i][k] {
                        for &(jb, cb) in &rows[j][k] {
                            acc[(ja as usize + pu - jb as usize) % pu] += w * ca * cb;
                        }
                    }
                }
                let mut got = CycloInt::zero(p);
                for (d, &a) in acc.iter().enumerate() {
                    got.add_zeta(d as i64, a);
                }
                let want = CycloInt::from_int(p, if i == j { diag(i) } else { 0 });
                if got != want {
                    return Some((i, j, got));
                }
            }
            None
        })
        .map_or(Ok(()), Err)
}

fn orthonormal(rows: &[Vec<Sparse>], sizes: &[u64], order: u64, p: u32) -> Result<(), (usize, usize, CycloInt)> {
    let w: Vec<i64> = sizes.iter().map(|&s| s as i64).collect();
    gram_check(rows, &w, p, |_| order as i64)
}

// ---------------------------------------------------------------------------
// Verification of the character table.

/// Irreducible characters spread evenly over each family, at most
/// `per_family` of each.
pub fn sample_ids(q: u32, per_family: usize) -> Vec<IrrId> {
    let all = IrrId::all(q);
    let mut out = Vec::new();
    for fam in IrrFamily::ALL {
        let members: Vec<IrrId> = all.iter().copied().filter(|id| id.family() == fam).collect();
        let step = members.len().div_ceil(per_family.max(1)).max(1);
        out.extend(members.iter().step_by(step).copied());
        if let Some(&last) = members.last() {
            if !out.contains(&last) {
                out.push(last);
            }
        }
    }
    out
}

/// Orthonormality, degree counts, completeness, class constancy, column
/// orthogonality, agreement with induced characters, Gauss sums and the
/// decomposition of supercharacters. With `sample`, pairwise checks use at
/// most that many characters per family and column orthogonality,
/// constancy and the supercharacter decomposition use every character.
pub fn verify_character_table(
    group: &G2Syl<'_>,
    budget: u64,
    sample: Option<usize>,
) -> Result<(CharacterTable, Report), ChartableError> {
    let field = group.field();
    require_large_p(field)?;
    let (p, q32) = (field.p(), field.q());
    let q = q32 as u64;
    let order = group.order();
    let mut r = Report::new("character-table");
    let classes = u_classes(group, budget)?;
    let all = IrrId::all(q32);
    let full = character_table(field, &classes, &all)?;

    let mut counts = [0u64; 3];
    for id in &all {
        counts[match id.degree(q) {
            1 => 0,
            d if d == q => 1,
            _ => 2,
        }] += 1;
    }
    r.check("degree counts are q^2, q^3-1, q^2-q", counts == [q * q, q.pow(3) - 1, q * q - q], || {
        format!("{counts:?}")
    });
    let qm = q - 1;
    r.check(
        "degree counts match their (q-1)-expansions",
        counts[0] == qm * qm + 2 * qm + 1
            && counts[1] == qm.pow(3) + 3 * qm * qm + 3 * qm
            && counts[2] == qm * qm + qm
            && class_count(q) == qm.pow(3) + 5 * qm * qm + 6 * qm + 1,
        || format!("{counts:?}"),
    );
    r.check("number of characters equals number of classes", all.len() == classes.reps.len(), || {
        format!("{} characters, {} classes", all.len(), classes.reps.len())
    });
    let deg_sq: u64 = all.iter().map(|id| id.degree(q).pow(2)).sum();
    r.check("sum of squared degrees is q^6", deg_sq == order, || format!("{deg_sq}"));
    let degrees_ok = all.iter().zip(&full.values).all(|(id, row)| row[0] == Cyclo::from_int(p, id.degree(q) as i64));
    r.check("values at the identity are the degrees", degrees_ok, String::new);

    let ids = match sample {
        None => all.clone(),
        Some(n) => sample_ids(q32, n),
    };
    let table = if sample.is_none() { full.clone() } else { character_table(field, &classes, &ids)? };
    let rows: Vec<Vec<Sparse>> = table.values.iter().map(|row| row.iter().map(to_sparse).collect()).collect();
    let ortho = orthonormal(&rows, &classes.layout.sizes, order, p);
    r.check(format!("{} characters are orthonormal", ids.len()), ortho.is_ok(), || {
        let (i, j, v) = ortho.clone().unwrap_err();
        format!("<{}, {}> * |U| = {}", ids[i], ids[j], v.to_cyclo())
    });

    let full_rows: Vec<Vec<Sparse>> = full.values.iter().map(|row| row.iter().map(to_sparse).collect()).collect();
    let cols: Vec<Vec<Sparse>> =
        (0..classes.reps.len()).map(|k| full_rows.iter().map(|row| row[k].clone()).collect()).collect();
    let ones = vec![1i64; all.len()];
    let sizes = classes.layout.sizes.clone();
    let col = gram_check(&cols, &ones, p, |k| (order / sizes[k]) as i64);
    r.check("column orthogonality with centraliser orders", col.is_ok(), || {
        let (i, j, v) = col.clone().unwrap_err();
        format!("columns {} and {}: {}", classes.reps[i], classes.reps[j], v.to_cyclo())
    });

    r.check_result("closed forms equal the induced characters", check_against_induction(group, &classes, &table));

    let constancy = check_constancy(group, &classes, &full, budget, sample.is_some())?;
    r.check_result("closed forms are constant on classes", constancy);

    let mut gauss_ok = Ok(());
    for c in field.units() {
        let s = expsum(field, |x| c * x * x);
        if s.mul(&s.conj()) != CycloInt::from_int(p, q as i64) {
            gauss_ok = Err(format!("|sum theta({c} r^2)|^2 = {}", s.mul(&s.conj()).to_cyclo()));
            break;
        }
    }
    r.check_result("quadratic Gauss sums have squared modulus q", gauss_ok);

    r.extend(verify_supercharacter_decomposition(group, &classes, &full, budget)?);
    Ok((table, r))
}

/// For one character of each family with nonzero parameters, evaluates the
/// induced character at a non-representative member of each class by a
/// full sum over `U` and compares with the closed form at the
/// representative. `sparse_classes` restricts to every seventh class.
fn check_constancy(
    group: &G2Syl<'_>,
    classes: &UClasses,
    table: &CharacterTable,
    budget: u64,
    sparse_classes: bool,
) -> Result<Result<(), String>, ChartableError> {
    let field = group.field();
    let mut picks = Vec::new();
    for fam in IrrFamily::ALL {
        if let Some(i) = table.chars.iter().rposition(|id| id.family() == fam) {
            picks.push(i);
        }
    }
    let step = if sparse_classes { 7 } else { 1 };
    let jobs: Vec<(usize, usize)> =
        picks.iter().flat_map(|&i| (0..classes.reps.len()).step_by(step).map(move |k| (i, k))).collect();
    let out: Result<Vec<Option<String>>, GroupError> = jobs
        .par_iter()
        .map(|&(i, k)| {
            let id = table.chars[i];
            let member = *classes.partition.classes[k].members.last().expect("nonempty class");
            let g = group.coords_of_index(member);
            let v = induce_at(group, id.inducing_subgroup(), |t| id.inducing_exponent(field, t), &g, budget)?;
            Ok((v != table.values[i][k]).then(|| {
                format!("{id} at {:?} in class of {}: {v} vs {}", group.from_coords(g), classes.reps[k], table.values[i][k])
            }))
        })
        .collect();
    Ok(out?.into_iter().flatten().next().map_or(Ok(()), Err))
}

/// Each supercharacter is the stated combination of irreducible
/// characters, and every irreducible character is a constituent of
/// exactly one supercharacter.
pub fn verify_supercharacter_decomposition(
    group: &G2Syl<'_>,
    classes: &UClasses,
    table: &CharacterTable,
    budget: u64,
) -> Result<Report, ChartableError> {
    let field = group.field();
    let (p, q) = (field.p(), field.q());
    let mut r = Report::new("supercharacter-decomposition");
    let supers = superclasses(group, budget)?;
    let (stable, _) = compute_supercharacter_table(group, &supers, budget)?;
    let k_of: Vec<usize> = classes.reps.iter().map(|rep| rep.superclass().index(q)).collect();
    let index: BTreeMap<IrrId, usize> = table.chars.iter().enumerate().map(|(i, &id)| (id, i)).collect();
    let mut combo_ok = Ok(());
    let mut members: Vec<Vec<usize>> = Vec::new();
    for (m, &id) in stable.supermodules.iter().enumerate() {
        let (scale, parts): (i64, Vec<IrrId>) = match id {
            SupermoduleId::Lin(a12, a23) => (1, vec![IrrId::Lin { a12, a23 }]),
            SupermoduleId::M13(a13) => (1, vec![IrrId::Q3 { a13 }]),
            SupermoduleId::M15(a15) => (q as i64, (0..q).map(|a23| IrrId::Q4 { a15, a23 }).collect()),
            SupermoduleId::M16(a16) => (
                q as i64,
                (0..q).flat_map(|a23| (0..q).map(move |a13| IrrId::Q5 { a16, a23, a13 })).collect(),
            ),
            SupermoduleId::M17(a17) => (q as i64, (0..q).map(|a12| IrrId::Q6 { a17, a12 }).collect()),
        };
        let rows: Vec<usize> = parts.iter().map(|id| index[id]).collect();
        members.push(rows.clone());
        for (k, &sk) in k_of.iter().enumerate() {
            let mut sum = Cyclo::zero(p);
            for &i in &rows {
                sum += &table.values[i][k];
            }
            let sum = sum * Cyclo::from_int(p, scale);
            if sum != stable.values[m][sk] {
                combo_ok = Err(format!("{id} at {}: {} vs {sum}", classes.reps[k], stable.values[m][sk]));
                break;
            }
        }
        if combo_ok.is_err() {
            break;
        }
    }
    r.check_result("supercharacters are the stated sums of irreducible characters", combo_ok);

    let rows: Vec<Vec<Sparse>> = table.values.iter().map(|row| row.iter().map(to_sparse).collect()).collect();
    let mut seen = vec![0usize; table.chars.len()];
    let mut overlap = Ok(());
    for (m, id) in stable.supermodules.iter().enumerate() {
        let psi: Vec<Sparse> = k_of.iter().map(|&sk| to_sparse(&stable.values[m][sk])).collect();
        for (i, row) in rows.iter().enumerate() {
            let ip = sparse_inner(&psi, row, &classes.layout.sizes, p);
            if !ip.is_zero() {
                seen[i] += 1;
                if !members[m].contains(&i) {
                    overlap = Err(format!("{} is a constituent of {id}", table.chars[i]));
                }
            }
        }
    }
    let once = seen.iter().position(|&s| s != 1);
    r.check(
        "every irreducible character lies in exactly one supercharacter",
        once.is_none() && overlap.is_ok(),
        || match once {
            Some(i) => format!("{} lies in {} supercharacters", table.chars[i], seen[i]),
            None => overlap.clone().unwrap_err(),
        },
    );
    Ok(r)
}

fn sparse_inner(a: &[Sparse], b: &[Sparse], sizes: &[u64], p: u32) -> CycloInt {
    let pu = p as usize;
    let mut acc = vec![0i64; pu];
    for (k, &w) in sizes.iter().enumerate() {
        for &(ja, ca) in &a[k] {
            for &(jb, cb) in &b[k] {
                acc[(ja as usize + pu - jb as usize) % pu] += w as i64 * ca * cb;
            }
        }
    }
    let mut c = CycloInt::zero(p);
    for (d, &v) in acc.iter().enumerate() {
        c.add_zeta(d as i64, v);
    }
    c
}

// ---------------------------------------------------------------------------
// Subgroup tables.

/// Class representatives of `H = Y1Y4Y5Y6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HClassRep {
    Y5Y6 { t5: u32, t6: u32 },
    Y4Y6 { t4: u32, t6: u32 },
    Y1Y4Y6 { t1: u32, t4: u32, t6: u32 },
}

impl HClassRep {
    pub fn recognise(t: &Coords<'_>) -> Option<HClassRep> {
        let v: [u32; 6] = std::array::from_fn(|i| t[i].value());
        Some(match v {
            [0, 0, 0, 0, t5, t6] => HClassRep::Y5Y6 { t5, t6 },
            [0, 0, 0, t4, 0, t6] if t4 != 0 => HClassRep::Y4Y6 { t4, t6 },
            [t1, 0, 0, t4, 0, t6] if t1 != 0 => HClassRep::Y1Y4Y6 { t1, t4, t6 },
            _ => return None,
        })
    }

    pub fn class_size(&self, q: u64) -> u64 {
        match self {
            HClassRep::Y5Y6 { .. } => 1,
            _ => q,
        }
    }
}

impl fmt::Display for HClassRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HClassRep::Y5Y6 { t5, t6 } => write!(f, "y5({t5})y6({t6})"),
            HClassRep::Y4Y6 { t4, t6 } => write!(f, "y4({t4})y6({t6})"),
            HClassRep::Y1Y4Y6 { t1, t4, t6 } => write!(f, "y1({t1})y4({t4})y6({t6})"),
        }
    }
}

/// Irreducible characters of `H`: linear ones lifted from `H/Y5`, and
/// `Ind_N^H λ` for `λ(y4y5y6) = θ(A17 t6 + A16 t5)` with `A16 ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HChar {
    Lin { a17: u32, a15: u32, a12: u32 },
    Ind { a17: u32, a16: u32 },
}

impl HChar {
    pub fn all(q: u32) -> Vec<HChar> {
        let mut v = Vec::new();
        for a17 in 0..q {
            for a15 in 0..q {
                v.extend((0..q).map(|a12| HChar::Lin { a17, a15, a12 }));
            }
        }
        for a17 in 0..q {
            v.extend((1..q).map(|a16| HChar::Ind { a17, a16 }));
        }
        v
    }

    pub fn degree(&self, q: u64) -> u64 {
        match self {
            HChar::Lin { .. } => 1,
            HChar::Ind { .. } => q,
        }
    }

    pub fn closed_form(&self, field: &Field, rep: HClassRep) -> CycloInt {
        let e = |v| fe(field, v);
        let q = field.q() as i64;
        match (*self, rep) {
            (HChar::Lin { a17, .. }, HClassRep::Y5Y6 { t6, .. }) => zeta(e(a17) * e(t6)),
            (HChar::Lin { a17, a15, .. }, HClassRep::Y4Y6 { t4, t6 }) => {
                zeta(e(a17) * e(t6) + e(a15) * e(t4) * 2)
            }
            (HChar::Lin { a17, a15, a12 }, HClassRep::Y1Y4Y6 { t1, t4, t6 }) => {
                zeta(e(a17) * e(t6) + e(a15) * e(t4) * 2 + e(a12) * e(t1))
            }
            (HChar::Ind { a17, a16 }, HClassRep::Y5Y6 { t5, t6 }) => zeta(e(a17) * e(t6) + e(a16) * e(t5)).scale(q),
            (HChar::Ind { .. }, _) => CycloInt::zero(field.p()),
        }
    }
}

impl fmt::Display for HChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HChar::Lin { a17, a15, a12 } => write!(f, "chi~(A17={a17},A15={a15},A12={a12})"),
            HChar::Ind { a17, a16 } => write!(f, "Ind_N^H lambda(A17={a17},A16={a16})"),
        }
    }
}

/// Class representatives of `T = Y2Y3Y4Y5Y6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TClassRep {
    Y6 { t6: u32 },
    Y5 { t5: u32 },
    Y4Y5 { t4: u32, t5: u32 },
    Y3Y4Y5 { t3: u32, t4: u32, t5: u32 },
    Y2Y3Y4Y5 { t2: u32, t3: u32, t4: u32, t5: u32 },
}

impl TClassRep {
    pub fn recognise(t: &Coords<'_>) -> Option<TClassRep> {
        let v: [u32; 6] = std::array::from_fn(|i| t[i].value());
        Some(match v {
            [0, 0, 0, 0, 0, t6] => TClassRep::Y6 { t6 },
            [0, 0, 0, 0, t5, 0] if t5 != 0 => TClassRep::Y5 { t5 },
            [0, 0, 0, t4, t5, 0] if t4 != 0 => TClassRep::Y4Y5 { t4, t5 },
            [0, 0, t3, t4, t5, 0] if t3 != 0 => TClassRep::Y3Y4Y5 { t3, t4, t5 },
            [0, t2, t3, t4, t5, 0] if t2 != 0 => TClassRep::Y2Y3Y4Y5 { t2, t3, t4, t5 },
            _ => return None,
        })
    }

    pub fn class_size(&self, q: u64) -> u64 {
        match self {
            TClassRep::Y6 { .. } => 1,
            _ => q,
        }
    }
}

impl fmt::Display for TClassRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TClassRep::Y6 { t6 } => write!(f, "y6({t6})"),
            TClassRep::Y5 { t5 } => write!(f, "y5({t5})"),
            TClassRep::Y4Y5 { t4, t5 } => write!(f, "y4({t4})y5({t5})"),
            TClassRep::Y3Y4Y5 { t3, t4, t5 } => write!(f, "y3({t3})y4({t4})y5({t5})"),
            TClassRep::Y2Y3Y4Y5 { t2, t3, t4, t5 } => write!(f, "y2({t2})y3({t3})y4({t4})y5({t5})"),
        }
    }
}

/// Irreducible characters of `T`: linear ones lifted from `T/Y6`, and
/// `Ind_N^T λ` for `λ(y4y5y6) = θ(A17 t6)` with `A17 ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TChar {
    Lin { a16: u32, a15: u32, a13: u32, a23: u32 },
    Ind { a17: u32 },
}

impl TChar {
    pub fn all(q: u32) -> Vec<TChar> {
        let mut v = Vec::new();
        for a16 in 0..q {
            for a15 in 0..q {
                for a13 in 0..q {
                    v.extend((0..q).map(|a23| TChar::Lin { a16, a15, a13, a23 }));
                }
            }
        }
        v.extend((1..q).map(|a17| TChar::Ind { a17 }));
        v
    }

    pub fn degree(&self, q: u64) -> u64 {
        match self {
            TChar::Lin { .. } => 1,
            TChar::Ind { .. } => q * q,
        }
    }

    pub fn closed_form(&self, field: &Field, rep: TClassRep) -> CycloInt {
        let e = |v| fe(field, v);
        let q = field.q() as i64;
        match *self {
            TChar::Lin { a16, a15, a13, a23 } => {
                let (t2, t3, t4, t5) = match rep {
                    TClassRep::Y6 { .. } => (0, 0, 0, 0),
                    TClassRep::Y5 { t5 } => (0, 0, 0, t5),
                    TClassRep::Y4Y5 { t4, t5 } => (0, 0, t4, t5),
                    TClassRep::Y3Y4Y5 { t3, t4, t5 } => (0, t3, t4, t5),
                    TClassRep::Y2Y3Y4Y5 { t2, t3, t4, t5 } => (t2, t3, t4, t5),
                };
                zeta(e(a16) * e(t5) + e(a15) * e(t4) * 2 - e(a13) * e(t3) + e(a23) * e(t2))
            }
            TChar::Ind { a17 } => match rep {
                TClassRep::Y6 { t6 } => zeta(e(a17) * e(t6)).scale(q * q),
                _ => CycloInt::zero(field.p()),
            },
        }
    }
}

impl fmt::Display for TChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TChar::Lin { a16, a15, a13, a23 } => write!(f, "psi(A16={a16},A15={a15},A13={a13},A23={a23})"),
            TChar::Ind { a17 } => write!(f, "Ind_N^T lambda(A17={a17})"),
        }
    }
}

/// Inputs for checking the character table of a pattern subgroup.
struct SubgroupCase<'a, 'f, R, C> {
    name: &'a str,
    sub: Subgroup,
    recognise: fn(&Coords<'_>) -> Option<R>,
    rep_size: fn(&R, u64) -> u64,
    chars: Vec<C>,
    degree: fn(&C, u64) -> u64,
    value: &'a (dyn Fn(&C, R) -> CycloInt + Sync),
    /// Exponent on `N` for characters induced from `N`.
    induced: &'a (dyn Fn(&C, &Coords<'f>) -> Option<Fq<'f>> + Sync),
    expected_counts: (u64, u64),
}

fn verify_subgroup_case<'f, R, C>(
    group: &G2Syl<'f>,
    case: SubgroupCase<'_, 'f, R, C>,
    r: &mut Report,
) -> Option<(ClassPartition, Vec<R>, Vec<Vec<CycloInt>>)>
where
    R: Ord + Copy + fmt::Display + Sync,
    C: Copy + fmt::Display + Sync,
{
    let q = group.q();
    let p = group.field().p();
    let n = case.name;
    let partition = classes_under(group, &case.sub.elements(group), &case.sub.generators(group));
    let (partition, reps) = match attach_reps(group, partition, case.recognise) {
        Ok(x) => {
            r.check(format!("{n}: every class contains exactly one listed representative"), true, String::new);
            x
        }
        Err(w) => {
            r.check(format!("{n}: every class contains exactly one listed representative"), false, || w);
            return None;
        }
    };
    let sizes_ok = reps.iter().zip(&partition.classes).find(|(rep, c)| (case.rep_size)(rep, q) != c.size() as u64);
    r.check(format!("{n}: class sizes"), sizes_ok.is_none(), || {
        let (rep, c) = sizes_ok.unwrap();
        format!("{rep}: {}", c.size())
    });
    let order = case.sub.order(q);
    let (lin, big) = case.expected_counts;
    let nlin = case.chars.iter().filter(|c| (case.degree)(c, q) == 1).count() as u64;
    let nbig = case.chars.len() as u64 - nlin;
    r.check(format!("{n}: {lin} linear characters and {big} of larger degree"), nlin == lin && nbig == big, || {
        format!("{nlin} and {nbig}")
    });
    r.check(
        format!("{n}: as many characters as classes"),
        case.chars.len() == partition.len(),
        || format!("{} characters, {} classes", case.chars.len(), partition.len()),
    );
    let sq: u64 = case.chars.iter().map(|c| (case.degree)(c, q).pow(2)).sum();
    r.check(format!("{n}: sum of squared degrees is the order"), sq == order, || format!("{sq}"));
    let values: Vec<Vec<CycloInt>> =
        case.chars.par_iter().map(|c| reps.iter().map(|&rep| (case.value)(c, rep)).collect()).collect();
    let id_class = partition.class_of[0] as usize;
    let degree_ok = case
        .chars
        .iter()
        .zip(&values)
        .all(|(c, row)| row[id_class] == CycloInt::from_int(p, (case.degree)(c, q) as i64));
    r.check(format!("{n}: values at the identity are the degrees"), degree_ok, String::new);
    let rows: Vec<Vec<Sparse>> = values.iter().map(|row| row.iter().map(sparse).collect()).collect();
    let sizes: Vec<u64> = partition.classes.iter().map(|c| c.size() as u64).collect();
    let ortho = orthonormal(&rows, &sizes, order, p);
    r.check(format!("{n}: characters are orthonormal"), ortho.is_ok(), || {
        let (i, j, v) = ortho.clone().unwrap_err();
        format!("<{}, {}> * |{n}| = {}", case.chars[i], case.chars[j], v.to_cyclo())
    });
    let induced_bad = case.chars.par_iter().zip(&values).find_map_first(|(c, row)| {
        let first = group.zero_coords();
        (case.induced)(c, &first)?;
        let ind = induce_by_class_sums(group, &partition, order, Subgroup::N, |t| {
            (case.induced)(c, t).expect("induced character")
        });
        ind.iter().zip(row).zip(&reps).find(|((a, b), _)| **a != b.to_cyclo()).map(|((a, b), rep)| {
            format!("{c} at {rep}: induced {a}, closed form {}", b.to_cyclo())
        })
    });
    r.check(format!("{n}: induced characters equal their closed forms"), induced_bad.is_none(), || {
        induced_bad.clone().unwrap()
    });
    Some((partition, reps, values))
}

/// Character tables of `H = Y1Y4Y5Y6` and `T = Y2Y3Y4Y5Y6` by brute force.
pub fn verify_subgroup_tables<'f>(group: &G2Syl<'f>, budget: u64) -> Result<Report, ChartableError> {
    let field = group.field();
    require_large_p(field)?;
    group.check_budget(group.order(), budget)?;
    let (q32, q) = (field.q(), group.q());
    let mut r = Report::new("subgroup-tables");

    let h_chars = HChar::all(q32);
    let h_value = |c: &HChar, rep: HClassRep| c.closed_form(field, rep);
    let h_induced = |c: &HChar, t: &Coords<'f>| -> Option<Fq<'f>> {
        match *c {
            HChar::Ind { a17, a16 } => Some(fe(field, a17) * t[5] + fe(field, a16) * t[4]),
            HChar::Lin { .. } => None,
        }
    };
    let h = verify_subgroup_case(
        group,
        SubgroupCase {
            name: "H",
            sub: Subgroup::H,
            recognise: HClassRep::recognise,
            rep_size: HClassRep::class_size,
            chars: h_chars.clone(),
            degree: HChar::degree,
            value: &h_value,
            induced: &h_induced,
            expected_counts: (q.pow(3), (q - 1) * q),
        },
        &mut r,
    );
    if let Some((partition, reps, values)) = h {
        let index: BTreeMap<HChar, usize> = h_chars.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut ok = Ok(());
        for a17 in 1..q32 {
            let ind = induce_by_class_sums(group, &partition, Subgroup::H.order(q), Subgroup::N, |t| fe(field, a17) * t[5]);
            for (k, rep) in reps.iter().enumerate() {
                let mut sum = CycloInt::zero(field.p());
                for a12 in 0..q32 {
                    sum.add_assign(&values[index[&HChar::Lin { a17, a15: 0, a12 }]][k]);
                }
                if sum.to_cyclo() != ind[k] {
                    ok = Err(format!("A17={a17} at {rep}: {} vs {}", ind[k], sum.to_cyclo()));
                }
            }
        }
        r.check_result("H: inducing theta(A17 t6) from N gives the sum over A12 of the linear characters", ok);
    }

    let t_value = |c: &TChar, rep: TClassRep| c.closed_form(field, rep);
    let t_induced = |c: &TChar, t: &Coords<'f>| -> Option<Fq<'f>> {
        match *c {
            TChar::Ind { a17 } => Some(fe(field, a17) * t[5]),
            TChar::Lin { .. } => None,
        }
    };
    verify_subgroup_case(
        group,
        SubgroupCase {
            name: "T",
            sub: Subgroup::T,
            recognise: TClassRep::recognise,
            rep_size: TClassRep::class_size,
            chars: TChar::all(q32),
            degree: TChar::degree,
            value: &t_value,
            induced: &t_induced,
            expected_counts: (q.pow(4), q - 1),
        },
        &mut r,
    );
    Ok(r)
}
