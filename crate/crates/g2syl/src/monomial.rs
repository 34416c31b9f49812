//! The monomial linearisation of `U`.
//!
//! Patterns live in the 6-dimensional space `V` of matrices supported on
//! `J = {(1,2),(1,3),(1,4),(1,5),(1,6),(1,7),(2,3)}` with `A14 = A15`. The
//! trace form `κ(A,B) = tr(AᵀB)`, the projection `π` onto `V` and the
//! cocycle `f = π|_G` give the characters `χ_A(u) = θ(κ(A, f(u)))`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::cyclo::{theta, Cyclo};
use crate::ffield::{Field, Fq};
use crate::matgroup::{entries, Coords, G2Syl, Mat8};

/// Matrix positions of the six stored slots; the `(1,5)` slot also stands
/// for `(1,4)`.
pub const SLOTS: [(usize, usize); 6] = [(1, 2), (1, 3), (1, 5), (1, 6), (1, 7), (2, 3)];

/// Serialized names of the slots.
pub const SLOT_NAMES: [&str; 6] = ["A12", "A13", "A15", "A16", "A17", "A23"];

/// Slot indices.
pub const S12: usize = 0;
pub const S13: usize = 1;
pub const S15: usize = 2;
pub const S16: usize = 3;
pub const S17: usize = 4;
pub const S23: usize = 5;

/// An element of `V`, stored as `(A12, A13, A15, A16, A17, A23)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pattern<'f> {
    a: [Fq<'f>; 6],
}

impl<'f> Pattern<'f> {
    pub fn new(a: [Fq<'f>; 6]) -> Self {
        Pattern { a }
    }

    pub fn zero(field: &'f Field) -> Self {
        Pattern { a: [field.zero(); 6] }
    }

    /// `c` in slot `s`, zero elsewhere.
    pub fn unit(field: &'f Field, s: usize, c: Fq<'f>) -> Self {
        let mut p = Self::zero(field);
        p.a[s] = c;
        p
    }

    /// The six basis patterns `e12, e13, e14+e15, e16, e17, e23`.
    pub fn basis(field: &'f Field) -> [Self; 6] {
        std::array::from_fn(|s| Self::unit(field, s, field.one()))
    }

    pub fn field(&self) -> &'f Field {
        self.a[0].field()
    }

    pub fn slots(&self) -> [Fq<'f>; 6] {
        self.a
    }

    pub fn get(&self, s: usize) -> Fq<'f> {
        self.a[s]
    }

    pub fn with(mut self, s: usize, c: Fq<'f>) -> Self {
        self.a[s] = c;
        self
    }

    pub fn a12(&self) -> Fq<'f> {
        self.a[S12]
    }
    pub fn a13(&self) -> Fq<'f> {
        self.a[S13]
    }
    pub fn a15(&self) -> Fq<'f> {
        self.a[S15]
    }
    pub fn a16(&self) -> Fq<'f> {
        self.a[S16]
    }
    pub fn a17(&self) -> Fq<'f> {
        self.a[S17]
    }
    pub fn a23(&self) -> Fq<'f> {
        self.a[S23]
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|x| x.is_zero())
    }

    /// Entry at a matrix position, zero off `J`.
    pub fn entry(&self, i: usize, j: usize) -> Fq<'f> {
        match (i, j) {
            (1, 4) => self.a[S15],
            _ => SLOTS
                .iter()
                .position(|&p| p == (i, j))
                .map_or(self.field().zero(), |s| self.a[s]),
        }
    }

    /// Nonzero positions, `(1,4)` included when the tied slot is nonzero.
    pub fn support(&self) -> Vec<(usize, usize)> {
        J.iter().copied().filter(|&(i, j)| !self.entry(i, j).is_zero()).collect()
    }

    /// Integer encoding with `A12` most significant.
    pub fn index(&self) -> usize {
        let q = self.field().q() as usize;
        self.a.iter().fold(0, |acc, x| acc * q + x.value() as usize)
    }

    pub fn from_index(field: &'f Field, mut idx: usize) -> Self {
        let q = field.q() as usize;
        let mut a = [field.zero(); 6];
        for s in (0..6).rev() {
            a[s] = field.elem_unchecked((idx % q) as u32);
            idx /= q;
        }
        Pattern { a }
    }

    /// All `q⁶` patterns in index order.
    pub fn all(field: &'f Field) -> impl Iterator<Item = Self> + 'f {
        let n = (field.q() as usize).pow(6);
        (0..n).map(move |i| Self::from_index(field, i))
    }

    pub fn to_mat8(&self) -> Mat8<'f> {
        let mut m = Mat8::zero(self.field());
        for (i, j) in J {
            m.set(i, j, self.entry(i, j));
        }
        m
    }

    pub fn scale(&self, c: Fq<'f>) -> Self {
        Pattern { a: self.a.map(|x| x * c) }
    }
}

/// The support set `J`.
pub const J: [(usize, usize); 7] = [(1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7), (2, 3)];

impl<'f> Add for Pattern<'f> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Pattern { a: std::array::from_fn(|s| self.a[s] + o.a[s]) }
    }
}

impl<'f> Sub for Pattern<'f> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Pattern { a: std::array::from_fn(|s| self.a[s] - o.a[s]) }
    }
}

impl<'f> Neg for Pattern<'f> {
    type Output = Self;
    fn neg(self) -> Self {
        Pattern { a: self.a.map(|x| -x) }
    }
}

impl fmt::Debug for Pattern<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            SLOT_NAMES.iter().zip(&self.a).map(|(n, x)| format!("{n}={}", x.value())).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

impl Serialize for Pattern<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(6))?;
        for (n, x) in SLOT_NAMES.iter().zip(&self.a) {
            m.serialize_entry(n, &x.value())?;
        }
        m.end()
    }
}

/// `κ(A,B) = tr(AᵀB)` on full matrices.
pub fn trace_form<'f>(a: &Mat8<'f>, b: &Mat8<'f>) -> Fq<'f> {
    let mut s = a.field().zero();
    for i in 1..=8 {
        for j in 1..=8 {
            s += a.get(i, j) * b.get(i, j);
        }
    }
    s
}

/// `κ` restricted to `V`; the tied slot counts twice.
#[inline]
pub fn kappa<'f>(a: &Pattern<'f>, b: &Pattern<'f>) -> Fq<'f> {
    let x = &a.a;
    let y = &b.a;
    x[S12] * y[S12] + x[S13] * y[S13] + x[S15] * y[S15] * 2 + x[S16] * y[S16] + x[S17] * y[S17]
        + x[S23] * y[S23]
}

/// The projection `π : Mat8 → V`, averaging `(1,4)` and `(1,5)`.
pub fn pi<'f>(m: &Mat8<'f>) -> Pattern<'f> {
    let field = m.field();
    let half = field.from_int(2).inv().expect("p is odd");
    Pattern {
        a: [
            m.get(1, 2),
            m.get(1, 3),
            (m.get(1, 4) + m.get(1, 5)) * half,
            m.get(1, 6),
            m.get(1, 7),
            m.get(2, 3),
        ],
    }
}

/// The cocycle `f(g) = π(g)` on `G8(q)` (or `U`) given by its matrix.
pub fn f_cocycle<'f>(g: &Mat8<'f>) -> Pattern<'f> {
    pi(g)
}

/// `f(y(t))` read off the first two rows of `y(t)`.
#[inline]
pub fn f_coords<'f>(t: &Coords<'f>) -> Pattern<'f> {
    let e = entries(t);
    Pattern { a: [e.m12, e.m13, e.m14, e.m16, e.m17, e.m23] }
}

/// `A∘g = π(Ag)`.
pub fn act_circ<'f>(a: &Pattern<'f>, g: &Mat8<'f>) -> Pattern<'f> {
    pi(&(a.to_mat8() * *g))
}

/// `A.g = π(A g^{-T})` for unitriangular `g`.
pub fn act_dot<'f>(a: &Pattern<'f>, g: &Mat8<'f>) -> Pattern<'f> {
    pi(&(a.to_mat8() * g.inv_unitriangular().transpose()))
}

/// `u.A = π(u^{-T} A)`.
pub fn act_left<'f>(u: &Mat8<'f>, a: &Pattern<'f>) -> Pattern<'f> {
    pi(&(u.inv_unitriangular().transpose() * a.to_mat8()))
}

/// `χ_A(u) = θ(κ(A, f(u)))`.
pub fn chi_a(a: &Pattern<'_>, u: &Coords<'_>) -> Cyclo {
    theta(kappa(a, &f_coords(u)))
}

/// The `F_q`-linear map `A ↦ A.u` for a fixed `u ∈ U`, read off the
/// entries of `u⁻¹`. Rows give the new slots in terms of the old.
#[derive(Clone, Copy, Debug)]
pub struct DotAction<'f> {
    n23: Fq<'f>,
    n24: Fq<'f>,
    n26: Fq<'f>,
    n27: Fq<'f>,
    n34: Fq<'f>,
    n36: Fq<'f>,
    n37: Fq<'f>,
    n46: Fq<'f>,
    n47: Fq<'f>,
    n67: Fq<'f>,
}

impl<'f> DotAction<'f> {
    pub fn new(group: &G2Syl<'f>, u: &Coords<'f>) -> Self {
        let e = entries(&group.inv_coords(u));
        DotAction {
            n23: e.m23,
            n24: e.m24,
            n26: e.m26,
            n27: e.m27,
            n34: e.m34,
            n36: e.m36,
            n37: e.m37,
            n46: e.m46,
            n47: e.m47,
            n67: e.m67,
        }
    }

    #[inline]
    pub fn apply(&self, a: &Pattern<'f>) -> Pattern<'f> {
        let [a12, a13, a15, a16, a17, a23] = a.a;
        let two15 = a15 * 2;
        Pattern {
            a: [
                a12 + a13 * self.n23 + two15 * self.n24 + a16 * self.n26 + a17 * self.n27,
                a13 + two15 * self.n34 + a16 * self.n36 + a17 * self.n37,
                a15 + a16 * self.n46 + a17 * self.n47,
                a16 + a17 * self.n67,
                a17,
                a23,
            ],
        }
    }

    /// The matrix `M` with `(A.u)_s = Σ_r M[s][r] A_r`.
    pub fn matrix(&self) -> [[Fq<'f>; 6]; 6] {
        let field = self.n23.field();
        let z = field.zero();
        let o = field.one();
        [
            [o, self.n23, self.n24 * 2, self.n26, self.n27, z],
            [z, o, self.n34 * 2, self.n36, self.n37, z],
            [z, z, o, self.n46, self.n47, z],
            [z, z, z, o, self.n67, z],
            [z, z, z, z, o, z],
            [z, z, z, z, z, o],
        ]
    }
}

/// `A.u` for `u ∈ U` via [`DotAction`].
pub fn act_dot_coords<'f>(group: &G2Syl<'f>, a: &Pattern<'f>, u: &Coords<'f>) -> Pattern<'f> {
    let r = DotAction::new(group, u).apply(a);
    debug_assert_eq!(r, act_dot(a, &group.closed_form(u)));
    r
}

/// `u.A = A − t1·A13·e23` for `u = y(t)`.
pub fn act_left_coords<'f>(u: &Coords<'f>, a: &Pattern<'f>) -> Pattern<'f> {
    a.with(S23, a.a23() - u[0] * a.a13())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::matgroup::{random_g8, G8Elem};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rand_pattern<'f>(f: &'f Field, rng: &mut ChaCha8Rng) -> Pattern<'f> {
        Pattern::new(std::array::from_fn(|_| f.elem(rng.gen_range(0..f.q())).unwrap()))
    }

    fn rand_coords<'f>(f: &'f Field, rng: &mut ChaCha8Rng) -> Coords<'f> {
        std::array::from_fn(|_| f.elem(rng.gen_range(0..f.q())).unwrap())
    }

    #[test]
    fn projection_basics() {
        let f = Field::new(5, 1).unwrap();
        assert!(pi(&Mat8::identity(&f)).is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let a = rand_pattern(&f, &mut rng);
            assert_eq!(pi(&a.to_mat8()), a);
        }
        let mut e14 = Mat8::zero(&f);
        e14.set(1, 4, f.one());
        let half = f.from_int(2).inv().unwrap();
        assert_eq!(pi(&e14), Pattern::unit(&f, S15, half));
    }

    #[test]
    fn kappa_matches_trace_form_and_is_nondegenerate() {
        let f = Field::new(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let a = rand_pattern(&f, &mut rng);
            let b = rand_pattern(&f, &mut rng);
            assert_eq!(kappa(&a, &b), trace_form(&a.to_mat8(), &b.to_mat8()));
            assert_eq!(kappa(&a, &b), kappa(&b, &a));
            assert!(kappa(&a, &Pattern::zero(&f)).is_zero());
        }
        let basis = Pattern::basis(&f);
        assert_eq!(kappa(&basis[S12], &basis[S12]), f.one());
        for b in &basis {
            assert!(basis.iter().any(|c| !kappa(b, c).is_zero()));
        }
        let gram: Vec<Vec<Fq>> =
            basis.iter().map(|b| basis.iter().map(|c| kappa(b, c)).collect()).collect();
        assert_eq!(Matrix::from_rows(&gram).rank(), 6);
    }

    #[test]
    fn complement_decomposition() {
        let f = Field::new(5, 1).unwrap();
        let v: Vec<Mat8> = Pattern::basis(&f).iter().map(Pattern::to_mat8).collect();
        let mut w = Vec::new();
        for i in 1..=8 {
            for j in 1..=8 {
                if !J.contains(&(i, j)) {
                    let mut m = Mat8::zero(&f);
                    m.set(i, j, f.one());
                    w.push(m);
                }
            }
        }
        let mut d = Mat8::zero(&f);
        d.set(1, 5, f.one());
        d.set(1, 4, -f.one());
        w.push(d);
        assert_eq!(w.len(), 58);
        for x in &w {
            assert!(pi(x).is_zero());
            for y in &v {
                assert!(trace_form(x, y).is_zero());
            }
        }
        let rows: Vec<Vec<Fq>> = v
            .iter()
            .chain(&w)
            .map(|m| (1..=8).flat_map(|i| (1..=8).map(move |j| m.get(i, j))).collect())
            .collect();
        assert_eq!(Matrix::from_rows(&rows).rank(), 64);
        let vrows: Vec<Vec<Fq>> = rows[..6].to_vec();
        assert_eq!(Matrix::from_rows(&vrows).rank(), 6);
        // π² = π on random full matrices
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let mut m = Mat8::zero(&f);
            for i in 1..=8 {
                for j in 1..=8 {
                    m.set(i, j, f.elem(rng.gen_range(0..5)).unwrap());
                }
            }
            let p = pi(&m);
            assert_eq!(pi(&p.to_mat8()), p);
        }
    }

    #[test]
    fn cocycle_on_u_reads_first_rows() {
        let f = Field::new(5, 1).unwrap();
        let g = G2Syl::new(&f);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..200 {
            let t = rand_coords(&f, &mut rng);
            let fu = f_coords(&t);
            assert_eq!(fu, f_cocycle(&g.closed_form(&t)));
            assert_eq!((fu.a12(), fu.a23(), fu.a13()), (t[0], t[1], -t[2]));
        }
        assert!(f_coords(&g.zero_coords()).is_zero());
    }

    #[test]
    fn cocycle_bijective_at_q5() {
        let f = Field::new(5, 1).unwrap();
        let g = G2Syl::new(&f);
        let mut seen = vec![false; 15625];
        for t in g.all_coords(15625).unwrap() {
            seen[f_coords(&t).index()] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn cocycle_law_on_g8() {
        let f = Field::new(5, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10_000 {
            let x = random_g8(&f, &mut rng);
            let h = random_g8(&f, &mut rng);
            let lhs = f_cocycle(x.mul(&h).mat());
            let rhs = act_circ(&f_cocycle(x.mat()), h.mat()) + f_cocycle(h.mat());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn actions_are_right_actions_and_dual() {
        let f = Field::new(5, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..1000 {
            let a = rand_pattern(&f, &mut rng);
            let b = rand_pattern(&f, &mut rng);
            let g = random_g8(&f, &mut rng);
            let h = random_g8(&f, &mut rng);
            let gh = g.mul(&h);
            assert_eq!(act_circ(&act_circ(&a, g.mat()), h.mat()), act_circ(&a, gh.mat()));
            assert_eq!(act_dot(&act_dot(&a, g.mat()), h.mat()), act_dot(&a, gh.mat()));
            assert_eq!(kappa(&act_dot(&a, g.mat()), &b), kappa(&a, &act_circ(&b, g.inv().mat())));
        }
        let a = rand_pattern(&f, &mut rng);
        assert_eq!(act_dot(&a, &Mat8::identity(&f)), a);
    }

    #[test]
    fn dot_action_is_linear() {
        let f = Field::new(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let g: G8Elem = random_g8(&f, &mut rng);
            let imgs: Vec<Pattern> =
                Pattern::basis(&f).iter().map(|b| act_dot(b, g.mat())).collect();
            let a = rand_pattern(&f, &mut rng);
            let by_basis =
                (0..6).fold(Pattern::zero(&f), |acc, s| acc + imgs[s].scale(a.get(s)));
            assert_eq!(act_dot(&a, g.mat()), by_basis);
        }
    }

    #[test]
    fn fast_dot_action_matches_matrices() {
        for q in [5u64, 9] {
            let f = Field::with_order(q).unwrap();
            let g = G2Syl::new(&f);
            let mut rng = ChaCha8Rng::seed_from_u64(8);
            for _ in 0..300 {
                let a = rand_pattern(&f, &mut rng);
                let u = rand_coords(&f, &mut rng);
                let act = DotAction::new(&g, &u);
                let r = act.apply(&a);
                assert_eq!(r, act_dot(&a, &g.closed_form(&u)));
                let m = act.matrix();
                let via: [Fq; 6] =
                    std::array::from_fn(|s| (0..6).map(|k| m[s][k] * a.get(k)).sum());
                assert_eq!(r.slots(), via);
            }
        }
    }

    #[test]
    fn left_action_truncated_row_operation() {
        let f = Field::new(5, 1).unwrap();
        let g = G2Syl::new(&f);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..300 {
            let a = rand_pattern(&f, &mut rng);
            let u = rand_coords(&f, &mut rng);
            let full = act_left(&g.closed_form(&u), &a);
            assert_eq!(full, act_left_coords(&u, &a));
            assert_eq!(full, a.with(S23, a.a23() - u[0] * a.a13()));
        }
    }

    #[test]
    fn left_and_right_actions_commute_on_small_support() {
        let f = Field::new(5, 1).unwrap();
        let g = G2Syl::new(&f);
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..1000 {
            let b = Pattern::zero(&f)
                .with(S12, f.elem(rng.gen_range(0..5)).unwrap())
                .with(S13, f.elem(rng.gen_range(0..5)).unwrap())
                .with(S23, f.elem(rng.gen_range(0..5)).unwrap());
            let x = g.closed_form(&rand_coords(&f, &mut rng));
            let u = g.closed_form(&rand_coords(&f, &mut rng));
            assert_eq!(act_left(&x, &act_dot(&b, &u)), act_dot(&act_left(&x, &b), &u));
        }
    }

    #[test]
    fn linear_characters() {
        let f = Field::new(5, 1).unwrap();
        let g = G2Syl::new(&f);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let one = Cyclo::one(5);
        for _ in 0..100 {
            let a = rand_pattern(&f, &mut rng);
            let t = rand_coords(&f, &mut rng);
            assert_eq!(chi_a(&Pattern::zero(&f), &t), one);
            assert_eq!(chi_a(&a, &g.zero_coords()), one);
            let c = f.elem(rng.gen_range(0..5)).unwrap();
            assert_eq!(chi_a(&Pattern::unit(&f, S23, c), &t), theta(c * t[1]));
        }
    }

    #[test]
    fn pattern_encoding() {
        let f = Field::new(3, 1).unwrap();
        for (i, p) in Pattern::all(&f).enumerate() {
            assert_eq!(p.index(), i);
        }
        let p = Pattern::from_index(&f, 5);
        assert_eq!(p.a23().value(), 2);
        assert_eq!(p.a17().value(), 1);
        let js: serde_json::Value = serde_json::to_value(p).unwrap();
        assert_eq!(js["A23"], 2);
        assert_eq!(js["A17"], 1);
        assert_eq!(p.support(), vec![(1, 7), (2, 3)]);
        let q = Pattern::unit(&f, S15, f.one());
        assert_eq!(q.support(), vec![(1, 4), (1, 5)]);
    }
}
