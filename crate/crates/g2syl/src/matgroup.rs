//! The group `U = G2syl(q)` of 8×8 upper unitriangular matrices.
//!
//! Elements are parametrised by canonical coordinates `(t1, ..., t6)` through
//! `y(t) = y2(t2) y1(t1) y3(t3) y4(t4) y5(t5) y6(t6)`, where `y_i(t) = exp(t e_i)`
//! for the six positive root elements `e_i`. The intermediate algebra group
//! `G8(q)` with `U <= G8(q) <= A8(q)` is provided through its membership test
//! and generators.

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;
use std::ops::{Add, Mul, Sub};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::cyclo::ClassLayout;
use crate::ffield::{Field, Fq};
use crate::report::Report;

/// Default enumeration cap: `|U| = q^6` for `q <= 9`.
pub const DEFAULT_BUDGET: u64 = 531_441;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("matrix is not an element of G2syl(q): {0}")]
    NotMember(String),
    #[error("matrix violates the G8(q) constraints")]
    NotInG8,
    #[error("coordinate ({0},{1}) is not a G8(q) generator position")]
    BadG8Position(usize, usize),
    #[error("root index {0} is outside 1..=6")]
    BadRoot(usize),
    #[error("enumeration of {needed} elements exceeds the budget of {budget}")]
    Budget { needed: u64, budget: u64 },
    #[error("element index {0} out of range")]
    BadIndex(usize),
}

// ---------------------------------------------------------------------------
// Integer 8×8 matrices for the Chevalley basis.

/// Exact integer 8×8 matrix, indexed from 1.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct IntMat8 {
    e: [i64; 64],
}

impl IntMat8 {
    pub fn zero() -> Self {
        IntMat8 { e: [0; 64] }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 1..=8 {
            m.set(i, i, 1);
        }
        m
    }

    /// The matrix unit `e_{i,j}`.
    pub fn unit(i: usize, j: usize) -> Self {
        let mut m = Self::zero();
        m.set(i, j, 1);
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.e[(i - 1) * 8 + (j - 1)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.e[(i - 1) * 8 + (j - 1)] = v;
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut m = *self;
        m.e.iter_mut().for_each(|x| *x *= k);
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero();
        for i in 1..=8 {
            for j in 1..=8 {
                m.set(j, i, self.get(i, j));
            }
        }
        m
    }

    /// Lie bracket `[a, b] = ab - ba`.
    pub fn bracket(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|&x| x == 0)
    }

    /// Nonzero entries as `(i, j, value)`.
    pub fn entries(&self) -> Vec<(usize, usize, i64)> {
        let mut v = Vec::new();
        for i in 1..=8 {
            for j in 1..=8 {
                let x = self.get(i, j);
                if x != 0 {
                    v.push((i, j, x));
                }
            }
        }
        v
    }

    /// Image in `Mat_8(F_q)`.
    pub fn to_field<'f>(&self, field: &'f Field) -> Mat8<'f> {
        let mut m = Mat8::zero(field);
        for (i, j, x) in self.entries() {
            m.set(i, j, field.from_int(x));
        }
        m
    }
}

impl Add for IntMat8 {
    type Output = IntMat8;
    fn add(mut self, rhs: Self) -> Self {
        self.e.iter_mut().zip(rhs.e).for_each(|(a, b)| *a += b);
        self
    }
}

impl Sub for IntMat8 {
    type Output = IntMat8;
    fn sub(mut self, rhs: Self) -> Self {
        self.e.iter_mut().zip(rhs.e).for_each(|(a, b)| *a -= b);
        self
    }
}

impl Mul for IntMat8 {
    type Output = IntMat8;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zero();
        for i in 0..8 {
            for k in 0..8 {
                let a = self.e[i * 8 + k];
                if a != 0 {
                    for j in 0..8 {
                        m.e[i * 8 + j] += a * rhs.e[k * 8 + j];
                    }
                }
            }
        }
        m
    }
}

impl fmt::Debug for IntMat8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.entries().iter().map(|(i, j, x)| format!("{x}·e{i}{j}")).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `e_{i,j} - e_{9-j,9-i}`, the D4 root element at `(i, j)`.
fn d4_root(i: usize, j: usize) -> IntMat8 {
    IntMat8::unit(i, j) - IntMat8::unit(9 - j, 9 - i)
}

/// The positive root elements `e_1, ..., e_6` for
/// `α, β, α+β, 2α+β, 3α+β, 3α+2β`.
pub fn root_matrix(i: usize) -> Result<IntMat8, GroupError> {
    let m = match i {
        1 => d4_root(1, 2) + d4_root(3, 4) + d4_root(3, 5),
        2 => d4_root(2, 3),
        3 => d4_root(1, 3).scale(-1) + d4_root(2, 4) + d4_root(2, 5),
        4 => d4_root(1, 4) + d4_root(2, 6) + d4_root(1, 5),
        5 => d4_root(1, 6),
        6 => d4_root(1, 7),
        _ => return Err(GroupError::BadRoot(i)),
    };
    Ok(m)
}

/// Coefficients of the positive roots in the basis `α, β`.
pub const ROOTS: [(i32, i32); 6] = [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)];

fn root_index(r: (i32, i32)) -> Option<usize> {
    ROOTS.iter().position(|&x| x == r).map(|k| k + 1)
}

/// Exact checks of the structure constants and nilpotency of the root elements.
pub fn verify_chevalley_constants() -> Report {
    let e: Vec<IntMat8> = (1..=6).map(|i| root_matrix(i).unwrap()).collect();
    let mut r = Report::new("chevalley");
    let constants = [(1, 2, 3, -1), (1, 3, 4, 2), (1, 4, 5, 3), (2, 5, 6, 1)];
    for (a, b, c, n) in constants {
        let br = e[a - 1].bracket(&e[b - 1]);
        r.check(format!("[e{a},e{b}] = {n}·e{c}"), br == e[c - 1].scale(n), || format!("{br:?}"));
    }
    let squares = [
        (1, IntMat8::unit(3, 6).scale(-2)),
        (3, IntMat8::unit(2, 7).scale(-2)),
        (4, IntMat8::unit(1, 8).scale(-2)),
        (2, IntMat8::zero()),
        (5, IntMat8::zero()),
        (6, IntMat8::zero()),
    ];
    for (i, want) in squares {
        let sq = e[i - 1] * e[i - 1];
        r.check(format!("e{i}^2 = {want:?}"), sq == want, || format!("{sq:?}"));
    }
    for (i, m) in e.iter().enumerate() {
        let cube = *m * *m * *m;
        r.check(format!("e{}^3 = 0", i + 1), cube.is_zero(), || format!("{cube:?}"));
        let half = (*m * *m).e.iter().all(|x| x % 2 == 0);
        r.check(format!("e{}^2 has even entries", i + 1), half, || format!("{:?}", *m * *m));
    }
    for a in 1..=6 {
        for b in a + 1..=6 {
            let br = e[a - 1].bracket(&e[b - 1]);
            let sum = (ROOTS[a - 1].0 + ROOTS[b - 1].0, ROOTS[a - 1].1 + ROOTS[b - 1].1);
            let ok = match root_index(sum) {
                None => br.is_zero(),
                Some(c) => {
                    let target = e[c - 1];
                    let (i, j, x) = target.entries()[0];
                    let k = br.get(i, j) / x;
                    br.get(i, j) % x == 0 && br == target.scale(k)
                }
            };
            r.check(format!("[e{a},e{b}] lies in the root space of the sum"), ok, || {
                format!("{br:?}")
            });
        }
    }
    r
}

// ---------------------------------------------------------------------------
// Matrices over F_q.

/// 8×8 matrix over `F_q`, indexed from 1.
#[derive(Clone, Copy)]
pub struct Mat8<'f> {
    field: &'f Field,
    e: [u32; 64],
}

impl<'f> Mat8<'f> {
    pub fn zero(field: &'f Field) -> Self {
        Mat8 { field, e: [0; 64] }
    }

    pub fn identity(field: &'f Field) -> Self {
        let mut m = Self::zero(field);
        for i in 1..=8 {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn field(&self) -> &'f Field {
        self.field
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fq<'f> {
        self.field.elem_unchecked(self.e[(i - 1) * 8 + (j - 1)])
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fq<'f>) {
        self.e[(i - 1) * 8 + (j - 1)] = v.value();
    }

    /// Entries as integer encodings, row-major.
    pub fn raw(&self) -> &[u32; 64] {
        &self.e
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero(self.field);
        for i in 1..=8 {
            for j in 1..=8 {
                m.set(j, i, self.get(i, j));
            }
        }
        m
    }

    pub fn scale(&self, c: Fq<'f>) -> Self {
        let mut m = *self;
        for i in 1..=8 {
            for j in 1..=8 {
                m.set(i, j, self.get(i, j) * c);
            }
        }
        m
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        (1..=8).all(|i| {
            (1..=8).all(|j| {
                let v = self.get(i, j);
                match i.cmp(&j) {
                    std::cmp::Ordering::Equal => v == self.field.one(),
                    std::cmp::Ordering::Greater => v.is_zero(),
                    std::cmp::Ordering::Less => true,
                }
            })
        })
    }

    /// Inverse of an upper unitriangular matrix by back substitution.
    pub fn inv_unitriangular(&self) -> Self {
        debug_assert!(self.is_upper_unitriangular());
        let mut n = Self::identity(self.field);
        for i in (1..=8).rev() {
            for j in i + 1..=8 {
                let mut s = self.get(i, j);
                for k in i + 1..j {
                    s += self.get(i, k) * n.get(k, j);
                }
                n.set(i, j, -s);
            }
        }
        n
    }

    /// `exp(t·e) = I + t e + (t²/2) e²` for an integer matrix with `e³ = 0`.
    pub fn exp_nilpotent(field: &'f Field, e: &IntMat8, t: Fq<'f>) -> Self {
        let sq = *e * *e;
        let half = field.from_int(2).inv().expect("p is odd");
        let mut m = Self::identity(field);
        for i in 1..=8 {
            for j in 1..=8 {
                let v = m.get(i, j)
                    + t * field.from_int(e.get(i, j))
                    + t * t * half * field.from_int(sq.get(i, j));
                m.set(i, j, v);
            }
        }
        m
    }
}

impl PartialEq for Mat8<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.e == other.e
    }
}

impl Eq for Mat8<'_> {}

impl<'f> Mul for Mat8<'f> {
    type Output = Mat8<'f>;
    fn mul(self, rhs: Self) -> Self {
        let f = self.field;
        let mut m = Self::zero(f);
        for i in 1..=8 {
            for j in 1..=8 {
                let mut s = f.zero();
                for k in 1..=8 {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        s += a * rhs.get(k, j);
                    }
                }
                m.set(i, j, s);
            }
        }
        m
    }
}

impl<'f> Add for Mat8<'f> {
    type Output = Mat8<'f>;
    fn add(self, rhs: Self) -> Self {
        let mut m = self;
        for i in 1..=8 {
            for j in 1..=8 {
                m.set(i, j, self.get(i, j) + rhs.get(i, j));
            }
        }
        m
    }
}

impl<'f> Sub for Mat8<'f> {
    type Output = Mat8<'f>;
    fn sub(self, rhs: Self) -> Self {
        let mut m = self;
        for i in 1..=8 {
            for j in 1..=8 {
                m.set(i, j, self.get(i, j) - rhs.get(i, j));
            }
        }
        m
    }
}

impl fmt::Debug for Mat8<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..8 {
            writeln!(f, "{:?}", &self.e[i * 8..i * 8 + 8])?;
        }
        Ok(())
    }
}

impl Serialize for Mat8<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<&[u32]> = self.e.chunks(8).collect();
        rows.serialize(s)
    }
}

// ---------------------------------------------------------------------------
// The group U.

/// Canonical coordinates `(t1, ..., t6)`.
pub type Coords<'f> = [Fq<'f>; 6];

/// An element of `U` with its matrix.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct UElem<'f> {
    t: Coords<'f>,
    mat: Mat8<'f>,
}

impl<'f> UElem<'f> {
    pub fn coords(&self) -> Coords<'f> {
        self.t
    }

    pub fn mat(&self) -> &Mat8<'f> {
        &self.mat
    }

    pub fn t(&self, i: usize) -> Fq<'f> {
        self.t[i - 1]
    }
}

impl fmt::Debug for UElem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<u32> = self.t.iter().map(|x| x.value()).collect();
        write!(f, "y{v:?}")
    }
}

impl Serialize for UElem<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("UElem", 1)?;
        let v: Vec<u32> = self.t.iter().map(|x| x.value()).collect();
        st.serialize_field("t", &v)?;
        st.end()
    }
}

/// Entries of `y(t)` that the fast coordinate arithmetic reads.
pub(crate) struct Entries<'f> {
    pub(crate) m12: Fq<'f>,
    pub(crate) m13: Fq<'f>,
    pub(crate) m14: Fq<'f>,
    pub(crate) m16: Fq<'f>,
    pub(crate) m17: Fq<'f>,
    pub(crate) m23: Fq<'f>,
    pub(crate) m24: Fq<'f>,
    pub(crate) m26: Fq<'f>,
    pub(crate) m27: Fq<'f>,
    pub(crate) m34: Fq<'f>,
    pub(crate) m36: Fq<'f>,
    pub(crate) m37: Fq<'f>,
    pub(crate) m46: Fq<'f>,
    pub(crate) m47: Fq<'f>,
    pub(crate) m67: Fq<'f>,
}

#[inline]
pub(crate) fn entries<'f>(t: &Coords<'f>) -> Entries<'f> {
    let [t1, t2, t3, t4, t5, t6] = *t;
    let t1t3 = t1 * t3;
    Entries {
        m12: t1,
        m13: -t3,
        m14: t1t3 + t4,
        m16: t1 * t4 + t5,
        m17: t3 * t4 + t6 - t1t3 * t3,
        m23: t2,
        m24: t1 * t2 + t3,
        m26: t4 - t1 * t1 * t2,
        m27: -(t1t3 * t2 * 2 + t2 * t4 + t3 * t3),
        m34: t1,
        m36: -(t1 * t1),
        m37: -(t1t3 * 2 + t4),
        m46: -t1,
        m47: -t3,
        m67: -t2,
    }
}

/// Coordinates from the entries `(1,2), (2,3), (1,3), (1,4), (1,6), (1,7)`.
#[inline]
fn coords_from_entries<'f>(
    m12: Fq<'f>,
    m23: Fq<'f>,
    m13: Fq<'f>,
    m14: Fq<'f>,
    m16: Fq<'f>,
    m17: Fq<'f>,
) -> Coords<'f> {
    let t1 = m12;
    let t2 = m23;
    let t3 = -m13;
    let t4 = m14 - t1 * t3;
    let t5 = m16 - t1 * t4;
    let t6 = m17 + t1 * t3 * t3 - t3 * t4;
    [t1, t2, t3, t4, t5, t6]
}

/// `G2syl(q)` over a fixed field.
pub struct G2Syl<'f> {
    field: &'f Field,
    roots: [IntMat8; 6],
}

impl<'f> G2Syl<'f> {
    pub fn new(field: &'f Field) -> Self {
        let roots = std::array::from_fn(|i| root_matrix(i + 1).unwrap());
        G2Syl { field, roots }
    }

    pub fn field(&self) -> &'f Field {
        self.field
    }

    pub fn q(&self) -> u64 {
        self.field.q() as u64
    }

    /// `|U| = q^6`.
    pub fn order(&self) -> u64 {
        self.q().pow(6)
    }

    pub fn zero_coords(&self) -> Coords<'f> {
        [self.field.zero(); 6]
    }

    /// Coordinates with `t` in slot `i` and zeros elsewhere.
    pub fn root_coords(&self, i: usize, t: Fq<'f>) -> Coords<'f> {
        let mut c = self.zero_coords();
        c[i - 1] = t;
        c
    }

    /// The matrix `y_i(t) = exp(t e_i)`.
    pub fn root_element_matrix(&self, i: usize, t: Fq<'f>) -> Mat8<'f> {
        Mat8::exp_nilpotent(self.field, &self.roots[i - 1], t)
    }

    /// The root element `y_i(t)`.
    pub fn y_gen(&self, i: usize, t: Fq<'f>) -> Result<UElem<'f>, GroupError> {
        if !(1..=6).contains(&i) {
            return Err(GroupError::BadRoot(i));
        }
        let mat = self.root_element_matrix(i, t);
        let t = self.root_coords(i, t);
        debug_assert_eq!(mat, self.closed_form(&t));
        Ok(UElem { t, mat })
    }

    /// The ordered product `y2(t2) y1(t1) y3(t3) y4(t4) y5(t5) y6(t6)` of
    /// root element matrices.
    pub fn product_matrix(&self, t: &Coords<'f>) -> Mat8<'f> {
        [2, 1, 3, 4, 5, 6]
            .iter()
            .fold(Mat8::identity(self.field), |acc, &i| acc * self.root_element_matrix(i, t[i - 1]))
    }

    /// Polynomial closed form of `y(t1, ..., t6)`.
    pub fn closed_form(&self, t: &Coords<'f>) -> Mat8<'f> {
        let f = self.field;
        let [t1, t2, t3, t4, t5, t6] = *t;
        let mut m = Mat8::identity(f);
        let t1t3 = t1 * t3;
        let mut put = |i: usize, j: usize, v: Fq<'f>| m.set(i, j, v);
        put(1, 2, t1);
        put(1, 3, -t3);
        put(1, 4, t1t3 + t4);
        put(1, 5, t1t3 + t4);
        put(1, 6, t1 * t4 + t5);
        put(1, 7, t3 * t4 + t6 - t1t3 * t3);
        put(1, 8, t3 * t5 - t1t3 * t4 * 2 - t1 * t6 - t4 * t4);
        put(2, 3, t2);
        put(2, 4, t1 * t2 + t3);
        put(2, 5, t1 * t2 + t3);
        put(2, 6, t4 - t1 * t1 * t2);
        put(2, 7, -(t1t3 * t2 * 2 + t2 * t4 + t3 * t3));
        put(
            2,
            8,
            -(t1 * t1 * t2 * t3 + t1 * t2 * t4 * 2 + t2 * t5 + t3 * t4 * 2 + t6),
        );
        put(3, 4, t1);
        put(3, 5, t1);
        put(3, 6, -(t1 * t1));
        put(3, 7, -(t1t3 * 2 + t4));
        put(3, 8, -(t1 * t1 * t3 + t1 * t4 * 2 + t5));
        put(4, 6, -t1);
        put(4, 7, -t3);
        put(4, 8, -(t1t3 + t4));
        put(5, 6, -t1);
        put(5, 7, -t3);
        put(5, 8, -(t1t3 + t4));
        put(6, 7, -t2);
        put(6, 8, t1 * t2 + t3);
        put(7, 8, -t1);
        m
    }

    /// `y(t1, ..., t6)` with its matrix.
    pub fn from_coords(&self, t: Coords<'f>) -> UElem<'f> {
        let mat = self.closed_form(&t);
        debug_assert_eq!(mat, self.product_matrix(&t));
        UElem { t, mat }
    }

    /// Inverse of [`G2Syl::from_coords`], rejecting matrices outside `U`.
    pub fn coords_from_matrix(&self, m: &Mat8<'f>) -> Result<Coords<'f>, GroupError> {
        let t = coords_from_entries(
            m.get(1, 2),
            m.get(2, 3),
            m.get(1, 3),
            m.get(1, 4),
            m.get(1, 6),
            m.get(1, 7),
        );
        let back = self.closed_form(&t);
        if back != *m {
            return Err(GroupError::NotMember(format!("reconstructed coordinates {t:?}")));
        }
        Ok(t)
    }

    pub fn from_matrix(&self, m: Mat8<'f>) -> Result<UElem<'f>, GroupError> {
        let t = self.coords_from_matrix(&m)?;
        Ok(UElem { t, mat: m })
    }

    pub fn identity(&self) -> UElem<'f> {
        self.from_coords(self.zero_coords())
    }

    /// Product through matrix multiplication and re-extraction.
    pub fn mul(&self, a: &UElem<'f>, b: &UElem<'f>) -> UElem<'f> {
        self.from_matrix(a.mat * b.mat).expect("U is closed under multiplication")
    }

    pub fn inv(&self, a: &UElem<'f>) -> UElem<'f> {
        self.from_matrix(a.mat.inv_unitriangular()).expect("U is closed under inversion")
    }

    /// `[a, b] = a^{-1} b^{-1} a b`.
    pub fn commutator(&self, a: &UElem<'f>, b: &UElem<'f>) -> UElem<'f> {
        let ai = a.mat.inv_unitriangular();
        let bi = b.mat.inv_unitriangular();
        self.from_matrix(ai * bi * a.mat * b.mat).expect("U is closed under commutators")
    }

    /// `u x u^{-1}`.
    pub fn conjugate(&self, u: &UElem<'f>, x: &UElem<'f>) -> UElem<'f> {
        self.from_matrix(u.mat * x.mat * u.mat.inv_unitriangular()).expect("U is a group")
    }

    /// Product of coordinate tuples using only the entries that determine
    /// the coordinates of the result.
    #[inline]
    pub fn mul_coords(&self, a: &Coords<'f>, b: &Coords<'f>) -> Coords<'f> {
        let x = entries(a);
        let y = entries(b);
        let x15 = x.m14;
        let c12 = x.m12 + y.m12;
        let c23 = x.m23 + y.m23;
        let c13 = x.m13 + x.m12 * y.m23 + y.m13;
        let c14 = x.m14 + x.m12 * y.m24 + x.m13 * y.m34 + y.m14;
        // rows 4 and 5 of y(t) agree in columns 6 and 7
        let c16 = x.m16 + x.m12 * y.m26 + x.m13 * y.m36 + (x.m14 + x15) * y.m46 + y.m16;
        let c17 = x.m17
            + x.m12 * y.m27
            + x.m13 * y.m37
            + (x.m14 + x15) * y.m47
            + x.m16 * y.m67
            + y.m17;
        coords_from_entries(c12, c23, c13, c14, c16, c17)
    }

    /// Inverse of a coordinate tuple.
    #[inline]
    pub fn inv_coords(&self, a: &Coords<'f>) -> Coords<'f> {
        let m = entries(a);
        // row 1 of N with N·M = I
        let n12 = -m.m12;
        let n13 = -(m.m13 + n12 * m.m23);
        let n14 = -(m.m14 + n12 * m.m24 + n13 * m.m34);
        let n15 = n14;
        let n16 = -(m.m16 + n12 * m.m26 + n13 * m.m36 + (n14 + n15) * m.m46);
        let n17 = -(m.m17 + n12 * m.m27 + n13 * m.m37 + (n14 + n15) * m.m47 + n16 * m.m67);
        coords_from_entries(n12, -m.m23, n13, n14, n16, n17)
    }

    /// `u x u^{-1}` on coordinates, with `u^{-1}` supplied.
    #[inline]
    pub fn conj_coords(&self, u: &Coords<'f>, u_inv: &Coords<'f>, x: &Coords<'f>) -> Coords<'f> {
        self.mul_coords(&self.mul_coords(u, x), u_inv)
    }

    /// Position of an element in [`G2Syl::enumerate`] order.
    #[inline]
    pub fn index(&self, t: &Coords<'f>) -> usize {
        let q = self.field.q() as usize;
        t.iter().fold(0usize, |acc, x| acc * q + x.value() as usize)
    }

    pub fn coords_of_index(&self, mut idx: usize) -> Coords<'f> {
        let q = self.field.q() as usize;
        let mut c = self.zero_coords();
        for slot in c.iter_mut().rev() {
            *slot = self.field.elem_unchecked((idx % q) as u32);
            idx /= q;
        }
        c
    }

    pub fn check_budget(&self, needed: u64, budget: u64) -> Result<(), GroupError> {
        if needed > budget {
            Err(GroupError::Budget { needed, budget })
        } else {
            Ok(())
        }
    }

    /// All coordinate tuples, lexicographic with `t1` most significant.
    pub fn all_coords(&self, budget: u64) -> Result<impl Iterator<Item = Coords<'f>> + '_, GroupError> {
        self.check_budget(self.order(), budget)?;
        Ok((0..self.order() as usize).map(move |i| self.coords_of_index(i)))
    }

    /// All `q^6` elements with matrices, identity first.
    pub fn enumerate(&self, budget: u64) -> Result<Vec<UElem<'f>>, GroupError> {
        Ok(self.all_coords(budget)?.map(|t| self.from_coords(t)).collect())
    }

    /// Generators `y1(b), y2(b)` for `b` in the prime basis of `F_q`.
    pub fn simple_root_generators(&self) -> Vec<Coords<'f>> {
        [1, 2]
            .iter()
            .flat_map(|&i| self.field.prime_basis().into_iter().map(move |b| (i, b)))
            .map(|(i, b)| self.root_coords(i, b))
            .collect()
    }

    /// Generators `y_i(b)` for every root and every prime basis vector.
    pub fn root_generators(&self) -> Vec<Coords<'f>> {
        (1..=6)
            .flat_map(|i| self.field.prime_basis().into_iter().map(move |b| (i, b)))
            .map(|(i, b)| self.root_coords(i, b))
            .collect()
    }

    /// Product of root elements `Π y_i(s_i)` in the given order.
    pub fn root_product(&self, factors: &[(usize, Fq<'f>)]) -> Mat8<'f> {
        factors
            .iter()
            .fold(Mat8::identity(self.field), |acc, &(i, s)| acc * self.root_element_matrix(i, s))
    }
}

// ---------------------------------------------------------------------------
// Commutator relations.

/// Right hand side of `[y_i(a), y_j(b)]` as an ordered product of root
/// elements, per the relations of the group. Characteristic 3 uses its own
/// list. Pairs not listed commute.
pub fn commutator_formula<'f>(i: usize, j: usize, a: Fq<'f>, b: Fq<'f>) -> Vec<(usize, Fq<'f>)> {
    let char3 = a.field().p() == 3;
    match (i, j, char3) {
        (1, 2, _) => {
            let (t1, t2) = (a, b);
            vec![
                (3, -(t2 * t1)),
                (4, t2 * t1 * t1),
                (5, -(t2 * t1 * t1 * t1)),
                (6, t2 * t2 * t1 * t1 * t1 * 2),
            ]
        }
        (1, 3, false) => {
            let (t1, t3) = (a, b);
            vec![(4, t1 * t3 * 2), (5, -(t1 * t1 * t3 * 3)), (6, -(t1 * t3 * t3 * 3))]
        }
        (1, 3, true) => vec![(4, a * b * 2)],
        (1, 4, false) => vec![(5, a * b * 3)],
        (3, 4, false) => vec![(6, a * b * 3)],
        (2, 5, _) => vec![(6, a * b)],
        _ => Vec::new(),
    }
}

/// The ordered product `y2 y1 y3 y4 y5 y6` equals the closed-form matrix
/// for every coordinate tuple, and coordinates are read back from it.
pub fn verify_closed_form(group: &G2Syl<'_>, budget: u64) -> Result<Report, GroupError> {
    let mut r = Report::new(format!("closed-form q={}", group.q()));
    let mut bad = None;
    let mut roundtrip = None;
    for t in group.all_coords(budget)? {
        let m = group.product_matrix(&t);
        if m != group.closed_form(&t) {
            bad = Some(t);
            break;
        }
        if roundtrip.is_none() && group.coords_from_matrix(&m).ok() != Some(t) {
            roundtrip = Some(t);
        }
    }
    let show = |t: Option<Coords<'_>>| format!("{:?}", t.map(|t| group.from_coords(t)));
    r.check("product of root elements equals the closed form", bad.is_none(), || show(bad));
    r.check("coordinates are recovered from the matrix", roundtrip.is_none(), || show(roundtrip));
    Ok(r)
}

/// Compares every pairwise commutator `[y_i(a), y_j(b)]`, `i < j`, with the
/// stated relations, over all `(a, b)` in `F_q^2`.
pub fn verify_commutators(group: &G2Syl<'_>) -> Report {
    let f = group.field();
    let mut r = Report::new(format!("commutators q={}", f.q()));
    for i in 1..=6 {
        for j in i + 1..=6 {
            let mut witness = None;
            'outer: for a in f.elements() {
                let ya = group.root_element_matrix(i, a);
                let ya_inv = ya.inv_unitriangular();
                for b in f.elements() {
                    let yb = group.root_element_matrix(j, b);
                    let lhs = ya_inv * yb.inv_unitriangular() * ya * yb;
                    let rhs = group.root_product(&commutator_formula(i, j, a, b));
                    if lhs != rhs {
                        witness = Some(format!("a={a} b={b}"));
                        break 'outer;
                    }
                }
            }
            let name = format!("[y{i},y{j}] relation");
            r.check(name, witness.is_none(), || witness.clone().unwrap_or_default());
        }
    }
    r
}

// ---------------------------------------------------------------------------
// The intermediate group G8(q).

/// Positions excluded from the generator set of `G8(q)`.
pub const G8_EXCLUDED: [(usize, usize); 5] = [(2, 5), (3, 5), (4, 5), (4, 6), (4, 7)];

/// An element of `G8(q)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct G8Elem<'f> {
    mat: Mat8<'f>,
}

impl<'f> G8Elem<'f> {
    pub fn new(mat: Mat8<'f>) -> Result<Self, GroupError> {
        if g8_contains(&mat) {
            Ok(G8Elem { mat })
        } else {
            Err(GroupError::NotInG8)
        }
    }

    pub fn mat(&self) -> &Mat8<'f> {
        &self.mat
    }

    pub fn mul(&self, other: &Self) -> Self {
        G8Elem { mat: self.mat * other.mat }
    }

    pub fn inv(&self) -> Self {
        G8Elem { mat: self.mat.inv_unitriangular() }
    }
}

impl<'f> From<UElem<'f>> for G8Elem<'f> {
    fn from(u: UElem<'f>) -> Self {
        G8Elem { mat: u.mat }
    }
}

/// Membership in `G8(q)`: upper unitriangular with `u45 = 0`, `u25 = u24`,
/// `u35 = u34`, `u46 = u56`, `u47 = u57`.
pub fn g8_contains(m: &Mat8<'_>) -> bool {
    m.is_upper_unitriangular()
        && m.get(4, 5).is_zero()
        && m.get(2, 5) == m.get(2, 4)
        && m.get(3, 5) == m.get(3, 4)
        && m.get(4, 6) == m.get(5, 6)
        && m.get(4, 7) == m.get(5, 7)
}

/// The generator positions of `G8(q)`: strict upper triangle minus
/// [`G8_EXCLUDED`].
pub fn g8_positions() -> Vec<(usize, usize)> {
    (1..=8)
        .flat_map(|i| (i + 1..=8).map(move |j| (i, j)))
        .filter(|p| !G8_EXCLUDED.contains(p))
        .collect()
}

/// `ẋ_{i,j}(t)`, with the tied entry set as well for the paired positions.
pub fn g8_generator<'f>(field: &'f Field, i: usize, j: usize, t: Fq<'f>) -> Result<G8Elem<'f>, GroupError> {
    if !(1..=8).contains(&i) || !(1..=8).contains(&j) || i >= j || G8_EXCLUDED.contains(&(i, j)) {
        return Err(GroupError::BadG8Position(i, j));
    }
    let mut m = Mat8::identity(field);
    m.set(i, j, t);
    match (i, j) {
        (2, 4) | (3, 4) => m.set(i, j + 1, t),
        (5, 6) | (5, 7) => m.set(i - 1, j, t),
        _ => {}
    }
    Ok(G8Elem { mat: m })
}

/// A random element of `G8(q)`: a product of every generator with uniform
/// parameters, taken twice over.
pub fn random_g8<'f, R: rand::Rng + ?Sized>(field: &'f Field, rng: &mut R) -> G8Elem<'f> {
    let mut m = Mat8::identity(field);
    for _ in 0..2 {
        for (i, j) in g8_positions() {
            let t = field.elem_unchecked(rng.gen_range(0..field.q()));
            m = m * *g8_generator(field, i, j, t).expect("valid position").mat();
        }
    }
    G8Elem { mat: m }
}

/// Number of free entries of an element of `G8(q)`: the 28 strict upper
/// entries minus the rank of the linear constraints.
pub fn g8_free_parameters() -> usize {
    // constraints as vectors over the strict upper positions
    let pos: Vec<(usize, usize)> = (1..=8).flat_map(|i| (i + 1..=8).map(move |j| (i, j))).collect();
    let idx = |p: (usize, usize)| pos.iter().position(|&x| x == p).unwrap();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut single = vec![0i64; pos.len()];
    single[idx((4, 5))] = 1;
    rows.push(single);
    for (a, b) in [((2, 5), (2, 4)), ((3, 5), (3, 4)), ((4, 6), (5, 6)), ((4, 7), (5, 7))] {
        let mut v = vec![0i64; pos.len()];
        v[idx(a)] = 1;
        v[idx(b)] = -1;
        rows.push(v);
    }
    let field = Field::new(3, 1).expect("F_3");
    let rows_f: Vec<Vec<Fq>> =
        rows.iter().map(|r| r.iter().map(|&x| field.from_int(x)).collect()).collect();
    let rank = crate::linalg::Matrix::from_rows(&rows_f).rank();
    pos.len() - rank
}

// ---------------------------------------------------------------------------
// Conjugacy classes.

/// A conjugacy class, with elements given by their enumeration index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjClass {
    /// Smallest index in the class.
    pub rep: usize,
    pub members: Vec<usize>,
}

impl ConjClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// A partition of a set of group elements into conjugacy classes.
#[derive(Debug, Clone)]
pub struct ClassPartition {
    pub classes: Vec<ConjClass>,
    /// Class number of each element index, `u32::MAX` outside the set.
    pub class_of: Vec<u32>,
}

impl ClassPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Class sizes and representative labels as a [`ClassLayout`]; the
    /// identity class comes first when the identity is in the set.
    pub fn layout(&self, group: &G2Syl<'_>, name: &str) -> Arc<ClassLayout> {
        let labels =
            self.classes.iter().map(|c| format!("{:?}", group.from_coords(group.coords_of_index(c.rep)))).collect();
        let sizes: Vec<u64> = self.classes.iter().map(|c| c.size() as u64).collect();
        let order = sizes.iter().sum();
        ClassLayout::new(name, labels, sizes, order).expect("sizes sum to the order")
    }

    /// Class sizes with multiplicities, ascending by size.
    pub fn size_multiset(&self) -> Vec<(usize, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for c in &self.classes {
            *counts.entry(c.size()).or_insert(0usize) += 1;
        }
        counts.into_iter().collect()
    }
}

/// Conjugacy classes of the subgroup with the given element indices under
/// conjugation by `gens`, which must generate that subgroup. Classes are
/// ordered by their smallest index.
pub fn classes_under<'f>(
    group: &G2Syl<'f>,
    elements: &[usize],
    gens: &[Coords<'f>],
) -> ClassPartition {
    let n = group.order() as usize;
    let mut class_of = vec![u32::MAX; n];
    let mut inside = vec![false; n];
    for &e in elements {
        inside[e] = true;
    }
    let pairs: Vec<(Coords<'f>, Coords<'f>)> =
        gens.iter().map(|g| (*g, group.inv_coords(g))).collect();
    let mut sorted = elements.to_vec();
    sorted.sort_unstable();
    let mut classes = Vec::new();
    let mut queue = VecDeque::new();
    for &start in &sorted {
        if class_of[start] != u32::MAX {
            continue;
        }
        let id = classes.len() as u32;
        class_of[start] = id;
        queue.push_back(start);
        let mut members = vec![start];
        while let Some(x) = queue.pop_front() {
            let xc = group.coords_of_index(x);
            for (g, gi) in &pairs {
                let y = group.index(&group.conj_coords(g, gi, &xc));
                debug_assert!(inside[y], "generators must normalise the element set");
                if class_of[y] == u32::MAX {
                    class_of[y] = id;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        classes.push(ConjClass { rep: start, members });
    }
    ClassPartition { classes, class_of }
}

/// Conjugacy classes of `U` by breadth-first search under conjugation by
/// the simple root generators.
pub fn conjugacy_classes(group: &G2Syl<'_>, budget: u64) -> Result<ClassPartition, GroupError> {
    group.check_budget(group.order(), budget)?;
    let all: Vec<usize> = (0..group.order() as usize).collect();
    Ok(classes_under(group, &all, &group.simple_root_generators()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(q: u64) -> Field {
        Field::with_order(q).unwrap()
    }

    #[test]
    fn root_matrices_match_definitions() {
        let e2 = root_matrix(2).unwrap();
        assert_eq!(e2, IntMat8::unit(2, 3) - IntMat8::unit(6, 7));
        let e6 = root_matrix(6).unwrap();
        assert_eq!(e6, IntMat8::unit(1, 7) - IntMat8::unit(2, 8));
        assert!(root_matrix(7).is_err());
    }

    #[test]
    fn chevalley_constants_hold() {
        let r = verify_chevalley_constants();
        assert!(r.all_pass(), "{}", r.to_text());
    }

    #[test]
    fn root_elements() {
        let field = f(5);
        let g = G2Syl::new(&field);
        for i in 1..=6 {
            assert_eq!(*g.y_gen(i, field.zero()).unwrap().mat(), Mat8::identity(&field));
        }
        let t = field.from_int(3);
        let y2 = g.y_gen(2, t).unwrap();
        for i in 1..=8 {
            for j in i + 1..=8 {
                let want = match (i, j) {
                    (2, 3) => t,
                    (6, 7) => -t,
                    _ => field.zero(),
                };
                assert_eq!(y2.mat().get(i, j), want);
            }
        }
        // I + t e1 + (t^2/2) e1^2 assembled entry by entry
        let y1 = g.y_gen(1, t).unwrap();
        let e1 = root_matrix(1).unwrap();
        let sq = e1 * e1;
        let half = field.from_int(2).inv().unwrap();
        for i in 1..=8 {
            for j in 1..=8 {
                let want = field.from_int((i == j) as i64)
                    + t * field.from_int(e1.get(i, j))
                    + t * t * half * field.from_int(sq.get(i, j));
                assert_eq!(y1.mat().get(i, j), want);
            }
        }
        assert_eq!(y1.mat().get(3, 6), -(t * t));
    }

    #[test]
    fn corner_entry_formula() {
        let field = f(7);
        let g = G2Syl::new(&field);
        let t: Coords = std::array::from_fn(|i| field.from_int(i as i64 + 2));
        let m = g.product_matrix(&t);
        let [t1, _, t3, t4, t5, t6] = t;
        assert_eq!(m.get(1, 8), -(t1 * t3 * t4 * 2) - t1 * t6 + t3 * t5 - t4 * t4);
    }

    #[test]
    fn closed_form_equals_product_exhaustively_at_q3() {
        let field = f(3);
        let g = G2Syl::new(&field);
        for t in g.all_coords(DEFAULT_BUDGET).unwrap() {
            assert_eq!(g.closed_form(&t), g.product_matrix(&t));
        }
    }

    #[test]
    fn coordinate_round_trip_and_order() {
        let field = f(3);
        let g = G2Syl::new(&field);
        let all = g.enumerate(DEFAULT_BUDGET).unwrap();
        assert_eq!(all.len(), 729);
        assert_eq!(all[0], g.identity());
        for (k, u) in all.iter().enumerate() {
            assert_eq!(g.coords_from_matrix(u.mat()).unwrap(), u.coords());
            assert_eq!(g.index(&u.coords()), k);
        }
        let mut bad = Mat8::identity(&field);
        bad.set(4, 5, field.one());
        assert!(matches!(g.coords_from_matrix(&bad), Err(GroupError::NotMember(_))));
    }

    #[test]
    fn budget_is_enforced() {
        let field = f(11);
        let g = G2Syl::new(&field);
        assert!(matches!(g.enumerate(DEFAULT_BUDGET), Err(GroupError::Budget { .. })));
    }

    #[test]
    fn commutator_relations_q5() {
        let field = f(5);
        let g = G2Syl::new(&field);
        let r = verify_commutators(&g);
        assert!(r.all_pass(), "{}", r.to_text());
        let one = field.one();
        let c = g.commutator(&g.y_gen(1, one).unwrap(), &g.y_gen(2, one).unwrap());
        let want = g.root_product(&[(3, -one), (4, one), (5, -one), (6, one * 2)]);
        assert_eq!(*c.mat(), want);
    }

    #[test]
    fn characteristic_three_relations() {
        for q in [3, 9] {
            let field = f(q);
            let g = G2Syl::new(&field);
            let r = verify_commutators(&g);
            assert!(r.all_pass(), "{}", r.to_text());
        }
    }

    #[test]
    fn g8_membership() {
        let field = f(5);
        let g = G2Syl::new(&field);
        for u in g.enumerate(DEFAULT_BUDGET).unwrap().iter().step_by(97) {
            assert!(g8_contains(u.mat()));
        }
        let mut m = Mat8::identity(&field);
        m.set(4, 5, field.one());
        assert!(!g8_contains(&m));
        let x = g8_generator(&field, 2, 4, field.from_int(3)).unwrap();
        assert_eq!(x.mat().get(2, 4), field.from_int(3));
        assert_eq!(x.mat().get(2, 5), field.from_int(3));
        assert!(g8_generator(&field, 4, 6, field.one()).is_err());
        assert_eq!(g8_positions().len(), 23);
        assert_eq!(g8_free_parameters(), 23);
    }

    #[test]
    fn g8_generators_stay_inside() {
        let field = f(5);
        let mut acc = G8Elem::new(Mat8::identity(&field)).unwrap();
        for (k, (i, j)) in g8_positions().into_iter().enumerate() {
            let x = g8_generator(&field, i, j, field.from_int(k as i64 + 1)).unwrap();
            acc = acc.mul(&x);
            assert!(g8_contains(acc.mat()));
            assert!(g8_contains(acc.inv().mat()));
        }
    }

    #[test]
    fn class_count_at_q3() {
        let field = f(3);
        let g = G2Syl::new(&field);
        let cls = conjugacy_classes(&g, DEFAULT_BUDGET).unwrap();
        let total: usize = cls.classes.iter().map(ConjClass::size).sum();
        assert_eq!(total, 729);
        assert_eq!(cls.classes[0].members, vec![0]);
    }

    fn coords_strategy() -> impl Strategy<Value = (u64, [u32; 6], [u32; 6], [u32; 6])> {
        prop::sample::select(vec![5u64, 7, 9]).prop_flat_map(|q| {
            let c = prop::array::uniform6(0..q as u32);
            (Just(q), c.clone(), c.clone(), c)
        })
    }

    proptest! {
        #[test]
        fn fast_arithmetic_matches_matrices((q, a, b, c) in coords_strategy()) {
            let field = f(q);
            let g = G2Syl::new(&field);
            let to = |v: [u32; 6]| -> Coords { v.map(|x| field.elem(x).unwrap()) };
            let (a, b, c) = (to(a), to(b), to(c));
            let (ua, ub, uc) = (g.from_coords(a), g.from_coords(b), g.from_coords(c));
            prop_assert_eq!(g.mul_coords(&a, &b), g.mul(&ua, &ub).coords());
            prop_assert_eq!(g.inv_coords(&a), g.inv(&ua).coords());
            // associativity and inverses
            let left = g.mul(&g.mul(&ua, &ub), &uc);
            let right = g.mul(&ua, &g.mul(&ub, &uc));
            prop_assert_eq!(left, right);
            prop_assert_eq!(g.mul(&ua, &g.inv(&ua)), g.identity());
            let ai = g.inv_coords(&a);
            prop_assert_eq!(g.conj_coords(&a, &ai, &b), g.conjugate(&ua, &ub).coords());
        }
    }
}
