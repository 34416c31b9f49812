//! Exact arithmetic in `Q(ζ_p)` and class functions with values there.
//!
//! [`Cyclo`] is canonical: coefficients over `1, ζ, ..., ζ^{p-2}` with
//! `ζ^{p-1}` rewritten as `-(1 + ζ + ... + ζ^{p-2})`. [`CycloInt`] is an
//! unnormalised integer accumulator over `1, ζ, ..., ζ^{p-1}` used in hot loops;
//! two accumulators are equal iff their coefficient vectors differ by a
//! constant.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::ffield::Fq;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("class functions live on different class decompositions ({0} vs {1})")]
    LayoutMismatch(String, String),
    #[error("class sizes sum to {sum}, expected group order {order}")]
    BadSizes { sum: u64, order: u64 },
    #[error("{labels} labels but {sizes} class sizes")]
    LengthMismatch { labels: usize, sizes: usize },
    #[error("{values} values for {classes} classes")]
    ValueCount { values: usize, classes: usize },
}

/// An element of `Q(ζ_p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclo {
    p: u32,
    c: Vec<BigRational>,
}

impl Cyclo {
    pub fn zero(p: u32) -> Self {
        assert!(p >= 3, "cyclotomic order must be an odd prime");
        Cyclo { p, c: vec![BigRational::zero(); p as usize - 1] }
    }

    pub fn one(p: u32) -> Self {
        Self::from_int(p, 1)
    }

    pub fn from_int(p: u32, n: i64) -> Self {
        Self::from_rational(p, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(p: u32, r: BigRational) -> Self {
        let mut z = Self::zero(p);
        z.c[0] = r;
        z
    }

    /// `ζ^j` for any integer `j`.
    pub fn zeta_pow(p: u32, j: i64) -> Self {
        let mut acc = CycloInt::zero(p);
        acc.add_zeta(j, 1);
        acc.to_cyclo()
    }

    /// Coefficients in the basis `1, ζ, ..., ζ^{p-2}`.
    pub fn from_coeffs(p: u32, coeffs: Vec<BigRational>) -> Self {
        assert_eq!(coeffs.len(), p as usize - 1);
        Cyclo { p, c: coeffs }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// Complex conjugation `ζ^j -> ζ^{-j}`.
    pub fn conj(&self) -> Self {
        let p = self.p as usize;
        let mut full = vec![BigRational::zero(); p];
        for (j, c) in self.c.iter().enumerate() {
            full[(p - j) % p] += c;
        }
        Self::reduce(self.p, full)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Cyclo { p: self.p, c: self.c.iter().map(|c| c * r).collect() }
    }

    /// The value as a rational number, if it lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.c[1..].iter().all(Zero::is_zero).then(|| self.c[0].clone())
    }

    /// The value as an integer, if it lies in `Z`.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    /// Integer coefficients, if every coefficient is integral.
    pub fn to_int(&self) -> Option<CycloInt> {
        let mut c = Vec::with_capacity(self.p as usize);
        for r in &self.c {
            if !r.is_integer() {
                return None;
            }
            c.push(r.to_integer().to_i64()?);
        }
        c.push(0);
        Some(CycloInt { c })
    }

    /// Floating point image under `ζ -> exp(2πi/p)`, for display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let p = self.p as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.c.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let a = 2.0 * std::f64::consts::PI * j as f64 / p;
            re += v * a.cos();
            im += v * a.sin();
        }
        (re, im)
    }

    fn reduce(p: u32, mut full: Vec<BigRational>) -> Self {
        let last = full.pop().expect("length p");
        if !last.is_zero() {
            for c in full.iter_mut() {
                *c -= &last;
            }
        }
        Cyclo { p, c: full }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixing Q(ζ_p) for different p");
    }
}

impl Add<&Cyclo> for &Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &Cyclo) -> Cyclo {
        self.check(rhs);
        Cyclo { p: self.p, c: self.c.iter().zip(&rhs.c).map(|(a, b)| a + b).collect() }
    }
}

impl Sub<&Cyclo> for &Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &Cyclo) -> Cyclo {
        self.check(rhs);
        Cyclo { p: self.p, c: self.c.iter().zip(&rhs.c).map(|(a, b)| a - b).collect() }
    }
}

impl Mul<&Cyclo> for &Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &Cyclo) -> Cyclo {
        self.check(rhs);
        let p = self.p as usize;
        let mut full = vec![BigRational::zero(); p];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if !b.is_zero() {
                    full[(i + j) % p] += a * b;
                }
            }
        }
        Cyclo::reduce(self.p, full)
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo { p: self.p, c: self.c.iter().map(|a| -a).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $m(self, rhs: Cyclo) -> Cyclo {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $m(self, rhs: &Cyclo) -> Cyclo {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

impl AddAssign<&Cyclo> for Cyclo {
    fn add_assign(&mut self, rhs: &Cyclo) {
        self.check(rhs);
        for (a, b) in self.c.iter_mut().zip(&rhs.c) {
            *a += b;
        }
    }
}

impl fmt::Display for Cyclo {
    /// Renders as a polynomial in `z = exp(2πi/p)`, e.g. `3 + 2z - z^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            match (j, unit) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) if mag.is_integer() => write!(f, "{mag}")?,
                (_, false) => write!(f, "({mag})")?,
            }
            match j {
                0 => {}
                1 => write!(f, "z")?,
                _ => write!(f, "z^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo[p={}]({})", self.p, self)
    }
}

impl Serialize for Cyclo {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let coeffs: Vec<[String; 2]> =
            self.c.iter().map(|r| [r.numer().to_string(), r.denom().to_string()]).collect();
        let (re, im) = self.to_complex();
        let mut st = s.serialize_struct("Cyclo", 2)?;
        st.serialize_field("zeta_coeffs", &coeffs)?;
        st.serialize_field("approx", &[re, im])?;
        st.end()
    }
}

/// `θ(x) = ζ_p^{Tr(x)}`, the fixed nontrivial character of `(F_q, +)`.
pub fn theta(x: Fq<'_>) -> Cyclo {
    Cyclo::zeta_pow(x.field().p(), x.trace() as i64)
}

/// Integer combination `Σ_{j<p} c_j ζ^j`, not normalised.
#[derive(Clone, Debug)]
pub struct CycloInt {
    c: Vec<i64>,
}

impl CycloInt {
    pub fn zero(p: u32) -> Self {
        CycloInt { c: vec![0; p as usize] }
    }

    pub fn from_int(p: u32, n: i64) -> Self {
        let mut z = Self::zero(p);
        z.c[0] = n;
        z
    }

    pub fn p(&self) -> u32 {
        self.c.len() as u32
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.c
    }

    /// Adds `mult · ζ^j`.
    #[inline]
    pub fn add_zeta(&mut self, j: i64, mult: i64) {
        let p = self.c.len() as i64;
        self.c[j.rem_euclid(p) as usize] += mult;
    }

    pub fn add_assign(&mut self, other: &CycloInt) {
        for (a, b) in self.c.iter_mut().zip(&other.c) {
            *a += b;
        }
    }

    pub fn scale(&self, k: i64) -> CycloInt {
        CycloInt { c: self.c.iter().map(|a| a * k).collect() }
    }

    pub fn mul(&self, other: &CycloInt) -> CycloInt {
        let p = self.c.len();
        let mut out = vec![0i64; p];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                out[(i + j) % p] += a * b;
            }
        }
        CycloInt { c: out }
    }

    pub fn conj(&self) -> CycloInt {
        let p = self.c.len();
        CycloInt { c: (0..p).map(|j| self.c[(p - j) % p]).collect() }
    }

    /// Canonical integer coefficients over `1, ..., ζ^{p-2}`.
    pub fn canonical(&self) -> Vec<i64> {
        let last = *self.c.last().unwrap();
        self.c[..self.c.len() - 1].iter().map(|a| a - last).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&a| a == self.c[0])
    }

    pub fn to_cyclo(&self) -> Cyclo {
        let c = self
            .canonical()
            .into_iter()
            .map(|a| BigRational::from_integer(BigInt::from(a)))
            .collect();
        Cyclo { p: self.c.len() as u32, c }
    }
}

impl PartialEq for CycloInt {
    fn eq(&self, other: &Self) -> bool {
        self.c.len() == other.c.len() && self.canonical() == other.canonical()
    }
}

impl Eq for CycloInt {}

/// Class sizes and labels shared by all class functions on one partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassLayout {
    pub name: String,
    pub labels: Vec<String>,
    pub sizes: Vec<u64>,
    pub group_order: u64,
}

impl ClassLayout {
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        sizes: Vec<u64>,
        group_order: u64,
    ) -> Result<Arc<Self>, CycloError> {
        if labels.len() != sizes.len() {
            return Err(CycloError::LengthMismatch { labels: labels.len(), sizes: sizes.len() });
        }
        let sum: u64 = sizes.iter().sum();
        if sum != group_order {
            return Err(CycloError::BadSizes { sum, order: group_order });
        }
        Ok(Arc::new(ClassLayout { name: name.into(), labels, sizes, group_order }))
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }
}

/// Values of a class function on the classes of a [`ClassLayout`].
/// The identity class sits at index 0 by convention.
#[derive(Debug, Clone)]
pub struct ClassFunction {
    pub layout: Arc<ClassLayout>,
    pub values: Vec<Cyclo>,
}

impl ClassFunction {
    pub fn new(layout: Arc<ClassLayout>, values: Vec<Cyclo>) -> Result<Self, CycloError> {
        if values.len() != layout.len() {
            return Err(CycloError::ValueCount { values: values.len(), classes: layout.len() });
        }
        Ok(ClassFunction { layout, values })
    }

    pub fn degree(&self) -> &Cyclo {
        &self.values[0]
    }

    pub fn p(&self) -> u32 {
        self.values[0].p()
    }

    pub fn trivial(layout: Arc<ClassLayout>, p: u32) -> Self {
        let values = vec![Cyclo::one(p); layout.len()];
        ClassFunction { layout, values }
    }
}

/// `(1/|G|) Σ_classes |C| f(C) conj(g(C))`.
pub fn inner_product(f: &ClassFunction, g: &ClassFunction) -> Result<Cyclo, CycloError> {
    if !Arc::ptr_eq(&f.layout, &g.layout) && f.layout != g.layout {
        return Err(CycloError::LayoutMismatch(f.layout.name.clone(), g.layout.name.clone()));
    }
    let p = f.p();
    let order = BigRational::from_integer(BigInt::from(f.layout.group_order));
    let ints: Option<(Vec<CycloInt>, Vec<CycloInt>)> = (|| {
        let a = f.values.iter().map(Cyclo::to_int).collect::<Option<Vec<_>>>()?;
        let b = g.values.iter().map(Cyclo::to_int).collect::<Option<Vec<_>>>()?;
        Some((a, b))
    })();
    let total = match ints {
        Some((a, b)) => {
            let mut acc = vec![0i128; p as usize];
            for ((x, y), &size) in a.iter().zip(&b).zip(&f.layout.sizes) {
                let prod = x.mul(&y.conj());
                for (s, v) in acc.iter_mut().zip(prod.coeffs()) {
                    *s += *v as i128 * size as i128;
                }
            }
            let last = acc[p as usize - 1];
            let c = acc[..p as usize - 1]
                .iter()
                .map(|v| BigRational::from_integer(BigInt::from(v - last)))
                .collect();
            Cyclo::from_coeffs(p, c)
        }
        None => {
            let mut acc = Cyclo::zero(p);
            for ((x, y), &size) in f.values.iter().zip(&g.values).zip(&f.layout.sizes) {
                let term = (x * &y.conj()).scale(&BigRational::from_integer(BigInt::from(size)));
                acc += &term;
            }
            acc
        }
    };
    Ok(total.scale(&order.recip()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::Field;
    use proptest::prelude::*;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn theta_basics() {
        let f = Field::new(5, 1).unwrap();
        assert_eq!(theta(f.zero()), Cyclo::one(5));
        let total = f.elements().fold(Cyclo::zero(5), |acc, x| acc + theta(x));
        assert!(total.is_zero());
        let f7 = Field::new(7, 1).unwrap();
        for a in f7.elements() {
            assert_eq!(theta(a) * theta(-a), Cyclo::one(7));
            assert_eq!(theta(a).conj(), theta(-a));
        }
    }

    #[test]
    fn theta_sums_vanish_over_extension_fields() {
        for q in [9u64, 25, 27] {
            let f = Field::with_order(q).unwrap();
            let total = f.elements().fold(Cyclo::zero(f.p()), |acc, x| acc + theta(x));
            assert!(total.is_zero(), "q = {q}");
        }
    }

    #[test]
    fn zeta_identities() {
        for p in [3u32, 5, 7, 11] {
            let z = Cyclo::zeta_pow(p, 1);
            let zl = Cyclo::zeta_pow(p, p as i64 - 1);
            assert_eq!(&z * &zl, Cyclo::one(p));
            let s = (0..p as i64).fold(Cyclo::zero(p), |a, j| a + Cyclo::zeta_pow(p, j));
            assert!(s.is_zero());
        }
    }

    #[test]
    fn quadratic_gauss_sum_norm() {
        let f = Field::new(5, 1).unwrap();
        // direct five-term sum
        let g = f.elements().fold(Cyclo::zero(5), |acc, r| acc + theta(r * r));
        assert_eq!(&g * &g.conj(), Cyclo::from_int(5, 5));
    }

    #[test]
    fn display_and_complex() {
        let p = 5;
        let v = Cyclo::from_int(p, 3) + Cyclo::zeta_pow(p, 1).scale(&int(2))
            - Cyclo::zeta_pow(p, 3);
        assert_eq!(v.to_string(), "3 + 2z - z^3");
        let (re, im) = Cyclo::zeta_pow(p, 0).to_complex();
        assert!((re - 1.0).abs() < 1e-12 && im.abs() < 1e-12);
        assert_eq!(Cyclo::zero(p).to_string(), "0");
        assert_eq!(Cyclo::from_int(p, -4).to_string(), "-4");
    }

    #[test]
    fn serialization_shape() {
        let v = serde_json::to_value(Cyclo::zeta_pow(3, 1)).unwrap();
        assert_eq!(v["zeta_coeffs"], serde_json::json!([["0", "1"], ["1", "1"]]));
        assert!(v["approx"].is_array());
    }

    #[test]
    fn int_accumulator_matches_exact() {
        let p = 7;
        let mut acc = CycloInt::zero(p);
        let mut exact = Cyclo::zero(p);
        for j in 0..20i64 {
            acc.add_zeta(j * j, j - 3);
            exact += &Cyclo::zeta_pow(p, j * j).scale(&int(j - 3));
        }
        assert_eq!(acc.to_cyclo(), exact);
        assert_eq!(acc.mul(&acc.conj()).to_cyclo(), &exact * &exact.conj());
    }

    #[test]
    fn trivial_inner_product() {
        let layout =
            ClassLayout::new("toy", vec!["1".into(), "g".into()], vec![1, 1], 2).unwrap();
        let t = ClassFunction::trivial(layout.clone(), 3);
        assert_eq!(inner_product(&t, &t).unwrap(), Cyclo::one(3));
        let other = ClassLayout::new("other", vec!["1".into()], vec![2], 2).unwrap();
        let u = ClassFunction::trivial(other, 3);
        assert!(matches!(inner_product(&t, &u), Err(CycloError::LayoutMismatch(..))));
        assert!(ClassLayout::new("bad", vec!["1".into()], vec![3], 2).is_err());
    }

    fn small_rational() -> impl Strategy<Value = BigRational> {
        (-20i64..20, 1i64..6).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    fn class_fn(layout: Arc<ClassLayout>) -> impl Strategy<Value = ClassFunction> {
        let n = layout.len();
        prop::collection::vec(prop::collection::vec(small_rational(), 4), n).prop_map(move |vs| {
            let values = vs.into_iter().map(|c| Cyclo::from_coeffs(5, c)).collect();
            ClassFunction::new(layout.clone(), values).unwrap()
        })
    }

    fn toy_layout() -> Arc<ClassLayout> {
        ClassLayout::new("toy", (0..4).map(|i| i.to_string()).collect(), vec![1, 2, 3, 6], 12)
            .unwrap()
    }

    proptest! {
        #[test]
        fn inner_product_is_hermitian_and_positive(
            f in class_fn(toy_layout()),
            g in class_fn(toy_layout()),
        ) {
            let fg = inner_product(&f, &g).unwrap();
            let gf = inner_product(&g, &f).unwrap();
            prop_assert_eq!(fg, gf.conj());
            let ff = inner_product(&f, &f).unwrap();
            prop_assert_eq!(ff.clone(), ff.conj());
            let zero_fn = f.values.iter().all(Cyclo::is_zero);
            let (re, _) = ff.to_complex();
            let ok = if zero_fn { ff.is_zero() } else { re > 0.0 };
            prop_assert!(ok);
        }

        #[test]
        fn multiplication_is_commutative_and_distributive(
            a in prop::collection::vec(small_rational(), 4),
            b in prop::collection::vec(small_rational(), 4),
            c in prop::collection::vec(small_rational(), 4),
        ) {
            let (a, b, c) = (Cyclo::from_coeffs(5, a), Cyclo::from_coeffs(5, b), Cyclo::from_coeffs(5, c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        }
    }
}
