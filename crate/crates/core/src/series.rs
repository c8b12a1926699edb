//! Truncated power series in `x` whose coefficients are polynomials in the
//! markers `y` (low peaks), `z` (components above ground level) and `w`
//! (all components), over exact rationals.
//!
//! The series are dense in `x` up to a fixed order and sparse in
//! `(y, z, w)`. Every arithmetic operation requires both operands to carry
//! the same order; nothing is silently truncated to the smaller one.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::combinatorics::catalan;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("constant term is not a nonzero constant")]
    NonUnitConstantTerm,
    #[error("series has a nonzero constant term and cannot be divided by x")]
    NotDivisibleByX,
}

/// Exponents of `(y, z, w)`.
pub type Exponents = [u32; 3];

/// Sparse polynomial in `y, z, w` with rational coefficients. Zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Exponents, BigRational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        MultiPoly::monomial(c, [0, 0, 0])
    }

    pub fn from_int(c: i64) -> Self {
        MultiPoly::constant(BigRational::from_integer(c.into()))
    }

    pub fn monomial(c: BigRational, e: Exponents) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        MultiPoly { terms }
    }

    pub fn y() -> Self {
        MultiPoly::monomial(BigRational::one(), [1, 0, 0])
    }

    pub fn z() -> Self {
        MultiPoly::monomial(BigRational::one(), [0, 1, 0])
    }

    pub fn w() -> Self {
        MultiPoly::monomial(BigRational::one(), [0, 0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: Exponents) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if the polynomial has no `y, z, w` dependence.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&[0, 0, 0]).cloned(),
            _ => None,
        }
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    fn add_term(&mut self, e: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn substitute(&self, spec: &Specialization) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = *e;
            for (slot, value) in [&spec.y, &spec.z, &spec.w].into_iter().enumerate() {
                if let Some(v) = value {
                    coeff *= num_traits::pow(v.clone(), exps[slot] as usize);
                    exps[slot] = 0;
                }
            }
            out.add_term(exps, coeff);
        }
        out
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

/// Values to substitute for `y, z, w`; `None` keeps the marker symbolic.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Specialization {
    pub y: Option<BigRational>,
    pub z: Option<BigRational>,
    pub w: Option<BigRational>,
}

impl Specialization {
    /// Convenience for integer substitutions.
    pub fn ints(y: Option<i64>, z: Option<i64>, w: Option<i64>) -> Self {
        let r = |v: Option<i64>| v.map(|v| BigRational::from_integer(v.into()));
        Specialization {
            y: r(y),
            z: r(z),
            w: r(w),
        }
    }
}

/// Coefficients of `x^0 ..= x^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<MultiPoly>,
}

#[derive(Serialize)]
struct TermRecord {
    y: u32,
    z: u32,
    w: u32,
    coeff: String,
}

#[derive(Serialize)]
struct CoeffRecord {
    x: usize,
    terms: Vec<TermRecord>,
}

impl TruncatedSeries {
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> MultiPoly) -> Self {
        TruncatedSeries {
            order,
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries::from_fn(order, |_| MultiPoly::zero())
    }

    pub fn constant(order: usize, c: MultiPoly) -> Self {
        let mut s = TruncatedSeries::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        TruncatedSeries::constant(order, MultiPoly::one())
    }

    /// The series `x` (zero at order 0).
    pub fn x(order: usize) -> Self {
        let mut s = TruncatedSeries::zero(order);
        if order >= 1 {
            s.coeffs[1] = MultiPoly::one();
        }
        s
    }

    /// Integer coefficients `c_0, c_1, ...`, padded with zeros or cut at
    /// `order`.
    pub fn from_ints(order: usize, cs: &[i64]) -> Self {
        TruncatedSeries::from_fn(order, |m| {
            cs.get(m).map_or_else(MultiPoly::zero, |&c| MultiPoly::from_int(c))
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, m: usize) -> &MultiPoly {
        &self.coeffs[m]
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    /// Coefficient of `x^m y^e0 z^e1 w^e2`.
    pub fn coefficient(&self, m: usize, e: Exponents) -> BigRational {
        self.coeffs[m].coeff(e)
    }

    /// The coefficient of `x^m` when it is a constant integer.
    pub fn integer_coeff(&self, m: usize) -> Option<BigInt> {
        self.coeffs[m]
            .as_constant()
            .filter(|c| c.is_integer())
            .map(|c| c.to_integer())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(MultiPoly::is_integral)
    }

    fn check_order(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order != other.order {
            return Err(SeriesError::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(TruncatedSeries::from_fn(self.order, |m| {
            &self.coeffs[m] + &other.coeffs[m]
        }))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(TruncatedSeries::from_fn(self.order, |m| {
            &self.coeffs[m] - &other.coeffs[m]
        }))
    }

    /// Cauchy product truncated at the common order.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(TruncatedSeries::from_fn(self.order, |m| {
            let mut acc = MultiPoly::zero();
            for t in 0..=m {
                if self.coeffs[t].is_zero() || other.coeffs[m - t].is_zero() {
                    continue;
                }
                acc = &acc + &(&self.coeffs[t] * &other.coeffs[m - t]);
            }
            acc
        }))
    }

    /// Multiplies every coefficient by a polynomial in `y, z, w`.
    pub fn scale_poly(&self, p: &MultiPoly) -> Self {
        TruncatedSeries::from_fn(self.order, |m| &self.coeffs[m] * p)
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries::from_fn(self.order, |m| -&self.coeffs[m])
    }

    /// Multiplies by `x`; the old top coefficient falls off.
    pub fn shift(&self) -> Self {
        TruncatedSeries::from_fn(self.order, |m| {
            if m == 0 {
                MultiPoly::zero()
            } else {
                self.coeffs[m - 1].clone()
            }
        })
    }

    /// Divides by `x`. The result is only known to order `order - 1`.
    pub fn div_x(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() || self.order == 0 {
            return Err(SeriesError::NotDivisibleByX);
        }
        Ok(TruncatedSeries::from_fn(self.order - 1, |m| {
            self.coeffs[m + 1].clone()
        }))
    }

    /// `1 / self`, for a series whose constant term is a nonzero constant.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let a0 = self.coeffs[0]
            .as_constant()
            .filter(|c| !c.is_zero())
            .ok_or(SeriesError::NonUnitConstantTerm)?;
        let inv = a0.recip();
        let mut out: Vec<MultiPoly> = Vec::with_capacity(self.order + 1);
        out.push(MultiPoly::constant(inv.clone()));
        for m in 1..=self.order {
            let mut acc = MultiPoly::zero();
            for t in 1..=m {
                if self.coeffs[t].is_zero() || out[m - t].is_zero() {
                    continue;
                }
                acc = &acc + &(&self.coeffs[t] * &out[m - t]);
            }
            out.push(acc.scale(&-inv.clone()));
        }
        Ok(TruncatedSeries {
            order: self.order,
            coeffs: out,
        })
    }

    pub fn specialize(&self, spec: &Specialization) -> Self {
        TruncatedSeries::from_fn(self.order, |m| self.coeffs[m].substitute(spec))
    }

    /// JSON list of `{"x": n, "terms": [{"y","z","w","coeff"}]}` with
    /// coefficients as decimal strings (`p/q` if not integral).
    pub fn to_json(&self) -> String {
        let records: Vec<_> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(x, p)| CoeffRecord {
                x,
                terms: p
                    .terms()
                    .map(|(e, c)| TermRecord {
                        y: e[0],
                        z: e[1],
                        w: e[2],
                        coeff: c.to_string(),
                    })
                    .collect(),
            })
            .collect();
        serde_json::to_string(&records).expect("series serializes")
    }

    /// Columns `x,y,z,w,coeff`, one row per nonzero term.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y,z,w,coeff\n");
        for (x, p) in self.coeffs.iter().enumerate() {
            for (e, c) in p.terms() {
                writeln!(out, "{x},{},{},{},{c}", e[0], e[1], e[2]).unwrap();
            }
        }
        out
    }
}

pub fn series_add(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    a.checked_add(b)
}

pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    a.checked_mul(b)
}

pub fn series_reciprocal(a: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    a.reciprocal()
}

fn int_series(order: usize, f: impl Fn(usize) -> BigInt) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |m| {
        MultiPoly::constant(BigRational::from_integer(f(m)))
    })
}

/// Generating function of Dyck paths by semilength.
pub fn catalan_series(order: usize) -> TruncatedSeries {
    int_series(order, |m| BigInt::from(catalan(m)))
}

/// `sqrt(1 - 4x) = 1 - 2x C(x)`: coefficients `1, -2 catalan(m - 1)`.
pub fn sqrt_one_minus_4x(order: usize) -> TruncatedSeries {
    int_series(order, |m| {
        if m == 0 {
            BigInt::one()
        } else {
            -BigInt::from(2u32) * BigInt::from(catalan(m - 1))
        }
    })
}

/// The four-variable generating function
/// `2 / (2 + 2wxz(1 - y) - w(1 + z)(1 - sqrt(1 - 4x)))`.
pub fn expand_f(order: usize) -> Result<TruncatedSeries, SeriesError> {
    let (y, z, w) = (MultiPoly::y(), MultiPoly::z(), MultiPoly::w());
    let one = MultiPoly::one();
    let two = MultiPoly::from_int(2);
    let root = sqrt_one_minus_4x(order);

    // 2wz(1 - y) x
    let low = TruncatedSeries::x(order).scale_poly(&(&(&two * &w) * &(&z * &(&one - &y))));
    // w(1 + z)(1 - sqrt(1 - 4x))
    let rest = TruncatedSeries::one(order)
        .checked_sub(&root)?
        .scale_poly(&(&w * &(&one + &z)));
    let denom = TruncatedSeries::constant(order, two.clone())
        .checked_add(&low)?
        .checked_sub(&rest)?;
    Ok(denom.reciprocal()?.scale_poly(&two))
}

/// `1 / (x + sqrt(1 - 4x))`: paths with no low peaks.
pub fn expand_no_low_peaks(order: usize) -> Result<TruncatedSeries, SeriesError> {
    TruncatedSeries::x(order)
        .checked_add(&sqrt_one_minus_4x(order))?
        .reciprocal()
}

/// `2 / ((z + 1) sqrt(1 - 4x) - z + 1)`: paths by components above ground.
pub fn expand_comps_above(order: usize) -> Result<TruncatedSeries, SeriesError> {
    let z = MultiPoly::z();
    let one = MultiPoly::one();
    let denom = sqrt_one_minus_4x(order)
        .scale_poly(&(&z + &one))
        .checked_add(&TruncatedSeries::constant(order, &one - &z))?;
    Ok(denom.reciprocal()?.scale_poly(&MultiPoly::from_int(2)))
}

/// `sum_{n >= 0} f(n + 1) x^n` for the irreducible-pair counts `f`; the
/// same series as [`expand_no_low_peaks`].
pub fn expand_irreducible_gf(order: usize) -> Result<TruncatedSeries, SeriesError> {
    expand_no_low_peaks(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        (0..=s.order())
            .map(|m| {
                let c = s.integer_coeff(m).expect("integer constant coefficient");
                i64::try_from(c).unwrap()
            })
            .collect()
    }

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn add_and_mul() {
        let a = TruncatedSeries::from_ints(2, &[1, 1]);
        let b = TruncatedSeries::from_ints(2, &[1, -1]);
        assert_eq!(ints(&series_mul(&a, &b).unwrap()), [1, 0, -1]);
        assert_eq!(series_add(&a, &TruncatedSeries::zero(2)).unwrap(), a);

        let ones = TruncatedSeries::from_ints(6, &[1; 7]);
        assert_eq!(ints(&ones.checked_mul(&ones).unwrap()), [1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let a = TruncatedSeries::one(2);
        let b = TruncatedSeries::one(3);
        assert_eq!(
            a.checked_add(&b),
            Err(SeriesError::OrderMismatch { left: 2, right: 3 })
        );
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn reciprocal_examples() {
        let geo = TruncatedSeries::from_ints(5, &[1, -1]).reciprocal().unwrap();
        assert_eq!(ints(&geo), [1, 1, 1, 1, 1, 1]);

        let half = TruncatedSeries::from_ints(3, &[2]).reciprocal().unwrap();
        assert_eq!(half.coeff(0).as_constant(), Some(r(1, 2)));
        assert!(half.coeff(1).is_zero());

        let lpf = TruncatedSeries::from_ints(5, &[1, -1, -2, -4, -10, -28])
            .reciprocal()
            .unwrap();
        assert_eq!(ints(&lpf), [1, 1, 3, 9, 29, 97]);

        assert_eq!(
            TruncatedSeries::x(3).reciprocal(),
            Err(SeriesError::NonUnitConstantTerm)
        );
        let symbolic = TruncatedSeries::constant(3, MultiPoly::y());
        assert_eq!(symbolic.reciprocal(), Err(SeriesError::NonUnitConstantTerm));
    }

    #[test]
    fn sqrt_series() {
        assert_eq!(ints(&sqrt_one_minus_4x(5)), [1, -2, -2, -4, -10, -28]);
        for order in [0, 1, 7, 15] {
            let s = sqrt_one_minus_4x(order);
            let sq = s.checked_mul(&s).unwrap();
            assert_eq!(sq, TruncatedSeries::from_ints(order, &[1, -4]));
        }
    }

    #[test]
    fn catalan_series_properties() {
        let c = catalan_series(5);
        assert_eq!(ints(&c), [1, 1, 2, 5, 14, 42]);
        let rhs = TruncatedSeries::one(5)
            .checked_add(&c.checked_mul(&c).unwrap().shift())
            .unwrap();
        assert_eq!(c, rhs);

        // (1 - sqrt(1 - 4x)) / (2x)
        let num = TruncatedSeries::one(6).checked_sub(&sqrt_one_minus_4x(6)).unwrap();
        let c_alt = num.div_x().unwrap().scale_poly(&MultiPoly::constant(r(1, 2)));
        assert_eq!(c_alt, catalan_series(5));
    }

    #[test]
    fn f_low_coefficients() {
        let f = expand_f(2).unwrap();
        assert_eq!(f.coeff(0), &MultiPoly::one());
        let x1 = &(&(&MultiPoly::y() * &MultiPoly::z()) * &MultiPoly::w()) + &MultiPoly::w();
        assert_eq!(f.coeff(1), &x1);
        let c2 = f.coeff(2);
        assert_eq!(c2.len(), 5);
        assert_eq!(c2.coeff([2, 2, 2]), r(1, 1));
        assert_eq!(c2.coeff([1, 1, 2]), r(2, 1));
        assert_eq!(c2.coeff([0, 1, 1]), r(1, 1));
        assert_eq!(c2.coeff([0, 0, 1]), r(1, 1));
        assert_eq!(c2.coeff([0, 0, 2]), r(1, 1));
    }

    #[test]
    fn specializations_of_f() {
        let f = expand_f(6).unwrap();
        let total = f.specialize(&Specialization::ints(Some(1), Some(1), Some(1)));
        assert_eq!(ints(&total), [1, 2, 6, 20, 70, 252, 924]);

        let lpf = f.specialize(&Specialization::ints(Some(0), Some(1), Some(1)));
        assert_eq!(ints(&lpf)[..6], [1, 1, 3, 9, 29, 97]);
        assert_eq!(lpf, expand_no_low_peaks(6).unwrap());

        let by_z = f.specialize(&Specialization::ints(Some(1), None, Some(1)));
        let want = MultiPoly::from_int(2)
            .add(&MultiPoly::z().scale(&r(3, 1)))
            .add(&(&MultiPoly::z() * &MultiPoly::z()));
        assert_eq!(by_z.coeff(2), &want);
        assert_eq!(by_z, expand_comps_above(6).unwrap());
    }

    #[test]
    fn comps_above_diagonal_is_one() {
        let s = expand_comps_above(8).unwrap();
        for n in 0..=8u32 {
            assert_eq!(s.coefficient(n as usize, [0, n, 0]), r(1, 1));
        }
        assert_eq!(s.coefficient(2, [0, 1, 0]), r(3, 1));
        let at_one = s.specialize(&Specialization::ints(None, Some(1), None));
        assert_eq!(ints(&at_one), [1, 2, 6, 20, 70, 252, 924, 3432, 12870]);
    }

    #[test]
    fn irreducible_gf_examples() {
        let s = expand_irreducible_gf(5).unwrap();
        assert_eq!(ints(&s)[0], 1);
        assert_eq!(ints(&s)[2], 3);
        assert_eq!(ints(&s)[5], 97);
    }

    #[test]
    fn json_shape() {
        let s = TruncatedSeries::from_ints(1, &[1]).scale_poly(&MultiPoly::constant(r(1, 2)));
        assert_eq!(
            s.to_json(),
            r#"[{"x":0,"terms":[{"y":0,"z":0,"w":0,"coeff":"1/2"}]},{"x":1,"terms":[]}]"#
        );
        assert_eq!(s.to_csv(), "x,y,z,w,coeff\n0,0,0,0,1/2\n");
    }
}
