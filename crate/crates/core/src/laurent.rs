//! Sparse multivariate Laurent polynomials with half-integer exponents and
//! exact rational coefficients.
//!
//! Exponents are stored doubled: the vector `[1, -2, 0]` stands for
//! `X_0^{1/2} X_1^{-1} X_2^0`. Terms are kept in a `BTreeMap`, so iteration
//! order is lexicographic on the doubled exponent vectors and every
//! serialization is deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Doubled exponent vector (units of one half).
pub type Exponent = Vec<i32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, BigRational>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, BigRational::from_integer(c.into()))
    }

    /// `c · X^{exp/2}`; `exp` is the doubled exponent vector.
    pub fn monomial(exp: Exponent, c: BigRational) -> Self {
        let nvars = exp.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { nvars, terms }
    }

    /// The coordinate `X_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 2;
        Self::monomial(e, BigRational::one())
    }

    /// Builds a polynomial from `(doubled exponent, coefficient)` pairs,
    /// merging repeated exponents.
    pub fn from_terms<I>(nvars: usize, it: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, BigRational)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in it {
            assert_eq!(e.len(), nvars, "exponent length");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[i32]) -> BigRational {
        self.terms.get(exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub(crate) fn add_term(&mut self, exp: Exponent, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.nvars, other.nvars,
            "Laurent polynomials over different variable sets"
        );
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.nvars != other.nvars {
            return Err(Error::IndexMismatch(self.nvars, other.nvars));
        }
        Ok(self + other)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&BigRational::from_integer(c.into()))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Euler operator `X_i ∂/∂X_i`.
    pub fn euler(&self, i: usize) -> Self {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = BigRational::from_integer(e[i].into()) * &half;
            out.add_term(e.clone(), c * k);
        }
        out
    }

    /// Multiplies by the monomial `X^{shift/2}`.
    pub fn shift(&self, shift: &[i32]) -> Self {
        assert_eq!(shift.len(), self.nvars);
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Substitutes `X_i -> X_i^{-1}` for the given variable.
    pub fn invert_var(&self, i: usize) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[i] = -e[i];
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// `(1 + X_i)^k` for `k ≥ 0`.
    pub fn one_plus_var_pow(nvars: usize, i: usize, k: u32) -> Self {
        let mut out = Self::zero(nvars);
        let mut binom = BigInt::one();
        for j in 0..=k {
            let mut e = vec![0; nvars];
            e[i] = 2 * j as i32;
            out.add_term(e, BigRational::from_integer(binom.clone()));
            binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
        }
        out
    }

    /// Leading term in lexicographic order on the doubled exponents.
    pub fn leading(&self) -> Option<(&Exponent, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn all_coefficients_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    /// Evaluates at a point where every variable is a perfect square of a
    /// rational, given as square roots `r_i = X_i^{1/2}`.
    pub fn eval_sqrt(&self, roots: &[BigRational]) -> Result<BigRational> {
        if roots.len() != self.nvars {
            return Err(Error::IndexMismatch(self.nvars, roots.len()));
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, r) in e.iter().zip(roots) {
                if r.is_zero() && *k < 0 {
                    return Err(Error::DivisionByZero);
                }
                t *= pow_signed(r, *k);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Evaluates numerically at `X_i = x_i` (positive reals).
    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let c = rat_to_f64(c);
                e.iter()
                    .zip(x)
                    .fold(c, |acc, (k, xi)| acc * xi.powf(*k as f64 / 2.0))
            })
            .sum()
    }
}

pub(crate) fn pow_signed(r: &BigRational, k: i32) -> BigRational {
    let p = num_traits::pow(r.clone(), k.unsigned_abs() as usize);
    if k < 0 {
        p.recip()
    } else {
        p
    }
}

pub(crate) fn rat_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_same(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_same(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_same(rhs);
        let mut out = LaurentPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale_int(-1)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let a = c.abs();
            let is_const = e.iter().all(|k| *k == 0);
            if !a.is_one() || is_const {
                write!(f, "{a}")?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut sep = "";
            for (i, k) in e.iter().enumerate() {
                if *k == 0 {
                    continue;
                }
                if k % 2 == 0 {
                    if *k == 2 {
                        write!(f, "{sep}X{i}")?;
                    } else {
                        write!(f, "{sep}X{i}^{}", k / 2)?;
                    }
                } else {
                    write!(f, "{sep}X{i}^({}/2)", k)?;
                }
                sep = "*";
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[{}]({})", self.nvars, self)
    }
}

/// Structured-text form: exponents in half units, coefficients as decimal
/// numerator/denominator strings, terms in lexicographic exponent order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentPolyRepr {
    pub nvars: usize,
    pub terms: Vec<(Vec<i32>, String, String)>,
}

impl From<&LaurentPoly> for LaurentPolyRepr {
    fn from(p: &LaurentPoly) -> Self {
        Self {
            nvars: p.nvars,
            terms: p
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.numer().to_string(), c.denom().to_string()))
                .collect(),
        }
    }
}

impl TryFrom<LaurentPolyRepr> for LaurentPoly {
    type Error = Error;
    fn try_from(r: LaurentPolyRepr) -> Result<Self> {
        let mut p = LaurentPoly::zero(r.nvars);
        for (e, n, d) in r.terms {
            if e.len() != r.nvars {
                return Err(Error::IndexMismatch(r.nvars, e.len()));
            }
            let n: BigInt = n.parse().map_err(|_| Error::Parse(format!("numerator {n}")))?;
            let d: BigInt = d.parse().map_err(|_| Error::Parse(format!("denominator {d}")))?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            p.add_term(e, BigRational::new(n, d));
        }
        Ok(p)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LaurentPolyRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = LaurentPolyRepr::deserialize(d)?;
        LaurentPoly::try_from(r).map_err(serde::de::Error::custom)
    }
}

/// Quotient of two Laurent polynomials; equality by cross-multiplication.
#[derive(Clone, Debug)]
pub struct LaurentRational {
    pub numerator: LaurentPoly,
    pub denominator: LaurentPoly,
}

impl LaurentRational {
    pub fn new(numerator: LaurentPoly, denominator: LaurentPoly) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if numerator.nvars() != denominator.nvars() {
            return Err(Error::IndexMismatch(numerator.nvars(), denominator.nvars()));
        }
        Ok(Self {
            numerator,
            denominator,
        })
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let n = p.nvars();
        Self {
            numerator: p,
            denominator: LaurentPoly::one(n),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            numerator: &self.numerator * &other.numerator,
            denominator: &self.denominator * &other.denominator,
        }
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.denominator.clone(), self.numerator.clone())
    }

    pub fn equals(&self, other: &Self) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }

    pub fn equals_poly(&self, p: &LaurentPoly) -> bool {
        self.numerator == p * &self.denominator
    }
}

impl PartialEq for LaurentRational {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn product_adds_exponents() {
        let x = LaurentPoly::monomial(vec![1, 0], r(2));
        let y = LaurentPoly::monomial(vec![-1, 2], r(3));
        let p = &x * &y;
        assert_eq!(p.len(), 1);
        assert_eq!(p.coeff(&[0, 2]), r(6));
    }

    #[test]
    fn cancellation_removes_terms() {
        let x = LaurentPoly::var(2, 0);
        assert!((&x - &x).is_zero());
        assert_eq!((&x - &x).len(), 0);
    }

    #[test]
    fn binomial_expansion() {
        let p = LaurentPoly::one_plus_var_pow(1, 0, 3);
        let x = LaurentPoly::var(1, 0);
        let one = LaurentPoly::one(1);
        assert_eq!(p, (&one + &x).pow(3));
    }

    #[test]
    fn euler_operator_scales_by_half_exponent() {
        let p = LaurentPoly::monomial(vec![3, -2], r(4));
        assert_eq!(p.euler(0).coeff(&[3, -2]), r(6));
        assert_eq!(p.euler(1).coeff(&[3, -2]), r(-4));
    }

    #[test]
    fn display_half_powers() {
        let p = LaurentPoly::monomial(vec![1, -2], r(1)) + LaurentPoly::one(2);
        assert_eq!(p.to_string(), "X0^(1/2)*X1^-1 + 1");
    }

    #[test]
    fn rational_equality_by_cross_multiplication() {
        let x = LaurentPoly::var(1, 0);
        let one = LaurentPoly::one(1);
        let a = LaurentRational::new(&x * &x - one.clone(), &x - &one).unwrap();
        let b = LaurentRational::from_poly(&x + &one);
        assert_eq!(a, b);
        assert!(LaurentRational::new(x, LaurentPoly::zero(1)).is_err());
    }

    #[test]
    fn serialization_is_lexicographic() {
        let p = LaurentPoly::from_terms(
            2,
            vec![(vec![1, 0], r(1)), (vec![-1, 0], r(2)), (vec![0, 1], r(3))],
        );
        let repr = LaurentPolyRepr::from(&p);
        let exps: Vec<_> = repr.terms.iter().map(|t| t.0.clone()).collect();
        assert_eq!(exps, vec![vec![-1, 0], vec![0, 1], vec![1, 0]]);
        let back: LaurentPoly = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back, p);
    }
}
