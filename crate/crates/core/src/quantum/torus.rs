//! Elements of the quantum torus in the Weyl-ordered monomial basis.
//!
//! Basis product: `:X^mu: :X^nu: = q^{<mu,nu>} :X^{mu+nu}:` with
//! `<mu,nu> = sum_ab mu_a n_ab nu_b`. Exponents are stored doubled, so with
//! `q = s^4` the factor is `s^{sum mu2_a n_ab nu2_b}`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{Exponent, LaurentPoly};
use crate::qcoeff::QCoeff;
use crate::topology::ExchangeMatrix;

#[derive(Clone)]
pub struct QuantumTorusElement {
    n: Arc<ExchangeMatrix>,
    terms: BTreeMap<Exponent, QCoeff>,
}

/// Products with at least this many term pairs are split across threads.
const PAR_THRESHOLD: usize = 4096;

impl QuantumTorusElement {
    pub fn zero(n: Arc<ExchangeMatrix>) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: Arc<ExchangeMatrix>, c: QCoeff) -> Self {
        let m = n.size();
        let mut out = Self::zero(n);
        out.add_term(vec![0; m], c);
        out
    }

    pub fn one(n: Arc<ExchangeMatrix>) -> Self {
        Self::constant(n, QCoeff::one())
    }

    pub fn monomial(n: Arc<ExchangeMatrix>, exp: Exponent, c: QCoeff) -> Self {
        assert_eq!(exp.len(), n.size());
        let mut out = Self::zero(n);
        out.add_term(exp, c);
        out
    }

    /// The generator `X_e`.
    pub fn var(n: Arc<ExchangeMatrix>, e: usize) -> Self {
        let mut exp = vec![0; n.size()];
        exp[e] = 2;
        Self::monomial(n, exp, QCoeff::one())
    }

    pub fn context(&self) -> &Arc<ExchangeMatrix> {
        &self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &QCoeff)> {
        self.terms.iter()
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

    pub fn coeff(&self, exp: &[i32]) -> QCoeff {
        self.terms.get(exp).cloned().unwrap_or_else(QCoeff::zero)
    }

    fn add_term(&mut self, exp: Exponent, c: QCoeff) {
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

    fn same_context(&self, o: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.n, &o.n) || *self.n == *o.n {
            Ok(())
        } else {
            Err(Error::IndexMismatch(self.n.size(), o.n.size()))
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_context(o)?;
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&QCoeff::from_int(-1))
    }

    pub fn scale(&self, c: &QCoeff) -> Self {
        let mut out = Self::zero(self.n.clone());
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    /// `s`-exponent of the basis product of two monomials.
    pub fn pairing(&self, mu: &[i32], nu: &[i32]) -> i64 {
        let mut k = 0i64;
        for (a, &ma) in mu.iter().enumerate() {
            if ma == 0 {
                continue;
            }
            let row = &self.n.n[a];
            for (b, &nb) in nu.iter().enumerate() {
                k += ma as i64 * row[b] as i64 * nb as i64;
            }
        }
        k
    }

    /// Product in the quantum torus.
    pub fn weyl_product(&self, o: &Self) -> Result<Self> {
        self.same_context(o)?;
        let pairs = self.terms.len() * o.terms.len();
        let partial = |(mu, c1): (&Exponent, &QCoeff)| {
            let mut acc: BTreeMap<Exponent, QCoeff> = BTreeMap::new();
            for (nu, c2) in &o.terms {
                let k = self.pairing(mu, nu);
                let e: Exponent = mu.iter().zip(nu).map(|(a, b)| a + b).collect();
                let c = &(c1 * c2) * &QCoeff::s_pow(k);
                let slot = acc.entry(e).or_insert_with(QCoeff::zero);
                *slot = &*slot + &c;
            }
            acc
        };
        let chunks: Vec<BTreeMap<Exponent, QCoeff>> = if pairs >= PAR_THRESHOLD {
            let v: Vec<_> = self.terms.iter().collect();
            v.into_par_iter().map(partial).collect()
        } else {
            self.terms.iter().map(partial).collect()
        };
        // Reduce in the fixed order of the left factor's terms.
        let mut out = Self::zero(self.n.clone());
        for chunk in chunks {
            for (e, c) in chunk {
                out.add_term(e, c);
            }
        }
        Ok(out)
    }

    /// Specialization `s -> 1`.
    pub fn classical_limit(&self) -> Result<LaurentPoly> {
        let m = self.n.size();
        let mut out = LaurentPoly::zero(m);
        for (e, c) in &self.terms {
            out = &out + &LaurentPoly::monomial(e.clone(), c.at_one()?);
        }
        Ok(out)
    }

    /// Coefficientwise `d/ds` at `s = 1`.
    pub fn derivative_at_one(&self) -> Result<LaurentPoly> {
        let m = self.n.size();
        let mut out = LaurentPoly::zero(m);
        for (e, c) in &self.terms {
            out = &out + &LaurentPoly::monomial(e.clone(), c.derivative_at_one()?);
        }
        Ok(out)
    }

    /// The same element read in the opposite context `-n`.
    pub fn in_context(&self, n: Arc<ExchangeMatrix>) -> Self {
        Self {
            n,
            terms: self.terms.clone(),
        }
    }

    /// Applies `s -> 1/s` to every coefficient.
    pub fn bar_coefficients(&self) -> Self {
        let mut out = Self::zero(self.n.clone());
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.bar());
        }
        out
    }

    /// Numerical value with `X_e` and `s` replaced by complex numbers.
    pub fn eval_c64(&self, x: &[f64], s: (f64, f64)) -> (f64, f64) {
        let mut acc = (0.0, 0.0);
        for (e, c) in &self.terms {
            let (re, im) = c.eval_c64(s);
            let m: f64 = e
                .iter()
                .zip(x)
                .map(|(k, xi)| xi.powf(*k as f64 / 2.0))
                .product();
            acc.0 += re * m;
            acc.1 += im * m;
        }
        acc
    }
}

impl QCoeff {
    /// `d/ds` at `s = 1`.
    pub fn derivative_at_one(&self) -> Result<BigRational> {
        use num_traits::{One, Zero};
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        let one = BigRational::one();
        let n1 = self.numerator().eval(&one);
        let d1 = self.denominator().eval(&one);
        if d1.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dn = self.numerator().derivative().eval(&one);
        let dd = self.denominator().derivative().eval(&one);
        let v = BigRational::from_integer(self.s_valuation().into());
        // (s^v N / D)' = s^v (v N / s + N' - N D'/D) / D at s = 1
        Ok((&v * &n1 + dn - &n1 * dd / &d1) / d1)
    }
}

/// Weyl quantization of a classical polynomial: each monomial is sent to
/// its Weyl-ordered counterpart with the same coefficient.
pub fn quantize_trace(p: &LaurentPoly, n: Arc<ExchangeMatrix>) -> Result<QuantumTorusElement> {
    if p.nvars() != n.size() {
        return Err(Error::IndexMismatch(p.nvars(), n.size()));
    }
    let mut out = QuantumTorusElement::zero(n);
    for (e, c) in p.terms() {
        out.add_term(e.clone(), QCoeff::from_rational(c.clone()));
    }
    Ok(out)
}

impl PartialEq for QuantumTorusElement {
    fn eq(&self, o: &Self) -> bool {
        *self.n == *o.n && self.terms == o.terms
    }
}

impl fmt::Debug for QuantumTorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl fmt::Display for QuantumTorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono = LaurentPoly::monomial(e.clone(), num_traits::One::one());
                format!("{c}*:{mono}:")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for QuantumTorusElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("QuantumTorusElement", 2)?;
        st.serialize_field("nvars", &self.n.size())?;
        let terms: Vec<(&Exponent, &QCoeff)> = self.terms.iter().collect();
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}
