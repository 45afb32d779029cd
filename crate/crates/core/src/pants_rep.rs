//! Difference-operator representation of the quantized trace functions on a
//! lattice `l_n = l_0 + n h`.
//!
//! Operators are kept symbolic: each shift power carries a sum of products
//! of elementary factors evaluated at offset lattice sites. Composition is
//! exact on that level, and numbers only enter when a band matrix is
//! evaluated on a finite window.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qcoeff::QCoeff;
use crate::quantum::relation_terms;
use crate::topology::SurfaceKind;

/// Binary precision for a number of decimal digits, with guard bits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 16
}

#[derive(Debug, Clone)]
pub struct RepParams {
    pub kind: SurfaceKind,
    pub b2: Complex,
    /// `L_0` for the torus, `L_1..L_4` for the sphere.
    pub boundary: Vec<Complex>,
    /// Base point `l_0` of the lattice.
    pub l0: Complex,
    pub prec: u32,
}

impl RepParams {
    pub fn new(kind: SurfaceKind, b2: (f64, f64), boundary: &[(f64, f64)], l0: (f64, f64), digits: u32) -> Result<Self> {
        let prec = bits_for_digits(digits);
        let want = kind.boundary_names().len();
        if boundary.len() != want {
            return Err(Error::WrongCount {
                what: "boundary constants",
                expected: want,
                found: boundary.len(),
            });
        }
        let p = Self {
            kind,
            b2: Complex::with_val(prec, b2),
            boundary: boundary.iter().map(|&v| Complex::with_val(prec, v)).collect(),
            l0: Complex::with_val(prec, l0),
            prec,
        };
        p.validate()?;
        Ok(p)
    }

    /// Generic parameters around `b^2 = 0.3 + 0.1i`.
    pub fn random<R: Rng>(kind: SurfaceKind, rng: &mut R, digits: u32) -> Result<Self> {
        let r = 0.02 + 0.05 * rng.gen::<f64>();
        let th = std::f64::consts::TAU * rng.gen::<f64>();
        let b2 = (0.3 + r * th.cos(), 0.1 + r * th.sin());
        let boundary: Vec<(f64, f64)> = (0..kind.boundary_names().len())
            .map(|_| (2.0 + rng.gen::<f64>(), 0.3 * rng.gen::<f64>()))
            .collect();
        let l0 = (1.0 + 0.6 * rng.gen::<f64>(), 0.1 + 0.2 * rng.gen::<f64>());
        Self::new(kind, b2, &boundary, l0, digits)
    }

    /// `count` draws from a generator seeded with `seed`.
    pub fn random_draws(kind: SurfaceKind, seed: u64, count: usize, digits: u32) -> Result<Vec<Self>> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| Self::random(kind, &mut rng, digits)).collect()
    }

    /// Same values with `b^2` replaced.
    pub fn with_b2(&self, b2: (f64, f64)) -> Result<Self> {
        let mut p = self.clone();
        p.b2 = Complex::with_val(self.prec, b2);
        p.validate()?;
        Ok(p)
    }

    /// Same values at a different precision.
    pub fn with_digits(&self, digits: u32) -> Self {
        let prec = bits_for_digits(digits);
        Self {
            kind: self.kind,
            b2: Complex::with_val(prec, &self.b2),
            boundary: self.boundary.iter().map(|v| Complex::with_val(prec, v)).collect(),
            l0: Complex::with_val(prec, &self.l0),
            prec,
        }
    }

    fn c(&self, v: impl Into<f64>) -> Complex {
        Complex::with_val(self.prec, (v.into(), 0.0))
    }

    fn pi(&self) -> Float {
        Float::with_val(self.prec, Constant::Pi)
    }

    fn i_pi_b2(&self) -> Complex {
        let mut z = Complex::with_val(self.prec, (0, self.pi()));
        z *= &self.b2;
        z
    }

    /// `q = e^{pi i b^2}`
    pub fn q(&self) -> Complex {
        self.i_pi_b2().exp()
    }

    /// `s = q^{1/4}`
    pub fn s(&self) -> Complex {
        (self.i_pi_b2() / 4u32).exp()
    }

    /// Lattice step: one unit of the shift moves `l` by `-2 pi i b^2` on the
    /// sphere and by half of that on the torus.
    pub fn step(&self) -> Complex {
        let h = self.i_pi_b2();
        match self.kind {
            SurfaceKind::C04 => -(h * 2u32),
            SurfaceKind::C11 => -h,
        }
    }

    pub fn site(&self, n: i64) -> Complex {
        Complex::with_val(self.prec, &self.l0 + self.step() * n)
    }

    pub fn validate(&self) -> Result<()> {
        let q4 = self.q().pow(4u32) - 1u32;
        if Float::with_val(self.prec, q4.abs_ref()).to_f64() < 1e-12 {
            return Err(Error::Degenerate("q^4 = 1".into()));
        }
        Ok(())
    }

    fn boundary_value(&self, i: usize) -> &Complex {
        match self.kind {
            SurfaceKind::C11 => &self.boundary[0],
            SurfaceKind::C04 => &self.boundary[i - 1],
        }
    }

    /// `L_1 <-> L_2, L_3 <-> L_4`
    pub fn swapped(&self) -> Self {
        let mut p = self.clone();
        if p.kind == SurfaceKind::C04 {
            p.boundary.swap(0, 1);
            p.boundary.swap(2, 3);
        }
        p
    }
}

/// Elementary coefficient factors; `offset` is relative to the output site.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Factor {
    /// `(2 sinh(l/2))^{half_power/2}`
    Sinh { offset: i64, half_power: i32 },
    /// `2 cosh(l/2)`
    Ls { offset: i64 },
    /// `c_ij(L_s)^{half_power/2}` with `c_ij(L) = L^2 + L_i^2 + L_j^2 + L L_i L_j - 4`
    Pair { i: usize, j: usize, offset: i64, half_power: i32 },
    /// `(L_s^2 + L_0 - 2)^{half_power/2}`
    Torus { offset: i64, half_power: i32 },
    /// `1 / (2 (cosh l - cos 2 pi b^2))`
    DiagDen { offset: i64 },
}

impl Factor {
    fn shifted(&self, d: i64) -> Self {
        let mut f = self.clone();
        match &mut f {
            Factor::Sinh { offset, .. }
            | Factor::Ls { offset }
            | Factor::Pair { offset, .. }
            | Factor::Torus { offset, .. }
            | Factor::DiagDen { offset } => *offset += d,
        }
        f
    }

    fn eval(&self, p: &RepParams, n: i64) -> Result<Complex> {
        let half = |l: &Complex| Complex::with_val(p.prec, l / 2u32);
        let ls_at = |off: i64| half(&p.site(n + off)).cosh() * 2u32;
        let power = |base: Complex, hp: i32, what: &str| -> Result<Complex> {
            if hp < 0 && base.is_zero() {
                return Err(Error::SingularSite {
                    site: n,
                    what: what.to_string(),
                });
            }
            let b = if hp % 2 != 0 { base.sqrt() } else { base };
            let k = if hp % 2 != 0 { hp } else { hp / 2 };
            Ok(b.pow(k))
        };
        match *self {
            Factor::Sinh { offset, half_power } => {
                power(half(&p.site(n + offset)).sinh() * 2u32, half_power, "2 sinh(l/2)")
            }
            Factor::Ls { offset } => Ok(ls_at(offset)),
            Factor::Pair { i, j, offset, half_power } => {
                let l = ls_at(offset);
                let (a, b) = (p.boundary_value(i), p.boundary_value(j));
                let v = Complex::with_val(p.prec, l.square_ref()) + a.clone().square() + b.clone().square()
                    + l * a * b
                    - 4u32;
                power(v, half_power, "c_ij")
            }
            Factor::Torus { offset, half_power } => {
                let l = ls_at(offset);
                let v = l.square() + p.boundary_value(0) - 2u32;
                power(v, half_power, "L_s^2 + L_0 - 2")
            }
            Factor::DiagDen { offset } => {
                let two_pi_b2 = Complex::with_val(p.prec, &p.b2 * p.pi()) * 2u32;
                let d = (p.site(n + offset).cosh() - two_pi_b2.cos()) * 2u32;
                if d.is_zero() {
                    return Err(Error::SingularSite {
                        site: n,
                        what: "cosh l - cos 2 pi b^2".into(),
                    });
                }
                Ok(d.recip())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Term {
    #[serde(serialize_with = "ser_complex")]
    pub c: Complex,
    pub factors: Vec<Factor>,
}

fn ser_complex<S: serde::Serializer>(c: &Complex, s: S) -> std::result::Result<S::Ok, S::Error> {
    (c.real().to_f64(), c.imag().to_f64()).serialize(s)
}

/// `(A psi)(n) = sum_m A_m(n) psi(n + m)`
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiffOperator {
    pub terms: BTreeMap<i64, Vec<Term>>,
}

impl DiffOperator {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn scalar(c: Complex) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(0, vec![Term { c, factors: vec![] }]);
        Self { terms }
    }

    pub fn shifts(&self) -> Vec<i64> {
        self.terms.keys().copied().collect()
    }

    pub fn bandwidth(&self) -> usize {
        self.terms.keys().map(|m| m.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, ts) in &o.terms {
            out.terms.entry(*m).or_default().extend(ts.iter().cloned());
        }
        out
    }

    pub fn scale(&self, c: &Complex) -> Self {
        let mut out = self.clone();
        for ts in out.terms.values_mut() {
            for t in ts {
                t.c *= c;
            }
        }
        out
    }

    /// `(AB)_m(n) = sum_j A_j(n) B_{m-j}(n + j)`
    pub fn compose(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (j, ta) in &self.terms {
            for (k, tb) in &o.terms {
                let slot = out.terms.entry(j + k).or_default();
                for a in ta {
                    for b in tb {
                        let mut factors = a.factors.clone();
                        factors.extend(b.factors.iter().map(|f| f.shifted(*j)));
                        slot.push(Term {
                            c: Complex::with_val(a.c.prec(), &a.c * &b.c),
                            factors,
                        });
                    }
                }
            }
        }
        out
    }

    /// Value of the coefficient of shift `m` at site `n`.
    pub fn coefficient(&self, m: i64, n: i64, p: &RepParams) -> Result<Complex> {
        let mut acc = p.c(0.0);
        if let Some(ts) = self.terms.get(&m) {
            for t in ts {
                let mut v = Complex::with_val(p.prec, &t.c);
                for f in &t.factors {
                    v *= f.eval(p, n)?;
                }
                acc += v;
            }
        }
        Ok(acc)
    }

    /// Band matrix on the sites `start .. start + len`.
    pub fn to_band(&self, p: &RepParams, start: i64, len: usize) -> Result<BandMatrix> {
        let diags = self
            .terms
            .keys()
            .map(|&m| {
                let col: Result<Vec<Complex>> = (0..len)
                    .into_par_iter()
                    .map(|i| self.coefficient(m, start + i as i64, p))
                    .collect();
                Ok((m, col?))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(BandMatrix {
            start,
            len,
            bandwidth: self.bandwidth(),
            diags,
        })
    }
}

/// Truncation of a difference operator to a finite window of sites.
#[derive(Debug, Clone)]
pub struct BandMatrix {
    pub start: i64,
    pub len: usize,
    pub bandwidth: usize,
    /// Entry `(i, i + m)` is `diags[m][i]`.
    pub diags: BTreeMap<i64, Vec<Complex>>,
}

impl BandMatrix {
    pub fn get(&self, i: usize, j: usize) -> Option<&Complex> {
        self.diags.get(&(j as i64 - i as i64)).map(|d| &d[i])
    }

    /// Matrix-vector product. Entries whose stencil leaves the window are
    /// flagged as boundary values.
    pub fn apply(&self, v: &[Complex]) -> Result<(Vec<Complex>, Vec<bool>)> {
        if v.len() != self.len {
            return Err(Error::IndexMismatch(v.len(), self.len));
        }
        if self.len <= 2 * self.bandwidth {
            return Err(Error::WindowTooSmall {
                window: self.len,
                bandwidth: self.bandwidth,
            });
        }
        let prec = v.first().map(|z| z.prec().0).unwrap_or(53);
        let rows: Vec<(Complex, bool)> = (0..self.len)
            .into_par_iter()
            .map(|i| {
                let mut acc = Complex::new(prec);
                let mut boundary = false;
                for (m, d) in &self.diags {
                    let j = i as i64 + m;
                    if j < 0 || j >= self.len as i64 {
                        boundary |= !d[i].is_zero();
                        continue;
                    }
                    acc += Complex::with_val(prec, &d[i] * &v[j as usize]);
                }
                (acc, boundary)
            })
            .collect();
        Ok(rows.into_iter().unzip())
    }
}

/// Applies an operator to a vector on the window starting at site `start`.
pub fn operator_apply(op: &DiffOperator, p: &RepParams, start: i64, v: &[Complex]) -> Result<(Vec<Complex>, Vec<bool>)> {
    op.to_band(p, start, v.len())?.apply(v)
}

/// Multiplication by `2 cosh(l/2)`.
pub fn build_ls(_p: &RepParams) -> DiffOperator {
    let mut terms = BTreeMap::new();
    terms.insert(
        0,
        vec![Term {
            c: Complex::with_val(_p.prec, 1),
            factors: vec![Factor::Ls { offset: 0 }],
        }],
    );
    DiffOperator { terms }
}

/// The dual operator: a diagonal part plus shifts by two sites in each
/// direction, symmetrized by `(2 sinh(l/2))^{-1/2}` on both sides.
pub fn build_lt(p: &RepParams) -> DiffOperator {
    let one = p.c(1.0);
    let mut terms = BTreeMap::new();
    let edge = |eps: i64, middle: Vec<Factor>| {
        let mut f = vec![Factor::Sinh { offset: 0, half_power: -1 }];
        f.extend(middle);
        f.push(Factor::Sinh {
            offset: 2 * eps,
            half_power: -1,
        });
        f
    };
    match p.kind {
        SurfaceKind::C04 => {
            let l = |i: usize| p.boundary_value(i).clone();
            let cos_pi_b2 = Complex::with_val(p.prec, &p.b2 * p.pi()).cos();
            let a = (l(2) * l(3) + l(1) * l(4)) * cos_pi_b2 * 2u32;
            let b = l(1) * l(3) + l(2) * l(4);
            terms.insert(
                0,
                vec![
                    Term {
                        c: a,
                        factors: vec![Factor::DiagDen { offset: 0 }],
                    },
                    Term {
                        c: b,
                        factors: vec![Factor::Ls { offset: 0 }, Factor::DiagDen { offset: 0 }],
                    },
                ],
            );
            for eps in [-1i64, 1] {
                let mid = vec![
                    Factor::Pair { i: 1, j: 2, offset: eps, half_power: 1 },
                    Factor::Pair { i: 3, j: 4, offset: eps, half_power: 1 },
                    Factor::Sinh { offset: eps, half_power: -2 },
                ];
                terms.insert(
                    2 * eps,
                    vec![Term {
                        c: one.clone(),
                        factors: edge(eps, mid),
                    }],
                );
            }
        }
        SurfaceKind::C11 => {
            for eps in [-1i64, 1] {
                let mid = vec![Factor::Torus { offset: eps, half_power: 1 }];
                terms.insert(
                    2 * eps,
                    vec![Term {
                        c: one.clone(),
                        factors: edge(eps, mid),
                    }],
                );
            }
        }
    }
    DiffOperator { terms }
}

/// `L_u` solved from the degree-two relation.
pub fn build_lu(p: &RepParams) -> Result<DiffOperator> {
    let ls = build_ls(p);
    let lt = build_lt(p);
    let s = p.s();
    let sp = |k: i32| Complex::with_val(p.prec, s.clone().pow(k));
    match p.kind {
        SurfaceKind::C04 => {
            let den = sp(8) - sp(-8);
            if Float::with_val(p.prec, den.abs_ref()).to_f64() < 1e-300 {
                return Err(Error::Degenerate("q^4 = 1".into()));
            }
            let l = |i: usize| p.boundary_value(i).clone();
            let b = l(1) * l(3) + l(2) * l(4);
            let num = ls
                .compose(&lt)
                .scale(&sp(4))
                .add(&lt.compose(&ls).scale(&-sp(-4)))
                .add(&DiffOperator::scalar(-(sp(4) - sp(-4)) * b));
            Ok(num.scale(&den.recip()))
        }
        SurfaceKind::C11 => {
            let den = sp(4) - sp(-4);
            if Float::with_val(p.prec, den.abs_ref()).to_f64() < 1e-300 {
                return Err(Error::Degenerate("q^2 = 1".into()));
            }
            let num = ls.compose(&lt).scale(&sp(2)).add(&lt.compose(&ls).scale(&-sp(-2)));
            Ok(num.scale(&den.recip()))
        }
    }
}

/// Numerical value of an exact coefficient at complex `s`.
pub fn eval_qcoeff(c: &QCoeff, s: &Complex) -> Result<Complex> {
    let prec = s.prec().0;
    let poly = |p: &crate::upoly::UPoly| -> Result<Complex> {
        let mut acc = Complex::new(prec);
        for k in p.coeffs().iter().rev() {
            acc *= s;
            let r = rug::Rational::from_str(&k.to_string()).map_err(|e| Error::Parse(e.to_string()))?;
            acc += Float::with_val(prec, &r);
        }
        Ok(acc)
    };
    let d = poly(c.denominator())?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let v = c.s_valuation();
    Ok(poly(c.numerator())? / d * Complex::with_val(prec, s.clone().pow(v as i32)))
}

/// Multiplies the coefficient of one relation term by `1 + factor`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Perturbation {
    pub degree: u8,
    pub term: usize,
    pub factor: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SiteResidual {
    pub site: i64,
    pub relation: u8,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PantsReport {
    pub kind: SurfaceKind,
    pub digits_bits: u32,
    pub window: usize,
    pub tolerance: f64,
    pub rows: Vec<SiteResidual>,
    pub max_residual: f64,
    pub passed: bool,
}

impl PantsReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("site,relation,residual\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{:.3e}", r.site, r.relation, r.residual);
        }
        out
    }

    pub fn max_for(&self, relation: u8) -> f64 {
        self.rows
            .iter()
            .filter(|r| r.relation == relation)
            .map(|r| r.residual)
            .fold(0.0, f64::max)
    }
}

/// Evaluated generators on a window, ready for relation checks.
pub struct Generators {
    pub params: RepParams,
    pub start: i64,
    pub len: usize,
    pub ls: BandMatrix,
    pub lt: BandMatrix,
    pub lu: BandMatrix,
}

impl Generators {
    pub fn new(p: &RepParams, start: i64, len: usize) -> Result<Self> {
        Ok(Self {
            params: p.clone(),
            start,
            len,
            ls: build_ls(p).to_band(p, start, len)?,
            lt: build_lt(p).to_band(p, start, len)?,
            lu: build_lu(p)?.to_band(p, start, len)?,
        })
    }

    fn apply_word(&self, word: &[&str], v: Vec<Complex>) -> Result<Vec<Complex>> {
        let mut v = v;
        for w in word.iter().rev() {
            v = match *w {
                "s" => self.ls.apply(&v)?.0,
                "t" => self.lt.apply(&v)?.0,
                "u" => self.lu.apply(&v)?.0,
                other => {
                    let i = match other {
                        "L0" => 0,
                        _ => other[1..]
                            .parse::<usize>()
                            .map_err(|_| Error::MissingOperand(other.to_string()))?,
                    };
                    let c = self.params.boundary_value(i).clone();
                    v.into_iter().map(|z| z * &c).collect()
                }
            };
        }
        Ok(v)
    }

    /// `(|P delta_n|_max, scale)` where the scale is the largest entry of any
    /// single term of the relation.
    pub fn residual_at(&self, degree: u8, idx: usize, perturb: Option<Perturbation>) -> Result<(f64, f64, Vec<Complex>)> {
        let p = &self.params;
        let s = p.s();
        let mut delta = vec![Complex::new(p.prec); self.len];
        delta[idx] = p.c(1.0);
        let mut total = vec![Complex::new(p.prec); self.len];
        let mut scale = 0f64;
        for (k, (c, word)) in relation_terms(p.kind, degree, false)?.into_iter().enumerate() {
            let mut cv = eval_qcoeff(&c, &s)?;
            if let Some(pt) = perturb {
                if pt.degree == degree && pt.term == k {
                    cv *= 1.0 + pt.factor;
                }
            }
            let v = self.apply_word(&word, delta.clone())?;
            for (t, x) in total.iter_mut().zip(v) {
                let y = x * &cv;
                scale = scale.max(Float::with_val(p.prec, y.abs_ref()).to_f64());
                *t += y;
            }
        }
        let res = total
            .iter()
            .map(|z| Float::with_val(p.prec, z.abs_ref()).to_f64())
            .fold(0.0, f64::max);
        Ok((res, scale, total))
    }

    /// Sites whose relation stencil stays inside the window.
    pub fn interior(&self) -> std::ops::Range<usize> {
        let margin = 3 * 2 + 1;
        margin..self.len.saturating_sub(margin)
    }
}

/// Relative residuals of both relations on every interior site.
pub fn verify_pants_relations(p: &RepParams, window: usize, tol: f64, perturb: Option<Perturbation>) -> Result<PantsReport> {
    let g = Generators::new(p, 0, window)?;
    let interior: Vec<usize> = g.interior().collect();
    if interior.is_empty() {
        return Err(Error::WindowTooSmall { window, bandwidth: 7 });
    }
    let rows: Vec<SiteResidual> = interior
        .par_iter()
        .map(|&i| {
            let mut out = Vec::new();
            for d in [2u8, 3] {
                let (r, sc, _) = g.residual_at(d, i, perturb)?;
                out.push(SiteResidual {
                    site: g.start + i as i64,
                    relation: d,
                    residual: if sc > 0.0 { r / sc } else { r },
                });
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let max_residual = rows.iter().map(|r| r.residual).fold(0.0, f64::max);
    Ok(PantsReport {
        kind: p.kind,
        digits_bits: p.prec,
        window,
        tolerance: tol,
        rows,
        max_residual,
        passed: max_residual <= tol && max_residual.is_finite(),
    })
}

/// Largest difference of the residual vectors `P delta_n` computed on windows
/// `len` and `2 len`, compared on the sites of the smaller window's interior.
pub fn window_discrepancy(p: &RepParams, len: usize) -> Result<f64> {
    let a = Generators::new(p, 0, len)?;
    let b = Generators::new(p, 0, 2 * len)?;
    let mut worst = 0f64;
    for i in a.interior() {
        for d in [2u8, 3] {
            let (_, sa, va) = a.residual_at(d, i, None)?;
            let (_, _, vb) = b.residual_at(d, i, None)?;
            for (x, y) in va.iter().zip(&vb) {
                let diff = Complex::with_val(p.prec, x - y);
                worst = worst.max(Float::with_val(p.prec, diff.abs_ref()).to_f64() / sa.max(1.0));
            }
        }
    }
    Ok(worst)
}

/// Conformal weight attached to a length: `Q^2/4 + (l / 4 pi b)^2`.
pub fn delta_of_length(l: f64, b: f64) -> Result<f64> {
    if b == 0.0 {
        return Err(Error::Degenerate("b = 0".into()));
    }
    let q = b + 1.0 / b;
    let x = l / (4.0 * std::f64::consts::PI * b);
    Ok(q * q / 4.0 + x * x)
}

/// Variant of the weight with `(1 + b^2)/4b` in place of `Q^2/4`. It does
/// not equal `a(Q - a)`; kept only so the mismatch can be measured.
pub fn delta_variant(l: f64, b: f64) -> Result<f64> {
    if b == 0.0 {
        return Err(Error::Degenerate("b = 0".into()));
    }
    let x = l / (4.0 * std::f64::consts::PI * b);
    Ok((1.0 + b * b) / (4.0 * b) + x * x)
}

/// `exp(pi i (D_{l3} - D_{l2} - D_{l1}))` as `(re, im)`.
pub fn b_move_phase(l1: f64, l2: f64, l3: f64, b: f64) -> Result<(f64, f64)> {
    let e = delta_of_length(l3, b)? - delta_of_length(l2, b)? - delta_of_length(l1, b)?;
    let a = std::f64::consts::PI * e;
    Ok((a.cos(), a.sin()))
}

/// Note on the weight used in the braiding phase.
pub const BMOVE_NOTE: &str = "braiding phase uses D_l = Q^2/4 + (l/4 pi b)^2, which is D = a(Q-a) at \
a = Q/2 + i l/(4 pi b); the variant with (1+b^2)/4b in place of Q^2/4 is inconsistent with that and is not used";

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn params(kind: SurfaceKind) -> RepParams {
        let bd: &[(f64, f64)] = match kind {
            SurfaceKind::C04 => &[(2.3, 0.1), (2.7, 0.05), (2.1, 0.2), (2.9, 0.15)],
            SurfaceKind::C11 => &[(2.5, 0.2)],
        };
        RepParams::new(kind, (0.31, 0.1), bd, (1.3, 0.2), 30).unwrap()
    }

    fn cabs(z: &Complex) -> f64 {
        Float::with_val(z.prec().0, z.abs_ref()).to_f64()
    }

    #[test]
    fn ls_is_multiplication() {
        let p = params(SurfaceKind::C04);
        let ls = build_ls(&p);
        assert_eq!(ls.shifts(), vec![0]);
        let v = ls.coefficient(0, 3, &p).unwrap();
        let want = (p.site(3) / 2u32).cosh() * 2u32;
        assert!(cabs(&(v - want)) < 1e-25);
        let mut z = p.clone();
        z.l0 = Complex::with_val(p.prec, 0);
        let v0 = ls.coefficient(0, 0, &z).unwrap();
        assert!(cabs(&(v0 - 2u32)) < 1e-25);
    }

    #[test]
    fn pair_factor_probe() {
        // c_12 at L_s = 2, L_1 = L_2 = 2 is 4 + 4 + 4 + 8 - 4
        let mut p = params(SurfaceKind::C04);
        p.boundary[0] = Complex::with_val(p.prec, 2);
        p.boundary[1] = Complex::with_val(p.prec, 2);
        p.l0 = Complex::with_val(p.prec, 0);
        let f = Factor::Pair { i: 1, j: 2, offset: 0, half_power: 2 };
        let v = f.eval(&p, 0).unwrap();
        assert!(cabs(&(v - 16u32)) < 1e-25);
    }

    #[test]
    fn bandwidths() {
        for kind in [SurfaceKind::C04, SurfaceKind::C11] {
            let p = params(kind);
            assert_eq!(build_lt(&p).bandwidth(), 2);
            assert!(build_lu(&p).unwrap().bandwidth() <= 2);
        }
    }

    #[test]
    fn composition_matches_sequential_application() {
        let p = params(SurfaceKind::C04);
        let ab = build_lt(&p).compose(&build_lu(&p).unwrap());
        let len = 24;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let v: Vec<Complex> = (0..len)
            .map(|_| Complex::with_val(p.prec, (rng.gen::<f64>(), rng.gen::<f64>())))
            .collect();
        let (x, fx) = operator_apply(&ab, &p, 0, &v).unwrap();
        let (y1, _) = operator_apply(&build_lu(&p).unwrap(), &p, 0, &v).unwrap();
        let (y, _) = operator_apply(&build_lt(&p), &p, 0, &y1).unwrap();
        for i in 5..len - 5 {
            assert!(!fx[i]);
            let d = Complex::with_val(p.prec, &x[i] - &y[i]);
            assert!(cabs(&d) < 1e-20 * (1.0 + cabs(&x[i])));
        }
        assert!(fx[0] && fx[len - 1]);
    }

    #[test]
    fn identity_apply() {
        let p = params(SurfaceKind::C11);
        let id = DiffOperator::scalar(p.c(1.0));
        let v: Vec<Complex> = (0..8).map(|k| p.c(k as f64)).collect();
        let (w, _) = operator_apply(&id, &p, 0, &v).unwrap();
        assert_eq!(w, v);
    }

    #[test]
    fn small_window_rejected() {
        let p = params(SurfaceKind::C04);
        let v = vec![p.c(1.0); 4];
        assert!(matches!(
            operator_apply(&build_lt(&p), &p, 0, &v),
            Err(Error::WindowTooSmall { .. })
        ));
    }

    #[test]
    fn relations_hold_on_sphere_and_torus() {
        for kind in [SurfaceKind::C04, SurfaceKind::C11] {
            let rep = verify_pants_relations(&params(kind), 32, 1e-9, None).unwrap();
            assert!(rep.passed, "{kind:?}: {}", rep.max_residual);
        }
    }

    #[test]
    fn perturbed_coefficient_fails() {
        let p = params(SurfaceKind::C04);
        let pt = Perturbation { degree: 3, term: 6, factor: 0.01 };
        let rep = verify_pants_relations(&p, 32, 1e-9, Some(pt)).unwrap();
        assert!(!rep.passed);
        assert!(rep.max_for(3) > 1e-4);
    }

    #[test]
    fn swapped_boundary_labels_still_pass() {
        let p = params(SurfaceKind::C04).swapped();
        assert!(verify_pants_relations(&p, 32, 1e-9, None).unwrap().passed);
    }

    #[test]
    fn window_independent() {
        let p = params(SurfaceKind::C04);
        assert!(window_discrepancy(&p, 20).unwrap() < 1e-25);
    }

    #[test]
    fn singular_site_reported() {
        let mut p = params(SurfaceKind::C11);
        p.l0 = Complex::with_val(p.prec, 0);
        let err = build_lt(&p).coefficient(2, 0, &p).unwrap_err();
        assert!(matches!(err, Error::SingularSite { site: 0, .. }));
    }

    #[test]
    fn residual_shrinks_with_precision() {
        let lo = params(SurfaceKind::C04).with_digits(20);
        let hi = lo.with_digits(40);
        let a = verify_pants_relations(&lo, 24, 1e-9, None).unwrap().max_residual;
        let b = verify_pants_relations(&hi, 24, 1e-9, None).unwrap().max_residual;
        assert!(b < a * 1e-10, "{a} vs {b}");
    }

    #[test]
    fn braiding_phase() {
        let (re, im) = b_move_phase(0.0, 1.7, 1.7, 0.8).unwrap();
        let q = 0.8 + 1.0 / 0.8;
        let a = -std::f64::consts::PI * q * q / 4.0;
        assert!((re - a.cos()).abs() < 1e-14 && (im - a.sin()).abs() < 1e-14);
        let (re, im) = b_move_phase(0.3, 2.1, -1.4, 0.6).unwrap();
        assert!((re * re + im * im - 1.0).abs() < 1e-14);
        assert!(b_move_phase(0.0, 0.0, 0.0, 0.0).is_err());
        assert!((delta_variant(0.0, 1.0).unwrap() - delta_of_length(0.0, 1.0).unwrap()).abs() > 0.4);
    }
}
