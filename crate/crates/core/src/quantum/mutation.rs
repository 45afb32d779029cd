//! Quantum flips of shear coordinates.
//!
//! The image of `X'_a` is `c X^mu R(X_e)` where `R` is a product of factors
//! `(1 + s^k X_e^d)^m`. Relations between images reduce to identities of
//! rational functions in the two commuting symbols `s` and `x = X_e`.

use serde::Serialize;

use crate::classical::mutate_coordinate;
use crate::error::{Error, Result};
use crate::laurent::{Exponent, LaurentPoly, LaurentRational};
use crate::qcoeff::QCoeff;
use crate::topology::{ExchangeMatrix, Triangulation};

/// `(1 + s^s_power x^x_power)^exponent`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LinearFactor {
    pub s_power: i64,
    pub x_power: i32,
    pub exponent: i32,
}

impl LinearFactor {
    /// The factor with `x` replaced by `s^w x`.
    fn shifted(self, w: i64) -> Self {
        Self {
            s_power: self.s_power + w * self.x_power as i64,
            ..self
        }
    }

    fn base(self) -> LaurentPoly {
        let one = LaurentPoly::one(2);
        let m = LaurentPoly::monomial(
            vec![2 * self.s_power as i32, 2 * self.x_power],
            num_traits::One::one(),
        );
        &one + &m
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct QMutationImage {
    pub target: usize,
    pub edge: usize,
    pub coeff: QCoeff,
    /// Doubled exponent of the Weyl monomial.
    pub mono: Exponent,
    pub factors: Vec<LinearFactor>,
}

impl QMutationImage {
    /// `R(s^w x)` as numerator and denominator in `(s, x)`.
    fn rational(&self, w: i64) -> (LaurentPoly, LaurentPoly) {
        factors_rational(&self.factors, w)
    }

    /// Specialization `s -> 1` in the original coordinates.
    pub fn classical_limit(&self) -> Result<LaurentRational> {
        let m = self.mono.len();
        let mut num = LaurentPoly::monomial(self.mono.clone(), self.coeff.at_one()?);
        let mut den = LaurentPoly::one(m);
        for f in &self.factors {
            let mut e = vec![0; m];
            e[self.edge] = 2 * f.x_power;
            let b = &LaurentPoly::one(m) + &LaurentPoly::monomial(e, num_traits::One::one());
            if f.exponent > 0 {
                num = &num * &b.pow(f.exponent as u32);
            } else {
                den = &den * &b.pow(f.exponent.unsigned_abs());
            }
        }
        LaurentRational::new(num, den)
    }
}

fn factors_rational(fs: &[LinearFactor], w: i64) -> (LaurentPoly, LaurentPoly) {
    let mut num = LaurentPoly::one(2);
    let mut den = LaurentPoly::one(2);
    for f in fs {
        let b = f.shifted(w).base();
        if f.exponent > 0 {
            num = &num * &b.pow(f.exponent as u32);
        } else {
            den = &den * &b.pow(f.exponent.unsigned_abs());
        }
    }
    (num, den)
}

/// Image of `X'_target` under the quantum flip at `e`:
/// `X_e^{-1}` for the flipped edge, otherwise
/// `X_t prod_{k=1}^{|n|} (1 + q^{2k-1} X_e^{-sgn n})^{-sgn n}` with `n = n_te`.
pub fn quantum_mutation(n: &ExchangeMatrix, e: usize, target: usize) -> Result<QMutationImage> {
    let m = n.size();
    if e >= m || target >= m {
        return Err(Error::EdgeOutOfRange(e.max(target)));
    }
    let mut mono = vec![0; m];
    let mut factors = Vec::new();
    if target == e {
        mono[e] = -2;
    } else {
        mono[target] = 2;
        let k = n.get(target, e);
        let sg = k.signum();
        for j in 1..=k.unsigned_abs() as i64 {
            factors.push(LinearFactor {
                s_power: 4 * (2 * j - 1),
                x_power: -sg,
                exponent: -sg,
            });
        }
    }
    Ok(QMutationImage {
        target,
        edge: e,
        coeff: QCoeff::one(),
        mono,
        factors,
    })
}

pub fn quantum_mutation_all(n: &ExchangeMatrix, e: usize) -> Result<Vec<QMutationImage>> {
    (0..n.size()).map(|a| quantum_mutation(n, e, a)).collect()
}

fn pairing(n: &ExchangeMatrix, mu: &[i32], nu: &[i32]) -> i64 {
    let mut k = 0i64;
    for (a, &ma) in mu.iter().enumerate() {
        for (b, &nb) in nu.iter().enumerate() {
            k += ma as i64 * n.get(a, b) as i64 * nb as i64;
        }
    }
    k
}

/// `s`-exponent of the shift `x -> q^{2<e, mu>} x` when `X_e` passes
/// through `X^mu` from the left.
fn shift_weight(n: &ExchangeMatrix, e: usize, mu: &[i32]) -> i64 {
    (0..n.size()).map(|b| 4 * n.get(e, b) as i64 * mu[b] as i64).sum()
}

#[derive(Debug, Clone, Serialize)]
pub struct QMutationReport {
    pub edge: usize,
    /// Pairs `(a, b)` where `X'_a X'_b = q^{2 n'_ab} X'_b X'_a` fails.
    pub failures: Vec<(usize, usize)>,
    pub double_flip_identity: bool,
    pub classical_limit_matches: bool,
}

impl QMutationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.double_flip_identity && self.classical_limit_matches
    }
}

/// Checks that the images satisfy the commutation relations of the flipped
/// quantum torus with matrix `n_new`.
pub fn commutation_failures(n: &ExchangeMatrix, n_new: &ExchangeMatrix, images: &[QMutationImage]) -> Vec<(usize, usize)> {
    let mut bad = Vec::new();
    for (a, ia) in images.iter().enumerate() {
        for (b, ib) in images.iter().enumerate().skip(a + 1) {
            let e = ia.edge;
            // q^{2<mu_a, mu_b>} R_a(s^{w_b} x) R_b(x) = q^{2 n'_ab} R_b(s^{w_a} x) R_a(x)
            let lhs_s = 2 * pairing(n, &ia.mono, &ib.mono);
            let rhs_s = 8 * n_new.get(a, b) as i64;
            let (an, ad) = ia.rational(shift_weight(n, e, &ib.mono));
            let (bn, bd) = ib.rational(0);
            let (bn2, bd2) = ib.rational(shift_weight(n, e, &ia.mono));
            let (an2, ad2) = ia.rational(0);
            let sm = |k: i64| LaurentPoly::monomial(vec![2 * k as i32, 0], num_traits::One::one());
            let l = &(&sm(lhs_s) * &an) * &(&bn * &(&bd2 * &ad2));
            let r = &(&sm(rhs_s) * &bn2) * &(&an2 * &(&ad * &bd));
            if l != r {
                bad.push((a, b));
            }
        }
    }
    bad
}

/// Composes the flip at `e` with the flip back; every image must return to
/// the original generator.
pub fn verify_q_double_flip(n: &ExchangeMatrix, e: usize) -> Result<bool> {
    let n2 = n.mutate(e);
    for a in 0..n.size() {
        let first = quantum_mutation(n, e, a)?;
        let second = quantum_mutation(&n2, e, a)?;
        let mut expect = vec![0; n.size()];
        expect[a] = 2;
        if a == e {
            // (X_e^{-1})^{-1}
            if first.mono.iter().map(|v| -v).collect::<Vec<_>>() != expect || !second.factors.is_empty() {
                return Ok(false);
            }
            continue;
        }
        // X''_a = X'_a S(X'_e) with X'_e = X_e^{-1}
        let mut fs = first.factors.clone();
        fs.extend(second.factors.iter().map(|f| LinearFactor {
            x_power: -f.x_power,
            ..*f
        }));
        let (num, den) = factors_rational(&fs, 0);
        if num != den || first.mono != expect || !(&first.coeff * &second.coeff).at_one().is_ok() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Full check of the quantum flip at `e` of a triangulation.
pub fn verify_q_mutation_relations(tri: &Triangulation, e: usize) -> Result<QMutationReport> {
    let n = tri.exchange_matrix();
    let n_new = tri.flip(e)?.exchange_matrix();
    let images = quantum_mutation_all(&n, e)?;
    let failures = commutation_failures(&n, &n_new, &images);
    let double_flip_identity = verify_q_double_flip(&n, e)?;
    let mut classical_limit_matches = true;
    for (a, img) in images.iter().enumerate() {
        classical_limit_matches &= img.classical_limit()?.equals(&mutate_coordinate(&n, e, a)?);
    }
    Ok(QMutationReport {
        edge: e,
        failures,
        double_flip_identity,
        classical_limit_matches,
    })
}
