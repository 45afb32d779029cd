//! Translation between geodesic length `l`, Liouville momentum `beta`,
//! conformal weight `Delta` and central charge `c` at a given `b`.

use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Dictionary {
    pub b: Complex64,
    pub q: Complex64,
    pub l: Complex64,
    pub beta: Complex64,
    pub delta: Complex64,
    pub c: Complex64,
}

fn q_of(b: Complex64) -> Result<Complex64> {
    if b.norm() == 0.0 {
        return Err(Error::Degenerate("b = 0".into()));
    }
    Ok(b + b.inv())
}

fn four_pi_b(b: Complex64) -> Complex64 {
    b * (4.0 * std::f64::consts::PI)
}

impl Dictionary {
    /// `beta = Q/2 + i l / (4 pi b)`, `Delta = beta (Q - beta)`, `c = 1 + 6 Q^2`.
    pub fn from_length(l: Complex64, b: Complex64) -> Result<Self> {
        let q = q_of(b)?;
        let beta = q / 2.0 + Complex64::i() * l / four_pi_b(b);
        Ok(Self {
            b,
            q,
            l,
            beta,
            delta: beta * (q - beta),
            c: 1.0 + 6.0 * q * q,
        })
    }

    pub fn from_beta(beta: Complex64, b: Complex64) -> Result<Self> {
        let q = q_of(b)?;
        let l = -Complex64::i() * (beta - q / 2.0) * four_pi_b(b);
        Self::from_length(l, b)
    }

    /// Inverse of `Delta(beta)`; of the two reflected momenta the one with
    /// `Re l >= 0` is returned.
    pub fn from_delta(delta: Complex64, b: Complex64) -> Result<Self> {
        let q = q_of(b)?;
        let root = (q * q / 4.0 - delta).sqrt();
        let d = Self::from_beta(q / 2.0 + root, b)?;
        if d.l.re < 0.0 {
            Self::from_beta(q / 2.0 - root, b)
        } else {
            Ok(d)
        }
    }

    /// The weight of the reflected momentum `Q - beta`.
    pub fn reflected_delta(&self) -> Complex64 {
        let r = self.q - self.beta;
        r * (self.q - r)
    }
}

/// Closed form `Q^2/4 + (l / 4 pi b)^2`.
pub fn delta_closed_form(l: Complex64, b: Complex64) -> Result<Complex64> {
    let q = q_of(b)?;
    let x = l / four_pi_b(b);
    Ok(q * q / 4.0 + x * x)
}

/// Exact check of `(Q/2 + i y)(Q/2 - i y) = Q^2/4 + y^2` over the
/// Gaussian rationals, where `y` stands for `l / 4 pi b`.
pub fn reflection_identity_exact(q: &BigRational, y: &BigRational) -> bool {
    let two = BigRational::from_integer(2.into());
    let beta = Complex::new(q / &two, y.clone());
    let qc = Complex::new(q.clone(), BigRational::from_integer(0.into()));
    let delta = beta.clone() * (qc.clone() - beta.clone());
    let reflected = (qc.clone() - beta.clone()) * beta;
    let want = q * q / BigRational::from_integer(4.into()) + y * y;
    delta == reflected && delta.re == want && delta.im == BigRational::from_integer(0.into())
}
