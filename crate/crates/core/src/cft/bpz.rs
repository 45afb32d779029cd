//! Four-point blocks with a degenerate insertion at `z` and the second
//! order differential equation they satisfy.
//!
//! Weights are parametrized as `D = Q^2/4 - r^2 b^2`, which keeps every
//! exponent of the equation rational when `b^2` and `r` are rational.

use num_rational::BigRational;

use super::blocks::{binomial_series, sphere4_block, BlockSeries};
use super::field::Field;
use super::verma::{central_charge, degenerate_weight};
use crate::error::{Error, Result};

/// `Q^2/4 = (1 + b^2)^2 / (4 b^2)`
pub fn q2_over_4<F: Field>(b2: &F) -> Option<F> {
    let one = b2.one_like();
    let s = one.plus(b2);
    s.times(&s).over(&b2.times_i64(4))
}

pub fn parametrized_weight<F: Field>(b2: &F, r: &F) -> Option<F> {
    Some(q2_over_4(b2)?.minus(&r.times(r).times(b2)))
}

/// Internal weight of the fusion channel `D1 (x) degenerate`,
/// `D1 + sign r1 b^2 - b^2/4`.
pub fn fused_internal<F: Field>(b2: &F, r1: &F, sign: i64) -> Option<F> {
    let d1 = parametrized_weight(b2, r1)?;
    Some(d1.plus(&r1.times(b2).times_i64(sign)).minus(&b2.div_i64(4)))
}

/// Residual of the degenerate-field equation, cleared of denominators:
///
/// `(1/b^2) z^2(1-z)^2 f'' - z(1-z)(1-2z) f' + D1 (1-z)^2 f + D3 z^2 f - K z(z-1) f`
/// with `K = D_deg + D1 + D3 - D4`, applied to `f = z^a sum_k c_k z^k`.
/// Entry `j` is the coefficient of `z^{a+j}`; entries through the block
/// order are complete.
pub fn bpz_residual<F: Field>(block: &BlockSeries<F>, b2: &F) -> Result<Vec<F>> {
    let [d1, _, d3, d4] = match block.externals.as_slice() {
        [a, b, c, d] => [a, b, c, d],
        _ => return Err(Error::Degenerate("four external weights expected".into())),
    };
    let inv_b2 = b2.one_like().over(b2).ok_or(Error::DivisionByZero)?;
    let ddeg = degenerate_weight(b2);
    let a = &block.leading_exponent;
    let kk = ddeg.plus(d1).plus(d3).minus(d4);
    let n = block.coefficients.len();
    let zero = a.zero_like();
    let mut res = vec![zero; n + 3];
    let put = |res: &mut Vec<F>, i: usize, v: F| res[i] = res[i].plus(&v);
    for (k, ck) in block.coefficients.iter().enumerate() {
        let e = a.plus(&a.from_i64_like(k as i64));
        let ee = e.times(&e.minus(&e.one_like())).times(&inv_b2).times(ck);
        // e(e-1)/b^2 (z^2 - 2 z^3 + z^4) shifted by z^{-2}
        for (p, cf) in [(0usize, 1i64), (1, -2), (2, 1)] {
            put(&mut res, k + p, ee.times_i64(cf));
        }
        // -e (z - 3 z^2 + 2 z^3) shifted by z^{-1}
        let e1 = e.times(ck).negate();
        for (p, cf) in [(0usize, 1i64), (1, -3), (2, 2)] {
            put(&mut res, k + p, e1.times_i64(cf));
        }
        // D1 (1 - 2z + z^2)
        let t1 = d1.times(ck);
        for (p, cf) in [(0usize, 1i64), (1, -2), (2, 1)] {
            put(&mut res, k + p, t1.times_i64(cf));
        }
        // D3 z^2
        put(&mut res, k + 2, d3.times(ck));
        // -K (-z + z^2)
        let t2 = kk.times(ck).negate();
        for (p, cf) in [(1usize, -1i64), (2, 1)] {
            put(&mut res, k + p, t2.times_i64(cf));
        }
    }
    res.truncate(n);
    Ok(res)
}

/// Parameters of a degenerate four-point block: `b^2` (or `b^{-2}` for the
/// dual degenerate field) and the momenta of the three other externals.
#[derive(Debug, Clone)]
pub struct DegenerateSetup<F> {
    pub b2: F,
    pub r1: F,
    pub r3: F,
    pub r4: F,
}

impl<F: Field> DegenerateSetup<F> {
    pub fn weights(&self) -> Option<[F; 4]> {
        Some([
            parametrized_weight(&self.b2, &self.r1)?,
            degenerate_weight(&self.b2),
            parametrized_weight(&self.b2, &self.r3)?,
            parametrized_weight(&self.b2, &self.r4)?,
        ])
    }

    pub fn central_charge(&self) -> Option<F> {
        central_charge(&self.b2)
    }

    /// The block in the channel `sign = +1` or `-1`.
    pub fn block(&self, sign: i64, n: u32) -> Result<BlockSeries<F>> {
        let w = self.weights().ok_or(Error::DivisionByZero)?;
        let db = fused_internal(&self.b2, &self.r1, sign).ok_or(Error::DivisionByZero)?;
        let c = self.central_charge().ok_or(Error::DivisionByZero)?;
        sphere4_block([&w[0], &w[1], &w[2], &w[3]], &db, &c, n)
    }

    /// Block with an arbitrary internal weight, for negative controls.
    pub fn block_with_internal(&self, db: &F, n: u32) -> Result<BlockSeries<F>> {
        let w = self.weights().ok_or(Error::DivisionByZero)?;
        let c = self.central_charge().ok_or(Error::DivisionByZero)?;
        sphere4_block([&w[0], &w[1], &w[2], &w[3]], db, &c, n)
    }

    /// Series solution of the same equation through Gauss' function:
    /// `f / z^a = (1 - z)^p 2F1(a + p + rho, a + p + rho'; 1 + a - a'; z)`
    /// with `p` an exponent at 1 and `rho, rho'` the exponents at infinity.
    pub fn hypergeometric(&self, sign: i64, p_sign: i64, n: usize) -> Result<Vec<F>> {
        let b2 = &self.b2;
        let one = b2.one_like();
        let w = self.weights().ok_or(Error::DivisionByZero)?;
        let db = fused_internal(b2, &self.r1, sign).ok_or(Error::DivisionByZero)?;
        let a = db.minus(&w[0]).minus(&w[1]);
        let a_other = one.plus(b2).minus(&a);
        let p = one
            .plus(b2)
            .plus(&self.r3.times(b2).times_i64(2 * p_sign))
            .div_i64(2);
        let base = one.plus(&b2.times_i64(2)).negate();
        let rho = base.plus(&self.r4.times(b2).times_i64(2)).div_i64(2);
        let rho2 = base.minus(&self.r4.times(b2).times_i64(2)).div_i64(2);
        let aa = a.plus(&p).plus(&rho);
        let bb = a.plus(&p).plus(&rho2);
        let cc = one.plus(&a).minus(&a_other);
        let f = gauss_series(&aa, &bb, &cc, n).ok_or(Error::DivisionByZero)?;
        Ok(cauchy(&binomial_series(&p, n), &f))
    }
}

/// `2F1(a, b; c; z)` through order `n`.
pub fn gauss_series<F: Field>(a: &F, b: &F, c: &F, n: usize) -> Option<Vec<F>> {
    let mut out = vec![a.one_like()];
    for k in 0..n {
        let kf = a.from_i64_like(k as i64);
        let num = a.plus(&kf).times(&b.plus(&kf));
        let den = c.plus(&kf).times(&a.from_i64_like(k as i64 + 1));
        out.push(out[k].times(&num.over(&den)?));
    }
    Some(out)
}

fn cauchy<F: Field>(x: &[F], y: &[F]) -> Vec<F> {
    let n = x.len().min(y.len());
    (0..n)
        .map(|k| {
            (0..=k).fold(x[0].zero_like(), |acc, i| acc.plus(&x[i].times(&y[k - i])))
        })
        .collect()
}

/// Default exact parameters used by the command line and the checks.
pub fn default_setup() -> DegenerateSetup<BigRational> {
    let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    DegenerateSetup {
        b2: r(2, 3),
        r1: r(1, 5),
        r3: r(2, 7),
        r4: r(3, 11),
    }
}
