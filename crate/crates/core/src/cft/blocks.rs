//! Sphere four-point and torus one-point conformal blocks by gluing
//! three-point data with inverse Gram matrices level by level.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::field::{solve, Field};
use super::verma::{gram_levels, partitions, Partition, Verma};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct BlockSeries<F> {
    /// Power of the expansion variable multiplying the series.
    pub leading_exponent: F,
    /// `c_0 = 1, c_1, ..., c_N`
    pub coefficients: Vec<F>,
    pub channel: String,
    pub internal: F,
    pub externals: Vec<F>,
}

/// `<L_{-lambda} D | phi_ext(1) | D_other>` normalized by the primary
/// three-point value: `prod_i (D + tail_i + lambda_i D_ext - D_other)` where
/// `tail_i` is the level of the parts after `lambda_i`.
pub fn vertex<F: Field>(lam: &[u32], d: &F, dext: &F, dother: &F) -> F {
    let mut tail: i64 = lam.iter().map(|&x| x as i64).sum();
    let mut acc = d.one_like();
    for &l in lam {
        tail -= l as i64;
        let f = d
            .plus(&d.from_i64_like(tail))
            .plus(&dext.times_i64(l as i64))
            .minus(dother);
        acc = acc.times(&f);
    }
    acc
}

/// `u^T G^{-1} v`, accepting singular `G` when both `u` and `v` lie in its
/// range (then the value does not depend on the solution chosen).
fn glue<F: Field>(level: u32, g: &[Vec<F>], u: &[F], v: &[F]) -> Result<F> {
    let x = solve(g, v).ok_or(Error::SingularGram(level as usize))?;
    solve(g, u).ok_or(Error::SingularGram(level as usize))?;
    let zero = v[0].zero_like();
    Ok(u.iter().zip(&x).fold(zero, |acc, (a, b)| acc.plus(&a.times(b))))
}

/// Block with externals `D1` at 0, `D2` at z, `D3` at 1, `D4` at infinity
/// and internal weight `Db` between the pairs `(1, 2)` and `(3, 4)`.
pub fn sphere4_block<F: Field>(d: [&F; 4], db: &F, c: &F, n: u32) -> Result<BlockSeries<F>> {
    let [d1, d2, d3, d4] = d;
    let grams = gram_levels(db, c, n);
    let mut coefficients = vec![db.one_like()];
    let rest: Vec<F> = grams
        .par_iter()
        .enumerate()
        .map(|(i, (basis, g))| {
            let u: Vec<F> = basis.iter().map(|l| vertex(l, db, d3, d4)).collect();
            let v: Vec<F> = basis.iter().map(|l| vertex(l, db, d2, d1)).collect();
            glue(i as u32 + 1, g, &u, &v)
        })
        .collect::<Result<_>>()?;
    coefficients.extend(rest);
    Ok(BlockSeries {
        leading_exponent: db.minus(d1).minus(d2),
        coefficients,
        channel: "s".into(),
        internal: db.clone(),
        externals: vec![d1.clone(), d2.clone(), d3.clone(), d4.clone()],
    })
}

/// Matrix elements `<xi, phi(1) eta>` between descendants of one Verma
/// module, for an inserted primary of weight `d0`.
struct TorusPairing<F: Field> {
    verma: Verma<F>,
    d0: F,
    memo: HashMap<(Partition, Partition), F>,
}

impl<F: Field> TorusPairing<F> {
    fn get(&mut self, xi: &[u32], eta: &[u32]) -> F {
        let key = (xi.to_vec(), eta.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let level = |p: &[u32]| p.iter().map(|&x| x as i64).sum::<i64>();
        let d0 = self.d0.clone();
        let v = if xi.is_empty() {
            if eta.is_empty() {
                d0.one_like()
            } else {
                // <e, phi L_{-n} eta'> = (|eta'| + n D0) <e, phi eta'>
                let n = eta[0] as i64;
                let f = d0.times_i64(n).plus(&d0.from_i64_like(level(&eta[1..])));
                f.times(&self.get(&[], &eta[1..]))
            }
        } else {
            // <L_{-n} xi', phi eta> = <xi', phi L_n eta> + (|xi'| - |eta| + n D0) <xi', phi eta>
            let n = xi[0] as i64;
            let rest = &xi[1..];
            let mut acc = d0.zero_like();
            for (mu, cf) in self.verma.apply(n, eta) {
                acc = acc.plus(&cf.times(&self.get(rest, &mu)));
            }
            let f = d0
                .times_i64(n)
                .plus(&d0.from_i64_like(level(rest) - level(eta)));
            acc.plus(&f.times(&self.get(rest, eta)))
        };
        self.memo.insert(key, v.clone());
        v
    }
}

/// One-point torus block `sum_k q^k tr_k(phi)`; the prefactor exponent is
/// `Db - c/24`.
pub fn torus1_block<F: Field>(d0: &F, db: &F, c: &F, n: u32) -> Result<BlockSeries<F>> {
    let grams = gram_levels(db, c, n);
    let rest: Vec<F> = grams
        .par_iter()
        .enumerate()
        .map(|(i, (basis, g))| {
            let level = i as u32 + 1;
            let mut tp = TorusPairing {
                verma: Verma::new(db.clone(), c.clone()),
                d0: d0.clone(),
                memo: HashMap::new(),
            };
            let mut trace = db.zero_like();
            for (j, lam) in basis.iter().enumerate() {
                let col: Vec<F> = basis.iter().map(|mu| tp.get(mu, lam)).collect();
                let y = solve(g, &col).ok_or(Error::SingularGram(level as usize))?;
                trace = trace.plus(&y[j]);
            }
            Ok(trace)
        })
        .collect::<Result<_>>()?;
    let mut coefficients = vec![db.one_like()];
    coefficients.extend(rest);
    Ok(BlockSeries {
        leading_exponent: db.minus(&c.div_i64(24)),
        coefficients,
        channel: "torus".into(),
        internal: db.clone(),
        externals: vec![d0.clone()],
    })
}

/// Coefficients of `(1 - z)^e` through order `n`.
pub fn binomial_series<F: Field>(e: &F, n: usize) -> Vec<F> {
    let mut out = vec![e.one_like()];
    for k in 1..=n {
        // c_k = c_{k-1} (k - 1 - e) / k
        let prev = out[k - 1].clone();
        let f = e.from_i64_like(k as i64 - 1).minus(e).div_i64(k as i64);
        out.push(prev.times(&f));
    }
    out
}

/// Number of Virasoro descendants at each level through `n`.
pub fn character_coefficients(n: u32) -> Vec<usize> {
    (0..=n).map(|k| partitions(k).len()).collect()
}

/// With `D1 = 0` and `Db = D2` the four-point block reduces to the
/// three-point function `(1 - z)^{D4 - D2 - D3}`. Returns both series.
pub fn vacuum_propagation<F: Field>(d2: &F, d3: &F, d4: &F, c: &F, n: u32) -> Result<(Vec<F>, Vec<F>)> {
    let zero = d2.zero_like();
    let b = sphere4_block([&zero, d2, d3, d4], d2, c, n)?;
    let e = d4.minus(d2).minus(d3);
    Ok((b.coefficients, binomial_series(&e, n as usize)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn level_one_coefficient() {
        let (d1, d2, d3, d4, db, c) = (r(1, 3), r(2, 5), r(3, 7), r(1, 11), r(5, 13), r(17, 4));
        let b = sphere4_block([&d1, &d2, &d3, &d4], &db, &c, 3).unwrap();
        let want = (&db + &d2 - &d1) * (&db + &d3 - &d4) / (&db * r(2, 1));
        assert_eq!(b.coefficients[1], want);
        assert_eq!(b.coefficients[0], r(1, 1));
    }

    #[test]
    fn relabeling_symmetry_at_all_levels() {
        let (d1, d2, d3, d4, db, c) = (r(1, 3), r(2, 5), r(3, 7), r(1, 11), r(5, 13), r(17, 4));
        let a = sphere4_block([&d1, &d2, &d3, &d4], &db, &c, 5).unwrap();
        let b = sphere4_block([&d4, &d3, &d2, &d1], &db, &c, 5).unwrap();
        assert_eq!(a.coefficients, b.coefficients);
    }

    #[test]
    fn vacuum_block_is_one() {
        let z = r(0, 1);
        let b = sphere4_block([&z, &z, &z, &z], &z, &r(7, 2), 6).unwrap();
        assert!(b.coefficients[1..].iter().all(|x| *x == z));
    }

    #[test]
    fn singular_internal_weight_is_reported() {
        let z = r(0, 1);
        let one = r(1, 1);
        let err = sphere4_block([&one, &r(1, 2), &one, &r(1, 3)], &z, &r(7, 2), 2).unwrap_err();
        assert_eq!(err, Error::SingularGram(1));
    }

    #[test]
    fn vacuum_propagation_reduces() {
        let (b, red) = vacuum_propagation(&r(2, 5), &r(3, 7), &r(1, 11), &r(17, 4), 6).unwrap();
        assert_eq!(b, red);
    }

    #[test]
    fn torus_vacuum_is_character() {
        let t = torus1_block(&r(0, 1), &r(3, 8), &r(9, 5), 7).unwrap();
        let want: Vec<BigRational> = character_coefficients(7).into_iter().map(|k| r(k as i64, 1)).collect();
        assert_eq!(t.coefficients, want);
        assert_eq!(t.leading_exponent, r(3, 8) - r(9, 5) / r(24, 1));
    }

    #[test]
    fn torus_level_one_by_hand() {
        // level one: <L_{-1}, phi L_{-1}> / <L_{-1}, L_{-1}> = 1 + D0 (D0 - 1) / (2 Db)
        let (d0, db, c) = (r(2, 7), r(3, 5), r(4, 3));
        let t = torus1_block(&d0, &db, &c, 1).unwrap();
        let want = r(1, 1) + &d0 * (&d0 - r(1, 1)) / (&db * r(2, 1));
        assert_eq!(t.coefficients[1], want);
    }
}
