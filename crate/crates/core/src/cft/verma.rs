//! Verma modules of the Virasoro algebra in the basis `L_{-lambda} e`,
//! `lambda` a partition with non-increasing parts.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use rayon::prelude::*;

use super::field::{determinant, Field, Ring};
use crate::upoly::UPoly;

pub type Partition = Vec<u32>;

/// Partitions of `n`, largest first part first.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn go(n: u32, max: u32, prefix: &mut Partition, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            go(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn partition_count(n: u32) -> usize {
    partitions(n).len()
}

/// `c = 13 + 6 (b^2 + b^{-2})`, i.e. `1 + 6 Q^2` with `Q = b + 1/b`.
pub fn central_charge<F: Field>(b2: &F) -> Option<F> {
    let inv = b2.one_like().over(b2)?;
    Some(b2.from_i64_like(13).plus(&b2.plus(&inv).times_i64(6)))
}

/// `-1/2 - 3 b^2 / 4`, the weight with a null vector at level two.
pub fn degenerate_weight<F: Field>(b2: &F) -> F {
    let half = b2.from_rational_like(&BigRational::new((-1).into(), 2.into()));
    let q = b2.from_rational_like(&BigRational::new(3.into(), 4.into()));
    half.minus(&q.times(b2))
}

pub struct Verma<R: Ring> {
    delta: R,
    c: R,
    cache: HashMap<(i64, Partition), Vec<(Partition, R)>>,
}

impl<R: Ring> Verma<R> {
    pub fn new(delta: R, c: R) -> Self {
        Self {
            delta,
            c,
            cache: HashMap::new(),
        }
    }

    pub fn delta(&self) -> &R {
        &self.delta
    }

    /// `L_n L_{-lambda} e` expanded in the partition basis.
    pub fn apply(&mut self, n: i64, lam: &[u32]) -> Vec<(Partition, R)> {
        let key = (n, lam.to_vec());
        if let Some(v) = self.cache.get(&key) {
            return v.clone();
        }
        let mut acc: BTreeMap<Partition, R> = BTreeMap::new();
        let add = |acc: &mut BTreeMap<Partition, R>, p: Partition, c: R| {
            let slot = acc.entry(p).or_insert_with(|| c.zero_like());
            *slot = slot.plus(&c);
        };
        let one = self.delta.one_like();
        if lam.is_empty() {
            match n.signum() {
                1 => {}
                0 => add(&mut acc, vec![], self.delta.clone()),
                _ => add(&mut acc, vec![(-n) as u32], one),
            }
        } else {
            let m = lam[0] as i64;
            let rest = &lam[1..];
            if n < 0 && -n >= m {
                let mut p = vec![(-n) as u32];
                p.extend_from_slice(lam);
                add(&mut acc, p, one);
            } else {
                // L_n L_{-m} X = L_{-m} L_n X + (n + m) L_{n-m} X + c/12 (n^3 - n) d_{n,m} X
                for (mu, cf) in self.apply(n, rest) {
                    for (nu, c2) in self.apply(-m, &mu) {
                        add(&mut acc, nu, cf.times(&c2));
                    }
                }
                if n + m != 0 {
                    for (mu, cf) in self.apply(n - m, rest) {
                        add(&mut acc, mu, cf.times_i64(n + m));
                    }
                }
                if n == m {
                    let cc = self.c.times_i64(n * n * n - n).div_i64(12);
                    add(&mut acc, rest.to_vec(), cc);
                }
            }
        }
        let out: Vec<(Partition, R)> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        self.cache.insert(key, out.clone());
        out
    }

    /// Shapovalov pairing `<L_{-a} e, L_{-b} e>`.
    pub fn pairing(&mut self, a: &[u32], b: &[u32]) -> R {
        let la: u32 = a.iter().sum();
        let lb: u32 = b.iter().sum();
        if la != lb {
            return self.delta.zero_like();
        }
        let mut v: BTreeMap<Partition, R> = BTreeMap::new();
        v.insert(b.to_vec(), self.delta.one_like());
        for &n in a {
            let mut nv: BTreeMap<Partition, R> = BTreeMap::new();
            for (mu, cf) in &v {
                for (nu, c2) in self.apply(n as i64, mu) {
                    let slot = nv.entry(nu).or_insert_with(|| cf.zero_like());
                    *slot = slot.plus(&cf.times(&c2));
                }
            }
            v = nv;
        }
        v.remove(&Vec::new()).unwrap_or_else(|| self.delta.zero_like())
    }

    pub fn gram_level(&mut self, k: u32) -> (Vec<Partition>, Vec<Vec<R>>) {
        let basis = partitions(k);
        let g = basis
            .iter()
            .map(|a| basis.iter().map(|b| self.pairing(a, b)).collect())
            .collect();
        (basis, g)
    }
}

/// Gram matrices of levels `1..=n` computed independently in parallel.
pub fn gram_levels<R: Ring>(delta: &R, c: &R, n: u32) -> Vec<(Vec<Partition>, Vec<Vec<R>>)> {
    (1..=n)
        .into_par_iter()
        .map(|k| Verma::new(delta.clone(), c.clone()).gram_level(k))
        .collect()
}

/// Level-`k` Gram determinant as a polynomial in the highest weight.
pub fn kac_determinant(c: &BigRational, k: u32) -> UPoly {
    let mut v = Verma::new(UPoly::x(), UPoly::constant(c.clone()));
    let (_, g) = v.gram_level(k);
    determinant(&g).unwrap_or_else(UPoly::one)
}

/// Coefficients of `L_{-1}^2 + b^2 L_{-2}` in the level-two basis
/// `[(2), (1,1)]`.
pub fn level_two_null_vector<F: Field>(b2: &F) -> Vec<F> {
    vec![b2.clone(), b2.one_like()]
}
