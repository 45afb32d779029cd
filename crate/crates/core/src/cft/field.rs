//! Scalar types for the Virasoro computations: exact rationals, complex
//! floats at a chosen precision, and polynomials in the highest weight.
//!
//! Constructors take `&self` so that values carry their own precision.

use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rug::{Complex, Float};

use crate::upoly::UPoly;

pub trait Ring: Clone + Debug + PartialEq + Send + Sync {
    fn zero_like(&self) -> Self;
    fn from_i64_like(&self, n: i64) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn is_zero(&self) -> bool;
    /// Division by a nonzero integer; every ring here contains the rationals.
    fn div_i64(&self, n: i64) -> Self;

    fn one_like(&self) -> Self {
        self.from_i64_like(1)
    }

    fn negate(&self) -> Self {
        self.zero_like().minus(self)
    }

    fn times_i64(&self, n: i64) -> Self {
        self.times(&self.from_i64_like(n))
    }
}

pub trait Field: Ring {
    /// `None` on division by zero.
    fn over(&self, o: &Self) -> Option<Self>;
    fn from_rational_like(&self, r: &BigRational) -> Self;
    /// Size used for pivoting and residual reports.
    fn magnitude(&self) -> f64;
    /// Relative size below which a pivot counts as zero; exact fields use 0.
    fn tolerance(&self) -> f64 {
        0.0
    }
}

impl Ring for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        BigRational::from_integer(n.into())
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn div_i64(&self, n: i64) -> Self {
        self / BigRational::from_integer(n.into())
    }
}

impl Field for BigRational {
    fn over(&self, o: &Self) -> Option<Self> {
        if Zero::is_zero(o) {
            None
        } else {
            Some(self / o)
        }
    }
    fn from_rational_like(&self, r: &BigRational) -> Self {
        r.clone()
    }
    fn magnitude(&self) -> f64 {
        crate::laurent::rat_to_f64(&self.abs())
    }
}

/// Complex number at a fixed binary precision.
#[derive(Clone, Debug, PartialEq)]
pub struct Mpc(pub Complex);

impl Mpc {
    pub fn new(prec: u32, re: f64, im: f64) -> Self {
        Mpc(Complex::with_val(prec, (re, im)))
    }

    pub fn prec(&self) -> u32 {
        self.0.prec().0
    }

    pub fn from_float(f: Float) -> Self {
        let p = f.prec();
        Mpc(Complex::with_val(p, (f, 0)))
    }

    pub fn re(&self) -> f64 {
        self.0.real().to_f64()
    }

    pub fn im(&self) -> f64 {
        self.0.imag().to_f64()
    }
}

impl Ring for Mpc {
    fn zero_like(&self) -> Self {
        Mpc(Complex::new(self.prec()))
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Mpc(Complex::with_val(self.prec(), (n, 0)))
    }
    fn plus(&self, o: &Self) -> Self {
        Mpc(Complex::with_val(self.prec(), &self.0 + &o.0))
    }
    fn minus(&self, o: &Self) -> Self {
        Mpc(Complex::with_val(self.prec(), &self.0 - &o.0))
    }
    fn times(&self, o: &Self) -> Self {
        Mpc(Complex::with_val(self.prec(), &self.0 * &o.0))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn div_i64(&self, n: i64) -> Self {
        Mpc(Complex::with_val(self.prec(), &self.0 / n))
    }
}

impl Field for Mpc {
    fn over(&self, o: &Self) -> Option<Self> {
        if o.0.is_zero() {
            None
        } else {
            Some(Mpc(Complex::with_val(self.prec(), &self.0 / &o.0)))
        }
    }
    fn from_rational_like(&self, r: &BigRational) -> Self {
        let n = rug::Integer::from_str_radix(&r.numer().to_str_radix(16), 16).expect("integer digits");
        let d = rug::Integer::from_str_radix(&r.denom().to_str_radix(16), 16).expect("integer digits");
        let q = rug::Rational::from((n, d));
        Mpc(Complex::with_val(self.prec(), (Float::with_val(self.prec(), &q), 0)))
    }
    fn magnitude(&self) -> f64 {
        Float::with_val(self.prec(), self.0.abs_ref()).to_f64()
    }
    fn tolerance(&self) -> f64 {
        2f64.powi(-(self.prec() as i32 * 4 / 5))
    }
}

/// Polynomials in one variable; used with the highest weight as variable.
impl Ring for UPoly {
    fn zero_like(&self) -> Self {
        UPoly::zero()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        UPoly::from_int(n)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn is_zero(&self) -> bool {
        UPoly::is_zero(self)
    }
    fn div_i64(&self, n: i64) -> Self {
        self.scale(&BigRational::new(1.into(), n.into()))
    }
}

/// Solves `G x = v` by Gaussian elimination. Singular systems are accepted
/// when consistent; the free unknowns are set to zero. Returns `None` if
/// the system has no solution.
pub fn solve<F: Field>(g: &[Vec<F>], v: &[F]) -> Option<Vec<F>> {
    let n = v.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let zero = v[0].zero_like();
    let mut a: Vec<Vec<F>> = g
        .iter()
        .zip(v)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    let scale = a
        .iter()
        .flat_map(|r| r[..n].iter().map(|x| x.magnitude()))
        .fold(0.0, f64::max);
    let tiny = |x: &F| x.is_zero() || x.magnitude() <= scale * x.tolerance();
    for col in 0..n {
        let best = (row..n)
            .filter(|&i| !tiny(&a[i][col]))
            .max_by(|&i, &j| a[i][col].magnitude().total_cmp(&a[j][col].magnitude()));
        let Some(p) = best else { continue };
        a.swap(row, p);
        let inv = a[row][col].one_like().over(&a[row][col])?;
        for k in col..=n {
            a[row][k] = a[row][k].times(&inv);
        }
        for i in 0..n {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for k in col..=n {
                    let t = f.times(&a[row][k]);
                    a[i][k] = a[i][k].minus(&t);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    // Remaining rows must read 0 = 0.
    for r in a.iter().skip(row) {
        if !tiny(&r[n]) {
            return None;
        }
    }
    let mut x = vec![zero; n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = a[r][n].clone();
    }
    Some(x)
}

/// Determinant by cofactor expansion; only ring operations are needed.
pub fn determinant<R: Ring>(m: &[Vec<R>]) -> Option<R> {
    let n = m.len();
    let first = m.first()?.first()?;
    if n == 1 {
        return Some(first.clone());
    }
    let mut acc = first.zero_like();
    for j in 0..n {
        let minor: Vec<Vec<R>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let d = determinant(&minor)?;
        let t = m[0][j].times(&d);
        acc = if j % 2 == 0 { acc.plus(&t) } else { acc.minus(&t) };
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn solve_regular_and_singular() {
        let g = vec![vec![r(2, 1), r(1, 1)], vec![r(1, 1), r(3, 1)]];
        let x = solve(&g, &[r(3, 1), r(5, 1)]).unwrap();
        assert_eq!(x, vec![r(4, 5), r(7, 5)]);
        let s = vec![vec![r(1, 1), r(2, 1)], vec![r(2, 1), r(4, 1)]];
        assert!(solve(&s, &[r(1, 1), r(3, 1)]).is_none());
        let x = solve(&s, &[r(1, 1), r(2, 1)]).unwrap();
        assert_eq!(&x[0] + &(&x[1] * r(2, 1)), r(1, 1));
    }

    #[test]
    fn determinant_matches_hand_value() {
        let m = vec![
            vec![r(2, 1), r(0, 1), r(1, 1)],
            vec![r(1, 1), r(3, 1), r(2, 1)],
            vec![r(1, 1), r(1, 1), r(1, 1)],
        ];
        assert_eq!(determinant(&m).unwrap(), r(0, 1));
    }

    #[test]
    fn complex_solve_and_rational_embedding() {
        let one = Mpc::new(128, 1.0, 0.0);
        let g = vec![vec![Mpc::new(128, 0.0, 2.0)]];
        let x = solve(&g, &[one.clone()]).unwrap();
        assert!((x[0].im() + 0.5).abs() < 1e-30 && x[0].re().abs() < 1e-30);
        let third = one.from_rational_like(&r(1, 3));
        assert!((third.re() - 1.0 / 3.0).abs() < 1e-16);
    }
}
