//! Rational functions of the formal quarter power `s = q^{1/4}`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::upoly::UPoly;

/// `s^val * num(s) / den(s)`, reduced: `num` and `den` are coprime, neither
/// vanishes at `s = 0`, and `den` is monic. Equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QCoeff {
    val: i64,
    num: UPoly,
    den: UPoly,
}

impl QCoeff {
    pub fn zero() -> Self {
        Self {
            val: 0,
            num: UPoly::zero(),
            den: UPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(v.into()))
    }

    pub fn from_rational(c: BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            val: 0,
            num: UPoly::constant(c),
            den: UPoly::one(),
        }
    }

    /// `s^k`
    pub fn s_pow(k: i64) -> Self {
        Self {
            val: k,
            num: UPoly::one(),
            den: UPoly::one(),
        }
    }

    /// `q^k = s^{4k}`
    pub fn q_pow(k: i64) -> Self {
        Self::s_pow(4 * k)
    }

    /// `c s^k`
    pub fn monomial(c: BigRational, k: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            val: k,
            num: UPoly::constant(c),
            den: UPoly::one(),
        }
    }

    /// A Laurent polynomial in `s` given as `(power, coefficient)` pairs.
    pub fn laurent(terms: &[(i64, i64)]) -> Self {
        let mut acc = Self::zero();
        for &(k, c) in terms {
            acc = &acc + &Self::monomial(BigRational::from_integer(c.into()), k);
        }
        acc
    }

    pub fn from_parts(val: i64, num: UPoly, den: UPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(val, num, den))
    }

    fn normalize(mut val: i64, num: UPoly, den: UPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let vn = num.valuation();
        let vd = den.valuation();
        let mut num = num.shift_down(vn);
        let mut den = den.shift_down(vd);
        val += vn as i64 - vd as i64;
        if den.degree() > 0 {
            let g = UPoly::gcd(&num, &den);
            if g.degree() > 0 {
                num = num.div_rem(&g).0;
                den = den.div_rem(&g).0;
            }
        }
        let l = den.lead();
        if !l.is_one() {
            let inv = l.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Self { val, num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn numerator(&self) -> &UPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UPoly {
        &self.den
    }

    pub fn s_valuation(&self) -> i64 {
        self.val
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(-self.val, self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self * &o.recip()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Value at `s = 1`.
    pub fn at_one(&self) -> Result<BigRational> {
        let d = self.den.eval(&BigRational::one());
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(&BigRational::one()) / d)
    }

    /// Value at a rational point `s = x`.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = crate::laurent::pow_signed(x, self.val as i32);
        Ok(p * self.num.eval(x) / d)
    }

    /// The substitution `s -> 1/s`.
    pub fn bar(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let val = -self.val - self.num.degree() as i64 + self.den.degree() as i64;
        Self::normalize(val, self.num.reversed(), self.den.reversed())
    }

    /// Evaluates at a complex `s` given as `(re, im)` in double precision.
    pub fn eval_c64(&self, s: (f64, f64)) -> (f64, f64) {
        let cmul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
        let poly = |p: &UPoly| {
            let mut acc = (0.0, 0.0);
            for c in p.coeffs().iter().rev() {
                acc = cmul(acc, s);
                acc.0 += crate::laurent::rat_to_f64(c);
            }
            acc
        };
        let n = poly(&self.num);
        let d = poly(&self.den);
        let dd = d.0 * d.0 + d.1 * d.1;
        let q = cmul(n, (d.0 / dd, -d.1 / dd));
        let (r, th) = ((s.0 * s.0 + s.1 * s.1).sqrt(), s.1.atan2(s.0));
        let rv = r.powi(self.val as i32);
        let pv = (rv * (th * self.val as f64).cos(), rv * (th * self.val as f64).sin());
        cmul(q, pv)
    }
}

impl Add for &QCoeff {
    type Output = QCoeff;
    fn add(self, o: &QCoeff) -> QCoeff {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let v = self.val.min(o.val);
        let a = self.num.shift_up((self.val - v) as usize);
        let b = o.num.shift_up((o.val - v) as usize);
        if self.den == o.den {
            return QCoeff::normalize(v, &a + &b, self.den.clone());
        }
        QCoeff::normalize(v, &(&a * &o.den) + &(&b * &self.den), &self.den * &o.den)
    }
}

impl Sub for &QCoeff {
    type Output = QCoeff;
    fn sub(self, o: &QCoeff) -> QCoeff {
        self + &(-o)
    }
}

impl Mul for &QCoeff {
    type Output = QCoeff;
    fn mul(self, o: &QCoeff) -> QCoeff {
        if self.is_zero() || o.is_zero() {
            return QCoeff::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return QCoeff {
                val: self.val + o.val,
                num: &self.num * &o.num,
                den: UPoly::one(),
            };
        }
        QCoeff::normalize(self.val + o.val, &self.num * &o.num, &self.den * &o.den)
    }
}

impl Neg for &QCoeff {
    type Output = QCoeff;
    fn neg(self) -> QCoeff {
        QCoeff {
            val: self.val,
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QCoeff {
            type Output = QCoeff;
            fn $m(self, rhs: QCoeff) -> QCoeff {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for QCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown = |p: &UPoly| p.to_string().replace('x', "s");
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = if self.val == 0 {
            format!("({})", shown(&self.num))
        } else {
            format!("s^{}*({})", self.val, shown(&self.num))
        };
        if !self.den.is_one() {
            out.push_str(&format!("/({})", shown(&self.den)));
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for QCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QCoeff[{self}]")
    }
}

/// Serialized as `s`-valuation plus ascending numerator and denominator
/// coefficient strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QCoeffRepr {
    pub val: i64,
    pub num: Vec<String>,
    pub den: Vec<String>,
}

impl From<&QCoeff> for QCoeffRepr {
    fn from(c: &QCoeff) -> Self {
        Self {
            val: c.val,
            num: c.num.coeffs().iter().map(|x| x.to_string()).collect(),
            den: c.den.coeffs().iter().map(|x| x.to_string()).collect(),
        }
    }
}

impl Serialize for QCoeff {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QCoeffRepr::from(self).serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_and_normal_form() {
        // (s^2 - 1)/(s - 1) = s + 1
        let a = QCoeff::from_parts(0, UPoly::from_ints(&[-1, 0, 1]), UPoly::from_ints(&[-1, 1])).unwrap();
        assert_eq!(a, QCoeff::laurent(&[(0, 1), (1, 1)]));
        // q - q^{-1} over q^2 - q^{-2} is 1/(q + q^{-1})
        let q = QCoeff::q_pow(1);
        let qi = QCoeff::q_pow(-1);
        let num = &q - &qi;
        let den = &QCoeff::q_pow(2) - &QCoeff::q_pow(-2);
        let r = num.div(&den).unwrap();
        assert_eq!(r, (&q + &qi).recip().unwrap());
        assert_eq!(r.at_one().unwrap(), BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn bar_is_involution() {
        let a = QCoeff::from_parts(3, UPoly::from_ints(&[2, 0, 5]), UPoly::from_ints(&[1, 1])).unwrap();
        assert_eq!(a.bar().bar(), a);
        assert_eq!(QCoeff::s_pow(3).bar(), QCoeff::s_pow(-3));
    }

    #[test]
    fn division_by_zero() {
        assert!(QCoeff::zero().recip().is_err());
        let a = (&QCoeff::s_pow(1) - &QCoeff::one()).recip().unwrap();
        assert!(a.at_one().is_err());
    }

    #[test]
    fn complex_evaluation() {
        let c = QCoeff::laurent(&[(2, 1), (-2, 1)]);
        let th = 0.3f64;
        let (re, im) = c.eval_c64((th.cos(), th.sin()));
        assert!((re - 2.0 * (2.0 * th).cos()).abs() < 1e-14 && im.abs() < 1e-14);
    }
}
