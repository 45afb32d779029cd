//! Classical trace functions in shear coordinates.
//!
//! Holonomy convention: crossing edge `e` contributes
//! `E(X_e) = [[0, X_e^{1/2}], [-X_e^{-1/2}, 0]]`, a right turn contributes
//! `R = [[1, 1], [-1, 0]]` and a left turn `L = [[0, 1], [-1, -1]]`. With the
//! counterclockwise-successor sign of the exchange matrix these give
//! positive trace polynomials and make the generator relations hold.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, LaurentRational};
use crate::topology::{CurvePath, ExchangeMatrix, Reference, SurfaceKind, Triangulation, Turn};

/// 2x2 matrix of Laurent polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct HolonomyMatrix {
    pub m: [[LaurentPoly; 2]; 2],
}

impl HolonomyMatrix {
    pub fn identity(nvars: usize) -> Self {
        let z = LaurentPoly::zero(nvars);
        let o = LaurentPoly::one(nvars);
        Self {
            m: [[o.clone(), z.clone()], [z, o]],
        }
    }

    fn from_ints(nvars: usize, a: [[i64; 2]; 2]) -> Self {
        let f = |v: i64| LaurentPoly::from_int(nvars, v);
        Self {
            m: [[f(a[0][0]), f(a[0][1])], [f(a[1][0]), f(a[1][1])]],
        }
    }

    pub fn edge(nvars: usize, e: usize) -> Self {
        let mut up = vec![0; nvars];
        up[e] = 1;
        let mut down = vec![0; nvars];
        down[e] = -1;
        let z = LaurentPoly::zero(nvars);
        Self {
            m: [
                [z.clone(), LaurentPoly::monomial(up, BigRational::one())],
                [LaurentPoly::monomial(down, -BigRational::one()), z],
            ],
        }
    }

    pub fn turn(nvars: usize, t: Turn) -> Self {
        match t {
            Turn::Right => Self::from_ints(nvars, [[1, 1], [-1, 0]]),
            Turn::Left => Self::from_ints(nvars, [[0, 1], [-1, -1]]),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let e = |i: usize, j: usize| &(&self.m[i][0] * &o.m[0][j]) + &(&self.m[i][1] * &o.m[1][j]);
        Self {
            m: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]],
        }
    }

    pub fn trace(&self) -> LaurentPoly {
        &self.m[0][0] + &self.m[1][1]
    }

    pub fn det(&self) -> LaurentPoly {
        &(&self.m[0][0] * &self.m[1][1]) - &(&self.m[0][1] * &self.m[1][0])
    }
}

/// Holonomy along a walk, before sign normalization.
pub fn holonomy(tri: &Triangulation, gamma: &CurvePath) -> Result<HolonomyMatrix> {
    let nv = tri.num_edges();
    let states = gamma.states(tri)?;
    let mut acc = HolonomyMatrix::identity(nv);
    for s in &states {
        let e = tri.triangles()[s.triangle][s.in_slot];
        let turn = Turn::from_slots(s.in_slot, s.out_slot).expect("walk states have distinct slots");
        acc = acc.mul(&HolonomyMatrix::edge(nv, e)).mul(&HolonomyMatrix::turn(nv, turn));
    }
    Ok(acc)
}

/// Signed trace of the holonomy, normalized to positive coefficients.
pub fn trace_function(tri: &Triangulation, gamma: &CurvePath) -> Result<LaurentPoly> {
    let t = holonomy(tri, gamma)?.trace();
    let t = match t.leading() {
        Some((_, c)) if c.is_negative() => -t,
        _ => t,
    };
    if !t.all_coefficients_positive() {
        return Err(Error::BadWalk(format!(
            "trace of {gamma} has coefficients of both signs"
        )));
    }
    Ok(t)
}

/// Traces of all named curves of a reference triangulation.
pub fn reference_traces(r: &Reference) -> Result<BTreeMap<String, LaurentPoly>> {
    r.curves
        .iter()
        .map(|(k, p)| Ok((k.clone(), trace_function(&r.triangulation, p)?)))
        .collect()
}

fn pairing(mu: &[i32], n: &ExchangeMatrix, nu: &[i32]) -> i64 {
    let mut s = 0i64;
    for (a, &ma) in mu.iter().enumerate() {
        if ma == 0 {
            continue;
        }
        for (b, &nb) in nu.iter().enumerate() {
            s += (ma as i64) * (n.n[a][b] as i64) * (nb as i64);
        }
    }
    s
}

/// `{X^mu, X^nu} = <mu, nu> X^{mu+nu}` extended bilinearly.
pub fn poisson_bracket(p: &LaurentPoly, q: &LaurentPoly, n: &ExchangeMatrix) -> Result<LaurentPoly> {
    if p.nvars() != q.nvars() {
        return Err(Error::IndexMismatch(p.nvars(), q.nvars()));
    }
    if p.nvars() != n.size() {
        return Err(Error::IndexMismatch(p.nvars(), n.size()));
    }
    let four = BigRational::from_integer(BigInt::from(4));
    let mut out = LaurentPoly::zero(p.nvars());
    for (mu, c1) in p.terms() {
        for (nu, c2) in q.terms() {
            let k = pairing(mu, n, nu);
            if k == 0 {
                continue;
            }
            let e: Vec<i32> = mu.iter().zip(nu).map(|(a, b)| a + b).collect();
            let c = c1 * c2 * BigRational::from_integer(k.into()) / &four;
            out = &out + &LaurentPoly::monomial(e, c);
        }
    }
    Ok(out)
}

/// Image of `X_target` under the flip at `e`, written in the unflipped
/// coordinates: `X_e^{-1}` when `target = e`, otherwise
/// `X_target (1 + X_e^{-sgn n})^{-n}` with `n = n_{target, e}`.
pub fn mutate_coordinate(n: &ExchangeMatrix, e: usize, target: usize) -> Result<LaurentRational> {
    let m = n.size();
    if e >= m || target >= m {
        return Err(Error::EdgeOutOfRange(e.max(target)));
    }
    let mut mono = vec![0; m];
    if target == e {
        mono[e] = -2;
        return Ok(LaurentRational::from_poly(LaurentPoly::monomial(
            mono,
            BigRational::one(),
        )));
    }
    let k = n.get(target, e);
    mono[target] = 2;
    if k > 0 {
        mono[e] = 2 * k;
    }
    let num = LaurentPoly::monomial(mono, BigRational::one());
    let pw = LaurentPoly::one_plus_var_pow(m, e, k.unsigned_abs());
    if k > 0 {
        LaurentRational::new(num, pw)
    } else {
        Ok(LaurentRational::from_poly(&num * &pw))
    }
}

/// Rewrites a polynomial in the flipped coordinates `X'` as a rational
/// function of the original coordinates. Each monomial picks up a factor
/// `(1 + X_e)^K`; all factors are cleared against a common power.
pub fn substitute_mutation(p: &LaurentPoly, n: &ExchangeMatrix, e: usize) -> Result<LaurentRational> {
    let m = n.size();
    if p.nvars() != m {
        return Err(Error::IndexMismatch(p.nvars(), m));
    }
    let mut pieces: Vec<(Vec<i32>, BigRational, i64)> = Vec::with_capacity(p.len());
    for (nu, c) in p.terms() {
        let mut mu = nu.clone();
        mu[e] = -nu[e];
        let mut twice_k = 0i64;
        for a in 0..m {
            if a == e {
                continue;
            }
            let na = n.get(a, e);
            if na > 0 {
                mu[e] += nu[a] * na;
            }
            twice_k -= (na as i64) * (nu[a] as i64);
        }
        if twice_k % 2 != 0 {
            return Err(Error::Substitution(format!(
                "monomial {nu:?} produces a half-integer power of (1 + X_{e})"
            )));
        }
        pieces.push((mu, c.clone(), twice_k / 2));
    }
    let kmin = pieces.iter().map(|t| t.2).min().unwrap_or(0).min(0);
    let mut num = LaurentPoly::zero(m);
    for (mu, c, k) in pieces {
        let f = LaurentPoly::one_plus_var_pow(m, e, (k - kmin) as u32);
        num = &num + &(&LaurentPoly::monomial(mu, c) * &f);
    }
    let den = LaurentPoly::one_plus_var_pow(m, e, (-kmin) as u32);
    LaurentRational::new(num, den)
}

/// Substitutes rational images for every variable of a polynomial with
/// integer exponents.
pub fn substitute_rational(p: &LaurentPoly, images: &[LaurentRational]) -> Result<LaurentRational> {
    if images.len() != p.nvars() {
        return Err(Error::IndexMismatch(p.nvars(), images.len()));
    }
    let nv = images
        .first()
        .map(|i| i.numerator.nvars())
        .unwrap_or_else(|| p.nvars());
    let mut acc = LaurentRational::from_poly(LaurentPoly::zero(nv));
    for (mu, c) in p.terms() {
        let mut num = LaurentPoly::constant(nv, c.clone());
        let mut den = LaurentPoly::one(nv);
        for (a, &k) in mu.iter().enumerate() {
            if k % 2 != 0 {
                return Err(Error::Substitution("half-integer exponent".into()));
            }
            let k = k / 2;
            let (top, bottom) = if k >= 0 {
                (&images[a].numerator, &images[a].denominator)
            } else {
                (&images[a].denominator, &images[a].numerator)
            };
            num = &num * &top.pow(k.unsigned_abs());
            den = &den * &bottom.pow(k.unsigned_abs());
        }
        acc = LaurentRational::new(
            &(&acc.numerator * &den) + &(&num * &acc.denominator),
            &acc.denominator * &den,
        )?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MutationReport {
    pub edge: usize,
    pub equal: bool,
    pub original: LaurentPoly,
    pub flipped: LaurentPoly,
    /// Power `K` of `(1 + X_e)` cleared from the denominator.
    pub cleared_power: usize,
}

/// Substitutes the flip coordinates into the trace computed after the flip
/// and compares with the trace before it.
pub fn verify_mutation_covariance(tri: &Triangulation, e: usize, gamma: &CurvePath) -> Result<MutationReport> {
    let (flipped, data) = tri.flip_with_data(e)?;
    let moved = gamma.transport(tri, &flipped, &data)?;
    let original = trace_function(tri, gamma)?;
    let after = trace_function(&flipped, &moved)?;
    let sub = substitute_mutation(&after, &tri.exchange_matrix(), e)?;
    let equal = sub.equals_poly(&original);
    Ok(MutationReport {
        edge: e,
        equal,
        original,
        flipped: after,
        cleared_power: sub.denominator.len().saturating_sub(1),
    })
}

/// Composes the flip at `e` with the flip back and checks that every
/// coordinate returns to itself.
pub fn verify_double_flip(n: &ExchangeMatrix, e: usize) -> Result<bool> {
    let m = n.size();
    let first: Vec<LaurentRational> = (0..m)
        .map(|a| mutate_coordinate(n, e, a))
        .collect::<Result<_>>()?;
    let n2 = n.mutate(e);
    for a in 0..m {
        let second = mutate_coordinate(&n2, e, a)?;
        let num = substitute_rational(&second.numerator, &first)?;
        let den = substitute_rational(&second.denominator, &first)?;
        let composite = LaurentRational::new(
            &num.numerator * &den.denominator,
            &num.denominator * &den.numerator,
        )?;
        if !composite.equals_poly(&LaurentPoly::var(m, a)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One term of a skein resolution: a multicurve with an integer weight.
#[derive(Debug, Clone)]
pub struct Resolution {
    pub components: Vec<CurvePath>,
    pub weight: i64,
}

/// Checks `L_1 L_2 = sum of weighted resolution traces`.
pub fn skein_check(tri: &Triangulation, g1: &CurvePath, g2: &CurvePath, resolutions: &[Resolution]) -> Result<bool> {
    let lhs = &trace_function(tri, g1)? * &trace_function(tri, g2)?;
    let mut rhs = LaurentPoly::zero(tri.num_edges());
    for r in resolutions {
        let mut t = LaurentPoly::one(tri.num_edges());
        for c in &r.components {
            t = &t * &trace_function(tri, c)?;
        }
        rhs = &rhs + &t.scale_int(r.weight);
    }
    Ok(lhs == rhs)
}

fn need<'a>(values: &'a BTreeMap<String, LaurentPoly>, k: &str) -> Result<&'a LaurentPoly> {
    values.get(k).ok_or_else(|| Error::MissingOperand(k.to_string()))
}

/// The generator relation `P_e(L_s, L_t, L_u)` evaluated on the given
/// values. All values must share one variable set (use zero variables for
/// scalar probes).
pub fn relation_poly(kind: SurfaceKind, values: &BTreeMap<String, LaurentPoly>) -> Result<LaurentPoly> {
    let ls = need(values, "s")?;
    let lt = need(values, "t")?;
    let lu = need(values, "u")?;
    let nv = ls.nvars();
    let c = |v: i64| LaurentPoly::from_int(nv, v);
    match kind {
        SurfaceKind::C11 => {
            let l0 = need(values, "L0")?;
            Ok(&(&(&(ls * ls) + &(lt * lt)) + &(lu * lu)) - &(&(&(ls * lt) * lu) - l0) - c(2))
        }
        SurfaceKind::C04 => {
            let l1 = need(values, "L1")?;
            let l2 = need(values, "L2")?;
            let l3 = need(values, "L3")?;
            let l4 = need(values, "L4")?;
            let mut p = &(&(l1 * l2) * l3) * l4;
            for v in [ls, lt, lu, l1, l2, l3, l4] {
                p = &p + &(v * v);
            }
            p = &p - &c(4);
            p = &p + &(ls * &(&(l3 * l4) + &(l1 * l2)));
            p = &p + &(lt * &(&(l2 * l3) + &(l1 * l4)));
            p = &p + &(lu * &(&(l1 * l3) + &(l2 * l4)));
            p = &p - &(&(ls * lt) * lu);
            Ok(p)
        }
    }
}

/// `dP_e / dL_u` evaluated on the given values.
pub fn relation_du(kind: SurfaceKind, values: &BTreeMap<String, LaurentPoly>) -> Result<LaurentPoly> {
    let ls = need(values, "s")?;
    let lt = need(values, "t")?;
    let lu = need(values, "u")?;
    let base = &lu.scale_int(2) - &(ls * lt);
    match kind {
        SurfaceKind::C11 => Ok(base),
        SurfaceKind::C04 => {
            let l1 = need(values, "L1")?;
            let l2 = need(values, "L2")?;
            let l3 = need(values, "L3")?;
            let l4 = need(values, "L4")?;
            Ok(&base + &(&(l1 * l3) + &(l2 * l4)))
        }
    }
}

/// Ratio between the shear-coordinate bracket and the relation gradient
/// expected from the classical limit of the quantum relations.
pub fn expected_bracket_constant(kind: SurfaceKind) -> BigRational {
    match kind {
        SurfaceKind::C11 => BigRational::new(BigInt::one(), BigInt::from(2)),
        SurfaceKind::C04 => BigRational::one(),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GoldmanReport {
    pub bracket: LaurentPoly,
    pub gradient: LaurentPoly,
    /// `c` with `{L_s, L_t} = c dP/dL_u`, if the two are proportional.
    pub constant: Option<(String, String)>,
    pub matches_expected: bool,
}

/// Compares `{L_s, L_t}` with `dP_e/dL_u` on the reference triangulation of
/// `kind` and measures the proportionality constant.
pub fn goldman_vs_dp(kind: SurfaceKind) -> Result<GoldmanReport> {
    let r = Reference::get(kind);
    let traces = reference_traces(&r)?;
    let n = r.triangulation.exchange_matrix();
    let bracket = poisson_bracket(need(&traces, "s")?, need(&traces, "t")?, &n)?;
    let gradient = relation_du(kind, &traces)?;
    let constant = proportionality(&bracket, &gradient);
    let matches_expected = constant
        .as_ref()
        .map_or(false, |c| *c == expected_bracket_constant(kind));
    Ok(GoldmanReport {
        bracket,
        gradient,
        constant: constant.map(|c| (c.numer().to_string(), c.denom().to_string())),
        matches_expected,
    })
}

/// `c` with `p = c q`, or `None`.
pub fn proportionality(p: &LaurentPoly, q: &LaurentPoly) -> Option<BigRational> {
    let (e, cq) = q.leading()?;
    let c = p.coeff(e) / cq;
    if c.is_zero() {
        return None;
    }
    if *p == q.scale(&c) {
        Some(c)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{random_flips, Surface};
    use rand::SeedableRng;

    fn r(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn c11_curve_has_three_unit_monomials() {
        let rf = Reference::get(SurfaceKind::C11);
        let t = trace_function(&rf.triangulation, rf.curve("t").unwrap()).unwrap();
        assert_eq!(t.len(), 3);
        assert!(t.terms().all(|(_, c)| *c == r(1)));
        // Independent oracle: multiply the 2x2 matrices by hand.
        // Walk enters through b and leaves through c, then enters through c
        // and leaves through b.
        let p = rf.curve("t").unwrap();
        let mut acc = [[1f64, 0.], [0., 1.]];
        let x = [1.7f64, 0.6, 2.3];
        let states = p.states(&rf.triangulation).unwrap();
        for s in states {
            let e = rf.triangulation.triangles()[s.triangle][s.in_slot];
            let em = [[0., x[e].sqrt()], [-1. / x[e].sqrt(), 0.]];
            let tm = if s.out_slot == (s.in_slot + 1) % 3 {
                [[1., 1.], [-1., 0.]]
            } else {
                [[0., 1.], [-1., -1.]]
            };
            let mul = |a: [[f64; 2]; 2], b: [[f64; 2]; 2]| {
                let mut c = [[0.; 2]; 2];
                for i in 0..2 {
                    for j in 0..2 {
                        c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
                    }
                }
                c
            };
            acc = mul(mul(acc, em), tm);
        }
        let tr = (acc[0][0] + acc[1][1]).abs();
        assert!((tr - t.eval_f64(&x)).abs() < 1e-12);
    }

    #[test]
    fn peripheral_trace() {
        let rf = Reference::get(SurfaceKind::C11);
        let l0 = trace_function(&rf.triangulation, rf.curve("L0").unwrap()).unwrap();
        let expected = LaurentPoly::monomial(vec![2, 2, 2], r(1))
            + LaurentPoly::monomial(vec![-2, -2, -2], r(1));
        assert_eq!(l0, expected);
    }

    #[test]
    fn holonomy_is_unimodular() {
        for kind in [SurfaceKind::C11, SurfaceKind::C04] {
            let rf = Reference::get(kind);
            for p in rf.curves.values() {
                let h = holonomy(&rf.triangulation, p).unwrap();
                assert_eq!(h.det(), LaurentPoly::one(rf.triangulation.num_edges()));
            }
        }
    }

    #[test]
    fn rotation_invariance() {
        let rf = Reference::get(SurfaceKind::C04);
        for p in rf.curves.values() {
            let t0 = trace_function(&rf.triangulation, p).unwrap();
            for k in 1..p.len() {
                let q = p.rotate(&rf.triangulation, k).unwrap();
                assert_eq!(trace_function(&rf.triangulation, &q).unwrap(), t0);
            }
            let rev = p.reverse(&rf.triangulation).unwrap();
            assert_eq!(trace_function(&rf.triangulation, &rev).unwrap(), t0);
        }
    }

    #[test]
    fn coordinate_bracket() {
        let rf = Reference::get(SurfaceKind::C04);
        let n = rf.triangulation.exchange_matrix();
        for a in 0..6 {
            for b in 0..6 {
                let xa = LaurentPoly::var(6, a);
                let xb = LaurentPoly::var(6, b);
                let br = poisson_bracket(&xa, &xb, &n).unwrap();
                assert_eq!(br, (&xa * &xb).scale_int(n.get(a, b) as i64));
            }
            let inv = LaurentPoly::monomial(
                (0..6).map(|i| if i == a { -2 } else { 0 }).collect(),
                r(1),
            );
            assert!(poisson_bracket(&LaurentPoly::var(6, a), &inv, &n).unwrap().is_zero());
        }
        assert!(poisson_bracket(&LaurentPoly::var(3, 0), &LaurentPoly::var(6, 0), &n).is_err());
    }

    #[test]
    fn mutation_images() {
        let rf = Reference::get(SurfaceKind::C11);
        let n = rf.triangulation.exchange_matrix();
        let img = mutate_coordinate(&n, 0, 0).unwrap();
        assert!(img.equals_poly(&LaurentPoly::monomial(vec![-2, 0, 0], r(1))));
        // n_{1,0} = -2: X_1 (1 + X_0)^2
        let img = mutate_coordinate(&n, 0, 1).unwrap();
        let one = LaurentPoly::one(3);
        let x0 = LaurentPoly::var(3, 0);
        let expected = &LaurentPoly::var(3, 1) * &(&one + &x0).pow(2);
        assert!(img.equals_poly(&expected));
        // n_{2,0} = 2: X_2 (1 + X_0^{-1})^{-2}
        let img = mutate_coordinate(&n, 0, 2).unwrap();
        let inv = LaurentPoly::monomial(vec![-2, 0, 0], r(1));
        let expected = LaurentRational::new(LaurentPoly::var(3, 2), (&one + &inv).pow(2)).unwrap();
        assert!(img.equals(&expected));
        // A zero entry leaves the coordinate alone.
        let c04 = Reference::get(SurfaceKind::C04);
        let n4 = c04.triangulation.exchange_matrix();
        for t in 0..6 {
            if t != 0 && n4.get(t, 0) == 0 {
                let img = mutate_coordinate(&n4, 0, t).unwrap();
                assert!(img.equals_poly(&LaurentPoly::var(6, t)));
            }
        }
    }

    #[test]
    fn covariance_on_references() {
        for kind in [SurfaceKind::C11, SurfaceKind::C04] {
            let rf = Reference::get(kind);
            for (name, p) in &rf.curves {
                for e in 0..rf.triangulation.num_edges() {
                    if rf.triangulation.flippable(e).is_err() {
                        continue;
                    }
                    let rep = verify_mutation_covariance(&rf.triangulation, e, p).unwrap();
                    assert!(rep.equal, "{kind:?} curve {name} edge {e}");
                }
            }
        }
    }

    #[test]
    fn double_flip_is_identity() {
        for kind in [SurfaceKind::C11, SurfaceKind::C04] {
            let n = Reference::get(kind).triangulation.exchange_matrix();
            for e in 0..n.size() {
                assert!(verify_double_flip(&n, e).unwrap());
            }
        }
    }

    #[test]
    fn relations_vanish() {
        for kind in [SurfaceKind::C11, SurfaceKind::C04] {
            let rf = Reference::get(kind);
            let tr = reference_traces(&rf).unwrap();
            assert!(relation_poly(kind, &tr).unwrap().is_zero(), "{kind:?}");
        }
    }

    #[test]
    fn scalar_probe() {
        let mut v = BTreeMap::new();
        for k in ["s", "t", "u", "L0"] {
            v.insert(k.to_string(), LaurentPoly::from_int(0, 2));
        }
        assert_eq!(relation_poly(SurfaceKind::C11, &v).unwrap(), LaurentPoly::from_int(0, 4));
        v.remove("L0");
        assert!(matches!(
            relation_poly(SurfaceKind::C11, &v),
            Err(Error::MissingOperand(_))
        ));
    }

    #[test]
    fn bracket_matches_gradient() {
        for kind in [SurfaceKind::C11, SurfaceKind::C04] {
            let rep = goldman_vs_dp(kind).unwrap();
            assert!(rep.matches_expected, "{kind:?} {:?}", rep.constant);
        }
    }

    #[test]
    fn skein_on_torus() {
        let rf = Reference::get(SurfaceKind::C11);
        let tri = &rf.triangulation;
        let s = rf.curve("s").unwrap();
        let t = rf.curve("t").unwrap();
        let u = rf.curve("u").unwrap();
        let v = rf.curve("v").unwrap();
        let good = [
            Resolution {
                components: vec![u.clone()],
                weight: 1,
            },
            Resolution {
                components: vec![v.clone()],
                weight: 1,
            },
        ];
        assert!(skein_check(tri, s, t, &good).unwrap());
        let bad = [Resolution {
            components: vec![u.clone()],
            weight: 2,
        }];
        assert!(!skein_check(tri, s, t, &bad).unwrap());
        // Disjoint copies: the resolution is the product multicurve.
        let prod = [Resolution {
            components: vec![s.clone(), s.clone()],
            weight: 1,
        }];
        assert!(skein_check(tri, s, s, &prod).unwrap());
    }

    #[test]
    fn random_triangulations_keep_matrix_shape() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let start = Reference::get(SurfaceKind::C04).triangulation;
        for _ in 0..20 {
            let (t, seq) = random_flips(&start, 12, &mut rng);
            let n = t.exchange_matrix();
            assert!(n.is_antisymmetric() && n.entries_in_range());
            assert!(start.flip_sequence(&seq).unwrap().is_isomorphic(&t));
        }
        let g2 = Surface::new(2, 1).unwrap();
        assert_eq!(g2.edge_count(), 9);
    }
}
