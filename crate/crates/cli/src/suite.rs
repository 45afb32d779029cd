//! Verification checks shared by the `verify`, `tau` and `report` commands.

use std::time::Instant;

use holomon_core::cft::{
    self, bpz_residual, central_charge, default_setup, degenerate_weight, kac_determinant,
    numeric_tau, numeric_tau_wound, sigma_pvi_residual, tau_series, vacuum_propagation, Dictionary,
    TauInput, TauParams, Verma, Weighting,
};
use holomon_core::classical::{goldman_vs_dp, reference_traces, relation_poly, verify_double_flip, verify_mutation_covariance};
use holomon_core::pants_rep::{b_move_phase, delta_of_length, verify_pants_relations, PantsReport, RepParams, BMOVE_NOTE};
use holomon_core::quantum::{check_reference_relations, semiclassical_matches_poisson, verify_q_mutation_relations};
use holomon_core::topology::{Reference, SurfaceKind};
use num_complex::Complex64;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::report::Check;

fn timed(f: impl FnOnce() -> Vec<Check>) -> Vec<Check> {
    let t = Instant::now();
    let mut out = f();
    let dt = t.elapsed();
    for c in &mut out {
        c.runtime = dt;
    }
    out
}

fn tag(kind: SurfaceKind, name: &str) -> String {
    format!("{}/{name}", kind.name())
}

pub fn classical(kind: SurfaceKind) -> Vec<Check> {
    timed(|| {
        let r = Reference::get(kind);
        let rel = match reference_traces(&r).and_then(|t| relation_poly(kind, &t)) {
            Ok(p) => Check::new(
                tag(kind, "trace relation"),
                "trace-relation",
                p.is_zero(),
                format!("{} surviving terms", p.len()),
            ),
            Err(e) => Check::error(tag(kind, "trace relation"), "trace-relation", e),
        };
        let br = match goldman_vs_dp(kind) {
            Ok(g) => {
                let c = g.constant.map(|(n, d)| format!("{n}/{d}")).unwrap_or_else(|| "none".into());
                Check::new(
                    tag(kind, "bracket vs gradient"),
                    "bracket-gradient",
                    g.matches_expected,
                    format!("{{L_s, L_t}} = {c} dP/dL_u"),
                )
            }
            Err(e) => Check::error(tag(kind, "bracket vs gradient"), "bracket-gradient", e),
        };
        vec![rel, br]
    })
}

pub fn quantum(kind: SurfaceKind) -> Vec<Check> {
    timed(|| {
        let mut out = match check_reference_relations(kind) {
            Ok(reps) => reps
                .into_iter()
                .map(|r| {
                    Check::new(
                        tag(kind, &format!("quantum relation degree {}", r.degree)),
                        "quantum-relation",
                        r.passed(),
                        format!(
                            "terms={} conjugate={} limit={}",
                            r.residual_terms, r.conjugate_vanishes, r.limit_consistent
                        ),
                    )
                })
                .collect(),
            Err(e) => vec![Check::error(tag(kind, "quantum relation"), "quantum-relation", e)],
        };
        out.push(match semiclassical_matches_poisson(kind) {
            Ok(ok) => Check::new(tag(kind, "semiclassical bracket"), "semiclassical-bracket", ok, ""),
            Err(e) => Check::error(tag(kind, "semiclassical bracket"), "semiclassical-bracket", e),
        });
        out
    })
}

/// Every reference curve against every edge flip, plus double flips and
/// the quantum flip.
pub fn mutation(kind: SurfaceKind) -> Vec<Check> {
    timed(|| {
        let r = Reference::get(kind);
        let tri = &r.triangulation;
        let n = tri.num_edges();
        let mut total = 0;
        let mut bad = Vec::new();
        for (name, curve) in &r.curves {
            for e in 0..n {
                total += 1;
                match verify_mutation_covariance(tri, e, curve) {
                    Ok(rep) if rep.equal => {}
                    Ok(_) => bad.push(format!("{name}@{e}")),
                    Err(err) => bad.push(format!("{name}@{e}: {err}")),
                }
            }
        }
        let cov = Check::new(
            tag(kind, "flip covariance"),
            "flip-covariance",
            bad.is_empty(),
            if bad.is_empty() {
                format!("{total} curve/flip pairs")
            } else {
                format!("failing: {}", bad.join(" "))
            },
        );
        let m = tri.exchange_matrix();
        let dbl: Vec<usize> = (0..n).filter(|&e| !verify_double_flip(&m, e).unwrap_or(false)).collect();
        let dbl = Check::new(
            tag(kind, "double flip"),
            "double-flip",
            dbl.is_empty(),
            format!("{} edges, failing {:?}", n, dbl),
        );
        let mut qbad = Vec::new();
        for e in 0..n {
            match verify_q_mutation_relations(tri, e) {
                Ok(rep) if rep.passed() => {}
                Ok(rep) => qbad.push(format!("{e}: {:?}", rep.failures)),
                Err(err) => qbad.push(format!("{e}: {err}")),
            }
        }
        let q = Check::new(
            tag(kind, "quantum flip"),
            "quantum-flip",
            qbad.is_empty(),
            if qbad.is_empty() {
                format!("{n} edges: commutation, double flip, classical limit")
            } else {
                qbad.join("; ")
            },
        );
        vec![cov, dbl, q]
    })
}

#[derive(Debug, Clone)]
pub struct PantsOptions {
    pub seed: u64,
    pub draws: usize,
    pub digits: u32,
    pub b2: Option<(f64, f64)>,
    pub window: usize,
    pub tol: f64,
}

impl Default for PantsOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            draws: 4,
            digits: 30,
            b2: None,
            window: 24,
            tol: 1e-9,
        }
    }
}

/// Residual checks over seeded draws; also returns the first draw's report.
pub fn pants(kind: SurfaceKind, o: &PantsOptions) -> (Vec<Check>, Option<PantsReport>) {
    let t = Instant::now();
    let draws = match RepParams::random_draws(kind, o.seed, o.draws.max(1), o.digits) {
        Ok(d) => d,
        Err(e) => return (vec![Check::error(tag(kind, "pants relations"), "pants-operators", e)], None),
    };
    let draws: Vec<RepParams> = match o.b2 {
        None => draws,
        Some(b2) => match draws.iter().map(|p| p.with_b2(b2)).collect() {
            Ok(d) => d,
            Err(e) => return (vec![Check::error(tag(kind, "pants relations"), "pants-operators", e)], None),
        },
    };
    let results: Vec<_> = draws
        .par_iter()
        .map(|p| verify_pants_relations(p, o.window, o.tol, None))
        .collect();
    let mut worst = 0f64;
    let mut failed = Vec::new();
    let mut first = None;
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(rep) => {
                worst = worst.max(rep.max_residual);
                if !rep.passed {
                    failed.push(i.to_string());
                }
                if first.is_none() {
                    first = Some(rep);
                }
            }
            Err(e) => failed.push(format!("{i} ({e})")),
        }
    }
    let rel = Check::new(
        tag(kind, "pants relations"),
        "pants-operators",
        failed.is_empty(),
        format!(
            "{} draws, tol {:.0e}{}",
            draws.len(),
            o.tol,
            if failed.is_empty() {
                String::new()
            } else {
                format!(", failing draws {}", failed.join(","))
            }
        ),
    )
    .with_residual(worst);
    let p = &draws[0];
    let hi = p.with_digits(2 * o.digits);
    let prec = match (
        verify_pants_relations(p, o.window, o.tol, None),
        verify_pants_relations(&hi, o.window, o.tol, None),
    ) {
        (Ok(a), Ok(b)) => Check::new(
            tag(kind, "pants precision scaling"),
            "pants-operators",
            b.max_residual < a.max_residual,
            format!("{} digits {:.3e}, {} digits {:.3e}", o.digits, a.max_residual, 2 * o.digits, b.max_residual),
        ),
        (Err(e), _) | (_, Err(e)) => Check::error(tag(kind, "pants precision scaling"), "pants-operators", e),
    };
    let mut out = vec![rel, prec];
    let dt = t.elapsed();
    for c in &mut out {
        c.runtime = dt;
    }
    (out, first)
}

pub fn virasoro() -> Vec<Check> {
    timed(|| {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let mut out = Vec::new();
        for b2 in [r(2, 3), r(5, 7)] {
            let Some(c) = central_charge(&b2) else {
                out.push(Check::error("kac determinant", "kac-determinant", "b^2 = 0"));
                continue;
            };
            let det = kac_determinant(&c, 2);
            let dual = BigRational::new(b2.denom().clone(), b2.numer().clone());
            let at = det.eval(&degenerate_weight(&b2));
            let at_dual = det.eval(&degenerate_weight(&dual));
            out.push(Check::new(
                format!("kac determinant b^2={b2}"),
                "kac-determinant",
                num_traits::Zero::is_zero(&at) && num_traits::Zero::is_zero(&at_dual),
                format!("det(D_deg)={at}, det(D_deg dual)={at_dual}"),
            ));
            let mut v = Verma::new(degenerate_weight(&b2), c);
            let (_, g) = v.gram_level(2);
            let nv = cft::verma::level_two_null_vector(&b2);
            let pair: Vec<BigRational> = g
                .iter()
                .map(|row| row.iter().zip(&nv).map(|(a, b)| a * b).sum())
                .collect();
            let norm: BigRational = pair.iter().zip(&nv).map(|(a, b)| a * b).sum();
            let ok = pair.iter().all(num_traits::Zero::is_zero) && num_traits::Zero::is_zero(&norm);
            out.push(Check::new(
                format!("null vector b^2={b2}"),
                "kac-determinant",
                ok,
                format!("norm={norm}, pairings={}", pair.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")),
            ));
        }
        out
    })
}

pub fn bpz(order: u32) -> Vec<Check> {
    timed(|| {
        let s = default_setup();
        let mut out = Vec::new();
        for sign in [1i64, -1] {
            let name = format!("degenerate block channel {}", if sign > 0 { "+" } else { "-" });
            let b = match s.block(sign, order) {
                Ok(b) => b,
                Err(e) => {
                    out.push(Check::error(name, "degenerate-equation", e));
                    continue;
                }
            };
            let res = bpz_residual(&b, &s.b2);
            let zero = res.as_ref().map_or(false, |v| v.iter().all(num_traits::Zero::is_zero));
            let nonzero = res.as_ref().map_or(0, |v| v.iter().filter(|x| !num_traits::Zero::is_zero(*x)).count());
            let hyper: Vec<bool> = [1i64, -1]
                .iter()
                .map(|&p| s.hypergeometric(sign, p, order as usize).map_or(false, |h| h == b.coefficients))
                .collect();
            out.push(Check::new(
                format!("{name} residual"),
                "degenerate-equation",
                zero,
                format!("order {order}, {nonzero} nonzero coefficients"),
            ));
            out.push(Check::new(
                format!("{name} hypergeometric"),
                "degenerate-equation",
                hyper.iter().all(|&x| x),
                format!("both exponents at 1 agree: {:?}", hyper),
            ));
        }
        let generic = s
            .block_with_internal(&BigRational::new(7.into(), 13.into()), order.min(4))
            .and_then(|b| bpz_residual(&b, &s.b2));
        out.push(Check::new(
            "generic channel is rejected",
            "degenerate-equation",
            generic.map_or(false, |v| v.iter().any(|x| !num_traits::Zero::is_zero(x))),
            "negative control",
        ));
        out
    })
}

pub fn vacuum(order: u32) -> Vec<Check> {
    timed(|| {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let cases = [(r(2, 5), r(3, 7), r(1, 11), r(17, 4)), (r(-1, 3), r(5, 2), r(7, 9), r(1, 1))];
        cases
            .iter()
            .enumerate()
            .map(|(i, (d2, d3, d4, c))| match vacuum_propagation(d2, d3, d4, c, order) {
                Ok((b, red)) => Check::new(
                    format!("vacuum propagation case {i}"),
                    "vacuum-propagation",
                    b == red,
                    format!("order {order}"),
                ),
                Err(e) => Check::error(format!("vacuum propagation case {i}"), "vacuum-propagation", e),
            })
            .collect()
    })
}

#[derive(Debug, Clone)]
pub struct TauOptions {
    pub order: u32,
    pub shifts: u32,
    pub digits: u32,
    pub tol: f64,
}

impl Default for TauOptions {
    fn default() -> Self {
        Self {
            order: 6,
            shifts: 3,
            digits: 50,
            tol: 1e-10,
        }
    }
}

/// Residual, shift stability, periodicity and a wrong-weighting control for
/// one parameter set.
pub fn tau_checks(input: &TauInput, o: &TauOptions, label: &str) -> Vec<Check> {
    timed(|| {
        let TauInput { sigma, kappa, theta } = *input;
        let run = |shifts: u32, w: Weighting| numeric_tau(sigma, kappa, theta, o.order, shifts, o.digits, w);
        let mut out = Vec::new();
        let base = match run(o.shifts, Weighting::Geometric) {
            Ok(t) => t,
            Err(e) => return vec![Check::error(format!("{label} residual"), "tau-sum", e)],
        };
        match sigma_pvi_residual(&base) {
            Ok(res) => {
                let m = res.max_abs();
                out.push(
                    Check::new(
                        format!("{label} residual"),
                        "tau-sum",
                        m <= o.tol && base.excluded.is_empty(),
                        format!("order {} shifts {} digits {}", o.order, o.shifts, o.digits),
                    )
                    .with_residual(m),
                );
            }
            Err(e) => out.push(Check::error(format!("{label} residual"), "tau-sum", e)),
        }
        let stab = run(o.shifts + 1, Weighting::Geometric).and_then(|t| {
            let d = base.series.sub(&t.series);
            let low = d.terms().iter().filter(|(k, _)| k.1 <= o.order as i64);
            let diff = low.map(|(_, v)| cft::Field::magnitude(v)).fold(0.0, f64::max);
            Ok((diff, sigma_pvi_residual(&t)?.max_abs()))
        });
        out.push(match stab {
            Ok((diff, r)) => Check::new(
                format!("{label} shift stability"),
                "tau-sum",
                diff <= o.tol && r <= o.tol,
                format!("shifts {} -> {}: coefficient change {diff:.3e}, residual {r:.3e}", o.shifts, o.shifts + 1),
            ),
            Err(e) => Check::error(format!("{label} shift stability"), "tau-sum", e),
        });
        let per = numeric_tau_wound(sigma, kappa, 1, theta, o.order, o.shifts, o.digits, Weighting::Geometric)
            .map(|t| base.series.sub(&t.series).max_abs());
        out.push(match per {
            Ok(d) => Check::new(
                format!("{label} kappa periodicity"),
                "tau-sum",
                d <= o.tol,
                format!("kappa -> kappa + 2 pi changes coefficients by {d:.3e}"),
            ),
            Err(e) => Check::error(format!("{label} kappa periodicity"), "tau-sum", e),
        });
        let neg = run(o.shifts, Weighting::Quadratic).and_then(|t| sigma_pvi_residual(&t)).map(|r| r.max_abs());
        out.push(match neg {
            Ok(r) => Check::new(
                format!("{label} quadratic weighting rejected"),
                "tau-sum",
                r > 1e3 * o.tol,
                format!("negative control residual {r:.3e}"),
            ),
            Err(e) => Check::error(format!("{label} quadratic weighting rejected"), "tau-sum", e),
        });
        out
    })
}

/// Exact rational oracle: with a formal weight per shift the residual
/// vanishes identically.
pub fn tau_exact(order: u32) -> Vec<Check> {
    timed(|| {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let p = TauParams {
            sigma: r(2, 7),
            theta: [r(1, 5), r(1, 3), r(2, 9), r(3, 8)],
            order,
            shifts: 2,
        };
        let res = tau_series(&p, |_| r(1, 1)).and_then(|t| sigma_pvi_residual(&t));
        vec![match res {
            Ok(res) => Check::new(
                "exact tau residual",
                "tau-sum",
                res.vanishes(),
                format!("sigma=2/7, theta=(1/5,1/3,2/9,3/8), order {order}, {} nonzero", res.terms.iter().filter(|(_, v)| !num_traits::Zero::is_zero(v)).count()),
            ),
            Err(e) => Check::error("exact tau residual", "tau-sum", e),
        }]
    })
}

pub fn dictionary() -> Vec<Check> {
    timed(|| {
        let mut worst = 0f64;
        let mut reflect = 0f64;
        for &b in &[0.37, 0.8, 1.0, 1.9] {
            for &l in &[0.0, 0.6, 3.1, 17.5] {
                let bc = Complex64::new(b, 0.0);
                let lc = Complex64::new(l, 0.0);
                match (Dictionary::from_length(lc, bc), cft::dict::delta_closed_form(lc, bc)) {
                    (Ok(d), Ok(want)) => {
                        worst = worst.max((d.delta - want).norm() / want.norm());
                        reflect = reflect.max((d.delta - d.reflected_delta()).norm() / want.norm());
                        if let Ok(x) = delta_of_length(l, b) {
                            worst = worst.max((x - want.re).abs() / want.norm());
                        }
                    }
                    _ => worst = f64::INFINITY,
                }
            }
        }
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let exact = cft::dict::reflection_identity_exact(&r(29, 10), &r(3, 7));
        let c25 = Dictionary::from_length(Complex64::new(0.4, 0.0), Complex64::new(1.0, 0.0))
            .map_or(false, |d| d.c == Complex64::new(25.0, 0.0));
        let mut phase_dev = 0f64;
        for (l1, l2, l3, b) in [(0.3, 2.1, -1.4, 0.6), (1.0, 1.0, 1.0, 1.0), (5.5, 0.2, 3.3, 0.45)] {
            match b_move_phase(l1, l2, l3, b) {
                Ok((re, im)) => phase_dev = phase_dev.max((re.hypot(im) - 1.0).abs()),
                Err(_) => phase_dev = f64::INFINITY,
            }
        }
        vec![
            Check::new(
                "weight from momentum",
                "parameter-dictionary",
                worst <= 1e-14 && reflect <= 1e-14 && exact && c25,
                format!("relative error {worst:.1e}, reflection {reflect:.1e}, exact identity {exact}, c(b=1)=25 {c25}"),
            )
            .with_residual(worst),
            Check::new(
                "braiding phase modulus",
                "braiding-phase",
                phase_dev <= 1e-14,
                "unit modulus for real lengths",
            )
            .with_residual(phase_dev),
        ]
    })
}

pub const BRAIDING_NOTE: &str = BMOVE_NOTE;

/// Runs independent jobs in parallel and concatenates their checks in
/// submission order.
pub fn run_jobs(jobs: Vec<Box<dyn Fn() -> Vec<Check> + Send + Sync>>) -> Vec<Check> {
    let parts: Vec<Vec<Check>> = jobs.par_iter().map(|j| j()).collect();
    parts.into_iter().flatten().collect()
}
