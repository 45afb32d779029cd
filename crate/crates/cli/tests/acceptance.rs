//! Acceptance run: one PASS/FAIL line per criterion, at the stated
//! tolerances. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use holomon_cli::app::{run, RunConfig};
use holomon_core::cft::{
    self, bpz_residual, central_charge, default_setup, degenerate_weight, kac_determinant, numeric_tau,
    random_inputs, sigma_pvi_residual, vacuum_propagation, Dictionary, Field, Verma, Weighting,
};
use holomon_core::classical::{
    goldman_vs_dp, poisson_bracket, reference_traces, relation_du, relation_poly, verify_mutation_covariance,
};
use holomon_core::pants_rep::{b_move_phase, verify_pants_relations, RepParams, BMOVE_NOTE};
use holomon_core::quantum::{check_reference_relations, quantized_reference, semiclassical_matches_poisson};
use holomon_core::quantum::{verify_q_double_flip, verify_q_mutation_relations};
use holomon_core::topology::{Reference, SurfaceKind};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

const KINDS: [SurfaceKind; 2] = [SurfaceKind::C11, SurfaceKind::C04];

type Outcome = (bool, String);

fn r(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn classical_relations() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for kind in KINDS {
        let traces = reference_traces(&Reference::get(kind)).expect("reference traces");
        let p = relation_poly(kind, &traces).expect("relation");
        ok &= p.is_zero();
        detail.push(format!("{}: {} terms", kind.name(), p.len()));
    }
    (ok, detail.join(", "))
}

fn poisson_compatibility() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for kind in KINDS {
        let g = goldman_vs_dp(kind).expect("bracket");
        // Independent recomputation from the traces.
        let rf = Reference::get(kind);
        let traces = reference_traces(&rf).expect("traces");
        let n = rf.triangulation.exchange_matrix();
        let br = poisson_bracket(&traces["s"], &traces["t"], &n).expect("bracket");
        let du = relation_du(kind, &traces).expect("gradient");
        let k = holomon_core::classical::expected_bracket_constant(kind);
        let exact = br == du.scale(&k);
        ok &= g.matches_expected && exact;
        detail.push(format!("{}: {{L_s,L_t}} = {k} dP/dL_u {exact}", kind.name()));
    }
    (ok, detail.join(", "))
}

fn mutation_covariance() -> Outcome {
    let mut pairs = 0;
    let mut bad = Vec::new();
    for kind in KINDS {
        let rf = Reference::get(kind);
        for (name, c) in &rf.curves {
            for e in 0..rf.triangulation.num_edges() {
                pairs += 1;
                match verify_mutation_covariance(&rf.triangulation, e, c) {
                    Ok(m) if m.equal => {}
                    _ => bad.push(format!("{}:{name}@{e}", kind.name())),
                }
            }
        }
    }
    (bad.is_empty(), format!("{pairs} curve/flip pairs, failing {bad:?}"))
}

fn quantum_relations() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for kind in KINDS {
        for rep in check_reference_relations(kind).expect("relations") {
            ok &= rep.passed();
            detail.push(format!("{} degree {}: {} terms", kind.name(), rep.degree, rep.residual_terms));
        }
        // s -> 1 of the quantized generators gives the classical traces,
        // which satisfy criteria 1 and 2.
        let q = quantized_reference(kind).expect("quantized");
        let traces = reference_traces(&Reference::get(kind)).expect("traces");
        let limit_ok = q.iter().all(|(k, v)| v.classical_limit().map_or(false, |p| traces.get(k) == Some(&p)));
        let semi = semiclassical_matches_poisson(kind).expect("semiclassical");
        ok &= limit_ok && semi;
        detail.push(format!("{} limit {limit_ok} bracket {semi}", kind.name()));
    }
    (ok, detail.join(", "))
}

fn quantum_mutation() -> Outcome {
    let mut ok = true;
    let mut count = 0;
    for kind in KINDS {
        let tri = Reference::get(kind).triangulation;
        let n = tri.exchange_matrix();
        for e in 0..tri.num_edges() {
            count += 1;
            let rep = verify_q_mutation_relations(&tri, e).expect("quantum flip");
            ok &= rep.passed() && verify_q_double_flip(&n, e).expect("double flip");
        }
    }
    (ok, format!("{count} edges: commutation relations, double flip, classical limit"))
}

fn pants_representation() -> Outcome {
    let per_kind = 12;
    let (lo, hi) = (30, 60);
    let draws: Vec<RepParams> = KINDS
        .iter()
        .flat_map(|&k| RepParams::random_draws(k, 2024, per_kind, lo).expect("draws"))
        .collect();
    let res: Vec<(f64, f64)> = draws
        .par_iter()
        .map(|p| {
            let a = verify_pants_relations(p, 24, 1e-9, None).expect("residuals").max_residual;
            let b = verify_pants_relations(&p.with_digits(hi), 24, 1e-9, None).expect("residuals").max_residual;
            (a, b)
        })
        .collect();
    let worst = res.iter().map(|x| x.0).fold(0.0, f64::max);
    let shrinks = res.iter().all(|(a, b)| b < a);
    let worst_hi = res.iter().map(|x| x.1).fold(0.0, f64::max);
    (
        worst <= 1e-9 && shrinks,
        format!(
            "{} draws, max relative residual {worst:.2e} at {lo} digits, {worst_hi:.2e} at {hi} digits",
            draws.len()
        ),
    )
}

fn virasoro() -> Outcome {
    let mut ok = true;
    for b2 in [r(2, 3), r(5, 7), r(7, 4)] {
        let c = central_charge(&b2).expect("c");
        let det = kac_determinant(&c, 2);
        ok &= det.eval(&degenerate_weight(&b2)).is_zero();
        let mut v = Verma::new(degenerate_weight(&b2), c);
        let (_, g) = v.gram_level(2);
        let nv = cft::verma::level_two_null_vector(&b2);
        for row in &g {
            let s: BigRational = row.iter().zip(&nv).map(|(a, b)| a * b).sum();
            ok &= s.is_zero();
        }
        let norm: BigRational = (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| &nv[i] * &g[i][j] * &nv[j])
            .sum();
        ok &= norm.is_zero();
    }
    (ok, "b^2 in {2/3, 5/7, 7/4}: determinant zero, null vector orthogonal to level 2".into())
}

fn bpz() -> Outcome {
    let s = default_setup();
    let mut ok = true;
    for sign in [1, -1] {
        let b = s.block(sign, 8).expect("block");
        ok &= b.coefficients.len() == 9;
        ok &= bpz_residual(&b, &s.b2).expect("residual").iter().all(|x| x.is_zero());
        for p in [1, -1] {
            ok &= s.hypergeometric(sign, p, 8).expect("series") == b.coefficients;
        }
    }
    (ok, "both fused channels, order 8, exact".into())
}

fn vacuum() -> Outcome {
    let cases = [(r(2, 5), r(3, 7), r(1, 11), r(17, 4)), (r(-1, 3), r(5, 2), r(7, 9), r(1, 1))];
    let ok = cases.iter().all(|(d2, d3, d4, c)| {
        let (b, red) = vacuum_propagation(d2, d3, d4, c, 8).expect("block");
        b == red
    });
    (ok, format!("{} weight sets, order 8, exact", cases.len()))
}

fn tau() -> Outcome {
    let inputs = random_inputs(2024, 5);
    let res: Vec<(f64, f64, f64)> = inputs
        .par_iter()
        .map(|x| {
            let a = numeric_tau(x.sigma, x.kappa, x.theta, 6, 3, 50, Weighting::Geometric).expect("tau");
            let b = numeric_tau(x.sigma, x.kappa, x.theta, 6, 4, 50, Weighting::Geometric).expect("tau");
            let ra = sigma_pvi_residual(&a).expect("residual").max_abs();
            let rb = sigma_pvi_residual(&b).expect("residual").max_abs();
            let d = a.series.sub(&b.series);
            let diff = d
                .terms()
                .iter()
                .filter(|(k, _)| k.1 <= 6)
                .map(|(_, v)| v.magnitude())
                .fold(0.0, f64::max);
            (ra, rb, diff)
        })
        .collect();
    let worst = res.iter().map(|x| x.0.max(x.1)).fold(0.0, f64::max);
    let diff = res.iter().map(|x| x.2).fold(0.0, f64::max);
    (
        worst <= 1e-10 && diff <= 1e-10,
        format!("5 draws, max residual {worst:.2e}, change under 3 -> 4 shifts {diff:.2e}"),
    )
}

fn dictionary() -> Outcome {
    let mut worst = 0f64;
    for b in [0.3, 0.77, 1.0, 2.4] {
        for l in [0.0, 0.9, 4.2, 19.0] {
            let d = Dictionary::from_length(Complex64::new(l, 0.0), Complex64::new(b, 0.0)).expect("dict");
            let q = b + 1.0 / b;
            let y = l / (4.0 * std::f64::consts::PI * b);
            let want = q * q / 4.0 + y * y;
            worst = worst.max((d.delta - Complex64::new(want, 0.0)).norm() / want);
        }
    }
    let exact = cft::dict::reflection_identity_exact(&r(13, 6), &r(5, 11));
    let mut phase = 0f64;
    for (l1, l2, l3, b) in [(0.2, 1.7, 3.1, 0.6), (4.0, 0.0, 2.2, 1.3), (9.5, 7.25, 0.1, 0.9)] {
        let (re, im) = b_move_phase(l1, l2, l3, b).expect("phase");
        phase = phase.max((re.hypot(im) - 1.0).abs());
    }
    let cfg = RunConfig::try_parse_from(["holomon", "verify", "dictionary"]).expect("arguments");
    let out = run(&cfg).expect("report");
    let noted = out.text.contains(BMOVE_NOTE);
    (
        worst <= 1e-14 && phase <= 1e-14 && exact && noted && out.code == 0,
        format!("weight error {worst:.1e}, phase modulus error {phase:.1e}, exact {exact}, note in report {noted}"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("classical relations", classical_relations),
        ("Poisson compatibility", poisson_compatibility),
        ("mutation covariance", mutation_covariance),
        ("quantum relations", quantum_relations),
        ("quantum mutation", quantum_mutation),
        ("pants representation", pants_representation),
        ("Virasoro null vector", virasoro),
        ("degenerate block equation", bpz),
        ("vacuum propagation", vacuum),
        ("tau function", tau),
        ("dictionary consistency", dictionary),
    ];
    let mut all = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (ok, detail) = match std::panic::catch_unwind(f) {
            Ok(o) => o,
            Err(_) => (false, "panicked".into()),
        };
        all &= ok;
        println!(
            "{} criterion {:>2} {name}: {detail} ({:.1} s)",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            t.elapsed().as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
