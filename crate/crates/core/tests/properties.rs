use std::sync::Arc;

use holomon_core::cft::tau::power;
use holomon_core::cft::{bpz_residual, sigma_pvi_residual, sphere4_block, tau_series, DegenerateSetup, TauParams};
use holomon_core::classical::{poisson_bracket, trace_function, verify_mutation_covariance};
use holomon_core::laurent::LaurentPoly;
use holomon_core::qcoeff::QCoeff;
use holomon_core::quantum::{quantized_reference, QuantumTorusElement};
use holomon_core::topology::{
    random_flips, DehnConstraint, DehnParam, ExchangeMatrix, PantsDecomposition, Reference, SurfaceKind,
};
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn r(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn kind() -> impl Strategy<Value = SurfaceKind> {
    prop_oneof![Just(SurfaceKind::C11), Just(SurfaceKind::C04)]
}

fn nvars(k: SurfaceKind) -> usize {
    Reference::get(k).triangulation.num_edges()
}

fn sparse_poly(m: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-2i32..=2, m), -4i64..=4), 0..4)
        .prop_map(move |ts| LaurentPoly::from_terms(m, ts.into_iter().map(|(e, c)| (e, r(c, 1)))))
}

fn q_element(n: Arc<ExchangeMatrix>) -> impl Strategy<Value = QuantumTorusElement> {
    let m = n.size();
    prop::collection::vec((prop::collection::vec(-2i32..=2, m), -3i64..=3, -2i64..=2), 0..4).prop_map(move |ts| {
        ts.into_iter().fold(QuantumTorusElement::zero(n.clone()), |acc, (e, c, k)| {
            let c = &QCoeff::from_int(c) * &QCoeff::s_pow(k);
            acc.add(&QuantumTorusElement::monomial(n.clone(), e, c)).unwrap()
        })
    })
}

fn c11_context() -> Arc<ExchangeMatrix> {
    Arc::new(Reference::get(SurfaceKind::C11).triangulation.exchange_matrix())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn flips_keep_the_combinatorics(k in kind(), seed in any::<u64>(), steps in 0usize..12) {
        let start = Reference::get(k).triangulation;
        let (tri, seq) = random_flips(&start, steps, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(tri.corner_incidences(), 3 * tri.num_triangles());
        let n = tri.exchange_matrix();
        prop_assert!(n.is_antisymmetric());
        prop_assert!(n.entries_in_range());
        let replayed = start.flip_sequence(&seq).unwrap();
        prop_assert_eq!(replayed.triangles(), tri.triangles());
    }

    #[test]
    fn flip_is_an_involution(k in kind(), seed in any::<u64>(), steps in 0usize..8, e in 0usize..6) {
        let (tri, _) = random_flips(&Reference::get(k).triangulation, steps, &mut ChaCha8Rng::seed_from_u64(seed));
        let e = e % tri.num_edges();
        if tri.flippable(e).is_ok() {
            let back = tri.flip(e).unwrap().flip(e).unwrap();
            prop_assert!(back.is_isomorphic(&tri));
            prop_assert_eq!(tri.exchange_matrix().mutate(e).mutate(e), tri.exchange_matrix());
        }
    }

    #[test]
    fn dehn_constraints_are_independent(k in kind(), params in prop::collection::vec((-3i64..=3, -3i64..=3), 1..=2)) {
        let pd = match k {
            SurfaceKind::C11 => PantsDecomposition::standard_c11(),
            SurfaceKind::C04 => PantsDecomposition::standard_c04(),
        };
        let h = pd.curves.len();
        let mut p = params;
        p.resize(h, (0, 0));
        let dp = DehnParam { params: p.clone() };
        let first = p.iter().all(|&(r, _)| r >= 0);
        let second = p.iter().all(|&(r, s)| r != 0 || s >= 0);
        let found = pd.validate_dehn(&dp).err().unwrap_or_default();
        let has = |c: DehnConstraint| found.iter().any(|v| v.constraint == c);
        prop_assert_eq!(has(DehnConstraint::NonNegativeIntersection), !first);
        prop_assert_eq!(has(DehnConstraint::NonNegativeTwist), !second);
        let ok = pd.validate_dehn(&dp).is_ok();
        prop_assert_eq!(ok, first && second && !has(DehnConstraint::EvenPants));
    }

    #[test]
    fn traces_stay_positive_and_covariant_along_flips(k in kind(), seed in any::<u64>(), steps in 0usize..4) {
        let rf = Reference::get(k);
        let mut tri = rf.triangulation.clone();
        let mut curves: Vec<_> = rf.curves.values().cloned().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..steps {
            let (_, seq) = random_flips(&tri, 1, &mut rng);
            let Some(&e) = seq.first() else { break };
            for c in &curves {
                prop_assert!(verify_mutation_covariance(&tri, e, c).unwrap().equal);
            }
            let (next, data) = tri.flip_with_data(e).unwrap();
            curves = curves.iter().map(|c| c.transport(&tri, &next, &data).unwrap()).collect();
            tri = next;
        }
        for c in &curves {
            prop_assert!(trace_function(&tri, c).unwrap().all_coefficients_positive());
        }
    }

    #[test]
    fn bracket_is_a_poisson_bracket(
        (k, f, g, h) in kind().prop_flat_map(|k| {
            let m = nvars(k);
            (Just(k), sparse_poly(m), sparse_poly(m), sparse_poly(m))
        })
    ) {
        let n = Reference::get(k).triangulation.exchange_matrix();
        let br = |a: &LaurentPoly, b: &LaurentPoly| poisson_bracket(a, b, &n).unwrap();
        prop_assert!((&br(&f, &g) + &br(&g, &f)).is_zero());
        let leibniz = &br(&f, &(&g * &h)) - &(&(&br(&f, &g) * &h) + &(&g * &br(&f, &h)));
        prop_assert!(leibniz.is_zero());
        let jacobi = &(&br(&f, &br(&g, &h)) + &br(&g, &br(&h, &f))) + &br(&h, &br(&f, &g));
        prop_assert!(jacobi.is_zero());
    }

    #[test]
    fn weyl_product_is_associative(
        (a, b, c) in (q_element(c11_context()), q_element(c11_context()), q_element(c11_context()))
    ) {
        let ab_c = a.weyl_product(&b).unwrap().weyl_product(&c).unwrap();
        let a_bc = a.weyl_product(&b.weyl_product(&c).unwrap()).unwrap();
        prop_assert!(ab_c == a_bc);
    }

    #[test]
    fn classical_limit_is_multiplicative((a, b) in (q_element(c11_context()), q_element(c11_context()))) {
        let lhs = a.weyl_product(&b).unwrap().classical_limit().unwrap();
        let rhs = &a.classical_limit().unwrap() * &b.classical_limit().unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bar_reverses_products((a, b) in (q_element(c11_context()), q_element(c11_context()))) {
        let lhs = a.weyl_product(&b).unwrap().bar_coefficients();
        let rhs = b.bar_coefficients().weyl_product(&a.bar_coefficients()).unwrap();
        prop_assert!(lhs == rhs);
    }

    #[test]
    fn sphere_blocks_are_relabeling_symmetric(
        w in prop::collection::vec((1i64..40, 1i64..13), 6),
    ) {
        let v: Vec<BigRational> = w.iter().map(|&(a, b)| r(a, b)).collect();
        let (d, db, c) = ([&v[0], &v[1], &v[2], &v[3]], &v[4], &v[5]);
        let a = sphere4_block(d, db, c, 3);
        let b = sphere4_block([d[3], d[2], d[1], d[0]], db, c, 3);
        if let (Ok(a), Ok(b)) = (a, b) {
            prop_assert_eq!(a.coefficients, b.coefficients);
        }
    }

    #[test]
    fn degenerate_blocks_solve_their_equation(
        b2 in (1i64..9, 1i64..9), r1 in (1i64..9, 2i64..13), r3 in (1i64..9, 2i64..13), r4 in (1i64..9, 2i64..13),
    ) {
        let s = DegenerateSetup { b2: r(b2.0, b2.1), r1: r(r1.0, r1.1), r3: r(r3.0, r3.1), r4: r(r4.0, r4.1) };
        for sign in [1, -1] {
            if let Ok(b) = s.block(sign, 4) {
                prop_assert!(bpz_residual(&b, &s.b2).unwrap().iter().all(|x| x.is_zero()));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn tau_is_stable_under_weights_and_shifts(
        sigma in (1i64..9, 11i64..23),
        theta in prop::collection::vec((1i64..7, 5i64..17), 4),
        w in (-5i64..=5, 1i64..5),
    ) {
        prop_assume!(w.0 != 0);
        let p = TauParams {
            sigma: r(sigma.0, sigma.1),
            theta: [0, 1, 2, 3].map(|i| r(theta[i].0, theta[i].1)),
            order: 3,
            shifts: 2,
        };
        let wt = r(w.0, w.1);
        let tau = tau_series(&p, |n| power(&wt, n).unwrap()).unwrap();
        prop_assert!(sigma_pvi_residual(&tau).unwrap().vanishes());
        let wider = tau_series(&TauParams { shifts: 3, ..p.clone() }, |n| power(&wt, n).unwrap()).unwrap();
        let d = tau.series.sub(&wider.series);
        prop_assert!(d.terms().iter().filter(|(k, _)| k.1 <= 3).all(|(_, v)| v.is_zero()));
    }
}

#[test]
fn quantized_traces_are_bar_invariant() {
    for k in [SurfaceKind::C11, SurfaceKind::C04] {
        for (name, v) in quantized_reference(k).unwrap() {
            assert!(v.bar_coefficients() == v, "{} {name}", k.name());
        }
    }
}

#[test]
fn pants_relations_survive_boundary_relabeling() {
    use holomon_core::pants_rep::{verify_pants_relations, RepParams};
    for p in RepParams::random_draws(SurfaceKind::C04, 11, 2, 30).unwrap() {
        let a = verify_pants_relations(&p, 16, 1e-9, None).unwrap();
        let b = verify_pants_relations(&p.swapped(), 16, 1e-9, None).unwrap();
        assert!(a.max_residual <= 1e-9 && b.max_residual <= 1e-9);
    }
}
