use std::f64::consts::TAU;

use proptest::prelude::*;
use toeplitz_sym::conjugation::{a_uv_rep, c_lambda, c_lambda_a};
use toeplitz_sym::io::{symbol_from_json, symbol_to_json};
use toeplitz_sym::operators::{commutator_section, toeplitz_section};
use toeplitz_sym::suites::{run_suite, SuiteConfig};
use toeplitz_sym::symbol::{BlaschkeProduct, LaurentSymbol};
use toeplitz_sym::symmetry::{
    clambda_mismatch, clambda_symmetry_test, construct_symmetric_symbol, symbol_symmetry_residual,
};
use toeplitz_sym::winding::{winding_number, winding_number_adaptive, CurveSamples};
use toeplitz_sym::C64;

fn complex(r: f64) -> impl Strategy<Value = C64> {
    (-r..r, -r..r).prop_map(|(a, b)| C64::new(a, b))
}

fn unit() -> impl Strategy<Value = C64> {
    (0.0..TAU).prop_map(|t| C64::from_polar(1.0, t))
}

fn disk(r: f64) -> impl Strategy<Value = C64> {
    (0.0..r, 0.0..TAU).prop_map(|(m, t)| C64::from_polar(m, t))
}

fn symbol(bw: i64) -> impl Strategy<Value = LaurentSymbol> {
    prop::collection::vec(complex(2.0), (2 * bw + 1) as usize).prop_map(move |c| LaurentSymbol::from_dense(-bw, c))
}

fn analytic(deg: usize) -> impl Strategy<Value = LaurentSymbol> {
    prop::collection::vec(complex(2.0), 1..=deg)
        .prop_map(|c| LaurentSymbol::from_pairs(c.into_iter().enumerate().map(|(k, a)| (k as i64 + 1, a))))
}

fn diff(a: &LaurentSymbol, b: &LaurentSymbol) -> f64 {
    (a - b).max_abs()
}

proptest! {
    #[test]
    fn symbol_json_round_trip(s in symbol(6)) {
        prop_assert_eq!(symbol_from_json(&symbol_to_json(&s)).unwrap(), s);
    }

    #[test]
    fn clambda_is_an_involution(s in symbol(5), l in unit()) {
        let back = s.clambda(l).unwrap().clambda(l).unwrap();
        prop_assert!(diff(&back, &s) < 1e-12);
    }

    #[test]
    fn coefficient_criterion_matches_rotation_form(s in symbol(4), l in unit()) {
        // a_{-n} = lambda^n a_n for all n  <=>  phi(lambda z) = phi(conj z)
        let rot = diff(&s.rotate(l).unwrap(), &s.bar_arg());
        let mismatch = clambda_mismatch(&s, l);
        prop_assert!((rot - mismatch).abs() < 1e-12 * (1.0 + s.max_abs()));
    }

    #[test]
    fn constructed_symbols_are_symmetric(f in analytic(6), l in unit()) {
        let phi = construct_symmetric_symbol(&f, l, &BlaschkeProduct::identity()).unwrap();
        let v = clambda_symmetry_test(&phi);
        prop_assert!(v.is_symmetric());
        prop_assert!(diff(&phi.rotate(l).unwrap(), &phi.bar_arg()) < 1e-12 * phi.max_abs());
    }

    #[test]
    fn blaschke_is_unimodular_on_the_circle(g in unit(), zs in prop::collection::vec(disk(0.95), 1..4), t in 0.0..TAU) {
        let b = BlaschkeProduct::new(g, zs).unwrap();
        prop_assert!((b.eval(C64::from_polar(1.0, t)).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn toeplitz_adjoint_has_reflected_symbol(s in symbol(4)) {
        let t = toeplitz_section(&s, 12);
        let ta = toeplitz_section(&s.conj_reflect(), 12);
        prop_assert!((t.adjoint().entries - ta.entries).norm() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn commutator_interior_does_not_depend_on_section_size(s in symbol(3)) {
        let small = commutator_section(&s, 10).unwrap();
        let large = commutator_section(&s, 24).unwrap();
        prop_assert!((large.interior(10).entries - small.entries).norm() < 1e-11);
    }

    #[test]
    fn conjugation_families_satisfy_the_axioms(l in unit(), a in disk(0.8), al in unit()) {
        for c in [c_lambda(l, 24).unwrap(), c_lambda_a(l, a, 24).unwrap()] {
            prop_assert!(c.unitarity_residual() < 1e-9);
            prop_assert!(c.symmetry_residual() < 1e-9);
        }
        let beta = if a.norm() > 0.0 { a.conj() / a } else { l };
        let auv = a_uv_rep(al, beta, a, 24).unwrap();
        prop_assert!(auv.unitarity_residual() < 1e-9);
        prop_assert!(auv.symmetry_residual() < 1e-9);
    }

    #[test]
    fn c_lambda_witness_has_zero_residual(f in analytic(4), l in unit()) {
        let phi = construct_symmetric_symbol(&f, l, &BlaschkeProduct::identity()).unwrap();
        let r = symbol_symmetry_residual(&c_lambda(l, 32).unwrap(), &phi).unwrap();
        prop_assert!(r < 1e-12 * (1.0 + phi.max_abs()));
    }

    #[test]
    fn sampled_and_adaptive_winding_agree(s in symbol(3), p in complex(3.0)) {
        let curve = CurveSamples::from_symbol(&s, 4096).unwrap();
        if let Ok(w) = winding_number(&curve, p) {
            let on = |t: f64| s.eval(C64::from_polar(1.0, t)).unwrap();
            prop_assert_eq!(winding_number_adaptive(on, p, 64).unwrap(), w);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn suite_reports_are_reproducible(seed in any::<u64>()) {
        let cfg = SuiteConfig::new("lemma34-trace").unwrap().with_seed(seed).with_cases(9);
        let a = run_suite(&cfg).unwrap();
        let b = run_suite(&cfg).unwrap();
        prop_assert_eq!(a.canonical_json(), b.canonical_json());
        prop_assert!(a.all_passed());
    }
}
