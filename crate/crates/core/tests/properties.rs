use num_complex::Complex64;
use proptest::prelude::*;

use specmoment::{
    moment, moment_fast, moment_iterated, oracle_generalized_moment, plan, route_validity, smoothed_spectrum, ContourConfig,
    Error, PaleyWienerFunction, PlanOptions, Route, SpectralModel, TestFunction,
};

fn pw_function() -> impl Strategy<Value = PaleyWienerFunction> {
    prop_oneof![
        (-2.0f64..2.0).prop_map(PaleyWienerFunction::exp),
        (0.01f64..2.0).prop_map(PaleyWienerFunction::sinc),
        (0.05f64..2.0).prop_map(PaleyWienerFunction::bump),
        (0u32..6).prop_map(PaleyWienerFunction::monomial),
        prop::collection::vec(-2.0f64..2.0, 1..5).prop_map(PaleyWienerFunction::polynomial),
    ]
}

fn model() -> impl Strategy<Value = SpectralModel> {
    prop_oneof![
        Just(SpectralModel::exponential()),
        (0.5f64..3.0).prop_map(|b| SpectralModel::free_particle(b, 1.0).unwrap()),
        (0.5f64..2.0).prop_map(|r| SpectralModel::uniform(r).unwrap()),
        Just(SpectralModel::gaussian()),
        (0.5f64..2.0).prop_map(|t| SpectralModel::strip(t).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn growth_bound_holds(f in pw_function(), x in -6.0f64..6.0, y in -3.0f64..3.0) {
        let (c, n) = f.growth_constants();
        let z = Complex64::new(x, y);
        let bound = c * (1.0 + z.norm()).powf(n) * (f.band_limit() * y.abs()).exp();
        prop_assert!(f.eval(z).norm() <= bound * (1.0 + 1e-9) + 1e-12, "{} at {z}: {} > {bound}", f.eval(z).norm(), bound);
    }

    #[test]
    fn router_prefers_fast_below_tau0(m in model(), ratio in 0.0f64..0.95) {
        let b = if m.tau0.is_finite() { ratio * m.tau0 } else { 3.0 * ratio };
        let r = route_validity(&m, &PaleyWienerFunction::exp(b).into()).unwrap();
        prop_assert_eq!(r.route, Route::FastPath);
    }

    #[test]
    fn strip_rejects_beyond_twice_tau0(tau0 in 0.3f64..3.0, excess in 0.0f64..3.0) {
        let m = SpectralModel::strip(tau0).unwrap();
        let f: TestFunction = PaleyWienerFunction::sinc(2.0 * tau0 + excess).into();
        let err = route_validity(&m, &f).unwrap_err();
        prop_assert!(matches!(err, Error::NoValidRoute(ref msg) if msg.contains("2 tau0")));
    }

    #[test]
    fn descriptors_round_trip(f in pw_function(), shift in -3.0f64..3.0, scale in 0.1f64..4.0, shifted in any::<bool>()) {
        let g: TestFunction = f.into();
        let g = if shifted { g.shift_scale(shift, scale).unwrap() } else { g };
        let back: TestFunction = g.to_string().parse().unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn model_descriptors_round_trip(m in model()) {
        let back: SpectralModel = m.to_string().parse().unwrap();
        prop_assert_eq!(back, m);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn fast_and_iterated_agree(t in -0.8f64..0.8, beta in 1.0f64..3.0) {
        let m = SpectralModel::free_particle(beta, 1.0).unwrap();
        let f: TestFunction = PaleyWienerFunction::exp(t * m.tau0).into();
        let p = plan(&m, &f, &PlanOptions::with_tol(1e-12)).unwrap();
        prop_assert_eq!(p.route, Route::FastPath);
        let a = moment_fast(&m, &f, &p.contour).unwrap();
        let b = moment_iterated(&m, &f, &p.contour, 96).unwrap();
        prop_assert!((a.value - b.value).norm() < 1e-9, "{} vs {}", a.value, b.value);
    }

    #[test]
    fn symmetric_model_mirror(band in 0.1f64..0.9, shift in -2.0f64..2.0) {
        let m = SpectralModel::gaussian();
        let k: TestFunction = PaleyWienerFunction::sinc(band).into();
        let opts = PlanOptions::default();
        let a = smoothed_spectrum(&m, &k, shift, 1.0, &opts).unwrap();
        let b = smoothed_spectrum(&m, &k, -shift, 1.0, &opts).unwrap();
        prop_assert!(a.real_valued && a.value.im == 0.0);
        prop_assert!((a.value.re - b.value.re).abs() < 1e-9);
    }

    #[test]
    fn moment_matches_oracle(band in 0.05f64..0.9) {
        let m = SpectralModel::exponential();
        let f: TestFunction = PaleyWienerFunction::sinc(band).into();
        let r = moment(&m, &f, &PlanOptions::default()).unwrap();
        let o = oracle_generalized_moment(&m, &f, 1e-11).unwrap();
        prop_assert!((r.value - o).norm() < 1e-8, "{} vs {o}", r.value);
        prop_assert!((r.real() - band.atan()).abs() < 1e-9);
    }
}

#[test]
fn smoothed_bump_matches_oracle_convolution() {
    let m = SpectralModel::exponential();
    let frozen = [
        (0.5, 1.0, 0.581_401_516_850_681_0),
        (0.5, 0.5, 1.061_271_669_545_479),
        (1.0, 1.0, 1.061_271_669_545_479),
        (1.0, 0.5, 1.688_349_028_083_631),
    ];
    for (band, sigma, expect) in frozen {
        let k: TestFunction = PaleyWienerFunction::bump(band).into();
        let r = smoothed_spectrum(&m, &k, 0.0, sigma, &PlanOptions::default()).unwrap();
        let oracle = oracle_generalized_moment(&m, &k.shift_scale(0.0, sigma).unwrap(), 1e-10).unwrap().re / sigma;
        assert!((r.real() - oracle).abs() < 1e-6, "B={band} sigma={sigma}: {} vs {oracle}", r.real());
        assert!((r.real() - expect).abs() < 1e-9, "B={band} sigma={sigma}: {} vs {expect}", r.real());
    }
}

#[test]
fn free_particle_bump_moment() {
    let m = SpectralModel::free_particle(2.0, 1.0).unwrap();
    let f: TestFunction = PaleyWienerFunction::bump(0.5).into();
    let r = moment(&m, &f, &PlanOptions::default()).unwrap();
    assert!((r.real() - 0.045_438_687_031_607_026).abs() < 1e-10, "{}", r.real());
}

#[test]
fn second_moment_of_free_particle() {
    let m = SpectralModel::free_particle(2.0, 1.0).unwrap();
    let f: TestFunction = PaleyWienerFunction::monomial(2).into();
    let c = ContourConfig::new(0.5, 96, 0.5, 1.5);
    let r = moment_fast(&m, &f, &c).unwrap();
    assert!((r.real() - 0.238_732_414_637_843_0).abs() < 1e-10, "{}", r.real());
}

#[test]
fn density_pointwise() {
    let m = SpectralModel::free_particle(2.0, 1.0).unwrap();
    assert!((m.density_at(1.0).unwrap() - 0.015_246_488_251_616_220).abs() < 1e-14);
    assert!(matches!(SpectralModel::strip(1.0).unwrap().density_at(0.0), Ok(_) | Err(Error::NoDensity(_))));
}
