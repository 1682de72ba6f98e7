use delay_logistic::dde::StepMethod;
use delay_logistic::logistic::simulate_canonical;
use delay_logistic::regime::{
    classify, crossing_times, hopf_boundary_search, predict_regime, Regime, SimConfig,
    NOISE_FLOOR,
};
use delay_logistic::Error;

fn euler_cfg() -> SimConfig {
    SimConfig {
        method: StepMethod::ForwardEuler,
        ..SimConfig::default()
    }
}

#[test]
fn empirical_regime_matches_prediction() {
    for a in [0.2, 0.35, 0.8, 1.0, 1.4, 1.7, 2.0] {
        let analysis = classify(a, &euler_cfg()).unwrap();
        assert_eq!(analysis.verdict, predict_regime(a).unwrap(), "a = {a}");
    }
}

#[test]
fn asymptotic_runs_cross_at_most_once() {
    let analysis = classify(0.3, &SimConfig { beta: 0.2, ..euler_cfg() }).unwrap();
    assert_eq!(analysis.verdict, Regime::AsymptoticNonOscillatory);
    assert!(analysis.total_crossings < 2);
    assert!(analysis.terminal_deviation < 1e-3 * 0.3);
}

#[test]
fn sustained_peaks_do_not_shrink() {
    let analysis = classify(1.8, &SimConfig::default()).unwrap();
    assert_eq!(analysis.verdict, Regime::SustainedOscillatory);
    assert!(analysis.mean_peak_ratio > 0.99);
    assert!(analysis.peak_amplitudes.len() >= 2);
}

#[test]
fn positive_solution_never_crosses_zero() {
    let z = simulate_canonical(1.8, 0.12, 1.0 / 128.0, 100.0, StepMethod::ClassicalRk4).unwrap();
    assert!(crossing_times(z.samples(), 0.0, NOISE_FLOOR).is_empty());
}

#[test]
fn hopf_search_is_deterministic_and_bracketed() {
    let cfg = SimConfig::default();
    let first = hopf_boundary_search(1.50, 1.65, 0.002, &cfg).unwrap();
    let second = hopf_boundary_search(1.50, 1.65, 0.002, &cfg).unwrap();
    assert_eq!(first, second);
    assert!(first.hi - first.lo <= 0.002);
    assert!(first.lo <= first.estimate && first.estimate <= first.hi);
    assert!((1.56..=1.58).contains(&first.estimate), "{}", first.estimate);
    let verdict = |a: f64| first.probes.iter().find(|p| p.a == a).unwrap().verdict;
    assert_ne!(verdict(first.lo), Regime::SustainedOscillatory);
    assert_eq!(verdict(first.hi), Regime::SustainedOscillatory);
}

#[test]
fn inverted_bracket_is_rejected() {
    let err = hopf_boundary_search(1.6, 1.7, 0.01, &SimConfig::default()).unwrap_err();
    assert!(matches!(err, Error::BracketInvalid { .. }), "{err}");
}
