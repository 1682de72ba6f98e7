use delay_logistic::dde::StepMethod;
use delay_logistic::econ::{
    fisher_inflation, policy_check, shift_equivalence_check, simulate_scenario, InterestScenario,
    Stability,
};
use delay_logistic::regime::{predict_regime, Regime, THRESHOLDS};

fn scenario(long_rate: f64, short_rate: f64, delay: f64, delays: f64) -> InterestScenario {
    InterestScenario {
        nominal_long_rate: long_rate,
        short_rate,
        delay,
        beta: 0.02,
        horizon: delays * delay,
        dt: delay / 512.0,
        method: StepMethod::ForwardEuler,
    }
}

#[test]
fn shifted_and_direct_integrations_agree() {
    for long_rate in [0.05, 0.12] {
        for short_rate in [0.0, 0.02] {
            for delay in [6.0, 12.0] {
                let scn = InterestScenario {
                    method: StepMethod::ClassicalRk4,
                    ..scenario(long_rate, short_rate, delay, 40.0)
                };
                assert!(shift_equivalence_check(&scn).unwrap() <= 1e-9);
            }
        }
    }
}

#[test]
fn regime_follows_the_effective_product() {
    let near = |p: f64| {
        (p - THRESHOLDS.sustained_bound).abs() <= 0.02
            || (p - THRESHOLDS.asymptotic_bound).abs() <= 0.02
    };
    let mut checked = 0;
    for long_rate in [0.02, 0.05, 0.08, 0.12, 0.15] {
        for short_rate in [0.0, 0.01, 0.02] {
            for delay in [6.0, 12.0, 14.0] {
                let product = (long_rate - short_rate) * delay;
                if short_rate >= long_rate || near(product) {
                    continue;
                }
                let scn = scenario(long_rate, short_rate, delay, 300.0);
                let analysis = simulate_scenario(&scn).unwrap().analyze(0.5, 0.01).unwrap();
                assert_eq!(
                    analysis.verdict,
                    predict_regime(product).unwrap(),
                    "A = {long_rate}, w = {short_rate}, t0 = {delay}"
                );
                checked += 1;
            }
        }
    }
    assert!(checked >= 30, "{checked}");
}

#[test]
fn higher_short_rate_softens_the_inflation_trough() {
    let troughs: Vec<f64> = [0.0, 0.01, 0.02]
        .iter()
        .map(|&w| {
            simulate_scenario(&scenario(0.08, w, 12.0, 150.0))
                .unwrap()
                .first_oscillation_min_inflation()
        })
        .collect();
    assert!(troughs[0] < troughs[1] && troughs[1] < troughs[2], "{troughs:?}");
}

#[test]
fn long_rate_stays_above_short_rate() {
    for w in [0.0, 0.01, 0.02] {
        let traj = simulate_scenario(&scenario(0.12, w, 14.0, 100.0)).unwrap();
        assert!(traj.long_rate_actual().iter().all(|&i| i > w));
    }
}

#[test]
fn inflation_is_nominal_minus_actual() {
    let traj = simulate_scenario(&scenario(0.08, 0.01, 12.0, 20.0)).unwrap();
    for (&i, &infl) in traj.long_rate_actual().iter().zip(traj.inflation()) {
        assert_eq!(infl, 0.08 - i);
        assert_eq!(fisher_inflation(0.08, i).inflation, infl);
    }
}

#[test]
fn sustained_without_short_rate_damped_with_it() {
    let verdict = |w: f64| {
        simulate_scenario(&scenario(0.12, w, 14.0, 300.0))
            .unwrap()
            .analyze(0.5, 0.01)
            .unwrap()
            .verdict
    };
    assert_eq!(verdict(0.0), Regime::SustainedOscillatory);
    assert_eq!(verdict(0.02), Regime::DampedOscillatory);
}

#[test]
fn policy_boundary_is_inclusive() {
    let t0 = 12.0;
    let at = policy_check(1.0 / std::f64::consts::E / t0, 0.0, t0).unwrap();
    assert_eq!(at.stability, Stability::StableOrderly);
    let above = policy_check(0.05, 0.0, t0).unwrap();
    assert_eq!(above.stability, Stability::OscillationRisk);
    let raised = policy_check(0.05, 0.03, t0).unwrap();
    assert_eq!(raised.stability, Stability::StableOrderly);
}
