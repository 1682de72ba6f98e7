//! Regimes of the canonical equation: predicted from `a`, detected from a
//! trajectory, and located by bisection.
//!
//! For `0 < a <= 1/e` solutions approach `z = a` without oscillating. Above
//! `1/e` they oscillate about `z = a`; the oscillation decays up to the
//! proved bound `1.5706` (Wright conjectured `π/2`) and persists beyond it.

use std::f64::consts::{E, FRAC_PI_2};

use crate::dde::{StepMethod, Trajectory};
use crate::error::{require_positive, Error, Result};
use crate::logistic::simulate_canonical;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Regime {
    AsymptoticNonOscillatory,
    DampedOscillatory,
    SustainedOscillatory,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::AsymptoticNonOscillatory => "asymptotic",
            Regime::DampedOscillatory => "damped",
            Regime::SustainedOscillatory => "sustained",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    /// Largest `a` with non-oscillatory solutions, `1/e`. Inclusive.
    pub asymptotic_bound: f64,
    /// Largest `a` with decaying oscillations. Inclusive.
    pub sustained_bound: f64,
}

pub const THRESHOLDS: Thresholds = Thresholds {
    asymptotic_bound: 1.0 / E,
    sustained_bound: 1.5706,
};

/// Wright's conjectured value of the sustained bound.
pub const WRIGHT_CONJECTURE: f64 = FRAC_PI_2;

pub fn predict_regime(a: f64) -> Result<Regime> {
    require_positive("a", a)?;
    Ok(if a <= THRESHOLDS.asymptotic_bound {
        Regime::AsymptoticNonOscillatory
    } else if a <= THRESHOLDS.sustained_bound {
        Regime::DampedOscillatory
    } else {
        Regime::SustainedOscillatory
    })
}

/// Deviations below `NOISE_FLOOR * equilibrium` are treated as zero.
/// Without it, rounding noise around a converged fixed point would read as
/// an oscillation of constant amplitude.
pub const NOISE_FLOOR: f64 = 1e-9;

/// Converged means `|z(T) - a| < CONVERGED_TOL * a`.
pub const CONVERGED_TOL: f64 = 1e-3;

/// Minimum span, in delays, after the transient window.
pub const MIN_WINDOW_DELAYS: f64 = 20.0;

/// Number of same-sign peaks, counted from the end, used for the damping
/// ratio.
pub const ANALYZED_PEAKS: usize = 10;

/// Evidence behind a regime verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct OscillationAnalysis {
    pub equilibrium: f64,
    /// Sign changes of `z - equilibrium` after the transient.
    pub crossing_times: Vec<f64>,
    /// `|z - equilibrium|` at the extremum of each complete half-cycle after
    /// the transient, alternating above and below the equilibrium.
    pub peak_amplitudes: Vec<f64>,
    /// Last over first of the analyzed peaks above the equilibrium; 1 when
    /// there is no oscillation to measure.
    pub envelope_ratio: f64,
    /// Geometric mean of successive analyzed peak ratios.
    pub mean_peak_ratio: f64,
    /// Sign changes of `z - equilibrium` over the whole run after the
    /// history interval.
    pub total_crossings: usize,
    pub terminal_deviation: f64,
    pub verdict: Regime,
}

/// Sign changes of `values - level`, ignoring excursions with
/// `|values - level| <= floor`. Crossing times are linearly interpolated
/// between the last pair of samples that straddle `level`.
pub fn crossing_times<I>(samples: I, level: f64, floor: f64) -> Vec<f64>
where
    I: IntoIterator<Item = (f64, f64)>,
{
    let mut crossings = Vec::new();
    let mut confirmed = 0.0_f64;
    let mut last_straddle = None;
    let mut prev: Option<(f64, f64)> = None;
    for (t, v) in samples {
        let d = v - level;
        if let Some((tp, dp)) = prev {
            if dp * d < 0.0 || (dp == 0.0 && d != 0.0) {
                let t_cross = if d == dp { t } else { tp + (t - tp) * dp / (dp - d) };
                last_straddle = Some(t_cross);
            }
        }
        if d.abs() > floor {
            let s = d.signum();
            if confirmed != 0.0 && s != confirmed {
                crossings.push(last_straddle.unwrap_or(t));
            }
            confirmed = s;
        }
        prev = Some((t, d));
    }
    crossings
}

/// Classifies a canonical trajectory oscillating (or not) about
/// `equilibrium`.
///
/// The first `transient_fraction` of the run is discarded. If the remaining
/// window shows fewer than two sign changes the run must have converged
/// (`|z(T) - a| < 1e-3 a`); it is asymptotic when the whole run crosses the
/// equilibrium fewer than twice and damped otherwise. Oscillating windows are
/// judged by the geometric mean ratio `r` of successive peaks above the
/// equilibrium over the last ten: damped when `r < 1 - rel_tol`, sustained
/// otherwise.
pub fn analyze_trajectory(
    traj: &Trajectory,
    equilibrium: f64,
    transient_fraction: f64,
    rel_tol: f64,
) -> Result<OscillationAnalysis> {
    require_positive("equilibrium", equilibrium)?;
    require_positive("rel_tol", rel_tol)?;
    if !(0.0..1.0).contains(&transient_fraction) {
        return Err(Error::TooShort(format!(
            "transient fraction {transient_fraction} must lie in [0, 1)"
        )));
    }
    let grid = traj.grid();
    let end = grid.time(traj.len() - 1);
    let window_start = transient_fraction * end;
    if end - window_start < MIN_WINDOW_DELAYS * grid.delay() {
        return Err(Error::TooShort(format!(
            "{} delays after the transient, need {MIN_WINDOW_DELAYS}",
            (end - window_start) / grid.delay()
        )));
    }
    let floor = NOISE_FLOOR * equilibrium;
    let after_history = traj.samples().filter(|&(t, _)| t >= grid.delay());
    let total_crossings = crossing_times(after_history, equilibrium, floor).len();

    let window = || traj.samples().filter(move |&(t, _)| t >= window_start);
    let crossings = crossing_times(window(), equilibrium, floor);
    let terminal_deviation = (traj.last_value() - equilibrium).abs();

    // Extremum of each complete half-cycle between consecutive crossings.
    let mut lobes: Vec<(f64, bool)> = Vec::new();
    for pair in crossings.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        let mut peak = 0.0_f64;
        let mut above = true;
        for (_, v) in window().filter(|&(t, _)| t > lo && t < hi) {
            let d = v - equilibrium;
            if d.abs() > peak {
                peak = d.abs();
                above = d > 0.0;
            }
        }
        lobes.push((peak, above));
    }
    let peak_amplitudes: Vec<f64> = lobes.iter().map(|&(p, _)| p).collect();

    if crossings.len() < 2 {
        if terminal_deviation >= CONVERGED_TOL * equilibrium {
            return Err(Error::TooShort(format!(
                "no oscillation after the transient but |z(T) - a| = {terminal_deviation:e}"
            )));
        }
        let verdict = if total_crossings < 2 {
            Regime::AsymptoticNonOscillatory
        } else {
            Regime::DampedOscillatory
        };
        return Ok(OscillationAnalysis {
            equilibrium,
            crossing_times: crossings,
            peak_amplitudes,
            envelope_ratio: 1.0,
            mean_peak_ratio: 1.0,
            total_crossings,
            terminal_deviation,
            verdict,
        });
    }

    let upper: Vec<f64> = lobes.iter().filter(|l| l.1).map(|l| l.0).collect();
    if upper.len() < 2 {
        return Err(Error::TooShort(format!(
            "{} extrema after the transient, need at least 4",
            peak_amplitudes.len()
        )));
    }
    let analyzed = &upper[upper.len().saturating_sub(ANALYZED_PEAKS)..];
    let envelope_ratio = analyzed[analyzed.len() - 1] / analyzed[0];
    let mean_peak_ratio = envelope_ratio.powf(1.0 / (analyzed.len() - 1) as f64);
    let verdict = if mean_peak_ratio < 1.0 - rel_tol {
        Regime::DampedOscillatory
    } else {
        Regime::SustainedOscillatory
    };
    Ok(OscillationAnalysis {
        equilibrium,
        crossing_times: crossings,
        peak_amplitudes,
        envelope_ratio,
        mean_peak_ratio,
        total_crossings,
        terminal_deviation,
        verdict,
    })
}

/// Simulation settings for empirical classification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub dt: f64,
    pub horizon: f64,
    pub beta: f64,
    pub method: StepMethod,
    pub transient_fraction: f64,
    pub rel_tol: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            dt: 1.0 / 512.0,
            horizon: 300.0,
            beta: 0.12,
            method: StepMethod::ClassicalRk4,
            transient_fraction: 0.5,
            rel_tol: 0.01,
        }
    }
}

/// Integrates the canonical equation for `a` and classifies the result.
pub fn classify(a: f64, cfg: &SimConfig) -> Result<OscillationAnalysis> {
    let traj = simulate_canonical(a, cfg.beta, cfg.dt, cfg.horizon, cfg.method)?;
    analyze_trajectory(&traj, a, cfg.transient_fraction, cfg.rel_tol)
}

/// A single evaluated point of a bisection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Probe {
    pub a: f64,
    pub verdict: Regime,
    pub mean_peak_ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HopfEstimate {
    /// Midpoint of the final bracket.
    pub estimate: f64,
    /// Largest `a` classified as not sustained.
    pub lo: f64,
    /// Smallest `a` classified as sustained.
    pub hi: f64,
    pub probes: Vec<Probe>,
}

/// Bisects on the empirical verdict for the onset of sustained oscillation.
///
/// `lo` must classify as not sustained and `hi` as sustained. Stops once
/// `hi - lo <= param_tol`.
pub fn hopf_boundary_search(
    lo: f64,
    hi: f64,
    param_tol: f64,
    cfg: &SimConfig,
) -> Result<HopfEstimate> {
    require_positive("lo", lo)?;
    require_positive("param_tol", param_tol)?;
    if hi.is_nan() || hi <= lo {
        return Err(Error::BracketInvalid {
            lo,
            hi,
            detail: "lower end must be below upper end".into(),
        });
    }
    let probe = |a: f64| -> Result<Probe> {
        let analysis = classify(a, cfg)?;
        Ok(Probe {
            a,
            verdict: analysis.verdict,
            mean_peak_ratio: analysis.mean_peak_ratio,
        })
    };
    let (lo_probe, hi_probe) = std::thread::scope(|s| {
        let upper = s.spawn(|| probe(hi));
        let lower = probe(lo);
        (lower, upper.join().expect("probe thread panicked"))
    });
    let (lo_probe, hi_probe) = (lo_probe?, hi_probe?);
    let sustained = |p: &Probe| p.verdict == Regime::SustainedOscillatory;
    if sustained(&lo_probe) || !sustained(&hi_probe) {
        return Err(Error::BracketInvalid {
            lo,
            hi,
            detail: format!(
                "lower end classifies {}, upper end {}; need non-sustained below and sustained above",
                lo_probe.verdict, hi_probe.verdict
            ),
        });
    }
    let mut probes = vec![lo_probe, hi_probe];
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > param_tol {
        let mid = 0.5 * (lo + hi);
        let p = probe(mid)?;
        if sustained(&p) {
            hi = mid;
        } else {
            lo = mid;
        }
        probes.push(p);
    }
    Ok(HopfEstimate {
        estimate: 0.5 * (lo + hi),
        lo,
        hi,
        probes,
    })
}

/// Predicted and detected regime for one value of `a`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegimeReport {
    pub a: f64,
    pub predicted: Regime,
    pub empirical: Regime,
    pub envelope_ratio: f64,
    pub terminal_deviation: f64,
}

pub fn regime_report(a: f64, cfg: &SimConfig) -> Result<RegimeReport> {
    let predicted = predict_regime(a)?;
    let analysis = classify(a, cfg)?;
    Ok(RegimeReport {
        a,
        predicted,
        empirical: analysis.verdict,
        envelope_ratio: analysis.envelope_ratio,
        terminal_deviation: analysis.terminal_deviation,
    })
}
