//! Interest rate and inflation layer.
//!
//! With a constant nominal long rate `A`, a constant actual short rate `w`
//! and a communication delay `t0`, the actual long rate `i` obeys
//!
//! ```text
//! i'(t) = A (i(t) - w) - i(t - t0) (i(t) - w)
//! ```
//!
//! and inflation follows from the approximate Fisher relation,
//! `I(t) = A - i(t)`. Substituting `i = x + w` gives the delay logistic
//! equation `x' = (A - w) x - x x(t - t0)`, so the regime is set by the
//! product `(A - w) t0`.
//!
//! Rates are per month and `t0` is in months; the product is dimensionless
//! only in that reading.

use std::f64::consts::E;

use crate::dde::{integrate, Grid, History, StepMethod, Trajectory};
use crate::error::{require_positive, Error, Result};
use crate::logistic::{from_physical, InitialFunction};
use crate::regime::{analyze_trajectory, OscillationAnalysis};

/// Inflation and the validity ratio of the approximate Fisher relation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FisherRelation {
    pub inflation: f64,
    /// `(i_actual + I) / (i_actual * I)`; the approximation needs this to be
    /// much larger than one. Infinite when the denominator vanishes.
    pub validity_ratio: f64,
}

/// `I = i_nominal - i_actual`.
pub fn fisher_inflation(i_nominal: f64, i_actual: f64) -> FisherRelation {
    let inflation = i_nominal - i_actual;
    let denom = i_actual * inflation;
    let validity_ratio = if denom == 0.0 {
        f64::INFINITY
    } else {
        (i_actual + inflation) / denom
    };
    FisherRelation {
        inflation,
        validity_ratio,
    }
}

/// `Ψ(t) = beta * exp((A - w - beta) t)` on `[0, t0]`.
pub fn psi(t: f64, long_rate: f64, short_rate: f64, beta: f64, t0: f64) -> Result<f64> {
    require_positive("t0", t0)?;
    if !(0.0..=t0).contains(&t) {
        return Err(Error::DomainViolation {
            what: "initial function",
            time: t,
            lo: 0.0,
            hi: t0,
        });
    }
    Ok(InitialFunction::physical(long_rate, short_rate, beta)?.value(t))
}

/// `Ψ'(t0) - (A - w - Ψ(0)) Ψ(t0)`.
pub fn psi_junction_residual(long_rate: f64, short_rate: f64, beta: f64, t0: f64) -> Result<f64> {
    require_positive("t0", t0)?;
    let f = InitialFunction::physical(long_rate, short_rate, beta)?;
    Ok(f.derivative(t0) - (long_rate - short_rate - f.value(0.0)) * f.value(t0))
}

/// `inner(t) + offset`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OffsetHistory<H> {
    pub inner: H,
    pub offset: f64,
}

impl<H: History> History for OffsetHistory<H> {
    fn value(&self, t: f64) -> f64 {
        self.inner.value(t) + self.offset
    }

    fn derivative(&self, t: f64) -> f64 {
        self.inner.derivative(t)
    }
}

/// Constant-rate scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterestScenario {
    /// Nominal long rate `A`, per month.
    pub nominal_long_rate: f64,
    /// Actual short rate `w`, per month, `0 <= w < A`.
    pub short_rate: f64,
    /// Communication delay `t0`, months.
    pub delay: f64,
    pub beta: f64,
    /// Months.
    pub horizon: f64,
    /// Months per step; must divide `delay`.
    pub dt: f64,
    pub method: StepMethod,
}

impl InterestScenario {
    pub fn validate(&self) -> Result<Grid> {
        let a = self.nominal_long_rate;
        let w = self.short_rate;
        if a.is_nan() || a <= 0.0 {
            return Err(Error::ScenarioInvalid(format!(
                "nominal long rate must be positive, got {a}"
            )));
        }
        if !(w >= 0.0 && w < a) {
            return Err(Error::ScenarioInvalid(format!(
                "short rate must satisfy 0 <= w < A, got w = {w}, A = {a}"
            )));
        }
        require_positive("beta", self.beta)?;
        Grid::new(self.dt, self.delay, self.horizon)
    }

    /// `(A - w) t0`.
    pub fn effective_canonical(&self) -> f64 {
        (self.nominal_long_rate - self.short_rate) * self.delay
    }

    fn initial_function(&self) -> Result<InitialFunction> {
        InitialFunction::physical(self.nominal_long_rate, self.short_rate, self.beta)
    }

    fn direct_rhs(&self) -> impl Fn(f64, f64, f64) -> f64 {
        let (a, w) = (self.nominal_long_rate, self.short_rate);
        move |_t, i, i_delayed| a * (i - w) - i_delayed * (i - w)
    }

    fn shifted_rhs(&self) -> impl Fn(f64, f64, f64) -> f64 {
        let (a, w) = (self.nominal_long_rate, self.short_rate);
        move |_t, x, x_delayed| (a - w) * x - x * x_delayed
    }
}

/// Actual long rate and inflation over a scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct EconTrajectory {
    scenario: InterestScenario,
    long_rate: Trajectory,
    inflation: Vec<f64>,
}

impl EconTrajectory {
    pub fn scenario(&self) -> &InterestScenario {
        &self.scenario
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.long_rate.times()
    }

    pub fn len(&self) -> usize {
        self.inflation.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inflation.is_empty()
    }

    pub fn long_rate_actual(&self) -> &[f64] {
        self.long_rate.values()
    }

    pub fn inflation(&self) -> &[f64] {
        &self.inflation
    }

    pub fn long_rate_trajectory(&self) -> &Trajectory {
        &self.long_rate
    }

    /// `z = (i - w) t0` against `t / t0`: the canonical equation with
    /// `a = (A - w) t0`.
    pub fn canonical(&self) -> Trajectory {
        let shifted = self.long_rate.offset(-self.scenario.short_rate);
        from_physical(&shifted, self.scenario.delay).expect("delay validated")
    }

    /// Regime evidence, computed on the canonical form.
    pub fn analyze(&self, transient_fraction: f64, rel_tol: f64) -> Result<OscillationAnalysis> {
        analyze_trajectory(
            &self.canonical(),
            self.scenario.effective_canonical(),
            transient_fraction,
            rel_tol,
        )
    }

    /// Smallest inflation up to the end of the first oscillation, i.e. until
    /// the long rate has risen above `A` and fallen back below it. The whole
    /// series when that never happens.
    pub fn first_oscillation_min_inflation(&self) -> f64 {
        let a = self.scenario.nominal_long_rate;
        let rates = self.long_rate_actual();
        let mut end = rates.len();
        let mut risen = false;
        for (k, &i) in rates.iter().enumerate() {
            if i > a {
                risen = true;
            } else if risen && i < a {
                end = k + 1;
                break;
            }
        }
        self.inflation[..end]
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }
}

/// Integrates the scenario from the history `Ψ(t) + w` on `[0, t0]`.
pub fn simulate_scenario(scn: &InterestScenario) -> Result<EconTrajectory> {
    let grid = scn.validate()?;
    let init = OffsetHistory {
        inner: scn.initial_function()?,
        offset: scn.short_rate,
    };
    let long_rate = integrate(&scn.direct_rhs(), &init, &grid, scn.method)?;
    let a = scn.nominal_long_rate;
    let inflation = long_rate
        .values()
        .iter()
        .map(|&i| fisher_inflation(a, i).inflation)
        .collect();
    Ok(EconTrajectory {
        scenario: *scn,
        long_rate,
        inflation,
    })
}

/// Largest pointwise gap between the directly integrated long rate and
/// `x + w`, where `x` solves the shifted delay logistic equation from `Ψ`.
pub fn shift_equivalence_check(scn: &InterestScenario) -> Result<f64> {
    let direct = simulate_scenario(scn)?;
    let grid = scn.validate()?;
    let shifted = integrate(&scn.shifted_rhs(), &scn.initial_function()?, &grid, scn.method)?;
    Ok(direct
        .long_rate_actual()
        .iter()
        .zip(shifted.values())
        .map(|(i, x)| (i - (x + scn.short_rate)).abs())
        .fold(0.0, f64::max))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    /// `(A - w) t0 <= 1/e`: the rate settles without oscillating.
    StableOrderly,
    /// `(A - w) t0 > 1/e`.
    OscillationRisk,
}

impl Stability {
    pub fn name(self) -> &'static str {
        match self {
            Stability::StableOrderly => "stable",
            Stability::OscillationRisk => "oscillation-risk",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolicyVerdict {
    pub stability: Stability,
    /// `(A - w) t0`.
    pub product: f64,
}

/// Checks `(A - w) t0 <= 1/e`. Unlike [`InterestScenario`], a negative short
/// rate is accepted here.
pub fn policy_check(long_rate: f64, short_rate: f64, t0: f64) -> Result<PolicyVerdict> {
    require_positive("t0", t0)?;
    if !(long_rate > 0.0 && long_rate > short_rate && short_rate.is_finite()) {
        return Err(Error::ScenarioInvalid(format!(
            "need A > 0 and A > w, got A = {long_rate}, w = {short_rate}"
        )));
    }
    let product = (long_rate - short_rate) * t0;
    let stability = if product <= 1.0 / E {
        Stability::StableOrderly
    } else {
        Stability::OscillationRisk
    };
    Ok(PolicyVerdict { stability, product })
}
