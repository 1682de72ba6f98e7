//! The delay logistic equation in canonical form,
//!
//! ```text
//! z'(t) = a z(t) - z(t) z(t - 1),
//! ```
//!
//! its exponential family of initial functions, and the changes of variables
//! to physical units (delay `t0`, rate `z / t0`) and to Wright's form
//! (`y = z / a`, `y' = a y - a y y(t - 1)`).

use crate::dde::{integrate, Grid, History, StepMethod, Trajectory};
use crate::error::{require_positive, Error, Result};

/// The growth-delay product `a`, the only parameter of the canonical equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DelayLogisticParams {
    a: f64,
}

impl DelayLogisticParams {
    pub fn new(a: f64) -> Result<Self> {
        Ok(DelayLogisticParams {
            a: require_positive("a", a)?,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// Right-hand side of the canonical equation as a closure.
    pub fn rhs(&self) -> impl Fn(f64, f64, f64) -> f64 + Copy {
        let a = self.a;
        move |_t, z, z_delayed| rhs_canonical(z, z_delayed, a)
    }

    /// Right-hand side of Wright's form as a closure.
    pub fn wright_rhs(&self) -> impl Fn(f64, f64, f64) -> f64 + Copy {
        let a = self.a;
        move |_t, y, y_delayed| rhs_wright(y, y_delayed, a)
    }
}

/// Growth rate `rate` (per unit time) and delay `t0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    rate: f64,
    t0: f64,
}

impl PhysicalParams {
    pub fn new(rate: f64, t0: f64) -> Result<Self> {
        Ok(PhysicalParams {
            rate: require_positive("rate", rate)?,
            t0: require_positive("t0", t0)?,
        })
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn canonical(&self) -> DelayLogisticParams {
        DelayLogisticParams {
            a: self.rate * self.t0,
        }
    }
}

/// `a = rate * t0`.
pub fn canonical_params(rate: f64, t0: f64) -> Result<DelayLogisticParams> {
    Ok(PhysicalParams::new(rate, t0)?.canonical())
}

/// `a z - z z_delayed`.
#[inline]
pub fn rhs_canonical(z: f64, z_delayed: f64, a: f64) -> f64 {
    a * z - z * z_delayed
}

/// `a y - a y y_delayed`.
#[inline]
pub fn rhs_wright(y: f64, y_delayed: f64, a: f64) -> f64 {
    a * y - a * y * y_delayed
}

/// The exponential initial function `beta * exp(rate * t)`.
///
/// In canonical form `rate = a - beta`; the physical analog used by the
/// interest model has `rate = A - w - beta`. Either way the function starts
/// at `beta` and satisfies the junction condition at the end of the delay
/// interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialFunction {
    beta: f64,
    rate: f64,
}

impl InitialFunction {
    pub fn new(beta: f64, rate: f64) -> Result<Self> {
        require_positive("beta", beta)?;
        if !rate.is_finite() {
            return Err(Error::ScenarioInvalid(format!("non-finite rate {rate}")));
        }
        Ok(InitialFunction { beta, rate })
    }

    /// `beta * exp((a - beta) t)`.
    pub fn canonical(a: f64, beta: f64) -> Result<Self> {
        require_positive("a", a)?;
        Self::new(beta, a - beta)
    }

    /// `beta * exp((long_rate - short_rate - beta) t)`.
    pub fn physical(long_rate: f64, short_rate: f64, beta: f64) -> Result<Self> {
        Self::new(beta, long_rate - short_rate - beta)
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    /// The same function multiplied by `factor`, for `z -> z / a` style
    /// rescalings. Not restricted to positive factors.
    pub fn scaled(&self, factor: f64) -> ScaledHistory<Self> {
        ScaledHistory {
            inner: *self,
            factor,
        }
    }
}

impl History for InitialFunction {
    fn value(&self, t: f64) -> f64 {
        self.beta * (self.rate * t).exp()
    }

    fn derivative(&self, t: f64) -> f64 {
        self.rate * self.value(t)
    }
}

/// `factor * inner(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledHistory<H> {
    inner: H,
    factor: f64,
}

impl<H: History> ScaledHistory<H> {
    pub fn new(inner: H, factor: f64) -> Self {
        ScaledHistory { inner, factor }
    }
}

impl<H: History> History for ScaledHistory<H> {
    fn value(&self, t: f64) -> f64 {
        self.factor * self.inner.value(t)
    }

    fn derivative(&self, t: f64) -> f64 {
        self.factor * self.inner.derivative(t)
    }
}

/// `Φ(t) = beta * exp((a - beta) t)` on the canonical history interval
/// `[0, 1]`.
pub fn phi(t: f64, a: f64, beta: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::DomainViolation {
            what: "initial function",
            time: t,
            lo: 0.0,
            hi: 1.0,
        });
    }
    Ok(InitialFunction::canonical(a, beta)?.value(t))
}

/// Junction residual `Φ'(1) - (a - Φ(0)) Φ(1)`.
///
/// The condition is imposed at the end of the history interval only: the
/// derivative the history arrives with must equal the one the equation
/// produces at `t = 1`, where the delayed state is `Φ(0)`. A zero residual
/// means the solution continues with a continuous derivative.
pub fn junction_residual<H: History + ?Sized>(init: &H, a: f64) -> f64 {
    init.derivative(1.0) - (a - init.value(0.0)) * init.value(1.0)
}

/// Integrates the canonical equation from the exponential history with unit
/// delay.
pub fn simulate_canonical(
    a: f64,
    beta: f64,
    dt: f64,
    horizon: f64,
    method: StepMethod,
) -> Result<Trajectory> {
    let params = DelayLogisticParams::new(a)?;
    let init = InitialFunction::canonical(a, beta)?;
    let grid = Grid::new(dt, 1.0, horizon)?;
    integrate(&params.rhs(), &init, &grid, method)
}

/// Canonical trajectory (unit delay) to physical units: times scale by `t0`,
/// values by `1 / t0`.
pub fn to_physical(traj: &Trajectory, t0: f64) -> Result<Trajectory> {
    require_positive("t0", t0)?;
    Ok(traj.rescaled(1.0 / t0, t0))
}

/// Inverse of [`to_physical`].
pub fn from_physical(traj: &Trajectory, t0: f64) -> Result<Trajectory> {
    require_positive("t0", t0)?;
    Ok(traj.rescaled(t0, 1.0 / t0))
}

/// `y = z / a`. The fixed point `z = a` maps to `y = 1`.
pub fn wright_from_canonical(traj: &Trajectory, a: f64) -> Result<Trajectory> {
    require_positive("a", a)?;
    Ok(traj.rescaled(1.0 / a, 1.0))
}

/// `z = a y`.
pub fn canonical_from_wright(traj: &Trajectory, a: f64) -> Result<Trajectory> {
    require_positive("a", a)?;
    Ok(traj.rescaled(a, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dde::ConstantHistory;

    #[test]
    fn canonical_params_multiply() {
        assert!((canonical_params(0.12, 14.0).unwrap().a() - 1.68).abs() < 1e-12);
        assert!((canonical_params(0.10, 14.0).unwrap().a() - 1.4).abs() < 1e-12);
        assert_eq!(canonical_params(1.0, 1.0).unwrap().a(), 1.0);
        assert!(matches!(
            canonical_params(0.0, 14.0),
            Err(Error::NonPositive { .. })
        ));
        assert!(matches!(
            canonical_params(0.1, -1.0),
            Err(Error::NonPositive { .. })
        ));
        assert!(DelayLogisticParams::new(-0.5).is_err());
    }

    #[test]
    fn phi_values() {
        assert_eq!(phi(0.0, 1.3, 0.4).unwrap(), 0.4);
        assert!((phi(1.0, 1.57, 0.785).unwrap() - 1.721039448).abs() < 5e-10);
        assert!((phi(0.5, 1.57, 0.785).unwrap() - 1.162332124).abs() < 5e-10);
        assert!(matches!(
            phi(1.5, 1.57, 0.785),
            Err(Error::DomainViolation { .. })
        ));
        assert!(phi(-0.1, 1.57, 0.785).is_err());
    }

    #[test]
    fn rhs_arithmetic() {
        assert_eq!(rhs_canonical(0.785, 0.785, 1.57), 0.785 * (1.57 - 0.785));
        assert!((rhs_canonical(0.785, 0.785, 1.57) - 0.616225).abs() < 1e-15);
        assert_eq!(rhs_canonical(0.0, 5.0, 1.0), 0.0);
        assert_eq!(rhs_canonical(1.3, 1.3, 1.3), 0.0);
    }

    #[test]
    fn junction_residual_cases() {
        let init = InitialFunction::canonical(1.57, 0.3).unwrap();
        assert!(junction_residual(&init, 1.57).abs() < 1e-12);
        assert_eq!(junction_residual(&ConstantHistory(0.9), 0.9), 0.0);
        let (a, beta) = (1.2, 0.5);
        let r = junction_residual(&ConstantHistory(beta), a);
        assert!((r + (a - beta) * beta).abs() < 1e-15);
    }

    #[test]
    fn physical_transform_of_fixed_point() {
        let grid = Grid::new(1.0 / 64.0, 1.0, 5.0).unwrap();
        let p = DelayLogisticParams::new(1.68).unwrap();
        let traj = integrate(&p.rhs(), &ConstantHistory(1.68), &grid, StepMethod::ForwardEuler)
            .unwrap();
        let phys = to_physical(&traj, 14.0).unwrap();
        assert!(phys.values().iter().all(|v| (v - 0.12).abs() < 1e-15));
        assert_eq!(phys.grid().delay(), 14.0);
        assert_eq!(phys.grid().dt(), 14.0 / 64.0);
        assert_eq!(phys.grid().len(), grid.len());

        let same = to_physical(&traj, 1.0).unwrap();
        assert_eq!(same, traj);
    }

    #[test]
    fn power_of_two_round_trips_exact() {
        let grid = Grid::new(1.0 / 64.0, 1.0, 6.0).unwrap();
        let p = DelayLogisticParams::new(1.5).unwrap();
        let init = InitialFunction::canonical(1.5, 0.2).unwrap();
        let traj = integrate(&p.rhs(), &init, &grid, StepMethod::ClassicalRk4).unwrap();
        let back = from_physical(&to_physical(&traj, 16.0).unwrap(), 16.0).unwrap();
        assert_eq!(back, traj);
        let back = canonical_from_wright(&wright_from_canonical(&traj, 2.0).unwrap(), 2.0).unwrap();
        assert_eq!(back, traj);
    }

    #[test]
    fn wright_maps_fixed_point_to_one() {
        let grid = Grid::new(1.0 / 16.0, 1.0, 3.0).unwrap();
        let p = DelayLogisticParams::new(0.7).unwrap();
        let traj = integrate(&p.rhs(), &ConstantHistory(0.7), &grid, StepMethod::ForwardEuler)
            .unwrap();
        let y = wright_from_canonical(&traj, 0.7).unwrap();
        assert!(y.values().iter().all(|&v| v == 1.0));
        assert!(wright_from_canonical(&traj, 0.0).is_err());
    }

    #[test]
    fn wright_integration_matches_transform() {
        let a = 1.57;
        let grid = Grid::new(1.0 / 512.0, 1.0, 3.0).unwrap();
        let p = DelayLogisticParams::new(a).unwrap();
        let init = InitialFunction::canonical(a, a / 2.0).unwrap();
        let z = integrate(&p.rhs(), &init, &grid, StepMethod::ForwardEuler).unwrap();
        let y_direct =
            integrate(&p.wright_rhs(), &init.scaled(1.0 / a), &grid, StepMethod::ForwardEuler)
                .unwrap();
        let y = wright_from_canonical(&z, a).unwrap();
        let max = y
            .values()
            .iter()
            .zip(y_direct.values())
            .map(|(u, v)| (u - v).abs())
            .fold(0.0, f64::max);
        assert!(max <= 1e-12, "max deviation {max:e}");
    }

    #[test]
    fn initial_function_validates() {
        assert!(InitialFunction::canonical(1.0, 0.0).is_err());
        assert!(InitialFunction::canonical(0.0, 0.5).is_err());
        // beta >= a gives a decaying history, which is allowed.
        let f = InitialFunction::canonical(0.5, 2.0).unwrap();
        assert!(f.value(1.0) < f.value(0.0));
    }
}
