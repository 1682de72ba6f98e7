//! Closed-form solution of the canonical equation on `0 <= t <= 3` for the
//! initial function with `beta = a / 2`, and tables comparing it with
//! integrated runs.
//!
//! With `beta = a / 2` the history is `(a/2) e^{(a/2) t}` and each interval
//! of the method of steps integrates in closed form:
//!
//! ```text
//! 0 <= t <= 1:  z = (a/2) e^{(a/2) t}
//! 1 <= t <= 2:  z = z(1) exp[a (t-1) - (e^{(a/2)(t-1)} - 1)]
//! 2 <= t <= 3:  z = z(2) exp{a (t-2) - e^{(a+2)/2} [2/e - (v + 1) e^{-v}]},  v = e^{(a/2)(t-2)}
//! ```
//!
//! Other values of `beta` lead to incomplete gamma functions and are not
//! covered.

use std::f64::consts::E;

use crate::dde::{integrate, Grid, StepMethod};
use crate::error::{require_positive, Error, Result};
use crate::logistic::{DelayLogisticParams, InitialFunction};

/// End of the interval on which the closed form is known.
pub const EXACT_HORIZON: f64 = 3.0;

/// The sample times of the published comparison table: `0, 0.25, ..., 3`.
pub fn table_times() -> Vec<f64> {
    (0..=12).map(|i| i as f64 * 0.25).collect()
}

/// Exact solution for a given `a`; `beta` is fixed to `a / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactSolution {
    a: f64,
}

impl ExactSolution {
    pub fn new(a: f64) -> Result<Self> {
        Ok(ExactSolution {
            a: require_positive("a", a)?,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn beta(&self) -> f64 {
        self.a / 2.0
    }

    /// The initial function the closed form starts from.
    pub fn initial_function(&self) -> InitialFunction {
        InitialFunction::canonical(self.a, self.beta()).expect("a > 0 checked in new")
    }

    pub fn value(&self, t: f64) -> Result<f64> {
        if !(0.0..=EXACT_HORIZON).contains(&t) {
            return Err(Error::DomainViolation {
                what: "exact solution",
                time: t,
                lo: 0.0,
                hi: EXACT_HORIZON,
            });
        }
        let piece = if t <= 1.0 {
            1
        } else if t <= 2.0 {
            2
        } else {
            3
        };
        Ok(self.piece_value(piece, t))
    }

    /// Evaluates the formula of interval `piece` (1, 2 or 3) at `t` without
    /// checking that `t` lies in it. Used to check continuity at the joins.
    pub fn piece_value(&self, piece: u8, t: f64) -> f64 {
        let a = self.a;
        let half = 0.5 * a;
        match piece {
            1 => half * (half * t).exp(),
            2 => {
                let s = t - 1.0;
                self.z1() * (a * s - ((half * s).exp() - 1.0)).exp()
            }
            3 => {
                let s = t - 2.0;
                let v = (half * s).exp();
                let integral = ((a + 2.0) / 2.0).exp() * (-(-v).exp() * (v + 1.0) + 2.0 / E);
                self.z2() * (a * s - integral).exp()
            }
            _ => panic!("piece must be 1, 2 or 3"),
        }
    }

    fn z1(&self) -> f64 {
        let half = 0.5 * self.a;
        half * half.exp()
    }

    fn z2(&self) -> f64 {
        let half = 0.5 * self.a;
        self.z1() * (self.a - (half.exp() - 1.0)).exp()
    }

    /// `z(1), z(2), z(3)` from the closed-form endpoint expressions, written
    /// out independently of [`ExactSolution::piece_value`].
    pub fn boundary_values(&self) -> [f64; 3] {
        let a = self.a;
        let eh = (a / 2.0).exp();
        let z1 = (a / 2.0) * eh;
        let z2 = z1 * (a - (eh - 1.0)).exp();
        let z3 = z2 * (a - ((a + 2.0) / 2.0).exp() * (-(-eh).exp() * (eh + 1.0) + 2.0 / E)).exp();
        [z1, z2, z3]
    }
}

/// Closed-form `z(t)` for `beta = a / 2`.
pub fn exact_value(t: f64, a: f64) -> Result<f64> {
    ExactSolution::new(a)?.value(t)
}

/// One row of an [`ErrorTable`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorRow {
    pub time: f64,
    pub actual: f64,
    pub simulated: f64,
}

impl ErrorRow {
    /// `actual - simulated`.
    pub fn delta(&self) -> f64 {
        self.actual - self.simulated
    }
}

/// Exact versus simulated values at chosen sample times.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorTable {
    pub method: StepMethod,
    pub dt: f64,
    pub a: f64,
    pub rows: Vec<ErrorRow>,
}

impl ErrorTable {
    pub fn row_at(&self, t: f64) -> Option<&ErrorRow> {
        self.rows.iter().find(|r| r.time == t)
    }

    pub fn max_abs_delta(&self) -> f64 {
        self.rows.iter().map(|r| r.delta().abs()).fold(0.0, f64::max)
    }
}

/// Integrates the `beta = a / 2` problem on `[0, 3]` and tabulates it against
/// the closed form.
pub fn error_table(method: StepMethod, dt: f64, a: f64, sample_times: &[f64]) -> Result<ErrorTable> {
    let exact = ExactSolution::new(a)?;
    let params = DelayLogisticParams::new(a)?;
    let grid = Grid::new(dt, 1.0, EXACT_HORIZON)?;
    for &t in sample_times {
        if !(0.0..=EXACT_HORIZON).contains(&t) {
            return Err(Error::DomainViolation {
                what: "error table sample",
                time: t,
                lo: 0.0,
                hi: EXACT_HORIZON,
            });
        }
        if grid.node_index(t).is_none() {
            return Err(Error::OffGrid { time: t, dt });
        }
    }
    let traj = integrate(&params.rhs(), &exact.initial_function(), &grid, method)?;
    let rows = sample_times
        .iter()
        .map(|&t| {
            Ok(ErrorRow {
                time: t,
                actual: exact.value(t)?,
                simulated: traj.value_at(t)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ErrorTable {
        method,
        dt,
        a,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logistic::rhs_canonical;

    #[test]
    fn published_actual_values() {
        assert_eq!(exact_value(0.0, 1.57).unwrap(), 0.785);
        assert!((exact_value(2.0, 1.57).unwrap() - 2.510599321).abs() < 5e-10);
        assert!((exact_value(3.0, 1.57).unwrap() - 1.258411453).abs() < 5e-10);
    }

    #[test]
    fn domain_is_enforced() {
        assert!(matches!(
            exact_value(3.5, 1.0),
            Err(Error::DomainViolation { .. })
        ));
        assert!(exact_value(-0.1, 1.0).is_err());
        assert!(exact_value(1.0, 0.0).is_err());
    }

    #[test]
    fn boundary_expressions_agree_with_pieces() {
        for a in [0.3, 1.0, 1.57, 2.4] {
            let exact = ExactSolution::new(a).unwrap();
            let [z1, z2, z3] = exact.boundary_values();
            assert!((exact.value(1.0).unwrap() - z1).abs() <= 1e-14 * z1);
            assert!((exact.value(2.0).unwrap() - z2).abs() <= 1e-14 * z2);
            assert!((exact.value(3.0).unwrap() - z3).abs() <= 1e-13 * z3);
        }
    }

    #[test]
    fn satisfies_the_equation_on_interior_points() {
        let a = 1.2;
        let exact = ExactSolution::new(a).unwrap();
        let h = 1e-6;
        for t in [1.1, 1.5, 1.9, 2.2, 2.6, 2.95] {
            let fd = (exact.value(t + h).unwrap() - exact.value(t - h).unwrap()) / (2.0 * h);
            let rhs = rhs_canonical(exact.value(t).unwrap(), exact.value(t - 1.0).unwrap(), a);
            assert!((fd - rhs).abs() <= 1e-6 * rhs.abs().max(1.0), "t = {t}");
        }
    }

    #[test]
    fn history_rows_have_zero_delta() {
        for method in [
            StepMethod::ForwardEuler,
            StepMethod::ClassicalRk4,
            StepMethod::HeldDelayRk4,
        ] {
            let table = error_table(method, 1.0 / 64.0, 1.57, &[0.0, 0.5, 1.0]).unwrap();
            for row in &table.rows {
                assert_eq!(row.delta(), 0.0, "{method} t = {}", row.time);
            }
        }
    }

    #[test]
    fn held_rk4_matches_published_delta() {
        let table = error_table(StepMethod::HeldDelayRk4, 1.0 / 512.0, 1.57, &[1.75]).unwrap();
        assert!((table.rows[0].delta() - (-0.001540304)).abs() < 5e-9);
    }

    #[test]
    fn samples_must_be_nodes() {
        assert!(matches!(
            error_table(StepMethod::ForwardEuler, 0.25, 1.0, &[0.3]),
            Err(Error::OffGrid { .. })
        ));
        assert!(matches!(
            error_table(StepMethod::ForwardEuler, 0.25, 1.0, &[3.25]),
            Err(Error::DomainViolation { .. })
        ));
    }
}
