//! Fixed-step method-of-steps integration for scalar equations with one
//! constant delay,
//!
//! ```text
//! z'(t) = f(t, z(t), z(t - delay)),    z(t) = history(t) on [0, delay].
//! ```
//!
//! The history is sampled onto the grid nodes of the first delay interval.
//! Every later node is advanced by the selected [`StepMethod`], reading the
//! delayed state out of the already-computed part of the trajectory.
//!
//! The step must divide the delay, so `t_k - delay` is always the grid node
//! `k - nodes_per_delay` and node lookups never interpolate.

use crate::error::{require_positive, Error, Result};

/// Relative tolerance used to decide that `delay / dt` is an integer and
/// that a query time sits on a grid node.
const ALIGN_TOL: f64 = 1e-9;

/// Uniform time grid `t_k = k * dt`, `k = 0..len`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    dt: f64,
    delay: f64,
    horizon: f64,
    nodes_per_delay: usize,
    len: usize,
}

impl Grid {
    /// Builds a grid, rejecting steps that do not divide the delay.
    pub fn new(dt: f64, delay: f64, horizon: f64) -> Result<Self> {
        require_positive("dt", dt)?;
        require_positive("delay", delay)?;
        require_positive("horizon", horizon)?;
        if horizon < delay {
            return Err(Error::HorizonTooShort { horizon, delay });
        }
        let ratio = delay / dt;
        let nodes_per_delay = ratio.round();
        if nodes_per_delay < 1.0 || (ratio - nodes_per_delay).abs() > ALIGN_TOL * ratio {
            return Err(Error::MisalignedStep { dt, delay });
        }
        let len = (horizon / dt).round() as usize + 1;
        Ok(Grid {
            dt,
            delay,
            horizon,
            nodes_per_delay: nodes_per_delay as usize,
            len,
        })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn delay(&self) -> f64 {
        self.delay
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn nodes_per_delay(&self) -> usize {
        self.nodes_per_delay
    }

    /// Number of nodes, including `t = 0`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn time(&self, k: usize) -> f64 {
        k as f64 * self.dt
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len).map(move |k| self.time(k))
    }

    /// Index of the node at `t`, if `t` is one.
    pub fn node_index(&self, t: f64) -> Option<usize> {
        let s = t / self.dt;
        let k = s.round();
        if k < 0.0 || (s - k).abs() > ALIGN_TOL * s.abs().max(1.0) {
            return None;
        }
        let k = k as usize;
        (k < self.len).then_some(k)
    }

    /// Same grid with time stretched by `factor` (used by unit changes).
    pub(crate) fn scaled(&self, factor: f64) -> Grid {
        Grid {
            dt: self.dt * factor,
            delay: self.delay * factor,
            horizon: self.horizon * factor,
            ..*self
        }
    }
}

/// How a step from `t_k` to `t_{k+1}` is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepMethod {
    /// First order. Delayed values are read at grid nodes only.
    ForwardEuler,
    /// Classical fourth-order Runge-Kutta. The half-step delayed value comes
    /// from a cubic Hermite interpolant of the stored values and derivatives.
    ClassicalRk4,
    /// Classical Runge-Kutta stages with the delayed value held at the step's
    /// starting node `z(t_k - delay)` for all four stages. This is the
    /// sample-and-hold delay lookup of stock-and-flow simulation tools. The
    /// held lookup makes the method first order overall.
    HeldDelayRk4,
}

impl StepMethod {
    pub fn name(self) -> &'static str {
        match self {
            StepMethod::ForwardEuler => "euler",
            StepMethod::ClassicalRk4 => "rk4",
            StepMethod::HeldDelayRk4 => "held-rk4",
        }
    }
}

impl std::str::FromStr for StepMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "euler" => Ok(StepMethod::ForwardEuler),
            "rk4" => Ok(StepMethod::ClassicalRk4),
            "held-rk4" => Ok(StepMethod::HeldDelayRk4),
            other => Err(format!(
                "unknown step method `{other}` (expected euler, rk4 or held-rk4)"
            )),
        }
    }
}

impl std::fmt::Display for StepMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Right-hand side `f(t, z, z_delayed)`.
pub trait DelayRhs {
    fn eval(&self, t: f64, z: f64, z_delayed: f64) -> f64;
}

impl<F> DelayRhs for F
where
    F: Fn(f64, f64, f64) -> f64,
{
    #[inline]
    fn eval(&self, t: f64, z: f64, z_delayed: f64) -> f64 {
        self(t, z, z_delayed)
    }
}

/// A prescribed solution on the first delay interval, with its derivative.
pub trait History {
    fn value(&self, t: f64) -> f64;
    fn derivative(&self, t: f64) -> f64;
}

/// Constant history `z(t) = c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantHistory(pub f64);

impl History for ConstantHistory {
    fn value(&self, _t: f64) -> f64 {
        self.0
    }

    fn derivative(&self, _t: f64) -> f64 {
        0.0
    }
}

/// History given by a pair of closures (value, derivative).
pub struct FnHistory<V, D> {
    value: V,
    derivative: D,
}

impl<V, D> FnHistory<V, D>
where
    V: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    pub fn new(value: V, derivative: D) -> Self {
        FnHistory { value, derivative }
    }
}

impl<V, D> History for FnHistory<V, D>
where
    V: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    fn value(&self, t: f64) -> f64 {
        (self.value)(t)
    }

    fn derivative(&self, t: f64) -> f64 {
        (self.derivative)(t)
    }
}

impl<H: History + ?Sized> History for &H {
    fn value(&self, t: f64) -> f64 {
        (**self).value(t)
    }

    fn derivative(&self, t: f64) -> f64 {
        (**self).derivative(t)
    }
}

/// Sampled solution on a [`Grid`], with the right-hand side stored at every
/// node.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    grid: Grid,
    values: Vec<f64>,
    derivs: Vec<f64>,
}

impl Trajectory {
    pub(crate) fn from_parts(grid: Grid, values: Vec<f64>, derivs: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        debug_assert_eq!(derivs.len(), grid.len());
        Trajectory {
            grid,
            values,
            derivs,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn derivs(&self) -> &[f64] {
        &self.derivs
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.grid.times()
    }

    /// `(t_k, z_k)` pairs in time order.
    pub fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.grid.times().zip(self.values.iter().copied())
    }

    /// Value at a grid node.
    pub fn value_at(&self, t: f64) -> Result<f64> {
        self.grid
            .node_index(t)
            .map(|k| self.values[k])
            .ok_or(Error::OffGrid {
                time: t,
                dt: self.grid.dt,
            })
    }

    pub fn last_value(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// Delayed lookup against the whole trajectory.
    pub fn delayed_value(&self, query: f64, method: StepMethod) -> Result<f64> {
        self.view(self.len() - 1).delayed_value(query, method)
    }

    pub fn view(&self, frontier: usize) -> PartialTrajectory<'_> {
        PartialTrajectory {
            grid: &self.grid,
            values: &self.values,
            derivs: &self.derivs,
            frontier,
        }
    }

    /// Adds `offset` to every value.
    pub(crate) fn offset(&self, offset: f64) -> Trajectory {
        Trajectory {
            grid: self.grid,
            values: self.values.iter().map(|v| v + offset).collect(),
            derivs: self.derivs.clone(),
        }
    }

    /// Applies an affine change of variables `z -> z * value_scale` and
    /// `t -> t * time_scale`, keeping derivatives consistent.
    pub(crate) fn rescaled(&self, value_scale: f64, time_scale: f64) -> Trajectory {
        let deriv_scale = value_scale / time_scale;
        Trajectory {
            grid: self.grid.scaled(time_scale),
            values: self.values.iter().map(|v| v * value_scale).collect(),
            derivs: self.derivs.iter().map(|d| d * deriv_scale).collect(),
        }
    }
}

/// A trajectory whose nodes `0..=frontier` are known.
#[derive(Debug, Clone, Copy)]
pub struct PartialTrajectory<'a> {
    grid: &'a Grid,
    values: &'a [f64],
    derivs: &'a [f64],
    frontier: usize,
}

impl<'a> PartialTrajectory<'a> {
    /// `values` and `derivs` must be filled up to and including `frontier`.
    pub fn new(grid: &'a Grid, values: &'a [f64], derivs: &'a [f64], frontier: usize) -> Self {
        assert!(frontier < values.len() && frontier < derivs.len());
        PartialTrajectory {
            grid,
            values,
            derivs,
            frontier,
        }
    }

    /// State at an already-computed time.
    ///
    /// Node queries return the stored sample exactly. Between nodes,
    /// [`StepMethod::HeldDelayRk4`] returns the sample at the preceding node;
    /// the other methods evaluate the cubic Hermite interpolant of the two
    /// bracketing nodes.
    pub fn delayed_value(&self, query: f64, method: StepMethod) -> Result<f64> {
        let dt = self.grid.dt;
        let frontier_time = self.grid.time(self.frontier);
        if query < 0.0 {
            return Err(Error::DomainViolation {
                what: "delayed lookup",
                time: query,
                lo: 0.0,
                hi: frontier_time,
            });
        }
        let s = query / dt;
        let nearest = s.round();
        if (s - nearest).abs() <= ALIGN_TOL * s.max(1.0) {
            let k = nearest as usize;
            if k > self.frontier {
                return Err(Error::FutureLookup {
                    query,
                    frontier: frontier_time,
                });
            }
            return Ok(self.values[k]);
        }
        let j = s.floor() as usize;
        if method == StepMethod::HeldDelayRk4 {
            if j > self.frontier {
                return Err(Error::FutureLookup {
                    query,
                    frontier: frontier_time,
                });
            }
            return Ok(self.values[j]);
        }
        if j + 1 > self.frontier {
            return Err(Error::FutureLookup {
                query,
                frontier: frontier_time,
            });
        }
        let theta = s - j as f64;
        Ok(hermite(
            self.values[j],
            self.derivs[j],
            self.values[j + 1],
            self.derivs[j + 1],
            dt,
            theta,
        ))
    }
}

/// Cubic Hermite interpolant on `[x0, x0 + h]` at `x0 + theta * h`.
#[inline]
pub fn hermite(v0: f64, d0: f64, v1: f64, d1: f64, h: f64, theta: f64) -> f64 {
    let t2 = theta * theta;
    let t3 = t2 * theta;
    let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    let h10 = t3 - 2.0 * t2 + theta;
    let h01 = -2.0 * t3 + 3.0 * t2;
    let h11 = t3 - t2;
    h00 * v0 + h10 * h * d0 + h01 * v1 + h11 * h * d1
}

/// Integrates `z' = f(t, z, z(t - delay))` over the grid.
///
/// Nodes with `t_k <= delay` are sampled from `init`; `derivs` holds the
/// history's derivative there (and the right-hand side at `t = delay`
/// onwards).
pub fn integrate<R, H>(rhs: &R, init: &H, grid: &Grid, method: StepMethod) -> Result<Trajectory>
where
    R: DelayRhs + ?Sized,
    H: History + ?Sized,
{
    let n = grid.nodes_per_delay();
    let len = grid.len();
    let dt = grid.dt();
    let half = 0.5 * dt;
    let mut values = vec![0.0; len];
    let mut derivs = vec![0.0; len];

    for k in 0..=n.min(len - 1) {
        let t = grid.time(k);
        let v = init.value(t);
        if !v.is_finite() {
            return Err(Error::NonFinite { time: t });
        }
        values[k] = v;
        derivs[k] = init.derivative(t);
    }

    for k in n..len {
        let t = grid.time(k);
        let z = values[k];
        let lagged = values[k - n];
        let k1 = rhs.eval(t, z, lagged);
        derivs[k] = k1;
        if k + 1 == len {
            break;
        }
        let next = match method {
            StepMethod::ForwardEuler => z + dt * k1,
            StepMethod::ClassicalRk4 => {
                let view = PartialTrajectory::new(grid, &values, &derivs, k);
                let lagged_mid = view.delayed_value(t + half - grid.delay(), method)?;
                let lagged_end = values[k + 1 - n];
                let k2 = rhs.eval(t + half, z + half * k1, lagged_mid);
                let k3 = rhs.eval(t + half, z + half * k2, lagged_mid);
                let k4 = rhs.eval(t + dt, z + dt * k3, lagged_end);
                z + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            }
            StepMethod::HeldDelayRk4 => {
                let k2 = rhs.eval(t + half, z + half * k1, lagged);
                let k3 = rhs.eval(t + half, z + half * k2, lagged);
                let k4 = rhs.eval(t + dt, z + dt * k3, lagged);
                z + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            }
        };
        if !next.is_finite() {
            return Err(Error::NonFinite {
                time: grid.time(k + 1),
            });
        }
        values[k + 1] = next;
    }

    Ok(Trajectory::from_parts(*grid, values, derivs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn logistic(a: f64) -> impl Fn(f64, f64, f64) -> f64 {
        move |_t, z, zd| a * z - z * zd
    }

    #[test]
    fn grid_counts_nodes() {
        let g = Grid::new(1.0 / 512.0, 1.0, 3.0).unwrap();
        assert_eq!(g.len(), 1537);
        assert_eq!(g.nodes_per_delay(), 512);

        let g = Grid::new(0.5, 1.0, 1.0).unwrap();
        assert_eq!(g.times().collect::<Vec<_>>(), vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn grid_rejects_bad_input() {
        assert!(matches!(
            Grid::new(0.3, 1.0, 3.0),
            Err(Error::MisalignedStep { .. })
        ));
        assert!(matches!(
            Grid::new(0.0, 1.0, 3.0),
            Err(Error::NonPositive { name: "dt", .. })
        ));
        assert!(matches!(
            Grid::new(0.1, -1.0, 3.0),
            Err(Error::NonPositive { name: "delay", .. })
        ));
        assert!(matches!(
            Grid::new(0.1, 1.0, 0.5),
            Err(Error::HorizonTooShort { .. })
        ));
        // Step longer than the delay.
        assert!(matches!(
            Grid::new(2.0, 1.0, 4.0),
            Err(Error::MisalignedStep { .. })
        ));
    }

    #[test]
    fn grid_accepts_rounding_noise_in_ratio() {
        // 0.1 is not exact in binary, 1/0.1 is 10 within an ulp.
        let g = Grid::new(0.1, 1.0, 2.0).unwrap();
        assert_eq!(g.nodes_per_delay(), 10);
        assert_eq!(g.len(), 21);
    }

    #[test]
    fn fixed_point_stays_put() {
        let grid = Grid::new(1.0 / 64.0, 1.0, 20.0).unwrap();
        for method in [
            StepMethod::ForwardEuler,
            StepMethod::ClassicalRk4,
            StepMethod::HeldDelayRk4,
        ] {
            let traj = integrate(&logistic(0.35), &ConstantHistory(0.35), &grid, method).unwrap();
            assert!(traj.values().iter().all(|&v| v == 0.35), "{method}");
        }
    }

    #[test]
    fn history_is_sampled_not_integrated() {
        let grid = Grid::new(1.0 / 8.0, 1.0, 2.0).unwrap();
        let init = FnHistory::new(|t: f64| 1.0 + t * t, |t: f64| 2.0 * t);
        let traj = integrate(&logistic(1.0), &init, &grid, StepMethod::ForwardEuler).unwrap();
        for k in 0..=8 {
            let t = grid.time(k);
            assert_eq!(traj.values()[k], 1.0 + t * t);
        }
        for k in 0..8 {
            assert_eq!(traj.derivs()[k], 2.0 * grid.time(k));
        }
    }

    #[test]
    fn derivs_hold_rhs_after_history() {
        let a = 1.2;
        let grid = Grid::new(1.0 / 16.0, 1.0, 3.0).unwrap();
        let traj = integrate(&logistic(a), &ConstantHistory(0.5), &grid, StepMethod::ClassicalRk4)
            .unwrap();
        let n = grid.nodes_per_delay();
        for k in n..grid.len() {
            let z = traj.values()[k];
            let zd = traj.values()[k - n];
            assert_eq!(traj.derivs()[k], a * z - z * zd);
        }
    }

    #[test]
    fn euler_step_by_hand() {
        let grid = Grid::new(0.5, 1.0, 2.0).unwrap();
        let traj = integrate(&logistic(2.0), &ConstantHistory(1.0), &grid, StepMethod::ForwardEuler)
            .unwrap();
        // z(1.5) = 1 + 0.5 * (2 - 1) = 1.5; z(2) = 1.5 + 0.5 * 1.5 * (2 - 1) = 2.25
        assert_eq!(traj.values(), &[1.0, 1.0, 1.0, 1.5, 2.25]);
    }

    #[test]
    fn overflow_reports_failing_time() {
        let grid = Grid::new(0.5, 1.0, 200.0).unwrap();
        let err = integrate(
            &|_t: f64, z: f64, _zd: f64| z * z,
            &ConstantHistory(2.0),
            &grid,
            StepMethod::ForwardEuler,
        )
        .unwrap_err();
        match err {
            Error::NonFinite { time } => assert!(time > 1.0 && time < 200.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn node_lookup_is_exact() {
        let grid = Grid::new(1.0 / 32.0, 1.0, 4.0).unwrap();
        let traj = integrate(&logistic(1.5), &ConstantHistory(0.3), &grid, StepMethod::ClassicalRk4)
            .unwrap();
        for k in [0, 7, 32, 100, 128] {
            let v = traj
                .delayed_value(grid.time(k), StepMethod::ClassicalRk4)
                .unwrap();
            assert_eq!(v.to_bits(), traj.values()[k].to_bits());
        }
    }

    #[test]
    fn hermite_on_flat_data_is_flat() {
        let grid = Grid::new(0.25, 1.0, 1.0).unwrap();
        let values = [3.0; 5];
        let derivs = [0.0; 5];
        let view = PartialTrajectory::new(&grid, &values, &derivs, 4);
        assert_eq!(view.delayed_value(0.375, StepMethod::ClassicalRk4).unwrap(), 3.0);
        assert_eq!(hermite(3.0, 0.0, 3.0, 0.0, 0.25, 0.5), 3.0);
    }

    #[test]
    fn hermite_reproduces_cubics() {
        let f = |t: f64| 1.0 - 2.0 * t + 0.5 * t * t * t;
        let df = |t: f64| -2.0 + 1.5 * t * t;
        let (x0, h) = (0.7, 0.3);
        for theta in [0.1, 0.5, 0.9] {
            let got = hermite(f(x0), df(x0), f(x0 + h), df(x0 + h), h, theta);
            assert!((got - f(x0 + theta * h)).abs() < 1e-14);
        }
    }

    #[test]
    fn held_lookup_uses_preceding_node() {
        let grid = Grid::new(0.25, 1.0, 1.0).unwrap();
        let values = [0.0, 1.0, 2.0, 3.0, 4.0];
        let derivs = [4.0; 5];
        let view = PartialTrajectory::new(&grid, &values, &derivs, 4);
        assert_eq!(view.delayed_value(0.6, StepMethod::HeldDelayRk4).unwrap(), 2.0);
        // Linear data is reproduced exactly by the Hermite cubic.
        let v = view.delayed_value(0.6, StepMethod::ClassicalRk4).unwrap();
        assert!((v - 2.4).abs() < 1e-14);
    }

    #[test]
    fn lookup_beyond_frontier_fails() {
        let grid = Grid::new(0.25, 1.0, 2.0).unwrap();
        let values = [1.0; 9];
        let derivs = [0.0; 9];
        let view = PartialTrajectory::new(&grid, &values, &derivs, 4);
        assert!(matches!(
            view.delayed_value(1.25, StepMethod::ForwardEuler),
            Err(Error::FutureLookup { .. })
        ));
        assert!(matches!(
            view.delayed_value(1.1, StepMethod::ClassicalRk4),
            Err(Error::FutureLookup { .. })
        ));
        assert!(view.delayed_value(1.0, StepMethod::ClassicalRk4).is_ok());
    }

    #[test]
    fn integration_is_deterministic() {
        let grid = Grid::new(1.0 / 128.0, 1.0, 30.0).unwrap();
        let init = FnHistory::new(|t: f64| 0.1 * (1.5 * t).exp(), |t: f64| 0.15 * (1.5 * t).exp());
        let first = integrate(&logistic(1.6), &init, &grid, StepMethod::ClassicalRk4).unwrap();
        let second = integrate(&logistic(1.6), &init, &grid, StepMethod::ClassicalRk4).unwrap();
        let bits = |t: &Trajectory| t.values().iter().map(|v| v.to_bits()).collect::<Vec<_>>();
        assert_eq!(bits(&first), bits(&second));
    }

    #[test]
    fn step_method_parses() {
        for m in [
            StepMethod::ForwardEuler,
            StepMethod::ClassicalRk4,
            StepMethod::HeldDelayRk4,
        ] {
            assert_eq!(m.name().parse::<StepMethod>().unwrap(), m);
        }
        assert!("midpoint".parse::<StepMethod>().is_err());
    }
}
