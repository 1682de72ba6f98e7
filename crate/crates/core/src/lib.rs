//! Numerical laboratory for the delay logistic equation
//!
//! ```text
//! z'(t) = a z(t) - z(t) z(t - 1)
//! ```
//!
//! and for a model of long-term interest rates that reduces to it.
//!
//! - [`dde`]: fixed-step method-of-steps integration.
//! - [`logistic`]: the canonical equation, its initial functions and the
//!   changes of variables to physical units and Wright's form.
//! - [`exact`]: the closed-form solution on `[0, 3]` used to check the
//!   integrators.
//! - [`regime`]: predicted and detected regimes and the search for the onset
//!   of sustained oscillation.
//! - [`econ`]: the interest rate and inflation layer.
//! - [`cli`]: the `delay-logistic` command-line front end.

pub mod cli;
pub mod dde;
pub mod econ;
mod error;
pub mod exact;
pub mod logistic;
pub mod regime;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/integrator.md")]
    mod integrator {}
    #[doc = include_str!("../../../book/src/forms.md")]
    mod forms {}
    #[doc = include_str!("../../../book/src/exact.md")]
    mod exact {}
    #[doc = include_str!("../../../book/src/regimes.md")]
    mod regimes {}
    #[doc = include_str!("../../../book/src/interest.md")]
    mod interest {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
