//! Amplitude-encoded unit step functions on a state-vector simulator.
//!
//! The crate builds small circuits, simulates them exactly, and reads out
//! conditional probabilities:
//!
//! - [`circuit`]: gate set, register-aware circuit IR, Toffoli variants,
//!   uniformly controlled `Ry`, `√X`/`Rz` rewriting and OpenQASM 2.0 export.
//! - [`sim`]: state vectors, dense reference unitaries, post-selection and
//!   seeded shot sampling.
//! - [`gearbox`]: the repeat-until-success step circuit and its
//!   compositions (rescaled plateau, ReLU-like activation).
//! - [`arith`]: subtraction, addition and composition of loaded values.
//! - [`fourier`]: Fourier fits of the inverse success probability, their
//!   `cos²` form and circuit compilation.
//! - [`validate`]: the named self-check suite used by `stepgear validate`.
//!
//! ```
//! use stepgear::gearbox::{gearbox_experiment, GearboxSpec};
//!
//! let spec = GearboxSpec::new(1, std::f64::consts::FRAC_PI_3)?;
//! let r = gearbox_experiment(&spec)?.evaluate()?;
//! assert!((r.omega - 0.9).abs() < 1e-12);
//! assert!((r.success_probability - 0.625).abs() < 1e-12);
//! # Ok::<(), stepgear::Error>(())
//! ```

pub mod arith;
pub mod circuit;
mod error;
pub mod fourier;
pub mod gearbox;
pub mod sim;
pub mod validate;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/simulator.md")]
    mod simulator {}
    #[doc = include_str!("../../../book/src/circuits.md")]
    mod circuits {}
    #[doc = include_str!("../../../book/src/gearbox.md")]
    mod gearbox {}
    #[doc = include_str!("../../../book/src/arithmetic.md")]
    mod arithmetic {}
    #[doc = include_str!("../../../book/src/fourier.md")]
    mod fourier {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/validation.md")]
    mod validation {}
}
