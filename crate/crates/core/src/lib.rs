//! Statistical thermodynamics of the harmonic oscillator with zero-point
//! energy.
//!
//! A single temperature-independent energy `E0 = hbar omega / 2` is enough
//! to pin down the entire equilibrium description of the oscillator, and
//! this crate implements that chain end to end, each link verifiable
//! against an independent numerical route:
//!
//! - [`spectrum`]: closed-form mean energy, partition function, entropy and
//!   heat capacity, plus the Wien scaling identity.
//! - [`variance_law`]: the quadratic variance ansatz `sigma^2(U)` whose
//!   solution is the Planck law, with an adaptive Runge-Kutta integration
//!   of the defining ODE as the cross-check, and the Wien-consistency
//!   identity that forces the linear coefficient to vanish.
//! - [`discrete_spectrum`]: the geometric level structure hidden in the
//!   continuous description; level sums reproduce every closed form.
//! - [`moments`]: higher energy moments and the derivative recurrence
//!   connecting them.
//! - [`statistical_ensemble`]: the exponential total-energy distribution
//!   and the split of fluctuations into thermal and zero-point parts.
//! - [`phase_space`]: the Gaussian phase-space density and the Heisenberg
//!   bound it implies.
//! - [`historical`]: the entropy-curvature interpolation route and the
//!   wave/particle fluctuation split, reproduced numerically.
//! - [`montecarlo`]: seeded, bit-reproducible samplers for each
//!   distribution, with [`gof`] providing the Kolmogorov-Smirnov test.
//! - [`verify`]: the full cross-module invariant suite as data.

pub mod discrete_spectrum;
pub mod error;
pub mod gof;
pub mod historical;
pub mod moments;
pub mod montecarlo;
pub mod numerics;
pub mod phase_space;
pub mod spectrum;
pub mod statistical_ensemble;
pub mod variance_law;
pub mod verify;

pub use error::{Error, Result};
pub use spectrum::{OscillatorModel, ThermoPoint};
