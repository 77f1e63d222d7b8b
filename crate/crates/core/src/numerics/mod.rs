//! Shared numerical machinery.
//!
//! Everything here exists so that the physics modules can be cross-checked
//! through routes that do not share code with the closed forms they verify:
//! central finite differences, adaptive Simpson quadrature, an embedded
//! Runge-Kutta integrator, and bracketed root finding.

pub mod diff;
pub mod ode;
pub mod quad;
pub mod root;
