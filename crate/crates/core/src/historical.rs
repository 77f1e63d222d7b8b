//! The interpolation route to the thermal law, reconstructed numerically.
//!
//! The high-temperature limit gives an entropy curvature `-k / U_T^2`, the
//! Wien regime gives `-k / (2 E0 U_T)`; interpolating the two as
//! `d2S/dU_T^2 = -k / (U_T^2 + 2 E0 U_T)` and inverting `dS/dU_T = 1/T`
//! yields the thermal law `U_T = 2 E0 / (e^{2 E0 beta} - 1)`. This module
//! performs that inversion the hard way -- quadrature of the curvature plus
//! root finding, anchored only by the Wien-regime slope at a tiny reference
//! energy -- so the closed form can be checked against it.
//!
//! The same curvature, inverted through the fluctuation-dissipation
//! relation, is the energy-variance split `U_T^2 + 2 E0 U_T` whose wave and
//! particle terms famously coexist; both terms are reported separately.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{quad, root};
use crate::spectrum;

/// Reference thermal energy for the integration anchor, as a fraction of
/// `e0`. The anchor uses the Wien-regime slope, whose bias at `U_ref` is of
/// order `U_ref / (4 e0^2)` and propagates to the reconstructed energy
/// amplified by the variance; 1e-12 keeps that error two orders below the
/// 1e-8 reconstruction target even at the hot end of the grid.
const U_REF_FRACTION: f64 = 1e-12;

/// Entropy curvature of the interpolation: `-k / (u_t^2 + 2 e0 u_t)`, k = 1.
pub fn planck_d2s(u_t: f64, e0: f64) -> Result<f64> {
    if !(u_t > 0.0 && u_t.is_finite()) {
        return Err(Error::Domain(format!(
            "thermal energy must be positive and finite (the curvature is singular at 0), \
             got u_t = {u_t}"
        )));
    }
    if !(e0 >= 0.0 && e0.is_finite()) {
        return Err(Error::Domain(format!(
            "zero-point energy must be non-negative and finite, got e0 = {e0}"
        )));
    }
    Ok(-1.0 / (u_t * u_t + 2.0 * e0 * u_t))
}

/// Entropy slope `dS/dU_T` at thermal energy `u`, by quadrature of
/// [`planck_d2s`] from the Wien-regime anchor at `U_ref = 1e-12 e0`.
///
/// The integration runs in log-energy, where the curvature integrand
/// `-u / (u^2 + 2 e0 u)` is smooth and bounded over arbitrarily many
/// decades.
fn entropy_slope(e0: f64, u: f64) -> Result<f64> {
    let u_ref = U_REF_FRACTION * e0;
    // Wien-regime anchor: dS/dU_T = -(1/(2 e0)) ln(U_T / (2 e0)).
    let anchor = -(u_ref / (2.0 * e0)).ln() / (2.0 * e0);
    let integral = quad::integrate(
        &|v: f64| {
            let uu = v.exp();
            -uu / (uu * uu + 2.0 * e0 * uu)
        },
        u_ref.ln(),
        u.ln(),
        1e-13,
    );
    Ok(anchor + integral)
}

/// Thermal mean energy recovered from the interpolation route: integrate the
/// curvature to get the slope, set it equal to `beta`, and solve for `u_t`.
pub fn reconstruct_planck_from_interpolation(e0: f64, beta: f64) -> Result<f64> {
    if !(e0 > 0.0 && e0.is_finite()) {
        return Err(Error::Domain(format!(
            "zero-point energy must be positive and finite, got e0 = {e0}"
        )));
    }
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::Domain(format!(
            "inverse temperature must be positive and finite, got beta = {beta}"
        )));
    }
    // The slope is strictly decreasing in u. Bracket with the Wien estimate
    // well below the root and the equipartition estimate well above it.
    let lo = (2.0 * e0 * (-2.0 * e0 * beta).exp() * 1e-3).max(1e-290);
    let hi = (1.0 / beta).max(2.0 * e0) * 8.0;
    root::solve_monotone_log(&|u| entropy_slope(e0, u).unwrap(), beta, lo, hi, 1e-13)
}

/// Einstein's split of the thermal energy variance
/// `sigma^2 = u_t^2 + 2 e0 u_t` into its wave and particle terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EinsteinFluctuation {
    /// Interference (wave) term `u_t^2`.
    pub wave: f64,
    /// Discrete (particle) term `2 e0 u_t`.
    pub particle: f64,
}

impl EinsteinFluctuation {
    pub fn total(&self) -> f64 {
        self.wave + self.particle
    }
}

/// Thermal energy variance at thermal energy `u_t`, split into terms.
pub fn einstein_fluctuation(u_t: f64, e0: f64) -> Result<EinsteinFluctuation> {
    if !(u_t >= 0.0 && u_t.is_finite()) {
        return Err(Error::Domain(format!(
            "thermal energy must be non-negative and finite, got u_t = {u_t}"
        )));
    }
    if !(e0 >= 0.0 && e0.is_finite()) {
        return Err(Error::Domain(format!(
            "zero-point energy must be non-negative and finite, got e0 = {e0}"
        )));
    }
    Ok(EinsteinFluctuation {
        wave: u_t * u_t,
        particle: 2.0 * e0 * u_t,
    })
}

/// Inverse temperature at which the wave and particle terms exchange
/// dominance, i.e. where `u_t = 2 e0`; obtained by root finding on the
/// thermal law (the closed form is `ln 2 / (2 e0)`).
pub fn crossover_temperature(e0: f64) -> Result<f64> {
    if !(e0 > 0.0 && e0.is_finite()) {
        return Err(Error::Domain(format!(
            "zero-point energy must be positive and finite, got e0 = {e0}"
        )));
    }
    // u_t(beta) is strictly decreasing; u_t = 2 e0 happens near beta ~ 1/e0.
    root::solve_monotone_log(
        &|beta| spectrum::thermal_mean_energy(e0, beta).unwrap(),
        2.0 * e0,
        0.01 / e0,
        100.0 / e0,
        1e-14,
    )
}

/// Sampled interpolation curve: curvature and reconstructed inverse
/// temperature along a grid of thermal energies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterpolationCurve {
    pub e0: f64,
    pub u_grid: Vec<f64>,
    pub d2s_values: Vec<f64>,
    pub beta_of_u: Vec<f64>,
}

impl InterpolationCurve {
    /// Evaluate the curve on an ascending grid of thermal energies.
    pub fn build(e0: f64, u_grid: &[f64]) -> Result<Self> {
        if u_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain(
                "thermal-energy grid must be strictly increasing".into(),
            ));
        }
        let d2s_values = u_grid
            .iter()
            .map(|&u| planck_d2s(u, e0))
            .collect::<Result<Vec<_>>>()?;
        let beta_of_u = u_grid
            .iter()
            .map(|&u| entropy_slope(e0, u))
            .collect::<Result<Vec<_>>>()?;
        Ok(InterpolationCurve {
            e0,
            u_grid: u_grid.to_vec(),
            d2s_values,
            beta_of_u,
        })
    }
}
