//! The statistical (beyond-thermodynamic) description of the oscillator.
//!
//! The thermodynamic distribution suppresses every fluctuation at zero
//! temperature, yet the zero-point energy keeps fluctuating. Maximizing the
//! entropy subject to a fixed total mean energy `U` over non-negative
//! energies gives the exponential density `W_s(E) = e^{-E/U} / U`, whose
//! variance is `U^2` at every temperature. Splitting `U = U_T + E0` then
//! decomposes those total fluctuations into a thermal part
//! `U_T^2 + 2 E0 U_T`, a temperature-independent part `E0^2`, and a
//! vanishing covariance: thermal and zero-point fluctuations are
//! statistically independent.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectrum;

/// Variance split of the total energy fluctuations at one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FluctuationDecomposition {
    pub u_total: f64,
    pub u_thermal: f64,
    pub e0: f64,
    pub var_total: f64,
    pub var_thermal: f64,
    pub var_zero_point: f64,
    /// Covariance of the thermal and zero-point parts, inferred from the
    /// variance budget; identically zero up to round-off.
    pub covariance: f64,
}

/// Exponential energy density `W_s(E) = e^{-E/u} / u` with mean `u`.
///
/// Returns 0 for `e < 0` (the support is the non-negative axis).
pub fn ws_density(e: f64, u: f64) -> Result<f64> {
    if !(u > 0.0 && u.is_finite()) {
        return Err(Error::Domain(format!(
            "mean energy must be positive and finite, got u = {u}"
        )));
    }
    if e < 0.0 {
        return Ok(0.0);
    }
    Ok((-e / u).exp() / u)
}

/// Entropy of the statistical distribution: `S_s = k ln u + k` (k = 1).
///
/// Its derivative with respect to `u` is `1/u`, which coincides with the
/// thermal `dS/dU = beta` only in the classical case `e0 = 0`.
pub fn statistical_entropy(u: f64) -> Result<f64> {
    if !(u > 0.0 && u.is_finite()) {
        return Err(Error::Domain(format!(
            "mean energy must be positive and finite, got u = {u}"
        )));
    }
    Ok(u.ln() + 1.0)
}

/// Split the total energy fluctuations at `(e0, beta)` into thermal,
/// zero-point and covariance parts.
pub fn decompose_fluctuations(e0: f64, beta: f64) -> Result<FluctuationDecomposition> {
    if !(e0 >= 0.0 && e0.is_finite()) {
        return Err(Error::Domain(format!(
            "zero-point energy must be non-negative and finite, got e0 = {e0}"
        )));
    }
    let u_total = spectrum::planck_mean_energy(e0, beta)?;
    let u_thermal = if e0 > 0.0 {
        spectrum::thermal_mean_energy(e0, beta)?
    } else {
        u_total
    };
    let var_total = u_total * u_total;
    let var_thermal = u_thermal * u_thermal + 2.0 * e0 * u_thermal;
    let var_zero_point = e0 * e0;
    let covariance = (var_total - var_thermal - var_zero_point) / 2.0;
    Ok(FluctuationDecomposition {
        u_total,
        u_thermal,
        e0,
        var_total,
        var_thermal,
        var_zero_point,
        covariance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{diff, quad};
    use approx::assert_relative_eq;

    const COTH_1: f64 = 1.3130352854993313;
    const TANH_1: f64 = 0.7615941559557649;
    const CSCH2_1: f64 = 0.7240616609663105;

    #[test]
    fn density_values_and_support() {
        assert_eq!(ws_density(0.0, 2.0).unwrap(), 0.5);
        assert_eq!(ws_density(-1.0, 2.0).unwrap(), 0.0);
        assert!(ws_density(1.0, 0.0).is_err());
        assert!(ws_density(1.0, -3.0).is_err());
    }

    #[test]
    fn density_moments_by_quadrature() {
        // Mean u and second moment 2 u^2; the tail beyond 50 u is below
        // e^-50 and irrelevant at these tolerances.
        let u = 3.0;
        let mean = quad::integrate(&|e| e * ws_density(e, u).unwrap(), 0.0, 50.0 * u, 1e-12);
        assert_relative_eq!(mean, u, max_relative = 1e-9);
        let m2 = quad::integrate(&|e| e * e * ws_density(e, 1.0).unwrap(), 0.0, 50.0, 1e-12);
        assert_relative_eq!(m2, 2.0, max_relative = 1e-9);
        let norm = quad::integrate(&|e| ws_density(e, u).unwrap(), 0.0, 50.0 * u, 1e-12);
        assert_relative_eq!(norm, 1.0, max_relative = 1e-10);
    }

    #[test]
    fn entropy_values_and_slope() {
        assert_eq!(statistical_entropy(1.0).unwrap(), 1.0);
        assert_relative_eq!(
            statistical_entropy(std::f64::consts::E).unwrap(),
            2.0,
            max_relative = 1e-15
        );
        // dS_s/du at u = coth(1) is tanh(1), not the thermal beta = 1.
        let slope = diff::derivative(|u| statistical_entropy(u).unwrap(), COTH_1, 1e-5);
        assert_relative_eq!(slope, TANH_1, max_relative = 1e-10);
        assert!((slope - 1.0).abs() > 0.2);
    }

    #[test]
    fn entropy_is_maximal_among_same_mean_candidates() {
        // Entropy of W_s by quadrature versus two same-mean alternatives on
        // the non-negative axis: a uniform density and a half-normal.
        let u = 1.7;
        let h_exp = quad::integrate(
            &|e| {
                let w = ws_density(e, u).unwrap();
                if w > 0.0 {
                    -w * w.ln()
                } else {
                    0.0
                }
            },
            0.0,
            60.0 * u,
            1e-12,
        );
        assert_relative_eq!(h_exp, statistical_entropy(u).unwrap(), max_relative = 1e-9);

        // Uniform on [0, 2u]: mean u, entropy ln(2u).
        let h_uniform = (2.0 * u).ln();
        // Half-normal with mean u: sigma = u sqrt(pi/2).
        let sigma = u * (std::f64::consts::PI / 2.0).sqrt();
        let half_normal = |e: f64| {
            (2.0 / (std::f64::consts::TAU).sqrt() / sigma) * (-e * e / (2.0 * sigma * sigma)).exp()
        };
        let mean_hn = quad::integrate(&|e| e * half_normal(e), 0.0, 12.0 * sigma, 1e-12);
        assert_relative_eq!(mean_hn, u, max_relative = 1e-9);
        let h_hn = quad::integrate(
            &|e| {
                let w = half_normal(e);
                -w * w.ln()
            },
            0.0,
            12.0 * sigma,
            1e-12,
        );
        assert!(h_exp > h_uniform);
        assert!(h_exp > h_hn);
    }

    #[test]
    fn decomposition_known_values() {
        let d = decompose_fluctuations(1.0, 1.0).unwrap();
        assert_relative_eq!(d.var_total, COTH_1 * COTH_1, max_relative = 1e-13);
        assert_relative_eq!(d.var_thermal, CSCH2_1, max_relative = 1e-12);
        assert_eq!(d.var_zero_point, 1.0);
        assert!(d.covariance.abs() < 1e-12 * d.var_total);
        assert_relative_eq!(d.u_total, d.u_thermal + d.e0, max_relative = 1e-13);
    }

    #[test]
    fn decomposition_limits() {
        // T -> 0: only the zero-point fluctuation survives.
        let d = decompose_fluctuations(1.0, 100.0).unwrap();
        assert_relative_eq!(d.var_total, 1.0, epsilon = 1e-12);
        assert!(d.var_thermal < 1e-80);
        assert_eq!(d.var_zero_point, 1.0);
        assert!(d.covariance.abs() < 1e-12);
        // Classical branch: sigma^2 = U^2 exactly, no zero-point part.
        let d = decompose_fluctuations(0.0, 2.0).unwrap();
        assert_eq!(d.var_total, 0.25);
        assert_eq!(d.var_thermal, 0.25);
        assert_eq!(d.var_zero_point, 0.0);
        assert_eq!(d.covariance, 0.0);
    }

    #[test]
    fn thermal_variance_agrees_with_dissipation() {
        for (e0, beta) in [(0.5, 0.2), (1.0, 1.0), (2.0, 2.0), (1.0, 5.0)] {
            let d = decompose_fluctuations(e0, beta).unwrap();
            let fd = -diff::derivative(
                |b| spectrum::planck_mean_energy(e0, b).unwrap(),
                beta,
                diff::beta_step(beta),
            );
            assert_relative_eq!(d.var_thermal, fd, max_relative = 1e-6);
        }
    }
}
