//! Energy moments and the derivative recurrence that links them.
//!
//! Differentiating a thermal average with respect to beta brings down one
//! power of the energy:
//!
//! ```text
//! <E^{r+1}> = <E> <E^r> - d<E^r>/dbeta
//! ```
//!
//! and more generally `-d<G>/dbeta = <E G> - <E><G>` for any observable
//! `G(E)` -- the covariance identity. Moments are computed by summing over
//! the discrete spectrum; derivatives are always finite differences, never
//! symbolic, so the recurrence residuals are genuine cross-checks.

use serde::{Deserialize, Serialize};

use crate::discrete_spectrum::{build_spectrum, discrete_average};
use crate::error::{Error, Result};
use crate::numerics::diff;
use crate::spectrum;

/// Numerical-stability ceiling on the moment order.
pub const MAX_MOMENT_ORDER: u32 = 12;

/// Table of moments `<E^r>` at one equilibrium state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentTable {
    pub e0: f64,
    pub beta: f64,
    pub orders: Vec<u32>,
    pub values: Vec<f64>,
}

impl MomentTable {
    pub fn compute(e0: f64, beta: f64, orders: &[u32]) -> Result<Self> {
        let values = orders
            .iter()
            .map(|&r| energy_moment(e0, beta, r))
            .collect::<Result<Vec<_>>>()?;
        Ok(MomentTable {
            e0,
            beta,
            orders: orders.to_vec(),
            values,
        })
    }
}

/// Truncation tolerance for the moment sum: high orders amplify the tail by
/// `E_n^r`, so the plain weight tolerance is tightened until the amplified
/// tail is negligible. Fixed-point iteration on the level count converges in
/// a few rounds because the correction is logarithmic.
fn moment_tail_tol(e0: f64, beta: f64, r: u32) -> Result<f64> {
    const TARGET_LN: f64 = -36.8; // ln(1e-16)
    let x = 2.0 * e0 * beta;
    let u = spectrum::planck_mean_energy(e0, beta)?;
    let mut n = -TARGET_LN / x;
    for _ in 0..4 {
        let amplification = (((2.0 * n + 1.0) * e0) / u).ln().max(0.0);
        n = (-TARGET_LN + f64::from(r) * amplification) / x;
    }
    Ok((-x * (n + 1.0)).exp().clamp(1e-300, 1e-16))
}

/// Moment `<E^r>` as a weighted sum over the discrete levels.
pub fn energy_moment(e0: f64, beta: f64, r: u32) -> Result<f64> {
    if r > MAX_MOMENT_ORDER {
        return Err(Error::Domain(format!(
            "moment order {r} exceeds the stability ceiling {MAX_MOMENT_ORDER}"
        )));
    }
    let spec = build_spectrum(e0, beta, moment_tail_tol(e0, beta, r)?)?;
    discrete_average(&spec, |e| e.powi(r as i32))
}

/// Residual of the moment recurrence at order `r`, normalized by the larger
/// side so that residuals are comparable across orders:
/// `(<E^{r+1}> - (<E><E^r> - d<E^r>/dbeta)) / max(sides)`.
pub fn recurrence_residual(e0: f64, beta: f64, r: u32) -> Result<f64> {
    if r == 0 || r > MAX_MOMENT_ORDER - 1 {
        return Err(Error::Domain(format!(
            "recurrence order must lie in 1..={}, got {r}",
            MAX_MOMENT_ORDER - 1
        )));
    }
    let lhs = energy_moment(e0, beta, r + 1)?;
    let mean = energy_moment(e0, beta, 1)?;
    let mr = energy_moment(e0, beta, r)?;
    let dmr = diff::derivative(
        |b| energy_moment(e0, b, r).unwrap(),
        beta,
        diff::beta_step(beta),
    );
    let rhs = mean * mr - dmr;
    let scale = lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE);
    Ok((lhs - rhs) / scale)
}

/// Residual of the covariance identity `-d<G>/dbeta = <E G> - <E><G>` for an
/// arbitrary observable, normalized by the larger of the two sides and the
/// product scale `|<E><G>|`.
pub fn covariance_identity_residual<G: Fn(f64) -> f64 + Copy>(
    e0: f64,
    beta: f64,
    g: G,
) -> Result<f64> {
    let tol = moment_tail_tol(e0, beta, 2)?;
    let avg_g = |b: f64| -> Result<f64> {
        let spec = build_spectrum(e0, b, tol)?;
        discrete_average(&spec, g)
    };
    let lhs = -diff::derivative(|b| avg_g(b).unwrap(), beta, diff::beta_step(beta));
    let spec = build_spectrum(e0, beta, tol)?;
    let mean_eg = discrete_average(&spec, |e| e * g(e))?;
    let mean_e = discrete_average(&spec, |e| e)?;
    let mean_g = discrete_average(&spec, g)?;
    let rhs = mean_eg - mean_e * mean_g;
    let scale = lhs
        .abs()
        .max(rhs.abs())
        .max((mean_e * mean_g).abs())
        .max(f64::MIN_POSITIVE);
    Ok((lhs - rhs) / scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const COTH_1: f64 = 1.3130352854993313;
    const E2_11: f64 = 2.448123321932621;

    #[test]
    fn low_order_moments() {
        assert_relative_eq!(energy_moment(1.0, 1.0, 0).unwrap(), 1.0, epsilon = 1e-13);
        assert_relative_eq!(
            energy_moment(1.0, 1.0, 1).unwrap(),
            COTH_1,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            energy_moment(1.0, 1.0, 2).unwrap(),
            E2_11,
            max_relative = 1e-12
        );
    }

    #[test]
    fn order_ceiling_enforced() {
        assert!(energy_moment(1.0, 1.0, 13).is_err());
        assert!(energy_moment(1.0, 1.0, 12).is_ok());
        assert!(recurrence_residual(1.0, 1.0, 12).is_err());
        assert!(recurrence_residual(1.0, 1.0, 0).is_err());
    }

    #[test]
    fn moment_table_invariants() {
        let t = MomentTable::compute(1.0, 0.7, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(t.values.len(), 5);
        assert_relative_eq!(t.values[0], 1.0, epsilon = 1e-13);
        // Variance non-negativity and positivity of all moments.
        assert!(t.values[2] >= t.values[1] * t.values[1]);
        assert!(t.values.iter().all(|v| v.is_finite() && *v > 0.0));
    }

    #[test]
    fn recurrence_residuals_are_small() {
        assert!(recurrence_residual(1.0, 1.0, 1).unwrap().abs() < 1e-6);
        assert!(recurrence_residual(1.0, 1.0, 4).unwrap().abs() < 1e-5);
        // r = 1 reduces to the fluctuation-dissipation relation.
        let r = recurrence_residual(0.5, 3.0, 1).unwrap();
        assert!(r.abs() < 1e-6);
    }

    #[test]
    fn recurrence_matches_direct_variance_check() {
        // sigma^2 = -dU/dbeta, both sides by independent routes.
        let e0 = 0.5;
        let beta = 3.0;
        let fd = -diff::derivative(
            |b| energy_moment(e0, b, 1).unwrap(),
            beta,
            diff::beta_step(beta),
        );
        let var = energy_moment(e0, beta, 2).unwrap() - energy_moment(e0, beta, 1).unwrap().powi(2);
        assert_relative_eq!(fd, var, max_relative = 1e-6);
    }

    #[test]
    fn covariance_identity_for_observables() {
        // G = E reduces to the r = 1 recurrence.
        assert!(covariance_identity_residual(1.0, 1.0, |e| e).unwrap().abs() < 1e-6);
        // Smooth nonlinear observable.
        assert!(
            covariance_identity_residual(1.0, 1.0, |e| (-e).exp())
                .unwrap()
                .abs()
                < 1e-6
        );
        // Constants have zero covariance and zero derivative; only
        // round-off from the weight renormalization survives.
        assert!(
            covariance_identity_residual(1.0, 1.0, |_| 2.5)
                .unwrap()
                .abs()
                < 1e-11
        );
    }

    #[test]
    fn variance_frozen_at_low_temperature() {
        let m1 = energy_moment(1.0, 50.0, 1).unwrap();
        let m2 = energy_moment(1.0, 50.0, 2).unwrap();
        assert!((m2 - m1 * m1).abs() < 1e-40);
    }

    #[test]
    fn moments_grow_with_temperature() {
        for r in 1..=4u32 {
            let cold = energy_moment(1.0, 2.0, r).unwrap();
            let warm = energy_moment(1.0, 1.0, r).unwrap();
            let hot = energy_moment(1.0, 0.5, r).unwrap();
            assert!(cold < warm && warm < hot, "order {r} not monotone");
        }
    }
}
