//! Phase-space consequences: the Gaussian equilibrium density over (p, q)
//! and the uncertainty product it implies.
//!
//! The exponential energy density, rewritten in the quadratures through
//! `E = (p^2 + m^2 omega^2 q^2) / 2m`, becomes the Gaussian
//! `W(p, q) = (omega / 2 pi U) exp(-E(p,q)/U)` -- the Wigner function of the
//! thermal oscillator. It factorizes into independent normal marginals with
//! `var_p = m U` and `var_q = U / (m omega^2)`, so
//! `var_q var_p = U^2 / omega^2 >= hbar^2 / 4`: the Heisenberg bound,
//! saturated when every thermal fluctuation is frozen out and only the
//! zero-point fluctuations remain.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectrum::{self, OscillatorModel};
use crate::statistical_ensemble::ws_density;

/// Gaussian phase-space state of one oscillator at mean energy `u`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseSpaceGaussian {
    m: f64,
    omega: f64,
    u: f64,
    var_p: f64,
    var_q: f64,
}

impl PhaseSpaceGaussian {
    pub fn new(m: f64, omega: f64, u: f64) -> Result<Self> {
        for (name, v) in [("m", m), ("omega", omega), ("u", u)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Domain(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(PhaseSpaceGaussian {
            m,
            omega,
            u,
            var_p: m * u,
            var_q: u / (m * omega * omega),
        })
    }

    /// Equilibrium state of `model` at inverse temperature `beta`.
    pub fn for_model(model: &OscillatorModel, beta: f64) -> Result<Self> {
        let u = spectrum::planck_mean_energy(model.zero_point_energy(), beta)?;
        PhaseSpaceGaussian::new(model.mass(), model.omega(), u)
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    /// Momentum variance `m U`.
    pub fn var_p(&self) -> f64 {
        self.var_p
    }

    /// Position variance `U / (m omega^2)`.
    pub fn var_q(&self) -> f64 {
        self.var_q
    }

    /// Oscillator energy at a phase-space point.
    pub fn energy(&self, p: f64, q: f64) -> f64 {
        (p * p + self.m * self.m * self.omega * self.omega * q * q) / (2.0 * self.m)
    }
}

/// Phase-space density `W(p, q) = (omega / 2 pi U) exp(-E(p,q)/U)`.
pub fn wigner_density(p: f64, q: f64, g: &PhaseSpaceGaussian) -> f64 {
    g.omega / (std::f64::consts::TAU * g.u) * (-g.energy(p, q) / g.u).exp()
}

/// Uncertainty product `var_q var_p = U^2 / omega^2` at equilibrium.
///
/// Bounded below by `hbar^2 / 4` whenever the model has a zero-point
/// energy, with equality in the zero-temperature limit; the classical model
/// (`hbar = 0`) has no lower bound.
pub fn uncertainty_product(model: &OscillatorModel, beta: f64) -> Result<f64> {
    let u = spectrum::planck_mean_energy(model.zero_point_energy(), beta)?;
    Ok(u * u / (model.omega() * model.omega()))
}

/// Maximum deviation between the energy density obtained by integrating the
/// phase-space Gaussian over surfaces of constant energy and the exponential
/// density it must reduce to.
///
/// The angle parameterization `p = sqrt(2mE) cos(theta)`,
/// `q = sqrt(2E/m) sin(theta)/omega` has Jacobian `1/omega`; the integral
/// over theta uses the trapezoid rule on 2048 points, which is spectrally
/// accurate for periodic integrands. Energies are scanned on a uniform grid
/// of 65 points over `[0, 10 U]`.
pub fn energy_marginal_consistency(g: &PhaseSpaceGaussian) -> Result<f64> {
    const N_ANGLE: usize = 2048;
    const N_ENERGY: usize = 64;
    let d_theta = std::f64::consts::TAU / N_ANGLE as f64;
    let mut worst: f64 = 0.0;
    for j in 0..=N_ENERGY {
        let energy = 10.0 * g.u * j as f64 / N_ENERGY as f64;
        let p_radius = (2.0 * g.m * energy).sqrt();
        let q_radius = (2.0 * energy / g.m).sqrt() / g.omega;
        let mut acc = 0.0;
        for i in 0..N_ANGLE {
            let theta = d_theta * i as f64;
            let p = p_radius * theta.cos();
            let q = q_radius * theta.sin();
            acc += wigner_density(p, q, g);
        }
        let marginal = acc * d_theta / g.omega;
        let expected = ws_density(energy, g.u)?;
        worst = worst.max((marginal - expected).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::quad;
    use approx::assert_relative_eq;

    const COTH_1: f64 = 1.3130352854993313;
    const INV_TAU: f64 = 0.15915494309189535;

    #[test]
    fn constructor_and_variances() {
        let g = PhaseSpaceGaussian::new(2.0, 3.0, 0.7).unwrap();
        assert_eq!(g.var_p(), 1.4);
        assert_relative_eq!(g.var_q(), 0.7 / 18.0, max_relative = 1e-15);
        // var_p * var_q = U^2 / omega^2.
        assert_relative_eq!(
            g.var_p() * g.var_q(),
            (g.u() / g.omega()).powi(2),
            max_relative = 1e-15
        );
        // Energy expectation reconstructed from the variances.
        let e = g.var_p() / (2.0 * g.m()) + g.m() * g.omega().powi(2) * g.var_q() / 2.0;
        assert_relative_eq!(e, g.u(), max_relative = 1e-15);
        assert!(PhaseSpaceGaussian::new(0.0, 1.0, 1.0).is_err());
        assert!(PhaseSpaceGaussian::new(1.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn peak_density() {
        let g = PhaseSpaceGaussian::new(1.0, 1.0, 1.0).unwrap();
        assert_relative_eq!(wigner_density(0.0, 0.0, &g), INV_TAU, max_relative = 1e-15);
    }

    #[test]
    fn normalization_by_2d_quadrature() {
        let g = PhaseSpaceGaussian::new(1.0, 2.0, 1.5).unwrap();
        let (sp, sq) = (g.var_p().sqrt(), g.var_q().sqrt());
        let norm = quad::integrate(
            &|p| quad::integrate(&|q| wigner_density(p, q, &g), -8.0 * sq, 8.0 * sq, 1e-13),
            -8.0 * sp,
            8.0 * sp,
            1e-11,
        );
        assert_relative_eq!(norm, 1.0, max_relative = 1e-9);
    }

    #[test]
    fn energy_mean_by_2d_quadrature() {
        let g = PhaseSpaceGaussian::new(1.0, 1.0, COTH_1).unwrap();
        let (sp, sq) = (g.var_p().sqrt(), g.var_q().sqrt());
        let mean = quad::integrate(
            &|p| {
                quad::integrate(
                    &|q| g.energy(p, q) * wigner_density(p, q, &g),
                    -8.0 * sq,
                    8.0 * sq,
                    1e-13,
                )
            },
            -8.0 * sp,
            8.0 * sp,
            1e-11,
        );
        assert_relative_eq!(mean, COTH_1, max_relative = 1e-8);
    }

    #[test]
    fn factorizes_into_gaussian_marginals() {
        let g = PhaseSpaceGaussian::new(1.3, 0.8, 2.1).unwrap();
        let peak = wigner_density(0.0, 0.0, &g);
        let norm_pdf =
            |x: f64, var: f64| (-x * x / (2.0 * var)).exp() / (std::f64::consts::TAU * var).sqrt();
        for i in -6..=6 {
            for j in -6..=6 {
                let p = 0.5 * i as f64 * g.var_p().sqrt();
                let q = 0.5 * j as f64 * g.var_q().sqrt();
                let product = norm_pdf(p, g.var_p()) * norm_pdf(q, g.var_q());
                assert!((wigner_density(p, q, &g) - product).abs() <= 1e-12 * peak);
            }
        }
    }

    #[test]
    fn uncertainty_product_known_values() {
        let m = OscillatorModel::new(2.0, 1.0, 1.0, 1.0).unwrap();
        // Zero temperature: the product saturates at hbar^2/4.
        assert_relative_eq!(
            uncertainty_product(&m, 100.0).unwrap(),
            0.25,
            epsilon = 1e-12
        );
        // Finite temperature: strictly above the bound.
        assert_relative_eq!(
            uncertainty_product(&m, 1.0).unwrap(),
            COTH_1 * COTH_1 / 4.0,
            max_relative = 1e-13
        );
        // Classical model: product = 1/(beta omega)^2, no lower bound.
        let cl = OscillatorModel::new(1.0, 0.0, 1.0, 1.0).unwrap();
        assert_relative_eq!(
            uncertainty_product(&cl, 1.0).unwrap(),
            1.0,
            max_relative = 1e-15
        );
        assert!(uncertainty_product(&cl, 1e6).unwrap() < 1e-11);
    }

    #[test]
    fn heisenberg_bound_holds_and_decreases() {
        let m = OscillatorModel::new(2.0, 1.0, 1.0, 1.0).unwrap();
        let bound = 0.25;
        let mut prev = f64::INFINITY;
        for i in 0..=40 {
            let beta = 10f64.powf(-2.0 + 4.0 * i as f64 / 40.0);
            let prod = uncertainty_product(&m, beta).unwrap();
            assert!(prod - bound >= -1e-15);
            assert!(prod <= prev);
            prev = prod;
        }
    }

    #[test]
    fn energy_marginal_reduces_to_exponential() {
        let g = PhaseSpaceGaussian::new(1.0, 1.0, 1.0).unwrap();
        assert!(energy_marginal_consistency(&g).unwrap() < 1e-8);
        let g = PhaseSpaceGaussian::new(2.0, 3.0, 0.7).unwrap();
        assert!(energy_marginal_consistency(&g).unwrap() < 1e-8);
        // At E = 0 the circle collapses to the origin and the marginal is
        // exactly 1/U.
        let w0 = wigner_density(0.0, 0.0, &g) * std::f64::consts::TAU / g.omega();
        assert_relative_eq!(w0, ws_density(0.0, g.u()).unwrap(), max_relative = 1e-14);
    }
}
