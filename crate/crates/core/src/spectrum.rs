//! Closed-form equilibrium thermodynamics of a single harmonic oscillator.
//!
//! The central object is the Planck mean energy with zero-point term,
//! `U = E0 coth(E0 beta)`, together with its companions: the thermal part
//! `U_T = 2 E0 / (exp(2 E0 beta) - 1)`, the Wien approximation, the
//! partition function `Z = E0 / sinh(E0 beta)`, entropy, heat capacity and
//! the Wien scaling identity `U = omega f(omega/T)`.
//!
//! Free functions work in natural units: the Boltzmann constant is absorbed
//! into `beta` (units 1/energy) and set to 1 in entropy and heat capacity.
//! [`OscillatorModel`] carries explicit `hbar`, `k` and `mass` for callers
//! that need other conventions.
//!
//! Everything in the hyperbolic family switches to exp/expm1 forms well
//! before `E0 * beta` reaches the overflow range, so the freeze-out regime
//! (`E0 * beta` of a few hundred) evaluates cleanly instead of returning
//! inf/NaN or a cancelled zero.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn check_beta(beta: f64) -> Result<()> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::Domain(format!(
            "inverse temperature must be positive and finite, got beta = {beta}"
        )));
    }
    Ok(())
}

fn check_e0_nonneg(e0: f64) -> Result<()> {
    if !(e0 >= 0.0 && e0.is_finite()) {
        return Err(Error::Domain(format!(
            "zero-point energy must be non-negative and finite, got e0 = {e0}"
        )));
    }
    Ok(())
}

fn check_e0_pos(e0: f64) -> Result<()> {
    if !(e0 > 0.0 && e0.is_finite()) {
        return Err(Error::Domain(format!(
            "zero-point energy must be positive and finite, got e0 = {e0}"
        )));
    }
    Ok(())
}

/// Fixed parameters of one oscillator species.
///
/// `hbar = 0` is accepted and selects the classical branch (no zero-point
/// energy); all other parameters must be strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillatorModel {
    omega: f64,
    hbar: f64,
    k: f64,
    mass: f64,
}

impl OscillatorModel {
    pub fn new(omega: f64, hbar: f64, k: f64, mass: f64) -> Result<Self> {
        for (name, v) in [("omega", omega), ("k", k), ("mass", mass)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Domain(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        if !(hbar >= 0.0 && hbar.is_finite()) {
            return Err(Error::Domain(format!(
                "hbar must be non-negative and finite, got {hbar}"
            )));
        }
        Ok(OscillatorModel {
            omega,
            hbar,
            k,
            mass,
        })
    }

    /// Natural units: `hbar = k = mass = 1`.
    pub fn natural(omega: f64) -> Result<Self> {
        OscillatorModel::new(omega, 1.0, 1.0, 1.0)
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// `E0 = hbar * omega / 2`, exactly linear in the frequency.
    pub fn zero_point_energy(&self) -> f64 {
        self.hbar * self.omega / 2.0
    }

    /// Full equilibrium state at inverse temperature `beta` (in 1/energy,
    /// i.e. `beta = 1/(kT)`). Entropy and heat capacity carry the model's
    /// Boltzmann constant.
    pub fn thermo_point(&self, beta: f64) -> Result<ThermoPoint> {
        let e0 = self.zero_point_energy();
        let u = planck_mean_energy(e0, beta)?;
        let sigma2 = energy_variance(e0, beta)?;
        let (cv, s, z) = if e0 > 0.0 {
            (
                self.k * heat_capacity(e0, beta)?,
                self.k * entropy(e0, beta)?,
                partition_function(e0, beta)?,
            )
        } else {
            (self.k, self.k * (1.0 - beta.ln()), 1.0 / beta)
        };
        Ok(ThermoPoint {
            beta,
            u,
            sigma2,
            cv,
            s,
            z,
        })
    }
}

/// One equilibrium state: inverse temperature plus the derived quantities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermoPoint {
    pub beta: f64,
    pub u: f64,
    pub sigma2: f64,
    pub cv: f64,
    pub s: f64,
    pub z: f64,
}

/// Planck mean energy with zero-point term: `E0 coth(E0 beta)` for `e0 > 0`,
/// the equipartition value `1/beta` for `e0 = 0`.
pub fn planck_mean_energy(e0: f64, beta: f64) -> Result<f64> {
    check_e0_nonneg(e0)?;
    check_beta(beta)?;
    if e0 == 0.0 {
        return Ok(1.0 / beta);
    }
    Ok(e0 / (e0 * beta).tanh())
}

/// Thermal part of the Planck law: `2 E0 / (exp(2 E0 beta) - 1)`.
///
/// Equals `planck_mean_energy - e0` to machine precision and freezes out
/// exponentially at low temperature.
pub fn thermal_mean_energy(e0: f64, beta: f64) -> Result<f64> {
    check_e0_pos(e0)?;
    check_beta(beta)?;
    Ok(2.0 * e0 / (2.0 * e0 * beta).exp_m1())
}

/// Wien's low-temperature approximation `2 E0 exp(-2 E0 beta)`.
///
/// Its relative error against [`thermal_mean_energy`] is exactly
/// `exp(-2 E0 beta)`.
pub fn wien_approximation(e0: f64, beta: f64) -> Result<f64> {
    check_e0_pos(e0)?;
    check_beta(beta)?;
    Ok(2.0 * e0 * (-2.0 * e0 * beta).exp())
}

/// Partition function `Z = E0 / sinh(E0 beta)`; `1/beta` for `e0 = 0`.
pub fn partition_function(e0: f64, beta: f64) -> Result<f64> {
    check_e0_nonneg(e0)?;
    check_beta(beta)?;
    if e0 == 0.0 {
        return Ok(1.0 / beta);
    }
    let x = e0 * beta;
    if x < 700.0 {
        Ok(e0 / x.sinh())
    } else {
        // sinh would overflow; Z = 2 E0 e^{-x} / (1 - e^{-2x}) and the
        // denominator is 1 to machine precision here.
        Ok(2.0 * e0 * (-x).exp())
    }
}

/// `ln Z` evaluated without overflow for any `E0 beta`.
///
/// Uses `ln sinh(x) = x - ln 2 + ln(1 - e^{-2x})`, where the last factor is
/// computed through `expm1`.
pub fn log_partition_function(e0: f64, beta: f64) -> Result<f64> {
    check_e0_nonneg(e0)?;
    check_beta(beta)?;
    if e0 == 0.0 {
        return Ok(-beta.ln());
    }
    let x = e0 * beta;
    let ln_sinh = x - std::f64::consts::LN_2 + (-(-2.0 * x).exp_m1()).ln();
    Ok(e0.ln() - ln_sinh)
}

/// Entropy `S/k = -ln(2 sinh x) + x coth x` with `x = E0 beta`, evaluated in
/// the cancellation-free form `-ln(1 - t) + 2 x t / (1 - t)`, `t = e^{-2x}`.
///
/// Vanishes at zero temperature by construction of the additive constant.
pub fn entropy(e0: f64, beta: f64) -> Result<f64> {
    check_e0_pos(e0)?;
    check_beta(beta)?;
    let x = e0 * beta;
    let t = (-2.0 * x).exp();
    let one_minus_t = -(-2.0 * x).exp_m1();
    Ok(-one_minus_t.ln() + 2.0 * x * t / one_minus_t)
}

/// Thermal energy variance `sigma^2 = U^2 - E0^2 = E0^2 csch^2(E0 beta)`, in
/// the stable form `4 E0^2 t / (1-t)^2`, `t = e^{-2 E0 beta}`.
///
/// For `e0 = 0` this is the classical `U^2 = 1/beta^2`.
pub fn energy_variance(e0: f64, beta: f64) -> Result<f64> {
    check_e0_nonneg(e0)?;
    check_beta(beta)?;
    if e0 == 0.0 {
        return Ok(1.0 / (beta * beta));
    }
    let x = e0 * beta;
    let t = (-2.0 * x).exp();
    let one_minus_t = -(-2.0 * x).exp_m1();
    Ok(4.0 * e0 * e0 * t / (one_minus_t * one_minus_t))
}

/// Heat capacity `C_V = k beta^2 sigma^2` (with k = 1 here).
///
/// Tends to the equipartition value 1 at high temperature and vanishes at
/// zero temperature, where all thermal fluctuations are suppressed.
pub fn heat_capacity(e0: f64, beta: f64) -> Result<f64> {
    check_e0_nonneg(e0)?;
    check_beta(beta)?;
    if e0 == 0.0 {
        return Ok(1.0);
    }
    Ok(beta * beta * energy_variance(e0, beta)?)
}

/// Residual of the Wien scaling identity: `|U(s omega, s T)/(s omega) -
/// U(omega, T)/omega|`, which vanishes because `U = omega f(omega/T)`.
pub fn wien_scaling_check(model: &OscillatorModel, scale: f64, beta: f64) -> Result<f64> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::Domain(format!(
            "scale must be positive and finite, got {scale}"
        )));
    }
    check_beta(beta)?;
    let e0 = model.zero_point_energy();
    let u1 = planck_mean_energy(e0, beta)?;
    // omega -> s*omega doubles E0; T -> s*T divides the energy-inverse beta.
    let e0_scaled = model.hbar() * (scale * model.omega()) / 2.0;
    let u2 = planck_mean_energy(e0_scaled, beta / scale)?;
    Ok((u2 / (scale * model.omega()) - u1 / model.omega()).abs())
}
