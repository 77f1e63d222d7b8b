//! The discrete level structure behind the continuous description.
//!
//! Expanding the partition function geometrically reveals equally spaced
//! levels `E_n = (2n+1) E0` carrying geometric weights
//! `w_n = e^{-beta E_n} / Z`. Every thermal average of the continuous
//! energy variable can be rewritten as a weighted sum over these levels;
//! this module materializes the truncated level set and provides the sums.
//!
//! The underlying state density is a delta comb and is never evaluated
//! pointwise: any numeric broadening would introduce artifacts, so its
//! action is realized exclusively through sums over the levels.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::diff;
use crate::spectrum;

/// Hard cap on the number of retained levels.
pub const MAX_LEVELS: usize = 10_000_000;

fn kahan_sum<I: Iterator<Item = f64>>(iter: I) -> f64 {
    let mut sum = 0.0f64;
    let mut c = 0.0f64;
    for x in iter {
        let y = x - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Truncated level set with normalized geometric weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteSpectrum {
    e0: f64,
    beta: f64,
    n_max: usize,
    levels: Vec<f64>,
    weights: Vec<f64>,
    z_dimensionless: f64,
}

impl DiscreteSpectrum {
    pub fn e0(&self) -> f64 {
        self.e0
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Index of the highest retained level.
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Level energies `E_n = (2n+1) e0`, ascending.
    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    /// Weights, renormalized to unit sum after truncation.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Dimensionless partition function `sum_n e^{-beta E_n}`, which the
    /// closed form gives as `1 / (2 sinh(e0 beta))`.
    pub fn z_dimensionless(&self) -> f64 {
        self.z_dimensionless
    }

    /// Energy-scale partition function `Z_g = 2 e0 Z`.
    pub fn z_g(&self) -> f64 {
        2.0 * self.e0 * self.z_dimensionless
    }

    /// Shannon entropy `-sum w_n ln w_n` of the weights. Agrees with the
    /// thermodynamic entropy of the oscillator.
    pub fn shannon_entropy(&self) -> f64 {
        kahan_sum(
            self.weights
                .iter()
                .rev()
                .map(|&w| if w > 0.0 { -w * w.ln() } else { 0.0 }),
        )
    }
}

/// Build the truncated spectrum at relative tail tolerance `tail_tol`.
///
/// The weight ratio is `r = e^{-2 e0 beta}`, so the smallest `n_max` with
/// `r^{n_max + 1} < tail_tol` bounds the discarded geometric tail by
/// `tail_tol` of the total. Requests that would require more than
/// [`MAX_LEVELS`] levels (`e0 * beta` below roughly 1e-8 at the default
/// tolerance) are refused; such states belong to the classical branch.
pub fn build_spectrum(e0: f64, beta: f64, tail_tol: f64) -> Result<DiscreteSpectrum> {
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
    if !(tail_tol > 0.0 && tail_tol < 1.0) {
        return Err(Error::Domain(format!(
            "tail tolerance must lie in (0, 1), got {tail_tol}"
        )));
    }

    let x = 2.0 * e0 * beta; // -ln r
    let n_max = if x > 745.0 {
        0 // r underflows: the ground state alone carries all the weight.
    } else {
        let needed = (tail_tol.ln() / -x).ceil() - 1.0;
        if needed >= MAX_LEVELS as f64 {
            return Err(Error::Resource(format!(
                "{needed:.0} levels needed for tail tolerance {tail_tol:e} at \
                 e0 * beta = {:e}; cap is {MAX_LEVELS}. Use the classical branch instead.",
                e0 * beta
            )));
        }
        needed.max(0.0) as usize
    };

    let levels: Vec<f64> = (0..=n_max).map(|n| (2.0 * n as f64 + 1.0) * e0).collect();
    // Raw geometric terms r^n, summed smallest-first.
    let raw: Vec<f64> = (0..=n_max).map(|n| (-x * n as f64).exp()).collect();
    let total = kahan_sum(raw.iter().rev().copied());
    let weights: Vec<f64> = raw.iter().map(|&u| u / total).collect();
    let z_dimensionless = (-e0 * beta).exp() * total;

    Ok(DiscreteSpectrum {
        e0,
        beta,
        n_max,
        levels,
        weights,
        z_dimensionless,
    })
}

/// Weighted average `sum_n w_n f(E_n)` over the retained levels.
///
/// Summation runs from the highest level down so the small terms accumulate
/// first, with compensated addition on top.
pub fn discrete_average<F: Fn(f64) -> f64>(spec: &DiscreteSpectrum, f: F) -> Result<f64> {
    let mut terms = Vec::with_capacity(spec.levels.len());
    for (n, (&level, &w)) in spec.levels.iter().zip(&spec.weights).enumerate() {
        let v = f(level);
        if !v.is_finite() {
            return Err(Error::Numeric(format!(
                "function value {v} at level n = {n} (E = {level}) is not finite"
            )));
        }
        terms.push(w * v);
    }
    Ok(kahan_sum(terms.into_iter().rev()))
}

/// Mean occupation number `n_bar = 1 / (e^{2 e0 beta} - 1)`; the thermal
/// energy is `2 e0 n_bar`.
pub fn mean_occupation(e0: f64, beta: f64) -> Result<f64> {
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
    Ok(1.0 / (2.0 * e0 * beta).exp_m1())
}

/// Constancy check for the level-degeneracy average hidden in the
/// thermodynamic potential.
///
/// With the (divergent but constant) degeneracy term dropped, the potential
/// reduces to `phi(z) = ln Z_g` with `z = omega k beta`, and its slope must
/// equal `-U / (omega k)` at every temperature. Any temperature dependence
/// of the dropped term would show up as a drift of the finite-difference
/// residual `d phi/dz + U/(omega k)` across the sampled points, so the
/// spread (max minus min) of that residual is returned; duplicates
/// contribute zero by construction. Natural units `hbar = k = 1` are used,
/// so `omega = 2 e0`.
pub fn verify_lng_constancy(e0: f64, betas: &[f64]) -> Result<f64> {
    if betas.len() < 2 {
        return Err(Error::Domain(format!(
            "need at least two inverse temperatures, got {}",
            betas.len()
        )));
    }
    let omega_k = 2.0 * e0;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &beta in betas {
        let z = omega_k * beta;
        let slope = diff::derivative(
            |zz| spectrum::log_partition_function(e0, zz / omega_k).unwrap(),
            z,
            diff::beta_step(z),
        );
        let u = spectrum::planck_mean_energy(e0, beta)?;
        let resid = slope + u / omega_k;
        lo = lo.min(resid);
        hi = hi.max(resid);
    }
    Ok(hi - lo)
}
