//! The cross-module invariant suite, as data.
//!
//! Every physics module exposes closed forms plus at least one independent
//! route to the same quantity (level sums, finite differences, quadrature,
//! ODE integration, seeded sampling). This module runs all of those
//! cross-checks and returns the measured residuals with their thresholds,
//! so callers can render or gate on them. All randomized checks are keyed
//! by the single `seed`; the whole report is a deterministic function of
//! `(seed, mc_samples)`.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::discrete_spectrum::{self, build_spectrum, discrete_average};
use crate::error::Result;
use crate::gof;
use crate::historical;
use crate::moments;
use crate::montecarlo::{self, RngContract, SampleBatch};
use crate::numerics::{diff, quad};
use crate::phase_space::{self, PhaseSpaceGaussian};
use crate::spectrum::{self, OscillatorModel};
use crate::statistical_ensemble;
use crate::variance_law::{self, VarianceAnsatz};

/// Comparison direction of a check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Pass when `observed <= threshold` (residual-style checks).
    AtMost,
    /// Pass when `observed >= threshold` (separation-style checks).
    AtLeast,
}

/// One verified invariant with its measured residual.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub module: &'static str,
    pub name: &'static str,
    pub observed: f64,
    pub threshold: f64,
    pub direction: Direction,
    pub pass: bool,
}

impl CheckResult {
    fn at_most(module: &'static str, name: &'static str, observed: f64, threshold: f64) -> Self {
        CheckResult {
            module,
            name,
            observed,
            threshold,
            direction: Direction::AtMost,
            pass: observed <= threshold,
        }
    }

    fn at_least(module: &'static str, name: &'static str, observed: f64, threshold: f64) -> Self {
        CheckResult {
            module,
            name,
            observed,
            threshold,
            direction: Direction::AtLeast,
            pass: observed >= threshold,
        }
    }
}

/// Options for [`run_verification`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Draw count for the sampler-moment checks.
    pub mc_samples: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 42,
            mc_samples: 1_000_000,
        }
    }
}

/// Full verification report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub mc_samples: u64,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Modules exercised by at least one check.
    pub fn modules(&self) -> Vec<&'static str> {
        let mut names: Vec<&'static str> = self.checks.iter().map(|c| c.module).collect();
        names.dedup();
        names
    }
}

fn log_grid(min: f64, max: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![min];
    }
    let (lmin, lmax) = (min.ln(), max.ln());
    (0..count)
        .map(|i| (lmin + (lmax - lmin) * i as f64 / (count - 1) as f64).exp())
        .collect()
}

const E0_SET: [f64; 3] = [0.5, 1.0, 2.0];

/// Relative agreement with an absolute finite-difference noise floor: the
/// difference of two quantities is compared against `rel * scale` plus the
/// round-off resolution of the finite difference that produced one of them.
fn fd_rel_excess(a: f64, b: f64, rel: f64, fd_scale: f64, h: f64) -> f64 {
    let floor = diff::noise_floor(fd_scale, h);
    let allowed = rel * a.abs().max(b.abs()) + floor;
    (a - b).abs() / allowed
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

fn check_spectrum(checks: &mut Vec<CheckResult>) -> Result<()> {
    let grid = log_grid(1e-2, 1e2, 50);

    // Planck law against the truncated level-sum route.
    let mut worst = 0.0f64;
    for &e0 in &E0_SET {
        for &beta in &grid {
            let closed = spectrum::planck_mean_energy(e0, beta)?;
            let spec = build_spectrum(e0, beta, 1e-15)?;
            let summed = discrete_average(&spec, |e| e)?;
            worst = worst.max((closed - summed).abs() / summed);
        }
    }
    checks.push(CheckResult::at_most(
        "spectrum",
        "planck-vs-level-sum",
        worst,
        1e-10,
    ));

    // -d(ln Z)/dbeta reproduces the mean energy.
    let mut worst = 0.0f64;
    for &e0 in &E0_SET {
        for &beta in &grid {
            let h = diff::beta_step(beta);
            let slope = -diff::derivative(
                |b| spectrum::log_partition_function(e0, b).unwrap(),
                beta,
                h,
            );
            let u = spectrum::planck_mean_energy(e0, beta)?;
            worst = worst.max((slope - u).abs() / u);
        }
    }
    checks.push(CheckResult::at_most(
        "spectrum",
        "mean-energy-from-log-z",
        worst,
        1e-6,
    ));

    // Entropy equals ln Z_dimensionless + beta U, with Z from the level sum.
    let mut worst = 0.0f64;
    for &e0 in &E0_SET {
        for &beta in &grid {
            let s = spectrum::entropy(e0, beta)?;
            let spec = build_spectrum(e0, beta, 1e-15)?;
            let rhs = spec.z_dimensionless().ln() + beta * spectrum::planck_mean_energy(e0, beta)?;
            worst = worst.max((s - rhs).abs() / s.abs().max(1.0));
        }
    }
    checks.push(CheckResult::at_most(
        "spectrum",
        "entropy-potential-consistency",
        worst,
        1e-10,
    ));

    // Heat capacity against the finite-difference derivative of U.
    let mut worst = 0.0f64;
    for &e0 in &E0_SET {
        for &beta in &grid {
            let h = diff::beta_step(beta);
            let fd = -diff::derivative(|b| spectrum::planck_mean_energy(e0, b).unwrap(), beta, h);
            let cv = spectrum::heat_capacity(e0, beta)?;
            let u = spectrum::planck_mean_energy(e0, beta)?;
            worst = worst.max(fd_rel_excess(
                cv,
                beta * beta * fd,
                1e-6,
                beta * beta * u,
                h,
            ));
        }
    }
    checks.push(CheckResult::at_most(
        "spectrum",
        "heat-capacity-vs-fd",
        worst,
        1.0,
    ));

    // Wien scaling identity.
    let mut worst = 0.0f64;
    for omega in [1.0, 3.0] {
        let model = OscillatorModel::natural(omega)?;
        for scale in [0.5, 2.0, 10.0] {
            for &beta in &[0.1, 1.0, 7.0] {
                worst = worst.max(spectrum::wien_scaling_check(&model, scale, beta)?);
            }
        }
    }
    checks.push(CheckResult::at_most(
        "spectrum",
        "wien-scaling-residual",
        worst,
        1e-12,
    ));

    // Structure: U decreasing in beta and bounded below by E0.
    let mut violation = 0.0f64;
    for &e0 in &E0_SET {
        let mut prev = f64::INFINITY;
        for &beta in &grid {
            let u = spectrum::planck_mean_energy(e0, beta)?;
            violation = violation.max(u - prev).max(e0 - u);
            prev = u;
        }
    }
    checks.push(CheckResult::at_most(
        "spectrum",
        "mean-energy-monotone-bounded",
        violation,
        0.0,
    ));
    Ok(())
}

// ---------------------------------------------------------------------------
// variance_law
// ---------------------------------------------------------------------------

fn random_ansatz(rng: &mut ChaCha8Rng) -> VarianceAnsatz {
    fn unif(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * ((rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64))
    }
    loop {
        let a2 = unif(rng, 0.2, 3.0);
        let a1 = unif(rng, -2.0, 2.0);
        let q = if rng.next_u64().is_multiple_of(4) {
            0.0
        } else {
            unif(rng, 0.01, 9.0)
        };
        let a0 = (a1 * a1 - q) / (4.0 * a2);
        let Ok(ansatz) = VarianceAnsatz::new(a0, a1, a2) else {
            continue;
        };
        // Keep the asymptotic mean energy away from zero so that relative
        // comparisons against the ODE route stay meaningful.
        let (_, largest) = ansatz.roots();
        let settled = if ansatz.q() == 0.0 {
            -a1 / (2.0 * a2)
        } else {
            largest
        };
        if settled >= 0.05 {
            return ansatz;
        }
    }
}

fn check_variance_law(checks: &mut Vec<CheckResult>, seed: u64) -> Result<()> {
    // Closed form vs adaptive Runge-Kutta integration of the defining ODE
    // for randomized ansatz triples.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1_000);
    let betas = log_grid(0.05, 20.0, 12);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let ansatz = random_ansatz(&mut rng);
        let numeric = variance_law::solve_mean_energy_ode(&ansatz, &betas)?;
        for (&beta, &u_num) in betas.iter().zip(&numeric) {
            let u = variance_law::solve_mean_energy(&ansatz, beta)?;
            worst = worst.max((u - u_num).abs() / u.abs().max(u_num.abs()));
        }
    }
    checks.push(CheckResult::at_most(
        "variance_law",
        "ode-vs-closed-form",
        worst,
        1e-8,
    ));

    // Fluctuation-dissipation: sigma^2 = -dU/dbeta on the full grid.
    let grid = log_grid(1e-2, 1e2, 50);
    let mut worst = 0.0f64;
    for &e0 in &E0_SET {
        let ansatz = variance_law::derive_planck_ansatz(e0)?;
        for &beta in &grid {
            let h = diff::beta_step(beta);
            let fd = -diff::derivative(
                |b| variance_law::solve_mean_energy(&ansatz, b).unwrap(),
                beta,
                h,
            );
            let s2 = spectrum::energy_variance(e0, beta)?;
            let u = spectrum::planck_mean_energy(e0, beta)?;
            worst = worst.max(fd_rel_excess(s2, fd, 1e-6, u, h));
        }
    }
    checks.push(CheckResult::at_most(
        "variance_law",
        "fluctuation-dissipation",
        worst,
        1.0,
    ));

    // Thermal fluctuations freeze out completely.
    checks.push(CheckResult::at_most(
        "variance_law",
        "variance-freezeout",
        spectrum::energy_variance(1.0, 50.0)?,
        1e-40,
    ));

    // Wien consistency: zero residual for a1 = 0 ...
    let betas = log_grid(0.1, 10.0, 50);
    let mut worst = 0.0f64;
    for &e0 in &E0_SET {
        let planck = variance_law::derive_planck_ansatz(e0)?;
        for &beta in &betas {
            worst = worst.max(variance_law::wien_consistency_residual(&planck, e0, beta)?.abs());
        }
    }
    checks.push(CheckResult::at_most(
        "variance_law",
        "wien-consistency-a1-zero",
        worst,
        1e-10,
    ));

    // ... and a residual bounded away from zero once a1 != 0.
    let skewed = VarianceAnsatz::new(-1.5, 0.5, 1.0)?;
    let mut least = f64::INFINITY;
    for &beta in &betas {
        least = least.min(variance_law::wien_consistency_residual(&skewed, 1.0, beta)?.abs());
    }
    checks.push(CheckResult::at_least(
        "variance_law",
        "wien-consistency-a1-forced",
        least,
        1e-3,
    ));

    // Even parity of the dispersion in U for a1 = 0.
    let planck = variance_law::derive_planck_ansatz(1.3)?;
    let mut violation = 0.0f64;
    for i in 0..50 {
        let u = 0.1 * i as f64;
        violation = violation.max(
            (variance_law::variance_from_u(&planck, u)
                - variance_law::variance_from_u(&planck, -u))
            .abs(),
        );
    }
    checks.push(CheckResult::at_most(
        "variance_law",
        "dispersion-parity",
        violation,
        0.0,
    ));

    // High-temperature anchor: U beta -> 1 for a2 = 1.
    let mut worst = 0.0f64;
    for &e0 in &E0_SET {
        let ansatz = variance_law::derive_planck_ansatz(e0)?;
        let u = variance_law::solve_mean_energy(&ansatz, 1e-6)?;
        worst = worst.max((u * 1e-6 - 1.0).abs());
    }
    checks.push(CheckResult::at_most(
        "variance_law",
        "high-temperature-anchor",
        worst,
        1e-4,
    ));
    Ok(())
}

// ---------------------------------------------------------------------------
// discrete_spectrum
// ---------------------------------------------------------------------------

fn check_discrete_spectrum(checks: &mut Vec<CheckResult>) -> Result<()> {
    let states: Vec<(f64, f64)> = E0_SET
        .iter()
        .flat_map(|&e0| [0.1, 1.0, 5.0].map(|beta| (e0, beta)))
        .collect();

    // Discrete averages reproduce the closed-form moments.
    let mut worst = 0.0f64;
    for &(e0, beta) in &states {
        let spec = build_spectrum(e0, beta, 1e-15)?;
        let u = spectrum::planck_mean_energy(e0, beta)?;
        let m2 = u * u + spectrum::energy_variance(e0, beta)?;
        worst = worst.max((discrete_average(&spec, |e| e)? - u).abs() / u);
        worst = worst.max((discrete_average(&spec, |e| e * e)? - m2).abs() / m2);
        worst = worst.max((discrete_average(&spec, |_| 1.0)? - 1.0).abs());
    }
    checks.push(CheckResult::at_most(
        "discrete_spectrum",
        "continuous-discrete-equivalence",
        worst,
        1e-10,
    ));

    // Shannon entropy of the weights equals the thermodynamic entropy.
    let mut worst = 0.0f64;
    for &(e0, beta) in &states {
        let spec = build_spectrum(e0, beta, 1e-15)?;
        let s = spectrum::entropy(e0, beta)?;
        worst = worst.max((spec.shannon_entropy() - s).abs() / s.abs().max(1.0));
    }
    checks.push(CheckResult::at_most(
        "discrete_spectrum",
        "shannon-entropy",
        worst,
        1e-10,
    ));

    // Zero entropy at zero temperature.
    checks.push(CheckResult::at_most(
        "discrete_spectrum",
        "entropy-freezeout",
        spectrum::entropy(1.0, 100.0)?,
        1e-80,
    ));

    // Z_g = 2 E0 Z: closed hyperbolic form against the level sum.
    let mut worst = 0.0f64;
    for &(e0, beta) in &states {
        let spec = build_spectrum(e0, beta, 1e-15)?;
        let zg = spectrum::partition_function(e0, beta)?;
        worst = worst.max((zg - spec.z_g()).abs() / zg);
    }
    checks.push(CheckResult::at_most(
        "discrete_spectrum",
        "partition-function-split",
        worst,
        1e-12,
    ));

    // Weights: geometric ratio and unit normalization.
    let mut worst = 0.0f64;
    for &(e0, beta) in &states {
        let spec = build_spectrum(e0, beta, 1e-15)?;
        let ratio = (2.0 * e0 * beta).exp();
        if ratio.is_finite() {
            for pair in spec.weights().windows(2) {
                worst = worst.max((pair[0] / pair[1] - ratio).abs() / ratio);
            }
        }
        let total: f64 = spec.weights().iter().rev().sum();
        worst = worst.max((total - 1.0).abs());
    }
    checks.push(CheckResult::at_most(
        "discrete_spectrum",
        "geometric-weights",
        worst,
        1e-12,
    ));

    // Constancy of the degeneracy average across temperatures.
    let mut worst = 0.0f64;
    for &e0 in &E0_SET {
        worst = worst.max(discrete_spectrum::verify_lng_constancy(
            e0,
            &[0.5, 1.0, 2.0, 5.0],
        )?);
    }
    checks.push(CheckResult::at_most(
        "discrete_spectrum",
        "ln-g-constancy",
        worst,
        1e-8,
    ));
    Ok(())
}

// ---------------------------------------------------------------------------
// moments
// ---------------------------------------------------------------------------

fn check_moments(checks: &mut Vec<CheckResult>) -> Result<()> {
    let mut worst = 0.0f64;
    for &e0 in &E0_SET {
        for beta in [0.3, 1.0, 3.0] {
            for r in 1..=6 {
                worst = worst.max(moments::recurrence_residual(e0, beta, r)?.abs());
            }
        }
    }
    checks.push(CheckResult::at_most(
        "moments",
        "derivative-recurrence",
        worst,
        1e-5,
    ));

    let mut worst = 0.0f64;
    for g in [|e: f64| (-e).exp(), |e: f64| (0.3 * e).sin(), |_e: f64| 2.5] {
        worst = worst.max(moments::covariance_identity_residual(1.0, 1.0, g)?.abs());
    }
    checks.push(CheckResult::at_most(
        "moments",
        "covariance-identity",
        worst,
        1e-5,
    ));

    let m1 = moments::energy_moment(1.0, 50.0, 1)?;
    let m2 = moments::energy_moment(1.0, 50.0, 2)?;
    checks.push(CheckResult::at_most(
        "moments",
        "moment-variance-freezeout",
        (m2 - m1 * m1).abs(),
        1e-40,
    ));

    let mut violation = 0.0f64;
    for r in 1..=4u32 {
        let mut prev = f64::INFINITY;
        for beta in [0.25, 0.5, 1.0, 2.0, 4.0] {
            let m = moments::energy_moment(1.0, beta, r)?;
            violation = violation.max(m - prev);
            prev = m;
        }
    }
    checks.push(CheckResult::at_most(
        "moments",
        "moments-grow-with-temperature",
        violation,
        0.0,
    ));
    Ok(())
}

// ---------------------------------------------------------------------------
// statistical_ensemble
// ---------------------------------------------------------------------------

fn check_statistical_ensemble(checks: &mut Vec<CheckResult>) -> Result<()> {
    // Quadrature checks of the exponential density: normalization, mean,
    // second moment.
    let mut worst = 0.0f64;
    for u in [1.0, 1.3130352854993313, 3.0] {
        let norm = quad::integrate(
            &|e| statistical_ensemble::ws_density(e, u).unwrap(),
            0.0,
            50.0 * u,
            1e-12,
        );
        let mean = quad::integrate(
            &|e| e * statistical_ensemble::ws_density(e, u).unwrap(),
            0.0,
            60.0 * u,
            1e-12,
        );
        let m2 = quad::integrate(
            &|e| e * e * statistical_ensemble::ws_density(e, u).unwrap(),
            0.0,
            70.0 * u,
            1e-12,
        );
        worst = worst.max((norm - 1.0).abs());
        worst = worst.max((mean - u).abs() / u);
        worst = worst.max((m2 - 2.0 * u * u).abs() / (2.0 * u * u));
    }
    checks.push(CheckResult::at_most(
        "statistical_ensemble",
        "ws-density-moments",
        worst,
        1e-9,
    ));

    // The thermal part of the decomposition equals -dU/dbeta.
    let mut worst = 0.0f64;
    for &e0 in &E0_SET {
        for &beta in &log_grid(0.05, 5.0, 20) {
            let h = diff::beta_step(beta);
            let fd = -diff::derivative(|b| spectrum::planck_mean_energy(e0, b).unwrap(), beta, h);
            let d = statistical_ensemble::decompose_fluctuations(e0, beta)?;
            let u = spectrum::planck_mean_energy(e0, beta)?;
            worst = worst.max(fd_rel_excess(d.var_thermal, fd, 1e-6, u, h));
        }
    }
    checks.push(CheckResult::at_most(
        "statistical_ensemble",
        "thermal-variance-agreement",
        worst,
        1.0,
    ));

    // Covariance of thermal and zero-point parts vanishes on the full grid.
    let mut worst = 0.0f64;
    for &e0 in &E0_SET {
        for &beta in &log_grid(1e-2, 1e2, 50) {
            let d = statistical_ensemble::decompose_fluctuations(e0, beta)?;
            worst = worst.max(d.covariance.abs() / d.var_total);
        }
    }
    checks.push(CheckResult::at_most(
        "statistical_ensemble",
        "covariance-vanishes",
        worst,
        1e-12,
    ));

    // Classical limit: sigma^2 = U^2 exactly, no zero-point part.
    let d = statistical_ensemble::decompose_fluctuations(0.0, 2.0)?;
    let exact = (d.var_total - d.var_thermal).abs() + d.var_zero_point + d.covariance.abs();
    checks.push(CheckResult::at_most(
        "statistical_ensemble",
        "classical-limit-exact",
        exact,
        0.0,
    ));

    // Total fluctuations never freeze out: var_total -> e0^2 at T = 0.
    let frozen = statistical_ensemble::decompose_fluctuations(1.0, 100.0)?;
    checks.push(CheckResult::at_least(
        "statistical_ensemble",
        "zero-point-fluctuation-survives",
        frozen.var_total,
        1.0 - 1e-12,
    ));

    // Maximum-entropy property among same-mean candidates on [0, inf).
    let u = 1.7;
    let h_exp = statistical_ensemble::statistical_entropy(u)?;
    let h_uniform = (2.0 * u).ln();
    let sigma = u * (std::f64::consts::PI / 2.0).sqrt();
    let half_normal = |e: f64| {
        (2.0 / std::f64::consts::TAU.sqrt() / sigma) * (-e * e / (2.0 * sigma * sigma)).exp()
    };
    let h_hn = quad::integrate(
        &|e| {
            let w = half_normal(e);
            -w * w.ln()
        },
        0.0,
        12.0 * sigma,
        1e-12,
    );
    let margin = (h_exp - h_uniform).min(h_exp - h_hn);
    checks.push(CheckResult::at_least(
        "statistical_ensemble",
        "maximum-entropy-margin",
        margin,
        1e-3,
    ));
    Ok(())
}

// ---------------------------------------------------------------------------
// phase_space
// ---------------------------------------------------------------------------

fn check_phase_space(checks: &mut Vec<CheckResult>) -> Result<()> {
    // Normalization and energy mean by nested adaptive quadrature.
    let mut worst_norm = 0.0f64;
    let mut worst_mean = 0.0f64;
    for (m, omega, u) in [(1.0, 2.0, 1.5), (1.0, 1.0, 1.3130352854993313)] {
        let g = PhaseSpaceGaussian::new(m, omega, u)?;
        let (sp, sq) = (g.var_p().sqrt(), g.var_q().sqrt());
        let norm = quad::integrate(
            &|p| {
                quad::integrate(
                    &|q| phase_space::wigner_density(p, q, &g),
                    -8.0 * sq,
                    8.0 * sq,
                    1e-13,
                )
            },
            -8.0 * sp,
            8.0 * sp,
            1e-11,
        );
        let mean = quad::integrate(
            &|p| {
                quad::integrate(
                    &|q| g.energy(p, q) * phase_space::wigner_density(p, q, &g),
                    -8.0 * sq,
                    8.0 * sq,
                    1e-13,
                )
            },
            -8.0 * sp,
            8.0 * sp,
            1e-11,
        );
        worst_norm = worst_norm.max((norm - 1.0).abs());
        worst_mean = worst_mean.max((mean - u).abs() / u);
    }
    checks.push(CheckResult::at_most(
        "phase_space",
        "wigner-normalization",
        worst_norm,
        1e-9,
    ));
    checks.push(CheckResult::at_most(
        "phase_space",
        "wigner-energy-mean",
        worst_mean,
        1e-8,
    ));

    // Pointwise factorization into Gaussian marginals.
    let g = PhaseSpaceGaussian::new(1.3, 0.8, 2.1)?;
    let peak = phase_space::wigner_density(0.0, 0.0, &g);
    let norm_pdf =
        |x: f64, var: f64| (-x * x / (2.0 * var)).exp() / (std::f64::consts::TAU * var).sqrt();
    let mut worst = 0.0f64;
    for i in -8..=8 {
        for j in -8..=8 {
            let p = 0.5 * i as f64 * g.var_p().sqrt();
            let q = 0.5 * j as f64 * g.var_q().sqrt();
            let product = norm_pdf(p, g.var_p()) * norm_pdf(q, g.var_q());
            worst = worst.max((phase_space::wigner_density(p, q, &g) - product).abs() / peak);
        }
    }
    checks.push(CheckResult::at_most(
        "phase_space",
        "marginal-factorization",
        worst,
        1e-12,
    ));

    // Heisenberg bound: margin never below -1e-15, equality at deep freeze,
    // product strictly decreasing in beta.
    let model = OscillatorModel::new(2.0, 1.0, 1.0, 1.0)?;
    let bound = model.hbar() * model.hbar() / 4.0;
    let mut min_margin = f64::INFINITY;
    let mut prev = f64::INFINITY;
    let mut monotone_violation = 0.0f64;
    for &beta in &log_grid(1e-2, 1e2, 50) {
        let prod = phase_space::uncertainty_product(&model, beta)?;
        min_margin = min_margin.min(prod - bound);
        monotone_violation = monotone_violation.max(prod - prev);
        prev = prod;
    }
    checks.push(CheckResult::at_least(
        "phase_space",
        "heisenberg-lower-bound",
        min_margin,
        -1e-15,
    ));
    checks.push(CheckResult::at_most(
        "phase_space",
        "heisenberg-saturation-at-freeze-out",
        (phase_space::uncertainty_product(&model, 100.0)? - bound).abs(),
        1e-12,
    ));
    checks.push(CheckResult::at_most(
        "phase_space",
        "uncertainty-decreasing-in-beta",
        monotone_violation,
        0.0,
    ));

    // The energy marginal of the phase-space density is the exponential law.
    let mut worst = 0.0f64;
    for (m, omega, u) in [(1.0, 1.0, 1.0), (2.0, 3.0, 0.7)] {
        let g = PhaseSpaceGaussian::new(m, omega, u)?;
        worst = worst.max(phase_space::energy_marginal_consistency(&g)?);
    }
    checks.push(CheckResult::at_most(
        "phase_space",
        "energy-marginal-consistency",
        worst,
        1e-8,
    ));
    Ok(())
}

// ---------------------------------------------------------------------------
// historical
// ---------------------------------------------------------------------------

fn check_historical(checks: &mut Vec<CheckResult>) -> Result<()> {
    // Interpolation route reproduces the thermal law.
    let mut worst = 0.0f64;
    for &e0 in &E0_SET {
        for &beta in &log_grid(0.1, 10.0, 20) {
            let rebuilt = historical::reconstruct_planck_from_interpolation(e0, beta)?;
            let exact = spectrum::thermal_mean_energy(e0, beta)?;
            worst = worst.max((rebuilt - exact).abs() / exact);
        }
    }
    checks.push(CheckResult::at_most(
        "historical",
        "interpolation-reconstruction",
        worst,
        1e-8,
    ));

    // Fluctuation identity: wave + particle terms equal -dU/dbeta.
    let mut worst = 0.0f64;
    for &e0 in &E0_SET {
        for &beta in &log_grid(0.1, 10.0, 20) {
            let h = diff::beta_step(beta);
            let fd = -diff::derivative(|b| spectrum::planck_mean_energy(e0, b).unwrap(), beta, h);
            let u_t = spectrum::thermal_mean_energy(e0, beta)?;
            let f = historical::einstein_fluctuation(u_t, e0)?;
            let u = spectrum::planck_mean_energy(e0, beta)?;
            worst = worst.max(fd_rel_excess(f.total(), fd, 1e-6, u, h));
        }
    }
    checks.push(CheckResult::at_most(
        "historical",
        "einstein-fluctuation-identity",
        worst,
        1.0,
    ));

    // Three routes to the thermal variance agree pairwise to 1e-10, up to
    // the round-off of the U^2 - E0^2 subtraction (absolute ~eps U^2, which
    // dominates deep in the freeze-out where the variance itself vanishes).
    let mut worst = 0.0f64;
    for &e0 in &E0_SET {
        let ansatz = variance_law::derive_planck_ansatz(e0)?;
        for &beta in &log_grid(0.1, 10.0, 20) {
            let u = spectrum::planck_mean_energy(e0, beta)?;
            let from_ansatz = variance_law::variance_from_u(&ansatz, u);
            let d = statistical_ensemble::decompose_fluctuations(e0, beta)?;
            let from_split = d.var_thermal;
            let from_terms = historical::einstein_fluctuation(d.u_thermal, e0)?.total();
            let pairs = [
                (from_ansatz, from_split),
                (from_ansatz, from_terms),
                (from_split, from_terms),
            ];
            for (a, b) in pairs {
                let allowed = 1e-10 * a.abs().max(b.abs()) + 8.0 * f64::EPSILON * u * u;
                worst = worst.max((a - b).abs() / allowed);
            }
        }
    }
    checks.push(CheckResult::at_most(
        "historical",
        "three-way-variance-agreement",
        worst,
        1.0,
    ));

    // Crossover between the wave and particle terms at u_t = 2 e0.
    let mut worst = 0.0f64;
    for &e0 in &E0_SET {
        let beta = historical::crossover_temperature(e0)?;
        let exact = std::f64::consts::LN_2 / (2.0 * e0);
        worst = worst.max((beta - exact).abs() / exact);
    }
    checks.push(CheckResult::at_most(
        "historical",
        "crossover-temperature",
        worst,
        1e-10,
    ));
    Ok(())
}

// ---------------------------------------------------------------------------
// montecarlo
// ---------------------------------------------------------------------------

/// Fourth central moment, for the standard error of a sample variance:
/// var(s^2) ~ (m4 - var^2) / n.
fn fourth_central_moment(samples: &[f64], mean: f64) -> f64 {
    samples.iter().map(|&x| (x - mean).powi(4)).sum::<f64>() / samples.len() as f64
}

fn moment_scores(batch: &SampleBatch, samples: &[f64], mean: f64, variance: f64) -> (f64, f64) {
    let n = batch.n as f64;
    let se_mean = (variance / n).sqrt();
    let mean_score = (batch.mean - mean).abs() / (4.0 * se_mean);
    let m4 = fourth_central_moment(samples, mean);
    let se_var = ((m4 - variance * variance).max(0.0) / n).sqrt();
    let var_score = (batch.variance.unwrap() - variance).abs() / (4.0 * se_var);
    (mean_score, var_score)
}

fn check_montecarlo(checks: &mut Vec<CheckResult>, seed: u64, n: u64) -> Result<()> {
    let coth1 = 1.0f64 / 1.0f64.tanh();

    // Discrete level sampler against the Planck mean and variance.
    let contract = RngContract::new(seed, 1);
    let draws = montecarlo::draw_discrete_levels(1.0, 1.0, n, &mut contract.rng())?;
    let batch = SampleBatch::summarize("discrete-levels", seed, &draws);
    let (ms, vs) = moment_scores(
        &batch,
        &draws,
        spectrum::planck_mean_energy(1.0, 1.0)?,
        spectrum::energy_variance(1.0, 1.0)?,
    );
    checks.push(CheckResult::at_most(
        "montecarlo",
        "discrete-sampler-moments",
        ms.max(vs),
        1.0,
    ));

    // Exponential energy sampler at u = coth(1).
    let contract = RngContract::new(seed, 2);
    let draws = montecarlo::draw_ws(coth1, n, &mut contract.rng())?;
    let batch = SampleBatch::summarize("ws-energy", seed, &draws);
    let (ms, vs) = moment_scores(&batch, &draws, coth1, coth1 * coth1);
    checks.push(CheckResult::at_most(
        "montecarlo",
        "ws-sampler-moments",
        ms.max(vs),
        1.0,
    ));

    // Phase-space sampler: energy moments plus the position variance.
    let g = PhaseSpaceGaussian::new(1.0, 2.0, 1.0)?;
    let contract = RngContract::new(seed, 3);
    let draws = montecarlo::draw_phase_space(&g, n, &mut contract.rng())?;
    let batch = SampleBatch::summarize("phase-space-energy", seed, &draws.energies);
    let (ms, vs) = moment_scores(&batch, &draws.energies, g.u(), g.u() * g.u());
    let q_batch = SampleBatch::summarize("phase-space-q", seed, &draws.positions);
    let q_m4 = fourth_central_moment(&draws.positions, 0.0);
    let q_se = ((q_m4 - g.var_q() * g.var_q()).max(0.0) / n as f64).sqrt();
    let qs = (q_batch.variance.unwrap() - g.var_q()).abs() / (4.0 * q_se);
    checks.push(CheckResult::at_most(
        "montecarlo",
        "phase-space-sampler-moments",
        ms.max(vs).max(qs),
        1.0,
    ));

    // Goodness of fit at 1% significance: phase-space energies and the
    // interference experiment against the exponential law.
    let n_ks = n.min(100_000);
    let contract = RngContract::new(seed, 4);
    let energies = montecarlo::draw_phase_space(&g, n_ks, &mut contract.rng())?.energies;
    let d_phase = gof::ks_statistic(&energies, |x| gof::exponential_cdf(x, g.u()));
    let contract = RngContract::new(seed, 5);
    let interference = montecarlo::draw_mode_interference(1000, n_ks, &mut contract.rng())?;
    let d_modes = gof::ks_statistic(&interference, |x| gof::exponential_cdf(x, 1.0));
    let crit = gof::ks_critical_1pct(n_ks as usize);
    checks.push(CheckResult::at_most(
        "montecarlo",
        "exponential-ks-1pct",
        (d_phase / crit).max(d_modes / crit),
        1.0,
    ));

    // Relative variance of the interference energies tends to 1; with few
    // modes it is visibly below 1.
    let batch = SampleBatch::summarize("mode-interference", seed, &interference);
    let rel_var = batch.variance.unwrap() / (batch.mean * batch.mean);
    let tol = 0.01 + 4.0 * (8.0 / n_ks as f64).sqrt();
    checks.push(CheckResult::at_most(
        "montecarlo",
        "interference-relative-variance",
        (rel_var - 1.0).abs(),
        tol,
    ));
    let contract = RngContract::new(seed, 6);
    let two_modes = montecarlo::draw_mode_interference(2, n_ks, &mut contract.rng())?;
    let two = SampleBatch::summarize("mode-interference", seed, &two_modes);
    let rel_var_two = two.variance.unwrap() / (two.mean * two.mean);
    checks.push(CheckResult::at_most(
        "montecarlo",
        "two-mode-sub-exponential",
        rel_var_two,
        0.9,
    ));

    // Histogram of the first ten levels inside multinomial 4-sigma bands.
    let n_hist = n.min(200_000);
    let contract = RngContract::new(seed, 7);
    let draws = montecarlo::draw_discrete_levels(1.0, 1.0, n_hist, &mut contract.rng())?;
    let spec = build_spectrum(1.0, 1.0, 1e-15)?;
    let mut worst = 0.0f64;
    for level in 0..10usize {
        let w = spec.weights()[level];
        let expected = n_hist as f64 * w;
        let count = draws
            .iter()
            .filter(|&&e| (e - spec.levels()[level]).abs() < 1e-9)
            .count() as f64;
        let sigma = (n_hist as f64 * w * (1.0 - w)).sqrt().max(1.0);
        worst = worst.max((count - expected).abs() / (4.0 * sigma));
    }
    checks.push(CheckResult::at_most(
        "montecarlo",
        "level-histogram-4sigma",
        worst,
        1.0,
    ));

    // Determinism: bit-identical repetition, uncorrelated streams.
    let a = montecarlo::sample_ws(1.0, n.min(100_000), &RngContract::new(seed, 8))?;
    let b = montecarlo::sample_ws(1.0, n.min(100_000), &RngContract::new(seed, 8))?;
    let identical = a == b;
    let n_corr = n.min(100_000);
    let xs = montecarlo::draw_ws(1.0, n_corr, &mut RngContract::new(seed, 9).rng())?;
    let ys = montecarlo::draw_ws(1.0, n_corr, &mut RngContract::new(seed, 10).rng())?;
    let mx = xs.iter().sum::<f64>() / n_corr as f64;
    let my = ys.iter().sum::<f64>() / n_corr as f64;
    let cov = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - mx) * (y - my))
        .sum::<f64>()
        / n_corr as f64;
    let vx = xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>() / n_corr as f64;
    let vy = ys.iter().map(|y| (y - my).powi(2)).sum::<f64>() / n_corr as f64;
    let corr = (cov / (vx * vy).sqrt()).abs();
    let score = if identical {
        corr / (4.0 / (n_corr as f64).sqrt())
    } else {
        f64::INFINITY
    };
    checks.push(CheckResult::at_most(
        "montecarlo",
        "determinism-and-independence",
        score,
        1.0,
    ));
    Ok(())
}

/// Run the complete invariant suite.
pub fn run_verification(opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut checks = Vec::with_capacity(40);
    check_spectrum(&mut checks)?;
    check_variance_law(&mut checks, opts.seed)?;
    check_discrete_spectrum(&mut checks)?;
    check_moments(&mut checks)?;
    check_statistical_ensemble(&mut checks)?;
    check_phase_space(&mut checks)?;
    check_historical(&mut checks)?;
    check_montecarlo(&mut checks, opts.seed, opts.mc_samples)?;
    Ok(VerifyReport {
        seed: opts.seed,
        mc_samples: opts.mc_samples,
        checks,
    })
}
