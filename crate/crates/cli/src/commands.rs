//! Table builders for each subcommand.

use serde_json::json;

use zpe_core::discrete_spectrum::{build_spectrum, mean_occupation};
use zpe_core::historical;
use zpe_core::moments;
use zpe_core::montecarlo::{self, RngContract, SampleBatch};
use zpe_core::phase_space::{self, PhaseSpaceGaussian};
use zpe_core::spectrum::{self, OscillatorModel};
use zpe_core::statistical_ensemble;
use zpe_core::variance_law;
use zpe_core::verify::{self, VerifyOptions};
use zpe_core::Result;

use crate::config::CommonArgs;
use crate::table::{Table, Value};

/// Oscillator model matching the flags; `--e0` rescales the action constant
/// so that `hbar * omega / 2` reproduces the requested zero-point energy.
fn model_for(args: &CommonArgs) -> Result<OscillatorModel> {
    let hbar = match args.e0 {
        Some(e0) => 2.0 * e0 / args.omega,
        None => args.hbar,
    };
    OscillatorModel::new(args.omega, hbar, args.k, args.mass)
}

pub fn spectrum_table(args: &CommonArgs) -> Result<Table> {
    let model = model_for(args)?;
    let e0 = model.zero_point_energy();
    let mut table = Table::new(vec!["beta", "u", "u_thermal", "sigma2", "cv", "s", "z"]);
    for beta in args.beta_grid() {
        let p = model.thermo_point(beta)?;
        let u_thermal = if e0 > 0.0 {
            spectrum::thermal_mean_energy(e0, beta)?
        } else {
            p.u
        };
        table.push([
            beta.into(),
            p.u.into(),
            u_thermal.into(),
            p.sigma2.into(),
            p.cv.into(),
            p.s.into(),
            p.z.into(),
        ]);
    }
    Ok(table)
}

pub fn variance_table(args: &CommonArgs) -> Result<Table> {
    let e0 = model_for(args)?.zero_point_energy();
    let ansatz = variance_law::derive_planck_ansatz(e0)?;
    let mut table = Table::new(vec!["beta", "u", "sigma2_of_u", "sigma2_of_beta"]);
    for beta in args.beta_grid() {
        let u = variance_law::solve_mean_energy(&ansatz, beta)?;
        table.push([
            beta.into(),
            u.into(),
            variance_law::variance_from_u(&ansatz, u).into(),
            variance_law::dispersion_vs_beta(&ansatz, beta)?.into(),
        ]);
    }
    table.extra_meta.push((
        "ansatz",
        json!({
            "a0": ansatz.a0(),
            "a1": ansatz.a1(),
            "a2": ansatz.a2(),
            "q": ansatz.q(),
        }),
    ));
    Ok(table)
}

pub fn discrete_table(args: &CommonArgs) -> Result<Table> {
    let e0 = model_for(args)?.zero_point_energy();
    let mut table = Table::new(vec![
        "beta",
        "n_max",
        "z_dimensionless",
        "z_closed_form",
        "w0",
        "mean_occupation",
        "shannon_entropy",
    ]);
    for beta in args.beta_grid() {
        let spec = build_spectrum(e0, beta, 1e-15)?;
        let z_closed = spectrum::partition_function(e0, beta)? / (2.0 * e0);
        table.push([
            beta.into(),
            (spec.n_max() as u64).into(),
            spec.z_dimensionless().into(),
            z_closed.into(),
            spec.weights()[0].into(),
            mean_occupation(e0, beta)?.into(),
            spec.shannon_entropy().into(),
        ]);
    }
    Ok(table)
}

pub fn moments_table(args: &CommonArgs) -> Result<Table> {
    let e0 = model_for(args)?.zero_point_energy();
    let mut table = Table::new(vec![
        "beta",
        "m1",
        "m2",
        "m3",
        "m4",
        "recurrence_residual_r1",
    ]);
    for beta in args.beta_grid() {
        table.push([
            beta.into(),
            moments::energy_moment(e0, beta, 1)?.into(),
            moments::energy_moment(e0, beta, 2)?.into(),
            moments::energy_moment(e0, beta, 3)?.into(),
            moments::energy_moment(e0, beta, 4)?.into(),
            moments::recurrence_residual(e0, beta, 1)?.into(),
        ]);
    }
    Ok(table)
}

pub fn statistical_table(args: &CommonArgs) -> Result<Table> {
    let e0 = model_for(args)?.zero_point_energy();
    let mut table = Table::new(vec![
        "beta",
        "u_total",
        "u_thermal",
        "var_total",
        "var_thermal",
        "var_zero_point",
        "covariance",
        "statistical_entropy",
    ]);
    for beta in args.beta_grid() {
        let d = statistical_ensemble::decompose_fluctuations(e0, beta)?;
        table.push([
            beta.into(),
            d.u_total.into(),
            d.u_thermal.into(),
            d.var_total.into(),
            d.var_thermal.into(),
            d.var_zero_point.into(),
            d.covariance.into(),
            statistical_ensemble::statistical_entropy(d.u_total)?.into(),
        ]);
    }
    Ok(table)
}

pub fn wigner_table(args: &CommonArgs) -> Result<Table> {
    let model = model_for(args)?;
    let bound = model.hbar() * model.hbar() / 4.0;
    let mut table = Table::new(vec![
        "beta",
        "u",
        "var_p",
        "var_q",
        "uncertainty_product",
        "quantum_floor",
        "peak_density",
    ]);
    for beta in args.beta_grid() {
        let g = PhaseSpaceGaussian::for_model(&model, beta)?;
        table.push([
            beta.into(),
            g.u().into(),
            g.var_p().into(),
            g.var_q().into(),
            phase_space::uncertainty_product(&model, beta)?.into(),
            bound.into(),
            phase_space::wigner_density(0.0, 0.0, &g).into(),
        ]);
    }
    Ok(table)
}

pub fn historical_table(args: &CommonArgs) -> Result<Table> {
    let e0 = model_for(args)?.zero_point_energy();
    let mut table = Table::new(vec![
        "beta",
        "u_thermal",
        "u_reconstructed",
        "reconstruction_rel_error",
        "wave_term",
        "particle_term",
        "thermal_variance",
    ]);
    for beta in args.beta_grid() {
        let exact = spectrum::thermal_mean_energy(e0, beta)?;
        let rebuilt = historical::reconstruct_planck_from_interpolation(e0, beta)?;
        let split = historical::einstein_fluctuation(exact, e0)?;
        table.push([
            beta.into(),
            exact.into(),
            rebuilt.into(),
            ((rebuilt - exact).abs() / exact).into(),
            split.wave.into(),
            split.particle.into(),
            split.total().into(),
        ]);
    }
    table.extra_meta.push((
        "crossover_beta",
        json!(historical::crossover_temperature(e0)?),
    ));
    Ok(table)
}

/// Modes in the interference experiment; enough for the central limit
/// theorem to hold well inside the 1% KS band.
const INTERFERENCE_MODES: u64 = 1000;

pub fn mc_table(args: &CommonArgs) -> Result<Table> {
    let model = model_for(args)?;
    let e0 = model.zero_point_energy();
    let n = args.samples;
    let mut table = Table::new(vec![
        "label",
        "beta",
        "n",
        "mean",
        "variance",
        "std_error",
        "seed",
        "stream",
        "ref_mean",
        "ref_variance",
    ]);
    let mut stream = 0u64;
    let push_batch =
        |table: &mut Table, batch: &SampleBatch, beta: Value, stream: u64, rm: f64, rv: f64| {
            table.push([
                batch.label.as_str().into(),
                beta,
                batch.n.into(),
                batch.mean.into(),
                batch.variance.into(),
                batch.std_error.into(),
                batch.seed.into(),
                stream.into(),
                rm.into(),
                rv.into(),
            ]);
        };
    for beta in args.beta_grid() {
        let u = spectrum::planck_mean_energy(e0, beta)?;
        let sigma2 = spectrum::energy_variance(e0, beta)?;

        let contract = RngContract::new(args.seed, stream);
        let batch = montecarlo::sample_discrete_levels(e0, beta, n, &contract)?;
        push_batch(&mut table, &batch, beta.into(), stream, u, sigma2);
        stream += 1;

        let contract = RngContract::new(args.seed, stream);
        let batch = montecarlo::sample_ws(u, n, &contract)?;
        push_batch(&mut table, &batch, beta.into(), stream, u, u * u);
        stream += 1;

        let g = PhaseSpaceGaussian::for_model(&model, beta)?;
        let contract = RngContract::new(args.seed, stream);
        let batch = montecarlo::sample_phase_space(&g, n, &contract)?;
        push_batch(&mut table, &batch, beta.into(), stream, u, u * u);
        stream += 1;
    }
    // The interference experiment has no temperature; one batch per run.
    let contract = RngContract::new(args.seed, stream);
    let batch = montecarlo::mode_interference_experiment(INTERFERENCE_MODES, n, &contract)?;
    push_batch(&mut table, &batch, Value::Missing, stream, 1.0, 1.0);
    table
        .extra_meta
        .push(("interference_modes", json!(INTERFERENCE_MODES)));
    Ok(table)
}

/// Returns the verify table plus the overall pass flag.
pub fn verify_table(args: &CommonArgs) -> Result<(Table, bool)> {
    let report = verify::run_verification(&VerifyOptions {
        seed: args.seed,
        mc_samples: args.samples,
    })?;
    let mut table = Table::new(vec![
        "module",
        "check",
        "observed",
        "threshold",
        "direction",
        "pass",
    ]);
    for c in &report.checks {
        table.push([
            c.module.into(),
            c.name.into(),
            c.observed.into(),
            c.threshold.into(),
            match c.direction {
                verify::Direction::AtMost => "at_most".into(),
                verify::Direction::AtLeast => "at_least".into(),
            },
            c.pass.into(),
        ]);
    }
    let all_pass = report.all_pass();
    table
        .extra_meta
        .push(("mc_samples", json!(report.mc_samples)));
    table.extra_meta.push(("all_pass", json!(all_pass)));
    table
        .extra_meta
        .push(("modules_covered", json!(report.modules())));
    Ok((table, all_pass))
}
