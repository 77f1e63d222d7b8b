//! Embedded Dormand-Prince 5(4) integrator with adaptive step control.
//!
//! Scalar problems only; that is all the cross-checks in this crate need.

use crate::error::{Error, Result};

/// Tolerances and budget for [`solve_to_targets`].
#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    /// Initial step; `0.0` picks a conservative guess from the start point.
    pub initial_step: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions {
            rtol: 1e-10,
            atol: 1e-12,
            initial_step: 0.0,
            max_steps: 4_000_000,
        }
    }
}

// Dormand-Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

fn rk_step<F: Fn(f64, f64) -> f64>(f: &F, t: f64, y: f64, h: f64) -> (f64, f64) {
    let mut k = [0.0f64; 7];
    for i in 0..7 {
        let mut yi = y;
        for (j, kj) in k.iter().enumerate().take(i) {
            yi += h * A[i][j] * kj;
        }
        k[i] = f(t + C[i] * h, yi);
    }
    let mut y5 = y;
    let mut y4 = y;
    for i in 0..7 {
        y5 += h * B5[i] * k[i];
        y4 += h * B4[i] * k[i];
    }
    (y5, (y5 - y4).abs())
}

/// Integrate `y' = f(t, y)` from `(t0, y0)` and record the solution at each
/// of the strictly increasing `targets`.
pub fn solve_to_targets<F: Fn(f64, f64) -> f64>(
    f: &F,
    t0: f64,
    y0: f64,
    targets: &[f64],
    opts: &OdeOptions,
) -> Result<Vec<f64>> {
    if targets.is_empty() {
        return Ok(Vec::new());
    }
    if targets.windows(2).any(|w| w[0] >= w[1]) || targets[0] <= t0 {
        return Err(Error::Domain(format!(
            "ode targets must be strictly increasing and above t0 = {t0}"
        )));
    }

    let mut t = t0;
    let mut y = y0;
    let mut h = if opts.initial_step > 0.0 {
        opts.initial_step
    } else {
        (1e-3 * t0.abs()).max(1e-12)
    };
    let mut out = Vec::with_capacity(targets.len());
    let mut steps = 0usize;

    for &target in targets {
        while t < target {
            if steps >= opts.max_steps {
                return Err(Error::Numeric(format!(
                    "ode integrator exceeded {} steps at t = {t} (target {target})",
                    opts.max_steps
                )));
            }
            steps += 1;
            let h_try = h.min(target - t);
            let (y_new, err) = rk_step(f, t, y, h_try);
            let scale = opts.atol + opts.rtol * y.abs().max(y_new.abs());
            let err_norm = err / scale;
            if err_norm <= 1.0 {
                t += h_try;
                y = y_new;
                let grow = if err_norm == 0.0 {
                    5.0
                } else {
                    (0.9 * err_norm.powf(-0.2)).clamp(0.2, 5.0)
                };
                h = h_try * grow;
            } else {
                h = h_try * (0.9 * err_norm.powf(-0.2)).clamp(0.1, 0.9);
                if h < 1e-14 * t.abs().max(1.0) {
                    return Err(Error::Numeric(format!(
                        "ode step size collapsed at t = {t}"
                    )));
                }
            }
        }
        out.push(y);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn exponential_decay() {
        let sol =
            solve_to_targets(&|_, y| -y, 0.0, 1.0, &[1.0, 2.0], &OdeOptions::default()).unwrap();
        assert_relative_eq!(sol[0], (-1.0f64).exp(), max_relative = 1e-9);
        assert_relative_eq!(sol[1], (-2.0f64).exp(), max_relative = 1e-9);
    }

    #[test]
    fn riccati_matches_reciprocal() {
        // y' = -y^2 with y(t0) = 1/t0 has the exact solution y = 1/t; this is
        // the high-temperature regime the equilibrium-law oracle starts from.
        let t0 = 1e-6;
        let sol = solve_to_targets(
            &|_, y| -y * y,
            t0,
            1.0 / t0,
            &[0.5, 1.0, 20.0],
            &OdeOptions::default(),
        )
        .unwrap();
        assert_relative_eq!(sol[0], 2.0, max_relative = 1e-9);
        assert_relative_eq!(sol[1], 1.0, max_relative = 1e-9);
        assert_relative_eq!(sol[2], 0.05, max_relative = 1e-9);
    }

    #[test]
    fn rejects_unsorted_targets() {
        assert!(
            solve_to_targets(&|_, y| -y, 0.0, 1.0, &[2.0, 1.0], &OdeOptions::default()).is_err()
        );
    }
}
