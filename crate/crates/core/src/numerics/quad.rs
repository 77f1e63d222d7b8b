//! Adaptive Simpson quadrature.

fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adapt<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(fa, flm, fm, a, m);
    let right = simpson(fm, frm, fb, m, b);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Integral of `f` over `[a, b]` to absolute tolerance `tol`.
///
/// Classic adaptive Simpson with the 1/15 error estimate; subdivision stops
/// at depth 48, which is far beyond anything the smooth integrands in this
/// crate require.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let m = 0.5 * (a + b);
    let fa = f(a);
    let fm = f(m);
    let fb = f(b);
    let whole = simpson(fa, fm, fb, a, b);
    adapt(f, a, b, fa, fm, fb, whole, tol, 48)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_is_near_exact() {
        let v = integrate(&|x| x * x * x - 2.0 * x, 0.0, 2.0, 1e-12);
        assert_relative_eq!(v, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn sine_over_half_period() {
        let v = integrate(&|x| x.sin(), 0.0, PI, 1e-12);
        assert_relative_eq!(v, 2.0, max_relative = 1e-11);
    }

    #[test]
    fn exponential_tail() {
        let v = integrate(&|x| (-x).exp(), 0.0, 50.0, 1e-13);
        assert_relative_eq!(v, 1.0, max_relative = 1e-11);
    }

    #[test]
    fn reversed_interval_flips_sign() {
        let fwd = integrate(&|x| x.cos(), 0.0, 1.0, 1e-12);
        let bwd = integrate(&|x| x.cos(), 1.0, 0.0, 1e-12);
        assert_relative_eq!(fwd, -bwd, max_relative = 1e-12);
    }
}
