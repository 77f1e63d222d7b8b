//! Bracketed root finding for monotone functions on the positive axis.

use crate::error::{Error, Result};

/// Solve `f(x) = target` for a strictly monotone `f` on `(0, inf)`.
///
/// Bisection is carried out on the geometric mean, i.e. in log space, so the
/// bracket may span hundreds of orders of magnitude. The initial bracket is
/// widened (up to 60 times by a factor of 64) if it does not straddle the
/// target. Convergence is to relative width `rel_tol`.
pub fn solve_monotone_log<F: Fn(f64) -> f64>(
    f: &F,
    target: f64,
    lo0: f64,
    hi0: f64,
    rel_tol: f64,
) -> Result<f64> {
    if !(lo0 > 0.0 && hi0 > lo0) {
        return Err(Error::Domain(format!(
            "invalid bracket [{lo0}, {hi0}]; need 0 < lo < hi"
        )));
    }
    let mut lo = lo0;
    let mut hi = hi0;
    let mut f_lo = f(lo);
    let mut f_hi = f(hi);
    let decreasing = f_lo > f_hi;
    // Orient so that g is increasing in x.
    let g = |v: f64| if decreasing { -v } else { v };
    let t = g(target);

    let mut expansions = 0;
    while g(f_lo) > t {
        lo /= 64.0;
        f_lo = f(lo);
        expansions += 1;
        if expansions > 60 || lo < f64::MIN_POSITIVE {
            return Err(Error::Numeric(format!(
                "root not bracketed from below: f({lo:e}) = {f_lo:e}, target {target:e}, \
                 initial bracket [{lo0:e}, {hi0:e}]"
            )));
        }
    }
    while g(f_hi) < t {
        hi *= 64.0;
        f_hi = f(hi);
        expansions += 1;
        if expansions > 60 || !hi.is_finite() {
            return Err(Error::Numeric(format!(
                "root not bracketed from above: f({hi:e}) = {f_hi:e}, target {target:e}, \
                 initial bracket [{lo0:e}, {hi0:e}]"
            )));
        }
    }

    for _ in 0..220 {
        if (hi / lo).ln() <= rel_tol {
            break;
        }
        let mid = (lo * hi).sqrt();
        if g(f(mid)) < t {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if (hi / lo).ln() > rel_tol {
        return Err(Error::Numeric(format!(
            "root finder did not converge: bracket [{lo:e}, {hi:e}], target {target:e}"
        )));
    }
    Ok((lo * hi).sqrt())
}
