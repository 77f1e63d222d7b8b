//! One-sample Kolmogorov-Smirnov goodness of fit.

/// Two-sided KS statistic of `samples` against the continuous CDF `cdf`:
/// `D_n = sup_x |F_n(x) - F(x)|`, with both one-sided gaps evaluated at the
/// jump points of the empirical CDF.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> f64 {
    assert!(!samples.is_empty(), "KS statistic of an empty sample");
    let mut sorted = samples.to_vec();
    sorted.sort_unstable_by(|a, b| a.total_cmp(b));
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        d = d.max(((i + 1) as f64 / n - f).abs());
        d = d.max((f - i as f64 / n).abs());
    }
    d
}

/// Asymptotic 1%-significance critical value, `1.63 / sqrt(n)`.
pub fn ks_critical_1pct(n: usize) -> f64 {
    1.63 / (n as f64).sqrt()
}

/// CDF of the exponential distribution with the given mean.
pub fn exponential_cdf(x: f64, mean: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -(-x / mean).exp_m1()
    }
}

/// Survival function of the asymptotic Kolmogorov distribution,
/// `Q(x) = 2 sum_{k>=1} (-1)^{k-1} e^{-2 k^2 x^2}`; `Q(D sqrt(n))` is the
/// large-sample p-value of an observed statistic `D`.
pub fn kolmogorov_survival(x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    let mut total = 0.0;
    for k in 1..=100u32 {
        let term = (-2.0 * (k as f64 * x).powi(2)).exp();
        if term < 1e-18 {
            break;
        }
        total += if k % 2 == 1 { term } else { -term };
    }
    (2.0 * total).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn statistic_on_a_tiny_sample() {
        // Empirical CDF of {0.5} vs U(0,1): D = max(|1 - 0.5|, |0.5 - 0|).
        assert_relative_eq!(ks_statistic(&[0.5], |x| x), 0.5, max_relative = 1e-15);
        // Perfectly spaced quantiles of U(0,1) minimize D at 1/(2n).
        let xs = [0.125, 0.375, 0.625, 0.875];
        assert_relative_eq!(ks_statistic(&xs, |x| x), 0.125, max_relative = 1e-12);
    }

    #[test]
    fn statistic_detects_wrong_distribution() {
        let xs: Vec<f64> = (0..1000).map(|i| (i as f64 + 0.5) / 1000.0).collect();
        // Uniform sample against an exponential CDF: gross mismatch.
        assert!(ks_statistic(&xs, |x| exponential_cdf(x, 1.0)) > 0.2);
        // Against the correct CDF the optimal-spacing statistic is 1/(2n).
        assert!(ks_statistic(&xs, |x| x) < 1e-3);
    }

    #[test]
    fn critical_value_matches_kolmogorov_tail() {
        // The 1% point of the Kolmogorov distribution is ~1.628; the
        // rounded 1.63 constant has survival just under 1%.
        let q = kolmogorov_survival(1.63);
        assert!((0.008..0.0105).contains(&q), "Q(1.63) = {q}");
        assert_relative_eq!(ks_critical_1pct(10_000), 0.0163, max_relative = 1e-12);
    }

    #[test]
    fn exponential_cdf_basics() {
        assert_eq!(exponential_cdf(-1.0, 1.0), 0.0);
        assert_relative_eq!(
            exponential_cdf(1.0, 1.0),
            1.0 - (-1.0f64).exp(),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            exponential_cdf(3.0, 3.0),
            1.0 - (-1.0f64).exp(),
            max_relative = 1e-15
        );
    }
}
