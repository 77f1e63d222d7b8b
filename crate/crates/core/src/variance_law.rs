//! From a quadratic variance ansatz to the equilibrium energy law.
//!
//! The requirement that the relative dispersion stay finite truncates
//! `sigma^2(U)` to a quadratic `a0 + a1 U + a2 U^2`. Combining it with the
//! fluctuation-dissipation relation `sigma^2 = -dU/dbeta` gives a separable
//! ODE whose solution is a shifted coth law when the discriminant
//! `q = a1^2 - 4 a0 a2` is positive, and the equipartition law when `q = 0`.
//! Wien's scaling law forces `a1 = 0`, at which point the largest root of
//! `sigma^2(U) = 0` is the zero-point energy and the coth law is Planck's.
//!
//! [`solve_mean_energy`] implements the closed forms; [`solve_mean_energy_ode`]
//! integrates the defining ODE with an adaptive Runge-Kutta scheme and serves
//! as the independent cross-check.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::ode::{self, OdeOptions};

/// Discriminants within this distance of zero collapse to the classical
/// branch; below round-off the two branches cannot be told apart.
const Q_SNAP: f64 = 1e-14;

/// Coefficient triple of the energy-variance ansatz
/// `sigma^2(U) = a0 + a1 U + a2 U^2`.
///
/// Construction validates `a2 > 0` (the dispersion must grow with energy)
/// and `q = a1^2 - 4 a0 a2 >= 0` (negative discriminants have no real roots
/// and are excluded for real-valued energies).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VarianceAnsatz {
    a0: f64,
    a1: f64,
    a2: f64,
    q: f64,
}

impl VarianceAnsatz {
    pub fn new(a0: f64, a1: f64, a2: f64) -> Result<Self> {
        for (name, v) in [("a0", a0), ("a1", a1), ("a2", a2)] {
            if !v.is_finite() {
                return Err(Error::Domain(format!("{name} must be finite, got {v}")));
            }
        }
        if a2 <= 0.0 {
            return Err(Error::Domain(format!(
                "a2 must be positive (dispersion must increase with energy), got {a2}"
            )));
        }
        let mut q = a1 * a1 - 4.0 * a0 * a2;
        if q.abs() <= Q_SNAP {
            q = 0.0;
        }
        if q < 0.0 {
            return Err(Error::Domain(format!(
                "discriminant q = {q} < 0 is excluded for real values of the energy \
                 (a0 = {a0}, a1 = {a1}, a2 = {a2})"
            )));
        }
        Ok(VarianceAnsatz { a0, a1, a2, q })
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    pub fn a1(&self) -> f64 {
        self.a1
    }

    pub fn a2(&self) -> f64 {
        self.a2
    }

    /// Discriminant `a1^2 - 4 a0 a2`, snapped to zero within 1e-14.
    pub fn q(&self) -> f64 {
        self.q
    }

    /// Roots of `sigma^2(U) = 0`, ordered `(smaller, larger)`.
    pub fn roots(&self) -> (f64, f64) {
        let half = self.q.sqrt() / (2.0 * self.a2);
        let center = -self.a1 / (2.0 * self.a2);
        (center - half, center + half)
    }
}

/// Which equilibrium family an ansatz generates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LawKind {
    /// `q = 0`: the classical 1/beta law.
    Equipartition,
    /// `q > 0`: a shifted coth law, Planck's once `a1 = 0` and `a2 = 1`.
    PlanckFamily,
}

/// Classified equilibrium law with its zero-point energy, the largest root
/// of the variance ansatz.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumLaw {
    pub kind: LawKind,
    pub e0: f64,
}

impl EquilibriumLaw {
    pub fn from_ansatz(ansatz: &VarianceAnsatz) -> Result<Self> {
        let (_, largest) = ansatz.roots();
        if largest < 0.0 {
            return Err(Error::Domain(format!(
                "largest root {largest} of the variance ansatz is negative; \
                 no physical zero-point energy"
            )));
        }
        let kind = if ansatz.q() == 0.0 {
            LawKind::Equipartition
        } else {
            LawKind::PlanckFamily
        };
        Ok(EquilibriumLaw { kind, e0: largest })
    }
}

/// The Planck ansatz for a given zero-point energy:
/// `(a0, a1, a2) = (-e0^2, 0, 1)` with `q = 4 e0^2`.
pub fn derive_planck_ansatz(e0: f64) -> Result<VarianceAnsatz> {
    if !(e0 >= 0.0 && e0.is_finite()) {
        return Err(Error::Domain(format!(
            "zero-point energy must be non-negative and finite, got e0 = {e0}"
        )));
    }
    VarianceAnsatz::new(-e0 * e0, 0.0, 1.0)
}

/// `sigma^2(U) = a0 + a1 U + a2 U^2`.
pub fn variance_from_u(ansatz: &VarianceAnsatz, u: f64) -> f64 {
    ansatz.a0 + ansatz.a1 * u + ansatz.a2 * u * u
}

/// Closed-form mean energy at inverse temperature `beta`:
/// `1/(a2 beta) - a1/(2 a2)` for `q = 0`, and
/// `(sqrt(q)/(2 a2)) coth(sqrt(q) beta / 2) - a1/(2 a2)` for `q > 0`.
pub fn solve_mean_energy(ansatz: &VarianceAnsatz, beta: f64) -> Result<f64> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::Domain(format!(
            "inverse temperature must be positive and finite, got beta = {beta}"
        )));
    }
    let shift = -ansatz.a1 / (2.0 * ansatz.a2);
    if ansatz.q == 0.0 {
        return Ok(1.0 / (ansatz.a2 * beta) + shift);
    }
    let half_sqrt_q = ansatz.q.sqrt() / 2.0;
    Ok(half_sqrt_q / ansatz.a2 / (half_sqrt_q * beta).tanh() + shift)
}

/// Dispersion as a function of beta:
/// `(q / 4 a2)(coth^2(sqrt(q) beta / 2) - 1)` for `q > 0`, evaluated as a
/// cancellation-free csch^2, and the classical `1/(a2 beta^2)` for `q = 0`.
pub fn dispersion_vs_beta(ansatz: &VarianceAnsatz, beta: f64) -> Result<f64> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::Domain(format!(
            "inverse temperature must be positive and finite, got beta = {beta}"
        )));
    }
    if ansatz.q == 0.0 {
        return Ok(1.0 / (ansatz.a2 * beta * beta));
    }
    let x = ansatz.q.sqrt() * beta / 2.0;
    let t = (-2.0 * x).exp();
    let one_minus_t = -(-2.0 * x).exp_m1();
    // coth^2 - 1 = csch^2 = 4t/(1-t)^2.
    Ok(ansatz.q / (4.0 * ansatz.a2) * 4.0 * t / (one_minus_t * one_minus_t))
}

/// Mean energy by adaptive Runge-Kutta integration of the defining ODE
/// `dU/dbeta = -sigma^2(U)`, anchored at `beta0 = 1e-6` with the exact
/// high-temperature asymptote `U(beta0) = 1/(a2 beta0) - a1/(2 a2)`.
///
/// This route shares no code with [`solve_mean_energy`] and is the oracle
/// used to validate it. `betas` must be strictly increasing and > 1e-6.
pub fn solve_mean_energy_ode(ansatz: &VarianceAnsatz, betas: &[f64]) -> Result<Vec<f64>> {
    let beta0 = 1e-6;
    let u0 = 1.0 / (ansatz.a2 * beta0) - ansatz.a1 / (2.0 * ansatz.a2);
    let (a0, a1, a2) = (ansatz.a0, ansatz.a1, ansatz.a2);
    let opts = OdeOptions {
        rtol: 1e-11,
        atol: 1e-13,
        ..OdeOptions::default()
    };
    ode::solve_to_targets(&|_, u| -(a0 + a1 * u + a2 * u * u), beta0, u0, betas, &opts)
}

/// Residual of the Wien-consistency identity for a coth-family law, in
/// scale-free units of `a2 e0^2 beta`.
///
/// Wien's displacement law is equivalent to
/// `a2 e0 b beta + (a1 / 2 a2) [ sinh(2 a2 b beta)/2 - sinh^2(a2 b beta) ]
///  = a2 b^2 beta` with `b = e0 + a1/(2 a2)`; the bracket collapses to
/// `(1 - e^{-2 a2 b beta})/2`, which is how it is evaluated here so that no
/// hyperbolic overflows. The residual vanishes for every temperature if and
/// only if `a1 = 0`.
pub fn wien_consistency_residual(ansatz: &VarianceAnsatz, e0: f64, beta: f64) -> Result<f64> {
    if ansatz.q <= 0.0 {
        return Err(Error::Domain(format!(
            "Wien consistency requires q > 0, got q = {}",
            ansatz.q
        )));
    }
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::Domain(format!(
            "inverse temperature must be positive and finite, got beta = {beta}"
        )));
    }
    if !(e0 > 0.0 && e0.is_finite()) {
        return Err(Error::Domain(format!(
            "zero-point energy must be positive and finite, got e0 = {e0}"
        )));
    }
    let (a1, a2) = (ansatz.a1, ansatz.a2);
    let b = e0 + a1 / (2.0 * a2);
    let lhs = if a1 == 0.0 {
        // The bracket is multiplied by zero; skip it so large arguments
        // cannot manufacture 0 * inf.
        a2 * e0 * b * beta
    } else {
        let bracket = -(-2.0 * a2 * b * beta).exp_m1() / 2.0;
        a2 * e0 * b * beta + a1 / (2.0 * a2) * bracket
    };
    let rhs = a2 * b * b * beta;
    Ok((lhs - rhs) / (a2 * e0 * e0 * beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const COTH_1: f64 = 1.3130352854993313;
    const CSCH2_1: f64 = 0.7240616609663105;
    // (sqrt(5)/2) coth(sqrt(5)/2) - 1/2, frozen from the 30-digit ODE oracle.
    const SHIFTED_CASE: f64 = 0.8856192538968806;

    #[test]
    fn constructor_validates() {
        assert!(VarianceAnsatz::new(1.0, 0.0, 1.0).is_err()); // q = -4
        assert!(VarianceAnsatz::new(-1.0, 0.0, 0.0).is_err()); // a2 = 0
        assert!(VarianceAnsatz::new(-1.0, 0.0, -1.0).is_err());
        assert!(VarianceAnsatz::new(f64::NAN, 0.0, 1.0).is_err());
        let a = VarianceAnsatz::new(-1.0, 0.0, 1.0).unwrap();
        assert_eq!(a.q(), 4.0);
    }

    #[test]
    fn discriminant_snaps_to_zero() {
        // q = 1e-15 by construction: within the round-off snap.
        let a = VarianceAnsatz::new((1.0 - 1e-15) / 4.0, 1.0, 1.0).unwrap();
        assert_eq!(a.q(), 0.0);
    }

    #[test]
    fn roots_zero_the_variance() {
        for (a0, a1, a2) in [(-1.0, 0.0, 1.0), (-1.0, 1.0, 1.0), (0.25, -1.5, 2.0)] {
            let a = VarianceAnsatz::new(a0, a1, a2).unwrap();
            let (lo, hi) = a.roots();
            assert!(variance_from_u(&a, lo).abs() < 1e-12);
            assert!(variance_from_u(&a, hi).abs() < 1e-12);
        }
    }

    #[test]
    fn planck_ansatz_values() {
        let a = derive_planck_ansatz(1.0).unwrap();
        assert_eq!((a.a0(), a.a1(), a.a2()), (-1.0, 0.0, 1.0));
        assert_eq!(a.q(), 4.0);
        let a = derive_planck_ansatz(2.5).unwrap();
        assert_eq!(a.a0(), -6.25);
        assert_eq!(a.q(), 25.0);
        assert_eq!(a.roots().1, 2.5);
        let a = derive_planck_ansatz(0.0).unwrap();
        assert_eq!((a.a0(), a.a1(), a.a2(), a.q()), (0.0, 0.0, 1.0, 0.0));
    }

    #[test]
    fn equilibrium_law_classification() {
        let cls = EquilibriumLaw::from_ansatz(&derive_planck_ansatz(0.0).unwrap()).unwrap();
        assert_eq!(cls.kind, LawKind::Equipartition);
        assert_eq!(cls.e0, 0.0);
        let pl = EquilibriumLaw::from_ansatz(&derive_planck_ansatz(1.5).unwrap()).unwrap();
        assert_eq!(pl.kind, LawKind::PlanckFamily);
        assert_eq!(pl.e0, 1.5);
        // A positive a1 with q = a1^2 puts the largest root at zero: allowed.
        let edge = VarianceAnsatz::new(0.0, 1.0, 1.0).unwrap();
        assert_eq!(EquilibriumLaw::from_ansatz(&edge).unwrap().e0, 0.0);
        // Both roots negative: rejected.
        let bad = VarianceAnsatz::new(0.75, 2.0, 1.0).unwrap();
        assert!(EquilibriumLaw::from_ansatz(&bad).is_err());
    }

    #[test]
    fn solve_mean_energy_known_values() {
        let planck = derive_planck_ansatz(1.0).unwrap();
        assert_relative_eq!(
            solve_mean_energy(&planck, 1.0).unwrap(),
            COTH_1,
            max_relative = 1e-14
        );
        let classical = VarianceAnsatz::new(0.0, 0.0, 1.0).unwrap();
        assert_eq!(solve_mean_energy(&classical, 2.0).unwrap(), 0.5);
        let shifted = VarianceAnsatz::new(-1.0, 1.0, 1.0).unwrap();
        assert_eq!(shifted.q(), 5.0);
        assert_relative_eq!(
            solve_mean_energy(&shifted, 1.0).unwrap(),
            SHIFTED_CASE,
            max_relative = 1e-14
        );
    }

    #[test]
    fn ode_route_matches_closed_form() {
        let betas = [0.05, 0.2, 1.0, 5.0, 20.0];
        for (a0, a1, a2) in [
            (-1.0, 0.0, 1.0),
            (-1.0, 1.0, 1.0),
            (0.0, 0.0, 1.0),
            (-0.3, -0.8, 2.0),
        ] {
            let ansatz = VarianceAnsatz::new(a0, a1, a2).unwrap();
            let numeric = solve_mean_energy_ode(&ansatz, &betas).unwrap();
            for (&beta, &u_num) in betas.iter().zip(&numeric) {
                let u = solve_mean_energy(&ansatz, beta).unwrap();
                assert_relative_eq!(u, u_num, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn variance_from_u_known_values() {
        let planck = derive_planck_ansatz(1.0).unwrap();
        assert_eq!(variance_from_u(&planck, 1.0), 0.0);
        assert_relative_eq!(
            variance_from_u(&planck, COTH_1),
            CSCH2_1,
            max_relative = 1e-13
        );
        let classical = VarianceAnsatz::new(0.0, 0.0, 1.0).unwrap();
        assert_eq!(variance_from_u(&classical, 3.0), 9.0);
    }

    #[test]
    fn variance_is_even_for_a1_zero() {
        let planck = derive_planck_ansatz(1.3).unwrap();
        for u in [0.0, 0.5, 1.7, 42.0] {
            assert_eq!(variance_from_u(&planck, u), variance_from_u(&planck, -u));
        }
    }

    #[test]
    fn dispersion_vs_beta_consistent_with_variance_of_u() {
        let planck = derive_planck_ansatz(1.0).unwrap();
        assert_relative_eq!(
            dispersion_vs_beta(&planck, 1.0).unwrap(),
            CSCH2_1,
            max_relative = 1e-13
        );
        // Freeze-out: thermal dispersion vanishes without cancellation.
        assert!(dispersion_vs_beta(&planck, 100.0).unwrap() < 1e-80);
        // q = 4, a2 = 1 coincides with the e0 = 1 Planck case.
        let same = VarianceAnsatz::new(-1.0, 0.0, 1.0).unwrap();
        assert_relative_eq!(
            dispersion_vs_beta(&same, 1.0).unwrap(),
            CSCH2_1,
            max_relative = 1e-13
        );
        for beta in [0.1, 0.7, 3.0] {
            let u = solve_mean_energy(&planck, beta).unwrap();
            assert_relative_eq!(
                dispersion_vs_beta(&planck, beta).unwrap(),
                variance_from_u(&planck, u),
                epsilon = 1e-12,
                max_relative = 1e-12
            );
        }
        // Classical branch.
        let classical = VarianceAnsatz::new(0.0, 0.0, 2.0).unwrap();
        assert_relative_eq!(
            dispersion_vs_beta(&classical, 4.0).unwrap(),
            1.0 / (2.0 * 16.0),
            max_relative = 1e-14
        );
    }

    #[test]
    fn fluctuation_dissipation_by_finite_difference() {
        use crate::numerics::diff;
        for (a0, a1, a2) in [(-1.0, 0.0, 1.0), (-1.0, 1.0, 1.0), (-0.3, -0.8, 2.0)] {
            let ansatz = VarianceAnsatz::new(a0, a1, a2).unwrap();
            for beta in [0.3, 1.0, 3.0] {
                let fd = -diff::derivative(
                    |b| solve_mean_energy(&ansatz, b).unwrap(),
                    beta,
                    diff::beta_step(beta),
                );
                let u = solve_mean_energy(&ansatz, beta).unwrap();
                assert_relative_eq!(fd, variance_from_u(&ansatz, u), max_relative = 1e-7);
            }
        }
    }

    #[test]
    fn wien_consistency_zero_iff_a1_zero() {
        let planck = VarianceAnsatz::new(-1.0, 0.0, 1.0).unwrap();
        assert!(wien_consistency_residual(&planck, 1.0, 1.7).unwrap().abs() < 1e-12);
        let with_a1 = VarianceAnsatz::new(-1.0, 0.5, 1.0).unwrap();
        let r1 = wien_consistency_residual(&with_a1, 1.0, 1.0).unwrap();
        let r2 = wien_consistency_residual(&with_a1, 1.0, 2.0).unwrap();
        assert!(r1.abs() > 1e-3);
        assert!(r2.abs() > 1e-3);
        // The residual depends on beta, which is what forces a1 = 0.
        assert!((r1 - r2).abs() > 1e-3);
    }

    #[test]
    fn wien_consistency_stable_at_large_beta() {
        let planck = VarianceAnsatz::new(-1.0, 0.0, 1.0).unwrap();
        assert!(wien_consistency_residual(&planck, 1.0, 1e4).unwrap().abs() < 1e-12);
        let with_a1 = VarianceAnsatz::new(-1.0, 0.5, 1.0).unwrap();
        assert!(wien_consistency_residual(&with_a1, 1.0, 1e4)
            .unwrap()
            .is_finite());
    }

    #[test]
    fn solution_stays_above_largest_root() {
        for (a0, a1, a2) in [(-1.0, 0.0, 1.0), (-1.0, 1.0, 1.0), (-0.3, -0.8, 2.0)] {
            let ansatz = VarianceAnsatz::new(a0, a1, a2).unwrap();
            let (_, largest) = ansatz.roots();
            for beta in [0.01, 0.1, 1.0, 10.0, 100.0] {
                assert!(solve_mean_energy(&ansatz, beta).unwrap() >= largest);
            }
        }
    }

    #[test]
    fn high_temperature_anchor() {
        for e0 in [0.5, 1.0, 2.0] {
            let ansatz = derive_planck_ansatz(e0).unwrap();
            let u = solve_mean_energy(&ansatz, 1e-6).unwrap();
            assert_relative_eq!(u * 1e-6, 1.0, max_relative = 1e-4);
        }
    }
}
