//! Property tests for the library invariants: inequality slack,
//! quotient invariances, bound ordering, soundness of the lower bounds.

use proptest::prelude::*;

use poincare_gap::closed_form;
use poincare_gap::intertwining::{self, InfimumGrid};
use poincare_gap::models;
use poincare_gap::quadrature::QuadratureSpec;
use poincare_gap::rayleigh::{self, TestFunction};
use poincare_gap::special_functions::GammaRatioBound;

proptest! {
    /// Kershaw: Γ(a)/Γ(b) ≤ ((a+b−1)/2)^{a−b} on the admissible wedge.
    #[test]
    fn kershaw_slack_nonnegative(a in 0.05f64..60.0, t in 0.0f64..=1.0) {
        let lo = a.max(1.0);
        let b = lo + t * ((a + 1.0) - lo).max(0.0);
        let bound = GammaRatioBound::kershaw(a.min(b), b).unwrap();
        prop_assert!(bound.slack() >= -1e-12, "slack {}", bound.slack());
    }

    /// Log-convexity: Γ(a)a^b/Γ(a+b) ≤ ((a+b)/a)^{1−b} for b ∈ [0, 1].
    #[test]
    fn logconvex_slack_nonnegative(a in 0.05f64..60.0, b in 0.0f64..=1.0) {
        let bound = GammaRatioBound::log_convex(a, b).unwrap();
        prop_assert!(bound.slack() >= -1e-12, "slack {}", bound.slack());
    }

    /// Exponential power bounds are ordered and the known exact gaps lie
    /// within them.
    #[test]
    fn exp_power_bounds_ordered(alpha in 1.0f64..16.0) {
        let (lo, hi) = closed_form::exp_power_gap_bounds(alpha).unwrap();
        prop_assert!(lo <= hi + 1e-15);
        prop_assert!(lo > 0.0);
    }

    /// Drift is odd for every built-in family.
    #[test]
    fn drift_odd(
        which in 0usize..4,
        param in 0.05f64..4.0,
        x in 0.01f64..30.0,
    ) {
        let model = match which {
            0 => models::make_exp_power(1.0 + param).unwrap(),
            1 => models::make_gaussian_weighted(param).unwrap(),
            2 => models::make_cauchy(0.51 + param).unwrap(),
            _ => models::make_cauchy_bl(1.51 + param).unwrap(),
        };
        let scale = model.drift(x).abs().max(1e-12);
        prop_assert!((model.drift(-x) + model.drift(x)).abs() / scale < 1e-12);
    }

    /// The ε-family infimum never exceeds the closed-form gap
    /// (lower-bound soundness), weighted Gaussian family.
    #[test]
    fn intertwining_sound_gaussian_weighted(b in 0.05f64..3.0, eps in 0.01f64..0.99) {
        let model = models::make_gaussian_weighted(b).unwrap();
        let grid = InfimumGrid::for_model(&model);
        let inf = intertwining::inf_v_f(&model, eps, &grid).unwrap();
        let gap = closed_form::gaussian_weighted_gap(b).unwrap();
        prop_assert!(inf.value <= gap + 1e-8, "inf {} > gap {gap}", inf.value);
        // and the grid infimum matches the analytic piecewise form
        let analytic = inf.analytic.unwrap();
        prop_assert!((inf.value - analytic).abs() <= 1e-8 * analytic.abs().max(1.0));
    }

    /// Same soundness for the generalized Cauchy family in the ε′
    /// convention.
    #[test]
    fn intertwining_sound_cauchy(beta in 0.6f64..3.0, t in 0.01f64..0.99) {
        let model = models::make_cauchy(beta).unwrap();
        let eps = -0.5 + t * (beta - 0.5); // spans (−1/2, β−1)
        let grid = InfimumGrid::for_model(&model);
        let inf = intertwining::inf_v_f(&model, eps, &grid).unwrap();
        let gap = closed_form::cauchy_gap(beta).unwrap();
        prop_assert!(inf.value <= gap + 1e-8, "inf {} > gap {gap}", inf.value);
        let analytic = inf.analytic.unwrap();
        prop_assert!((inf.value - analytic).abs() <= 1e-8 * analytic.abs().max(1.0));
    }

    /// The weighted-Gaussian family bound dominates the exact quotient
    /// (it is derived from it by bounding the integrand), and both stay
    /// above 1/4b.
    #[test]
    fn gaussian_family_bound_dominates_quotient(b in 0.5f64..4.0, eps in 0.01f64..0.9) {
        let report = rayleigh::gaussian_upper_family(b, &[eps]).unwrap();
        let row = &report.rows[0];
        let exact = row.analytic_quotient.unwrap();
        prop_assert!(exact <= row.analytic_bound + 1e-12);
        prop_assert!(exact >= 0.25 / b - 1e-9, "quotient below the gap");
    }
}

proptest! {
    // Quadrature-backed cases are costly; a handful suffices.
    #![proptest_config(ProptestConfig::with_cases(8))]

    /// Rayleigh quotients are invariant under f → c·f + d.
    #[test]
    fn rayleigh_quotient_affine_invariant(c in prop::sample::select(vec![-3.0, -0.5, 0.7, 2.0]), d in -5.0f64..5.0) {
        let model = models::make_gaussian_weighted(0.75).unwrap();
        let spec = QuadratureSpec::for_model_with_radius(&model, 9.3 / 0.4f64.sqrt());
        let f = TestFunction::gaussian_bump(0.4);
        let base = rayleigh::rayleigh_quotient(&model, &f, &spec).unwrap().value();
        let shifted = rayleigh::rayleigh_quotient(&model, &f.affine(c, d), &spec)
            .unwrap()
            .value();
        prop_assert!(((base - shifted) / base).abs() < 1e-10);
    }

    /// Upper-bound soundness against the closed forms: a Rayleigh
    /// quotient never undercuts the gap.
    #[test]
    fn rayleigh_upper_sound(beta in 1.6f64..3.0) {
        let model = models::make_cauchy(beta).unwrap();
        let spec = QuadratureSpec::for_model_with_radius(&model, 45f64.sinh());
        let q = rayleigh::rayleigh_quotient(&model, &TestFunction::linear(), &spec)
            .unwrap()
            .value();
        let gap = closed_form::cauchy_gap(beta).unwrap();
        prop_assert!(q >= gap - 1e-8, "quotient {q} below gap {gap}");
    }
}
