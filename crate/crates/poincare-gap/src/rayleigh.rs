//! Variational upper bounds: Rayleigh quotients of explicit test-function
//! families, with their analytic expressions and ε-limits.

use std::sync::Arc;

use crate::models::{DiffusionModel, EstimateKind, GapEstimate, ScalarFn};
use crate::quadrature::{self, QuadratureSpec};
use crate::search::richardson_limit;
use crate::special_functions::erfcx;
use crate::{Error, Result};

/// A differentiable scalar test function f with its derivative.
#[derive(Clone)]
pub struct TestFunction {
    f: ScalarFn,
    f_prime: ScalarFn,
    pub label: String,
    pub epsilon: Option<f64>,
}

impl std::fmt::Debug for TestFunction {
    fn fmt(&self, fmt: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fmt.debug_struct("TestFunction")
            .field("label", &self.label)
            .field("epsilon", &self.epsilon)
            .finish_non_exhaustive()
    }
}

impl TestFunction {
    pub fn new(
        label: impl Into<String>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        f_prime: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            f: Arc::new(f),
            f_prime: Arc::new(f_prime),
            label: label.into(),
            epsilon: None,
        }
    }

    fn with_epsilon(mut self, eps: f64) -> Self {
        self.epsilon = Some(eps);
        self
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn deriv(&self, x: f64) -> f64 {
        (self.f_prime)(x)
    }

    /// f(x) = x, the linear test function.
    pub fn linear() -> Self {
        Self::new("f(x)=x", |x| x, |_| 1.0)
    }

    /// f(x) = x e^{(1−ε)x²/4}, the weighted-Gaussian upper-bound family.
    pub fn gaussian_bump(eps: f64) -> Self {
        let a = (1.0 - eps) / 4.0;
        Self::new(
            format!("f(x)=x·exp((1−ε)x²/4), ε={eps}"),
            move |x| x * (a * x * x).exp(),
            move |x| (1.0 + 2.0 * a * x * x) * (a * x * x).exp(),
        )
        .with_epsilon(eps)
    }

    /// f(x) = x (1+x²)^ε, the generalized-Cauchy upper-bound family.
    pub fn cauchy_bump(eps: f64) -> Self {
        Self::new(
            format!("f(x)=x·(1+x²)^ε, ε={eps}"),
            move |x| x * (1.0 + x * x).powf(eps),
            move |x| (1.0 + x * x).powf(eps - 1.0) * (1.0 + (2.0 * eps + 1.0) * x * x),
        )
        .with_epsilon(eps)
    }

    /// f(x) = e^{εx²/2}, the Gaussian weight-optimality family.
    pub fn exp_quadratic(eps: f64) -> Self {
        Self::new(
            format!("f(x)=exp(εx²/2), ε={eps}"),
            move |x| (0.5 * eps * x * x).exp(),
            move |x| eps * x * (0.5 * eps * x * x).exp(),
        )
        .with_epsilon(eps)
    }

    /// f(x) = (1+x²)^ε, the Cauchy weight-optimality family.
    pub fn cauchy_power(eps: f64) -> Self {
        Self::new(
            format!("f(x)=(1+x²)^ε, ε={eps}"),
            move |x| (1.0 + x * x).powf(eps),
            move |x| 2.0 * eps * x * (1.0 + x * x).powf(eps - 1.0),
        )
        .with_epsilon(eps)
    }

    /// c·f + d; the Rayleigh quotient is invariant under this.
    pub fn affine(&self, c: f64, d: f64) -> Self {
        let f = Arc::clone(&self.f);
        let fp = Arc::clone(&self.f_prime);
        Self {
            f: Arc::new(move |x| c * f(x) + d),
            f_prime: Arc::new(move |x| c * fp(x)),
            label: format!("{c}·({}) + {d}", self.label),
            epsilon: self.epsilon,
        }
    }

    /// f′ against centered differences of f, relative 1e−6 at the given
    /// points.
    pub fn derivative_consistent(&self, xs: &[f64]) -> bool {
        xs.iter().all(|&x| {
            let h = 1e-6 * (1.0 + x.abs());
            let fd = (self.eval(x + h) - self.eval(x - h)) / (2.0 * h);
            let an = self.deriv(x);
            let scale = an.abs().max(fd.abs()).max(1e-6);
            ((an - fd) / scale).abs() < 1e-6
        })
    }

    /// Positive derivative on the given grid (membership in the class of
    /// increasing functions the intertwining bound requires).
    pub fn increasing_on(&self, xs: &[f64]) -> bool {
        xs.iter().all(|&x| self.deriv(x) > 0.0)
    }
}

/// energy(f)/variance(f); by the variational identity this is an upper
/// bound on λ₁(−L).
pub fn rayleigh_quotient(
    model: &DiffusionModel,
    f: &TestFunction,
    spec: &QuadratureSpec,
) -> Result<GapEstimate> {
    let var = quadrature::variance(model, f, spec)?;
    if var <= 1e-14 {
        return Err(Error::DegenerateTestFunction { variance: var });
    }
    let en = quadrature::energy(model, f, spec)?;
    GapEstimate::new(
        en / var,
        EstimateKind::UpperBound,
        format!("rayleigh {}", f.label),
    )
}

/// One ε sample of an upper-bound family.
#[derive(Debug, Clone, Copy)]
pub struct FamilyRow {
    pub epsilon: f64,
    /// The displayed analytic bound at this ε.
    pub analytic_bound: f64,
    /// Exact analytic value of the quotient, where a closed form exists.
    pub analytic_quotient: Option<f64>,
    /// Quadrature evaluation of the same quotient (cross-check).
    pub quadrature_quotient: Option<f64>,
}

/// An ε-family of upper bounds with its limit.
#[derive(Debug, Clone)]
pub struct UpperFamilyReport {
    pub rows: Vec<FamilyRow>,
    /// The analytic ε-limit the family tends to.
    pub analytic_limit: f64,
    /// Richardson extrapolation of the last grid points toward the limit.
    pub extrapolated_limit: f64,
    /// Min over the grid of the analytic bound (a valid upper bound).
    pub best: GapEstimate,
}

/// Exact quotient of f = x e^{(1−ε)x²/4} on the weighted Gaussian model:
/// Var = ε^{−3/2} and the energy reduces to erfcx-type integrals.
fn gaussian_family_exact_quotient(b: f64, eps: f64) -> f64 {
    let z = (eps / (2.0 * b)).sqrt();
    let i0 = std::f64::consts::PI / b.sqrt() * erfcx(z) / (2.0 * std::f64::consts::PI).sqrt();
    let i1 = (eps.powf(-0.5) - i0) / b;
    let i2 = (eps.powf(-1.5) - i1) / b;
    let energy = i0 + (1.0 - eps) * i1 + (1.0 - eps) * (1.0 - eps) * i2 / 4.0;
    energy * eps.powf(1.5)
}

/// Upper-bound family f(x) = x e^{(1−ε)x²/4} for the weighted Gaussian,
/// b ≥ 1/2. Reports, per grid ε, the displayed bound
/// (1−ε)²/4b + (1−ε+b)ε/b, the exact quotient, and the quadrature
/// quotient; all tend to 1/(4b) as ε → 0.
pub fn gaussian_upper_family(b: f64, eps_grid: &[f64]) -> Result<UpperFamilyReport> {
    if !(b >= 0.5) {
        return Err(Error::InvalidParameter {
            name: "b",
            value: b,
            reason: "the ε-family upper bound is for the region b ≥ 1/2",
        });
    }
    if eps_grid.is_empty() {
        return Err(Error::EmptyGrid("gaussian_upper_family"));
    }
    if let Some(&bad) = eps_grid.iter().find(|&&e| !(e > 0.0 && e < 1.0)) {
        return Err(Error::InvalidParameter {
            name: "eps",
            value: bad,
            reason: "eps_grid must lie in (0,1)",
        });
    }

    let mut eps_sorted: Vec<f64> = eps_grid.to_vec();
    eps_sorted.sort_by(|a, b| b.total_cmp(a)); // decreasing toward the ε→0 limit

    let sqrt_two_pi = (2.0 * std::f64::consts::PI).sqrt();
    let mut rows = Vec::with_capacity(eps_sorted.len());
    for &eps in &eps_sorted {
        let bound = (1.0 - eps) * (1.0 - eps) / (4.0 * b) + (1.0 - eps + b) * eps / b;
        let exact = gaussian_family_exact_quotient(b, eps);
        // Fused integrands: f itself overflows pointwise for small ε, but
        // f²dμ and σ²f′²dμ collapse to polynomials times e^{−εx²/2}.
        let radius = 9.5 / eps.sqrt();
        let spec = QuadratureSpec::new(radius, 64, crate::quadrature::QuadRule::AdaptiveBisection, 1e-11)?;
        let var_integrand = move |x: f64| x * x * (-0.5 * eps * x * x).exp();
        let energy_integrand = move |x: f64| {
            let t = 1.0 + 0.5 * (1.0 - eps) * x * x;
            t * t * (-0.5 * eps * x * x).exp() / (1.0 + b * x * x)
        };
        let var = crate::quadrature::integrate_plain(&var_integrand, -radius, radius, &spec)?
            / sqrt_two_pi;
        let energy = crate::quadrature::integrate_plain(&energy_integrand, -radius, radius, &spec)?
            / sqrt_two_pi;
        rows.push(FamilyRow {
            epsilon: eps,
            analytic_bound: bound,
            analytic_quotient: Some(exact),
            quadrature_quotient: Some(energy / var),
        });
    }

    let limit = 1.0 / (4.0 * b);
    let eps_tail: Vec<f64> = rows.iter().map(|r| r.epsilon).collect();
    let bound_tail: Vec<f64> = rows.iter().map(|r| r.analytic_bound).collect();
    let extrapolated = richardson_limit(&eps_tail, &bound_tail, 0.0);
    let best_value = bound_tail.iter().copied().fold(f64::INFINITY, f64::min);
    let best = GapEstimate::new(
        best_value,
        EstimateKind::UpperBound,
        format!("rayleigh family x·exp((1−ε)x²/4), best of {} ε", rows.len()),
    )?;
    Ok(UpperFamilyReport {
        rows,
        analytic_limit: limit,
        extrapolated_limit: extrapolated,
        best,
    })
}

/// Upper-bound family f(x) = x(1+x²)^ε for the generalized Cauchy,
/// 1/2 < β ≤ 3/2 and ε < (2β−3)/4. The quotient is exactly
/// 2(β−1) + 6ε²/(β−2ε); letting ε ↑ (2β−3)/4 gives (β−1/2)².
pub fn cauchy_upper_family(beta: f64, eps_grid: &[f64]) -> Result<UpperFamilyReport> {
    if !(beta > 0.5 && beta <= 1.5) {
        return Err(Error::InvalidParameter {
            name: "beta",
            value: beta,
            reason: "the ε-family upper bound is for 1/2 < β ≤ 3/2",
        });
    }
    if eps_grid.is_empty() {
        return Err(Error::EmptyGrid("cauchy_upper_family"));
    }
    let eps_crit = (2.0 * beta - 3.0) / 4.0;
    if let Some(&bad) = eps_grid.iter().find(|&&e| !(e < eps_crit)) {
        return Err(Error::InvalidParameter {
            name: "eps",
            value: bad,
            reason: "integrability requires ε < (2β−3)/4",
        });
    }

    let model = crate::models::make_cauchy(beta)?;
    let mut eps_sorted: Vec<f64> = eps_grid.to_vec();
    eps_sorted.sort_by(|a, b| a.total_cmp(b)); // increasing toward ε ↑ critical

    let mut rows = Vec::with_capacity(eps_sorted.len());
    for &eps in &eps_sorted {
        let quotient = 2.0 * (beta - 1.0) + 6.0 * eps * eps / (beta - 2.0 * eps);
        // The quadrature cross-check needs the integrand tail exponent
        // 2β − 4ε − 3 to be bounded away from 0; evaluate it for grid
        // points at distance ≥ 0.1 from the critical ε.
        let quad = if eps_crit - eps >= 0.1 {
            let f = TestFunction::cauchy_bump(eps);
            let spec = QuadratureSpec::for_model_with_radius(&model, 45f64.sinh());
            Some(rayleigh_quotient(&model, &f, &spec)?.value())
        } else {
            None
        };
        rows.push(FamilyRow {
            epsilon: eps,
            analytic_bound: quotient,
            analytic_quotient: Some(quotient),
            quadrature_quotient: quad,
        });
    }

    let limit = (beta - 0.5) * (beta - 0.5);
    let eps_tail: Vec<f64> = rows.iter().map(|r| r.epsilon).collect();
    let bound_tail: Vec<f64> = rows.iter().map(|r| r.analytic_bound).collect();
    let extrapolated = richardson_limit(&eps_tail, &bound_tail, eps_crit);
    let best_value = bound_tail.iter().copied().fold(f64::INFINITY, f64::min);
    let best = GapEstimate::new(
        best_value,
        EstimateKind::UpperBound,
        format!("rayleigh family x·(1+x²)^ε, best of {} ε", rows.len()),
    )?;
    Ok(UpperFamilyReport {
        rows,
        analytic_limit: limit,
        extrapolated_limit: extrapolated,
        best,
    })
}

/// One ε sample of a weight-optimality demonstration.
#[derive(Debug, Clone, Copy)]
pub struct OptimalityRow {
    pub epsilon: f64,
    pub variance: f64,
    pub energy: f64,
    /// energy/variance; an upper bound on λ₁ that must tend to 0.
    pub quotient: f64,
}

/// Weight-optimality of 1/(1+bx²) for the Gaussian: with
/// σ²(x) = (1+x²)^{−a}, a > 1, the quotients of f_ε(x) = e^{εx²/2}
/// tend to 0 as ε ↑ 1/2, so λ₁ = 0.
///
/// Var is the exact 1/√(1−2ε) − 1/(1−ε); the energy integral
/// ε²∫x²(1+x²)^{−a}e^{−(1−2ε)x²}dx/√(2π) is evaluated by quadrature
/// (rescaled by u = x√(1−2ε) so the integrand stays O(1)-scaled).
pub fn weight_optimality_gaussian(a: f64, eps_grid: &[f64]) -> Result<Vec<OptimalityRow>> {
    if !(a > 1.0) {
        return Err(Error::InvalidParameter {
            name: "a",
            value: a,
            reason: "the counterexample weight needs a > 1",
        });
    }
    if (1.5 - a) <= 0.0 && (1.5 - a).fract() == 0.0 {
        return Err(Error::InvalidParameter {
            name: "a",
            value: a,
            reason: "3/2 − a hits a Gamma pole",
        });
    }
    if eps_grid.is_empty() {
        return Err(Error::EmptyGrid("weight_optimality_gaussian"));
    }
    if let Some(&bad) = eps_grid.iter().find(|&&e| !(e > 0.0 && e < 0.5)) {
        return Err(Error::InvalidParameter {
            name: "eps",
            value: bad,
            reason: "eps_grid must lie in (0, 1/2)",
        });
    }

    let spec = QuadratureSpec::new(40.0, 64, crate::quadrature::QuadRule::AdaptiveBisection, 1e-10)?;
    let mut rows = Vec::with_capacity(eps_grid.len());
    for &eps in eps_grid {
        let c = 1.0 - 2.0 * eps;
        let variance = 1.0 / c.sqrt() - 1.0 / (1.0 - eps);
        // u = √c · x: ∫x²(1+x²)^{-a}e^{-cx²/2}dx = c^{-3/2}∫u²(1+u²/c)^{-a}e^{-u²/2}du
        let integrand = move |u: f64| {
            let x2_over = u * u / c;
            u * u * (-a * x2_over.ln_1p()).exp() * (-0.5 * u * u).exp()
        };
        let integral = crate::quadrature::integrate_plain(&integrand, -40.0, 40.0, &spec)?;
        let energy =
            eps * eps * c.powf(-1.5) * integral / (2.0 * std::f64::consts::PI).sqrt();
        rows.push(OptimalityRow {
            epsilon: eps,
            variance,
            energy,
            quotient: energy / variance,
        });
    }
    rows.sort_by(|r, s| r.epsilon.total_cmp(&s.epsilon));
    Ok(rows)
}

/// Asymptotic form of the weight-optimality energy as ε ↑ 1/2 (from the
/// tail behaviour (1+x²)^{−a} ≈ x^{−2a}):
/// 2^{3/2−a} ε² Γ(3/2−a) (1−2ε)^{a−3/2} / √(2π). Valid for a < 3/2.
pub fn weight_optimality_gaussian_asymptotic_energy(a: f64, eps: f64) -> Result<f64> {
    if !(a > 1.0 && a < 1.5) {
        return Err(Error::InvalidParameter {
            name: "a",
            value: a,
            reason: "the Gamma form needs 1 < a < 3/2 (positive Gamma argument)",
        });
    }
    let c = 1.0 - 2.0 * eps;
    let lg = crate::special_functions::log_gamma(1.5 - a)?;
    Ok(2f64.powf(1.5 - a) * eps * eps * lg.exp() * c.powf(a - 1.5)
        / (2.0 * std::f64::consts::PI).sqrt())
}

/// Weight-optimality of 1+x² for the generalized Cauchy: with
/// σ²(x) = (1+x²)^b, 0 < b < 1, the quotients of f = (1+x²)^ε tend to 0
/// as ε ↑ β/2 − 1/4 (equivalently λ₁^{−1} diverges).
///
/// All three μ-integrals have exact Gamma-ratio forms (a := β−2ε):
/// μ(f) = Γ(β−ε−1/2)Γ(β)/(Γ(β−1/2)Γ(β−ε)),
/// μ(f²) = Γ(a−1/2)Γ(β)/(Γ(β−1/2)Γ(a)),
/// energy = 2ε²Γ(a+1/2−b)Γ(β)/(Γ(β−1/2)Γ(a+2−b)).
pub fn weight_optimality_cauchy(
    beta: f64,
    b: f64,
    eps_grid: &[f64],
) -> Result<Vec<OptimalityRow>> {
    if !(b > 0.0 && b < 1.0) {
        return Err(Error::InvalidParameter {
            name: "b",
            value: b,
            reason: "the counterexample weight needs 0 < b < 1",
        });
    }
    if !(beta > 0.5) {
        return Err(Error::InvalidParameter {
            name: "beta",
            value: beta,
            reason: "integrability requires beta > 1/2",
        });
    }
    let eps_max = beta / 2.0 - 0.25;
    if eps_grid.is_empty() {
        return Err(Error::EmptyGrid("weight_optimality_cauchy"));
    }
    if let Some(&bad) = eps_grid.iter().find(|&&e| !(e > 0.0 && e < eps_max)) {
        return Err(Error::InvalidParameter {
            name: "eps",
            value: bad,
            reason: "eps_grid must lie in (0, β/2 − 1/4)",
        });
    }

    let lg = |z: f64| crate::special_functions::log_gamma(z);
    let base = lg(beta)? - lg(beta - 0.5)?;
    let mut rows = Vec::with_capacity(eps_grid.len());
    for &eps in eps_grid {
        let a = beta - 2.0 * eps;
        let mu_f = (lg(beta - eps - 0.5)? + base - lg(beta - eps)?).exp();
        let mu_f2 = (lg(a - 0.5)? + base - lg(a)?).exp();
        let energy = 2.0 * eps * eps * (lg(a + 0.5 - b)? + base - lg(a + 2.0 - b)?).exp();
        let variance = mu_f2 - mu_f * mu_f;
        rows.push(OptimalityRow {
            epsilon: eps,
            variance,
            energy,
            quotient: energy / variance,
        });
    }
    rows.sort_by(|r, s| r.epsilon.total_cmp(&s.epsilon));
    Ok(rows)
}

/// Quadrature cross-check of one [`weight_optimality_cauchy`] row on the
/// custom model μ ∝ (1+x²)^{−β}, σ² = (1+x²)^b. Only meaningful for ε at
/// a comfortable distance from the critical value.
pub fn weight_optimality_cauchy_quadrature(beta: f64, b: f64, eps: f64) -> Result<OptimalityRow> {
    let model = crate::models::make_custom(
        move |x: f64| 2.0 * beta * x.hypot(1.0).ln(),
        move |x: f64| 2.0 * beta * x / (1.0 + x * x),
        move |x: f64| {
            let d = 1.0 + x * x;
            2.0 * beta * (1.0 - x * x) / (d * d)
        },
        move |x: f64| (1.0 + x * x).powf(b),
        move |x: f64| 2.0 * b * x * (1.0 + x * x).powf(b - 1.0),
        crate::models::TailDecay::Polynomial {
            power: 2.0 * beta,
        },
    );
    let f = TestFunction::cauchy_power(eps);
    let spec = QuadratureSpec::for_model_with_radius(&model, 45f64.sinh());
    let variance = quadrature::variance(&model, &f, &spec)?;
    let energy = quadrature::energy(&model, &f, &spec)?;
    Ok(OptimalityRow {
        epsilon: eps,
        variance,
        energy,
        quotient: energy / variance,
    })
}

/// Default ε grid for [`gaussian_upper_family`]: geometric descent to 0.
pub fn default_gaussian_eps_grid() -> Vec<f64> {
    (0..8).map(|k| 0.4 * 0.25f64.powi(k)).collect()
}

/// Default ε grid for [`cauchy_upper_family`]: geometric approach to the
/// critical (2β−3)/4 from below.
pub fn default_cauchy_eps_grid(beta: f64) -> Vec<f64> {
    let crit = (2.0 * beta - 3.0) / 4.0;
    (0..8).map(|k| crit - 0.5 * 0.25f64.powi(k)).collect()
}
