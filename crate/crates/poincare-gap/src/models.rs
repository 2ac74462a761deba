//! Measure/weight families and the diffusion operator data model.
//!
//! A [`DiffusionModel`] packages a potential V (with V′, V″) and a weight
//! σ² (with (σ²)′) for the generator σ²f″ + ((σ²)′ − σ²V′)f′, reversible
//! with respect to μ ∝ e^{−V}. The built-in families are the ones the
//! theorems cover:
//!
//! | constructor | μ | σ² |
//! |---|---|---|
//! | [`make_exp_power`] | ∝ e^{−\|x\|^α/α} | 1 |
//! | [`make_gaussian_weighted`] | standard Gaussian | 1/(1+bx²) |
//! | [`make_cauchy`] | ∝ (1+x²)^{−β} | 1+x² |
//! | [`make_cauchy_bl`] | ∝ (1+x²/(2β−1))^{−β} | 1+x²/(2β−1) |
//!
//! All built-in potentials and weights are even, so drifts are odd.

use std::sync::Arc;

use crate::{Error, Result};

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Which built-in family a model came from (drives truncation and the
/// closed-form lookups).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FamilyTag {
    ExpPower { alpha: f64 },
    GaussianWeighted { b: f64 },
    Cauchy { beta: f64 },
    CauchyBl { beta: f64 },
    Custom,
}

impl FamilyTag {
    pub fn label(&self) -> String {
        match self {
            FamilyTag::ExpPower { alpha } => format!("exp-power:alpha={alpha}"),
            FamilyTag::GaussianWeighted { b } => format!("gauss-weighted:b={b}"),
            FamilyTag::Cauchy { beta } => format!("cauchy:beta={beta}"),
            FamilyTag::CauchyBl { beta } => format!("cauchy-bl:beta={beta}"),
            FamilyTag::Custom => "custom".to_string(),
        }
    }
}

/// Tail behaviour of the density e^{−V}, used to pick truncation radii.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailDecay {
    /// Density decays like e^{−Θ(|x|^exponent)}.
    ExponentialPower { exponent: f64 },
    /// Density decays like |x|^{−power} (power > 1 for integrability).
    Polynomial { power: f64 },
}

/// Immutable potential/weight pair with analytic derivatives.
///
/// All evaluation methods are pure; the model is safe to share across
/// concurrent workers.
#[derive(Clone)]
pub struct DiffusionModel {
    potential_v: ScalarFn,
    potential_v_prime: ScalarFn,
    potential_v_second: ScalarFn,
    weight_sq: ScalarFn,
    weight_sq_prime: ScalarFn,
    /// ln σ²(x), kept separate so heavy-tailed grids can stay in log scale.
    log_weight_sq: ScalarFn,
    family_tag: FamilyTag,
    tail_decay: TailDecay,
}

impl std::fmt::Debug for DiffusionModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DiffusionModel")
            .field("family_tag", &self.family_tag)
            .field("tail_decay", &self.tail_decay)
            .finish_non_exhaustive()
    }
}

impl DiffusionModel {
    pub fn v(&self, x: f64) -> f64 {
        (self.potential_v)(x)
    }
    pub fn v_prime(&self, x: f64) -> f64 {
        (self.potential_v_prime)(x)
    }
    pub fn v_second(&self, x: f64) -> f64 {
        (self.potential_v_second)(x)
    }
    pub fn sigma_sq(&self, x: f64) -> f64 {
        (self.weight_sq)(x)
    }
    pub fn sigma_sq_prime(&self, x: f64) -> f64 {
        (self.weight_sq_prime)(x)
    }
    pub fn log_sigma_sq(&self, x: f64) -> f64 {
        (self.log_weight_sq)(x)
    }
    pub fn family_tag(&self) -> FamilyTag {
        self.family_tag
    }
    pub fn tail_decay(&self) -> TailDecay {
        self.tail_decay
    }

    /// σ(x), through the log field so it never overflows for the
    /// heavy-tailed families.
    pub fn sigma(&self, x: f64) -> f64 {
        (0.5 * self.log_sigma_sq(x)).exp()
    }

    /// ln(e^{−V(x)} σ(x)), the density of μ pushed to the σ-metric
    /// coordinate (up to the normalizing constant).
    pub fn log_metric_density(&self, x: f64) -> f64 {
        -self.v(x) + 0.5 * self.log_sigma_sq(x)
    }

    /// Drift coefficient (σ²)′(x) − σ²(x)V′(x) of the generator.
    pub fn drift(&self, x: f64) -> f64 {
        self.sigma_sq_prime(x) - self.sigma_sq(x) * self.v_prime(x)
    }

    /// L g at x, given g′(x) and g″(x).
    pub fn apply_generator(&self, x: f64, g_prime: f64, g_second: f64) -> f64 {
        self.sigma_sq(x) * g_second + self.drift(x) * g_prime
    }

    /// Runs the validity checks and returns the per-check report.
    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }

    /// Like [`validate`], but collapsed to a `Result` for preconditions.
    pub fn validated(&self) -> Result<()> {
        let report = self.validate();
        match report.first_failure() {
            None => Ok(()),
            Some(c) => Err(Error::Validation {
                check: c.name,
                witness: c.witness.unwrap_or(f64::NAN),
            }),
        }
    }
}

/// Exponential power distribution: V(x) = |x|^α/α, σ ≡ 1.
///
/// V′(0) is defined as 0 (odd symmetry); V″ is singular at 0 for α < 2
/// and must not be sampled there (grids keep an offset).
pub fn make_exp_power(alpha: f64) -> Result<DiffusionModel> {
    if !(alpha >= 1.0) || !alpha.is_finite() {
        return Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha,
            reason: "exponential power family requires finite alpha ≥ 1",
        });
    }
    let a = alpha;
    Ok(DiffusionModel {
        potential_v: Arc::new(move |x| x.abs().powf(a) / a),
        potential_v_prime: Arc::new(move |x| {
            if x == 0.0 {
                0.0
            } else {
                x.signum() * x.abs().powf(a - 1.0)
            }
        }),
        potential_v_second: Arc::new(move |x| {
            if a == 1.0 {
                0.0
            } else {
                (a - 1.0) * x.abs().powf(a - 2.0)
            }
        }),
        weight_sq: Arc::new(|_| 1.0),
        weight_sq_prime: Arc::new(|_| 0.0),
        log_weight_sq: Arc::new(|_| 0.0),
        family_tag: FamilyTag::ExpPower { alpha },
        tail_decay: TailDecay::ExponentialPower { exponent: alpha },
    })
}

/// Standard Gaussian with weight σ²(x) = 1/(1+bx²).
pub fn make_gaussian_weighted(b: f64) -> Result<DiffusionModel> {
    if !(b > 0.0) || !b.is_finite() {
        return Err(Error::InvalidParameter {
            name: "b",
            value: b,
            reason: "weighted Gaussian family requires b > 0",
        });
    }
    Ok(DiffusionModel {
        potential_v: Arc::new(|x| 0.5 * x * x),
        potential_v_prime: Arc::new(|x| x),
        potential_v_second: Arc::new(|_| 1.0),
        weight_sq: Arc::new(move |x| 1.0 / (1.0 + b * x * x)),
        weight_sq_prime: Arc::new(move |x| {
            let d = 1.0 + b * x * x;
            -2.0 * b * x / (d * d)
        }),
        log_weight_sq: Arc::new(move |x| -(b * x * x).ln_1p()),
        family_tag: FamilyTag::GaussianWeighted { b },
        tail_decay: TailDecay::ExponentialPower { exponent: 2.0 },
    })
}

/// Generalized Cauchy: V(x) = β ln(1+x²), σ²(x) = 1+x².
///
/// The generator is (1+x²)f″ + 2(1−β)x f′.
pub fn make_cauchy(beta: f64) -> Result<DiffusionModel> {
    if !(beta > 0.5) || !beta.is_finite() {
        return Err(Error::InvalidParameter {
            name: "beta",
            value: beta,
            reason: "generalized Cauchy requires beta > 1/2 (integrability)",
        });
    }
    Ok(DiffusionModel {
        // 2 ln hypot(1,x) = ln(1+x²) without overflow at |x| ~ 1e200
        potential_v: Arc::new(move |x| 2.0 * beta * x.hypot(1.0).ln()),
        potential_v_prime: Arc::new(move |x| 2.0 * beta * x / (1.0 + x * x)),
        potential_v_second: Arc::new(move |x| {
            let d = 1.0 + x * x;
            2.0 * beta * (1.0 - x * x) / (d * d)
        }),
        weight_sq: Arc::new(|x| 1.0 + x * x),
        weight_sq_prime: Arc::new(|x| 2.0 * x),
        log_weight_sq: Arc::new(|x| 2.0 * x.hypot(1.0).ln()),
        family_tag: FamilyTag::Cauchy { beta },
        tail_decay: TailDecay::Polynomial { power: 2.0 * beta },
    })
}

/// Bobkov–Ledoux rescaled Cauchy: μ_β ∝ (1+x²/(2β−1))^{−β} with weight
/// σ²(x) = 1+x²/(2β−1). Converges weakly to the standard Gaussian as
/// β → ∞.
pub fn make_cauchy_bl(beta: f64) -> Result<DiffusionModel> {
    if !(beta > 1.5) || !beta.is_finite() {
        return Err(Error::InvalidParameter {
            name: "beta",
            value: beta,
            reason: "Bobkov–Ledoux family requires beta > 3/2",
        });
    }
    let c2 = 2.0 * beta - 1.0;
    let c = c2.sqrt();
    Ok(DiffusionModel {
        potential_v: Arc::new(move |x| 2.0 * beta * (x / c).hypot(1.0).ln()),
        potential_v_prime: Arc::new(move |x| 2.0 * beta * x / (c2 + x * x)),
        potential_v_second: Arc::new(move |x| {
            let d = c2 + x * x;
            2.0 * beta * (c2 - x * x) / (d * d)
        }),
        weight_sq: Arc::new(move |x| 1.0 + x * x / c2),
        weight_sq_prime: Arc::new(move |x| 2.0 * x / c2),
        log_weight_sq: Arc::new(move |x| 2.0 * (x / c).hypot(1.0).ln()),
        family_tag: FamilyTag::CauchyBl { beta },
        tail_decay: TailDecay::Polynomial { power: 2.0 * beta },
    })
}

/// User-supplied model. `tail_decay` must be given explicitly; tail
/// classification from samples is unreliable. Call [`DiffusionModel::validate`]
/// before use.
pub fn make_custom<F1, F2, F3, F4, F5>(
    v: F1,
    v_prime: F2,
    v_second: F3,
    weight_sq: F4,
    weight_sq_prime: F5,
    tail_decay: TailDecay,
) -> DiffusionModel
where
    F1: Fn(f64) -> f64 + Send + Sync + 'static,
    F2: Fn(f64) -> f64 + Send + Sync + 'static,
    F3: Fn(f64) -> f64 + Send + Sync + 'static,
    F4: Fn(f64) -> f64 + Send + Sync + 'static,
    F5: Fn(f64) -> f64 + Send + Sync + 'static,
{
    let weight_sq: ScalarFn = Arc::new(weight_sq);
    let ws = Arc::clone(&weight_sq);
    DiffusionModel {
        potential_v: Arc::new(v),
        potential_v_prime: Arc::new(v_prime),
        potential_v_second: Arc::new(v_second),
        weight_sq,
        weight_sq_prime: Arc::new(weight_sq_prime),
        log_weight_sq: Arc::new(move |x| ws(x).ln()),
        family_tag: FamilyTag::Custom,
        tail_decay,
    }
}

/// Outcome of one validity check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<f64>,
    pub detail: String,
}

/// Pass/fail report from [`validate`].
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// Sample points for the derivative-consistency check: a golden-ratio
/// stride keeps them reproducible while avoiding lattice artifacts.
fn sample_points(count: usize, span: f64) -> Vec<f64> {
    const PHI_FRAC: f64 = 0.618_033_988_749_894_9;
    (0..count)
        .map(|k| {
            let u = ((k as f64 + 0.5) * PHI_FRAC).fract();
            // avoid the origin: |x| ∈ [0.05·span, span]
            let t = 0.05 + 0.95 * u;
            if k % 2 == 0 {
                t * span
            } else {
                -t * span
            }
        })
        .collect()
}

fn centered_diff(f: &ScalarFn, x: f64) -> f64 {
    let h = 1e-5 * (1.0 + x.abs());
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Positivity of σ², derivative consistency and the completeness
/// heuristic (growth of ∫₀^R du/σ between R = 100 and R = 1000).
pub fn validate(model: &DiffusionModel) -> ValidationReport {
    let mut checks = Vec::new();

    // Ellipticity: σ² > 0 on a logarithmic sample grid up to the
    // truncation radius.
    let max_decade = crate::quadrature::truncation_radius(model)
        .log10()
        .ceil()
        .clamp(3.0, 300.0) as i32;
    let mut positivity = CheckResult {
        name: "ellipticity",
        passed: true,
        witness: None,
        detail: "σ² > 0 on log grid".into(),
    };
    'outer: for decade in -3..=max_decade {
        for m in 1..=10 {
            let x = m as f64 * 10f64.powi(decade);
            for s in [x, -x] {
                if !(model.sigma_sq(s) > 0.0) {
                    positivity.passed = false;
                    positivity.witness = Some(s);
                    positivity.detail = format!("σ²({s}) = {}", model.sigma_sq(s));
                    break 'outer;
                }
            }
        }
    }
    checks.push(positivity);

    // Analytic derivatives vs centered differences, relative 1e−6.
    // Skip V″ near the origin where exp-power potentials are singular.
    let singular_second = matches!(
        model.family_tag(),
        FamilyTag::ExpPower { alpha } if alpha < 2.0
    );
    let mut consistency = CheckResult {
        name: "derivative-consistency",
        passed: true,
        witness: None,
        detail: "analytic derivatives match centered differences to 1e−6".into(),
    };
    for &x in &sample_points(32, 3.0) {
        let mut pairs = vec![
            (
                model.v_prime(x),
                centered_diff(&model.potential_v, x),
                "V′",
            ),
            (
                model.sigma_sq_prime(x),
                centered_diff(&model.weight_sq, x),
                "(σ²)′",
            ),
        ];
        if !(singular_second && x.abs() < 0.2) {
            pairs.push((
                model.v_second(x),
                centered_diff(&model.potential_v_prime, x),
                "V″",
            ));
        }
        for (analytic, numeric, label) in pairs {
            let scale = analytic.abs().max(numeric.abs()).max(1e-3);
            if ((analytic - numeric) / scale).abs() > 1e-6 {
                consistency.passed = false;
                consistency.witness = Some(x);
                consistency.detail =
                    format!("{label}({x}): analytic {analytic}, finite-difference {numeric}");
                break;
            }
        }
        if !consistency.passed {
            break;
        }
    }
    checks.push(consistency);

    // Completeness heuristic: ∫₀^R du/σ must keep growing. Ratio test
    // (value at R = 1000 over R = 100 above 1.2) instead of an absolute
    // threshold, so logarithmic growth still passes.
    let metric = |r: f64| -> f64 {
        let n = 4096;
        let h = r / n as f64;
        let vals: Vec<f64> = (0..n)
            .map(|i| {
                let x = (i as f64 + 0.5) * h;
                h / model.sigma(x)
            })
            .collect();
        crate::search::pairwise_sum(&vals)
    };
    let i100 = metric(100.0);
    let i1000 = metric(1000.0);
    let ratio = i1000 / i100;
    // An overflowing metric integral (1/σ growing super-exponentially)
    // is divergence reached early: complete.
    let passed = if i1000.is_infinite() {
        true
    } else {
        ratio.is_finite() && ratio > 1.2
    };
    checks.push(CheckResult {
        name: "completeness",
        passed,
        witness: if passed { None } else { Some(1000.0) },
        detail: format!("∫₀^R du/σ growth ratio I(1000)/I(100) = {ratio:.4}"),
    });

    ValidationReport { checks }
}

/// Provenance of a gap number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimateKind {
    Exact,
    LowerBound,
    UpperBound,
    Numerical,
}

impl std::fmt::Display for EstimateKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            EstimateKind::Exact => "exact",
            EstimateKind::LowerBound => "lower-bound",
            EstimateKind::UpperBound => "upper-bound",
            EstimateKind::Numerical => "numerical",
        };
        f.write_str(s)
    }
}

/// A nonnegative gap value with method provenance and, for numerical
/// estimates, an error descriptor.
#[derive(Debug, Clone)]
pub struct GapEstimate {
    value: f64,
    kind: EstimateKind,
    method: String,
    error: Option<f64>,
}

impl GapEstimate {
    pub fn new(value: f64, kind: EstimateKind, method: impl Into<String>) -> Result<Self> {
        if !(value >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "value",
                value,
                reason: "gap estimates are nonnegative",
            });
        }
        Ok(Self {
            value,
            kind,
            method: method.into(),
            error: None,
        })
    }

    pub fn with_error(mut self, error: f64) -> Result<Self> {
        if self.kind == EstimateKind::Exact {
            return Err(Error::InvalidParameter {
                name: "error",
                value: error,
                reason: "exact estimates carry no error descriptor",
            });
        }
        if !(error >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "error",
                value: error,
                reason: "error descriptors are nonnegative",
            });
        }
        self.error = Some(error);
        Ok(self)
    }

    pub fn value(&self) -> f64 {
        self.value
    }
    pub fn kind(&self) -> EstimateKind {
        self.kind
    }
    pub fn method(&self) -> &str {
        &self.method
    }
    pub fn error(&self) -> Option<f64> {
        self.error
    }
}

impl std::fmt::Display for GapEstimate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.error {
            Some(e) => write!(f, "{:.10} ± {:.2e} ({}, {})", self.value, e, self.kind, self.method),
            None => write!(f, "{:.10} ({}, {})", self.value, self.kind, self.method),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn exp_power_values() {
        let gauss = make_exp_power(2.0).unwrap();
        assert_abs_diff_eq!(gauss.v(1.0), 0.5);
        assert_abs_diff_eq!(gauss.v_prime(1.0), 1.0);

        let laplace = make_exp_power(1.0).unwrap();
        assert_abs_diff_eq!(laplace.v_prime(-2.0), -1.0);
        assert_abs_diff_eq!(laplace.v_prime(0.0), 0.0);
        assert_abs_diff_eq!(laplace.v_second(3.0), 0.0);

        let quartic = make_exp_power(4.0).unwrap();
        assert_abs_diff_eq!(quartic.v(2.0), 4.0);

        assert!(make_exp_power(0.99).is_err());
        assert!(make_exp_power(f64::INFINITY).is_err());
    }

    #[test]
    fn gaussian_weighted_values() {
        let m = make_gaussian_weighted(1.0).unwrap();
        assert_abs_diff_eq!(m.sigma_sq(1.0), 0.5);
        // drift(1) = −((2b+1)·1 + b·1)/(1+b)² = −1 at b = 1
        assert_abs_diff_eq!(m.drift(1.0), -1.0, epsilon = 1e-15);

        let half = make_gaussian_weighted(0.5).unwrap();
        assert_abs_diff_eq!(half.drift(0.0), 0.0);

        assert!(make_gaussian_weighted(0.0).is_err());
        assert!(make_gaussian_weighted(-1.0).is_err());
    }

    #[test]
    fn cauchy_generator_coefficients() {
        let m = make_cauchy(2.0).unwrap();
        // drift = 2(1−β)x
        assert_abs_diff_eq!(m.drift(1.0), -2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(m.drift(0.0), 0.0);
        let unit = make_cauchy(1.0).unwrap();
        for x in [-3.0, 0.4, 7.0] {
            assert_abs_diff_eq!(unit.drift(x), 0.0, epsilon = 1e-13);
        }
        assert!(make_cauchy(0.5).is_err());
    }

    #[test]
    fn cauchy_bl_values() {
        let m = make_cauchy_bl(2.0).unwrap();
        assert_abs_diff_eq!(m.sigma_sq(3f64.sqrt()), 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.v(0.0), 0.0);
        // β → ∞ pointwise: V(x) → x²/2 on compacts
        let big = make_cauchy_bl(1e7).unwrap();
        for x in [0.5, 1.0, 2.0] {
            assert!((big.v(x) - 0.5 * x * x).abs() < 1e-4);
        }
        assert!(make_cauchy_bl(1.5).is_err());
    }

    #[test]
    fn custom_reproduces_gaussian() {
        let custom = make_custom(
            |x| 0.5 * x * x,
            |x| x,
            |_| 1.0,
            |_| 1.0,
            |_| 0.0,
            TailDecay::ExponentialPower { exponent: 2.0 },
        );
        let gauss = make_exp_power(2.0).unwrap();
        for x in [-1.0, 0.0, 2.0] {
            assert_abs_diff_eq!(custom.drift(x), gauss.drift(x), epsilon = 1e-12);
        }
        assert!(custom.validate().passed());
    }

    #[test]
    fn drift_is_odd_for_builtins() {
        let models = [
            make_exp_power(1.0).unwrap(),
            make_exp_power(1.5).unwrap(),
            make_exp_power(3.0).unwrap(),
            make_gaussian_weighted(0.3).unwrap(),
            make_gaussian_weighted(2.0).unwrap(),
            make_cauchy(0.8).unwrap(),
            make_cauchy(2.5).unwrap(),
            make_cauchy_bl(4.0).unwrap(),
        ];
        for m in &models {
            for &x in &[0.1, 0.7, 1.9, 5.3, 17.0] {
                let scale = m.drift(x).abs().max(1e-12);
                assert!(
                    (m.drift(-x) + m.drift(x)).abs() / scale < 1e-12,
                    "drift not odd for {:?} at x = {x}",
                    m.family_tag()
                );
            }
        }
    }

    #[test]
    fn drift_matches_assembled_fields() {
        let models = [
            make_gaussian_weighted(0.7).unwrap(),
            make_cauchy(1.3).unwrap(),
            make_cauchy_bl(2.5).unwrap(),
        ];
        for m in &models {
            for &x in &[0.2, 1.0, 4.2] {
                let assembled = m.sigma_sq_prime(x) - m.sigma_sq(x) * m.v_prime(x);
                let scale = assembled.abs().max(1e-12);
                assert!((m.drift(x) - assembled).abs() / scale < 1e-12);
            }
        }
    }

    #[test]
    fn validate_passes_builtin_families() {
        for m in [
            make_exp_power(1.0).unwrap(),
            make_exp_power(1.3).unwrap(),
            make_exp_power(4.0).unwrap(),
            make_gaussian_weighted(0.5).unwrap(),
            make_cauchy(2.0).unwrap(),
            make_cauchy_bl(10.0).unwrap(),
        ] {
            let report = m.validate();
            assert!(report.passed(), "{:?}: {:?}", m.family_tag(), report.first_failure());
        }
    }

    #[test]
    fn validate_passes_superexponential_metric() {
        // σ²(x) = e^{−x²}: ∫ du/σ = ∫ e^{u²/2} du diverges (overflows
        // the sampled integral, which still counts as growth)
        let m = make_custom(
            |x| 0.5 * x * x,
            |x| x,
            |_| 1.0,
            |x| (-x * x).exp(),
            |x| -2.0 * x * (-x * x).exp(),
            TailDecay::ExponentialPower { exponent: 2.0 },
        );
        let report = m.validate();
        assert!(report.passed(), "{:?}", report.first_failure());
    }

    #[test]
    fn validate_flags_incomplete_metric() {
        // σ²(x) = (1+x²)²: d_σ-diameter is finite (∫ du/(1+u²) = π/2)
        let m = make_custom(
            |x| 0.5 * x * x,
            |x| x,
            |_| 1.0,
            |x| (1.0 + x * x) * (1.0 + x * x),
            |x| 4.0 * x * (1.0 + x * x),
            TailDecay::ExponentialPower { exponent: 2.0 },
        );
        let report = m.validate();
        assert!(!report.passed());
        assert_eq!(report.first_failure().unwrap().name, "completeness");
    }

    #[test]
    fn validate_flags_nonpositive_weight() {
        let m = make_custom(
            |x| 0.5 * x * x,
            |x| x,
            |_| 1.0,
            |x| 1.0 - x * x,
            |x| -2.0 * x,
            TailDecay::ExponentialPower { exponent: 2.0 },
        );
        let report = m.validate();
        let failure = report.first_failure().expect("positivity must fail");
        assert_eq!(failure.name, "ellipticity");
        assert!(failure.witness.unwrap().abs() >= 1.0);
    }

    #[test]
    fn gap_estimate_invariants() {
        assert!(GapEstimate::new(-0.1, EstimateKind::Exact, "x").is_err());
        let e = GapEstimate::new(1.0, EstimateKind::Exact, "thm").unwrap();
        assert!(e.with_error(0.1).is_err());
        let n = GapEstimate::new(1.0, EstimateKind::Numerical, "disc")
            .unwrap()
            .with_error(1e-3)
            .unwrap();
        assert_eq!(n.error(), Some(1e-3));
    }
}
