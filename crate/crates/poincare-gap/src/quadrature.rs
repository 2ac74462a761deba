//! Integration against μ on a truncated domain: normalization, variance
//! and Dirichlet energy — the three ingredients of the Rayleigh quotient.
//!
//! Heavy-tailed (polynomial-decay) families are integrated in the
//! σ-metric coordinate s = arcsinh(x), where their integrands become
//! sub-exponential.

use crate::models::{DiffusionModel, TailDecay};
use crate::rayleigh::TestFunction;
use crate::search::{pairwise_sum, rising_threshold};
use crate::{Error, Result};

/// 7-point Gauss / 15-point Kronrod nodes and weights on [−1, 1]
/// (QUADPACK's QK15 constants).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.000_000_000_000_000_0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

/// One G7/K15 pass over [a, b]: returns (kronrod value, |K15 − G7|).
fn qk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut kronrod = 0.0;
    let mut gauss = 0.0;
    for (j, (&x, &wk)) in XGK.iter().zip(WGK.iter()).enumerate() {
        if x == 0.0 {
            let fc = f(center);
            kronrod += wk * fc;
            gauss += WG[3] * fc;
        } else {
            let f1 = f(center - half * x);
            let f2 = f(center + half * x);
            kronrod += wk * (f1 + f2);
            if j % 2 == 1 {
                gauss += WG[j / 2] * (f1 + f2);
            }
        }
    }
    (kronrod * half, (kronrod - gauss).abs() * half.abs())
}

/// Quadrature rule selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadRule {
    /// Fixed composite panels, no refinement.
    CompositeGauss,
    /// Split the worst panel until the error estimate meets `rel_tol`.
    AdaptiveBisection,
}

/// Truncation radius, panel budget and target accuracy for μ-integrals.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    pub truncation_radius: f64,
    pub panels: usize,
    pub rule: QuadRule,
    pub rel_tol: f64,
}

impl QuadratureSpec {
    pub fn new(
        truncation_radius: f64,
        panels: usize,
        rule: QuadRule,
        rel_tol: f64,
    ) -> Result<Self> {
        if !(rel_tol >= 1e-13) {
            return Err(Error::InvalidParameter {
                name: "rel_tol",
                value: rel_tol,
                reason: "rel_tol below 1e−13 is not achievable",
            });
        }
        if panels < 8 {
            return Err(Error::InvalidParameter {
                name: "panels",
                value: panels as f64,
                reason: "at least 8 panels required",
            });
        }
        if !(truncation_radius > 0.0) {
            return Err(Error::InvalidParameter {
                name: "truncation_radius",
                value: truncation_radius,
                reason: "truncation radius must be positive",
            });
        }
        Ok(Self {
            truncation_radius,
            panels,
            rule,
            rel_tol,
        })
    }

    /// Default spec for a model: radius from its tail rule, adaptive
    /// bisection at rel_tol 1e−10 (two orders of margin below every
    /// acceptance tolerance).
    pub fn for_model(model: &DiffusionModel) -> Self {
        Self {
            truncation_radius: truncation_radius(model),
            panels: 64,
            rule: QuadRule::AdaptiveBisection,
            rel_tol: 1e-10,
        }
    }

    /// Same as [`for_model`](Self::for_model) but with the radius
    /// enlarged to `radius` when the test function spreads beyond the
    /// measure's own scale.
    pub fn for_model_with_radius(model: &DiffusionModel, radius: f64) -> Self {
        let mut spec = Self::for_model(model);
        spec.truncation_radius = spec.truncation_radius.max(radius);
        spec
    }
}

/// Truncation radius from the tail rule: μ([R,∞)) below 1e−12 for
/// exponential-power tails, below 1e−8 for polynomial tails (heavy tails
/// make 1e−12 impractical).
pub fn truncation_radius(model: &DiffusionModel) -> f64 {
    match model.tail_decay() {
        TailDecay::ExponentialPower { .. } => {
            // e^{−V(R)} ≈ 1e−20 leaves comfortable margin over 1e−12
            rising_threshold(|x| model.v(x), 0.0, 46.0)
        }
        TailDecay::Polynomial { power } => {
            // ∫_R^∞ x^{−p} dx = R^{1−p}/(p−1) ≤ 1e−8 for the μ-mass, with
            // a floor of sinh(38) so that x²-growth integrands (moments,
            // Dirichlet energies of near-linear f) also converge; in the
            // arcsinh coordinate the floor costs nothing.
            let p = power.max(1.01);
            let r = ((p - 1.0) * 1e-8).powf(1.0 / (1.0 - p));
            r.clamp(38f64.sinh(), 1e30)
        }
    }
}

/// ∫_{−R}^{R} g(x) e^{−V(x)} dx, in the coordinate the tail dictates.
fn raw_mu_integral(
    model: &DiffusionModel,
    g: &dyn Fn(f64) -> f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let r = spec.truncation_radius;
    match model.tail_decay() {
        TailDecay::ExponentialPower { .. } => {
            let f = |x: f64| g(x) * (-model.v(x)).exp();
            integrate(&f, -r, r, spec)
        }
        TailDecay::Polynomial { .. } => {
            // x = sinh(s), dx = cosh(s) ds
            let s_max = r.asinh();
            let f = |s: f64| {
                let x = s.sinh();
                g(x) * (-model.v(x)).exp() * s.cosh()
            };
            integrate(&f, -s_max, s_max, spec)
        }
    }
}

/// Integrate an arbitrary integrand on [a, b] under the rule in `spec`.
/// For callers whose integrand is not a μ-integral (Poisson tails,
/// rescaled energies).
pub(crate) fn integrate_plain(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    integrate(f, a, b, spec)
}

fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    match spec.rule {
        QuadRule::CompositeGauss => {
            let h = (b - a) / spec.panels as f64;
            let vals: Vec<f64> = (0..spec.panels)
                .map(|i| qk15(f, a + i as f64 * h, a + (i + 1) as f64 * h).0)
                .collect();
            Ok(pairwise_sum(&vals))
        }
        QuadRule::AdaptiveBisection => adaptive(f, a, b, spec),
    }
}

fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    use std::cmp::Ordering;
    use std::collections::BinaryHeap;

    struct Seg {
        a: f64,
        b: f64,
        value: f64,
        err: f64,
    }
    impl PartialEq for Seg {
        fn eq(&self, other: &Self) -> bool {
            self.err == other.err
        }
    }
    impl Eq for Seg {}
    impl PartialOrd for Seg {
        fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
            Some(self.cmp(other))
        }
    }
    impl Ord for Seg {
        fn cmp(&self, other: &Self) -> Ordering {
            self.err.total_cmp(&other.err)
        }
    }

    // seed with the coarse panels, then keep splitting the worst segment
    let h = (b - a) / spec.panels as f64;
    let mut heap = BinaryHeap::with_capacity(spec.panels * 2);
    let mut total = 0.0;
    let mut l1 = 0.0;
    let mut err = 0.0;
    for i in 0..spec.panels {
        let (lo, hi) = (a + i as f64 * h, a + (i + 1) as f64 * h);
        let (value, e) = qk15(f, lo, hi);
        total += value;
        l1 += value.abs();
        err += e;
        heap.push(Seg {
            a: lo,
            b: hi,
            value,
            err: e,
        });
    }

    // Relative target against the larger of |∫f| and a small multiple of
    // Σ|panel values|: integrals that vanish by cancellation (odd
    // integrands) are resolved relative to their mass, not their value.
    let budget = 40_000usize;
    for _ in 0..budget {
        let scale = total.abs().max(1e-3 * l1).max(1e-300);
        if err <= spec.rel_tol * scale {
            break;
        }
        let worst = heap.pop().expect("segments nonempty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // machine resolution reached; put it back and stop refining
            heap.push(worst);
            break;
        }
        let (v1, e1) = qk15(f, worst.a, mid);
        let (v2, e2) = qk15(f, mid, worst.b);
        total += v1 + v2 - worst.value;
        l1 += v1.abs() + v2.abs() - worst.value.abs();
        err += e1 + e2 - worst.err;
        heap.push(Seg {
            a: worst.a,
            b: mid,
            value: v1,
            err: e1,
        });
        heap.push(Seg {
            a: mid,
            b: worst.b,
            value: v2,
            err: e2,
        });
    }

    let segs = heap.into_vec();
    let final_err: f64 = segs.iter().map(|s| s.err).sum();
    let mut vals: Vec<f64> = segs.iter().map(|s| s.value).collect();
    let final_total = pairwise_sum(&vals);
    vals.iter_mut().for_each(|v| *v = v.abs());
    let final_l1 = pairwise_sum(&vals);
    let scale = final_total.abs().max(1e-3 * final_l1).max(1e-300);
    if !final_total.is_finite() {
        return Err(Error::QuadratureBudget {
            detail: format!("integrand produced non-finite values on [{a}, {b}]"),
        });
    }
    if final_err > spec.rel_tol * scale && final_err > 1e-13 * scale {
        return Err(Error::QuadratureBudget {
            detail: format!(
                "error estimate {final_err:e} above {:e} on [{a}, {b}]",
                spec.rel_tol * scale
            ),
        });
    }
    Ok(final_total)
}

/// Z = ∫_{−R}^{R} e^{−V(x)} dx.
pub fn normalizing_constant(model: &DiffusionModel, spec: &QuadratureSpec) -> Result<f64> {
    raw_mu_integral(model, &|_| 1.0, spec)
}

/// (1/Z) ∫ g e^{−V} dx over the truncated domain.
pub fn integrate_mu(
    model: &DiffusionModel,
    g: &dyn Fn(f64) -> f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let z = normalizing_constant(model, spec)?;
    Ok(raw_mu_integral(model, g, spec)? / z)
}

/// Var_μ(f) = ∫ (f − ∫f dμ)² dμ ≥ 0. Computed in two passes to avoid
/// the cancellation in E[f²] − E[f]².
pub fn variance(model: &DiffusionModel, f: &TestFunction, spec: &QuadratureSpec) -> Result<f64> {
    let mean = integrate_mu(model, &|x| f.eval(x), spec)?;
    let var = integrate_mu(
        model,
        &|x| {
            let d = f.eval(x) - mean;
            d * d
        },
        spec,
    )?;
    if var < -1e-12 || !var.is_finite() {
        return Err(Error::QuadratureBudget {
            detail: format!("variance came out as {var:e}"),
        });
    }
    Ok(var.max(0.0))
}

/// Dirichlet energy ∫ σ²(x) f′(x)² dμ(x) ≥ 0.
pub fn energy(model: &DiffusionModel, f: &TestFunction, spec: &QuadratureSpec) -> Result<f64> {
    let e = integrate_mu(
        model,
        &|x| {
            let d = f.deriv(x);
            model.sigma_sq(x) * d * d
        },
        spec,
    )?;
    if e < -1e-12 || !e.is_finite() {
        return Err(Error::QuadratureBudget {
            detail: format!("energy came out as {e:e}"),
        });
    }
    Ok(e.max(0.0))
}
