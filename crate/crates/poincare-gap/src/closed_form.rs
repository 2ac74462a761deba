//! The theorem-level gap values and bounds, as executable formulas.
//! These are the ground truth the numerical routes are validated against.
//!
//! | family | regime | λ₁(−L) |
//! |---|---|---|
//! | exponential power | 1 ≤ α ≤ 2 | within [α²/4, 2^{1−2/α}] (exact 1/4 at α=1, 1 at α=2) |
//! | exponential power | α ≥ 2 | within [2(1+α)^{1−2/α}/α, 3^{1−2/α}] |
//! | weighted Gaussian | 0 < b < 1/2 | 1 − b |
//! | weighted Gaussian | b ≥ 1/2 | 1/4b |
//! | generalized Cauchy | 1/2 < β ≤ 3/2 | (β − 1/2)² |
//! | generalized Cauchy | β > 3/2 | 2(β − 1) |
//! | Bobkov–Ledoux μ_β | β > 3/2 | 2(β−1)/(2β−1) |

use crate::models::FamilyTag;
use crate::special_functions::log_gamma;
use crate::{Error, Result};

/// A theorem value: either the exact gap or a two-sided bound, with the
/// regime branch that produced it.
#[derive(Debug, Clone)]
pub struct TheoremValue {
    pub family: FamilyTag,
    pub value: GapValue,
    pub regime: String,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GapValue {
    Exact(f64),
    Bounds { lower: f64, upper: f64 },
}

impl GapValue {
    pub fn exact(&self) -> Option<f64> {
        match self {
            GapValue::Exact(v) => Some(*v),
            GapValue::Bounds { .. } => None,
        }
    }
    pub fn bounds(&self) -> (f64, f64) {
        match *self {
            GapValue::Exact(v) => (v, v),
            GapValue::Bounds { lower, upper } => (lower, upper),
        }
    }
}

/// Two-sided estimate for the exponential power family:
/// [α²/4, 2^{1−2/α}] for α ≤ 2 and [2(1+α)^{1−2/α}/α, 3^{1−2/α}] for
/// α ≥ 2. Both branches give (1, 1) at α = 2.
pub fn exp_power_gap_bounds(alpha: f64) -> Result<(f64, f64)> {
    if !(alpha >= 1.0) || !alpha.is_finite() {
        return Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha,
            reason: "bounds hold for finite alpha ≥ 1",
        });
    }
    if alpha <= 2.0 {
        Ok((alpha * alpha / 4.0, 2f64.powf(1.0 - 2.0 / alpha)))
    } else {
        Ok((
            2.0 * (1.0 + alpha).powf(1.0 - 2.0 / alpha) / alpha,
            3f64.powf(1.0 - 2.0 / alpha),
        ))
    }
}

/// The three exactly-known exponential power gaps: 1/4 at α = 1
/// (double exponential), 1 at α = 2 (Gaussian), π²/4 at α = ∞ (uniform
/// on [−1, 1]). `f64::INFINITY` is the sentinel for α = ∞.
pub fn exp_power_exact(alpha: f64) -> Option<f64> {
    if alpha == 1.0 {
        Some(0.25)
    } else if alpha == 2.0 {
        Some(1.0)
    } else if alpha == f64::INFINITY {
        Some(std::f64::consts::PI * std::f64::consts::PI / 4.0)
    } else {
        None
    }
}

/// Weighted Gaussian gap: 1 − b on 0 < b < 1/2, 1/4b on b ≥ 1/2
/// (continuous at b = 1/2, both branches giving 1/2).
pub fn gaussian_weighted_gap(b: f64) -> Result<f64> {
    if !(b > 0.0) || !b.is_finite() {
        return Err(Error::InvalidParameter {
            name: "b",
            value: b,
            reason: "the weighted Gaussian gap needs b > 0",
        });
    }
    Ok(if b < 0.5 { 1.0 - b } else { 0.25 / b })
}

/// Generalized Cauchy gap: (β−1/2)² on 1/2 < β ≤ 3/2, 2(β−1) on
/// β > 3/2 (continuous at β = 3/2, both branches giving 1).
pub fn cauchy_gap(beta: f64) -> Result<f64> {
    if !(beta > 0.5) || !beta.is_finite() {
        return Err(Error::InvalidParameter {
            name: "beta",
            value: beta,
            reason: "the Cauchy gap needs beta > 1/2",
        });
    }
    Ok(if beta > 1.5 {
        2.0 * (beta - 1.0)
    } else {
        (beta - 0.5) * (beta - 0.5)
    })
}

/// Bobkov–Ledoux gap 2(β−1)/(2β−1) for β > 3/2; increases to the
/// classical Gaussian Poincaré constant 1 as β → ∞.
pub fn cauchy_bl_gap(beta: f64) -> Result<f64> {
    if !(beta > 1.5) || !beta.is_finite() {
        return Err(Error::InvalidParameter {
            name: "beta",
            value: beta,
            reason: "the Bobkov–Ledoux gap needs finite beta > 3/2",
        });
    }
    Ok(2.0 * (beta - 1.0) / (2.0 * beta - 1.0))
}

/// The γ-indexed Brascamp–Lieb-type family for the Gaussian:
/// constant γ + 1/2 with weight parameter b = 1/2 − γ. Agrees with
/// [`gaussian_weighted_gap`] on b ∈ (0, 1/2].
pub fn brascamp_lieb_gaussian(gamma: f64) -> Result<(f64, f64)> {
    if !(0.0..=0.5).contains(&gamma) {
        return Err(Error::InvalidParameter {
            name: "gamma",
            value: gamma,
            reason: "the γ family is indexed by γ ∈ [0, 1/2]",
        });
    }
    Ok((gamma + 0.5, 0.5 - gamma))
}

/// Rayleigh quotient of f(x) = x for the exponential power measure:
/// α^{−2/α} Γ(1/α)/Γ(3/α), an upper bound on λ₁(−L).
pub fn rayleigh_linear_exp_power(alpha: f64) -> Result<f64> {
    if !(alpha >= 1.0) || !alpha.is_finite() {
        return Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha,
            reason: "needs finite alpha ≥ 1",
        });
    }
    let lg = log_gamma(1.0 / alpha)? - log_gamma(3.0 / alpha)?;
    Ok(alpha.powf(-2.0 / alpha) * lg.exp())
}

/// The Poisson-equation lower bound α^{1−2/α}/Γ(2/α) for α ≥ 2
/// (the supremum of the solution's derivative is attained at the
/// origin only in that region).
pub fn poisson_lower_exp_power(alpha: f64) -> Result<f64> {
    if !(alpha >= 2.0) || !alpha.is_finite() {
        return Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha,
            reason: "the Poisson route needs alpha ≥ 2",
        });
    }
    Ok(alpha.powf(1.0 - 2.0 / alpha) / log_gamma(2.0 / alpha)?.exp())
}

/// Theorem value (exact or bounds, with regime label) for a built-in
/// family tag; `None` for custom models.
pub fn theorem_value(tag: FamilyTag) -> Option<TheoremValue> {
    match tag {
        FamilyTag::ExpPower { alpha } => {
            let value = match exp_power_exact(alpha) {
                Some(v) => GapValue::Exact(v),
                None => {
                    let (lower, upper) = exp_power_gap_bounds(alpha).ok()?;
                    GapValue::Bounds { lower, upper }
                }
            };
            let regime = if alpha == 2.0 {
                "α = 2 (Gaussian, both branches)".to_string()
            } else if alpha < 2.0 {
                "1 ≤ α ≤ 2".to_string()
            } else {
                "α ≥ 2".to_string()
            };
            Some(TheoremValue {
                family: tag,
                value,
                regime,
            })
        }
        FamilyTag::GaussianWeighted { b } => {
            let v = gaussian_weighted_gap(b).ok()?;
            let regime = if b == 0.5 {
                "junction b = 1/2 (both regimes give 1/2)".to_string()
            } else if b < 0.5 {
                "0 < b < 1/2 (eigenvalue regime)".to_string()
            } else {
                "b ≥ 1/2 (essential-spectrum regime)".to_string()
            };
            Some(TheoremValue {
                family: tag,
                value: GapValue::Exact(v),
                regime,
            })
        }
        FamilyTag::Cauchy { beta } => {
            let v = cauchy_gap(beta).ok()?;
            let regime = if beta == 1.5 {
                "junction β = 3/2 (both regimes give 1)".to_string()
            } else if beta > 1.5 {
                "β > 3/2 (eigenvalue regime)".to_string()
            } else {
                "1/2 < β ≤ 3/2 (essential-spectrum regime)".to_string()
            };
            Some(TheoremValue {
                family: tag,
                value: GapValue::Exact(v),
                regime,
            })
        }
        FamilyTag::CauchyBl { beta } => {
            let v = cauchy_bl_gap(beta).ok()?;
            Some(TheoremValue {
                family: tag,
                value: GapValue::Exact(v),
                regime: "β > 3/2, gap 2(β−1)/(2β−1) → 1".to_string(),
            })
        }
        FamilyTag::Custom => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn exp_power_bounds_pinned() {
        assert_eq!(exp_power_gap_bounds(1.0).unwrap(), (0.25, 0.5));
        assert_eq!(exp_power_gap_bounds(2.0).unwrap(), (1.0, 1.0));
        let (lo, hi) = exp_power_gap_bounds(4.0).unwrap();
        assert_relative_eq!(lo, 5f64.sqrt() / 2.0, max_relative = 1e-15);
        assert_relative_eq!(hi, 3f64.sqrt(), max_relative = 1e-15);
        assert!(exp_power_gap_bounds(0.5).is_err());
    }

    #[test]
    fn exp_power_exact_values() {
        assert_eq!(exp_power_exact(1.0), Some(0.25));
        assert_eq!(exp_power_exact(2.0), Some(1.0));
        assert_abs_diff_eq!(
            exp_power_exact(f64::INFINITY).unwrap(),
            2.467_401_100_272_339_7,
            epsilon = 1e-15
        );
        assert_eq!(exp_power_exact(1.5), None);
    }

    #[test]
    fn gaussian_weighted_branches() {
        assert_eq!(gaussian_weighted_gap(0.25).unwrap(), 0.75);
        assert_eq!(gaussian_weighted_gap(0.5).unwrap(), 0.5);
        assert_eq!(gaussian_weighted_gap(2.0).unwrap(), 0.125);
        assert!(gaussian_weighted_gap(0.0).is_err());
    }

    #[test]
    fn cauchy_branches() {
        assert_eq!(cauchy_gap(2.0).unwrap(), 2.0);
        assert_eq!(cauchy_gap(1.0).unwrap(), 0.25);
        assert_eq!(cauchy_gap(1.5).unwrap(), 1.0);
        assert!(cauchy_gap(0.5).is_err());
    }

    #[test]
    fn bl_values_and_trend() {
        assert_relative_eq!(cauchy_bl_gap(2.0).unwrap(), 2.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(
            cauchy_bl_gap(10.0).unwrap(),
            18.0 / 19.0,
            max_relative = 1e-15
        );
        // only exp_power_exact accepts the infinite sentinel
        assert!(cauchy_bl_gap(f64::INFINITY).is_err());
        // strictly increasing and below 1
        let mut prev = 0.0;
        let mut beta = 1.6;
        while beta < 60.0 {
            let g = cauchy_bl_gap(beta).unwrap();
            assert!(g < 1.0 && g > prev);
            prev = g;
            beta += 0.7;
        }
        assert!(cauchy_bl_gap(1.5).is_err());
    }

    #[test]
    fn junction_continuity() {
        for delta in [1e-6, 1e-8] {
            let l = gaussian_weighted_gap(0.5 - delta).unwrap();
            let r = gaussian_weighted_gap(0.5 + delta).unwrap();
            assert!((l - r).abs() < 1e-5);
            let l = cauchy_gap(1.5 - delta).unwrap();
            let r = cauchy_gap(1.5 + delta).unwrap();
            assert!((l - r).abs() < 1e-5);
        }
    }

    #[test]
    fn brascamp_lieb_family() {
        assert_eq!(brascamp_lieb_gaussian(0.5).unwrap(), (1.0, 0.0));
        assert_eq!(brascamp_lieb_gaussian(0.0).unwrap(), (0.5, 0.5));
        let (c, b) = brascamp_lieb_gaussian(0.25).unwrap();
        assert_eq!((c, b), (0.75, 0.25));
        assert_eq!(gaussian_weighted_gap(b).unwrap(), c);
        assert!(brascamp_lieb_gaussian(0.6).is_err());
        assert!(brascamp_lieb_gaussian(-0.1).is_err());
    }

    #[test]
    fn rayleigh_linear_pinned() {
        assert_relative_eq!(
            rayleigh_linear_exp_power(2.0).unwrap(),
            1.0,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            rayleigh_linear_exp_power(1.0).unwrap(),
            0.5,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            rayleigh_linear_exp_power(4.0).unwrap(),
            1.479_337_559_594_319_4,
            max_relative = 1e-12
        );
        // it is an upper bound for the known exact gaps
        assert!(rayleigh_linear_exp_power(1.0).unwrap() >= 0.25);
        assert!(rayleigh_linear_exp_power(2.0).unwrap() >= 1.0 - 1e-13);
    }

    #[test]
    fn poisson_lower_pinned() {
        assert_relative_eq!(
            poisson_lower_exp_power(2.0).unwrap(),
            1.0,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            poisson_lower_exp_power(3.0).unwrap(),
            1.065_084_161_663_451_7,
            max_relative = 1e-12
        );
        // α = 4: α^{1−2/α}/Γ(2/α) = 2/√π
        assert_relative_eq!(
            poisson_lower_exp_power(4.0).unwrap(),
            2.0 / std::f64::consts::PI.sqrt(),
            max_relative = 1e-12
        );
        assert!(poisson_lower_exp_power(1.9).is_err());
    }

    #[test]
    fn poisson_bound_dominates_theorem_lower_bound() {
        // Kershaw's inequality turns the Poisson bound into the theorem's
        // 2(1+α)^{1−2/α}/α, so the Poisson bound is the sharper one.
        let mut alpha = 2.0;
        while alpha <= 16.0 {
            let p = poisson_lower_exp_power(alpha).unwrap();
            let (lo, _) = exp_power_gap_bounds(alpha).unwrap();
            assert!(
                p >= lo - 1e-12,
                "ordering fails at α = {alpha}: poisson {p}, theorem {lo}"
            );
            alpha += 0.1;
        }
    }

    #[test]
    fn bounds_ordering_and_exact_inside() {
        let mut alpha = 1.0;
        while alpha <= 16.0 {
            let (lo, hi) = exp_power_gap_bounds(alpha).unwrap();
            assert!(lo <= hi + 1e-15, "lower > upper at α = {alpha}");
            if let Some(exact) = exp_power_exact(alpha) {
                assert!(lo - 1e-12 <= exact && exact <= hi + 1e-12);
            }
            alpha += 0.125;
        }
    }

    #[test]
    fn theorem_value_regime_labels() {
        let t = theorem_value(FamilyTag::Cauchy { beta: 1.5 }).unwrap();
        assert!(t.regime.contains("junction"));
        assert_eq!(t.value.exact(), Some(1.0));
        let t = theorem_value(FamilyTag::ExpPower { alpha: 1.5 }).unwrap();
        assert!(t.value.exact().is_none());
        assert!(theorem_value(FamilyTag::Custom).is_none());
    }
}
