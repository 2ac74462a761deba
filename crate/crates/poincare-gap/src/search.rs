//! Scalar search helpers shared by the bound modules.

/// Golden-section search for the minimum of `f` on `[a, b]`.
///
/// Returns `(x_min, f_min)`. The bracket shrinks until its width falls
/// below `tol * (1 + |x|)` or `max_evals` evaluations are spent.
pub(crate) fn golden_min(
    f: impl Fn(f64) -> f64,
    mut a: f64,
    mut b: f64,
    tol: f64,
    max_evals: usize,
) -> (f64, f64) {
    const INV_PHI2: f64 = 0.381_966_011_250_105_2; // 2 − φ

    let mut x1 = a + INV_PHI2 * (b - a);
    let mut x2 = b - INV_PHI2 * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut evals = 2;

    while evals < max_evals && (b - a).abs() > tol * (1.0 + x1.abs()) {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = a + INV_PHI2 * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = b - INV_PHI2 * (b - a);
            f2 = f(x2);
        }
        evals += 1;
    }

    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Golden-section search for the maximum of `f` on `[a, b]`.
pub(crate) fn golden_max(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
    max_evals: usize,
) -> (f64, f64) {
    let (x, neg) = golden_min(|t| -f(t), a, b, tol, max_evals);
    (x, -neg)
}

/// Smallest `x ≥ lo` with `f(x) ≥ target`, for `f` increasing beyond `lo`.
///
/// Doubles an upper bracket first, then bisects. Used to pick truncation
/// radii from a potential's growth.
pub(crate) fn rising_threshold(f: impl Fn(f64) -> f64, lo: f64, target: f64) -> f64 {
    let mut hi = lo.max(1.0);
    let mut guard = 0;
    while f(hi) < target {
        hi *= 2.0;
        guard += 1;
        if guard > 200 {
            return hi;
        }
    }
    let mut a = lo;
    let mut b = hi;
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if b - a < 1e-10 * (1.0 + mid.abs()) {
            break;
        }
        if f(mid) < target {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

/// Pairwise (tree) summation: deterministic and more accurate than a
/// running sum for long panels.
pub(crate) fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
        }
    }
}

/// Polynomial extrapolation of `(eps_i, v_i)` samples to `eps → limit_at`
/// by Neville's scheme. The grid is assumed to approach `limit_at`
/// monotonically; the last points dominate the estimate.
pub(crate) fn richardson_limit(eps: &[f64], vals: &[f64], limit_at: f64) -> f64 {
    assert_eq!(eps.len(), vals.len());
    let n = eps.len().min(4);
    let eps = &eps[eps.len() - n..];
    let vals = &vals[vals.len() - n..];
    let t: Vec<f64> = eps.iter().map(|&e| e - limit_at).collect();
    let mut p = vals.to_vec();
    for j in 1..n {
        for i in 0..n - j {
            p[i] = (t[i + j] * p[i] - t[i] * p[i + 1]) / (t[i + j] - t[i]);
        }
    }
    p[0]
}
