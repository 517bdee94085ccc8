//! Central finite differences with Richardson extrapolation.

use crate::error::{Error, Result};

/// Step-size policy for [`differentiate`].
#[derive(Clone, Debug)]
pub struct DiffSpec {
    /// Starting step; `None` picks `1e-4 * max(1, |x|)`.
    pub initial_step: Option<f64>,
    /// Number of step halvings in the extrapolation ladder.
    pub levels: usize,
}

impl Default for DiffSpec {
    fn default() -> Self {
        Self {
            initial_step: None,
            levels: 8,
        }
    }
}

fn central<F: Fn(f64) -> f64>(f: &F, x: f64, h: f64, order: usize) -> f64 {
    match order {
        1 => (f(x + h) - f(x - h)) / (2.0 * h),
        2 => (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h),
        _ => unreachable!(),
    }
}

/// Derivative of `f` at `x` (`order` 1 or 2).
///
/// Builds a ladder of central differences with halving steps and applies two
/// Richardson levels; the returned error estimate is the disagreement of the
/// last two extrapolation levels at the best rung. Non-smooth inputs are
/// detected by a diverging curvature probe before the ladder runs.
pub fn differentiate<F: Fn(f64) -> f64>(
    f: &F,
    x: f64,
    order: usize,
    spec: &DiffSpec,
) -> Result<(f64, f64)> {
    if order == 0 || order > 2 {
        return Err(Error::Domain(format!(
            "unsupported derivative order {order}"
        )));
    }
    let h0 = spec.initial_step.unwrap_or_else(|| 1e-4 * x.abs().max(1.0));
    if h0 <= 0.0 || !h0.is_finite() {
        return Err(Error::Domain("non-positive differentiation step".into()));
    }

    // Smoothness probe: the second difference must not diverge as the step
    // shrinks. For |x|-like kinks it grows like 1/h and the ratio below
    // approaches the step factor instead of 1.
    let f0 = f(x);
    let scale = f0.abs().max(1.0);
    let curv_a = (f(x + h0) - 2.0 * f0 + f(x - h0)) / (h0 * h0);
    let hq = 0.25 * h0;
    let curv_b = (f(x + hq) - 2.0 * f0 + f(x - hq)) / (hq * hq);
    let curv_floor = 64.0 * f64::EPSILON * scale / (hq * hq);
    if curv_b.abs() > 2.5 * curv_a.abs().max(curv_floor) + curv_floor {
        return Err(Error::NoisyFunction(format!(
            "curvature estimate diverges near x = {x} ({:.3e} -> {:.3e})",
            curv_a, curv_b
        )));
    }

    let n = spec.levels.max(3);
    let mut d: Vec<f64> = (0..n)
        .map(|k| central(f, x, h0 / (1u64 << k) as f64, order))
        .collect();
    if d.iter().any(|v| !v.is_finite()) {
        return Err(Error::NoisyFunction(
            "non-finite difference quotient".into(),
        ));
    }

    // First Richardson level removes the h^2 term, the second the h^4 term.
    let r1: Vec<f64> = (0..n - 1).map(|k| (4.0 * d[k + 1] - d[k]) / 3.0).collect();
    let r2: Vec<f64> = (0..n - 2)
        .map(|k| (16.0 * r1[k + 1] - r1[k]) / 15.0)
        .collect();

    let mut best_val = r2[0];
    let mut best_err = f64::INFINITY;
    for k in 0..r2.len() {
        let err = (r2[k] - r1[k + 1]).abs().max(if k > 0 {
            (r2[k] - r2[k - 1]).abs() * 0.5
        } else {
            0.0
        });
        if err < best_err {
            best_err = err;
            best_val = r2[k];
        }
    }

    // No rung where the Richardson levels agree means the samples are noisy;
    // the floor admits pure roundoff on the smallest step.
    let h_min = h0 / (1u64 << (n - 1)) as f64;
    let round_floor = 1e3 * f64::EPSILON * scale / h_min;
    if best_err > 1e-6 * best_val.abs() + round_floor {
        return Err(Error::NoisyFunction(format!(
            "Richardson levels disagree ({:.3e}) beyond the convergent regime",
            best_err
        )));
    }
    d.clear();
    Ok((best_val, best_err))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_derivative() {
        let (v, e) = differentiate(&|x: f64| x.exp(), 1.0, 1, &DiffSpec::default()).unwrap();
        let exact = std::f64::consts::E;
        assert!((v - exact).abs() < 1e-9 * exact, "got {v}, err est {e}");
    }

    #[test]
    fn exp_second_derivative() {
        let (v, _) = differentiate(&|x: f64| x.exp(), 0.5, 2, &DiffSpec::default()).unwrap();
        let exact = 0.5f64.exp();
        // second differences hit the eps/h^2 roundoff floor much earlier
        assert!((v - exact).abs() < 1e-5 * exact, "got {v}");
    }

    #[test]
    fn kink_is_rejected() {
        let err = differentiate(&|x: f64| x.abs(), 0.0, 1, &DiffSpec::default());
        assert!(matches!(err, Err(Error::NoisyFunction(_))));
    }

    #[test]
    fn noisy_samples_are_rejected() {
        // deterministic pseudo-noise on top of a smooth function
        let f = |x: f64| x.sin() + 1e-3 * (1e8 * x).sin();
        let err = differentiate(&f, 0.3, 1, &DiffSpec::default());
        assert!(err.is_err());
    }

    #[test]
    fn linear_function_is_fine() {
        let (v, _) = differentiate(&|x: f64| 3.0 * x + 2.0, 10.0, 1, &DiffSpec::default()).unwrap();
        assert!((v - 3.0).abs() < 1e-9);
    }
}
