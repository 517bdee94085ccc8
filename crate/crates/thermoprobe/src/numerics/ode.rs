//! Explicit adaptive ODE integration (Dormand-Prince 5(4) embedded pair).

use crate::error::{Error, Result};

/// Controls for [`ode_integrate`].
#[derive(Clone, Debug)]
pub struct OdeSpec {
    /// Per-step local error tolerance (mixed absolute/relative).
    pub local_error_tol: f64,
    /// Starting step; `None` uses a small fraction of the span.
    pub initial_step: Option<f64>,
    /// Hard cap on accepted + rejected steps.
    pub max_steps: usize,
}

impl Default for OdeSpec {
    fn default() -> Self {
        Self {
            local_error_tol: 1e-10,
            initial_step: None,
            max_steps: 20_000_000,
        }
    }
}

// Dormand-Prince coefficients.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
// difference between the 5th- and 4th-order solutions
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrate `dy/dt = rhs(t, y)` from `t_span.0` to `t_span.1` and return the
/// final state. Each accepted step keeps the embedded-pair local error below
/// `spec.local_error_tol` in a mixed absolute/relative norm.
pub fn ode_integrate<F>(rhs: F, y0: &[f64], t_span: (f64, f64), spec: &OdeSpec) -> Result<Vec<f64>>
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    let (t0, t1) = t_span;
    if !(t0.is_finite() && t1.is_finite()) || t1 < t0 {
        return Err(Error::Domain(format!("bad time span [{t0}, {t1}]")));
    }
    let n = y0.len();
    let mut y = y0.to_vec();
    if t1 == t0 {
        return Ok(y);
    }

    let tol = spec.local_error_tol;
    let span = t1 - t0;
    let mut t = t0;
    let mut h = spec.initial_step.unwrap_or(span * 1e-4).min(span);
    if h <= 0.0 {
        return Err(Error::Domain("non-positive initial step".into()));
    }

    let mut k = vec![vec![0.0f64; n]; 7];
    let mut ytmp = vec![0.0f64; n];
    let mut ynew = vec![0.0f64; n];
    rhs(t, &y, &mut k[0]);

    let mut steps = 0usize;
    while t < t1 {
        steps += 1;
        if steps > spec.max_steps {
            return Err(Error::Ode(format!(
                "step budget {} exhausted at t = {t}",
                spec.max_steps
            )));
        }
        if h < 16.0 * f64::EPSILON * t.abs().max(span) {
            return Err(Error::Ode(format!("step size underflow at t = {t}")));
        }
        if t + h > t1 {
            h = t1 - t;
        }

        for stage in 0..6 {
            for i in 0..n {
                let mut acc = 0.0;
                for (j, kj) in k.iter().enumerate().take(stage + 1) {
                    acc += A[stage][j] * kj[i];
                }
                ytmp[i] = y[i] + h * acc;
            }
            rhs(t + C[stage] * h, &ytmp, &mut k[stage + 1]);
        }
        // 5th-order solution reuses the a7 row (= A[5] with k7 slot empty)
        for i in 0..n {
            let mut acc = 0.0;
            for (j, kj) in k.iter().enumerate().take(6) {
                acc += A[5][j] * kj[i];
            }
            ynew[i] = y[i] + h * acc;
        }

        // embedded error estimate
        let mut err_norm = 0.0f64;
        for i in 0..n {
            let mut e = 0.0;
            for (j, kj) in k.iter().enumerate() {
                e += E[j] * kj[i];
            }
            e *= h;
            let sc = tol * (1.0 + y[i].abs().max(ynew[i].abs()));
            err_norm += (e / sc) * (e / sc);
        }
        err_norm = (err_norm / n as f64).sqrt();

        if !err_norm.is_finite() {
            return Err(Error::Ode(format!("non-finite state at t = {t}")));
        }

        if err_norm <= 1.0 {
            t += h;
            std::mem::swap(&mut y, &mut ynew);
            // FSAL: k7 of the accepted step is k1 of the next
            let (first, rest) = k.split_at_mut(1);
            first[0].copy_from_slice(&rest[5]);
        }
        let factor = if err_norm == 0.0 {
            5.0
        } else {
            (0.9 * err_norm.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= factor;
    }
    Ok(y)
}
