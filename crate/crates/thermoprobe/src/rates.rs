//! Bath-response quantities seen by the moving probe.
//!
//! A two-level probe on the inertial trajectory x(tau) = (cosh u, sinh u, 0, 0) tau
//! couples to a massless scalar field in a thermal state (scaled units,
//! c = hbar = k_B = 1). Linear (UDW) coupling to the field amplitude and
//! time-derivative (TD) coupling produce different vacuum decay rates
//! gamma(w), effective thermal occupations N(w), and Lamb shifts Delta(w);
//! this module evaluates all of them, plus the temperature derivative of N
//! that downstream Fisher-information formulas consume.

use crate::error::{Error, Result};
use crate::numerics::{integrate, QuadratureSpec};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// Euler-Mascheroni constant, used by the vacuum Lamb-shift terms.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Below this rapidity both couplings switch to the analytic comoving limit
/// N = 1/(e^{w/T} - 1). Chosen so the sinh(u) cancellation in the full
/// expressions loses well under half the significand before the switch.
pub const U_MIN: f64 = 1e-4;

/// Default Lamb-shift cutoff (scaled units). Every estimation target in the
/// crate is independent of the Lamb shift, so the exact value only matters
/// for reproducibility of the `delta` column itself.
pub const DEFAULT_CUTOFF_EPS: f64 = 0.01;

/// How the probe couples to the scalar field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CouplingKind {
    /// Linear coupling to the field amplitude.
    Udw,
    /// Coupling to the proper-time derivative of the field.
    Td,
}

impl fmt::Display for CouplingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CouplingKind::Udw => write!(f, "udw"),
            CouplingKind::Td => write!(f, "td"),
        }
    }
}

impl FromStr for CouplingKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "udw" => Ok(CouplingKind::Udw),
            "td" => Ok(CouplingKind::Td),
            other => Err(Error::Config(format!(
                "unknown coupling '{other}' (expected 'udw' or 'td')"
            ))),
        }
    }
}

/// Probe-side controls: gap, coupling, trajectory rapidity, and the initial
/// pure state |psi> = e^{i phi} cos(theta/2)|e> + sin(theta/2)|g>.
#[derive(Clone, Copy, Debug)]
pub struct ProbeParams {
    /// Energy gap of the two-level probe, > 0.
    pub omega0: f64,
    /// Coupling constant, >= 0.
    pub lambda: f64,
    /// Rapidity of the inertial trajectory, >= 0 (velocity v = tanh u).
    pub u: f64,
    /// Initial polar angle, in [0, pi].
    pub theta: f64,
    /// Initial phase, in [0, 2 pi).
    pub phi: f64,
    pub coupling: CouplingKind,
}

impl ProbeParams {
    pub fn new(
        omega0: f64,
        lambda: f64,
        u: f64,
        theta: f64,
        phi: f64,
        coupling: CouplingKind,
    ) -> Result<Self> {
        let p = Self {
            omega0,
            lambda,
            u,
            theta,
            phi,
            coupling,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega0 > 0.0 && self.omega0.is_finite()) {
            return Err(Error::Domain(format!(
                "omega0 must be > 0, got {}",
                self.omega0
            )));
        }
        if !(self.lambda >= 0.0 && self.lambda.is_finite()) {
            return Err(Error::Domain(format!(
                "lambda must be >= 0, got {}",
                self.lambda
            )));
        }
        if !(self.u >= 0.0 && self.u.is_finite()) {
            return Err(Error::Domain(format!("u must be >= 0, got {}", self.u)));
        }
        if !(0.0..=PI).contains(&self.theta) {
            return Err(Error::Domain(format!(
                "theta must be in [0, pi], got {}",
                self.theta
            )));
        }
        if !(0.0..2.0 * PI).contains(&self.phi) {
            return Err(Error::Domain(format!(
                "phi must be in [0, 2 pi), got {}",
                self.phi
            )));
        }
        Ok(())
    }
}

/// Bath-side parameters: the temperature being estimated and the Lamb-shift
/// cutoff.
#[derive(Clone, Copy, Debug)]
pub struct BathParams {
    /// Bath temperature, > 0 (beta = 1/T).
    pub temperature: f64,
    /// Lamb-shift cutoff epsilon, > 0.
    pub cutoff_eps: f64,
    /// Euler-Mascheroni constant entering the vacuum Lamb-shift terms.
    pub euler_gamma: f64,
}

impl BathParams {
    pub fn new(temperature: f64, cutoff_eps: f64) -> Result<Self> {
        if !(temperature > 0.0 && temperature.is_finite()) {
            return Err(Error::Domain(format!(
                "temperature must be > 0, got {temperature}"
            )));
        }
        if !(cutoff_eps > 0.0 && cutoff_eps.is_finite()) {
            return Err(Error::Domain(format!(
                "cutoff must be > 0, got {cutoff_eps}"
            )));
        }
        Ok(Self {
            temperature,
            cutoff_eps,
            euler_gamma: EULER_GAMMA,
        })
    }

    pub fn with_temperature(temperature: f64) -> Result<Self> {
        Self::new(temperature, DEFAULT_CUTOFF_EPS)
    }
}

/// Everything the reduced dynamics needs, evaluated at the probe gap.
#[derive(Clone, Copy, Debug)]
pub struct RateBundle {
    /// Vacuum decay rate gamma(w0) >= 0.
    pub gamma0: f64,
    /// Effective thermal occupation N(w0) >= 0.
    pub n_mean: f64,
    /// dN/dT at fixed (w0, u).
    pub dn_dt: f64,
    /// Lamb shift Delta(w0); zero when the bundle was built without it.
    pub delta: f64,
    /// Shifted coherence frequency Omega = w0 + 2 Delta(w0).
    pub omega_shifted: f64,
    /// M = 2N + 1.
    pub m_factor: f64,
}

/// Thermal occupation of a field mode: n_k = 1/(e^{k/T} - 1).
///
/// Evaluated as e^{-k/T} / (1 - e^{-k/T}), which keeps full relative
/// precision both deep in the exponential tail and for k << T.
pub fn bose_occupancy(k: f64, temperature: f64) -> Result<f64> {
    if !(k > 0.0) {
        return Err(Error::Domain(format!("momentum must be > 0, got {k}")));
    }
    if !(temperature > 0.0) {
        return Err(Error::Domain(format!(
            "temperature must be > 0, got {temperature}"
        )));
    }
    let x = k / temperature;
    Ok((-x).exp() / (-(-x).exp_m1()))
}

/// Temperature derivative of the occupation:
/// dn_k/dT = (k/T^2) n_k (1 + n_k).
pub fn bose_occupancy_dt(k: f64, temperature: f64) -> Result<f64> {
    let n = bose_occupancy(k, temperature)?;
    Ok(k / (temperature * temperature) * n * (1.0 + n))
}

/// Vacuum decay rate at the probe gap.
///
/// UDW: gamma = lambda^2 w0 / (2 pi), independent of the rapidity.
/// TD:  gamma = lambda^2 (2 cosh 2u + 1) w0^3 / (6 pi).
pub fn gamma_vacuum(p: &ProbeParams) -> f64 {
    let l2 = p.lambda * p.lambda;
    match p.coupling {
        CouplingKind::Udw => l2 * p.omega0 / (2.0 * PI),
        CouplingKind::Td => l2 * (2.0 * (2.0 * p.u).cosh() + 1.0) * p.omega0.powi(3) / (6.0 * PI),
    }
}

/// ln(1 - e^{-x}) for x > 0, stable at both ends.
fn ln_one_minus_exp_neg(x: f64) -> f64 {
    if x > std::f64::consts::LN_2 {
        (-(-x).exp()).ln_1p()
    } else {
        (-(-x).exp_m1()).ln()
    }
}

/// Truncation point for thermal integrals over k in (0, inf): the Bose factor
/// is bounded by e^{-k/T}, so 50 T already puts the tail below 1e-14 relative;
/// the 10 w0 e^u term keeps both Lamb-shift singularities inside the domain.
fn k_max(p: &ProbeParams, b: &BathParams) -> f64 {
    (50.0 * b.temperature).max(10.0 * p.omega0 * p.u.exp())
}

/// Effective thermal occupation N(w0) seen by the moving probe.
///
/// UDW has the closed form
///   N = ln[(1 - e^{-beta w e^u}) / (1 - e^{-beta w e^{-u}})] / (2 w beta sinh u),
/// TD is the Doppler-window integral
///   N = 3 int_{w e^{-u}}^{w e^u} k^2 n_k dk / (2 w^3 sinh u (2 cosh 2u + 1)).
/// For u below [`U_MIN`] both reduce to the comoving Planck occupation.
pub fn mean_excitation(p: &ProbeParams, b: &BathParams) -> Result<f64> {
    mean_excitation_with(p, b, &QuadratureSpec::default())
}

/// [`mean_excitation`] with caller-controlled quadrature tolerances (the TD
/// branch is the only consumer of the spec).
pub fn mean_excitation_with(p: &ProbeParams, b: &BathParams, spec: &QuadratureSpec) -> Result<f64> {
    p.validate()?;
    let t = b.temperature;
    if !(t > 0.0) {
        return Err(Error::Domain(format!("temperature must be > 0, got {t}")));
    }
    if p.u < U_MIN {
        return bose_occupancy(p.omega0, t);
    }
    let w = p.omega0;
    let beta = 1.0 / t;
    match p.coupling {
        CouplingKind::Udw => {
            let hi = ln_one_minus_exp_neg(beta * w * p.u.exp());
            let lo = ln_one_minus_exp_neg(beta * w * (-p.u).exp());
            Ok((hi - lo) / (2.0 * w * beta * p.u.sinh()))
        }
        CouplingKind::Td => {
            let a_lo = w * (-p.u).exp();
            let a_hi = w * p.u.exp();
            let upper = a_hi.min(a_lo + 64.0 * t);
            let f = |k: f64| k * k * bose_occupancy(k, t).unwrap_or(0.0);
            let (i, _) = integrate(&f, a_lo, upper, spec)?;
            Ok(3.0 * i / (2.0 * w.powi(3) * p.u.sinh() * (2.0 * (2.0 * p.u).cosh() + 1.0)))
        }
    }
}

/// dN/dT at fixed (w0, u, coupling).
///
/// UDW differentiates the closed form,
///   dN/dT = N/T - [a+ n(a+) - a- n(a-)] / (2 w T sinh u),  a+- = w e^{+-u};
/// TD differentiates under the integral sign with
/// dn_k/dT = (k/T^2) n_k (1 + n_k).
pub fn mean_excitation_dt(p: &ProbeParams, b: &BathParams) -> Result<f64> {
    mean_excitation_dt_with(p, b, &QuadratureSpec::default())
}

/// [`mean_excitation_dt`] with caller-controlled quadrature tolerances.
pub fn mean_excitation_dt_with(
    p: &ProbeParams,
    b: &BathParams,
    spec: &QuadratureSpec,
) -> Result<f64> {
    p.validate()?;
    let t = b.temperature;
    if !(t > 0.0) {
        return Err(Error::Domain(format!("temperature must be > 0, got {t}")));
    }
    if p.u < U_MIN {
        return bose_occupancy_dt(p.omega0, t);
    }
    let w = p.omega0;
    match p.coupling {
        CouplingKind::Udw => {
            let n = mean_excitation(p, b)?;
            let a_hi = w * p.u.exp();
            let a_lo = w * (-p.u).exp();
            let occ_hi = a_hi * bose_occupancy(a_hi, t)?;
            let occ_lo = a_lo * bose_occupancy(a_lo, t)?;
            Ok(n / t - (occ_hi - occ_lo) / (2.0 * w * t * p.u.sinh()))
        }
        CouplingKind::Td => {
            let a_lo = w * (-p.u).exp();
            let a_hi = w * p.u.exp();
            let upper = a_hi.min(a_lo + 64.0 * t);
            let f = |k: f64| k * k * bose_occupancy_dt(k, t).unwrap_or(0.0);
            let (i, _) = integrate(&f, a_lo, upper, spec)?;
            Ok(3.0 * i / (2.0 * w.powi(3) * p.u.sinh() * (2.0 * (2.0 * p.u).cosh() + 1.0)))
        }
    }
}

/// Logarithmic kernel of the thermal Lamb-shift integrals,
///
///   ln | (k e^{-u} + w)(w - k e^u) / ((w - k e^{-u})(k e^u + w)) |,
///
/// rewritten through x1 = (k/w) e^{-u}, x2 = (w/k) e^{-u} so the large-u
/// cancellation between the four logarithms never happens in floating point.
/// Log-divergent at k = w e^{-u} (x2 = 1) and k = w e^{u} (x1 = 1); both are
/// integrable once the absolute value is taken.
fn lamb_log_kernel(k: f64, w: f64, u: f64) -> f64 {
    let emu = (-u).exp();
    let x1 = (k / w) * emu;
    let x2 = (w / k) * emu;
    let ln_abs_one_minus = |x: f64| {
        if x < 1.0 {
            (-x).ln_1p()
        } else {
            (x - 1.0).ln()
        }
    };
    x1.ln_1p() + ln_abs_one_minus(x2) - ln_abs_one_minus(x1) - x2.ln_1p()
}

/// Lamb shift Delta(w0) for the probe gap (sign convention: the returned
/// value is the sgn(w) * [vacuum + thermal] bracket evaluated at |w| = w0).
///
/// The thermal part is a principal-value integral over (0, k_max] with the
/// kernel above; the vacuum parts are
///   UDW: Delta_0   = lambda^2 w ln(eps e^{gamma-1} w) / (4 pi^2),
///   TD:  Delta~_0  = lambda^2 (2 cosh 2u + 1) w^3 / (12 pi^2)
///                     * (3/(w eps)^2 + ln(w eps e^{gamma-1})).
/// The divergent 3/(w eps)^2 term is kept as written; eps is a finite
/// physical cutoff.
pub fn lamb_shift(p: &ProbeParams, b: &BathParams) -> Result<f64> {
    p.validate()?;
    if !(b.cutoff_eps > 0.0) {
        return Err(Error::Domain(format!(
            "cutoff must be > 0, got {}",
            b.cutoff_eps
        )));
    }
    if !(b.temperature > 0.0) {
        return Err(Error::Domain(format!(
            "temperature must be > 0, got {}",
            b.temperature
        )));
    }
    if p.lambda == 0.0 {
        return Ok(0.0);
    }
    let w = p.omega0;
    let t = b.temperature;
    let l2 = p.lambda * p.lambda;
    let log_cut = (b.cutoff_eps * (b.euler_gamma - 1.0).exp() * w).ln();

    let vacuum = match p.coupling {
        CouplingKind::Udw => l2 * w * log_cut / (4.0 * PI * PI),
        CouplingKind::Td => {
            let pref = l2 * (2.0 * (2.0 * p.u).cosh() + 1.0) * w.powi(3) / (12.0 * PI * PI);
            pref * (3.0 / (w * b.cutoff_eps).powi(2) + log_cut)
        }
    };

    let weight = |k: f64| match p.coupling {
        CouplingKind::Udw => bose_occupancy(k, t).unwrap_or(0.0),
        CouplingKind::Td => k * k * bose_occupancy(k, t).unwrap_or(0.0),
    };

    let thermal = if p.u < U_MIN {
        // comoving limit of kernel/sinh(u): -4 k w / (w^2 - k^2), a simple
        // pole at k = w handled as a principal value
        let f = |k: f64| weight(k) * (-4.0 * k * w / ((w - k) * (w + k)));
        let upper = (50.0 * t).max(10.0 * w);
        let i = pv_with_floor(&f, upper, &[w], 1e-7)?;
        l2 * i / (8.0 * PI * PI)
    } else {
        let k1 = w * (-p.u).exp();
        let k2 = w * p.u.exp();
        let upper = k_max(p, b);
        let f = |k: f64| weight(k) * lamb_log_kernel(k, w, p.u);
        let i = pv_with_floor(&f, upper, &[k1, k2], 1e-9)?;
        l2 * i / (8.0 * PI * PI * p.u.sinh())
    };

    Ok(vacuum + thermal)
}

/// Principal-value integral over (0, upper] for the Lamb-shift kernels.
///
/// Evaluations right next to a singular point carry only absolute offset
/// precision, and the below/above windows can cancel strongly, so a purely
/// relative target is not always reachable; the absolute floor is therefore
/// widened step by step. Every rung keeps the thermal term far more accurate
/// than anything downstream resolves (all estimation targets are exactly
/// Lamb-shift independent).
fn pv_with_floor<F: Fn(f64) -> f64>(
    f: &F,
    upper: f64,
    singular: &[f64],
    rel_tol: f64,
) -> Result<f64> {
    let mut last = None;
    for abs_tol in [1e-14, 1e-11, 1e-8, 3e-7] {
        let spec = QuadratureSpec {
            rel_tol,
            abs_tol,
            singular_points: singular.to_vec(),
            ..QuadratureSpec::default()
        };
        match integrate(f, f64::MIN_POSITIVE, upper, &spec) {
            Ok((value, _)) => return Ok(value),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap())
}

/// Lamb shift at a signed frequency: Delta(-w) = -Delta(w).
pub fn lamb_shift_signed(p: &ProbeParams, b: &BathParams, omega: f64) -> Result<f64> {
    let magnitude = lamb_shift(
        &ProbeParams {
            omega0: omega.abs(),
            ..*p
        },
        b,
    )?;
    Ok(omega.signum() * magnitude)
}

/// Assemble every rate the dynamics consumes. With `include_lamb = false`
/// the Lamb shift is skipped, `delta = 0`, and the coherence rotates at the
/// bare gap; all estimation targets are unaffected by this choice.
pub fn rate_bundle(p: &ProbeParams, b: &BathParams, include_lamb: bool) -> Result<RateBundle> {
    let gamma0 = gamma_vacuum(p);
    let n_mean = mean_excitation(p, b)?;
    let dn_dt = mean_excitation_dt(p, b)?;
    let delta = if include_lamb { lamb_shift(p, b)? } else { 0.0 };
    Ok(RateBundle {
        gamma0,
        n_mean,
        dn_dt,
        delta,
        omega_shifted: p.omega0 + 2.0 * delta,
        m_factor: 2.0 * n_mean + 1.0,
    })
}
