//! Reduced dynamics of the probe.
//!
//! The second-order master equation for a two-level probe with gap w0,
//! transition operators sigma-+ and rates Gamma(+w0) = gamma (1 + N),
//! Gamma(-w0) = gamma N has the closed-form solution (basis |e>, |g>;
//! g = gamma tau, M = 2N + 1, Omega = w0 + 2 Delta, alpha = phi - tau Omega):
//!
//!   rho_ee = (1 + cos(theta) e^{-gM} - (1 - e^{-gM})/M) / 2
//!   rho_eg = sin(theta) e^{-gM/2} e^{i alpha} / 2
//!
//! This module evaluates that solution, converts to and from the Bloch
//! picture, and integrates the master equation numerically as an independent
//! oracle (including the Lamb-shift commutator, which only rotates phases).

use crate::error::{Error, Result};
use crate::mat2::Mat2;
use crate::numerics::{ode_integrate, OdeSpec};
use crate::rates::{ProbeParams, RateBundle};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Density matrix of the probe in the (excited, ground) basis; the (0,0)
/// entry is the excited-state population.
#[derive(Clone, Copy, Debug)]
pub struct ProbeState {
    pub rho: Mat2,
}

impl ProbeState {
    pub fn from_matrix(rho: Mat2) -> Self {
        Self { rho }
    }

    pub fn excited_population(&self) -> f64 {
        self.rho.e[0][0].re
    }

    pub fn ground_population(&self) -> f64 {
        self.rho.e[1][1].re
    }

    /// Upper-right coherence rho_eg.
    pub fn coherence(&self) -> Complex64 {
        self.rho.e[0][1]
    }

    pub fn purity(&self) -> f64 {
        (self.rho * self.rho).trace().re
    }

    /// Check the density-matrix invariants: Hermitian, unit trace, positive
    /// semidefinite, each within 1e-12.
    pub fn validate(&self) -> Result<()> {
        const TOL: f64 = 1e-12;
        if self.rho.hermiticity_defect() > TOL {
            return Err(Error::Domain(format!(
                "state is not Hermitian (defect {:.3e})",
                self.rho.hermiticity_defect()
            )));
        }
        let tr = self.rho.trace();
        if (tr.re - 1.0).abs() > TOL || tr.im.abs() > TOL {
            return Err(Error::Domain(format!("state trace {} is not 1", tr)));
        }
        let evals = self.rho.eigvals_hermitian();
        if evals[1] < -TOL {
            return Err(Error::Domain(format!(
                "state has negative eigenvalue {:.3e}",
                evals[1]
            )));
        }
        Ok(())
    }

    /// Trace distance to another state, (|l1| + |l2|)/2 over the eigenvalues
    /// of the difference.
    pub fn trace_distance(&self, other: &ProbeState) -> f64 {
        let evals = (self.rho - other.rho).eigvals_hermitian();
        0.5 * (evals[0].abs() + evals[1].abs())
    }
}

/// Bloch vector w with rho = (I + w . sigma)/2 and sigma_z |e> = +|e>.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochVector {
    pub wx: f64,
    pub wy: f64,
    pub wz: f64,
}

impl BlochVector {
    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.wx * other.wx + self.wy * other.wy + self.wz * other.wz
    }
}

/// Precomputed evolution inputs: proper time, the dimensionless decay
/// g = gamma(w0) tau, and the rate bundle.
#[derive(Clone, Copy, Debug)]
pub struct EvolutionContext {
    pub tau: f64,
    pub g: f64,
    pub bundle: RateBundle,
}

impl EvolutionContext {
    pub fn new(bundle: RateBundle, tau: f64) -> Result<Self> {
        if !(tau >= 0.0 && tau.is_finite()) {
            return Err(Error::Domain(format!("tau must be >= 0, got {tau}")));
        }
        Ok(Self {
            tau,
            g: bundle.gamma0 * tau,
            bundle,
        })
    }
}

/// Pure initial state |psi> = e^{i phi} cos(theta/2)|e> + sin(theta/2)|g>.
pub fn initial_state(theta: f64, phi: f64) -> Result<ProbeState> {
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::Domain(format!(
            "theta must be in [0, pi], got {theta}"
        )));
    }
    if !(0.0..2.0 * PI).contains(&phi) {
        return Err(Error::Domain(format!(
            "phi must be in [0, 2 pi), got {phi}"
        )));
    }
    let c = (0.5 * theta).cos();
    let s = (0.5 * theta).sin();
    let phase = Complex64::from_polar(1.0, phi);
    // outer product of (e^{i phi} c, s)
    let rho = Mat2::new(
        Complex64::new(c * c, 0.0),
        phase * c * s,
        phase.conj() * c * s,
        Complex64::new(s * s, 0.0),
    );
    Ok(ProbeState::from_matrix(rho))
}

/// Closed-form evolved state at proper time `ctx.tau`.
///
/// The populations are evaluated as
///   rho_ee = (N/M)(1 - e^{-gM}) + cos^2(theta/2) e^{-gM},
/// a sum of nonnegative terms algebraically equal to the textbook
/// (1 + cos(theta) e^{-gM} - (1 - e^{-gM})/M)/2 but with full relative
/// precision even for nearly empty levels.
pub fn evolve(p: &ProbeParams, ctx: &EvolutionContext) -> ProbeState {
    let m = ctx.bundle.m_factor;
    let n = ctx.bundle.n_mean;
    let s = ctx.g * m;
    let decay = (-s).exp();
    let relax = -(-s).exp_m1(); // 1 - e^{-gM}, stable for small gM
    let half_cos2 = {
        let c = (0.5 * p.theta).cos();
        c * c
    };
    let half_sin2 = {
        let sn = (0.5 * p.theta).sin();
        sn * sn
    };
    let pop_e = n / m * relax + half_cos2 * decay;
    let pop_g = (n + 1.0) / m * relax + half_sin2 * decay;
    let coh = Complex64::from_polar(
        0.5 * p.theta.sin() * (-0.5 * s).exp(),
        p.phi - ctx.tau * ctx.bundle.omega_shifted,
    );
    ProbeState::from_matrix(Mat2::new(
        Complex64::new(pop_e, 0.0),
        coh,
        coh.conj(),
        Complex64::new(pop_g, 0.0),
    ))
}

/// Numerical master-equation solution used as a validation oracle.
///
/// Integrates
///   d rho / d tau = -i [h + h_LS, rho]
///                   + Gamma(+w0) D[sigma-] rho + Gamma(-w0) D[sigma+] rho
/// with h = (w0/2) sigma_z, h_LS = Delta sigma_z, Gamma(+w0) = gamma (1+N),
/// Gamma(-w0) = gamma N, using the adaptive embedded-pair stepper.
pub fn evolve_ode_oracle(
    p: &ProbeParams,
    ctx: &EvolutionContext,
    spec: &OdeSpec,
) -> Result<ProbeState> {
    let rho0 = initial_state(p.theta, p.phi)?;
    if ctx.tau == 0.0 {
        return Ok(rho0);
    }
    let gamma = ctx.bundle.gamma0;
    let n = ctx.bundle.n_mean;
    let rate_down = gamma * (1.0 + n);
    let rate_up = gamma * n;
    let half_omega = 0.5 * p.omega0 + ctx.bundle.delta;

    let sm = Mat2::sigma_minus();
    let sp = Mat2::sigma_plus();
    let h = Mat2::sigma_z().scale(half_omega);

    let dissipator = |op: &Mat2, rate: f64, rho: &Mat2| -> Mat2 {
        let op_dag = op.adjoint();
        let opdop = op_dag * *op;
        (*op * *rho * op_dag - (opdop * *rho + *rho * opdop).scale(0.5)).scale(rate)
    };

    let rhs = move |_t: f64, y: &[f64], dy: &mut [f64]| {
        let rho = unflatten(y);
        let coherent = h.commutator(&rho).scale_c(Complex64::new(0.0, -1.0));
        let total = coherent + dissipator(&sm, rate_down, &rho) + dissipator(&sp, rate_up, &rho);
        flatten(&total, dy);
    };

    let mut y0 = [0.0f64; 8];
    flatten(&rho0.rho, &mut y0);
    let y = ode_integrate(rhs, &y0, (0.0, ctx.tau), spec)?;
    Ok(ProbeState::from_matrix(unflatten(&y)))
}

fn flatten(m: &Mat2, out: &mut [f64]) {
    for r in 0..2 {
        for c in 0..2 {
            out[2 * (2 * r + c)] = m.e[r][c].re;
            out[2 * (2 * r + c) + 1] = m.e[r][c].im;
        }
    }
}

fn unflatten(y: &[f64]) -> Mat2 {
    let mut m = Mat2::zero();
    for r in 0..2 {
        for c in 0..2 {
            m.e[r][c] = Complex64::new(y[2 * (2 * r + c)], y[2 * (2 * r + c) + 1]);
        }
    }
    m
}

/// Bloch vector of a state: wx = 2 Re rho_eg, wy = -2 Im rho_eg,
/// wz = rho_ee - rho_gg.
pub fn bloch_vector(s: &ProbeState) -> BlochVector {
    BlochVector {
        wx: 2.0 * s.rho.e[0][1].re,
        wy: -2.0 * s.rho.e[0][1].im,
        wz: s.rho.e[0][0].re - s.rho.e[1][1].re,
    }
}

/// Inverse of [`bloch_vector`]: rho = (I + w . sigma)/2.
pub fn state_from_bloch(w: &BlochVector) -> ProbeState {
    let rho = Mat2::new(
        Complex64::new(0.5 * (1.0 + w.wz), 0.0),
        Complex64::new(0.5 * w.wx, -0.5 * w.wy),
        Complex64::new(0.5 * w.wx, 0.5 * w.wy),
        Complex64::new(0.5 * (1.0 - w.wz), 0.0),
    );
    ProbeState::from_matrix(rho)
}

/// Long-time limit diag((1 - 1/M)/2, (1 + 1/M)/2): excited population
/// N/(2N+1), detailed balance p_e/p_g = N/(N+1).
pub fn steady_state(bundle: &RateBundle) -> Result<ProbeState> {
    if bundle.gamma0 <= 0.0 {
        return Err(Error::Domain(
            "steady state undefined for gamma0 = 0 (no relaxation)".into(),
        ));
    }
    let m = bundle.m_factor;
    Ok(ProbeState::from_matrix(Mat2::diag(
        0.5 * (1.0 - 1.0 / m),
        0.5 * (1.0 + 1.0 / m),
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rates::{rate_bundle, BathParams, CouplingKind};

    #[allow(clippy::too_many_arguments)]
    fn setup(
        coupling: CouplingKind,
        omega0: f64,
        lambda: f64,
        u: f64,
        t: f64,
        theta: f64,
        phi: f64,
        tau: f64,
    ) -> (ProbeParams, EvolutionContext) {
        let p = ProbeParams::new(omega0, lambda, u, theta, phi, coupling).unwrap();
        let b = BathParams::with_temperature(t).unwrap();
        let bundle = rate_bundle(&p, &b, true).unwrap();
        (p, EvolutionContext::new(bundle, tau).unwrap())
    }

    #[test]
    fn initial_state_poles() {
        let ground = initial_state(PI, 0.0).unwrap();
        assert!((ground.ground_population() - 1.0).abs() < 1e-15);
        let excited = initial_state(0.0, 1.0).unwrap();
        assert!((excited.excited_population() - 1.0).abs() < 1e-15);
        let plus = initial_state(0.5 * PI, 0.0).unwrap();
        for z in plus.rho.e.iter().flatten() {
            assert!((z.re - 0.5).abs() < 1e-15 && z.im.abs() < 1e-15);
        }
        assert!((plus.purity() - 1.0).abs() < 1e-14);
        assert!(initial_state(4.0, 0.0).is_err());
        assert!(initial_state(1.0, -0.1).is_err());
    }

    #[test]
    fn evolve_at_zero_time_is_initial() {
        let (p, ctx) = setup(CouplingKind::Udw, 1.0, 0.3, 0.5, 0.7, 1.1, 0.4, 0.0);
        let evolved = evolve(&p, &ctx);
        let init = initial_state(p.theta, p.phi).unwrap();
        assert!(evolved.trace_distance(&init) < 1e-15);
    }

    #[test]
    fn evolve_long_time_is_steady_state() {
        let (p, ctx0) = setup(CouplingKind::Udw, 1.0, 0.5, 1.0, 2.0, 1.0, 0.3, 0.0);
        let tau = 200.0 / (ctx0.bundle.gamma0 * ctx0.bundle.m_factor);
        let ctx = EvolutionContext::new(ctx0.bundle, tau).unwrap();
        let evolved = evolve(&p, &ctx);
        let steady = steady_state(&ctx.bundle).unwrap();
        let diff = evolved.rho - steady.rho;
        assert!(diff.max_abs() < 1e-15, "residual {}", diff.max_abs());
    }

    #[test]
    fn evolve_state_invariants_hold() {
        for (coupling, u) in [(CouplingKind::Udw, 3.0), (CouplingKind::Td, 0.4)] {
            for &tau in &[0.0, 0.3, 7.0, 900.0] {
                let (p, ctx) = setup(coupling, 0.8, 0.2, u, 0.6, 2.0, 5.0, tau);
                evolve(&p, &ctx).validate().unwrap();
            }
        }
    }

    #[test]
    fn coherence_decay_is_exact_exponential() {
        let (p, ctx) = setup(CouplingKind::Udw, 1.0, 0.2, 1.0, 1.0, 1.2, 0.7, 13.0);
        let now = evolve(&p, &ctx).coherence().norm();
        let init = initial_state(p.theta, p.phi).unwrap().coherence().norm();
        let expect = (-0.5 * ctx.g * ctx.bundle.m_factor).exp();
        assert!((now / init - expect).abs() < 1e-12 * expect);
    }

    #[test]
    fn populations_ignore_phase_and_shift() {
        let (p1, ctx1) = setup(CouplingKind::Udw, 1.0, 0.2, 1.0, 1.0, 1.2, 0.0, 5.0);
        let (p2, _) = setup(CouplingKind::Udw, 1.0, 0.2, 1.0, 1.0, 1.2, 3.0, 5.0);
        // same bundle but Lamb shift stripped
        let b = BathParams::with_temperature(1.0).unwrap();
        let bare = rate_bundle(&p1, &b, false).unwrap();
        let ctx2 = EvolutionContext::new(bare, 5.0).unwrap();
        let s1 = evolve(&p1, &ctx1);
        let s2 = evolve(&p2, &ctx2);
        assert_eq!(s1.excited_population(), s2.excited_population());
        assert_eq!(s1.ground_population(), s2.ground_population());
    }

    #[test]
    fn population_semigroup_property() {
        let (p, ctx0) = setup(CouplingKind::Udw, 1.0, 0.3, 0.8, 0.9, 2.1, 1.0, 0.0);
        let bundle = ctx0.bundle;
        let (t1, t2) = (3.0, 11.0);
        let both = evolve(&p, &EvolutionContext::new(bundle, t1 + t2).unwrap());
        let first = evolve(&p, &EvolutionContext::new(bundle, t1).unwrap());
        let steady = steady_state(&bundle).unwrap();
        let decay2 = (-bundle.gamma0 * bundle.m_factor * t2).exp();
        let pop = steady.excited_population()
            + (first.excited_population() - steady.excited_population()) * decay2;
        assert!((both.excited_population() - pop).abs() < 1e-12);
        let coh =
            first.coherence() * Complex64::from_polar(decay2.sqrt(), -t2 * bundle.omega_shifted);
        assert!((both.coherence() - coh).norm() < 1e-12);
    }

    #[test]
    fn ode_oracle_closed_system() {
        // lambda = 0: pure phase rotation, populations frozen
        let (p, ctx) = setup(CouplingKind::Udw, 1.0, 0.0, 0.5, 1.0, 1.3, 0.2, 9.0);
        let num = evolve_ode_oracle(&p, &ctx, &OdeSpec::default()).unwrap();
        let init = initial_state(p.theta, p.phi).unwrap();
        assert!((num.excited_population() - init.excited_population()).abs() < 1e-9);
        let expect_phase = init.coherence() * Complex64::from_polar(1.0, -ctx.tau * p.omega0);
        assert!((num.coherence() - expect_phase).norm() < 1e-9);
    }

    #[test]
    fn ode_oracle_diagonal_initial_state() {
        let (p, ctx) = setup(CouplingKind::Udw, 1.0, 0.4, 1.0, 1.5, PI, 0.0, 2.0);
        let num = evolve_ode_oracle(&p, &ctx, &OdeSpec::default()).unwrap();
        assert!(num.coherence().norm() < 1e-12);
        // populations relax monotonically toward the steady state
        let steady = steady_state(&ctx.bundle).unwrap().excited_population();
        let mut prev = 0.0;
        for &tau in &[0.1, 0.5, 1.0, 2.0, 5.0] {
            let ctx_t = EvolutionContext::new(ctx.bundle, tau).unwrap();
            let s = evolve_ode_oracle(&p, &ctx_t, &OdeSpec::default()).unwrap();
            let pop = s.excited_population();
            assert!(pop >= prev - 1e-10 && pop <= steady + 1e-9);
            prev = pop;
        }
    }

    #[test]
    fn ode_oracle_matches_closed_form() {
        let (p, ctx) = setup(CouplingKind::Udw, 0.5, 0.01, 4.0, 0.05, PI / 3.0, 1.0, 1e3);
        let closed = evolve(&p, &ctx);
        // phase error grows with the accumulated angle Omega tau, so the
        // oracle runs below the default local tolerance here
        let spec = OdeSpec {
            local_error_tol: 1e-12,
            ..OdeSpec::default()
        };
        let num = evolve_ode_oracle(&p, &ctx, &spec).unwrap();
        let dist = closed.trace_distance(&num);
        assert!(dist <= 1e-8, "trace distance {dist}");
    }

    #[test]
    fn bloch_round_trip() {
        let (p, ctx) = setup(CouplingKind::Td, 0.7, 0.1, 0.9, 0.8, 2.2, 4.0, 3.0);
        let s = evolve(&p, &ctx);
        let w = bloch_vector(&s);
        assert!(w.norm() <= 1.0 + 1e-12);
        let back = state_from_bloch(&w);
        assert!((back.rho - s.rho).max_abs() < 1e-15);

        let ground = bloch_vector(&initial_state(PI, 0.0).unwrap());
        assert!(ground.wx.abs() < 1e-15 && ground.wy.abs() < 1e-15);
        assert_eq!(ground.wz, -1.0);
        let mixed = bloch_vector(&ProbeState::from_matrix(Mat2::diag(0.5, 0.5)));
        assert_eq!(mixed.norm(), 0.0);
    }

    #[test]
    fn steady_state_limits() {
        // vacuum bath: N = 0 -> ground state
        let bundle = RateBundle {
            gamma0: 1.0,
            n_mean: 0.0,
            dn_dt: 0.0,
            delta: 0.0,
            omega_shifted: 1.0,
            m_factor: 1.0,
        };
        let s = steady_state(&bundle).unwrap();
        assert_eq!(s.ground_population(), 1.0);

        // hot bath: populations approach 1/2 within 1/(2M)
        let hot = RateBundle {
            n_mean: 1e6,
            m_factor: 2e6 + 1.0,
            ..bundle
        };
        let s = steady_state(&hot).unwrap();
        assert!((s.excited_population() - 0.5).abs() <= 0.5 / hot.m_factor + 1e-15);

        let stuck = RateBundle {
            gamma0: 0.0,
            ..bundle
        };
        assert!(steady_state(&stuck).is_err());
    }
}
