//! Acceptance suite: nine numbered criteria with pinned tolerances, runnable
//! through the `selftest` subcommand or the `acceptance` integration test.
//! Every criterion reports pass/fail with a one-line summary; time budgets
//! are enforced in release builds (debug builds only report the timing).

use crate::dynamics::{bloch_vector, evolve, evolve_ode_oracle, EvolutionContext};
use crate::estimation::{
    bloch_of_derivative, compatibility_residual, d_rho_temperature, d_rho_theta, fi_projective,
    qfi_bloch, qfi_matrix, qfi_sld, qfi_temperature_closed, qfi_temperature_steady, ratio_r, sld,
    MeasurementBasis,
};
use crate::numerics::{differentiate, integrate, DiffSpec, OdeSpec, QuadratureSpec};
use crate::rates::{
    bose_occupancy, mean_excitation, mean_excitation_dt, rate_bundle, BathParams, CouplingKind,
    ProbeParams, U_MIN,
};
use crate::scan::{
    figure_preset, grid_max_bracket, refine_argmax, run_sweep, trapping_detector, ParamKey,
    Quantity, SweepSpec,
};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::time::Instant;

#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub id: &'static str,
    pub description: &'static str,
    pub passed: bool,
    pub details: String,
    pub seconds: f64,
}

/// Run all nine acceptance criteria in order.
pub fn run_all() -> Vec<CriterionOutcome> {
    vec![
        criterion_1_route_equivalence(),
        criterion_2_dynamics_oracle(),
        criterion_3_invariance(),
        criterion_4_optimal_measurement(),
        criterion_5_comoving_limits(),
        criterion_6_multiparameter(),
        criterion_7_trapping_identity(),
        criterion_8_figure_morphology(),
        criterion_9_numerics_battery(),
    ]
}

fn finish(
    id: &'static str,
    description: &'static str,
    budget_seconds: f64,
    started: Instant,
    result: (bool, String),
) -> CriterionOutcome {
    let seconds = started.elapsed().as_secs_f64();
    let (mut passed, mut details) = result;
    if passed && seconds > budget_seconds && !cfg!(debug_assertions) {
        passed = false;
        details = format!("over time budget {budget_seconds} s: took {seconds:.1} s; {details}");
    }
    CriterionOutcome {
        id,
        description,
        passed,
        details,
        seconds,
    }
}

/// Random valid point in the criterion-1 ranges: the state family must stay
/// meaningfully mixed (bath visible, state off the Bloch sphere), which is
/// what "valid" means for the mixed-state QFI machinery.
fn sample_point(
    rng: &mut ChaCha8Rng,
    coupling: CouplingKind,
    u_max: f64,
    log_s_range: (f64, f64),
) -> (ProbeParams, BathParams, EvolutionContext) {
    loop {
        let t = 10f64.powf(rng.gen_range(-3.0..300f64.log10()));
        let omega0 = 10f64.powf(rng.gen_range(-2.0..200f64.log10()));
        let u = rng.gen_range(0.0..u_max);
        let lambda = rng.gen_range(0.005..2.5);
        let theta = rng.gen_range(0.0..PI);
        let phi = rng.gen_range(0.0..2.0 * PI);
        let Ok(p) = ProbeParams::new(omega0, lambda, u, theta, phi, coupling) else {
            continue;
        };
        let b = BathParams::with_temperature(t).unwrap();
        let Ok(bundle) = rate_bundle(&p, &b, false) else {
            continue;
        };
        if bundle.n_mean < 1e-10 {
            continue; // bath invisible at this gap: M rounds to 1
        }
        let relax = 1.0 / (bundle.gamma0 * bundle.m_factor);
        let tau = 10f64.powf(rng.gen_range(log_s_range.0..log_s_range.1)) * relax;
        let ctx = EvolutionContext::new(bundle, tau).unwrap();
        if bloch_vector(&evolve(&p, &ctx)).norm() > 1.0 - 1e-7 {
            continue; // effectively pure: the mixed-state branch is ill-posed
        }
        return (p, b, ctx);
    }
}

/// Criterion 1: the three QFI routes agree pairwise to rel 1e-8 on 100
/// randomized valid points per coupling (T in [1e-3, 300], u in [0, 30],
/// lambda in (0, 2.5], omega0 in [0.01, 200], tau spanning 6 decades around
/// the relaxation time).
pub fn criterion_1_route_equivalence() -> CriterionOutcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut failures = 0usize;
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for coupling in [CouplingKind::Udw, CouplingKind::Td] {
        for _ in 0..100 {
            let (p, _, ctx) = sample_point(&mut rng, coupling, 30.0, (-3.0, 3.0));
            let closed = qfi_temperature_closed(&p, &ctx);
            let rho = evolve(&p, &ctx);
            let d = d_rho_temperature(&p, &ctx);
            let bloch = match qfi_bloch(&bloch_vector(&rho), &bloch_of_derivative(&d)) {
                Ok(v) => v,
                Err(e) => {
                    return finish(
                        "1",
                        "QFI route equivalence",
                        30.0,
                        start,
                        (false, format!("bloch route failed: {e}")),
                    );
                }
            };
            let via_sld = match qfi_sld(&rho, &d) {
                Ok(v) => v,
                Err(e) => {
                    return finish(
                        "1",
                        "QFI route equivalence",
                        30.0,
                        start,
                        (false, format!("SLD route failed: {e}")),
                    );
                }
            };
            let scale = closed.abs().max(bloch.abs()).max(via_sld.abs()).max(1e-300);
            let d1 = (closed - bloch).abs() / scale;
            let d2 = (closed - via_sld).abs() / scale;
            let d3 = (bloch - via_sld).abs() / scale;
            worst = worst.max(d1).max(d2).max(d3);
            if d1 > 1e-8 || d2 > 1e-8 || d3 > 1e-8 {
                failures += 1;
            }
        }
    }
    finish(
        "1",
        "QFI route equivalence (closed / Bloch / SLD), 100 points per coupling",
        30.0,
        start,
        (
            failures == 0,
            format!("worst pairwise relative difference {worst:.2e} (tolerance 1e-8)"),
        ),
    )
}

/// Criterion 2: closed-form evolution vs the master-equation ODE oracle
/// (Lamb commutator included), trace distance <= 1e-8 on 100 randomized
/// points per coupling.
pub fn criterion_2_dynamics_oracle() -> CriterionOutcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut failures = 0usize;
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let ode_spec = OdeSpec {
        local_error_tol: 1e-12,
        ..OdeSpec::default()
    };
    for coupling in [CouplingKind::Udw, CouplingKind::Td] {
        for _ in 0..100 {
            // rapidity capped so the Lamb quadrature domain stays tractable,
            // and the accumulated phase capped so the explicit stepper keeps
            // its global error well below the trace-distance tolerance
            let (p, b, ctx0) = sample_point(&mut rng, coupling, 6.0, (-2.0, 1.17));
            let bundle = match rate_bundle(&p, &b, true) {
                Ok(x) => x,
                Err(e) => {
                    return finish(
                        "2",
                        "closed-form dynamics vs master-equation ODE oracle, 100 points per coupling",
                        120.0,
                        start,
                        (false, format!("Lamb-shift evaluation failed: {e}")),
                    );
                }
            };
            let tau = ctx0.tau.min(400.0 / bundle.omega_shifted.abs());
            let ctx = EvolutionContext::new(bundle, tau).unwrap();
            let closed = evolve(&p, &ctx);
            match evolve_ode_oracle(&p, &ctx, &ode_spec) {
                Ok(numeric) => {
                    let dist = closed.trace_distance(&numeric);
                    worst = worst.max(dist);
                    if dist > 1e-8 {
                        failures += 1;
                    }
                }
                Err(_) => failures += 1,
            }
        }
    }
    finish(
        "2",
        "closed-form dynamics vs master-equation ODE oracle, 100 points per coupling",
        120.0,
        start,
        (
            failures == 0,
            format!("worst trace distance {worst:.2e} (tolerance 1e-8)"),
        ),
    )
}

/// Criterion 3: the QFI is invariant under the initial phase (8 values) and
/// under the Lamb shift on/off, rel variation <= 1e-10 per point.
pub fn criterion_3_invariance() -> CriterionOutcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let points = [
        (CouplingKind::Udw, 0.5, 1.0, 1.0, 0.2, 1.3),
        (CouplingKind::Udw, 0.05, 0.3, 0.1, 0.1, 2.0),
        (CouplingKind::Udw, 100.0, 0.1, 5.0, 0.5, 2.8),
        (CouplingKind::Td, 0.5, 1.0, 1.0, 0.2, 1.3),
        (CouplingKind::Td, 0.05, 0.3, 0.5, 0.1, 0.7),
        (CouplingKind::Td, 10.0, 0.2, 2.0, 0.3, 2.2),
    ];
    for (coupling, t, omega0, u, lambda, theta) in points {
        let mut reference: Option<(f64, f64, f64)> = None;
        for include_lamb in [false, true] {
            for k in 0..8 {
                let phi = k as f64 * PI / 4.0;
                let p = ProbeParams::new(omega0, lambda, u, theta, phi, coupling).unwrap();
                let b = BathParams::with_temperature(t).unwrap();
                let bundle = rate_bundle(&p, &b, include_lamb).unwrap();
                let tau = 1.0 / (bundle.gamma0 * bundle.m_factor);
                let ctx = EvolutionContext::new(bundle, tau).unwrap();
                let rho = evolve(&p, &ctx);
                let d = d_rho_temperature(&p, &ctx);
                let triple = (
                    qfi_temperature_closed(&p, &ctx),
                    qfi_bloch(&bloch_vector(&rho), &bloch_of_derivative(&d)).unwrap(),
                    qfi_sld(&rho, &d).unwrap(),
                );
                match reference {
                    None => reference = Some(triple),
                    Some((c0, b0, s0)) => {
                        worst = worst
                            .max((triple.0 - c0).abs() / c0.abs().max(1e-300))
                            .max((triple.1 - b0).abs() / b0.abs().max(1e-300))
                            .max((triple.2 - s0).abs() / s0.abs().max(1e-300));
                    }
                }
            }
        }
    }
    finish(
        "3",
        "QFI invariance under initial phase and Lamb shift",
        10.0,
        start,
        (
            worst <= 1e-10,
            format!("worst relative variation {worst:.2e} (tolerance 1e-10)"),
        ),
    )
}

/// Criterion 4: for ground-state preparation (theta = pi) the sigma_z
/// readout saturates the QFI to rel 1e-8 on a 50-point grid.
pub fn criterion_4_optimal_measurement() -> CriterionOutcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut tested = 0usize;
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    while tested < 50 {
        let coupling = if tested.is_multiple_of(2) {
            CouplingKind::Udw
        } else {
            CouplingKind::Td
        };
        let (mut p, b, _) = sample_point(&mut rng, coupling, 8.0, (-2.0, 2.0));
        p.theta = PI;
        let bundle = rate_bundle(&p, &b, false).unwrap();
        let tau = 10f64.powf(rng.gen_range(-1.0..2.0)) / (bundle.gamma0 * bundle.m_factor);
        let ctx = EvolutionContext::new(bundle, tau).unwrap();
        let h = qfi_temperature_closed(&p, &ctx);
        if h < 1e-280 {
            continue;
        }
        let f = fi_projective(&p, &ctx, MeasurementBasis::SigmaZ).unwrap();
        worst = worst.max((f - h).abs() / h);
        tested += 1;
    }
    finish(
        "4",
        "sigma_z readout saturates the QFI at theta = pi (50-point grid)",
        10.0,
        start,
        (
            worst <= 1e-8,
            format!("worst relative gap {worst:.2e} (tolerance 1e-8)"),
        ),
    )
}

/// Criterion 5: both couplings reduce to the Planck occupancy at the branch
/// threshold u = U_MIN+ to rel 1e-8 on a 20-point (omega0, T) grid.
///
/// The residual gap is the physical O(u^2) Doppler correction, whose
/// coefficient stays below one only for moderate omega0/T; the grid covers
/// omega0/T in [0.05, 0.2].
pub fn criterion_5_comoving_limits() -> CriterionOutcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let ratios = [0.05, 0.08, 0.12, 0.16, 0.2];
    let omegas = [0.1, 0.5, 1.0, 2.0];
    for coupling in [CouplingKind::Udw, CouplingKind::Td] {
        for &b_ratio in &ratios {
            for &omega0 in &omegas {
                let t = omega0 / b_ratio;
                let p =
                    ProbeParams::new(omega0, 0.1, U_MIN * 1.0000001, PI, 0.0, coupling).unwrap();
                let bath = BathParams::with_temperature(t).unwrap();
                let n = mean_excitation(&p, &bath).unwrap();
                let planck = bose_occupancy(omega0, t).unwrap();
                worst = worst.max((n - planck).abs() / planck);
            }
        }
    }
    finish(
        "5",
        "comoving limits match the Planck occupancy at u = U_MIN+ (20-point grid)",
        5.0,
        start,
        (
            worst <= 1e-8,
            format!("worst relative deviation {worst:.2e} (tolerance 1e-8)"),
        ),
    )
}

/// Criterion 6: multiparameter saturability. Compatibility residual <= 1e-10
/// everywhere tested, PSD Fisher matrix, 0 < R <= 2 + 1e-8; on the fig10a
/// preset R >= 1.8 across the lambda sweep; on fig10b Delta_s attains its
/// minimum at theta = pi within one grid cell.
pub fn criterion_6_multiparameter() -> CriterionOutcome {
    let start = Instant::now();
    let mut details = Vec::new();
    let mut ok = true;

    let mut worst_compat = 0.0f64;
    let mut worst_psd = 0.0f64;
    let mut r_range = (f64::MAX, f64::MIN);
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    for coupling in [CouplingKind::Udw, CouplingKind::Td] {
        let mut tested = 0;
        while tested < 50 {
            let (p, _, ctx) = sample_point(&mut rng, coupling, 8.0, (-2.0, 2.0));
            let rho = evolve(&p, &ctx);
            let (Ok(l_t), Ok(l_th)) = (
                sld(&rho, &d_rho_temperature(&p, &ctx)),
                sld(&rho, &d_rho_theta(&p, &ctx)),
            ) else {
                continue;
            };
            worst_compat = worst_compat.max(compatibility_residual(&rho, &l_t, &l_th));
            let matrix = qfi_matrix(&p, &ctx).unwrap();
            worst_psd = worst_psd.max(-matrix.min_eigenvalue() / matrix.norm().max(1e-300));
            if let Ok((_, _, r)) = ratio_r(&matrix) {
                r_range = (r_range.0.min(r), r_range.1.max(r));
                tested += 1;
            }
        }
    }
    if worst_compat > 1e-10 {
        ok = false;
    }
    if worst_psd > 1e-10 {
        ok = false;
    }
    if !(r_range.0 > 0.0 && r_range.1 <= 2.0 + 1e-8) {
        ok = false;
    }
    details.push(format!(
        "compat <= {worst_compat:.2e}, PSD defect <= {worst_psd:.2e}, R in [{:.3e}, {:.6}]",
        r_range.0, r_range.1
    ));

    // fig10a: R >= 1.8 across the swept coupling range
    let preset = figure_preset("fig10a").unwrap();
    let sweep = run_sweep(&preset.spec).unwrap();
    let mut min_r = f64::MAX;
    let mut missing = 0usize;
    for point in &sweep.points {
        match point.values() {
            Some(v) => min_r = min_r.min(v[1]),
            None => missing += 1,
        }
    }
    if missing > 0 || min_r < 1.8 {
        ok = false;
    }
    details.push(format!("fig10a: min R = {min_r:.4}, {missing} missing"));

    // fig10b: Delta_s minimized at theta = pi (last grid point) within a cell
    let preset = figure_preset("fig10b").unwrap();
    let sweep = run_sweep(&preset.spec).unwrap();
    let thetas = &sweep.axes[0].1;
    let mut argmin = 0usize;
    let mut best = f64::MAX;
    for (i, point) in sweep.points.iter().enumerate() {
        if let Some(v) = point.values() {
            if v[0] < best {
                best = v[0];
                argmin = i;
            }
        }
    }
    if argmin + 2 < thetas.len() {
        ok = false;
    }
    details.push(format!(
        "fig10b: Delta_s argmin at theta = {:.6} (pi = {:.6})",
        thetas[argmin], PI
    ));

    finish(
        "6",
        "multiparameter saturability and total-variance bounds",
        60.0,
        start,
        (ok, details.join("; ")),
    )
}

/// Criterion 7: the high-frequency presets are trapped and their plateau
/// equals the steady-state sensitivity 4 (dN/dT)^2 / (M^2 (M^2 - 1)) to
/// rel 1e-3; the low-frequency fig4a window is not trapped.
pub fn criterion_7_trapping_identity() -> CriterionOutcome {
    let start = Instant::now();
    let mut ok = true;
    let mut details = Vec::new();
    // (preset, member key, member value, expect trapped)
    let cases = [
        ("fig3c", ParamKey::Omega0, 0.3, true),
        ("fig4b", ParamKey::Lambda, 0.1, true),
        ("fig4a", ParamKey::Lambda, 0.1, false),
    ];
    for (id, key, value, expect_trapped) in cases {
        let preset = figure_preset(id).unwrap();
        let mut fixed = preset.spec.fixed;
        match key {
            ParamKey::Omega0 => fixed.probe.omega0 = value,
            ParamKey::Lambda => fixed.probe.lambda = value,
            _ => unreachable!(),
        }
        let sub = SweepSpec {
            free: vec![preset.spec.free[0].clone()],
            fixed,
            quantity: Quantity::Qfi,
        };
        let sweep = run_sweep(&sub).unwrap();
        let taus = sweep.axes[0].1.clone();
        let values: Vec<f64> = sweep
            .points
            .iter()
            .map(|p| p.values().map(|v| v[0]).unwrap_or(f64::NAN))
            .collect();
        let bundle = rate_bundle(&fixed.probe, &fixed.bath, false).unwrap();
        let report = trapping_detector(&taus, &values, bundle.gamma0 * bundle.m_factor).unwrap();
        if report.is_trapped != expect_trapped {
            ok = false;
        }
        if expect_trapped {
            let steady = qfi_temperature_steady(&bundle);
            let rel = (report.plateau_value - steady).abs() / steady;
            if rel > 1e-3 {
                ok = false;
            }
            details.push(format!(
                "{id}: trapped = {}, plateau vs steady rel {rel:.2e}",
                report.is_trapped
            ));
        } else {
            details.push(format!(
                "{id}: trapped = {} (drift {:.2e})",
                report.is_trapped, report.drift
            ));
        }
    }
    finish(
        "7",
        "trapping detection and plateau identity on the high-frequency presets",
        30.0,
        start,
        (ok, details.join("; ")),
    )
}

/// Criterion 8: qualitative figure morphology, each checked by run_sweep
/// plus golden-section refinement:
/// fig2a has an interior optimum in u; fig3a's T-optimum decreases with u;
/// fig5a's u-optimum decreases as omega0 grows; fig1a peaks at theta = pi.
pub fn criterion_8_figure_morphology() -> CriterionOutcome {
    let start = Instant::now();
    let mut ok = true;
    let mut details = Vec::new();

    // fig2a: interior maximum of QFI vs u at the coldest caption temperature
    let preset = figure_preset("fig2a").unwrap();
    let mut fixed = preset.spec.fixed;
    fixed.bath.temperature = preset.spec.free[0].min;
    let u_axis = preset.spec.free[1].clone();
    let sub = SweepSpec {
        free: vec![u_axis],
        fixed,
        quantity: Quantity::Qfi,
    };
    let sweep = run_sweep(&sub).unwrap();
    let us = sweep.axes[0].1.clone();
    let qs: Vec<f64> = sweep
        .points
        .iter()
        .map(|p| p.values().unwrap()[0])
        .collect();
    match grid_max_bracket(&us, &qs) {
        Some(bracket) => match refine_argmax(&sub, ParamKey::U, bracket) {
            Ok((u_opt, _)) => details.push(format!("fig2a: interior u optimum at {u_opt:.4}")),
            Err(e) => {
                ok = false;
                details.push(format!("fig2a: refinement failed: {e}"));
            }
        },
        None => {
            ok = false;
            details.push("fig2a: no interior maximum in u".into());
        }
    }

    // fig3a: temperature optimum decreases as u grows
    let preset = figure_preset("fig3a").unwrap();
    let mut t_opts = Vec::new();
    for &u in &preset.spec.free[1].grid() {
        let mut fixed = preset.spec.fixed;
        fixed.probe.u = u;
        let sub = SweepSpec {
            free: vec![preset.spec.free[0].clone()],
            fixed,
            quantity: Quantity::Qfi,
        };
        let sweep = run_sweep(&sub).unwrap();
        let ts = sweep.axes[0].1.clone();
        let qs: Vec<f64> = sweep
            .points
            .iter()
            .map(|p| p.values().unwrap()[0])
            .collect();
        match grid_max_bracket(&ts, &qs)
            .and_then(|br| refine_argmax(&sub, ParamKey::Temperature, br).ok())
        {
            Some((t_opt, _)) => t_opts.push(t_opt),
            None => {
                ok = false;
                details.push(format!("fig3a: no interior T optimum at u = {u}"));
            }
        }
    }
    if t_opts.windows(2).any(|w| w[1] >= w[0]) {
        ok = false;
    }
    details.push(format!(
        "fig3a: T optimum per u = [{}]",
        t_opts
            .iter()
            .map(|t| format!("{t:.3e}"))
            .collect::<Vec<_>>()
            .join(", ")
    ));

    // fig5a (TD): u optimum decreases as omega0 grows
    let preset = figure_preset("fig5a").unwrap();
    let mut u_opts = Vec::new();
    for &w in &preset.spec.free[1].grid() {
        let mut fixed = preset.spec.fixed;
        fixed.probe.omega0 = w;
        let sub = SweepSpec {
            free: vec![preset.spec.free[0].clone()],
            fixed,
            quantity: Quantity::Qfi,
        };
        let sweep = run_sweep(&sub).unwrap();
        let us = sweep.axes[0].1.clone();
        let qs: Vec<f64> = sweep
            .points
            .iter()
            .map(|p| p.values().unwrap()[0])
            .collect();
        match grid_max_bracket(&us, &qs).and_then(|br| refine_argmax(&sub, ParamKey::U, br).ok()) {
            Some((u_opt, _)) => u_opts.push(u_opt),
            None => {
                ok = false;
                details.push(format!("fig5a: no interior u optimum at omega0 = {w}"));
            }
        }
    }
    if u_opts.windows(2).any(|w| w[1] >= w[0]) {
        ok = false;
    }
    details.push(format!(
        "fig5a: u optimum per omega0 = [{}]",
        u_opts
            .iter()
            .map(|u| format!("{u:.3}"))
            .collect::<Vec<_>>()
            .join(", ")
    ));

    // fig1a: theta argmax at pi (within one grid cell) on every visible row
    let preset = figure_preset("fig1a").unwrap();
    let sweep = run_sweep(&preset.spec).unwrap();
    let n_theta = sweep.axes[1].1.len();
    let n_t = sweep.axes[0].1.len();
    let mut global_max = f64::MIN;
    for point in &sweep.points {
        if let Some(v) = point.values() {
            global_max = global_max.max(v[0]);
        }
    }
    let mut rows_off_pi = 0usize;
    for i in 0..n_t {
        let mut best = (0usize, f64::MIN);
        for j in 0..n_theta {
            if let Some(v) = sweep.points[sweep.index(i, j)].values() {
                if v[0] > best.1 {
                    best = (j, v[0]);
                }
            }
        }
        if best.1 > 1e-6 * global_max && best.0 + 2 < n_theta {
            rows_off_pi += 1;
        }
    }
    if rows_off_pi > 0 {
        ok = false;
    }
    details.push(format!(
        "fig1a: rows with theta optimum away from pi: {rows_off_pi}"
    ));

    finish(
        "8",
        "qualitative figure morphology (fig2a, fig3a, fig5a, fig1a)",
        120.0,
        start,
        (ok, details.join("; ")),
    )
}

/// Riemann zeta(3) summed independently (series plus Euler-Maclaurin tail).
fn zeta3_series() -> f64 {
    let n = 20_000u64;
    let mut sum = 0.0f64;
    for k in (1..=n).rev() {
        let x = k as f64;
        sum += 1.0 / (x * x * x);
    }
    let a = (n + 1) as f64;
    sum + 1.0 / (2.0 * a * a) + 1.0 / (2.0 * a * a * a) + 1.0 / (4.0 * a * a * a * a)
}

/// Criterion 9: numerics battery. Quadrature reproduces the Bose moment
/// 2 zeta(3) T^3 to rel 1e-8, the principal-value test integral to rel 1e-10,
/// and differentiation matches the analytic dN/dT to rel 1e-6.
pub fn criterion_9_numerics_battery() -> CriterionOutcome {
    let start = Instant::now();
    let mut ok = true;
    let mut details = Vec::new();

    let two_zeta3 = 2.0 * zeta3_series();
    let mut worst = 0.0f64;
    for &t in &[0.5, 1.0, 2.5] {
        let f = |k: f64| k * k * bose_occupancy(k, t).unwrap_or(0.0);
        let (v, _) = integrate(&f, 1e-300, 50.0 * t, &QuadratureSpec::default()).unwrap();
        worst = worst.max((v - two_zeta3 * t.powi(3)).abs() / (two_zeta3 * t.powi(3)));
    }
    if worst > 1e-8 {
        ok = false;
    }
    details.push(format!("Bose moment vs 2 zeta(3) T^3: rel {worst:.2e}"));

    let spec = QuadratureSpec::with_singularities(&[1.0]);
    let (pv, _) = integrate(&|x: f64| (1.0 - x).abs().ln(), 0.0, 2.0, &spec).unwrap();
    let pv_rel = (pv + 2.0).abs() / 2.0;
    if pv_rel > 1e-10 {
        ok = false;
    }
    details.push(format!("PV log integral vs -2: rel {pv_rel:.2e}"));

    let p = ProbeParams::new(1.0, 0.1, 1.0, PI, 0.0, CouplingKind::Udw).unwrap();
    let b = BathParams::with_temperature(1.0).unwrap();
    let analytic = mean_excitation_dt(&p, &b).unwrap();
    let f = |t: f64| mean_excitation(&p, &BathParams::with_temperature(t).unwrap()).unwrap();
    let (numeric, _) = differentiate(&f, 1.0, 1, &DiffSpec::default()).unwrap();
    let diff_rel = (numeric - analytic).abs() / analytic.abs();
    if diff_rel > 1e-6 {
        ok = false;
    }
    details.push(format!(
        "differentiate vs analytic dN/dT: rel {diff_rel:.2e}"
    ));

    finish(
        "9",
        "numerics battery (Bose moment, principal value, differentiation)",
        5.0,
        start,
        (ok, details.join("; ")),
    )
}
