//! Estimating the temperature and the preparation angle at once: the
//! (T, theta) Fisher matrix, the compatibility condition, and the
//! simultaneous-vs-individual ratio R.
//!
//! Run: cargo run --release --example multiparameter

use thermoprobe::dynamics::{evolve, EvolutionContext};
use thermoprobe::estimation::{
    compatibility_residual, d_rho_temperature, d_rho_theta, qfi_matrix, ratio_r, sld,
};
use thermoprobe::rates::{rate_bundle, BathParams, CouplingKind, ProbeParams};
use thermoprobe::scan::{figure_preset, run_sweep};

fn main() {
    // Fast probe at high temperature: joint estimation uses every prepared
    // state twice as efficiently as running the two estimations separately.
    let preset = figure_preset("fig10a").unwrap();
    println!(
        "Fast probe (u = {}), T = {}: sweep the coupling strength",
        preset.spec.fixed.probe.u, preset.spec.fixed.bath.temperature
    );
    println!(
        "{:>8}  {:>14}  {:>10}  {:>12}",
        "lambda", "delta_s", "ratio R", "compat"
    );
    let sweep = run_sweep(&preset.spec).unwrap();
    for (i, point) in sweep.points.iter().enumerate().step_by(4) {
        let lambda = sweep.axes[0].1[i];
        let v = point.values().unwrap();
        // compatibility recomputed directly at this grid point
        let mut fixed = preset.spec.fixed;
        fixed.probe.lambda = lambda;
        let bundle = rate_bundle(&fixed.probe, &fixed.bath, false).unwrap();
        let ctx = EvolutionContext::new(bundle, fixed.tau).unwrap();
        let rho = evolve(&fixed.probe, &ctx);
        let l_t = sld(&rho, &d_rho_temperature(&fixed.probe, &ctx)).unwrap();
        let l_th = sld(&rho, &d_rho_theta(&fixed.probe, &ctx)).unwrap();
        let compat = compatibility_residual(&rho, &l_t, &l_th);
        println!(
            "{:>8.3}  {:>14.6e}  {:>10.6}  {:>12.3e}",
            lambda, v[0], v[1], compat
        );
    }
    println!();
    println!("R = 2 throughout: the commutator expectation Tr(rho [L_T, L_theta])");
    println!("vanishes, so one joint measurement serves both parameters.");
    println!();

    // The preparation angle controls the joint variance; theta = pi wins.
    let preset = figure_preset("fig10b").unwrap();
    let sweep = run_sweep(&preset.spec).unwrap();
    println!(
        "Slow cold-bath study (T = {}, u = {}): Delta_s vs theta",
        preset.spec.fixed.bath.temperature, preset.spec.fixed.probe.u
    );
    println!("{:>10}  {:>14}  {:>10}", "theta", "delta_s", "ratio R");
    for (i, point) in sweep.points.iter().enumerate().step_by(8) {
        let v = point.values().unwrap();
        println!(
            "{:>10.5}  {:>14.6e}  {:>10.6}",
            sweep.axes[0].1[i], v[0], v[1]
        );
    }
    let best = sweep
        .points
        .iter()
        .enumerate()
        .min_by(|a, b| {
            a.1.values().unwrap()[0]
                .partial_cmp(&b.1.values().unwrap()[0])
                .unwrap()
        })
        .unwrap()
        .0;
    println!(
        "minimum Delta_s at theta = {:.6} (pi = {:.6})",
        sweep.axes[0].1[best],
        std::f64::consts::PI
    );
    println!();

    // A full matrix at one representative point.
    let p = ProbeParams::new(1.0, 0.3, 1.0, 2.0, 0.0, CouplingKind::Udw).unwrap();
    let b = BathParams::with_temperature(0.5).unwrap();
    let bundle = rate_bundle(&p, &b, false).unwrap();
    let ctx = EvolutionContext::new(bundle, 6.0).unwrap();
    let m = qfi_matrix(&p, &ctx).unwrap();
    let (delta_i, delta_s, r) = ratio_r(&m).unwrap();
    println!("One generic point (T = 0.5, theta = 2.0, tau = 6):");
    println!("  H = [[{:.6e}, {:.6e}],", m.h_tt(), m.h_ttheta());
    println!("       [{:.6e}, {:.6e}]]", m.h_ttheta(), m.h_thetatheta());
    println!("  delta_i = {delta_i:.6e}, delta_s = {delta_s:.6e}, R = {r:.6}");
}
