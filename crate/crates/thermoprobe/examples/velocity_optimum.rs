//! How fast should the probe move? Sweep the QFI over the rapidity, then
//! refine the optimum by golden section and watch it shift with the gap
//! frequency.
//!
//! Run: cargo run --release --example velocity_optimum

use thermoprobe::scan::{
    figure_preset, grid_max_bracket, refine_argmax, run_sweep, ParamKey, Quantity, SweepSpec,
};

fn main() {
    // TD coupling: the decay rate grows like e^{2u}, so overspeeding kills
    // the signal and an interior optimum appears; a larger gap moves it to
    // lower velocities.
    let preset = figure_preset("fig5a").unwrap();
    println!(
        "TD coupling, T = {}, lambda = {}: optimum rapidity per gap frequency",
        preset.spec.fixed.bath.temperature, preset.spec.fixed.probe.lambda
    );
    println!(
        "{:>10}  {:>10}  {:>14}",
        "omega0", "u_opt", "QFI at optimum"
    );
    for &omega0 in &preset.spec.free[1].grid() {
        let mut fixed = preset.spec.fixed;
        fixed.probe.omega0 = omega0;
        let spec = SweepSpec {
            free: vec![preset.spec.free[0].clone()],
            fixed,
            quantity: Quantity::Qfi,
        };
        let sweep = run_sweep(&spec).unwrap();
        let us = sweep.axes[0].1.clone();
        let qs: Vec<f64> = sweep
            .points
            .iter()
            .map(|p| p.values().unwrap()[0])
            .collect();
        let bracket = grid_max_bracket(&us, &qs).expect("interior maximum");
        let (u_opt, q_opt) = refine_argmax(&spec, ParamKey::U, bracket).unwrap();
        println!("{:>10.4}  {:>10.5}  {:>14.6e}", omega0, u_opt, q_opt);
    }
    println!();

    // UDW coupling at low temperature: the optimum sits where the Doppler
    // window catches the thermal peak, around u ~ ln(omega0/T)-ish scales.
    let preset = figure_preset("fig2a").unwrap();
    let mut fixed = preset.spec.fixed;
    fixed.bath.temperature = preset.spec.free[0].min;
    println!(
        "UDW coupling, T = {}, omega0 = {}, lambda = {}: refined optimum",
        fixed.bath.temperature, fixed.probe.omega0, fixed.probe.lambda
    );
    let spec = SweepSpec {
        free: vec![preset.spec.free[1].clone()],
        fixed,
        quantity: Quantity::Qfi,
    };
    let sweep = run_sweep(&spec).unwrap();
    let us = sweep.axes[0].1.clone();
    let qs: Vec<f64> = sweep
        .points
        .iter()
        .map(|p| p.values().unwrap()[0])
        .collect();
    let bracket = grid_max_bracket(&us, &qs).expect("interior maximum");
    let (u_opt, q_opt) = refine_argmax(&spec, ParamKey::U, bracket).unwrap();
    println!(
        "  grid bracket ({:.3}, {:.3}, {:.3})",
        bracket.0, bracket.1, bracket.2
    );
    println!("  golden-section optimum u = {u_opt:.6}, QFI = {q_opt:.6e}");
}
