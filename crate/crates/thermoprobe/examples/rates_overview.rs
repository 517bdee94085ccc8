//! Bath-response rates seen by the moving probe.
//!
//! Run: cargo run --release --example rates_overview

use thermoprobe::rates::{
    mean_excitation, mean_excitation_dt, rate_bundle, BathParams, CouplingKind, ProbeParams,
};

fn main() {
    println!("Bath response at the probe gap (scaled units, c = hbar = k_B = 1)");
    println!();

    // Doppler window: a moving probe samples field modes between w e^-u and
    // w e^u; the effective occupation N interpolates between the softened
    // and hardened ends of the Planck curve.
    let t: f64 = 0.5;
    let omega0: f64 = 1.0;
    println!("Effective occupation vs rapidity (T = {t}, omega0 = {omega0}):");
    println!(
        "  {:>6}  {:>14}  {:>14}  {:>14}",
        "u", "N_udw", "N_td", "planck(u=0)"
    );
    let planck = 1.0 / ((omega0 / t).exp() - 1.0);
    for &u in &[0.0, 0.5, 1.0, 2.0, 4.0, 8.0] {
        let mut n = [0.0; 2];
        for (i, coupling) in [CouplingKind::Udw, CouplingKind::Td].iter().enumerate() {
            let p = ProbeParams::new(omega0, 0.1, u, std::f64::consts::PI, 0.0, *coupling).unwrap();
            let b = BathParams::with_temperature(t).unwrap();
            n[i] = mean_excitation(&p, &b).unwrap();
        }
        println!(
            "  {:>6.2}  {:>14.8}  {:>14.8}  {:>14.8}",
            u, n[0], n[1], planck
        );
    }
    println!();

    // Temperature sensitivity dN/dT is the raw ingredient of every Fisher
    // information formula downstream.
    println!("Temperature sensitivity dN/dT (omega0 = {omega0}, u = 1):");
    println!("  {:>8}  {:>14}  {:>14}", "T", "dN/dT (udw)", "dN/dT (td)");
    for &temp in &[0.05, 0.2, 0.5, 1.0, 5.0, 20.0] {
        let b = BathParams::with_temperature(temp).unwrap();
        let udw = ProbeParams::new(
            omega0,
            0.1,
            1.0,
            std::f64::consts::PI,
            0.0,
            CouplingKind::Udw,
        )
        .unwrap();
        let td = ProbeParams::new(
            omega0,
            0.1,
            1.0,
            std::f64::consts::PI,
            0.0,
            CouplingKind::Td,
        )
        .unwrap();
        println!(
            "  {:>8.2}  {:>14.6e}  {:>14.6e}",
            temp,
            mean_excitation_dt(&udw, &b).unwrap(),
            mean_excitation_dt(&td, &b).unwrap()
        );
    }
    println!();

    // Full rate bundle, including the Lamb shift that only ever touches the
    // coherence phase.
    println!("Complete rate bundle (T = 0.5, omega0 = 1, u = 1, lambda = 0.1):");
    println!(
        "  {:>8}  {:>12}  {:>12}  {:>12}  {:>13}  {:>12}",
        "coupling", "gamma0", "n_mean", "dn_dt", "delta", "m_factor"
    );
    for coupling in [CouplingKind::Udw, CouplingKind::Td] {
        let p = ProbeParams::new(1.0, 0.1, 1.0, std::f64::consts::PI, 0.0, coupling).unwrap();
        let b = BathParams::with_temperature(0.5).unwrap();
        let r = rate_bundle(&p, &b, true).unwrap();
        println!(
            "  {:>8}  {:>12.6e}  {:>12.6e}  {:>12.6e}  {:>+13.6e}  {:>12.8}",
            coupling.to_string(),
            r.gamma0,
            r.n_mean,
            r.dn_dt,
            r.delta,
            r.m_factor
        );
    }
    println!();
    println!("The TD decay rate grows like (2 cosh 2u + 1) omega0^3 while the UDW one");
    println!("is linear in omega0 and blind to the velocity.");
}
