//! Named sweep presets reproducing the parameter configurations of the
//! figure studies: probe/bath values are transcribed from the figure
//! captions; grid ranges and evolution times the captions leave open are
//! fixed here so every preset is fully reproducible from its id.

use super::{AxisScale, AxisSpec, FixedParams, ParamKey, Quantity, SweepSpec};
use crate::error::{Error, Result};
use crate::rates::{rate_bundle, BathParams, CouplingKind, ProbeParams};
use std::f64::consts::PI;

/// A named, fully specified sweep.
#[derive(Clone, Debug)]
pub struct FigurePreset {
    pub id: &'static str,
    pub description: &'static str,
    pub spec: SweepSpec,
}

const IDS: [(&str, &str); 15] = [
    (
        "fig1a",
        "low-T UDW: QFI over (T, theta); u=4, lambda=0.01, omega0=0.5",
    ),
    ("fig1b", "low-T UDW: QFI over (T, lambda); u=5, omega0=0.1"),
    ("fig2a", "low-T UDW: QFI over (T, u); lambda=1, omega0=0.01"),
    (
        "fig2b",
        "low-T UDW: QFI vs u per lambda; T=0.001, omega0=0.03, tau=1e5",
    ),
    (
        "fig2c",
        "low-T UDW: QFI vs u per omega0; T=0.001, lambda=0.1",
    ),
    ("fig3a", "low-T UDW: QFI vs T per u; lambda=0.1, omega0=200"),
    (
        "fig3b",
        "low-T UDW: QFI over (T, tau); u=0.01, lambda=1, omega0=0.05",
    ),
    (
        "fig3c",
        "low-T UDW: QFI vs tau per omega0; T=0.05, lambda=0.1, u=0.1",
    ),
    (
        "fig4a",
        "low-T UDW, low frequency (no trapping): QFI vs tau per lambda; T=0.05, omega0=0.02, u=0.1",
    ),
    (
        "fig4b",
        "low-T UDW, high frequency (trapping): QFI vs tau per lambda; T=0.05, omega0=0.3, u=0.1",
    ),
    (
        "fig5a",
        "low-T TD: QFI vs u per omega0; T=0.01, lambda=0.01",
    ),
    (
        "fig6",
        "normal-T UDW: QFI vs theta per u; T=100, lambda=0.1, omega0=10",
    ),
    (
        "fig9",
        "normal-T TD: QFI vs u per omega0; T=160, lambda=0.06",
    ),
    (
        "fig10a",
        "multiparameter UDW: Delta_s and R vs lambda; T=100, omega0=0.1, u=30, theta=pi",
    ),
    (
        "fig10b",
        "multiparameter UDW: Delta_s vs theta; T=0.001, omega0=0.01, lambda=0.05, u=10",
    ),
];

/// All known preset ids.
pub fn preset_ids() -> Vec<&'static str> {
    IDS.iter().map(|(id, _)| *id).collect()
}

fn fixed(
    coupling: CouplingKind,
    omega0: f64,
    lambda: f64,
    u: f64,
    theta: f64,
    temperature: f64,
    tau: f64,
) -> Result<FixedParams> {
    Ok(FixedParams {
        probe: ProbeParams::new(omega0, lambda, u, theta, 0.0, coupling)?,
        bath: BathParams::with_temperature(temperature)?,
        tau,
        // every preset quantity is Lamb-shift independent
        include_lamb: false,
    })
}

fn axis(key: ParamKey, min: f64, max: f64, count: usize, scale: AxisScale) -> Result<AxisSpec> {
    AxisSpec::new(key, min, max, count, scale)
}

/// Time axis covering [1e-4, 1e2] / (gamma M) for the given fixed point, so
/// a trapping analysis sees exactly two decades beyond the relaxation time.
fn relaxation_anchored_tau(fp: &FixedParams, count: usize) -> Result<AxisSpec> {
    let bundle = rate_bundle(&fp.probe, &fp.bath, false)?;
    let t_relax = 1.0 / (bundle.gamma0 * bundle.m_factor);
    axis(
        ParamKey::Tau,
        1e-4 * t_relax,
        1e2 * t_relax,
        count,
        AxisScale::Log,
    )
}

/// Look up a preset by id; unknown ids report every available one.
pub fn figure_preset(id: &str) -> Result<FigurePreset> {
    let description = IDS
        .iter()
        .find(|(known, _)| *known == id)
        .map(|(_, d)| *d)
        .ok_or_else(|| Error::UnknownPreset {
            id: id.to_string(),
            available: preset_ids().join(", "),
        })?;

    let spec = match id {
        "fig1a" => SweepSpec {
            free: vec![
                axis(ParamKey::Temperature, 1e-3, 0.2, 41, AxisScale::Log)?,
                axis(ParamKey::Theta, 0.0, PI, 41, AxisScale::Linear)?,
            ],
            fixed: fixed(CouplingKind::Udw, 0.5, 0.01, 4.0, PI, 0.05, 1e5)?,
            quantity: Quantity::Qfi,
        },
        "fig1b" => SweepSpec {
            free: vec![
                axis(ParamKey::Temperature, 1e-3, 0.2, 41, AxisScale::Log)?,
                axis(ParamKey::Lambda, 0.005, 0.05, 41, AxisScale::Linear)?,
            ],
            fixed: fixed(CouplingKind::Udw, 0.1, 0.01, 5.0, PI, 0.05, 1e5)?,
            quantity: Quantity::Qfi,
        },
        "fig2a" => SweepSpec {
            free: vec![
                axis(ParamKey::Temperature, 1e-3, 0.05, 31, AxisScale::Log)?,
                axis(ParamKey::U, 0.01, 8.0, 61, AxisScale::Linear)?,
            ],
            fixed: fixed(CouplingKind::Udw, 0.01, 1.0, 1.0, PI, 0.01, 1e5)?,
            quantity: Quantity::Qfi,
        },
        "fig2b" => SweepSpec {
            free: vec![
                axis(ParamKey::U, 0.01, 12.0, 61, AxisScale::Linear)?,
                axis(ParamKey::Lambda, 0.01, 0.1, 3, AxisScale::Log)?,
            ],
            fixed: fixed(CouplingKind::Udw, 0.03, 0.1, 1.0, PI, 1e-3, 1e5)?,
            quantity: Quantity::Qfi,
        },
        "fig2c" => SweepSpec {
            free: vec![
                axis(ParamKey::U, 0.01, 12.0, 61, AxisScale::Linear)?,
                axis(ParamKey::Omega0, 0.01, 0.09, 3, AxisScale::Log)?,
            ],
            fixed: fixed(CouplingKind::Udw, 0.03, 0.1, 1.0, PI, 1e-3, 1e5)?,
            quantity: Quantity::Qfi,
        },
        "fig3a" => SweepSpec {
            free: vec![
                axis(ParamKey::Temperature, 1e-3, 0.3, 61, AxisScale::Log)?,
                axis(ParamKey::U, 7.0, 10.0, 3, AxisScale::Linear)?,
            ],
            fixed: fixed(CouplingKind::Udw, 200.0, 0.1, 8.0, PI, 0.05, 1e4)?,
            quantity: Quantity::Qfi,
        },
        "fig3b" => SweepSpec {
            free: vec![
                axis(ParamKey::Temperature, 1e-3, 0.2, 41, AxisScale::Log)?,
                axis(ParamKey::Tau, 1.0, 1e5, 41, AxisScale::Log)?,
            ],
            fixed: fixed(CouplingKind::Udw, 0.05, 1.0, 0.01, PI, 0.05, 1.0)?,
            quantity: Quantity::Qfi,
        },
        "fig3c" => {
            // tau anchored to the relaxation time of the highest frequency,
            // the member whose trapping plateau is under study
            let anchor = fixed(CouplingKind::Udw, 0.3, 0.1, 0.1, PI, 0.05, 1.0)?;
            SweepSpec {
                free: vec![
                    relaxation_anchored_tau(&anchor, 81)?,
                    axis(ParamKey::Omega0, 0.02, 0.3, 3, AxisScale::Log)?,
                ],
                fixed: anchor,
                quantity: Quantity::Qfi,
            }
        }
        "fig4a" => {
            let anchor = fixed(CouplingKind::Udw, 0.02, 0.1, 0.1, PI, 0.05, 1.0)?;
            SweepSpec {
                free: vec![
                    relaxation_anchored_tau(&anchor, 81)?,
                    axis(ParamKey::Lambda, 0.05, 0.2, 3, AxisScale::Log)?,
                ],
                fixed: anchor,
                quantity: Quantity::Qfi,
            }
        }
        "fig4b" => {
            let anchor = fixed(CouplingKind::Udw, 0.3, 0.1, 0.1, PI, 0.05, 1.0)?;
            SweepSpec {
                free: vec![
                    relaxation_anchored_tau(&anchor, 81)?,
                    axis(ParamKey::Lambda, 0.05, 0.2, 3, AxisScale::Log)?,
                ],
                fixed: anchor,
                quantity: Quantity::Qfi,
            }
        }
        "fig5a" => SweepSpec {
            free: vec![
                axis(ParamKey::U, 0.05, 6.0, 61, AxisScale::Linear)?,
                axis(ParamKey::Omega0, 0.005, 0.02, 3, AxisScale::Log)?,
            ],
            fixed: fixed(CouplingKind::Td, 0.02, 0.01, 1.0, PI, 0.01, 1e8)?,
            quantity: Quantity::Qfi,
        },
        "fig6" => SweepSpec {
            free: vec![
                axis(ParamKey::Theta, 0.0, PI, 61, AxisScale::Linear)?,
                axis(ParamKey::U, 1.0, 15.0, 3, AxisScale::Linear)?,
            ],
            fixed: fixed(CouplingKind::Udw, 10.0, 0.1, 5.0, PI, 100.0, 10.0)?,
            quantity: Quantity::Qfi,
        },
        "fig9" => SweepSpec {
            free: vec![
                axis(ParamKey::U, 0.1, 8.0, 61, AxisScale::Linear)?,
                axis(ParamKey::Omega0, 0.05, 0.2, 3, AxisScale::Log)?,
            ],
            fixed: fixed(CouplingKind::Td, 0.1, 0.06, 1.0, PI, 160.0, 1e4)?,
            quantity: Quantity::Qfi,
        },
        "fig10a" => SweepSpec {
            free: vec![axis(ParamKey::Lambda, 0.8, 2.4, 17, AxisScale::Linear)?],
            fixed: fixed(CouplingKind::Udw, 0.1, 1.0, 30.0, PI, 100.0, 200.0)?,
            quantity: Quantity::DeltaS,
        },
        "fig10b" => SweepSpec {
            free: vec![axis(ParamKey::Theta, 0.0, PI, 41, AxisScale::Linear)?],
            fixed: fixed(CouplingKind::Udw, 0.01, 0.05, 10.0, PI, 1e-3, 2e5)?,
            quantity: Quantity::DeltaS,
        },
        _ => unreachable!(),
    };
    spec.validate()?;
    Ok(FigurePreset {
        id: description_id(id),
        description,
        spec,
    })
}

fn description_id(id: &str) -> &'static str {
    IDS.iter()
        .find(|(known, _)| *known == id)
        .map(|(k, _)| *k)
        .unwrap()
}
