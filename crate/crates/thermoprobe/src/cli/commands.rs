//! Subcommand implementations producing CSV tables.

use super::config::RunConfig;
use super::csv::{CsvTable, CsvValue};
use crate::dynamics::{bloch_vector, evolve, EvolutionContext};
use crate::error::{Error, Result};
use crate::estimation::{
    compatibility_residual, d_rho_temperature, d_rho_theta, qfi_matrix, ratio_r, sld,
};
use crate::rates::{rate_bundle, BathParams, ProbeParams, DEFAULT_CUTOFF_EPS};
use crate::scan::{
    figure_preset, run_sweep, AxisScale, AxisSpec, FixedParams, ParamKey, PointOutcome, Quantity,
    SweepSpec,
};
use std::f64::consts::PI;
use std::str::FromStr;

/// Table plus the count of rows that hit a recoverable physics error.
pub struct CommandOutput {
    pub table: CsvTable,
    pub flagged_rows: usize,
}

fn probe_from(config: &RunConfig, omega0: f64, lambda: f64, u: f64) -> Result<ProbeParams> {
    ProbeParams::new(
        omega0,
        lambda,
        u,
        config.f64_or("theta", PI)?,
        config.f64_or("phi", 0.0)?,
        config.coupling()?,
    )
}

fn bath_from(config: &RunConfig, temperature: f64) -> Result<BathParams> {
    BathParams::new(
        temperature,
        config.f64_or("cutoff_eps", DEFAULT_CUTOFF_EPS)?,
    )
}

fn standard_comments(table: &mut CsvTable, command: &str, config: &RunConfig) {
    table.comment(format!("thermoprobe {}", env!("CARGO_PKG_VERSION")));
    table.comment(format!("command = {command}"));
    let stamp = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    table.comment(format!("generated_unix = {stamp}"));
    table.comment("units: scaled, c = hbar = k_B = 1");
    for (k, v) in config.entries() {
        table.comment(format!("{k} = {v}"));
    }
}

/// `rates`: one row per requested (T, omega0, u, lambda) tuple.
pub fn cmd_rates(config: &RunConfig) -> Result<CommandOutput> {
    let mut table = CsvTable::new(&[
        "coupling",
        "temperature",
        "omega0",
        "u",
        "lambda",
        "gamma0",
        "n_mean",
        "dn_dt",
        "delta",
        "omega_shifted",
        "m_factor",
    ]);
    standard_comments(&mut table, "rates", config);
    let include_lamb = config.bool_or("include_lamb", true)?;
    let coupling = config.coupling()?;
    for &t in &config.f64_list_or("T", 1.0)? {
        for &w in &config.f64_list_or("omega0", 1.0)? {
            for &u in &config.f64_list_or("u", 0.0)? {
                for &l in &config.f64_list_or("lambda", 0.1)? {
                    let probe = probe_from(config, w, l, u)?;
                    let bath = bath_from(config, t)?;
                    let bundle = rate_bundle(&probe, &bath, include_lamb)?;
                    table.push_row(vec![
                        CsvValue::Text(coupling.to_string()),
                        CsvValue::Float(t),
                        CsvValue::Float(w),
                        CsvValue::Float(u),
                        CsvValue::Float(l),
                        CsvValue::Float(bundle.gamma0),
                        CsvValue::Float(bundle.n_mean),
                        CsvValue::Float(bundle.dn_dt),
                        CsvValue::Float(bundle.delta),
                        CsvValue::Float(bundle.omega_shifted),
                        CsvValue::Float(bundle.m_factor),
                    ]);
                }
            }
        }
    }
    Ok(CommandOutput {
        table,
        flagged_rows: 0,
    })
}

/// `evolve`: the reduced state and Bloch vector per requested time.
pub fn cmd_evolve(config: &RunConfig) -> Result<CommandOutput> {
    let mut table = CsvTable::new(&[
        "tau",
        "rho_ee",
        "re_rho_eg",
        "im_rho_eg",
        "rho_gg",
        "wx",
        "wy",
        "wz",
        "purity",
    ]);
    standard_comments(&mut table, "evolve", config);
    let probe = probe_from(
        config,
        config.f64_or("omega0", 1.0)?,
        config.f64_or("lambda", 0.1)?,
        config.f64_or("u", 0.0)?,
    )?;
    let bath = bath_from(config, config.f64_or("T", 1.0)?)?;
    let bundle = rate_bundle(&probe, &bath, config.bool_or("include_lamb", true)?)?;
    for &tau in &config.f64_list_or("tau", 10.0)? {
        let ctx = EvolutionContext::new(bundle, tau)?;
        let state = evolve(&probe, &ctx);
        state.validate()?;
        let w = bloch_vector(&state);
        table.push_row(vec![
            CsvValue::Float(tau),
            CsvValue::Float(state.excited_population()),
            CsvValue::Float(state.coherence().re),
            CsvValue::Float(state.coherence().im),
            CsvValue::Float(state.ground_population()),
            CsvValue::Float(w.wx),
            CsvValue::Float(w.wy),
            CsvValue::Float(w.wz),
            CsvValue::Float(state.purity()),
        ]);
    }
    Ok(CommandOutput {
        table,
        flagged_rows: 0,
    })
}

/// `qfi`: all three QFI routes plus the sigma_z Fisher information per row.
pub fn cmd_qfi(config: &RunConfig) -> Result<CommandOutput> {
    let mut table = CsvTable::new(&[
        "temperature",
        "tau",
        "qfi_closed",
        "qfi_bloch",
        "qfi_sld",
        "fi_sigma_z",
        "compat_residual",
    ]);
    standard_comments(&mut table, "qfi", config);
    let include_lamb = config.bool_or("include_lamb", false)?;
    for &t in &config.f64_list_or("T", 1.0)? {
        for &tau in &config.f64_list_or("tau", 10.0)? {
            let probe = probe_from(
                config,
                config.f64_or("omega0", 1.0)?,
                config.f64_or("lambda", 0.1)?,
                config.f64_or("u", 0.0)?,
            )?;
            let bath = bath_from(config, t)?;
            let bundle = rate_bundle(&probe, &bath, include_lamb)?;
            let ctx = EvolutionContext::new(bundle, tau)?;
            let rho = evolve(&probe, &ctx);
            let d_t = d_rho_temperature(&probe, &ctx);
            let l_t = sld(&rho, &d_t)?;
            let l_th = sld(&rho, &d_rho_theta(&probe, &ctx))?;
            let qfi_b = crate::estimation::qfi_bloch(
                &bloch_vector(&rho),
                &crate::estimation::bloch_of_derivative(&d_t),
            )?;
            table.push_row(vec![
                CsvValue::Float(t),
                CsvValue::Float(tau),
                CsvValue::Float(crate::estimation::qfi_temperature_closed(&probe, &ctx)),
                CsvValue::Float(qfi_b),
                CsvValue::Float(crate::estimation::qfi_sld(&rho, &d_t)?),
                CsvValue::Float(crate::estimation::fi_projective(
                    &probe,
                    &ctx,
                    crate::estimation::MeasurementBasis::SigmaZ,
                )?),
                CsvValue::Float(compatibility_residual(&rho, &l_t, &l_th)),
            ]);
        }
    }
    Ok(CommandOutput {
        table,
        flagged_rows: 0,
    })
}

/// `multiparam`: (T, theta) Fisher matrix and total-variance figures of
/// merit; singular rows are flagged and the run continues.
pub fn cmd_multiparam(config: &RunConfig) -> Result<CommandOutput> {
    let mut table = CsvTable::new(&[
        "temperature",
        "theta",
        "tau",
        "h_tt",
        "h_ttheta",
        "h_thetatheta",
        "delta_i",
        "delta_s",
        "ratio_r",
        "compat_residual",
        "status",
    ]);
    standard_comments(&mut table, "multiparam", config);
    let include_lamb = config.bool_or("include_lamb", false)?;
    let mut flagged = 0usize;
    for &t in &config.f64_list_or("T", 1.0)? {
        for &theta in &config.f64_list_or("theta", PI)? {
            for &tau in &config.f64_list_or("tau", 10.0)? {
                let mut probe = probe_from(
                    config,
                    config.f64_or("omega0", 1.0)?,
                    config.f64_or("lambda", 0.1)?,
                    config.f64_or("u", 0.0)?,
                )?;
                probe.theta = theta;
                probe.validate()?;
                let bath = bath_from(config, t)?;
                let bundle = rate_bundle(&probe, &bath, include_lamb)?;
                let ctx = EvolutionContext::new(bundle, tau)?;
                let matrix = qfi_matrix(&probe, &ctx)?;
                let rho = evolve(&probe, &ctx);
                let l_t = sld(&rho, &d_rho_temperature(&probe, &ctx))?;
                let l_th = sld(&rho, &d_rho_theta(&probe, &ctx))?;
                let compat = compatibility_residual(&rho, &l_t, &l_th);
                let (delta_i, delta_s, r, status) = match ratio_r(&matrix) {
                    Ok((di, ds, r)) => (di, ds, r, "ok"),
                    Err(Error::SingularMatrix(_)) => {
                        flagged += 1;
                        (f64::NAN, f64::NAN, f64::NAN, "singular")
                    }
                    Err(other) => return Err(other),
                };
                table.push_row(vec![
                    CsvValue::Float(t),
                    CsvValue::Float(theta),
                    CsvValue::Float(tau),
                    CsvValue::Float(matrix.h_tt()),
                    CsvValue::Float(matrix.h_ttheta()),
                    CsvValue::Float(matrix.h_thetatheta()),
                    CsvValue::Float(delta_i),
                    CsvValue::Float(delta_s),
                    CsvValue::Float(r),
                    CsvValue::Float(compat),
                    CsvValue::Text(status.into()),
                ]);
            }
        }
    }
    Ok(CommandOutput {
        table,
        flagged_rows: flagged,
    })
}

/// Parse an axis description `key:min:max:count[:lin|log]`.
fn parse_axis(desc: &str) -> Result<AxisSpec> {
    let parts: Vec<&str> = desc.split(':').collect();
    if parts.len() < 4 || parts.len() > 5 {
        return Err(Error::Config(format!(
            "axis '{desc}' must look like key:min:max:count[:lin|log]"
        )));
    }
    let key = ParamKey::from_str(parts[0])?;
    let min: f64 = super::config::parse_number(parts[1])
        .ok_or_else(|| Error::Config(format!("axis '{desc}': bad min")))?;
    let max: f64 = super::config::parse_number(parts[2])
        .ok_or_else(|| Error::Config(format!("axis '{desc}': bad max")))?;
    let count: usize = parts[3]
        .parse()
        .map_err(|_| Error::Config(format!("axis '{desc}': bad count")))?;
    let scale = match parts.get(4).copied().unwrap_or("lin") {
        "lin" | "linear" => AxisScale::Linear,
        "log" => AxisScale::Log,
        other => {
            return Err(Error::Config(format!(
                "axis '{desc}': unknown scale '{other}'"
            )))
        }
    };
    AxisSpec::new(key, min, max, count, scale)
}

fn sweep_table(command: &str, config: &RunConfig, spec: &SweepSpec) -> Result<CommandOutput> {
    let result = run_sweep(spec)?;
    let mut header: Vec<String> = result.axes.iter().map(|(k, _)| k.to_string()).collect();
    header.extend(result.columns.iter().cloned());
    header.push("status".into());
    let header_refs: Vec<&str> = header.iter().map(|s| s.as_str()).collect();
    let mut table = CsvTable::new(&header_refs);
    standard_comments(&mut table, command, config);
    for (k, v) in &result.metadata {
        table.comment(format!("{k} = {v}"));
    }

    let n_cols = result.columns.len();
    let axis_values: Vec<&Vec<f64>> = result.axes.iter().map(|(_, v)| v).collect();
    for (idx, point) in result.points.iter().enumerate() {
        let mut row = Vec::with_capacity(header.len());
        match axis_values.len() {
            1 => row.push(CsvValue::Float(axis_values[0][idx])),
            _ => {
                let inner = axis_values[1].len();
                row.push(CsvValue::Float(axis_values[0][idx / inner]));
                row.push(CsvValue::Float(axis_values[1][idx % inner]));
            }
        }
        match point {
            PointOutcome::Values(vals) => {
                row.extend(vals.iter().map(|v| CsvValue::Float(*v)));
                row.push(CsvValue::Text("ok".into()));
            }
            PointOutcome::Missing(reason) => {
                row.extend(std::iter::repeat_n(CsvValue::Float(f64::NAN), n_cols));
                row.push(CsvValue::Text(reason.clone()));
            }
        }
        table.push_row(row);
    }
    Ok(CommandOutput {
        table,
        flagged_rows: result.missing_count(),
    })
}

/// `scan`: a free-form sweep described by `axis` (and optional `axis2`).
pub fn cmd_scan(config: &RunConfig) -> Result<CommandOutput> {
    let axis1 = parse_axis(
        config
            .get("axis")
            .ok_or_else(|| Error::Config("scan needs axis=key:min:max:count[:lin|log]".into()))?,
    )?;
    let mut free = vec![axis1];
    if let Some(desc) = config.get("axis2") {
        free.push(parse_axis(desc)?);
    }
    let quantity = match config.get("quantity") {
        Some(q) => Quantity::from_str(q)?,
        None => Quantity::Qfi,
    };
    let fixed = FixedParams {
        probe: probe_from(
            config,
            config.f64_or("omega0", 1.0)?,
            config.f64_or("lambda", 0.1)?,
            config.f64_or("u", 0.0)?,
        )?,
        bath: bath_from(config, config.f64_or("T", 1.0)?)?,
        tau: config.f64_or("tau", 10.0)?,
        include_lamb: config.bool_or("include_lamb", false)?,
    };
    let spec = SweepSpec {
        free,
        fixed,
        quantity,
    };
    sweep_table("scan", config, &spec)
}

/// `figure`: run a named preset sweep.
pub fn cmd_figure(config: &RunConfig) -> Result<CommandOutput> {
    let id = config
        .get("preset")
        .ok_or_else(|| Error::Config("figure needs preset=<id>".into()))?;
    let preset = figure_preset(id)?;
    let mut out = sweep_table("figure", config, &preset.spec)?;
    out.table
        .comments
        .insert(2, format!("preset = {}", preset.id));
    out.table
        .comments
        .insert(3, format!("description = {}", preset.description));
    Ok(out)
}
