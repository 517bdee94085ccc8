//! Render every named figure preset to a plot-ready CSV table.
//!
//! Run: cargo run --release --example figure_tables [output_dir]

use thermoprobe::cli::{format_float, CsvTable, CsvValue};
use thermoprobe::scan::{figure_preset, preset_ids, run_sweep, PointOutcome};

fn main() {
    let dir = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "figure_tables".to_string());
    std::fs::create_dir_all(&dir).expect("create output directory");

    for id in preset_ids() {
        let preset = figure_preset(id).unwrap();
        let result = run_sweep(&preset.spec).unwrap();

        let mut header: Vec<String> = result.axes.iter().map(|(k, _)| k.to_string()).collect();
        header.extend(result.columns.iter().cloned());
        let header_refs: Vec<&str> = header.iter().map(|s| s.as_str()).collect();
        let mut table = CsvTable::new(&header_refs);
        table.comment(format!("preset = {id}"));
        table.comment(format!("description = {}", preset.description));
        for (k, v) in &result.metadata {
            table.comment(format!("{k} = {v}"));
        }

        let axes: Vec<&Vec<f64>> = result.axes.iter().map(|(_, v)| v).collect();
        for (idx, point) in result.points.iter().enumerate() {
            let mut row = Vec::new();
            match axes.len() {
                1 => row.push(CsvValue::Float(axes[0][idx])),
                _ => {
                    let inner = axes[1].len();
                    row.push(CsvValue::Float(axes[0][idx / inner]));
                    row.push(CsvValue::Float(axes[1][idx % inner]));
                }
            }
            match point {
                PointOutcome::Values(vals) => row.extend(vals.iter().map(|v| CsvValue::Float(*v))),
                PointOutcome::Missing(_) => row.extend(std::iter::repeat_n(
                    CsvValue::Float(f64::NAN),
                    result.columns.len(),
                )),
            }
            table.push_row(row);
        }

        let path = format!("{dir}/{id}.csv");
        table.write_to(std::path::Path::new(&path)).unwrap();

        let peak = result
            .points
            .iter()
            .filter_map(|p| p.values())
            .map(|v| v[0])
            .fold(f64::MIN, f64::max);
        println!(
            "{path}: {} points ({} missing), peak {} = {}",
            result.points.len(),
            result.missing_count(),
            result.columns[0],
            format_float(peak)
        );
    }
}
