//! Serialization of results as CSV and JSON data tables.
//!
//! Numbers are printed with the shortest decimal representation that
//! round-trips to the same f64, locale-independent. Unstable sweep points
//! keep their row with empty observable cells (CSV) or nulls (JSON).

use phonoflex::sweep::{PointReport, SweepResult};
use serde_json::{json, Map, Value};

/// Shortest round-trip decimal form of one value.
pub fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

fn opt_cell(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

fn opt_json(x: Option<f64>) -> Value {
    x.map_or(Value::Null, |v| json!(v))
}

/// Column headers of a sweep table: the axis, stability, decay rate, one
/// occupation per mode, then (η⁻, E_N) per bipartition. Nested scans carry
/// their outer axis as an extra leading column.
pub fn sweep_headers(result: &SweepResult, outer_label: Option<&str>) -> Vec<String> {
    let mut headers = Vec::new();
    if let Some(label) = outer_label {
        headers.push(format!("outer_{label}"));
    }
    headers.push("axis_value".into());
    headers.push("stable".into());
    headers.push("decay_rate_hz".into());
    for j in 1..=result.n_modes {
        headers.push(format!("m_eff_{j}"));
    }
    for bip in &result.bipartitions {
        headers.push(format!("eta_minus_{}", bip.label()));
        headers.push(format!("logneg_{}", bip.label()));
    }
    headers
}

fn sweep_row_cells(result: &SweepResult, row_index: usize, outer: Option<f64>) -> Vec<String> {
    let row = &result.rows[row_index];
    let mut cells = Vec::new();
    if let Some(value) = outer {
        cells.push(fmt_f64(value));
    }
    cells.push(fmt_f64(row.axis_value));
    cells.push(row.stable.to_string());
    cells.push(opt_cell(row.decay_rate));
    for j in 0..result.n_modes {
        cells.push(opt_cell(row.occupations.as_ref().map(|occ| occ[j])));
    }
    for pair in &row.entanglement {
        cells.push(opt_cell(pair.map(|(eta, _)| eta)));
        cells.push(opt_cell(pair.map(|(_, en)| en)));
    }
    cells
}

/// CSV table of one or more sweeps. A single sweep passes `outer = None`;
/// nested scans pass the outer label and one result per outer value.
pub fn sweep_csv(tables: &[(Option<f64>, &SweepResult)], outer_label: Option<&str>) -> String {
    let mut out = String::new();
    out.push_str(&sweep_headers(tables[0].1, outer_label).join(","));
    out.push('\n');
    for (outer_value, result) in tables {
        for row_index in 0..result.rows.len() {
            out.push_str(&sweep_row_cells(result, row_index, *outer_value).join(","));
            out.push('\n');
        }
    }
    out
}

/// JSON document: `meta` plus one object per row with keys identical to the
/// CSV headers, and an extra `error` field for per-point failures.
pub fn sweep_json(
    tables: &[(Option<f64>, &SweepResult)],
    outer_label: Option<&str>,
    meta: Value,
) -> Value {
    let headers = sweep_headers(tables[0].1, outer_label);
    let mut rows = Vec::new();
    for (outer_value, result) in tables {
        for row in &result.rows {
            let mut object = Map::new();
            let mut cells = Vec::new();
            if let Some(value) = outer_value {
                cells.push(json!(value));
            }
            cells.push(json!(row.axis_value));
            cells.push(json!(row.stable));
            cells.push(opt_json(row.decay_rate));
            for j in 0..result.n_modes {
                cells.push(opt_json(row.occupations.as_ref().map(|occ| occ[j])));
            }
            for pair in &row.entanglement {
                cells.push(opt_json(pair.map(|(eta, _)| eta)));
                cells.push(opt_json(pair.map(|(_, en)| en)));
            }
            debug_assert_eq!(cells.len(), headers.len());
            for (header, cell) in headers.iter().zip(cells) {
                object.insert(header.clone(), cell);
            }
            object.insert(
                "error".into(),
                row.error.as_ref().map_or(Value::Null, |e| json!(e)),
            );
            rows.push(Value::Object(object));
        }
    }
    json!({ "meta": meta, "rows": rows })
}

/// One-row CSV for a single-point simulation.
pub fn point_csv(report: &PointReport, labels: &[String]) -> String {
    let mut headers = vec![
        "stable".to_string(),
        "decay_rate_hz".to_string(),
        "relaxation_time_s".to_string(),
    ];
    let n_modes = report.occupations.as_ref().map_or(0, Vec::len);
    for j in 1..=n_modes {
        headers.push(format!("m_eff_{j}"));
    }
    headers.push("var_x".into());
    headers.push("var_y".into());
    for label in labels {
        headers.push(format!("eta_minus_{label}"));
        headers.push(format!("logneg_{label}"));
    }
    let mut cells = vec![
        report.stability.stable.to_string(),
        opt_cell(report.stability.decay_rate),
        opt_cell(report.stability.relaxation_time),
    ];
    if let Some(occ) = &report.occupations {
        cells.extend(occ.iter().map(|&m| fmt_f64(m)));
    }
    cells.push(opt_cell(report.phonon_variances.map(|(x, _)| x)));
    cells.push(opt_cell(report.phonon_variances.map(|(_, y)| y)));
    for pair in &report.entanglement {
        cells.push(opt_cell(pair.map(|(eta, _)| eta)));
        cells.push(opt_cell(pair.map(|(_, en)| en)));
    }
    format!("{}\n{}\n", headers.join(","), cells.join(","))
}

/// JSON object for a single-point simulation.
pub fn point_json(report: &PointReport, labels: &[String], meta: Value) -> Value {
    let entanglement: Map<String, Value> = labels
        .iter()
        .zip(&report.entanglement)
        .map(|(label, pair)| {
            (
                label.clone(),
                json!({
                    "eta_minus": opt_json(pair.map(|(eta, _)| eta)),
                    "logneg": opt_json(pair.map(|(_, en)| en)),
                }),
            )
        })
        .collect();
    json!({
        "meta": meta,
        "effective": {
            "xi_hz": report.eff.xi,
            "gamma_eff_hz": report.eff.gamma_eff,
            "omega_eff_hz": report.eff.omega_eff,
            "alpha_abs": report.eff.alpha_abs,
        },
        "stability": {
            "stable": report.stability.stable,
            "max_real_part_hz": report.stability.max_real_part,
            "decay_rate_hz": opt_json(report.stability.decay_rate),
            "relaxation_time_s": opt_json(report.stability.relaxation_time),
        },
        "m_eff": report.occupations.clone().map_or(Value::Null, |occ| json!(occ)),
        "phonon_variances": report
            .phonon_variances
            .map_or(Value::Null, |(x, y)| json!({ "var_x": x, "var_y": y })),
        "entanglement": entanglement,
        "error": report.error.as_ref().map_or(Value::Null, |e| json!(e)),
    })
}

/// Row-major, full-precision dump of a matrix with a section heading.
pub fn matrix_section(name: &str, m: &phonoflex::nalgebra::DMatrix<f64>) -> String {
    let mut out = format!("# {name} ({}x{}, row-major)\n", m.nrows(), m.ncols());
    for r in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|c| fmt_f64(m[(r, c)])).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
