//! CSV, manifest, and plot-script writers. Numbers use Rust's shortest
//! round-trip decimal formatting, so identical runs produce identical
//! bytes and every value reparses exactly.

use crate::config::ConfigDoc;
use crate::error::CliError;
use nlflux::analysis::{ConvergenceRow, ShockClass};
use nlflux::solver::{DiagRow, Snapshot};
use serde::Serialize;
use std::path::{Path, PathBuf};

/// Snapshot file name for a given time, e.g. `t_0.5.csv`.
pub fn snapshot_file_name(t: f64) -> String {
    format!("t_{t}.csv")
}

pub fn write_snapshot_csv(path: &Path, snapshot: &Snapshot) -> Result<(), CliError> {
    let mut out = String::from("x,u\n");
    let grid = snapshot.field.grid();
    for (i, &u) in snapshot.field.values().iter().enumerate() {
        out.push_str(&format!("{},{}\n", grid.node(i), u));
    }
    std::fs::write(path, out)?;
    Ok(())
}

pub fn write_diagnostics_csv(path: &Path, rows: &[DiagRow]) -> Result<(), CliError> {
    let mut out = String::from("t,mass,u_min,u_max,max_grad\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.t, r.mass, r.u_min, r.u_max, r.max_grad
        ));
    }
    std::fs::write(path, out)?;
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct RunManifest<'a> {
    pub config: &'a ConfigDoc,
    pub tool_version: &'a str,
    pub wall_time: f64,
    pub output_files: &'a [PathBuf],
}

pub fn write_manifest(path: &Path, manifest: &RunManifest<'_>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(manifest)
        .map_err(|e| CliError::Io(format!("cannot serialize manifest: {e}")))?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

/// Plain gnuplot script plotting every snapshot CSV in one frame.
pub fn write_gnuplot_script(path: &Path, snapshot_files: &[String]) -> Result<(), CliError> {
    let mut out = String::new();
    out.push_str("set datafile separator ','\n");
    out.push_str("set xlabel 'x'\nset ylabel 'u'\nset key top left\n");
    out.push_str("plot ");
    let plots: Vec<String> = snapshot_files
        .iter()
        .map(|f| {
            format!(
                "'{f}' using 1:2 with lines title '{}'",
                f.trim_end_matches(".csv")
            )
        })
        .collect();
    out.push_str(&plots.join(", \\\n     "));
    out.push('\n');
    std::fs::write(path, out)?;
    Ok(())
}

/// Wide CSV `x,u_<label>,...` for model comparison at one time, followed
/// by a comment block with the per-model front position and steepest
/// gradient.
pub struct CompareSummary {
    pub label: String,
    pub front: Option<f64>,
    pub max_grad: f64,
}

pub fn write_compare_csv(
    path: &Path,
    xs: &[f64],
    columns: &[(String, Vec<f64>)],
    front_level: f64,
    summaries: &[CompareSummary],
) -> Result<(), CliError> {
    let mut out = String::from("x");
    for (label, _) in columns {
        out.push_str(&format!(",u_{label}"));
    }
    out.push('\n');
    for (i, &x) in xs.iter().enumerate() {
        out.push_str(&format!("{x}"));
        for (_, values) in columns {
            out.push_str(&format!(",{}", values[i]));
        }
        out.push('\n');
    }
    for s in summaries {
        match s.front {
            Some(x) => out.push_str(&format!(
                "# front_position level={front_level} u_{}={x}\n",
                s.label
            )),
            None => out.push_str(&format!(
                "# front_position level={front_level} u_{}=none\n",
                s.label
            )),
        }
    }
    for s in summaries {
        out.push_str(&format!("# max_grad u_{}={}\n", s.label, s.max_grad));
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Convergence-study CSV: one row per grid spacing, failed rows as
/// comments, then the classification line.
pub fn write_convergence_csv(
    path: &Path,
    rows: &[Result<ConvergenceRow, nlflux::Error>],
    class: ShockClass,
) -> Result<(), CliError> {
    let mut out = String::from("dx,l1_error,max_grad\n");
    for row in rows {
        match row {
            Ok(r) => {
                let l1 = r.l1_error.map(|e| e.to_string()).unwrap_or_default();
                out.push_str(&format!("{},{},{}\n", r.dx, l1, r.max_grad));
            }
            Err(e) => out.push_str(&format!("# row failed: {e}\n")),
        }
    }
    out.push_str(&format!("class={class}\n"));
    std::fs::write(path, out)?;
    Ok(())
}

/// Writes a file, creating parent directories as needed, and records the
/// path once in `written`.
pub fn record(written: &mut Vec<PathBuf>, path: PathBuf) -> PathBuf {
    if !written.contains(&path) {
        written.push(path.clone());
    }
    path
}

/// Key=value threshold-report block, as printed by `nlflux threshold`.
pub fn format_threshold_report(report: &nlflux::threshold::ThresholdReport) -> String {
    use nlflux::threshold::Verdict;
    let mut out = String::new();
    out.push_str(&format!("gamma_a={}\n", report.gamma_a));
    if let Some(gb) = report.gamma_b {
        out.push_str(&format!("gamma_b={gb}\n"));
    }
    out.push_str(&format!("sup_d0={}\n", report.sup_d0));
    out.push_str(&format!("inf_d0={}\n", report.inf_d0));
    out.push_str(&format!("rhs={}\n", report.rhs));
    let verdict = match report.verdict {
        Verdict::BlowupGuaranteed => "blowup_guaranteed",
        Verdict::Inconclusive => "inconclusive",
    };
    out.push_str(&format!("verdict={verdict}\n"));
    out.push_str(&format!("hypotheses_met={}\n", report.hypotheses_met));
    out
}
