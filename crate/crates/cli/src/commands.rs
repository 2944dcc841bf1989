//! The four subcommands: simulate, compare, threshold, convergence.

use crate::config::{self, ConfigDoc};
use crate::error::CliError;
use crate::jobs;
use crate::output::{self, CompareSummary, RunManifest};
use nlflux::analysis::{
    front_position, lwr_riemann_exact, red_light_exact, shock_refinement_study, FrontSide,
    RiemannState,
};
use nlflux::flux::FluxModel;
use nlflux::grid::GridSpec;
use nlflux::kernel::discretize;
use nlflux::scenario::ScenarioSpec;
use nlflux::solver::SimConfig;
use nlflux::threshold::{assess, ThresholdKind};
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Runs one simulation and writes `t_<time>.csv` per snapshot,
/// `diagnostics.csv`, and `manifest.json` into `out_dir`.
pub fn cmd_simulate(config_path: &Path, out_dir: &Path, gnuplot: bool) -> Result<(), CliError> {
    let started = Instant::now();
    let doc = config::load(config_path)?;
    let sim_config = doc.to_sim_config()?;
    let result = nlflux::solver::run(&sim_config)?;

    std::fs::create_dir_all(out_dir)?;
    let mut written: Vec<PathBuf> = Vec::new();
    let mut snapshot_files: Vec<String> = Vec::new();
    for snapshot in &result.snapshots {
        let name = output::snapshot_file_name(snapshot.t);
        let path = output::record(&mut written, out_dir.join(&name));
        output::write_snapshot_csv(&path, snapshot)?;
        if !snapshot_files.contains(&name) {
            snapshot_files.push(name);
        }
    }
    let diag_path = output::record(&mut written, out_dir.join("diagnostics.csv"));
    output::write_diagnostics_csv(&diag_path, &result.diagnostics)?;
    if gnuplot {
        let plot_path = output::record(&mut written, out_dir.join("plot.gp"));
        output::write_gnuplot_script(&plot_path, &snapshot_files)?;
    }
    let manifest_path = output::record(&mut written, out_dir.join("manifest.json"));
    let manifest = RunManifest {
        config: &doc,
        tool_version: env!("CARGO_PKG_VERSION"),
        wall_time: started.elapsed().as_secs_f64(),
        output_files: &written,
    };
    output::write_manifest(&manifest_path, &manifest)?;
    println!(
        "wrote {} files to {} ({} steps)",
        written.len(),
        out_dir.display(),
        result.steps_taken
    );
    Ok(())
}

fn unique_label(model: &FluxModel, taken: &[String]) -> String {
    let base = model.label();
    if !taken.contains(&base) {
        return base;
    }
    let mut k = 2;
    loop {
        let candidate = format!("{base}_{k}");
        if !taken.contains(&candidate) {
            return candidate;
        }
        k += 1;
    }
}

/// Runs two or more configs sharing grid and scenario, sampling all of
/// them at `t_probe` into one wide CSV with a front/gradient summary.
pub fn cmd_compare(
    config_paths: &[PathBuf],
    t_probe: f64,
    out_path: &Path,
    front_level: f64,
) -> Result<(), CliError> {
    if config_paths.len() < 2 {
        return Err(CliError::Config(format!(
            "compare needs at least two configs, got {}",
            config_paths.len()
        )));
    }
    let docs: Vec<ConfigDoc> = config_paths
        .iter()
        .map(|p| config::load(p))
        .collect::<Result<_, _>>()?;
    let mut sim_configs: Vec<SimConfig> = Vec::new();
    for (doc, path) in docs.iter().zip(config_paths) {
        let mut c = doc
            .to_sim_config()
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        c.t_end = t_probe;
        c.snapshot_times = vec![t_probe];
        sim_configs.push(c);
    }
    let first = &sim_configs[0];
    for (c, path) in sim_configs.iter().zip(config_paths).skip(1) {
        if c.grid != first.grid {
            return Err(CliError::Config(format!(
                "{}: grid differs from the first config",
                path.display()
            )));
        }
        if c.scenario != first.scenario {
            return Err(CliError::Config(format!(
                "{}: scenario differs from the first config",
                path.display()
            )));
        }
    }

    let workers = jobs::worker_count(sim_configs.len())?;
    let results = jobs::run_all(&sim_configs, workers);

    let mut labels: Vec<String> = Vec::new();
    let mut columns: Vec<(String, Vec<f64>)> = Vec::new();
    let mut summaries: Vec<CompareSummary> = Vec::new();
    for (config, result) in sim_configs.iter().zip(results) {
        let result = result?;
        let label = unique_label(&config.model, &labels);
        labels.push(label.clone());
        let snapshot = result.snapshots.last().expect("run emits snapshots");
        summaries.push(CompareSummary {
            label: label.clone(),
            front: front_position(&snapshot.field, front_level, FrontSide::Leading).ok(),
            max_grad: snapshot.max_grad,
        });
        columns.push((label, snapshot.field.values().to_vec()));
    }
    let xs: Vec<f64> = first.grid.nodes().collect();
    if let Some(dir) = out_path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    output::write_compare_csv(out_path, &xs, &columns, front_level, &summaries)?;
    println!("wrote {}", out_path.display());
    Ok(())
}

fn parse_kind(kind: &str) -> Result<ThresholdKind, CliError> {
    match kind {
        "const_ab" => Ok(ThresholdKind::ConstAb),
        "lin_ab" => Ok(ThresholdKind::LinAb),
        "const_a" => Ok(ThresholdKind::ConstA),
        other => Err(CliError::Config(format!(
            "unknown threshold kind `{other}` (expected const_ab, lin_ab, const_a)"
        ))),
    }
}

/// Evaluates the blow-up threshold for the config's initial data and
/// prints the report as key=value lines.
pub fn cmd_threshold(config_path: &Path, kind: &str) -> Result<(), CliError> {
    let kind = parse_kind(kind)?;
    let doc = config::load(config_path)?;
    let sim_config = doc.to_sim_config()?;
    let report = assess(&sim_config, kind)?;
    print!("{}", output::format_threshold_report(&report));
    Ok(())
}

/// Parses "1/200" or "0.005" style spacings.
fn parse_dx(item: &str) -> Result<f64, CliError> {
    let item = item.trim();
    let value = if let Some((num, den)) = item.split_once('/') {
        let num: f64 = num.trim().parse().map_err(|_| bad_dx(item))?;
        let den: f64 = den.trim().parse().map_err(|_| bad_dx(item))?;
        num / den
    } else {
        item.parse().map_err(|_| bad_dx(item))?
    };
    if !(value.is_finite() && value > 0.0) {
        return Err(bad_dx(item));
    }
    Ok(value)
}

fn bad_dx(item: &str) -> CliError {
    CliError::Config(format!("invalid grid spacing `{item}`"))
}

/// Reruns the config's scenario over a list of spacings and writes the
/// convergence rows plus the shock/smooth classification.
pub fn cmd_convergence(
    config_path: &Path,
    dx_spec: &str,
    t_probe: f64,
    out_path: &Path,
) -> Result<(), CliError> {
    let doc = config::load(config_path)?;
    let sim_config = doc.to_sim_config()?;
    let dx_list: Vec<f64> = dx_spec.split(',').map(parse_dx).collect::<Result<_, _>>()?;

    // every spacing must divide the domain and the kernel reaches
    for &dx in &dx_list {
        GridSpec::new(
            sim_config.grid.x_min(),
            sim_config.grid.x_max(),
            dx,
            sim_config.grid.boundary(),
        )
        .map_err(|e| CliError::Config(format!("dx = {dx}: {e}")))?;
        for spec in [
            sim_config.model.kernel_ahead(),
            sim_config.model.kernel_behind(),
        ]
        .into_iter()
        .flatten()
        {
            discretize(&spec, dx).map_err(|e| CliError::Config(format!("dx = {dx}: {e}")))?;
        }
    }

    let oracle = exact_profile(&sim_config.model, &sim_config.scenario, t_probe);
    let workers = jobs::worker_count(dx_list.len())?;
    let study = shock_refinement_study(
        &sim_config,
        &dx_list,
        t_probe,
        oracle
            .as_ref()
            .map(|f| f.as_ref() as &(dyn Fn(f64) -> f64 + Sync)),
        workers,
    )?;
    if let Some(dir) = out_path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    output::write_convergence_csv(out_path, &study.rows, study.class)?;
    println!("wrote {} (class={})", out_path.display(), study.class);
    Ok(())
}

/// Exact reference solution at `t`, for the cases that have one: the
/// local model with Riemann data, or the red-light release while its two
/// waves have not interacted.
fn exact_profile(
    model: &FluxModel,
    scenario: &ScenarioSpec,
    t: f64,
) -> Option<Box<dyn Fn(f64) -> f64 + Sync>> {
    if *model != FluxModel::Lwr {
        return None;
    }
    match scenario {
        ScenarioSpec::Riemann {
            u_left,
            u_right,
            x0,
        } => {
            let state = RiemannState::new(*u_left, *u_right, *x0).ok()?;
            Some(Box::new(move |x| lwr_riemann_exact(&state, x, t)))
        }
        ScenarioSpec::RedLight if t <= 2.0 => Some(Box::new(move |x| red_light_exact(x, t))),
        _ => None,
    }
}
