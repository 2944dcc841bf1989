//! Parallel execution of independent simulations for the batch commands.
//!
//! `NLF_THREADS` caps the worker count; 0 means strictly sequential.

use crate::error::CliError;
use nlflux::solver::{run, SimConfig, SimResult};

/// Worker count for `jobs` independent tasks, honoring `NLF_THREADS`.
pub fn worker_count(jobs: usize) -> Result<usize, CliError> {
    let cap = match std::env::var("NLF_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(0) => 1,
            Ok(k) => k,
            Err(_) => {
                return Err(CliError::Config(format!(
                    "NLF_THREADS must be a nonnegative integer, got `{v}`"
                )))
            }
        },
        Err(_) => std::thread::available_parallelism()
            .map(|p| p.get())
            .unwrap_or(1),
    };
    Ok(cap.max(1).min(jobs.max(1)))
}

/// Runs every configuration, at most `workers` at a time. Results come
/// back in input order regardless of scheduling.
pub fn run_all(configs: &[SimConfig], workers: usize) -> Vec<Result<SimResult, nlflux::Error>> {
    if workers <= 1 || configs.len() <= 1 {
        return configs.iter().map(run).collect();
    }
    let slots: Vec<std::sync::Mutex<Option<Result<SimResult, nlflux::Error>>>> = configs
        .iter()
        .map(|_| std::sync::Mutex::new(None))
        .collect();
    let next = std::sync::atomic::AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..workers.min(configs.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= configs.len() {
                    break;
                }
                let result = run(&configs[i]);
                *slots[i].lock().unwrap() = Some(result);
            });
        }
    });
    slots
        .into_iter()
        .map(|s| s.into_inner().unwrap().expect("worker filled every slot"))
        .collect()
}
