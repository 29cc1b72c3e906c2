use rayon::prelude::*;

use super::point::{evaluate_point_with, PointOptions, ScanRecord};
use super::{LegMode, Observable, ObservableSet, ScanConfig, SolverSettings, SCAN_MAX_RUNGS};
use crate::io::cache::StateCache;
use crate::ladder::LadderSpec;
use crate::{Error, Result};

/// Ladder couplings for grid coordinate `(alpha, delta)`.
///
/// Antiferro legs: `j_leg = 1`, `j_rung = alpha`. Ferro legs: `j_rung = 1`,
/// `j_leg = -|alpha|`, reading the axis as `|J_l| / J_r`.
pub fn couplings_from_point(config: &ScanConfig, alpha: f64, delta: f64) -> Result<LadderSpec> {
    match config.mode {
        LegMode::AntiferroLegs => LadderSpec::new(config.n_rungs, 1.0, alpha, delta),
        LegMode::FerroLegs => {
            if alpha == 0.0 {
                return Err(Error::InvalidScan(
                    "alpha' = 0 is excluded in ferro mode (it divides J_r)".into(),
                ));
            }
            LadderSpec::new(config.n_rungs, -alpha.abs(), 1.0, delta)
        }
    }
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidScan(format!("cannot start worker pool: {e}")))
}

/// Evaluates every grid point and returns the records ordered by delta index
/// (outer) then alpha index, independent of the worker count. Failed points
/// are kept with `failed` set.
pub fn run_phase_scan(config: &ScanConfig) -> Result<Vec<ScanRecord>> {
    config.validate()?;
    let cache = match &config.cache_dir {
        Some(dir) => Some(StateCache::open(dir)?),
        None => None,
    };
    let opts = PointOptions {
        observables: config.observables,
        solver: config.solver,
        ggm_max_part: config.ggm_max_part,
        cache: cache.as_ref(),
        record_timing: config.record_timing,
    };
    let alphas = config.alpha.values();
    let deltas = config.delta.values();
    let points: Vec<(f64, f64)> = deltas
        .iter()
        .flat_map(|&d| alphas.iter().map(move |&a| (a, d)))
        .collect();
    let n_sites = config.n_sites();
    let eval = |&(alpha, delta): &(f64, f64)| {
        let mut record = match couplings_from_point(config, alpha, delta) {
            Ok(spec) => evaluate_point_with(&spec, &opts),
            Err(e) => ScanRecord::failed(alpha, delta, n_sites, e.to_string()),
        };
        record.alpha = alpha;
        record.delta = delta;
        if record.failed {
            log::warn!(
                "point alpha={alpha} delta={delta} failed: {}",
                record.failure.as_deref().unwrap_or("")
            );
        }
        record
    };
    let records = pool(config.workers)?.install(|| points.par_iter().map(eval).collect());
    Ok(records)
}

/// One row of the finite-size study.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingRow {
    pub n_sites: usize,
    pub delta: f64,
    pub gap_per_spin: Option<f64>,
    pub ggm: Option<f64>,
    pub degenerate: bool,
    pub failed: bool,
}

/// Gap per spin and GGM at fixed `alpha` (antiferro legs) for every
/// `(N, delta)`, ordered by size then delta. Sizes must be even with
/// `6 <= N <= 18`.
pub fn run_scaling_study(
    alpha: f64,
    deltas: &[f64],
    sizes: &[usize],
    solver: &SolverSettings,
    workers: usize,
) -> Result<Vec<ScalingRow>> {
    for &n in sizes {
        if n % 2 != 0 || !(6..=2 * SCAN_MAX_RUNGS).contains(&n) {
            return Err(Error::InvalidScan(format!(
                "unsupported size N = {n} (even, 6..={})",
                2 * SCAN_MAX_RUNGS
            )));
        }
    }
    if !alpha.is_finite() || deltas.iter().any(|d| !d.is_finite()) {
        return Err(Error::InvalidScan("alpha and deltas must be finite".into()));
    }
    solver.validate()?;
    let opts = PointOptions {
        observables: ObservableSet::from_slice(&[Observable::Gap, Observable::Ggm])?,
        solver: *solver,
        ..Default::default()
    };
    let items: Vec<(usize, f64)> = sizes
        .iter()
        .flat_map(|&n| deltas.iter().map(move |&d| (n, d)))
        .collect();
    let rows = pool(workers)?.install(|| {
        items
            .par_iter()
            .map(|&(n, delta)| {
                let record = match LadderSpec::new(n / 2, 1.0, alpha, delta) {
                    Ok(spec) => evaluate_point_with(&spec, &opts),
                    Err(e) => ScanRecord::failed(alpha, delta, n, e.to_string()),
                };
                ScalingRow {
                    n_sites: n,
                    delta,
                    gap_per_spin: record.gap_per_spin,
                    ggm: record.ggm,
                    degenerate: record.degenerate,
                    failed: record.failed,
                }
            })
            .collect()
    });
    Ok(rows)
}
