use std::time::Instant;

use super::{Observable, ObservableSet, SolverSettings};
use crate::eigen::{energy_gap_per_spin, lanczos_extremal, GroundStateResult, DEGENERACY_TOL};
use crate::entanglement::{concurrence, ggm};
use crate::io::cache::{CacheKey, CachedState, StateCache};
use crate::ladder::{build_hamiltonian, enumerate_sector_basis, LadderSpec};
use crate::state::{
    connected_correlation, embed_to_full, two_site_rdm, DensityMatrix, FullStateVector, PauliAxis,
};
use crate::Result;

/// Every quantity computed at one grid point. Fields for observables that
/// were not requested, or that could not be computed, are `None`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScanRecord {
    /// Grid coordinate (alpha or alpha').
    pub alpha: f64,
    pub delta: f64,
    pub j_leg: f64,
    pub j_rung: f64,
    pub n_sites: usize,
    pub e0: Option<f64>,
    pub e1: Option<f64>,
    pub gap_per_spin: Option<f64>,
    /// Mean NN leg concurrence and the largest deviation of any pair from it.
    pub q_leg: Option<f64>,
    pub q_leg_dev: Option<f64>,
    pub q_rung: Option<f64>,
    pub q_rung_dev: Option<f64>,
    pub cxx_leg: Option<f64>,
    pub czz_leg: Option<f64>,
    pub cxx_rung: Option<f64>,
    pub czz_rung: Option<f64>,
    /// Largest deviation of a single pair from its correlator mean.
    pub corr_dev: Option<f64>,
    /// max |C^xx - C^yy| over all NN pairs.
    pub xy_isotropy_dev: Option<f64>,
    pub ggm: Option<f64>,
    pub ggm_argmax: Option<u32>,
    pub ggm_lower_bound: bool,
    pub degenerate: bool,
    pub failed: bool,
    pub failure: Option<String>,
    pub residual0: Option<f64>,
    pub residual1: Option<f64>,
    pub iterations: Option<usize>,
    pub cache_hit: bool,
    pub solve_seconds: Option<f64>,
}

impl ScanRecord {
    pub(crate) fn failed(alpha: f64, delta: f64, n_sites: usize, message: String) -> Self {
        ScanRecord {
            alpha,
            delta,
            j_leg: f64::NAN,
            j_rung: f64::NAN,
            n_sites,
            failed: true,
            failure: Some(message),
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct PointOptions<'a> {
    pub observables: ObservableSet,
    pub solver: SolverSettings,
    pub ggm_max_part: Option<usize>,
    pub cache: Option<&'a StateCache>,
    pub record_timing: bool,
}

/// Full pipeline for one ladder. `alpha` in the record is `j_rung / j_leg`;
/// grid drivers overwrite it with their own axis coordinate.
pub fn evaluate_point(spec: &LadderSpec, observables: ObservableSet, solver: &SolverSettings) -> ScanRecord {
    evaluate_point_with(
        spec,
        &PointOptions {
            observables,
            solver: *solver,
            ..Default::default()
        },
    )
}

pub fn evaluate_point_with(spec: &LadderSpec, opts: &PointOptions<'_>) -> ScanRecord {
    let start = Instant::now();
    let mut record = ScanRecord {
        alpha: spec.j_rung / spec.j_leg,
        delta: spec.delta,
        j_leg: spec.j_leg,
        j_rung: spec.j_rung,
        n_sites: spec.n_sites(),
        ..Default::default()
    };
    if let Err(e) = fill(spec, opts, &mut record) {
        record.failed = true;
        record.failure = Some(e.to_string());
        record.e0 = None;
        record.e1 = None;
        record.gap_per_spin = None;
    }
    if opts.record_timing {
        record.solve_seconds = Some(start.elapsed().as_secs_f64());
    }
    record
}

fn fill(spec: &LadderSpec, opts: &PointOptions<'_>, record: &mut ScanRecord) -> Result<()> {
    spec.validate()?;
    let basis = enumerate_sector_basis(spec.n_sites(), 0)?;
    let key = CacheKey::new(spec, &opts.solver);
    let cached = opts.cache.and_then(|c| c.lookup(&key));
    let ground = match cached {
        Some(hit) if hit.psi0.len() == basis.len() => {
            record.cache_hit = true;
            GroundStateResult {
                e0: hit.e0,
                e1: hit.e1,
                degenerate: hit.e1 - hit.e0 < DEGENERACY_TOL,
                psi0: hit.psi0,
                residual0: f64::NAN,
                residual1: f64::NAN,
                iterations: 0,
            }
        }
        _ => {
            let h = build_hamiltonian(spec, &basis)?;
            let g = lanczos_extremal(&h, &opts.solver.lanczos())?;
            if let Some(cache) = opts.cache {
                let entry = CachedState {
                    e0: g.e0,
                    e1: g.e1,
                    psi0: g.psi0.clone(),
                };
                if let Err(e) = cache.store(&key, &entry) {
                    log::warn!("state cache store failed: {e}");
                }
            }
            record.residual0 = Some(g.residual0);
            record.residual1 = Some(g.residual1);
            record.iterations = Some(g.iterations);
            g
        }
    };
    record.e0 = Some(ground.e0);
    record.e1 = Some(ground.e1);
    record.degenerate = ground.degenerate;
    let obs = opts.observables;
    if obs.contains(Observable::Gap) {
        record.gap_per_spin = Some(energy_gap_per_spin(&ground, spec));
    }
    let state = embed_to_full(&ground.psi0, &basis)?;

    let want_pairs = obs.contains(Observable::QLeg)
        || obs.contains(Observable::QRung)
        || obs.contains(Observable::Corr);
    if want_pairs {
        let legs = pair_stats(&state, &spec.leg_pairs(), obs)?;
        let rungs = pair_stats(&state, &spec.rung_pairs(), obs)?;
        if obs.contains(Observable::QLeg) {
            record.q_leg = Some(legs.q.mean);
            record.q_leg_dev = Some(legs.q.dev);
        }
        if obs.contains(Observable::QRung) {
            record.q_rung = Some(rungs.q.mean);
            record.q_rung_dev = Some(rungs.q.dev);
        }
        if obs.contains(Observable::Corr) {
            record.cxx_leg = Some(legs.cxx.mean);
            record.czz_leg = Some(legs.czz.mean);
            record.cxx_rung = Some(rungs.cxx.mean);
            record.czz_rung = Some(rungs.czz.mean);
            record.corr_dev = Some(
                [legs.cxx.dev, legs.czz.dev, rungs.cxx.dev, rungs.czz.dev]
                    .into_iter()
                    .fold(0.0, f64::max),
            );
            record.xy_isotropy_dev = Some(legs.xy_dev.max(rungs.xy_dev));
        }
    }
    if obs.contains(Observable::Ggm) {
        let g = ggm(&state, opts.ggm_max_part)?;
        record.ggm = Some(g.value);
        record.ggm_argmax = Some(g.argmax_partition.part_a());
        record.ggm_lower_bound = g.lower_bound;
    }
    Ok(())
}

#[derive(Default)]
struct MeanDev {
    mean: f64,
    dev: f64,
}

impl MeanDev {
    fn of(values: &[f64]) -> Self {
        if values.is_empty() {
            return MeanDev::default();
        }
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        let dev = values.iter().map(|v| (v - mean).abs()).fold(0.0, f64::max);
        MeanDev { mean, dev }
    }
}

struct PairStats {
    q: MeanDev,
    cxx: MeanDev,
    czz: MeanDev,
    xy_dev: f64,
}

fn pair_stats(state: &FullStateVector, pairs: &[(usize, usize)], obs: ObservableSet) -> Result<PairStats> {
    let rdms: Vec<DensityMatrix> = pairs
        .iter()
        .map(|&(a, b)| two_site_rdm(state, a, b))
        .collect::<Result<_>>()?;
    let q: Vec<f64> = if obs.contains(Observable::QLeg) || obs.contains(Observable::QRung) {
        rdms.iter().map(concurrence).collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    let corr = |axis| -> Vec<f64> { rdms.iter().map(|r| connected_correlation(r, axis)).collect() };
    let cxx = corr(PauliAxis::X);
    let cyy = corr(PauliAxis::Y);
    let czz = corr(PauliAxis::Z);
    let xy_dev = cxx
        .iter()
        .zip(&cyy)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    Ok(PairStats {
        q: MeanDev::of(&q),
        cxx: MeanDev::of(&cxx),
        czz: MeanDev::of(&czz),
        xy_dev,
    })
}
