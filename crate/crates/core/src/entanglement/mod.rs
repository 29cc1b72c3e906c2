//! Two-qubit concurrence and the generalized geometric measure (GGM) of
//! genuine multipartite entanglement.

mod bipartition;
mod concurrence;
mod schmidt;

pub use bipartition::{bipartition_count, enumerate_bipartitions, Bipartition};
pub use concurrence::{concurrence, CLAMP_TOL};
pub use schmidt::{largest_eigenvalue, POWER_TOL};

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::state::FullStateVector;
use crate::{Error, Result};
use schmidt::SchmidtEngine;

/// Normalization slack accepted by [`ggm`].
pub const NORM_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GgmResult {
    /// `1 - lambda_max_sq`, clamped at zero.
    pub value: f64,
    /// Largest squared Schmidt coefficient over the searched bipartitions.
    pub lambda_max_sq: f64,
    /// First bipartition in canonical order attaining the maximum.
    pub argmax_partition: Bipartition,
    /// Only part of the canonical family was searched, so `lambda_max_sq`
    /// is a lower bound on the true maximum (and `value` never
    /// underestimates the true GGM).
    pub lower_bound: bool,
}

/// Largest squared Schmidt coefficient of `state` across `part`.
pub fn max_schmidt_sq(state: &FullStateVector, part: &Bipartition) -> Result<f64> {
    if part.n_sites() != state.n_sites() {
        return Err(Error::InvalidSubset(format!(
            "bipartition of {} sites applied to a {}-site state",
            part.n_sites(),
            state.n_sites()
        )));
    }
    Ok(SchmidtEngine::new(state).max_schmidt_sq(part.part_a()))
}

/// GGM of a normalized pure state: one minus the largest squared Schmidt
/// coefficient over every bipartition (or only those with
/// `|A| <= max_part` when a restriction is given).
pub fn ggm(state: &FullStateVector, max_part: Option<usize>) -> Result<GgmResult> {
    let n = state.n_sites();
    if n < 2 {
        return Err(Error::InvalidState("GGM needs at least two sites".into()));
    }
    let norm = state.norm();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::InvalidState(format!("state norm {norm} is not 1")));
    }
    let parts: Vec<Bipartition> = enumerate_bipartitions(n, max_part).collect();
    if parts.is_empty() {
        return Err(Error::InvalidSubset(format!(
            "restriction {max_part:?} leaves no bipartitions"
        )));
    }
    let engine = SchmidtEngine::new(state);
    // Running maximum shared across workers. Cuts that provably fall below
    // it return an inexact smaller value; every value at or above it is
    // exact, so the maximum and the first cut attaining it do not depend on
    // scheduling. Nonnegative f64 bit patterns order like the numbers.
    let floor = AtomicU64::new(0f64.to_bits());
    let values: Vec<f64> = parts
        .par_iter()
        .map(|p| {
            let current = f64::from_bits(floor.load(Ordering::Relaxed));
            let v = engine.max_schmidt_sq_above(p.part_a(), current);
            if v >= current {
                floor.fetch_max(v.to_bits(), Ordering::Relaxed);
            }
            v
        })
        .collect();
    let (best_idx, best) = values
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |(bi, bv), (i, &v)| {
            if v > bv {
                (i, v)
            } else {
                (bi, bv)
            }
        });
    Ok(GgmResult {
        value: (1.0 - best).max(0.0),
        lambda_max_sq: best,
        argmax_partition: parts[best_idx],
        lower_bound: parts.len() < bipartition_count(n, None),
    })
}
