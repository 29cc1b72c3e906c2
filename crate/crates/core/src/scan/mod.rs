//! Grid scans over the coupling/anisotropy plane and the finite-size study.

mod grid;
mod point;

pub use grid::{couplings_from_point, run_phase_scan, run_scaling_study, ScalingRow};
pub use point::{evaluate_point, evaluate_point_with, PointOptions, ScanRecord};

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::eigen::LanczosOptions;
use crate::{Error, Result};

/// Largest rung count accepted by scans (N = 18).
pub const SCAN_MAX_RUNGS: usize = 9;

/// Inclusive, evenly spaced axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisRange {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl AxisRange {
    pub fn new(min: f64, max: f64, steps: usize) -> Result<Self> {
        let axis = AxisRange { min, max, steps };
        axis.validate("axis")?;
        Ok(axis)
    }

    pub fn single(value: f64) -> Self {
        AxisRange {
            min: value,
            max: value,
            steps: 1,
        }
    }

    pub fn validate(&self, name: &str) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::InvalidScan(format!("{name}: steps must be at least 1")));
        }
        if !self.min.is_finite() || !self.max.is_finite() {
            return Err(Error::InvalidScan(format!("{name}: bounds must be finite")));
        }
        if self.min > self.max {
            return Err(Error::InvalidScan(format!(
                "{name}: min {} exceeds max {}",
                self.min, self.max
            )));
        }
        if self.steps == 1 && self.min != self.max {
            return Err(Error::InvalidScan(format!(
                "{name}: a single step needs min == max"
            )));
        }
        Ok(())
    }

    /// `i`-th grid value; both endpoints are hit exactly.
    pub fn value(&self, i: usize) -> f64 {
        if self.steps == 1 || i == 0 {
            self.min
        } else if i + 1 == self.steps {
            self.max
        } else {
            self.min + (self.max - self.min) * i as f64 / (self.steps - 1) as f64
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.steps).map(|i| self.value(i)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum LegMode {
    /// `j_leg = 1`, `j_rung = alpha`.
    #[default]
    AntiferroLegs,
    /// `j_rung = 1`, `j_leg = -|alpha'|`.
    FerroLegs,
}

impl LegMode {
    pub fn as_str(self) -> &'static str {
        match self {
            LegMode::AntiferroLegs => "antiferro",
            LegMode::FerroLegs => "ferro",
        }
    }
}

impl fmt::Display for LegMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LegMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "antiferro" | "antiferro_legs" => Ok(LegMode::AntiferroLegs),
            "ferro" | "ferro_legs" => Ok(LegMode::FerroLegs),
            other => Err(format!("unknown mode {other:?} (expected antiferro or ferro)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Observable {
    Gap,
    QLeg,
    QRung,
    Corr,
    Ggm,
}

impl Observable {
    pub const ALL: [Observable; 5] = [
        Observable::Gap,
        Observable::QLeg,
        Observable::QRung,
        Observable::Corr,
        Observable::Ggm,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Observable::Gap => "gap",
            Observable::QLeg => "q_leg",
            Observable::QRung => "q_rung",
            Observable::Corr => "corr",
            Observable::Ggm => "ggm",
        }
    }

    fn bit(self) -> u8 {
        1 << self as u8
    }
}

impl FromStr for Observable {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Observable::ALL
            .into_iter()
            .find(|o| o.as_str() == s.trim())
            .ok_or_else(|| format!("unknown observable {s:?}"))
    }
}

/// Nonempty subset of [`Observable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ObservableSet(u8);

impl ObservableSet {
    pub fn all() -> Self {
        ObservableSet(Observable::ALL.iter().fold(0, |acc, o| acc | o.bit()))
    }

    pub fn from_slice(items: &[Observable]) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::InvalidScan("observable set is empty".into()));
        }
        Ok(ObservableSet(items.iter().fold(0, |acc, o| acc | o.bit())))
    }

    pub fn contains(&self, o: Observable) -> bool {
        self.0 & o.bit() != 0
    }

    pub fn iter(&self) -> impl Iterator<Item = Observable> + '_ {
        Observable::ALL.into_iter().filter(|&o| self.contains(o))
    }
}

impl Default for ObservableSet {
    fn default() -> Self {
        Self::all()
    }
}

impl fmt::Display for ObservableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.iter().map(Observable::as_str).collect();
        f.write_str(&names.join(","))
    }
}

/// Comma-separated names, or `all`.
impl FromStr for ObservableSet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.trim() == "all" {
            return Ok(Self::all());
        }
        let items = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(Observable::from_str)
            .collect::<Result<Vec<_>, _>>()?;
        ObservableSet::from_slice(&items).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverSettings {
    pub tol: f64,
    pub max_iter: usize,
    pub max_krylov: usize,
    pub seed: u64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        let l = LanczosOptions::default();
        SolverSettings {
            tol: l.tol,
            max_iter: l.max_iter,
            max_krylov: l.max_krylov,
            seed: l.seed,
        }
    }
}

impl SolverSettings {
    pub fn lanczos(&self) -> LanczosOptions {
        LanczosOptions {
            tol: self.tol,
            max_iter: self.max_iter,
            seed: self.seed,
            max_krylov: self.max_krylov,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidScan(format!("tol must be positive, got {}", self.tol)));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidScan("max_iter must be positive".into()));
        }
        if self.max_krylov < 4 {
            return Err(Error::InvalidScan("max_krylov must be at least 4".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    pub n_rungs: usize,
    pub mode: LegMode,
    /// alpha = J_r/J_l (antiferro) or alpha' = |J_l|/J_r (ferro).
    pub alpha: AxisRange,
    pub delta: AxisRange,
    pub observables: ObservableSet,
    pub solver: SolverSettings,
    /// Worker threads; 0 uses every available core.
    pub workers: usize,
    /// Restrict the GGM search to `|A| <= m`.
    pub ggm_max_part: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    /// Measure per-point wall time (makes CSV output run-dependent).
    pub record_timing: bool,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            n_rungs: 8,
            mode: LegMode::AntiferroLegs,
            alpha: AxisRange {
                min: -2.0,
                max: 2.0,
                steps: 41,
            },
            delta: AxisRange {
                min: -2.0,
                max: 2.0,
                steps: 41,
            },
            observables: ObservableSet::all(),
            solver: SolverSettings::default(),
            workers: 0,
            ggm_max_part: None,
            cache_dir: None,
            record_timing: false,
        }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        if !(3..=SCAN_MAX_RUNGS).contains(&self.n_rungs) {
            return Err(Error::InvalidScan(format!(
                "n_rungs must be in 3..={SCAN_MAX_RUNGS}, got {}",
                self.n_rungs
            )));
        }
        self.alpha.validate("alpha")?;
        self.delta.validate("delta")?;
        self.solver.validate()?;
        if self.ggm_max_part == Some(0) {
            return Err(Error::InvalidScan("ggm_max_part must be at least 1".into()));
        }
        Ok(())
    }

    pub fn n_sites(&self) -> usize {
        2 * self.n_rungs
    }

    pub fn n_points(&self) -> usize {
        self.alpha.steps * self.delta.steps
    }
}
