use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    Periodic,
}

/// Spin operators are Pauli matrices (eigenvalues +-1). Energies are four
/// times those of the same couplings written with spin-1/2 operators; the
/// ground states and all dimensionless phase boundaries are identical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorConvention {
    Pauli,
}

impl OperatorConvention {
    pub fn as_str(self) -> &'static str {
        match self {
            OperatorConvention::Pauli => "pauli",
        }
    }
}

/// One XXZ ladder Hamiltonian
///
/// `H = sum_legs J_leg (sx sx + sy sy + delta sz sz) + sum_rungs J_rung (...)`
///
/// with both legs sharing `j_leg`. Site `(rung, leg)` is bit `2 * rung + leg`
/// of every basis mask.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderSpec {
    pub n_rungs: usize,
    pub j_leg: f64,
    pub j_rung: f64,
    pub delta: f64,
    pub boundary: Boundary,
    pub convention: OperatorConvention,
}

/// Largest supported ladder; masks are `u32` and the rank table is dense.
pub const MAX_RUNGS: usize = 12;

impl LadderSpec {
    pub fn new(n_rungs: usize, j_leg: f64, j_rung: f64, delta: f64) -> Result<Self> {
        let spec = LadderSpec {
            n_rungs,
            j_leg,
            j_rung,
            delta,
            boundary: Boundary::Periodic,
            convention: OperatorConvention::Pauli,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match self.boundary {
            // two rungs would count each leg bond twice
            Boundary::Periodic if self.n_rungs < 3 => {
                return Err(Error::InvalidLadder(format!(
                    "periodic ladder needs at least 3 rungs, got {}",
                    self.n_rungs
                )))
            }
            _ => {}
        }
        if self.n_rungs > MAX_RUNGS {
            return Err(Error::InvalidLadder(format!(
                "at most {MAX_RUNGS} rungs supported, got {}",
                self.n_rungs
            )));
        }
        for (name, v) in [
            ("j_leg", self.j_leg),
            ("j_rung", self.j_rung),
            ("delta", self.delta),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidLadder(format!("{name} must be finite, got {v}")));
            }
        }
        Ok(())
    }

    pub fn n_sites(&self) -> usize {
        2 * self.n_rungs
    }

    pub fn site(&self, rung: usize, leg: usize) -> Result<usize> {
        site_index(self.n_rungs, rung, leg)
    }

    /// Nearest-neighbour pairs along the legs: leg 0 then leg 1, each ring in
    /// rung order, every bond once.
    pub fn leg_pairs(&self) -> Vec<(usize, usize)> {
        (0..2)
            .flat_map(|leg| {
                (0..self.n_rungs)
                    .map(move |r| (2 * r + leg, 2 * ((r + 1) % self.n_rungs) + leg))
            })
            .collect()
    }

    pub fn rung_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n_rungs).map(|r| (2 * r, 2 * r + 1)).collect()
    }

    pub fn bonds(&self) -> Vec<Bond> {
        let legs = self.leg_pairs().into_iter().map(|(a, b)| Bond {
            a,
            b,
            coupling: self.j_leg,
            kind: BondKind::Leg,
        });
        let rungs = self.rung_pairs().into_iter().map(|(a, b)| Bond {
            a,
            b,
            coupling: self.j_rung,
            kind: BondKind::Rung,
        });
        legs.chain(rungs).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BondKind {
    Leg,
    Rung,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bond {
    pub a: usize,
    pub b: usize,
    pub coupling: f64,
    pub kind: BondKind,
}

/// Linear site label `2 * rung + leg`.
pub fn site_index(n_rungs: usize, rung: usize, leg: usize) -> Result<usize> {
    if rung >= n_rungs || leg > 1 {
        return Err(Error::SiteOutOfRange { rung, leg, n_rungs });
    }
    Ok(2 * rung + leg)
}
