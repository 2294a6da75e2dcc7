//! Probability distributions of the walk and the symmetry checks turned
//! into executable pass/fail verdicts.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::evolution::{truncation_error_bound, Propagator};
use crate::state::{Sector, State};
use crate::vertex::Vertex;
use crate::weight::Weight;

/// Tolerance for identities that are exact in exact arithmetic.
pub const IDENTITY_TOL: f64 = 1e-12;
/// Tolerance for comparisons across independent algorithms.
pub const ORACLE_TOL: f64 = 1e-11;
/// Tolerance for residual-based spectral checks.
pub const RESIDUAL_TOL: f64 = 1e-10;

/// Norm slack accepted on an initial state before it is rejected.
const UNIT_NORM_TOL: f64 = 1e-10;

/// Probability distribution of the walk at one time, over the truncated
/// vertex set. `truncation_bound` is the amplitude-level bound on how much
/// the untruncated walk could differ.
#[derive(Clone, Debug, Serialize)]
pub struct Distribution {
    pub time: f64,
    pub level: usize,
    pub entries: BTreeMap<String, f64>,
    pub mass: f64,
    pub truncation_bound: f64,
    #[serde(skip)]
    probs: BTreeMap<Vertex, f64>,
}

impl Distribution {
    pub fn probability(&self, v: Vertex) -> f64 {
        self.probs.get(&v).copied().unwrap_or(0.0)
    }

    pub fn probabilities(&self) -> impl Iterator<Item = (Vertex, f64)> + '_ {
        self.probs.iter().map(|(v, p)| (*v, *p))
    }

    /// Max pointwise difference over the union of supports.
    pub fn max_deviation(&self, other: &Distribution) -> f64 {
        let mut dev: f64 = 0.0;
        for (v, p) in &self.probs {
            dev = dev.max((p - other.probability(*v)).abs());
        }
        for (v, p) in &other.probs {
            dev = dev.max((p - self.probability(*v)).abs());
        }
        dev
    }
}

/// Evolve a unit initial state and square the amplitude moduli.
pub fn distribution(
    weight: &Weight,
    level: usize,
    time: f64,
    initial: &State,
) -> Result<Distribution> {
    let norm = initial.norm();
    if (norm - 1.0).abs() > UNIT_NORM_TOL {
        return Err(Error::NonUnitNorm { norm });
    }
    let propagator = Propagator::new(weight, level, time)?;
    let evolved = propagator.evolve(initial)?;
    let probs: BTreeMap<Vertex, f64> = evolved.iter().map(|(v, a)| (v, a.norm_sqr())).collect();
    let mass = probs.values().sum();
    Ok(Distribution {
        time,
        level: propagator.level(),
        entries: probs.iter().map(|(v, p)| (v.to_string(), *p)).collect(),
        mass,
        truncation_bound: truncation_error_bound(weight, propagator.level(), time),
        probs,
    })
}

/// Verdict of one symmetry check, with the seed and time grid it ran on.
#[derive(Clone, Debug, Serialize)]
pub struct SymmetryReport {
    pub check: String,
    pub seed: u64,
    pub times: Vec<f64>,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    fn from_deviation(check: &str, seed: u64, times: &[f64], dev: f64, tol: f64) -> SymmetryReport {
        SymmetryReport {
            check: check.to_string(),
            seed,
            times: times.to_vec(),
            max_deviation: dev,
            tolerance: tol,
            verdict: if dev <= tol {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
        }
    }
}

/// Distribution-level time reversal: the walk started from the
/// parity-flipped state, run forward, matches the original run backward.
/// Holds for arbitrary unit initial states.
pub fn check_time_reversal(
    weight: &Weight,
    level: usize,
    initial: &State,
    times: &[f64],
    seed: u64,
) -> Result<SymmetryReport> {
    let flipped = initial.apply_parity();
    let mut dev: f64 = 0.0;
    for &t in times {
        let forward = distribution(weight, level, t, &flipped)?;
        let backward = distribution(weight, level, -t, initial)?;
        dev = dev.max(forward.max_deviation(&backward));
    }
    Ok(SymmetryReport::from_deviation(
        "time_reversal",
        seed,
        times,
        dev,
        IDENTITY_TOL,
    ))
}

/// Plain time symmetry `P_t = P_{-t}` for initial states confined to one
/// parity sector. A state leaving the sector is refused: that signals a
/// caller bug, not a symmetry failure.
pub fn check_parity_sector_symmetry(
    weight: &Weight,
    level: usize,
    initial: &State,
    sector: Sector,
    times: &[f64],
    seed: u64,
) -> Result<SymmetryReport> {
    let defect = initial.project_parity(sector).sub(initial).norm();
    if defect > UNIT_NORM_TOL {
        return Err(Error::SectorViolation { defect });
    }
    let mut dev: f64 = 0.0;
    for &t in times {
        let forward = distribution(weight, level, t, initial)?;
        let backward = distribution(weight, level, -t, initial)?;
        dev = dev.max(forward.max_deviation(&backward));
    }
    let name = match sector {
        Sector::Even => "parity_even",
        Sector::Odd => "parity_odd",
    };
    Ok(SymmetryReport::from_deviation(
        name,
        seed,
        times,
        dev,
        IDENTITY_TOL,
    ))
}

/// Operator-level time reversal: parity after forward evolution equals
/// backward evolution after parity, amplitude by amplitude, on random unit
/// states.
pub fn check_operator_identity(
    weight: &Weight,
    level: usize,
    times: &[f64],
    trials: usize,
    seed: u64,
) -> Result<SymmetryReport> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let level = weight.clamp_level(level);
    let mut dev: f64 = 0.0;
    for _ in 0..trials {
        let state = State::random(level, &mut rng);
        for &t in times {
            let lhs = Propagator::new(weight, level, t)?
                .evolve(&state)?
                .apply_parity();
            let rhs = Propagator::new(weight, level, -t)?.evolve(&state.apply_parity())?;
            let d = lhs
                .sub(&rhs)
                .iter()
                .map(|(_, a)| a.norm())
                .fold(0.0, f64::max);
            dev = dev.max(d);
        }
    }
    Ok(SymmetryReport::from_deviation(
        "operator_identity",
        seed,
        times,
        dev,
        IDENTITY_TOL,
    ))
}
