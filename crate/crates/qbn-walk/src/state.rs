//! Sparse complex state vectors over the canonical basis, with the
//! elementary annihilation/creation/toggle operator actions.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vertex::{level_vertices, Vertex, MAX_MODES};

/// Amplitudes below this modulus are dropped by an explicit [`State::prune`]
/// pass. Operator applications never prune silently, so exact involution and
/// unitarity identities survive round trips.
pub const PRUNE_EPS: f64 = 1e-14;

/// Parity sector selector for [`State::project_parity`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Sector {
    Even,
    Odd,
}

/// A finitely supported vector in the walk's state space: a sparse map from
/// basis vertices to complex amplitudes. `BTreeMap` keeps iteration order
/// deterministic (ascending vertex encoding).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct State {
    amps: BTreeMap<Vertex, Complex64>,
}

impl State {
    pub fn zero() -> State {
        State::default()
    }

    /// The basis vector for `σ`: amplitude 1 at `σ`, zero elsewhere.
    pub fn basis(sigma: Vertex) -> State {
        let mut amps = BTreeMap::new();
        amps.insert(sigma, Complex64::new(1.0, 0.0));
        State { amps }
    }

    /// Build from explicit (vertex, amplitude) pairs; duplicate vertices are
    /// rejected rather than summed.
    pub fn from_amplitudes<I>(entries: I) -> Result<State>
    where
        I: IntoIterator<Item = (Vertex, Complex64)>,
    {
        let mut amps = BTreeMap::new();
        for (v, a) in entries {
            if amps.insert(v, a).is_some() {
                return Err(Error::DuplicateVertex(v));
            }
        }
        Ok(State { amps })
    }

    pub fn amplitude(&self, v: Vertex) -> Complex64 {
        self.amps.get(&v).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Complex64)> + '_ {
        self.amps.iter().map(|(v, a)| (*v, *a))
    }

    pub fn support_size(&self) -> usize {
        self.amps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.amps.is_empty()
    }

    /// Largest mode index present anywhere in the support.
    pub fn max_mode(&self) -> Option<usize> {
        self.amps.keys().filter_map(|v| v.max_mode()).max()
    }

    /// Errors unless every support vertex fits within truncation level `n`.
    pub fn check_support(&self, level: usize) -> Result<()> {
        for v in self.amps.keys() {
            if !v.fits_level(level) {
                return Err(Error::SupportExceedsTruncation { vertex: *v, level });
            }
        }
        Ok(())
    }

    /// `Σ_σ conj(a[σ]) b[σ]`, linear in the second argument.
    pub fn inner(&self, other: &State) -> Complex64 {
        let (small, large, conj_small) = if self.amps.len() <= other.amps.len() {
            (self, other, true)
        } else {
            (other, self, false)
        };
        let mut acc = Complex64::default();
        for (v, a) in &small.amps {
            if let Some(b) = large.amps.get(v) {
                acc += if conj_small { a.conj() * b } else { b.conj() * a };
            }
        }
        acc
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.values().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scaled(&self, c: Complex64) -> State {
        State {
            amps: self.amps.iter().map(|(v, a)| (*v, a * c)).collect(),
        }
    }

    pub fn add(&self, other: &State) -> State {
        let mut amps = self.amps.clone();
        for (v, a) in &other.amps {
            *amps.entry(*v).or_default() += a;
        }
        State { amps }
    }

    pub fn sub(&self, other: &State) -> State {
        self.add(&other.scaled(Complex64::new(-1.0, 0.0)))
    }

    pub fn normalized(&self) -> Result<State> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::NonUnitNorm { norm: 0.0 });
        }
        Ok(self.scaled(Complex64::new(1.0 / n, 0.0)))
    }

    /// Drop amplitudes with modulus below [`PRUNE_EPS`].
    pub fn prune(&self) -> State {
        State {
            amps: self
                .amps
                .iter()
                .filter(|(_, a)| a.norm() >= PRUNE_EPS)
                .map(|(v, a)| (*v, *a))
                .collect(),
        }
    }

    /// Annihilation: `Z_σ ↦ Z_{σ\k}` when `k ∈ σ`, dropped otherwise.
    pub fn apply_annihilation(&self, k: usize) -> Result<State> {
        check_mode(k)?;
        let mut amps = BTreeMap::new();
        for (v, a) in &self.amps {
            if v.contains(k) {
                *amps.entry(v.toggle(k)?).or_default() += a;
            }
        }
        Ok(State { amps })
    }

    /// Creation: `Z_σ ↦ Z_{σ∪k}` when `k ∉ σ`, dropped otherwise.
    pub fn apply_creation(&self, k: usize) -> Result<State> {
        check_mode(k)?;
        let mut amps = BTreeMap::new();
        for (v, a) in &self.amps {
            if !v.contains(k) {
                *amps.entry(v.toggle(k)?).or_default() += a;
            }
        }
        Ok(State { amps })
    }

    /// The toggle operator: permutes the support by `σ ↦ σ△k`, amplitudes
    /// untouched. An involution, exactly norm-preserving.
    pub fn apply_xi(&self, k: usize) -> Result<State> {
        check_mode(k)?;
        let mut amps = BTreeMap::new();
        for (v, a) in &self.amps {
            amps.insert(v.toggle(k)?, *a);
        }
        Ok(State { amps })
    }

    /// Applies the toggle operator for every mode in `σ` (a commuting
    /// family, order irrelevant). Maps the empty basis vector to `Z_σ`.
    pub fn apply_xi_sigma(&self, sigma: Vertex) -> State {
        let mut amps = BTreeMap::new();
        for (v, a) in &self.amps {
            amps.insert(v.symdiff(sigma), *a);
        }
        State { amps }
    }

    /// The parity operator: multiplies each amplitude by `(-1)^#σ`.
    pub fn apply_parity(&self) -> State {
        State {
            amps: self
                .amps
                .iter()
                .map(|(v, a)| (*v, a * v.parity_sign() as f64))
                .collect(),
        }
    }

    /// Projection onto the even/odd parity sector: keeps exactly the
    /// amplitudes whose vertex cardinality matches the sector.
    pub fn project_parity(&self, sector: Sector) -> State {
        State {
            amps: self
                .amps
                .iter()
                .filter(|(v, _)| match sector {
                    Sector::Even => v.parity_sign() == 1,
                    Sector::Odd => v.parity_sign() == -1,
                })
                .map(|(v, a)| (*v, *a))
                .collect(),
        }
    }

    /// Random unit state with full support on level `n`, amplitudes drawn
    /// componentwise from `[-1, 1)` before normalization.
    pub fn random<R: Rng + ?Sized>(level: usize, rng: &mut R) -> State {
        let amps: BTreeMap<Vertex, Complex64> = level_vertices(level)
            .map(|v| {
                (
                    v,
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                )
            })
            .collect();
        State { amps }.normalized().expect("nonzero with probability 1")
    }

    pub fn to_records(&self) -> Vec<AmplitudeRecord> {
        self.amps
            .iter()
            .map(|(v, a)| AmplitudeRecord {
                vertex: v.to_string(),
                re: a.re,
                im: a.im,
            })
            .collect()
    }

    pub fn from_records(records: &[AmplitudeRecord]) -> Result<State> {
        let mut entries = Vec::with_capacity(records.len());
        for r in records {
            entries.push((r.vertex.parse::<Vertex>()?, Complex64::new(r.re, r.im)));
        }
        State::from_amplitudes(entries)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_records()).expect("state serializes")
    }

    pub fn from_json(s: &str) -> Result<State> {
        let records: Vec<AmplitudeRecord> =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("state JSON: {e}")))?;
        State::from_records(&records)
    }
}

/// One JSON row of a serialized state: `{"vertex": "{0,2}", "re": x, "im": y}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AmplitudeRecord {
    pub vertex: String,
    pub re: f64,
    pub im: f64,
}

fn check_mode(k: usize) -> Result<()> {
    if k >= MAX_MODES {
        Err(Error::ModeOutOfRange {
            mode: k,
            max: MAX_MODES - 1,
        })
    } else {
        Ok(())
    }
}
