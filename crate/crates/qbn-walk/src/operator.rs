//! The truncated adjacency operator, its positive shifted companion, and
//! dense-matrix realizations used for inspection and oracle checks.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::State;
use crate::vertex::{level_dim, level_vertices};
use crate::weight::{Weight, ENUM_LEVEL_LIMIT};

/// Largest level admitted for dense-matrix construction (`dim = 2^(n+1)`).
pub const DENSE_LEVEL_LIMIT: usize = 12;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    /// `A = Σ_{k<=n} w(k) Ξ_k`.
    Adjacency,
    /// `B = (|w| I + A) / 2`, with the full total in the shift.
    Shifted,
}

/// A finite section of the walk Hamiltonian, keeping modes `0..=level`.
#[derive(Clone, Debug)]
pub struct TruncatedOperator {
    weight: Weight,
    level: usize,
    kind: OperatorKind,
}

impl TruncatedOperator {
    /// The requested level is clamped to what the weight supports (explicit
    /// lists end early).
    pub fn new(weight: Weight, level: usize, kind: OperatorKind) -> TruncatedOperator {
        let level = weight.clamp_level(level);
        TruncatedOperator {
            weight,
            level,
            kind,
        }
    }

    pub fn adjacency(weight: Weight, level: usize) -> TruncatedOperator {
        TruncatedOperator::new(weight, level, OperatorKind::Adjacency)
    }

    pub fn shifted(weight: Weight, level: usize) -> TruncatedOperator {
        TruncatedOperator::new(weight, level, OperatorKind::Shifted)
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    /// Apply the operator to a state supported within the truncation level.
    ///
    /// Adjacency form: `(Aξ)[σ] = Σ_{k<=n} w(k) ξ[σ△k]`. The shifted form
    /// adds `|w|/2` of the identity on top of `A/2`, using the full total as
    /// in the untruncated definition.
    pub fn apply(&self, state: &State) -> Result<State> {
        state.check_support(self.level)?;
        let mut out = State::zero();
        for k in 0..=self.level {
            let wk = self.weight.value(k)?;
            out = out.add(&state.apply_xi(k)?.scaled(Complex64::new(wk, 0.0)));
        }
        match self.kind {
            OperatorKind::Adjacency => Ok(out),
            OperatorKind::Shifted => {
                let shifted = state
                    .scaled(Complex64::new(self.weight.total(), 0.0))
                    .add(&out);
                Ok(shifted.scaled(Complex64::new(0.5, 0.0)))
            }
        }
    }

    /// Dense symmetric realization with vertex bit-encoding as the index.
    pub fn dense_matrix(&self) -> Result<DenseMatrix> {
        if self.level > DENSE_LEVEL_LIMIT {
            return Err(Error::DimensionLimit {
                level: self.level,
                max: DENSE_LEVEL_LIMIT,
            });
        }
        let dim = level_dim(self.level);
        let mut entries = vec![0.0; dim * dim];
        for sigma in 0..dim {
            for k in 0..=self.level {
                let tau = sigma ^ (1 << k);
                entries[tau * dim + sigma] += self.weight.value(k)?;
            }
        }
        if self.kind == OperatorKind::Shifted {
            for e in entries.iter_mut() {
                *e *= 0.5;
            }
            let half_total = 0.5 * self.weight.total();
            for d in 0..dim {
                entries[d * dim + d] += half_total;
            }
        }
        Ok(DenseMatrix { dim, entries })
    }
}

/// Row-major real symmetric matrix over the level's vertex basis.
#[derive(Clone, Debug)]
pub struct DenseMatrix {
    pub dim: usize,
    pub entries: Vec<f64>,
}

impl DenseMatrix {
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.dim + col]
    }

    pub fn row_sum(&self, row: usize) -> f64 {
        self.entries[row * self.dim..(row + 1) * self.dim].iter().sum()
    }

    pub fn write_csv<W: std::io::Write>(&self, out: &mut W) -> std::io::Result<()> {
        for row in 0..self.dim {
            let line = self.entries[row * self.dim..(row + 1) * self.dim]
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",");
            writeln!(out, "{line}")?;
        }
        Ok(())
    }
}

/// The uniform superposition over level `n`, normalized, together with its
/// Rayleigh quotient under the level-`n` adjacency operator. The quotient
/// equals the partial weight sum: the superposition is an exact eigenvector
/// of the finite section at its top eigenvalue.
pub fn operator_norm_witness(weight: &Weight, level: usize) -> Result<(State, f64)> {
    if level > ENUM_LEVEL_LIMIT {
        return Err(Error::EnumerationLimit {
            level,
            max: ENUM_LEVEL_LIMIT,
        });
    }
    let level = weight.clamp_level(level);
    let amp = Complex64::new(1.0 / (level_dim(level) as f64).sqrt(), 0.0);
    let witness =
        State::from_amplitudes(level_vertices(level).map(|v| (v, amp))).expect("distinct vertices");
    let op = TruncatedOperator::adjacency(weight.clone(), level);
    let rayleigh = witness.inner(&op.apply(&witness)?).re;
    Ok((witness, rayleigh))
}
