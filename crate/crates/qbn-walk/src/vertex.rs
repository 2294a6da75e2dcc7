//! Bit-vector algebra for the vertex set: finite subsets of the mode indices
//! `0..MAX_MODES`, with the hypercube adjacency structure computed on the fly.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Width of the vertex bit vector. Every simulation is truncated to at most
/// this many modes, so a single machine word suffices.
pub const MAX_MODES: usize = 64;

/// A vertex of the hypercube graph: a finite subset of mode indices, bit `k`
/// set iff mode `k` belongs to the subset. Ordering is the unsigned-integer
/// order of the bit encoding.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Vertex(u64);

impl Vertex {
    pub const EMPTY: Vertex = Vertex(0);

    pub const fn from_bits(bits: u64) -> Vertex {
        Vertex(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(k: usize) -> Result<Vertex> {
        check_mode(k)?;
        Ok(Vertex(1 << k))
    }

    pub fn from_modes(modes: &[usize]) -> Result<Vertex> {
        let mut bits = 0u64;
        for &k in modes {
            check_mode(k)?;
            bits |= 1 << k;
        }
        Ok(Vertex(bits))
    }

    pub fn contains(self, k: usize) -> bool {
        k < MAX_MODES && self.0 >> k & 1 == 1
    }

    /// Cardinality of the subset.
    pub fn cardinality(self) -> u32 {
        self.0.count_ones()
    }

    /// Largest mode index present, or `None` for the empty set.
    pub fn max_mode(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(63 - self.0.leading_zeros() as usize)
        }
    }

    /// Symmetric difference of two subsets (bitwise xor).
    pub fn symdiff(self, other: Vertex) -> Vertex {
        Vertex(self.0 ^ other.0)
    }

    /// Toggle membership of mode `k`; applying twice restores the input.
    pub fn toggle(self, k: usize) -> Result<Vertex> {
        check_mode(k)?;
        Ok(Vertex(self.0 ^ (1 << k)))
    }

    /// `(-1)^#σ` via popcount parity.
    pub fn parity_sign(self) -> i32 {
        if self.0.count_ones() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Two vertices are adjacent iff their symmetric difference is a singleton.
    pub fn is_adjacent(self, other: Vertex) -> bool {
        (self.0 ^ other.0).count_ones() == 1
    }

    /// The neighbors of `self` within truncation level `n`: one per mode
    /// `0..=n`, all distinct (degree `n + 1`).
    pub fn neighbors(self, level: usize) -> Result<Vec<Vertex>> {
        check_level(level)?;
        Ok((0..=level).map(|k| Vertex(self.0 ^ (1 << k))).collect())
    }

    /// True iff all modes present are `<= level`.
    pub fn fits_level(self, level: usize) -> bool {
        level >= MAX_MODES - 1 || self.0 & !level_mask(level) == 0
    }
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

fn check_level(level: usize) -> Result<()> {
    check_mode(level)
}

/// Bit mask covering modes `0..=level`.
pub fn level_mask(level: usize) -> u64 {
    if level >= 63 {
        u64::MAX
    } else {
        (1u64 << (level + 1)) - 1
    }
}

/// Number of vertices at truncation level `n`, i.e. `2^(n+1)`.
pub fn level_dim(level: usize) -> usize {
    1usize << (level + 1)
}

/// All vertices with modes in `0..=level`, in ascending bit-encoding order.
pub fn level_vertices(level: usize) -> impl Iterator<Item = Vertex> {
    (0..level_dim(level) as u64).map(Vertex)
}

impl fmt::Display for Vertex {
    /// Prints the sorted element list in braces, e.g. `{0,2,5}`; the empty
    /// set prints `{}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for k in 0..MAX_MODES {
            if self.contains(k) {
                if !first {
                    write!(f, ",")?;
                }
                write!(f, "{k}")?;
                first = false;
            }
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Vertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Vertex> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("vertex must look like {{0,2,5}}, got `{s}`")))?;
        let inner = inner.trim();
        if inner.is_empty() {
            return Ok(Vertex::EMPTY);
        }
        let mut bits = 0u64;
        for part in inner.split(',') {
            let k: usize = part
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad mode index `{part}` in vertex `{s}`")))?;
            check_mode(k)?;
            if bits >> k & 1 == 1 {
                return Err(Error::Parse(format!("repeated mode {k} in vertex `{s}`")));
            }
            bits |= 1 << k;
        }
        Ok(Vertex(bits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(modes: &[usize]) -> Vertex {
        Vertex::from_modes(modes).unwrap()
    }

    #[test]
    fn symdiff_examples() {
        assert_eq!(v(&[0, 1]).symdiff(v(&[1, 2])), v(&[0, 2]));
        let s = v(&[3, 7]);
        assert_eq!(s.symdiff(Vertex::EMPTY), s);
        assert_eq!(s.symdiff(s), Vertex::EMPTY);
    }

    #[test]
    fn toggle_examples() {
        assert_eq!(Vertex::EMPTY.toggle(3).unwrap(), v(&[3]));
        assert_eq!(v(&[3]).toggle(3).unwrap(), Vertex::EMPTY);
        assert_eq!(v(&[0, 2]).toggle(1).unwrap(), v(&[0, 1, 2]));
        assert!(matches!(
            Vertex::EMPTY.toggle(64),
            Err(Error::ModeOutOfRange { .. })
        ));
    }

    #[test]
    fn parity_sign_examples() {
        assert_eq!(Vertex::EMPTY.parity_sign(), 1);
        assert_eq!(v(&[5]).parity_sign(), -1);
        assert_eq!(v(&[0, 1, 4]).parity_sign(), -1);
    }

    #[test]
    fn adjacency_examples() {
        assert!(v(&[0]).is_adjacent(Vertex::EMPTY));
        let s = v(&[2, 5]);
        assert!(!s.is_adjacent(s));
        assert!(!v(&[0, 1]).is_adjacent(v(&[2, 3])));
    }

    #[test]
    fn neighbors_examples() {
        assert_eq!(Vertex::EMPTY.neighbors(1).unwrap(), vec![v(&[0]), v(&[1])]);
        assert_eq!(v(&[0]).neighbors(1).unwrap(), vec![Vertex::EMPTY, v(&[0, 1])]);
        let ns = Vertex::EMPTY.neighbors(7).unwrap();
        assert_eq!(ns.len(), 8);
        for (i, a) in ns.iter().enumerate() {
            assert_eq!(a.cardinality(), 1);
            assert!(a.is_adjacent(Vertex::EMPTY));
            for b in &ns[i + 1..] {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn neighbors_match_adjacency_on_small_levels() {
        let n = 3;
        for a in level_vertices(n) {
            let ns = a.neighbors(n).unwrap();
            for b in level_vertices(n) {
                assert_eq!(a.is_adjacent(b), ns.contains(&b), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn group_structure_exhaustive() {
        // (Γ_n, △) is an abelian group with identity ∅, every element
        // self-inverse; checked exhaustively for n = 4.
        let n = 4;
        for a in level_vertices(n) {
            assert_eq!(a.symdiff(Vertex::EMPTY), a);
            assert_eq!(a.symdiff(a), Vertex::EMPTY);
            for b in level_vertices(n) {
                assert_eq!(a.symdiff(b), b.symdiff(a));
                for c in level_vertices(n) {
                    assert_eq!(a.symdiff(b).symdiff(c), a.symdiff(b.symdiff(c)));
                }
            }
        }
    }

    #[test]
    fn toggle_is_bijection_on_level() {
        let n = 4;
        for k in 0..=n {
            let mut seen = vec![false; level_dim(n)];
            for s in level_vertices(n) {
                let t = s.toggle(k).unwrap();
                assert!(t.fits_level(n));
                assert!(!seen[t.bits() as usize]);
                seen[t.bits() as usize] = true;
            }
        }
    }

    #[test]
    fn toggle_flips_parity() {
        for s in level_vertices(5) {
            for k in 0..8 {
                assert_eq!(s.toggle(k).unwrap().parity_sign(), -s.parity_sign());
            }
        }
    }

    #[test]
    fn display_and_parse_round_trip() {
        assert_eq!(Vertex::EMPTY.to_string(), "{}");
        assert_eq!(v(&[0, 2, 5]).to_string(), "{0,2,5}");
        assert_eq!("{0,2,5}".parse::<Vertex>().unwrap(), v(&[0, 2, 5]));
        assert_eq!("{}".parse::<Vertex>().unwrap(), Vertex::EMPTY);
        assert!("0,2".parse::<Vertex>().is_err());
        assert!("{64}".parse::<Vertex>().is_err());
        assert!("{1,1}".parse::<Vertex>().is_err());
    }
}
