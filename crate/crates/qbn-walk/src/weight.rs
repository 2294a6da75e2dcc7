//! Weight sequences on the mode indices: strictly positive, summable, with
//! analytic totals and tail sums, plus the vertex-weight function mu.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::vertex::{level_vertices, Vertex, MAX_MODES};

/// Largest level accepted by operations that enumerate all `2^(n+1)` subsets.
pub const ENUM_LEVEL_LIMIT: usize = 20;

/// How a weight sequence is generated.
#[derive(Clone, Debug, PartialEq)]
pub enum WeightSpec {
    /// `w(k) = scale * ratio^k`, with `ratio` in (0,1).
    Geometric { ratio: f64, scale: f64 },
    /// Finite positive list, zero beyond its end; operations clamp the
    /// truncation level to the list length.
    Explicit(Vec<f64>),
    /// `w(k) = scale / (k+1)^exponent`, with `exponent > 1`.
    PowerLaw { exponent: f64, scale: f64 },
}

/// A validated weight sequence with cached values and analytic total/tails.
#[derive(Clone, Debug)]
pub struct Weight {
    spec: WeightSpec,
    values: Vec<f64>,
    total: f64,
    label: String,
}

impl Weight {
    pub fn new(spec: WeightSpec) -> Result<Weight> {
        let (values, total, label) = match &spec {
            WeightSpec::Geometric { ratio, scale } => {
                if !(*ratio > 0.0 && *ratio < 1.0) {
                    return Err(Error::InvalidWeight(format!(
                        "geometric ratio must lie in (0,1), got {ratio}"
                    )));
                }
                if !(*scale > 0.0) {
                    return Err(Error::InvalidWeight(format!(
                        "geometric scale must be positive, got {scale}"
                    )));
                }
                let values: Vec<f64> = (0..MAX_MODES)
                    .map(|k| scale * ratio.powi(k as i32))
                    .collect();
                let total = scale / (1.0 - ratio);
                (values, total, format!("geometric:{ratio}:{scale}"))
            }
            WeightSpec::Explicit(list) => {
                if list.is_empty() {
                    return Err(Error::InvalidWeight("explicit list is empty".into()));
                }
                if list.len() > MAX_MODES {
                    return Err(Error::InvalidWeight(format!(
                        "explicit list has {} entries, max {MAX_MODES}",
                        list.len()
                    )));
                }
                if let Some(bad) = list.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
                    return Err(Error::InvalidWeight(format!(
                        "explicit weights must be positive and finite, got {bad}"
                    )));
                }
                let total = list.iter().sum();
                let label = format!(
                    "explicit:{}",
                    list.iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                );
                (list.clone(), total, label)
            }
            WeightSpec::PowerLaw { exponent, scale } => {
                if !(*exponent > 1.0) {
                    return Err(Error::InvalidWeight(format!(
                        "power-law exponent must exceed 1, got {exponent}"
                    )));
                }
                if !(*scale > 0.0) {
                    return Err(Error::InvalidWeight(format!(
                        "power-law scale must be positive, got {scale}"
                    )));
                }
                let values: Vec<f64> = (0..MAX_MODES)
                    .map(|k| scale / ((k + 1) as f64).powf(*exponent))
                    .collect();
                let total = scale * zeta_tail(*exponent, 1);
                (values, total, format!("powerlaw:{exponent}:{scale}"))
            }
        };
        Ok(Weight {
            spec,
            values,
            total,
            label,
        })
    }

    /// The default weight: `w0(k) = 2^-(k+1)`, total 1, the dyadic ideal
    /// weight whose mu-values fill `[0, 1]`.
    pub fn ideal_default() -> Weight {
        Weight::new(WeightSpec::Geometric {
            ratio: 0.5,
            scale: 0.5,
        })
        .expect("default weight is valid")
    }

    pub fn spec(&self) -> &WeightSpec {
        &self.spec
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Largest usable truncation level (explicit lists clamp here).
    pub fn max_level(&self) -> usize {
        self.values.len() - 1
    }

    /// Clamp a requested level to what this weight supports.
    pub fn clamp_level(&self, level: usize) -> usize {
        level.min(self.max_level())
    }

    pub fn value(&self, k: usize) -> Result<f64> {
        self.values.get(k).copied().ok_or(Error::ModeOutOfRange {
            mode: k,
            max: self.max_level(),
        })
    }

    /// The total `|w|`, analytic where a closed form exists.
    pub fn total(&self) -> f64 {
        self.total
    }

    /// Tail sum over modes `> n`, analytic for geometric and power-law.
    pub fn tail(&self, n: usize) -> f64 {
        match &self.spec {
            WeightSpec::Geometric { ratio, scale } => {
                scale * ratio.powi(n as i32 + 1) / (1.0 - ratio)
            }
            WeightSpec::Explicit(list) => {
                if n + 1 >= list.len() {
                    0.0
                } else {
                    list[n + 1..].iter().sum()
                }
            }
            WeightSpec::PowerLaw { exponent, scale } => scale * zeta_tail(*exponent, n as u64 + 2),
        }
    }

    /// Partial sum over modes `0..=n`.
    pub fn level_sum(&self, n: usize) -> f64 {
        self.values[..=n.min(self.max_level())].iter().sum()
    }

    /// `mu_w(σ) = Σ_{k∈σ} w(k)`; modes beyond an explicit list contribute 0.
    pub fn mu(&self, sigma: Vertex) -> f64 {
        self.values
            .iter()
            .enumerate()
            .filter(|(k, _)| sigma.contains(*k))
            .map(|(_, v)| v)
            .sum()
    }

    /// Enumerates `mu_w` over all subsets of `{0..n}`, sorts the values and
    /// reports the largest gap between consecutive values, with 0 and the
    /// total `|w|` appended as endpoints. For an ideal weight the max gap
    /// shrinks to 0 as `n` grows.
    pub fn ideal_grid_report(&self, level: usize) -> Result<GridReport> {
        if level > ENUM_LEVEL_LIMIT {
            return Err(Error::EnumerationLimit {
                level,
                max: ENUM_LEVEL_LIMIT,
            });
        }
        let level = self.clamp_level(level);
        let mut values: Vec<f64> = level_vertices(level).map(|v| self.mu(v)).collect();
        values.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut max_gap: f64 = 0.0;
        let mut prev = 0.0;
        for &v in values.iter().chain(std::iter::once(&self.total)) {
            max_gap = max_gap.max(v - prev);
            prev = v;
        }
        Ok(GridReport {
            level,
            values,
            max_gap,
        })
    }

    /// Parse the CLI weight syntax:
    /// `geometric:<r>[:<a>]` (a defaults to 1-r so the total is 1),
    /// `explicit:v0,v1,...`, `powerlaw:<p>[:<a>]` (a defaults to 1/zeta(p)).
    pub fn parse_cli(s: &str) -> Result<Weight> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("weight spec `{s}` missing `:`")))?;
        let parse_f64 = |v: &str| -> Result<f64> {
            v.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad number `{v}` in weight spec `{s}`")))
        };
        match kind {
            "geometric" => {
                let mut parts = rest.splitn(2, ':');
                let ratio = parse_f64(parts.next().unwrap())?;
                let scale = match parts.next() {
                    Some(a) => parse_f64(a)?,
                    None => 1.0 - ratio,
                };
                Weight::new(WeightSpec::Geometric { ratio, scale })
            }
            "explicit" => {
                let list = rest
                    .split(',')
                    .map(parse_f64)
                    .collect::<Result<Vec<f64>>>()?;
                Weight::new(WeightSpec::Explicit(list))
            }
            "powerlaw" => {
                let mut parts = rest.splitn(2, ':');
                let exponent = parse_f64(parts.next().unwrap())?;
                let scale = match parts.next() {
                    Some(a) => parse_f64(a)?,
                    None => {
                        if exponent > 1.0 {
                            1.0 / zeta_tail(exponent, 1)
                        } else {
                            1.0
                        }
                    }
                };
                Weight::new(WeightSpec::PowerLaw { exponent, scale })
            }
            other => Err(Error::Parse(format!(
                "unknown weight kind `{other}` (expected geometric, explicit or powerlaw)"
            ))),
        }
    }
}

/// Result of [`Weight::ideal_grid_report`].
#[derive(Clone, Debug, Serialize)]
pub struct GridReport {
    pub level: usize,
    pub values: Vec<f64>,
    pub max_gap: f64,
}

/// `Σ_{m=start}^∞ m^-p` for `p > 1`: direct summation of the head plus an
/// Euler-Maclaurin remainder for the far tail.
pub fn zeta_tail(p: f64, start: u64) -> f64 {
    let cutoff = start + 2_000;
    // Kahan-compensated head sum; naive accumulation drifts past 1e-12
    let mut sum = 0.0;
    let mut comp = 0.0;
    for m in start..cutoff {
        let term = (m as f64).powf(-p) - comp;
        let next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    let k = cutoff as f64;
    sum + k.powf(1.0 - p) / (p - 1.0) + 0.5 * k.powf(-p) + p * k.powf(-p - 1.0) / 12.0
        - p * (p + 1.0) * (p + 2.0) * k.powf(-p - 3.0) / 720.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertex::level_dim;

    fn w0() -> Weight {
        Weight::ideal_default()
    }

    fn v(modes: &[usize]) -> Vertex {
        Vertex::from_modes(modes).unwrap()
    }

    #[test]
    fn dyadic_values() {
        assert_eq!(w0().value(0).unwrap(), 0.5);
        assert_eq!(w0().value(3).unwrap(), 0.0625);
        let e = Weight::new(WeightSpec::Explicit(vec![0.3, 0.1])).unwrap();
        assert_eq!(e.value(1).unwrap(), 0.1);
        assert!(e.value(2).is_err());
    }

    #[test]
    fn totals() {
        assert_eq!(w0().total(), 1.0);
        let e = Weight::new(WeightSpec::Explicit(vec![0.3, 0.1])).unwrap();
        assert!((e.total() - 0.4).abs() < 1e-15);

        // geometric(1/3, 2/3) sums to 1; cross-check against 200 partial terms
        let g = Weight::new(WeightSpec::Geometric {
            ratio: 1.0 / 3.0,
            scale: 2.0 / 3.0,
        })
        .unwrap();
        let brute: f64 = (0..200)
            .map(|k| 2.0 / 3.0 * (1.0f64 / 3.0).powi(k))
            .sum();
        assert!((g.total() - 1.0).abs() < 1e-12);
        assert!((g.total() - brute).abs() < 1e-12);
    }

    #[test]
    fn tails() {
        // tail(3) of w0 = 1 - (1/2 + 1/4 + 1/8 + 1/16), by partial sums
        let brute = 1.0 - (0.5 + 0.25 + 0.125 + 0.0625);
        assert!((w0().tail(3) - brute).abs() < 1e-15);
        assert!((w0().tail(0) - 0.5).abs() < 1e-15);
        let e = Weight::new(WeightSpec::Explicit(vec![0.3, 0.1])).unwrap();
        assert_eq!(e.tail(5), 0.0);
    }

    #[test]
    fn total_splits_into_head_and_tail() {
        for w in [
            w0(),
            Weight::new(WeightSpec::PowerLaw {
                exponent: 2.0,
                scale: 1.0,
            })
            .unwrap(),
            Weight::new(WeightSpec::Explicit(vec![0.3, 0.1, 0.05])).unwrap(),
        ] {
            for n in 0..w.max_level() {
                let lhs = w.level_sum(n) + w.tail(n);
                assert!(
                    (lhs - w.total()).abs() <= 1e-12 * w.total(),
                    "{} n={n}: {lhs} vs {}",
                    w.label(),
                    w.total()
                );
            }
        }
    }

    #[test]
    fn tail_decrements_by_next_value() {
        let w = Weight::new(WeightSpec::PowerLaw {
            exponent: 1.5,
            scale: 2.0,
        })
        .unwrap();
        for n in 0..40 {
            let diff = w.tail(n) - w.tail(n + 1);
            assert!((diff - w.value(n + 1).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn mu_values() {
        assert_eq!(w0().mu(Vertex::EMPTY), 0.0);
        assert!((w0().mu(v(&[0, 1])) - 0.75).abs() < 1e-15);
        for n in 0..8usize {
            let full = Vertex::from_bits((1u64 << (n + 1)) - 1);
            let expect = 1.0 - 2f64.powi(-(n as i32 + 1));
            assert!((w0().mu(full) - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn mu_complement_identity() {
        let w = Weight::new(WeightSpec::PowerLaw {
            exponent: 2.0,
            scale: 0.7,
        })
        .unwrap();
        let n = 6;
        let mask = crate::vertex::level_mask(n);
        for s in level_vertices(n) {
            let comp = Vertex::from_bits(!s.bits() & mask);
            let lhs = w.mu(s) + w.mu(comp);
            let rhs = w.total() - w.tail(n);
            assert!((lhs - rhs).abs() < 1e-12);
        }
    }

    #[test]
    fn dyadic_grid_is_exact() {
        // mu over subsets of {0..n} for w0 is exactly the dyadic grid
        // j * 2^-(n+1), j = 0 .. 2^(n+1)-1.
        for n in [1usize, 3, 6] {
            let report = w0().ideal_grid_report(n).unwrap();
            let step = 2f64.powi(-(n as i32 + 1));
            assert_eq!(report.values.len(), level_dim(n));
            for (j, val) in report.values.iter().enumerate() {
                assert!((val - j as f64 * step).abs() < 1e-15);
            }
            assert!((report.max_gap - step).abs() < 1e-15);
        }
    }

    #[test]
    fn grid_report_explicit() {
        let e = Weight::new(WeightSpec::Explicit(vec![0.3])).unwrap();
        let report = e.ideal_grid_report(0).unwrap();
        assert_eq!(report.values, vec![0.0, 0.3]);
        assert!((report.max_gap - 0.3).abs() < 1e-15);
        assert!(matches!(
            w0().ideal_grid_report(21),
            Err(Error::EnumerationLimit { .. })
        ));
    }

    #[test]
    fn powerlaw_tail_matches_brute_force() {
        let p = 2.5;
        let w = Weight::new(WeightSpec::PowerLaw {
            exponent: p,
            scale: 1.0,
        })
        .unwrap();
        for n in [0usize, 3, 10] {
            let brute: f64 = (n + 1..4_000_000).map(|k| ((k + 1) as f64).powf(-p)).sum();
            assert!((w.tail(n) - brute).abs() < 1e-9, "n={n}");
        }
    }

    #[test]
    fn cli_parsing() {
        let g = Weight::parse_cli("geometric:0.5").unwrap();
        assert!((g.total() - 1.0).abs() < 1e-15);
        let g = Weight::parse_cli("geometric:0.25:1.5").unwrap();
        assert!((g.total() - 2.0).abs() < 1e-12);
        let e = Weight::parse_cli("explicit:0.3,0.1,0.05").unwrap();
        assert_eq!(e.max_level(), 2);
        let p = Weight::parse_cli("powerlaw:2").unwrap();
        assert!((p.total() - 1.0).abs() < 1e-10);
        assert!(Weight::parse_cli("geometric:1.5").is_err());
        assert!(Weight::parse_cli("uniform:1").is_err());
        assert!(Weight::parse_cli("explicit:0.3,-0.1").is_err());
    }
}
