//! Move laws on the positive integers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand_core::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng;
use crate::word::Letter;

/// Tolerance on the total mass of a finite-support law.
pub const MASS_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum MoveDistribution {
    /// `probs[j - 1] = μ(j)`.
    FiniteSupport(FiniteSupport),
    /// `μ(j) = p (1 - p)^(j - 1)`.
    Geometric(f64),
    /// Uniform on `{1, …, k}`.
    Uniform(Letter),
    /// Point mass at `k`.
    Dirac(Letter),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiniteSupport {
    probs: Vec<f64>,
    cdf: Vec<f64>,
}

impl FiniteSupport {
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}

impl MoveDistribution {
    pub fn geometric(p: f64) -> Result<Self> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::InvalidDistribution(format!(
                "geometric parameter must lie in (0, 1], got {p}"
            )));
        }
        Ok(MoveDistribution::Geometric(p))
    }

    pub fn uniform(k: Letter) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidDistribution("uniform needs k >= 1".into()));
        }
        Ok(MoveDistribution::Uniform(k))
    }

    pub fn dirac(k: Letter) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidDistribution("dirac needs k >= 1".into()));
        }
        Ok(MoveDistribution::Dirac(k))
    }

    /// Finite-support law from `(letter, probability)` pairs.
    pub fn finite(entries: impl IntoIterator<Item = (Letter, f64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (j, q) in entries {
            if j == 0 {
                return Err(Error::InvalidDistribution("letter 0 has no meaning".into()));
            }
            *map.entry(j).or_insert(0.0) += q;
        }
        let top = map.keys().next_back().copied().unwrap_or(0) as usize;
        let mut probs = vec![0.0; top];
        for (j, q) in map {
            probs[j as usize - 1] = q;
        }
        Self::finite_from_probs(probs)
    }

    /// Finite-support law with `probs[j - 1] = μ(j)`.
    pub fn finite_from_probs(mut probs: Vec<f64>) -> Result<Self> {
        if probs.iter().any(|q| !(q.is_finite() && *q >= 0.0)) {
            return Err(Error::InvalidDistribution(
                "probabilities must be finite and non-negative".into(),
            ));
        }
        while probs.last() == Some(&0.0) {
            probs.pop();
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        let mut acc = 0.0;
        let cdf = probs
            .iter()
            .map(|q| {
                acc += q;
                acc
            })
            .collect();
        Ok(MoveDistribution::FiniteSupport(FiniteSupport {
            probs,
            cdf,
        }))
    }

    /// `μ(j)`.
    pub fn pmf(&self, j: Letter) -> f64 {
        if j == 0 {
            return 0.0;
        }
        match self {
            MoveDistribution::FiniteSupport(f) => {
                f.probs.get(j as usize - 1).copied().unwrap_or(0.0)
            }
            MoveDistribution::Geometric(p) => {
                if *p == 1.0 {
                    if j == 1 {
                        1.0
                    } else {
                        0.0
                    }
                } else {
                    p * (1.0 - p).powf((j - 1) as f64)
                }
            }
            MoveDistribution::Uniform(k) => {
                if j <= *k {
                    1.0 / *k as f64
                } else {
                    0.0
                }
            }
            MoveDistribution::Dirac(k) => {
                if j == *k {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// `μ((a, ∞))`.
    pub fn tail_mass(&self, a: Letter) -> f64 {
        match self {
            MoveDistribution::FiniteSupport(f) => f.probs.iter().skip(a as usize).sum(),
            MoveDistribution::Geometric(p) => (1.0 - p).powf(a as f64),
            MoveDistribution::Uniform(k) => {
                if a >= *k {
                    0.0
                } else {
                    (*k - a) as f64 / *k as f64
                }
            }
            MoveDistribution::Dirac(k) => {
                if a >= *k {
                    0.0
                } else {
                    1.0
                }
            }
        }
    }

    pub fn min_support(&self) -> Letter {
        match self {
            MoveDistribution::FiniteSupport(f) => f
                .probs
                .iter()
                .position(|&q| q > 0.0)
                .map_or(1, |i| i as Letter + 1),
            MoveDistribution::Geometric(_) | MoveDistribution::Uniform(_) => 1,
            MoveDistribution::Dirac(k) => *k,
        }
    }

    /// Largest letter with positive mass, `None` when unbounded.
    pub fn max_support(&self) -> Option<Letter> {
        match self {
            MoveDistribution::FiniteSupport(f) => Some(f.probs.len() as Letter),
            MoveDistribution::Geometric(p) => (*p == 1.0).then_some(1),
            MoveDistribution::Uniform(k) | MoveDistribution::Dirac(k) => Some(*k),
        }
    }

    /// True iff the support has at least two elements.
    pub fn non_degenerate(&self) -> bool {
        match self {
            MoveDistribution::FiniteSupport(f) => f.probs.iter().filter(|&&q| q > 0.0).count() >= 2,
            MoveDistribution::Geometric(p) => *p < 1.0,
            MoveDistribution::Uniform(k) => *k >= 2,
            MoveDistribution::Dirac(_) => false,
        }
    }

    /// Letter drawn by inversion of the distribution function at `u ∈ (0, 1]`.
    pub fn quantile(&self, u: f64) -> Letter {
        match self {
            MoveDistribution::FiniteSupport(f) => {
                let i = f.cdf.partition_point(|&c| c < u);
                // Rounding in the cumulative sum can leave the last entry just below 1.
                let i = i.min(f.probs.len() - 1);
                i as Letter + 1
            }
            MoveDistribution::Geometric(p) => {
                if *p == 1.0 {
                    return 1;
                }
                let j = (u.ln() / (1.0 - p).ln()).ceil();
                if j >= Letter::MAX as f64 {
                    Letter::MAX
                } else {
                    (j as Letter).max(1)
                }
            }
            MoveDistribution::Uniform(k) => ((u * *k as f64).ceil() as Letter).clamp(1, *k),
            MoveDistribution::Dirac(k) => *k,
        }
    }

    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> Letter {
        match self {
            MoveDistribution::Dirac(k) => *k,
            _ => self.quantile(rng::unit(rng)),
        }
    }
}

/// The `geom:p`, `unif:k`, `dirac:k`, `finite:p1,p2,…` notation.
impl fmt::Display for MoveDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveDistribution::FiniteSupport(fs) => {
                write!(f, "finite:")?;
                for (i, q) in fs.probs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{q}")?;
                }
                Ok(())
            }
            MoveDistribution::Geometric(p) => write!(f, "geom:{p}"),
            MoveDistribution::Uniform(k) => write!(f, "unif:{k}"),
            MoveDistribution::Dirac(k) => write!(f, "dirac:{k}"),
        }
    }
}

impl FromStr for MoveDistribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected kind:argument, got {s:?}")))?;
        let int = |a: &str| -> Result<Letter> {
            a.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("expected a positive integer, got {a:?}")))
        };
        let float = |a: &str| -> Result<f64> {
            a.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("expected a number, got {a:?}")))
        };
        match kind.trim() {
            "geom" => Self::geometric(float(arg)?),
            "unif" => Self::uniform(int(arg)?),
            "dirac" => Self::dirac(int(arg)?),
            "finite" => {
                let probs = arg.split(',').map(float).collect::<Result<Vec<_>>>()?;
                Self::finite_from_probs(probs)
            }
            other => Err(Error::Parse(format!("unknown distribution kind {other:?}"))),
        }
    }
}

impl TryFrom<String> for MoveDistribution {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<MoveDistribution> for String {
    fn from(m: MoveDistribution) -> String {
        m.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pmf_values() {
        let g = MoveDistribution::geometric(0.5).unwrap();
        assert_eq!(g.pmf(2), 0.25);
        assert_eq!(MoveDistribution::geometric(1.0).unwrap().pmf(1), 1.0);
        assert_eq!(MoveDistribution::uniform(4).unwrap().pmf(3), 0.25);
        assert_eq!(MoveDistribution::uniform(4).unwrap().pmf(5), 0.0);
        assert_eq!(MoveDistribution::dirac(2).unwrap().pmf(1), 0.0);
        assert_eq!(MoveDistribution::dirac(2).unwrap().pmf(2), 1.0);
    }

    #[test]
    fn tails_match_pmf_sums() {
        let laws = [
            MoveDistribution::geometric(0.3).unwrap(),
            MoveDistribution::uniform(5).unwrap(),
            MoveDistribution::dirac(3).unwrap(),
            MoveDistribution::finite([(1, 0.2), (4, 0.5), (2, 0.3)]).unwrap(),
        ];
        for mu in &laws {
            for a in 0..8 {
                let head: f64 = (1..=a).map(|j| mu.pmf(j)).sum();
                assert!((head + mu.tail_mass(a) - 1.0).abs() < 1e-12, "{mu} a={a}");
            }
        }
    }

    #[test]
    fn degeneracy() {
        assert!(!MoveDistribution::dirac(3).unwrap().non_degenerate());
        assert!(!MoveDistribution::geometric(1.0).unwrap().non_degenerate());
        assert!(MoveDistribution::geometric(0.9).unwrap().non_degenerate());
        assert!(!MoveDistribution::uniform(1).unwrap().non_degenerate());
        assert!(MoveDistribution::uniform(2).unwrap().non_degenerate());
        assert!(!MoveDistribution::finite([(3, 1.0)])
            .unwrap()
            .non_degenerate());
        assert_eq!(
            MoveDistribution::finite([(3, 0.5), (5, 0.5)])
                .unwrap()
                .min_support(),
            3
        );
    }

    #[test]
    fn validation() {
        assert!(MoveDistribution::geometric(0.0).is_err());
        assert!(MoveDistribution::geometric(1.5).is_err());
        assert!(MoveDistribution::finite_from_probs(vec![0.5, 0.4]).is_err());
        assert!(MoveDistribution::finite_from_probs(vec![0.5, 0.5 + 1e-13]).is_ok());
        assert!(MoveDistribution::finite_from_probs(vec![1.5, -0.5]).is_err());
        assert!(MoveDistribution::uniform(0).is_err());
    }

    #[test]
    fn quantiles() {
        let g = MoveDistribution::geometric(0.5).unwrap();
        assert_eq!(g.quantile(1.0), 1);
        assert_eq!(g.quantile(0.5), 1);
        assert_eq!(g.quantile(0.49), 2);
        assert_eq!(g.quantile(0.25), 2);
        assert_eq!(g.quantile(0.24), 3);
        assert_eq!(
            MoveDistribution::geometric(1.0).unwrap().quantile(1e-300),
            1
        );
        let u = MoveDistribution::uniform(4).unwrap();
        assert_eq!(u.quantile(0.25), 1);
        assert_eq!(u.quantile(0.26), 2);
        assert_eq!(u.quantile(1.0), 4);
        let f = MoveDistribution::finite_from_probs(vec![0.25, 0.0, 0.75]).unwrap();
        assert_eq!(f.quantile(0.2), 1);
        assert_eq!(f.quantile(0.3), 3);
        assert_eq!(f.quantile(1.0), 3);
    }

    #[test]
    fn sampling() {
        let mut rng = rng::stream(11, 0);
        let d = MoveDistribution::dirac(3).unwrap();
        let g1 = MoveDistribution::geometric(1.0).unwrap();
        for _ in 0..1000 {
            assert_eq!(d.sample(&mut rng), 3);
            assert_eq!(g1.sample(&mut rng), 1);
        }
        let u = MoveDistribution::uniform(2).unwrap();
        let n = 1_000_000;
        let ones = (0..n).filter(|_| u.sample(&mut rng) == 1).count();
        let freq = ones as f64 / n as f64;
        assert!((0.498..=0.502).contains(&freq), "{freq}");
    }

    #[test]
    fn notation_round_trip() {
        for s in ["geom:0.5", "unif:3", "dirac:2", "finite:0.25,0,0.75"] {
            let mu: MoveDistribution = s.parse().unwrap();
            assert_eq!(mu.to_string(), s);
        }
        assert!("poisson:2".parse::<MoveDistribution>().is_err());
        assert!("geom".parse::<MoveDistribution>().is_err());
    }
}
