use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::census::Census;
use crate::series::tree::Truncation;

/// One row of the growth-rate curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub p: f64,
    pub lower: f64,
    pub upper: f64,
    pub max_len: usize,
    pub max_letter: u32,
    pub rounding_bound: f64,
}

/// Brackets on `C(p)` for every `p` of the grid, from a single enumeration.
/// Pruning keeps a node when its weight reaches `trunc.min_weight` for at
/// least one grid point.
pub fn curve(p_grid: &[f64], trunc: Truncation) -> Result<Vec<CurveRow>> {
    if let Some(&p) = p_grid.iter().find(|&&p| !(p > 0.0 && p <= 1.0)) {
        return Err(Error::InvalidParameter(format!(
            "curve points must lie in (0, 1], got {p}"
        )));
    }
    let points: Vec<(f64, f64)> = p_grid.iter().map(|&p| (p, 1.0 - p)).collect();
    let census = Census::build(trunc, &points)?;
    Ok(p_grid
        .iter()
        .map(|&p| {
            let s = census.evaluate(p, 1.0 - p);
            CurveRow {
                p,
                lower: s.good,
                upper: 1.0 - s.bad,
                max_len: trunc.max_len,
                max_letter: trunc.max_letter,
                rounding_bound: s.rounding_bound,
            }
        })
        .collect())
}

/// Partial sum of `D(p, q)` over the minimal good words found, with the
/// monomial mass of the unexplored frontier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BivariatePartial {
    pub lower: f64,
    pub frontier: f64,
    pub rounding_bound: f64,
}

pub fn bivariate_d(p: f64, q: f64, trunc: Truncation) -> Result<BivariatePartial> {
    if !(p >= 0.0 && q >= 0.0 && p.is_finite() && q.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "D(p, q) needs finite p, q >= 0, got ({p}, {q})"
        )));
    }
    let census = Census::build(trunc, &[(p, q)])?;
    let s = census.evaluate(p, q);
    Ok(BivariatePartial {
        lower: s.good,
        frontier: s.frontier,
        rounding_bound: s.rounding_bound,
    })
}

/// Parses `start:stop:step` (inclusive of `stop` up to rounding) or a comma
/// list.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let num = |s: &str| -> Result<f64> {
        s.trim()
            .parse()
            .map_err(|_| Error::Parse(format!("expected a number, got {s:?}")))
    };
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        [start, stop, step] => {
            let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
            if !(step > 0.0) || stop < start {
                return Err(Error::Parse(format!("bad grid {spec:?}")));
            }
            let n = ((stop - start) / step + 1e-9).floor() as usize;
            // Rounded to 12 decimals so that 0.1:1.0:0.1 yields 0.3, not 0.30000000000000004.
            Ok((0..=n)
                .map(|i| ((start + i as f64 * step) * 1e12).round() / 1e12)
                .collect())
        }
        [_] => spec.split(',').map(num).collect(),
        _ => Err(Error::Parse(format!("bad grid {spec:?}"))),
    }
}
