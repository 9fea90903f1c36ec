use anyhow::{bail, Context, Result};
use infbin::MoveDistribution;

/// Parses a law. `finite:` probabilities summing to within 1e-3 of one are
/// rescaled, with a warning; anything further off is rejected.
pub fn parse_mu(spec: &str) -> Result<(MoveDistribution, Option<String>)> {
    if let Some(rest) = spec.strip_prefix("finite:") {
        let probs: Vec<f64> = rest
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .with_context(|| format!("bad probabilities in {spec:?}"))?;
        let sum: f64 = probs.iter().sum();
        if !(0.999..=1.001).contains(&sum) {
            bail!("probabilities in {spec:?} sum to {sum}, not 1");
        }
        let mut warning = None;
        let probs = if (sum - 1.0).abs() > 1e-12 {
            warning = Some(format!("probabilities sum to {sum}; rescaled to 1"));
            probs.iter().map(|p| p / sum).collect()
        } else {
            probs
        };
        return Ok((MoveDistribution::finite_from_probs(probs)?, warning));
    }
    Ok((spec.parse()?, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalisation() {
        let (mu, w) = parse_mu("finite:0.5,0.5005").unwrap();
        assert!(w.is_some());
        assert!((mu.pmf(1) + mu.pmf(2) - 1.0).abs() < 1e-12);
        let (_, w) = parse_mu("finite:0.25,0.75").unwrap();
        assert!(w.is_none());
        assert!(parse_mu("finite:0.5,0.6").is_err());
        assert!(parse_mu("geom:0.3").is_ok());
        assert!(parse_mu("poisson:2").is_err());
    }
}
