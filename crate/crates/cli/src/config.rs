use crate::error::{CliError, CliResult};
use crate::format::Format;
use num_rational::Ratio;
use std::path::PathBuf;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub r_max: Option<f64>,
    pub precision: Ratio<i64>,
    pub cache: PathBuf,
    pub format: Format,
    pub shards: usize,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            r_max: None,
            precision: cubic_core::exact::default_precision(),
            cache: PathBuf::from("cubic-census.cache"),
            format: Format::Csv,
            shards: 1,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn require_r_max(&self) -> CliResult<f64> {
        match self.r_max {
            Some(r) if r > 0.0 && r.is_finite() => Ok(r),
            Some(r) => Err(CliError::Usage(format!("--r-max must be positive, got {r}"))),
            None => Err(CliError::Usage("--r-max is required".into())),
        }
    }
}

/// Accepts `a/b`, decimals such as `0.001`, and `me-k` with integral `m`.
pub fn parse_precision(s: &str) -> CliResult<Ratio<i64>> {
    let bad = || CliError::Usage(format!("cannot read precision {s:?}; use a/b, 0.001 or 1e-12"));
    let q = if let Some((n, d)) = s.split_once('/') {
        let (n, d): (i64, i64) = (n.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?);
        if d == 0 {
            return Err(bad());
        }
        Ratio::new(n, d)
    } else if let Some((m, e)) = s.split_once(['e', 'E']) {
        let m: i64 = m.parse().map_err(|_| bad())?;
        let e: i32 = e.parse().map_err(|_| bad())?;
        if e >= 0 {
            return Err(bad());
        }
        let d = 10i64.checked_pow((-e) as u32).ok_or_else(bad)?;
        Ratio::new(m, d)
    } else if let Some((int, frac)) = s.split_once('.') {
        let d = 10i64.checked_pow(frac.len() as u32).ok_or_else(bad)?;
        let n: i64 = format!("{int}{frac}").parse().map_err(|_| bad())?;
        Ratio::new(n, d)
    } else {
        Ratio::from(s.parse::<i64>().map_err(|_| bad())?)
    };
    if q <= Ratio::from(0) || q >= Ratio::from(1) {
        return Err(CliError::Usage(format!("precision {s} must lie in (0, 1)")));
    }
    Ok(q)
}

/// Comma-separated reals; `e^k` stands for `exp(k)`. An empty string is an
/// empty list.
pub fn parse_list(s: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let v = match t.strip_prefix("e^") {
                Some(k) => k.parse::<f64>().map(f64::exp),
                None => t.parse::<f64>(),
            };
            v.map_err(|_| CliError::Usage(format!("cannot read number {t:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_forms() {
        assert_eq!(parse_precision("1/1000").unwrap(), Ratio::new(1, 1000));
        assert_eq!(parse_precision("1e-12").unwrap(), Ratio::new(1, 1_000_000_000_000));
        assert_eq!(parse_precision("0.25").unwrap(), Ratio::new(1, 4));
        assert!(parse_precision("2").is_err());
        assert!(parse_precision("abc").is_err());
        assert!(parse_precision("1e-30").is_err());
    }

    #[test]
    fn lists() {
        assert_eq!(parse_list("0.5, 1,2").unwrap(), vec![0.5, 1.0, 2.0]);
        assert_eq!(parse_list("").unwrap(), Vec::<f64>::new());
        assert_eq!(parse_list("e^0").unwrap(), vec![1.0]);
        assert!(parse_list("x").is_err());
    }
}
