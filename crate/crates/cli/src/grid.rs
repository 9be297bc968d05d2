//! Parsing of sweep ranges and coordinate lists.

use besov_core::ExtExponent;

use crate::UsageError;

/// `x`, `x1,x2,...` or `lo:hi:n` (n equally spaced values, endpoints included).
pub fn parse_range(text: &str) -> Result<Vec<f64>, UsageError> {
    let bad = || UsageError(format!("bad range {text:?}, expected x, a list, or lo:hi:n"));
    if text.contains(',') {
        return text.split(',').map(parse_real).collect();
    }
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [x] => Ok(vec![parse_real(x)?]),
        [lo, hi, n] => {
            let (lo, hi) = (parse_real(lo)?, parse_real(hi)?);
            let n: usize = n.trim().parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            if n == 1 {
                return Ok(vec![lo]);
            }
            Ok((0..n)
                .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
                .collect())
        }
        _ => Err(bad()),
    }
}

/// Comma-separated exponents such as `1,2,inf`.
pub fn parse_exponents(text: &str) -> Result<Vec<ExtExponent>, UsageError> {
    text.split(',')
        .map(|s| s.parse::<ExtExponent>().map_err(|e| UsageError(e.to_string())))
        .collect()
}

pub fn parse_real(text: &str) -> Result<f64, UsageError> {
    let x: f64 = text
        .trim()
        .parse()
        .map_err(|_| UsageError(format!("cannot parse number {text:?}")))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(UsageError(format!("number must be finite, got {text:?}")))
    }
}

/// Comma-separated coordinates.
pub fn parse_point(text: &str, dim: usize) -> Result<Vec<f64>, UsageError> {
    let x: Vec<f64> = text.split(',').map(parse_real).collect::<Result<_, _>>()?;
    if x.len() != dim {
        return Err(UsageError(format!(
            "point {text:?} has {} coordinates, expected {dim}",
            x.len()
        )));
    }
    Ok(x)
}
