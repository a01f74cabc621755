//! Text forms of points, vectors and identifiers.

use std::str::FromStr;

use crate::chart::ModelId;
use crate::error::{GeomError, Result};
use crate::metrics::Metric;

/// Parses comma-separated finite reals such as `"0.5,-1e-3"`.
pub fn parse_coords(s: &str) -> Result<Vec<f64>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(GeomError::Parse("empty coordinate list".into()));
    }
    s.split(',')
        .map(|part| {
            let part = part.trim();
            let value: f64 = part
                .parse()
                .map_err(|_| GeomError::Parse(format!("{part:?} is not a number")))?;
            if !value.is_finite() {
                return Err(GeomError::Parse(format!("{part:?} is not finite")));
            }
            Ok(value)
        })
        .collect()
}

/// Parses exactly `N` comma-separated reals.
pub fn parse_fixed<const N: usize>(s: &str) -> Result<[f64; N]> {
    let values = parse_coords(s)?;
    values
        .try_into()
        .map_err(|v: Vec<f64>| GeomError::Parse(format!("expected {N} coordinates, got {}", v.len())))
}

impl FromStr for ModelId {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        ModelId::ALL
            .into_iter()
            .find(|m| m.tag() == t)
            .ok_or_else(|| GeomError::Parse(format!("unknown model {s:?}")))
    }
}

impl FromStr for Metric {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        Metric::ALL
            .into_iter()
            .find(|m| m.to_string() == t)
            .ok_or_else(|| GeomError::Parse(format!("unknown metric {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates() {
        assert_eq!(parse_coords("0.5,0").unwrap(), vec![0.5, 0.0]);
        assert_eq!(parse_coords(" 1e-3 , -2 ,3").unwrap(), vec![1e-3, -2.0, 3.0]);
        assert!(parse_coords("").is_err());
        assert!(parse_coords("1,,2").is_err());
        assert!(parse_coords("nan,1").is_err());
        assert!(parse_coords("inf").is_err());
        assert_eq!(parse_fixed::<2>("1,2").unwrap(), [1.0, 2.0]);
        assert!(parse_fixed::<2>("1,2,3").is_err());
    }

    #[test]
    fn identifiers() {
        for m in ModelId::ALL {
            assert_eq!(m.tag().parse::<ModelId>().unwrap(), m);
        }
        assert!("klein".parse::<ModelId>().is_err());
        for m in Metric::ALL {
            assert_eq!(m.to_string().parse::<Metric>().unwrap(), m);
        }
    }
}
