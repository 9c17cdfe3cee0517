use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::models::linspace;

/// Inclusive range `start:stop:n` with `n` equally spaced points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub n_points: usize,
}

impl GridSpec {
    pub fn new(start: f64, stop: f64, n_points: usize) -> Result<Self, Error> {
        if !(start.is_finite() && stop.is_finite()) {
            return Err(Error::InvalidParameter("grid bounds must be finite".into()));
        }
        if n_points < 2 {
            return Err(Error::InvalidParameter(format!("grid needs at least 2 points, got {n_points}")));
        }
        if !(stop > start) {
            return Err(Error::InvalidParameter(format!("grid must be increasing, got {start}:{stop}")));
        }
        Ok(Self { start, stop, n_points })
    }

    pub fn points(&self) -> Vec<f64> {
        linspace(self.start, self.stop, self.n_points)
    }
}

impl FromStr for GridSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::InvalidParameter(format!("expected start:stop:n, got '{s}'"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let stop: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
        Self::new(start, stop, n)
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.n_points)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_round_trips() {
        let g: GridSpec = "-1.5:1.5:601".parse().unwrap();
        assert_eq!(g.points().len(), 601);
        assert_eq!(g.to_string().parse::<GridSpec>().unwrap(), g);
    }

    #[test]
    fn rejects_malformed() {
        for s in ["1:2", "a:2:3", "2:1:5", "0:1:1", "0:1:x"] {
            assert!(s.parse::<GridSpec>().is_err(), "{s}");
        }
    }
}
