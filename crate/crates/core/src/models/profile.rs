use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileKind {
    /// `dV(x)` in `E_u` units (possibly rescaled, see the label).
    Quantum,
    /// `U(x)` in `k_B T` units.
    MeanField,
}

/// Tabulated potential on a strictly increasing grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PotentialProfile {
    pub kind: ProfileKind,
    pub label: String,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
}

impl PotentialProfile {
    pub fn new(kind: ProfileKind, label: impl Into<String>, grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::InvalidParameter(format!(
                "profile grid has {} points but {} values",
                grid.len(),
                values.len()
            )));
        }
        if grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidParameter("profile grid must be strictly increasing".into()));
        }
        Ok(Self {
            kind,
            label: label.into(),
            grid,
            values,
        })
    }

    pub fn tabulate<F: Fn(f64) -> f64>(
        kind: ProfileKind,
        label: impl Into<String>,
        grid: &[f64],
        f: F,
    ) -> Result<Self> {
        let values = grid.iter().map(|&x| f(x)).collect();
        Self::new(kind, label, grid.to_vec(), values)
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }
}

/// `n` equally spaced points on `[start, stop]`.
pub fn linspace(start: f64, stop: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (stop - start) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { stop } else { start + step * i as f64 })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_increasing_grid() {
        assert!(PotentialProfile::new(ProfileKind::Quantum, "x", vec![0.0, 0.0], vec![1.0, 2.0]).is_err());
        assert!(PotentialProfile::new(ProfileKind::Quantum, "x", vec![0.0, 1.0], vec![1.0]).is_err());
    }

    #[test]
    fn linspace_endpoints_exact() {
        let g = linspace(-1.5, 1.5, 601);
        assert_eq!(g.len(), 601);
        assert_eq!(g[0], -1.5);
        assert_eq!(g[600], 1.5);
        assert!((g[300]).abs() < 1e-15);
    }
}
