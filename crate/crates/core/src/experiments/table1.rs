use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::models::TwoGaussianModel;

/// Quantum barrier shared by every row.
pub const TABLE1_DELTA_V: f64 = 30.0;
pub const TABLE1_ALPHAS: [f64; 5] = [1.0, 1.5, 2.0, 2.5, 3.0];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub alpha: f64,
    pub sigma_ratio: f64,
    pub delta_u: f64,
    /// `dV''(0)` in `E_u/x0²`
    pub curvature_origin: f64,
    /// `dV''(±x0)` in `E_u/x0²`
    pub curvature_minima: f64,
    /// `w/x0`
    pub width: f64,
}

pub fn table1_row(delta_v: f64, alpha: f64) -> Result<Table1Row> {
    let m = TwoGaussianModel::for_quantum_barrier(delta_v, alpha)?;
    Ok(Table1Row {
        alpha,
        sigma_ratio: m.sigma_ratio(),
        delta_u: m.barrier_heights().mean_field,
        curvature_origin: m.curvature_at_origin(),
        curvature_minima: m.curvature_at_minima(),
        width: m.barrier_width()?,
    })
}

/// Parameter table of the extended model at `dV/E_u = 30`.
pub fn table1() -> Result<Vec<Table1Row>> {
    TABLE1_ALPHAS.iter().map(|&a| table1_row(TABLE1_DELTA_V, a)).collect()
}

/// Fixed-width text rendering at the printed precision of the original table.
pub fn format_table1(rows: &[Table1Row]) -> String {
    let mut out = format!(
        "{:>5} {:>8} {:>6} {:>8} {:>9} {:>6}\n",
        "alpha", "sigma/x0", "dU", "V''(0)", "V''(±x0)", "w/x0"
    );
    for r in rows {
        out.push_str(&format!(
            "{:>5} {:>8.4} {:>6.2} {:>8.0} {:>9.0} {:>6.2}\n",
            r.alpha, r.sigma_ratio, r.delta_u, r.curvature_origin, r.curvature_minima, r.width
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_rows() {
        let rows = table1().unwrap();
        let text = format_table1(&rows);
        assert!(text.contains("0.3247"), "{text}");
        assert!(text.contains("-1124"));
        assert_eq!(text.lines().count(), 6);
    }

    #[test]
    fn minima_curvature_is_alpha_times_barrier() {
        for r in table1().unwrap() {
            assert!((r.curvature_minima - 30.0 * r.alpha).abs() < 1e-9);
        }
    }
}
