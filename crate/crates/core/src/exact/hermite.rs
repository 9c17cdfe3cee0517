use crate::error::{Error, Result};
use crate::numerics::tridiagonal_eigenvalues;

/// Overflow guard for the unscaled recurrence.
const RESCALE_ABOVE: f64 = 1e100;

/// Orthonormal Hermite functions `phi_0..phi_{n-1}` at `t`, up to a common
/// factor `exp(log_scale)`. Never underflows, even far in the tails.
pub(crate) fn hermite_functions_scaled(n: usize, t: f64) -> (Vec<f64>, f64) {
    let mut values = vec![0.0; n];
    if n == 0 {
        return (values, 0.0);
    }
    // phi_0 = pi^(-1/4) exp(-t²/2); the Gaussian goes into the log scale.
    let mut log_scale = -0.5 * t * t;
    values[0] = std::f64::consts::PI.powf(-0.25);
    if n > 1 {
        values[1] = std::f64::consts::SQRT_2 * t * values[0];
    }
    for k in 1..n.saturating_sub(1) {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * t * values[k] - (kf / (kf + 1.0)).sqrt() * values[k - 1];
        values[k + 1] = next;
        if next.abs() > RESCALE_ABOVE {
            for v in values[..=k + 1].iter_mut() {
                *v /= RESCALE_ABOVE;
            }
            log_scale += RESCALE_ABOVE.ln();
        }
    }
    (values, log_scale)
}

/// Orthonormal Hermite functions `phi_k(t)`, `k < n`.
pub fn hermite_functions(n: usize, t: f64) -> Vec<f64> {
    let (mut values, log_scale) = hermite_functions_scaled(n, t);
    let factor = log_scale.exp();
    for v in values.iter_mut() {
        *v *= factor;
    }
    values
}

/// Gauss–Hermite rule of even order `q` in function form: the positive nodes
/// `t_i` and, for each, the first `n` Hermite functions divided by
/// `sqrt(sum_{k<q} phi_k(t_i)²)`.
///
/// With these rows, `∫ phi_j phi_k f dt ≈ 2 Σ_i psi_ij psi_ik f(t_i)` for even `f`.
pub(crate) struct HermiteRule {
    pub nodes: Vec<f64>,
    pub rows: Vec<Vec<f64>>,
}

impl HermiteRule {
    pub fn new(n: usize, q: usize) -> Result<Self> {
        if q % 2 != 0 || q < n {
            return Err(Error::InvalidParameter(format!(
                "Gauss-Hermite order must be even and at least {n}, got {q}"
            )));
        }
        let diag = vec![0.0; q];
        let off: Vec<f64> = (1..q).map(|k| (k as f64 / 2.0).sqrt()).collect();
        let mut nodes = tridiagonal_eigenvalues(&diag, &off)?;
        nodes.retain(|&t| t > 0.0);
        nodes.sort_by(f64::total_cmp);
        if nodes.len() != q / 2 {
            return Err(Error::InvalidParameter(format!(
                "Gauss-Hermite rule of order {q} produced {} positive nodes",
                nodes.len()
            )));
        }
        let rows = nodes
            .iter()
            .map(|&t| {
                let (values, _) = hermite_functions_scaled(q, t);
                let inv = values.iter().map(|v| v * v).sum::<f64>().sqrt().recip();
                values[..n].iter().map(|v| v * inv).collect()
            })
            .collect();
        Ok(Self { nodes, rows })
    }

    /// Largest deviation of the rule's overlap matrix from the identity over
    /// the top few basis functions, which are the hardest to integrate.
    pub fn overlap_residual(&self, n: usize) -> f64 {
        let mut worst: f64 = 0.0;
        for j in n.saturating_sub(4)..n {
            for k in j..n {
                if (j + k) % 2 == 1 {
                    continue;
                }
                let s: f64 = self.rows.iter().map(|r| 2.0 * r[j] * r[k]).sum();
                let target = if j == k { 1.0 } else { 0.0 };
                worst = worst.max((s - target).abs());
            }
        }
        worst
    }
}
