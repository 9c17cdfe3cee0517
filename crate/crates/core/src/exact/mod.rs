//! Lowest levels of `-d²/dx² + dV(x)` in a Hermite-function basis centered at
//! the origin, with the basis doubled until the splitting stops moving.

mod hermite;

pub use hermite::hermite_functions;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::MeanField;
use crate::numerics::{eig_symmetric_lowest, eigenvalues_symmetric, SymmetricMatrix};
use hermite::HermiteRule;

/// Largest tolerated deviation of the quadrature overlap matrix from identity.
const OVERLAP_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermiteBasis {
    n_basis: usize,
    length_scale: f64,
}

impl HermiteBasis {
    pub fn new(n_basis: usize, length_scale: f64) -> Result<Self> {
        if n_basis < 2 {
            return Err(Error::InvalidParameter(format!("basis needs at least 2 functions, got {n_basis}")));
        }
        if !(length_scale > 0.0 && length_scale.is_finite()) {
            return Err(Error::InvalidParameter(format!("length scale must be positive, got {length_scale}")));
        }
        Ok(Self { n_basis, length_scale })
    }

    /// Oscillator length matched to `-d² + curvature x²/2`.
    pub fn matched(n_basis: usize, curvature: f64) -> Result<Self> {
        if !(curvature > 0.0) {
            return Err(Error::InvalidParameter(format!("well curvature must be positive, got {curvature}")));
        }
        Self::new(n_basis, (0.5 * curvature).powf(-0.25))
    }

    /// Default scale `l = dV''^(-1/4)`: slightly narrower than the harmonic
    /// match, which keeps the far well resolved at moderate basis sizes.
    pub fn for_curvature(n_basis: usize, curvature: f64) -> Result<Self> {
        if !(curvature > 0.0) {
            return Err(Error::InvalidParameter(format!("well curvature must be positive, got {curvature}")));
        }
        Self::new(n_basis, curvature.powf(-0.25))
    }

    pub fn n_basis(&self) -> usize {
        self.n_basis
    }

    pub fn length_scale(&self) -> f64 {
        self.length_scale
    }

    pub fn center(&self) -> f64 {
        0.0
    }

    /// Gauss–Hermite order used for potential matrix elements.
    pub fn quadrature_order(&self) -> usize {
        2 * self.n_basis + 32
    }

    /// `sum_k c_k phi_k(x/l) / sqrt(l)`.
    pub fn evaluate(&self, coefficients: &[f64], x: f64) -> f64 {
        let phi = hermite_functions(coefficients.len(), x / self.length_scale);
        phi.iter().zip(coefficients).map(|(p, c)| p * c).sum::<f64>() / self.length_scale.sqrt()
    }
}

/// `(-d²/dt²)_{jk}` in the oscillator basis.
fn kinetic(j: usize, k: usize) -> f64 {
    let (lo, hi) = if j <= k { (j, k) } else { (k, j) };
    if lo == hi {
        lo as f64 + 0.5
    } else if hi == lo + 2 {
        -0.5 * (((lo + 1) * (lo + 2)) as f64).sqrt()
    } else {
        0.0
    }
}

/// Potential values at the positive quadrature nodes, mapped back to `x`.
fn sample_potential<F: Fn(f64) -> f64 + Sync>(delta_v: &F, rule: &HermiteRule, scale: f64) -> Result<Vec<f64>> {
    let values: Vec<f64> = rule.nodes.par_iter().map(|&t| delta_v(t * scale)).collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("potential on the quadrature support"));
    }
    Ok(values)
}

fn assemble<F>(indices: &[usize], rule: &HermiteRule, potential: &[f64], scale: f64, element: F) -> SymmetricMatrix
where
    F: Fn(usize, usize, f64) -> f64 + Sync,
{
    let inv_l2 = scale.powi(-2);
    let upper: Vec<Vec<f64>> = indices
        .par_iter()
        .enumerate()
        .map(|(a, &j)| {
            indices[a..]
                .iter()
                .map(|&k| {
                    let v: f64 = rule
                        .rows
                        .iter()
                        .zip(potential)
                        .map(|(row, p)| row[j] * row[k] * p)
                        .sum();
                    element(j, k, inv_l2 * kinetic(j, k) + v)
                })
                .collect()
        })
        .collect();
    SymmetricMatrix::from_upper_fn(indices.len(), |a, b| upper[a][b - a])
}

/// Full Hamiltonian matrix of `-d²/dx² + dV` for an even `dV`.
pub fn build_hamiltonian<F: Fn(f64) -> f64 + Sync>(delta_v: F, basis: &HermiteBasis) -> Result<SymmetricMatrix> {
    let n = basis.n_basis();
    let rule = HermiteRule::new(n, basis.quadrature_order())?;
    let residual = rule.overlap_residual(n);
    if residual > OVERLAP_TOLERANCE {
        return Err(Error::QuadratureOrderInsufficient(residual));
    }
    // The positive-node rule carries half of each even integrand.
    let doubled: Vec<f64> = sample_potential(&delta_v, &rule, basis.length_scale())?
        .iter()
        .map(|v| 2.0 * v)
        .collect();
    let indices: Vec<usize> = (0..n).collect();
    // Odd products vanish against an even potential.
    Ok(assemble(&indices, &rule, &doubled, basis.length_scale(), |j, k, value| {
        if (j + k) % 2 == 1 {
            0.0
        } else {
            value
        }
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExactOptions {
    pub tol_rel: f64,
    pub n_start: usize,
    pub n_max: usize,
    /// Keep the ground and first excited eigenvectors for reconstruction.
    pub compute_states: bool,
}

impl Default for ExactOptions {
    fn default() -> Self {
        Self {
            tol_rel: 1e-8,
            n_start: 64,
            n_max: 1024,
            compute_states: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceStep {
    pub n_basis: usize,
    pub splitting: f64,
    /// Unshifted lowest eigenvalue.
    pub ground: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactSpectrumResult {
    /// Levels relative to the ground level (`e0 = 0`).
    pub e0: f64,
    pub e1: f64,
    pub e2: f64,
    pub splitting: f64,
    /// Lowest eigenvalue before the shift; vanishes for an exact quantum potential.
    pub ground_offset: f64,
    pub n_basis_used: usize,
    pub converged: bool,
    pub convergence_history: Vec<ConvergenceStep>,
    pub length_scale: f64,
    #[serde(skip)]
    ground_coefficients: Vec<f64>,
    #[serde(skip)]
    excited_coefficients: Vec<f64>,
}

impl ExactSpectrumResult {
    /// `(e2 - e0) / (e1 - e0)`
    pub fn spectral_gap_ratio(&self) -> f64 {
        self.e2 / self.e1
    }

    fn basis(&self) -> HermiteBasis {
        HermiteBasis {
            n_basis: self.ground_coefficients.len(),
            length_scale: self.length_scale,
        }
    }

    /// Whether eigenvectors were kept (see [`ExactOptions::compute_states`]).
    pub fn has_states(&self) -> bool {
        !self.ground_coefficients.is_empty()
    }

    /// Reconstructed ground state, normalized and positive at the origin.
    /// Zero everywhere unless the states were computed.
    pub fn ground_state(&self, x: f64) -> f64 {
        self.basis().evaluate(&self.ground_coefficients, x)
    }

    /// Reconstructed first excited state, with `psi_1'(0) > 0`.
    pub fn first_excited_state(&self, x: f64) -> f64 {
        self.basis().evaluate(&self.excited_coefficients, x)
    }
}

struct Levels {
    even: Vec<f64>,
    odd: Vec<f64>,
    basis: HermiteBasis,
    blocks: [SymmetricMatrix; 2],
}

fn parity_levels<F: Fn(f64) -> f64 + Sync>(delta_v: &F, basis: &HermiteBasis) -> Result<Levels> {
    let n = basis.n_basis();
    let scale = basis.length_scale();
    let rule = HermiteRule::new(n, basis.quadrature_order())?;
    let residual = rule.overlap_residual(n);
    if residual > OVERLAP_TOLERANCE {
        return Err(Error::QuadratureOrderInsufficient(residual));
    }
    let doubled: Vec<f64> = sample_potential(delta_v, &rule, scale)?.iter().map(|v| 2.0 * v).collect();
    let block = |parity: usize| {
        let indices: Vec<usize> = (parity..n).step_by(2).collect();
        assemble(&indices, &rule, &doubled, scale, |_, _, v| v)
    };
    let blocks = [block(0), block(1)];
    let lowest = |h: &SymmetricMatrix| -> Result<Vec<f64>> {
        let mut values = eigenvalues_symmetric(h)?;
        values.truncate(2);
        Ok(values)
    };
    Ok(Levels {
        even: lowest(&blocks[0])?,
        odd: lowest(&blocks[1])?,
        basis: *basis,
        blocks,
    })
}

/// Ground and first excited coefficient vectors in the full basis.
fn parity_states(levels: &Levels) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = levels.basis.n_basis();
    let mut vectors = Vec::with_capacity(2);
    for (parity, h) in levels.blocks.iter().enumerate() {
        let pair = eig_symmetric_lowest(h, 1)?;
        let mut full = vec![0.0; n];
        for (k, c) in (parity..n).step_by(2).zip(&pair[0].vector) {
            full[k] = *c;
        }
        vectors.push(full);
    }
    let mut excited = vectors.pop().expect("odd block");
    let mut ground = vectors.pop().expect("even block");

    // Sign conventions: psi_0(0) > 0 and psi_1 rising through the origin.
    if levels.basis.evaluate(&ground, 0.0) < 0.0 {
        ground.iter_mut().for_each(|c| *c = -*c);
    }
    let slope: f64 = excited
        .iter()
        .enumerate()
        .filter(|(k, _)| k % 2 == 1)
        .map(|(k, c)| c * hermite_derivative_at_origin(k))
        .sum();
    if slope < 0.0 {
        excited.iter_mut().for_each(|c| *c = -*c);
    }
    Ok((ground, excited))
}

/// `phi_k'(0)` for odd `k`: `sqrt(2k) phi_{k-1}(0)`.
fn hermite_derivative_at_origin(k: usize) -> f64 {
    (2.0 * k as f64).sqrt() * hermite_functions(k, 0.0)[k - 1]
}

/// Converged lowest levels of `-d² + dV` with `dV` even.
///
/// `curvature` is `dV''` at the well minimum and sets the oscillator length.
pub fn exact_splitting<F: Fn(f64) -> f64 + Sync>(
    delta_v: F,
    curvature: f64,
    opts: &ExactOptions,
) -> Result<ExactSpectrumResult> {
    if opts.n_start < 4 || opts.n_max < opts.n_start {
        return Err(Error::InvalidParameter(format!(
            "basis sizes must satisfy 4 <= n_start <= n_max, got {} and {}",
            opts.n_start, opts.n_max
        )));
    }
    if !(opts.tol_rel > 0.0) {
        return Err(Error::InvalidParameter(format!("tol_rel must be positive, got {}", opts.tol_rel)));
    }
    let mut history: Vec<ConvergenceStep> = Vec::new();
    let mut n = opts.n_start;
    let mut converged = false;
    let levels = loop {
        let basis = HermiteBasis::for_curvature(n, curvature)?;
        let levels = parity_levels(&delta_v, &basis)?;
        let splitting = levels.odd[0] - levels.even[0];
        if !splitting.is_finite() {
            return Err(Error::NonFinite("exact splitting"));
        }
        if let Some(previous) = history.last() {
            converged = (splitting - previous.splitting).abs() <= opts.tol_rel * splitting.abs();
        }
        history.push(ConvergenceStep {
            n_basis: n,
            splitting,
            ground: levels.even[0],
        });
        if converged || n * 2 > opts.n_max {
            break levels;
        }
        n *= 2;
    };

    let (ground_coefficients, excited_coefficients) = if opts.compute_states {
        parity_states(&levels)?
    } else {
        (Vec::new(), Vec::new())
    };
    let basis = levels.basis;
    let ground = levels.even[0];
    let mut upper: Vec<f64> = levels.even[1..].iter().chain(&levels.odd[1..]).copied().collect();
    upper.sort_by(f64::total_cmp);
    let e1 = levels.odd[0] - ground;
    let e2 = upper.first().map_or(f64::NAN, |v| v - ground);
    Ok(ExactSpectrumResult {
        e0: 0.0,
        e1,
        e2,
        splitting: e1,
        ground_offset: ground,
        n_basis_used: basis.n_basis(),
        converged,
        convergence_history: history,
        length_scale: basis.length_scale(),
        ground_coefficients,
        excited_coefficients,
    })
}

/// [`exact_splitting`] on the quantum potential of a mean-field model.
pub fn exact_splitting_for<M: MeanField + ?Sized>(view: &M, opts: &ExactOptions) -> Result<ExactSpectrumResult> {
    exact_splitting(|x| view.quantum_potential(x), view.well_curvature(), opts)
}
