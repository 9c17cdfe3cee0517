use crate::error::Result;
use crate::models::{quartic_meanfield, MeanField, PotentialProfile, ProfileKind, TwoGaussianModel};

use super::table1::{TABLE1_ALPHAS, TABLE1_DELTA_V};

/// Barriers of the quartic family showing the emergence of a third minimum.
pub const QUARTIC_BARRIERS: [f64; 4] = [0.5, 1.0, 2.5, 5.0];
/// Width ratios of the `alpha = 1` shape comparison.
pub const SHAPE_SIGMA_RATIOS: [f64; 4] = [0.2, 0.3, 0.4, 0.5];

/// Quartic-model quantum potentials `dV/dU`.
pub fn quartic_profiles(grid: &[f64], barriers: &[f64]) -> Result<Vec<PotentialProfile>> {
    barriers
        .iter()
        .map(|&du| {
            let m = quartic_meanfield(du)?;
            PotentialProfile::tabulate(ProfileKind::Quantum, format!("dV/dU at dU={du}"), grid, |x| {
                m.quantum_potential(x) / du
            })
        })
        .collect()
}

/// `U`, `dV` and their single-lobe parabolas for one two-Gaussian model.
pub fn potential_pair(model: &TwoGaussianModel, grid: &[f64]) -> Result<Vec<PotentialProfile>> {
    Ok(vec![
        PotentialProfile::tabulate(ProfileKind::MeanField, "U", grid, |x| model.potential(x))?,
        PotentialProfile::tabulate(ProfileKind::MeanField, "U parabola", grid, |x| model.meanfield_parabola(x))?,
        PotentialProfile::tabulate(ProfileKind::Quantum, "dV", grid, |x| model.quantum_potential(x))?,
        PotentialProfile::tabulate(ProfileKind::Quantum, "dV parabola", grid, |x| model.quantum_parabola(x))?,
    ])
}

/// `alpha = 1` quantum potentials measured from the well bottom and scaled by `dV`.
pub fn shape_profiles(grid: &[f64], sigma_ratios: &[f64]) -> Result<Vec<PotentialProfile>> {
    sigma_ratios
        .iter()
        .map(|&s| {
            let m = TwoGaussianModel::new_unrestricted(1.0, s, 1.0)?;
            let bottom = m.quantum_potential(1.0);
            let dv = m.barrier_heights().quantum;
            PotentialProfile::tabulate(ProfileKind::Quantum, format!("dV/dV0 at sigma/x0={s}"), grid, |x| {
                (m.quantum_potential(x) - bottom) / dv
            })
        })
        .collect()
}

/// Extended-model quantum potentials at the fixed barrier of the parameter table.
pub fn extended_profiles(grid: &[f64]) -> Result<Vec<PotentialProfile>> {
    TABLE1_ALPHAS
        .iter()
        .map(|&a| {
            let m = TwoGaussianModel::for_quantum_barrier(TABLE1_DELTA_V, a)?;
            PotentialProfile::tabulate(ProfileKind::Quantum, format!("dV at alpha={a}"), grid, |x| {
                m.quantum_potential(x)
            })
        })
        .collect()
}
