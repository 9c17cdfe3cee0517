//! Equilibrium-distribution models and the map from a mean-field potential to
//! the ground-shifted quantum potential.
//!
//! Everything is expressed in reduced units: lengths in units of the
//! Gaussian-center (or well) separation scale `x0`, energies in
//! `E_u = hbar^2 / (2 m x0^2)`, and mean-field potentials in units of `k_B T`.
//! In these units the shifted Hamiltonian is `-d²/dx² + dV(x)` and
//! `hbar * 2D = 2`.

mod profile;
mod quartic;
mod two_gaussian;

pub use profile::{linspace, PotentialProfile, ProfileKind};
pub use quartic::{quartic_meanfield, QuarticModel};
pub use two_gaussian::{
    alpha_two_minima_limit, solve_parameters, BarrierHeights, ModelWarning, TwoGaussianModel,
    DEFAULT_MAX_SIGMA_RATIO, SUPERPOSITION_LIMIT,
};

use crate::numerics::{derivative_central, DerivativeOrder};

/// A symmetric bistable mean-field potential `U(x)` together with its
/// normalized Boltzmann density `rho_eq ∝ exp(-U)`.
///
/// Implementors supply analytic derivatives; the quantum potential and its
/// slope follow from them.
pub trait MeanField: Send + Sync {
    /// `U(x)` in `k_B T` units.
    fn potential(&self, x: f64) -> f64;
    fn potential_d1(&self, x: f64) -> f64;
    fn potential_d2(&self, x: f64) -> f64;
    fn potential_d3(&self, x: f64) -> f64;

    /// Normalized equilibrium density.
    fn density(&self, x: f64) -> f64;

    /// Location `x_m > 0` of the right mean-field minimum.
    fn minimum(&self) -> f64;

    /// Symmetric interval outside which the density is negligible.
    fn support(&self) -> (f64, f64);

    /// `dV(x)/E_u = U'²/4 - U''/2`.
    fn quantum_potential(&self, x: f64) -> f64 {
        quantum_potential_from_meanfield(self, x)
    }

    /// `dV'(x) = U' U''/2 - U'''/2`.
    fn quantum_potential_slope(&self, x: f64) -> f64 {
        0.5 * (self.potential_d1(x) * self.potential_d2(x) - self.potential_d3(x))
    }

    /// `dV''` at the well minimum, used to size the oscillator basis and the
    /// WKB well frequency. Defaults to a central difference of the slope.
    fn well_curvature(&self) -> f64 {
        let h = 1e-5 * self.minimum().abs().max(1.0);
        derivative_central(
            |x| self.quantum_potential_slope(x),
            self.minimum(),
            DerivativeOrder::First,
            h,
        )
    }
}

/// Quantum potential generated by any mean-field potential through the ground
/// state `psi_0 = rho_eq^{1/2}`.
pub fn quantum_potential_from_meanfield<M: MeanField + ?Sized>(view: &M, x: f64) -> f64 {
    let d1 = view.potential_d1(x);
    0.25 * d1 * d1 - 0.5 * view.potential_d2(x)
}

/// Counts local minima of a quantum potential on a uniform grid from the
/// sign pattern of its slope (a `-` to `+` change marks a minimum).
pub fn count_minima<M: MeanField + ?Sized>(view: &M, lo: f64, hi: f64, points: usize) -> usize {
    let step = (hi - lo) / (points - 1) as f64;
    let slopes: Vec<f64> = (0..points)
        .map(|i| view.quantum_potential_slope(lo + step * i as f64))
        .filter(|s| *s != 0.0)
        .collect();
    slopes
        .windows(2)
        .filter(|w| w[0] < 0.0 && w[1] > 0.0)
        .count()
}

/// `ln(2 cosh u)` without overflow.
#[inline]
pub(crate) fn ln_two_cosh(u: f64) -> f64 {
    let a = u.abs();
    a + (-2.0 * a).exp().ln_1p()
}
