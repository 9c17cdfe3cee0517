//! Semiclassical ground splitting in Garg's form,
//! `dE1 = (hbar omega / sqrt(e pi)) exp(-S)`, with `S` the under-barrier action
//! at the harmonic ground level of the well.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::MeanField;
use crate::numerics::{find_root_bracketed, Integrator};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WkbOptions {
    /// Width of the turning-point subtraction window, as a fraction of the
    /// inner turning point.
    pub window_fraction: f64,
}

impl Default for WkbOptions {
    fn default() -> Self {
        Self { window_fraction: 0.1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WkbResult {
    /// `dE1 / E_u`
    pub splitting: f64,
    pub turning_points: (f64, f64),
    /// `S = ∫ sqrt(dV - E) dx` between the turning points.
    pub action: f64,
    /// `hbar omega / E_u`
    pub well_frequency: f64,
    /// Level `E = dV(x_min) + hbar omega / 2` used for the turning points.
    pub energy: f64,
}

pub fn wkb_splitting<F: Fn(f64) -> f64>(delta_v: F, curvature_at_min: f64, x_min: f64) -> Result<WkbResult> {
    wkb_splitting_with(delta_v, curvature_at_min, x_min, &WkbOptions::default())
}

pub fn wkb_splitting_with<F: Fn(f64) -> f64>(
    delta_v: F,
    curvature_at_min: f64,
    x_min: f64,
    opts: &WkbOptions,
) -> Result<WkbResult> {
    if !(curvature_at_min > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "well curvature must be positive, got {curvature_at_min}"
        )));
    }
    if !(x_min > 0.0) {
        return Err(Error::InvalidParameter(format!("well minimum must be positive, got {x_min}")));
    }
    if !(opts.window_fraction > 0.0 && opts.window_fraction < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "window fraction must lie in (0, 1), got {}",
            opts.window_fraction
        )));
    }
    // -d² + V'' x²/2 has level spacing sqrt(2 V'').
    let omega = (2.0 * curvature_at_min).sqrt();
    let energy = delta_v(x_min) + 0.5 * omega;
    let top = delta_v(0.0);
    if top <= energy {
        return Err(Error::WkbInapplicable(format!(
            "barrier top {top} lies below the ground level {energy}"
        )));
    }
    let excess = |x: f64| delta_v(x) - energy;
    let a = find_root_bracketed(excess, 0.0, x_min, 1e-15 * x_min.max(1.0))?;

    // Near `a` the integrand behaves like sqrt(|V'(a)| (a - x)); subtracting
    // that on [a - delta, a] leaves a remainder with a bounded derivative.
    let h = 1e-6 * a;
    let slope = ((delta_v(a + h) - delta_v(a - h)) / (2.0 * h)).abs();
    let delta = opts.window_fraction * a;
    let quad = Integrator::new(1e-300, 1e-12);
    let root = |x: f64| excess(x).max(0.0).sqrt();
    let bulk = quad.integrate(root, 0.0, a - delta)?.value;
    let remainder = quad
        .integrate(|x| root(x) - (slope * (a - x)).sqrt(), a - delta, a)?
        .value;
    let analytic = 2.0 / 3.0 * slope.sqrt() * delta.powf(1.5);
    let action = 2.0 * (bulk + remainder + analytic);

    let prefactor = omega / (std::f64::consts::E * std::f64::consts::PI).sqrt();
    Ok(WkbResult {
        splitting: prefactor * (-action).exp(),
        turning_points: (-a, a),
        action,
        well_frequency: omega,
        energy,
    })
}

/// WKB splitting of a mean-field model's quantum potential. The well bottom is
/// refined to the minimum of `dV` near the mean-field minimum.
pub fn wkb_splitting_for<M: MeanField + ?Sized>(view: &M, opts: &WkbOptions) -> Result<WkbResult> {
    let xm = view.minimum();
    let slope = |x: f64| view.quantum_potential_slope(x);
    let x_min = if slope(0.5 * xm) < 0.0 && slope(1.5 * xm) > 0.0 {
        find_root_bracketed(slope, 0.5 * xm, 1.5 * xm, 1e-14)?
    } else {
        xm
    };
    wkb_splitting_with(|x| view.quantum_potential(x), view.well_curvature(), x_min, opts)
}
