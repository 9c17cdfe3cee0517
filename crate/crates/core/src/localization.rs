//! Splitting estimate from the step-like localization function
//! `g(x) = I⁻¹ ∫₀ˣ dy/rho_eq(y)` (clamped to `±1` beyond `±x_m`).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::MeanField;
use crate::numerics::{find_root_bracketed, Integrator};

/// Panels of the cumulative `1/rho_eq` table on `[0, x_m]`.
const CACHE_PANELS: usize = 256;
/// Density ratio below which the normalization integrand is dropped.
const TAIL_CUTOFF: f64 = 1e-18;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalizationResult {
    /// `dE1^g / E_u`
    pub splitting: f64,
    /// `I` in `x0` units
    pub i_integral: f64,
    /// `<g|rho_eq|g>`
    pub norm: f64,
    /// Optional `(x, g(x))` table.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_samples: Option<Vec<[f64; 2]>>,
}

fn integrator() -> Integrator {
    Integrator::new(1e-300, 1e-12)
}

/// Integral that keeps the best estimate when the subdivision budget runs out.
fn integrate_lenient<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    match integrator().integrate(f, a, b) {
        Ok(r) => r.value,
        Err(Error::QuadratureNonConvergence { estimate, .. }) => estimate,
        Err(_) => f64::NAN,
    }
}

/// `I = ∫₀^{x_m} dy / rho_eq(y)`.
pub fn i_integral<M: MeanField + ?Sized>(view: &M) -> Result<f64> {
    let xm = view.minimum();
    if !(xm > 0.0) {
        return Err(Error::InvalidParameter(format!("well minimum must be positive, got {xm}")));
    }
    let value = integrator().integrate(|y| view.density(y).recip(), 0.0, xm)?.value;
    if !(value.is_finite() && value > 0.0) {
        return Err(Error::NonFinite("localization integral I"));
    }
    Ok(value)
}

/// Direct evaluation of `g(x)` given `I`.
pub fn localization_g<M: MeanField + ?Sized>(view: &M, x: f64, i: f64) -> f64 {
    let xm = view.minimum();
    if x >= xm {
        1.0
    } else if x <= -xm {
        -1.0
    } else {
        integrate_lenient(|y| view.density(y).recip(), 0.0, x) / i
    }
}

/// `g` backed by a cumulative table of `∫ dy/rho_eq`, built once and read-only
/// afterwards.
pub struct LocalizationFunction<'a, M: MeanField + ?Sized> {
    view: &'a M,
    x_m: f64,
    i: f64,
    step: f64,
    cumulative: Vec<f64>,
}

impl<'a, M: MeanField + ?Sized> LocalizationFunction<'a, M> {
    pub fn new(view: &'a M) -> Result<Self> {
        let x_m = view.minimum();
        if !(x_m > 0.0) {
            return Err(Error::InvalidParameter(format!("well minimum must be positive, got {x_m}")));
        }
        let step = x_m / CACHE_PANELS as f64;
        let quad = integrator();
        let mut cumulative = Vec::with_capacity(CACHE_PANELS + 1);
        cumulative.push(0.0);
        let mut total = 0.0;
        for k in 0..CACHE_PANELS {
            let a = step * k as f64;
            let b = if k + 1 == CACHE_PANELS { x_m } else { a + step };
            total += quad.integrate(|y| view.density(y).recip(), a, b)?.value;
            cumulative.push(total);
        }
        if !(total.is_finite() && total > 0.0) {
            return Err(Error::NonFinite("localization integral I"));
        }
        Ok(Self {
            view,
            x_m,
            i: total,
            step,
            cumulative,
        })
    }

    pub fn i_integral(&self) -> f64 {
        self.i
    }

    pub fn x_m(&self) -> f64 {
        self.x_m
    }

    pub fn eval(&self, x: f64) -> f64 {
        let a = x.abs();
        if a >= self.x_m {
            return x.signum();
        }
        let k = ((a / self.step) as usize).min(CACHE_PANELS - 1);
        let node = self.step * k as f64;
        let partial = integrate_lenient(|y| self.view.density(y).recip(), node, a);
        x.signum() * (self.cumulative[k] + partial) / self.i
    }
}

/// Point beyond `x_m` where the density has fallen below the tail cutoff.
fn truncation_point<M: MeanField + ?Sized>(view: &M, x_m: f64) -> Result<f64> {
    let peak = view.density(x_m);
    let level = (TAIL_CUTOFF * peak).ln();
    let f = |x: f64| view.density(x).ln() - level;
    let (_, support_hi) = view.support();
    let mut width = (support_hi - x_m).max(0.5);
    let mut hi = x_m + width;
    while f(hi) > 0.0 {
        width *= 2.0;
        hi = x_m + width;
        if width > 1e6 {
            return Err(Error::NonFinite("density tail"));
        }
    }
    find_root_bracketed(f, x_m, hi, 1e-10)
}

/// Localization-function estimate `dE1^g / E_u = 2 / (I <g|rho_eq|g>)`.
pub fn splitting_localization<M: MeanField + ?Sized>(view: &M) -> Result<LocalizationResult> {
    let g = LocalizationFunction::new(view)?;
    let x_m = g.x_m();
    let hi = truncation_point(view, x_m)?;
    let quad = integrator();
    let inner = quad
        .integrate(
            |x| {
                let gx = g.eval(x);
                gx * gx * view.density(x)
            },
            0.0,
            x_m,
        )?
        .value;
    let outer = quad.integrate(|x| view.density(x), x_m, hi)?.value;
    let norm = 2.0 * (inner + outer);
    if !(norm > 0.0 && norm.is_finite()) {
        return Err(Error::NonFinite("localization norm"));
    }
    let i = g.i_integral();
    Ok(LocalizationResult {
        splitting: 2.0 / (i * norm),
        i_integral: i,
        norm,
        g_samples: None,
    })
}

/// As [`splitting_localization`], also tabulating `g` on `grid`.
pub fn splitting_localization_sampled<M: MeanField + ?Sized>(
    view: &M,
    grid: &[f64],
) -> Result<LocalizationResult> {
    let mut result = splitting_localization(view)?;
    let g = LocalizationFunction::new(view)?;
    result.g_samples = Some(grid.iter().map(|&x| [x, g.eval(x)]).collect());
    Ok(result)
}
