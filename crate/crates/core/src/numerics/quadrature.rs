//! Adaptive Gauss–Kronrod (7/15) quadrature with global bisection.
//!
//! The interval with the largest error estimate is split until the summed
//! estimate satisfies `max(abs_tol, rel_tol * |value|)`. The per-panel error is
//! the raw Kronrod–Gauss difference, which over-estimates the error of the
//! Kronrod value and keeps the stopping rule conservative.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Kronrod abscissae on [0, 1]; the odd-indexed entries are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// Absolute error estimate, always non-negative.
    pub error_estimate: f64,
    /// Number of integrand evaluations.
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Panel> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).abs();
    if !value.is_finite() || !error.is_finite() {
        return Err(Error::NonFinite("quadrature integrand"));
    }
    Ok(Panel { a, b, value, error })
}

/// Reusable adaptive integrator.
#[derive(Debug, Clone, Copy)]
pub struct Integrator {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for Integrator {
    fn default() -> Self {
        Self {
            abs_tol: 1e-14,
            rel_tol: 1e-12,
            max_subdivisions: 4000,
        }
    }
}

impl Integrator {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Self {
        Self {
            abs_tol,
            rel_tol,
            ..Self::default()
        }
    }

    pub fn with_max_subdivisions(mut self, max_subdivisions: usize) -> Self {
        self.max_subdivisions = max_subdivisions;
        self
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> Result<QuadratureResult> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "integration limits must be finite, got [{a}, {b}]"
            )));
        }
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::InvalidParameter("quadrature tolerances must be positive".into()));
        }
        if a == b {
            return Ok(QuadratureResult {
                value: 0.0,
                error_estimate: 0.0,
                evaluations: 1,
            });
        }
        if a > b {
            let r = self.integrate(f, b, a)?;
            return Ok(QuadratureResult {
                value: -r.value,
                ..r
            });
        }

        let first = kronrod15(&f, a, b)?;
        let mut evaluations = 15;
        let mut total = first.value;
        let mut total_err = first.error;
        let mut heap = BinaryHeap::new();
        // Panels too narrow to split further keep their contribution here.
        let mut frozen: Vec<Panel> = Vec::new();
        heap.push(first);

        let mut subdivisions = 0;
        let (value, error_estimate) = loop {
            while total_err > self.abs_tol.max(self.rel_tol * total.abs()) {
                let Some(worst) = heap.pop() else { break };
                let mid = 0.5 * (worst.a + worst.b);
                if mid <= worst.a || mid >= worst.b {
                    frozen.push(worst);
                    continue;
                }
                if subdivisions >= self.max_subdivisions {
                    heap.push(worst);
                    break;
                }
                let left = kronrod15(&f, worst.a, mid)?;
                let right = kronrod15(&f, mid, worst.b)?;
                evaluations += 30;
                subdivisions += 1;
                total += left.value + right.value - worst.value;
                total_err += left.error + right.error - worst.error;
                heap.push(left);
                heap.push(right);
            }
            // Re-sum to shed the drift of the incremental updates.
            let panels = || heap.iter().chain(frozen.iter());
            let value: f64 = panels().map(|p| p.value).sum();
            let error: f64 = panels().map(|p| p.error).sum();
            let done = error <= self.abs_tol.max(self.rel_tol * value.abs());
            if done || heap.is_empty() || subdivisions >= self.max_subdivisions {
                break (value, error);
            }
            total = value;
            total_err = error;
        };

        if error_estimate > self.abs_tol.max(self.rel_tol * value.abs()) {
            return Err(Error::QuadratureNonConvergence {
                estimate: value,
                error_estimate,
                subdivisions,
            });
        }
        Ok(QuadratureResult {
            value,
            error_estimate,
            evaluations,
        })
    }
}

/// Integrates `f` over `[a, b]` until the error estimate is below
/// `max(abs_tol, rel_tol * |value|)`.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<QuadratureResult> {
    Integrator::new(abs_tol, rel_tol).integrate(f, a, b)
}
