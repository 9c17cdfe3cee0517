use serde::{Deserialize, Serialize};

use super::{ln_two_cosh, MeanField};
use crate::error::{Error, Result};
use crate::numerics::{find_root_bracketed, Integrator};

/// Upper end of the validated `sigma/x0` range.
pub const DEFAULT_MAX_SIGMA_RATIO: f64 = 0.5;
/// Superposition coefficient above which the two lobes count as overlapping.
pub const SUPERPOSITION_LIMIT: f64 = 1e-3;

/// Half-width of the default evaluation domain beyond the Gaussian centers, in sigmas.
const SUPPORT_SIGMAS: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "warning", rename_all = "snake_case")]
pub enum ModelWarning {
    /// The Gaussian lobes overlap: `S >= 1e-3`.
    PoorSeparation { superposition: f64 },
    /// `dV''(0) >= 0`, so the quantum potential has a third minimum at the origin.
    ThirdMinimum { curvature_at_origin: f64 },
}

/// Mean-field and quantum barrier heights (`k_B T` and `E_u` units).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BarrierHeights {
    pub mean_field: f64,
    pub quantum: f64,
}

/// Equilibrium density built from a power `alpha` of two symmetric Gaussians
/// centered at `±x0` with width `sigma`. `alpha = 1` is the plain mixture.
///
/// All position arguments are in units of `x0`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoGaussianModel {
    x0: f64,
    sigma: f64,
    alpha: f64,
    /// `sigma / x0`
    s: f64,
    /// `ln ∫ exp(-U) dx`
    ln_z: f64,
    warnings: Vec<ModelWarning>,
}

impl TwoGaussianModel {
    /// Builds a model inside the validated range `0 < sigma/x0 <= 0.5`.
    pub fn new(x0: f64, sigma: f64, alpha: f64) -> Result<Self> {
        Self::with_range_check(x0, sigma, alpha, true)
    }

    /// Same as [`new`](Self::new) but accepts `sigma/x0 > 0.5`.
    pub fn new_unrestricted(x0: f64, sigma: f64, alpha: f64) -> Result<Self> {
        Self::with_range_check(x0, sigma, alpha, false)
    }

    /// Reduced-unit model (`x0 = 1`).
    pub fn reduced(sigma_ratio: f64, alpha: f64) -> Result<Self> {
        Self::new(1.0, sigma_ratio, alpha)
    }

    /// Model with quantum barrier `dV/E_u` at power `alpha`: `sigma^4 = 1/(2 alpha dV)`.
    pub fn for_quantum_barrier(delta_v: f64, alpha: f64) -> Result<Self> {
        if !(delta_v > 0.0) {
            return Err(Error::InvalidParameter(format!("deltaV/E_u must be positive, got {delta_v}")));
        }
        Self::new_unrestricted(1.0, sigma_for_quantum_barrier(delta_v, alpha), alpha)
    }

    /// Simple (`alpha = 1`) model with mean-field barrier `dU`.
    pub fn for_mean_field_barrier(delta_u: f64) -> Result<Self> {
        if !(delta_u > 0.0) {
            return Err(Error::InvalidParameter(format!("deltaU must be positive, got {delta_u}")));
        }
        let s = (2.0 * (delta_u + std::f64::consts::LN_2)).sqrt().recip();
        Self::new_unrestricted(1.0, s, 1.0)
    }

    pub fn with_range_check(x0: f64, sigma: f64, alpha: f64, enforce_range: bool) -> Result<Self> {
        if !(x0 > 0.0 && x0.is_finite()) {
            return Err(Error::InvalidParameter(format!("x0 must be positive, got {x0}")));
        }
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidParameter(format!("sigma must be positive, got {sigma}")));
        }
        if !(alpha >= 1.0 && alpha.is_finite()) {
            return Err(Error::InvalidParameter(format!("alpha must be >= 1, got {alpha}")));
        }
        let s = sigma / x0;
        if enforce_range && s > DEFAULT_MAX_SIGMA_RATIO {
            return Err(Error::InvalidParameter(format!(
                "sigma/x0 = {s} outside the validated range (0, {DEFAULT_MAX_SIGMA_RATIO}]"
            )));
        }

        let mut model = Self {
            x0,
            sigma,
            alpha,
            s,
            ln_z: 0.0,
            warnings: Vec::new(),
        };
        model.ln_z = model.log_partition()?;

        let superposition = model.superposition();
        if superposition >= SUPERPOSITION_LIMIT {
            model.warnings.push(ModelWarning::PoorSeparation { superposition });
        }
        let curvature_at_origin = model.curvature_at_origin();
        if curvature_at_origin >= 0.0 {
            model.warnings.push(ModelWarning::ThirdMinimum { curvature_at_origin });
        }
        Ok(model)
    }

    fn log_partition(&self) -> Result<f64> {
        let hi = 1.0 + SUPPORT_SIGMAS * self.s;
        let quad = Integrator::new(1e-300, 1e-14);
        let weight = |x: f64| (-self.potential(x)).exp();
        let inner = quad.integrate(weight, 0.0, 1.0)?.value;
        let outer = quad.integrate(weight, 1.0, hi)?.value;
        Ok((2.0 * (inner + outer)).ln())
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn sigma_ratio(&self) -> f64 {
        self.s
    }

    pub fn warnings(&self) -> &[ModelWarning] {
        &self.warnings
    }

    /// `S = exp(-2 x0² / (alpha sigma²))`.
    pub fn superposition(&self) -> f64 {
        (-2.0 / (self.alpha * self.s * self.s)).exp()
    }

    /// Normalization prefactor `N` multiplying `[...]^alpha / sqrt(8 pi sigma²)`.
    pub fn norm_constant(&self) -> f64 {
        (8.0 * std::f64::consts::PI * self.s * self.s).sqrt() / self.ln_z.exp()
    }

    /// Argument scale of the hyperbolic terms, `x0² / (alpha sigma²)`.
    fn coupling(&self) -> f64 {
        1.0 / (self.alpha * self.s * self.s)
    }

    /// Closed-form quantum potential `dV(x)/E_u`.
    pub fn quantum_potential_closed(&self, x: f64) -> f64 {
        quantum_potential_closed(self.s, self.alpha, x)
    }

    /// Far-field parabolic approximation of `dV/E_u` around the nearer Gaussian center.
    pub fn quantum_parabola(&self, x: f64) -> f64 {
        let s2 = self.s * self.s;
        let d = x.abs() - 1.0;
        d * d / (4.0 * s2 * s2) - 1.0 / (2.0 * s2)
    }

    /// Far-field parabolic approximation of `U` around the nearer Gaussian center.
    pub fn meanfield_parabola(&self, x: f64) -> f64 {
        let d = x.abs() - 1.0;
        d * d / (2.0 * self.s * self.s)
    }

    pub fn barrier_heights(&self) -> BarrierHeights {
        let s2 = self.s * self.s;
        BarrierHeights {
            mean_field: 1.0 / (2.0 * s2) - self.alpha * std::f64::consts::LN_2,
            quantum: 1.0 / (2.0 * self.alpha * s2 * s2),
        }
    }

    /// `dV''(0)` in `E_u/x0²` units.
    pub fn curvature_at_origin(&self) -> f64 {
        curvature_at_origin(self.s, self.alpha)
    }

    /// `dV''(±x0)` of the far-field parabola, in `E_u/x0²` units.
    pub fn curvature_at_minima(&self) -> f64 {
        let s2 = self.s * self.s;
        1.0 / (2.0 * s2 * s2)
    }

    /// Full width of the quantum barrier at half height, in `x0` units.
    pub fn barrier_width(&self) -> Result<f64> {
        let c0 = self.curvature_at_origin();
        if c0 >= 0.0 {
            return Err(Error::DegenerateBarrier(format!(
                "dV''(0) = {c0} >= 0: the origin is not a barrier top"
            )));
        }
        half_height_width(self.s, self.alpha)
    }
}

impl MeanField for TwoGaussianModel {
    fn potential(&self, x: f64) -> f64 {
        let s2 = self.s * self.s;
        (1.0 + x * x) / (2.0 * s2) - self.alpha * ln_two_cosh(x * self.coupling())
    }

    fn potential_d1(&self, x: f64) -> f64 {
        (x - (x * self.coupling()).tanh()) / (self.s * self.s)
    }

    fn potential_d2(&self, x: f64) -> f64 {
        let c = self.coupling();
        let sech = (x * c).cosh().recip();
        (1.0 - c * sech * sech) / (self.s * self.s)
    }

    fn potential_d3(&self, x: f64) -> f64 {
        let c = self.coupling();
        let u = x * c;
        let sech = u.cosh().recip();
        2.0 * c * c * sech * sech * u.tanh() / (self.s * self.s)
    }

    fn density(&self, x: f64) -> f64 {
        (-self.potential(x) - self.ln_z).exp()
    }

    fn minimum(&self) -> f64 {
        1.0
    }

    fn support(&self) -> (f64, f64) {
        let hi = 1.0 + SUPPORT_SIGMAS * self.s;
        (-hi, hi)
    }

    fn quantum_potential(&self, x: f64) -> f64 {
        self.quantum_potential_closed(x)
    }

    fn well_curvature(&self) -> f64 {
        self.curvature_at_minima()
    }
}

pub(crate) fn sigma_for_quantum_barrier(delta_v: f64, alpha: f64) -> f64 {
    (2.0 * alpha * delta_v).powf(-0.25)
}

fn quantum_potential_closed(s: f64, alpha: f64, x: f64) -> f64 {
    let s2 = s * s;
    let s4 = s2 * s2;
    let u = x / (alpha * s2);
    let sech = u.cosh().recip();
    let d = x - u.tanh();
    d * d / (4.0 * s4) + sech * sech / (2.0 * alpha * s4) - 1.0 / (2.0 * s2)
}

fn curvature_at_origin(s: f64, alpha: f64) -> f64 {
    let s2 = s * s;
    let s4 = s2 * s2;
    let b = 1.0 / (alpha * s2);
    (1.0 - b).powi(2) / (2.0 * s4) - 1.0 / (alpha.powi(3) * s4 * s4)
}

/// Width between the two points where `dV` has dropped half of
/// `dV(0) - dV(x0)` below the barrier top.
fn half_height_width(s: f64, alpha: f64) -> Result<f64> {
    let top = quantum_potential_closed(s, alpha, 0.0);
    let bottom = quantum_potential_closed(s, alpha, 1.0);
    let level = top - 0.5 * (top - bottom);
    let f = |x: f64| quantum_potential_closed(s, alpha, x) - level;
    let right = find_root_bracketed(f, 0.0, 1.0, 1e-14)?;
    let left = find_root_bracketed(f, -1.0, 0.0, 1e-14)?;
    Ok(right - left)
}

/// `dV''(0)` of the model with quantum barrier `delta_v` at power `alpha`.
fn origin_curvature_at_fixed_barrier(delta_v: f64, alpha: f64) -> f64 {
    curvature_at_origin(sigma_for_quantum_barrier(delta_v, alpha), alpha)
}

/// Largest `alpha` for which the quantum potential with barrier `delta_v`
/// keeps exactly two minima (`dV''(0) = 0`).
pub fn alpha_two_minima_limit(delta_v: f64) -> Result<f64> {
    if !(delta_v > 0.0) {
        return Err(Error::InvalidParameter(format!("deltaV/E_u must be positive, got {delta_v}")));
    }
    let f = |alpha: f64| origin_curvature_at_fixed_barrier(delta_v, alpha);
    if f(1.0) >= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "no two-minima model with alpha >= 1 at deltaV/E_u = {delta_v}"
        )));
    }
    let mut hi = 2.0;
    while f(hi) < 0.0 {
        hi *= 2.0;
        if hi > 1e12 {
            return Err(Error::DegenerateBarrier("two-minima limit not bracketed".into()));
        }
    }
    find_root_bracketed(f, 1.0, hi, 1e-13)
}

/// Inverts (`dV/E_u`, `w/x0`) into `(x0 = 1, sigma, alpha)`.
///
/// `sigma` follows from the barrier for each trial `alpha`; `alpha` is then
/// found by bracketing the width between `alpha = 1` and the two-minima limit.
pub fn solve_parameters(target_dv: f64, target_w: f64) -> Result<TwoGaussianModel> {
    if !(target_w > 0.0) {
        return Err(Error::InvalidParameter(format!("width must be positive, got {target_w}")));
    }
    let alpha_max = alpha_two_minima_limit(target_dv)?;
    let width = |alpha: f64| half_height_width(sigma_for_quantum_barrier(target_dv, alpha), alpha);
    let w_min = width(1.0)?;
    let w_max = width(alpha_max)?;
    let slack = 1e-12;
    if target_w < w_min - slack || target_w > w_max + slack {
        return Err(Error::WidthOutOfRange {
            target: target_w,
            delta_v: target_dv,
            w_min,
            w_max,
        });
    }
    let alpha = if (target_w - w_min).abs() <= slack {
        1.0
    } else if (target_w - w_max).abs() <= slack {
        alpha_max
    } else {
        find_root_bracketed(
            |a| width(a).map(|w| w - target_w).unwrap_or(f64::NAN),
            1.0,
            alpha_max,
            1e-14,
        )?
    };
    TwoGaussianModel::new_unrestricted(1.0, sigma_for_quantum_barrier(target_dv, alpha), alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{count_minima, quantum_potential_from_meanfield};
    use crate::numerics::{derivative_central, integrate_adaptive, DerivativeOrder};

    fn table_model(alpha: f64, s: f64) -> TwoGaussianModel {
        TwoGaussianModel::reduced(s, alpha).unwrap()
    }

    #[test]
    fn density_is_even_and_normalized() {
        let m = table_model(1.0, 0.4);
        for x in [0.1, 0.5, 1.0, 2.3] {
            assert!((m.density(x) - m.density(-x)).abs() <= 1e-15 * m.density(x));
        }
        let (lo, hi) = m.support();
        let total = integrate_adaptive(|x| m.density(x), lo, hi, 1e-14, 1e-13).unwrap();
        assert!((total.value - 1.0).abs() < 1e-8);
        // N is unity up to the lobe overlap.
        assert!((m.norm_constant() - 1.0).abs() < 10.0 * m.superposition().sqrt().max(1e-12));
    }

    #[test]
    fn density_at_center() {
        let s: f64 = 0.3;
        let m = table_model(1.0, s);
        let single = 1.0 / (8.0 * std::f64::consts::PI * s * s).sqrt();
        assert!((m.density(1.0) / single - 1.0).abs() < 2e-3);
    }

    #[test]
    fn mean_field_barriers_from_potential() {
        for (s, alpha, expected, tol) in [
            (0.5, 1.0, 1.307, 1e-3),
            (0.2, 1.0, 11.807, 1e-3),
            (0.3021, 2.0, 4.09, 5e-3),
        ] {
            let m = table_model(alpha, s);
            let du = m.potential(0.0) - m.potential(1.0);
            assert!((du - expected).abs() < tol, "s={s} alpha={alpha} du={du}");
        }
    }

    #[test]
    fn potential_derivatives_are_consistent() {
        let m = table_model(2.0, 0.3);
        for x in [-1.3, -0.2, 0.05, 0.7, 1.4] {
            let h = 1e-5;
            let d1 = derivative_central(|t| m.potential(t), x, DerivativeOrder::First, h);
            let d2 = derivative_central(|t| m.potential_d1(t), x, DerivativeOrder::First, h);
            let d3 = derivative_central(|t| m.potential_d2(t), x, DerivativeOrder::First, h);
            assert!((d1 - m.potential_d1(x)).abs() < 1e-6 * (1.0 + d1.abs()));
            assert!((d2 - m.potential_d2(x)).abs() < 1e-6 * (1.0 + d2.abs()));
            assert!((d3 - m.potential_d3(x)).abs() < 1e-5 * (1.0 + d3.abs()));
        }
    }

    #[test]
    fn overflow_safe_potential() {
        let m = table_model(1.0, 0.05);
        let u = m.potential(30.0);
        assert!(u.is_finite());
        // Far from the origin U is the right-lobe parabola.
        assert!((u - m.meanfield_parabola(30.0)).abs() < 1e-9 * u);
    }

    #[test]
    fn closed_form_matches_meanfield_map() {
        for (alpha, s) in [(1.0, 0.3593), (2.0, 0.3021), (3.0, 0.273)] {
            let m = table_model(alpha, s);
            for i in 0..1000 {
                let x = -2.0 + 4.0 * i as f64 / 999.0;
                let a = quantum_potential_from_meanfield(&m, x);
                let b = m.quantum_potential_closed(x);
                assert!((a - b).abs() <= 1e-10 * (1.0 + b.abs()), "x={x} {a} {b}");
            }
        }
    }

    #[test]
    fn single_gaussian_limit_is_harmonic() {
        // Far from the origin only one lobe survives: dV = (x-1)²/4s⁴ - 1/2s².
        let s: f64 = 0.3;
        let m = table_model(1.0, s);
        for x in [1.0 + 5.0 * s, 3.0, 4.5] {
            let v = m.quantum_potential_closed(x);
            assert!(((v - m.quantum_parabola(x)) / v).abs() < 1e-6);
        }
    }

    #[test]
    fn table_barrier_heights() {
        let m = table_model(1.0, 0.3593);
        let h = m.barrier_heights();
        assert!((h.mean_field - 3.18).abs() < 5e-3);
        assert!((h.quantum - 30.0).abs() < 5e-3);
        let m = table_model(3.0, 0.2730);
        assert!((m.barrier_heights().mean_field - 4.63).abs() < 5e-3);
        let m = table_model(1.0, 0.5);
        assert!((m.barrier_heights().quantum - 8.0).abs() < 1e-12);
    }

    #[test]
    fn quantum_barrier_matches_closed_form() {
        let m = table_model(1.0, 0.3593);
        let dv = m.quantum_potential_closed(0.0) - m.quantum_potential_closed(1.0);
        assert!((dv - 30.0).abs() < 1e-2, "dv = {dv}");
    }

    #[test]
    fn origin_curvature_closed_form_and_difference() {
        for (alpha, s, expected) in [(1.0, 0.3593, -2235.0), (2.0, 0.3021, -597.0), (3.0, 0.2730, -115.0)] {
            let m = table_model(alpha, s);
            let c = m.curvature_at_origin();
            assert!((c - expected).abs() < 1.0, "alpha={alpha} c={c}");
            let fd = derivative_central(|x| m.quantum_potential_closed(x), 0.0, DerivativeOrder::Second, 1e-4);
            assert!((fd - c).abs() < 1e-4 * c.abs(), "fd={fd} c={c}");
        }
    }

    #[test]
    fn minima_curvature_ratio_is_alpha() {
        for (alpha, s) in [(1.0, 0.3593), (2.5, 0.2857)] {
            let m = table_model(alpha, s);
            let ratio = m.curvature_at_minima() / m.barrier_heights().quantum;
            assert!((ratio - alpha).abs() < 1e-12);
            let fd = derivative_central(|x| m.quantum_potential_closed(x), 1.0, DerivativeOrder::Second, 1e-4);
            assert!((fd - m.curvature_at_minima()).abs() < 1e-2 * fd.abs());
        }
        assert!((table_model(2.5, 0.2857).curvature_at_minima() - 75.0).abs() < 0.5);
    }

    #[test]
    fn table_widths() {
        for (alpha, s, w) in [(1.0, 0.3593, 0.33), (2.0, 0.3021, 0.64), (3.0, 0.2730, 0.86)] {
            let width = table_model(alpha, s).barrier_width().unwrap();
            assert!((width - w).abs() < 5e-3, "alpha={alpha} w={width}");
        }
    }

    #[test]
    fn inversion_recovers_table_rows() {
        let m = solve_parameters(30.0, 0.64).unwrap();
        assert!((m.alpha() - 2.0).abs() < 0.02, "alpha {}", m.alpha());
        assert!((m.sigma_ratio() - 0.3021).abs() < 1e-3);
        let m = solve_parameters(30.0, 0.3344).unwrap();
        assert!((m.alpha() - 1.0).abs() < 0.02, "alpha {}", m.alpha());
        assert!((m.sigma_ratio() - 0.3593).abs() < 1e-3);
    }

    #[test]
    fn inversion_round_trip() {
        let original = TwoGaussianModel::for_quantum_barrier(30.0, 1.7).unwrap();
        let dv = original.barrier_heights().quantum;
        let w = original.barrier_width().unwrap();
        let solved = solve_parameters(dv, w).unwrap();
        assert!((solved.alpha() / original.alpha() - 1.0).abs() < 1e-6);
        assert!((solved.sigma() / original.sigma() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn unattainable_width_lists_range() {
        match solve_parameters(30.0, 2.0).unwrap_err() {
            Error::WidthOutOfRange { w_min, w_max, .. } => {
                assert!((w_min - 0.334).abs() < 1e-3);
                assert!(w_max > 0.86 && w_max < 1.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn third_minimum_beyond_alpha_limit() {
        let limit = alpha_two_minima_limit(30.0).unwrap();
        assert!(limit > 3.0 && limit < 4.0);
        let below = TwoGaussianModel::for_quantum_barrier(30.0, limit * 0.98).unwrap();
        let above = TwoGaussianModel::for_quantum_barrier(30.0, limit * 1.05).unwrap();
        assert!(below.warnings().is_empty());
        assert!(above
            .warnings()
            .iter()
            .any(|w| matches!(w, ModelWarning::ThirdMinimum { .. })));
        assert_eq!(count_minima(&below, -2.0, 2.0, 10_001), 2);
        assert_eq!(count_minima(&above, -2.0, 2.0, 10_001), 3);
        assert!(above.barrier_width().is_err());
    }

    #[test]
    fn out_of_range_sigma_rejected() {
        assert!(TwoGaussianModel::reduced(0.9, 1.0).is_err());
        let m = TwoGaussianModel::new_unrestricted(1.0, 0.9, 1.0).unwrap();
        assert!(m
            .warnings()
            .iter()
            .any(|w| matches!(w, ModelWarning::PoorSeparation { .. })));
    }

    #[test]
    fn invalid_parameters() {
        assert!(TwoGaussianModel::reduced(0.3, 0.5).is_err());
        assert!(TwoGaussianModel::new(-1.0, 0.3, 1.0).is_err());
        assert!(TwoGaussianModel::new(1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn physical_length_scale_is_reduced_out() {
        let a = TwoGaussianModel::new(2.0, 0.6, 1.5).unwrap();
        let b = TwoGaussianModel::new(1.0, 0.3, 1.5).unwrap();
        assert_eq!(a.sigma_ratio(), b.sigma_ratio());
        assert_eq!(a.quantum_potential(0.4), b.quantum_potential(0.4));
    }
}
