/// Order of a central-difference derivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeOrder {
    First,
    Second,
}

/// Three-point central difference with O(h²) truncation error.
pub fn derivative_central<F: Fn(f64) -> f64>(f: F, x: f64, order: DerivativeOrder, h: f64) -> f64 {
    match order {
        DerivativeOrder::First => (f(x + h) - f(x - h)) / (2.0 * h),
        DerivativeOrder::Second => (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_second_derivative() {
        for x in [-2.0, 0.0, 0.7, 3.1] {
            let d = derivative_central(|t| t * t, x, DerivativeOrder::Second, 1e-3);
            assert!((d - 2.0).abs() < 1e-6, "x={x} d={d}");
        }
    }

    #[test]
    fn sine_slope_at_origin() {
        let d = derivative_central(f64::sin, 0.0, DerivativeOrder::First, 1e-4);
        assert!((d - 1.0).abs() < 1e-8);
    }

    #[test]
    fn constant_has_zero_slope() {
        assert_eq!(derivative_central(|_| 4.2, 1.3, DerivativeOrder::First, 1e-3), 0.0);
    }

    #[test]
    fn error_is_second_order() {
        let exact = 1.0f64.cos();
        let e1 = (derivative_central(f64::sin, 1.0, DerivativeOrder::First, 1e-2) - exact).abs();
        let e2 = (derivative_central(f64::sin, 1.0, DerivativeOrder::First, 5e-3) - exact).abs();
        let ratio = e1 / e2;
        assert!((ratio - 4.0).abs() < 0.05, "ratio {ratio}");
    }
}
