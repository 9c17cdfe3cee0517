use super::MeanField;
use crate::error::{Error, Result};
use crate::numerics::Integrator;

/// Mean-field potential `U = dU (1 - x²/x0²)²`.
///
/// Positions are in units of `x0`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuarticModel {
    delta_u: f64,
    x0: f64,
    ln_z: f64,
    support: f64,
}

impl QuarticModel {
    pub fn new(delta_u: f64, x0: f64) -> Result<Self> {
        if !(delta_u > 0.0 && delta_u.is_finite()) {
            return Err(Error::InvalidParameter(format!("deltaU must be positive, got {delta_u}")));
        }
        if !(x0 > 0.0 && x0.is_finite()) {
            return Err(Error::InvalidParameter(format!("x0 must be positive, got {x0}")));
        }
        // exp(-45) ~ 3e-20 marks the edge of the support.
        let support = (1.0 + (45.0 / delta_u).sqrt()).sqrt();
        let mut model = Self {
            delta_u,
            x0,
            ln_z: 0.0,
            support,
        };
        let quad = Integrator::new(1e-300, 1e-14);
        let weight = |x: f64| (-model.potential(x)).exp();
        let z = 2.0 * (quad.integrate(weight, 0.0, 1.0)?.value + quad.integrate(weight, 1.0, support)?.value);
        model.ln_z = z.ln();
        Ok(model)
    }

    pub fn delta_u(&self) -> f64 {
        self.delta_u
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    /// `dV''(0) = 8 dU² - 12 dU`; positive above `dU = 1.5` (third minimum).
    pub fn curvature_at_origin(&self) -> f64 {
        8.0 * self.delta_u * self.delta_u - 12.0 * self.delta_u
    }

    /// Large-barrier leading term `dU² s'(x)² / 4` of the quantum potential.
    pub fn leading_quantum_term(&self, x: f64) -> f64 {
        let ds = -4.0 * x * (1.0 - x * x);
        0.25 * self.delta_u * self.delta_u * ds * ds
    }
}

/// Builds the mean-field view of a quartic model.
pub fn quartic_meanfield(delta_u: f64) -> Result<QuarticModel> {
    QuarticModel::new(delta_u, 1.0)
}

impl MeanField for QuarticModel {
    fn potential(&self, x: f64) -> f64 {
        let t = 1.0 - x * x;
        self.delta_u * t * t
    }

    fn potential_d1(&self, x: f64) -> f64 {
        -4.0 * self.delta_u * x * (1.0 - x * x)
    }

    fn potential_d2(&self, x: f64) -> f64 {
        -4.0 * self.delta_u * (1.0 - 3.0 * x * x)
    }

    fn potential_d3(&self, x: f64) -> f64 {
        24.0 * self.delta_u * x
    }

    fn density(&self, x: f64) -> f64 {
        (-self.potential(x) - self.ln_z).exp()
    }

    fn minimum(&self) -> f64 {
        1.0
    }

    fn support(&self) -> (f64, f64) {
        (-self.support, self.support)
    }

    fn well_curvature(&self) -> f64 {
        32.0 * self.delta_u * self.delta_u - 12.0 * self.delta_u
    }
}
