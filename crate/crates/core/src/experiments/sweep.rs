use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::GridSpec;
use crate::error::{Error, Result};
use crate::exact::{exact_splitting_for, ExactOptions};
use crate::localization::splitting_localization;
use crate::models::{
    quartic_meanfield, MeanField, ModelWarning, TwoGaussianModel, DEFAULT_MAX_SIGMA_RATIO,
};
use crate::wkb::{wkb_splitting_for, WkbOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepFamily {
    /// `alpha = 1` two-Gaussian model swept in `dU`.
    SimpleDu,
    /// Extended two-Gaussian model at fixed `dV/E_u`, swept in `alpha`.
    FixedDv,
    /// Quartic mean-field potential swept in `dU`.
    QuarticDu,
}

impl SweepFamily {
    pub fn name(&self) -> &'static str {
        match self {
            Self::SimpleDu => "simple-du",
            Self::FixedDv => "fixed-dv",
            Self::QuarticDu => "quartic-du",
        }
    }

    /// Name of the swept parameter.
    pub fn parameter(&self) -> &'static str {
        match self {
            Self::SimpleDu | Self::QuarticDu => "delta_u",
            Self::FixedDv => "alpha",
        }
    }
}

impl fmt::Display for SweepFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simple-du" => Ok(Self::SimpleDu),
            "fixed-dv" => Ok(Self::FixedDv),
            "quartic-du" => Ok(Self::QuarticDu),
            _ => Err(Error::InvalidParameter(format!(
                "unknown family '{s}' (expected simple-du, fixed-dv or quartic-du)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodSet {
    pub exact: bool,
    pub localization: bool,
    pub wkb: bool,
}

impl MethodSet {
    pub const ALL: Self = Self {
        exact: true,
        localization: true,
        wkb: true,
    };

    pub fn is_empty(&self) -> bool {
        !(self.exact || self.localization || self.wkb)
    }
}

impl Default for MethodSet {
    fn default() -> Self {
        Self::ALL
    }
}

impl FromStr for MethodSet {
    type Err = Error;

    /// Comma-separated subset of `exact`, `localization`, `wkb`.
    fn from_str(s: &str) -> Result<Self> {
        let mut set = Self {
            exact: false,
            localization: false,
            wkb: false,
        };
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match item {
                "exact" => set.exact = true,
                "localization" | "loc" => set.localization = true,
                "wkb" => set.wkb = true,
                "all" => set = Self::ALL,
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "unknown method '{other}' (expected exact, localization, wkb)"
                    )))
                }
            }
        }
        if set.is_empty() {
            return Err(Error::InvalidParameter("no method selected".into()));
        }
        Ok(set)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub family: SweepFamily,
    pub range: GridSpec,
    /// Quantum barrier held fixed by the `fixed-dv` family.
    pub delta_v: Option<f64>,
    pub methods: MethodSet,
    pub exact: ExactOptions,
    pub wkb: WkbOptions,
    /// Permit `sigma/x0 > 0.5`.
    pub allow_out_of_range: bool,
}

impl SweepSpec {
    pub fn new(family: SweepFamily, range: GridSpec) -> Self {
        Self {
            family,
            range,
            delta_v: None,
            methods: MethodSet::ALL,
            exact: ExactOptions::default(),
            wkb: WkbOptions::default(),
            allow_out_of_range: false,
        }
    }

    /// `alpha = 1` family over `dU` in `[1, 12]` with 40 points. The low end
    /// needs `sigma/x0 = 0.54`, so the range check is relaxed.
    pub fn simple_default() -> Self {
        let mut spec = Self::new(SweepFamily::SimpleDu, GridSpec::new(1.0, 12.0, 40).expect("valid grid"));
        spec.allow_out_of_range = true;
        spec
    }

    /// `alpha` from 1 up to the last value below the two-minima limit at
    /// fixed `dV/E_u`, restricted to well separated lobes.
    pub fn fixed_dv_default(delta_v: f64, n_points: usize) -> Result<Self> {
        let stop = fixed_dv_alpha_limit(delta_v)?;
        let mut spec = Self::new(SweepFamily::FixedDv, GridSpec::new(1.0, stop, n_points)?);
        spec.delta_v = Some(delta_v);
        spec.allow_out_of_range = true;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.methods.is_empty() {
            return Err(Error::InvalidParameter("no method selected".into()));
        }
        match self.family {
            SweepFamily::FixedDv => {
                let dv = self
                    .delta_v
                    .ok_or_else(|| Error::InvalidParameter("fixed-dv sweep needs --dv".into()))?;
                if !(dv > 0.0) {
                    return Err(Error::InvalidParameter(format!("deltaV/E_u must be positive, got {dv}")));
                }
                if self.range.start < 1.0 {
                    return Err(Error::InvalidParameter(format!(
                        "alpha must be >= 1, sweep starts at {}",
                        self.range.start
                    )));
                }
            }
            SweepFamily::SimpleDu | SweepFamily::QuarticDu => {
                if self.range.start <= 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "deltaU must be positive, sweep starts at {}",
                        self.range.start
                    )));
                }
            }
        }
        if !self.allow_out_of_range && self.family != SweepFamily::QuarticDu {
            for p in self.range.points() {
                let s = self.sigma_ratio(p);
                if s > DEFAULT_MAX_SIGMA_RATIO {
                    return Err(Error::InvalidParameter(format!(
                        "sigma/x0 = {s:.4} at {} = {p} outside the validated range (0, {DEFAULT_MAX_SIGMA_RATIO}]; \
                         pass --allow-out-of-range to proceed",
                        self.family.parameter()
                    )));
                }
            }
        }
        Ok(())
    }

    fn sigma_ratio(&self, p: f64) -> f64 {
        match self.family {
            SweepFamily::SimpleDu => (2.0 * (p + std::f64::consts::LN_2)).sqrt().recip(),
            SweepFamily::FixedDv => (2.0 * p * self.delta_v.unwrap_or(f64::NAN)).powf(-0.25),
            SweepFamily::QuarticDu => f64::NAN,
        }
    }
}

/// Largest `alpha` kept by the default fixed-barrier sweep: the two-minima
/// limit or the point where the lobes start to overlap (`S = 1e-3`), whichever
/// comes first.
pub fn fixed_dv_alpha_limit(delta_v: f64) -> Result<f64> {
    let two_minima = crate::models::alpha_two_minima_limit(delta_v)?;
    // With s² = (2 alpha dV)^(-1/2), S = exp(-2 sqrt(2 dV / alpha)).
    let overlap = 8.0 * delta_v / crate::models::SUPERPOSITION_LIMIT.ln().powi(2);
    let limit = two_minima.min(overlap);
    // Stay strictly inside so the barrier width stays defined.
    Ok(limit * (1.0 - 1e-6))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodError {
    pub method: String,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    /// Value of the swept parameter.
    pub parameter: f64,
    pub x0: f64,
    pub sigma: Option<f64>,
    pub alpha: Option<f64>,
    pub delta_u: f64,
    pub delta_v: f64,
    pub width: Option<f64>,
    pub superposition: Option<f64>,
    pub exact: Option<f64>,
    pub exact_converged: Option<bool>,
    pub exact_n_basis: Option<usize>,
    pub localization: Option<f64>,
    pub wkb: Option<f64>,
    pub localization_rel_error: Option<f64>,
    pub wkb_rel_error: Option<f64>,
    pub warnings: Vec<ModelWarning>,
    pub errors: Vec<MethodError>,
}

fn record<T>(errors: &mut Vec<MethodError>, method: &str, r: Result<T>) -> Option<T> {
    match r {
        Ok(v) => Some(v),
        Err(e) => {
            errors.push(MethodError {
                method: method.to_string(),
                error: e.to_string(),
            });
            None
        }
    }
}

fn methods_row<M: MeanField + ?Sized>(view: &M, spec: &SweepSpec, row: &mut SweepRow) {
    let mut errors = Vec::new();
    if spec.methods.exact {
        if let Some(r) = record(&mut errors, "exact", exact_splitting_for(view, &spec.exact)) {
            row.exact = Some(r.splitting);
            row.exact_converged = Some(r.converged);
            row.exact_n_basis = Some(r.n_basis_used);
        }
    }
    if spec.methods.localization {
        row.localization = record(&mut errors, "localization", splitting_localization(view)).map(|r| r.splitting);
    }
    if spec.methods.wkb {
        row.wkb = record(&mut errors, "wkb", wkb_splitting_for(view, &spec.wkb)).map(|r| r.splitting);
    }
    if let Some(exact) = row.exact {
        row.localization_rel_error = row.localization.map(|v| (v - exact) / exact);
        row.wkb_rel_error = row.wkb.map(|v| (v - exact) / exact);
    }
    row.errors.extend(errors);
}

fn empty_row(parameter: f64) -> SweepRow {
    SweepRow {
        parameter,
        x0: 1.0,
        sigma: None,
        alpha: None,
        delta_u: f64::NAN,
        delta_v: f64::NAN,
        width: None,
        superposition: None,
        exact: None,
        exact_converged: None,
        exact_n_basis: None,
        localization: None,
        wkb: None,
        localization_rel_error: None,
        wkb_rel_error: None,
        warnings: Vec::new(),
        errors: Vec::new(),
    }
}

fn two_gaussian_row(model: Result<TwoGaussianModel>, spec: &SweepSpec, mut row: SweepRow) -> SweepRow {
    let model = match model {
        Ok(m) => m,
        Err(e) => {
            row.errors.push(MethodError {
                method: "model".into(),
                error: e.to_string(),
            });
            return row;
        }
    };
    let heights = model.barrier_heights();
    row.x0 = model.x0();
    row.sigma = Some(model.sigma());
    row.alpha = Some(model.alpha());
    row.delta_u = heights.mean_field;
    row.delta_v = heights.quantum;
    row.width = model.barrier_width().ok();
    row.superposition = Some(model.superposition());
    row.warnings = model.warnings().to_vec();
    methods_row(&model, spec, &mut row);
    row
}

fn compute_row(spec: &SweepSpec, p: f64) -> SweepRow {
    let row = empty_row(p);
    match spec.family {
        SweepFamily::SimpleDu => two_gaussian_row(TwoGaussianModel::for_mean_field_barrier(p), spec, row),
        SweepFamily::FixedDv => {
            let dv = spec.delta_v.unwrap_or(f64::NAN);
            two_gaussian_row(TwoGaussianModel::for_quantum_barrier(dv, p), spec, row)
        }
        SweepFamily::QuarticDu => {
            let mut row = row;
            match quartic_meanfield(p) {
                Ok(m) => {
                    row.delta_u = p;
                    row.delta_v = m.quantum_potential(0.0) - m.quantum_potential(m.minimum());
                    methods_row(&m, spec, &mut row);
                }
                Err(e) => row.errors.push(MethodError {
                    method: "model".into(),
                    error: e.to_string(),
                }),
            }
            row
        }
    }
}

/// Evaluates every point of the sweep; rows come back in grid order whatever
/// the completion order. Per-row failures are recorded in the row.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    Ok(spec
        .range
        .points()
        .par_iter()
        .map(|&p| compute_row(spec, p))
        .collect())
}

/// Zero crossings of the WKB relative error, located by linear interpolation
/// between consecutive rows.
pub fn wkb_crossings(rows: &[SweepRow]) -> Vec<f64> {
    let points: Vec<(f64, f64)> = rows
        .iter()
        .filter_map(|r| r.wkb_rel_error.map(|e| (r.delta_u, e)))
        .collect();
    points
        .windows(2)
        .filter(|w| w[0].1.signum() != w[1].1.signum())
        .map(|w| {
            let (x0, y0) = w[0];
            let (x1, y1) = w[1];
            x0 - y0 * (x1 - x0) / (y1 - y0)
        })
        .collect()
}
