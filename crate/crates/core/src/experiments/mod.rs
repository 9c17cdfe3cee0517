//! Parameter sweeps, the parameter table and tabulated potential profiles.

mod grid;
mod profiles;
mod sweep;
mod table1;

pub use grid::GridSpec;
pub use profiles::{
    extended_profiles, potential_pair, quartic_profiles, shape_profiles, QUARTIC_BARRIERS,
    SHAPE_SIGMA_RATIOS,
};
pub use sweep::{
    fixed_dv_alpha_limit, run_sweep, wkb_crossings, MethodError, MethodSet, SweepFamily, SweepRow,
    SweepSpec,
};
pub use table1::{format_table1, table1, table1_row, Table1Row, TABLE1_ALPHAS, TABLE1_DELTA_V};
