//! Double-precision kernels shared by the physics modules.

mod diff;
mod eigen;
mod quadrature;
mod roots;

pub use diff::{derivative_central, DerivativeOrder};
pub use eigen::{
    eig_symmetric_lowest, eigenvalues_symmetric, tridiagonal_eigenvalues, EigenPair,
    SymmetricMatrix,
};
pub use quadrature::{integrate_adaptive, Integrator, QuadratureResult};
pub use roots::find_root_bracketed;
