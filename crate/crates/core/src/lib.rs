//! Harmonic Bergman-Besov kernels on the unit ball of `R^n`, the radial
//! differential operators `D_s^t`, the integral operators `T_bc`, and the
//! exact boundedness classification of `T_bc` between weighted Lebesgue
//! spaces and Bergman-Besov, Bloch and bounded harmonic spaces.

pub mod classifier;
pub mod error;
pub mod exponent;
pub mod expansion;
pub mod kernel;
pub mod operators;
pub mod probe;
pub mod quadrature;
pub mod specfun;

pub use error::{Error, Result};
pub use exponent::ExtExponent;
pub use classifier::{classify, reduce_to_unweighted, TargetSpace, Verdict};
pub use operators::{OperatorParams, TestFunction};
