pub mod classical;
pub mod error;
pub mod invariants;
pub mod liealg;
pub mod scalar;
pub mod spectra;
pub mod suites;
pub mod timecoeff;
pub mod weylop;

pub use error::{Error, Result};
pub use liealg::{LieTable, Realization};
pub use scalar::{GaussianRational, Params, ScalarPoly, Symbol};
pub use timecoeff::{ExpKey, ExpPoly};
pub use weylop::{MonoKey, Partials, VarSpace, WeylOp};
