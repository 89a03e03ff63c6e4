//! Exact Toeplitz, Hankel and multiplication operators on the Hardy
//! spaces of the n-dimensional Hartogs triangle and the unit polydisc.

pub mod coeff;
pub mod error;
pub mod lattice;
pub mod numerics;
pub mod operators;
pub mod symbol;
pub mod transport;
pub mod verify;

pub use coeff::{Coeff, Rat};
pub use error::{Error, Result};
pub use lattice::{HardyKind, MultiIndex, SpaceKind};
pub use numerics::{DenseMatrix, ExportFormat, NormEstimate};
pub use operators::{LinearCombination, OperatorExpr, WindowMatrix};
pub use symbol::{LaurentSymbol, SymbolClass};
pub use transport::PsiMap;
pub use verify::{CheckReport, CheckStatus};
