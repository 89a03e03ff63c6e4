//! Mechanical verification: named checks over exact operator actions,
//! randomized symbol sampling, and the orchestrated suite.

pub mod checks;
pub mod random;
pub mod report;
pub mod suite;

pub use checks::RadiiGrid;
pub use random::SymbolSampler;
pub use report::{CheckReport, CheckStatus, Counterexample};
pub use suite::{run_selected, run_suite, SuiteConfig, CHECK_NAMES};
