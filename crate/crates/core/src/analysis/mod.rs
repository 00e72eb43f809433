//! Traces of the two-rotation operator, identity checks along them and
//! randomized verification suites.

pub mod identities;
pub mod report;
pub mod theorems;
pub mod trace;

pub use identities::{identity_suite, IdentityOutcome};
pub use report::{CheckResult, Counterexample, Relation, TheoremReport};
pub use trace::{trace_t_run, SweepTrace};
