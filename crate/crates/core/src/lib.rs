//! Degree-based topological indices on fuzzy graphs.
//!
//! Graphs carry vertex memberships ν and edge memberships μ with
//! μ(uv) ≤ min(ν(u), ν(v)). The crate evaluates Sombor-type indices,
//! builds the standard families with closed forms, searches supports for
//! extremal membership assignments and checks published inequalities
//! against all of it.

// `!(x > 0.0)` style checks are kept on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod claims;
pub mod enumerate;
pub mod error;
pub mod exec;
pub mod families;
pub mod graph;
pub mod indices;
pub mod io;
pub mod optimize;
pub mod search;
pub mod tables;

pub use claims::{check_claim, verify_extremal, verify_random, CheckConfig, Claim, ClaimId, ClaimReport, MReading, Outcome};
pub use enumerate::Support;
pub use error::{Error, Result};
pub use exec::Execution;
pub use families::{Family, FamilySpec, Scheme};
pub use graph::{Edge, FuzzyGraph};
pub use indices::IndexKind;
pub use optimize::{Direction, Optimum, OptimizerConfig};
pub use search::{extremal_search, GraphClass, SearchResult, SearchTask};
