//! Root-system combinatorics and the reduction of Ext between simple
//! modules I(P, σ, Q) to the supersingular case.

mod plan;
mod roots;

pub use plan::{reduce_simple_ext, sym_diff_degree, Outcome, ReductionPlan, SimpleModuleTriple, TraceEntry};
pub use roots::RootSystemData;
