//! Exact Ext¹ computations between supersingular modules of generic
//! pro-p-Iwahori Hecke algebras with parameter q = 0.

#![allow(clippy::needless_range_loop)]

pub mod characters;
pub mod coxeter;
pub mod error;
pub mod ext_aff;
pub mod ext_ss;
pub mod field;
pub mod hecke;
pub mod oracle;
pub mod planner;
pub mod zlinalg;

pub use characters::{make_xi, AffineCharacter, ZkCharacter};
pub use error::{HeckeError, Result};
pub use ext_aff::{dim_ext1_aff, ExtAffResult};
pub use ext_ss::{dim_ext1_supersingular, dim_hom_supersingular, ExtSsBreakdown, SupersingularModule};
pub use field::{make_field, FieldElement, FiniteField};
pub use hecke::{build_gl_n, quotient_data, validate, GenericHeckeData, OmegaElem};
pub use oracle::{brute_force_ext1, MatrixModule, Scope};
pub use planner::{reduce_simple_ext, ReductionPlan, RootSystemData, SimpleModuleTriple};
pub use zlinalg::{h1_abelian, FgAbelianGroup, FieldMatrix};
