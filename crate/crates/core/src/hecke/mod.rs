//! Generic pro-p-Iwahori Hecke data at q = 0.

mod data;
mod gl_n;
pub mod json;
mod omega;
mod quotient;
mod transform;
pub mod fixtures;
mod validate;

pub use data::{GenericHeckeData, GroupAlgebraElem, OmegaGen, ZKappa, ZkElem};
pub use gl_n::{build_gl_n, build_gl_n_seeded};
pub use omega::{exps_to_letters, OmegaElem};
pub use quotient::{product_data, quotient_data};
pub use transform::{extend_scalars, relift};
pub use validate::{canonical, transport, validate, Violation};
