//! Integer-lattice and finite-field linear algebra.

pub mod abelian;
pub mod cohomology;
pub mod integer;
pub mod matrix;

pub use abelian::{
    express_in_words, format_word, parse_word, stabilizer_and_cosets, subgroup_presentation, FgAbelianGroup,
    FiniteActionHom, StabilizerResult,
};
pub use cohomology::{h1_abelian, invariant_subspace_dim, matrix_of_map};
pub use integer::{smith_normal_form, IntMatrix, Smith};
pub use matrix::{direct_sum, FieldMatrix};
