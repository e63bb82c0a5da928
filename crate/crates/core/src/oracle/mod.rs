//! Independent ground truth: exact linear algebra and permutation-group orbits.

mod matrix;
mod orbits;

pub use matrix::ExactMatrix;
pub use orbits::{burnside_count, group_elements, group_order, permutation_matrix, PermutationAction};
