//! Compiling expressions into realizations, minimization and similarity.

mod build;
mod minimize;
mod similarity;
mod subspace;

pub use build::{compile, realize_const, realize_expr, realize_inverse, realize_neg, realize_product, realize_sum, realize_var};
pub use minimize::{
    controllability_matrix_trunc, controllability_span, is_controllable, is_minimal, is_observable, left_inverse,
    minimize, observability_matrix_trunc, observable_space, right_inverse, unobservable_subspace,
};
pub use similarity::{check_similarity, find_similarity};
pub use subspace::Subspace;
