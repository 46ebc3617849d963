//! Kneading increments and kneading determinants.

mod determinant;
mod recursion;
mod series;

use thiserror::Error;

use crate::poly::PolyError;
use crate::symbolic::Symbol;

pub use determinant::{
    kneading_determinant, kneading_determinant_with_column, KneadingDeterminant, KneadingMatrix,
    LAP_SIGNS,
};
pub use recursion::{
    build_polynomial_tree, divide_out_one_minus_t, leaf_polynomial, stem_state,
    tree_polynomial_step, PolyTreeNode, PolynomialTree, TreeState, TreeStep,
};
pub use series::{
    invariant_coordinate, invariant_coordinate_from_side, kneading_increment, FormalSymbolSeries,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KneadingError {
    #[error("word {0} has no eventually periodic tail")]
    UnresolvedWord(String),
    #[error("index {0} out of range")]
    BadIndex(usize),
    #[error("kneading determinant vanishes identically")]
    Degenerate,
    #[error("polynomial {0} does not have the expected coefficient pattern")]
    Shape(String),
    #[error("branch {branch} cannot follow {from:?}")]
    Branch {
        from: Option<Symbol>,
        branch: Symbol,
    },
    #[error("recursion gives {recursion} but the determinant gives {determinant} for {word}")]
    CrossValidation {
        word: String,
        recursion: String,
        determinant: String,
    },
    #[error(transparent)]
    Poly(#[from] PolyError),
}
