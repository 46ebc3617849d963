//! Symbolic coding of Newton orbits over the alphabet `{A,B,L,C,M,R}`.

mod itinerary;
mod order;
mod tree;
mod word;

use thiserror::Error;

use crate::newton::NewtonError;

pub use itinerary::{
    itinerary, kneading_data, lap_symbol, raw_kneading_prefix, KneadingData, SidedWord,
    MAX_TAIL_PERIOD, SYMBOL_TOL,
};
pub use order::{is_admissible, order_compare, transition_allowed};
pub use tree::{close_stem, generate_tree, SymbolTree, Terminal, TreeNode};
pub use word::{Symbol, SymbolWord, Tail};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymbolicError {
    #[error("cannot parse symbol word {0:?}")]
    Parse(String),
    #[error("periodic block is empty")]
    EmptyBlock,
    #[error("words {left} and {right} agree up to the horizon")]
    Incomparable { left: String, right: String },
    #[error("itinerary at c = {c} meets a pole at step {index}")]
    UndefinedItinerary { c: f64, index: usize },
    #[error(transparent)]
    Newton(#[from] NewtonError),
}
