//! Level-by-level construction of the kneading numerators.
//!
//! A stem `w` (a `C`-free prefix) carries a state `(p, delta, k)` with
//! `k = |w| + 1` and `delta = (-1)^(number of L in w)`. Closing the stem with
//! `C` or `A` gives `(1 - t) d_Y(t)` for the word `(w C)^inf` or `w A^inf`:
//!
//! | branch | new state / leaf                      |
//! |--------|---------------------------------------|
//! | `R`    | `p`, `k + 1`                          |
//! | `M`    | `p - 2 delta t^(k+1)`, `k + 1`        |
//! | `L`    | `p - 2 delta t^k`, then `delta -> -delta` |
//! | `A`    | leaf `p - 2 delta t^k`                |
//! | `C`    | leaf `p - delta t^k - delta t^(k+1)`  |
//! | `B`    | leaf equal to the `A` leaf            |

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::determinant::kneading_determinant;
use super::KneadingError;
use crate::poly::IntPolynomial;
use crate::symbolic::{
    generate_tree, transition_allowed, KneadingData, Symbol, Terminal, TreeNode,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeState {
    pub p: IntPolynomial,
    pub delta: i8,
    pub k: usize,
    /// Last stem symbol; `None` at the root.
    pub last: Option<Symbol>,
}

impl TreeState {
    pub fn root() -> Self {
        Self {
            p: IntPolynomial::one_minus_t_pow(1),
            delta: 1,
            k: 1,
            last: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TreeStep {
    Stem(TreeState),
    /// `(1 - t) d_Y(t)` of the closed word.
    Leaf(IntPolynomial),
}

fn check_stem_shape(state: &TreeState) -> Result<(), KneadingError> {
    let p = &state.p;
    let ok = p.coeff(0) == 1
        && p.coeff(1) == -1
        && p.degree().is_some_and(|d| d <= state.k)
        && (2..=state.k).all(|j| matches!(p.coeff(j), -2 | 0 | 2));
    if ok {
        Ok(())
    } else {
        Err(KneadingError::Shape(p.to_string()))
    }
}

fn check_leaf_shape(
    leaf: &IntPolynomial,
    k: usize,
    delta: i8,
    terminal: Symbol,
) -> Result<(), KneadingError> {
    let d = delta as i128;
    let top_ok = match terminal {
        Symbol::C => leaf.coeff(k) == -d && leaf.coeff(k + 1) == -d && leaf.degree() == Some(k + 1),
        _ => leaf.coeff(k) == -2 * d && leaf.degree() == Some(k),
    };
    let body_ok = leaf.coeff(0) == 1
        && (k < 2 || leaf.coeff(1) == -1)
        && (2..k).all(|j| matches!(leaf.coeff(j), -2 | 0 | 2));
    if top_ok && body_ok {
        Ok(())
    } else {
        Err(KneadingError::Shape(leaf.to_string()))
    }
}

/// One edge of the numerator tree.
pub fn tree_polynomial_step(state: &TreeState, branch: Symbol) -> Result<TreeStep, KneadingError> {
    check_stem_shape(state)?;
    let last = state.last.unwrap_or(Symbol::C);
    let allowed = match branch {
        // a convergent word enters B or A from R
        Symbol::A | Symbol::B | Symbol::C => last == Symbol::R,
        _ => transition_allowed(last, branch),
    };
    if !allowed {
        return Err(KneadingError::Branch {
            from: state.last,
            branch,
        });
    }
    let d = state.delta as i128;
    let k = state.k;
    let p = &state.p;
    let step = match branch {
        Symbol::R => TreeStep::Stem(TreeState {
            p: p.clone(),
            delta: state.delta,
            k: k + 1,
            last: Some(branch),
        }),
        Symbol::M => TreeStep::Stem(TreeState {
            p: p.sub(&IntPolynomial::monomial(2 * d, k + 1))?,
            delta: state.delta,
            k: k + 1,
            last: Some(branch),
        }),
        Symbol::L => TreeStep::Stem(TreeState {
            p: p.sub(&IntPolynomial::monomial(2 * d, k))?,
            delta: -state.delta,
            k: k + 1,
            last: Some(branch),
        }),
        Symbol::A | Symbol::B => {
            let leaf = p.sub(&IntPolynomial::monomial(2 * d, k))?;
            check_leaf_shape(&leaf, k, state.delta, Symbol::A)?;
            TreeStep::Leaf(leaf)
        }
        Symbol::C => {
            let q = IntPolynomial::monomial(d, k).add(&IntPolynomial::monomial(d, k + 1))?;
            let leaf = p.sub(&q)?;
            check_leaf_shape(&leaf, k, state.delta, Symbol::C)?;
            TreeStep::Leaf(leaf)
        }
    };
    if let TreeStep::Stem(s) = &step {
        check_stem_shape(s)?;
    }
    Ok(step)
}

/// State reached by walking `stem` from the root.
pub fn stem_state(stem: &[Symbol]) -> Result<TreeState, KneadingError> {
    stem.iter().try_fold(TreeState::root(), |state, &s| {
        match tree_polynomial_step(&state, s)? {
            TreeStep::Stem(next) => Ok(next),
            TreeStep::Leaf(_) => Err(KneadingError::Branch {
                from: state.last,
                branch: s,
            }),
        }
    })
}

/// `(1 - t) d_Y(t)` for the tree word with the given stem and terminal.
pub fn leaf_polynomial(
    stem: &[Symbol],
    terminal: Terminal,
) -> Result<IntPolynomial, KneadingError> {
    let state = stem_state(stem)?;
    let branch = match terminal {
        Terminal::A => Symbol::A,
        Terminal::C => Symbol::C,
    };
    match tree_polynomial_step(&state, branch)? {
        TreeStep::Leaf(p) => Ok(p),
        TreeStep::Stem(_) => unreachable!("terminal branches close the word"),
    }
}

/// `d_Y(t)` when `(1 - t)` divides the leaf polynomial.
pub fn divide_out_one_minus_t(cleared: &IntPolynomial) -> Option<IntPolynomial> {
    cleared.div_exact(&IntPolynomial::one_minus_t_pow(1)).ok()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyTreeNode {
    pub node: TreeNode,
    /// `(1 - t) d_Y(t)`.
    pub cleared: IntPolynomial,
    pub d_y: Option<IntPolynomial>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolynomialTree {
    pub levels: Vec<Vec<PolyTreeNode>>,
}

impl PolynomialTree {
    pub fn nodes(&self) -> impl Iterator<Item = &PolyTreeNode> {
        self.levels.iter().flatten()
    }
}

/// The symbolic tree with numerators attached by the recursion, each checked
/// against the kneading determinant of its word.
pub fn build_polynomial_tree(max_level: usize) -> Result<PolynomialTree, KneadingError> {
    let tree = generate_tree(max_level);
    let levels = tree
        .levels
        .into_par_iter()
        .map(|level| {
            level
                .into_par_iter()
                .map(|node| {
                    let cleared = leaf_polynomial(&node.stem, node.terminal)?;
                    let data = KneadingData::from_kneading_sequence(node.word.clone());
                    let det = kneading_determinant(&data)?;
                    if det.cleared.as_ref() != Some(&cleared) {
                        return Err(KneadingError::CrossValidation {
                            word: node.word.to_string(),
                            recursion: cleared.to_string(),
                            determinant: det
                                .cleared
                                .map_or_else(|| det.d.to_string(), |p| p.to_string()),
                        });
                    }
                    Ok(PolyTreeNode {
                        d_y: divide_out_one_minus_t(&cleared),
                        cleared,
                        node,
                    })
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PolynomialTree { levels })
}
