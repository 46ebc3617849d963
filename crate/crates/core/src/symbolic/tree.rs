use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::order::{is_admissible, order_compare, transition_allowed};
use super::word::{Symbol, SymbolWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Terminal {
    /// Superstable word `(W C)^inf`.
    C,
    /// Convergent word `W A^inf`.
    A,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeNode {
    pub word: SymbolWord,
    pub terminal: Terminal,
    /// Symbols before the terminal one.
    pub stem: Vec<Symbol>,
}

impl TreeNode {
    pub fn level(&self) -> usize {
        self.stem.len() + 1
    }
}

/// Admissible kneading sequences grouped by length and sorted by `order_compare`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolTree {
    /// `levels[k - 1]` holds the words of length `k`.
    pub levels: Vec<Vec<TreeNode>>,
}

impl SymbolTree {
    pub fn nodes(&self) -> impl Iterator<Item = &TreeNode> {
        self.levels.iter().flatten()
    }

    pub fn level(&self, k: usize) -> &[TreeNode] {
        k.checked_sub(1)
            .and_then(|i| self.levels.get(i))
            .map_or(&[], Vec::as_slice)
    }
}

/// Stems are `C`-free prefixes; a stem of length `k - 1` closes to a level-`k`
/// word with `C` (periodic) or with `A` (convergent).
pub fn generate_tree(max_level: usize) -> SymbolTree {
    let mut levels = Vec::with_capacity(max_level);
    let mut stems: Vec<Vec<Symbol>> = vec![Vec::new()];
    for _ in 0..max_level {
        let mut level = Vec::new();
        for stem in &stems {
            for terminal in [Terminal::A, Terminal::C] {
                let word = close_stem(stem, terminal);
                if is_admissible(&word) {
                    level.push(TreeNode {
                        word,
                        terminal,
                        stem: stem.clone(),
                    });
                }
            }
        }
        level.sort_by(|a, b| order_compare(&a.word, &b.word).unwrap_or(Ordering::Equal));
        levels.push(level);
        stems = stems
            .iter()
            .flat_map(|stem| {
                let last = stem.last().copied().unwrap_or(Symbol::C);
                [Symbol::L, Symbol::M, Symbol::R]
                    .into_iter()
                    .filter(move |&s| transition_allowed(last, s))
                    .map(move |s| {
                        let mut next = stem.clone();
                        next.push(s);
                        next
                    })
            })
            .collect();
    }
    SymbolTree { levels }
}

pub fn close_stem(stem: &[Symbol], terminal: Terminal) -> SymbolWord {
    match terminal {
        Terminal::A => SymbolWord::a_infinity(stem),
        Terminal::C => {
            let mut block = stem.to_vec();
            block.push(Symbol::C);
            SymbolWord::periodic(&[], &block).expect("non-empty block")
        }
    }
}
