use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::SymbolicError;

/// Region symbols, declared in their even-parity order `A < B < L < C < M < R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Symbol {
    A,
    B,
    L,
    C,
    M,
    R,
}

impl Symbol {
    pub const ALL: [Symbol; 6] = [
        Symbol::A,
        Symbol::B,
        Symbol::L,
        Symbol::C,
        Symbol::M,
        Symbol::R,
    ];
    /// Symbols that label laps, i.e. everything except the critical landing `C`.
    pub const LAPS: [Symbol; 5] = [Symbol::A, Symbol::B, Symbol::L, Symbol::M, Symbol::R];

    pub fn as_char(self) -> char {
        match self {
            Symbol::A => 'A',
            Symbol::B => 'B',
            Symbol::L => 'L',
            Symbol::C => 'C',
            Symbol::M => 'M',
            Symbol::R => 'R',
        }
    }

    pub fn from_char(ch: char) -> Option<Self> {
        Some(match ch {
            'A' => Symbol::A,
            'B' => Symbol::B,
            'L' => Symbol::L,
            'C' => Symbol::C,
            'M' => Symbol::M,
            'R' => Symbol::R,
            _ => return None,
        })
    }

    /// The Newton map decreases on `B` and `L`.
    pub fn is_decreasing(self) -> bool {
        matches!(self, Symbol::B | Symbol::L)
    }

    /// `+1` on increasing laps, `-1` on decreasing laps; `C` counts as `+1`.
    pub fn sign(self) -> i8 {
        if self.is_decreasing() {
            -1
        } else {
            1
        }
    }

    /// Column position among the lap symbols `A, B, L, M, R`.
    pub fn lap_index(self) -> Option<usize> {
        match self {
            Symbol::A => Some(0),
            Symbol::B => Some(1),
            Symbol::L => Some(2),
            Symbol::M => Some(3),
            Symbol::R => Some(4),
            Symbol::C => None,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Tail {
    /// Only the head is known.
    Unresolved,
    /// The head ends in `A` and `A` repeats forever.
    AInfinity,
    /// `head[start..]` repeats forever.
    Periodic(usize),
}

/// Finite or eventually periodic word over `{A,B,L,C,M,R}`.
///
/// Words are kept canonical: periodic blocks are primitive with the shortest
/// possible preperiod, a block containing `C` is rotated so `C` closes it, and
/// an all-`A` block is stored as [`Tail::AInfinity`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymbolWord {
    head: Vec<Symbol>,
    tail: Tail,
}

impl SymbolWord {
    pub fn finite(head: Vec<Symbol>) -> Self {
        Self {
            head,
            tail: Tail::Unresolved,
        }
    }

    /// `prefix` followed by `block` repeated forever.
    pub fn periodic(prefix: &[Symbol], block: &[Symbol]) -> Result<Self, SymbolicError> {
        if block.is_empty() {
            return Err(SymbolicError::EmptyBlock);
        }
        let mut head = prefix.to_vec();
        head.extend_from_slice(block);
        Self::canonical(head, Tail::Periodic(prefix.len()))
    }

    /// `prefix` followed by `A` forever.
    pub fn a_infinity(prefix: &[Symbol]) -> Self {
        Self::periodic(prefix, &[Symbol::A]).expect("non-empty block")
    }

    pub fn head(&self) -> &[Symbol] {
        &self.head
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    pub fn is_infinite(&self) -> bool {
        self.tail != Tail::Unresolved
    }

    /// Preperiod and repeating block of an infinite word.
    pub fn parts(&self) -> Option<(&[Symbol], &[Symbol])> {
        match self.tail {
            Tail::Unresolved => None,
            Tail::AInfinity => {
                let n = self.head.len();
                Some((&self.head[..n - 1], &self.head[n - 1..]))
            }
            Tail::Periodic(start) => Some((&self.head[..start], &self.head[start..])),
        }
    }

    pub fn period(&self) -> Option<usize> {
        self.parts().map(|(_, b)| b.len())
    }

    /// Symbol at index `i`, or `None` beyond the horizon of an unresolved word.
    pub fn symbol_at(&self, i: usize) -> Option<Symbol> {
        if i < self.head.len() {
            return Some(self.head[i]);
        }
        let (prefix, block) = self.parts()?;
        Some(block[(i - prefix.len()) % block.len()])
    }

    /// Number of symbols that can be read, `None` meaning unbounded.
    pub fn horizon(&self) -> Option<usize> {
        match self.tail {
            Tail::Unresolved => Some(self.head.len()),
            _ => None,
        }
    }

    /// The shift `sigma^n`.
    pub fn shift(&self, n: usize) -> Self {
        match self.parts() {
            None => Self::finite(self.head.iter().skip(n).copied().collect()),
            Some((prefix, block)) => {
                if n <= prefix.len() {
                    Self::periodic(&prefix[n..], block).expect("non-empty block")
                } else {
                    let r = (n - prefix.len()) % block.len();
                    let rotated: Vec<Symbol> =
                        block[r..].iter().chain(&block[..r]).copied().collect();
                    Self::periodic(&[], &rotated).expect("non-empty block")
                }
            }
        }
    }

    /// `s` followed by this word.
    pub fn prepend(&self, s: Symbol) -> Self {
        match self.parts() {
            None => {
                let mut head = vec![s];
                head.extend_from_slice(&self.head);
                Self::finite(head)
            }
            Some((prefix, block)) => {
                let mut p = vec![s];
                p.extend_from_slice(prefix);
                Self::periodic(&p, block).expect("non-empty block")
            }
        }
    }

    /// First `n` symbols (fewer for a short unresolved word).
    pub fn take(&self, n: usize) -> Vec<Symbol> {
        (0..n).map_while(|i| self.symbol_at(i)).collect()
    }

    /// Number of occurrences of `s` in the head and one copy of the block.
    pub fn count(&self, s: Symbol) -> usize {
        self.head.iter().filter(|&&x| x == s).count()
    }

    fn canonical(head: Vec<Symbol>, tail: Tail) -> Result<Self, SymbolicError> {
        let Tail::Periodic(start) = tail else {
            return Ok(Self { head, tail });
        };
        if start >= head.len() {
            return Err(SymbolicError::EmptyBlock);
        }
        let mut prefix = head[..start].to_vec();
        let mut block = head[start..].to_vec();
        block.truncate(primitive_period(&block));
        while let (Some(&p), Some(&b)) = (prefix.last(), block.last()) {
            if p != b {
                break;
            }
            prefix.pop();
            block.rotate_right(1);
        }
        if let Some(ci) = block.iter().rposition(|&s| s == Symbol::C) {
            let shift = ci + 1;
            if shift < block.len() {
                prefix.extend_from_slice(&block[..shift]);
                block.rotate_left(shift);
            }
        }
        let tail = if block == [Symbol::A] {
            Tail::AInfinity
        } else {
            Tail::Periodic(prefix.len())
        };
        prefix.extend(block);
        Ok(Self { head: prefix, tail })
    }
}

fn primitive_period(block: &[Symbol]) -> usize {
    let n = block.len();
    (1..=n)
        .find(|&p| n.is_multiple_of(p) && (0..n).all(|i| block[i] == block[i % p]))
        .unwrap_or(n)
}

impl fmt::Display for SymbolWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.head.iter().map(|s| s.as_char()).collect();
        match self.tail {
            Tail::Unresolved => write!(f, "{}...", s),
            Tail::AInfinity => write!(f, "{}^inf", s),
            Tail::Periodic(start) => write!(f, "{}({})^inf", &s[..start], &s[start..]),
        }
    }
}

impl fmt::Debug for SymbolWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn parse_symbols(s: &str) -> Result<Vec<Symbol>, SymbolicError> {
    s.chars()
        .map(|ch| Symbol::from_char(ch).ok_or_else(|| SymbolicError::Parse(s.to_string())))
        .collect()
}

impl FromStr for SymbolWord {
    type Err = SymbolicError;

    /// Accepts `RLR...`, `RBA^inf` and `M(RLRC)^inf`; a bare word is read
    /// as unresolved.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || SymbolicError::Parse(s.to_string());
        if let Some(body) = s.strip_suffix("^inf") {
            if let Some(open) = body.find('(') {
                let inner = body[open + 1..].strip_suffix(')').ok_or_else(bad)?;
                return Self::periodic(&parse_symbols(&body[..open])?, &parse_symbols(inner)?);
            }
            let head = parse_symbols(body)?;
            let (last, prefix) = head.split_last().ok_or_else(bad)?;
            return Self::periodic(prefix, &[*last]);
        }
        let body = s.strip_suffix("...").unwrap_or(s);
        Ok(Self::finite(parse_symbols(body)?))
    }
}

impl Serialize for SymbolWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SymbolWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
