use std::cmp::Ordering;

use super::word::{Symbol, SymbolWord, Tail};
use super::SymbolicError;

/// Number of symbols after which two eventually periodic words that still
/// agree are equal.
fn agreement_bound(x: &SymbolWord, y: &SymbolWord) -> Option<usize> {
    let (px, bx) = x.parts()?;
    let (py, by) = y.parts()?;
    Some(px.len().max(py.len()) + bx.len() * by.len())
}

/// Signed lexicographic order: the comparison at the first differing index is
/// reversed when an odd number of `B`/`L` symbols precede it.
pub fn order_compare(x: &SymbolWord, y: &SymbolWord) -> Result<Ordering, SymbolicError> {
    let bound = agreement_bound(x, y);
    let mut odd = false;
    let mut i = 0;
    loop {
        if bound == Some(i) {
            return Ok(Ordering::Equal);
        }
        let (a, b) = match (x.symbol_at(i), y.symbol_at(i)) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                return Err(SymbolicError::Incomparable {
                    left: x.to_string(),
                    right: y.to_string(),
                })
            }
        };
        if a != b {
            let ord = a.cmp(&b);
            return Ok(if odd { ord.reverse() } else { ord });
        }
        if a.is_decreasing() {
            odd = !odd;
        }
        i += 1;
    }
}

/// Entry of the lap transition matrix `T`, extended to `C`: only `R` covers
/// the critical point and `C` maps onto `M` or `R`.
pub fn transition_allowed(s: Symbol, t: Symbol) -> bool {
    use Symbol::*;
    match (s, t) {
        (C, C) => false,
        (_, C) => transition_allowed(s, L) && transition_allowed(s, M),
        (C, t) => matches!(t, M | R),
        (A | B, t) => t == A,
        (L | M, t) => matches!(t, M | R),
        (R, _) => true,
    }
}

/// Admissibility of a kneading sequence `Y` (the orbit of `N(d2)`).
///
/// Checks every transition of `C Y`, that `C` only closes a purely periodic
/// block, that `A` or `B` is followed by `A` forever, and that the shift
/// following each `L` or `M` is not smaller than `Y`.
pub fn is_admissible(y: &SymbolWord) -> bool {
    let Some((prefix, block)) = y.parts() else {
        return false;
    };
    let has_c = y.head().contains(&Symbol::C);
    if has_c {
        let c_count = block.iter().filter(|&&s| s == Symbol::C).count();
        if !prefix.is_empty() || c_count != 1 || block.last() != Some(&Symbol::C) {
            return false;
        }
    }
    let span = prefix.len() + 2 * block.len();
    let symbols = y.take(span);
    let mut prev = Symbol::C;
    for &s in &symbols {
        if !transition_allowed(prev, s) {
            return false;
        }
        prev = s;
    }
    let a_inf = SymbolWord::a_infinity(&[]);
    for (j, &s) in symbols[..prefix.len() + block.len()].iter().enumerate() {
        let rest = y.shift(j + 1);
        match s {
            Symbol::A | Symbol::B => {
                if rest != a_inf {
                    return false;
                }
            }
            Symbol::L | Symbol::M => match order_compare(&rest, y) {
                Ok(Ordering::Less) | Err(_) => return false,
                Ok(_) => {}
            },
            Symbol::C | Symbol::R => {}
        }
    }
    matches!(y.tail(), Tail::AInfinity | Tail::Periodic(_))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> SymbolWord {
        s.parse().unwrap()
    }

    #[test]
    fn ordering_examples() {
        assert_eq!(
            order_compare(&w("(MRRM)^inf"), &w("(MRRR)^inf")).unwrap(),
            Ordering::Less
        );
        assert_eq!(
            order_compare(&w("MRRM..."), &w("MRRR...")).unwrap(),
            Ordering::Less
        );
        assert_eq!(
            order_compare(&w("RLRA^inf"), &w("(RLRR)^inf")).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            order_compare(&w("RLRA..."), &w("RLRR...")).unwrap(),
            Ordering::Greater
        );
        let y = w("(RLRC)^inf");
        assert_eq!(order_compare(&y, &y).unwrap(), Ordering::Equal);
        assert_eq!(
            order_compare(&w("(RL)^inf"), &w("(RLRL)^inf")).unwrap(),
            Ordering::Equal
        );
    }

    #[test]
    fn unresolved_without_difference_is_incomparable() {
        assert!(order_compare(&w("RLR..."), &w("(RLRC)^inf")).is_err());
        assert!(order_compare(&w("RLM..."), &w("(RLRC)^inf")).is_ok());
    }

    #[test]
    fn transition_rows() {
        use Symbol::*;
        assert!(transition_allowed(A, A));
        assert!(!transition_allowed(L, A));
        assert!(transition_allowed(R, L));
        assert!(!transition_allowed(B, B));
        assert!(transition_allowed(R, C));
        assert!(!transition_allowed(M, C));
        assert!(!transition_allowed(C, L));
        assert!(transition_allowed(C, M));
        let row_sums: Vec<usize> = Symbol::LAPS
            .iter()
            .map(|&s| {
                Symbol::LAPS
                    .iter()
                    .filter(|&&t| transition_allowed(s, t))
                    .count()
            })
            .collect();
        assert_eq!(row_sums, vec![1, 1, 2, 2, 5]);
    }

    #[test]
    fn admissibility_examples() {
        assert!(is_admissible(&w("(RLRC)^inf")));
        assert!(!is_admissible(&w("(LMAC)^inf")));
        assert!(!is_admissible(&w("(RMRC)^inf")));
        assert!(is_admissible(&w("(RC)^inf")));
        assert!(is_admissible(&w("RA^inf")));
        assert!(is_admissible(&w("RBA^inf")));
        assert!(is_admissible(&w("(M)^inf")));
        assert!(!is_admissible(&w("(C)^inf")));
        assert!(!is_admissible(&w("RLR...")));
        assert!(!is_admissible(&w("R(RC)^inf")));
    }

    #[test]
    fn admissible_periodic_counts_by_length() {
        let mut counts = vec![0usize; 7];
        for len in 1..=6u32 {
            for code in 0..5usize.pow(len - 1) {
                let mut block = Vec::new();
                let mut k = code;
                for _ in 0..len - 1 {
                    block.push(Symbol::LAPS[k % 5]);
                    k /= 5;
                }
                block.push(Symbol::C);
                let y = SymbolWord::periodic(&[], &block).unwrap();
                if y.period() == Some(len as usize) && is_admissible(&y) {
                    counts[len as usize] += 1;
                }
            }
        }
        assert_eq!(counts, vec![0, 0, 1, 2, 4, 8, 16]);
    }
}
