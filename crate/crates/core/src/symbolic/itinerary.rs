use serde::{Deserialize, Serialize};

use super::word::{Symbol, SymbolWord};
use super::SymbolicError;
use crate::newton::{critical_frame, newton_eval, CriticalFrame};

/// Distance to `d2` that codes as `C`, and to `d1`/`d3` that is rejected.
pub const SYMBOL_TOL: f64 = 1e-10;
/// Longest period recognised from a numerically converging orbit.
pub const MAX_TAIL_PERIOD: usize = 64;

/// Lap symbol of `x`, without any tolerance: `C` only for `x == 0`.
pub fn lap_symbol(frame: &CriticalFrame, x: f64) -> Symbol {
    if x <= frame.d0 {
        Symbol::A
    } else if x < frame.d1 {
        Symbol::B
    } else if x < 0.0 {
        Symbol::L
    } else if x == 0.0 {
        Symbol::C
    } else if x < frame.d3 {
        Symbol::M
    } else {
        Symbol::R
    }
}

fn near_d0(frame: &CriticalFrame, x: f64) -> bool {
    x <= frame.d0 || (x - frame.d0).abs() <= SYMBOL_TOL
}

/// Itinerary of `x0` under the Newton map for `length` steps.
///
/// An iterate within [`SYMBOL_TOL`] of `0` codes as `C` and is snapped to `0`;
/// reaching `A` (or `d0`) ends the word with `A^inf`; a second `C`, or a
/// numerically periodic orbit, gives a periodic tail.
pub fn itinerary(c: f64, x0: f64, length: usize) -> Result<SymbolWord, SymbolicError> {
    let frame = critical_frame(c)?;
    let mut syms = Vec::with_capacity(length);
    let mut xs = Vec::with_capacity(length);
    let mut last_c: Option<usize> = None;
    let mut x = x0;
    for i in 0..length {
        if !x.is_finite() {
            return Err(SymbolicError::UndefinedItinerary { c, index: i });
        }
        if (x - frame.d1).abs() < SYMBOL_TOL || (x - frame.d3).abs() < SYMBOL_TOL {
            return Err(SymbolicError::UndefinedItinerary { c, index: i });
        }
        if near_d0(&frame, x) {
            syms.push(Symbol::A);
            return Ok(SymbolWord::a_infinity(&syms[..i]));
        }
        let s = if x.abs() < SYMBOL_TOL {
            x = 0.0;
            Symbol::C
        } else {
            lap_symbol(&frame, x)
        };
        syms.push(s);
        xs.push(x);
        if s == Symbol::C {
            if let Some(prev) = last_c {
                return SymbolWord::periodic(&syms[..=prev], &syms[prev + 1..]);
            }
            last_c = Some(i);
        }
        x = newton_eval(c, x).map_err(|_| SymbolicError::UndefinedItinerary { c, index: i + 1 })?;
    }
    Ok(detect_numeric_period(&syms, &xs).unwrap_or_else(|| SymbolWord::finite(syms)))
}

fn detect_numeric_period(syms: &[Symbol], xs: &[f64]) -> Option<SymbolWord> {
    let n = xs.len();
    (1..=MAX_TAIL_PERIOD.min(n / 4)).find_map(|k| {
        let stable = (n - 3 * k..n).all(|j| {
            syms[j] == syms[j - k] && (xs[j] - xs[j - k]).abs() <= 1e-9 * xs[j].abs().max(1.0)
        });
        stable.then(|| SymbolWord::periodic(&syms[..n - k], &syms[n - k..]).ok())?
    })
}

/// First `n` symbols of the kneading sequence (the orbit of `N(0) = 1/c`)
/// coded without tolerances, for bisection in parameter space.
pub fn raw_kneading_prefix(frame: &CriticalFrame, n: usize) -> SymbolWord {
    let mut syms = Vec::with_capacity(n);
    let mut x = 1.0 / frame.c;
    for _ in 0..n {
        if near_d0(frame, x) {
            return SymbolWord::a_infinity(&syms);
        }
        let s = lap_symbol(frame, x);
        syms.push(s);
        match newton_eval(frame.c, x) {
            Ok(v) if v.is_finite() => x = v,
            _ => break,
        }
    }
    SymbolWord::finite(syms)
}

/// Two one-sided words at a discontinuity or turning point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SidedWord {
    pub plus: SymbolWord,
    pub minus: SymbolWord,
}

/// Shifted itineraries `(U, X, Y, Z)` of `d0, d1, d2, d3`; `Y` is the
/// kneading sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KneadingData {
    pub u: SymbolWord,
    pub x: SidedWord,
    pub y: SymbolWord,
    pub z: SidedWord,
}

impl KneadingData {
    /// The orbits of `d0`, `d1` and `d3` code the same way for every `c` in
    /// the band, so the data is determined by `Y`.
    pub fn from_kneading_sequence(y: SymbolWord) -> Self {
        let a_inf = SymbolWord::a_infinity(&[]);
        let r_inf = SymbolWord::periodic(&[], &[Symbol::R]).expect("non-empty block");
        Self {
            u: a_inf.clone(),
            x: SidedWord {
                plus: r_inf.clone(),
                minus: a_inf.clone(),
            },
            y,
            z: SidedWord {
                plus: a_inf,
                minus: r_inf,
            },
        }
    }

    /// First symbols of the one-sided itineraries of `d_i^+` and `d_i^-`.
    pub fn leading_symbols(i: usize) -> Option<(Symbol, Symbol)> {
        use Symbol::*;
        Some(match i {
            0 => (B, A),
            1 => (L, B),
            2 => (M, L),
            3 => (R, M),
            _ => return None,
        })
    }

    /// Shifted words following `d_i^+` and `d_i^-`.
    pub fn followers(&self, i: usize) -> Option<(&SymbolWord, &SymbolWord)> {
        Some(match i {
            0 => (&self.u, &self.u),
            1 => (&self.x.plus, &self.x.minus),
            2 => (&self.y, &self.y),
            3 => (&self.z.plus, &self.z.minus),
            _ => return None,
        })
    }

    /// Full one-sided itineraries of `d_i^+` and `d_i^-`.
    pub fn one_sided(&self, i: usize) -> Option<SidedWord> {
        let (sp, sm) = Self::leading_symbols(i)?;
        let (wp, wm) = self.followers(i)?;
        Some(SidedWord {
            plus: wp.prepend(sp),
            minus: wm.prepend(sm),
        })
    }
}

/// Kneading data at parameter `c`, reading `length` symbols of the critical orbit.
pub fn kneading_data(c: f64, length: usize) -> Result<KneadingData, SymbolicError> {
    let y = itinerary(c, 1.0 / c, length)?;
    Ok(KneadingData::from_kneading_sequence(y))
}
