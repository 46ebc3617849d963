use std::fmt;

use serde::{Deserialize, Serialize};

use super::KneadingError;
use crate::poly::{IntPolynomial, PolyError, RationalFunctionInT};
use crate::symbolic::{KneadingData, Symbol, SymbolWord};

/// Formal combination `sum_s coeff_s(t) * s` over the lap symbols `A,B,L,M,R`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FormalSymbolSeries {
    coeffs: [RationalFunctionInT; 5],
}

impl FormalSymbolSeries {
    pub fn zero() -> Self {
        Self {
            coeffs: std::array::from_fn(|_| RationalFunctionInT::zero()),
        }
    }

    /// The series `1 * s`.
    pub fn unit(s: Symbol) -> Self {
        let mut out = Self::zero();
        if let Some(i) = s.lap_index() {
            out.coeffs[i] = RationalFunctionInT::from_poly(IntPolynomial::one());
        }
        out
    }

    pub fn from_coeffs(coeffs: [RationalFunctionInT; 5]) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[RationalFunctionInT; 5] {
        &self.coeffs
    }

    /// Coefficient of `s`; `C` carries none.
    pub fn coeff(&self, s: Symbol) -> Option<&RationalFunctionInT> {
        s.lap_index().map(|i| &self.coeffs[i])
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        let mut coeffs = self.coeffs.clone();
        for (c, o) in coeffs.iter_mut().zip(&other.coeffs) {
            *c = c.add(o)?;
        }
        Ok(Self { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        let mut coeffs = self.coeffs.clone();
        for (c, o) in coeffs.iter_mut().zip(&other.coeffs) {
            *c = c.sub(o)?;
        }
        Ok(Self { coeffs })
    }

    pub fn mul_poly(&self, p: &IntPolynomial) -> Result<Self, PolyError> {
        let mut coeffs = self.coeffs.clone();
        for c in coeffs.iter_mut() {
            *c = c.mul_poly(p)?;
        }
        Ok(Self { coeffs })
    }

    /// Exact equality coefficient by coefficient.
    pub fn equals(&self, other: &Self) -> Result<bool, PolyError> {
        for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
            if !a.equals(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for FormalSymbolSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (s, c) in Symbol::LAPS.iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{}*{}", c, s)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Accumulates `sum eps_m t^m [s_m]` with `C` resolved by which side of the
/// critical point the nearby orbit passes.
struct Walker {
    polys: [IntPolynomial; 5],
    sign: i8,
    side: i8,
}

impl Walker {
    fn new(side: i8) -> Self {
        Self {
            polys: std::array::from_fn(|_| IntPolynomial::zero()),
            sign: 1,
            side,
        }
    }

    fn push(&mut self, s: Symbol, power: usize) -> Result<(), PolyError> {
        let resolved = match s {
            Symbol::C if self.side > 0 => Symbol::M,
            Symbol::C => Symbol::L,
            other => other,
        };
        let i = resolved.lap_index().expect("lap symbol");
        self.polys[i] = self.polys[i].add(&IntPolynomial::monomial(self.sign as i128, power))?;
        self.sign *= resolved.sign();
        if s == Symbol::C {
            // the image of a neighbourhood of 0 lies above 1/c
            self.side = 1;
        } else if resolved.is_decreasing() {
            self.side = -self.side;
        }
        Ok(())
    }
}

/// Invariant coordinate of a one-sided itinerary.
///
/// The sign in front of `t^m` is the product of the lap signs of the
/// preceding symbols. A `C` codes a landing on `0` and is replaced by `M` or
/// `L` according to the side from which the orbit approaches it; the side
/// starts as `+`.
pub fn invariant_coordinate(word: &SymbolWord) -> Result<FormalSymbolSeries, KneadingError> {
    invariant_coordinate_from_side(word, 1)
}

pub fn invariant_coordinate_from_side(
    word: &SymbolWord,
    side: i8,
) -> Result<FormalSymbolSeries, KneadingError> {
    let (prefix, block) = word
        .parts()
        .ok_or_else(|| KneadingError::UnresolvedWord(word.to_string()))?;
    let mut walker = Walker::new(side);
    let mut prefix: Vec<Symbol> = prefix.to_vec();
    for (m, &s) in prefix.iter().enumerate() {
        walker.push(s, m)?;
    }
    if block.contains(&Symbol::C) && walker.side < 0 {
        // the first pass through the block starts on the other side
        for &s in block {
            walker.push(s, prefix.len())?;
            prefix.push(s);
        }
    }
    let head = walker.polys.clone();
    let head_sign = walker.sign;
    let mut tail = Walker::new(walker.side);
    for (j, &s) in block.iter().enumerate() {
        tail.push(s, j)?;
    }
    let rho = tail.sign;
    let p = block.len();
    let h = prefix.len();
    // Q / (1 - rho t^p), written over 1 - t^p or 1 - t^(2p)
    let (den, adjust) = if rho > 0 {
        (IntPolynomial::one_minus_t_pow(p), IntPolynomial::one())
    } else {
        (
            IntPolynomial::one_minus_t_pow(2 * p),
            IntPolynomial::one_minus_t_pow(p),
        )
    };
    let mut coeffs: [RationalFunctionInT; 5] = std::array::from_fn(|_| RationalFunctionInT::zero());
    for i in 0..5 {
        let periodic = tail.polys[i]
            .mul(&adjust)?
            .shift(h)
            .scale(head_sign as i128)?;
        let num = head[i].mul(&den)?.add(&periodic)?;
        coeffs[i] = RationalFunctionInT::new(num, den.clone())?;
    }
    Ok(FormalSymbolSeries { coeffs })
}

/// `theta(s W) = s + sign(s) t theta(W)`.
fn coordinate_with_leading(
    s: Symbol,
    rest: &SymbolWord,
) -> Result<FormalSymbolSeries, KneadingError> {
    let tail = invariant_coordinate(rest)?;
    let t = IntPolynomial::monomial(s.sign() as i128, 1);
    Ok(FormalSymbolSeries::unit(s).add(&tail.mul_poly(&t)?)?)
}

/// Jump `theta(d_i^+) - theta(d_i^-)` of the invariant coordinate at `d_i`.
pub fn kneading_increment(
    i: usize,
    data: &KneadingData,
) -> Result<FormalSymbolSeries, KneadingError> {
    let (sp, sm) = KneadingData::leading_symbols(i).ok_or(KneadingError::BadIndex(i))?;
    let (wp, wm) = data.followers(i).ok_or(KneadingError::BadIndex(i))?;
    let plus = coordinate_with_leading(sp, wp)?;
    let minus = coordinate_with_leading(sm, wm)?;
    Ok(plus.sub(&minus)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> SymbolWord {
        s.parse().unwrap()
    }

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn r(num: &[i64], den: &[i64]) -> RationalFunctionInT {
        RationalFunctionInT::new(p(num), p(den)).unwrap()
    }

    fn series(entries: [(&[i64], &[i64]); 5]) -> FormalSymbolSeries {
        FormalSymbolSeries::from_coeffs(entries.map(|(n, d)| r(n, d)))
    }

    #[test]
    fn a_infinity_coordinate() {
        let theta = invariant_coordinate(&w("A^inf")).unwrap();
        let expected = series([
            (&[1], &[1, -1]),
            (&[], &[1]),
            (&[], &[1]),
            (&[], &[1]),
            (&[], &[1]),
        ]);
        assert!(theta.equals(&expected).unwrap());
    }

    #[test]
    fn b_then_a_coordinate() {
        let theta = invariant_coordinate(&w("BA^inf")).unwrap();
        // B - A t/(1-t)
        let expected = series([
            (&[0, -1], &[1, -1]),
            (&[1], &[1]),
            (&[], &[1]),
            (&[], &[1]),
            (&[], &[1]),
        ]);
        assert!(theta.equals(&expected).unwrap());
    }

    #[test]
    fn critical_coordinate_for_rlrc() {
        let theta = invariant_coordinate(&w("M(RLRC)^inf")).unwrap();
        // M + (R t + L t^2 - R t^3 - L t^4) / (1 - t^4)
        let d4: &[i64] = &[1, 0, 0, 0, -1];
        let expected = series([
            (&[], &[1]),
            (&[], &[1]),
            (&[0, 0, 1, 0, -1], d4),
            (&[1], &[1]),
            (&[0, 1, 0, -1], d4),
        ]);
        assert!(theta.equals(&expected).unwrap(), "{theta}");
    }

    #[test]
    fn increments_for_rlrc() {
        let data = KneadingData::from_kneading_sequence(w("(RLRC)^inf"));
        let one: &[i64] = &[1];
        let q: &[i64] = &[1, -1];
        // B - A(1+t)/(1-t)
        let nu0 = series([
            (&[-1, -1], q),
            (one, one),
            (&[], one),
            (&[], one),
            (&[], one),
        ]);
        // L - B + (A - R) t/(1-t)
        let nu1 = series([
            (&[0, 1], q),
            (&[-1], one),
            (one, one),
            (&[], one),
            (&[0, -1], q),
        ]);
        // R - M + (A - R) t/(1-t)
        let nu3 = series([
            (&[0, 1], q),
            (&[], one),
            (&[], one),
            (&[-1], one),
            (&[1, -2], q),
        ]);
        assert!(kneading_increment(0, &data).unwrap().equals(&nu0).unwrap());
        assert!(kneading_increment(1, &data).unwrap().equals(&nu1).unwrap());
        assert!(kneading_increment(3, &data).unwrap().equals(&nu3).unwrap());
        assert!(kneading_increment(4, &data).is_err());
    }

    #[test]
    fn lower_side_of_critical_point() {
        // theta(d2^-) computed directly from the word agrees with L - t theta(Y)
        let y = w("(RLRC)^inf");
        let direct = invariant_coordinate_from_side(&y.prepend(Symbol::L), -1).unwrap();
        let composed = coordinate_with_leading(Symbol::L, &y).unwrap();
        assert!(direct.equals(&composed).unwrap());
    }

    #[test]
    fn unresolved_word_is_rejected() {
        assert!(matches!(
            invariant_coordinate(&w("RLR...")),
            Err(KneadingError::UnresolvedWord(_))
        ));
    }
}
