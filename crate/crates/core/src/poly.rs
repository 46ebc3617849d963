//! Exact integer polynomials in `t` and ratios of them.
//!
//! All arithmetic is checked: an overflow or a division that would leave a
//! non-integer coefficient is reported as a [`PolyError`] instead of being
//! rounded.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("integer overflow in polynomial arithmetic")]
    Overflow,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division is not exact over the integers")]
    Inexact,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
}

/// Polynomial with integer coefficients, lowest power first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<i128>", into = "Vec<i128>")]
pub struct IntPolynomial {
    coeffs: Vec<i128>,
}

impl From<Vec<i128>> for IntPolynomial {
    fn from(coeffs: Vec<i128>) -> Self {
        Self::new(coeffs)
    }
}

impl From<IntPolynomial> for Vec<i128> {
    fn from(p: IntPolynomial) -> Self {
        p.coeffs
    }
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| c as i128).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i128) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^power`
    pub fn monomial(c: i128, power: usize) -> Self {
        let mut coeffs = vec![0; power + 1];
        coeffs[power] = c;
        Self::new(coeffs)
    }

    /// `1 - t^m`
    pub fn one_minus_t_pow(m: usize) -> Self {
        if m == 0 {
            return Self::zero();
        }
        let mut coeffs = vec![0; m + 1];
        coeffs[0] = 1;
        coeffs[m] = -1;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> i128 {
        self.coeffs.get(power).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> i128 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(
                self.coeff(i)
                    .checked_add(other.coeff(i))
                    .ok_or(PolyError::Overflow)?,
            );
        }
        Ok(Self::new(out))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, k: i128) -> Result<Self, PolyError> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for &c in &self.coeffs {
            out.push(c.checked_mul(k).ok_or(PolyError::Overflow)?);
        }
        Ok(Self::new(out))
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Self::new(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let mut out = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let term = a.checked_mul(b).ok_or(PolyError::Overflow)?;
                out[i + j] = out[i + j].checked_add(term).ok_or(PolyError::Overflow)?;
            }
        }
        Ok(Self::new(out))
    }

    /// Quotient and remainder when `divisor` has leading coefficient ±1,
    /// or more generally when every step divides exactly.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        let dd = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![0i128; nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let top = rem[i + dd];
            if top == 0 {
                continue;
            }
            if top % lead != 0 {
                return Err(PolyError::Inexact);
            }
            let q = top / lead;
            quot[i] = q;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let term = q.checked_mul(d).ok_or(PolyError::Overflow)?;
                rem[i + j] = rem[i + j].checked_sub(term).ok_or(PolyError::Overflow)?;
            }
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact division; any remainder is an error.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, PolyError> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::Inexact)
        }
    }

    /// Greatest common divisor of the coefficients (non-negative).
    pub fn content(&self) -> i128 {
        self.coeffs.iter().fold(0i128, |g, &c| gcd_i128(g, c))
    }

    pub fn primitive_part(&self) -> Self {
        let g = self.content();
        if g == 0 {
            return Self::zero();
        }
        let sign = if self.leading() < 0 { -1 } else { 1 };
        Self::new(self.coeffs.iter().map(|c| sign * c / g).collect())
    }

    /// Pseudo-remainder of `self` by `divisor`.
    fn pseudo_rem(&self, divisor: &Self) -> Result<Self, PolyError> {
        let dd = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let lead = divisor.leading();
        let mut rem = self.clone();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let top = rem.leading();
            let lhs = rem.scale(lead)?;
            let rhs = divisor.scale(top)?.shift(rd - dd);
            rem = lhs.sub(&rhs)?.primitive_part_keep_sign();
        }
        Ok(rem)
    }

    fn primitive_part_keep_sign(&self) -> Self {
        let g = self.content();
        if g == 0 {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|c| c / g).collect())
    }

    /// Primitive gcd over `Z[t]`, normalised to a positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Ok(other.primitive_part());
        }
        if other.is_zero() {
            return Ok(self.primitive_part());
        }
        let content = gcd_i128(self.content(), other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b)?;
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(content)
    }

    /// Evaluate at a real point (Horner).
    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * t + c as f64)
    }

    /// Exact value at `t = 1`.
    pub fn eval_at_one(&self) -> Result<i128, PolyError> {
        self.coeffs.iter().try_fold(0i128, |acc, &c| {
            acc.checked_add(c).ok_or(PolyError::Overflow)
        })
    }

    pub fn abs_coeff_sum(&self) -> f64 {
        self.coeffs.iter().map(|c| (*c as f64).abs()).sum()
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            let a = c.abs();
            match (i, a) {
                (0, _) => write!(f, "{}", a)?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{}t", a)?,
                (_, 1) => write!(f, "t^{}", i)?,
                _ => write!(f, "{}t^{}", a, i)?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Ratio of two integer polynomials.
///
/// Values are kept unreduced; [`RationalFunctionInT::reduced`] gives the
/// canonical form and equality is decided by cross-multiplication.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RationalFunctionInT {
    numerator: IntPolynomial,
    denominator: IntPolynomial,
}

impl RationalFunctionInT {
    pub fn new(numerator: IntPolynomial, denominator: IntPolynomial) -> Result<Self, PolyError> {
        if denominator.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(Self {
            numerator,
            denominator,
        })
    }

    pub fn from_poly(p: IntPolynomial) -> Self {
        Self {
            numerator: p,
            denominator: IntPolynomial::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(IntPolynomial::zero())
    }

    pub fn numerator(&self) -> &IntPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &IntPolynomial {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        if self.denominator == other.denominator {
            return Self::new(
                self.numerator.add(&other.numerator)?,
                self.denominator.clone(),
            );
        }
        let num = self
            .numerator
            .mul(&other.denominator)?
            .add(&other.numerator.mul(&self.denominator)?)?;
        Self::new(num, self.denominator.mul(&other.denominator)?)
    }

    pub fn neg(&self) -> Self {
        Self {
            numerator: self.numerator.neg(),
            denominator: self.denominator.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        Self::new(
            self.numerator.mul(&other.numerator)?,
            self.denominator.mul(&other.denominator)?,
        )
    }

    pub fn mul_poly(&self, p: &IntPolynomial) -> Result<Self, PolyError> {
        Self::new(self.numerator.mul(p)?, self.denominator.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self, PolyError> {
        if other.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Self::new(
            self.numerator.mul(&other.denominator)?,
            self.denominator.mul(&other.numerator)?,
        )
    }

    /// Lowest terms, with the denominator's constant term (or, failing that,
    /// its lowest non-zero coefficient) positive.
    pub fn reduced(&self) -> Result<Self, PolyError> {
        if self.numerator.is_zero() {
            return Ok(Self::zero());
        }
        let g = self.numerator.gcd(&self.denominator)?;
        let mut num = self.numerator.div_exact(&g)?;
        let mut den = self.denominator.div_exact(&g)?;
        let lowest = den.coeffs().iter().copied().find(|&c| c != 0).unwrap_or(1);
        if lowest < 0 {
            num = num.neg();
            den = den.neg();
        }
        let c = gcd_i128(num.content(), den.content());
        if c > 1 {
            num = Self::divide_content(&num, c);
            den = Self::divide_content(&den, c);
        }
        Self::new(num, den)
    }

    fn divide_content(p: &IntPolynomial, c: i128) -> IntPolynomial {
        IntPolynomial::new(p.coeffs().iter().map(|x| x / c).collect())
    }

    /// Exact equality as elements of the fraction field.
    pub fn equals(&self, other: &Self) -> Result<bool, PolyError> {
        Ok(self.numerator.mul(&other.denominator)? == other.numerator.mul(&self.denominator)?)
    }

    /// The polynomial this function equals, when it is one.
    pub fn as_polynomial(&self) -> Result<Option<IntPolynomial>, PolyError> {
        match self.numerator.div_rem(&self.denominator) {
            Ok((q, r)) if r.is_zero() => Ok(Some(q)),
            Ok(_) | Err(PolyError::Inexact) => Ok(None),
            Err(e) => Err(e),
        }
    }
}

impl fmt::Display for RationalFunctionInT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}

/// Determinant of a square matrix over `Z[t]` by fraction-free (Bareiss)
/// elimination.
pub fn poly_determinant(matrix: &[Vec<IntPolynomial>]) -> Result<IntPolynomial, PolyError> {
    let n = matrix.len();
    if let Some(row) = matrix.iter().find(|r| r.len() != n) {
        return Err(PolyError::NotSquare {
            rows: n,
            cols: row.len(),
        });
    }
    if n == 0 {
        return Ok(IntPolynomial::one());
    }
    let mut a: Vec<Vec<IntPolynomial>> = matrix.to_vec();
    let mut sign = 1i128;
    let mut prev = IntPolynomial::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(IntPolynomial::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k])?.sub(&a[i][k].mul(&a[k][j])?)?;
                a[i][j] = num.div_exact(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    a[n - 1][n - 1].scale(sign)
}

/// Determinant of a square matrix over the fraction field `Q(t)`: rows are
/// cleared of denominators, the resulting polynomial matrix goes through
/// [`poly_determinant`], and the row multipliers are divided back out.
pub fn rational_determinant(
    matrix: &[Vec<RationalFunctionInT>],
) -> Result<RationalFunctionInT, PolyError> {
    let mut cleared = Vec::with_capacity(matrix.len());
    let mut multiplier = IntPolynomial::one();
    for row in matrix {
        let mut common = IntPolynomial::one();
        for entry in row {
            if entry.denominator() != &common {
                let g = common.gcd(entry.denominator())?;
                common = common.mul(&entry.denominator().div_exact(&g)?)?;
            }
        }
        let mut out = Vec::with_capacity(row.len());
        for entry in row {
            let factor = common.div_exact(entry.denominator())?;
            out.push(entry.numerator().mul(&factor)?);
        }
        multiplier = multiplier.mul(&common)?;
        cleared.push(out);
    }
    RationalFunctionInT::new(poly_determinant(&cleared)?, multiplier)
}

impl PartialOrd for IntPolynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IntPolynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn normalises_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]).coeffs(), &[1, 2]);
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0]).degree(), None);
    }

    #[test]
    fn expands_factored_kneading_numerator() {
        // (1+t)(1-t-t^2-t^3)
        let prod = p(&[1, 1]).mul(&p(&[1, -1, -1, -1])).unwrap();
        assert_eq!(prod, p(&[1, 0, -2, -2, -1]));
    }

    #[test]
    fn exact_division_and_remainder() {
        let a = p(&[1, 0, -2, -2, -1]);
        let q = a
            .mul(&p(&[1, -1]))
            .unwrap()
            .div_exact(&p(&[1, -1]))
            .unwrap();
        assert_eq!(q, a);
        assert_eq!(
            p(&[1, -1, -1, -1]).div_exact(&p(&[1, -1])),
            Err(PolyError::Inexact)
        );
        assert_eq!(
            p(&[1]).div_exact(&IntPolynomial::zero()),
            Err(PolyError::DivisionByZero)
        );
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        let a = IntPolynomial::one_minus_t_pow(4);
        let b = IntPolynomial::one_minus_t_pow(6);
        // gcd(1-t^4, 1-t^6) = 1-t^2 up to sign
        assert_eq!(a.gcd(&b).unwrap(), p(&[-1, 0, 1]));
    }

    #[test]
    fn reduction_is_canonical() {
        let f = RationalFunctionInT::new(
            p(&[1, 0, -2, -2, -1]),
            p(&[1, -1]).mul(&IntPolynomial::one_minus_t_pow(4)).unwrap(),
        )
        .unwrap();
        let r = f.reduced().unwrap();
        assert_eq!(r.numerator(), &p(&[1, -1, -1, -1]));
        assert_eq!(r.denominator(), &p(&[1, -2, 2, -2, 1]));
        assert!(f.equals(&r).unwrap());
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let m = vec![
            vec![p(&[1, -1]), p(&[0, 1]), p(&[0])],
            vec![p(&[0]), p(&[1]), p(&[0, -1])],
            vec![p(&[0, -1]), p(&[0]), p(&[1, -1])],
        ];
        // cofactor expansion by hand: (1-t)*(1-t) - t*(0 - t^2) = 1 - 2t + t^2 + t^3
        assert_eq!(poly_determinant(&m).unwrap(), p(&[1, -2, 1, 1]));
    }

    #[test]
    fn determinant_with_zero_pivot_swaps_rows() {
        let m = vec![vec![p(&[0]), p(&[1])], vec![p(&[1]), p(&[0])]];
        assert_eq!(poly_determinant(&m).unwrap(), p(&[-1]));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p(&[1, 0, -2, -2, -1]).to_string(), "1 - 2t^2 - 2t^3 - t^4");
        assert_eq!(p(&[0, -1]).to_string(), "-t");
    }

    fn small_poly() -> impl Strategy<Value = IntPolynomial> {
        prop::collection::vec(-9i64..=9, 0..6).prop_map(|c| IntPolynomial::from_i64(&c))
    }

    proptest! {
        #[test]
        fn product_divides_back(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            let prod = a.mul(&b).unwrap();
            prop_assert_eq!(prod.div_exact(&b).unwrap(), a);
        }

        #[test]
        fn gcd_divides_both(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
            let x = a.mul(&c).unwrap();
            let y = b.mul(&c).unwrap();
            let g = x.gcd(&y).unwrap();
            prop_assert!(x.div_rem(&g).map(|(_, r)| r.is_zero()).unwrap_or(false));
            prop_assert!(y.div_rem(&g).map(|(_, r)| r.is_zero()).unwrap_or(false));
            // c's primitive part divides the gcd
            let cp = c.primitive_part();
            prop_assert!(g.div_rem(&cp).map(|(_, r)| r.is_zero()).unwrap_or(false));
        }
    }
}
