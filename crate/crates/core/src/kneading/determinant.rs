use serde::{Deserialize, Serialize};

use super::series::{kneading_increment, FormalSymbolSeries};
use super::KneadingError;
use crate::poly::{rational_determinant, IntPolynomial, RationalFunctionInT};
use crate::symbolic::{KneadingData, Tail};

/// Branch signs of the Newton map on the laps `A, B, L, M, R`.
pub const LAP_SIGNS: [i8; 5] = [1, -1, -1, 1, 1];

/// Rows are the increments at `d0..d3`, columns the symbols `A, B, L, M, R`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KneadingMatrix {
    pub rows: [FormalSymbolSeries; 4],
}

impl KneadingMatrix {
    pub fn from_data(data: &KneadingData) -> Result<Self, KneadingError> {
        Ok(Self {
            rows: [
                kneading_increment(0, data)?,
                kneading_increment(1, data)?,
                kneading_increment(2, data)?,
                kneading_increment(3, data)?,
            ],
        })
    }

    pub fn entry(&self, row: usize, col: usize) -> &RationalFunctionInT {
        &self.rows[row].coeffs()[col]
    }

    /// The 4x4 minor with column `col` removed.
    pub fn minor(&self, col: usize) -> Vec<Vec<RationalFunctionInT>> {
        self.rows
            .iter()
            .map(|r| {
                r.coeffs()
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != col)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KneadingDeterminant {
    /// `D(t)` in lowest terms.
    pub d: RationalFunctionInT,
    /// Deleted column (0-based over `A, B, L, M, R`).
    pub column: usize,
    /// Period of the kneading sequence; `None` for an `A^inf` tail.
    pub period: Option<usize>,
    /// `(1 - t) d_Y(t) = D(t) (1 - t)^2 (1 - t^k)`, or `D(t) (1 - t)^2` for an
    /// `A^inf` tail, when this is a polynomial.
    pub cleared: Option<IntPolynomial>,
    /// `d_Y(t) = D(t) (1 - t)(1 - t^k)` when this is a polynomial.
    pub d_y: Option<IntPolynomial>,
}

impl KneadingDeterminant {
    /// Numerator of `D(t)` in lowest terms, normalised to a positive constant term.
    pub fn numerator(&self) -> &IntPolynomial {
        self.d.numerator()
    }
}

/// Kneading determinant with the `B` column removed.
pub fn kneading_determinant(data: &KneadingData) -> Result<KneadingDeterminant, KneadingError> {
    kneading_determinant_with_column(data, 1)
}

/// `D(t) = (-1)^(i+1) D_i(t) / (1 - eps_i t)` with `i` the 1-based deleted column.
pub fn kneading_determinant_with_column(
    data: &KneadingData,
    column: usize,
) -> Result<KneadingDeterminant, KneadingError> {
    if column >= 5 {
        return Err(KneadingError::BadIndex(column));
    }
    let matrix = KneadingMatrix::from_data(data)?;
    let minor = rational_determinant(&matrix.minor(column))?;
    if minor.is_zero() {
        return Err(KneadingError::Degenerate);
    }
    let sign = if column.is_multiple_of(2) { 1 } else { -1 };
    let den = IntPolynomial::from_i64(&[1, -(LAP_SIGNS[column] as i64)]);
    let d = minor
        .mul_poly(&IntPolynomial::constant(sign))?
        .div(&RationalFunctionInT::from_poly(den))?
        .reduced()?;

    let one_minus_t = IntPolynomial::one_minus_t_pow(1);
    let period = match data.y.tail() {
        Tail::AInfinity => None,
        Tail::Periodic(_) => data.y.period(),
        Tail::Unresolved => return Err(KneadingError::UnresolvedWord(data.y.to_string())),
    };
    let tail_factor = period.map_or_else(IntPolynomial::one, IntPolynomial::one_minus_t_pow);
    let base = one_minus_t.mul(&tail_factor)?;
    let d_y = d.mul_poly(&base)?.as_polynomial()?;
    let cleared = d.mul_poly(&base.mul(&one_minus_t)?)?.as_polynomial()?;
    Ok(KneadingDeterminant {
        d,
        column,
        period,
        cleared,
        d_y,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::SymbolWord;

    fn data(s: &str) -> KneadingData {
        KneadingData::from_kneading_sequence(s.parse::<SymbolWord>().unwrap())
    }

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn rlrc_determinant() {
        let det = kneading_determinant(&data("(RLRC)^inf")).unwrap();
        // (1+t)(1-t-t^2-t^3) / ((1-t)(1-t^4))
        let expected = RationalFunctionInT::new(
            p(&[1, 1]).mul(&p(&[1, -1, -1, -1])).unwrap(),
            p(&[1, -1]).mul(&IntPolynomial::one_minus_t_pow(4)).unwrap(),
        )
        .unwrap();
        assert!(det.d.equals(&expected).unwrap(), "{}", det.d);
        assert_eq!(det.d_y, Some(p(&[1, 0, -2, -2, -1])));
        assert_eq!(det.cleared, Some(p(&[1, -1, -2, 0, 1, 1])));
        assert_eq!(det.period, Some(4));
    }

    #[test]
    fn every_column_agrees() {
        for y in [
            "(RLRC)^inf",
            "(RC)^inf",
            "(MMRC)^inf",
            "RA^inf",
            "(M)^inf",
            "(RRLRRC)^inf",
        ] {
            let d = data(y);
            let base = kneading_determinant(&d).unwrap();
            for col in 0..5 {
                let other = kneading_determinant_with_column(&d, col).unwrap();
                assert!(other.d.equals(&base.d).unwrap(), "{y} column {col}");
            }
        }
    }

    #[test]
    fn non_polynomial_numerator_for_rc() {
        let det = kneading_determinant(&data("(RC)^inf")).unwrap();
        assert_eq!(det.d_y, None);
        assert_eq!(det.cleared, Some(p(&[1, -1, -1, -1])));
    }

    #[test]
    fn maximal_sequence() {
        let det = kneading_determinant(&data("(M)^inf")).unwrap();
        assert_eq!(det.numerator(), &p(&[1, -2, -1]));
        assert_eq!(det.cleared, Some(p(&[1, -2, -1])));
    }

    #[test]
    fn convergent_sequences() {
        let a = kneading_determinant(&data("RA^inf")).unwrap();
        let b = kneading_determinant(&data("RBA^inf")).unwrap();
        assert_eq!(a.cleared, Some(p(&[1, -1, -2])));
        assert_eq!(a.cleared, b.cleared);
        assert_eq!(a.period, None);
    }

    #[test]
    fn unresolved_sequence_is_rejected() {
        assert!(kneading_determinant(&data("RLR...")).is_err());
        assert!(kneading_determinant_with_column(&data("(RC)^inf"), 5).is_err());
    }
}
