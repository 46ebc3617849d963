use serde::{Deserialize, Serialize};

use super::MarkovError;
use crate::poly::{IntPolynomial, RationalFunctionInT};

/// Width of the final bracket around `t*`.
pub const ROOT_TOL: f64 = 1e-13;
const SCAN_CELLS: usize = 4096;

pub fn t_star_min() -> f64 {
    std::f64::consts::SQRT_2 - 1.0
}

/// Upper bound `log(1 + sqrt 2)` of the entropy on the band.
pub fn max_entropy() -> f64 {
    (1.0 + std::f64::consts::SQRT_2).ln()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EntropyMethod {
    CharPoly,
    Kneading,
    LapGrowth,
}

impl EntropyMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            EntropyMethod::CharPoly => "charpoly",
            EntropyMethod::Kneading => "kneading",
            EntropyMethod::LapGrowth => "lap-growth",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyResult {
    pub t_star: f64,
    pub h: f64,
    pub method: EntropyMethod,
    /// No root in `[sqrt 2 - 1, 1]`: entropy set to zero by convention.
    pub zero_by_convention: bool,
}

impl EntropyResult {
    pub fn growth(&self) -> f64 {
        1.0 / self.t_star
    }
}

/// Smallest root of `p` in `[sqrt 2 - 1, 1]`, isolated by a sign-change scan
/// and bisection. Values within rounding of zero at either end count as roots.
pub fn smallest_root_in_band(p: &IntPolynomial) -> Option<f64> {
    if p.is_zero() {
        return None;
    }
    let lo = t_star_min();
    let eps = 1e-12 * p.abs_coeff_sum();
    if p.eval(lo).abs() <= eps {
        return Some(lo);
    }
    let step = (1.0 - lo) / SCAN_CELLS as f64;
    let mut a = lo;
    let mut fa = p.eval(a);
    for i in 1..=SCAN_CELLS {
        let b = if i == SCAN_CELLS {
            1.0
        } else {
            lo + step * i as f64
        };
        let fb = p.eval(b);
        if fb == 0.0 {
            return Some(b);
        }
        if fa.signum() != fb.signum() {
            return Some(bisect(p, a, b, fa));
        }
        a = b;
        fa = fb;
    }
    if p.eval_at_one().ok()? == 0 {
        return Some(1.0);
    }
    None
}

fn bisect(p: &IntPolynomial, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    while b - a > ROOT_TOL {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = p.eval(m);
        if fm == 0.0 {
            return m;
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

fn from_polynomial(p: &IntPolynomial, method: EntropyMethod) -> EntropyResult {
    match smallest_root_in_band(p) {
        Some(t) => EntropyResult {
            t_star: t,
            h: -t.ln(),
            method,
            zero_by_convention: false,
        },
        None => EntropyResult {
            t_star: 1.0,
            h: 0.0,
            method,
            zero_by_convention: true,
        },
    }
}

/// `h = log(1/t*)` with `t*` the smallest root of `det(I - tM)` in the band.
pub fn entropy_from_charpoly(p: &IntPolynomial) -> EntropyResult {
    from_polynomial(p, EntropyMethod::CharPoly)
}

/// `h = log(1/t*)` with `t*` the smallest zero of `D(t)` in the band.
pub fn entropy_from_kneading(d: &RationalFunctionInT) -> Result<EntropyResult, MarkovError> {
    let reduced = d.reduced()?;
    Ok(from_polynomial(
        reduced.numerator(),
        EntropyMethod::Kneading,
    ))
}
