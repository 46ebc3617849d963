//! Reduction of Bring-Jerrard quintics `x^5 + a x + b` to the canonical
//! family `f_c(x) = x^5 - c x + 1` and regime classification.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative tolerance used to recognise the tangency parameter.
pub const TANGENT_REL_TOL: f64 = 1e-12;

/// Threshold `c0 = 5 * 2^(-8/5)` where the local minimum of `f_c` touches zero.
pub fn c0() -> f64 {
    5.0 * 2f64.powf(-8.0 / 5.0)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReductionError {
    #[error("non-finite coefficient or point: {0}")]
    NonFinite(f64),
    #[error("point {x} is within tolerance of a pole of the {which} Newton map")]
    PoleProximity { x: f64, which: &'static str },
    #[error("Newton map produced a non-finite value at {0}")]
    NonFiniteImage(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BringJerrardQuintic {
    pub a: f64,
    pub b: f64,
}

impl BringJerrardQuintic {
    pub fn new(a: f64, b: f64) -> Result<Self, ReductionError> {
        for v in [a, b] {
            if !v.is_finite() {
                return Err(ReductionError::NonFinite(v));
            }
        }
        Ok(Self { a, b })
    }

    pub fn eval(&self, x: f64) -> f64 {
        x.powi(5) + self.a * x + self.b
    }

    pub fn derivative(&self, x: f64) -> f64 {
        5.0 * x.powi(4) + self.a
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum ReducedVariant {
    /// `x^5 - c x + 1`
    Canonical { c: f64 },
    /// `x^5 + x`
    PPlus,
    /// `x^5 - x`
    PMinus,
    /// `x^5`
    PZero,
}

/// Target of a reduction together with the conjugacy `tau(x) = scale * x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedQuintic {
    pub variant: ReducedVariant,
    pub scale: f64,
}

impl ReducedQuintic {
    pub fn tau(&self, x: f64) -> f64 {
        self.scale * x
    }

    pub fn canonical_c(&self) -> Option<f64> {
        match self.variant {
            ReducedVariant::Canonical { c } => Some(c),
            _ => None,
        }
    }

    /// `(p(y), p'(y))` for the reduced polynomial.
    fn eval_with_derivative(&self, y: f64) -> (f64, f64) {
        let y4 = y.powi(4);
        match self.variant {
            ReducedVariant::Canonical { c } => (y4 * y - c * y + 1.0, 5.0 * y4 - c),
            ReducedVariant::PPlus => (y4 * y + y, 5.0 * y4 + 1.0),
            ReducedVariant::PMinus => (y4 * y - y, 5.0 * y4 - 1.0),
            ReducedVariant::PZero => (y4 * y, 5.0 * y4),
        }
    }
}

pub fn reduce(q: &BringJerrardQuintic) -> Result<ReducedQuintic, ReductionError> {
    let q = BringJerrardQuintic::new(q.a, q.b)?;
    if q.b != 0.0 {
        let beta = real_fifth_root(q.b);
        let c = -q.a / beta.powi(4);
        return Ok(ReducedQuintic {
            variant: ReducedVariant::Canonical { c },
            scale: 1.0 / beta,
        });
    }
    if q.a == 0.0 {
        return Ok(ReducedQuintic {
            variant: ReducedVariant::PZero,
            scale: 1.0,
        });
    }
    let alpha = q.a.abs().powf(0.25);
    let variant = if q.a > 0.0 {
        ReducedVariant::PPlus
    } else {
        ReducedVariant::PMinus
    };
    Ok(ReducedQuintic {
        variant,
        scale: 1.0 / alpha,
    })
}

fn real_fifth_root(v: f64) -> f64 {
    v.signum() * v.abs().powf(0.2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    NegativeC,
    ZeroC,
    WindowBand,
    Tangent,
    ThreeRoots,
}

pub fn classify_regime(c: f64) -> Regime {
    let c0 = c0();
    if (c - c0).abs() <= TANGENT_REL_TOL * c0 {
        Regime::Tangent
    } else if c < 0.0 {
        Regime::NegativeC
    } else if c == 0.0 {
        Regime::ZeroC
    } else if c < c0 {
        Regime::WindowBand
    } else {
        Regime::ThreeRoots
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub absolute: f64,
    /// Absolute residual divided by `max(1, |N_f(tau(x))|)`.
    pub relative: f64,
}

const POLE_REL_TOL: f64 = 1e-10;

/// Compares `tau(N_g(x))` with `N_f(tau(x))`.
pub fn conjugacy_check(
    q: &BringJerrardQuintic,
    r: &ReducedQuintic,
    x: f64,
) -> Result<Residual, ReductionError> {
    if !x.is_finite() {
        return Err(ReductionError::NonFinite(x));
    }
    let q = BringJerrardQuintic::new(q.a, q.b)?;
    let dg = q.derivative(x);
    if dg.abs() <= POLE_REL_TOL * (5.0 * x.powi(4) + q.a.abs()) || dg == 0.0 {
        return Err(ReductionError::PoleProximity { x, which: "source" });
    }
    let y = r.tau(x);
    let (fy, dfy) = r.eval_with_derivative(y);
    if dfy.abs() <= POLE_REL_TOL * 5.0 * y.powi(4) || dfy == 0.0 {
        return Err(ReductionError::PoleProximity {
            x,
            which: "reduced",
        });
    }
    let lhs = r.tau(x - q.eval(x) / dg);
    let rhs = y - fy / dfy;
    if !lhs.is_finite() || !rhs.is_finite() {
        return Err(ReductionError::NonFiniteImage(x));
    }
    let absolute = (lhs - rhs).abs();
    Ok(Residual {
        absolute,
        relative: absolute / rhs.abs().max(1.0),
    })
}
