//! Newton map of `f_c(x) = x^5 - c x + 1`, its structural points and orbits.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::reduction::c0;
use crate::symbolic::{is_admissible, order_compare, raw_kneading_prefix, Symbol, SymbolWord};

/// Default iteration tolerance.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Default iteration cap.
pub const DEFAULT_MAX_ITER: usize = 100_000;
/// Distance to `d1` or `d3` that counts as hitting a pole.
pub const POLE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NewtonError {
    #[error("x = {x} is a pole of the Newton map for c = {c}")]
    Pole { c: f64, x: f64 },
    #[error("non-finite input {0}")]
    NonFinite(f64),
    #[error("parameter c = {0} lies outside the window band (0, c0)")]
    OutsideBand(f64),
    #[error(
        "the critical orbit at c = {c} does not realise the requested word within the bracket"
    )]
    NoSolution { c: f64 },
    #[error("word is not an admissible periodic kneading word ending in C: {0}")]
    BadWord(String),
}

pub fn f(c: f64, x: f64) -> f64 {
    x.powi(5) - c * x + 1.0
}

pub fn f_prime(c: f64, x: f64) -> f64 {
    5.0 * x.powi(4) - c
}

/// `N(x) = (4x^5 - 1) / (5x^4 - c)`.
pub fn newton_eval(c: f64, x: f64) -> Result<f64, NewtonError> {
    if !x.is_finite() || !c.is_finite() {
        return Err(NewtonError::NonFinite(if x.is_finite() { c } else { x }));
    }
    let den = f_prime(c, x);
    if den.abs() <= 1e-14 * (1.0 + c.abs()) {
        return Err(NewtonError::Pole { c, x });
    }
    Ok((4.0 * x.powi(5) - 1.0) / den)
}

/// `N'(x) = 20 x^3 f(x) / f'(x)^2`.
pub fn newton_derivative(c: f64, x: f64) -> Result<f64, NewtonError> {
    let den = f_prime(c, x);
    if den.abs() <= 1e-14 * (1.0 + c.abs()) {
        return Err(NewtonError::Pole { c, x });
    }
    Ok(20.0 * x.powi(3) * f(c, x) / (den * den))
}

/// Ordered structural points `d0 < d1 < d2 = 0 < d3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalFrame {
    pub c: f64,
    pub d0: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

impl CriticalFrame {
    pub fn poles(&self) -> [f64; 2] {
        [self.d1, self.d3]
    }
}

pub fn critical_frame(c: f64) -> Result<CriticalFrame, NewtonError> {
    if !(c > 0.0 && c < c0()) {
        return Err(NewtonError::OutsideBand(c));
    }
    let d3 = (c / 5.0).powf(0.25);
    let d1 = -d3;
    Ok(CriticalFrame {
        c,
        d0: real_root(c, d1),
        d1,
        d2: 0.0,
        d3,
    })
}

/// The unique real root of `f_c` on `(-inf, d1]`, for `0 < c < c0`.
fn real_root(c: f64, d1: f64) -> f64 {
    // f(d1) > 0 and f(-2) = -31 + 2c < 0 on the band
    let (mut lo, mut hi) = (-2.0, d1);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(c, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..3 {
        let step = f(c, x) / f_prime(c, x);
        let next = x - step;
        if !(lo..=hi).contains(&next) {
            break;
        }
        x = next;
        if step.abs() <= 1e-16 * x.abs() {
            break;
        }
    }
    x
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum OrbitOutcome {
    ConvergedToRoot {
        root: f64,
    },
    /// Orbit returns to within tolerance after `period` steps from index `phase` on.
    PeriodicOrbit {
        period: usize,
        phase: usize,
    },
    HitPole,
    Truncated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitResult {
    pub points: Vec<f64>,
    pub outcome: OrbitOutcome,
}

fn near_pole(c: f64, x: f64) -> bool {
    c > 0.0 && ((x.abs() - (c / 5.0).powf(0.25)).abs() < POLE_TOL)
}

pub fn iterate_orbit(
    c: f64,
    x0: f64,
    max_iter: usize,
    tol: f64,
) -> Result<OrbitResult, NewtonError> {
    if !x0.is_finite() {
        return Err(NewtonError::NonFinite(x0));
    }
    if !c.is_finite() {
        return Err(NewtonError::NonFinite(c));
    }
    let max_period = (max_iter / 4).max(1);
    let mut points = Vec::with_capacity(max_iter.min(4096) + 1);
    let mut x = x0;
    let mut anchor = (0usize, x0);
    // candidate period with the index where confirmation started
    let mut candidate: Option<(usize, usize)> = None;
    for n in 0..=max_iter {
        if near_pole(c, x) {
            points.push(x);
            return Ok(OrbitResult {
                points,
                outcome: OrbitOutcome::HitPole,
            });
        }
        points.push(x);
        let next = match newton_eval(c, x) {
            Ok(v) if v.is_finite() => v,
            _ => {
                return Ok(OrbitResult {
                    points,
                    outcome: OrbitOutcome::HitPole,
                })
            }
        };
        if f(c, x).abs() < tol && (next - x).abs() <= 1e-6 * x.abs().max(1.0) {
            return Ok(OrbitResult {
                points,
                outcome: OrbitOutcome::ConvergedToRoot { root: next },
            });
        }
        let close = |a: f64, b: f64| (a - b).abs() <= tol * a.abs().max(1.0);
        match candidate {
            Some((k, start)) => {
                if !close(points[n], points[n - k]) {
                    candidate = None;
                    anchor = (n, x);
                } else if n >= start + 3 * k {
                    return Ok(OrbitResult {
                        points,
                        outcome: OrbitOutcome::PeriodicOrbit {
                            period: k,
                            phase: start - k,
                        },
                    });
                }
            }
            None => {
                let k = n - anchor.0;
                if k > 0 && k <= max_period && close(x, anchor.1) {
                    candidate = Some((k, n));
                } else if n.is_power_of_two() || k > max_period {
                    anchor = (n, x);
                }
            }
        }
        if n == max_iter {
            break;
        }
        x = next;
    }
    Ok(OrbitResult {
        points,
        outcome: OrbitOutcome::Truncated,
    })
}

/// Parameter in `bracket` whose critical orbit realises the periodic word
/// `(W C)^inf`, found by bisection on the kneading order (larger kneading
/// sequences belong to smaller `c`).
pub fn find_superstable_parameter(
    word: &SymbolWord,
    bracket: (f64, f64),
) -> Result<f64, NewtonError> {
    let bad = || NewtonError::BadWord(word.to_string());
    let (prefix, block) = word.parts().ok_or_else(bad)?;
    if !prefix.is_empty() || block.last() != Some(&Symbol::C) || !is_admissible(word) {
        return Err(bad());
    }
    let k = block.len();
    let (mut lo, mut hi) = bracket;
    for c in [lo, hi] {
        critical_frame(c)?;
    }
    if lo >= hi {
        return Err(NewtonError::NoSolution { c: lo });
    }
    let n = 8 * k + 64;
    let compare = |c: f64| -> Result<Ordering, NewtonError> {
        let frame = critical_frame(c)?;
        order_compare(&raw_kneading_prefix(&frame, n), word)
            .map_err(|_| NewtonError::NoSolution { c })
    };
    if compare(lo)? != Ordering::Greater {
        return Err(NewtonError::NoSolution { c: lo });
    }
    if compare(hi)? != Ordering::Less {
        return Err(NewtonError::NoSolution { c: hi });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        match compare(mid) {
            Ok(Ordering::Greater) => lo = mid,
            Ok(Ordering::Less) => hi = mid,
            Ok(Ordering::Equal) => return Ok(mid),
            // a short raw prefix (orbit through a pole) sits on neither side
            Err(_) => hi = mid,
        }
    }
    let c = 0.5 * (lo + hi);
    let mut x = 0.0;
    for _ in 0..k {
        x = newton_eval(c, x)?;
    }
    if x.abs() > 1e-6 {
        return Err(NewtonError::NoSolution { c });
    }
    Ok(c)
}

/// Points `0, N(0), ..., N^(k-1)(0)` of the critical orbit.
pub fn critical_orbit(c: f64, k: usize) -> Result<Vec<f64>, NewtonError> {
    let mut pts = Vec::with_capacity(k);
    let mut x = 0.0;
    for _ in 0..k {
        pts.push(x);
        x = newton_eval(c, x)?;
    }
    Ok(pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn newton_values() {
        assert!((newton_eval(0.0, 1.0).unwrap() - 0.6).abs() < 1e-15);
        assert!((newton_eval(1.0, 2.0).unwrap() - 127.0 / 79.0).abs() < 1e-15);
        assert!((newton_eval(1.0, 0.0).unwrap() - 1.0).abs() < 1e-15);
        let d1 = -(0.5f64 / 5.0).powf(0.25);
        assert!(matches!(
            newton_eval(0.5, d1),
            Err(NewtonError::Pole { .. })
        ));
    }

    #[test]
    fn newton_matches_definition() {
        for &(c, x) in &[(1.0, 0.3), (1.3, -2.0), (0.2, 5.0), (1.6, 0.9)] {
            let direct = x - f(c, x) / f_prime(c, x);
            let n = newton_eval(c, x).unwrap();
            assert!((n - direct).abs() <= 1e-12 * direct.abs().max(1.0));
        }
    }

    #[test]
    fn frame_closed_forms() {
        let fr = critical_frame(5.0 / 16.0).unwrap();
        assert!((fr.d1 + 0.5).abs() < 1e-15 && (fr.d3 - 0.5).abs() < 1e-15);
        let fr = critical_frame(1.0).unwrap();
        assert!((fr.d0 + 1.1673).abs() < 1e-4);
        assert!(f(1.0, fr.d0).abs() < 1e-12);
        assert!(fr.d0 < fr.d1 && fr.d1 < fr.d2 && fr.d2 < fr.d3);
        let fr = critical_frame(1e-9).unwrap();
        assert!((fr.d0 + 1.0).abs() < 1e-9);
        assert!(fr.d3 < 0.02);
    }

    #[test]
    fn frame_rejects_outside_band() {
        assert!(critical_frame(0.0).is_err());
        assert!(critical_frame(c0()).is_err());
        assert!(critical_frame(-1.0).is_err());
    }

    #[test]
    fn frame_points_satisfy_definitions() {
        for i in 1..50 {
            let c = c0() * i as f64 / 50.0;
            let fr = critical_frame(c).unwrap();
            assert!(f(c, fr.d0).abs() < 1e-12);
            assert!(f_prime(c, fr.d1).abs() < 1e-12);
            assert!(f_prime(c, fr.d3).abs() < 1e-12);
            assert_eq!(newton_derivative(c, fr.d2).unwrap(), 0.0);
        }
    }

    #[test]
    fn fixed_point_converges_immediately() {
        let fr = critical_frame(1.0).unwrap();
        let r = iterate_orbit(1.0, fr.d0, 100, DEFAULT_TOL).unwrap();
        assert_eq!(r.points.len(), 1);
        match r.outcome {
            OrbitOutcome::ConvergedToRoot { root } => assert!((root - fr.d0).abs() < 1e-12),
            o => panic!("unexpected {:?}", o),
        }
    }

    #[test]
    fn small_c_critical_orbit_converges() {
        let fr = critical_frame(0.1).unwrap();
        let r = iterate_orbit(0.1, 0.0, DEFAULT_MAX_ITER, DEFAULT_TOL).unwrap();
        match r.outcome {
            OrbitOutcome::ConvergedToRoot { root } => assert!((root - fr.d0).abs() < 1e-10),
            o => panic!("unexpected {:?}", o),
        }
    }

    #[test]
    fn pole_start_is_reported() {
        let d3 = (0.5f64 / 5.0).powf(0.25);
        let r = iterate_orbit(0.5, d3 + 1e-12, 100, DEFAULT_TOL).unwrap();
        assert_eq!(r.outcome, OrbitOutcome::HitPole);
    }

    #[test]
    fn superstable_windows() {
        let rlrc: SymbolWord = "(RLRC)^inf".parse().unwrap();
        let c = find_superstable_parameter(&rlrc, (1.33, 1.34)).unwrap();
        assert!((c - 1.334).abs() < 1e-3, "{c}");
        let r = iterate_orbit(c, 0.0, DEFAULT_MAX_ITER, DEFAULT_TOL).unwrap();
        assert!(
            matches!(r.outcome, OrbitOutcome::PeriodicOrbit { period: 4, .. }),
            "{:?}",
            r.outcome
        );

        let rc: SymbolWord = "(RC)^inf".parse().unwrap();
        let c2 = find_superstable_parameter(&rc, (0.05, c0() - 1e-6)).unwrap();
        let orbit = critical_orbit(c2, 3).unwrap();
        assert!(orbit[2].abs() < 1e-9);
        assert!((1.0 / c2 - 4f64.powf(-0.2)).abs() < 1e-12);

        assert!(matches!(
            find_superstable_parameter(&rlrc, (1.20, 1.25)),
            Err(NewtonError::NoSolution { .. })
        ));
        let fixed: SymbolWord = "(C)^inf".parse().unwrap();
        assert!(find_superstable_parameter(&fixed, (0.05, 1.6)).is_err());
    }

    #[test]
    fn derivative_sign_by_finite_differences() {
        let mut seed = 12345u64;
        let mut next = || {
            seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (seed >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..1000 {
            let c = 0.05 + 1.55 * next();
            let x = -3.0 + 6.0 * next();
            if f_prime(c, x).abs() < 1e-2 || x.abs() < 1e-3 || f(c, x).abs() < 1e-3 {
                continue;
            }
            let h = 1e-6;
            let fd = (newton_eval(c, x + h).unwrap() - newton_eval(c, x - h).unwrap()) / (2.0 * h);
            let an = newton_derivative(c, x).unwrap();
            assert_eq!(fd.signum(), an.signum(), "c={c} x={x}");
            assert_eq!(an.signum(), (x.powi(3) * f(c, x)).signum());
        }
    }
}
