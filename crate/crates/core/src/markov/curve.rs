use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::entropy::{entropy_from_charpoly, entropy_from_kneading, EntropyMethod, EntropyResult};
use super::laps::lap_growth_estimate;
use super::partition::{checked_char_poly, markov_partition, transition_matrix};
use super::MarkovError;
use crate::kneading::kneading_determinant;
use crate::newton::{
    critical_frame, critical_orbit, find_superstable_parameter, iterate_orbit, OrbitOutcome,
};
use crate::symbolic::{kneading_data, lap_symbol, Symbol, SymbolWord, Tail};

/// Per-point work limits for an entropy sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveBudget {
    /// Iterations spent looking for an attracting cycle of the critical orbit.
    pub max_iter: usize,
    /// Periodicity tolerance of the critical orbit.
    pub tol: f64,
    /// Depth of the lap-number iteration for non-periodic parameters.
    pub lap_depth: usize,
    /// Symbols read from the critical orbit for the kneading route.
    pub symbols: usize,
}

impl Default for CurveBudget {
    fn default() -> Self {
        Self {
            max_iter: 4000,
            tol: 1e-10,
            lap_depth: 96,
            symbols: 400,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub c: f64,
    pub entropy: Option<EntropyResult>,
    /// Period of the attracting cycle of the critical orbit, if any.
    pub period: Option<usize>,
    pub error: Option<String>,
}

impl CurvePoint {
    pub fn h(&self) -> Option<f64> {
        self.entropy.map(|e| e.h)
    }

    pub fn method(&self) -> Option<EntropyMethod> {
        self.entropy.map(|e| e.method)
    }
}

const SUPERSTABLE_STEPS: [f64; 4] = [1e-4, 1e-3, 1e-2, 5e-2];

/// The word `(W C)^inf` of a cycle, read from the point nearest `0`.
fn cycle_word(c: f64, cycle: &[f64]) -> Result<SymbolWord, MarkovError> {
    let frame = critical_frame(c)?;
    let nearest = (0..cycle.len())
        .min_by(|&i, &j| cycle[i].abs().total_cmp(&cycle[j].abs()))
        .ok_or(MarkovError::NotPeriodic)?;
    let k = cycle.len();
    let mut block: Vec<Symbol> = (1..k)
        .map(|j| lap_symbol(&frame, cycle[(nearest + j) % k]))
        .collect();
    block.push(Symbol::C);
    Ok(SymbolWord::periodic(&[], &block)?)
}

fn superstable_near(c: f64, word: &SymbolWord) -> Option<f64> {
    SUPERSTABLE_STEPS.iter().find_map(|&d| {
        find_superstable_parameter(word, (c - d, c))
            .or_else(|_| find_superstable_parameter(word, (c, c + d)))
            .ok()
    })
}

fn markov_route(c: f64, cycle: &[f64]) -> Result<EntropyResult, MarkovError> {
    let word = cycle_word(c, cycle)?;
    let cs = superstable_near(c, &word).ok_or(MarkovError::NotPeriodic)?;
    let period = word.period().ok_or(MarkovError::NotPeriodic)?;
    let orbit = critical_orbit(cs, period)?;
    let partition = markov_partition(cs, &orbit)?;
    let m = transition_matrix(&partition)?;
    Ok(entropy_from_charpoly(&checked_char_poly(&m)?))
}

fn kneading_route(c: f64, budget: &CurveBudget) -> Result<EntropyResult, MarkovError> {
    let data = kneading_data(c, budget.symbols)?;
    if data.y.tail() == Tail::Unresolved {
        return Err(MarkovError::NotPeriodic);
    }
    let det = kneading_determinant(&data)?;
    entropy_from_kneading(&det.d)
}

fn lap_route(c: f64, budget: &CurveBudget) -> Result<EntropyResult, MarkovError> {
    let s = lap_growth_estimate(c, budget.lap_depth)?;
    let s = s.clamp(1.0, 1.0 + std::f64::consts::SQRT_2);
    Ok(EntropyResult {
        t_star: 1.0 / s,
        h: s.ln(),
        method: EntropyMethod::LapGrowth,
        zero_by_convention: false,
    })
}

/// Entropy at one parameter. An attracting cycle of the critical orbit leads
/// to the Markov partition of the nearby superstable parameter, a critical
/// orbit captured by the root uses the kneading determinant, and everything
/// else falls back to lap growth.
pub fn entropy_at(
    c: f64,
    budget: &CurveBudget,
) -> Result<(EntropyResult, Option<usize>), MarkovError> {
    critical_frame(c)?;
    let orbit = iterate_orbit(c, 0.0, budget.max_iter, budget.tol)?;
    match orbit.outcome {
        OrbitOutcome::PeriodicOrbit { period, phase } => {
            let cycle = &orbit.points[phase..phase + period];
            let result = markov_route(c, cycle)
                .or_else(|_| kneading_route(c, budget))
                .or_else(|_| lap_route(c, budget))?;
            Ok((result, Some(period)))
        }
        OrbitOutcome::ConvergedToRoot { .. } => {
            let result = kneading_route(c, budget).or_else(|_| lap_route(c, budget))?;
            Ok((result, None))
        }
        OrbitOutcome::HitPole | OrbitOutcome::Truncated => Ok((lap_route(c, budget)?, None)),
    }
}

/// Entropy over a grid of parameters. Points are computed in parallel and
/// returned in grid order; failures are recorded per point.
pub fn entropy_curve(grid: &[f64], budget: &CurveBudget) -> Vec<CurvePoint> {
    grid.par_iter()
        .map(|&c| match entropy_at(c, budget) {
            Ok((e, period)) => CurvePoint {
                c,
                entropy: Some(e),
                period,
                error: None,
            },
            Err(err) => CurvePoint {
                c,
                entropy: None,
                period: None,
                error: Some(err.to_string()),
            },
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::markov::max_entropy;
    use crate::reduction::c0;

    #[test]
    fn rlrc_window_uses_markov_route() {
        let cs = find_superstable_parameter(&"(RLRC)^inf".parse().unwrap(), (1.33, 1.34)).unwrap();
        let (e, period) = entropy_at(cs + 1e-5, &CurveBudget::default()).unwrap();
        assert_eq!(period, Some(4));
        assert_eq!(e.method, EntropyMethod::CharPoly);
        assert!((e.growth() - 1.839286755214161).abs() < 1e-9);
    }

    #[test]
    fn curve_endpoints() {
        let grid = [1e-4, 0.05, c0() - 1e-3];
        let pts = entropy_curve(&grid, &CurveBudget::default());
        assert_eq!(pts.len(), 3);
        let h: Vec<f64> = pts.iter().map(|p| p.h().unwrap()).collect();
        assert!(h[0] < 0.1 && h[0] < h[1] && h[1] < 0.2, "{h:?}");
        assert!((h[2] - max_entropy()).abs() < 0.02, "{:?}", pts[2]);
    }

    #[test]
    fn failures_are_recorded() {
        let pts = entropy_curve(&[-1.0, 1.0], &CurveBudget::default());
        assert!(pts[0].error.is_some());
        assert!(pts[0].entropy.is_none());
        assert!(pts[1].entropy.is_some());
    }
}
