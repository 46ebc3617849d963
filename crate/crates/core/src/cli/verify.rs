use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::kneading::kneading_determinant;
use crate::markov::{
    char_poly, entropy_curve, entropy_from_charpoly, entropy_from_kneading, lap_growth_estimate,
    markov_partition, max_entropy, transition_matrix, CurveBudget,
};
use crate::newton::{critical_orbit, find_superstable_parameter};
use crate::reduction::{c0, conjugacy_check, reduce, BringJerrardQuintic, ReductionError};
use crate::symbolic::{
    generate_tree, is_admissible, order_compare, KneadingData, SymbolWord, Terminal,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Conjugacy,
    Admissibility,
    Monotonicity,
    EntropyRoutes,
    MarkovRlrc,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Conjugacy => "conjugacy",
            Suite::Admissibility => "admissibility",
            Suite::Monotonicity => "monotonicity",
            Suite::EntropyRoutes => "entropy-routes",
            Suite::MarkovRlrc => "markov-rlrc",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: &'static str,
    pub passed: bool,
    pub checks: Vec<Check>,
}

/// RLRC transition matrix on the seven recurrent states.
pub const RLRC_MATRIX: [[u8; 7]; 7] = [
    [1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 1, 1],
    [1, 1, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 1, 1, 1, 1],
];

struct Checks {
    suite: &'static str,
    list: Vec<Check>,
}

impl Checks {
    fn new(suite: Suite) -> Self {
        Self {
            suite: suite.name(),
            list: Vec::new(),
        }
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.list.push(Check {
            suite: self.suite,
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }
}

pub fn run_suite(suite: Suite, seed: u64) -> Report {
    let checks = match suite {
        Suite::Conjugacy => conjugacy(seed),
        Suite::Admissibility => admissibility(),
        Suite::Monotonicity => monotonicity(),
        Suite::EntropyRoutes => entropy_routes(),
        Suite::MarkovRlrc => markov_rlrc(),
        Suite::All => [
            Suite::Conjugacy,
            Suite::Admissibility,
            Suite::Monotonicity,
            Suite::EntropyRoutes,
            Suite::MarkovRlrc,
        ]
        .into_iter()
        .flat_map(|s| run_suite(s, seed).checks)
        .collect(),
    };
    Report {
        suite: suite.name(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

fn conjugacy(seed: u64) -> Vec<Check> {
    let mut out = Checks::new(Suite::Conjugacy);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..100 {
        let a: f64 = rng.gen_range(-4.0..4.0);
        let b: f64 = loop {
            let b: f64 = rng.gen_range(-4.0..4.0);
            if b.abs() > 1e-3 {
                break b;
            }
        };
        let name = format!("a={a:.6} b={b:.6}");
        let q = match BringJerrardQuintic::new(a, b) {
            Ok(q) => q,
            Err(e) => {
                out.push(name, false, e.to_string());
                continue;
            }
        };
        let r = match reduce(&q) {
            Ok(r) => r,
            Err(e) => {
                out.push(name, false, e.to_string());
                continue;
            }
        };
        let mut worst = 0.0f64;
        let mut failure = None;
        let mut done = 0;
        while done < 10 {
            let x: f64 = rng.gen_range(-3.0..3.0);
            match conjugacy_check(&q, &r, x) {
                Ok(res) => {
                    worst = worst.max(res.relative);
                    done += 1;
                }
                Err(ReductionError::PoleProximity { .. }) => {}
                Err(e) => {
                    failure = Some(e.to_string());
                    break;
                }
            }
        }
        match failure {
            Some(msg) => out.push(name, false, msg),
            None => out.push(
                name,
                worst < 1e-9,
                format!("max relative residual {worst:.3e}"),
            ),
        }
    }
    out.list
}

fn admissibility() -> Vec<Check> {
    let mut out = Checks::new(Suite::Admissibility);
    for (word, expected) in [
        ("(RLRC)^inf", true),
        ("(LMAC)^inf", false),
        ("(RMRC)^inf", false),
    ] {
        match word.parse::<SymbolWord>() {
            Ok(w) => {
                let got = is_admissible(&w);
                out.push(word, got == expected, format!("admissible = {got}"));
            }
            Err(e) => out.push(word, false, e.to_string()),
        }
    }
    for (x, y, expected) in [
        ("MRRM...", "MRRR...", Ordering::Less),
        ("RLRA...", "RLRR...", Ordering::Greater),
    ] {
        let name = format!("{x} vs {y}");
        match (x.parse::<SymbolWord>(), y.parse::<SymbolWord>()) {
            (Ok(a), Ok(b)) => match order_compare(&a, &b) {
                Ok(o) => out.push(name, o == expected, format!("{o:?}")),
                Err(e) => out.push(name, false, e.to_string()),
            },
            _ => out.push(name, false, "unparsable fixture"),
        }
    }
    out.list
}

/// 200 interior points of `(0.05, c0 - 0.01)`.
pub fn monotonicity_grid() -> Vec<f64> {
    let (lo, hi) = (0.05, c0() - 0.01);
    (1..=200)
        .map(|i| lo + (hi - lo) * i as f64 / 201.0)
        .collect()
}

fn monotonicity() -> Vec<Check> {
    let mut out = Checks::new(Suite::Monotonicity);
    let pts = entropy_curve(&monotonicity_grid(), &CurveBudget::default());
    let failed: Vec<String> = pts
        .iter()
        .filter_map(|p| p.error.as_ref().map(|e| format!("c={}: {e}", p.c)))
        .collect();
    out.push(
        "every point evaluated",
        failed.is_empty(),
        failed.join("; "),
    );
    let hs: Vec<f64> = pts.iter().filter_map(|p| p.h()).collect();
    let in_range = hs
        .iter()
        .all(|&h| (0.0..=max_entropy() + 1e-12).contains(&h));
    out.push("entropy in [0, log(1+sqrt 2)]", in_range, "");
    let mut running = f64::NEG_INFINITY;
    let mut worst_drop = 0.0f64;
    for &h in &hs {
        worst_drop = worst_drop.max(running - h);
        running = running.max(h);
    }
    out.push(
        "non-decreasing within 1e-3",
        worst_drop <= 1e-3,
        format!("largest drop {worst_drop:.3e}"),
    );
    out.list
}

fn entropy_routes() -> Vec<Check> {
    let mut out = Checks::new(Suite::EntropyRoutes);
    let tree = generate_tree(6);
    for node in tree.nodes().filter(|n| n.terminal == Terminal::C) {
        let word = &node.word;
        let name = word.to_string();
        let result = (|| -> Result<(f64, f64, f64, f64), String> {
            let cs =
                find_superstable_parameter(word, (1e-3, c0() - 1e-9)).map_err(|e| e.to_string())?;
            let k = word.period().ok_or("word is not periodic")?;
            let orbit = critical_orbit(cs, k).map_err(|e| e.to_string())?;
            let partition = markov_partition(cs, &orbit).map_err(|e| e.to_string())?;
            let m = transition_matrix(&partition).map_err(|e| e.to_string())?;
            let h_char = entropy_from_charpoly(&char_poly(&m)).h;
            let det = kneading_determinant(&KneadingData::from_kneading_sequence(word.clone()))
                .map_err(|e| e.to_string())?;
            let h_knead = entropy_from_kneading(&det.d).map_err(|e| e.to_string())?.h;
            let s = lap_growth_estimate(cs, 20).map_err(|e| e.to_string())?;
            Ok((cs, h_char, h_knead, s))
        })();
        match result {
            Ok((cs, h_char, h_knead, s)) => {
                let rel = (s / h_char.exp() - 1.0).abs();
                let ok = (h_char - h_knead).abs() < 1e-10 && rel < 0.02;
                out.push(
                    name,
                    ok,
                    format!("c={cs:.12} charpoly={h_char:.12} kneading={h_knead:.12} lap20 rel={rel:.2e}"),
                );
            }
            Err(e) => out.push(name, false, e),
        }
    }
    out.list
}

fn markov_rlrc() -> Vec<Check> {
    let mut out = Checks::new(Suite::MarkovRlrc);
    let result = (|| -> Result<Vec<Vec<u8>>, String> {
        let word: SymbolWord = "(RLRC)^inf"
            .parse()
            .map_err(|e: crate::symbolic::SymbolicError| e.to_string())?;
        let cs = find_superstable_parameter(&word, (1.33, 1.34)).map_err(|e| e.to_string())?;
        let orbit = critical_orbit(cs, 4).map_err(|e| e.to_string())?;
        let partition = markov_partition(cs, &orbit).map_err(|e| e.to_string())?;
        let m = transition_matrix(&partition).map_err(|e| e.to_string())?;
        Ok(m.entries)
    })();
    match result {
        Ok(m) => {
            let expected: Vec<Vec<u8>> = RLRC_MATRIX.iter().map(|r| r.to_vec()).collect();
            out.push("7x7 matrix", m == expected, format!("{m:?}"));
        }
        Err(e) => out.push("7x7 matrix", false, e),
    }
    out.list
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_suites_pass() {
        for suite in [Suite::Admissibility, Suite::MarkovRlrc, Suite::Conjugacy] {
            let report = run_suite(suite, 7);
            assert!(report.passed, "{report:?}");
        }
    }
}
