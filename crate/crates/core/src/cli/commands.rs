use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::config::SweepConfig;
use super::CliError;
use crate::kneading::build_polynomial_tree;
use crate::markov::{entropy_curve, CurveBudget};
use crate::newton::{find_superstable_parameter, newton_eval};
use crate::reduction::{classify_regime, reduce, BringJerrardQuintic, ReducedQuintic, Regime};
use crate::symbolic::{itinerary, SymbolWord, Terminal};

/// Fixed 17-significant-digit formatting for CSV cells.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Serialize)]
struct ReduceReport {
    a: f64,
    b: f64,
    #[serde(flatten)]
    reduced: ReducedQuintic,
    regime: Option<Regime>,
}

pub fn reduce_report(a: f64, b: f64) -> Result<String, CliError> {
    let reduced = reduce(&BringJerrardQuintic::new(a, b)?)?;
    let report = ReduceReport {
        a,
        b,
        regime: reduced.canonical_c().map(classify_regime),
        reduced,
    };
    Ok(serde_json::to_string_pretty(&report).expect("plain data serialises") + "\n")
}

/// Post-transient points of the critical orbit, merged within `tol`.
/// `None` when the orbit meets a pole.
pub fn attractor_sample(c: f64, max_iter: usize, tol: f64) -> Option<Vec<f64>> {
    let transient = max_iter / 2;
    let mut x = 0.0;
    let mut pts = Vec::with_capacity(max_iter - transient);
    for i in 0..max_iter {
        x = newton_eval(c, x).ok().filter(|v| v.is_finite())?;
        if i >= transient {
            pts.push(x);
        }
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup_by(|a, b| (*a - *b).abs() <= tol * b.abs().max(1.0));
    Some(pts)
}

pub fn bifurcation_csv(cfg: &SweepConfig) -> String {
    let rows: Vec<String> = cfg
        .grid()
        .par_iter()
        .map(|&c| match attractor_sample(c, cfg.max_iter, cfg.tol) {
            Some(pts) => pts
                .iter()
                .map(|&x| format!("{},{}\n", fmt_real(c), fmt_real(x)))
                .collect(),
            None => format!("{},\n", fmt_real(c)),
        })
        .collect();
    let mut out = String::from("c,x\n");
    out.extend(rows);
    out
}

pub fn entropy_curve_csv(cfg: &SweepConfig) -> String {
    let budget = CurveBudget {
        max_iter: cfg.max_iter,
        tol: cfg.tol,
        ..CurveBudget::default()
    };
    let mut out = String::from("c,entropy,method,period\n");
    for p in entropy_curve(&cfg.grid(), &budget) {
        let period = p.period.map(|k| k.to_string()).unwrap_or_default();
        match p.entropy {
            Some(e) => writeln!(
                out,
                "{},{},{},{}",
                fmt_real(p.c),
                fmt_real(e.h),
                e.method.as_str(),
                period
            ),
            None => writeln!(out, "{},,error,", fmt_real(p.c)),
        }
        .expect("writing to a String cannot fail");
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TreeFormat {
    Text,
    Json,
}

#[derive(Debug, Serialize)]
struct TreeRow {
    level: usize,
    word: String,
    terminal: Terminal,
    d_y: Option<Vec<i128>>,
    cleared: Vec<i128>,
}

pub fn tree_output(max_level: usize, format: TreeFormat) -> Result<String, CliError> {
    let tree = build_polynomial_tree(max_level)?;
    let rows: Vec<TreeRow> = tree
        .nodes()
        .map(|n| TreeRow {
            level: n.node.level(),
            word: n.node.word.to_string(),
            terminal: n.node.terminal,
            d_y: n.d_y.as_ref().map(|p| p.coeffs().to_vec()),
            cleared: n.cleared.coeffs().to_vec(),
        })
        .collect();
    Ok(match format {
        TreeFormat::Json => {
            serde_json::to_string_pretty(&rows).expect("plain data serialises") + "\n"
        }
        TreeFormat::Text => {
            let mut out = String::new();
            for r in &rows {
                // circle for superstable words, dot for convergent ones
                let mark = match r.terminal {
                    Terminal::C => 'o',
                    Terminal::A => '.',
                };
                let poly = match &r.d_y {
                    Some(d) => format!("d_Y = {d:?}"),
                    None => format!("(1-t) d_Y = {:?}", r.cleared),
                };
                writeln!(out, "{}{mark} {}  {poly}", "  ".repeat(r.level - 1), r.word)
                    .expect("writing to a String cannot fail");
            }
            out
        }
    })
}

pub fn itinerary_output(c: f64, x0: f64, length: usize) -> Result<String, CliError> {
    Ok(format!("{}\n", itinerary(c, x0, length)?))
}

pub fn find_window_output(word: &str, c_min: f64, c_max: f64) -> Result<String, CliError> {
    let word: SymbolWord = word.parse()?;
    let c = find_superstable_parameter(&word, (c_min, c_max))?;
    Ok(format!("{}\n", fmt_real(c)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(c_min: f64, c_max: f64, samples: usize) -> SweepConfig {
        SweepConfig {
            c_min,
            c_max,
            samples,
            ..SweepConfig::default()
        }
    }

    #[test]
    fn reduce_examples() {
        assert!(reduce_report(0.0, 1.0).unwrap().contains("\"Canonical\""));
        assert!(reduce_report(1.0, 0.0).unwrap().contains("\"PPlus\""));
        assert!(reduce_report(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn rlrc_window_has_four_branches() {
        let c = find_superstable_parameter(&"(RLRC)^inf".parse().unwrap(), (1.33, 1.34)).unwrap();
        assert_eq!(attractor_sample(c, 2000, 1e-9).unwrap().len(), 4);
        let single = attractor_sample(0.5, 2000, 1e-9).unwrap();
        assert_eq!(single.len(), 1);
    }

    #[test]
    fn empty_and_single_sweeps() {
        assert_eq!(bifurcation_csv(&cfg(1.0, 1.0, 10)), "c,x\n");
        assert_eq!(
            entropy_curve_csv(&cfg(1.0, 1.0, 10)),
            "c,entropy,method,period\n"
        );
        let one = entropy_curve_csv(&cfg(1.3, 1.4, 1));
        assert_eq!(one.lines().count(), 2);
        assert!(one
            .lines()
            .nth(1)
            .unwrap()
            .starts_with("1.3000000000000000e0,"));
    }

    #[test]
    fn tree_contains_rlrc() {
        let json = tree_output(4, TreeFormat::Json).unwrap();
        let rows: serde_json::Value = serde_json::from_str(&json).unwrap();
        let rlrc = rows
            .as_array()
            .unwrap()
            .iter()
            .find(|r| r["word"] == "(RLRC)^inf")
            .unwrap();
        assert_eq!(rlrc["d_y"], serde_json::json!([1, 0, -2, -2, -1]));
        assert_eq!(rlrc["terminal"], "C");
        let text = tree_output(2, TreeFormat::Text).unwrap();
        assert_eq!(
            text,
            "  . RA^inf  (1-t) d_Y = [1, -1, -2]\n  o (RC)^inf  (1-t) d_Y = [1, -1, -1, -1]\n"
        );
        assert_eq!(tree_output(1, TreeFormat::Text).unwrap(), "");
    }
}
