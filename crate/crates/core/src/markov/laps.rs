use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::MarkovError;
use crate::newton::{critical_frame, newton_eval, CriticalFrame};

#[derive(Debug, Clone, Copy, PartialEq)]
struct Key(f64);

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// `log L_1, ..., log L_k` for the lap numbers of `N, ..., N^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct LapCounts {
    pub log_laps: Vec<f64>,
}

impl LapCounts {
    pub fn laps(&self, k: usize) -> f64 {
        self.log_laps[k - 1].exp()
    }
}

/// One-sided image of a cut point; the frame points map symbolically.
fn image(frame: &CriticalFrame, x: f64, from_right: bool) -> Result<f64, MarkovError> {
    Ok(if x.is_infinite() {
        x
    } else if x == frame.d1 {
        if from_right {
            f64::INFINITY
        } else {
            f64::NEG_INFINITY
        }
    } else if x == frame.d3 {
        if from_right {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    } else if x == frame.d0 {
        frame.d0
    } else if x == 0.0 {
        1.0 / frame.c
    } else {
        newton_eval(frame.c, x)?
    })
}

/// Lap numbers of the iterates of `N` on the whole line.
///
/// Each branch of `N^k` maps monotonically onto an interval whose endpoints
/// are images of the cut points `d0, d1, 0, d3`; branches are grouped by
/// their image so that the work stays proportional to the number of distinct
/// images. Counts are renormalised every step and carried as logarithms.
pub fn lap_counts(c: f64, k_max: usize) -> Result<LapCounts, MarkovError> {
    let frame = critical_frame(c)?;
    let cuts = [frame.d0, frame.d1, 0.0, frame.d3];
    let mut current: BTreeMap<(Key, Key), f64> = BTreeMap::new();
    current.insert((Key(f64::NEG_INFINITY), Key(f64::INFINITY)), 1.0);
    let mut log_scale = 0.0;
    let mut log_laps = Vec::with_capacity(k_max);
    for _ in 0..k_max {
        let mut next: BTreeMap<(Key, Key), f64> = BTreeMap::new();
        for (&(Key(u), Key(v)), &n) in &current {
            let mut pts = vec![u];
            pts.extend(cuts.iter().copied().filter(|&p| u < p && p < v));
            pts.push(v);
            for w in pts.windows(2) {
                let a = image(&frame, w[0], true)?;
                let b = image(&frame, w[1], false)?;
                let key = if a <= b {
                    (Key(a), Key(b))
                } else {
                    (Key(b), Key(a))
                };
                *next.entry(key).or_insert(0.0) += n;
            }
        }
        let total: f64 = next.values().sum();
        for v in next.values_mut() {
            *v /= total;
        }
        log_scale += total.ln();
        log_laps.push(log_scale);
        current = next;
    }
    Ok(LapCounts { log_laps })
}

/// Growth rate `s` of the lap numbers, with `h = log s`.
///
/// Uses the ratio `(L_k / L_(k-m))^(1/m)` with `m = k/4`, which cancels the
/// constant prefactor in `L_k ~ C s^k`.
pub fn lap_growth_estimate(c: f64, k_max: usize) -> Result<f64, MarkovError> {
    if k_max < 4 {
        return Err(MarkovError::Depth(k_max));
    }
    let counts = lap_counts(c, k_max)?;
    let m = k_max / 4;
    let hi = counts.log_laps[k_max - 1];
    let lo = counts.log_laps[k_max - 1 - m];
    Ok(((hi - lo) / m as f64).exp())
}
