use std::fmt;

use serde::{Deserialize, Serialize};

use super::MarkovError;
use crate::newton::{critical_frame, newton_eval};
use crate::poly::{poly_determinant, IntPolynomial, PolyError};

/// Tolerance for the Markov property and for orbit periodicity.
pub const MARKOV_TOL: f64 = 1e-8;
/// Minimal separation between an orbit point and a frame point.
pub const COLLISION_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointKind {
    NegInf,
    PosInf,
    /// `d0`, fixed by the map.
    Root,
    /// `d1`.
    LeftPole,
    /// `d3`.
    RightPole,
    /// `N^j(0)`, with `j = 0` the critical point itself.
    Orbit(usize),
    /// Any other point; its image is evaluated numerically.
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPoint {
    pub value: f64,
    pub kind: PointKind,
}

impl BoundaryPoint {
    pub fn neg_inf() -> Self {
        Self {
            value: f64::NEG_INFINITY,
            kind: PointKind::NegInf,
        }
    }

    pub fn pos_inf() -> Self {
        Self {
            value: f64::INFINITY,
            kind: PointKind::PosInf,
        }
    }

    pub fn other(value: f64) -> Self {
        Self {
            value,
            kind: PointKind::Other,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartitionInterval {
    pub lo: BoundaryPoint,
    pub hi: BoundaryPoint,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarkovPartition {
    pub c: f64,
    /// Finite boundary points, strictly increasing.
    pub boundaries: Vec<BoundaryPoint>,
    /// States, ordered left to right.
    pub intervals: Vec<PartitionInterval>,
    /// Period of the critical orbit the partition was built from.
    pub period: Option<usize>,
}

impl MarkovPartition {
    /// A partition made of explicitly chosen intervals of the line.
    pub fn from_intervals(c: f64, intervals: Vec<PartitionInterval>) -> Result<Self, MarkovError> {
        critical_frame(c)?;
        if intervals.is_empty() {
            return Err(MarkovError::EmptyPartition);
        }
        let mut boundaries: Vec<BoundaryPoint> = intervals
            .iter()
            .flat_map(|iv| [iv.lo, iv.hi])
            .filter(|b| b.value.is_finite())
            .collect();
        boundaries.sort_by(|a, b| a.value.total_cmp(&b.value));
        boundaries.dedup_by(|a, b| a.value == b.value);
        for iv in &intervals {
            if iv.lo.value.partial_cmp(&iv.hi.value) != Some(std::cmp::Ordering::Less) {
                return Err(MarkovError::Unsorted);
            }
        }
        Ok(Self {
            c,
            boundaries,
            intervals,
            period: None,
        })
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }
}

/// Partition cut by the critical orbit `orbit = [0, N(0), ..., N^(k-1)(0)]`
/// together with `d0, d1, d3`, keeping the intervals that lie on a cycle of
/// the transition graph. Transient intervals do not change `det(I - tM)`.
pub fn markov_partition(c: f64, orbit: &[f64]) -> Result<MarkovPartition, MarkovError> {
    let frame = critical_frame(c)?;
    let k = orbit.len();
    if k == 0 || orbit[0] != 0.0 {
        return Err(MarkovError::NotPeriodic);
    }
    let mut boundaries = vec![
        BoundaryPoint {
            value: frame.d0,
            kind: PointKind::Root,
        },
        BoundaryPoint {
            value: frame.d1,
            kind: PointKind::LeftPole,
        },
        BoundaryPoint {
            value: frame.d3,
            kind: PointKind::RightPole,
        },
    ];
    for (j, &x) in orbit.iter().enumerate() {
        if boundaries
            .iter()
            .any(|b| (b.value - x).abs() < COLLISION_TOL)
        {
            return Err(MarkovError::Collision { value: x });
        }
        boundaries.push(BoundaryPoint {
            value: x,
            kind: PointKind::Orbit(j),
        });
    }
    for j in 0..k {
        let next = newton_eval(c, orbit[j])?;
        let target = orbit[(j + 1) % k];
        if (next - target).abs() > MARKOV_TOL * target.abs().max(1.0) {
            return Err(MarkovError::NotPeriodic);
        }
    }
    boundaries.sort_by(|a, b| a.value.total_cmp(&b.value));

    let mut edges = vec![BoundaryPoint::neg_inf()];
    edges.extend(boundaries.iter().copied());
    edges.push(BoundaryPoint::pos_inf());
    let all: Vec<PartitionInterval> = edges
        .windows(2)
        .map(|w| PartitionInterval { lo: w[0], hi: w[1] })
        .collect();
    let full = MarkovPartition {
        c,
        boundaries,
        intervals: all,
        period: Some(k),
    };
    let matrix = build_matrix(&full, orbit, true)?;
    let keep = recurrent_states(&matrix);
    if keep.is_empty() {
        return Err(MarkovError::EmptyPartition);
    }
    let intervals = keep.iter().map(|&i| full.intervals[i]).collect();
    Ok(MarkovPartition { intervals, ..full })
}

/// States lying on a cycle of the 0/1 graph.
fn recurrent_states(m: &TransitionMatrix) -> Vec<usize> {
    let n = m.len();
    (0..n)
        .filter(|&start| {
            let mut seen = vec![false; n];
            let mut stack: Vec<usize> = (0..n).filter(|&j| m.entries[start][j] == 1).collect();
            while let Some(v) = stack.pop() {
                if v == start {
                    return true;
                }
                if std::mem::replace(&mut seen[v], true) {
                    continue;
                }
                stack.extend((0..n).filter(|&j| m.entries[v][j] == 1));
            }
            false
        })
        .collect()
}

/// Square 0/1 matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TransitionMatrix {
    pub entries: Vec<Vec<u8>>,
}

impl TransitionMatrix {
    pub fn new(entries: Vec<Vec<u8>>) -> Result<Self, MarkovError> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) || entries.iter().flatten().any(|&v| v > 1) {
            return Err(MarkovError::BadMatrix);
        }
        Ok(Self { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for TransitionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let line: Vec<String> = row.iter().map(u8::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// One-sided image of a boundary point; `from_right` selects the limit.
fn image_point(
    c: f64,
    p: &BoundaryPoint,
    from_right: bool,
    orbit: &[f64],
) -> Result<BoundaryPoint, MarkovError> {
    Ok(match p.kind {
        PointKind::NegInf => BoundaryPoint::neg_inf(),
        PointKind::PosInf => BoundaryPoint::pos_inf(),
        PointKind::LeftPole if from_right => BoundaryPoint::pos_inf(),
        PointKind::LeftPole => BoundaryPoint::neg_inf(),
        PointKind::RightPole if from_right => BoundaryPoint::neg_inf(),
        PointKind::RightPole => BoundaryPoint::pos_inf(),
        PointKind::Root => *p,
        PointKind::Orbit(j) if !orbit.is_empty() => {
            let next = (j + 1) % orbit.len();
            BoundaryPoint {
                value: orbit[next],
                kind: PointKind::Orbit(next),
            }
        }
        PointKind::Orbit(_) | PointKind::Other => BoundaryPoint::other(newton_eval(c, p.value)?),
    })
}

/// Replaces a numerically computed image by the boundary it lands on.
fn snap(img: BoundaryPoint, partition: &MarkovPartition) -> Option<BoundaryPoint> {
    if !img.value.is_finite() || img.kind != PointKind::Other {
        return Some(img);
    }
    partition
        .intervals
        .iter()
        .flat_map(|iv| [iv.lo, iv.hi])
        .find(|b| (b.value - img.value).abs() <= MARKOV_TOL * img.value.abs().max(1.0))
}

fn build_matrix(
    partition: &MarkovPartition,
    orbit: &[f64],
    require_markov: bool,
) -> Result<TransitionMatrix, MarkovError> {
    let c = partition.c;
    let n = partition.len();
    let mut entries = vec![vec![0u8; n]; n];
    for (i, iv) in partition.intervals.iter().enumerate() {
        let a = image_point(c, &iv.lo, true, orbit)?;
        let b = image_point(c, &iv.hi, false, orbit)?;
        let (a, b) = match (snap(a, partition), snap(b, partition)) {
            (Some(a), Some(b)) => (a, b),
            (sa, sb) if !require_markov => (sa.unwrap_or(a), sb.unwrap_or(b)),
            _ => return Err(MarkovError::NotMarkov { interval: i }),
        };
        let (lo, hi) = if a.value <= b.value {
            (a.value, b.value)
        } else {
            (b.value, a.value)
        };
        for (j, jv) in partition.intervals.iter().enumerate() {
            let overlap = hi.min(jv.hi.value) - lo.max(jv.lo.value);
            let scale = MARKOV_TOL * lo.abs().min(hi.abs()).max(1.0);
            if overlap > scale {
                entries[i][j] = 1;
            } else if overlap > 0.0 && overlap <= scale {
                return Err(MarkovError::Ambiguous { from: i, to: j });
            }
        }
    }
    TransitionMatrix::new(entries)
}

/// `a_ij = 1` iff the image of interval `i` covers interior points of interval `j`.
pub fn transition_matrix(partition: &MarkovPartition) -> Result<TransitionMatrix, MarkovError> {
    let orbit: Vec<f64> = match partition.period {
        Some(k) => {
            let mut orbit = vec![f64::NAN; k];
            for b in &partition.boundaries {
                if let PointKind::Orbit(j) = b.kind {
                    orbit[j] = b.value;
                }
            }
            orbit
        }
        None => Vec::new(),
    };
    build_matrix(partition, &orbit, partition.period.is_some())
}

/// `det(I - t M)`.
pub fn char_poly(m: &TransitionMatrix) -> IntPolynomial {
    checked_char_poly(m).expect("0/1 matrices of desk size stay far from overflow")
}

/// `det(I - t M)`, reporting coefficient overflow for very large matrices.
pub fn checked_char_poly(m: &TransitionMatrix) -> Result<IntPolynomial, PolyError> {
    let n = m.len();
    let rows: Vec<Vec<IntPolynomial>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let id = i128::from(i == j);
                    IntPolynomial::new(vec![id, -(m.entries[i][j] as i128)])
                })
                .collect()
        })
        .collect();
    poly_determinant(&rows)
}
