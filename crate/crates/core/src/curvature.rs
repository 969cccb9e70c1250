//! Curvature type of the natural metric, decided exactly from the tuple.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tuple::FiveTuple;

/// Ordered weakest to strongest, so `max` picks the best verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CurvatureClass {
    /// Zero-curvature planes at every point.
    #[serde(rename = "NN")]
    NonNegativeOnly,
    #[serde(rename = "QP")]
    QuasiPositive,
    #[serde(rename = "AP")]
    AlmostPositive,
    #[serde(rename = "PC")]
    PositivelyCurved,
}

impl CurvatureClass {
    pub const ALL: [CurvatureClass; 4] = [
        CurvatureClass::PositivelyCurved,
        CurvatureClass::AlmostPositive,
        CurvatureClass::QuasiPositive,
        CurvatureClass::NonNegativeOnly,
    ];

    pub fn code(&self) -> &'static str {
        match self {
            CurvatureClass::PositivelyCurved => "PC",
            CurvatureClass::AlmostPositive => "AP",
            CurvatureClass::QuasiPositive => "QP",
            CurvatureClass::NonNegativeOnly => "NN",
        }
    }

    pub fn description(&self) -> &'static str {
        match self {
            CurvatureClass::PositivelyCurved => "positively curved",
            CurvatureClass::AlmostPositive => "almost positively curved",
            CurvatureClass::QuasiPositive => "quasi-positively curved",
            CurvatureClass::NonNegativeOnly => "non-negatively curved only",
        }
    }
}

impl fmt::Display for CurvatureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for CurvatureClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.code() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown curvature code {s:?}")))
    }
}

pub(crate) const ALMOST_POSITIVE: [i64; 5] = [1, 1, 1, 1, -1];
pub(crate) const EXCEPTIONAL: [i64; 5] = [1, 1, 1, -1, -3];

/// True when every `q_i + q_j` (`i != j`) is positive, or every one negative.
pub fn pair_sums_share_sign(q: &FiveTuple) -> bool {
    let q = q.entries();
    let mut pos = 0;
    let mut neg = 0;
    for i in 0..5 {
        for j in i + 1..5 {
            match (q[i] + q[j]).signum() {
                1 => pos += 1,
                -1 => neg += 1,
                _ => {}
            }
        }
    }
    pos == 10 || neg == 10
}

pub fn classify(q: &FiveTuple) -> Result<CurvatureClass> {
    q.ensure_admissible()?;
    let n = q.normalize().entries();
    Ok(if pair_sums_share_sign(q) {
        CurvatureClass::PositivelyCurved
    } else if n == ALMOST_POSITIVE {
        CurvatureClass::AlmostPositive
    } else if n == EXCEPTIONAL {
        CurvatureClass::NonNegativeOnly
    } else {
        CurvatureClass::QuasiPositive
    })
}

/// Distinct `(a, b, c, d)` (0-based) with `q_a + q_b` and `q_c + q_d` of one
/// strict sign; the lexicographically smallest such index tuple.
pub fn same_sign_witness(q: &FiveTuple) -> Option<[usize; 4]> {
    let q = q.entries();
    for a in 0..5 {
        for b in 0..5 {
            for c in 0..5 {
                for d in 0..5 {
                    let idx = [a, b, c, d];
                    let distinct = (0..4).all(|i| (i + 1..4).all(|j| idx[i] != idx[j]));
                    if !distinct {
                        continue;
                    }
                    let x = (q[a] + q[b]).signum();
                    if x != 0 && x == (q[c] + q[d]).signum() {
                        return Some(idx);
                    }
                }
            }
        }
    }
    None
}

/// Permutation putting the witness pairs at slots `(1, 3)` and `(2, 4)`, so
/// that `q1 + q3` and `q2 + q4` share a sign. Returns the reordered tuple.
pub fn witness_ordering(q: &FiveTuple) -> Option<FiveTuple> {
    let [a, b, c, d] = same_sign_witness(q)?;
    let e = (0..5).find(|i| ![a, b, c, d].contains(i))?;
    Some(q.permuted([a, c, b, d, e]))
}
