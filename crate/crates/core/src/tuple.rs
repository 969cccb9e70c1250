//! Integer parameter tuples and the freeness predicate.
//!
//! A [`FiveTuple`] `(q1, .., q5)` of odd integers parametrizes an action of
//! `Sp(2) x S^1` on `SU(5)`. Appending `q6 = -(q1 + .. + q5)` gives the
//! [`SixTuple`] whose symmetric functions carry the topology, and whose six
//! one-entry deletions are all diffeomorphic.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The 15 ways to pick two disjoint unordered pairs out of five indices.
pub const PAIR_CONFIGURATIONS: [([usize; 2], [usize; 2]); 15] = {
    let mut out = [([0, 0], [0, 0]); 15];
    let mut n = 0;
    let mut skip = 0;
    while skip < 5 {
        // the four remaining indices in increasing order
        let mut rest = [0usize; 4];
        let mut k = 0;
        let mut i = 0;
        while i < 5 {
            if i != skip {
                rest[k] = i;
                k += 1;
            }
            i += 1;
        }
        out[n] = ([rest[0], rest[1]], [rest[2], rest[3]]);
        out[n + 1] = ([rest[0], rest[2]], [rest[1], rest[3]]);
        out[n + 2] = ([rest[0], rest[3]], [rest[1], rest[2]]);
        n += 3;
        skip += 1;
    }
    out
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[i64; 5]", into = "[i64; 5]")]
pub struct FiveTuple([i64; 5]);

impl FiveTuple {
    /// Builds a tuple, rejecting any even entry.
    pub fn new(q: [i64; 5]) -> Result<Self> {
        if let Some(i) = q.iter().position(|x| x % 2 == 0) {
            return Err(Error::InvalidTuple(format!(
                "entry {} ({}) is even; all entries must be odd",
                i + 1,
                q[i]
            )));
        }
        Ok(FiveTuple(q))
    }

    pub fn entries(&self) -> [i64; 5] {
        self.0
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn positives(&self) -> usize {
        self.0.iter().filter(|&&x| x > 0).count()
    }

    pub fn negated(&self) -> FiveTuple {
        FiveTuple(self.0.map(|x| -x))
    }

    /// Entries rearranged so that slot `i` holds entry `perm[i]`.
    pub fn permuted(&self, perm: [usize; 5]) -> FiveTuple {
        FiveTuple(perm.map(|i| self.0[i]))
    }

    pub fn sorted_desc(&self) -> FiveTuple {
        let mut q = self.0;
        q.sort_unstable_by(|a, b| b.cmp(a));
        FiveTuple(q)
    }

    /// `gcd(q_a + q_b, q_c + q_d) = 2` over every pair of disjoint pairs.
    ///
    /// Uses `gcd(0, n) = |n|` and `gcd(0, 0) = 0`, so a vanishing pair sum is
    /// only tolerated when the other sum is `+-2`.
    pub fn is_effectively_free(&self) -> bool {
        let q = &self.0;
        PAIR_CONFIGURATIONS
            .iter()
            .all(|([a, b], [c, d])| (q[*a] + q[*b]).gcd(&(q[*c] + q[*d])) == 2)
    }

    /// Odd, effectively free, and at least three entries positive.
    pub fn is_admissible(&self) -> bool {
        self.0.iter().all(|x| x % 2 != 0) && self.is_effectively_free() && self.positives() >= 3
    }

    pub fn ensure_admissible(&self) -> Result<()> {
        if self.is_admissible() {
            Ok(())
        } else {
            Err(Error::InvalidTuple(format!("{self} is not admissible")))
        }
    }

    /// Descending sort of `q` or `-q`, whichever has at least three positive
    /// entries.
    pub fn normalize(&self) -> FiveTuple {
        if self.positives() >= 3 {
            self.sorted_desc()
        } else {
            self.negated().sorted_desc()
        }
    }

    /// Appends `q6 = -sum(q)`.
    pub fn extend(&self) -> SixTuple {
        let q = self.0;
        SixTuple([q[0], q[1], q[2], q[3], q[4], -self.sum()])
    }
}

impl fmt::Display for FiveTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_csv(f, &self.0)
    }
}

impl FromStr for FiveTuple {
    type Err = Error;

    /// Parses `"1,1,1,-1,-3"`.
    fn from_str(s: &str) -> Result<Self> {
        let q = parse_ints::<5>(s)?;
        FiveTuple::new(q)
    }
}

impl TryFrom<[i64; 5]> for FiveTuple {
    type Error = Error;
    fn try_from(q: [i64; 5]) -> Result<Self> {
        FiveTuple::new(q)
    }
}

impl From<FiveTuple> for [i64; 5] {
    fn from(q: FiveTuple) -> Self {
        q.0
    }
}

/// `(r1, .., r6)` with zero sum and odd entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[i64; 6]", into = "[i64; 6]")]
pub struct SixTuple([i64; 6]);

impl SixTuple {
    pub fn new(r: [i64; 6]) -> Result<Self> {
        if let Some(i) = r.iter().position(|x| x % 2 == 0) {
            return Err(Error::InvalidTuple(format!(
                "entry {} ({}) is even; all entries must be odd",
                i + 1,
                r[i]
            )));
        }
        let sum: i64 = r.iter().sum();
        if sum != 0 {
            return Err(Error::InvalidTuple(format!(
                "entries sum to {sum}, expected 0"
            )));
        }
        Ok(SixTuple(r))
    }

    pub(crate) fn from_raw(r: [i64; 6]) -> Self {
        debug_assert!(r.iter().sum::<i64>() == 0 && r.iter().all(|x| x % 2 != 0));
        SixTuple(r)
    }

    pub fn entries(&self) -> [i64; 6] {
        self.0
    }

    pub fn sum_of_squares(&self) -> i64 {
        self.0.iter().map(|x| x * x).sum()
    }

    /// The 5-tuple left after removing entry `i`, in original order.
    pub fn delete(&self, i: usize) -> FiveTuple {
        let mut q = [0; 5];
        let mut k = 0;
        for (j, &r) in self.0.iter().enumerate() {
            if j != i {
                q[k] = r;
                k += 1;
            }
        }
        FiveTuple(q)
    }

    pub fn sorted_desc(&self) -> SixTuple {
        let mut r = self.0;
        r.sort_unstable_by(|a, b| b.cmp(a));
        SixTuple(r)
    }

    pub fn negated(&self) -> SixTuple {
        SixTuple(self.0.map(|x| -x))
    }
}

impl fmt::Display for SixTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_csv(f, &self.0)
    }
}

impl FromStr for SixTuple {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SixTuple::new(parse_ints::<6>(s)?)
    }
}

impl TryFrom<[i64; 6]> for SixTuple {
    type Error = Error;
    fn try_from(r: [i64; 6]) -> Result<Self> {
        SixTuple::new(r)
    }
}

impl From<SixTuple> for [i64; 6] {
    fn from(r: SixTuple) -> Self {
        r.0
    }
}

fn write_csv(f: &mut fmt::Formatter<'_>, xs: &[i64]) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

fn parse_ints<const N: usize>(s: &str) -> Result<[i64; N]> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(Error::InvalidTuple(format!(
            "expected {N} comma-separated integers, got {}",
            parts.len()
        )));
    }
    let mut out = [0; N];
    for (i, p) in parts.iter().enumerate() {
        out[i] = p.parse().map_err(|_| {
            Error::InvalidTuple(format!("entry {} ({p:?}) is not an integer", i + 1))
        })?;
    }
    Ok(out)
}
