//! Census of moves-equivalence classes below a bound on `p1`.
//!
//! Since `2 p1 = sum r_i^2`, a bound on `p1` is a ball in the six-tuple
//! lattice. Classes are enumerated as descending odd six-tuples with zero
//! sum, each partition (fixed leading entry) independently, and merged into
//! `(p1, canon)` order.

mod io;

use std::collections::BTreeMap;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curvature::CurvatureClass;
use crate::equivalence::{best_curvature_of, representatives, CanonicalClass};
use crate::error::{Error, Result};
use crate::parallel::with_threads;
use crate::topology::{invariants_of_extension, p2_set};
use crate::tuple::{FiveTuple, SixTuple};

pub use io::{export_records, load_records, load_records_as, Format};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub canon: CanonicalClass,
    pub p1: i64,
    pub s: i64,
    pub p2: i64,
    /// Best verdict over all representatives.
    pub curvature: CurvatureClass,
    /// No representative has four entries of one sign.
    pub new_example: bool,
    pub reps: Vec<FiveTuple>,
}

impl CatalogRecord {
    pub fn from_class(canon: CanonicalClass) -> Result<CatalogRecord> {
        let inv = invariants_of_extension(canon.tuple())?;
        let reps = representatives(&canon)?;
        let curvature = best_curvature_of(&reps)?;
        Ok(CatalogRecord {
            canon,
            p1: inv.p1,
            s: inv.s,
            p2: inv.p2,
            curvature,
            new_example: is_new_example(&canon),
            reps,
        })
    }

    /// Recomputes every derived field and compares.
    pub fn validate(&self) -> Result<()> {
        let sq = self.canon.tuple().sum_of_squares();
        if 2 * self.p1 != sq {
            return Err(Error::InvalidInput(format!(
                "2*p1 = {} but the sum of squares of {} is {sq}",
                2 * self.p1,
                self.canon
            )));
        }
        let expected = CatalogRecord::from_class(self.canon)?;
        if expected != *self {
            return Err(Error::InvalidInput(format!(
                "record for {} disagrees with recomputed fields",
                self.canon
            )));
        }
        Ok(())
    }

    pub fn p2_set(&self) -> (i64, i64) {
        p2_set(self.p2, self.s)
    }
}

/// Three positive and three negative entries; with four of one sign some
/// deletion leaves four entries of that sign.
pub fn is_new_example(c: &CanonicalClass) -> bool {
    c.entries().iter().filter(|&&x| x > 0).count() == 3
}

/// Every class with `p1 <= p1_max`, sorted by `(p1, canon)`.
///
/// `threads = None` uses the global rayon pool.
pub fn enumerate_classes(p1_max: i64, threads: Option<usize>) -> Result<Vec<CatalogRecord>> {
    if p1_max < 3 {
        return Err(Error::InvalidInput(format!(
            "p1_max must be at least 3, got {p1_max}"
        )));
    }
    let leading = leading_entries(p1_max);
    let run = || -> Result<Vec<CatalogRecord>> {
        let parts: Vec<Vec<CatalogRecord>> = leading
            .par_iter()
            .map(|&r1| enumerate_partition(r1, p1_max))
            .collect::<Result<_>>()?;
        let mut all: Vec<CatalogRecord> = parts.into_iter().flatten().collect();
        all.sort_unstable_by_key(|r| (r.p1, r.canon));
        Ok(all)
    };
    with_threads(threads, run)?
}

/// Admissible leading entries: odd `r1` with `6 r1^2 / 5 <= 2 p1_max`.
pub fn leading_entries(p1_max: i64) -> Vec<i64> {
    let bound = 2 * p1_max;
    (1..)
        .step_by(2)
        .take_while(|&r1: &i64| 6 * r1 * r1 <= 5 * bound)
        .collect()
}

/// Classes whose canonical form starts with `r1`, in enumeration order.
pub fn enumerate_partition(r1: i64, p1_max: i64) -> Result<Vec<CatalogRecord>> {
    let mut out = vec![];
    let mut err = None;
    visit_canonical(r1, 2 * p1_max, &mut |r| {
        if err.is_some() {
            return;
        }
        if !r.delete(5).is_effectively_free() {
            return;
        }
        match CatalogRecord::from_class(CanonicalClass::of_extension(&r)) {
            Ok(rec) => out.push(rec),
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Calls `f` on each descending odd zero-sum six-tuple with leading entry
/// `r1` and `sum r_i^2 <= bound` that is lexicographically at least the
/// descending sort of its negation.
fn visit_canonical(r1: i64, bound: i64, f: &mut impl FnMut(SixTuple)) {
    let mut r = [0i64; 6];
    r[0] = r1;
    descend(&mut r, 1, r1, r1 * r1, bound, f);
}

fn descend(
    r: &mut [i64; 6],
    k: usize,
    sum: i64,
    sq: i64,
    bound: i64,
    f: &mut impl FnMut(SixTuple),
) {
    if k == 5 {
        let last = -sum;
        if last > r[4] || sq + last * last > bound {
            return;
        }
        r[5] = last;
        let neg = [-r[5], -r[4], -r[3], -r[2], -r[1], -r[0]];
        if *r >= neg {
            f(SixTuple::from_raw(*r));
        }
        return;
    }
    // slots k..=5 hold m entries, each at most x, summing to -sum
    let m = (6 - k) as i64;
    let lower = (-sum).div_euclid(m) + if (-sum).rem_euclid(m) == 0 { 0 } else { 1 };
    let mut x = r[k - 1];
    while x >= lower {
        let rest = -sum - x;
        // remaining m-1 entries sum to `rest`: at least rest^2/(m-1) in squares
        let sq_x = sq + x * x;
        if sq_x * (m - 1) + rest * rest <= bound * (m - 1) {
            r[k] = x;
            descend(r, k + 1, sum + x, sq_x, bound, f);
        }
        x -= 2;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusSummary {
    pub total: usize,
    pub new_qp: usize,
    pub by_class: BTreeMap<CurvatureClass, usize>,
}

pub fn summarize_counts(records: &[CatalogRecord]) -> CensusSummary {
    let mut by_class = BTreeMap::new();
    for r in records {
        *by_class.entry(r.curvature).or_insert(0) += 1;
    }
    CensusSummary {
        total: records.len(),
        new_qp: records.iter().filter(|r| r.new_example).count(),
        by_class,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CollisionKey {
    P1,
    P1S,
    /// `(p1, s)` and the residue set `{p2, -p2 mod s}`.
    P1SP2,
}

impl FromStr for CollisionKey {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "p1" => Ok(CollisionKey::P1),
            "p1s" => Ok(CollisionKey::P1S),
            "p1sp2" => Ok(CollisionKey::P1SP2),
            _ => Err(Error::InvalidInput(format!("unknown collision key {s:?}"))),
        }
    }
}

/// Groups of at least two distinct classes that share `key`, in key order.
pub fn find_collisions(records: &[CatalogRecord], key: CollisionKey) -> Vec<Vec<&CatalogRecord>> {
    let mut groups: BTreeMap<(i64, i64, (i64, i64)), Vec<&CatalogRecord>> = BTreeMap::new();
    for r in records {
        let k = match key {
            CollisionKey::P1 => (r.p1, 0, (0, 0)),
            CollisionKey::P1S => (r.p1, r.s, (0, 0)),
            CollisionKey::P1SP2 => (r.p1, r.s, r.p2_set()),
        };
        groups.entry(k).or_default().push(r);
    }
    groups
        .into_values()
        .filter_map(|mut g| {
            g.sort_by_key(|r| r.canon);
            g.dedup_by_key(|r| r.canon);
            (g.len() >= 2).then_some(g)
        })
        .collect()
}
