//! Canonical forms under the moves that preserve the diffeomorphism type:
//! permuting entries, negating the tuple, and replacing one entry by
//! `-sum(q)`.
//!
//! All three act on the extended six-tuple as permutations or a global sign,
//! so the descending sort of `r` or `-r` (whichever is lexicographically
//! larger) is a complete invariant of the orbit. This decides
//! *moves-equivalence*, which implies diffeomorphism but is not known to
//! coincide with it.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::curvature::{classify, CurvatureClass};
use crate::error::{Error, Result};
use crate::tuple::{FiveTuple, SixTuple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[i64; 6]", into = "[i64; 6]")]
pub struct CanonicalClass(SixTuple);

impl CanonicalClass {
    /// Canonical form of any zero-sum odd six-tuple.
    pub fn of_extension(r: &SixTuple) -> CanonicalClass {
        let a = r.sorted_desc();
        let b = r.negated().sorted_desc();
        CanonicalClass(a.max(b))
    }

    /// Accepts only tuples already in canonical form.
    pub fn from_canonical(r: SixTuple) -> Result<CanonicalClass> {
        let c = CanonicalClass::of_extension(&r);
        if c.0 != r {
            return Err(Error::InvalidTuple(format!(
                "{r} is not in canonical form (expected {c})"
            )));
        }
        Ok(c)
    }

    pub fn tuple(&self) -> &SixTuple {
        &self.0
    }

    pub fn entries(&self) -> [i64; 6] {
        self.0.entries()
    }

    /// Space-separated, as used in CSV exports.
    pub fn to_spaced(&self) -> String {
        self.entries().map(|x| x.to_string()).join(" ")
    }
}

impl fmt::Display for CanonicalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<[i64; 6]> for CanonicalClass {
    type Error = Error;
    fn try_from(r: [i64; 6]) -> Result<Self> {
        CanonicalClass::from_canonical(SixTuple::new(r)?)
    }
}

impl From<CanonicalClass> for [i64; 6] {
    fn from(c: CanonicalClass) -> Self {
        c.entries()
    }
}

pub fn canonical_class(q: &FiveTuple) -> Result<CanonicalClass> {
    q.ensure_admissible()?;
    Ok(CanonicalClass::of_extension(&q.extend()))
}

/// Normalized five-tuples obtained by deleting one entry, deduplicated and
/// sorted descending (largest tuple first).
pub fn representatives(c: &CanonicalClass) -> Result<Vec<FiveTuple>> {
    let mut reps = BTreeSet::new();
    for i in 0..6 {
        let q = c.tuple().delete(i).normalize();
        if !q.is_admissible() {
            return Err(Error::InternalInvariantViolation(format!(
                "deleting entry {} of {c} gives the non-free tuple {q}",
                i + 1
            )));
        }
        reps.insert(q);
    }
    Ok(reps.into_iter().rev().collect())
}

/// Moves-equivalence of two admissible tuples.
pub fn are_diffeomorphic(q: &FiveTuple, r: &FiveTuple) -> Result<bool> {
    Ok(canonical_class(q)? == canonical_class(r)?)
}

/// Strongest verdict among the natural metrics of all representatives.
pub fn best_curvature(c: &CanonicalClass) -> Result<CurvatureClass> {
    best_curvature_of(&representatives(c)?)
}

pub(crate) fn best_curvature_of(reps: &[FiveTuple]) -> Result<CurvatureClass> {
    let mut best = CurvatureClass::NonNegativeOnly;
    for q in reps {
        best = best.max(classify(q)?);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::admissible_up_to;
    use crate::topology::invariants;

    fn t(q: [i64; 5]) -> FiveTuple {
        FiveTuple::new(q).unwrap()
    }

    fn class(r: [i64; 6]) -> CanonicalClass {
        CanonicalClass::from_canonical(SixTuple::new(r).unwrap()).unwrap()
    }

    /// Distinct normalized deletions, by plain enumeration.
    fn deletion_oracle(r: [i64; 6]) -> BTreeSet<[i64; 5]> {
        (0..6)
            .map(|i| {
                let q: Vec<i64> = r
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, x)| *x)
                    .collect();
                let pos = q.iter().filter(|x| **x > 0).count();
                let mut q: Vec<i64> = if pos >= 3 {
                    q
                } else {
                    q.iter().map(|x| -x).collect()
                };
                q.sort_by(|a, b| b.cmp(a));
                [q[0], q[1], q[2], q[3], q[4]]
            })
            .collect()
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(
            canonical_class(&t([1, 1, 1, -1, -3])).unwrap().entries(),
            [3, 1, -1, -1, -1, -1]
        );
        assert_eq!(
            canonical_class(&t([1, 1, 1, 1, -1])).unwrap().entries(),
            [3, 1, -1, -1, -1, -1]
        );
        assert_eq!(
            canonical_class(&t([7, 1, 1, -3, -3])).unwrap().entries(),
            [7, 1, 1, -3, -3, -3]
        );
        assert!(canonical_class(&t([7, -5, 1, 1, -1])).is_err());
    }

    #[test]
    fn non_canonical_rejected() {
        assert!(
            CanonicalClass::from_canonical(SixTuple::new([1, 1, 1, 1, -1, -3]).unwrap()).is_err()
        );
        assert!(CanonicalClass::try_from([1, 1, 1, -1, -1, -3]).is_err());
    }

    #[test]
    fn representative_examples() {
        let c = class([3, 1, -1, -1, -1, -1]);
        let reps: Vec<[i64; 5]> = representatives(&c)
            .unwrap()
            .iter()
            .map(|q| q.entries())
            .collect();
        let oracle = deletion_oracle(c.entries());
        assert_eq!(reps.iter().copied().collect::<BTreeSet<_>>(), oracle);
        assert_eq!(
            reps,
            vec![[1, 1, 1, 1, -1], [1, 1, 1, 1, -3], [1, 1, 1, -1, -3]]
        );

        let c = class([7, 1, 1, -3, -3, -3]);
        let reps: Vec<[i64; 5]> = representatives(&c)
            .unwrap()
            .iter()
            .map(|q| q.entries())
            .collect();
        assert_eq!(
            reps.iter().copied().collect::<BTreeSet<_>>(),
            deletion_oracle(c.entries())
        );
        assert_eq!(
            reps,
            vec![[7, 1, 1, -3, -3], [3, 3, 3, -1, -1], [3, 3, 3, -1, -7]]
        );

        for q in representatives(&c).unwrap() {
            let inv = invariants(&q).unwrap();
            assert_eq!((inv.p1, inv.s), (39, 11));
        }
    }

    #[test]
    fn diffeomorphism_examples() {
        assert!(are_diffeomorphic(&t([1, 1, 1, -1, -3]), &t([1, 1, 1, 1, -1])).unwrap());
        assert!(!are_diffeomorphic(
            &t([7, 1, 1, -3, -3]),
            &t([5, 5, -3, -3, -1]).negated().normalize()
        )
        .unwrap());
        let q = t([7, -3, 1, 1, -3]);
        assert!(are_diffeomorphic(&q, &q.permuted([4, 3, 2, 1, 0])).unwrap());
    }

    #[test]
    fn best_curvature_examples() {
        assert_eq!(
            best_curvature(&class([3, 1, -1, -1, -1, -1])).unwrap(),
            CurvatureClass::AlmostPositive
        );
        assert_eq!(
            best_curvature(&class([7, 1, 1, -3, -3, -3])).unwrap(),
            CurvatureClass::QuasiPositive
        );
        let c = canonical_class(&t([1, 1, 1, 1, 1])).unwrap();
        assert_eq!(
            best_curvature(&c).unwrap(),
            CurvatureClass::PositivelyCurved
        );
    }

    #[test]
    fn canonical_form_is_orbit_invariant() {
        for q in admissible_up_to(9) {
            let c = canonical_class(&q).unwrap();
            let r = c.entries();
            assert!(r.windows(2).all(|w| w[0] >= w[1]));
            assert!(r >= c.tuple().negated().sorted_desc().entries());
            assert_eq!(canonical_class(&q.permuted([2, 4, 1, 0, 3])).unwrap(), c);
            assert_eq!(canonical_class(&q.negated().normalize()).unwrap(), c);
            for i in 0..5 {
                let mut moved = q.entries();
                moved[i] = -q.sum();
                let moved = FiveTuple::new(moved).unwrap().normalize();
                assert_eq!(canonical_class(&moved).unwrap(), c, "{q} move {i}");
            }
            // every class has a quasi-positively curved representative
            assert!(best_curvature(&c).unwrap() >= CurvatureClass::QuasiPositive);
        }
    }

    #[test]
    fn representatives_share_invariants() {
        for q in admissible_up_to(7) {
            let c = canonical_class(&q).unwrap();
            let reps = representatives(&c).unwrap();
            let base = invariants(&reps[0]).unwrap();
            for r in &reps[1..] {
                let inv = invariants(r).unwrap();
                assert_eq!(
                    (inv.p1, inv.s, inv.p2_set()),
                    (base.p1, base.s, base.p2_set())
                );
            }
        }
    }

    #[test]
    fn serde_uses_plain_arrays() {
        let c = class([7, 1, 1, -3, -3, -3]);
        assert_eq!(serde_json::to_string(&c).unwrap(), "[7,1,1,-3,-3,-3]");
        assert!(serde_json::from_str::<CanonicalClass>("[1,1,1,1,-1,-3]").is_err());
    }
}
