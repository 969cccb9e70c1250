//! Pontryagin classes and the order of `H^8`, from the elementary symmetric
//! functions of the extended tuple.
//!
//! With `sigma_i = sigma_i(q1, .., q6)`:
//!
//! * `p1 = -sigma_2` (and `2 p1 = sum q_i^2`),
//! * `H^8 = Z_s` with `s = |sigma_3| / 8`,
//! * `p2 = (3 p1^2 - sigma_4) / 8` in `Z_s`, where division by 8 is
//!   multiplication by its inverse mod `s` (`s` is prime to 6).

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tuple::{FiveTuple, SixTuple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TopInvariants {
    pub p1: i64,
    pub s: i64,
    /// Least non-negative residue mod `s`.
    pub p2: i64,
    pub sigma2: i128,
    pub sigma3: i128,
    pub sigma4: i128,
}

impl TopInvariants {
    /// `{p2, -p2 mod s}`, the class of `p2` up to the sign of the generator,
    /// as an ordered pair.
    pub fn p2_set(&self) -> (i64, i64) {
        p2_set(self.p2, self.s)
    }
}

pub fn p2_set(p2: i64, s: i64) -> (i64, i64) {
    let other = (s - p2).rem_euclid(s.max(1));
    (p2.min(other), p2.max(other))
}

/// Degree-`k` elementary symmetric function of the six entries.
pub fn elementary_symmetric(k: usize, r: &SixTuple) -> Result<i128> {
    if !(1..=6).contains(&k) {
        return Err(Error::InvalidDegree(k));
    }
    Ok(all_elementary_symmetric(&r.entries())[k])
}

/// Coefficients of `prod (1 + r_i x)`; entry `k` is `sigma_k`.
pub(crate) fn all_elementary_symmetric(r: &[i64; 6]) -> [i128; 7] {
    let mut e = [0i128; 7];
    e[0] = 1;
    for (n, &x) in r.iter().enumerate() {
        let x = x as i128;
        for k in (1..=n + 1).rev() {
            e[k] += e[k - 1] * x;
        }
    }
    e
}

/// `x` in `[0, m)` with `a x = 1 (mod m)`.
pub fn mod_inverse(a: i64, m: i64) -> Result<i64> {
    if m <= 0 {
        return Err(Error::InvalidInput(format!(
            "modulus must be positive, got {m}"
        )));
    }
    let eg = a.rem_euclid(m).extended_gcd(&m);
    if eg.gcd != 1 {
        return Err(Error::NotInvertible { a, m });
    }
    Ok(eg.x.rem_euclid(m))
}

/// Invariants of an admissible tuple.
pub fn invariants(q: &FiveTuple) -> Result<TopInvariants> {
    q.ensure_admissible()?;
    invariants_of_extension(&q.extend())
}

/// Invariants straight from a six-tuple; the caller vouches for freeness.
pub fn invariants_of_extension(r: &SixTuple) -> Result<TopInvariants> {
    let e = all_elementary_symmetric(&r.entries());
    let (sigma2, sigma3, sigma4) = (e[2], e[3], e[4]);
    if sigma3 % 8 != 0 || sigma3 == 0 {
        return Err(Error::InternalInvariantViolation(format!(
            "sigma_3 = {sigma3} of {r} is not a nonzero multiple of 8"
        )));
    }
    let p1 = -sigma2;
    let s = (sigma3.abs() / 8) as i64;
    let p2 = if s == 1 {
        0
    } else {
        let s128 = s as i128;
        let numerator = (3 * p1 * p1 - sigma4).rem_euclid(s128);
        let inv8 = mod_inverse(8, s)? as i128;
        ((numerator * inv8) % s128) as i64
    };
    Ok(TopInvariants {
        p1: p1 as i64,
        s,
        p2,
        sigma2,
        sigma3,
        sigma4,
    })
}
