//! The open set `V` of points carrying a zero-curvature plane when the
//! pair sums do not all share a sign, and its explicit base point `A0`.
//!
//! With `q1 + q5 < 0`, `q5 < 0`, `q2, q3, q4 > 0` and
//! `q_m = max(q2, q3, q4)`, a matrix `B` lies in `V` when
//!
//! 1. `|B_ij| < 1/(16 sqrt(q_m))` off `{(1,1), (2,2), (3,4), (4,5), (5,3)}`,
//! 2. `|s5|^2 > 7/8`,
//! 3. `|s1| < |s5|`,
//! 4. `f_B(I) > 0`,
//!
//! where `s_i` is the first four entries of row `i`.

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::matrix::{gaussian, norm_sqr, Mat5, UnitaryMatrix5, C64, TAU_ZERO};
use crate::numeric::seeded_rng;
use crate::numeric::sp2::{sp2_from_column, Sp2Element};
use crate::numeric::zero_plane::{column_weights, find_zero_plane, g_eval};
use crate::tuple::FiveTuple;

/// Size of the perturbation `A0 exp(eps X)`.
pub const PERTURBATION: f64 = 1e-3;
const MAX_DRAWS: usize = 100;

/// 0-based positions allowed to be large in condition (1).
const SUPPORT: [(usize, usize); 5] = [(0, 0), (1, 1), (2, 3), (3, 4), (4, 2)];

fn q_m(q: &FiveTuple) -> i64 {
    let e = q.entries();
    e[1].max(e[2]).max(e[3])
}

/// `1/(16 sqrt(q_m))`.
pub fn entry_bound(q: &FiveTuple) -> f64 {
    1.0 / (16.0 * (q_m(q) as f64).sqrt())
}

fn check_ordering(q: &FiveTuple) -> Result<()> {
    let e = q.entries();
    if e[4] >= 0 {
        return Err(Error::InvalidInput(format!("q5 must be negative in {q}")));
    }
    if e[0] + e[4] >= 0 {
        return Err(Error::InvalidInput(format!(
            "q1 + q5 must be negative in {q}"
        )));
    }
    if e[1..4].iter().any(|&x| x <= 0) {
        return Err(Error::InvalidInput(format!(
            "q2, q3, q4 must be positive in {q}"
        )));
    }
    Ok(())
}

/// A reordering meeting the preconditions of [`build_a0`]: the most
/// negative entry last, the other negative entry (or else the smallest
/// positive one) first, the rest in their original order.
pub fn open_set_ordering(q: &FiveTuple) -> Result<FiveTuple> {
    let e = q.entries();
    let mut idx: Vec<usize> = (0..5).collect();
    idx.sort_by_key(|&i| (e[i], i));
    let (last, first) = (idx[0], idx[1]);
    let mut order = vec![first];
    order.extend((0..5).filter(|&i| i != first && i != last));
    order.push(last);
    let r = q.permuted(order.try_into().expect("five indices"));
    check_ordering(&r)?;
    Ok(r)
}

/// The base point: `cos θ` at (1,1) and (4,5), `sin θ` at (1,5), `-sin θ`
/// at (4,1), ones at (2,2), (3,4), (5,3).
pub fn build_a0(q: &FiveTuple, theta: f64) -> Result<UnitaryMatrix5> {
    check_ordering(q)?;
    if !(theta > 0.0 && theta < std::f64::consts::FRAC_PI_2) {
        return Err(Error::InvalidInput(format!(
            "theta must lie in (0, pi/2), got {theta}"
        )));
    }
    if theta.sin() >= entry_bound(q) {
        return Err(Error::InvalidInput(format!(
            "sin(theta) = {} must be below 1/(16 sqrt(q_m)) = {}",
            theta.sin(),
            entry_bound(q)
        )));
    }
    Ok(UnitaryMatrix5::new_unchecked(a0_matrix(theta)))
}

fn a0_matrix(theta: f64) -> Mat5 {
    let (s, c) = theta.sin_cos();
    let r = |x: f64| C64::new(x, 0.0);
    let mut m = Mat5::zeros();
    m[(0, 0)] = r(c);
    m[(3, 4)] = r(c);
    m[(0, 4)] = r(s);
    m[(3, 0)] = r(-s);
    m[(1, 1)] = r(1.0);
    m[(2, 3)] = r(1.0);
    m[(4, 2)] = r(1.0);
    m
}

/// The four defining conditions, evaluated separately.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VMembership {
    pub small_entries: bool,
    pub s5_large: bool,
    pub s1_below_s5: bool,
    pub positive_at_identity: bool,
    /// `f_B(I)`.
    pub f_identity: f64,
}

impl VMembership {
    pub fn holds(&self) -> bool {
        self.small_entries && self.s5_large && self.s1_below_s5 && self.positive_at_identity
    }
}

pub fn in_v(q: &FiveTuple, b: &UnitaryMatrix5) -> VMembership {
    let bound = entry_bound(q);
    let small_entries = (0..5)
        .flat_map(|i| (0..5).map(move |j| (i, j)))
        .filter(|p| !SUPPORT.contains(p))
        .all(|(i, j)| b.entry(i, j).norm() < bound);
    let s5 = norm_sqr(&b.row_slice(4));
    let s1 = norm_sqr(&b.row_slice(0));
    let f_identity = g_eval(q, b, &Sp2Element::identity());
    VMembership {
        small_entries,
        s5_large: s5 > 7.0 / 8.0,
        s1_below_s5: s1 < s5,
        positive_at_identity: f_identity > 0.0,
        f_identity,
    }
}

/// `h0` with `h_2 = conj(s5)/|s5|`.
pub fn h0(b: &UnitaryMatrix5) -> Result<Sp2Element> {
    let s5 = b.row_slice(4);
    let n = norm_sqr(&s5).sqrt();
    sp2_from_column(&s5.map(|z| z.conj() / n), 1e-12)
}

/// Traceless skew-Hermitian, unit Frobenius norm.
fn random_direction<R: Rng + ?Sized>(rng: &mut R) -> Mat5 {
    let g = Mat5::from_fn(|_, _| gaussian(rng));
    let mut x = (g - g.adjoint()) * C64::new(0.5, 0.0);
    let tr = x.trace() / C64::new(5.0, 0.0);
    for i in 0..5 {
        x[(i, i)] -= tr;
    }
    let n = x.norm();
    x / C64::new(n, 0.0)
}

/// Worst values seen across the samples; each is compared against its bound
/// in [`verify_open_set`].
#[derive(Clone, Debug, PartialEq)]
pub struct OpenSetReport {
    pub q: FiveTuple,
    pub theta: f64,
    pub a0: VMembership,
    pub samples: usize,
    /// Draws discarded because they left `V`.
    pub rejected: usize,
    pub min_f_identity: f64,
    pub max_f_h0: f64,
    pub max_abs_witness_g: f64,
    /// `max (|(Bh)_l2|^2 + |(Bh)_l4|^2 - |s_l|^2)` over `h` in `{I, h0, witness}`.
    pub max_row_bound_gap: f64,
    /// `max |B_5j|/|s5|` over `j` in `{1, 2, 4}`; bound `1/(14 sqrt(q_m))`.
    pub max_row5_ratio: f64,
    /// Largest `l` in `{2, 3, 4}` term of `f_B(h0)`; bound `2/9`.
    pub max_middle_term: f64,
    /// Largest `q1, q5` partial sum of `f_B(h0)`; bound `-2/3`, and `-7/4`
    /// when `q1 > 0`.
    pub max_outer_sum: f64,
}

#[derive(Clone, Debug)]
struct SampleStats {
    rejected: usize,
    f_identity: f64,
    f_h0: f64,
    witness_g: f64,
    row_gap: f64,
    row5_ratio: f64,
    middle: f64,
    outer: f64,
}

/// Samples `n` perturbations `B = A0 exp(1e-3 X)` lying in `V` and checks at
/// each that `f_B(I) > 0`, `f_B(h0) < 0`, a zero witness exists, and the
/// intermediate bounds of the argument hold. Sample `i` uses stream `i` of
/// `seed`. A failed check returns `VerificationFailure` with the sample.
pub fn verify_open_set(q: &FiveTuple, theta: f64, n: usize, seed: u64) -> Result<OpenSetReport> {
    verify_open_set_with_tol(q, theta, n, seed, TAU_ZERO)
}

/// [`verify_open_set`] with an explicit zero tolerance for the witnesses.
pub fn verify_open_set_with_tol(
    q: &FiveTuple,
    theta: f64,
    n: usize,
    seed: u64,
    tol: f64,
) -> Result<OpenSetReport> {
    let a0 = build_a0(q, theta)?;
    let base = in_v(q, &a0);
    if !base.holds() {
        return Err(failure(format!("base point is not in V: {base:?}"), &a0));
    }
    let stats: Vec<SampleStats> = (0..n as u64)
        .into_par_iter()
        .map(|i| check_sample(q, &a0, tol, &mut seeded_rng(seed, i)))
        .collect::<Result<_>>()?;

    let fold = |f: fn(&SampleStats) -> f64, init: f64, pick: fn(f64, f64) -> f64| {
        stats.iter().map(f).fold(init, pick)
    };
    Ok(OpenSetReport {
        q: *q,
        theta,
        a0: base,
        samples: n,
        rejected: stats.iter().map(|s| s.rejected).sum(),
        min_f_identity: fold(|s| s.f_identity, f64::INFINITY, f64::min),
        max_f_h0: fold(|s| s.f_h0, f64::NEG_INFINITY, f64::max),
        max_abs_witness_g: fold(|s| s.witness_g.abs(), 0.0, f64::max),
        max_row_bound_gap: fold(|s| s.row_gap, f64::NEG_INFINITY, f64::max),
        max_row5_ratio: fold(|s| s.row5_ratio, 0.0, f64::max),
        max_middle_term: fold(|s| s.middle, f64::NEG_INFINITY, f64::max),
        max_outer_sum: fold(|s| s.outer, f64::NEG_INFINITY, f64::max),
    })
}

fn failure(reason: String, b: &UnitaryMatrix5) -> Error {
    Error::VerificationFailure {
        reason,
        matrix: b.serialize(),
    }
}

fn check_sample<R: Rng + ?Sized>(
    q: &FiveTuple,
    a0: &UnitaryMatrix5,
    tol: f64,
    rng: &mut R,
) -> Result<SampleStats> {
    let mut rejected = 0;
    let b = loop {
        let x = random_direction(rng) * C64::new(PERTURBATION, 0.0);
        let b = UnitaryMatrix5::new_unchecked(a0.matrix() * x.exp());
        if in_v(q, &b).holds() {
            break b;
        }
        rejected += 1;
        if rejected == MAX_DRAWS {
            return Err(failure(
                format!("{MAX_DRAWS} perturbations in a row left V"),
                &b,
            ));
        }
    };
    let e = q.entries();
    let qm = q_m(q) as f64;

    let f_identity = g_eval(q, &b, &Sp2Element::identity());
    if f_identity <= 0.0 {
        return Err(failure(
            format!("f_B(I) = {f_identity} is not positive"),
            &b,
        ));
    }
    let h0 = h0(&b)?;
    let f_h0 = g_eval(q, &b, &h0);
    if f_h0 >= 0.0 {
        return Err(failure(format!("f_B(h0) = {f_h0} is not negative"), &b));
    }
    let report = find_zero_plane(q, &b, tol)?;
    let (Some(witness), Some(witness_g)) = (report.zero_witness, report.g_at_witness) else {
        return Err(failure("no zero witness found".into(), &b));
    };

    let mut row_gap = f64::NEG_INFINITY;
    for h in [Sp2Element::identity(), h0, witness] {
        let w = column_weights(&b, &h);
        for (l, wl) in w.iter().enumerate() {
            row_gap = row_gap.max(wl - norm_sqr(&b.row_slice(l)));
        }
    }
    if row_gap > 1e-12 {
        return Err(failure(
            format!("row weight exceeds |s_l|^2 by {row_gap}"),
            &b,
        ));
    }

    let s5 = norm_sqr(&b.row_slice(4)).sqrt();
    let row5_ratio = [0, 1, 3]
        .iter()
        .map(|&j| b.entry(4, j).norm() / s5)
        .fold(0.0, f64::max);
    if row5_ratio > 1.0 / (14.0 * qm.sqrt()) {
        return Err(failure(
            format!("|B_5j|/|s5| = {row5_ratio} exceeds 1/(14 sqrt(q_m))"),
            &b,
        ));
    }

    let w = column_weights(&b, &h0);
    let middle = (1..4)
        .map(|l| w[l] * e[l] as f64)
        .fold(f64::NEG_INFINITY, f64::max);
    if middle > 2.0 / 9.0 {
        return Err(failure(format!("middle term {middle} exceeds 2/9"), &b));
    }
    let outer = w[0] * e[0] as f64 + w[4] * e[4] as f64;
    let outer_bound = if e[0] > 0 { -7.0 / 4.0 } else { -2.0 / 3.0 };
    if outer >= outer_bound {
        return Err(failure(
            format!("q1, q5 partial sum {outer} is not below {outer_bound}"),
            &b,
        ));
    }

    Ok(SampleStats {
        rejected,
        f_identity,
        f_h0,
        witness_g,
        row_gap,
        row5_ratio,
        middle,
        outer,
    })
}
