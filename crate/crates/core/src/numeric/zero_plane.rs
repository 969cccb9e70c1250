//! The zero-plane criterion at a point `[A]`: condition (1) is a closed
//! formula in the last column of `A`; condition (2) asks for a zero of
//! `g_A` on `Sp(2)`, which is connected, so a pair of sign points and a
//! bisection along a path between them certify one.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::matrix::{dot, norm_sqr, Mat4, UnitaryMatrix5, C64, TAU_GRP};
use crate::numeric::seeded_rng;
use crate::numeric::sp2::{algebra_matrix, j_map, sp2_from_column, Sp2Algebra, Sp2Element};
use crate::tuple::FiveTuple;

/// Restarts used when the analytic sign candidates are not enough.
const FALLBACK_RESTARTS: usize = 16;
/// Restarts behind `certified_positive_min`.
const POSITIVE_MIN_RESTARTS: usize = 64;
const SEARCH_SEED: u64 = 0x5eed;
const DESCENT_ITERS: usize = 200;

/// `sum q_l - sum |A_l5|^2 q_l`.
pub fn eq1_residual(q: &FiveTuple, a: &UnitaryMatrix5) -> f64 {
    let q = q.entries();
    let total: i64 = q.iter().sum();
    let weighted: f64 = (0..5).map(|l| a.entry(l, 4).norm_sqr() * q[l] as f64).sum();
    total as f64 - weighted
}

/// `g_A(h) = sum (|s_l . h_2|^2 + |s_l . h_4|^2) q_l` with the bilinear dot.
pub fn g_eval(q: &FiveTuple, a: &UnitaryMatrix5, h: &Sp2Element) -> f64 {
    let (h2, h4) = (h.h2(), h.h4());
    let q = q.entries();
    (0..5)
        .map(|l| {
            let s = a.row_slice(l);
            (dot(&s, &h2).norm_sqr() + dot(&s, &h4).norm_sqr()) * q[l] as f64
        })
        .sum()
}

/// Weights `|(Ah)_l2|^2 + |(Ah)_l4|^2` for each row.
pub fn column_weights(a: &UnitaryMatrix5, h: &Sp2Element) -> [f64; 5] {
    let (h2, h4) = (h.h2(), h.h4());
    std::array::from_fn(|l| {
        let s = a.row_slice(l);
        dot(&s, &h2).norm_sqr() + dot(&s, &h4).norm_sqr()
    })
}

/// A unit `h_2` with `s . h_2 = s . J(h_2) = 0` for `s` the first four
/// entries of row `row` (0-based), completed to an element of `Sp(2)`.
///
/// The two complex equations form a real 4x8 system in `(Re h_2, Im h_2)`.
/// It is reduced with column pivoting; the lowest-index free variable is
/// set to one and the others to zero.
pub fn kernel_point(a: &UnitaryMatrix5, row: usize) -> Result<Sp2Element> {
    let s = a.row_slice(row);
    let basis = |j: usize| -> [C64; 4] {
        let mut e = [C64::new(0.0, 0.0); 4];
        e[j % 4] = if j < 4 {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 1.0)
        };
        e
    };
    let mut m = [[0.0f64; 8]; 4];
    for j in 0..8 {
        let v = basis(j);
        let f1 = dot(&s, &v);
        let f2 = dot(&s, &j_map(&v));
        for (i, x) in [f1.re, f1.im, f2.re, f2.im].into_iter().enumerate() {
            m[i][j] = x;
        }
    }

    // reduced row echelon form
    let mut pivots: Vec<usize> = vec![];
    let mut r = 0;
    for c in 0..8 {
        if r == 4 {
            break;
        }
        let (best, val) = (r..4)
            .map(|i| (i, m[i][c].abs()))
            .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if val < 1e-12 {
            continue;
        }
        m.swap(r, best);
        let p = m[r][c];
        for x in m[r].iter_mut() {
            *x /= p;
        }
        for i in 0..4 {
            if i != r && m[i][c] != 0.0 {
                let f = m[i][c];
                for k in 0..8 {
                    m[i][k] -= f * m[r][k];
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free = (0..8)
        .find(|c| !pivots.contains(c))
        .expect("at most four pivots among eight columns");
    let mut x = [0.0f64; 8];
    x[free] = 1.0;
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = -m[i][free];
    }
    let v: [C64; 4] = std::array::from_fn(|k| C64::new(x[k], x[k + 4]));
    let n = norm_sqr(&v).sqrt();
    sp2_from_column(&v.map(|z| z / n), TAU_GRP)
}

/// `h` with `h_2 = conj(s_5)/|s_5|` when `|s_5|^2 >= 1/2`, otherwise
/// `h_2 = conj(s_4)/|s_4|`.
pub fn analytic_minus_point(a: &UnitaryMatrix5) -> Result<Sp2Element> {
    let s5 = a.row_slice(4);
    if norm_sqr(&s5) >= 0.5 {
        return conjugate_row_point(a, 4).ok_or(Error::NotInGroup {
            residual: a.residual(),
        });
    }
    conjugate_row_point(a, 3).ok_or(Error::NotInGroup {
        residual: a.residual(),
    })
}

fn conjugate_row_point(a: &UnitaryMatrix5, row: usize) -> Option<Sp2Element> {
    let s = a.row_slice(row);
    let n = norm_sqr(&s).sqrt();
    if n < 1e-8 {
        return None;
    }
    sp2_from_column(&s.map(|z| z.conj() / n), TAU_GRP).ok()
}

/// Points where `g_A` is non-negative (`plus`) and non-positive (`minus`),
/// each with its value.
#[derive(Clone, Debug)]
pub struct SignPoints {
    pub plus: Option<(Sp2Element, f64)>,
    pub minus: Option<(Sp2Element, f64)>,
}

/// Rows with negative weight, most negative first (ties by index).
fn negative_rows(q: &FiveTuple) -> Vec<usize> {
    let e = q.entries();
    let mut rows: Vec<usize> = (0..5).filter(|&l| e[l] < 0).collect();
    rows.sort_by_key(|&l| (e[l], l));
    rows
}

/// Tries the identity, then kernel points of the negative rows, then a
/// multistart maximization for `plus`; the analytic point, then conjugated
/// negative rows, then a multistart minimization for `minus`.
pub fn find_sign_points(q: &FiveTuple, a: &UnitaryMatrix5) -> Result<SignPoints> {
    let g = |h: &Sp2Element| g_eval(q, a, h);
    let rows = negative_rows(q);

    let mut plus = None;
    let mut candidates = vec![Sp2Element::identity(), kernel_point(a, 4)?];
    for &l in &rows {
        if l != 4 {
            candidates.push(kernel_point(a, l)?);
        }
    }
    for h in candidates {
        let v = g(&h);
        if v >= 0.0 {
            plus = Some((h, v));
            break;
        }
    }
    if plus.is_none() {
        let (h, v) = optimize(q, a, FALLBACK_RESTARTS, SEARCH_SEED, -1.0);
        if v >= 0.0 {
            plus = Some((h, v));
        }
    }

    let mut minus = None;
    let mut candidates = vec![analytic_minus_point(a)?];
    candidates.extend(rows.iter().filter_map(|&l| conjugate_row_point(a, l)));
    for h in candidates {
        let v = g(&h);
        if v <= 0.0 {
            minus = Some((h, v));
            break;
        }
    }
    if minus.is_none() {
        let (h, v) = optimize(q, a, FALLBACK_RESTARTS, SEARCH_SEED, 1.0);
        if v <= 0.0 {
            minus = Some((h, v));
        }
    }
    Ok(SignPoints { plus, minus })
}

/// `M = (A^H Q A)` restricted to the upper 4x4 block, so that
/// `g(h) = (h^H M h)_22 + (h^H M h)_44`.
fn weight_matrix(q: &FiveTuple, a: &UnitaryMatrix5) -> Mat4 {
    let q = q.entries();
    Mat4::from_fn(|j, k| {
        (0..5)
            .map(|l| a.entry(l, j).conj() * a.entry(l, k) * q[l] as f64)
            .sum()
    })
}

fn objective(m: &Mat4, h: &Mat4) -> f64 {
    let n = h.adjoint() * m * h;
    n[(1, 1)].re + n[(3, 3)].re
}

fn algebra_basis() -> [Mat4; 10] {
    std::array::from_fn(|k| {
        let mut x: Sp2Algebra = [0.0; 10];
        x[k] = 1.0;
        algebra_matrix(&x)
    })
}

/// Gradient descent on `sign * g` in the right-translated exponential
/// chart, with Armijo backtracking.
fn descend(m: &Mat4, basis: &[Mat4; 10], sign: f64, start: Sp2Element) -> (Sp2Element, f64) {
    let f = |h: &Mat4| sign * objective(m, h);
    let mut h = start.block4();
    let mut fh = f(&h);
    let mut step = 1.0f64;
    for _ in 0..DESCENT_ITERS {
        // d/dt g(h exp(tX)) = Re Tr((PN - NP) X) with N = h^H M h
        let n = h.adjoint() * m * h;
        let mut pn_np = Mat4::zeros();
        for i in [1, 3] {
            for j in 0..4 {
                pn_np[(i, j)] += n[(i, j)];
                pn_np[(j, i)] -= n[(j, i)];
            }
        }
        let grad: [f64; 10] = std::array::from_fn(|k| sign * (pn_np * basis[k]).trace().re);
        let gn2: f64 = grad.iter().map(|x| x * x).sum();
        if gn2 < 1e-24 {
            break;
        }
        let dir = basis
            .iter()
            .zip(grad)
            .fold(Mat4::zeros(), |acc, (e, g)| acc - e * C64::new(g, 0.0));
        step = (step * 2.0).min(4.0);
        let mut accepted = false;
        for _ in 0..40 {
            let cand = h * (dir * C64::new(step, 0.0)).exp();
            let fc = f(&cand);
            if fc <= fh - 1e-4 * step * gn2 {
                h = cand;
                fh = fc;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (Sp2Element::from_block4(&h), fh * sign)
}

fn optimize(
    q: &FiveTuple,
    a: &UnitaryMatrix5,
    restarts: usize,
    seed: u64,
    sign: f64,
) -> (Sp2Element, f64) {
    let m = weight_matrix(q, a);
    let basis = algebra_basis();
    let results: Vec<(Sp2Element, f64)> = (0..restarts.max(1) as u64)
        .into_par_iter()
        .map(|i| {
            let start = Sp2Element::random(&mut seeded_rng(seed, i));
            let (h, _) = descend(&m, &basis, sign, start);
            // report the exact criterion at the returned point
            let v = g_eval(q, a, &h);
            (h, v)
        })
        .collect();
    results
        .into_iter()
        .reduce(|best, x| if sign * x.1 < sign * best.1 { x } else { best })
        .expect("at least one restart")
}

/// Best local minimum of `g_A` over `restarts` seeded starting points.
/// Deterministic for a fixed seed regardless of the thread count.
pub fn minimize_g(
    q: &FiveTuple,
    a: &UnitaryMatrix5,
    restarts: usize,
    seed: u64,
) -> (Sp2Element, f64) {
    optimize(q, a, restarts, seed, 1.0)
}

/// Best local maximum, the counterpart of [`minimize_g`].
pub fn maximize_g(
    q: &FiveTuple,
    a: &UnitaryMatrix5,
    restarts: usize,
    seed: u64,
) -> (Sp2Element, f64) {
    optimize(q, a, restarts, seed, -1.0)
}

#[derive(Clone, Debug)]
pub struct ZeroPlaneReport {
    pub eq1_residual: f64,
    /// Condition (1) holds within the tolerance.
    pub eq1_certified: bool,
    pub zero_witness: Option<Sp2Element>,
    pub g_at_witness: Option<f64>,
    /// `((h-, g(h-)), (h+, g(h+)))` with `g(h-) <= 0 <= g(h+)`.
    pub bracket: Option<((Sp2Element, f64), (Sp2Element, f64))>,
    /// Smallest value seen by the minimizer when no sign change was found.
    /// Evidence against a zero, not a proof.
    pub certified_positive_min: Option<f64>,
}

impl ZeroPlaneReport {
    pub fn has_zero_plane(&self) -> bool {
        self.eq1_certified || self.zero_witness.is_some()
    }
}

pub fn find_zero_plane(q: &FiveTuple, a: &UnitaryMatrix5, tol: f64) -> Result<ZeroPlaneReport> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    q.ensure_admissible()?;
    let eq1 = eq1_residual(q, a);
    let mut report = ZeroPlaneReport {
        eq1_residual: eq1,
        eq1_certified: eq1.abs() <= tol,
        zero_witness: None,
        g_at_witness: None,
        bracket: None,
        certified_positive_min: None,
    };
    if report.eq1_certified {
        return Ok(report);
    }

    let SignPoints { plus, mut minus } = find_sign_points(q, a)?;
    for (h, v) in plus.iter().chain(minus.iter()) {
        if v.abs() <= tol {
            report.zero_witness = Some(*h);
            report.g_at_witness = Some(*v);
            report.bracket = plus.zip(minus);
            return Ok(report);
        }
    }
    if plus.is_some() && minus.is_none() {
        let (h, v) = minimize_g(q, a, POSITIVE_MIN_RESTARTS, SEARCH_SEED);
        if v > 0.0 {
            report.certified_positive_min = Some(v);
            return Ok(report);
        }
        minus = Some((h, v));
    }
    let (Some(plus), Some(minus)) = (plus, minus) else {
        return Ok(report);
    };
    report.bracket = Some((minus, plus));
    if let Some((h, v)) = bisect(q, a, minus, plus, tol) {
        report.zero_witness = Some(h);
        report.g_at_witness = Some(v);
    }
    Ok(report)
}

/// Outcome of [`verify_zero_planes`].
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroPlaneBatch {
    pub samples: usize,
    /// Points certified by condition (1).
    pub eq1_certified: usize,
    /// Points certified by a zero of `g_A`.
    pub witnesses: usize,
    pub max_abs_g: f64,
    /// First sample without a zero plane: index and serialized matrix.
    pub first_failure: Option<(u64, String)>,
}

impl ZeroPlaneBatch {
    pub fn all_found(&self) -> bool {
        self.eq1_certified + self.witnesses == self.samples
    }
}

/// Runs [`find_zero_plane`] at `samples` Haar-random points; point `i` is
/// drawn from stream `i` of `seed`.
pub fn verify_zero_planes(
    q: &FiveTuple,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<ZeroPlaneBatch> {
    let reports: Vec<(u64, UnitaryMatrix5, ZeroPlaneReport)> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let a = UnitaryMatrix5::random(&mut seeded_rng(seed, i));
            find_zero_plane(q, &a, tol).map(|r| (i, a, r))
        })
        .collect::<Result<_>>()?;
    let mut batch = ZeroPlaneBatch {
        samples,
        eq1_certified: 0,
        witnesses: 0,
        max_abs_g: 0.0,
        first_failure: None,
    };
    for (i, a, r) in reports {
        if r.eq1_certified {
            batch.eq1_certified += 1;
        } else if let Some(v) = r.g_at_witness {
            batch.witnesses += 1;
            batch.max_abs_g = batch.max_abs_g.max(v.abs());
        } else if batch.first_failure.is_none() {
            batch.first_failure = Some((i, a.serialize()));
        }
    }
    Ok(batch)
}

/// Bisection of `t -> g(h- exp(t log(h-^{-1} h+)))`. Near the branch cut
/// of the logarithm, a random intermediate point replaces one end.
fn bisect(
    q: &FiveTuple,
    a: &UnitaryMatrix5,
    minus: (Sp2Element, f64),
    plus: (Sp2Element, f64),
    tol: f64,
) -> Option<(Sp2Element, f64)> {
    let g = |h: &Sp2Element| g_eval(q, a, h);
    let (mut lo, mut hi) = (minus.0, plus.0);
    for attempt in 0..16u64 {
        let Some(x) = lo.inverse().mul(&hi).log() else {
            let r = Sp2Element::random(&mut seeded_rng(SEARCH_SEED, attempt));
            let v = g(&r);
            if v.abs() <= tol {
                return Some((r, v));
            }
            if v > 0.0 {
                hi = r;
            } else {
                lo = r;
            }
            continue;
        };
        let x = algebra_matrix(&x);
        let base = lo.block4();
        let at = |t: f64| Sp2Element::from_block4(&(base * (x * C64::new(t, 0.0)).exp()));
        let (mut t0, mut t1) = (0.0f64, 1.0f64);
        let end = at(1.0);
        let v1 = g(&end);
        if v1.abs() <= tol {
            return Some((end, v1));
        }
        if v1 < 0.0 {
            // the end point drifted across zero through rounding; treat as a
            // fresh lower end
            lo = end;
            continue;
        }
        for _ in 0..200 {
            let t = 0.5 * (t0 + t1);
            let h = at(t);
            let v = g(&h);
            if v.abs() <= tol {
                return Some((h, v));
            }
            if v < 0.0 {
                t0 = t;
            } else {
                t1 = t;
            }
            if t1 - t0 < f64::EPSILON {
                break;
            }
        }
        return None;
    }
    None
}
