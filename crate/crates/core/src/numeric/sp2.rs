//! `Sp(2)` as pairs `(a, b)` of complex 2x2 matrices, `a + b j`, embedded in
//! `SU(5)` as
//!
//! ```text
//! [  a     b    0 ]
//! [ -b̄     ā    0 ]
//! [  0     0    1 ]
//! ```
//!
//! On `C^4` the quaternionic structure is `J(v) = (-v̄3, -v̄4, v̄1, v̄2)`: it
//! maps the first and second columns of the embedded block to the third and
//! fourth, so column 2 determines column 4.

use nalgebra::{linalg::Schur, Matrix2};
use rand::Rng;

use crate::error::{Error, Result};
use crate::numeric::matrix::{gaussian, group_residual, Mat4, Mat5, UnitaryMatrix5, C64};

pub type Mat2 = Matrix2<C64>;

/// Coordinates on the Lie algebra `sp(2)`: `x[0..4]` span the `u(2)`
/// diagonal block, `x[4..10]` the complex symmetric off-diagonal block.
pub type Sp2Algebra = [f64; 10];

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sp2Element {
    pub a: Mat2,
    pub b: Mat2,
}

impl Sp2Element {
    /// Checks `a^H a + b^T b̄ = I` and `a^H b = b^T ā`.
    pub fn new(a: Mat2, b: Mat2, tol: f64) -> Result<Self> {
        let e = Sp2Element { a, b };
        let residual = e.quaternionic_residual();
        if residual > tol {
            return Err(Error::NotInGroup { residual });
        }
        Ok(e)
    }

    pub fn identity() -> Self {
        Sp2Element {
            a: Mat2::identity(),
            b: Mat2::zeros(),
        }
    }

    pub fn quaternionic_residual(&self) -> f64 {
        let (a, b) = (&self.a, &self.b);
        let diag = a.adjoint() * a + b.transpose() * b.conjugate() - Mat2::identity();
        let off = a.adjoint() * b - b.transpose() * a.conjugate();
        diag.iter()
            .chain(off.iter())
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// The 4x4 block `[[a, b], [-b̄, ā]]`.
    pub fn block4(&self) -> Mat4 {
        let mut m = Mat4::zeros();
        for i in 0..2 {
            for j in 0..2 {
                m[(i, j)] = self.a[(i, j)];
                m[(i, j + 2)] = self.b[(i, j)];
                m[(i + 2, j)] = -self.b[(i, j)].conj();
                m[(i + 2, j + 2)] = self.a[(i, j)].conj();
            }
        }
        m
    }

    pub(crate) fn from_block4(m: &Mat4) -> Self {
        Sp2Element {
            a: m.fixed_view::<2, 2>(0, 0).into_owned(),
            b: m.fixed_view::<2, 2>(0, 2).into_owned(),
        }
    }

    pub fn embed_matrix(&self) -> Mat5 {
        let mut m = Mat5::identity();
        m.fixed_view_mut::<4, 4>(0, 0).copy_from(&self.block4());
        m
    }

    /// Column `j` (0-based) of the embedded block, restricted to `C^4`.
    pub fn column(&self, j: usize) -> [C64; 4] {
        let m = self.block4();
        [m[(0, j)], m[(1, j)], m[(2, j)], m[(3, j)]]
    }

    /// `h_2`, the first four entries of the second column.
    pub fn h2(&self) -> [C64; 4] {
        let (a, b) = (&self.a, &self.b);
        [a[(0, 1)], a[(1, 1)], -b[(0, 1)].conj(), -b[(1, 1)].conj()]
    }

    /// `h_4 = J(h_2)`.
    pub fn h4(&self) -> [C64; 4] {
        j_map(&self.h2())
    }

    /// Element whose first and second columns are `c1` and `c2`; the caller
    /// supplies orthonormal `c1`, `c2` with `c1 ⟂ J(c2)`.
    pub(crate) fn from_columns(c1: &[C64; 4], c2: &[C64; 4]) -> Self {
        Sp2Element {
            a: Mat2::new(c1[0], c2[0], c1[1], c2[1]),
            b: Mat2::new(-c1[2].conj(), -c2[2].conj(), -c1[3].conj(), -c2[3].conj()),
        }
    }

    pub fn mul(&self, other: &Sp2Element) -> Sp2Element {
        Sp2Element::from_block4(&(self.block4() * other.block4()))
    }

    pub fn inverse(&self) -> Sp2Element {
        Sp2Element::from_block4(&self.block4().adjoint())
    }

    /// `exp` of an algebra element, through the matrix exponential of the
    /// embedded block (scaling and squaring).
    pub fn exp(x: &Sp2Algebra) -> Sp2Element {
        Sp2Element::from_block4(&algebra_matrix(x).exp())
    }

    /// Principal logarithm, or `None` when an eigenvalue sits within `1e-8`
    /// of `-1` (the branch cut).
    pub fn log(&self) -> Option<Sp2Algebra> {
        let (q, t) = Schur::new(self.block4()).unpack();
        let mut d = Mat4::zeros();
        for k in 0..4 {
            let lambda = t[(k, k)];
            if (lambda + ONE).norm() < 1e-8 {
                return None;
            }
            d[(k, k)] = lambda.ln();
        }
        Some(algebra_coordinates(&(q * d * q.adjoint())))
    }

    /// Approximately Haar-distributed sample: a Gaussian second column,
    /// then a Gaussian first column projected off the quaternionic line of
    /// the second.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Sp2Element {
        let v = unit(&std::array::from_fn(|_| gaussian(rng)));
        loop {
            let w: [C64; 4] = std::array::from_fn(|_| gaussian(rng));
            let w = project_off(&w, &v);
            if w.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-6 {
                return Sp2Element::from_columns(&unit(&w), &v);
            }
        }
    }
}

/// Embedding into `SU(5)`, checked at `tol`.
pub fn embed_sp2(e: &Sp2Element, tol: f64) -> Result<UnitaryMatrix5> {
    let q = e.quaternionic_residual();
    if q > tol {
        return Err(Error::NotInGroup { residual: q });
    }
    UnitaryMatrix5::new(e.embed_matrix(), tol)
}

/// An element whose embedded second column is `(v, 0)`.
///
/// The first column is completed by quaternionic Gram–Schmidt against the
/// standard basis `e1, .., e4`, taking the first candidate of norm at least
/// one half.
pub fn sp2_from_column(v: &[C64; 4], tol: f64) -> Result<Sp2Element> {
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if !n.is_finite() || (n - 1.0).abs() > tol {
        return Err(Error::InvalidInput(format!(
            "column must have unit norm, got {n}"
        )));
    }
    for k in 0..4 {
        let mut e = [ZERO; 4];
        e[k] = ONE;
        let w = project_off(&e, v);
        if w.iter().map(|z| z.norm_sqr()).sum::<f64>() >= 0.25 {
            // second pass for orthogonality at rounding level
            let w = unit(&project_off(&unit(&w), v));
            return Ok(Sp2Element::from_columns(&w, v));
        }
    }
    unreachable!("the complement of a quaternionic line always has a large basis projection")
}

pub fn j_map(v: &[C64; 4]) -> [C64; 4] {
    [-v[2].conj(), -v[3].conj(), v[0].conj(), v[1].conj()]
}

fn hermitian(v: &[C64; 4], w: &[C64; 4]) -> C64 {
    v.iter().zip(w).map(|(a, b)| a.conj() * b).sum()
}

/// Removes the components of `w` along `v` and `J(v)`.
fn project_off(w: &[C64; 4], v: &[C64; 4]) -> [C64; 4] {
    let jv = j_map(v);
    let cv = hermitian(v, w);
    let cj = hermitian(&jv, w);
    std::array::from_fn(|i| w[i] - v[i] * cv - jv[i] * cj)
}

fn unit(v: &[C64; 4]) -> [C64; 4] {
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.map(|z| z / n)
}

/// The skew-Hermitian 4x4 matrix of an algebra element.
pub fn algebra_matrix(x: &Sp2Algebra) -> Mat4 {
    let alpha = Mat2::new(
        I * x[0],
        C64::new(x[1], x[2]),
        C64::new(-x[1], x[2]),
        I * x[3],
    );
    let beta = Mat2::new(
        C64::new(x[4], x[5]),
        C64::new(x[6], x[7]),
        C64::new(x[6], x[7]),
        C64::new(x[8], x[9]),
    );
    let mut m = Mat4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(&alpha);
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(&beta);
    m.fixed_view_mut::<2, 2>(2, 0)
        .copy_from(&(-beta.conjugate()));
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(&alpha.conjugate());
    m
}

/// Coordinates of the nearest algebra element to `m`, averaging the
/// redundant blocks.
pub fn algebra_coordinates(m: &Mat4) -> Sp2Algebra {
    let tl = m.fixed_view::<2, 2>(0, 0).into_owned();
    let br = m.fixed_view::<2, 2>(2, 2).into_owned();
    let tr = m.fixed_view::<2, 2>(0, 2).into_owned();
    let bl = m.fixed_view::<2, 2>(2, 0).into_owned();
    let alpha = (tl + br.conjugate()) * C64::new(0.5, 0.0);
    let alpha = (alpha - alpha.adjoint()) * C64::new(0.5, 0.0);
    let beta = (tr - bl.conjugate()) * C64::new(0.5, 0.0);
    let beta = (beta + beta.transpose()) * C64::new(0.5, 0.0);
    [
        alpha[(0, 0)].im,
        alpha[(0, 1)].re,
        alpha[(0, 1)].im,
        alpha[(1, 1)].im,
        beta[(0, 0)].re,
        beta[(0, 0)].im,
        beta[(0, 1)].re,
        beta[(0, 1)].im,
        beta[(1, 1)].re,
        beta[(1, 1)].im,
    ]
}

/// `max |M^H M - I|` together with `|det - 1|` for the embedding; used by
/// property tests.
pub fn embedding_residual(e: &Sp2Element) -> f64 {
    group_residual(&e.embed_matrix())
}
