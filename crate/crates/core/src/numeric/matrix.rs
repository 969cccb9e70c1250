use nalgebra::{Matrix4, Matrix5};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type Mat5 = Matrix5<C64>;
pub type Mat4 = Matrix4<C64>;

/// Group-membership tolerance.
pub const TAU_GRP: f64 = 1e-10;
/// Tolerance for certifying a zero of the criterion functions.
pub const TAU_ZERO: f64 = 1e-9;

/// A point of `SU(5)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitaryMatrix5(Mat5);

impl UnitaryMatrix5 {
    pub fn new(m: Mat5, tol: f64) -> Result<Self> {
        let residual = group_residual(&m);
        if residual > tol {
            return Err(Error::NotInGroup { residual });
        }
        Ok(UnitaryMatrix5(m))
    }

    /// Wraps a matrix that is in `SU(5)` by construction.
    pub(crate) fn new_unchecked(m: Mat5) -> Self {
        debug_assert!(group_residual(&m) < 1e-8, "residual {}", group_residual(&m));
        UnitaryMatrix5(m)
    }

    pub fn identity() -> Self {
        UnitaryMatrix5(Mat5::identity())
    }

    pub fn matrix(&self) -> &Mat5 {
        &self.0
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.0[(i, j)]
    }

    /// First four entries of row `i` (0-based).
    pub fn row_slice(&self, i: usize) -> [C64; 4] {
        [
            self.0[(i, 0)],
            self.0[(i, 1)],
            self.0[(i, 2)],
            self.0[(i, 3)],
        ]
    }

    pub fn residual(&self) -> f64 {
        group_residual(&self.0)
    }

    pub fn mul(&self, other: &UnitaryMatrix5) -> UnitaryMatrix5 {
        UnitaryMatrix5(self.0 * other.0)
    }

    /// `diag(z^q1, .., z^q5) * self`, the circle part of the action.
    pub fn left_circle(&self, z: C64, q: &[i64; 5]) -> UnitaryMatrix5 {
        let mut m = self.0;
        for (i, &qi) in q.iter().enumerate() {
            let w = z.powi(qi as i32);
            for j in 0..5 {
                m[(i, j)] *= w;
            }
        }
        UnitaryMatrix5(m)
    }

    /// Row-major `[[re, im], ...]` with 17 significant digits.
    pub fn serialize(&self) -> String {
        let mut rows = vec![];
        for i in 0..5 {
            let row: Vec<String> = (0..5)
                .map(|j| {
                    let z = self.0[(i, j)];
                    format!("[{:.16e},{:.16e}]", z.re, z.im)
                })
                .collect();
            rows.push(format!("[{}]", row.join(",")));
        }
        format!("[{}]", rows.join(","))
    }

    /// Approximately Haar-distributed sample: complex Gaussian matrix,
    /// QR with the phases of `R` moved into `Q`, determinant fixed on the
    /// first column.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> UnitaryMatrix5 {
        let z = Mat5::from_fn(|_, _| gaussian(rng));
        let qr = z.qr();
        let (mut q, r) = (qr.q(), qr.r());
        for j in 0..5 {
            let d = r[(j, j)];
            let phase = if d.norm() > 0.0 {
                d / d.norm()
            } else {
                C64::new(1.0, 0.0)
            };
            for i in 0..5 {
                q[(i, j)] *= phase;
            }
        }
        let det = q.determinant();
        let fix = (det / det.norm()).conj();
        for i in 0..5 {
            q[(i, 0)] *= fix;
        }
        UnitaryMatrix5::new_unchecked(q)
    }
}

/// `max(|M^H M - I|_max, |det M - 1|)`.
pub fn group_residual(m: &Mat5) -> f64 {
    let g = m.adjoint() * m - Mat5::identity();
    let unitary = g.iter().map(|z| z.norm()).fold(0.0, f64::max);
    unitary.max((m.determinant() - C64::new(1.0, 0.0)).norm())
}

/// Standard complex normal: real and imaginary parts with variance 1/2.
pub(crate) fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Bilinear product `sum v_i w_i`, no conjugation.
pub fn dot(v: &[C64; 4], w: &[C64; 4]) -> C64 {
    v.iter().zip(w).map(|(a, b)| a * b).sum()
}

pub fn norm_sqr(v: &[C64; 4]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

pub fn conj4(v: &[C64; 4]) -> [C64; 4] {
    v.map(|z| z.conj())
}
