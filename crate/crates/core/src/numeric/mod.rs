//! Floating-point checks of the zero-curvature-plane criterion on concrete
//! points of `SU(5)`.
//!
//! A point `[A]` carries a zero-curvature plane iff
//! `sum q_l = sum |A_l5|^2 q_l`, or `g_A(h) = 0` for some `h` in `Sp(2)`,
//! where `g_A(h) = sum (|(Ah)_l2|^2 + |(Ah)_l4|^2) q_l`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub mod matrix;
pub mod open_set;
pub mod sp2;
pub mod zero_plane;

pub use matrix::{UnitaryMatrix5, C64, TAU_GRP, TAU_ZERO};
pub use open_set::{
    build_a0, in_v, open_set_ordering, verify_open_set, verify_open_set_with_tol, OpenSetReport,
    VMembership,
};
pub use sp2::{embed_sp2, sp2_from_column, Sp2Element};
pub use zero_plane::{
    analytic_minus_point, eq1_residual, find_sign_points, find_zero_plane, g_eval, kernel_point,
    maximize_g, minimize_g, verify_zero_planes, SignPoints, ZeroPlaneBatch, ZeroPlaneReport,
};

/// Generator for stream `stream` of `seed`; distinct streams are independent.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
