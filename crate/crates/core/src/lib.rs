//! Exact classification and numerical verification for the 13-dimensional
//! Bazaikin spaces `SU(5) // Sp(2) x S^1`.
//!
//! The exact side works with integer tuples: freeness of the action,
//! Florit–Ziller invariants, curvature type of the natural metric, canonical
//! forms for diffeomorphic tuples, and a census of all classes below a bound
//! on the first Pontryagin number. The numeric side checks the
//! zero-curvature-plane criterion on concrete points of `SU(5)`.

pub mod catalog;
pub mod curvature;
pub mod equivalence;
pub mod error;
pub mod numeric;
pub mod parallel;
pub mod topology;
pub mod tuple;

#[cfg(test)]
mod testutil;

pub use catalog::{
    enumerate_classes, export_records, find_collisions, load_records, summarize_counts,
    CatalogRecord, CensusSummary, CollisionKey, Format,
};
pub use curvature::{classify, same_sign_witness, CurvatureClass};
pub use equivalence::{
    are_diffeomorphic, best_curvature, canonical_class, representatives, CanonicalClass,
};
pub use error::{Error, Result};
pub use numeric::{
    build_a0, embed_sp2, find_zero_plane, g_eval, minimize_g, sp2_from_column, verify_open_set,
    Sp2Element, UnitaryMatrix5, ZeroPlaneReport,
};
pub use parallel::with_threads;
pub use topology::{elementary_symmetric, invariants, mod_inverse, TopInvariants};
pub use tuple::{FiveTuple, SixTuple};
