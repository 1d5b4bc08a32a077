//! Exact-arithmetic verification of quaternion-order lattices, surface-cover
//! homology, branched-cover towers, and the geometry of nine-nodal cubic
//! threefolds.
//!
//! Everything is computed over Q, Q(alpha), or a prime field; lattices are
//! compared through canonical Hermite forms and homology is read off Smith
//! normal forms. The `report` module bundles the individual facts into
//! named, reproducible verification suites; `docs/checks.md` indexes the
//! check ids.

pub mod matrix;
pub mod quaternion;
pub mod lattice;
pub mod hermitian;
pub mod homology;
pub mod tower;
pub mod cubic;
pub mod report;
