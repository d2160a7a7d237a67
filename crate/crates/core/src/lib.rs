//! Totally positive unary forms over Galois number fields.
//!
//! A totally positive element a of K_R = R^r x C^s defines the positive
//! quadratic form x -> Tr(a x x^*); units act on these forms through
//! a -> a v v^*.  This crate implements reduction of such forms by the
//! conjugates of a Pisot unit, the log-unit lattice machinery behind it
//! (regulators, exact l-infinity CVP and successive minima, covering-radius
//! bounds and brute-force estimates), the closed-form facet-count and
//! height bounds, and the rank-2 special case for totally real cubics.
//! Everything computable is paired with a desk-scale enumeration oracle in
//! the test suite.
//!
//! Field data is ingested from JSON field files (see [`field_file`]); exact
//! generators for real quadratic fields come from the continued-fraction
//! Pell solver in [`pell`].  The `unary-forms` binary exposes the whole
//! surface as CLI subcommands that print one JSON object each.

// Negated float comparisons are deliberate throughout: `!(x > 0.0)` also
// rejects NaN, which `x <= 0.0` would let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cubic;
pub mod error;
pub mod field;
pub mod field_file;
pub mod lattice;
mod linalg;
pub mod pell;
pub mod reduction;

pub use error::{Error, Result};
pub use field::{
    FieldData, IntegerElement, KREElement, Signature, TotallyPositiveElement,
};
pub use lattice::{LogUnitLattice, UnitExponentVector};
pub use reduction::{IntegerMinimumResult, ReductionCertificate};
