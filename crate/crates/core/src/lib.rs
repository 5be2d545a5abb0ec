//! Exact, brute-force computation of horizontal Kakeya maximal operators on
//! the finite Heisenberg groups `H_n(F_q)`.
//!
//! The crate is organized bottom-up:
//!
//! - [`field`]: table-driven arithmetic in `F_q` and its additive character.
//! - [`geometry`]: `F_q^d`, its affine lines and the projective space of directions.
//! - [`heisenberg`]: the group, horizontal lines, t-slopes and refined directions.
//! - [`maximal`]: grid functions, maximal operators, norms, linearizations and bounds.
//! - [`fourier`]: the Fourier transform in the central variable and its estimates.
//! - [`constructions`]: extremal test functions, Kakeya-set predicates and reports.
//! - [`harness`]: verification suites, sweeps and JSON/CSV input and output.

pub mod constructions;
pub mod error;
pub mod field;
pub mod fourier;
pub mod geometry;
pub mod harness;
pub mod heisenberg;
pub mod maximal;

pub use error::{Error, Result};
pub use field::{Field, FieldElement};
pub use heisenberg::{HPoint, Heisenberg, HorizontalLine, ProjectiveDirection, RefinedDirection};
