//! Grid functions, maximal operators, exponents, linearizations and bounds.

pub mod bounds;
pub mod exponent;
mod grid;
mod linearize;
mod norms;
mod operators;

pub use bounds::{
    verify_bound, verify_bound_tol, BoundSpec, Operator, OperatorKind, VerifyReport, DEFAULT_TOL,
};
pub use exponent::{
    diagonal_exponent, exponent_a, exponent_a_terms, exponent_ard, exponent_ard_terms,
    ExtendedExponent, INF,
};
pub use grid::{Domain, GridFunction};
pub use linearize::{
    apply_adjoint, apply_linearized, l2_operator_norm, linearize, ttstar_spectrum, Chooser,
    FamilyKind, Geometry, LineFamily,
};
pub use norms::{lp_norm, q_power};
pub use operators::{
    affine_max_counts, affine_max_op, affine_max_op_argmax, heis_max_counts, heis_max_op,
    heis_max_op_argmax, project_aggregate, refined_max_counts, refined_max_op,
    refined_max_op_argmax, MaxValues,
};
