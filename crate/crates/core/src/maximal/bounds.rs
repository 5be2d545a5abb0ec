//! Named inequalities `||Op F||_v <= C q^alpha ||F||_u` and their checks.

use num_rational::Rational64;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::exponent::{diagonal_exponent, ExtendedExponent, INF};
use super::grid::GridFunction;
use super::linearize::{apply_linearized, FamilyKind, LineFamily};
use super::norms::{lp_norm, q_power};
use super::operators::{affine_max_op, heis_max_op, refined_max_op};
use crate::error::{domain, Result};
use crate::geometry::AffineSpace;
use crate::heisenberg::Heisenberg;

/// Relative tolerance for floating-point comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Which operator a bound is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OperatorKind {
    /// The planar Kakeya maximal operator `M_2` on `F_q^2`.
    PlanarMax,
    /// `M_{H_n}` on `P^{2n-1}`.
    HeisMax { n: usize },
    /// The refined operator `M^rd` on `D_1`.
    RefinedMax,
    /// Any refined linearization `T`.
    Linearized,
}

/// An operator together with the context needed to evaluate it.
#[derive(Clone, Copy, Debug)]
pub enum Operator<'a> {
    Planar(&'a AffineSpace),
    Heis(&'a Heisenberg),
    Refined(&'a Heisenberg),
    Linear(&'a LineFamily),
}

impl Operator<'_> {
    pub fn kind(&self) -> OperatorKind {
        match self {
            Operator::Planar(_) => OperatorKind::PlanarMax,
            Operator::Heis(h) => OperatorKind::HeisMax { n: h.n() },
            Operator::Refined(_) => OperatorKind::RefinedMax,
            Operator::Linear(_) => OperatorKind::Linearized,
        }
    }

    /// Pointwise magnitudes of the output.
    pub fn evaluate(&self, f: &GridFunction) -> Result<Vec<f64>> {
        match self {
            Operator::Planar(s) => affine_max_op(s, f),
            Operator::Heis(h) => heis_max_op(h, f),
            Operator::Refined(h) => {
                h.require_rank_one()?;
                refined_max_op(h, f)
            }
            Operator::Linear(t) => Ok(apply_linearized(t, f)?.iter().map(|z| z.norm()).collect()),
        }
    }
}

/// A named inequality `||Op F||_v <= C q^alpha ||F||_u` at a fixed `q`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundSpec {
    pub name: String,
    pub operator: OperatorKind,
    pub constant: f64,
    pub exponent: Rational64,
    pub u: ExtendedExponent,
    pub v: ExtendedExponent,
}

/// The outcome of checking one inequality on one input.
///
/// `ratio = lhs / rhs`, so the inequality holds when the ratio is at most 1
/// (up to tolerance). For bounds of the form `C q^alpha ||F||_u`,
/// `observed_constant` is the smallest `C` that would still hold.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub bound: String,
    pub q: u32,
    pub u: ExtendedExponent,
    pub v: ExtendedExponent,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub holds: bool,
    pub observed_constant: f64,
}

impl VerifyReport {
    /// A report for `lhs <= rhs` with relative tolerance `tol`.
    pub fn compare(
        bound: impl Into<String>,
        q: u32,
        u: ExtendedExponent,
        v: ExtendedExponent,
        lhs: f64,
        rhs: f64,
        tol: f64,
    ) -> Self {
        let ratio = if rhs > 0.0 {
            lhs / rhs
        } else if lhs > 0.0 {
            f64::INFINITY
        } else {
            0.0
        };
        VerifyReport {
            bound: bound.into(),
            q,
            u,
            v,
            lhs,
            rhs,
            ratio,
            holds: lhs <= rhs * (1.0 + tol) + f64::MIN_POSITIVE,
            observed_constant: ratio,
        }
    }
}

impl BoundSpec {
    pub fn new(
        name: &str,
        operator: OperatorKind,
        constant: f64,
        exponent: Rational64,
        u: ExtendedExponent,
        v: ExtendedExponent,
    ) -> Self {
        BoundSpec {
            name: name.to_string(),
            operator,
            constant,
            exponent,
            u,
            v,
        }
    }

    /// Compares precomputed output values against the bound.
    pub fn check_values(&self, q: u32, output: &[f64], input_norm: f64, tol: f64) -> VerifyReport {
        let lhs = lp_norm(output, self.v);
        let scale = q_power(q, self.exponent) * input_norm;
        let mut r = VerifyReport::compare(
            &self.name,
            q,
            self.u,
            self.v,
            lhs,
            self.constant * scale,
            tol,
        );
        r.observed_constant = if scale > 0.0 { lhs / scale } else { 0.0 };
        r
    }
}

/// Evaluates `op` on `f` and checks `spec`.
pub fn verify_bound(spec: &BoundSpec, op: Operator<'_>, f: &GridFunction) -> Result<VerifyReport> {
    verify_bound_tol(spec, op, f, DEFAULT_TOL)
}

pub fn verify_bound_tol(
    spec: &BoundSpec,
    op: Operator<'_>,
    f: &GridFunction,
    tol: f64,
) -> Result<VerifyReport> {
    if op.kind() != spec.operator {
        return domain(format!(
            "bound {} is about {:?}, not {:?}",
            spec.name,
            spec.operator,
            op.kind()
        ));
    }
    if let Operator::Linear(t) = op {
        if t.kind != FamilyKind::Refined {
            return domain("linearization bounds are stated for refined families");
        }
    }
    let out = op.evaluate(f)?;
    Ok(spec.check_values(f.q(), &out, f.norm(spec.u), tol))
}

fn r(a: i64, b: i64) -> Rational64 {
    Rational64::new(a, b)
}

fn pow_rat(base: f64, e: Rational64) -> f64 {
    base.powf(*e.numer() as f64 / *e.denom() as f64)
}

fn two() -> ExtendedExponent {
    ExtendedExponent::int(2)
}

/// Bounds for the planar operator `M_2` that apply at `(u, v)`.
pub fn planar_bounds(q: u32, u: ExtendedExponent, v: ExtendedExponent) -> Vec<BoundSpec> {
    let op = OperatorKind::PlanarMax;
    let one = ExtendedExponent::int(1);
    let mut out = Vec::new();
    if u == one && v == one {
        out.push(BoundSpec::new(
            "planar-l1",
            op,
            q as f64 + 1.0,
            r(0, 1),
            u,
            v,
        ));
    }
    if u == two() && v == two() {
        out.push(BoundSpec::new("planar-l2", op, 2f64.sqrt(), r(1, 2), u, v));
    }
    if u == INF && v == INF {
        out.push(BoundSpec::new("planar-linf", op, 1.0, r(1, 1), u, v));
    }
    if u == v {
        out.push(BoundSpec::new(
            "planar-diagonal",
            op,
            2f64.sqrt(),
            diagonal_exponent(u),
            u,
            v,
        ));
    }
    out
}

/// Bounds for `M_{H_1}` that apply at `(u, v)`.
pub fn heis_bounds(u: ExtendedExponent, v: ExtendedExponent) -> Vec<BoundSpec> {
    let op = OperatorKind::HeisMax { n: 1 };
    let one = Rational64::one();
    let (iu, iv) = (u.recip(), v.recip());
    let s2 = 2f64.sqrt();
    let mut out = Vec::new();
    if u == v {
        out.push(BoundSpec::new(
            "heis-diagonal",
            op,
            s2,
            diagonal_exponent(u),
            u,
            v,
        ));
    }
    if u >= two() && v <= u {
        out.push(BoundSpec::new(
            "heis-upper-left",
            op,
            2.0 * s2,
            one + iv - r(2, 1) * iu,
            u,
            v,
        ));
    }
    if u >= two() && u <= v {
        out.push(BoundSpec::new("heis-large-u", op, s2, one - iu, u, v));
    }
    if u <= two() && v >= u.conjugate() {
        out.push(BoundSpec::new("heis-dual-range", op, s2, one - iu, u, v));
    }
    if v <= u && u <= two() {
        out.push(BoundSpec::new("heis-small-v", op, 2.0, iv, u, v));
    }
    if u <= two() && u <= v && v <= u.conjugate() {
        out.push(BoundSpec::new("heis-mid-range", op, 2.0 * s2, iv, u, v));
    }
    out
}

/// The constant of the refined diagonal bound: `2^{1-theta} 5^theta` with
/// `theta = 2(1 - 1/u)` for `u <= 2`, and `5^{2/u}` for `u >= 2`.
pub fn refined_diagonal_constant(u: ExtendedExponent) -> f64 {
    let iu = u.recip();
    if u <= two() {
        let theta = r(2, 1) * (Rational64::one() - iu);
        pow_rat(2.0, Rational64::one() - theta) * pow_rat(5.0, theta)
    } else {
        pow_rat(5.0, r(2, 1) * iu)
    }
}

/// Bounds for the refined operator `M^rd` that apply at `(u, v)`.
pub fn refined_bounds(u: ExtendedExponent, v: ExtendedExponent) -> Vec<BoundSpec> {
    let op = OperatorKind::RefinedMax;
    let one = Rational64::one();
    let (iu, iv) = (u.recip(), v.recip());
    let cu = refined_diagonal_constant(u);
    let mut out = Vec::new();
    if u == two() && v == two() {
        out.push(BoundSpec::new("rd-l2", op, 5.0, r(1, 2), u, v));
    }
    if u == v {
        out.push(BoundSpec::new(
            "rd-diagonal",
            op,
            cu,
            diagonal_exponent(u),
            u,
            v,
        ));
    }
    if u <= two() {
        let five_part = pow_rat(5.0, r(2, 1) * (one - iu));
        if v <= u {
            let c = cu * pow_rat(2.0, iv - iu);
            out.push(BoundSpec::new(
                "rd-small-u-low-v",
                op,
                c,
                r(2, 1) * iv - iu,
                u,
                v,
            ));
        }
        if u <= v && v <= u.conjugate() {
            let c = pow_rat(2.0, iv - one + iu) * five_part;
            out.push(BoundSpec::new("rd-small-u-mid-v", op, c, iv, u, v));
        }
        if v >= u.conjugate() {
            out.push(BoundSpec::new(
                "rd-small-u-high-v",
                op,
                five_part,
                one - iu,
                u,
                v,
            ));
        }
    }
    if u >= two() {
        let five_part = pow_rat(5.0, r(2, 1) * iu);
        if v >= u {
            out.push(BoundSpec::new(
                "rd-large-u-high-v",
                op,
                five_part,
                one - iu,
                u,
                v,
            ));
        }
        if v <= u {
            let c = pow_rat(2.0, iv - iu) * five_part;
            out.push(BoundSpec::new(
                "rd-large-u-low-v",
                op,
                c,
                one + r(2, 1) * iv - r(3, 1) * iu,
                u,
                v,
            ));
        }
    }
    out
}

/// The endpoint bounds valid for every refined linearization.
pub fn linearization_endpoint_bounds(q: u32) -> Vec<BoundSpec> {
    let op = OperatorKind::Linearized;
    let one = ExtendedExponent::int(1);
    vec![
        BoundSpec::new("rd-endpoint-1-inf", op, 1.0, r(0, 1), one, INF),
        BoundSpec::new("rd-endpoint-inf-inf", op, 1.0, r(1, 1), INF, INF),
        BoundSpec::new("rd-endpoint-1-1", op, q as f64 + 1.0, r(0, 1), one, one),
    ]
}

/// Trivial endpoint bounds for `M_{H_n}`, any `n`.
pub fn heis_rank_endpoint_bounds(q: u32, n: usize) -> Vec<BoundSpec> {
    let op = OperatorKind::HeisMax { n };
    let one = ExtendedExponent::int(1);
    let qq = q as f64;
    let directions = (qq.powi(2 * n as i32) - 1.0) / (qq - 1.0);
    vec![
        BoundSpec::new("hn-endpoint-1-inf", op, 1.0, r(0, 1), one, INF),
        BoundSpec::new("hn-endpoint-inf-inf", op, 1.0, r(1, 1), INF, INF),
        BoundSpec::new("hn-endpoint-1-1", op, directions, r(0, 1), one, one),
    ]
}

/// The smallest constant among the refined bounds at `(u, v)` whose
/// exponent is the sharp exponent `A^rd(u, v)`.
pub fn sharp_refined_constant(u: ExtendedExponent, v: ExtendedExponent) -> Option<f64> {
    let target = super::exponent::exponent_ard(u, v);
    refined_bounds(u, v)
        .into_iter()
        .filter(|b| b.exponent == target)
        .map(|b| b.constant)
        .min_by(|a, b| a.total_cmp(b))
}
