//! Empirical growth rates: the ratio `||M F||_v / ||F||_u` of an extremal
//! test function across several `q`, and the least-squares slope of
//! `log ratio` against `log q`.

use num_rational::Rational64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::constructions::{lower_bound_ratio, ExtremalKind, Target};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::heisenberg::Heisenberg;
use crate::maximal::ExtendedExponent;

/// One test function, operator and exponent pair to sweep.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepPlan {
    pub kind: ExtremalKind,
    pub target: Target,
    pub n: usize,
    pub u: ExtendedExponent,
    pub v: ExtendedExponent,
    /// Fit over [`LARGE_FIT_QS`] instead of the configured list, for sparse
    /// test functions whose lower-order terms distort small-`q` slopes.
    pub large_q: bool,
}

/// Field sizes used by plans with `large_q` set.
pub const LARGE_FIT_QS: [u32; 4] = [27, 49, 81, 121];

impl SweepPlan {
    pub fn label(&self) -> String {
        let op = match self.target {
            Target::Heisenberg => format!("heis-n{}", self.n),
            Target::Refined => "refined".to_string(),
        };
        format!("{op}:{}", self.kind.name())
    }

    /// The field sizes this plan is fitted over, given the configured list.
    pub fn fit_qs(&self, configured: &[u32]) -> Vec<u32> {
        if self.large_q {
            LARGE_FIT_QS.to_vec()
        } else {
            configured.to_vec()
        }
    }
}

/// Ratios and fitted slope for one plan.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub plan: SweepPlan,
    pub qs: Vec<u32>,
    pub ratios: Vec<f64>,
    pub slope: f64,
    pub term: Rational64,
}

impl SweepResult {
    pub fn deviation(&self) -> f64 {
        (self.slope - self.term.to_f64().unwrap_or(f64::NAN)).abs()
    }
}

/// Least-squares slope of `ys` against `xs`.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// One plan per exponent term, at an `(u, v)` where that term is the
/// largest. Sparse test functions with slowly decaying corrections are
/// fitted over larger fields.
pub fn default_plans() -> Vec<SweepPlan> {
    use ExtremalKind::*;
    use Target::*;
    let e = ExtendedExponent::int;
    let inf = ExtendedExponent::Infinite;
    let p = |kind, target, n, u, v| SweepPlan {
        kind,
        target,
        n,
        u,
        v,
        large_q: false,
    };
    let large = |plan: SweepPlan| SweepPlan {
        large_q: true,
        ..plan
    };
    vec![
        p(PointMass, Refined, 1, e(2), e(2)),
        p(SingleLine, Refined, 1, e(4), inf),
        large(p(
            TwoLinesBlocking,
            Refined,
            1,
            ExtendedExponent::ratio(3, 2),
            e(1),
        )),
        p(Constant, Refined, 1, e(3), e(3)),
        p(PointMass, Heisenberg, 1, e(2), e(2)),
        p(SingleLine, Heisenberg, 1, e(4), inf),
        p(Bush, Heisenberg, 1, e(2), e(2)),
        large(p(Bush, Heisenberg, 1, inf, e(1))),
        p(PointMass, Heisenberg, 2, e(1), e(6)),
        p(SingleLine, Heisenberg, 2, e(8), inf),
        p(Bush, Heisenberg, 2, inf, e(8)),
    ]
}

/// Evaluates `plan` at every `q` and fits the slope. Needs at least three
/// values of `q`.
pub fn sweep_plan(plan: &SweepPlan, qs: &[u32], modulus: Option<&[u32]>) -> Result<SweepResult> {
    if qs.len() < 3 {
        return Err(Error::Precondition(format!(
            "a slope fit needs at least 3 values of q, got {}",
            qs.len()
        )));
    }
    let mut ratios = Vec::with_capacity(qs.len());
    let mut term = Rational64::from_integer(0);
    for &q in qs {
        let field = field_for(q, modulus)?;
        let h = Heisenberg::new(&field, plan.n)?;
        let lb = lower_bound_ratio(&h, plan.kind, plan.target, plan.u, plan.v)?;
        ratios.push(lb.ratio);
        term = lb.term;
    }
    let xs: Vec<f64> = qs.iter().map(|&q| (q as f64).ln()).collect();
    let ys: Vec<f64> = ratios.iter().map(|r| r.ln()).collect();
    Ok(SweepResult {
        plan: *plan,
        qs: qs.to_vec(),
        ratios,
        slope: fit_slope(&xs, &ys),
        term,
    })
}

/// The field of order `q`, with an explicit modulus when one is given.
pub(crate) fn field_for(q: u32, modulus: Option<&[u32]>) -> Result<Field> {
    Field::from_spec(q, modulus)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_a_line() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys: Vec<f64> = xs.iter().map(|x| 0.5 * x + 1.0).collect();
        assert!((fit_slope(&xs, &ys) - 0.5).abs() < 1e-12);
    }
}
