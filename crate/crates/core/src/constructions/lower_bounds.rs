use num_rational::Rational64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::extremal::{extremal_set, ExtremalKind};
use crate::error::{domain, Result};
use crate::heisenberg::Heisenberg;
use crate::maximal::{heis_max_counts, q_power, refined_max_counts, ExtendedExponent};

/// Which maximal operator a lower bound targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Heisenberg,
    Refined,
}

/// An exact integer certificate `sum_omega M(omega)^v >= q^{a v + b}`
/// (or `max_omega M(omega) >= q^a` when `v = inf`), with `|S| <= c q^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactCertificate {
    pub a: i64,
    pub b: i64,
    pub support: u64,
    pub support_factor: u64,
    pub support_power: i64,
    /// `sum M^v`, or `max M` for `v = inf`.
    pub output: u128,
    /// `q^{a v + b}`, or `q^a` for `v = inf`.
    pub threshold: u128,
    pub holds: bool,
}

/// `||M 1_S||_v / ||1_S||_u` for an extremal set, with the exponent term it
/// forces.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LowerBound {
    pub kind: ExtremalKind,
    pub target: Target,
    pub n: usize,
    pub q: u32,
    pub u: ExtendedExponent,
    pub v: ExtendedExponent,
    pub ratio: f64,
    pub term: Rational64,
    /// `c^{-1/u} q^{term}`, which `ratio` is guaranteed to exceed.
    pub floor: f64,
    /// Present when `v` is an integer or infinite.
    pub exact: Option<ExactCertificate>,
}

impl LowerBound {
    /// Whether the ratio reaches the floor (exactly, when a certificate exists).
    pub fn certifies(&self, tol: f64) -> bool {
        match &self.exact {
            Some(c) => c.holds && self.support_ok(c),
            None => self.ratio >= self.floor * (1.0 - tol),
        }
    }

    fn support_ok(&self, c: &ExactCertificate) -> bool {
        (c.support as u128)
            <= c.support_factor as u128 * (self.q as u128).pow(c.support_power as u32)
    }
}

/// `(a, b, c, k)` such that `||M 1_S||_v^v >= q^{a v + b}` and `|S| <= c q^k`.
fn plan(kind: ExtremalKind, target: Target, n: usize) -> Result<(i64, i64, u64, i64)> {
    let n = n as i64;
    Ok(match (kind, target) {
        (ExtremalKind::PointMass, Target::Heisenberg) => (0, 2 * n - 1, 1, 0),
        (ExtremalKind::PointMass, Target::Refined) => (0, 1, 1, 0),
        (ExtremalKind::SingleLine, _) => (1, 0, 1, 1),
        (ExtremalKind::Bush, Target::Heisenberg) => (1, 2 * n - 1, 1, 2 * n),
        (ExtremalKind::TwoLinesBlocking, Target::Refined) => (0, 2, 2, 1),
        (ExtremalKind::Constant, Target::Refined) => (1, 2, 1, 3),
        _ => {
            return domain(format!(
                "no lower bound for {} against the {target:?} operator",
                kind.name()
            ))
        }
    })
}

fn pow_u128(base: u128, e: u32) -> Option<u128> {
    base.checked_pow(e)
}

/// Evaluates the ratio of an extremal test function and certifies the
/// exponent term `a + b/v - k/u`.
pub fn lower_bound_ratio(
    h: &Heisenberg,
    kind: ExtremalKind,
    target: Target,
    u: ExtendedExponent,
    v: ExtendedExponent,
) -> Result<LowerBound> {
    if target == Target::Refined {
        h.require_rank_one()?;
    }
    let (a, b, c, k) = plan(kind, target, h.n())?;
    let set = extremal_set(h, kind)?;
    let support = set.indices();
    let counts = match target {
        Target::Heisenberg => heis_max_counts(h, &support).values,
        Target::Refined => refined_max_counts(h, &support).values,
    };
    let q = h.q();
    let term = Rational64::from_integer(a) + Rational64::from_integer(b) * v.recip()
        - Rational64::from_integer(k) * u.recip();

    let as_f64: Vec<f64> = counts.iter().map(|&m| m as f64).collect();
    let out_norm = crate::maximal::lp_norm(&as_f64, v);
    let in_norm = (support.len() as f64).powf(u.recip().to_f64().unwrap_or(0.0));
    let ratio = out_norm / in_norm;
    let floor = (c as f64).powf(-u.recip().to_f64().unwrap_or(0.0)) * q_power(q, term);

    let exact =
        exact_certificate(&counts, q, v, a, b).map(|(output, threshold)| ExactCertificate {
            a,
            b,
            support: support.len() as u64,
            support_factor: c,
            support_power: k,
            output,
            threshold,
            holds: output >= threshold,
        });
    Ok(LowerBound {
        kind,
        target,
        n: h.n(),
        q,
        u,
        v,
        ratio,
        term,
        floor,
        exact,
    })
}

fn exact_certificate(
    counts: &[u64],
    q: u32,
    v: ExtendedExponent,
    a: i64,
    b: i64,
) -> Option<(u128, u128)> {
    let q = q as u128;
    if v.is_infinite() {
        let max = *counts.iter().max()? as u128;
        return Some((max, pow_u128(q, a as u32)?));
    }
    let e = v.as_integer()?;
    let mut sum: u128 = 0;
    for &m in counts {
        sum = sum.checked_add(pow_u128(m as u128, e)?)?;
    }
    Some((sum, pow_u128(q, (a * e as i64 + b) as u32)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::maximal::INF;
    use ExtendedExponent as E;

    #[test]
    fn point_mass_refined_l2() {
        let f = Field::new(5).unwrap();
        let h = Heisenberg::new(&f, 1).unwrap();
        let lb = lower_bound_ratio(
            &h,
            ExtremalKind::PointMass,
            Target::Refined,
            E::int(2),
            E::int(2),
        )
        .unwrap();
        assert!((lb.ratio - 6f64.sqrt()).abs() < 1e-12);
        assert_eq!(lb.term, Rational64::new(1, 2));
        assert!(lb.certifies(0.0));
    }

    #[test]
    fn constant_refined_l3() {
        let f = Field::new(7).unwrap();
        let h = Heisenberg::new(&f, 1).unwrap();
        let lb = lower_bound_ratio(
            &h,
            ExtremalKind::Constant,
            Target::Refined,
            E::int(3),
            E::int(3),
        )
        .unwrap();
        assert!((lb.ratio - 56f64.cbrt()).abs() < 1e-9);
        assert_eq!(lb.term, Rational64::new(2, 3));
        assert!(lb.certifies(0.0));
    }

    #[test]
    fn bush_inf_to_one() {
        let f = Field::new(5).unwrap();
        let h = Heisenberg::new(&f, 1).unwrap();
        let lb =
            lower_bound_ratio(&h, ExtremalKind::Bush, Target::Heisenberg, INF, E::int(1)).unwrap();
        assert!(lb.ratio >= 25.0);
        assert_eq!(lb.term, Rational64::from_integer(2));
        assert!(lb.certifies(0.0));
    }

    #[test]
    fn invalid_pairs_are_rejected() {
        let f = Field::new(3).unwrap();
        let h = Heisenberg::new(&f, 1).unwrap();
        assert!(lower_bound_ratio(
            &h,
            ExtremalKind::Constant,
            Target::Heisenberg,
            E::int(2),
            E::int(2)
        )
        .is_err());
    }
}
