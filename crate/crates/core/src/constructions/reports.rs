//! Size bounds for horizontal Kakeya-type sets derived from the refined
//! maximal estimates, with the constant used stated explicitly.

use serde::{Deserialize, Serialize};

use super::PointSet;
use crate::error::{domain, Error, Result};
use crate::heisenberg::Heisenberg;
use crate::maximal::bounds::sharp_refined_constant;
use crate::maximal::{
    exponent_ard, q_power, refined_max_counts, ExtendedExponent, VerifyReport, DEFAULT_TOL,
};

/// A [`VerifyReport`] together with the maximal-estimate constant `C` it
/// was derived from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SizeBoundReport {
    pub report: VerifyReport,
    pub constant: f64,
}

fn refined_counts(h: &Heisenberg, set: &PointSet) -> Result<Vec<u64>> {
    h.require_rank_one()?;
    if set.field() != h.field() || set.ambient_size() != h.num_points() {
        return domain("point set does not live in this Heisenberg group");
    }
    Ok(refined_max_counts(h, &set.indices()).values)
}

fn constant_at(u: ExtendedExponent, v: ExtendedExponent) -> Result<f64> {
    sharp_refined_constant(u, v).ok_or_else(|| {
        Error::Unsupported(format!(
            "no refined bound with sharp exponent at ({u}, {v})"
        ))
    })
}

/// Checks `|E| >= C^{-u} m^u |Omega|^{u/v} q^{-u A(u, v)}`, where `C` is the
/// constant of the refined maximal estimate at `(u, v)` and every `omega` in
/// `Omega` has a line `L` with `|E cap L| >= m` (verified first). At
/// `(2, 2)` this reads `|E| >= m^2 |Omega| / (25 q)`.
///
/// The report's `lhs` is the lower bound and `rhs` is `|E|`.
pub fn kakeya_bound_report(
    h: &Heisenberg,
    set: &PointSet,
    omega: &[usize],
    m: u64,
    u: ExtendedExponent,
    v: ExtendedExponent,
) -> Result<SizeBoundReport> {
    if u.is_infinite() {
        return domain("the size bound needs finite u");
    }
    let counts = refined_counts(h, set)?;
    for &w in omega {
        match counts.get(w) {
            None => return domain(format!("no refined direction {w}")),
            Some(&c) if c < m => {
                return Err(Error::Precondition(format!(
                    "direction {w} has no line meeting E in {m} points (best {c})"
                )))
            }
            _ => {}
        }
    }
    let c = constant_at(u, v)?;
    let uf = u.to_f64();
    let omega_term = if v.is_infinite() {
        1.0
    } else {
        (omega.len() as f64).powf(uf / v.to_f64())
    };
    let q = h.q();
    let bound =
        c.powf(-uf) * (m as f64).powf(uf) * omega_term / q_power(q, exponent_ard(u, v)).powf(uf);
    Ok(SizeBoundReport {
        report: VerifyReport::compare("kakeya-size", q, u, v, bound, set.len() as f64, DEFAULT_TOL),
        constant: c,
    })
}

/// Checks `sum_omega M_E(omega)^s <= C^s q |E|^{s-1}` for `s >= 2`, with `C`
/// the refined constant at `(s', s)`.
pub fn moment_report(
    h: &Heisenberg,
    set: &PointSet,
    s: ExtendedExponent,
) -> Result<SizeBoundReport> {
    if s.is_infinite() || s < ExtendedExponent::int(2) {
        return domain(format!("moments need 2 <= s < inf, got {s}"));
    }
    let counts = refined_counts(h, set)?;
    let sf = s.to_f64();
    let c = constant_at(s.conjugate(), s)?;
    let lhs: f64 = counts.iter().map(|&m| (m as f64).powf(sf)).sum();
    let rhs = c.powf(sf) * h.q() as f64 * (set.len() as f64).powf(sf - 1.0);
    Ok(SizeBoundReport {
        report: VerifyReport::compare("moment", h.q(), s.conjugate(), s, lhs, rhs, DEFAULT_TOL),
        constant: c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{extremal_set, ExtremalKind};
    use crate::field::Field;
    use crate::maximal::Domain;
    use ExtendedExponent as E;

    #[test]
    fn full_group_l2() {
        let f = Field::new(5).unwrap();
        let h = Heisenberg::new(&f, 1).unwrap();
        let all = PointSet::full(&f, Domain::Heisenberg { n: 1 });
        let omega: Vec<usize> = (0..30).collect();
        let r = kakeya_bound_report(&h, &all, &omega, 5, E::int(2), E::int(2)).unwrap();
        assert!((r.constant - 5.0).abs() < 1e-12);
        assert!((r.report.lhs - 25.0 * 30.0 / (25.0 * 5.0)).abs() < 1e-9);
        assert_eq!(r.report.rhs, 125.0);
        assert!(r.report.holds);
        assert!(kakeya_bound_report(&h, &all, &omega, 6, E::int(2), E::int(2)).is_err());
    }

    #[test]
    fn moments_of_structured_sets() {
        let f = Field::new(5).unwrap();
        let h = Heisenberg::new(&f, 1).unwrap();
        let all = PointSet::full(&f, Domain::Heisenberg { n: 1 });
        let r = moment_report(&h, &all, E::int(2)).unwrap();
        assert_eq!(r.report.lhs, 30.0 * 25.0);
        assert!((r.constant.powi(2) - 25.0).abs() < 1e-9);
        assert!(r.report.holds);
        let line = extremal_set(&h, ExtremalKind::SingleLine).unwrap();
        assert!(moment_report(&h, &line, E::int(3)).unwrap().report.holds);
        assert!(moment_report(&h, &line, E::ratio(3, 2)).is_err());
    }
}
