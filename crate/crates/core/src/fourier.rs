//! Fourier analysis in the central variable of `H_1(F_q)`.
//!
//! For `f` on `H_1` let `f^(x, y; xi) = sum_t f(x, y, t) chi(-xi t)`. A refined
//! linearization `T` then splits as `T = sum_xi T_xi` with
//!
//! ```text
//! (T_xi f)(omega) = (1/q) sum_{(x, y, t) in L_omega} f^(x, y; xi) chi(xi t).
//! ```
//!
//! For `xi != 0` each component factors through the tables `U_xi`, which
//! satisfy the counting estimates checked by [`key_counting_check`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::field::{Field, FieldElement};
use crate::heisenberg::{Chart, Heisenberg};
use crate::maximal::{
    apply_linearized, lp_norm, FamilyKind, GridFunction, LineFamily, VerifyReport, DEFAULT_TOL,
};
use crate::maximal::{Domain, ExtendedExponent};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `f^(x, y; xi)` stored at `(x * q + y) * q + xi`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CentralFourierTable {
    pub q: u32,
    pub entries: Vec<Complex64>,
}

impl CentralFourierTable {
    #[inline]
    pub fn get(&self, xy: usize, xi: FieldElement) -> Complex64 {
        self.entries[xy * self.q as usize + xi.index()]
    }

    /// `sum_{x, y} |f^(x, y; xi)|^2`.
    pub fn energy_at(&self, xi: FieldElement) -> f64 {
        let q = self.q as usize;
        (0..q * q).map(|xy| self.get(xy, xi).norm_sqr()).sum()
    }

    /// `sum_{x, y, xi} |f^|^2`.
    pub fn energy(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// `U_xi(m, gamma)` at `m * q + gamma`, and `U_xi^inf(gamma)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UTable {
    pub q: u32,
    pub xi: FieldElement,
    pub slope: Vec<Complex64>,
    pub vertical: Vec<Complex64>,
}

fn require_h1(h: &Heisenberg, f: &GridFunction) -> Result<()> {
    h.require_rank_one()?;
    f.expect_heisenberg(h.field(), 1)
}

/// The transform `f^(x, y; xi) = sum_t f(x, y, t) chi(-xi t)`.
pub fn central_fourier(h: &Heisenberg, f: &GridFunction) -> Result<CentralFourierTable> {
    require_h1(h, f)?;
    let field = h.field();
    let q = field.order();
    let v = f.values();
    let mut entries = vec![ZERO; q * q * q];
    for xy in 0..q * q {
        let fiber = &v[xy * q..(xy + 1) * q];
        for xi in field.elements() {
            entries[xy * q + xi.index()] = field
                .elements()
                .map(|t| fiber[t.index()] * field.character(field.neg(field.mul(xi, t))))
                .sum();
        }
    }
    Ok(CentralFourierTable {
        q: field.q(),
        entries,
    })
}

/// `f(x, y, t) = (1/q) sum_xi f^(x, y; xi) chi(xi t)`.
pub fn inverse_central_fourier(
    h: &Heisenberg,
    table: &CentralFourierTable,
) -> Result<GridFunction> {
    h.require_rank_one()?;
    let field = h.field();
    let q = field.order();
    if table.q != field.q() {
        return domain("Fourier table belongs to another field");
    }
    let mut values = vec![ZERO; q * q * q];
    for xy in 0..q * q {
        for t in field.elements() {
            let s: Complex64 = field
                .elements()
                .map(|xi| table.get(xy, xi) * field.character(field.mul(xi, t)))
                .sum();
            values[xy * q + t.index()] = s / q as f64;
        }
    }
    GridFunction::from_values(field, Domain::Heisenberg { n: 1 }, values)
}

fn require_refined(family: &LineFamily, q: u32) -> Result<()> {
    if family.kind != FamilyKind::Refined || family.q != q {
        return domain("expected a refined family over the same field");
    }
    Ok(())
}

/// `(T_xi f)(omega)` for every `omega`, from a precomputed transform.
pub fn t_xi_component(
    h: &Heisenberg,
    table: &CentralFourierTable,
    xi: FieldElement,
    family: &LineFamily,
) -> Result<Vec<Complex64>> {
    h.require_rank_one()?;
    require_refined(family, h.q())?;
    let field = h.field();
    field.check(xi)?;
    let q = field.order();
    Ok(family
        .lines
        .iter()
        .map(|line| {
            let s: Complex64 = line
                .iter()
                .map(|&p| {
                    let t = field.elem(p % q);
                    table.get(p / q, xi) * field.character(field.mul(xi, t))
                })
                .sum();
            s / q as f64
        })
        .collect())
}

/// All components `T_xi f`, indexed by `xi`.
pub fn t_components(
    h: &Heisenberg,
    f: &GridFunction,
    family: &LineFamily,
) -> Result<Vec<Vec<Complex64>>> {
    let table = central_fourier(h, f)?;
    h.field()
        .elements()
        .map(|xi| t_xi_component(h, &table, xi, family))
        .collect()
}

/// Largest relative deviation `|Tf - sum_xi T_xi f| / max(1, ||Tf||_inf)`.
pub fn decomposition_error(h: &Heisenberg, f: &GridFunction, family: &LineFamily) -> Result<f64> {
    let direct = apply_linearized(family, f)?;
    let comps = t_components(h, f, family)?;
    let scale = direct.iter().fold(1.0_f64, |m, z| m.max(z.norm()));
    let worst = (0..direct.len())
        .map(|w| {
            let s: Complex64 = comps.iter().map(|c| c[w]).sum();
            (s - direct[w]).norm()
        })
        .fold(0.0, f64::max);
    Ok(worst / scale)
}

/// The tables `U_xi` and `U_xi^inf`; `xi` must be nonzero.
pub fn u_tables(h: &Heisenberg, table: &CentralFourierTable, xi: FieldElement) -> Result<UTable> {
    h.require_rank_one()?;
    let field = h.field();
    field.check(xi)?;
    if xi.is_zero() {
        return domain("U tables are defined for xi != 0");
    }
    let q = field.order();
    let xy = |x: FieldElement, y: FieldElement| x.index() * q + y.index();
    let mut slope = vec![ZERO; q * q];
    for m in field.elements() {
        for gamma in field.elements() {
            slope[m.index() * q + gamma.index()] = field
                .elements()
                .map(|x| {
                    let y = field.sub(field.mul(m, x), gamma);
                    table.get(xy(x, y), xi) * field.character(field.mul(xi, field.mul(gamma, x)))
                })
                .sum();
        }
    }
    let vertical = field
        .elements()
        .map(|gamma| {
            field
                .elements()
                .map(|y| {
                    table.get(xy(gamma, y), xi)
                        * field.character(field.mul(xi, field.mul(gamma, y)))
                })
                .sum()
        })
        .collect();
    Ok(UTable {
        q: field.q(),
        xi,
        slope,
        vertical,
    })
}

/// The factorization `T_xi f(omega) = (1/q) chi(xi tau_omega) U`, evaluated
/// from the `U` tables and the offsets `tau` stored in the family.
pub fn factorized_component(
    h: &Heisenberg,
    u: &UTable,
    family: &LineFamily,
) -> Result<Vec<Complex64>> {
    require_refined(family, h.q())?;
    let field = h.field();
    let q = field.order();
    (0..family.len())
        .map(|w| {
            let omega = h.refined_direction_at(w)?;
            let tau = field.elem(family.ids[w]);
            let phase = field.character(field.mul(u.xi, tau));
            let val = match omega.chart().expect("rank one") {
                Chart::Slope { m, gamma } => u.slope[m.index() * q + gamma.index()],
                Chart::Vertical { gamma } => u.vertical[gamma.index()],
            };
            Ok(phase * val / q as f64)
        })
        .collect()
}

/// The two counting estimates for a fixed `xi != 0`:
/// `sum |U_xi|^2 <= 2q sum |f^(.; xi)|^2` and
/// `sum |U_xi^inf|^2 <= q sum |f^(.; xi)|^2`.
pub fn key_counting_check(
    h: &Heisenberg,
    table: &CentralFourierTable,
    xi: FieldElement,
) -> Result<(VerifyReport, VerifyReport)> {
    let u = u_tables(h, table, xi)?;
    let q = h.q();
    let energy = table.energy_at(xi);
    let two = ExtendedExponent::int(2);
    let slope: f64 = u.slope.iter().map(|z| z.norm_sqr()).sum();
    let vertical: f64 = u.vertical.iter().map(|z| z.norm_sqr()).sum();
    Ok((
        VerifyReport::compare(
            "u-slope-energy",
            q,
            two,
            two,
            slope,
            2.0 * q as f64 * energy,
            DEFAULT_TOL,
        ),
        VerifyReport::compare(
            "u-vertical-energy",
            q,
            two,
            two,
            vertical,
            q as f64 * energy,
            DEFAULT_TOL,
        ),
    ))
}

/// `t -> |{x : (xi x - rho) x = t}|`, indexed by `t`.
pub fn quadratic_fiber_count(
    field: &Field,
    xi: FieldElement,
    rho: FieldElement,
) -> Result<Vec<usize>> {
    field.check(xi)?;
    field.check(rho)?;
    if xi.is_zero() {
        return domain("the quadratic needs xi != 0");
    }
    let mut counts = vec![0; field.order()];
    for x in field.elements() {
        counts[field.mul(field.sub(field.mul(xi, x), rho), x).index()] += 1;
    }
    Ok(counts)
}

/// Both sides of `sum_rho |G_rho(x)|^2 = q sum_y |f^(x, y; xi)|^2`, where
/// `G_rho(x) = sum_y f^(x, y; xi) chi(-(xi x - rho) y)`.
pub fn g_rho_identity(
    h: &Heisenberg,
    table: &CentralFourierTable,
    xi: FieldElement,
    x: FieldElement,
) -> Result<(f64, f64)> {
    h.require_rank_one()?;
    let field = h.field();
    field.check(xi)?;
    field.check(x)?;
    let q = field.order();
    let row = |y: FieldElement| table.get(x.index() * q + y.index(), xi);
    let lhs = field
        .elements()
        .map(|rho| {
            let k = field.neg(field.sub(field.mul(xi, x), rho));
            field
                .elements()
                .map(|y| row(y) * field.character(field.mul(k, y)))
                .sum::<Complex64>()
                .norm_sqr()
        })
        .sum();
    let rhs = q as f64 * field.elements().map(|y| row(y).norm_sqr()).sum::<f64>();
    Ok((lhs, rhs))
}

/// The two halves of the `l^2` estimate:
/// `||T_0 f||_2 <= sqrt(2) q^{1/2} ||f||_2` and
/// `||sum_{xi != 0} T_xi f||_2 <= sqrt(5) q^{1/2} ||f||_2`.
pub fn split_bound_check(
    h: &Heisenberg,
    f: &GridFunction,
    family: &LineFamily,
) -> Result<(VerifyReport, VerifyReport)> {
    let comps = t_components(h, f, family)?;
    let q = h.q();
    let two = ExtendedExponent::int(2);
    let scale = (q as f64).sqrt() * f.norm(two);
    let zero_part: Vec<f64> = comps[0].iter().map(|z| z.norm()).collect();
    let rest: Vec<f64> = (0..family.len())
        .map(|w| comps[1..].iter().map(|c| c[w]).sum::<Complex64>().norm())
        .collect();
    let mk = |name: &str, vals: &[f64], c: f64| {
        let lhs = lp_norm(vals, two);
        let mut r = VerifyReport::compare(name, q, two, two, lhs, c * scale, DEFAULT_TOL);
        r.observed_constant = if scale > 0.0 { lhs / scale } else { 0.0 };
        r
    };
    Ok((
        mk("t-zero-l2", &zero_part, 2f64.sqrt()),
        mk("t-nonzero-l2", &rest, 5f64.sqrt()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maximal::{linearize, Chooser, Geometry};

    #[test]
    fn delta_transform_and_u_tables() {
        let f = Field::new(5).unwrap();
        let h = Heisenberg::new(&f, 1).unwrap();
        let delta = GridFunction::delta(&f, Domain::Heisenberg { n: 1 }, 0).unwrap();
        let tab = central_fourier(&h, &delta).unwrap();
        for xy in 0..25 {
            for xi in f.elements() {
                let want = if xy == 0 { 1.0 } else { 0.0 };
                assert!((tab.get(xy, xi) - Complex64::new(want, 0.0)).norm() < 1e-12);
            }
        }
        let xi = f.one();
        let u = u_tables(&h, &tab, xi).unwrap();
        for m in 0..5 {
            for g in 0..5 {
                let want = if g == 0 { 1.0 } else { 0.0 };
                assert!((u.slope[m * 5 + g] - Complex64::new(want, 0.0)).norm() < 1e-12);
            }
        }
        let total: f64 = u.slope.iter().map(|z| z.norm_sqr()).sum();
        assert!((total - 5.0).abs() < 1e-9);
        assert!(u_tables(&h, &tab, f.zero()).is_err());
    }

    #[test]
    fn quadratic_fibers_mod_five() {
        let f = Field::new(5).unwrap();
        let c = quadratic_fiber_count(&f, f.one(), f.zero()).unwrap();
        assert_eq!(c[0], 1);
        assert_eq!(c[4], 2);
        assert_eq!(c.iter().sum::<usize>(), 5);
    }

    #[test]
    fn constant_has_no_oscillating_part() {
        let f = Field::new(7).unwrap();
        let h = Heisenberg::new(&f, 1).unwrap();
        let one = GridFunction::constant(&f, Domain::Heisenberg { n: 1 }, Complex64::new(1.0, 0.0));
        let fam = linearize(Geometry::Refined(&h), Chooser::Random(3)).unwrap();
        let (_, rest) = split_bound_check(&h, &one, &fam).unwrap();
        assert!(rest.lhs < 1e-9);
        assert!(decomposition_error(&h, &one, &fam).unwrap() < 1e-12);
    }
}
