//! The non-horizontality parameter `mu` of affine lines in `F_q^3 = H_1`,
//! the shears that straighten fixed-`mu` families into horizontal lines, and
//! the resulting partition of refined directions for a Kakeya set.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::PointSet;
use crate::error::{domain, Error, Result};
use crate::field::{Field, FieldElement};
use crate::geometry::{AffineLine, AffineSpace};
use crate::heisenberg::Heisenberg;
use crate::maximal::refined_max_counts;

/// Which coordinate the shear `t -> t - k x` or `t -> t - k y` uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SliceChart {
    /// Directions `[1:m:gamma]`, sheared by `t -> t - k x`.
    Slope,
    /// Directions `[0:1:gamma]`, sheared by `t -> t - k y`.
    Vertical,
}

fn require_3d(space: &AffineSpace) -> Result<()> {
    if space.dim() != 3 {
        return domain(format!("expected F_q^3, got F_q^{}", space.dim()));
    }
    Ok(())
}

/// `mu` for the canonical direction `v = (a, b, c)` and a point `z` on the
/// line: `gamma - (m x - y)` on `[1:m:gamma]`, `gamma - x` on `[0:1:gamma]`.
pub fn mu_of(field: &Field, v: &[FieldElement], z: &[FieldElement]) -> Result<FieldElement> {
    if v.len() != 3 || z.len() != 3 {
        return domain("mu is defined for lines of F_q^3");
    }
    let slope = if !v[0].is_zero() {
        let m = field.div(v[1], v[0])?;
        let gamma = field.div(v[2], v[0])?;
        (gamma, field.sub(field.mul(m, z[0]), z[1]))
    } else if !v[1].is_zero() {
        let gamma = field.div(v[2], v[1])?;
        (gamma, z[0])
    } else {
        return domain("the vertical direction [0:0:1] has no mu");
    };
    Ok(field.sub(slope.0, slope.1))
}

/// `mu(line)`; zero exactly when the line is horizontal.
pub fn mu_parameter(space: &AffineSpace, line: &AffineLine) -> Result<FieldElement> {
    require_3d(space)?;
    let v = space.directions().rep(line.direction);
    mu_of(space.field(), v, &space.point(line.points[0]))
}

/// The chart a non-vertical direction of `F_q^3` lies in.
pub fn chart_of(v: &[FieldElement]) -> Result<SliceChart> {
    if !v[0].is_zero() {
        Ok(SliceChart::Slope)
    } else if !v[1].is_zero() {
        Ok(SliceChart::Vertical)
    } else {
        domain("the vertical direction [0:0:1] lies in no chart")
    }
}

fn check_k(k: FieldElement) -> Result<()> {
    if k.is_zero() {
        return Err(Error::Precondition("straightening needs k != 0".into()));
    }
    Ok(())
}

fn shear(field: &Field, z: &mut [FieldElement], k: FieldElement, chart: SliceChart) {
    let s = match chart {
        SliceChart::Slope => z[0],
        SliceChart::Vertical => z[1],
    };
    z[2] = field.sub(z[2], field.mul(k, s));
}

/// Image of a point index under the shear.
pub fn straighten_point(
    field: &Field,
    index: usize,
    k: FieldElement,
    chart: SliceChart,
) -> Result<usize> {
    check_k(k)?;
    let q = field.order();
    if index >= q * q * q {
        return domain(format!("point index {index} out of range"));
    }
    let mut z = crate::geometry::decode(q, index, 3);
    shear(field, &mut z, k, chart);
    Ok(crate::geometry::encode(q, &z))
}

/// Image of a subset of `F_q^3` under the shear.
pub fn straighten_set(set: &PointSet, k: FieldElement, chart: SliceChart) -> Result<PointSet> {
    if set.domain().dim() != 3 {
        return domain("straightening acts on F_q^3");
    }
    check_k(k)?;
    let f = set.field().clone();
    set.map(|p| straighten_point(&f, p, k, chart).expect("index in range"))
}

/// Image of an affine line under the shear. The shear is linear, so it maps
/// the direction `(a, b, c)` to `(a, b, c - k a)` or `(a, b, c - k b)`.
pub fn straighten_line(
    space: &AffineSpace,
    line: &AffineLine,
    k: FieldElement,
    chart: SliceChart,
) -> Result<AffineLine> {
    require_3d(space)?;
    check_k(k)?;
    let f = space.field();
    let mut v = space.directions().rep(line.direction).to_vec();
    shear(f, &mut v, k, chart);
    let dir = space.directions().index_of(&v)?;
    let mut z = space.point(line.points[0]);
    shear(f, &mut z, k, chart);
    space.line_through(&z, dir)
}

/// The split of refined directions by a set `E` of `H_1`: `omega_1` are
/// directions with a horizontal line inside `E`, `omega_2` the rest. Each
/// `omega` in `omega_2` with some contained affine line of ambient direction
/// `omega` gets the one with smallest `mu` (then smallest id); `k(omega)` is
/// its `mu` and `slices[k]` collects the directions with that value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KakeyaReport {
    pub q: u32,
    pub set_size: usize,
    pub omega1: Vec<usize>,
    pub omega2: Vec<usize>,
    /// `omega -> (selected line id, k(omega))` for `omega` in `omega_2`.
    pub selection: BTreeMap<usize, (usize, FieldElement)>,
    /// `k -> Lambda_k`, keyed by the index of `k`.
    pub slices: BTreeMap<usize, Vec<usize>>,
    /// Directions of `omega_2` with no contained affine line.
    pub flagged: Vec<usize>,
    /// `M_E(omega) = max_L |E cap L|` over lines of refined direction `omega`.
    pub m_values: Vec<u64>,
    /// `min_omega M_E(omega)`.
    pub m: u64,
}

/// Computes the `omega_1 / omega_2` split and the `mu`-slices of `E`.
pub fn omega_partition(h: &Heisenberg, set: &PointSet) -> Result<KakeyaReport> {
    h.require_rank_one()?;
    if set.field() != h.field() || set.ambient_size() != h.num_points() {
        return domain("point set does not live in this Heisenberg group");
    }
    let f = h.field();
    let q = f.order();
    let m_values = refined_max_counts(h, &set.indices()).values;
    let (omega1, omega2): (Vec<usize>, Vec<usize>) =
        (0..m_values.len()).partition(|&w| m_values[w] == q as u64);

    // Refined directions of H_1 and non-vertical directions of P^2 share
    // canonical forms and indices.
    let space = AffineSpace::new(f, 3)?;
    let mut selection = BTreeMap::new();
    let mut slices: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut flagged = Vec::new();
    for &w in &omega2 {
        let mut best: Option<(usize, FieldElement)> = None;
        for line in space.lines_in_direction(w)? {
            if !set.contains_all(&line.points) {
                continue;
            }
            let mu = mu_parameter(&space, &line)?;
            if best.is_none_or(|(_, b)| mu.index() < b.index()) {
                best = Some((line.id, mu));
            }
        }
        match best {
            Some((id, mu)) => {
                debug_assert!(!mu.is_zero());
                selection.insert(w, (id, mu));
                slices.entry(mu.index()).or_default().push(w);
            }
            None => flagged.push(w),
        }
    }
    let m = m_values.iter().copied().min().unwrap_or(0);
    Ok(KakeyaReport {
        q: h.q(),
        set_size: set.len(),
        omega1,
        omega2,
        selection,
        slices,
        flagged,
        m_values,
        m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maximal::Domain;

    #[test]
    fn mu_examples() {
        let f = Field::new(5).unwrap();
        let space = AffineSpace::new(&f, 3).unwrap();
        let one = f.one();
        let zero = f.zero();
        let dir = space.directions().index_of(&[one, zero, one]).unwrap();
        let line = space.line_through(&[zero, zero, zero], dir).unwrap();
        assert_eq!(mu_parameter(&space, &line).unwrap(), one);

        let flat = straighten_line(&space, &line, one, SliceChart::Slope).unwrap();
        assert_eq!(mu_parameter(&space, &flat).unwrap(), zero);
        let want: Vec<usize> = f.elements().map(|s| s.index() * 25).collect();
        let mut got = flat.points.clone();
        got.sort_unstable();
        assert_eq!(got, want);

        let vertical = space.directions().len() - 1;
        let vline = space.line(vertical, 0).unwrap();
        assert!(mu_parameter(&space, &vline).is_err());
    }

    #[test]
    fn full_group_has_no_omega2() {
        let f = Field::new(3).unwrap();
        let h = Heisenberg::new(&f, 1).unwrap();
        let r = omega_partition(&h, &PointSet::full(&f, Domain::Heisenberg { n: 1 })).unwrap();
        assert_eq!(r.omega1.len(), 12);
        assert!(r.omega2.is_empty());
        assert_eq!(r.m, 3);
    }
}
