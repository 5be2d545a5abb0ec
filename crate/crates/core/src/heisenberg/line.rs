use serde::{Deserialize, Serialize};

use super::{Chart, HPoint, Heisenberg, ProjectiveDirection, RefinedDirection};
use crate::error::{domain, Result};
use crate::field::FieldElement;
use crate::geometry::{self, affine_line_id};

/// A horizontal line `{p . (s a, s b, 0) : s in F_q}`.
///
/// `points` lists the `q` point indices in parameter order starting from
/// `base`. Among the `q^{2n}` lines with direction `dir`, the line is named
/// by `id`; its canonical basepoint is the point whose pivot coordinate is
/// zero, and `tau` is that point's `t`-coordinate (for `n = 1` this is the
/// offset of the normal forms `{(x, mx - gamma, tau + gamma x)}` and
/// `{(gamma, y, tau + gamma y)}`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HorizontalLine {
    pub base: HPoint,
    pub dir: ProjectiveDirection,
    pub tau: FieldElement,
    pub id: usize,
    pub points: Vec<usize>,
}

impl HorizontalLine {
    /// Whether both describe the same point set.
    pub fn same_line(&self, other: &HorizontalLine) -> bool {
        self.dir.index == other.dir.index && self.id == other.id
    }

    pub fn contains(&self, index: usize) -> bool {
        self.points.contains(&index)
    }

    pub fn sorted_points(&self) -> Vec<usize> {
        let mut p = self.points.clone();
        p.sort_unstable();
        p
    }
}

impl Heisenberg {
    /// `x.b - y.a` for the point `coords = (x, y, t)` and direction `v = (a, b)`.
    #[inline]
    pub(crate) fn slope_at(&self, v: &[FieldElement], coords: &[FieldElement]) -> FieldElement {
        let f = self.field();
        let n = self.n();
        let mut c = f.zero();
        for j in 0..n {
            c = f.add(c, f.mul(coords[j], v[n + j]));
            c = f.sub(c, f.mul(coords[n + j], v[j]));
        }
        c
    }

    /// Id of the horizontal line through the point with coordinates
    /// `coords` in direction `dir`.
    #[inline]
    pub(crate) fn line_id_at(&self, dir: usize, coords: &[FieldElement]) -> usize {
        let f = self.field();
        let ps = self.directions();
        let v = ps.rep(dir);
        let pivot = ps.pivot(dir);
        let two_n = 2 * self.n();
        let z = &coords[..two_n];
        let c = self.slope_at(v, coords);
        let t0 = f.sub(coords[two_n], f.mul(c, z[pivot]));
        affine_line_id(f, v, pivot, z) * f.order() + t0.index()
    }

    /// Id of the horizontal line through point `index` in direction `dir`.
    pub fn line_id(&self, dir: usize, index: usize) -> usize {
        self.line_id_at(dir, self.coords_of(index))
    }

    /// The horizontal line through `p` in direction `v`, parametrized from `p`.
    pub fn horizontal_line(&self, p: &HPoint, v: &ProjectiveDirection) -> Result<HorizontalLine> {
        self.check(p)?;
        let dir = self.projective_direction_of(&v.a, &v.b)?;
        let f = self.field();
        let q = f.order();
        let c = self.slope_at(&dir.vector(), &p.coords());
        let mut coords = p.coords();
        let points = f
            .elements()
            .map(|s| {
                for j in 0..self.n() {
                    coords[j] = f.add(p.x[j], f.mul(s, v.a[j]));
                    coords[self.n() + j] = f.add(p.y[j], f.mul(s, v.b[j]));
                }
                coords[2 * self.n()] = f.add(p.t, f.mul(c, s));
                geometry::encode(q, &coords)
            })
            .collect();
        let id = self.line_id_at(dir.index, &p.coords());
        Ok(HorizontalLine {
            base: p.clone(),
            tau: f.elem(id % q),
            id,
            dir,
            points,
        })
    }

    /// The line with direction `dir` and the given id, parametrized from its
    /// canonical basepoint.
    pub fn line(&self, dir: usize, id: usize) -> Result<HorizontalLine> {
        if id >= self.lines_per_direction() {
            return domain(format!("line id {id} out of range"));
        }
        let direction = self.projective_direction(dir)?;
        let q = self.field().order();
        let pivot = self.directions().pivot(dir);
        let mut z = geometry::decode(q, id / q, 2 * self.n() - 1);
        z.insert(pivot, self.field().zero());
        z.push(self.field().elem(id % q));
        let base = self.point(geometry::encode(q, &z))?;
        self.horizontal_line(&base, &direction)
    }

    /// The t-slope `c(L) = x_0.b - y_0.a`.
    pub fn t_slope(&self, line: &HorizontalLine) -> FieldElement {
        self.slope_at(&line.dir.vector(), &line.base.coords())
    }

    /// `Dir(L) = [a:b:c(L)]`.
    pub fn refined_direction(&self, line: &HorizontalLine) -> RefinedDirection {
        let c = self.t_slope(line);
        RefinedDirection {
            index: line.dir.index * self.field().order() + c.index(),
            a: line.dir.a.clone(),
            b: line.dir.b.clone(),
            c,
        }
    }

    /// The normal-form line `L_{omega, tau}` of `H_1`.
    pub fn refined_line(
        &self,
        omega: &RefinedDirection,
        tau: FieldElement,
    ) -> Result<HorizontalLine> {
        self.require_rank_one()?;
        self.field().check(tau)?;
        let f = self.field();
        let chart = omega.chart().expect("rank one");
        let base = match chart {
            Chart::Slope { gamma, .. } => HPoint {
                x: vec![f.zero()],
                y: vec![f.neg(gamma)],
                t: tau,
            },
            Chart::Vertical { gamma } => HPoint {
                x: vec![gamma],
                y: vec![f.zero()],
                t: tau,
            },
        };
        let dir = self.projective_direction(omega.index / f.order())?;
        self.horizontal_line(&base, &dir)
    }

    /// The `q` lines with refined direction `omega`, ordered by `tau`.
    pub fn lines_with_refined_direction(
        &self,
        omega: &RefinedDirection,
    ) -> Result<Vec<HorizontalLine>> {
        self.require_rank_one()?;
        self.field()
            .elements()
            .map(|tau| self.refined_line(omega, tau))
            .collect()
    }

    /// One line through `p` per horizontal direction.
    pub fn lines_through_point(&self, p: &HPoint) -> Result<Vec<HorizontalLine>> {
        self.enumerate_projective_directions()
            .iter()
            .map(|v| self.horizontal_line(p, v))
            .collect()
    }
}
