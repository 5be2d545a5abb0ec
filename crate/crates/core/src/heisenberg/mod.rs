//! The Heisenberg group `H_n(F_q) = F_q^n x F_q^n x F_q` with the law
//!
//! ```text
//! (x, y, t) . (x', y', t') = (x + x', y + y', t + t' + x.y' - y.x')
//! ```
//!
//! together with its horizontal lines and their directions.
//!
//! Points are indexed row-major over `(x_0..x_{n-1}, y_0..y_{n-1}, t)` with
//! `t` fastest, so the projection `(x, y, t) -> (x, y)` is integer division
//! of the index by `q`.

mod census;
mod direction;
mod line;

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

pub use census::{Census, CensusCounts};
pub use direction::{Chart, ProjectiveDirection, RefinedDirection};
pub use line::HorizontalLine;

use crate::error::{domain, Error, Result};
use crate::field::{Field, FieldElement};
use crate::geometry::{self, AffineSpace, ProjectiveSpace};

/// A point `(x, y, t)` of `H_n(F_q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HPoint {
    pub x: Vec<FieldElement>,
    pub y: Vec<FieldElement>,
    pub t: FieldElement,
}

impl HPoint {
    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// Coordinates in index order `(x, y, t)`.
    pub fn coords(&self) -> Vec<FieldElement> {
        let mut c = Vec::with_capacity(2 * self.n() + 1);
        c.extend_from_slice(&self.x);
        c.extend_from_slice(&self.y);
        c.push(self.t);
        c
    }
}

impl fmt::Display for HPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[FieldElement]| {
            v.iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "({}; {}; {})", join(&self.x), join(&self.y), self.t)
    }
}

struct Inner {
    field: Field,
    n: usize,
    directions: ProjectiveSpace,
    refined: ProjectiveSpace,
    coords: OnceLock<Vec<FieldElement>>,
    plane: OnceLock<AffineSpace>,
}

/// The group `H_n(F_q)` with cached direction enumerations.
///
/// Cloning is cheap; clones share all cached tables.
#[derive(Clone)]
pub struct Heisenberg(Arc<Inner>);

impl fmt::Debug for Heisenberg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Heisenberg")
            .field("q", &self.q())
            .field("n", &self.n())
            .finish()
    }
}

impl PartialEq for Heisenberg {
    fn eq(&self, other: &Self) -> bool {
        self.n() == other.n() && self.field() == other.field()
    }
}

impl Heisenberg {
    pub fn new(field: &Field, n: usize) -> Result<Self> {
        if n == 0 {
            return domain("H_n needs n >= 1");
        }
        let size = (field.order() as u128).pow(2 * n as u32 + 1);
        if size > geometry::MAX_POINTS as u128 {
            return Err(Error::Unsupported(format!(
                "H_{n}(F_{}) has {size} points, too many to enumerate",
                field.q()
            )));
        }
        Ok(Heisenberg(Arc::new(Inner {
            field: field.clone(),
            n,
            directions: ProjectiveSpace::new(field, 2 * n)?,
            refined: ProjectiveSpace::new(field, 2 * n + 1)?,
            coords: OnceLock::new(),
            plane: OnceLock::new(),
        })))
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    pub fn q(&self) -> u32 {
        self.0.field.q()
    }

    /// Number of coordinates of a point, `2n + 1`.
    pub fn dim(&self) -> usize {
        2 * self.0.n + 1
    }

    /// `|H_n(F_q)| = q^{2n+1}`.
    pub fn num_points(&self) -> usize {
        self.0.field.order().pow(self.dim() as u32)
    }

    /// The horizontal direction space `P^{2n-1}`.
    pub fn directions(&self) -> &ProjectiveSpace {
        &self.0.directions
    }

    /// `|D_n| = |P^{2n}| - 1`.
    pub fn num_refined_directions(&self) -> usize {
        self.0.refined.len() - 1
    }

    /// Number of horizontal lines with a fixed direction, `q^{2n}`.
    pub fn lines_per_direction(&self) -> usize {
        self.0.field.order().pow(2 * self.0.n as u32)
    }

    /// The base `F_q^{2n}` that `project` lands in.
    pub fn base_space(&self) -> &AffineSpace {
        self.0
            .plane
            .get_or_init(|| AffineSpace::new(&self.0.field, 2 * self.0.n).expect("base fits"))
    }

    /// Decoded coordinates of every point, `dim()` entries per point.
    pub(crate) fn coordinate_table(&self) -> &[FieldElement] {
        self.0
            .coords
            .get_or_init(|| geometry::coordinate_table(self.0.field.order(), self.dim()))
    }

    #[inline]
    pub(crate) fn coords_of(&self, index: usize) -> &[FieldElement] {
        let d = self.dim();
        &self.coordinate_table()[index * d..(index + 1) * d]
    }

    pub fn point(&self, index: usize) -> Result<HPoint> {
        if index >= self.num_points() {
            return domain(format!("point index {index} out of range"));
        }
        let c = geometry::decode(self.0.field.order(), index, self.dim());
        Ok(self.point_from_coords(&c))
    }

    fn point_from_coords(&self, c: &[FieldElement]) -> HPoint {
        let n = self.0.n;
        HPoint {
            x: c[..n].to_vec(),
            y: c[n..2 * n].to_vec(),
            t: c[2 * n],
        }
    }

    /// Builds a point from raw coordinate indices, checking ranges.
    pub fn point_from(&self, x: &[u32], y: &[u32], t: u32) -> Result<HPoint> {
        let f = &self.0.field;
        let p = HPoint {
            x: x.iter().map(|&c| f.element(c)).collect::<Result<_>>()?,
            y: y.iter().map(|&c| f.element(c)).collect::<Result<_>>()?,
            t: f.element(t)?,
        };
        self.check(&p)?;
        Ok(p)
    }

    pub fn check(&self, p: &HPoint) -> Result<()> {
        if p.x.len() != self.0.n || p.y.len() != self.0.n {
            return domain(format!(
                "point of rank {}/{} in H_{}",
                p.x.len(),
                p.y.len(),
                self.0.n
            ));
        }
        for &c in p.x.iter().chain(&p.y).chain(std::iter::once(&p.t)) {
            self.0.field.check(c)?;
        }
        Ok(())
    }

    pub fn index_of(&self, p: &HPoint) -> Result<usize> {
        self.check(p)?;
        Ok(geometry::encode(self.0.field.order(), &p.coords()))
    }

    pub fn identity(&self) -> HPoint {
        let z = self.0.field.zero();
        HPoint {
            x: vec![z; self.0.n],
            y: vec![z; self.0.n],
            t: z,
        }
    }

    /// The symplectic form `x.y' - y.x'`.
    pub fn twist(&self, p: &HPoint, r: &HPoint) -> FieldElement {
        let f = &self.0.field;
        f.sub(f.dot(&p.x, &r.y), f.dot(&p.y, &r.x))
    }

    pub fn group_mul(&self, p: &HPoint, r: &HPoint) -> Result<HPoint> {
        self.check(p)?;
        self.check(r)?;
        let f = &self.0.field;
        let add = |a: &[FieldElement], b: &[FieldElement]| -> Vec<FieldElement> {
            a.iter().zip(b).map(|(&u, &w)| f.add(u, w)).collect()
        };
        Ok(HPoint {
            x: add(&p.x, &r.x),
            y: add(&p.y, &r.y),
            t: f.add(f.add(p.t, r.t), self.twist(p, r)),
        })
    }

    /// `(x, y, t)^{-1} = (-x, -y, -t)`.
    pub fn inverse(&self, p: &HPoint) -> Result<HPoint> {
        self.check(p)?;
        let f = &self.0.field;
        let neg = |a: &[FieldElement]| a.iter().map(|&c| f.neg(c)).collect();
        Ok(HPoint {
            x: neg(&p.x),
            y: neg(&p.y),
            t: f.neg(p.t),
        })
    }

    /// The projection `(x, y, t) -> (x, y)` onto `F_q^{2n}`.
    pub fn project(&self, p: &HPoint) -> Vec<FieldElement> {
        let mut z = p.x.clone();
        z.extend_from_slice(&p.y);
        z
    }

    /// Projection on indices.
    #[inline]
    pub fn project_index(&self, index: usize) -> usize {
        index / self.0.field.order()
    }
}
