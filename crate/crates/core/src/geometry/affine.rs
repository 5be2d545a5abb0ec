use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{decode, decode_into, encode, ProjectiveSpace};
use crate::error::{domain, Result};
use crate::field::{Field, FieldElement};

/// Largest number of points of an affine space we are willing to tabulate.
pub const MAX_POINTS: usize = 1 << 24;

/// An affine line of `F_q^d`, materialized as its `q` point indices.
///
/// `id` identifies the line among the `q^{d-1}` lines parallel to it: it
/// encodes the unique point of the line whose pivot coordinate is zero, with
/// the pivot coordinate dropped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineLine {
    pub direction: usize,
    pub id: usize,
    pub points: Vec<usize>,
}

/// The affine space `F_q^d` together with its direction space `P^{d-1}`.
#[derive(Clone, Debug)]
pub struct AffineSpace {
    field: Field,
    d: usize,
    directions: Arc<ProjectiveSpace>,
}

impl AffineSpace {
    pub fn new(field: &Field, d: usize) -> Result<Self> {
        if d == 0 {
            return domain("affine space needs d >= 1");
        }
        let size = (field.order() as u128).pow(d as u32);
        if size > MAX_POINTS as u128 {
            return domain(format!("F_{}^{d} is too large to enumerate", field.q()));
        }
        Ok(Self {
            field: field.clone(),
            d,
            directions: Arc::new(ProjectiveSpace::new(field, d)?),
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn num_points(&self) -> usize {
        self.field.order().pow(self.d as u32)
    }

    pub fn directions(&self) -> &ProjectiveSpace {
        &self.directions
    }

    /// Number of lines parallel to any given direction, `q^{d-1}`.
    pub fn lines_per_direction(&self) -> usize {
        self.field.order().pow(self.d as u32 - 1)
    }

    pub fn point(&self, index: usize) -> Vec<FieldElement> {
        decode(self.field.order(), index, self.d)
    }

    pub fn index_of(&self, coords: &[FieldElement]) -> Result<usize> {
        if coords.len() != self.d {
            return domain(format!(
                "point with {} coordinates in F_q^{}",
                coords.len(),
                self.d
            ));
        }
        for &c in coords {
            self.field.check(c)?;
        }
        Ok(encode(self.field.order(), coords))
    }

    /// Id of the line with direction `dir` through the point `z`.
    #[inline]
    pub fn line_id(&self, dir: usize, z: &[FieldElement]) -> usize {
        line_id(
            &self.field,
            self.directions.rep(dir),
            self.directions.pivot(dir),
            z,
        )
    }

    /// The line with the given direction and id.
    pub fn line(&self, dir: usize, id: usize) -> Result<AffineLine> {
        if dir >= self.directions.len() || id >= self.lines_per_direction() {
            return domain(format!("no line ({dir}, {id})"));
        }
        let q = self.field.order();
        let pivot = self.directions.pivot(dir);
        let mut base = decode(q, id, self.d - 1);
        base.insert(pivot, self.field.zero());
        Ok(self.line_from(dir, id, &base))
    }

    /// The line through `z` with direction `dir`.
    pub fn line_through(&self, z: &[FieldElement], dir: usize) -> Result<AffineLine> {
        self.index_of(z)?;
        if dir >= self.directions.len() {
            return domain(format!("no direction {dir}"));
        }
        let id = self.line_id(dir, z);
        self.line(dir, id)
    }

    fn line_from(&self, dir: usize, id: usize, base: &[FieldElement]) -> AffineLine {
        let q = self.field.order();
        let v = self.directions.rep(dir);
        let mut z = base.to_vec();
        let points = self
            .field
            .elements()
            .map(|s| {
                for k in 0..self.d {
                    z[k] = self.field.add(base[k], self.field.mul(s, v[k]));
                }
                encode(q, &z)
            })
            .collect();
        AffineLine {
            direction: dir,
            id,
            points,
        }
    }

    /// All `q^{d-1}` lines with direction `dir`, ordered by id.
    pub fn lines_in_direction(&self, dir: usize) -> Result<Vec<AffineLine>> {
        (0..self.lines_per_direction())
            .map(|id| self.line(dir, id))
            .collect()
    }

    /// Calls `f(point_index, coords)` for every point in index order.
    pub fn for_each_point(&self, mut f: impl FnMut(usize, &[FieldElement])) {
        let q = self.field.order();
        let mut z = vec![self.field.zero(); self.d];
        for i in 0..self.num_points() {
            decode_into(q, i, &mut z);
            f(i, &z);
        }
    }
}

/// Id of the line through `z` with canonical direction `v` (pivot `pivot`):
/// slide `z` along `v` until its pivot coordinate vanishes, then encode the
/// remaining coordinates.
#[inline]
pub(crate) fn line_id(
    field: &Field,
    v: &[FieldElement],
    pivot: usize,
    z: &[FieldElement],
) -> usize {
    let q = field.order();
    let s = z[pivot];
    let mut id = 0;
    for k in 0..z.len() {
        if k != pivot {
            id = id * q + field.sub(z[k], field.mul(s, v[k])).index();
        }
    }
    id
}
