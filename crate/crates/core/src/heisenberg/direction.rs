use std::fmt;

use serde::{Deserialize, Serialize};

use super::Heisenberg;
use crate::error::{domain, Error, Result};
use crate::field::FieldElement;

/// A horizontal direction `[a:b]` in `P^{2n-1}(F_q)`, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProjectiveDirection {
    pub index: usize,
    pub a: Vec<FieldElement>,
    pub b: Vec<FieldElement>,
}

impl ProjectiveDirection {
    /// The concatenated vector `(a, b)`.
    pub fn vector(&self) -> Vec<FieldElement> {
        let mut v = self.a.clone();
        v.extend_from_slice(&self.b);
        v
    }
}

impl fmt::Display for ProjectiveDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vector().iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

/// The two coordinate charts of `D_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chart {
    /// `[1:m:gamma]`
    Slope {
        m: FieldElement,
        gamma: FieldElement,
    },
    /// `[0:1:gamma]`
    Vertical { gamma: FieldElement },
}

impl Chart {
    pub fn gamma(self) -> FieldElement {
        match self {
            Chart::Slope { gamma, .. } | Chart::Vertical { gamma } => gamma,
        }
    }
}

/// A refined direction `[a:b:c]` in `D_n`: a horizontal direction together
/// with a t-slope. Canonical form scales the first nonzero entry of `(a, b)`
/// to 1, which is why the vertical class `[0:...:0:1]` cannot be built.
///
/// The index satisfies `index = spatial_index * q + c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RefinedDirection {
    pub index: usize,
    pub a: Vec<FieldElement>,
    pub b: Vec<FieldElement>,
    pub c: FieldElement,
}

impl RefinedDirection {
    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// The chart coordinates when `n = 1`.
    pub fn chart(&self) -> Option<Chart> {
        if self.n() != 1 {
            return None;
        }
        Some(if self.a[0].is_zero() {
            Chart::Vertical { gamma: self.c }
        } else {
            Chart::Slope {
                m: self.b[0],
                gamma: self.c,
            }
        })
    }

    pub fn vector(&self) -> Vec<FieldElement> {
        let mut v = self.a.clone();
        v.extend_from_slice(&self.b);
        v.push(self.c);
        v
    }
}

impl fmt::Display for RefinedDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vector().iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

impl Heisenberg {
    pub fn projective_direction(&self, index: usize) -> Result<ProjectiveDirection> {
        let ps = self.directions();
        if index >= ps.len() {
            return domain(format!("direction index {index} out of range"));
        }
        let v = ps.rep(index);
        let n = self.n();
        Ok(ProjectiveDirection {
            index,
            a: v[..n].to_vec(),
            b: v[n..].to_vec(),
        })
    }

    /// The class of `(a, b)`, which must be nonzero.
    pub fn projective_direction_of(
        &self,
        a: &[FieldElement],
        b: &[FieldElement],
    ) -> Result<ProjectiveDirection> {
        if a.len() != self.n() || b.len() != self.n() {
            return domain("direction has the wrong rank");
        }
        let mut v = a.to_vec();
        v.extend_from_slice(b);
        self.projective_direction(self.directions().index_of(&v)?)
    }

    /// All of `P^{2n-1}` in enumeration order.
    pub fn enumerate_projective_directions(&self) -> Vec<ProjectiveDirection> {
        (0..self.directions().len())
            .map(|i| self.projective_direction(i).expect("in range"))
            .collect()
    }

    pub fn refined_direction_at(&self, index: usize) -> Result<RefinedDirection> {
        let q = self.field().order();
        let spatial = self
            .projective_direction(index / q)
            .map_err(|_| Error::Domain(format!("refined direction index {index} out of range")))?;
        Ok(RefinedDirection {
            index,
            a: spatial.a,
            b: spatial.b,
            c: self.field().elem(index % q),
        })
    }

    /// The class of `[a:b:c]`; fails for `(a, b) = 0`.
    pub fn refined_direction_of(
        &self,
        a: &[FieldElement],
        b: &[FieldElement],
        c: FieldElement,
    ) -> Result<RefinedDirection> {
        self.field().check(c)?;
        let f = self.field();
        let ab: Vec<FieldElement> = a.iter().chain(b).copied().collect();
        let Some(pivot) = ab.iter().position(|x| !x.is_zero()) else {
            return domain("[0:...:0:1] is not a refined direction");
        };
        let spatial = self.projective_direction_of(a, b)?;
        let scale = f.inv(ab[pivot])?;
        let q = f.order();
        Ok(RefinedDirection {
            index: spatial.index * q + f.mul(scale, c).index(),
            a: spatial.a,
            b: spatial.b,
            c: f.mul(scale, c),
        })
    }

    /// All of `D_n` in enumeration order; the fiber over the spatial
    /// direction with index `i` occupies indices `i*q .. (i+1)*q`.
    pub fn enumerate_refined_directions(&self) -> Vec<RefinedDirection> {
        (0..self.num_refined_directions())
            .map(|i| self.refined_direction_at(i).expect("in range"))
            .collect()
    }

    /// `[1:m:gamma]` in `D_1`.
    pub fn slope_direction(
        &self,
        m: FieldElement,
        gamma: FieldElement,
    ) -> Result<RefinedDirection> {
        self.require_rank_one()?;
        let one = self.field().one();
        self.refined_direction_of(&[one], &[m], gamma)
    }

    /// `[0:1:gamma]` in `D_1`.
    pub fn vertical_direction(&self, gamma: FieldElement) -> Result<RefinedDirection> {
        self.require_rank_one()?;
        let f = self.field();
        self.refined_direction_of(&[f.zero()], &[f.one()], gamma)
    }

    pub(crate) fn require_rank_one(&self) -> Result<()> {
        if self.n() != 1 {
            return Err(Error::Unsupported(format!(
                "only implemented for H_1, not H_{}",
                self.n()
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn direction_counts() {
        let f3 = Field::new(3).unwrap();
        let h1 = Heisenberg::new(&f3, 1).unwrap();
        assert_eq!(h1.enumerate_projective_directions().len(), 4);
        assert_eq!(h1.enumerate_refined_directions().len(), 12);
        let h2 = Heisenberg::new(&f3, 2).unwrap();
        assert_eq!(h2.enumerate_projective_directions().len(), 40);
        assert_eq!(h2.enumerate_refined_directions().len(), 120);
    }

    #[test]
    fn chart_indices() {
        let f = Field::new(5).unwrap();
        let h = Heisenberg::new(&f, 1).unwrap();
        for m in f.elements() {
            for g in f.elements() {
                let w = h.slope_direction(m, g).unwrap();
                assert_eq!(w.index, m.index() * 5 + g.index());
                assert_eq!(w.chart(), Some(Chart::Slope { m, gamma: g }));
            }
        }
        for g in f.elements() {
            let w = h.vertical_direction(g).unwrap();
            assert_eq!(w.index, 25 + g.index());
            assert_eq!(h.refined_direction_at(w.index).unwrap(), w);
        }
    }

    #[test]
    fn scaled_refined_direction_is_canonicalized() {
        let f = Field::new(7).unwrap();
        let h = Heisenberg::new(&f, 1).unwrap();
        let e = |i| f.from_int(i);
        // [3:6:2] = [1:2:3] since 3^{-1} = 5 and 5*2 = 10 = 3.
        let w = h.refined_direction_of(&[e(3)], &[e(6)], e(2)).unwrap();
        assert_eq!(w, h.slope_direction(e(2), e(3)).unwrap());
        assert!(h.refined_direction_of(&[e(0)], &[e(0)], e(1)).is_err());
    }
}
