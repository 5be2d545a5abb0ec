use crate::error::{domain, Result};
use crate::field::{Field, FieldElement};

/// The projective space `P^{d-1}(F_q)` of lines through the origin of `F_q^d`.
///
/// Each class is represented by its canonical vector, whose first nonzero
/// coordinate is 1. Classes are enumerated by pivot position, then by the
/// remaining coordinates in row-major order. With this order the refined
/// direction space `D_n` is exactly `P^{2n}` without its last element.
#[derive(Clone, Debug)]
pub struct ProjectiveSpace {
    field: Field,
    d: usize,
    reps: Vec<FieldElement>,
    pivots: Vec<usize>,
    offsets: Vec<usize>,
}

impl ProjectiveSpace {
    pub fn new(field: &Field, d: usize) -> Result<Self> {
        if d == 0 {
            return domain("projective space needs d >= 1");
        }
        let q = field.order();
        let len = (q.pow(d as u32) - 1) / (q - 1);
        let mut reps = Vec::with_capacity(len * d);
        let mut pivots = Vec::with_capacity(len);
        let mut offsets = Vec::with_capacity(d);
        let mut offset = 0;
        for pivot in 0..d {
            offsets.push(offset);
            let tail_len = d - 1 - pivot;
            let tails = q.pow(tail_len as u32);
            offset += tails;
            let mut tail = vec![field.zero(); tail_len];
            for code in 0..tails {
                super::decode_into(q, code, &mut tail);
                reps.extend(std::iter::repeat_n(field.zero(), pivot));
                reps.push(field.one());
                reps.extend_from_slice(&tail);
                pivots.push(pivot);
            }
        }
        debug_assert_eq!(pivots.len(), len);
        Ok(Self {
            field: field.clone(),
            d,
            reps,
            pivots,
            offsets,
        })
    }

    /// Number of classes, `(q^d - 1) / (q - 1)`.
    pub fn len(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pivots.is_empty()
    }

    /// Length of the representing vectors.
    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Canonical representative of class `i`.
    #[inline]
    pub fn rep(&self, i: usize) -> &[FieldElement] {
        &self.reps[i * self.d..(i + 1) * self.d]
    }

    /// Position of the leading 1 in class `i`.
    #[inline]
    pub fn pivot(&self, i: usize) -> usize {
        self.pivots[i]
    }

    /// Class index of a nonzero vector.
    pub fn index_of(&self, v: &[FieldElement]) -> Result<usize> {
        if v.len() != self.d {
            return domain(format!(
                "vector of length {} in a space of dimension {}",
                v.len(),
                self.d
            ));
        }
        for &c in v {
            self.field.check(c)?;
        }
        let Some(pivot) = v.iter().position(|c| !c.is_zero()) else {
            return domain("the zero vector has no projective class");
        };
        let scale = self.field.inv(v[pivot])?;
        let q = self.field.order();
        let tail = v[pivot + 1..]
            .iter()
            .fold(0, |acc, &c| acc * q + self.field.mul(scale, c).index());
        Ok(self.offsets[pivot] + tail)
    }

    /// The canonical representative of the class of `v`.
    pub fn canonicalize(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        Ok(self.rep(self.index_of(v)?).to_vec())
    }

    pub fn iter(&self) -> impl Iterator<Item = &[FieldElement]> {
        self.reps.chunks_exact(self.d)
    }
}
