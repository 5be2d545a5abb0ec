//! Coordinate spaces over `F_q`: the affine space `F_q^d` with its lines, and
//! the projective space `P^{d-1}` of directions.
//!
//! Points of `F_q^d` are indexed row-major: the last coordinate varies
//! fastest. The Heisenberg group uses the same convention, so `H_1(F_q)` and
//! `F_q^3` share indices.

mod affine;
mod projective;

pub(crate) use affine::line_id as affine_line_id;
pub use affine::{AffineLine, AffineSpace, MAX_POINTS};
pub use projective::ProjectiveSpace;

use crate::field::FieldElement;

/// Row-major index of a coordinate vector.
#[inline]
pub(crate) fn encode(q: usize, coords: &[FieldElement]) -> usize {
    coords.iter().fold(0, |acc, c| acc * q + c.index())
}

/// Inverse of [`encode`], writing into `out`.
#[inline]
pub(crate) fn decode_into(q: usize, mut index: usize, out: &mut [FieldElement]) {
    for slot in out.iter_mut().rev() {
        *slot = FieldElement::from_index_unchecked(index % q);
        index /= q;
    }
}

pub(crate) fn decode(q: usize, index: usize, d: usize) -> Vec<FieldElement> {
    let mut out = vec![FieldElement::from_index_unchecked(0); d];
    decode_into(q, index, &mut out);
    out
}

/// Flat table of decoded coordinates for all `q^d` points.
pub(crate) fn coordinate_table(q: usize, d: usize) -> Vec<FieldElement> {
    let n = q.pow(d as u32);
    let mut table = vec![FieldElement::from_index_unchecked(0); n * d];
    for (i, chunk) in table.chunks_exact_mut(d).enumerate() {
        decode_into(q, i, chunk);
    }
    table
}
