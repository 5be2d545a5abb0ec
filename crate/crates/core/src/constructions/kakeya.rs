use serde::{Deserialize, Serialize};

use super::PointSet;
use crate::error::{domain, Result};
use crate::geometry::AffineSpace;
use crate::heisenberg::Heisenberg;
use crate::maximal::{affine_max_counts, refined_max_counts};

/// Outcome of a Kakeya predicate: `missing` lists every direction index with
/// no full line inside the set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KakeyaCheck {
    pub holds: bool,
    pub missing: Vec<usize>,
}

impl KakeyaCheck {
    fn from_counts(counts: &[u64], q: usize) -> Self {
        let missing: Vec<usize> = counts
            .iter()
            .enumerate()
            .filter(|(_, &m)| m < q as u64)
            .map(|(i, _)| i)
            .collect();
        KakeyaCheck {
            holds: missing.is_empty(),
            missing,
        }
    }
}

/// Whether `set`, read as a subset of `F_q^d`, contains a full affine line in
/// every direction of `P^{d-1}`. Sets on `H_n` are read through the shared
/// point enumeration of `F_q^{2n+1}`.
pub fn is_affine_kakeya(space: &AffineSpace, set: &PointSet) -> Result<KakeyaCheck> {
    if set.field() != space.field() || set.domain().dim() != space.dim() {
        return domain("point set does not live in this affine space");
    }
    let counts = affine_max_counts(space, &set.indices()).values;
    Ok(KakeyaCheck::from_counts(&counts, space.field().order()))
}

/// Whether `set` contains a horizontal line of every refined direction.
pub fn is_full_refined_kakeya(h: &Heisenberg, set: &PointSet) -> Result<KakeyaCheck> {
    if set.field() != h.field() || set.ambient_size() != h.num_points() {
        return domain("point set does not live in this Heisenberg group");
    }
    let counts = refined_max_counts(h, &set.indices()).values;
    Ok(KakeyaCheck::from_counts(&counts, h.field().order()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::maximal::Domain;

    #[test]
    fn full_space_is_kakeya() {
        let f = Field::new(3).unwrap();
        let h = Heisenberg::new(&f, 1).unwrap();
        let all = PointSet::full(&f, Domain::Heisenberg { n: 1 });
        let space = AffineSpace::new(&f, 3).unwrap();
        assert!(is_affine_kakeya(&space, &all).unwrap().holds);
        assert!(is_full_refined_kakeya(&h, &all).unwrap().holds);
        let empty = PointSet::empty(&f, Domain::Heisenberg { n: 1 });
        assert_eq!(
            is_full_refined_kakeya(&h, &empty).unwrap().missing.len(),
            12
        );
    }
}
