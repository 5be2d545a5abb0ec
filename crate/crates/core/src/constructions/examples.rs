//! The two sets separating affine Kakeya sets from full refined-direction
//! horizontal Kakeya sets in `H_1(F_q) = F_q^3`.

use super::PointSet;
use crate::error::{domain, Result};
use crate::heisenberg::{Chart, Heisenberg, RefinedDirection};
use crate::maximal::Domain;

/// `H_1` minus the vertical fiber `S` over `(0, -gamma_0)` (slope chart) or
/// `(gamma_0, 0)` (vertical chart). Every line of refined direction
/// `omega_0` meets `S`, while each affine direction loses at most `q` of its
/// `q^2` lines, so the result is affine Kakeya but misses `omega_0`.
pub fn example_affine_not_refined(h: &Heisenberg, omega0: &RefinedDirection) -> Result<PointSet> {
    h.require_rank_one()?;
    let f = h.field();
    let q = f.order();
    let (x0, y0) = match omega0.chart().expect("rank one") {
        Chart::Slope { gamma, .. } => (f.zero(), f.neg(gamma)),
        Chart::Vertical { gamma } => (gamma, f.zero()),
    };
    let fiber = (x0.index() * q + y0.index()) * q;
    let mut set = PointSet::full(f, Domain::Heisenberg { n: 1 });
    for t in 0..q {
        set.remove(fiber + t);
    }
    Ok(set)
}

/// The union of `{(x, mx - gamma, m^2 + gamma x)}` over `[1:m:gamma]` and
/// `{(gamma, y, gamma y)}` over `[0:1:gamma]`: one horizontal line per
/// refined direction, but no vertical affine line.
pub fn example_refined_not_affine(h: &Heisenberg) -> Result<PointSet> {
    h.require_rank_one()?;
    let f = h.field();
    if !f.is_odd() || f.q() <= 3 {
        return domain(format!("needs odd q > 3, got q = {}", f.q()));
    }
    let q = f.order();
    let idx = |x: usize, y: usize, t: usize| (x * q + y) * q + t;
    let mut set = PointSet::empty(f, Domain::Heisenberg { n: 1 });
    for m in f.elements() {
        let m2 = f.mul(m, m);
        for gamma in f.elements() {
            for x in f.elements() {
                let y = f.sub(f.mul(m, x), gamma);
                let t = f.add(m2, f.mul(gamma, x));
                set.insert(idx(x.index(), y.index(), t.index()))?;
            }
        }
    }
    for gamma in f.elements() {
        for y in f.elements() {
            let t = f.mul(gamma, y);
            set.insert(idx(gamma.index(), y.index(), t.index()))?;
        }
    }
    Ok(set)
}

/// Sizes of the vertical fibers `{t : (x, y, t) in E}`, indexed by the
/// projected point.
pub fn vertical_fiber_sizes(set: &PointSet) -> Vec<usize> {
    let q = set.field().order();
    let mut sizes = vec![0; set.ambient_size() / q];
    for p in set.indices() {
        sizes[p / q] += 1;
    }
    sizes
}

/// The largest vertical fiber of `E`.
pub fn max_vertical_fiber(set: &PointSet) -> usize {
    vertical_fiber_sizes(set).into_iter().max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{is_affine_kakeya, is_full_refined_kakeya};
    use crate::field::Field;
    use crate::geometry::AffineSpace;

    #[test]
    fn separations_q5() {
        let f = Field::new(5).unwrap();
        let h = Heisenberg::new(&f, 1).unwrap();
        let space = AffineSpace::new(&f, 3).unwrap();

        let omega0 = h.refined_direction_at(0).unwrap();
        let e1 = example_affine_not_refined(&h, &omega0).unwrap();
        assert_eq!(e1.len(), 120);
        assert!(is_affine_kakeya(&space, &e1).unwrap().holds);
        let missing = is_full_refined_kakeya(&h, &e1).unwrap().missing;
        assert!(missing.contains(&0));

        let e2 = example_refined_not_affine(&h).unwrap();
        assert!(is_full_refined_kakeya(&h, &e2).unwrap().holds);
        let vertical = space.directions().len() - 1;
        let miss = is_affine_kakeya(&space, &e2).unwrap().missing;
        assert_eq!(miss, vec![vertical]);
        assert!(max_vertical_fiber(&e2) <= 4);
    }

    #[test]
    fn small_q_rejected() {
        let f = Field::new(3).unwrap();
        let h = Heisenberg::new(&f, 1).unwrap();
        assert!(example_refined_not_affine(&h).is_err());
    }
}
