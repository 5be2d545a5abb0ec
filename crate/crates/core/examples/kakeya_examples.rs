//! Builds the two sets separating affine Kakeya sets from horizontal Kakeya
//! sets with all refined directions, and the paraboloid on which horizontal
//! lines meet in at most two points.

use heisenberg_kakeya::constructions::{
    anisotropic_eta, example_affine_not_refined, example_refined_not_affine, extremal_function,
    is_affine_kakeya, is_full_refined_kakeya, max_vertical_fiber, ExtremalKind,
};
use heisenberg_kakeya::geometry::AffineSpace;
use heisenberg_kakeya::maximal::heis_max_op;
use heisenberg_kakeya::{Field, Heisenberg, Result};

fn main() -> Result<()> {
    for q in [5, 7, 9, 11] {
        let field = Field::new(q)?;
        let h = Heisenberg::new(&field, 1)?;
        let space = AffineSpace::new(&field, 3)?;

        let omega0 = h.refined_direction_at(0)?;
        let e1 = example_affine_not_refined(&h, &omega0)?;
        let e1_refined = is_full_refined_kakeya(&h, &e1)?;
        println!(
            "q = {q:>2}  first set: {} points, affine Kakeya {}, all refined directions {} (missing {})",
            e1.len(),
            is_affine_kakeya(&space, &e1)?.holds,
            e1_refined.holds,
            e1_refined.missing.len()
        );

        let e2 = example_refined_not_affine(&h)?;
        let e2_affine = is_affine_kakeya(&space, &e2)?;
        println!(
            "        second set: {} points, all refined directions {}, affine Kakeya {} (missing {:?}), max fiber {} <= {}",
            e2.len(),
            is_full_refined_kakeya(&h, &e2)?.holds,
            e2_affine.holds,
            e2_affine.missing,
            max_vertical_fiber(&e2),
            (q + 3) / 2
        );

        let eta = anisotropic_eta(&field)?;
        let par = extremal_function(&h, ExtremalKind::Paraboloid { eta })?;
        let top = heis_max_op(&h, &par)?.into_iter().fold(0.0, f64::max);
        println!("        paraboloid t = x^2 + {eta} y^2: largest horizontal line count {top}");
    }
    Ok(())
}
