//! Evaluates the planar, horizontal and refined-direction maximal operators
//! on a few test functions and prints their extreme values.

use heisenberg_kakeya::constructions::{extremal_function, ExtremalKind};
use heisenberg_kakeya::geometry::AffineSpace;
use heisenberg_kakeya::maximal::{
    affine_max_op, heis_max_op, project_aggregate, refined_max_op, ExtendedExponent,
};
use heisenberg_kakeya::{Field, Heisenberg, Result};

fn range(values: &[f64]) -> (f64, f64) {
    values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        })
}

fn main() -> Result<()> {
    let field = Field::new(7)?;
    let h = Heisenberg::new(&field, 1)?;
    let plane = AffineSpace::new(&field, 2)?;
    for kind in [
        ExtremalKind::PointMass,
        ExtremalKind::SingleLine,
        ExtremalKind::Bush,
        ExtremalKind::TwoLinesBlocking,
        ExtremalKind::Constant,
    ] {
        let f = extremal_function(&h, kind)?;
        let g = project_aggregate(&h, &f, ExtendedExponent::int(1))?;
        let (plo, phi) = range(&affine_max_op(&plane, &g)?);
        let (hlo, hhi) = range(&heis_max_op(&h, &f)?);
        let (rlo, rhi) = range(&refined_max_op(&h, &f)?);
        println!(
            "{:<20} planar [{plo}, {phi}]  horizontal [{hlo}, {hhi}]  refined [{rlo}, {rhi}]",
            kind.name()
        );
    }
    Ok(())
}
