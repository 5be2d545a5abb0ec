//! Draws random planar line families and prints the spectrum of `T T*`,
//! which is `{2q, q - 1 (q times)}` for every family.

use heisenberg_kakeya::geometry::AffineSpace;
use heisenberg_kakeya::maximal::{l2_operator_norm, linearize, ttstar_spectrum, Chooser, Geometry};
use heisenberg_kakeya::{Field, Result};

fn main() -> Result<()> {
    for q in [3, 5, 7, 9] {
        let plane = AffineSpace::new(&Field::new(q)?, 2)?;
        let family = linearize(Geometry::Affine(&plane), Chooser::Random(u64::from(q)))?;
        let mut spectrum = ttstar_spectrum(&family)?;
        spectrum.sort_by(|a, b| b.total_cmp(a));
        let rest = &spectrum[1..];
        let spread = rest
            .iter()
            .map(|x| (x - (q as f64 - 1.0)).abs())
            .fold(0.0, f64::max);
        println!(
            "q = {q:>2}: top eigenvalue {:.10}, remaining {} within {spread:.1e} of {}, norm {:.10} vs sqrt(2q) {:.10}",
            spectrum[0],
            rest.len(),
            q - 1,
            l2_operator_norm(&family)?,
            (2.0 * q as f64).sqrt()
        );
    }
    Ok(())
}
