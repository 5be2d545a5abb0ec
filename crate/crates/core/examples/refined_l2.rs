//! Stress-tests the refined-direction `L^2` estimate
//! `||M F||_2 <= 5 q^{1/2} ||F||_2` with random complex inputs and shows
//! that the delta mass nearly attains the growth rate.

use heisenberg_kakeya::harness::random::{gaussian_function, stream_rng};
use heisenberg_kakeya::maximal::{lp_norm, refined_max_op, Domain, ExtendedExponent, GridFunction};
use heisenberg_kakeya::{Field, Heisenberg, Result};

fn main() -> Result<()> {
    let two = ExtendedExponent::int(2);
    for q in [3, 5, 7, 11] {
        let field = Field::new(q)?;
        let h = Heisenberg::new(&field, 1)?;
        let dom = Domain::Heisenberg { n: 1 };
        let scale = (q as f64).sqrt();
        let mut worst: f64 = 0.0;
        for trial in 0..50 {
            let mut rng = stream_rng(1, 0, q, trial, 0);
            let f = gaussian_function(&field, dom, &mut rng);
            let ratio = lp_norm(&refined_max_op(&h, &f)?, two) / (scale * f.norm(two));
            worst = worst.max(ratio);
        }
        let delta = GridFunction::delta(&field, dom, 0)?;
        let sharp = lp_norm(&refined_max_op(&h, &delta)?, two);
        println!(
            "q = {q:>2}: worst random ratio {worst:.4} (bound 5), delta gives {sharp:.4} = sqrt(q + 1) >= sqrt(q) = {scale:.4}"
        );
    }
    Ok(())
}
