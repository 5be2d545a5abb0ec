//! Splits the refined directions of a random horizontal Kakeya-type set by
//! whether a horizontal line of that direction lies inside the set, and
//! groups the others into slices by the `mu` value of an affine line.

use heisenberg_kakeya::constructions::{omega_partition, PointSet};
use heisenberg_kakeya::harness::random::stream_rng;
use heisenberg_kakeya::maximal::Domain;
use heisenberg_kakeya::{Field, Heisenberg, Result};
use rand::Rng;

fn main() -> Result<()> {
    let field = Field::new(7)?;
    let h = Heisenberg::new(&field, 1)?;
    let mut rng = stream_rng(5, 0, 7, 0, 0);
    let mut set = PointSet::empty(&field, Domain::Heisenberg { n: 1 });
    for w in 0..h.num_refined_directions() {
        if rng.gen_bool(0.5) {
            let tau = field.elem(rng.gen_range(0..field.order()));
            for p in h.refined_line(&h.refined_direction_at(w)?, tau)?.points {
                set.insert(p)?;
            }
        }
    }
    for p in 0..h.num_points() {
        if rng.gen_bool(0.3) {
            set.insert(p)?;
        }
    }

    let report = omega_partition(&h, &set)?;
    println!("|E| = {}, m = {}", report.set_size, report.m);
    println!(
        "directions with a contained horizontal line: {}",
        report.omega1.len()
    );
    println!(
        "remaining directions: {}, without any contained line: {}",
        report.omega2.len(),
        report.flagged.len()
    );
    for (k, dirs) in &report.slices {
        println!("  slice k = {k}: {} directions", dirs.len());
    }
    Ok(())
}
