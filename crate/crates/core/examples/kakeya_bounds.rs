//! Checks the size bound `|E| >= m^2 |Omega| / (25 q)` and the moment
//! inequality on planted-line sets and structured sets.

use heisenberg_kakeya::constructions::{kakeya_bound_report, moment_report, PointSet};
use heisenberg_kakeya::harness::random::stream_rng;
use heisenberg_kakeya::maximal::{Domain, ExtendedExponent};
use heisenberg_kakeya::{Field, Heisenberg, Result};
use rand::Rng;

fn main() -> Result<()> {
    let two = ExtendedExponent::int(2);
    for q in [5, 7, 9] {
        let field = Field::new(q)?;
        let h = Heisenberg::new(&field, 1)?;
        let mut rng = stream_rng(9, 0, q, 0, 0);
        let mut set = PointSet::empty(&field, Domain::Heisenberg { n: 1 });
        let mut omega = Vec::new();
        for w in 0..h.num_refined_directions() {
            if rng.gen_bool(0.3) {
                omega.push(w);
                let tau = field.elem(rng.gen_range(0..field.order()));
                for p in h.refined_line(&h.refined_direction_at(w)?, tau)?.points {
                    set.insert(p)?;
                }
            }
        }
        let r = kakeya_bound_report(&h, &set, &omega, u64::from(q), two, two)?;
        println!(
            "q = {q}: {} planted lines, |E| = {} >= {:.2} (constant {}): {}",
            omega.len(),
            set.len(),
            r.report.lhs,
            r.constant,
            r.report.holds
        );
        for s in [2, 3] {
            let m = moment_report(&h, &set, ExtendedExponent::int(s))?;
            println!(
                "       moment s = {s}: {:.1} <= {:.1}: {}",
                m.report.lhs, m.report.rhs, m.report.holds
            );
        }
    }
    Ok(())
}
