//! Enumerates points, directions and lines of `H_n(F_q)` and compares the
//! counts with their closed forms.

use heisenberg_kakeya::{Field, Heisenberg, Result};

fn main() -> Result<()> {
    println!(
        "{:>3} {:>2} {:>10} {:>8} {:>8} {:>10} {:>6}",
        "q", "n", "points", "P-dirs", "D-dirs", "lines", "agree"
    );
    for n in [1, 2] {
        for q in [3, 4, 5, 7] {
            let h = Heisenberg::new(&Field::new(q)?, n)?;
            let c = h.census();
            let e = &c.enumerated;
            println!(
                "{:>3} {:>2} {:>10} {:>8} {:>8} {:>10} {:>6}",
                q,
                n,
                e.points,
                e.projective_directions,
                e.refined_directions,
                e.lines,
                c.agrees()
            );
        }
    }
    Ok(())
}
