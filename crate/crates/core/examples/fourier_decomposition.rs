//! Applies the Fourier transform in the central variable to a random
//! function and checks Plancherel, inversion, the frequency decomposition of
//! a refined linearization and the counting of the quadratic fibers.

use heisenberg_kakeya::fourier::{
    central_fourier, decomposition_error, inverse_central_fourier, key_counting_check,
    quadratic_fiber_count,
};
use heisenberg_kakeya::harness::random::{gaussian_function, stream_rng};
use heisenberg_kakeya::maximal::{linearize, Chooser, Domain, ExtendedExponent, Geometry};
use heisenberg_kakeya::{Field, Heisenberg, Result};

fn main() -> Result<()> {
    let field = Field::new(9)?;
    let h = Heisenberg::new(&field, 1)?;
    let mut rng = stream_rng(3, 0, 9, 0, 0);
    let f = gaussian_function(&field, Domain::Heisenberg { n: 1 }, &mut rng);

    let table = central_fourier(&h, &f)?;
    let energy = f.norm(ExtendedExponent::int(2)).powi(2);
    println!(
        "Plancherel: q |f|^2 = {:.6}, transform energy = {:.6}",
        9.0 * energy,
        table.energy()
    );
    let back = inverse_central_fourier(&h, &table)?;
    let err = back
        .values()
        .iter()
        .zip(f.values())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    println!("inversion error {err:.2e}");

    let family = linearize(Geometry::Refined(&h), Chooser::Random(11))?;
    println!(
        "decomposition error {:.2e}",
        decomposition_error(&h, &f, &family)?
    );

    for xi in field.nonzero().take(3) {
        let (a, b) = key_counting_check(&h, &table, xi)?;
        println!("xi = {xi}: counting bounds hold: {} {}", a.holds, b.holds);
    }
    let worst = field
        .nonzero()
        .flat_map(|xi| field.elements().map(move |rho| (xi, rho)))
        .map(|(xi, rho)| {
            quadratic_fiber_count(&field, xi, rho).map(|c| c.into_iter().max().unwrap_or(0))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(0);
    println!("largest quadratic fiber over all (xi, rho): {worst}");
    Ok(())
}
