//! Writes a grid function and a point set to JSON and reads them back.

use heisenberg_kakeya::constructions::{extremal_set, ExtremalKind};
use heisenberg_kakeya::harness::io::{
    read_grid_function, read_point_set, write_grid_function, write_point_set,
};
use heisenberg_kakeya::harness::random::{gaussian_function, stream_rng};
use heisenberg_kakeya::maximal::Domain;
use heisenberg_kakeya::{Field, Heisenberg, Result};

fn main() -> Result<()> {
    let field = Field::with_modulus(9, &[1, 0, 1])?;
    let h = Heisenberg::new(&field, 1)?;
    let mut rng = stream_rng(0, 0, 9, 0, 0);
    let f = gaussian_function(&field, Domain::Heisenberg { n: 1 }, &mut rng);

    let mut buf = Vec::new();
    write_grid_function(&f, &mut buf)?;
    let g = read_grid_function(buf.as_slice())?;
    println!(
        "grid function: {} bytes, identical after reload: {}",
        buf.len(),
        g == f
    );

    let bush = extremal_set(&h, ExtremalKind::Bush)?;
    let mut buf = Vec::new();
    write_point_set(&bush, &mut buf)?;
    let back = read_point_set(buf.as_slice())?;
    println!(
        "bush: {} points, identical after reload: {}",
        back.len(),
        back == bush
    );
    Ok(())
}
