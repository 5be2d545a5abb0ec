//! JSON files for grid functions, point sets and Fourier tables.
//!
//! A grid function is stored as
//!
//! ```text
//! {"domain":"heisenberg","n":1,"q":5,"modulus":null,"values":[[re,im],...]}
//! ```
//!
//! (`"domain":"affine","d":2` for functions on `F_q^d`), and a point set
//! uses the same header with `"points":[i,...]` in increasing order.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constructions::PointSet;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::fourier::{central_fourier, u_tables, CentralFourierTable, UTable};
use crate::heisenberg::Heisenberg;
use crate::maximal::{Domain, GridFunction};

#[derive(Serialize, Deserialize)]
struct GridFile {
    #[serde(flatten)]
    domain: Domain,
    q: u32,
    modulus: Option<Vec<u32>>,
    values: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct PointSetFile {
    #[serde(flatten)]
    domain: Domain,
    q: u32,
    modulus: Option<Vec<u32>>,
    points: Vec<usize>,
}

fn field_of(q: u32, modulus: Option<&[u32]>) -> Result<Field> {
    Field::from_spec(q, modulus)
}

pub fn write_grid_function(f: &GridFunction, w: impl Write) -> Result<()> {
    let file = GridFile {
        domain: f.domain(),
        q: f.q(),
        modulus: f.field().modulus().map(<[u32]>::to_vec),
        values: f.values().iter().map(|z| [z.re, z.im]).collect(),
    };
    serde_json::to_writer(w, &file)?;
    Ok(())
}

pub fn read_grid_function(r: impl Read) -> Result<GridFunction> {
    let file: GridFile = serde_json::from_reader(r)?;
    let field = field_of(file.q, file.modulus.as_deref())?;
    let values = file
        .values
        .iter()
        .map(|&[re, im]| Complex64::new(re, im))
        .collect();
    GridFunction::from_values(&field, file.domain, values)
}

pub fn write_point_set(s: &PointSet, w: impl Write) -> Result<()> {
    let file = PointSetFile {
        domain: s.domain(),
        q: s.field().q(),
        modulus: s.field().modulus().map(<[u32]>::to_vec),
        points: s.indices(),
    };
    serde_json::to_writer(w, &file)?;
    Ok(())
}

pub fn read_point_set(r: impl Read) -> Result<PointSet> {
    let file: PointSetFile = serde_json::from_reader(r)?;
    let field = field_of(file.q, file.modulus.as_deref())?;
    if file.points.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Malformed(
            "point indices must be strictly increasing".into(),
        ));
    }
    PointSet::from_indices(&field, file.domain, file.points)
}

pub fn save_grid_function(f: &GridFunction, path: impl AsRef<Path>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_grid_function(f, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn load_grid_function(path: impl AsRef<Path>) -> Result<GridFunction> {
    read_grid_function(BufReader::new(File::open(path)?))
}

pub fn save_point_set(s: &PointSet, path: impl AsRef<Path>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_point_set(s, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn load_point_set(path: impl AsRef<Path>) -> Result<PointSet> {
    read_point_set(BufReader::new(File::open(path)?))
}

/// Loads a grid function and checks that it lives on `domain` over `field`.
pub fn load_grid_function_on(
    path: impl AsRef<Path>,
    field: &Field,
    domain: Domain,
) -> Result<GridFunction> {
    let f = load_grid_function(path)?;
    if f.field() != field || f.domain() != domain {
        return Err(Error::Domain(format!(
            "file holds {:?} over F_{} (modulus {:?}), expected {domain:?} over F_{} (modulus {:?})",
            f.domain(),
            f.q(),
            f.field().modulus(),
            field.q(),
            field.modulus()
        )));
    }
    Ok(f)
}

/// The central Fourier transform of `f` and all its tables `U_xi`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FourierDump {
    pub table: CentralFourierTable,
    pub u_tables: Vec<UTable>,
}

pub fn fourier_dump(h: &Heisenberg, f: &GridFunction) -> Result<FourierDump> {
    let table = central_fourier(h, f)?;
    let u_tables = h
        .field()
        .nonzero()
        .map(|xi| u_tables(h, &table, xi))
        .collect::<Result<Vec<_>>>()?;
    Ok(FourierDump { table, u_tables })
}

pub fn save_fourier_dump(dump: &FourierDump, path: impl AsRef<Path>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer(&mut w, dump)?;
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_roundtrip_in_memory() {
        let f = Field::new(9).unwrap();
        let g = GridFunction::from_values(
            &f,
            Domain::Affine { d: 2 },
            (0..81)
                .map(|i| Complex64::new(i as f64 / 7.0, -0.1 * i as f64))
                .collect(),
        )
        .unwrap();
        let mut buf = Vec::new();
        write_grid_function(&g, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(
            text.starts_with(r#"{"domain":"affine","d":2,"q":9,"modulus":[1,0,1]"#),
            "{text}"
        );
        assert_eq!(read_grid_function(buf.as_slice()).unwrap(), g);
    }

    #[test]
    fn rejects_wrong_count() {
        let text = r#"{"domain":"heisenberg","n":1,"q":3,"modulus":null,"values":[[1,0]]}"#;
        assert!(matches!(
            read_grid_function(text.as_bytes()),
            Err(Error::Domain(_))
        ));
        let bad = r#"{"domain":"heisenberg","n":1,"q":3"#;
        assert!(matches!(
            read_grid_function(bad.as_bytes()),
            Err(Error::Json(_))
        ));
    }
}
