//! The three maximal operators, evaluated by bucketing.
//!
//! For a fixed direction every point lies on exactly one line, so a single
//! pass over the support that adds `|F(p)|` into the bucket of its line gives
//! all line sums of that direction at once. Directions are processed in
//! parallel.

use std::ops::AddAssign;

use num_complex::Complex64;
use rayon::prelude::*;

use super::exponent::ExtendedExponent;
use super::grid::{Domain, GridFunction};
use super::norms::lp_norm;
use crate::error::Result;
use crate::geometry::{affine_line_id, AffineSpace};
use crate::heisenberg::Heisenberg;

/// Operator values together with the id of a maximizing line per index
/// (the smallest id among ties).
#[derive(Clone, Debug, PartialEq)]
pub struct MaxValues<T> {
    pub values: Vec<T>,
    pub argmax: Vec<usize>,
}

fn argmax<T: Copy + PartialOrd>(buckets: &[T]) -> (T, usize) {
    let mut best = (buckets[0], 0);
    for (i, &b) in buckets.iter().enumerate().skip(1) {
        if b > best.0 {
            best = (b, i);
        }
    }
    best
}

/// Runs `reduce(dir, bucket_sums)` for every direction.
fn bucket_reduce<T, R>(
    num_dirs: usize,
    num_buckets: usize,
    entries: &[(usize, T)],
    line_id: impl Fn(usize, usize) -> usize + Sync,
    reduce: impl Fn(usize, &[T]) -> R + Sync,
) -> Vec<R>
where
    T: Copy + Default + AddAssign + Send + Sync,
    R: Send,
{
    (0..num_dirs)
        .into_par_iter()
        .map_init(
            || vec![T::default(); num_buckets],
            |buf, dir| {
                buf.fill(T::default());
                for &(p, w) in entries {
                    buf[line_id(dir, p)] += w;
                }
                reduce(dir, buf)
            },
        )
        .collect()
}

fn unzip<T>(pairs: Vec<(T, usize)>) -> MaxValues<T> {
    let (values, argmax) = pairs.into_iter().unzip();
    MaxValues { values, argmax }
}

fn weighted_support(f: &GridFunction) -> Vec<(usize, f64)> {
    f.values()
        .iter()
        .enumerate()
        .filter(|(_, z)| **z != Complex64::new(0.0, 0.0))
        .map(|(i, z)| (i, z.norm()))
        .collect()
}

fn unit_support(support: &[usize]) -> Vec<(usize, u64)> {
    support.iter().map(|&i| (i, 1u64)).collect()
}

fn affine_generic<T>(space: &AffineSpace, entries: &[(usize, T)]) -> MaxValues<T>
where
    T: Copy + Default + AddAssign + PartialOrd + Send + Sync,
{
    let dirs = space.directions();
    let q = space.field().order();
    let d = space.dim();
    let coords = crate::geometry::coordinate_table(q, d);
    let field = space.field();
    unzip(bucket_reduce(
        dirs.len(),
        space.lines_per_direction(),
        entries,
        |dir, p| {
            affine_line_id(
                field,
                dirs.rep(dir),
                dirs.pivot(dir),
                &coords[p * d..(p + 1) * d],
            )
        },
        |_, buckets| argmax(buckets),
    ))
}

/// `M_d f([v])`: the largest line sum of `|f|` over the `q^{d-1}` lines of
/// each direction of `F_q^d`.
pub fn affine_max_op(space: &AffineSpace, f: &GridFunction) -> Result<Vec<f64>> {
    Ok(affine_max_op_argmax(space, f)?.values)
}

pub fn affine_max_op_argmax(space: &AffineSpace, f: &GridFunction) -> Result<MaxValues<f64>> {
    f.expect_affine(space.field(), space.dim())?;
    Ok(affine_generic(space, &weighted_support(f)))
}

/// Exact line counts `max_l |S cap l|` for a point set `S` of `F_q^d`.
pub fn affine_max_counts(space: &AffineSpace, support: &[usize]) -> MaxValues<u64> {
    affine_generic(space, &unit_support(support))
}

fn heis_generic<T, R>(
    h: &Heisenberg,
    entries: &[(usize, T)],
    reduce: impl Fn(usize, &[T]) -> R + Sync,
) -> Vec<R>
where
    T: Copy + Default + AddAssign + Send + Sync,
    R: Send,
{
    let dim = h.dim();
    let coords = h.coordinate_table();
    bucket_reduce(
        h.directions().len(),
        h.lines_per_direction(),
        entries,
        |dir, p| h.line_id_at(dir, &coords[p * dim..(p + 1) * dim]),
        reduce,
    )
}

/// `M_{H_n} F([v])`: the largest sum of `|F|` along a horizontal line of
/// direction `[v]`, for every `[v]` in `P^{2n-1}`.
pub fn heis_max_op(h: &Heisenberg, f: &GridFunction) -> Result<Vec<f64>> {
    Ok(heis_max_op_argmax(h, f)?.values)
}

pub fn heis_max_op_argmax(h: &Heisenberg, f: &GridFunction) -> Result<MaxValues<f64>> {
    f.expect_heisenberg(h.field(), h.n())?;
    Ok(unzip(heis_generic(h, &weighted_support(f), |_, b| {
        argmax(b)
    })))
}

/// Exact horizontal-line counts `max_L |S cap L|` per direction.
pub fn heis_max_counts(h: &Heisenberg, support: &[usize]) -> MaxValues<u64> {
    unzip(heis_generic(h, &unit_support(support), |_, b| argmax(b)))
}

/// For each direction, the t-slope of the line with a given id, indexed by
/// the spatial part `id / q`.
fn slope_tables(h: &Heisenberg) -> Vec<Vec<usize>> {
    let f = h.field();
    let q = f.order();
    let ps = h.directions();
    let two_n = 2 * h.n();
    (0..ps.len())
        .map(|dir| {
            (0..q.pow(two_n as u32 - 1))
                .map(|aff| {
                    let mut z = crate::geometry::decode(q, aff, two_n - 1);
                    z.insert(ps.pivot(dir), f.zero());
                    z.push(f.zero());
                    h.slope_at(ps.rep(dir), &z).index()
                })
                .collect()
        })
        .collect()
}

fn refined_generic<T>(h: &Heisenberg, entries: &[(usize, T)]) -> MaxValues<T>
where
    T: Copy + Default + AddAssign + PartialOrd + Send + Sync,
{
    let q = h.field().order();
    let slopes = slope_tables(h);
    let per_dir = heis_generic(h, entries, |dir, buckets| {
        let mut best: Vec<Option<(T, usize)>> = vec![None; q];
        for (id, &b) in buckets.iter().enumerate() {
            let c = slopes[dir][id / q];
            match best[c] {
                Some((v, _)) if v >= b => {}
                _ => best[c] = Some((b, id)),
            }
        }
        best.into_iter()
            .map(|x| x.expect("every t-slope occurs"))
            .collect::<Vec<_>>()
    });
    unzip(per_dir.into_iter().flatten().collect())
}

/// `M^rd F(omega)`: the largest sum of `|F|` along a horizontal line with
/// refined direction `omega`, for every `omega` in `D_n` (index order).
///
/// `argmax` holds the full line id within the spatial direction; for
/// `n = 1` its residue mod `q` is the normal-form offset `tau`.
pub fn refined_max_op(h: &Heisenberg, f: &GridFunction) -> Result<Vec<f64>> {
    Ok(refined_max_op_argmax(h, f)?.values)
}

pub fn refined_max_op_argmax(h: &Heisenberg, f: &GridFunction) -> Result<MaxValues<f64>> {
    f.expect_heisenberg(h.field(), h.n())?;
    Ok(refined_generic(h, &weighted_support(f)))
}

pub fn refined_max_counts(h: &Heisenberg, support: &[usize]) -> MaxValues<u64> {
    refined_generic(h, &unit_support(support))
}

/// `G(x, y) = ||F(x, y, .)||_u`, a function on `F_q^{2n}` with
/// `||G||_u = ||F||_u`.
pub fn project_aggregate(
    h: &Heisenberg,
    f: &GridFunction,
    u: ExtendedExponent,
) -> Result<GridFunction> {
    f.expect_heisenberg(h.field(), h.n())?;
    let mags = f.magnitudes();
    let q = h.field().order();
    let g: Vec<f64> = mags
        .chunks_exact(q)
        .map(|fiber| lp_norm(fiber, u))
        .collect();
    GridFunction::from_real(h.field(), Domain::Affine { d: 2 * h.n() }, &g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn delta_and_constant() {
        let f = Field::new(5).unwrap();
        let h = Heisenberg::new(&f, 1).unwrap();
        let delta = GridFunction::delta(&f, Domain::Heisenberg { n: 1 }, 0).unwrap();
        assert!(heis_max_op(&h, &delta).unwrap().iter().all(|&v| v == 1.0));
        let rd = refined_max_op(&h, &delta).unwrap();
        for (i, &v) in rd.iter().enumerate() {
            assert_eq!(v, if i % 5 == 0 { 1.0 } else { 0.0 });
        }
        let one = GridFunction::constant(&f, Domain::Heisenberg { n: 1 }, Complex64::new(1.0, 0.0));
        assert!(refined_max_op(&h, &one).unwrap().iter().all(|&v| v == 5.0));

        let plane = AffineSpace::new(&f, 2).unwrap();
        let pd = GridFunction::delta(&f, Domain::Affine { d: 2 }, 7).unwrap();
        assert!(affine_max_op(&plane, &pd)
            .unwrap()
            .iter()
            .all(|&v| v == 1.0));
        let pc = GridFunction::constant(&f, Domain::Affine { d: 2 }, Complex64::new(1.0, 0.0));
        assert!(affine_max_op(&plane, &pc)
            .unwrap()
            .iter()
            .all(|&v| v == 5.0));
    }

    #[test]
    fn refined_refines_heisenberg() {
        let f = Field::new(3).unwrap();
        let h = Heisenberg::new(&f, 1).unwrap();
        let vals: Vec<f64> = (0..27).map(|i| ((i * 7) % 5) as f64).collect();
        let g = GridFunction::from_real(&f, Domain::Heisenberg { n: 1 }, &vals).unwrap();
        let m = heis_max_op(&h, &g).unwrap();
        let rd = refined_max_op(&h, &g).unwrap();
        for (dir, &v) in m.iter().enumerate() {
            let best = rd[dir * 3..dir * 3 + 3].iter().cloned().fold(0.0, f64::max);
            assert_eq!(v, best);
        }
    }
}
