use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::grid::{Domain, GridFunction};
use super::operators::{affine_max_op_argmax, heis_max_op_argmax, refined_max_op_argmax};
use crate::error::{domain, Error, Result};
use crate::geometry::AffineSpace;
use crate::heisenberg::Heisenberg;

/// The index set of a linearization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FamilyKind {
    /// One affine line per direction of `P^{d-1}`.
    Affine { d: usize },
    /// One horizontal line per direction of `P^{2n-1}`.
    Heisenberg { n: usize },
    /// One horizontal line per refined direction of `D_1`.
    Refined,
}

/// The geometry a family is drawn from.
#[derive(Clone, Copy, Debug)]
pub enum Geometry<'a> {
    Affine(&'a AffineSpace),
    Heisenberg(&'a Heisenberg),
    Refined(&'a Heisenberg),
}

impl Geometry<'_> {
    pub fn kind(&self) -> FamilyKind {
        match self {
            Geometry::Affine(s) => FamilyKind::Affine { d: s.dim() },
            Geometry::Heisenberg(h) => FamilyKind::Heisenberg { n: h.n() },
            Geometry::Refined(_) => FamilyKind::Refined,
        }
    }

    /// Number of indices (directions).
    pub fn num_indices(&self) -> usize {
        match self {
            Geometry::Affine(s) => s.directions().len(),
            Geometry::Heisenberg(h) => h.directions().len(),
            Geometry::Refined(h) => h.num_refined_directions(),
        }
    }

    /// Number of candidate lines per index.
    pub fn lines_per_index(&self) -> usize {
        match self {
            Geometry::Affine(s) => s.lines_per_direction(),
            Geometry::Heisenberg(h) => h.lines_per_direction(),
            Geometry::Refined(h) => h.field().order(),
        }
    }

    fn num_points(&self) -> usize {
        match self {
            Geometry::Affine(s) => s.num_points(),
            Geometry::Heisenberg(h) | Geometry::Refined(h) => h.num_points(),
        }
    }

    fn q(&self) -> u32 {
        match self {
            Geometry::Affine(s) => s.field().q(),
            Geometry::Heisenberg(h) | Geometry::Refined(h) => h.q(),
        }
    }

    fn line_points(&self, index: usize, id: usize) -> Result<Vec<usize>> {
        match self {
            Geometry::Affine(s) => Ok(s.line(index, id)?.points),
            Geometry::Heisenberg(h) => Ok(h.line(index, id)?.points),
            Geometry::Refined(h) => {
                let omega = h.refined_direction_at(index)?;
                Ok(h.refined_line(&omega, h.field().elem(id))?.points)
            }
        }
    }
}

/// How to pick one line per index.
#[derive(Clone, Debug)]
pub enum Chooser<'a> {
    /// A line attaining the maximal operator of this function (smallest id
    /// among ties), so that `T|F|` equals the maximal operator of `F`.
    Maximizing(&'a GridFunction),
    /// Explicit line ids, one per index.
    Explicit(Vec<usize>),
    /// Uniformly random ids from a seeded generator.
    Random(u64),
    /// Id 0 everywhere: the line through the origin for affine and
    /// horizontal families, and the offset `tau = 0` for refined ones.
    Zero,
}

/// A linearization `T`: one chosen line per index, `Tf(i) = sum_{p in L_i} f(p)`.
///
/// For affine and horizontal families `ids` are line ids within a direction;
/// for refined families they are the normal-form offsets `tau`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineFamily {
    pub kind: FamilyKind,
    pub q: u32,
    pub ids: Vec<usize>,
    pub lines: Vec<Vec<usize>>,
    pub num_points: usize,
}

/// Builds a linearization from `geometry` with the given chooser.
pub fn linearize(geometry: Geometry<'_>, chooser: Chooser<'_>) -> Result<LineFamily> {
    if let Geometry::Refined(h) = geometry {
        h.require_rank_one()?;
    }
    let count = geometry.num_indices();
    let per = geometry.lines_per_index();
    let ids = match chooser {
        Chooser::Maximizing(f) => match geometry {
            Geometry::Affine(s) => affine_max_op_argmax(s, f)?.argmax,
            Geometry::Heisenberg(h) => heis_max_op_argmax(h, f)?.argmax,
            Geometry::Refined(h) => {
                let q = h.field().order();
                refined_max_op_argmax(h, f)?
                    .argmax
                    .into_iter()
                    .map(|id| id % q)
                    .collect()
            }
        },
        Chooser::Explicit(ids) => {
            if ids.len() != count {
                return domain(format!("expected {count} line ids, got {}", ids.len()));
            }
            if let Some(bad) = ids.iter().find(|&&id| id >= per) {
                return domain(format!("line id {bad} out of range 0..{per}"));
            }
            ids
        }
        Chooser::Random(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count).map(|_| rng.gen_range(0..per)).collect()
        }
        Chooser::Zero => vec![0; count],
    };
    let lines = ids
        .iter()
        .enumerate()
        .map(|(i, &id)| geometry.line_points(i, id))
        .collect::<Result<Vec<_>>>()?;
    Ok(LineFamily {
        kind: geometry.kind(),
        q: geometry.q(),
        ids,
        lines,
        num_points: geometry.num_points(),
    })
}

impl LineFamily {
    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    fn check_input(&self, f: &GridFunction) -> Result<()> {
        let ok = f.q() == self.q
            && f.len() == self.num_points
            && match (self.kind, f.domain()) {
                (FamilyKind::Affine { d }, Domain::Affine { d: e }) => d == e,
                (FamilyKind::Heisenberg { n }, Domain::Heisenberg { n: m }) => n == m,
                (FamilyKind::Refined, Domain::Heisenberg { n: 1 }) => true,
                _ => false,
            };
        if ok {
            Ok(())
        } else {
            domain(format!(
                "{:?} family over F_{} cannot act on {:?} over F_{}",
                self.kind,
                self.q,
                f.domain(),
                f.q()
            ))
        }
    }

    /// The 0/1 matrix of `T`, rows indexed by the index set, columns by points.
    pub fn matrix(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.len(), self.num_points);
        for (i, line) in self.lines.iter().enumerate() {
            for &p in line {
                m[(i, p)] = 1.0;
            }
        }
        m
    }

    /// The Gram matrix `T T*`, whose entries are the exact intersection
    /// counts `|L_i cap L_j|`.
    pub fn gram(&self) -> DMatrix<f64> {
        let sorted: Vec<Vec<usize>> = self
            .lines
            .iter()
            .map(|l| {
                let mut l = l.clone();
                l.sort_unstable();
                l
            })
            .collect();
        let k = sorted.len();
        let mut g = DMatrix::zeros(k, k);
        for i in 0..k {
            for j in i..k {
                let c = intersection_size(&sorted[i], &sorted[j]) as f64;
                g[(i, j)] = c;
                g[(j, i)] = c;
            }
        }
        g
    }
}

fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// `Tf` with exact line sums (complex values allowed).
pub fn apply_linearized(family: &LineFamily, f: &GridFunction) -> Result<Vec<Complex64>> {
    family.check_input(f)?;
    let v = f.values();
    Ok(family
        .lines
        .iter()
        .map(|line| line.iter().map(|&p| v[p]).sum())
        .collect())
}

/// `T* g`: spreads each `g(i)` over the points of `L_i`.
pub fn apply_adjoint(family: &LineFamily, g: &[Complex64]) -> Result<Vec<Complex64>> {
    if g.len() != family.len() {
        return domain(format!("expected {} values, got {}", family.len(), g.len()));
    }
    let mut out = vec![Complex64::new(0.0, 0.0); family.num_points];
    for (line, &w) in family.lines.iter().zip(g) {
        for &p in line {
            out[p] += w;
        }
    }
    Ok(out)
}

/// Eigenvalues of `T T*`, in decreasing order.
pub fn ttstar_spectrum(family: &LineFamily) -> Result<Vec<f64>> {
    if family.is_empty() {
        return Err(Error::Domain("empty family".into()));
    }
    let eig = SymmetricEigen::new(family.gram());
    let mut ev: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    Ok(ev)
}

/// `||T||_{l^2 -> l^2}`, the square root of the top eigenvalue of `T T*`.
pub fn l2_operator_norm(family: &LineFamily) -> Result<f64> {
    Ok(ttstar_spectrum(family)?[0].max(0.0).sqrt())
}
