use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::Heisenberg;

/// Basic counts attached to `H_n(F_q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusCounts {
    pub points: u64,
    pub projective_directions: u64,
    pub refined_directions: u64,
    pub lines: u64,
    pub lines_per_direction: u64,
    pub lines_per_refined_direction: u64,
    pub lines_per_point: u64,
}

impl CensusCounts {
    pub fn as_array(&self) -> [u64; 7] {
        [
            self.points,
            self.projective_directions,
            self.refined_directions,
            self.lines,
            self.lines_per_direction,
            self.lines_per_refined_direction,
            self.lines_per_point,
        ]
    }
}

/// Counts obtained by brute-force enumeration next to their closed forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub q: u32,
    pub n: usize,
    pub enumerated: CensusCounts,
    pub formula: CensusCounts,
}

impl Census {
    pub fn agrees(&self) -> bool {
        self.enumerated == self.formula
    }
}

/// The common value of all counts, or 0 when they differ.
fn uniform(counts: impl IntoIterator<Item = u64>) -> u64 {
    let mut it = counts.into_iter();
    let Some(first) = it.next() else { return 0 };
    if it.all(|c| c == first) {
        first
    } else {
        0
    }
}

impl Heisenberg {
    /// Closed-form counts.
    pub fn census_formula(&self) -> CensusCounts {
        let q = self.q() as u64;
        let n = self.n() as u32;
        let proj = (q.pow(2 * n) - 1) / (q - 1);
        CensusCounts {
            points: q.pow(2 * n + 1),
            projective_directions: proj,
            refined_directions: (q.pow(2 * n + 1) - 1) / (q - 1) - 1,
            lines: q.pow(2 * n) * proj,
            lines_per_direction: q.pow(2 * n),
            lines_per_refined_direction: q.pow(2 * n - 1),
            lines_per_point: proj,
        }
    }

    /// Enumerates every horizontal line as a point set and counts.
    ///
    /// Lines are deduplicated globally by their two smallest points (two
    /// distinct lines share at most one point), so the line count does not
    /// rely on the line-id bookkeeping.
    pub fn census(&self) -> Census {
        let f = self.field();
        let q = f.order();
        let total = self.num_points();

        let points = (0..total)
            .filter(|&i| self.point(i).and_then(|p| self.index_of(&p)).ok() == Some(i))
            .count() as u64;
        let proj = self.enumerate_projective_directions();
        let distinct_proj: HashSet<Vec<_>> = proj.iter().map(|d| d.vector()).collect();
        let refined = self.enumerate_refined_directions();
        let distinct_refined: HashSet<Vec<_>> = refined.iter().map(|d| d.vector()).collect();

        let mut keys: HashSet<(usize, usize)> = HashSet::new();
        let mut per_direction = vec![0u64; proj.len()];
        let mut per_refined: HashMap<usize, u64> = HashMap::new();
        let probe_points = [0, total - 1];
        let mut per_point = [0u64; 2];
        let mut covered = FixedBitSet::with_capacity(total);
        for dir in &proj {
            covered.clear();
            for start in 0..total {
                if covered.contains(start) {
                    continue;
                }
                let p = self.point(start).expect("in range");
                let line = self.horizontal_line(&p, dir).expect("valid direction");
                for &x in &line.points {
                    covered.insert(x);
                }
                let sorted = line.sorted_points();
                keys.insert((sorted[0], sorted[1]));
                per_direction[dir.index] += 1;
                *per_refined
                    .entry(self.refined_direction(&line).index)
                    .or_default() += 1;
                for (k, &probe) in probe_points.iter().enumerate() {
                    if line.contains(probe) {
                        per_point[k] += 1;
                    }
                }
            }
        }
        let refined_counts: Vec<u64> = (0..refined.len())
            .map(|w| per_refined.get(&w).copied().unwrap_or(0))
            .collect();
        debug_assert_eq!(q, f.order());

        Census {
            q: self.q(),
            n: self.n(),
            enumerated: CensusCounts {
                points,
                projective_directions: distinct_proj.len() as u64,
                refined_directions: distinct_refined.len() as u64,
                lines: keys.len() as u64,
                lines_per_direction: uniform(per_direction),
                lines_per_refined_direction: uniform(refined_counts),
                lines_per_point: uniform(per_point),
            },
            formula: self.census_formula(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn census_q3() {
        let g = Heisenberg::new(&Field::new(3).unwrap(), 1).unwrap();
        let c = g.census();
        assert_eq!(c.enumerated.as_array(), [27, 4, 12, 36, 9, 3, 4]);
        assert!(c.agrees());
    }

    #[test]
    fn census_q5_lines() {
        let g = Heisenberg::new(&Field::new(5).unwrap(), 1).unwrap();
        assert_eq!(g.census().enumerated.lines, 150);
    }
}
