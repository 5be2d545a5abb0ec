use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::PointSet;
use crate::error::{domain, Result};
use crate::field::{Field, FieldElement};
use crate::heisenberg::Heisenberg;
use crate::maximal::{Domain, GridFunction};

/// The test functions that force each term of the sharp exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ExtremalKind {
    /// The delta mass at the identity.
    PointMass,
    /// The horizontal line through the identity in the first direction.
    SingleLine,
    /// All horizontal lines through the identity (`q^{2n}` points).
    Bush,
    /// `{(x, 0, 0)} cup {(0, y, 0)}` in `H_1` (`2q - 1` points).
    TwoLinesBlocking,
    /// `F = 1` everywhere.
    Constant,
    /// `{t = x^2 + eta y^2}` in `H_1` for odd `q`, with `-eta` a nonsquare
    /// so that `x^2 + eta y^2` vanishes only at the origin.
    Paraboloid { eta: FieldElement },
}

impl ExtremalKind {
    pub fn name(&self) -> &'static str {
        match self {
            ExtremalKind::PointMass => "point-mass",
            ExtremalKind::SingleLine => "single-line",
            ExtremalKind::Bush => "bush",
            ExtremalKind::TwoLinesBlocking => "two-lines-blocking",
            ExtremalKind::Constant => "constant",
            ExtremalKind::Paraboloid { .. } => "paraboloid",
        }
    }
}

/// The support of the extremal test function of the given kind.
pub fn extremal_set(h: &Heisenberg, kind: ExtremalKind) -> Result<PointSet> {
    let f = h.field();
    let dom = Domain::Heisenberg { n: h.n() };
    let origin = h.identity();
    match kind {
        ExtremalKind::PointMass => PointSet::from_indices(f, dom, [0]),
        ExtremalKind::SingleLine => {
            let dir = h.projective_direction(0)?;
            PointSet::from_indices(f, dom, h.horizontal_line(&origin, &dir)?.points)
        }
        ExtremalKind::Bush => {
            let lines = h.lines_through_point(&origin)?;
            PointSet::from_indices(f, dom, lines.into_iter().flat_map(|l| l.points))
        }
        ExtremalKind::TwoLinesBlocking => {
            h.require_rank_one()?;
            let q = f.order();
            // (x, 0, 0) has index x q^2, (0, y, 0) has index y q.
            let pts = (0..q).flat_map(|s| [s * q * q, s * q]);
            PointSet::from_indices(f, dom, pts)
        }
        ExtremalKind::Constant => Ok(PointSet::full(f, dom)),
        ExtremalKind::Paraboloid { eta } => {
            f.check(eta)?;
            if !f.is_odd() {
                return domain("the paraboloid needs odd q");
            }
            if f.is_square(f.neg(eta))? {
                return domain(format!("-eta = {} is a square in F_{}", f.neg(eta), f.q()));
            }
            paraboloid_surface(h, eta)
        }
    }
}

/// The `eta` with `-eta` the first nonsquare, making `x^2 + eta y^2`
/// anisotropic. Needs odd `q`.
pub fn anisotropic_eta(field: &Field) -> Result<FieldElement> {
    Ok(field.neg(field.first_nonsquare()?))
}

/// `{(x, y, x^2 + eta y^2)}` in `H_1` for any `eta`, without the anisotropy
/// requirement.
pub fn paraboloid_surface(h: &Heisenberg, eta: FieldElement) -> Result<PointSet> {
    h.require_rank_one()?;
    let f = h.field();
    f.check(eta)?;
    let q = f.order();
    let mut pts = Vec::with_capacity(q * q);
    for x in f.elements() {
        for y in f.elements() {
            let t = f.add(f.mul(x, x), f.mul(eta, f.mul(y, y)));
            pts.push((x.index() * q + y.index()) * q + t.index());
        }
    }
    PointSet::from_indices(f, Domain::Heisenberg { n: 1 }, pts)
}

/// The extremal test function: the indicator of [`extremal_set`].
pub fn extremal_function(h: &Heisenberg, kind: ExtremalKind) -> Result<GridFunction> {
    if kind == ExtremalKind::Constant {
        return Ok(GridFunction::constant(
            h.field(),
            Domain::Heisenberg { n: h.n() },
            Complex64::new(1.0, 0.0),
        ));
    }
    Ok(extremal_set(h, kind)?.indicator())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn support_sizes() {
        let f5 = Field::new(5).unwrap();
        let h = Heisenberg::new(&f5, 1).unwrap();
        assert_eq!(extremal_set(&h, ExtremalKind::Bush).unwrap().len(), 25);
        assert_eq!(extremal_set(&h, ExtremalKind::SingleLine).unwrap().len(), 5);
        let f7 = Field::new(7).unwrap();
        let h7 = Heisenberg::new(&f7, 1).unwrap();
        assert_eq!(
            extremal_set(&h7, ExtremalKind::TwoLinesBlocking)
                .unwrap()
                .len(),
            13
        );
        let f3 = Field::new(3).unwrap();
        let h2 = Heisenberg::new(&f3, 2).unwrap();
        assert_eq!(extremal_set(&h2, ExtremalKind::Bush).unwrap().len(), 81);
    }

    #[test]
    fn paraboloid_needs_anisotropic_form() {
        let f = Field::new(5).unwrap();
        let h = Heisenberg::new(&f, 1).unwrap();
        let eta = anisotropic_eta(&f).unwrap();
        assert_eq!(
            extremal_set(&h, ExtremalKind::Paraboloid { eta })
                .unwrap()
                .len(),
            25
        );
        assert!(extremal_set(&h, ExtremalKind::Paraboloid { eta: f.one() }).is_err());
        let f7 = Field::new(7).unwrap();
        let h7 = Heisenberg::new(&f7, 1).unwrap();
        let nonsquare = f7.first_nonsquare().unwrap();
        assert!(extremal_set(&h7, ExtremalKind::Paraboloid { eta: nonsquare }).is_err());
        assert!(extremal_set(&h7, ExtremalKind::Paraboloid { eta: f7.one() }).is_ok());
        assert_eq!(paraboloid_surface(&h7, nonsquare).unwrap().len(), 49);
        let f4 = Field::new(4).unwrap();
        let h4 = Heisenberg::new(&f4, 1).unwrap();
        assert!(extremal_set(&h4, ExtremalKind::Paraboloid { eta: f4.one() }).is_err());
    }
}
