use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::exponent::ExtendedExponent;
use super::norms::lp_norm;
use crate::error::{domain, Result};
use crate::field::Field;

/// Where a [`GridFunction`] lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "domain", rename_all = "lowercase")]
pub enum Domain {
    Heisenberg { n: usize },
    Affine { d: usize },
}

impl Domain {
    /// Number of coordinates of a point.
    pub fn dim(self) -> usize {
        match self {
            Domain::Heisenberg { n } => 2 * n + 1,
            Domain::Affine { d } => d,
        }
    }

    pub fn size(self, q: u32) -> usize {
        (q as usize).pow(self.dim() as u32)
    }
}

/// A complex-valued function on `H_n(F_q)` or `F_q^d`, stored densely in
/// point-index order.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    field: Field,
    domain: Domain,
    values: Vec<Complex64>,
}

impl GridFunction {
    pub fn zeros(field: &Field, domain: Domain) -> Self {
        Self {
            field: field.clone(),
            domain,
            values: vec![Complex64::new(0.0, 0.0); domain.size(field.q())],
        }
    }

    pub fn from_values(field: &Field, domain: Domain, values: Vec<Complex64>) -> Result<Self> {
        let want = domain.size(field.q());
        if values.len() != want {
            return domain_err(format!(
                "expected {want} values for {domain:?} over F_{}, got {}",
                field.q(),
                values.len()
            ));
        }
        if values
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return domain_err("grid function values must be finite");
        }
        Ok(Self {
            field: field.clone(),
            domain,
            values,
        })
    }

    pub fn from_real(field: &Field, domain: Domain, values: &[f64]) -> Result<Self> {
        Self::from_values(
            field,
            domain,
            values.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    /// The indicator function of a set of point indices.
    pub fn indicator(field: &Field, domain: Domain, support: &[usize]) -> Result<Self> {
        let mut g = Self::zeros(field, domain);
        for &i in support {
            if i >= g.values.len() {
                return domain_err(format!("point index {i} out of range"));
            }
            g.values[i] = Complex64::new(1.0, 0.0);
        }
        Ok(g)
    }

    pub fn delta(field: &Field, domain: Domain, index: usize) -> Result<Self> {
        Self::indicator(field, domain, &[index])
    }

    pub fn constant(field: &Field, domain: Domain, value: Complex64) -> Self {
        Self {
            field: field.clone(),
            domain,
            values: vec![value; domain.size(field.q())],
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Pointwise absolute values.
    pub fn magnitudes(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.norm()).collect()
    }

    /// `|F|` as a grid function.
    pub fn abs(&self) -> Self {
        self.map(|z| Complex64::new(z.norm(), 0.0))
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            field: self.field.clone(),
            domain: self.domain,
            values: self.values.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|z| z * c)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            field: self.field.clone(),
            domain: self.domain,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// `||F||_u` over the whole domain.
    pub fn norm(&self, u: ExtendedExponent) -> f64 {
        lp_norm(&self.magnitudes(), u)
    }

    /// Indices of the nonzero entries.
    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len())
            .filter(|&i| self.values[i] != Complex64::new(0.0, 0.0))
            .collect()
    }

    pub(crate) fn check_same(&self, other: &Self) -> Result<()> {
        if self.domain != other.domain || self.field != other.field {
            return domain_err("grid functions live on different domains");
        }
        Ok(())
    }

    /// Fails unless this function lives on `H_n(F_q)` for the given data.
    pub fn expect_heisenberg(&self, field: &Field, n: usize) -> Result<()> {
        if self.domain != (Domain::Heisenberg { n }) || &self.field != field {
            return domain_err(format!(
                "expected a function on H_{n}(F_{}), got {:?} over F_{}",
                field.q(),
                self.domain,
                self.q()
            ));
        }
        Ok(())
    }

    pub fn expect_affine(&self, field: &Field, d: usize) -> Result<()> {
        if self.domain != (Domain::Affine { d }) || &self.field != field {
            return domain_err(format!(
                "expected a function on F_{}^{d}, got {:?} over F_{}",
                field.q(),
                self.domain,
                self.q()
            ));
        }
        Ok(())
    }
}

fn domain_err<T>(msg: impl Into<String>) -> Result<T> {
    domain(msg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_and_checks() {
        let f = Field::new(3).unwrap();
        let g = GridFunction::zeros(&f, Domain::Heisenberg { n: 1 });
        assert_eq!(g.len(), 27);
        assert!(GridFunction::from_real(&f, Domain::Affine { d: 2 }, &[0.0; 8]).is_err());
        assert!(GridFunction::from_real(&f, Domain::Affine { d: 2 }, &[f64::NAN; 9]).is_err());
        let d = GridFunction::delta(&f, Domain::Affine { d: 2 }, 4).unwrap();
        assert_eq!(d.support(), vec![4]);
        assert!(d.add(&g).is_err());
    }
}
