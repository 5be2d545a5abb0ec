use fixedbitset::FixedBitSet;

use crate::error::{domain, Result};
use crate::field::Field;
use crate::maximal::{Domain, GridFunction};

/// A subset of `H_n(F_q)` or `F_q^d`, stored as a bitset over point indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    field: Field,
    domain: Domain,
    bits: FixedBitSet,
}

impl PointSet {
    pub fn empty(field: &Field, domain: Domain) -> Self {
        PointSet {
            field: field.clone(),
            domain,
            bits: FixedBitSet::with_capacity(domain.size(field.q())),
        }
    }

    pub fn full(field: &Field, domain: Domain) -> Self {
        let mut s = Self::empty(field, domain);
        s.bits.insert_range(..);
        s
    }

    pub fn from_indices(
        field: &Field,
        domain: Domain,
        indices: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let mut s = Self::empty(field, domain);
        for i in indices {
            s.insert(i)?;
        }
        Ok(s)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// Size of the ambient space.
    pub fn ambient_size(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, index: usize) -> Result<()> {
        if index >= self.bits.len() {
            return domain(format!("point index {index} out of range"));
        }
        self.bits.insert(index);
        Ok(())
    }

    pub fn remove(&mut self, index: usize) {
        if index < self.bits.len() {
            self.bits.set(index, false);
        }
    }

    pub fn contains(&self, index: usize) -> bool {
        self.bits.contains(index)
    }

    pub fn contains_all(&self, indices: &[usize]) -> bool {
        indices.iter().all(|&i| self.contains(i))
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    /// Members in increasing order.
    pub fn indices(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }

    pub fn indicator(&self) -> GridFunction {
        GridFunction::indicator(&self.field, self.domain, &self.indices())
            .expect("indices in range")
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.domain != other.domain || self.field != other.field {
            return domain("point sets live in different spaces");
        }
        Ok(())
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut s = self.clone();
        s.bits.union_with(&other.bits);
        Ok(s)
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut s = self.clone();
        s.bits.difference_with(&other.bits);
        Ok(s)
    }

    /// Applies a bijection of point indices.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> Result<Self> {
        Self::from_indices(&self.field, self.domain, self.bits.ones().map(f))
    }
}
