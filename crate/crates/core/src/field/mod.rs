//! Exact arithmetic in `F_q`, `q = p^k`.
//!
//! Elements are stored by index: the coefficient vector `(c_0, ..., c_{k-1})`
//! of the polynomial representative modulo the defining polynomial is encoded
//! as `sum c_i p^i`. For prime fields the index is the residue itself.
//!
//! All arithmetic goes through precomputed `q x q` tables, so a [`Field`] is
//! cheap to clone (it is reference counted) and elements are plain `Copy`
//! integers.
//!
//! ```
//! use heisenberg_kakeya::field::Field;
//!
//! let f9 = Field::with_modulus(9, &[1, 0, 1]).unwrap(); // F_3[x] / (x^2 + 1)
//! let x = f9.element(3).unwrap(); // the class of x
//! assert_eq!(f9.mul(x, x), f9.from_int(-1));
//! ```

mod poly;

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Largest field order the table-driven implementation accepts.
pub const MAX_ORDER: u32 = 1024;

/// Built-in defining polynomials for the small prime powers used throughout
/// the test suites, lowest coefficient first, leading 1 included.
const BUILTIN_MODULI: &[(u32, &[u32])] = &[
    (4, &[1, 1, 1]),
    (8, &[1, 1, 0, 1]),
    (9, &[1, 0, 1]),
    (16, &[1, 1, 0, 0, 1]),
    (25, &[2, 0, 1]),
    (27, &[1, 2, 0, 1]),
];

/// An element of `F_q`, identified by its index in `[0, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub(crate) fn from_index_unchecked(index: usize) -> Self {
        FieldElement(index as u32)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Operations accepted by [`Field::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Inv,
    Neg,
}

struct Tables {
    p: u32,
    k: u32,
    q: u32,
    modulus: Option<Vec<u32>>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    trace: Vec<u32>,
    character: Vec<Complex64>,
    square: Vec<bool>,
}

/// The finite field `F_q`. Immutable once built; clones share tables.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("q", &self.0.q)
            .field("p", &self.0.p)
            .field("k", &self.0.k)
            .field("modulus", &self.0.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.q == other.0.q && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

fn is_prime(n: u32) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Splits `q` as `p^k` with `p` prime, if possible.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1 && is_prime(p)).then_some((p, k))
}

impl Field {
    /// Builds `F_q`, using a built-in modulus for the common prime powers and
    /// the first irreducible polynomial in enumeration order otherwise.
    pub fn new(q: u32) -> Result<Self> {
        let (p, k) = prime_power(q)
            .ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        if k == 1 {
            return Self::build(p, 1, None);
        }
        if let Some((_, m)) = BUILTIN_MODULI.iter().find(|(order, _)| *order == q) {
            return Self::build(p, k, Some(m.to_vec()));
        }
        let count = (p as u64).pow(k);
        let modulus = (0..count)
            .map(|code| poly::monic_from_code(code, k as usize, p))
            .find(|f| poly::is_irreducible(f, p))
            .expect("an irreducible polynomial of every degree exists");
        Self::build(p, k, Some(modulus))
    }

    /// Builds `F_q` from explicit modulus coefficients `c_0, ..., c_k`.
    ///
    /// The leading coefficient may be omitted (monic is implied). For prime
    /// `q` the modulus must be empty.
    pub fn with_modulus(q: u32, coeffs: &[u32]) -> Result<Self> {
        let (p, k) = prime_power(q)
            .ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        if k == 1 {
            if coeffs.is_empty() {
                return Self::build(p, 1, None);
            }
            return Err(Error::InvalidField(format!(
                "q = {q} is prime; no modulus expected"
            )));
        }
        let mut m: Vec<u32> = coeffs.to_vec();
        if m.len() == k as usize {
            m.push(1);
        }
        if m.len() != k as usize + 1 || *m.last().unwrap() != 1 {
            return Err(Error::InvalidField(format!(
                "modulus for q = {q} must be monic of degree {k}"
            )));
        }
        if m.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(format!(
                "modulus coefficients must lie in [0, {p})"
            )));
        }
        if !poly::is_irreducible(&m, p) {
            return Err(Error::InvalidField(format!(
                "modulus {m:?} is reducible over F_{p}"
            )));
        }
        Self::build(p, k, Some(m))
    }

    /// Like [`Field::new`] / [`Field::with_modulus`], choosing by whether a
    /// modulus was supplied.
    pub fn from_spec(q: u32, modulus: Option<&[u32]>) -> Result<Self> {
        match modulus {
            Some(m) if !m.is_empty() => Self::with_modulus(q, m),
            _ => Self::new(q),
        }
    }

    fn build(p: u32, k: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        let q = p.pow(k);
        if q > MAX_ORDER {
            return Err(Error::InvalidField(format!(
                "q = {q} exceeds the supported maximum {MAX_ORDER}"
            )));
        }
        if let Some(m) = &modulus {
            // Also covers built-in tables; never trust them blindly.
            if !poly::is_irreducible(m, p) {
                return Err(Error::InvalidField(format!("modulus {m:?} is reducible")));
            }
        }
        let qs = q as usize;
        let digits = |mut x: u32| -> Vec<u32> {
            (0..k)
                .map(|_| {
                    let d = x % p;
                    x /= p;
                    d
                })
                .collect()
        };
        let encode = |f: &[u32]| -> u32 { f.iter().rev().fold(0, |acc, &c| acc * p + c) };

        let mut add = vec![0u32; qs * qs];
        let mut mul = vec![0u32; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a as usize * qs + b as usize] = encode(&sum);
                let prod = match &modulus {
                    None => vec![(a as u64 * b as u64 % p as u64) as u32],
                    Some(m) => {
                        let mut r = poly::rem(&poly::mul(&da, &db, p), m, p);
                        r.resize(k as usize, 0);
                        r
                    }
                };
                mul[a as usize * qs + b as usize] = encode(&prod);
            }
        }
        let neg: Vec<u32> = (0..qs)
            .map(|a| (0..q).find(|&b| add[a * qs + b as usize] == 0).unwrap())
            .collect();
        let mut inv = vec![0u32; qs];
        for a in 1..qs {
            inv[a] = (1..q)
                .find(|&b| mul[a * qs + b as usize] == 1)
                .ok_or_else(|| Error::InvalidField("non-invertible element".into()))?;
        }
        // Tr(x) = x + x^p + ... + x^{p^{k-1}}
        let trace: Vec<u32> = (0..qs)
            .map(|x| {
                let mut acc = 0u32;
                let mut frob = x as u32;
                for _ in 0..k {
                    acc = add[acc as usize * qs + frob as usize];
                    let mut pw = 1u32;
                    for _ in 0..p {
                        pw = mul[pw as usize * qs + frob as usize];
                    }
                    frob = pw;
                }
                acc
            })
            .collect();
        let character = trace
            .iter()
            .map(|&tr| {
                debug_assert!(tr < p, "trace must land in the prime subfield");
                Complex64::from_polar(1.0, std::f64::consts::TAU * tr as f64 / p as f64)
            })
            .collect();
        let mut square = vec![false; qs];
        for y in 0..qs {
            square[mul[y * qs + y] as usize] = true;
        }
        Ok(Field(Arc::new(Tables {
            p,
            k,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
            trace,
            character,
            square,
        })))
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.0.q
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.0.q as usize
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    /// Full modulus coefficients `c_0..c_k` (leading 1 included), or `None`
    /// for a prime field.
    pub fn modulus(&self) -> Option<&[u32]> {
        self.0.modulus.as_deref()
    }

    pub fn is_odd(&self) -> bool {
        self.0.p != 2
    }

    #[inline]
    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    #[inline]
    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// The element with the given index, checked against `q`.
    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index < self.0.q {
            Ok(FieldElement(index))
        } else {
            domain(format!("index {index} is not an element of F_{}", self.0.q))
        }
    }

    /// Unchecked constructor for hot loops; panics in debug builds on a bad index.
    #[inline]
    pub fn elem(&self, index: usize) -> FieldElement {
        debug_assert!(index < self.order());
        FieldElement(index as u32)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// Returns an error if `x` cannot belong to this field.
    pub fn check(&self, x: FieldElement) -> Result<()> {
        self.element(x.0).map(|_| ())
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.0.add[a.index() * self.order() + b.index()])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.0.mul[a.index() * self.order() + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.0.neg[a.index()])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return domain("inverse of zero");
        }
        Ok(FieldElement(self.0.inv[a.index()]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut result = self.one();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// `sum_i a_i b_i`.
    pub fn dot(&self, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
        a.iter()
            .zip(b)
            .fold(self.zero(), |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// Checked arithmetic entry point: validates operands and arity.
    pub fn arith(
        &self,
        op: ArithOp,
        x: FieldElement,
        y: Option<FieldElement>,
    ) -> Result<FieldElement> {
        self.check(x)?;
        if let Some(y) = y {
            self.check(y)?;
        }
        let need = |y: Option<FieldElement>| {
            y.ok_or_else(|| Error::Domain(format!("{op:?} needs two operands")))
        };
        match op {
            ArithOp::Add => Ok(self.add(x, need(y)?)),
            ArithOp::Sub => Ok(self.sub(x, need(y)?)),
            ArithOp::Mul => Ok(self.mul(x, need(y)?)),
            ArithOp::Neg => Ok(self.neg(x)),
            ArithOp::Inv => self.inv(x),
        }
    }

    /// Absolute trace `Tr_{F_q/F_p}(x)`, an element of the prime subfield.
    #[inline]
    pub fn trace(&self, x: FieldElement) -> FieldElement {
        FieldElement(self.0.trace[x.index()])
    }

    /// The canonical nontrivial additive character `exp(2 pi i Tr(x) / p)`.
    #[inline]
    pub fn character(&self, x: FieldElement) -> Complex64 {
        self.0.character[x.index()]
    }

    pub fn is_square(&self, x: FieldElement) -> Result<bool> {
        if !self.is_odd() {
            return Err(Error::Unsupported(
                "squares are only meaningful in odd characteristic".into(),
            ));
        }
        Ok(self.0.square[x.index()])
    }

    /// The first nonsquare in enumeration order (odd `q` only).
    pub fn first_nonsquare(&self) -> Result<FieldElement> {
        for x in self.elements() {
            if !self.is_square(x)? {
                return Ok(x);
            }
        }
        unreachable!("odd fields always contain a nonsquare")
    }

    /// All `q` elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.0.q).map(FieldElement)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (1..self.0.q).map(FieldElement)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_examples() {
        let f = Field::new(5).unwrap();
        let e = |i| f.element(i).unwrap();
        assert_eq!(f.add(e(3), e(4)), e(2));
        assert_eq!(f.inv(e(2)).unwrap(), e(3));
        assert!(f.inv(e(0)).is_err());
    }

    #[test]
    fn f9_x_squared_is_minus_one() {
        let f = Field::with_modulus(9, &[1, 0, 1]).unwrap();
        let x = f.element(3).unwrap();
        assert_eq!(f.mul(x, x), f.element(2).unwrap());
    }

    #[test]
    fn f9_trace_of_x_by_power_oracle() {
        let f = Field::with_modulus(9, &[1, 0, 1]).unwrap();
        let x = f.element(3).unwrap();
        let oracle = f.add(x, f.pow(x, 3));
        assert_eq!(f.trace(x), oracle);
        // x^3 = -x, so the trace vanishes.
        assert_eq!(oracle, f.zero());
    }

    #[test]
    fn trace_is_identity_on_prime_fields() {
        let f = Field::new(7).unwrap();
        assert!(f.elements().all(|x| f.trace(x) == x));
    }

    #[test]
    fn squares_mod_five() {
        let f = Field::new(5).unwrap();
        let sq: Vec<u32> = f
            .elements()
            .filter(|&x| f.is_square(x).unwrap())
            .map(|x| x.0)
            .collect();
        assert_eq!(sq, vec![0, 1, 4]);
        assert!(Field::new(4).unwrap().is_square(FieldElement(1)).is_err());
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(Field::new(6).is_err());
        assert!(Field::new(1).is_err());
        assert!(Field::with_modulus(9, &[0, 0]).is_err()); // x^2 reducible
        assert!(Field::with_modulus(25, &[1, 0, 1]).is_err()); // x^2 + 1 splits over F_5
        assert!(Field::with_modulus(5, &[1, 1]).is_err());
    }

    #[test]
    fn builtins_and_fallback_have_right_size() {
        for q in [4, 8, 9, 16, 25, 27, 32, 49] {
            let f = Field::new(q).unwrap();
            assert_eq!(f.elements().count(), q as usize);
        }
    }

    #[test]
    fn arith_requires_operands() {
        let f = Field::new(3).unwrap();
        assert!(f.arith(ArithOp::Add, f.one(), None).is_err());
        assert!(f.arith(ArithOp::Neg, FieldElement(7), None).is_err());
        assert_eq!(
            f.arith(ArithOp::Neg, f.one(), None).unwrap(),
            FieldElement(2)
        );
    }
}
