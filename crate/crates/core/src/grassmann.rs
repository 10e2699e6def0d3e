//! Finite Grassmann algebras and their parity-preserving homomorphisms.
//!
//! An element of `Λ_n` is stored as a sparse map from generator subsets
//! (bitmasks, bit `i` for generator `i+1`) to coefficients. Monomials are
//! always written with ascending generator indices.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::coeff::GaussRat;
use crate::error::{Error, Result};

/// Sign of `m_a * m_b` when merged into ascending order: `true` means `-1`.
///
/// Counts the transpositions needed to move each generator of `b` past the
/// larger generators of `a`. Callers must check `a & b == 0` themselves.
pub(crate) fn merge_sign(a: u64, b: u64) -> bool {
    let mut count = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        let above = if j >= 63 { 0 } else { a >> (j + 1) };
        count += above.count_ones();
    }
    count % 2 == 1
}

/// Sign of sorting a sequence of distinct odd generator indices.
pub(crate) fn sort_sign(seq: &[usize]) -> bool {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

/// Parity of a possibly inhomogeneous element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl Parity {
    pub fn of_degree(k: u32) -> Parity {
        if k.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Element of `Λ_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassmannElement {
    n: usize,
    terms: BTreeMap<u64, GaussRat>,
}

impl GrassmannElement {
    pub fn zero(n: usize) -> Self {
        assert!(n <= 64, "at most 64 generators are supported");
        GrassmannElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(n: usize, c: GaussRat) -> Self {
        Self::monomial(n, 0, c)
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, GaussRat::one())
    }

    /// The generator `ξ_i`, 1-based.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::OutOfRange(format!("generator {i} of Λ_{n}")));
        }
        Ok(Self::monomial(n, 1 << (i - 1), GaussRat::one()))
    }

    pub fn monomial(n: usize, mask: u64, c: GaussRat) -> Self {
        let mut e = Self::zero(n);
        assert!(n == 64 || mask >> n == 0, "monomial outside Λ_n");
        if !c.is_zero() {
            e.terms.insert(mask, c);
        }
        e
    }

    /// Builds an element from `(subset, coefficient)` pairs; subsets are
    /// lists of 1-based indices in any order, reordered with the sign rule.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, GaussRat)>,
    {
        let mut out = Self::zero(n);
        for (idx, c) in terms {
            let mut mask = 0u64;
            for &i in &idx {
                if i == 0 || i > n {
                    return Err(Error::OutOfRange(format!("generator {i} of Λ_{n}")));
                }
                let bit = 1u64 << (i - 1);
                if mask & bit != 0 {
                    mask = u64::MAX;
                    break;
                }
                mask |= bit;
            }
            if mask == u64::MAX && n < 64 {
                continue;
            }
            let zero_based: Vec<usize> = idx.iter().map(|i| i - 1).collect();
            let c = if sort_sign(&zero_based) { -c } else { c };
            out.add_term(mask, &c);
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &GaussRat)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, mask: u64) -> GaussRat {
        self.terms.get(&mask).cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, mask: u64, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mask).or_insert_with(GaussRat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn parity(&self) -> Parity {
        let mut seen = [false; 2];
        for m in self.terms.keys() {
            seen[(m.count_ones() % 2) as usize] = true;
        }
        match seen {
            [_, false] => Parity::Even,
            [false, true] => Parity::Odd,
            _ => Parity::Mixed,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.parity() == Parity::Odd || self.is_zero()
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Parity::Even
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        let mut out = Self::zero(self.n);
        for (m, a) in &self.terms {
            out.add_term(*m, &(a * c));
        }
        out
    }

    /// Supercommutative product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::GeneratorMismatch(self.n, other.n));
        }
        let mut out = Self::zero(self.n);
        for (ma, a) in &self.terms {
            for (mb, b) in &other.terms {
                if ma & mb != 0 {
                    continue;
                }
                let c = a * b;
                let c = if merge_sign(*ma, *mb) { -c } else { c };
                out.add_term(ma | mb, &c);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::GeneratorMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    /// The augmentation `Λ_n → K`: the coefficient of the empty monomial.
    pub fn terminal(&self) -> GaussRat {
        self.coeff(0)
    }
}

/// Product in Λ; panics on generator-count mismatch.
impl Mul for &GrassmannElement {
    type Output = GrassmannElement;
    fn mul(self, rhs: &GrassmannElement) -> GrassmannElement {
        GrassmannElement::mul(self, rhs).expect("generator count mismatch")
    }
}

impl Add for &GrassmannElement {
    type Output = GrassmannElement;
    fn add(self, rhs: &GrassmannElement) -> GrassmannElement {
        GrassmannElement::add(self, rhs).expect("generator count mismatch")
    }
}

impl Sub for &GrassmannElement {
    type Output = GrassmannElement;
    fn sub(self, rhs: &GrassmannElement) -> GrassmannElement {
        self + &(-rhs)
    }
}

impl Neg for &GrassmannElement {
    type Output = GrassmannElement;
    fn neg(self) -> GrassmannElement {
        self.scale(&-GaussRat::one())
    }
}

impl fmt::Display for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let gens: Vec<String> = (0..self.n)
                .filter(|i| m >> i & 1 == 1)
                .map(|i| format!("t{}", i + 1))
                .collect();
            let body = if gens.is_empty() {
                format!("{c}")
            } else if c.is_one() {
                gens.join("*")
            } else if (-c).is_one() {
                format!("-{}", gens.join("*"))
            } else if c.is_real() || c.re.is_zero() {
                format!("{c}*{}", gens.join("*"))
            } else {
                format!("({c})*{}", gens.join("*"))
            };
            if first {
                write!(f, "{body}")?;
                first = false;
            } else if let Some(rest) = body.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

/// A morphism `Λ_n → Λ_m` in the category of Grassmann algebras, given by
/// the (odd) images of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrHom {
    source: usize,
    target: usize,
    images: Vec<GrassmannElement>,
}

impl GrHom {
    pub fn new(source: usize, target: usize, images: Vec<GrassmannElement>) -> Result<Self> {
        if images.len() != source {
            return Err(Error::GeneratorMismatch(images.len(), source));
        }
        for (i, img) in images.iter().enumerate() {
            if img.n() != target {
                return Err(Error::GeneratorMismatch(img.n(), target));
            }
            if !img.is_odd() {
                return Err(Error::Parity(format!("image of generator {} is not odd", i + 1)));
            }
        }
        Ok(GrHom {
            source,
            target,
            images,
        })
    }

    pub fn identity(n: usize) -> Self {
        let images = (1..=n)
            .map(|i| GrassmannElement::generator(n, i).unwrap())
            .collect();
        GrHom {
            source: n,
            target: n,
            images,
        }
    }

    /// The terminal morphism `ε: Λ_n → Λ_0`.
    pub fn terminal(n: usize) -> Self {
        GrHom {
            source: n,
            target: 0,
            images: vec![GrassmannElement::zero(0); n],
        }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn images(&self) -> &[GrassmannElement] {
        &self.images
    }

    /// Applies the unique algebra homomorphism fixed by the generator images.
    pub fn apply(&self, a: &GrassmannElement) -> Result<GrassmannElement> {
        if a.n() != self.source {
            return Err(Error::GeneratorMismatch(a.n(), self.source));
        }
        let mut out = GrassmannElement::zero(self.target);
        for (mask, c) in a.terms() {
            let mut prod = GrassmannElement::scalar(self.target, c.clone());
            for i in 0..self.source {
                if mask >> i & 1 == 1 {
                    prod = prod.mul(&self.images[i])?;
                    if prod.is_zero() {
                        break;
                    }
                }
            }
            out = out.add(&prod)?;
        }
        Ok(out)
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &GrHom) -> Result<GrHom> {
        if inner.target != self.source {
            return Err(Error::GeneratorMismatch(inner.target, self.source));
        }
        let images = inner
            .images
            .iter()
            .map(|img| self.apply(img))
            .collect::<Result<Vec<_>>>()?;
        Ok(GrHom {
            source: inner.source,
            target: self.target,
            images,
        })
    }
}

/// Dimension of `Hom(Λ_n, Λ_m)` as a vector space, `n · dim Λ_{m,odd}`.
pub fn hom_space_dim(n: usize, m: usize) -> u64 {
    if m == 0 || n == 0 {
        0
    } else {
        n as u64 * (1u64 << (m - 1))
    }
}
