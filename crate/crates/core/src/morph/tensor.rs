//! Even (1,1)-tensors, stored by their values on the coordinate fields.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::coeff::GaussRat;
use crate::error::{Error, Result};
use crate::ring::{Mono, RingSignature, SuperPoly};
use crate::sconf::SVectorField;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor11 {
    sig: Arc<RingSignature>,
    cols: Vec<SVectorField>,
}

impl Tensor11 {
    /// `cols[v] = σ(∂_v)` in coordinate order.
    pub fn from_columns(sig: &Arc<RingSignature>, cols: Vec<SVectorField>) -> Result<Self> {
        if cols.len() != sig.coords().len() || cols.iter().any(|c| c.sig() != sig) {
            return Err(Error::SignatureMismatch);
        }
        Ok(Tensor11 {
            sig: sig.clone(),
            cols,
        })
    }

    /// Builds from a row-major matrix `m[u][v]`, the `∂_u` component of `σ(∂_v)`.
    pub fn from_matrix(sig: &Arc<RingSignature>, m: Vec<Vec<SuperPoly>>) -> Result<Self> {
        let n = sig.coords().len();
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(Error::SignatureMismatch);
        }
        let cols = (0..n)
            .map(|v| SVectorField::new(sig, (0..n).map(|u| m[u][v].clone()).collect()))
            .collect::<Result<Vec<_>>>()?;
        Tensor11::from_columns(sig, cols)
    }

    pub fn identity(sig: &Arc<RingSignature>) -> Self {
        let cols = sig
            .coords()
            .into_iter()
            .map(|v| SVectorField::partial(sig, v).unwrap())
            .collect();
        Tensor11 {
            sig: sig.clone(),
            cols,
        }
    }

    pub fn zero(sig: &Arc<RingSignature>) -> Self {
        Tensor11 {
            sig: sig.clone(),
            cols: sig.coords().iter().map(|_| SVectorField::zero(sig)).collect(),
        }
    }

    /// Diagonal tensor with constant entries.
    pub fn diagonal(sig: &Arc<RingSignature>, diag: &[GaussRat]) -> Result<Self> {
        if diag.len() != sig.coords().len() {
            return Err(Error::SignatureMismatch);
        }
        let mut t = Tensor11::identity(sig);
        for (c, d) in t.cols.iter_mut().zip(diag) {
            *c = c.scale(d);
        }
        Ok(t)
    }

    pub fn sig(&self) -> &Arc<RingSignature> {
        &self.sig
    }

    pub fn columns(&self) -> &[SVectorField] {
        &self.cols
    }

    pub fn entry(&self, u: usize, v: usize) -> &SuperPoly {
        &self.cols[v].coeffs()[u]
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SVectorField::is_zero)
    }

    /// Even tensors map each `∂_v` to a field of the parity of `v`.
    pub fn is_even(&self) -> bool {
        self.cols
            .iter()
            .zip(self.sig.coords())
            .all(|(c, v)| c.is_zero() || c.parity_bit() == Ok(v.is_odd()))
    }

    /// `σ(Y) = Σ_v Y^v σ(∂_v)`.
    pub fn apply(&self, y: &SVectorField) -> Result<SVectorField> {
        if y.sig() != &self.sig {
            return Err(Error::SignatureMismatch);
        }
        let mut out = SVectorField::zero(&self.sig);
        for (c, col) in y.coeffs().iter().zip(&self.cols) {
            if !c.is_zero() {
                out = &out + &col.mul_left(c);
            }
        }
        Ok(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Tensor11) -> Result<Tensor11> {
        let cols = other
            .cols
            .iter()
            .map(|c| self.apply(c))
            .collect::<Result<Vec<_>>>()?;
        Tensor11::from_columns(&self.sig, cols)
    }

    pub fn map_columns(&self, f: impl Fn(&SVectorField) -> Result<SVectorField>) -> Result<Tensor11> {
        let cols = self.cols.iter().map(f).collect::<Result<Vec<_>>>()?;
        Tensor11::from_columns(&self.sig, cols)
    }

    pub fn add(&self, other: &Tensor11) -> Tensor11 {
        Tensor11 {
            sig: self.sig.clone(),
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Tensor11) -> Tensor11 {
        self.add(&other.scale(&-GaussRat::one()))
    }

    pub fn scale(&self, c: &GaussRat) -> Tensor11 {
        Tensor11 {
            sig: self.sig.clone(),
            cols: self.cols.iter().map(|f| f.scale(c)).collect(),
        }
    }

    /// Splits into the matrix of constant terms and the remainder.
    fn constant_part(&self) -> (Vec<Vec<GaussRat>>, Tensor11) {
        let n = self.dim();
        let one = Mono::one(self.sig.n_evens());
        let mut c = vec![vec![GaussRat::zero(); n]; n];
        let mut rest = self.clone();
        for v in 0..n {
            let coeffs: Vec<SuperPoly> = (0..n)
                .map(|u| {
                    let e = self.entry(u, v);
                    let k = e.coeff(&one);
                    c[u][v] = k.clone();
                    e - &SuperPoly::constant(&self.sig, k)
                })
                .collect();
            rest.cols[v] = SVectorField::new(&self.sig, coeffs).unwrap();
        }
        (c, rest)
    }

    fn from_constants(sig: &Arc<RingSignature>, c: &[Vec<GaussRat>]) -> Tensor11 {
        let m = c
            .iter()
            .map(|row| row.iter().map(|k| SuperPoly::constant(sig, k.clone())).collect())
            .collect();
        Tensor11::from_matrix(sig, m).unwrap()
    }

    /// Inverse, when the constant part is invertible and the remainder is
    /// nilpotent after normalising by it.
    pub fn inverse(&self) -> Result<Tensor11> {
        let (c, rest) = self.constant_part();
        let cinv = invert_matrix(&c).ok_or_else(|| Error::NotInvertible("constant part is singular".into()))?;
        let cinv = Tensor11::from_constants(&self.sig, &cinv);
        let k = cinv.compose(&rest)?;
        let minus_k = k.scale(&-GaussRat::one());
        let bound = self.sig.n_odd() + 2;
        let mut sum = Tensor11::identity(&self.sig);
        let mut power = Tensor11::identity(&self.sig);
        for _ in 0..=bound {
            power = power.compose(&minus_k)?;
            if power.is_zero() {
                return sum.compose(&cinv);
            }
            sum = sum.add(&power);
        }
        Err(Error::NotInvertible("remainder is not nilpotent".into()))
    }
}

/// Gauss-Jordan inverse of a square matrix over the Gaussian rationals.
pub fn invert_matrix(m: &[Vec<GaussRat>]) -> Option<Vec<Vec<GaussRat>>> {
    let n = m.len();
    let mut a: Vec<Vec<GaussRat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { GaussRat::one() } else { GaussRat::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].inv()?;
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for k in 0..2 * n {
                    let delta = &factor * &a[col][k];
                    a[r][k] -= &delta;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

impl fmt::Display for Tensor11 {
    /// One line per coordinate field: `d_v -> σ(d_v)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self
            .sig
            .coords()
            .iter()
            .zip(&self.cols)
            .map(|(&v, c)| format!("d_{} -> {}", self.sig.var_name(v), c))
            .collect();
        write!(f, "{}", lines.join("\n"))
    }
}
