//! Coordinate substitutions: the pullback of an underlying map.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{RingSignature, SuperPoly, Var};
use crate::sconf::SVectorField;

/// Pullback `x_v ↦ images[v]` on coordinates; base odds and the square-zero
/// parameter are fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordMap {
    sig: Arc<RingSignature>,
    images: Vec<SuperPoly>,
}

impl CoordMap {
    pub fn new(sig: &Arc<RingSignature>, images: Vec<SuperPoly>) -> Result<Self> {
        let coords = sig.coords();
        if images.len() != coords.len() {
            return Err(Error::SignatureMismatch);
        }
        for (img, v) in images.iter().zip(&coords) {
            if img.sig() != sig {
                return Err(Error::SignatureMismatch);
            }
            let ok = if v.is_odd() {
                img.is_odd()
            } else {
                img.is_even() || img.is_zero()
            };
            if !ok {
                return Err(Error::Parity(format!(
                    "image of `{}` has the wrong parity",
                    sig.var_name(*v)
                )));
            }
        }
        Ok(CoordMap {
            sig: sig.clone(),
            images,
        })
    }

    pub fn identity(sig: &Arc<RingSignature>) -> Self {
        let images = sig.coords().into_iter().map(|v| SuperPoly::gen(sig, v)).collect();
        CoordMap {
            sig: sig.clone(),
            images,
        }
    }

    pub fn sig(&self) -> &Arc<RingSignature> {
        &self.sig
    }

    pub fn images(&self) -> &[SuperPoly] {
        &self.images
    }

    /// Whether no image involves base odds.
    pub fn is_base_free(&self) -> bool {
        self.images.iter().all(|p| p.body() == *p)
    }

    pub fn apply(&self, f: &SuperPoly) -> Result<SuperPoly> {
        let coords = self.sig.coords();
        let lookup = |v: Var| {
            coords
                .iter()
                .position(|&c| c == v)
                .map(|k| self.images[k].clone())
                .unwrap_or_else(|| SuperPoly::gen(&self.sig, v))
        };
        let evens: Vec<SuperPoly> = (0..self.sig.n_evens()).map(|i| lookup(Var::Even(i))).collect();
        let odds: Vec<SuperPoly> = (0..self.sig.n_odd()).map(|b| lookup(Var::Odd(b))).collect();
        f.subst(&self.sig, &evens, &odds)
    }

    /// Pullback applying `self` first, then `next`.
    pub fn then(&self, next: &CoordMap) -> Result<CoordMap> {
        let images = self
            .images
            .iter()
            .map(|p| next.apply(p))
            .collect::<Result<Vec<_>>>()?;
        CoordMap::new(&self.sig, images)
    }

    /// Whether `other` undoes `self` in both orders.
    pub fn is_inverse_of(&self, other: &CoordMap) -> Result<bool> {
        let id = CoordMap::identity(&self.sig);
        Ok(self.then(other)? == id && other.then(self)? == id)
    }

    /// `bwd ∘ Y ∘ self` as a derivation, with `bwd` the inverse of `self`.
    pub fn conjugate(&self, bwd: &CoordMap, y: &SVectorField) -> Result<SVectorField> {
        let coeffs = self
            .images
            .iter()
            .map(|img| bwd.apply(&y.apply(img)?))
            .collect::<Result<Vec<_>>>()?;
        SVectorField::new(&self.sig, coeffs)
    }
}

impl fmt::Display for CoordMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self
            .sig
            .coords()
            .iter()
            .zip(&self.images)
            .map(|(&v, img)| format!("{} -> {}", self.sig.var_name(v), img))
            .collect();
        write!(f, "{}", lines.join("\n"))
    }
}
