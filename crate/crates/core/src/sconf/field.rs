//! Super vector fields `Σ f_v ∂_v` over the coordinates of a signature.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use crate::coeff::GaussRat;
use crate::error::{Error, Result};
use crate::ring::{RingSignature, SuperPoly, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SVectorField {
    sig: Arc<RingSignature>,
    coeffs: Vec<SuperPoly>,
}

impl SVectorField {
    pub fn zero(sig: &Arc<RingSignature>) -> Self {
        let coeffs = sig.coords().iter().map(|_| SuperPoly::zero(sig)).collect();
        SVectorField {
            sig: sig.clone(),
            coeffs,
        }
    }

    pub fn new(sig: &Arc<RingSignature>, coeffs: Vec<SuperPoly>) -> Result<Self> {
        if coeffs.len() != sig.coords().len() {
            return Err(Error::SignatureMismatch);
        }
        let probe = SuperPoly::zero(sig);
        if coeffs.iter().any(|c| !c.same_sig(&probe)) {
            return Err(Error::SignatureMismatch);
        }
        Ok(SVectorField {
            sig: sig.clone(),
            coeffs,
        })
    }

    /// The coordinate field `∂_v`.
    pub fn partial(sig: &Arc<RingSignature>, v: Var) -> Result<Self> {
        let idx = sig
            .coords()
            .iter()
            .position(|&c| c == v)
            .ok_or_else(|| Error::UnknownVariable(sig.var_name(v)))?;
        let mut x = SVectorField::zero(sig);
        x.coeffs[idx] = SuperPoly::one(sig);
        Ok(x)
    }

    pub fn partial_by(sig: &Arc<RingSignature>, name: &str) -> Result<Self> {
        SVectorField::partial(sig, sig.var(name)?)
    }

    /// `f ∂_v`.
    pub fn term(f: &SuperPoly, v: Var) -> Result<Self> {
        Ok(SVectorField::partial(f.sig(), v)?.mul_left(f))
    }

    pub fn sig(&self) -> &Arc<RingSignature> {
        &self.sig
    }

    pub fn coeffs(&self) -> &[SuperPoly] {
        &self.coeffs
    }

    pub fn coords(&self) -> Vec<Var> {
        self.sig.coords()
    }

    /// Coefficient of `∂_v`.
    pub fn coeff(&self, v: Var) -> Result<&SuperPoly> {
        let idx = self
            .coords()
            .iter()
            .position(|&c| c == v)
            .ok_or_else(|| Error::UnknownVariable(self.sig.var_name(v)))?;
        Ok(&self.coeffs[idx])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(SuperPoly::is_zero)
    }

    /// Parity (`true` = odd); the zero field is even.
    pub fn parity_bit(&self) -> Result<bool> {
        let mut found: Option<bool> = None;
        for (c, v) in self.coeffs.iter().zip(self.coords()) {
            let (e, o) = c.split_parity();
            for (part, bit) in [(e, false), (o, true)] {
                if part.is_zero() {
                    continue;
                }
                let p = bit ^ v.is_odd();
                match found {
                    None => found = Some(p),
                    Some(q) if q != p => return Err(Error::Inhomogeneous),
                    _ => {}
                }
            }
        }
        Ok(found.unwrap_or(false))
    }

    /// Even and odd components.
    pub fn split_parity(&self) -> (SVectorField, SVectorField) {
        let mut even = SVectorField::zero(&self.sig);
        let mut odd = SVectorField::zero(&self.sig);
        for (k, (c, v)) in self.coeffs.iter().zip(self.coords()).enumerate() {
            let (e, o) = c.split_parity();
            if v.is_odd() {
                even.coeffs[k] = o;
                odd.coeffs[k] = e;
            } else {
                even.coeffs[k] = e;
                odd.coeffs[k] = o;
            }
        }
        (even, odd)
    }

    /// `f · X`, multiplying every coefficient on the left.
    pub fn mul_left(&self, f: &SuperPoly) -> SVectorField {
        SVectorField {
            sig: self.sig.clone(),
            coeffs: self.coeffs.iter().map(|c| f * c).collect(),
        }
    }

    pub fn scale(&self, c: &GaussRat) -> SVectorField {
        SVectorField {
            sig: self.sig.clone(),
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&SuperPoly) -> Result<SuperPoly>) -> Result<SVectorField> {
        Ok(SVectorField {
            sig: self.sig.clone(),
            coeffs: self.coeffs.iter().map(f).collect::<Result<_>>()?,
        })
    }

    /// `X(f) = Σ f_v ∂_v f`.
    pub fn apply(&self, f: &SuperPoly) -> Result<SuperPoly> {
        if !(Arc::ptr_eq(&self.sig, f.sig()) || *self.sig == **f.sig()) {
            return Err(Error::SignatureMismatch);
        }
        let mut out = SuperPoly::zero(&self.sig);
        for (c, v) in self.coeffs.iter().zip(self.coords()) {
            if c.is_zero() {
                continue;
            }
            out = &out + &(c * &f.derive(v));
        }
        Ok(out)
    }

    /// Superbracket of homogeneous fields.
    pub fn bracket(&self, other: &SVectorField) -> Result<SVectorField> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch);
        }
        let sign = self.parity_bit()? && other.parity_bit()?;
        let mut out = SVectorField::zero(&self.sig);
        for k in 0..self.coeffs.len() {
            let a = self.apply(&other.coeffs[k])?;
            let b = other.apply(&self.coeffs[k])?;
            out.coeffs[k] = if sign { &a + &b } else { &a - &b };
        }
        Ok(out)
    }

    /// Bracket extended bilinearly over homogeneous components.
    pub fn bracket_any(&self, other: &SVectorField) -> Result<SVectorField> {
        let (xe, xo) = self.split_parity();
        let (ye, yo) = other.split_parity();
        let mut out = SVectorField::zero(&self.sig);
        for x in [&xe, &xo] {
            for y in [&ye, &yo] {
                if x.is_zero() || y.is_zero() {
                    continue;
                }
                out = &out + &x.bracket(y)?;
            }
        }
        Ok(out)
    }

    /// `div X = Σ ∂f_x/∂x + Σ (-1)^{p(f_i)} ∂f_i/∂θ_i`.
    pub fn divergence(&self) -> SuperPoly {
        let mut out = SuperPoly::zero(&self.sig);
        for (c, v) in self.coeffs.iter().zip(self.coords()) {
            if v.is_odd() {
                let (e, o) = c.split_parity();
                out = &(&out + &e.derive(v)) - &o.derive(v);
            } else {
                out = &out + &c.derive(v);
            }
        }
        out
    }
}

/// `λ z^{-1} f_0 + div X = 0` on the Laurent superline.
pub fn svect_member(x: &SVectorField, lambda: &GaussRat) -> Result<bool> {
    let z = x.sig().var("z")?;
    let zinv = SuperPoly::gen(x.sig(), z).inverse()?;
    let twist = (&zinv * x.coeff(z)?).scale(lambda);
    Ok((&twist + &x.divergence()).is_zero())
}

impl Add for &SVectorField {
    type Output = SVectorField;
    fn add(self, rhs: &SVectorField) -> SVectorField {
        assert_eq!(self.sig, rhs.sig, "signature mismatch");
        SVectorField {
            sig: self.sig.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &SVectorField {
    type Output = SVectorField;
    fn sub(self, rhs: &SVectorField) -> SVectorField {
        self + &(-rhs)
    }
}

impl Neg for &SVectorField {
    type Output = SVectorField;
    fn neg(self) -> SVectorField {
        self.scale(&-GaussRat::from_int(1))
    }
}

/// Prints `Σ c_k * basis_k`, parenthesising multi-term coefficients.
pub(crate) fn combo_text(coeffs: &[SuperPoly], basis: &[String]) -> String {
    let mut pieces = Vec::new();
    for (c, b) in coeffs.iter().zip(basis) {
        if c.is_zero() {
            continue;
        }
        if c.n_terms() == 1 {
            let (neg, body) = c.signed_terms().remove(0);
            if body == "1" {
                pieces.push((neg, b.clone()));
            } else {
                pieces.push((neg, format!("{body}*{b}")));
            }
        } else {
            pieces.push((false, format!("({c})*{b}")));
        }
    }
    crate::ring::join_signed(&pieces)
}

impl fmt::Display for SVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let basis: Vec<String> = self
            .coords()
            .iter()
            .map(|&v| format!("d_{}", self.sig.var_name(v)))
            .collect();
        write!(f, "{}", combo_text(&self.coeffs, &basis))
    }
}
