//! Morphisms `φ = φ_R ∘ exp(Σ τ_I X_I)` of a superdomain with base odds
//! `τ = p1..pK`, acting on functions by pullback
//! `φ*(f) = α_0(exp(N) f)` with `N = Σ τ_I X_I`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::coeff::GaussRat;
use crate::error::{Error, Result};
use crate::morph::coordmap::CoordMap;
use crate::morph::tensor::Tensor11;
use crate::ring::{RingSignature, SuperPoly};
use crate::sconf::SVectorField;

/// Vector fields `X_I` keyed by nonempty base-odd masks.
pub type NilPart = BTreeMap<u64, SVectorField>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperMorphism {
    sig: Arc<RingSignature>,
    underlying: CoordMap,
    inverse: Option<CoordMap>,
    nilpart: NilPart,
}

/// Base-odd mask for 1-based indices of `p1..pK`.
pub fn base_mask(sig: &RingSignature, indices: &[usize]) -> Result<u64> {
    let mut mask = 0u64;
    for &j in indices {
        if j == 0 || j > sig.n_base() {
            return Err(Error::OutOfRange(format!("base odd p{j}")));
        }
        mask |= 1 << sig.base_bit(j);
    }
    Ok(mask)
}

/// 1-based base indices of a mask.
pub fn base_indices(sig: &RingSignature, mask: u64) -> Vec<usize> {
    (1..=sig.n_base())
        .filter(|&j| mask >> sig.base_bit(j) & 1 == 1)
        .collect()
}

fn check_nilpart(sig: &Arc<RingSignature>, nilpart: &NilPart) -> Result<()> {
    let bm = sig.base_mask();
    for (&mask, x) in nilpart {
        if mask == 0 || mask & !bm != 0 {
            return Err(Error::OutOfRange(format!("nilpart key {mask:#b}")));
        }
        if x.sig() != sig {
            return Err(Error::SignatureMismatch);
        }
        if x.coeffs().iter().any(|c| c.body() != *c) {
            return Err(Error::Domain(
                "nilpart coefficients must not involve base odds".into(),
            ));
        }
        let want = mask.count_ones() % 2 == 1;
        if !x.is_zero() && x.parity_bit()? != want {
            return Err(Error::Parity(format!(
                "X_{:?} must be {}",
                base_indices(sig, mask),
                if want { "odd" } else { "even" }
            )));
        }
    }
    Ok(())
}

/// `N = Σ τ_I X_I`, an even field.
pub fn nil_field(sig: &Arc<RingSignature>, nilpart: &NilPart) -> SVectorField {
    let mut n = SVectorField::zero(sig);
    for (&mask, x) in nilpart {
        n = &n + &x.mul_left(&SuperPoly::base_monomial(sig, mask));
    }
    n
}

/// `exp(N) f`; the series stops once a power of `N` kills `f`.
pub fn exp_apply(sig: &Arc<RingSignature>, nilpart: &NilPart, f: &SuperPoly) -> Result<SuperPoly> {
    check_nilpart(sig, nilpart)?;
    let n = nil_field(sig, nilpart);
    let mut acc = f.clone();
    let mut term = f.clone();
    let mut m = 1i64;
    loop {
        term = n.apply(&term)?.scale(&GaussRat::ratio(1, m));
        if term.is_zero() {
            return Ok(acc);
        }
        acc = &acc + &term;
        m += 1;
    }
}

/// `exp(ad N) Z`, or `exp(-ad N) Z` when `negate` is set.
pub fn exp_ad(n: &SVectorField, z: &SVectorField, negate: bool) -> Result<SVectorField> {
    let mut acc = z.clone();
    let mut term = z.clone();
    let mut m = 1i64;
    loop {
        let c = if negate { GaussRat::ratio(-1, m) } else { GaussRat::ratio(1, m) };
        term = n.bracket_any(&term)?.scale(&c);
        if term.is_zero() {
            return Ok(acc);
        }
        acc = &acc + &term;
        m += 1;
    }
}

impl SuperMorphism {
    pub fn new(
        underlying: CoordMap,
        inverse: Option<CoordMap>,
        nilpart: NilPart,
    ) -> Result<Self> {
        let sig = underlying.sig().clone();
        if !underlying.is_base_free() {
            return Err(Error::Domain("underlying map must not involve base odds".into()));
        }
        if let Some(inv) = &inverse {
            if !inv.is_base_free() || !underlying.is_inverse_of(inv)? {
                return Err(Error::InvalidInverse(
                    "composites with the underlying map are not the identity".into(),
                ));
            }
        }
        check_nilpart(&sig, &nilpart)?;
        let nilpart = nilpart.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        Ok(SuperMorphism {
            sig,
            underlying,
            inverse,
            nilpart,
        })
    }

    pub fn identity(sig: &Arc<RingSignature>) -> Self {
        SuperMorphism {
            sig: sig.clone(),
            underlying: CoordMap::identity(sig),
            inverse: Some(CoordMap::identity(sig)),
            nilpart: NilPart::new(),
        }
    }

    pub fn sig(&self) -> &Arc<RingSignature> {
        &self.sig
    }

    pub fn underlying(&self) -> &CoordMap {
        &self.underlying
    }

    pub fn underlying_inverse(&self) -> Option<&CoordMap> {
        self.inverse.as_ref()
    }

    pub fn nilpart(&self) -> &NilPart {
        &self.nilpart
    }

    fn inverse_map(&self) -> Result<&CoordMap> {
        self.inverse.as_ref().ok_or(Error::MissingInverse)
    }

    /// `φ*(f) = α_0(exp(N) f)`.
    pub fn apply(&self, f: &SuperPoly) -> Result<SuperPoly> {
        self.underlying.apply(&exp_apply(&self.sig, &self.nilpart, f)?)
    }

    /// Pullbacks of the coordinates.
    pub fn images(&self) -> Result<Vec<SuperPoly>> {
        self.sig
            .coords()
            .into_iter()
            .map(|v| self.apply(&SuperPoly::gen(&self.sig, v)))
            .collect()
    }
}

pub fn morph_apply(phi: &SuperMorphism, f: &SuperPoly) -> Result<SuperPoly> {
    phi.apply(f)
}

/// Recovers `φ_R` and the `X_I` from coordinate images, by induction on
/// `|I|`: the `τ_I` part of what is still missing equals `τ_I α_0(X_I(x))`.
pub fn factorize(
    sig: &Arc<RingSignature>,
    images: &[SuperPoly],
    inverse: Option<&CoordMap>,
) -> Result<SuperMorphism> {
    let inverse = inverse.ok_or(Error::MissingInverse)?;
    let coords = sig.coords();
    if images.len() != coords.len() {
        return Err(Error::SignatureMismatch);
    }
    let body: Vec<SuperPoly> = images.iter().map(SuperPoly::body).collect();
    let underlying = CoordMap::new(sig, body).map_err(|e| match e {
        Error::Parity(m) => Error::NotHomomorphism(m),
        other => other,
    })?;
    let mut phi = SuperMorphism::new(underlying, Some(inverse.clone()), NilPart::new())?;
    let mut masks: Vec<u64> = (1..=crate::ring::low_bits(sig.n_base()))
        .map(|m| m << sig.n_fiber())
        .collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for mask in masks {
        let current = phi.images()?;
        let coeffs = images
            .iter()
            .zip(&current)
            .map(|(want, have)| inverse.apply(&(want - have).base_component(mask)))
            .collect::<Result<Vec<_>>>()?;
        let x = SVectorField::new(sig, coeffs)?;
        if x.is_zero() {
            continue;
        }
        let want = mask.count_ones() % 2 == 1;
        if x.parity_bit().ok() != Some(want) {
            return Err(Error::NotHomomorphism(format!(
                "component at {:?} has the wrong parity",
                base_indices(sig, mask)
            )));
        }
        phi.nilpart.insert(mask, x);
    }
    if phi.images()? != images {
        return Err(Error::NotHomomorphism("reconstruction does not reproduce the input".into()));
    }
    Ok(phi)
}

/// `φ^{-1}` in normal form: underlying `α_0^{-1}` and
/// `M_I = -α_0 ∘ X_I ∘ α_0^{-1}`.
pub fn invert(phi: &SuperMorphism) -> Result<SuperMorphism> {
    let inv = phi.inverse_map()?;
    let nilpart = phi
        .nilpart
        .iter()
        .map(|(&mask, x)| Ok((mask, inv.conjugate(&phi.underlying, x)?.scale(&GaussRat::from_int(-1)))))
        .collect::<Result<NilPart>>()?;
    SuperMorphism::new(inv.clone(), Some(phi.underlying.clone()), nilpart)
}

/// `outer ∘ inner` as maps, i.e. pullback `inner* ∘ outer*`, in normal form.
pub fn compose(outer: &SuperMorphism, inner: &SuperMorphism) -> Result<SuperMorphism> {
    if outer.sig != inner.sig {
        return Err(Error::SignatureMismatch);
    }
    let images = outer
        .images()?
        .iter()
        .map(|p| inner.apply(p))
        .collect::<Result<Vec<_>>>()?;
    let inverse = inner.inverse_map()?.then(outer.inverse_map()?)?;
    factorize(&inner.sig, &images, Some(&inverse))
}

/// `Dφ_R(Y) = α_0^{-1} ∘ Y ∘ α_0`.
pub fn differential_underlying(phi: &SuperMorphism, y: &SVectorField) -> Result<SVectorField> {
    phi.underlying.conjugate(phi.inverse_map()?, y)
}

/// `Dφ(Y) = exp(-ad N) Dφ_R(Y)`.
pub fn differential(phi: &SuperMorphism, y: &SVectorField) -> Result<SVectorField> {
    let base = differential_underlying(phi, y)?;
    exp_ad(&nil_field(&phi.sig, &phi.nilpart), &base, true)
}

/// `Dφ(Y)` as the operator `(φ*)^{-1} ∘ Y ∘ φ*` evaluated on coordinates.
pub fn differential_by_conjugation(phi: &SuperMorphism, y: &SVectorField) -> Result<SVectorField> {
    let psi = invert(phi)?;
    let coeffs = phi
        .images()?
        .iter()
        .map(|img| psi.apply(&y.apply(img)?))
        .collect::<Result<Vec<_>>>()?;
    SVectorField::new(&phi.sig, coeffs)
}

/// `L_N σ`: column `v` is `[N, σ(∂_v)] - σ([N, ∂_v])`.
fn lie_tensor(n: &SVectorField, sigma: &Tensor11) -> Result<Tensor11> {
    let sig = sigma.sig();
    let cols = sig
        .coords()
        .into_iter()
        .zip(sigma.columns())
        .map(|(v, col)| {
            let dv = SVectorField::partial(sig, v)?;
            Ok(&n.bracket_any(col)? - &sigma.apply(&n.bracket_any(&dv)?)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Tensor11::from_columns(sig, cols)
}

/// `φ*σ = φ_R^*(exp(L_N) σ)` with `φ_R^*τ = Dφ_R^{-1} ∘ τ ∘ Dφ_R`.
pub fn pullback_tensor(phi: &SuperMorphism, sigma: &Tensor11) -> Result<Tensor11> {
    if sigma.sig() != &phi.sig {
        return Err(Error::SignatureMismatch);
    }
    let inv = phi.inverse_map()?;
    let n = nil_field(&phi.sig, &phi.nilpart);
    let mut acc = sigma.clone();
    let mut term = sigma.clone();
    let mut m = 1i64;
    loop {
        term = lie_tensor(&n, &term)?.scale(&GaussRat::ratio(1, m));
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term);
        m += 1;
    }
    let sig = phi.sig.clone();
    let cols = sig
        .coords()
        .into_iter()
        .map(|v| {
            let dv = SVectorField::partial(&sig, v)?;
            let pushed = phi.underlying.conjugate(inv, &dv)?;
            inv.conjugate(&phi.underlying, &acc.apply(&pushed)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Tensor11::from_columns(&sig, cols)
}

/// `Dφ^{-1} ∘ σ ∘ Dφ`, computed through the inverse morphism.
pub fn pullback_tensor_direct(phi: &SuperMorphism, sigma: &Tensor11) -> Result<Tensor11> {
    let psi = invert(phi)?;
    let sig = phi.sig.clone();
    let cols = sig
        .coords()
        .into_iter()
        .map(|v| {
            let dv = SVectorField::partial(&sig, v)?;
            differential(&psi, &sigma.apply(&differential(phi, &dv)?)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Tensor11::from_columns(&sig, cols)
}

/// `{Dφ_R(X_I)}`, checked through `α_0 ∘ exp(Σ τ_I Dφ_R X_I) = exp(Σ τ_I X_I) ∘ α_0`
/// on coordinates and their pairwise products.
pub fn semidirect_conjugate(
    underlying: &CoordMap,
    inverse: &CoordMap,
    nilpart: &NilPart,
) -> Result<NilPart> {
    if !underlying.is_inverse_of(inverse)? {
        return Err(Error::InvalidInverse("not an inverse of the underlying map".into()));
    }
    let sig = underlying.sig().clone();
    let out = nilpart
        .iter()
        .map(|(&mask, x)| Ok((mask, underlying.conjugate(inverse, x)?)))
        .collect::<Result<NilPart>>()?;
    let coords: Vec<SuperPoly> = sig.coords().into_iter().map(|v| SuperPoly::gen(&sig, v)).collect();
    let mut samples = coords.clone();
    for a in &coords {
        for b in &coords {
            samples.push(a * b);
        }
    }
    for f in &samples {
        let lhs = underlying.apply(&exp_apply(&sig, &out, f)?)?;
        let rhs = exp_apply(&sig, nilpart, &underlying.apply(f)?)?;
        if lhs != rhs {
            return Err(Error::Domain(format!("conjugation identity fails on {f}")));
        }
    }
    Ok(out)
}
