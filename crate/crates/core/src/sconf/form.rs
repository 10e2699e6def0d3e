//! One-forms `Σ b_v dv` (coefficients on the left), the pairing with
//! vector fields, exterior derivative of functions and Lie derivatives.

use std::fmt;
use std::ops::{Add, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{RingSignature, SuperPoly, Var};
use crate::sconf::field::{combo_text, SVectorField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm {
    sig: Arc<RingSignature>,
    coeffs: Vec<SuperPoly>,
}

impl OneForm {
    pub fn zero(sig: &Arc<RingSignature>) -> Self {
        OneForm {
            sig: sig.clone(),
            coeffs: sig.coords().iter().map(|_| SuperPoly::zero(sig)).collect(),
        }
    }

    pub fn new(sig: &Arc<RingSignature>, coeffs: Vec<SuperPoly>) -> Result<Self> {
        if coeffs.len() != sig.coords().len() {
            return Err(Error::SignatureMismatch);
        }
        Ok(OneForm {
            sig: sig.clone(),
            coeffs,
        })
    }

    pub fn sig(&self) -> &Arc<RingSignature> {
        &self.sig
    }

    pub fn coeffs(&self) -> &[SuperPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, v: Var) -> Result<&SuperPoly> {
        let idx = self
            .sig
            .coords()
            .iter()
            .position(|&c| c == v)
            .ok_or_else(|| Error::UnknownVariable(self.sig.var_name(v)))?;
        Ok(&self.coeffs[idx])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(SuperPoly::is_zero)
    }

    pub fn mul_left(&self, f: &SuperPoly) -> OneForm {
        OneForm {
            sig: self.sig.clone(),
            coeffs: self.coeffs.iter().map(|c| f * c).collect(),
        }
    }

    /// `df`, normalised so that `⟨X, df⟩ = X(f)`.
    pub fn d(f: &SuperPoly) -> OneForm {
        let sig = f.sig().clone();
        let (fe, fo) = f.split_parity();
        let coeffs = sig
            .coords()
            .iter()
            .map(|&v| {
                let de = fe.derive(v);
                let dodd = fo.derive(v);
                if v.is_odd() {
                    // sign (-1)^{p(v)(p(f)+p(v))}: -1 for even f, +1 for odd f
                    &dodd - &de
                } else {
                    &de + &dodd
                }
            })
            .collect();
        OneForm { sig, coeffs }
    }

    /// The contact form `dz + Σ θ_i dθ_i`, or its Möbius variant with the
    /// last term replaced by `z θ_n dθ_n`.
    pub fn contact(sig: &Arc<RingSignature>, mobius: bool) -> Result<OneForm> {
        let z = sig.var("z")?;
        let n = sig.n_fiber();
        let mut form = OneForm::zero(sig);
        for (k, v) in sig.coords().into_iter().enumerate() {
            form.coeffs[k] = match v {
                Var::Even(_) if v == z => SuperPoly::one(sig),
                Var::Even(_) => SuperPoly::zero(sig),
                Var::Odd(b) => {
                    let th = SuperPoly::gen(sig, v);
                    if mobius && b + 1 == n {
                        &SuperPoly::gen(sig, z) * &th
                    } else {
                        th
                    }
                }
            };
        }
        Ok(form)
    }
}

/// `⟨Σ f_v ∂_v, Σ b_v dv⟩ = Σ (-1)^{p(b_v)p(v)} f_v b_v`.
pub fn pair(x: &SVectorField, w: &OneForm) -> Result<SuperPoly> {
    if x.sig() != w.sig() {
        return Err(Error::SignatureMismatch);
    }
    let mut out = SuperPoly::zero(x.sig());
    for ((f, b), v) in x.coeffs().iter().zip(&w.coeffs).zip(x.coords()) {
        if v.is_odd() {
            let (be, bo) = b.split_parity();
            out = &out + &(&(f * &be) - &(f * &bo));
        } else {
            out = &out + &(f * b);
        }
    }
    Ok(out)
}

/// `L_X ω = Σ X(b_v) dv + (-1)^{p(X)p(b_v)} b_v d(X(v))`.
pub fn lie_deriv_form(x: &SVectorField, w: &OneForm) -> Result<OneForm> {
    if x.sig() != w.sig() {
        return Err(Error::SignatureMismatch);
    }
    let px = x.parity_bit()?;
    let mut out = OneForm::zero(x.sig());
    for (k, b) in w.coeffs.iter().enumerate() {
        if b.is_zero() {
            continue;
        }
        out.coeffs[k] = &out.coeffs[k] + &x.apply(b)?;
        let dx = OneForm::d(&x.coeffs()[k]);
        let (be, bo) = b.split_parity();
        let signed = if px { &be - &bo } else { b.clone() };
        out = &out + &dx.mul_left(&signed);
    }
    Ok(out)
}

/// Multiplier `f` with `L_X α = f α` if it exists, for the standard or
/// Möbius contact form.
pub fn k_member(x: &SVectorField, mobius: bool) -> Result<Option<SuperPoly>> {
    let alpha = OneForm::contact(x.sig(), mobius)?;
    let l = lie_deriv_form(x, &alpha)?;
    let f = l.coeff(x.sig().var("z")?)?.clone();
    Ok((alpha.mul_left(&f) == l).then_some(f))
}

impl Add for &OneForm {
    type Output = OneForm;
    fn add(self, rhs: &OneForm) -> OneForm {
        assert_eq!(self.sig, rhs.sig, "signature mismatch");
        OneForm {
            sig: self.sig.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &OneForm {
    type Output = OneForm;
    fn sub(self, rhs: &OneForm) -> OneForm {
        self + &rhs.mul_left(&SuperPoly::int(&rhs.sig, -1))
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let basis: Vec<String> = self
            .sig
            .coords()
            .iter()
            .map(|&v| format!("d{}", self.sig.var_name(v)))
            .collect();
        write!(f, "{}", combo_text(&self.coeffs, &basis))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sconf::contact::k_f;

    fn var(s: &Arc<RingSignature>, name: &str) -> SuperPoly {
        SuperPoly::var(s, name).unwrap()
    }

    fn d(s: &Arc<RingSignature>, name: &str) -> SVectorField {
        SVectorField::partial_by(s, name).unwrap()
    }

    #[test]
    fn pairing_basics() {
        let s = RingSignature::superline(1, 0);
        let dz = OneForm::d(&var(&s, "z"));
        assert_eq!(pair(&d(&s, "z"), &dz).unwrap(), SuperPoly::one(&s));
        let t = var(&s, "th1");
        let x = d(&s, "th1").mul_left(&t);
        let dt = OneForm::d(&t);
        assert_eq!(pair(&x, &dt).unwrap(), t);
        assert_eq!(pair(&x, &dt).unwrap(), x.apply(&t).unwrap());
    }

    #[test]
    fn contact_kernel_forces_f_eq_g_theta() {
        let s = RingSignature::superline(1, 2);
        let alpha = OneForm::contact(&s, false).unwrap();
        let t = var(&s, "th1");
        let z = var(&s, "z");
        // g even, f odd: the pairing vanishes exactly when f = g θ
        for g in [SuperPoly::one(&s), &z * &z, &(&var(&s, "p1") * &var(&s, "p2")) + &z] {
            let f = &g * &t;
            let x = &d(&s, "z").mul_left(&f) + &d(&s, "th1").mul_left(&g);
            assert!(pair(&x, &alpha).unwrap().is_zero());
            let wrong = &d(&s, "z").mul_left(&(&t * &g)) + &d(&s, "th1").mul_left(&z);
            assert!(!pair(&wrong, &alpha).unwrap().is_zero());
        }
    }

    #[test]
    fn lie_derivative_examples() {
        let s = RingSignature::superline(1, 0);
        let dz = OneForm::d(&var(&s, "z"));
        assert!(lie_deriv_form(&d(&s, "z"), &dz).unwrap().is_zero());
        let alpha = OneForm::contact(&s, false).unwrap();
        let k1 = k_f(&SuperPoly::one(&s)).unwrap();
        assert!(lie_deriv_form(&k1, &alpha).unwrap().is_zero());
        let kz = k_f(&var(&s, "z")).unwrap();
        assert_eq!(
            lie_deriv_form(&kz, &alpha).unwrap(),
            alpha.mul_left(&SuperPoly::int(&s, 2))
        );
    }

    #[test]
    fn membership_examples() {
        let s = RingSignature::superline(1, 0);
        let kz = k_f(&var(&s, "z")).unwrap();
        assert_eq!(k_member(&kz, false).unwrap(), Some(SuperPoly::int(&s, 2)));
        let bad = d(&s, "th1").mul_left(&var(&s, "z"));
        assert_eq!(k_member(&bad, false).unwrap(), None);
        let kt = k_f(&var(&s, "th1")).unwrap();
        assert_eq!(k_member(&kt, false).unwrap(), Some(SuperPoly::zero(&s)));
    }

    #[test]
    fn mobius_form_shape() {
        let s = RingSignature::superline(2, 0);
        let m = OneForm::contact(&s, true).unwrap();
        assert_eq!(m.to_string(), "dz + th1*dth1 + z*th2*dth2");
    }
}
