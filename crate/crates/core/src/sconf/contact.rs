//! Contact vector fields `K_f`, super Riemann surface transition checks and
//! the contact distribution on the 1|1 superline.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{RingSignature, SuperPoly, Var};
use crate::sconf::field::SVectorField;
use crate::sconf::form::{pair, OneForm};

/// `K_f = (2-E)(f) ∂_z - H_f + (∂f/∂z) Σ θ_i ∂_{θ_i}` for homogeneous `f`,
/// with `H_f = -(-1)^{p(f)} Σ (∂f/∂θ_i) ∂_{θ_i}`.
pub fn k_f(f: &SuperPoly) -> Result<SVectorField> {
    let sig = f.sig();
    let pf = f.parity_bit()?;
    let z = sig.var("z")?;
    let fz = f.derive(z);
    let coeffs = sig
        .coords()
        .iter()
        .map(|&v| match v {
            Var::Even(_) if v == z => f.two_minus_euler(),
            Var::Even(_) => SuperPoly::zero(sig),
            Var::Odd(_) => {
                let h = f.derive(v);
                let minus_h = if pf { -&h } else { h };
                &minus_h + &(&fz * &SuperPoly::gen(sig, v))
            }
        })
        .collect();
    SVectorField::new(sig, coeffs)
}

/// Checks `ψ = g η` and `g² = f' + ψ ψ'` in the superline's `z`.
pub fn srs_transition_check(
    f: &SuperPoly,
    g: &SuperPoly,
    psi: &SuperPoly,
    eta: &SuperPoly,
) -> Result<bool> {
    for (name, p, odd) in [("f", f, false), ("g", g, false), ("psi", psi, true), ("eta", eta, true)] {
        let ok = if odd { p.is_odd() } else { p.is_even() || p.is_zero() };
        if !ok {
            return Err(Error::Parity(format!("{name} has the wrong parity")));
        }
    }
    let z = f.sig().var("z")?;
    let first = *psi == g.try_mul(eta)?;
    let rhs = &f.derive(z) + &(psi * &psi.derive(z));
    Ok(first && g * g == rhs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistributionReport {
    pub odd: bool,
    pub tangent: bool,
    pub non_integrable: bool,
}

impl DistributionReport {
    pub fn pass(&self) -> bool {
        self.odd && self.tangent && self.non_integrable
    }
}

/// The generator `∂_θ + θ ∂_z` of the contact distribution on the 1|1 line.
pub fn standard_distribution(sig: &Arc<RingSignature>) -> Result<SVectorField> {
    let t = SuperPoly::gen(sig, sig.var("th1")?);
    Ok(&SVectorField::partial_by(sig, "th1")? + &SVectorField::partial_by(sig, "z")?.mul_left(&t))
}

/// Tests that `D` is odd, lies in the kernel of `α_1`, and that `[D,D]` is
/// not a multiple `g D` of `D`.
pub fn contact_distribution_check(d: &SVectorField) -> Result<DistributionReport> {
    let mut report = DistributionReport {
        odd: matches!(d.parity_bit(), Ok(true)) && !d.is_zero(),
        tangent: false,
        non_integrable: false,
    };
    if !report.odd {
        return Ok(report);
    }
    let alpha = OneForm::contact(d.sig(), false)?;
    report.tangent = pair(d, &alpha)?.is_zero();
    let dd = d.bracket(d)?;
    report.non_integrable = !is_multiple(&dd, d)?;
    Ok(report)
}

/// Whether `y = g x` for some function `g`, decided through a unit
/// coefficient of `x`.
fn is_multiple(y: &SVectorField, x: &SVectorField) -> Result<bool> {
    if y.is_zero() {
        return Ok(true);
    }
    for (k, c) in x.coeffs().iter().enumerate() {
        if let Ok(inv) = c.inverse() {
            let g = &y.coeffs()[k] * &inv;
            return Ok(x.mul_left(&g) == *y);
        }
    }
    Err(Error::Domain(
        "distribution generator has no invertible coefficient".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::GaussRat;
    use crate::ring::contact_bracket;

    fn var(s: &Arc<RingSignature>, name: &str) -> SuperPoly {
        SuperPoly::var(s, name).unwrap()
    }

    #[test]
    fn kf_examples() {
        let s = RingSignature::superline(2, 0);
        let dz = SVectorField::partial_by(&s, "z").unwrap();
        assert_eq!(k_f(&SuperPoly::one(&s)).unwrap(), dz.scale(&2.into()));
        let z = var(&s, "z");
        let euler = &SVectorField::partial_by(&s, "th1").unwrap().mul_left(&var(&s, "th1"))
            + &SVectorField::partial_by(&s, "th2").unwrap().mul_left(&var(&s, "th2"));
        assert_eq!(k_f(&z).unwrap(), &dz.mul_left(&z.scale(&2.into())) + &euler);
        let s1 = RingSignature::superline(1, 0);
        assert_eq!(k_f(&var(&s1, "th1")).unwrap().to_string(), "th1*d_z - d_th1");
        let mixed = &z + &var(&s, "th1");
        assert_eq!(k_f(&mixed), Err(Error::Inhomogeneous));
    }

    #[test]
    fn kf_is_bracket_homomorphism_on_samples() {
        let s = RingSignature::superline(2, 0);
        let z = var(&s, "z");
        let t1 = var(&s, "th1");
        let t2 = var(&s, "th2");
        let samples = [z.clone(), &z * &t1, &t1 * &t2, t2.clone(), z.pow(-1).unwrap()];
        for f in &samples {
            for g in &samples {
                let lhs = k_f(f).unwrap().bracket(&k_f(g).unwrap()).unwrap();
                let rhs = k_f(&contact_bracket(f, g).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "f = {f}, g = {g}");
            }
        }
    }

    #[test]
    fn srs_transitions() {
        let s = RingSignature::superline(0, 1);
        let z = var(&s, "z");
        let zero = SuperPoly::zero(&s);
        let cube = z.pow(3).unwrap().scale(&GaussRat::ratio(1, 3));
        assert!(srs_transition_check(&cube, &z, &zero, &zero).unwrap());
        assert!(!srs_transition_check(&(&z * &z), &z, &zero, &zero).unwrap());
        let p = var(&s, "p1");
        assert!(srs_transition_check(&z, &SuperPoly::one(&s), &p, &p).unwrap());
        assert!(srs_transition_check(&p, &z, &zero, &zero).is_err());
    }

    #[test]
    fn distribution_checks() {
        let s = RingSignature::superline(1, 0);
        let d = standard_distribution(&s).unwrap();
        assert!(contact_distribution_check(&d).unwrap().pass());
        let flat = SVectorField::partial_by(&s, "th1").unwrap();
        let r = contact_distribution_check(&flat).unwrap();
        assert!(!r.pass() && !r.non_integrable);
        let skew = SVectorField::partial_by(&s, "z").unwrap().mul_left(&var(&s, "th1"));
        let r = contact_distribution_check(&skew).unwrap();
        assert!(r.odd && !r.tangent && !r.pass());
        let even = SVectorField::partial_by(&s, "z").unwrap();
        let r = contact_distribution_check(&even).unwrap();
        assert!(!r.odd && !r.pass());
    }
}
