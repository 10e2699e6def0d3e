//! Almost complex structures on the 2|2 local model with coordinates
//! `z, zb, th1, thb1`, an optional square-zero parameter `t` and base odds.

use std::sync::Arc;

use num_traits::One;
use serde::Serialize;

use crate::coeff::GaussRat;
use crate::error::{Error, Result};
use crate::morph::Tensor11;
use crate::ring::{EvenVar, RingSignature, SuperPoly, Var};
use crate::sconf::SVectorField;

/// Ring and coordinate data of the 2|2 model.
#[derive(Clone, Debug)]
pub struct R22 {
    pub sig: Arc<RingSignature>,
    pub z: Var,
    pub zb: Var,
    pub th: Var,
    pub thb: Var,
    pub t: Var,
}

impl R22 {
    /// The model with `k` base odds; `t` is always declared.
    pub fn new(k: usize) -> Self {
        let sig = RingSignature::new(
            vec![EvenVar::poly("z"), EvenVar::poly("zb"), EvenVar::square_zero("t")],
            vec!["th1".into(), "thb1".into()],
            k,
        )
        .unwrap();
        let sig = Arc::new(sig);
        R22 {
            z: sig.var("z").unwrap(),
            zb: sig.var("zb").unwrap(),
            th: sig.var("th1").unwrap(),
            thb: sig.var("thb1").unwrap(),
            t: sig.var("t").unwrap(),
            sig,
        }
    }

    pub fn var(&self, v: Var) -> SuperPoly {
        SuperPoly::gen(&self.sig, v)
    }

    pub fn partial(&self, v: Var) -> SVectorField {
        SVectorField::partial(&self.sig, v).unwrap()
    }

    /// The standard structure: `i` on `∂_z, ∂_θ`, `-i` on `∂_zb, ∂_thb`.
    pub fn j0(&self) -> Tensor11 {
        let diag: Vec<GaussRat> = self
            .sig
            .coords()
            .into_iter()
            .map(|v| {
                if v == self.z || v == self.th {
                    GaussRat::i()
                } else {
                    -GaussRat::i()
                }
            })
            .collect();
        Tensor11::diagonal(&self.sig, &diag).unwrap()
    }

    /// Complex conjugation: `z ↔ zb`, `th1 ↔ thb1`, `i ↦ -i`, factor order
    /// kept (so reordering produces signs).
    pub fn conj(&self, f: &SuperPoly) -> Result<SuperPoly> {
        let swap = |v: Var| {
            let w = if v == self.z {
                self.zb
            } else if v == self.zb {
                self.z
            } else if v == self.th {
                self.thb
            } else if v == self.thb {
                self.th
            } else {
                v
            };
            SuperPoly::gen(&self.sig, w)
        };
        let evens: Vec<SuperPoly> = (0..self.sig.n_evens()).map(|i| swap(Var::Even(i))).collect();
        let odds: Vec<SuperPoly> = (0..self.sig.n_odd()).map(|b| swap(Var::Odd(b))).collect();
        f.map_coeffs(GaussRat::conj).subst(&self.sig, &evens, &odds)
    }

    fn field(&self, parts: &[(Var, &SuperPoly)]) -> SVectorField {
        let mut x = SVectorField::zero(&self.sig);
        for (v, c) in parts {
            x = &x + &self.partial(*v).mul_left(c);
        }
        x
    }
}

/// `J² = -1`.
pub fn is_acs(j: &Tensor11) -> Result<bool> {
    let sq = j.compose(j)?;
    Ok(sq == Tensor11::identity(j.sig()).scale(&-GaussRat::one()))
}

/// `N_J(X,Y) = [JX,JY] - J[JX,Y] - J[X,JY] - [X,Y]`.
pub fn nijenhuis(j: &Tensor11, x: &SVectorField, y: &SVectorField) -> Result<SVectorField> {
    if !j.is_even() {
        return Err(Error::Parity("J must be even".into()));
    }
    let jx = j.apply(x)?;
    let jy = j.apply(y)?;
    let a = jx.bracket(&jy)?;
    let b = j.apply(&jx.bracket(y)?)?;
    let c = j.apply(&x.bracket(&jy)?)?;
    let d = x.bracket(y)?;
    Ok(&(&(&a - &b) - &c) - &d)
}

fn anticommutes(a: &Tensor11, b: &Tensor11) -> Result<bool> {
    Ok(a.compose(b)?.add(&b.compose(a)?).is_zero())
}

/// `(1+H) J0 (1+H)^{-1}` for `H` anticommuting with `J0`.
pub fn af_chart(j0: &Tensor11, h: &Tensor11) -> Result<Tensor11> {
    if !anticommutes(j0, h)? {
        return Err(Error::NotTangent);
    }
    let one_h = Tensor11::identity(j0.sig()).add(h);
    let inv = one_h.inverse()?;
    one_h.compose(j0)?.compose(&inv)
}

/// `(J - J0)(J + J0)^{-1}`.
pub fn af_chart_inv(j0: &Tensor11, j: &Tensor11) -> Result<Tensor11> {
    let inv = j.add(j0).inverse()?;
    j.sub(j0).compose(&inv)
}

/// `H± = ½(H ± J0 H J0)`: `H+` anticommutes and `H-` commutes with `J0`.
pub fn split_pm(h: &Tensor11, j0: &Tensor11) -> Result<(Tensor11, Tensor11)> {
    let jhj = j0.compose(h)?.compose(j0)?;
    let half = GaussRat::ratio(1, 2);
    Ok((h.add(&jhj).scale(&half), h.sub(&jhj).scale(&half)))
}

/// The coefficients of an infinitesimal deformation: `H(∂_zb) = α∂_z + γ∂_θ`
/// and `H(∂_thb) = β∂_z + δ∂_θ`; the holomorphic columns are conjugates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationH {
    pub alpha: SuperPoly,
    pub beta: SuperPoly,
    pub gamma: SuperPoly,
    pub delta: SuperPoly,
}

impl DeformationH {
    pub fn new(alpha: SuperPoly, beta: SuperPoly, gamma: SuperPoly, delta: SuperPoly) -> Result<Self> {
        let even = |p: &SuperPoly| p.is_zero() || p.is_even();
        if !even(&alpha) || !even(&delta) {
            return Err(Error::Parity("alpha and delta must be even".into()));
        }
        if !beta.is_odd() || !gamma.is_odd() {
            return Err(Error::Parity("beta and gamma must be odd".into()));
        }
        Ok(DeformationH {
            alpha,
            beta,
            gamma,
            delta,
        })
    }

    pub fn zero(ctx: &R22) -> Self {
        let z = SuperPoly::zero(&ctx.sig);
        DeformationH {
            alpha: z.clone(),
            beta: z.clone(),
            gamma: z.clone(),
            delta: z,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.beta.is_zero() && self.gamma.is_zero() && self.delta.is_zero()
    }

    /// The full endomorphism, anticommuting with `J0`.
    pub fn tensor(&self, ctx: &R22) -> Result<Tensor11> {
        let cols = ctx
            .sig
            .coords()
            .into_iter()
            .map(|v| {
                Ok(if v == ctx.zb {
                    ctx.field(&[(ctx.z, &self.alpha), (ctx.th, &self.gamma)])
                } else if v == ctx.thb {
                    ctx.field(&[(ctx.z, &self.beta), (ctx.th, &self.delta)])
                } else if v == ctx.z {
                    ctx.field(&[(ctx.zb, &ctx.conj(&self.alpha)?), (ctx.thb, &ctx.conj(&self.gamma)?)])
                } else {
                    ctx.field(&[(ctx.zb, &ctx.conj(&self.beta)?), (ctx.thb, &ctx.conj(&self.delta)?)])
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Tensor11::from_columns(&ctx.sig, cols)
    }
}

/// `∂β/∂zb = ∂α/∂thb`, `∂δ/∂zb = ∂γ/∂thb`, `∂β/∂thb = 0`, `∂δ/∂thb = 0`.
pub fn integrable_deformation_check(ctx: &R22, h: &DeformationH) -> bool {
    h.beta.derive(ctx.zb) == h.alpha.derive(ctx.thb)
        && h.delta.derive(ctx.zb) == h.gamma.derive(ctx.thb)
        && h.beta.derive(ctx.thb).is_zero()
        && h.delta.derive(ctx.thb).is_zero()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub closed: bool,
    /// Brackets with a nonzero antiholomorphic component.
    pub offending: Vec<String>,
}

/// Builds `∂_z' = (1 + t/2 H)∂_z`, `∂_θ' = (1 + t/2 H)∂_θ` and tests whether
/// `[∂_z', ∂_θ']` and `[∂_θ', ∂_θ']` stay in their span, by rewriting each
/// bracket in the deformed frame and inspecting the `∂_zb, ∂_thb` parts.
pub fn eigenbasis_closure_check(ctx: &R22, h: &DeformationH) -> Result<ClosureReport> {
    let ht = h.tensor(ctx)?;
    let half_t = ctx.var(ctx.t).scale(&GaussRat::ratio(1, 2));
    let frame = |v: Var| -> Result<SVectorField> {
        let d = ctx.partial(v);
        Ok(&d + &ht.apply(&d)?.mul_left(&half_t))
    };
    let dz = frame(ctx.z)?;
    let dth = frame(ctx.th)?;
    let mut offending = Vec::new();
    for (name, w) in [("[d_z', d_th']", dz.bracket(&dth)?), ("[d_th', d_th']", dth.bracket(&dth)?)] {
        // coordinates in the deformed frame: (1 - t/2 H) w
        let w_frame = &w - &ht.apply(&w)?.mul_left(&half_t);
        if !w_frame.coeff(ctx.zb)?.is_zero() || !w_frame.coeff(ctx.thb)?.is_zero() {
            offending.push(name.to_string());
        }
    }
    Ok(ClosureReport {
        closed: offending.is_empty(),
        offending,
    })
}

/// `α = 2∂X^z/∂zb, γ = 2∂X^θ/∂zb, β = 2∂X^z/∂thb, δ = 2∂X^θ/∂thb`.
pub fn lie_deformation(ctx: &R22, x: &SVectorField) -> Result<DeformationH> {
    if x.parity_bit()? {
        return Err(Error::Parity("deforming field must be even".into()));
    }
    let two = GaussRat::from_int(2);
    let xz = x.coeff(ctx.z)?;
    let xt = x.coeff(ctx.th)?;
    DeformationH::new(
        xz.derive(ctx.zb).scale(&two),
        xz.derive(ctx.thb).scale(&two),
        xt.derive(ctx.zb).scale(&two),
        xt.derive(ctx.thb).scale(&two),
    )
}

/// `X` preserves the standard structure iff its deformation vanishes.
pub fn infinitesimal_automorphism_check(ctx: &R22, x: &SVectorField) -> Result<bool> {
    Ok(lie_deformation(ctx, x)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> R22 {
        R22::new(1)
    }

    #[test]
    fn conj_examples() {
        let c = ctx();
        let z = c.var(c.z);
        assert_eq!(c.conj(&z).unwrap(), c.var(c.zb));
        let th = c.var(c.th);
        let ith = th.scale(&GaussRat::i());
        assert_eq!(c.conj(&ith).unwrap(), c.var(c.thb).scale(&-GaussRat::i()));
        let prod = &th * &c.var(c.thb);
        assert_eq!(c.conj(&prod).unwrap(), -&prod);
        let f = &(&z * &th) + &(&c.var(c.thb) * &c.var(c.zb)).scale(&(&GaussRat::ratio(1, 2) + &GaussRat::i()));
        assert_eq!(c.conj(&c.conj(&f).unwrap()).unwrap(), f);
    }

    #[test]
    fn acs_examples() {
        let c = ctx();
        let j0 = c.j0();
        assert!(is_acs(&j0).unwrap());
        assert!(!is_acs(&Tensor11::identity(&c.sig)).unwrap());
        let h = DeformationH::new(
            c.var(c.z),
            c.var(c.th),
            &c.var(c.thb) * &c.var(c.zb),
            SuperPoly::int(&c.sig, 3),
        )
        .unwrap();
        let ht = h.tensor(&c).unwrap();
        let deformed = j0.add(&ht.map_columns(|col| Ok(col.mul_left(&c.var(c.t)))).unwrap());
        assert!(is_acs(&deformed).unwrap());
    }

    #[test]
    fn nijenhuis_standard_vanishes() {
        let c = ctx();
        let j0 = c.j0();
        let pairs = [(c.z, c.zb), (c.th, c.thb), (c.z, c.th)];
        for (a, b) in pairs {
            let n = nijenhuis(&j0, &c.partial(a), &c.partial(b)).unwrap();
            assert!(n.is_zero());
        }
    }

    #[test]
    fn chart_examples() {
        let c = ctx();
        let j0 = c.j0();
        let zero = Tensor11::zero(&c.sig);
        assert_eq!(af_chart(&j0, &zero).unwrap(), j0);
        let p = c.var(Var::Odd(c.sig.base_bit(1)));
        let h = DeformationH::new(
            &p * &c.var(c.thb),
            p.clone(),
            SuperPoly::zero(&c.sig),
            SuperPoly::zero(&c.sig),
        )
        .unwrap()
        .tensor(&c)
        .unwrap();
        let j = af_chart(&j0, &h).unwrap();
        assert!(is_acs(&j).unwrap());
        assert_eq!(af_chart_inv(&j0, &j).unwrap(), h);
        assert_eq!(af_chart(&j0, &Tensor11::identity(&c.sig)), Err(Error::NotTangent));
    }

    #[test]
    fn split_examples() {
        let c = ctx();
        let j0 = c.j0();
        let h = DeformationH::new(c.var(c.z), c.var(c.th), SuperPoly::zero(&c.sig), SuperPoly::zero(&c.sig))
            .unwrap()
            .tensor(&c)
            .unwrap();
        let (hp, hm) = split_pm(&h, &j0).unwrap();
        assert_eq!(hp, h);
        assert!(hm.is_zero());
        let (hp, hm) = split_pm(&j0, &j0).unwrap();
        assert!(hp.is_zero());
        assert_eq!(hm, j0);
    }

    #[test]
    fn integrability_examples() {
        let c = ctx();
        assert!(integrable_deformation_check(&c, &DeformationH::zero(&c)));
        let bad = DeformationH::new(
            SuperPoly::zero(&c.sig),
            &c.var(c.thb) * &c.var(c.th),
            SuperPoly::zero(&c.sig),
            SuperPoly::zero(&c.sig),
        );
        // β must be odd: θ̄θ is even, so use θ̄ times an even factor instead
        assert!(bad.is_err());
        let bad = DeformationH::new(
            SuperPoly::zero(&c.sig),
            c.var(c.thb),
            SuperPoly::zero(&c.sig),
            SuperPoly::zero(&c.sig),
        )
        .unwrap();
        assert!(!integrable_deformation_check(&c, &bad));
        let report = eigenbasis_closure_check(&c, &bad).unwrap();
        assert!(!report.closed);
        assert!(!report.offending.is_empty());
        assert!(eigenbasis_closure_check(&c, &DeformationH::zero(&c)).unwrap().closed);
    }

    #[test]
    fn lie_deformation_examples() {
        let c = ctx();
        let dz = c.partial(c.z);
        assert!(lie_deformation(&c, &dz).unwrap().is_zero());
        let x = dz.mul_left(&c.var(c.zb));
        let h = lie_deformation(&c, &x).unwrap();
        assert_eq!(h.alpha, SuperPoly::int(&c.sig, 2));
        assert!(h.beta.is_zero() && h.gamma.is_zero() && h.delta.is_zero());
        let y = c.partial(c.th).mul_left(&c.var(c.thb));
        let h = lie_deformation(&c, &y).unwrap();
        assert_eq!(h.delta, SuperPoly::int(&c.sig, 2));
        assert!(integrable_deformation_check(&c, &h));
        assert!(lie_deformation(&c, &c.partial(c.th)).is_err());
    }

    #[test]
    fn automorphism_examples() {
        let c = ctx();
        let euler = c.partial(c.th).mul_left(&c.var(c.th));
        assert!(infinitesimal_automorphism_check(&c, &euler).unwrap());
        assert!(!infinitesimal_automorphism_check(&c, &c.partial(c.z).mul_left(&c.var(c.zb))).unwrap());
        assert!(infinitesimal_automorphism_check(&c, &c.partial(c.z).mul_left(&c.var(c.z))).unwrap());
    }
}
