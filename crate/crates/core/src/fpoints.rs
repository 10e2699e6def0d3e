//! Λ-points of finite-dimensional super vector spaces and the bar functor
//! on even multilinear maps.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coeff::GaussRat;
use crate::error::{Error, Result};
use crate::grassmann::{GrHom, GrassmannElement};
use crate::sample;

/// The standard super vector space `K^{p|q}`: `p` even basis vectors
/// followed by `q` odd ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Svs {
    pub p: usize,
    pub q: usize,
}

impl Svs {
    pub fn new(p: usize, q: usize) -> Self {
        Svs { p, q }
    }

    pub fn dim(&self) -> usize {
        self.p + self.q
    }

    pub fn is_odd(&self, basis: usize) -> bool {
        basis >= self.p
    }
}

/// `dim (Λ_n ⊗ V)_0`.
pub fn points_dim(v: Svs, n: usize) -> u64 {
    if n == 0 {
        v.p as u64
    } else {
        (1u64 << (n - 1)) * v.dim() as u64
    }
}

/// An element of `(Λ_n ⊗ V)_0`: one Grassmann coefficient per basis
/// vector, of the same parity as the basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaPoint {
    n: usize,
    space: Svs,
    comps: Vec<GrassmannElement>,
}

impl LambdaPoint {
    pub fn new(n: usize, space: Svs, comps: Vec<GrassmannElement>) -> Result<Self> {
        if comps.len() != space.dim() {
            return Err(Error::OutOfRange(format!(
                "{} components for a space of dimension {}",
                comps.len(),
                space.dim()
            )));
        }
        for (k, c) in comps.iter().enumerate() {
            if c.n() != n {
                return Err(Error::GeneratorMismatch(c.n(), n));
            }
            let ok = c.is_zero() || if space.is_odd(k) { c.is_odd() } else { c.is_even() };
            if !ok {
                return Err(Error::Parity(format!("component {k} has the wrong parity")));
            }
        }
        Ok(LambdaPoint { n, space, comps })
    }

    pub fn zero(n: usize, space: Svs) -> Self {
        LambdaPoint {
            n,
            space,
            comps: vec![GrassmannElement::zero(n); space.dim()],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn space(&self) -> Svs {
        self.space
    }

    pub fn comps(&self) -> &[GrassmannElement] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(GrassmannElement::is_zero)
    }
}

/// `(φ ⊗ id_V)` on Λ-points.
pub fn points_map(phi: &GrHom, x: &LambdaPoint) -> Result<LambdaPoint> {
    if x.n != phi.source() {
        return Err(Error::GeneratorMismatch(x.n, phi.source()));
    }
    let comps = x
        .comps
        .iter()
        .map(|c| phi.apply(c))
        .collect::<Result<Vec<_>>>()?;
    LambdaPoint::new(phi.target(), x.space, comps)
}

/// An even multilinear map `V_1 × … × V_k → W`, given on basis tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiMap {
    args: Vec<Svs>,
    target: Svs,
    coeffs: BTreeMap<(Vec<usize>, usize), GaussRat>,
}

impl MultiMap {
    pub fn zero(args: Vec<Svs>, target: Svs) -> Self {
        MultiMap {
            args,
            target,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn args(&self) -> &[Svs] {
        &self.args
    }

    pub fn target(&self) -> Svs {
        self.target
    }

    /// Sets the coefficient of target basis `out` in `f(e_{b_1}, …, e_{b_k})`.
    pub fn set(&mut self, basis: Vec<usize>, out: usize, c: GaussRat) -> Result<()> {
        if basis.len() != self.args.len()
            || basis.iter().zip(&self.args).any(|(b, v)| *b >= v.dim())
            || out >= self.target.dim()
        {
            return Err(Error::OutOfRange("basis index".into()));
        }
        let odd_in = basis
            .iter()
            .zip(&self.args)
            .filter(|(b, v)| v.is_odd(**b))
            .count();
        if !c.is_zero() && (odd_in % 2 == 1) != self.target.is_odd(out) {
            return Err(Error::Parity("multilinear map must be even".into()));
        }
        if c.is_zero() {
            self.coeffs.remove(&(basis, out));
        } else {
            self.coeffs.insert((basis, out), c);
        }
        Ok(())
    }

    pub fn get(&self, basis: &[usize], out: usize) -> GaussRat {
        self.coeffs
            .get(&(basis.to_vec(), out))
            .cloned()
            .unwrap_or_else(GaussRat::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[usize], usize, &GaussRat)> {
        self.coeffs.iter().map(|((b, o), c)| (b.as_slice(), *o, c))
    }

    /// All basis tuples of the argument spaces.
    pub fn basis_tuples(&self) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for v in &self.args {
            out = out
                .into_iter()
                .flat_map(|t| {
                    (0..v.dim()).map(move |b| {
                        let mut t = t.clone();
                        t.push(b);
                        t
                    })
                })
                .collect();
        }
        out
    }
}

/// `f̄_Λ(λ_1⊗v_1, …, λ_k⊗v_k) = λ_k⋯λ_1 ⊗ f(v_1, …, v_k)`, extended
/// additively over the components of each argument.
pub fn bar_apply(f: &MultiMap, args: &[LambdaPoint]) -> Result<LambdaPoint> {
    if args.len() != f.args.len() {
        return Err(Error::OutOfRange(format!(
            "{} arguments for a map of arity {}",
            args.len(),
            f.args.len()
        )));
    }
    let n = args.first().map(|a| a.n).unwrap_or(0);
    for (a, v) in args.iter().zip(&f.args) {
        if a.n != n {
            return Err(Error::GeneratorMismatch(a.n, n));
        }
        if a.space != *v {
            return Err(Error::OutOfRange("argument space mismatch".into()));
        }
    }
    let mut comps = vec![GrassmannElement::zero(n); f.target.dim()];
    for ((basis, out), c) in &f.coeffs {
        let mut lam = GrassmannElement::scalar(n, c.clone());
        for (k, b) in basis.iter().enumerate().rev() {
            lam = lam.mul(&args[k].comps[*b])?;
            if lam.is_zero() {
                break;
            }
        }
        comps[*out] = comps[*out].add(&lam)?;
    }
    LambdaPoint::new(n, f.target, comps)
}

/// A family of point-level maps indexed by the Grassmann algebra size.
pub trait PointOracle {
    fn eval(&self, n: usize, args: &[LambdaPoint]) -> Result<LambdaPoint>;
}

impl<F> PointOracle for F
where
    F: Fn(usize, &[LambdaPoint]) -> Result<LambdaPoint>,
{
    fn eval(&self, n: usize, args: &[LambdaPoint]) -> Result<LambdaPoint> {
        self(n, args)
    }
}

const VERIFY_SEED: u64 = 0x5eed_f00d;
const VERIFY_SAMPLES: usize = 6;

/// Recovers `f` from its bar image by evaluating at
/// `(θ_1⊗v_1, …, θ_j⊗v_j, 1⊗v_{j+1}, …)` in `Λ_j` and reading the
/// coefficient of `θ_j⋯θ_1`; the result is then checked against the oracle
/// on fixed pseudo-random points of a larger Grassmann algebra.
pub fn bar_reconstruct(oracle: &dyn PointOracle, args: &[Svs], target: Svs) -> Result<MultiMap> {
    let mut f = MultiMap::zero(args.to_vec(), target);
    for basis in f.basis_tuples() {
        let j = basis
            .iter()
            .zip(args)
            .filter(|(b, v)| v.is_odd(**b))
            .count();
        let mut next = 0;
        let points = basis
            .iter()
            .zip(args)
            .map(|(&b, &v)| {
                let lam = if v.is_odd(b) {
                    next += 1;
                    GrassmannElement::generator(j, next)?
                } else {
                    GrassmannElement::one(j)
                };
                let mut comps = vec![GrassmannElement::zero(j); v.dim()];
                comps[b] = lam;
                LambdaPoint::new(j, v, comps)
            })
            .collect::<Result<Vec<_>>>()?;
        let value = oracle.eval(j, &points)?;
        if value.n != j || value.space != target {
            return Err(Error::NaturalityViolation("oracle returned a point of the wrong shape".into()));
        }
        let top = crate::ring::low_bits(j);
        let sign = GaussRat::sign((j * j.saturating_sub(1) / 2) % 2 == 1);
        for (out, comp) in value.comps.iter().enumerate() {
            if comp.terms().any(|(m, _)| m != top) {
                return Err(Error::NaturalityViolation(format!(
                    "value at basis {basis:?} has components below the top degree"
                )));
            }
            let c = &comp.coeff(top) * &sign;
            if !c.is_zero() {
                f.set(basis.clone(), out, c).map_err(|_| {
                    Error::NaturalityViolation("reconstructed map is not even".into())
                })?;
            }
        }
    }
    verify(oracle, &f)?;
    Ok(f)
}

fn verify(oracle: &dyn PointOracle, f: &MultiMap) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(VERIFY_SEED);
    let n = 2 * f.args.len() + 2;
    for _ in 0..VERIFY_SAMPLES {
        let args: Vec<LambdaPoint> = f
            .args
            .iter()
            .map(|&v| sample::lambda_point(&mut rng, n, v))
            .collect();
        if oracle.eval(n, &args)? != bar_apply(f, &args)? {
            return Err(Error::NaturalityViolation(
                "oracle disagrees with the reconstructed map".into(),
            ));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn gen(n: usize, i: usize) -> GrassmannElement {
        GrassmannElement::generator(n, i).unwrap()
    }

    #[test]
    fn dims() {
        assert_eq!(points_dim(Svs::new(1, 1), 0), 1);
        assert_eq!(points_dim(Svs::new(1, 1), 1), 2);
        assert_eq!(points_dim(Svs::new(2, 0), 2), 4);
    }

    #[test]
    fn dims_match_enumeration() {
        for n in 0..=3usize {
            for p in 0..=2usize {
                for q in 0..=2usize {
                    let (mut even, mut odd) = (0u64, 0u64);
                    for m in 0..(1u64 << n) {
                        if m.count_ones() % 2 == 0 {
                            even += 1;
                        } else {
                            odd += 1;
                        }
                    }
                    assert_eq!(points_dim(Svs::new(p, q), n), even * p as u64 + odd * q as u64);
                }
            }
        }
    }

    #[test]
    fn points_map_examples() {
        let v = Svs::new(1, 1);
        let x = LambdaPoint::new(1, v, vec![GrassmannElement::one(1), gen(1, 1)]).unwrap();
        assert_eq!(points_map(&GrHom::identity(1), &x).unwrap(), x);
        let e = points_map(&GrHom::terminal(1), &x).unwrap();
        assert!(e.comps()[1].is_zero());
        let top = GrassmannElement::monomial(3, 0b111, GaussRat::one());
        let h = GrHom::new(1, 3, vec![top.clone()]).unwrap();
        let y = points_map(&h, &x).unwrap();
        assert_eq!(y.comps()[1], top);
    }

    #[test]
    fn reversed_product() {
        let o = Svs::new(0, 1);
        let mut f = MultiMap::zero(vec![o, o], Svs::new(1, 0));
        f.set(vec![0, 0], 0, GaussRat::one()).unwrap();
        let a = LambdaPoint::new(2, o, vec![gen(2, 1)]).unwrap();
        let b = LambdaPoint::new(2, o, vec![gen(2, 2)]).unwrap();
        let out = bar_apply(&f, &[a.clone(), b]).unwrap();
        assert_eq!(out.comps()[0], -&(&gen(2, 1) * &gen(2, 2)));
        let zero = bar_apply(&f, &[a, LambdaPoint::zero(2, o)]).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn odd_map_rejected() {
        let mut f = MultiMap::zero(vec![Svs::new(1, 0)], Svs::new(0, 1));
        assert!(f.set(vec![0], 0, GaussRat::one()).is_err());
    }

    #[test]
    fn reconstruct_round_trip() {
        let v = Svs::new(1, 1);
        let mut f = MultiMap::zero(vec![v, v], v);
        f.set(vec![1, 1], 0, 3.into()).unwrap();
        f.set(vec![0, 1], 1, GaussRat::ratio(1, 2)).unwrap();
        f.set(vec![1, 0], 1, GaussRat::i()).unwrap();
        f.set(vec![0, 0], 0, (-2).into()).unwrap();
        let oracle = |_n: usize, a: &[LambdaPoint]| bar_apply(&f, a);
        assert_eq!(bar_reconstruct(&oracle, &[v, v], v).unwrap(), f);
        let zero = |n: usize, _a: &[LambdaPoint]| Ok(LambdaPoint::zero(n, v));
        assert_eq!(bar_reconstruct(&zero, &[v, v], v).unwrap(), MultiMap::zero(vec![v, v], v));
    }

    #[test]
    fn stray_term_detected() {
        let v = Svs::new(1, 1);
        let mut f = MultiMap::zero(vec![v], v);
        f.set(vec![0], 0, 1.into()).unwrap();
        let bad = |n: usize, a: &[LambdaPoint]| {
            let mut out = bar_apply(&f, a)?;
            if n >= 2 {
                let stray = GrassmannElement::monomial(n, 0b11, GaussRat::one());
                out = LambdaPoint::new(n, v, vec![out.comps()[0].add(&stray)?, out.comps()[1].clone()])?;
            }
            Ok(out)
        };
        assert!(matches!(
            bar_reconstruct(&bad, &[v], v),
            Err(Error::NaturalityViolation(_))
        ));
    }
}
