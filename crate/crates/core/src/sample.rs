//! Seeded random generators for exact test data.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::coeff::GaussRat;
use crate::fpoints::{LambdaPoint, MultiMap, Svs};
use crate::grassmann::GrassmannElement;
use crate::morph::{CoordMap, NilPart, SuperMorphism};
use crate::ring::{Mono, RingSignature, SuperPoly, Var};
use crate::sconf::SVectorField;

/// A nonzero rational with small numerator and denominator.
pub fn rational<R: Rng>(rng: &mut R) -> BigRational {
    let mut num: i64 = rng.gen_range(-4..=4);
    if num == 0 {
        num = 1;
    }
    let den: i64 = rng.gen_range(1..=3);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// A nonzero Gaussian rational; a quarter of them carry an imaginary part.
pub fn gauss<R: Rng>(rng: &mut R) -> GaussRat {
    let re = rational(rng);
    if rng.gen_bool(0.25) {
        GaussRat::new(re, rational(rng))
    } else {
        GaussRat::real(re)
    }
}

/// A random mask over `n` bits with the requested parity, if any.
fn mask<R: Rng>(rng: &mut R, n: usize, odd: Option<bool>) -> Option<u64> {
    if n == 0 {
        return (odd != Some(true)).then_some(0);
    }
    for _ in 0..64 {
        let m = rng.gen::<u64>() & crate::ring::low_bits(n);
        if odd.is_none_or(|o| (m.count_ones() % 2 == 1) == o) {
            return Some(m);
        }
    }
    None
}

pub fn grassmann<R: Rng>(rng: &mut R, n: usize, odd: Option<bool>, max_terms: usize) -> GrassmannElement {
    let mut e = GrassmannElement::zero(n);
    let count = rng.gen_range(0..=max_terms);
    for _ in 0..count {
        if let Some(m) = mask(rng, n, odd) {
            e = e.add(&GrassmannElement::monomial(n, m, gauss(rng))).unwrap();
        }
    }
    e
}

pub fn lambda_point<R: Rng>(rng: &mut R, n: usize, v: Svs) -> LambdaPoint {
    let comps = (0..v.dim())
        .map(|k| grassmann(rng, n, Some(v.is_odd(k)), 3))
        .collect();
    LambdaPoint::new(n, v, comps).unwrap()
}

/// A random even multilinear map; roughly half of the admissible entries
/// are nonzero.
pub fn multimap<R: Rng>(rng: &mut R, args: &[Svs], target: Svs) -> MultiMap {
    let mut f = MultiMap::zero(args.to_vec(), target);
    for basis in f.basis_tuples() {
        for out in 0..target.dim() {
            if rng.gen_bool(0.5) {
                let _ = f.set(basis.clone(), out, gauss(rng));
            }
        }
    }
    f
}

/// Options for random ring elements.
#[derive(Clone, Debug)]
pub struct PolyShape {
    pub max_terms: usize,
    /// Inclusive exponent range for non-square-zero evens; negative values
    /// are clamped to zero on non-Laurent variables.
    pub exp_range: (i32, i32),
    /// Restrict odd support to fiber odds.
    pub fiber_only: bool,
}

impl Default for PolyShape {
    fn default() -> Self {
        PolyShape {
            max_terms: 3,
            exp_range: (0, 2),
            fiber_only: false,
        }
    }
}

/// A random element of the given parity (`None` for mixed).
pub fn superpoly<R: Rng>(
    rng: &mut R,
    sig: &Arc<RingSignature>,
    odd: Option<bool>,
    shape: &PolyShape,
) -> SuperPoly {
    let n_odd = if shape.fiber_only { sig.n_fiber() } else { sig.n_odd() };
    let mut p = SuperPoly::zero(sig);
    let count = rng.gen_range(0..=shape.max_terms);
    for _ in 0..count {
        let Some(m) = mask(rng, n_odd, odd) else { continue };
        let exps = sig
            .evens()
            .iter()
            .map(|v| {
                if v.square_zero {
                    rng.gen_range(0..=1)
                } else {
                    let e = rng.gen_range(shape.exp_range.0..=shape.exp_range.1);
                    if v.laurent {
                        e
                    } else {
                        e.max(0)
                    }
                }
            })
            .collect();
        let term = SuperPoly::monomial(sig, Mono { exps, odd: m }, gauss(rng)).unwrap();
        p = &p + &term;
    }
    p
}

/// A random invertible base-free coordinate change and its inverse, built
/// from `steps` elementary moves: rescaling every coordinate, or shifting one
/// coordinate by a function of the others.
pub fn invertible_map<R: Rng>(rng: &mut R, sig: &Arc<RingSignature>, steps: usize) -> (CoordMap, CoordMap) {
    let coords = sig.coords();
    let mut fwd = CoordMap::identity(sig);
    let mut bwd = CoordMap::identity(sig);
    let shape = PolyShape {
        max_terms: 2,
        exp_range: (-1, 1),
        fiber_only: true,
    };
    for _ in 0..steps {
        let gens: Vec<SuperPoly> = coords.iter().map(|&v| SuperPoly::gen(sig, v)).collect();
        let (step, step_inv) = if rng.gen_bool(0.3) {
            let c: Vec<GaussRat> = coords.iter().map(|_| gauss(rng)).collect();
            let scaled = |inv: bool| {
                gens.iter()
                    .zip(&c)
                    .map(|(g, c)| g.scale(&if inv { c.inv().unwrap() } else { c.clone() }))
                    .collect::<Vec<_>>()
            };
            (scaled(false), scaled(true))
        } else {
            let k = rng.gen_range(0..coords.len());
            let v = coords[k];
            let laurent = matches!(v, Var::Even(i) if sig.evens()[i].laurent);
            let mut q = superpoly(rng, sig, Some(v.is_odd()), &shape);
            // drop terms involving v; keep a Laurent coordinate invertible
            q = q
                .terms()
                .filter(|(m, _)| match v {
                    Var::Even(i) => m.exps[i] == 0 && (!laurent || m.odd != 0),
                    Var::Odd(b) => m.odd >> b & 1 == 0,
                })
                .fold(SuperPoly::zero(sig), |acc, (m, c)| {
                    &acc + &SuperPoly::monomial(sig, m.clone(), c.clone()).unwrap()
                });
            let mut a = gens.clone();
            let mut b = gens.clone();
            a[k] = &gens[k] + &q;
            b[k] = &gens[k] - &q;
            (a, b)
        };
        let step = CoordMap::new(sig, step).unwrap();
        let step_inv = CoordMap::new(sig, step_inv).unwrap();
        fwd = fwd.then(&step).unwrap();
        bwd = step_inv.then(&bwd).unwrap();
    }
    (fwd, bwd)
}

/// Random nilpart fields `X_I` of parity `|I|` with base-free coefficients.
pub fn nilpart<R: Rng>(rng: &mut R, sig: &Arc<RingSignature>, max_terms: usize) -> NilPart {
    let shape = PolyShape {
        max_terms,
        exp_range: (0, 1),
        fiber_only: true,
    };
    let mut out = NilPart::new();
    for mask in 1..1u64 << sig.n_base() {
        if rng.gen_bool(0.4) {
            continue;
        }
        let odd = mask.count_ones() % 2 == 1;
        let coeffs = sig
            .coords()
            .iter()
            .map(|v| superpoly(rng, sig, Some(odd ^ v.is_odd()), &shape))
            .collect();
        out.insert(mask << sig.n_fiber(), SVectorField::new(sig, coeffs).unwrap());
    }
    out
}

pub fn morphism<R: Rng>(rng: &mut R, sig: &Arc<RingSignature>) -> SuperMorphism {
    let steps = rng.gen_range(1..=3);
    let (fwd, bwd) = invertible_map(rng, sig, steps);
    let nil = nilpart(rng, sig, 2);
    SuperMorphism::new(fwd, Some(bwd), nil).unwrap()
}
