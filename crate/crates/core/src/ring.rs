//! The super Laurent/polynomial ring with even variables, fiber odds and
//! base odds, together with its derivations and brackets.
//!
//! Odd generators are numbered by bit position: fiber odds first, in their
//! declared order, then the base odds `p1..pK`. Every sign in the crate is
//! derived from this single ordering.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::coeff::GaussRat;
use crate::error::{Error, Result};
use crate::grassmann::{merge_sign, Parity};

/// An even variable of a ring signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EvenVar {
    pub name: String,
    pub laurent: bool,
    pub square_zero: bool,
}

impl EvenVar {
    pub fn poly(name: &str) -> Self {
        EvenVar {
            name: name.to_string(),
            laurent: false,
            square_zero: false,
        }
    }

    pub fn laurent(name: &str) -> Self {
        EvenVar {
            laurent: true,
            ..EvenVar::poly(name)
        }
    }

    pub fn square_zero(name: &str) -> Self {
        EvenVar {
            square_zero: true,
            ..EvenVar::poly(name)
        }
    }
}

/// A generator of the ring, by position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Even(usize),
    /// Odd generator by bit index (fiber odds first, then base odds).
    Odd(usize),
}

impl Var {
    pub fn is_odd(self) -> bool {
        matches!(self, Var::Odd(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSignature {
    evens: Vec<EvenVar>,
    odds: Vec<String>,
    base: usize,
}

impl RingSignature {
    pub fn new(evens: Vec<EvenVar>, odds: Vec<String>, base: usize) -> Result<Self> {
        if odds.len() + base > 64 {
            return Err(Error::InvalidSignature("more than 64 odd generators".into()));
        }
        if evens.iter().filter(|v| v.square_zero).count() > 1 {
            return Err(Error::InvalidSignature(
                "at most one square-zero variable".into(),
            ));
        }
        if evens.iter().any(|v| v.square_zero && v.laurent) {
            return Err(Error::InvalidSignature(
                "a square-zero variable cannot be Laurent".into(),
            ));
        }
        let sig = RingSignature { evens, odds, base };
        let mut names: Vec<String> = sig.evens.iter().map(|v| v.name.clone()).collect();
        names.extend(sig.odds.iter().cloned());
        names.extend((1..=base).map(|j| format!("p{j}")));
        for name in &names {
            let ok = name
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                && name != "i"
                && !name.starts_with("d_");
            if !ok {
                return Err(Error::InvalidSignature(format!("illegal name `{name}`")));
            }
        }
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != names.len() {
            return Err(Error::InvalidSignature("duplicate variable names".into()));
        }
        Ok(sig)
    }

    /// `C[z, z^-1, th1..thN]` with `k` base odds.
    pub fn superline(n: usize, k: usize) -> Arc<Self> {
        let odds = (1..=n).map(|i| format!("th{i}")).collect();
        Arc::new(RingSignature::new(vec![EvenVar::laurent("z")], odds, k).unwrap())
    }

    pub fn evens(&self) -> &[EvenVar] {
        &self.evens
    }

    pub fn odd_names(&self) -> &[String] {
        &self.odds
    }

    pub fn n_evens(&self) -> usize {
        self.evens.len()
    }

    pub fn n_fiber(&self) -> usize {
        self.odds.len()
    }

    pub fn n_base(&self) -> usize {
        self.base
    }

    pub fn n_odd(&self) -> usize {
        self.odds.len() + self.base
    }

    pub fn fiber_mask(&self) -> u64 {
        low_bits(self.odds.len())
    }

    pub fn base_mask(&self) -> u64 {
        low_bits(self.n_odd()) & !self.fiber_mask()
    }

    /// Bit index of base odd `p_j`, 1-based.
    pub fn base_bit(&self, j: usize) -> usize {
        self.odds.len() + j - 1
    }

    pub fn var_name(&self, v: Var) -> String {
        match v {
            Var::Even(i) => self.evens[i].name.clone(),
            Var::Odd(b) if b < self.odds.len() => self.odds[b].clone(),
            Var::Odd(b) => format!("p{}", b - self.odds.len() + 1),
        }
    }

    pub fn lookup(&self, name: &str) -> Option<Var> {
        if let Some(i) = self.evens.iter().position(|v| v.name == name) {
            return Some(Var::Even(i));
        }
        if let Some(b) = self.odds.iter().position(|v| v == name) {
            return Some(Var::Odd(b));
        }
        let j: usize = name.strip_prefix('p')?.parse().ok()?;
        if j >= 1 && j <= self.base && name == format!("p{j}") {
            return Some(Var::Odd(self.base_bit(j)));
        }
        None
    }

    pub fn var(&self, name: &str) -> Result<Var> {
        self.lookup(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Index of the square-zero variable, if any.
    pub fn square_zero_index(&self) -> Option<usize> {
        self.evens.iter().position(|v| v.square_zero)
    }

    /// Coordinates of the ambient superdomain: non-square-zero evens, then
    /// fiber odds. Base odds and the square-zero parameter are constants.
    pub fn coords(&self) -> Vec<Var> {
        let mut out: Vec<Var> = (0..self.evens.len())
            .filter(|&i| !self.evens[i].square_zero)
            .map(Var::Even)
            .collect();
        out.extend((0..self.odds.len()).map(Var::Odd));
        out
    }
}

pub(crate) fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Sign `(-1)^k` of the left derivative by bit `b` on mask `m`.
pub(crate) fn left_sign(m: u64, b: usize) -> bool {
    (m & low_bits(b)).count_ones() % 2 == 1
}

/// A monomial: even exponents in signature order and an odd bitmask.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub exps: Vec<i32>,
    pub odd: u64,
}

impl Mono {
    pub fn one(n_evens: usize) -> Self {
        Mono {
            exps: vec![0; n_evens],
            odd: 0,
        }
    }

    pub fn is_one(&self) -> bool {
        self.odd == 0 && self.exps.iter().all(|&e| e == 0)
    }
}

/// An element of the super ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperPoly {
    sig: Arc<RingSignature>,
    terms: BTreeMap<Mono, GaussRat>,
}

impl SuperPoly {
    pub fn zero(sig: &Arc<RingSignature>) -> Self {
        SuperPoly {
            sig: sig.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(sig: &Arc<RingSignature>, c: GaussRat) -> Self {
        let mut p = SuperPoly::zero(sig);
        p.add_term(Mono::one(sig.n_evens()), &c);
        p
    }

    pub fn one(sig: &Arc<RingSignature>) -> Self {
        SuperPoly::constant(sig, GaussRat::one())
    }

    pub fn int(sig: &Arc<RingSignature>, n: i64) -> Self {
        SuperPoly::constant(sig, n.into())
    }

    pub fn gen(sig: &Arc<RingSignature>, v: Var) -> Self {
        let mut m = Mono::one(sig.n_evens());
        match v {
            Var::Even(i) => m.exps[i] = 1,
            Var::Odd(b) => m.odd = 1 << b,
        }
        let mut p = SuperPoly::zero(sig);
        p.terms.insert(m, GaussRat::one());
        p
    }

    /// The generator with the given name.
    pub fn var(sig: &Arc<RingSignature>, name: &str) -> Result<Self> {
        Ok(SuperPoly::gen(sig, sig.var(name)?))
    }

    /// A single term, validated against the signature.
    pub fn monomial(sig: &Arc<RingSignature>, m: Mono, c: GaussRat) -> Result<Self> {
        if m.exps.len() != sig.n_evens() || m.odd & !low_bits(sig.n_odd()) != 0 {
            return Err(Error::SignatureMismatch);
        }
        let mut p = SuperPoly::zero(sig);
        for (e, v) in m.exps.iter().zip(sig.evens()) {
            if *e < 0 && !v.laurent {
                return Err(Error::Domain(format!(
                    "negative exponent on non-Laurent variable `{}`",
                    v.name
                )));
            }
            if *e > 1 && v.square_zero {
                return Ok(p);
            }
        }
        p.add_term(m, &c);
        Ok(p)
    }

    pub fn sig(&self) -> &Arc<RingSignature> {
        &self.sig
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &GaussRat)> {
        self.terms.iter()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Mono) -> GaussRat {
        self.terms.get(m).cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant term's coefficient, if the element is a constant.
    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.terms.len() {
            0 => Some(GaussRat::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub(crate) fn add_term(&mut self, m: Mono, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn same_sig(&self, other: &SuperPoly) -> bool {
        Arc::ptr_eq(&self.sig, &other.sig) || self.sig == other.sig
    }

    fn check(&self, other: &SuperPoly) -> Result<()> {
        if self.same_sig(other) {
            Ok(())
        } else {
            Err(Error::SignatureMismatch)
        }
    }

    pub fn parity(&self) -> Parity {
        let mut seen = [false; 2];
        for m in self.terms.keys() {
            seen[(m.odd.count_ones() % 2) as usize] = true;
        }
        match seen {
            [_, false] => Parity::Even,
            [false, true] => Parity::Odd,
            _ => Parity::Mixed,
        }
    }

    /// Parity as a bool (`true` = odd); zero counts as even.
    pub fn parity_bit(&self) -> Result<bool> {
        match self.parity() {
            Parity::Even => Ok(false),
            Parity::Odd => Ok(true),
            Parity::Mixed => Err(Error::Inhomogeneous),
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Parity::Even
    }

    pub fn is_odd(&self) -> bool {
        self.is_zero() || self.parity() == Parity::Odd
    }

    /// Even and odd homogeneous components.
    pub fn split_parity(&self) -> (SuperPoly, SuperPoly) {
        let mut even = SuperPoly::zero(&self.sig);
        let mut odd = SuperPoly::zero(&self.sig);
        for (m, c) in &self.terms {
            let target = if m.odd.count_ones() % 2 == 0 {
                &mut even
            } else {
                &mut odd
            };
            target.terms.insert(m.clone(), c.clone());
        }
        (even, odd)
    }

    pub fn scale(&self, c: &GaussRat) -> SuperPoly {
        let mut out = SuperPoly::zero(&self.sig);
        if c.is_zero() {
            return out;
        }
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), a * c);
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&GaussRat) -> GaussRat) -> SuperPoly {
        let mut out = SuperPoly::zero(&self.sig);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), &f(a));
        }
        out
    }

    pub fn try_add(&self, other: &SuperPoly) -> Result<SuperPoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &SuperPoly) -> Result<SuperPoly> {
        self.try_add(&-other)
    }

    /// Supercommutative product; `t^2 = 0` for the square-zero variable.
    pub fn try_mul(&self, other: &SuperPoly) -> Result<SuperPoly> {
        self.check(other)?;
        let sq = self.sig.square_zero_index();
        let mut out = SuperPoly::zero(&self.sig);
        for (ma, a) in &self.terms {
            for (mb, b) in &other.terms {
                if ma.odd & mb.odd != 0 {
                    continue;
                }
                if let Some(s) = sq {
                    if ma.exps[s] + mb.exps[s] > 1 {
                        continue;
                    }
                }
                let exps = ma.exps.iter().zip(&mb.exps).map(|(x, y)| x + y).collect();
                let c = a * b;
                let c = if merge_sign(ma.odd, mb.odd) { -c } else { c };
                out.add_term(
                    Mono {
                        exps,
                        odd: ma.odd | mb.odd,
                    },
                    &c,
                );
            }
        }
        Ok(out)
    }

    /// Inverse of a unit: a single invertible monomial body times
    /// `1 + nilpotent`.
    pub fn inverse(&self) -> Result<SuperPoly> {
        let sq = self.sig.square_zero_index();
        let nilpotent = |m: &Mono| m.odd != 0 || sq.is_some_and(|s| m.exps[s] != 0);
        let body: Vec<(&Mono, &GaussRat)> = self.terms.iter().filter(|(m, _)| !nilpotent(m)).collect();
        if body.len() != 1 {
            return Err(Error::NotInvertible(self.to_string()));
        }
        let (bm, bc) = body[0];
        for (e, v) in bm.exps.iter().zip(self.sig.evens()) {
            if *e != 0 && !v.laurent {
                return Err(Error::NotInvertible(self.to_string()));
            }
        }
        let inv_body = Mono {
            exps: bm.exps.iter().map(|e| -e).collect(),
            odd: 0,
        };
        let m_inv = SuperPoly::monomial(&self.sig, inv_body, bc.inv().unwrap())?;
        let r = &(&m_inv * self) - &SuperPoly::one(&self.sig);
        let neg_r = -&r;
        let mut acc = SuperPoly::one(&self.sig);
        let mut pow = SuperPoly::one(&self.sig);
        loop {
            pow = &pow * &neg_r;
            if pow.is_zero() {
                break;
            }
            acc = &acc + &pow;
        }
        Ok(&m_inv * &acc)
    }

    pub fn pow(&self, e: i32) -> Result<SuperPoly> {
        let base = if e < 0 {
            self.inverse()?
        } else {
            self.clone()
        };
        let mut acc = SuperPoly::one(&self.sig);
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Partial derivative; odd variables use the left derivative.
    pub fn derive(&self, v: Var) -> SuperPoly {
        let mut out = SuperPoly::zero(&self.sig);
        for (m, c) in &self.terms {
            match v {
                Var::Even(i) => {
                    let e = m.exps[i];
                    if e == 0 {
                        continue;
                    }
                    let mut nm = m.clone();
                    nm.exps[i] -= 1;
                    out.add_term(nm, &(c * &GaussRat::from_int(e as i64)));
                }
                Var::Odd(b) => {
                    if m.odd >> b & 1 == 0 {
                        continue;
                    }
                    let nm = Mono {
                        exps: m.exps.clone(),
                        odd: m.odd & !(1 << b),
                    };
                    let c = if left_sign(m.odd, b) { -c } else { c.clone() };
                    out.add_term(nm, &c);
                }
            }
        }
        out
    }

    pub fn derive_by(&self, name: &str) -> Result<SuperPoly> {
        Ok(self.derive(self.sig.var(name)?))
    }

    /// Euler operator `Σ θ_i ∂_{θ_i}` over fiber odds.
    pub fn euler(&self) -> SuperPoly {
        let fm = self.sig.fiber_mask();
        let mut out = SuperPoly::zero(&self.sig);
        for (m, c) in &self.terms {
            let d = (m.odd & fm).count_ones() as i64;
            out.add_term(m.clone(), &(c * &GaussRat::from_int(d)));
        }
        out
    }

    /// `(2 - E) f`.
    pub fn two_minus_euler(&self) -> SuperPoly {
        &self.scale(&2.into()) - &self.euler()
    }

    /// Substitutes every generator. `images` is indexed by even variables
    /// then by odd bits; coefficients multiply from the left and odd images
    /// are multiplied in ascending generator order.
    pub fn subst(
        &self,
        target: &Arc<RingSignature>,
        evens: &[SuperPoly],
        odds: &[SuperPoly],
    ) -> Result<SuperPoly> {
        if evens.len() != self.sig.n_evens() || odds.len() != self.sig.n_odd() {
            return Err(Error::SignatureMismatch);
        }
        let mut inverses: Vec<Option<SuperPoly>> = vec![None; evens.len()];
        let mut out = SuperPoly::zero(target);
        for (m, c) in &self.terms {
            let mut prod = SuperPoly::constant(target, c.clone());
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let base = if e < 0 {
                    if inverses[i].is_none() {
                        inverses[i] = Some(evens[i].inverse()?);
                    }
                    inverses[i].clone().unwrap()
                } else {
                    evens[i].clone()
                };
                for _ in 0..e.unsigned_abs() {
                    prod = prod.try_mul(&base)?;
                }
            }
            for (b, img) in odds.iter().enumerate() {
                if m.odd >> b & 1 == 1 {
                    prod = prod.try_mul(img)?;
                }
            }
            out = out.try_add(&prod)?;
        }
        Ok(out)
    }

    /// Same element reinterpreted in an equal or extended signature,
    /// mapping variables by name.
    pub fn embed(&self, target: &Arc<RingSignature>) -> Result<SuperPoly> {
        let evens = self
            .sig
            .evens()
            .iter()
            .map(|v| SuperPoly::var(target, &v.name))
            .collect::<Result<Vec<_>>>()?;
        let odds = (0..self.sig.n_odd())
            .map(|b| SuperPoly::var(target, &self.sig.var_name(Var::Odd(b))))
            .collect::<Result<Vec<_>>>()?;
        self.subst(target, &evens, &odds)
    }

    /// Part of the element free of base odds.
    pub fn body(&self) -> SuperPoly {
        let bm = self.sig.base_mask();
        let mut out = SuperPoly::zero(&self.sig);
        for (m, c) in &self.terms {
            if m.odd & bm == 0 {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// Writes the terms whose base-odd part is exactly `mask` as `p_I * c`,
    /// returning `c` (free of base odds).
    pub fn base_component(&self, mask: u64) -> SuperPoly {
        let bm = self.sig.base_mask();
        let fm = self.sig.fiber_mask();
        let mut out = SuperPoly::zero(&self.sig);
        for (m, c) in &self.terms {
            if m.odd & bm != mask {
                continue;
            }
            let rest = m.odd & fm;
            // m = rest * mask as written; move mask to the front
            let swap = mask.count_ones() * rest.count_ones() % 2 == 1;
            let c = if swap { -c } else { c.clone() };
            out.add_term(
                Mono {
                    exps: m.exps.clone(),
                    odd: rest,
                },
                &c,
            );
        }
        out
    }

    /// Base-odd monomial `p_I` for a base mask.
    pub fn base_monomial(sig: &Arc<RingSignature>, mask: u64) -> SuperPoly {
        let mut m = Mono::one(sig.n_evens());
        m.odd = mask;
        let mut p = SuperPoly::zero(sig);
        p.add_term(m, &GaussRat::one());
        p
    }
}

/// `{f,g}_pb = -(-1)^{p(f)} Σ ∂f/∂θ_i ∂g/∂θ_i`, requires homogeneous `f`.
pub fn poisson(f: &SuperPoly, g: &SuperPoly) -> Result<SuperPoly> {
    f.check(g)?;
    let pf = f.parity_bit()?;
    let mut acc = SuperPoly::zero(f.sig());
    for b in 0..f.sig().n_fiber() {
        let v = Var::Odd(b);
        acc = &acc + &(&f.derive(v) * &g.derive(v));
    }
    Ok(if pf { acc } else { -&acc })
}

/// Contact bracket on the superline, extended bilinearly over the
/// homogeneous components of `f`.
pub fn contact_bracket(f: &SuperPoly, g: &SuperPoly) -> Result<SuperPoly> {
    f.check(g)?;
    let z = f.sig().var("z")?;
    let mut out = SuperPoly::zero(f.sig());
    let (fe, fo) = f.split_parity();
    for part in [fe, fo] {
        if part.is_zero() {
            continue;
        }
        let first = &part.two_minus_euler() * &g.derive(z);
        let second = &part.derive(z) * &g.two_minus_euler();
        let third = poisson(&part, g)?;
        out = &out + &(&(&first - &second) - &third);
    }
    Ok(out)
}

impl Add for &SuperPoly {
    type Output = SuperPoly;
    fn add(self, rhs: &SuperPoly) -> SuperPoly {
        self.try_add(rhs).expect("signature mismatch")
    }
}

impl Sub for &SuperPoly {
    type Output = SuperPoly;
    fn sub(self, rhs: &SuperPoly) -> SuperPoly {
        self.try_sub(rhs).expect("signature mismatch")
    }
}

impl Mul for &SuperPoly {
    type Output = SuperPoly;
    fn mul(self, rhs: &SuperPoly) -> SuperPoly {
        self.try_mul(rhs).expect("signature mismatch")
    }
}

impl Neg for &SuperPoly {
    type Output = SuperPoly;
    fn neg(self) -> SuperPoly {
        self.scale(&-GaussRat::one())
    }
}

/// Text of a coefficient as a factor in front of a non-constant monomial,
/// or `None` when it is `1`. A leading `-` is returned separately.
pub(crate) fn coeff_factor(c: &GaussRat) -> (bool, Option<String>) {
    if c.is_one() {
        return (false, None);
    }
    if (-c).is_one() {
        return (true, None);
    }
    if c.is_real() || c.re.is_zero() {
        let s = c.to_string();
        match s.strip_prefix('-') {
            Some(rest) => (true, Some(rest.to_string())),
            None => (false, Some(s)),
        }
    } else {
        (false, Some(format!("({c})")))
    }
}

/// Text of a constant term.
pub(crate) fn coeff_constant(c: &GaussRat) -> (bool, String) {
    if c.is_real() || c.re.is_zero() {
        let s = c.to_string();
        match s.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, s),
        }
    } else {
        (false, format!("({c})"))
    }
}

/// Joins signed pieces as `a + b - c`.
pub(crate) fn join_signed(pieces: &[(bool, String)]) -> String {
    if pieces.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (neg, body)) in pieces.iter().enumerate() {
        match (k, neg) {
            (0, false) => out.push_str(body),
            (0, true) => {
                out.push('-');
                out.push_str(body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(body);
            }
        }
    }
    out
}

impl SuperPoly {
    pub(crate) fn mono_text(&self, m: &Mono) -> String {
        let mut parts = Vec::new();
        for (e, v) in m.exps.iter().zip(self.sig.evens()) {
            match e {
                0 => {}
                1 => parts.push(v.name.clone()),
                _ => parts.push(format!("{}^{}", v.name, e)),
            }
        }
        for b in 0..self.sig.n_odd() {
            if m.odd >> b & 1 == 1 {
                parts.push(self.sig.var_name(Var::Odd(b)));
            }
        }
        parts.join("*")
    }

    /// Signed printable terms in canonical order.
    pub(crate) fn signed_terms(&self) -> Vec<(bool, String)> {
        self.terms
            .iter()
            .map(|(m, c)| {
                if m.is_one() {
                    coeff_constant(c)
                } else {
                    let mono = self.mono_text(m);
                    match coeff_factor(c) {
                        (neg, None) => (neg, mono),
                        (neg, Some(f)) => (neg, format!("{f}*{mono}")),
                    }
                }
            })
            .collect()
    }
}

impl fmt::Display for SuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", join_signed(&self.signed_terms()))
    }
}
