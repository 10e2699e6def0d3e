//! Dimension bookkeeping for super Teichmüller spaces, Riemann-Roch
//! arithmetic and the table of centrally extendable superconformal algebras.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::coeff::GaussRat;
use crate::error::{Error, Result};
use crate::ring::SuperPoly;

/// A super dimension `p|q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SuperDim {
    pub even: u64,
    pub odd: u64,
}

impl SuperDim {
    pub fn new(even: u64, odd: u64) -> Self {
        SuperDim { even, odd }
    }
}

impl fmt::Display for SuperDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.even, self.odd)
    }
}

/// `h^0(L) - h^0(K ⊗ L^{-1}) = d - g + 1`.
pub fn riemann_roch_chi(g: i64, d: i64) -> i64 {
    d - g + 1
}

/// `h^0` of a degree-`d` line bundle when it only depends on `(g, d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum H0 {
    Value(i64),
    NonTopological,
}

pub fn h0_topological(g: i64, d: i64) -> Result<H0> {
    if g < 2 {
        return Err(Error::OutOfRange(format!("genus {g} < 2")));
    }
    Ok(if d < 0 {
        H0::Value(0)
    } else if d > 2 * g - 2 {
        H0::Value(riemann_roch_chi(g, d))
    } else {
        H0::NonTopological
    })
}

fn h0_value(g: i64, d: i64) -> Result<i64> {
    match h0_topological(g, d)? {
        H0::Value(v) => Ok(v),
        H0::NonTopological => Err(Error::NonTopological(format!("h0 at genus {g}, degree {d}"))),
    }
}

/// `4g-3 | 4g-4` for `g ≥ 2` and `0 < d < 2g-2`.
pub fn vect_teich_dim(g: i64, d: i64) -> Result<SuperDim> {
    if g < 2 {
        return Err(Error::OutOfRange(format!("genus {g} < 2")));
    }
    if d <= 0 || d >= 2 * g - 2 {
        return Err(Error::OutOfRange(format!(
            "degree {d} outside 0 < d < {}",
            2 * g - 2
        )));
    }
    let corr = h0_value(g, -d)? + h0_value(g, d - (2 * g - 2))?;
    Ok(SuperDim::new((4 * g - 3) as u64, (4 * g - 4 + corr) as u64))
}

/// `3g-3 | 2g-2`.
pub fn srs_teich_dim(g: i64) -> Result<SuperDim> {
    if g < 2 {
        return Err(Error::OutOfRange(format!("genus {g} < 2")));
    }
    Ok(SuperDim::new((3 * g - 3) as u64, (2 * g - 2) as u64))
}

/// `1 | h^0(L ⊗ K^{-1}) + h^0(L^{-1})`.
pub fn aut_dim(g: i64, d: i64) -> Result<SuperDim> {
    let odd = h0_value(g, d - (2 * g - 2))? + h0_value(g, -d)?;
    Ok(SuperDim::new(1, odd as u64))
}

/// Number of spin structures, `2^{2g}`.
pub fn spin_count(g: u32) -> BigUint {
    BigUint::one() << (2 * g as usize)
}

/// `(v, w) ↦ (a v, a^{-1} w)`.
pub fn scaling_action(a: &GaussRat, v: &SuperPoly, w: &SuperPoly) -> Result<(SuperPoly, SuperPoly)> {
    let inv = a
        .inv()
        .ok_or_else(|| Error::Domain("scaling factor must be nonzero".into()))?;
    Ok((v.scale(a), w.scale(&inv)))
}

/// Only `a = ±1` preserve the super Riemann surface constraints.
pub fn srs_scaling_constraint(a: &GaussRat) -> Result<bool> {
    if a.is_zero() {
        return Err(Error::Domain("scaling factor must be nonzero".into()));
    }
    Ok((a * a).is_one())
}

/// Critical spacetime dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CritDim {
    Exact(u32),
    AtMostOne,
}

impl fmt::Display for CritDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CritDim::Exact(d) => write!(f, "{d}"),
            CritDim::AtMostOne => write!(f, "<=1"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionRecord {
    pub algebra: String,
    pub extension: Option<String>,
    pub ext_dim: u32,
    pub d_crit: CritDim,
}

const TABLE: &[(&str, Option<&str>, u32, Option<u32>)] = &[
    ("witt", Some("vir"), 1, Some(26)),
    ("k^L(1|1)", Some("ns(1)"), 1, Some(10)),
    ("k^L(1|2)", Some("ns(2)"), 1, Some(2)),
    ("k^L(1|3)", Some("ns(3)"), 1, None),
    ("k'^L(1|4)", Some("ns(4)"), 3, None),
    ("k^M(1|1)", Some("r(1)"), 1, Some(10)),
    ("k^M(1|2)", Some("r(2)"), 1, Some(2)),
    ("k^M(1|3)", Some("r(3)"), 1, None),
    ("k^M(1|4)", Some("r(4)"), 1, None),
    ("vect^L(1|1)", None, 1, None),
    ("vect^L(1|2)", None, 1, None),
    ("svect^L_lambda(1|2)", None, 1, None),
    ("m^L(1)", None, 1, None),
];

/// The centrally extendable superconformal algebras; extension dimensions
/// add up to the 15 possible theories.
pub fn extension_table() -> Vec<ExtensionRecord> {
    TABLE
        .iter()
        .map(|&(algebra, ext, dim, crit)| ExtensionRecord {
            algebra: algebra.to_string(),
            extension: ext.map(str::to_string),
            ext_dim: dim,
            d_crit: crit.map_or(CritDim::AtMostOne, CritDim::Exact),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lookup {
    Found(ExtensionRecord),
    NoExtension,
}

/// Finds a record by algebra or extension name. Contact and Möbius contact
/// algebras in `1|n` with `n ≥ 5` have no extension.
pub fn lookup(name: &str) -> Result<Lookup> {
    if let Some(r) = extension_table()
        .into_iter()
        .find(|r| r.algebra == name || r.extension.as_deref() == Some(name))
    {
        return Ok(Lookup::Found(r));
    }
    for prefix in ["k^L(1|", "k^M(1|", "k'^L(1|", "k'^M(1|"] {
        if let Some(n) = name.strip_prefix(prefix).and_then(|s| s.strip_suffix(')')) {
            if n.parse::<u32>().is_ok_and(|n| n >= 5) {
                return Ok(Lookup::NoExtension);
            }
        }
    }
    Err(Error::Domain(format!("unknown algebra `{name}`")))
}

const HEADER: &str = "algebra\textension\text_dim\td_crit";

/// One tab-separated record per line after a header.
pub fn serialize_table(table: &[ExtensionRecord]) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    for r in table {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            r.algebra,
            r.extension.as_deref().unwrap_or("-"),
            r.ext_dim,
            r.d_crit
        ));
    }
    out
}

pub fn parse_table(text: &str) -> Result<Vec<ExtensionRecord>> {
    let mut lines = text.lines();
    if lines.next() != Some(HEADER) {
        return Err(Error::Domain("missing table header".into()));
    }
    lines
        .filter(|l| !l.is_empty())
        .map(|line| {
            let f: Vec<&str> = line.split('\t').collect();
            if f.len() != 4 {
                return Err(Error::Domain(format!("bad record `{line}`")));
            }
            let ext_dim = f[2]
                .parse()
                .map_err(|_| Error::Domain(format!("bad dimension `{}`", f[2])))?;
            let d_crit = match f[3] {
                "<=1" => CritDim::AtMostOne,
                s => CritDim::Exact(
                    s.parse()
                        .map_err(|_| Error::Domain(format!("bad critical dimension `{s}`")))?,
                ),
            };
            Ok(ExtensionRecord {
                algebra: f[0].to_string(),
                extension: (f[1] != "-").then(|| f[1].to_string()),
                ext_dim,
                d_crit,
            })
        })
        .collect()
}
