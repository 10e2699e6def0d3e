//! Declarative morphism files.
//!
//! ```toml
//! evens = ["x"]
//! laurent = []
//! odds = ["th1"]
//! base = 2
//!
//! [underlying]
//! x = "2*x"
//!
//! [inverse]
//! x = "1/2*x"
//!
//! [nilpart]
//! "1" = "th1*d_x"
//! "1,2" = "x*d_x"
//! ```
//!
//! Coordinates missing from `underlying` or `inverse` map to themselves.
//! `[images]` lists full coordinate images for `factorize`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Deserialize;

use super::parse::{parse_field, parse_poly};
use super::CliError;
use crate::error::Error;
use crate::morph::{base_mask, CoordMap, NilPart, SuperMorphism};
use crate::ring::{EvenVar, RingSignature, SuperPoly};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    evens: Vec<String>,
    #[serde(default)]
    laurent: Vec<String>,
    #[serde(default)]
    odds: Vec<String>,
    #[serde(default)]
    base: usize,
    #[serde(default)]
    underlying: BTreeMap<String, String>,
    inverse: Option<BTreeMap<String, String>>,
    #[serde(default)]
    nilpart: BTreeMap<String, String>,
    images: Option<BTreeMap<String, String>>,
}

#[derive(Debug)]
pub struct MorphFile {
    pub sig: Arc<RingSignature>,
    pub underlying: CoordMap,
    pub inverse: Option<CoordMap>,
    pub nilpart: NilPart,
    pub images: Option<Vec<SuperPoly>>,
}

impl MorphFile {
    pub fn morphism(&self) -> Result<SuperMorphism, CliError> {
        Ok(SuperMorphism::new(
            self.underlying.clone(),
            self.inverse.clone(),
            self.nilpart.clone(),
        )?)
    }
}

fn images(
    sig: &Arc<RingSignature>,
    table: &BTreeMap<String, String>,
) -> Result<Vec<SuperPoly>, CliError> {
    let coords = sig.coords();
    for name in table.keys() {
        if !sig.lookup(name).is_some_and(|v| coords.contains(&v)) {
            return Err(CliError::Domain(Error::UnknownVariable(name.clone())));
        }
    }
    coords
        .into_iter()
        .map(|v| match table.get(&sig.var_name(v)) {
            Some(text) => Ok(parse_poly(text, sig)?),
            None => Ok(SuperPoly::gen(sig, v)),
        })
        .collect()
}

fn coord_map(sig: &Arc<RingSignature>, table: &BTreeMap<String, String>) -> Result<CoordMap, CliError> {
    Ok(CoordMap::new(sig, images(sig, table)?)?)
}

pub fn parse_morph_file(text: &str) -> Result<MorphFile, CliError> {
    let raw: Raw = toml::from_str(text).map_err(|e| CliError::Syntax(e.to_string()))?;
    for name in &raw.laurent {
        if !raw.evens.contains(name) {
            return Err(CliError::Domain(Error::UnknownVariable(name.clone())));
        }
    }
    let evens = raw
        .evens
        .iter()
        .map(|n| {
            if raw.laurent.contains(n) {
                EvenVar::laurent(n)
            } else {
                EvenVar::poly(n)
            }
        })
        .collect();
    let sig = Arc::new(RingSignature::new(evens, raw.odds.clone(), raw.base)?);
    let underlying = coord_map(&sig, &raw.underlying)?;
    let inverse = raw.inverse.as_ref().map(|t| coord_map(&sig, t)).transpose()?;
    let mut nilpart = NilPart::new();
    for (key, text) in &raw.nilpart {
        let indices = key
            .split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| CliError::Syntax(format!("bad nilpart key `{key}`")))?;
        let mask = base_mask(&sig, &indices)?;
        if indices.len() != mask.count_ones() as usize {
            return Err(CliError::Syntax(format!("repeated index in nilpart key `{key}`")));
        }
        nilpart.insert(mask, parse_field(text, &sig)?);
    }
    let images = raw.images.as_ref().map(|t| images(&sig, t)).transpose()?;
    Ok(MorphFile {
        sig,
        underlying,
        inverse,
        nilpart,
        images,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SCALE: &str = r#"
evens = ["x"]
odds = ["th1"]
base = 1
[underlying]
x = "2*x"
[inverse]
x = "1/2*x"
[nilpart]
"1" = "th1*d_x"
"#;

    #[test]
    fn reads_a_morphism() {
        let m = parse_morph_file(SCALE).unwrap();
        let phi = m.morphism().unwrap();
        assert_eq!(phi.nilpart().len(), 1);
        let x = SuperPoly::var(&m.sig, "x").unwrap();
        assert_eq!(phi.apply(&x).unwrap().to_string(), "-th1*p1 + 2*x");
    }

    #[test]
    fn rejects_bad_files() {
        assert!(matches!(parse_morph_file("evens = ["), Err(CliError::Syntax(_))));
        let bad_key = SCALE.replace("\"1\" =", "\"2\" =");
        assert!(matches!(parse_morph_file(&bad_key), Err(CliError::Domain(_))));
        let bad_expr = SCALE.replace("th1*d_x", "th1*d_y");
        assert!(matches!(parse_morph_file(&bad_expr), Err(CliError::Parse(_))));
    }
}
