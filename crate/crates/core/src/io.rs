//! File formats: ideal files, grid files, and deterministic JSON output.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fatgrid::{FatGrid, WeightedPointSet};
use crate::ideal::Ideal;
use crate::poly::{parse_polynomial, polynomial_from_json, JsonTerm, Polynomial, VariableBlock};
use crate::projective::Point;

/// A polynomial given either as text or as a list of `["num/den", [e0, e1, e2]]` terms.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum PolyRepr {
    Text(String),
    Terms(Vec<JsonTerm>),
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct IdealFile {
    pub vars: Vec<String>,
    pub gens: Vec<PolyRepr>,
}

impl IdealFile {
    pub fn into_ideal(self) -> Result<Ideal> {
        let block = VariableBlock::new(self.vars)?;
        let gens = self
            .gens
            .iter()
            .map(|g| match g {
                PolyRepr::Text(s) => parse_polynomial(s, &block),
                PolyRepr::Terms(t) => polynomial_from_json(t, &block),
            })
            .collect::<Result<Vec<Polynomial>>>()?;
        Ideal::new(&block, gens)
    }

    /// Generators written as text, in the given order.
    pub fn from_ideal(ideal: &Ideal) -> Self {
        IdealFile {
            vars: ideal.block().names().to_vec(),
            gens: ideal.gens().iter().map(|g| PolyRepr::Text(g.to_text())).collect(),
        }
    }
}

pub fn parse_ideal(text: &str) -> Result<Ideal> {
    let file: IdealFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("ideal file: {e}")))?;
    file.into_ideal()
}

/// A coordinate given as a JSON string (`"3/2"`) or integer.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum Coord {
    Text(String),
    Int(i64),
}

impl Coord {
    fn text(&self) -> String {
        match self {
            Coord::Text(s) => s.clone(),
            Coord::Int(i) => i.to_string(),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridFile {
    #[serde(rename = "P")]
    p: Option<Vec<Vec<Coord>>>,
    #[serde(rename = "M")]
    m: Vec<u32>,
    #[serde(rename = "Q")]
    q: Option<Vec<Vec<Coord>>>,
    #[serde(rename = "N")]
    n: Vec<u32>,
}

fn points(raw: &[Vec<Coord>]) -> Result<Vec<Point>> {
    raw.iter()
        .map(|c| Point::from_strings(&c.iter().map(Coord::text).collect::<Vec<_>>()))
        .collect()
}

/// `{ "P": [[..],..], "M": [..], "Q": [[..],..], "N": [..] }`, or just `{ "M", "N" }`
/// for the default point sets.
pub fn parse_grid(text: &str) -> Result<FatGrid> {
    let file: GridFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("grid file: {e}")))?;
    match (&file.p, &file.q) {
        (Some(p), Some(q)) => FatGrid::build(
            WeightedPointSet::new(points(p)?, file.m.clone())?,
            WeightedPointSet::new(points(q)?, file.n.clone())?,
        ),
        (None, None) => FatGrid::from_multiplicities(&file.m, &file.n),
        _ => Err(Error::Parse("grid file: give both P and Q, or neither".into())),
    }
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

/// Comma-separated positive integers, e.g. `2,3,3`.
pub fn parse_multiplicities(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|e| Error::Parse(format!("multiplicity {t:?}: {e}")))
        })
        .collect()
}

/// Pretty JSON with object keys in lexicographic order.
pub fn to_sorted_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::InvalidInput(e.to_string()))?;
    serde_json::to_string_pretty(&v).map_err(|e| Error::InvalidInput(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ideal_files_accept_both_polynomial_forms() {
        let text = r#"{ "vars": ["x0","x1","x2"], "gens": ["x0 - x1", [["2/1",[0,0,1]], ["-1/1",[1,0,0]]]] }"#;
        let i = parse_ideal(text).unwrap();
        assert_eq!(i.gens().len(), 2);
        let back = serde_json::to_string(&IdealFile::from_ideal(&i)).unwrap();
        assert!(parse_ideal(&back).unwrap().equals(&i).unwrap());
        assert!(parse_ideal(r#"{ "vars": ["x0"], "gens": ["y"] }"#).is_err());
        assert!(parse_ideal("{").is_err());
    }

    #[test]
    fn grid_files() {
        let g = parse_grid(r#"{ "M": [2,3,3], "N": [2,3,4,4] }"#).unwrap();
        assert_eq!(g.multiplicity_sum(), 59);
        assert_eq!(g.scheme_degree(), 180);
        let explicit =
            parse_grid(r#"{ "P": [["1","1","2"], [1,1,3]], "M": [1,2], "Q": [["1","2","1"]], "N": [1] }"#).unwrap();
        assert!(explicit.swapped());
        assert!(parse_grid(r#"{ "P": [["1","1","2"]], "M": [1], "N": [1] }"#).is_err());
        assert!(parse_grid(r#"{ "M": [1], "N": [1], "extra": 1 }"#).is_err());
    }

    #[test]
    fn sorted_keys() {
        #[derive(Serialize)]
        struct S {
            b: u8,
            a: u8,
        }
        assert_eq!(
            to_sorted_json(&S { b: 1, a: 2 }).unwrap(),
            "{\n  \"a\": 2,\n  \"b\": 1\n}"
        );
        assert_eq!(parse_multiplicities("2, 3,3").unwrap(), vec![2, 3, 3]);
        assert!(parse_multiplicities("2,x").is_err());
    }
}
