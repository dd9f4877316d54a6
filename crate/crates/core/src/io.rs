//! JSON wire formats for ideals, modules and presentation matrices.
//!
//! Ideal: `{"field":"Q","gens":["x^3","x*y","y^2"]}`, optionally with the
//! certificate `n0` and `colength` (checked when present).
//! Module: `{"field":"Q","rank":2,"generators":[["x","0"],...],"presentation":[[...],...]}`
//! with generator columns and presentation rows.

use serde::{Deserialize, Serialize};

use crate::arith::{parse_poly, Field, Poly, PolyMatrix};
use crate::error::{Error, Result};
use crate::modcore::ModuleRep;
use crate::trunc::TruncatedIdeal;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealJson {
    pub field: Field,
    pub gens: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n0: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colength: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    pub field: Field,
    pub rank: usize,
    pub generators: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n0: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colength: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationJson {
    pub field: Field,
    pub presentation: Vec<Vec<String>>,
}

fn parse_all(field: Field, src: &[String]) -> Result<Vec<Poly>> {
    src.iter().map(|s| parse_poly(s, field)).collect()
}

fn strings(ps: &[Poly]) -> Vec<String> {
    ps.iter().map(Poly::to_string).collect()
}

fn parse_matrix(field: Field, rows: &[Vec<String>]) -> Result<PolyMatrix> {
    let rows = rows.iter().map(|r| parse_all(field, r)).collect::<Result<Vec<_>>>()?;
    PolyMatrix::from_rows(field, rows)
}

fn matrix_rows(a: &PolyMatrix) -> Vec<Vec<String>> {
    (0..a.nrows()).map(|i| strings(&a.row(i))).collect()
}

fn check_recorded(what: &str, recorded: Option<u64>, actual: u64) -> Result<()> {
    match recorded {
        Some(r) if r != actual => Err(Error::Input(format!("recorded {what} {r} does not match computed {actual}"))),
        _ => Ok(()),
    }
}

impl IdealJson {
    pub fn from_ideal(i: &TruncatedIdeal) -> Self {
        IdealJson {
            field: i.field(),
            gens: strings(&i.generators()),
            n0: Some(i.certificate()),
            colength: Some(i.colength()),
        }
    }

    pub fn to_ideal(&self) -> Result<TruncatedIdeal> {
        if self.gens.is_empty() {
            return Err(Error::Input("ideal has no generators".into()));
        }
        let i = TruncatedIdeal::new(self.field, parse_all(self.field, &self.gens)?)?;
        check_recorded("n0", self.n0.map(u64::from), i.certificate() as u64)?;
        check_recorded("colength", self.colength, i.colength())?;
        Ok(i)
    }
}

impl ModuleJson {
    pub fn from_module(m: &ModuleRep) -> Self {
        ModuleJson {
            field: m.field(),
            rank: m.rank(),
            generators: m.generators().iter().map(|g| strings(g)).collect(),
            presentation: m.presentation().map(matrix_rows),
            n0: Some(m.certificate()),
            colength: Some(m.colength()),
        }
    }

    pub fn to_module(&self) -> Result<ModuleRep> {
        let gens = self
            .generators
            .iter()
            .map(|g| {
                if g.len() != self.rank {
                    return Err(Error::Input(format!("generator of length {} in a rank-{} module", g.len(), self.rank)));
                }
                parse_all(self.field, g)
            })
            .collect::<Result<Vec<_>>>()?;
        let presentation = self.presentation.as_ref().map(|rows| parse_matrix(self.field, rows)).transpose()?;
        let m = ModuleRep::new(self.field, self.rank, gens, presentation)?;
        check_recorded("n0", self.n0.map(u64::from), m.certificate() as u64)?;
        check_recorded("colength", self.colength, m.colength())?;
        Ok(m)
    }
}

impl PresentationJson {
    pub fn from_matrix(a: &PolyMatrix) -> Self {
        PresentationJson { field: a.field(), presentation: matrix_rows(a) }
    }

    pub fn to_matrix(&self) -> Result<PolyMatrix> {
        parse_matrix(self.field, &self.presentation)
    }
}

fn decode<T: for<'de> Deserialize<'de>>(src: &str) -> Result<T> {
    serde_json::from_str(src).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_ideal_json(src: &str) -> Result<TruncatedIdeal> {
    decode::<IdealJson>(src)?.to_ideal()
}

pub fn parse_module_json(src: &str) -> Result<ModuleRep> {
    decode::<ModuleJson>(src)?.to_module()
}

pub fn parse_presentation_json(src: &str) -> Result<PolyMatrix> {
    decode::<PresentationJson>(src)?.to_matrix()
}

pub fn ideal_to_json(i: &TruncatedIdeal) -> String {
    serde_json::to_string_pretty(&IdealJson::from_ideal(i)).expect("serializable")
}

pub fn module_to_json(m: &ModuleRep) -> String {
    serde_json::to_string_pretty(&ModuleJson::from_module(m)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::staircase::MonomialIdeal;

    #[test]
    fn ideal_round_trip() {
        let src = r#"{"field":"Q","gens":["x^3","x*y","y^2"]}"#;
        let i = parse_ideal_json(src).unwrap();
        assert_eq!(i.colength(), 4);
        let again = parse_ideal_json(&ideal_to_json(&i)).unwrap();
        assert!(again.equals(&i));
    }

    #[test]
    fn module_round_trip_keeps_presentation() {
        let a = MonomialIdeal::max_power(2);
        let b = MonomialIdeal::max_power(3);
        let f = Field::Prime(65537);
        let m = ModuleRep::from_monomial_ideal(&a, f).unwrap().direct_sum(&ModuleRep::from_monomial_ideal(&b, f).unwrap()).unwrap();
        let back = parse_module_json(&module_to_json(&m)).unwrap();
        assert!(back.equals(&m));
        assert_eq!(back.presentation(), m.presentation());
    }

    #[test]
    fn rejects_unknown_fields_and_bad_records() {
        assert!(matches!(parse_ideal_json(r#"{"field":"Q","gens":["x"],"extra":1}"#), Err(Error::Parse(_))));
        assert!(matches!(parse_ideal_json(r#"{"field":"Q","gens":["x","y"],"colength":2}"#), Err(Error::Input(_))));
        assert!(matches!(parse_ideal_json(r#"{"field":"Q","gens":["x^2"]}"#), Err(Error::NotMPrimary)));
        assert!(matches!(parse_ideal_json(r#"{"field":"Q","gens":["x^^2"]}"#), Err(Error::Parse(_))));
    }

    #[test]
    fn presentation_file() {
        let a = parse_presentation_json(r#"{"field":"Q","presentation":[["y","0"],["-x^2","y"],["0","-x"]]}"#).unwrap();
        assert_eq!((a.nrows(), a.ncols()), (3, 2));
        assert_eq!(parse_presentation_json(&serde_json::to_string(&PresentationJson::from_matrix(&a)).unwrap()).unwrap(), a);
    }
}
