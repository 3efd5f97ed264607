//! The logic behind each Python function, free of Python types so it can be
//! tested from Rust.

use beauville::beauville::{Effort, Family};
use beauville::recipes::{structure_sl2, strongly_real_structure_psl2, table1_row as row};
use beauville::serial::{verify_json as verify_text, verify_parsed, ConstructionJson, FieldJson, ParsedStructure};
use beauville::Field;

pub type Result<T> = std::result::Result<T, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String> {
    serde_json::to_string(v).map_err(err)
}

/// `auto` is exhaustive for q <= 32, fast above.
pub fn effort(name: &str, q: u64) -> Result<Effort> {
    match name {
        "fast" => Ok(Effort::Fast),
        "exhaustive" => Ok(Effort::Exhaustive),
        "auto" if q <= 32 => Ok(Effort::Exhaustive),
        "auto" => Ok(Effort::Fast),
        _ => Err(format!("effort must be fast, exhaustive or auto; got `{name}`")),
    }
}

pub fn family(name: &str) -> Result<Family> {
    match name.to_ascii_lowercase().as_str() {
        "psl2" | "l2" => Ok(Family::PSL2),
        "sl2" => Ok(Family::SL2),
        _ => Err(format!("family must be psl2 or sl2; got `{name}`")),
    }
}

pub fn construct(family: &str, q: u64, effort: &str) -> Result<String> {
    let fam = self::family(family)?;
    let eff = self::effort(effort, q)?;
    let f = Field::of_order(q).map_err(err)?;
    let c = match fam {
        Family::SL2 => structure_sl2(&f),
        _ => strongly_real_structure_psl2(&f),
    }
    .map_err(err)?;
    let report = verify_parsed(&ParsedStructure::Linear(c.structure.clone()), eff).map_err(err)?;
    to_json(&ConstructionJson::new(&c, Some(report)))
}

pub fn verify_json(structure: &str, effort: &str) -> Result<String> {
    // "auto" needs q, which lives inside the document
    let q = serde_json::from_str::<serde_json::Value>(structure)
        .ok()
        .and_then(|v| v.pointer("/group/q").and_then(|q| q.as_u64()))
        .unwrap_or(0);
    let eff = self::effort(effort, q)?;
    verify_text(structure, eff).map_err(err).and_then(|r| to_json(&r))
}

pub fn table1_row(q: u64) -> Result<String> {
    to_json(&row(q).map_err(err)?)
}

pub fn field(q: u64) -> Result<String> {
    let f = Field::of_order(q).map_err(err)?;
    to_json(&FieldJson::from_field(&f))
}
