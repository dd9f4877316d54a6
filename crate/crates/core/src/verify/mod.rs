//! Theorem-by-theorem verification campaigns over example families.
//!
//! Every identity is checked exactly with the truncated engine, against an
//! independent route where one exists (the staircase oracle, Fitting ideals of
//! a presentation, or a second sampled reduction). Reports are ordered by
//! instance index and contain no timing unless asked for, so a fixed
//! `(family, count, seed, field)` yields byte-identical JSON.

mod checks;
mod suite;

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{parse_poly, Field, Poly};
use crate::error::{Error, Result};
use crate::staircase::MonomialIdeal;
use crate::trunc::{Submodule, TruncatedIdeal};

pub use checks::Outcome;
pub use suite::{random_closed_ideal, run_suite, run_suite_with, SuiteOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    IdealClassics,
    MainTheorem,
    CoreTheorems,
    MultiplicityFormulas,
    Counterexamples,
    All,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::IdealClassics,
        Family::MainTheorem,
        Family::CoreTheorems,
        Family::MultiplicityFormulas,
        Family::Counterexamples,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::IdealClassics => "ideal-classics",
            Family::MainTheorem => "main-theorem",
            Family::CoreTheorems => "core-theorems",
            Family::MultiplicityFormulas => "multiplicity-formulas",
            Family::Counterexamples => "counterexamples",
            Family::All => "all",
        }
    }

    pub(crate) fn includes(self, other: Family) -> bool {
        self == Family::All || self == other
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .chain([Family::All])
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown family {s:?}")))
    }
}

/// A side of an identity, or an input, in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Value {
    Ideal { generators: Vec<String> },
    Module { rank: usize, generators: Vec<Vec<String>> },
    Integer { value: i64 },
}

impl Value {
    pub fn ideal(i: &TruncatedIdeal) -> Self {
        Value::Ideal { generators: i.generators().iter().map(Poly::to_string).collect() }
    }

    pub fn monomial(i: &MonomialIdeal) -> Self {
        Value::Ideal { generators: i.generators().iter().map(|m| m.to_string()).collect() }
    }

    pub fn module(m: &Submodule) -> Self {
        Value::Module {
            rank: m.rank(),
            generators: m.generators().iter().map(|g| g.iter().map(Poly::to_string).collect()).collect(),
        }
    }

    pub fn integer(n: i64) -> Self {
        Value::Integer { value: n }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Ideal { generators } => write!(f, "({})", generators.join(", ")),
            Value::Module { generators, .. } => {
                let cols: Vec<String> = generators.iter().map(|g| format!("[{}]", g.join(", "))).collect();
                write!(f, "<{}>", cols.join(", "))
            }
            Value::Integer { value } => write!(f, "{value}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// The check could not be carried out (instance generation or engine error).
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// `element` lies in the left side but not the right.
    LhsNotInRhs,
    /// `element` lies in the right side but not the left.
    RhsNotInLhs,
    /// Integer sides differ.
    ValueMismatch,
    /// A non-containment the identity asserts; `element` is in the left side only.
    ExpectedNonContainment,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: WitnessKind,
    /// The separating element: one polynomial for ideals, a column for modules.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub element: Vec<String>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub index: usize,
    pub description: String,
    pub inputs: Vec<Value>,
    /// Exponent pairs of the monomial inputs, for staircase rendering.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub staircases: Vec<Vec<[u32; 2]>>,
    pub seeds: Vec<u64>,
    /// Truncation orders of the objects compared.
    pub orders: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub instance: Instance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Value>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
}

impl Summary {
    pub fn of(reports: &[VerificationReport]) -> Self {
        let count = |v| reports.iter().filter(|r| r.verdict == v).count();
        Summary { total: reports.len(), passed: count(Verdict::Pass), failed: count(Verdict::Fail), errors: count(Verdict::Error) }
    }

    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub family: Family,
    pub count: usize,
    pub seed: u64,
    pub field: Field,
    pub summary: Summary,
    pub reports: Vec<VerificationReport>,
}

impl SuiteReport {
    pub fn new(family: Family, count: usize, seed: u64, field: Field, reports: Vec<VerificationReport>) -> Self {
        SuiteReport { family, count, seed, field, summary: Summary::of(&reports), reports }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(Error::Input(format!("unknown format {s:?}"))),
        }
    }
}

pub fn render_report(report: &SuiteReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => render_text(report),
    }
}

fn staircase_of(pairs: &[[u32; 2]]) -> Option<String> {
    let i = MonomialIdeal::from_exponents(&pairs.iter().map(|p| (p[0], p[1])).collect::<Vec<_>>()).ok()?;
    Some(i.render_staircase())
}

fn render_text(report: &SuiteReport) -> String {
    let s = &report.summary;
    let mut out = format!(
        "regcore verify: family {} count {} seed {} field {}: {} checks, {} passed, {} failed, {} errors\n",
        report.family, report.count, report.seed, report.field, s.total, s.passed, s.failed, s.errors
    );
    let mut current = None;
    for r in &report.reports {
        if current != Some(r.instance.index) {
            current = Some(r.instance.index);
            let _ = writeln!(out, "\n#{} {}", r.instance.index, r.instance.description);
            for pairs in &r.instance.staircases {
                if let Some(pic) = staircase_of(pairs) {
                    for line in pic.lines() {
                        let _ = writeln!(out, "    {line}");
                    }
                }
            }
        }
        let verdict = match r.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Error => "ERROR",
        };
        let _ = writeln!(out, "  {verdict} {}", r.theorem);
        if r.verdict != Verdict::Pass {
            if let Some(l) = &r.lhs {
                let _ = writeln!(out, "    lhs: {l}");
            }
            if let Some(rh) = &r.rhs {
                let _ = writeln!(out, "    rhs: {rh}");
            }
            if let Some(w) = &r.witness {
                let _ = writeln!(out, "    witness: [{}] {}", w.element.join(", "), w.detail);
            }
            if let Some(e) = &r.error {
                let _ = writeln!(out, "    error: {e}");
            }
        }
    }
    out
}

fn parse_value_ideal(field: Field, gens: &[String]) -> Result<TruncatedIdeal> {
    TruncatedIdeal::new(field, gens.iter().map(|g| parse_poly(g, field)).collect::<Result<_>>()?)
}

fn parse_value_module(field: Field, rank: usize, gens: &[Vec<String>]) -> Result<Submodule> {
    let gens = gens
        .iter()
        .map(|g| g.iter().map(|p| parse_poly(p, field)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Submodule::from_generators(field, rank, gens, None)
}

/// Re-verifies a report's witness with the membership operations.
/// `Ok(true)` when the witness separates the two sides as claimed.
pub fn recheck_witness(report: &VerificationReport, field: Field) -> Result<bool> {
    let Some(w) = &report.witness else { return Ok(report.verdict != Verdict::Fail) };
    let (Some(lhs), Some(rhs)) = (&report.lhs, &report.rhs) else {
        return Err(Error::Input("witness without both sides".into()));
    };
    if w.kind == WitnessKind::ValueMismatch {
        return Ok(lhs != rhs);
    }
    let (inside, outside) = match w.kind {
        WitnessKind::RhsNotInLhs => (rhs, lhs),
        _ => (lhs, rhs),
    };
    let element = w.element.iter().map(|p| parse_poly(p, field)).collect::<Result<Vec<_>>>()?;
    let member = |v: &Value| -> Result<bool> {
        match v {
            Value::Ideal { generators } => {
                let [f] = element.as_slice() else { return Err(Error::Input("ideal witness must be one polynomial".into())) };
                // Principal monomial sides (the remark's (x^2)) are not m-primary.
                if generators.len() == 1 {
                    let g = parse_poly(&generators[0], field)?;
                    if let (Some(gm), Some(fm)) = (g.as_monomial(), f.as_monomial()) {
                        return Ok(f.num_terms() == 1 && gm.divides(fm));
                    }
                }
                Ok(parse_value_ideal(field, generators)?.contains_poly(f))
            }
            Value::Module { rank, generators } => Ok(parse_value_module(field, *rank, generators)?.contains_vector(&element)),
            Value::Integer { .. } => Err(Error::Input("membership witness for an integer".into())),
        }
    };
    Ok(member(inside)? && !member(outside)?)
}
