//! Report payloads and their text and JSON renderings.

use equirr_core::characters::{ClassExport, TableSource};
use equirr_core::cover::GenusReport;
use equirr_core::oracle::IdentityCheck;
use serde::{Deserialize, Serialize};

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub command: String,
    pub inputs_digest: String,
    pub results: serde_json::Value,
    pub diagnostics: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Header, command-specific body, then diagnostics.
    pub fn to_text(&self, body: &str) -> String {
        let mut out = format!("equirr {}\ninputs sha256 {}\n\n", self.command, self.inputs_digest);
        out.push_str(body);
        if !body.ends_with('\n') {
            out.push('\n');
        }
        if !self.diagnostics.is_empty() {
            out.push('\n');
            for d in &self.diagnostics {
                out.push_str("note: ");
                out.push_str(d);
                out.push('\n');
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterMultiplicity {
    pub character: String,
    pub degree: u64,
    pub multiplicity: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitMultiplicity {
    pub orbit: usize,
    pub members: Vec<String>,
    pub multiplicity: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionResult {
    /// `pullback` or `borne`.
    pub method: String,
    pub divisor: String,
    pub degree_divisor: i64,
    pub genus_top: i64,
    pub characters: Vec<CharacterMultiplicity>,
    pub dimension: String,
    pub genuine: bool,
    pub rational: bool,
    pub averaged: bool,
    /// `guaranteed`, `not-guaranteed` or `assumed`.
    pub nonspecial: String,
    pub rational_multiplicities: Option<Vec<OrbitMultiplicity>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationResult {
    pub direct: Vec<CharacterMultiplicity>,
    pub direct_rational: bool,
    pub degree: String,
    /// Closed-form values per character; `None` for the trivial character.
    pub closed_form: Vec<Option<String>>,
    pub closed_form_averaged: bool,
    /// `exact` or `orbit-averages`.
    pub agreement: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqdegResult {
    pub divisor: String,
    pub characters: Vec<CharacterMultiplicity>,
    pub dimension: String,
    pub genuine: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterRow {
    pub name: String,
    pub degree: u64,
    pub values: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitInfo {
    pub orbit: usize,
    pub members: Vec<String>,
    pub schur_index: u64,
    pub dimension: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartabResult {
    pub order: usize,
    pub classes: Vec<ClassExport>,
    pub characters: Vec<CharacterRow>,
    pub source: TableSource,
    pub orbits: Vec<OrbitInfo>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupInfo {
    pub label: String,
    pub order: usize,
    pub generator: String,
    pub conjugates: usize,
    pub branch_points: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupsResult {
    pub group_order: usize,
    pub subgroups: Vec<SubgroupInfo>,
}

pub type GenusResult = GenusReport;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizabilityResult {
    /// `realizable`, `not-realizable`, `unknown` or `skipped`.
    pub verdict: String,
    pub witness: Option<Vec<String>>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyResult {
    pub seed: u64,
    pub checks: Vec<IdentityCheck>,
    pub realizability: RealizabilityResult,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExamplesResult {
    pub directory: String,
    pub files: Vec<String>,
}

/// Left-aligned columns separated by two spaces.
pub fn grid(header: &[&str], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, cell) in cells.iter().enumerate() {
            s.push_str(cell);
            if i + 1 < cols {
                s.push_str(&" ".repeat(width[i] - cell.chars().count() + 2));
            }
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(header.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

/// `(a, b, c)`.
pub fn tuple<S: AsRef<str>>(items: &[S]) -> String {
    let parts: Vec<&str> = items.iter().map(AsRef::as_ref).collect();
    format!("({})", parts.join(", "))
}
