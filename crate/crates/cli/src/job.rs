//! Versioned JSON job files: group, optional character table and Schur
//! indices, cover and divisor. Elements are written as words in the named
//! generators.

use std::collections::BTreeMap;
use std::path::Path;

use equirr_core::cover::CoverData;
use equirr_core::cyclotomic::{parse_rational, Rational};
use equirr_core::equivariant::{EquivariantDivisor, OrbitTerm, Stabilizer};
use equirr_core::group::{constructions, FiniteGroup, Permutation};
use equirr_core::{Cyclotomic, GroupContext};
use num::Integer;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const JOB_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawJob {
    pub version: u32,
    pub group: RawGroup,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character_table: Option<Vec<Vec<RawValue>>>,
    /// Orbit number (from 1, as printed by `chartab`) to Schur index.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schur_indices: Option<BTreeMap<String, u64>>,
    pub cover: RawCover,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divisor: Option<RawDivisor>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum RawGroup {
    /// `cyclic:q`, `dihedral:n`, `symmetric:n`, `alternating:n`, `klein4`,
    /// `g21`, `quaternion`, `frobenius20`.
    Builtin(String),
    /// Permutations in cycle notation on points `0, 1, …`.
    Generators(Vec<RawGenerator>),
    /// `rows[a][b]` is the index of `a*b`.
    Table {
        rows: Vec<Vec<usize>>,
        #[serde(default)]
        generators: BTreeMap<String, usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGenerator {
    pub name: String,
    pub cycles: String,
}

/// A table entry: an integer, a string such as `-1 - z7 - z7^2`, or the
/// exact `{conductor, coeffs}` form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawValue {
    Integer(i64),
    Text(String),
    Exact(Cyclotomic),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCover {
    pub genus_base: i64,
    pub branch_points: Vec<RawBranchPoint>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawBranchPoint {
    pub inertia: String,
    pub exponent: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum RawDivisor {
    Pullback { degree_base: i64 },
    Orbits(Vec<RawOrbit>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawOrbit {
    /// A word, or `"trivial"` for a free orbit.
    pub stabilizer: String,
    #[serde(default = "one")]
    pub exponent: i64,
    pub coefficient: i64,
}

fn one() -> i64 {
    1
}

/// Settings that come from the command line rather than the job file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobOptions {
    pub max_order: usize,
    /// Orbit number (from 1) to Schur index; overrides the job file.
    pub schur: BTreeMap<usize, u64>,
}

impl Default for JobOptions {
    fn default() -> Self {
        JobOptions {
            max_order: equirr_core::group::DEFAULT_MAX_ORDER,
            schur: BTreeMap::new(),
        }
    }
}

/// A validated job with every word resolved.
#[derive(Clone, Debug)]
pub struct Job {
    pub raw: RawJob,
    /// The job file as parsed JSON, used for the input digest.
    pub source: serde_json::Value,
    pub ctx: GroupContext,
    pub cover: CoverData,
    pub divisor: Option<EquivariantDivisor>,
}

fn invalid(field: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Validation(format!("{field}: {msg}"))
}

/// Reads and validates a job file.
pub fn parse_job(path: &Path, options: &JobOptions) -> Result<Job, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_job_str(&text, options)
}

/// Parses a job from its JSON text; schema errors carry the field path and
/// line.
pub fn parse_job_str(text: &str, options: &JobOptions) -> Result<Job, CliError> {
    let source: serde_json::Value = serde_json::from_str(text).map_err(|e| {
        CliError::Validation(format!("malformed JSON at line {} column {}: {e}", e.line(), e.column()))
    })?;
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawJob = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        CliError::Validation(format!("{path}: {inner}"))
    })?;
    resolve(raw, source, options)
}

/// Validates a parsed job against its group.
pub fn resolve(raw: RawJob, source: serde_json::Value, options: &JobOptions) -> Result<Job, CliError> {
    if raw.version != JOB_VERSION {
        return Err(invalid(
            "version",
            format!("unsupported version {} (expected {JOB_VERSION})", raw.version),
        ));
    }
    let group = build_group(&raw.group, options.max_order)?;
    let rows = match &raw.character_table {
        None => None,
        Some(rows) => Some(
            rows.iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(j, v)| {
                            value(v).map_err(|e| invalid(&format!("character_table[{i}][{j}]"), e))
                        })
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    let mut schur = BTreeMap::new();
    for (k, &m) in raw.schur_indices.iter().flatten() {
        let j: usize = k
            .trim()
            .parse()
            .ok()
            .filter(|&j| j >= 1)
            .ok_or_else(|| invalid(&format!("schur_indices.{k}"), "orbit numbers start at 1"))?;
        schur.insert(j, m);
    }
    schur.extend(options.schur.iter().map(|(&j, &m)| (j, m)));
    if let Some((&j, _)) = schur.iter().find(|(_, &m)| m == 0) {
        return Err(invalid(&format!("schur_indices.{j}"), "Schur index must be positive"));
    }
    let schur: BTreeMap<usize, u64> = schur.into_iter().map(|(j, m)| (j - 1, m)).collect();
    let ctx = GroupContext::with_options(group, rows, &schur).map_err(|e| match e {
        equirr_core::Error::UnknownOrbit(j) => {
            invalid("schur_indices", format!("no rational orbit numbered {}", j + 1))
        }
        other => CliError::from(other),
    })?;

    let mut points = Vec::with_capacity(raw.cover.branch_points.len());
    for (i, p) in raw.cover.branch_points.iter().enumerate() {
        let field = format!("cover.branch_points[{i}]");
        let h = ctx
            .group
            .eval_word(&p.inertia)
            .map_err(|e| invalid(&format!("{field}.inertia"), e))?;
        if h == 0 {
            return Err(invalid(&format!("{field}.inertia"), "inertia generator is the identity"));
        }
        let e = ctx.group.element_order(h) as i64;
        if p.exponent.gcd(&e) != 1 {
            return Err(invalid(
                &format!("{field}.exponent"),
                format!("gcd({}, {e}) != 1 for inertia {:?} of order {e}", p.exponent, p.inertia),
            ));
        }
        points.push((h, p.exponent));
    }
    let cover = CoverData::new(&ctx.subgroups, raw.cover.genus_base, &points)
        .map_err(|e| CliError::Validation(format!("cover: {e}")))?;

    let divisor = match &raw.divisor {
        None => None,
        Some(RawDivisor::Pullback { degree_base }) => Some(EquivariantDivisor::Pullback {
            degree_base: *degree_base,
        }),
        Some(RawDivisor::Orbits(terms)) => {
            let mut out = Vec::with_capacity(terms.len());
            for (i, t) in terms.iter().enumerate() {
                let field = format!("divisor.orbits[{i}]");
                let stabilizer = if t.stabilizer.trim() == "trivial" {
                    None
                } else {
                    let h = ctx
                        .group
                        .eval_word(&t.stabilizer)
                        .map_err(|e| invalid(&format!("{field}.stabilizer"), e))?;
                    if h == 0 {
                        None
                    } else {
                        Some(
                            Stabilizer::new(&ctx.group, h, t.exponent)
                                .map_err(|e| invalid(&format!("{field}.exponent"), e))?,
                        )
                    }
                };
                out.push(OrbitTerm {
                    stabilizer,
                    coefficient: t.coefficient,
                });
            }
            Some(EquivariantDivisor::Orbits(out))
        }
    };
    Ok(Job {
        raw,
        source,
        ctx,
        cover,
        divisor,
    })
}

fn build_group(spec: &RawGroup, max_order: usize) -> Result<FiniteGroup, CliError> {
    let group = match spec {
        RawGroup::Builtin(name) => constructions::builtin(name)
            .ok_or_else(|| invalid("group.builtin", format!("unknown group {name:?}")))?,
        RawGroup::Generators(gens) => {
            if gens.is_empty() {
                return Err(invalid("group.generators", "no generators"));
            }
            let mut degree = 1;
            for g in gens {
                for token in g
                    .cycles
                    .split(|c: char| !c.is_ascii_digit())
                    .filter(|t| !t.is_empty())
                {
                    if let Ok(p) = token.parse::<usize>() {
                        degree = degree.max(p + 1);
                    }
                }
            }
            let perms = gens
                .iter()
                .enumerate()
                .map(|(i, g)| {
                    if g.name.is_empty() || g.name == "e" || g.name == "1" || g.name.contains(['*', '^']) {
                        return Err(invalid(
                            &format!("group.generators[{i}].name"),
                            format!("{:?} cannot be used as a generator name", g.name),
                        ));
                    }
                    Permutation::from_cycles(degree, &g.cycles)
                        .map(|p| (g.name.clone(), p))
                        .map_err(|e| invalid(&format!("group.generators[{i}].cycles"), e))
                })
                .collect::<Result<Vec<_>, _>>()?;
            FiniteGroup::from_generators(&perms, max_order)
                .map_err(|e| invalid("group.generators", e))?
        }
        RawGroup::Table { rows, generators } => {
            let names: Vec<(String, usize)> =
                generators.iter().map(|(k, &v)| (k.clone(), v)).collect();
            FiniteGroup::from_table_named(rows, &names).map_err(|e| invalid("group.table", e))?
        }
    };
    if group.order() > max_order {
        return Err(invalid(
            "group",
            format!("order {} exceeds --max-order {max_order}", group.order()),
        ));
    }
    Ok(group)
}

fn value(v: &RawValue) -> Result<Cyclotomic, String> {
    match v {
        RawValue::Integer(n) => Ok(Cyclotomic::from_integer(*n)),
        RawValue::Exact(c) => Ok(c.clone()),
        RawValue::Text(s) => parse_cyclotomic(s),
    }
}

/// Parses sums like `-1 - z7 - 2*z7^2 + 1/2*z3^-1`, the form printed by the
/// text reports.
pub fn parse_cyclotomic(s: &str) -> Result<Cyclotomic, String> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty value".into());
    }
    let mut terms: Vec<String> = Vec::new();
    let mut current = String::new();
    let mut prev: Option<char> = None;
    for c in compact.chars() {
        if (c == '+' || c == '-') && prev.is_some() && prev != Some('^') && prev != Some('*') {
            terms.push(std::mem::take(&mut current));
        }
        current.push(c);
        prev = Some(c);
    }
    terms.push(current);
    let mut acc = Cyclotomic::from_integer(0);
    for term in terms {
        acc = &acc + &parse_term(&term).ok_or_else(|| format!("cannot parse term {term:?} in {s:?}"))?;
    }
    Ok(acc)
}

fn parse_term(term: &str) -> Option<Cyclotomic> {
    let (sign, body) = match term.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, term.strip_prefix('+').unwrap_or(term)),
    };
    let (coeff, root) = match body.find('z') {
        None => (parse_rational(body)?, None),
        Some(0) => (Rational::from_integer(1.into()), Some(body)),
        Some(i) => (parse_rational(body[..i].strip_suffix('*')?)?, Some(&body[i..])),
    };
    let coeff = coeff * Rational::from_integer(sign.into());
    let Some(root) = root else {
        return Some(Cyclotomic::from_rational(coeff));
    };
    let root = root.strip_prefix('z')?;
    let (n, k) = match root.split_once('^') {
        Some((n, k)) => (n.parse::<u64>().ok()?, k.parse::<i64>().ok()?),
        None => (root.parse::<u64>().ok()?, 1),
    };
    if n == 0 {
        return None;
    }
    Some(Cyclotomic::zeta(n, k).ok()?.scale(&coeff))
}

impl RawJob {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("job serializes");
        s.push('\n');
        s
    }
}

/// The bundled fixtures as job files.
pub fn fixture_job(spec: &equirr_core::fixtures::FixtureSpec) -> RawJob {
    use equirr_core::fixtures::DivisorSpec;
    RawJob {
        version: JOB_VERSION,
        group: RawGroup::Builtin(spec.group.clone()),
        character_table: None,
        schur_indices: None,
        cover: RawCover {
            genus_base: spec.genus_base,
            branch_points: spec
                .branch_points
                .iter()
                .map(|(w, a)| RawBranchPoint {
                    inertia: w.clone(),
                    exponent: *a,
                })
                .collect(),
        },
        divisor: Some(match &spec.divisor {
            DivisorSpec::Pullback { degree_base } => RawDivisor::Pullback {
                degree_base: *degree_base,
            },
            DivisorSpec::Orbits(terms) => RawDivisor::Orbits(
                terms
                    .iter()
                    .map(|(w, a, r)| RawOrbit {
                        stabilizer: w.clone().unwrap_or_else(|| "trivial".into()),
                        exponent: *a,
                        coefficient: *r,
                    })
                    .collect(),
            ),
        }),
    }
}
