//! The `equirr` commands.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use equirr_core::cover::Nonspeciality;
use equirr_core::cyclotomic::{format_rational, Rational};
use equirr_core::equivariant::{
    borne_character, decompose_pullback, equivariant_degree, multiplicity_rational_q,
    ramification_module_closed, ramification_module_direct, Decomposition, EquivariantDivisor,
    Method, VirtualCharacter,
};
use equirr_core::fixtures;
use equirr_core::oracle::{
    cover_identity_checks, group_identity_checks, realizability_check, solve_system,
    IdentityCheck, Realizability,
};
use equirr_core::GroupContext;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::job::{fixture_job, parse_job, Job, JobOptions};
use crate::report::*;
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Chartab,
    Subgroups,
    Genus,
    Decompose,
    Ramification,
    Eqdeg,
    Borne,
    Verify,
    Examples,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Chartab => "chartab",
            Command::Subgroups => "subgroups",
            Command::Genus => "genus",
            Command::Decompose => "decompose",
            Command::Ramification => "ramification",
            Command::Eqdeg => "eqdeg",
            Command::Borne => "borne",
            Command::Verify => "verify",
            Command::Examples => "examples",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flags {
    pub json: bool,
    /// Orbit number (from 1) to Schur index.
    pub schur: BTreeMap<usize, u64>,
    pub assume_nonspecial: bool,
    pub seed: u64,
    pub max_order: usize,
    pub skip_realizability: bool,
}

impl Default for Flags {
    fn default() -> Self {
        Flags {
            json: false,
            schur: BTreeMap::new(),
            assume_nonspecial: false,
            seed: 0,
            max_order: equirr_core::group::DEFAULT_MAX_ORDER,
            skip_realizability: false,
        }
    }
}

/// A finished command: the report, its text body, and the exit status
/// (nonzero only when `verify` finds a failing identity).
#[derive(Clone, Debug)]
pub struct Output {
    pub report: Report,
    pub body: String,
    pub status: i32,
}

impl Output {
    pub fn render(&self, json: bool) -> String {
        if json {
            self.report.to_json()
        } else {
            self.report.to_text(&self.body)
        }
    }
}

/// Runs `command` on the job file (for `examples`, the output directory).
pub fn execute(command: Command, path: &Path, flags: &Flags) -> Result<Output, CliError> {
    if command == Command::Examples {
        return examples(path);
    }
    let options = JobOptions {
        max_order: flags.max_order,
        schur: flags.schur.clone(),
    };
    let job = parse_job(path, &options)?;
    run(command, &job, flags)
}

/// Runs a command on an already parsed job.
pub fn run(command: Command, job: &Job, flags: &Flags) -> Result<Output, CliError> {
    let mut diagnostics = Vec::new();
    let (results, body, status) = match command {
        Command::Chartab => chartab(&job.ctx),
        Command::Subgroups => subgroups(job),
        Command::Genus => genus(job)?,
        Command::Decompose => decompose(job, flags, &mut diagnostics)?,
        Command::Ramification => ramification(job)?,
        Command::Eqdeg => eqdeg(job)?,
        Command::Borne => borne(job, flags, &mut diagnostics)?,
        Command::Verify => verify(job, flags, &mut diagnostics)?,
        Command::Examples => {
            return Err(CliError::Usage("examples takes an output directory".into()))
        }
    };
    let report = Report {
        version: REPORT_VERSION,
        command: command.name().into(),
        inputs_digest: digest(command, job, flags),
        results,
        diagnostics,
    };
    Ok(Output {
        report,
        body,
        status,
    })
}

type Step = (serde_json::Value, String, i32);

fn to_value<T: Serialize>(x: &T) -> serde_json::Value {
    serde_json::to_value(x).expect("payload serializes")
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// SHA-256 of the canonical JSON of the command, job and result-affecting
/// flags.
fn digest(command: Command, job: &Job, flags: &Flags) -> String {
    let canonical = serde_json::json!({
        "command": command.name(),
        "job": job.source,
        "flags": {
            "schur": flags.schur.iter().map(|(j, m)| format!("{j}={m}")).collect::<Vec<_>>(),
            "assume_nonspecial": flags.assume_nonspecial,
            "seed": flags.seed,
            "max_order": flags.max_order,
            "skip_realizability": flags.skip_realizability,
        },
    });
    sha256_hex(serde_json::to_string(&canonical).expect("json").as_bytes())
}

fn chi(j: usize) -> String {
    format!("chi{}", j + 1)
}

fn character_entries(ctx: &GroupContext, mults: &[Rational]) -> Vec<CharacterMultiplicity> {
    mults
        .iter()
        .enumerate()
        .map(|(j, m)| CharacterMultiplicity {
            character: chi(j),
            degree: ctx.table.degrees()[j],
            multiplicity: format_rational(m),
        })
        .collect()
}

fn multiplicity_grid(entries: &[CharacterMultiplicity]) -> String {
    let rows: Vec<Vec<String>> = entries
        .iter()
        .map(|e| vec![e.character.clone(), e.degree.to_string(), e.multiplicity.clone()])
        .collect();
    grid(&["character", "degree", "multiplicity"], &rows)
}

/// `χ1 + 2χ3 - χ4` style sum.
fn character_sum(entries: &[CharacterMultiplicity]) -> String {
    let mut out = String::new();
    for e in entries {
        if e.multiplicity == "0" {
            continue;
        }
        let (negative, mag) = match e.multiplicity.strip_prefix('-') {
            Some(m) => (true, m),
            None => (false, e.multiplicity.as_str()),
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if mag != "1" {
            out.push_str(mag);
            if mag.contains('/') {
                out.push(' ');
            }
        }
        out.push_str(&e.character);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn describe_divisor(ctx: &GroupContext, d: &EquivariantDivisor) -> String {
    match d {
        EquivariantDivisor::Pullback { degree_base } => {
            format!("pullback of a degree {degree_base} divisor on the base")
        }
        EquivariantDivisor::Orbits(terms) => {
            let parts: Vec<String> = terms
                .iter()
                .map(|t| match &t.stabilizer {
                    None => format!("{} x free orbit", t.coefficient),
                    Some(s) => format!(
                        "{} x orbit with stabilizer <{}> (exponent {})",
                        t.coefficient,
                        ctx.group.word_for(s.generator),
                        s.exponent
                    ),
                })
                .collect();
            if parts.is_empty() {
                "zero divisor".into()
            } else {
                parts.join(" + ")
            }
        }
    }
}

fn chartab(ctx: &GroupContext) -> Step {
    let export = ctx.table.to_json();
    let characters = ctx
        .table
        .irreducibles()
        .iter()
        .enumerate()
        .map(|(j, c)| CharacterRow {
            name: chi(j),
            degree: ctx.table.degrees()[j],
            values: c.values().iter().map(ToString::to_string).collect(),
        })
        .collect();
    let orbits: Vec<OrbitInfo> = ctx
        .rational
        .orbits()
        .iter()
        .enumerate()
        .map(|(i, o)| OrbitInfo {
            orbit: i + 1,
            members: o.members.iter().map(|&j| chi(j)).collect(),
            schur_index: o.schur_index,
            dimension: o.dim(),
        })
        .collect();
    let result = ChartabResult {
        order: ctx.group.order(),
        classes: export.classes,
        characters,
        source: export.source,
        orbits,
    };
    let mut body = format!("group of order {}, {} classes\n\n", result.order, result.classes.len());
    body.push_str(&ctx.table.to_text());
    body.push_str("\nrational irreducible representations\n");
    let rows: Vec<Vec<String>> = result
        .orbits
        .iter()
        .map(|o| {
            vec![
                format!("V{}", o.orbit),
                o.members.join(" + "),
                o.schur_index.to_string(),
                o.dimension.to_string(),
            ]
        })
        .collect();
    body.push_str(&grid(&["module", "characters", "schur", "dim"], &rows));
    (to_value(&result), body, 0)
}

fn subgroups(job: &Job) -> Step {
    let ctx = &job.ctx;
    let counts = job.cover.branch_counts();
    let result = SubgroupsResult {
        group_order: ctx.group.order(),
        subgroups: ctx
            .subgroups
            .iter()
            .enumerate()
            .map(|(l, c)| SubgroupInfo {
                label: format!("H{}", l + 1),
                order: c.order,
                generator: ctx.group.word_for(c.generator),
                conjugates: c.conjugates,
                branch_points: counts[l],
            })
            .collect(),
    };
    let rows: Vec<Vec<String>> = result
        .subgroups
        .iter()
        .map(|s| {
            vec![
                s.label.clone(),
                format!("<{}>", s.generator),
                s.order.to_string(),
                s.conjugates.to_string(),
                s.branch_points.to_string(),
            ]
        })
        .collect();
    let mut body = format!(
        "{} conjugacy classes of cyclic subgroups\n\n",
        result.subgroups.len()
    );
    body.push_str(&grid(&["class", "subgroup", "order", "conjugates", "branch points"], &rows));
    (to_value(&result), body, 0)
}

fn genus(job: &Job) -> Result<Step, CliError> {
    let report = job.cover.genus_report()?;
    let mut body = format!(
        "base genus {}, cover genus {}\n\n",
        report.genus_base, report.genus_top
    );
    let rows: Vec<Vec<String>> = report
        .quotients
        .iter()
        .map(|q| {
            let fibers: Vec<String> = q
                .fibers
                .iter()
                .map(|f| {
                    let idx: Vec<String> =
                        f.iter().map(|p| p.ramification_index.to_string()).collect();
                    format!("[{}]", idx.join(" "))
                })
                .collect();
            vec![
                format!("H{}", q.class + 1),
                format!("<{}>", q.generator),
                q.subgroup_order.to_string(),
                q.genus.to_string(),
                fibers.join(" "),
            ]
        })
        .collect();
    body.push_str(&grid(
        &["class", "subgroup", "order", "genus of X/H", "ramification over branch points"],
        &rows,
    ));
    Ok((to_value(&report), body, 0))
}

fn nonspecial_label(n: Nonspeciality, assumed: bool) -> &'static str {
    match (n, assumed) {
        (Nonspeciality::Guaranteed, _) => "guaranteed",
        (Nonspeciality::NotGuaranteed, true) => "assumed",
        (Nonspeciality::NotGuaranteed, false) => "not-guaranteed",
    }
}

fn decomposition_step(
    job: &Job,
    divisor: &EquivariantDivisor,
    d: Decomposition,
    flags: &Flags,
    diagnostics: &mut Vec<String>,
) -> Step {
    let ctx = &job.ctx;
    let assumed = flags.assume_nonspecial && d.nonspecial == Nonspeciality::NotGuaranteed;
    for msg in d.diagnostics {
        if assumed && msg.contains("nonspeciality not guaranteed") {
            continue;
        }
        diagnostics.push(msg);
    }
    if assumed {
        diagnostics.push("nonspeciality assumed (--assume-nonspecial)".into());
        if !d.character.is_genuine {
            diagnostics.push(
                "inconsistent input: negative or fractional multiplicities for a divisor assumed nonspecial"
                    .into(),
            );
        }
    }
    let VirtualCharacter {
        multiplicities,
        degree,
        is_genuine,
        is_rational,
        is_averaged,
    } = d.character;
    let rational_multiplicities = d.rational_multiplicities.map(|n| {
        n.iter()
            .zip(ctx.rational.orbits())
            .enumerate()
            .map(|(i, (m, o))| OrbitMultiplicity {
                orbit: i + 1,
                members: o.members.iter().map(|&j| chi(j)).collect(),
                multiplicity: format_rational(m),
            })
            .collect()
    });
    let result = DecompositionResult {
        method: match d.method {
            Method::Pullback => "pullback".into(),
            Method::Borne => "borne".into(),
        },
        divisor: describe_divisor(ctx, divisor),
        degree_divisor: divisor.degree(&ctx.group),
        genus_top: job.cover.genus_top(),
        characters: character_entries(ctx, &multiplicities),
        dimension: format_rational(&degree),
        genuine: is_genuine,
        rational: is_rational,
        averaged: is_averaged,
        nonspecial: nonspecial_label(d.nonspecial, flags.assume_nonspecial).into(),
        rational_multiplicities,
    };

    let what = if result.averaged {
        "Galois-orbit averages of the multiplicities in L(D)"
    } else if d.nonspecial == Nonspeciality::Guaranteed || assumed {
        "character of L(D)"
    } else {
        "virtual character (1 - g_Y) k[G] + deg_eq(D) - ramification module"
    };
    let mut body = String::new();
    let _ = writeln!(body, "D: {}", result.divisor);
    let _ = writeln!(body, "deg D = {}, g_X = {}", result.degree_divisor, result.genus_top);
    let _ = writeln!(body, "method: {}\n", result.method);
    let _ = writeln!(body, "{what}:");
    body.push_str(&multiplicity_grid(&result.characters));
    let _ = writeln!(body, "\nsum: {}", character_sum(&result.characters));
    let _ = writeln!(body, "dimension: {}", result.dimension);
    let flags_out = if result.averaged {
        vec!["orbit-averaged", "not rational"]
    } else {
        vec![
            if result.genuine { "genuine" } else { "virtual" },
            if result.rational { "rational" } else { "not rational" },
        ]
    };
    let _ = writeln!(body, "flags: {}", flags_out.join(", "));
    let _ = writeln!(body, "nonspecial: {}", result.nonspecial);
    if let Some(n) = &result.rational_multiplicities {
        body.push_str("\nrational modules:\n");
        let rows: Vec<Vec<String>> = n
            .iter()
            .map(|o| vec![format!("V{}", o.orbit), o.members.join(" + "), o.multiplicity.clone()])
            .collect();
        body.push_str(&grid(&["module", "characters", "multiplicity"], &rows));
    }
    (to_value(&result), body, 0)
}

fn decompose(job: &Job, flags: &Flags, diagnostics: &mut Vec<String>) -> Result<Step, CliError> {
    let Some(divisor @ EquivariantDivisor::Pullback { degree_base }) = &job.divisor else {
        return Err(CliError::Usage(
            "decompose needs a pullback divisor; use borne for orbit divisors".into(),
        ));
    };
    let d = decompose_pullback(&job.ctx, &job.cover, *degree_base)?;
    Ok(decomposition_step(job, divisor, d, flags, diagnostics))
}

fn borne(job: &Job, flags: &Flags, diagnostics: &mut Vec<String>) -> Result<Step, CliError> {
    let Some(divisor) = &job.divisor else {
        return Err(CliError::Usage("borne needs a divisor in the job file".into()));
    };
    let d = borne_character(&job.ctx, &job.cover, divisor)?;
    Ok(decomposition_step(job, divisor, d, flags, diagnostics))
}

fn eqdeg(job: &Job) -> Result<Step, CliError> {
    let Some(divisor) = &job.divisor else {
        return Err(CliError::Usage("eqdeg needs a divisor in the job file".into()));
    };
    let v = equivariant_degree(&job.ctx, divisor)?;
    let result = EqdegResult {
        divisor: describe_divisor(&job.ctx, divisor),
        characters: character_entries(&job.ctx, &v.multiplicities),
        dimension: format_rational(&v.degree),
        genuine: v.is_genuine,
    };
    let mut body = format!("D: {}\n\nequivariant degree:\n", result.divisor);
    body.push_str(&multiplicity_grid(&result.characters));
    let _ = writeln!(body, "\nsum: {}", character_sum(&result.characters));
    let _ = writeln!(body, "dimension: {}", result.dimension);
    Ok((to_value(&result), body, 0))
}

fn ramification(job: &Job) -> Result<Step, CliError> {
    let ctx = &job.ctx;
    let direct = ramification_module_direct(ctx, &job.cover)?;
    let closed = ramification_module_closed(ctx, &job.cover)?;
    let result = RamificationResult {
        direct: character_entries(ctx, &direct.multiplicities),
        direct_rational: direct.is_rational,
        degree: format_rational(&direct.degree),
        closed_form: closed
            .multiplicities
            .iter()
            .enumerate()
            .map(|(j, m)| (j != 0).then(|| format_rational(m)))
            .collect(),
        closed_form_averaged: closed.is_averaged,
        agreement: if closed.is_averaged { "orbit-averages" } else { "exact" }.into(),
    };
    let direct_values: Vec<&str> = result.direct.iter().map(|e| e.multiplicity.as_str()).collect();
    let closed_values: Vec<String> = result
        .closed_form
        .iter()
        .map(|m| m.clone().unwrap_or_else(|| "-".into()))
        .collect();
    let mut body = String::new();
    let _ = writeln!(body, "direct: {}", tuple(&direct_values));
    let _ = writeln!(body, "  = {}", character_sum(&result.direct));
    let _ = writeln!(body, "  degree {}", result.degree);
    let label = if result.closed_form_averaged {
        "closed form (orbit averages)"
    } else {
        "closed form"
    };
    let _ = writeln!(body, "{label}: {}", tuple(&closed_values));
    let _ = writeln!(
        body,
        "agreement: {}",
        if result.closed_form_averaged {
            "Galois-orbit averages agree; the module is not rational"
        } else {
            "exact"
        }
    );
    Ok((to_value(&result), body, 0))
}

fn check(name: String, expected: String, computed: String) -> IdentityCheck {
    IdentityCheck {
        passed: expected == computed,
        name,
        expected,
        computed,
    }
}

fn verify(job: &Job, flags: &Flags, diagnostics: &mut Vec<String>) -> Result<Step, CliError> {
    let ctx = &job.ctx;
    let cover = &job.cover;
    let mut checks = group_identity_checks(ctx)?;
    checks.extend(cover_identity_checks(ctx, cover, flags.seed)?);
    match ramification_module_closed(ctx, cover) {
        Ok(v) => checks.push(check(
            if v.is_averaged {
                "ramification module: closed form matches the direct computation on orbit averages"
            } else {
                "ramification module: closed form matches the direct computation"
            }
            .into(),
            "agree".into(),
            "agree".into(),
        )),
        Err(equirr_core::Error::InternalConsistency(msg)) => checks.push(check(
            "ramification module: closed form matches the direct computation".into(),
            "agree".into(),
            msg,
        )),
        Err(e) => return Err(e.into()),
    }
    if let Some(EquivariantDivisor::Pullback { degree_base }) = &job.divisor {
        let deg0 = *degree_base;
        let oracle = solve_system(ctx, cover, deg0)?;
        let closed = (0..ctx.rational.len())
            .map(|j| multiplicity_rational_q(ctx, cover, deg0, j))
            .collect::<equirr_core::Result<Vec<_>>>()?;
        let show = |v: &[Rational]| {
            let parts: Vec<String> = v.iter().map(format_rational).collect();
            tuple(&parts)
        };
        checks.push(check(
            format!("linear system solution equals rational multiplicities, deg0={deg0}"),
            show(&closed),
            show(&oracle),
        ));
        let divisor = EquivariantDivisor::Pullback { degree_base: deg0 };
        let b = borne_character(ctx, cover, &divisor)?.character;
        let p = decompose_pullback(ctx, cover, deg0)?.character;
        let b = if p.is_averaged { b.averaged(ctx) } else { b };
        checks.push(check(
            format!("Borne formula equals the pullback decomposition, deg0={deg0}"),
            show(&p.multiplicities),
            show(&b.multiplicities),
        ));
    }
    let realizability = if flags.skip_realizability {
        RealizabilityResult {
            verdict: "skipped".into(),
            witness: None,
            note: None,
        }
    } else {
        match realizability_check(ctx, cover)? {
            Realizability::Realizable(w) => RealizabilityResult {
                verdict: "realizable".into(),
                witness: Some(w.iter().map(|&g| ctx.group.word_for(g)).collect()),
                note: None,
            },
            Realizability::NotRealizable => {
                diagnostics.push("no G-cover has this branch data".into());
                RealizabilityResult {
                    verdict: "not-realizable".into(),
                    witness: None,
                    note: None,
                }
            }
            Realizability::Unknown(note) => RealizabilityResult {
                verdict: "unknown".into(),
                witness: None,
                note: Some(note),
            },
        }
    };
    let passed = checks.iter().all(|c| c.passed);
    let result = VerifyResult {
        seed: flags.seed,
        checks,
        realizability,
        passed,
    };
    let rows: Vec<Vec<String>> = result
        .checks
        .iter()
        .map(|c| {
            vec![
                if c.passed { "ok" } else { "FAIL" }.to_string(),
                c.name.clone(),
                c.expected.clone(),
                c.computed.clone(),
            ]
        })
        .collect();
    let mut body = grid(&["", "identity", "expected", "computed"], &rows);
    let _ = write!(body, "\nrealizability: {}", result.realizability.verdict);
    if let Some(w) = &result.realizability.witness {
        let _ = write!(body, " (generating vector {})", tuple(w));
    }
    if let Some(n) = &result.realizability.note {
        let _ = write!(body, " ({n})");
    }
    body.push('\n');
    let failed = result.checks.iter().filter(|c| !c.passed).count();
    let _ = writeln!(
        body,
        "{} of {} identities hold",
        result.checks.len() - failed,
        result.checks.len()
    );
    let status = if passed { 0 } else { 3 };
    Ok((to_value(&result), body, status))
}

/// Writes the bundled example jobs into `dir`.
fn examples(dir: &Path) -> Result<Output, CliError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", dir.display())))?;
    let specs = [
        ("example1.json", fixtures::example1()),
        ("example1_2d.json", fixtures::example1_pullback()),
        ("example2.json", fixtures::example2(7)),
        ("example3.json", fixtures::example3()),
    ];
    let mut hasher = Sha256::new();
    let mut files = Vec::new();
    let mut body = String::new();
    for (name, spec) in specs {
        let text = fixture_job(&spec).to_json();
        hasher.update(name.as_bytes());
        hasher.update(text.as_bytes());
        let path = dir.join(name);
        std::fs::write(&path, &text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
        let _ = writeln!(body, "{name}  {}", spec.description);
        files.push(name.to_string());
    }
    let result = ExamplesResult {
        directory: dir.display().to_string(),
        files,
    };
    let report = Report {
        version: REPORT_VERSION,
        command: Command::Examples.name().into(),
        inputs_digest: hex::encode(hasher.finalize()),
        results: to_value(&result),
        diagnostics: Vec::new(),
    };
    Ok(Output {
        report,
        body,
        status: 0,
    })
}
