use std::cmp::Ordering;
use std::fmt::Write as _;
use std::sync::Arc;

use num::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::dixon::dixon_schneider;
use super::ClassFunction;
use crate::cyclotomic::{cyclotomic_polynomial, Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::group::ConjugacyClasses;

/// How a table was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableSource {
    Computed,
    Supplied,
}

/// The absolutely irreducible characters, ordered trivial first, then by
/// ascending degree, then by descending coefficient comparison of values in
/// class order.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    classes: Arc<ConjugacyClasses>,
    irreducibles: Vec<ClassFunction>,
    degrees: Vec<u64>,
    source: TableSource,
}

fn compare_rows(a: &[Cyclotomic], da: u64, b: &[Cyclotomic], db: u64) -> Ordering {
    let trivial_a = a.iter().all(|v| v.as_rational() == Some(Rational::one()));
    let trivial_b = b.iter().all(|v| v.as_rational() == Some(Rational::one()));
    trivial_b
        .cmp(&trivial_a)
        .then(da.cmp(&db))
        .then_with(|| {
            for (x, y) in a.iter().zip(b) {
                match y.cmp_coeffs(x) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
}

/// Exponent/coefficient pairs of `v` over `ζ_n`, or `None` if `v` does not
/// lie in `Z[ζ_n]`.
fn integral_terms(v: &Cyclotomic, n: u64) -> Option<Vec<(usize, i128)>> {
    if n % v.conductor() != 0 {
        return None;
    }
    let step = (n / v.conductor()) as usize;
    let mut out = Vec::new();
    for (i, c) in v.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !c.is_integer() {
            return None;
        }
        out.push((i * step, c.to_integer().to_i128()?));
    }
    Some(out)
}

/// Tests `Σ w · x · conj(y) = expected` in `Z[ζ_n]`, accumulating modulo
/// `x^n - 1` and reducing by `Φ_n` once at the end.
fn hermitian_sum_is<'a>(
    n: u64,
    pairs: impl Iterator<Item = (i128, &'a Vec<(usize, i128)>, &'a Vec<(usize, i128)>)>,
    expected: i128,
) -> bool {
    let n = n as usize;
    let mut acc = vec![0i128; n];
    for (w, x, y) in pairs {
        for &(ex, cx) in x {
            for &(ey, cy) in y {
                acc[(ex + n - ey) % n] += w * cx * cy;
            }
        }
    }
    let poly = cyclotomic_polynomial(n as u64);
    let phi = poly.len() - 1;
    for i in (phi..n).rev() {
        let c = acc[i];
        if c != 0 {
            for (j, &pj) in poly.iter().enumerate().take(phi) {
                acc[i - phi + j] -= c * pj as i128;
            }
        }
    }
    acc[0] == expected && acc[1..phi].iter().all(|&c| c == 0)
}

impl CharacterTable {
    /// Computes the table by the Dixon–Schneider method.
    pub fn compute(classes: &Arc<ConjugacyClasses>) -> Result<Self> {
        let rows = dixon_schneider(classes)?;
        let table = Self::assemble(classes, rows, TableSource::Computed)?;
        table.validate().map_err(|e| match e {
            Error::InvalidCharacterTable(msg) => Error::TableComputationFailed(msg),
            other => other,
        })?;
        Ok(table)
    }

    /// Accepts a user-supplied table after checking every invariant. Rows may
    /// come in any order; they are sorted into the canonical order.
    pub fn from_rows(classes: &Arc<ConjugacyClasses>, rows: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        if rows.len() != classes.len() {
            return Err(Error::InvalidCharacterTable(format!(
                "{} rows for {} classes",
                rows.len(),
                classes.len()
            )));
        }
        if let Some(row) = rows.iter().find(|r| r.len() != classes.len()) {
            return Err(Error::InvalidCharacterTable(format!(
                "row of length {} for {} classes",
                row.len(),
                classes.len()
            )));
        }
        let table = Self::assemble(classes, rows, TableSource::Supplied)?;
        table.validate()?;
        Ok(table)
    }

    fn assemble(
        classes: &Arc<ConjugacyClasses>,
        rows: Vec<Vec<Cyclotomic>>,
        source: TableSource,
    ) -> Result<Self> {
        // Rows are compared in one fixed basis, that of Q(ζ_N) for the
        // exponent N, so the order does not depend on how values were given.
        let n = classes.group().exponent();
        let mut keyed = Vec::with_capacity(rows.len());
        for row in rows {
            if let Some(v) = row.iter().find(|v| n % v.conductor() != 0) {
                return Err(Error::InvalidCharacterTable(format!(
                    "value {v} does not lie in Q(zeta_{n})"
                )));
            }
            let row: Vec<Cyclotomic> = row.iter().map(|v| v.lift(n)).collect();
            let degree = row[0]
                .as_rational()
                .filter(|d| d.is_integer() && d.is_positive())
                .and_then(|d| d.to_integer().to_u64())
                .ok_or_else(|| {
                    Error::InvalidCharacterTable(format!(
                        "value at the identity is not a positive integer: {}",
                        row[0]
                    ))
                })?;
            keyed.push((degree, row));
        }
        keyed.sort_by(|(da, a), (db, b)| compare_rows(a, *da, b, *db));
        let mut irreducibles = Vec::with_capacity(keyed.len());
        let mut degrees = Vec::with_capacity(keyed.len());
        for (d, row) in keyed {
            degrees.push(d);
            irreducibles.push(ClassFunction::new(classes, row)?);
        }
        Ok(CharacterTable {
            classes: Arc::clone(classes),
            irreducibles,
            degrees,
            source,
        })
    }

    /// Checks row orthogonality, the degree equation, degree divisibility,
    /// and column orthogonality.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidCharacterTable(msg));
        let order = self.classes.group().order() as u64;
        let k = self.classes.len();
        if self.irreducibles.len() != k {
            return bad(format!("{} characters for {k} classes", self.irreducibles.len()));
        }
        if !self.irreducibles[0]
            .values()
            .iter()
            .all(|v| v.as_rational() == Some(Rational::one()))
        {
            return bad("no trivial character".into());
        }
        let sum_sq: u64 = self.degrees.iter().map(|d| d * d).sum();
        if sum_sq != order {
            return bad(format!("sum of squared degrees {sum_sq} differs from |G| = {order}"));
        }
        if let Some(d) = self.degrees.iter().find(|&&d| order % d != 0) {
            return bad(format!("degree {d} does not divide |G| = {order}"));
        }
        let n = self.classes.group().exponent();
        let rows = self
            .irreducibles
            .iter()
            .enumerate()
            .map(|(i, chi)| {
                chi.values()
                    .iter()
                    .map(|v| {
                        integral_terms(v, n).ok_or_else(|| {
                            Error::InvalidCharacterTable(format!(
                                "row {} has value {v}, not an algebraic integer in Q(zeta_{n})",
                                i + 1
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let sizes = self.classes.sizes();
        for i in 0..k {
            for j in i..k {
                let pairs = (0..k).map(|c| (sizes[c] as i128, &rows[i][c], &rows[j][c]));
                let expected = if i == j { order as i128 } else { 0 };
                if !hermitian_sum_is(n, pairs, expected) {
                    return bad(format!("rows {} and {} are not orthonormal", i + 1, j + 1));
                }
            }
        }
        for a in 0..k {
            for b in a..k {
                let pairs = rows.iter().map(|row| (1, &row[a], &row[b]));
                let expected = if a == b {
                    (order / sizes[a] as u64) as i128
                } else {
                    0
                };
                if !hermitian_sum_is(n, pairs, expected) {
                    return bad(format!("columns {} and {} fail orthogonality", a + 1, b + 1));
                }
            }
        }
        Ok(())
    }

    pub fn classes(&self) -> &Arc<ConjugacyClasses> {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn irreducibles(&self) -> &[ClassFunction] {
        &self.irreducibles
    }

    pub fn character(&self, j: usize) -> &ClassFunction {
        &self.irreducibles[j]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn source(&self) -> TableSource {
        self.source
    }

    /// Index of the irreducible equal to `f`, if any.
    pub fn position(&self, f: &ClassFunction) -> Option<usize> {
        self.irreducibles.iter().position(|chi| chi == f)
    }

    /// Multiplicities `⟨f, χ_j⟩` for every irreducible.
    pub fn decompose(&self, f: &ClassFunction) -> Result<Vec<Cyclotomic>> {
        f.multiplicities(&self.irreducibles)
    }

    /// Like [`decompose`](Self::decompose) but requires rational multiplicities.
    pub fn decompose_rational(&self, f: &ClassFunction) -> Result<Vec<Rational>> {
        self.decompose(f)?
            .into_iter()
            .map(|m| {
                m.as_rational().ok_or_else(|| {
                    Error::NotACharacter(format!("irrational multiplicity {m}"))
                })
            })
            .collect()
    }

    /// Aligned text grid; one row per irreducible, one column per class.
    pub fn to_text(&self) -> String {
        let g = self.classes.group();
        let mut header = vec![String::new()];
        header.extend(
            self.classes
                .representatives()
                .iter()
                .map(|&r| g.word_for(r)),
        );
        let mut grid = vec![header];
        let mut sizes = vec!["|C|".to_string()];
        sizes.extend(self.classes.sizes().iter().map(usize::to_string));
        grid.push(sizes);
        for (j, chi) in self.irreducibles.iter().enumerate() {
            let mut row = vec![format!("chi{}", j + 1)];
            row.extend(chi.values().iter().map(Cyclotomic::to_string));
            grid.push(row);
        }
        let cols = grid[0].len();
        let widths: Vec<usize> = (0..cols)
            .map(|c| grid.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in &grid {
            let cells: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(cell, &w)| format!("{cell:>w$}"))
                .collect();
            let _ = writeln!(out, "{}", cells.join("  ").trim_end());
        }
        out
    }

    pub fn to_json(&self) -> TableExport {
        let g = self.classes.group();
        TableExport {
            classes: self
                .classes
                .representatives()
                .iter()
                .zip(self.classes.sizes())
                .map(|(&r, &size)| ClassExport {
                    representative: g.word_for(r),
                    size,
                    order: g.element_order(r),
                })
                .collect(),
            degrees: self.degrees.clone(),
            rows: self
                .irreducibles
                .iter()
                .map(|chi| chi.values().to_vec())
                .collect(),
            source: self.source,
        }
    }
}

/// One class column of an exported table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassExport {
    pub representative: String,
    pub size: usize,
    pub order: usize,
}

/// Serializable form of a table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableExport {
    pub classes: Vec<ClassExport>,
    pub degrees: Vec<u64>,
    pub rows: Vec<Vec<Cyclotomic>>,
    pub source: TableSource,
}
