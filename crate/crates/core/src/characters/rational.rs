use std::collections::BTreeMap;
use std::sync::Arc;

use super::{CharacterTable, ClassFunction};
use crate::cyclotomic::{Cyclotomic, Rational};
use crate::error::{Error, Result};

/// One Galois orbit of absolutely irreducible characters, i.e. one simple
/// `Q[G]`-module `V_j`.
#[derive(Clone, Debug)]
pub struct RationalOrbit {
    /// Table indices, ascending.
    pub members: Vec<usize>,
    /// Schur index `m_j`.
    pub schur_index: u64,
    /// `η_j = m_j Σ_r χ_jr`.
    pub eta: ClassFunction,
    /// Common degree of the members.
    pub member_degree: u64,
}

impl RationalOrbit {
    /// Orbit size `d_j`.
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// `dim V_j = m_j d_j · deg χ_jr`.
    pub fn dim(&self) -> u64 {
        self.schur_index * self.members.len() as u64 * self.member_degree
    }
}

/// Partition of the irreducibles into Galois orbits, ordered by smallest
/// member.
#[derive(Clone, Debug)]
pub struct RationalStructure {
    table: Arc<CharacterTable>,
    orbits: Vec<RationalOrbit>,
    orbit_of: Vec<usize>,
    overridden: bool,
}

/// Galois orbits of `table`; `schur_overrides` maps orbit index to `m_j`.
pub fn galois_orbits(
    table: &Arc<CharacterTable>,
    schur_overrides: &BTreeMap<usize, u64>,
) -> Result<RationalStructure> {
    let classes = table.classes();
    let k = table.len();
    let mut orbit_of = vec![usize::MAX; k];
    let mut members_list: Vec<Vec<usize>> = Vec::new();
    for j in 0..k {
        if orbit_of[j] != usize::MAX {
            continue;
        }
        let idx = members_list.len();
        let mut members = Vec::new();
        for e in classes.galois_exponents() {
            let image = table.character(j).galois_apply(e as i64)?;
            let pos = table.position(&image).ok_or_else(|| {
                Error::InvalidCharacterTable(format!(
                    "Galois image of character {} is not in the table",
                    j + 1
                ))
            })?;
            if orbit_of[pos] == usize::MAX {
                orbit_of[pos] = idx;
                members.push(pos);
            } else if orbit_of[pos] != idx {
                return Err(Error::InvalidCharacterTable(
                    "Galois orbits overlap".into(),
                ));
            }
        }
        members.sort_unstable();
        members_list.push(members);
    }
    if let Some(&bad) = schur_overrides.keys().find(|&&o| o >= members_list.len()) {
        return Err(Error::UnknownOrbit(bad));
    }
    if let Some((&o, _)) = schur_overrides.iter().find(|(_, &m)| m == 0) {
        return Err(Error::InvalidCharacterTable(format!(
            "Schur index of orbit {} must be positive",
            o + 1
        )));
    }
    let orbits = members_list
        .into_iter()
        .enumerate()
        .map(|(o, members)| {
            let m = schur_overrides.get(&o).copied().unwrap_or(1);
            let mut sum = ClassFunction::zero(classes);
            for &r in &members {
                sum = sum.try_add(table.character(r))?;
            }
            let eta = sum.scale(&Rational::from_integer((m as i64).into()));
            if !eta.is_rational() {
                return Err(Error::InternalConsistency(format!(
                    "orbit sum {} is not rational",
                    o + 1
                )));
            }
            Ok(RationalOrbit {
                member_degree: table.degrees()[members[0]],
                members,
                schur_index: m,
                eta,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RationalStructure {
        table: Arc::clone(table),
        orbits,
        orbit_of,
        overridden: schur_overrides.values().any(|&m| m != 1),
    })
}

impl RationalStructure {
    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn orbits(&self) -> &[RationalOrbit] {
        &self.orbits
    }

    pub fn orbit(&self, j: usize) -> &RationalOrbit {
        &self.orbits[j]
    }

    /// Orbit index containing irreducible `chi`.
    pub fn orbit_of(&self, chi: usize) -> usize {
        self.orbit_of[chi]
    }

    /// True when some Schur index differs from the default 1.
    pub fn has_schur_overrides(&self) -> bool {
        self.overridden
    }

    /// True when every irreducible has rational values.
    pub fn all_rational(&self) -> bool {
        self.orbits.iter().all(|o| o.members.len() == 1)
    }

    /// Averages `values` (indexed by irreducible) over each orbit.
    pub fn orbit_averages(&self, values: &[Cyclotomic]) -> Vec<Cyclotomic> {
        self.orbits
            .iter()
            .map(|o| {
                let n = values
                    .first()
                    .map_or(1, Cyclotomic::conductor);
                let mut acc = Cyclotomic::zero(n);
                for &r in &o.members {
                    acc += &values[r];
                }
                acc.scale(&Rational::new(1.into(), (o.members.len() as i64).into()))
            })
            .collect()
    }

    /// Spreads per-orbit values back to every irreducible.
    pub fn spread<T: Clone>(&self, per_orbit: &[T]) -> Vec<T> {
        self.orbit_of.iter().map(|&o| per_orbit[o].clone()).collect()
    }

    /// True when `values` is constant on each orbit.
    pub fn constant_on_orbits(&self, values: &[Cyclotomic]) -> bool {
        self.orbits
            .iter()
            .all(|o| o.members.iter().all(|&r| values[r] == values[o.members[0]]))
    }
}

/// True when every value of `chi` is rational.
pub fn is_rational(chi: &ClassFunction) -> bool {
    chi.is_rational()
}
