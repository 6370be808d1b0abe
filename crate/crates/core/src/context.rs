use std::collections::BTreeMap;
use std::sync::Arc;

use crate::characters::{galois_orbits, CharacterTable, RationalStructure};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{conjugacy_classes, cyclic_subgroup_classes, ConjugacyClasses, FiniteGroup, SubgroupClassList};

/// Everything the formulas need to know about a group: classes, cyclic
/// subgroup classes, the character table and its rational structure.
#[derive(Clone, Debug)]
pub struct GroupContext {
    pub group: Arc<FiniteGroup>,
    pub classes: Arc<ConjugacyClasses>,
    pub subgroups: Arc<SubgroupClassList>,
    pub table: Arc<CharacterTable>,
    pub rational: Arc<RationalStructure>,
}

impl GroupContext {
    pub fn new(group: FiniteGroup) -> Result<Self> {
        Self::with_options(group, None, &BTreeMap::new())
    }

    /// `table_rows` bypasses the table computation (rows are validated);
    /// `schur` overrides Schur indices by orbit index.
    pub fn with_options(
        group: FiniteGroup,
        table_rows: Option<Vec<Vec<Cyclotomic>>>,
        schur: &BTreeMap<usize, u64>,
    ) -> Result<Self> {
        let group = Arc::new(group);
        let classes = Arc::new(conjugacy_classes(&group));
        let subgroups = Arc::new(cyclic_subgroup_classes(&group));
        let table = Arc::new(match table_rows {
            Some(rows) => CharacterTable::from_rows(&classes, rows)?,
            None => CharacterTable::compute(&classes)?,
        });
        let rational = Arc::new(galois_orbits(&table, schur)?);
        if rational.len() != subgroups.len() {
            return Err(Error::InternalConsistency(format!(
                "{} rational characters but {} classes of cyclic subgroups",
                rational.len(),
                subgroups.len()
            )));
        }
        Ok(GroupContext {
            group,
            classes,
            subgroups,
            table,
            rational,
        })
    }
}
