use std::collections::HashMap;
use std::sync::Arc;

use super::{conjugacy_classes, ConjugacyClasses, FiniteGroup};
use crate::error::{Error, Result};

/// A subgroup of a parent group, carrying its own class structure on local
/// indices `0..|H|` (local index `i` is parent element `elements[i]`).
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    elements: Vec<usize>,
    local: Arc<ConjugacyClasses>,
}

impl Subgroup {
    /// Validates that `elements` is closed under multiplication.
    pub fn new(parent: &Arc<FiniteGroup>, elements: &[usize]) -> Result<Self> {
        let mut elements = elements.to_vec();
        elements.sort_unstable();
        elements.dedup();
        if elements.first() != Some(&0) {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        if let Some(&x) = elements.iter().find(|&&x| x >= parent.order()) {
            return Err(Error::NotASubgroup(format!("element {x} outside the group")));
        }
        let n = elements.len();
        let mut local_of = HashMap::with_capacity(n);
        for (i, &x) in elements.iter().enumerate() {
            local_of.insert(x, i);
        }
        let mut table = vec![0u32; n * n];
        for (i, &a) in elements.iter().enumerate() {
            for (j, &b) in elements.iter().enumerate() {
                let c = parent.mul(a, b);
                let k = local_of.get(&c).ok_or_else(|| {
                    Error::NotASubgroup(format!("product {a}*{b} = {c} leaves the set"))
                })?;
                table[i * n + j] = *k as u32;
            }
        }
        let local_group = FiniteGroup::from_raw_table(n, table, Vec::new())
            .map_err(|e| Error::NotASubgroup(e.to_string()))?;
        let gens = local_group.greedy_generators();
        let local_group = Arc::new(local_group.with_generators(gens)?);
        let local = Arc::new(conjugacy_classes(&local_group));
        Ok(Subgroup {
            parent: Arc::clone(parent),
            elements,
            local,
        })
    }

    pub fn generated_by(parent: &Arc<FiniteGroup>, gens: &[usize]) -> Result<Self> {
        Self::new(parent, &parent.closure(gens))
    }

    pub fn trivial(parent: &Arc<FiniteGroup>) -> Self {
        Self::new(parent, &[0]).expect("trivial subgroup")
    }

    pub fn whole(parent: &Arc<FiniteGroup>) -> Self {
        let all: Vec<usize> = (0..parent.order()).collect();
        Self::new(parent, &all).expect("whole group")
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    /// Sorted parent indices.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    /// Local index of a parent element.
    pub fn local_index(&self, g: usize) -> Option<usize> {
        self.elements.binary_search(&g).ok()
    }

    pub fn local_classes(&self) -> &Arc<ConjugacyClasses> {
        &self.local
    }

    /// Sorted element list of `g H g⁻¹`.
    pub fn conjugate_elements(&self, g: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .elements
            .iter()
            .map(|&h| self.parent.conjugate(h, g))
            .collect();
        out.sort_unstable();
        out
    }

    /// Lexicographically least sorted element list among all conjugates.
    pub fn canonical_conjugate(&self) -> Vec<usize> {
        (0..self.parent.order())
            .map(|g| self.conjugate_elements(g))
            .min()
            .expect("nonempty group")
    }

    pub fn is_cyclic(&self) -> bool {
        self.elements
            .iter()
            .any(|&g| self.parent.element_order(g) == self.order())
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && *self.parent == *other.parent
    }
}

/// One conjugacy class of cyclic subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub subgroup: Subgroup,
    pub generator: usize,
    pub order: usize,
    /// Number of conjugates of the representative.
    pub conjugates: usize,
}

/// Conjugacy classes of cyclic subgroups, ascending by order; index 0 is the
/// trivial subgroup.
#[derive(Clone, Debug)]
pub struct SubgroupClassList {
    group: Arc<FiniteGroup>,
    classes: Vec<SubgroupClass>,
    by_canonical: HashMap<Vec<usize>, usize>,
}

impl SubgroupClassList {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn get(&self, index: usize) -> &SubgroupClass {
        &self.classes[index]
    }

    pub fn iter(&self) -> impl Iterator<Item = &SubgroupClass> {
        self.classes.iter()
    }

    /// Index of the class containing `⟨g⟩`.
    pub fn class_of_element(&self, g: usize) -> usize {
        let cyc = Subgroup::new(&self.group, &self.group.cyclic_powers(g))
            .expect("cyclic subgroup");
        self.by_canonical[&cyc.canonical_conjugate()]
    }

    /// Index of the class of an arbitrary cyclic subgroup.
    pub fn class_of_subgroup(&self, h: &Subgroup) -> Option<usize> {
        self.by_canonical.get(&h.canonical_conjugate()).copied()
    }
}

pub fn cyclic_subgroup_classes(group: &Arc<FiniteGroup>) -> SubgroupClassList {
    let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
    let mut canon: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut reps: Vec<(usize, Vec<usize>)> = Vec::new();
    for g in 0..group.order() {
        let mut elems = group.cyclic_powers(g);
        elems.sort_unstable();
        if seen.insert(elems.clone(), ()).is_some() {
            continue;
        }
        let sub = Subgroup::new(group, &elems).expect("cyclic subgroup");
        let c = sub.canonical_conjugate();
        *canon.entry(c.clone()).or_insert(0) += 1;
        if canon[&c] == 1 {
            reps.push((c.len(), c));
        }
    }
    reps.sort();
    let mut classes = Vec::with_capacity(reps.len());
    let mut by_canonical = HashMap::new();
    for (i, (order, elems)) in reps.into_iter().enumerate() {
        let subgroup = Subgroup::new(group, &elems).expect("cyclic subgroup");
        let generator = *elems
            .iter()
            .find(|&&x| group.element_order(x) == order)
            .expect("cyclic subgroup has a generator");
        let conjugates = canon[&elems];
        by_canonical.insert(elems, i);
        classes.push(SubgroupClass {
            subgroup,
            generator,
            order,
            conjugates,
        });
    }
    SubgroupClassList {
        group: Arc::clone(group),
        classes,
        by_canonical,
    }
}

/// One double coset `H g K` with its size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCoset {
    pub representative: usize,
    pub size: usize,
}

/// Partitions the parent group into double cosets `H g K`, ordered by
/// smallest element.
pub fn double_cosets(h: &Subgroup, k: &Subgroup) -> Result<Vec<DoubleCoset>> {
    if *h.parent() != *k.parent() {
        return Err(Error::NotASubgroup(
            "subgroups belong to different groups".into(),
        ));
    }
    let g = h.parent();
    let mut assigned = vec![false; g.order()];
    let mut out = Vec::new();
    for x in 0..g.order() {
        if assigned[x] {
            continue;
        }
        let mut size = 0;
        for &a in h.elements() {
            let ax = g.mul(a, x);
            for &b in k.elements() {
                let y = g.mul(ax, b);
                if !assigned[y] {
                    assigned[y] = true;
                    size += 1;
                }
            }
        }
        out.push(DoubleCoset {
            representative: x,
            size,
        });
    }
    Ok(out)
}

/// `|H\G/K|`.
pub fn double_coset_count(h: &Subgroup, k: &Subgroup) -> Result<usize> {
    Ok(double_cosets(h, k)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::constructions;

    #[test]
    fn rejects_non_subgroups() {
        let g = Arc::new(constructions::g21());
        let s = g.eval_word("s").unwrap();
        assert!(matches!(
            Subgroup::new(&g, &[0, s]),
            Err(Error::NotASubgroup(_))
        ));
        assert!(Subgroup::new(&g, &[s]).is_err());
        assert!(Subgroup::new(&g, &[0, 99]).is_err());
    }

    #[test]
    fn klein_cyclic_subgroups() {
        let g = Arc::new(constructions::klein4());
        let list = cyclic_subgroup_classes(&g);
        assert_eq!(list.len(), 4);
        let sets: Vec<&[usize]> = list.iter().map(|c| c.subgroup.elements()).collect();
        assert_eq!(sets, vec![&[0][..], &[0, 1], &[0, 2], &[0, 3]]);
    }

    #[test]
    fn prime_cyclic_has_two_classes() {
        for q in [2, 3, 5, 7, 11] {
            let g = Arc::new(constructions::cyclic(q));
            let list = cyclic_subgroup_classes(&g);
            assert_eq!(list.len(), 2);
            assert_eq!(list.get(1).order, q);
        }
    }

    #[test]
    fn order_21_subgroup_classes() {
        let g = Arc::new(constructions::g21());
        let list = cyclic_subgroup_classes(&g);
        let orders: Vec<usize> = list.iter().map(|c| c.order).collect();
        assert_eq!(orders, vec![1, 3, 7]);
        assert_eq!(list.get(1).conjugates, 7);
        assert_eq!(list.get(2).conjugates, 1);
        let s = g.eval_word("s").unwrap();
        let t = g.eval_word("t").unwrap();
        assert_eq!(list.class_of_element(s), 1);
        assert_eq!(list.class_of_element(g.inv(s)), 1);
        assert_eq!(list.class_of_element(t), 2);
        assert_eq!(list.class_of_element(0), 0);
    }

    #[test]
    fn double_coset_examples() {
        let g = Arc::new(constructions::g21());
        let whole = Subgroup::whole(&g);
        let trivial = Subgroup::trivial(&g);
        assert_eq!(double_coset_count(&whole, &whole).unwrap(), 1);
        assert_eq!(double_coset_count(&trivial, &trivial).unwrap(), 21);
        let list = cyclic_subgroup_classes(&g);
        let h3 = &list.get(1).subgroup;
        let h7 = &list.get(2).subgroup;
        let cosets = double_cosets(h3, h7).unwrap();
        assert_eq!(cosets.len(), 1);
        assert_eq!(cosets[0].size, 21);
    }
}
