use std::collections::BTreeMap;
use std::sync::Arc;

use super::FiniteGroup;
use crate::arith::gcd;

/// Conjugacy classes ordered by their smallest element index; class 0 is the
/// identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClasses {
    group: Arc<FiniteGroup>,
    class_of: Vec<usize>,
    representatives: Vec<usize>,
    sizes: Vec<usize>,
    members: Vec<Vec<usize>>,
    power_maps: BTreeMap<u64, Vec<usize>>,
}

pub fn conjugacy_classes(group: &Arc<FiniteGroup>) -> ConjugacyClasses {
    let n = group.order();
    let conjugators: Vec<usize> = if group.generators().is_empty() {
        (0..n).collect()
    } else {
        group.generators().iter().map(|g| g.element).collect()
    };
    let mut class_of = vec![usize::MAX; n];
    let mut representatives = Vec::new();
    let mut members = Vec::new();
    for g in 0..n {
        if class_of[g] != usize::MAX {
            continue;
        }
        let c = representatives.len();
        representatives.push(g);
        class_of[g] = c;
        let mut orbit = vec![g];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for &s in &conjugators {
                let y = group.conjugate(x, s);
                if class_of[y] == usize::MAX {
                    class_of[y] = c;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        members.push(orbit);
    }
    let sizes = members.iter().map(Vec::len).collect();

    let exponent = group.exponent();
    let mut power_maps = BTreeMap::new();
    for k in 1..=exponent {
        if gcd(k, exponent) != 1 {
            continue;
        }
        let map = representatives
            .iter()
            .map(|&r| class_of[group.pow(r, k as i64)])
            .collect();
        power_maps.insert(k, map);
    }

    ConjugacyClasses {
        group: Arc::clone(group),
        class_of,
        representatives,
        sizes,
        members,
        power_maps,
    }
}

impl ConjugacyClasses {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn members(&self, class: usize) -> &[usize] {
        &self.members[class]
    }

    /// Class of `g^{-1}` for `g` in `class`.
    pub fn inverse_class(&self, class: usize) -> usize {
        self.class_of[self.group.inv(self.representatives[class])]
    }

    /// The permutation of classes induced by `g ↦ g^k`; `k` is reduced
    /// modulo the exponent and must be coprime to it.
    pub fn power_map(&self, k: i64) -> Option<&[usize]> {
        let e = self.group.exponent() as i64;
        let k = k.rem_euclid(e) as u64;
        let k = if k == 0 { e as u64 } else { k };
        self.power_maps.get(&k).map(Vec::as_slice)
    }

    /// All exponents `k` in `1..=exponent` coprime to the exponent.
    pub fn galois_exponents(&self) -> impl Iterator<Item = u64> + '_ {
        self.power_maps.keys().copied()
    }

    /// Order of the centralizer of `g`, by direct scan.
    pub fn centralizer_order(&self, g: usize) -> usize {
        let grp = &self.group;
        (0..grp.order())
            .filter(|&x| grp.mul(x, g) == grp.mul(g, x))
            .count()
    }

    /// Identifies two class structures of the same group.
    pub fn same_group(&self, other: &ConjugacyClasses) -> bool {
        std::ptr::eq(self, other)
            || (Arc::ptr_eq(&self.group, &other.group) && self.class_of == other.class_of)
            || (self.group == other.group && self.class_of == other.class_of)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::constructions;

    #[test]
    fn klein_four_has_singleton_classes() {
        let g = Arc::new(constructions::klein4());
        let cc = conjugacy_classes(&g);
        assert_eq!(cc.sizes(), &[1, 1, 1, 1]);
    }

    #[test]
    fn order_21_class_sizes() {
        let g = Arc::new(constructions::g21());
        let cc = conjugacy_classes(&g);
        assert_eq!(cc.sizes(), &[1, 7, 3, 7, 3]);
        let s = g.eval_word("s").unwrap();
        let t = g.eval_word("t").unwrap();
        assert_eq!(cc.class_of(s), 1);
        assert_eq!(cc.class_of(t), 2);
        assert_eq!(cc.class_of(g.inv(s)), 3);
        assert_eq!(cc.class_of(g.inv(t)), 4);
    }

    #[test]
    fn cyclic_classes() {
        for q in [2, 3, 5, 7] {
            let g = Arc::new(constructions::cyclic(q));
            let cc = conjugacy_classes(&g);
            assert_eq!(cc.len(), q);
        }
    }

    #[test]
    fn power_maps_compose() {
        let g = Arc::new(constructions::g21());
        let cc = conjugacy_classes(&g);
        let id: Vec<usize> = (0..cc.len()).collect();
        assert_eq!(cc.power_map(1).unwrap(), id.as_slice());
        let ks: Vec<u64> = cc.galois_exponents().collect();
        assert_eq!(ks.len(), 12);
        for &a in &ks {
            for &b in &ks {
                let pa = cc.power_map(a as i64).unwrap();
                let pb = cc.power_map(b as i64).unwrap();
                let pab = cc.power_map((a * b % 21) as i64).unwrap();
                let composed: Vec<usize> = pb.iter().map(|&c| pa[c]).collect();
                assert_eq!(composed, pab);
            }
        }
        assert!(cc.power_map(3).is_none());
        assert_eq!(cc.power_map(-1).unwrap(), &[0, 3, 4, 1, 2]);
    }
}
