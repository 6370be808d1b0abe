//! Branch data of a tame Galois cover `X → Y = X/G` and the genera and
//! Riemann–Roch dimensions derived from it.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::group::{double_cosets, FiniteGroup, Subgroup, SubgroupClassList};

/// One branch point of `Y`: an inertia generator `h` of order `e` and the
/// exponent `a` of the ramification character `ψ(h) = ζ_e^a`.
#[derive(Clone, Debug)]
pub struct BranchPoint {
    /// Index into the cyclic subgroup class list.
    pub inertia_class: usize,
    pub generator: usize,
    /// `e`, the order of the inertia group.
    pub order: usize,
    /// `a`, reduced into `0..e`.
    pub exponent: i64,
    inertia: Subgroup,
}

impl BranchPoint {
    /// The inertia group `⟨h⟩`.
    pub fn inertia(&self) -> &Subgroup {
        &self.inertia
    }
}

#[derive(Clone, Debug)]
pub struct CoverData {
    subgroups: Arc<SubgroupClassList>,
    genus_base: i64,
    branch_points: Vec<BranchPoint>,
    genus_top: i64,
}

impl CoverData {
    /// Validates the branch data: nontrivial inertia, faithful characters,
    /// and an integral nonnegative `g_X`.
    pub fn new(
        subgroups: &Arc<SubgroupClassList>,
        genus_base: i64,
        points: &[(usize, i64)],
    ) -> Result<Self> {
        let group = subgroups.group();
        if genus_base < 0 {
            return Err(Error::InvalidBranchData(format!(
                "negative base genus {genus_base}"
            )));
        }
        let mut branch_points = Vec::with_capacity(points.len());
        for (b, &(h, a)) in points.iter().enumerate() {
            if h >= group.order() {
                return Err(Error::InvalidBranchData(format!(
                    "branch point {}: element {h} outside the group",
                    b + 1
                )));
            }
            let e = group.element_order(h);
            if e == 1 {
                return Err(Error::InvalidBranchData(format!(
                    "branch point {}: trivial inertia is not a branch point",
                    b + 1
                )));
            }
            let a = a.rem_euclid(e as i64);
            if gcd(a as u64, e as u64) != 1 {
                return Err(Error::InvalidBranchData(format!(
                    "branch point {}: exponent {a} is not coprime to the inertia order {e}",
                    b + 1
                )));
            }
            let inertia = Subgroup::new(group, &group.cyclic_powers(h))?;
            branch_points.push(BranchPoint {
                inertia_class: subgroups.class_of_element(h),
                generator: h,
                order: e,
                exponent: a,
                inertia,
            });
        }
        let order = group.order() as i64;
        let twice: i64 = order * (2 * genus_base - 2)
            + branch_points
                .iter()
                .map(|p| (order / p.order as i64) * (p.order as i64 - 1))
                .sum::<i64>();
        if twice % 2 != 0 || twice < -2 {
            return Err(Error::InconsistentCover(format!(
                "branch data not consistent with a cover: 2g_X - 2 = {twice}"
            )));
        }
        Ok(CoverData {
            subgroups: Arc::clone(subgroups),
            genus_base,
            branch_points,
            genus_top: twice / 2 + 1,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.subgroups.group()
    }

    pub fn subgroups(&self) -> &Arc<SubgroupClassList> {
        &self.subgroups
    }

    /// `g_Y`.
    pub fn genus_base(&self) -> i64 {
        self.genus_base
    }

    pub fn branch_points(&self) -> &[BranchPoint] {
        &self.branch_points
    }

    /// `R_ℓ`, the number of branch points with inertia in class `ℓ`; the
    /// trivial class always counts 0.
    pub fn branch_counts(&self) -> Vec<u64> {
        let mut r = vec![0u64; self.subgroups.len()];
        for p in &self.branch_points {
            r[p.inertia_class] += 1;
        }
        r
    }

    /// `g_X` from `2g_X − 2 = |G|(2g_Y − 2) + Σ_b (|G|/e_b)(e_b − 1)`.
    pub fn genus_top(&self) -> i64 {
        self.genus_top
    }

    /// Points of `X/H_ℓ` above each branch point: one per double coset
    /// `H g C`, with ramification index `e / |H ∩ gCg⁻¹|`.
    pub fn fibers(&self, class: usize) -> Result<Vec<Vec<FiberPoint>>> {
        let h = &self.subgroups.get(class).subgroup;
        let g = self.group();
        self.branch_points
            .iter()
            .map(|p| {
                let cosets = double_cosets(h, &p.inertia)?;
                Ok(cosets
                    .into_iter()
                    .map(|dc| {
                        let conj = p.inertia.conjugate_elements(dc.representative);
                        let meet = conj.iter().filter(|&&x| h.contains(x)).count();
                        FiberPoint {
                            representative: g.word_for(dc.representative),
                            ramification_index: p.order / meet,
                        }
                    })
                    .collect())
            })
            .collect()
    }

    /// `g_{X/H_ℓ}` by Hurwitz for the cover `X/H_ℓ → Y` of degree
    /// `|G|/|H_ℓ|`.
    pub fn quotient_genus(&self, class: usize) -> Result<i64> {
        if class >= self.subgroups.len() {
            return Err(Error::InvalidBranchData(format!(
                "subgroup class {class} out of range"
            )));
        }
        let n = self.degree_over_base(class);
        let mut twice = n * (2 * self.genus_base - 2);
        for fiber in self.fibers(class)? {
            let index_sum: usize = fiber.iter().map(|f| f.ramification_index).sum();
            if index_sum as i64 != n {
                return Err(Error::InternalConsistency(format!(
                    "fiber indices sum to {index_sum}, expected {n}"
                )));
            }
            twice += n - fiber.len() as i64;
        }
        if twice % 2 != 0 || twice < -2 {
            return Err(Error::InconsistentCover(format!(
                "branch data not consistent with a cover: quotient by class {} has 2g - 2 = {twice}",
                class + 1
            )));
        }
        let genus = twice / 2 + 1;
        if genus > self.genus_top {
            return Err(Error::InternalConsistency(format!(
                "quotient genus {genus} exceeds g_X = {}",
                self.genus_top
            )));
        }
        Ok(genus)
    }

    /// `|G| / |H_ℓ|`.
    pub fn degree_over_base(&self, class: usize) -> i64 {
        (self.group().order() / self.subgroups.get(class).order) as i64
    }

    /// `dim L(π_ℓ^* D₀) = (|G|/|H_ℓ|) deg₀ + 1 − g_{X/H_ℓ}` in the
    /// nonspecial range.
    pub fn riemann_roch_dim(&self, class: usize, deg0: i64) -> Result<i64> {
        Ok(self.degree_over_base(class) * deg0 + 1 - self.quotient_genus(class)?)
    }

    /// Sufficient condition for nonspeciality: `deg D ≥ 2g_X − 1`.
    pub fn nonspecial_guard(&self, degree: i64) -> Nonspeciality {
        if degree >= 2 * self.genus_top - 1 {
            Nonspeciality::Guaranteed
        } else {
            Nonspeciality::NotGuaranteed
        }
    }

    pub fn genus_report(&self) -> Result<GenusReport> {
        let quotients = (0..self.subgroups.len())
            .map(|l| {
                let sub = self.subgroups.get(l);
                Ok(QuotientGenus {
                    class: l,
                    subgroup_order: sub.order,
                    generator: self.group().word_for(sub.generator),
                    genus: self.quotient_genus(l)?,
                    fibers: self.fibers(l)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(GenusReport {
            genus_base: self.genus_base,
            genus_top: self.genus_top,
            branch_counts: self.branch_counts(),
            quotients,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Nonspeciality {
    Guaranteed,
    NotGuaranteed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberPoint {
    pub representative: String,
    pub ramification_index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientGenus {
    pub class: usize,
    pub subgroup_order: usize,
    pub generator: String,
    pub genus: i64,
    /// Per branch point, the points above it.
    pub fibers: Vec<Vec<FiberPoint>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusReport {
    pub genus_base: i64,
    pub genus_top: i64,
    pub branch_counts: Vec<u64>,
    pub quotients: Vec<QuotientGenus>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{constructions, cyclic_subgroup_classes};

    fn klein_cover() -> CoverData {
        let g = Arc::new(constructions::klein4());
        let list = Arc::new(cyclic_subgroup_classes(&g));
        CoverData::new(&list, 0, &[(1, 1), (1, 1), (1, 1), (2, 1), (3, 1)]).unwrap()
    }

    #[test]
    fn klein_genera() {
        let c = klein_cover();
        assert_eq!(c.branch_counts(), vec![0, 3, 1, 1]);
        assert_eq!(c.genus_top(), 2);
        let q: Vec<i64> = (0..4).map(|l| c.quotient_genus(l).unwrap()).collect();
        assert_eq!(q, vec![2, 0, 1, 1]);
        assert_eq!(c.riemann_roch_dim(0, 2).unwrap(), 7);
        assert_eq!(c.riemann_roch_dim(2, 2).unwrap(), 4);
        assert_eq!(c.nonspecial_guard(8), Nonspeciality::Guaranteed);
        assert_eq!(c.nonspecial_guard(4), Nonspeciality::Guaranteed);
        assert_eq!(c.nonspecial_guard(0), Nonspeciality::NotGuaranteed);
    }

    #[test]
    fn cyclic_genera() {
        let g = Arc::new(constructions::cyclic(7));
        let list = Arc::new(cyclic_subgroup_classes(&g));
        let c = CoverData::new(&list, 0, &[(1, 1), (1, -1)]).unwrap();
        assert_eq!(c.genus_top(), 0);
        assert_eq!(c.riemann_roch_dim(1, 3).unwrap(), 4);
        let empty = CoverData::new(&list, 1, &[]).unwrap();
        assert_eq!(empty.branch_counts(), vec![0, 0]);
        assert_eq!(empty.genus_top(), 1);
    }

    #[test]
    fn rejects_bad_data() {
        let g = Arc::new(constructions::cyclic(4));
        let list = Arc::new(cyclic_subgroup_classes(&g));
        let a = g.eval_word("a").unwrap();
        assert!(matches!(
            CoverData::new(&list, 0, &[(a, 2), (a, 1)]),
            Err(Error::InvalidBranchData(_))
        ));
        assert!(matches!(
            CoverData::new(&list, 0, &[(0, 1)]),
            Err(Error::InvalidBranchData(_))
        ));
        let g3 = Arc::new(constructions::cyclic(2));
        let list3 = Arc::new(cyclic_subgroup_classes(&g3));
        // 2g - 2 = 2(-2) + 1 is odd
        assert!(matches!(
            CoverData::new(&list3, 0, &[(1, 1)]),
            Err(Error::InconsistentCover(_))
        ));
    }
}
