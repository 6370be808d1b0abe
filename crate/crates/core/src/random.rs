//! Seeded random instances: small groups from cyclic, dihedral and
//! direct-product constructions together with branch data that comes from
//! an explicit generating vector, so every instance is realizable.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::arith::gcd;
use crate::context::GroupContext;
use crate::cover::CoverData;
use crate::error::Result;
use crate::group::{constructions, FiniteGroup};

/// Largest group order drawn.
pub const MAX_RANDOM_ORDER: usize = 60;

/// A small group recipe, cheap to rebuild and usable as a cache key.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupRecipe {
    Cyclic(usize),
    Dihedral(usize),
    Product(Factor, Factor),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    Cyclic(usize),
    Dihedral(usize),
}

impl Factor {
    fn order(self) -> usize {
        match self {
            Factor::Cyclic(n) => n,
            Factor::Dihedral(n) => 2 * n,
        }
    }

    fn build(self) -> FiniteGroup {
        match self {
            Factor::Cyclic(n) => constructions::cyclic(n),
            Factor::Dihedral(n) => constructions::dihedral(n),
        }
    }

    fn name(self) -> String {
        match self {
            Factor::Cyclic(n) => format!("C{n}"),
            Factor::Dihedral(n) => format!("D{n}"),
        }
    }
}

impl GroupRecipe {
    pub fn order(self) -> usize {
        match self {
            GroupRecipe::Cyclic(n) => n,
            GroupRecipe::Dihedral(n) => 2 * n,
            GroupRecipe::Product(a, b) => a.order() * b.order(),
        }
    }

    pub fn build(self) -> FiniteGroup {
        match self {
            GroupRecipe::Cyclic(n) => constructions::cyclic(n),
            GroupRecipe::Dihedral(n) => constructions::dihedral(n),
            GroupRecipe::Product(a, b) => constructions::direct_product(&a.build(), &b.build()),
        }
    }

    pub fn name(self) -> String {
        match self {
            GroupRecipe::Cyclic(n) => format!("C{n}"),
            GroupRecipe::Dihedral(n) => format!("D{n}"),
            GroupRecipe::Product(a, b) => format!("{}x{}", a.name(), b.name()),
        }
    }
}

/// Draws a recipe of order at most [`MAX_RANDOM_ORDER`].
pub fn random_recipe(rng: &mut ChaCha8Rng) -> GroupRecipe {
    match rng.gen_range(0..3) {
        0 => GroupRecipe::Cyclic(rng.gen_range(2..=24)),
        1 => GroupRecipe::Dihedral(rng.gen_range(2..=15)),
        _ => loop {
            let pick = |rng: &mut ChaCha8Rng| {
                if rng.gen_bool(0.5) {
                    Factor::Cyclic(rng.gen_range(2..=6))
                } else {
                    Factor::Dihedral(rng.gen_range(2..=5))
                }
            };
            let (a, b) = (pick(rng), pick(rng));
            if a.order() * b.order() <= MAX_RANDOM_ORDER {
                break GroupRecipe::Product(a, b);
            }
        },
    }
}

/// A random cover with a generating-vector witness.
#[derive(Clone, Debug)]
pub struct RandomInstance {
    pub recipe: GroupRecipe,
    pub ctx: GroupContext,
    pub cover: CoverData,
    pub deg0: i64,
    /// `(h_b, a_b)` as passed to the cover.
    pub branch_points: Vec<(usize, i64)>,
}

/// Random branch data for `G`: a generating vector `g_1 … g_r` with product
/// one over a genus-0 base, or if none is found quickly, a base whose
/// genus equals the number of generators, each handle `(s, e)` supplying
/// one generator `s`. Each branch point uses `h = g^u` with exponent `u` for
/// a random unit `u`, so that `h^{u⁻¹} = g` acts by `ζ_e`.
pub fn random_branch_data(group: &FiniteGroup, rng: &mut ChaCha8Rng) -> (i64, Vec<(usize, i64)>) {
    let n = group.order();
    let nontrivial: Vec<usize> = (1..n).collect();
    if n == 1 {
        return (rng.gen_range(0..=2), Vec::new());
    }
    let mut vector = None;
    for _ in 0..400 {
        let r = rng.gen_range(2..=5);
        let mut gs = Vec::with_capacity(r);
        let mut product = 0;
        for _ in 0..r - 1 {
            let x = *nontrivial.choose(rng).expect("nontrivial element");
            product = group.mul(product, x);
            gs.push(x);
        }
        let last = group.inv(product);
        if last == 0 {
            continue;
        }
        gs.push(last);
        if group.generates(&gs) {
            vector = Some((0, gs));
            break;
        }
    }
    let (genus, gs) = vector.unwrap_or_else(|| {
        let x = *nontrivial.choose(rng).expect("nontrivial element");
        (group.generators().len().max(1) as i64, vec![x, group.inv(x)])
    });
    let points = gs
        .into_iter()
        .map(|g| {
            let e = group.element_order(g) as i64;
            let units: Vec<i64> = (1..e).filter(|&u| gcd(u as u64, e as u64) == 1).collect();
            let u = *units.choose(rng).expect("a unit exists");
            (group.pow(g, u), u)
        })
        .collect();
    (genus, points)
}

/// Generates `count` instances; contexts are shared between instances with
/// the same recipe.
pub fn random_instances(rng: &mut ChaCha8Rng, count: usize) -> Result<Vec<RandomInstance>> {
    let mut cache: HashMap<GroupRecipe, GroupContext> = HashMap::new();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let recipe = random_recipe(rng);
        let ctx = match cache.get(&recipe) {
            Some(c) => c.clone(),
            None => {
                let c = GroupContext::new(recipe.build())?;
                cache.insert(recipe, c.clone());
                c
            }
        };
        let (genus, points) = random_branch_data(&ctx.group, rng);
        let cover = CoverData::new(&ctx.subgroups, genus, &points)?;
        let deg0 = rng.gen_range(-3..=10);
        out.push(RandomInstance {
            recipe,
            ctx,
            cover,
            deg0,
            branch_points: points,
        });
    }
    Ok(out)
}
