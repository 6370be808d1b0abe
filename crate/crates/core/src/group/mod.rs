//! Finite groups materialized as dense multiplication tables, together with
//! their conjugacy classes, cyclic subgroup classes and double cosets.

mod classes;
pub mod constructions;
mod perm;
mod subgroup;

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::lcm;
use crate::error::{Error, Result};

pub use classes::{conjugacy_classes, ConjugacyClasses};
pub use perm::Permutation;
pub use subgroup::{
    cyclic_subgroup_classes, double_coset_count, double_cosets, DoubleCoset, Subgroup,
    SubgroupClass, SubgroupClassList,
};

/// Default cap on the number of elements a construction may produce.
pub const DEFAULT_MAX_ORDER: usize = 10_000;

/// Orders up to this size get a full associativity check on table input.
const FULL_ASSOCIATIVITY_LIMIT: usize = 256;
const SAMPLED_TRIPLES: usize = 1_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub element: usize,
}

/// A finite group on the indices `0..order`, with `0` the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    element_order: Vec<u32>,
    exponent: u64,
    generators: Vec<Generator>,
    permutations: Option<Vec<Permutation>>,
}

impl FiniteGroup {
    /// Closure of the given permutations under composition.
    ///
    /// Elements are indexed breadth-first over generator words, trying the
    /// generators in the given order, so the indexing is deterministic.
    pub fn from_generators(gens: &[(String, Permutation)], max_order: usize) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::InvalidPermutation("empty generator list".into()));
        }
        let degree = gens[0].1.degree();
        if let Some((name, p)) = gens.iter().find(|(_, p)| p.degree() != degree) {
            return Err(Error::InvalidPermutation(format!(
                "generator {name} acts on {} points, expected {degree}",
                p.degree()
            )));
        }

        let mut elements = vec![Permutation::identity(degree)];
        let mut index: HashMap<Permutation, usize> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        // parent[i] = (j, s) with element i = element j * generator s.
        let mut parent: Vec<Option<(usize, usize)>> = vec![None];
        let mut right: Vec<Vec<u32>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let mut row = Vec::with_capacity(gens.len());
            for (s, (_, g)) in gens.iter().enumerate() {
                let y = elements[x].then(g);
                let idx = match index.get(&y) {
                    Some(&i) => i,
                    None => {
                        let i = elements.len();
                        if i >= max_order {
                            return Err(Error::GroupTooLarge { bound: max_order });
                        }
                        index.insert(y.clone(), i);
                        elements.push(y);
                        parent.push(Some((x, s)));
                        queue.push_back(i);
                        i
                    }
                };
                row.push(idx as u32);
            }
            right.push(row);
        }

        let n = elements.len();
        // mul(x, y) = mul(x, parent(y)) * s, filled in BFS order of y.
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            table[x * n] = x as u32;
        }
        for y in 1..n {
            let (py, s) = parent[y].expect("non-identity has a parent");
            for x in 0..n {
                let xp = table[x * n + py] as usize;
                table[x * n + y] = right[xp][s];
            }
        }
        let generators = gens
            .iter()
            .map(|(name, g)| Generator {
                name: name.clone(),
                element: index[g],
            })
            .collect();
        let mut group = Self::from_raw_table(n, table, generators)?;
        group.permutations = Some(elements);
        group.spot_check_associativity(64);
        Ok(group)
    }

    /// Validates a multiplication table `table[a][b] = a*b` and reindexes so
    /// the identity is element 0.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if let Some(i) = table.iter().position(|row| row.len() != n) {
            return Err(Error::InvalidTable(format!("row {i} has wrong length")));
        }
        if table.iter().flatten().any(|&v| v >= n) {
            return Err(Error::InvalidTable("entry out of range".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::InvalidTable("no identity element".into()))?;
        // Swap the identity into position 0.
        let relabel = |i: usize| {
            if i == identity {
                0
            } else if i == 0 {
                identity
            } else {
                i
            }
        };
        let mut flat = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                flat[relabel(a) * n + relabel(b)] = relabel(table[a][b]) as u32;
            }
        }
        let mut group = Self::from_raw_table(n, flat, Vec::new())?;
        group.check_associativity()?;
        group.generators = group.greedy_generators();
        Ok(group)
    }

    /// Like [`from_table`](Self::from_table), with generator names given as
    /// indices into the original table.
    pub fn from_table_named(table: &[Vec<usize>], names: &[(String, usize)]) -> Result<Self> {
        let group = Self::from_table(table)?;
        let identity = (0..table.len())
            .find(|&e| (0..table.len()).all(|a| table[e][a] == a && table[a][e] == a))
            .expect("from_table found an identity");
        if names.is_empty() {
            return Ok(group);
        }
        let generators = names
            .iter()
            .map(|(name, i)| Generator {
                name: name.clone(),
                element: match *i {
                    i if i == identity => 0,
                    0 => identity,
                    i => i,
                },
            })
            .collect();
        group.with_generators(generators)
    }

    /// Builds from a flat table already known to have identity 0; computes
    /// inverses and element orders.
    pub(crate) fn from_raw_table(
        n: usize,
        table: Vec<u32>,
        generators: Vec<Generator>,
    ) -> Result<Self> {
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            if let Some(b) = (0..n).find(|&b| table[a * n + b] == 0) {
                if table[b * n + a] != 0 {
                    return Err(Error::InvalidTable(format!(
                        "element {a} has a one-sided inverse only"
                    )));
                }
                inv[a] = b as u32;
            } else {
                return Err(Error::InvalidTable(format!("element {a} has no inverse")));
            }
        }
        let mut element_order = vec![0u32; n];
        let mut exponent = 1u64;
        for a in 0..n {
            let mut x = a;
            let mut k = 1u32;
            while x != 0 {
                x = table[x * n + a] as usize;
                k += 1;
                if k as usize > n {
                    return Err(Error::InvalidTable(format!("element {a} has no finite order")));
                }
            }
            if n % k as usize != 0 {
                return Err(Error::InvalidTable(format!(
                    "element {a} has order {k} not dividing {n}"
                )));
            }
            element_order[a] = k;
            exponent = lcm(exponent, k as u64);
        }
        Ok(FiniteGroup {
            order: n,
            table,
            inv,
            element_order,
            exponent,
            generators,
            permutations: None,
        })
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.order;
        let bad = |a: usize, b: usize, c: usize| {
            self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
        };
        if n <= FULL_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if bad(a, b, c) {
                            return Err(Error::InvalidTable(format!(
                                "associativity fails at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            for _ in 0..SAMPLED_TRIPLES {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if bad(a, b, c) {
                    return Err(Error::InvalidTable(format!(
                        "associativity fails at ({a}, {b}, {c})"
                    )));
                }
            }
        }
        Ok(())
    }

    fn spot_check_associativity(&self, samples: usize) {
        let n = self.order;
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        for _ in 0..samples {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            debug_assert_eq!(
                self.mul(self.mul(a, b), c),
                self.mul(a, self.mul(b, c)),
                "closure produced a non-associative table"
            );
        }
    }

    /// Picks the smallest element outside the current span until the whole
    /// group is generated.
    fn greedy_generators(&self) -> Vec<Generator> {
        let mut gens: Vec<usize> = Vec::new();
        let mut span = self.closure(&gens);
        while span.len() < self.order {
            let mut member = vec![false; self.order];
            for &x in &span {
                member[x] = true;
            }
            let next = (0..self.order).find(|&x| !member[x]).expect("span is proper");
            gens.push(next);
            span = self.closure(&gens);
        }
        gens.into_iter()
            .enumerate()
            .map(|(i, element)| Generator {
                name: format!("g{}", i + 1),
                element,
            })
            .collect()
    }

    /// Replaces the display names of the generators.
    pub fn with_generators(mut self, generators: Vec<Generator>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.element >= self.order) {
            return Err(Error::InvalidTable(format!(
                "generator {} refers to element {} outside the group",
                g.name, g.element
            )));
        }
        self.generators = generators;
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let o = self.element_order[a] as i64;
        let mut e = k.rem_euclid(o);
        let mut base = a;
        let mut acc = 0usize;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `g a g⁻¹`.
    pub fn conjugate(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.element_order[a] as usize
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn permutations(&self) -> Option<&[Permutation]> {
        self.permutations.as_deref()
    }

    pub fn is_abelian(&self) -> bool {
        let gens: Vec<usize> = self.generators.iter().map(|g| g.element).collect();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sorted element list of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut elements = vec![0usize];
        let mut i = 0;
        while i < elements.len() {
            let x = elements[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    elements.push(y);
                }
            }
            i += 1;
        }
        elements.sort_unstable();
        elements
    }

    /// Elements of the cyclic subgroup `⟨a⟩` listed as `a^0, a^1, ...`.
    pub fn cyclic_powers(&self, a: usize) -> Vec<usize> {
        let mut out = vec![0usize];
        let mut x = a;
        while x != 0 {
            out.push(x);
            x = self.mul(x, a);
        }
        out
    }

    pub fn generates(&self, gens: &[usize]) -> bool {
        self.closure(gens).len() == self.order
    }

    /// Evaluates a word such as `a*b^2*a^-1` in the named generators. `e`
    /// and `1` denote the identity.
    pub fn eval_word(&self, word: &str) -> std::result::Result<usize, String> {
        let word = word.trim();
        if word.is_empty() {
            return Err("empty word".into());
        }
        let mut acc = 0usize;
        for token in word.split('*') {
            let token = token.trim();
            let (base, exp) = match token.split_once('^') {
                Some((b, e)) => {
                    let e: i64 = e
                        .trim()
                        .parse()
                        .map_err(|_| format!("bad exponent in {token:?}"))?;
                    (b.trim(), e)
                }
                None => (token, 1),
            };
            let element = match base {
                "e" | "1" => 0,
                name => self
                    .generators
                    .iter()
                    .find(|g| g.name == name)
                    .map(|g| g.element)
                    .ok_or_else(|| format!("unknown generator {name:?}"))?,
            };
            acc = self.mul(acc, self.pow(element, exp));
        }
        Ok(acc)
    }

    /// A short word for `a` in the named generators, found breadth-first.
    pub fn word_for(&self, a: usize) -> String {
        if a == 0 {
            return "e".into();
        }
        if self.generators.is_empty() {
            return format!("#{a}");
        }
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.order];
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            if x == a {
                break;
            }
            for (s, g) in self.generators.iter().enumerate() {
                let y = self.mul(x, g.element);
                if !seen[y] {
                    seen[y] = true;
                    prev[y] = Some((x, s));
                    queue.push_back(y);
                }
            }
        }
        if !seen[a] {
            return format!("#{a}");
        }
        let mut letters = Vec::new();
        let mut x = a;
        while let Some((p, s)) = prev[x] {
            letters.push(s);
            x = p;
        }
        letters.reverse();
        // Collapse runs into powers.
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < letters.len() {
            let mut j = i;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            let name = &self.generators[letters[i]].name;
            parts.push(if j - i == 1 {
                name.clone()
            } else {
                format!("{name}^{}", j - i)
            });
            i = j;
        }
        parts.join("*")
    }
}

/// Shared handle used throughout the crate.
pub type GroupRef = Arc<FiniteGroup>;

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize, s: &str) -> Permutation {
        Permutation::from_cycles(n, s).unwrap()
    }

    fn named(gens: &[(&str, Permutation)]) -> Vec<(String, Permutation)> {
        gens.iter().map(|(n, p)| (n.to_string(), p.clone())).collect()
    }

    #[test]
    fn two_commuting_involutions() {
        let g = FiniteGroup::from_generators(
            &named(&[("a", perm(4, "(0 1)")), ("b", perm(4, "(2 3)"))]),
            DEFAULT_MAX_ORDER,
        )
        .unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.exponent(), 2);
        assert_eq!(g.generators()[0].element, 1);
        assert_eq!(g.generators()[1].element, 2);
        assert_eq!(g.mul(1, 2), 3);
    }

    #[test]
    fn three_cycle() {
        let g = FiniteGroup::from_generators(&named(&[("a", perm(3, "(0 1 2)"))]), 100).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.exponent(), 3);
    }

    #[test]
    fn order_21_closure() {
        let tau = perm(7, "(0 1 2 3 4 5 6)");
        let sigma = perm(7, "(1 4 2)(3 5 6)");
        let g = FiniteGroup::from_generators(
            &named(&[("t", tau.clone()), ("s", sigma.clone())]),
            DEFAULT_MAX_ORDER,
        )
        .unwrap();
        assert_eq!(g.order(), 21);
        assert_eq!(g.exponent(), 21);
        // Conjugating τ by σ gives τ^4.
        let conj = sigma.inverse().then(&tau).then(&sigma);
        let tau4 = tau.then(&tau).then(&tau).then(&tau);
        assert_eq!(conj, tau4);
    }

    #[test]
    fn closure_respects_bound() {
        let gens = named(&[("a", perm(5, "(0 1 2 3 4)")), ("b", perm(5, "(0 1)"))]);
        assert_eq!(
            FiniteGroup::from_generators(&gens, 50),
            Err(Error::GroupTooLarge { bound: 50 })
        );
        assert_eq!(
            FiniteGroup::from_generators(&gens, DEFAULT_MAX_ORDER)
                .unwrap()
                .order(),
            120
        );
    }

    #[test]
    fn mismatched_degrees_rejected() {
        let gens = named(&[("a", perm(3, "(0 1)")), ("b", perm(4, "(2 3)"))]);
        assert!(FiniteGroup::from_generators(&gens, 100).is_err());
        assert!(FiniteGroup::from_generators(&[], 100).is_err());
    }

    #[test]
    fn table_groups() {
        let trivial = FiniteGroup::from_table(&[vec![0]]).unwrap();
        assert_eq!(trivial.order(), 1);
        assert_eq!(trivial.exponent(), 1);

        let klein: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
        let g = FiniteGroup::from_table(&klein).unwrap();
        assert_eq!(g.order(), 4);
        assert!((0..4).all(|a| g.element_order(a) <= 2));
    }

    #[test]
    fn s3_table_is_validated() {
        // Brute-force table of S3 from its permutations.
        let perms: Vec<Permutation> = [
            "()", "(0 1)", "(1 2)", "(0 2)", "(0 1 2)", "(0 2 1)",
        ]
        .iter()
        .map(|s| perm(3, s))
        .collect();
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| perms.iter().position(|c| *c == a.then(b)).unwrap())
                    .collect()
            })
            .collect();
        let g = FiniteGroup::from_table(&table).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.exponent(), 6);
        assert!(g.generates(&g.generators().iter().map(|x| x.element).collect::<Vec<_>>()));
    }

    #[test]
    fn identity_is_moved_to_zero() {
        // Z/3 with the identity labelled 2.
        let table = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = FiniteGroup::from_table(&table).unwrap();
        assert!((0..3).all(|a| g.mul(0, a) == a && g.mul(a, 0) == a));
    }

    #[test]
    fn invalid_tables() {
        let no_identity = vec![vec![1, 0], vec![1, 0]];
        assert!(matches!(
            FiniteGroup::from_table(&no_identity),
            Err(Error::InvalidTable(_))
        ));
        let no_inverse = vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 1, 2]];
        assert!(matches!(
            FiniteGroup::from_table(&no_inverse),
            Err(Error::InvalidTable(_))
        ));
        // A loop that is not associative: Latin square with identity 0.
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_table(&loop5),
            Err(Error::InvalidTable(_))
        ));
    }

    #[test]
    fn words() {
        let g = constructions::g21();
        let s = g.eval_word("s").unwrap();
        let t = g.eval_word("t").unwrap();
        assert_eq!(g.element_order(s), 3);
        assert_eq!(g.element_order(t), 7);
        assert_eq!(g.eval_word("s*s^-1").unwrap(), 0);
        assert_eq!(g.eval_word("t^7").unwrap(), 0);
        assert_eq!(g.eval_word("e").unwrap(), 0);
        assert!(g.eval_word("x").is_err());
        assert!(g.eval_word("s^q").is_err());
        for a in 0..g.order() {
            assert_eq!(g.eval_word(&g.word_for(a)).unwrap(), a);
        }
    }
}
