//! The three worked examples as declarative data: a built-in group, branch
//! points and a divisor, all referring to elements by words.

use crate::context::GroupContext;
use crate::cover::CoverData;
use crate::equivariant::{EquivariantDivisor, OrbitTerm, Stabilizer};
use crate::error::{Error, Result};
use crate::group::{constructions, FiniteGroup};

/// Divisor given by words in the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DivisorSpec {
    Pullback { degree_base: i64 },
    /// `(stabilizer word or None for trivial, exponent, coefficient)`.
    Orbits(Vec<(Option<String>, i64, i64)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureSpec {
    pub name: String,
    pub description: String,
    pub group: String,
    pub genus_base: i64,
    /// `(inertia word, exponent)`.
    pub branch_points: Vec<(String, i64)>,
    pub divisor: DivisorSpec,
}

/// A fixture resolved against its group.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub spec: FixtureSpec,
    pub ctx: GroupContext,
    pub cover: CoverData,
    pub divisor: EquivariantDivisor,
}

fn word(group: &FiniteGroup, w: &str) -> Result<usize> {
    group
        .eval_word(w)
        .map_err(|e| Error::InvalidBranchData(format!("word {w:?}: {e}")))
}

/// Resolves words in a divisor spec.
pub fn resolve_divisor(ctx: &GroupContext, spec: &DivisorSpec) -> Result<EquivariantDivisor> {
    Ok(match spec {
        DivisorSpec::Pullback { degree_base } => EquivariantDivisor::Pullback {
            degree_base: *degree_base,
        },
        DivisorSpec::Orbits(terms) => EquivariantDivisor::Orbits(
            terms
                .iter()
                .map(|(w, a, r)| {
                    let stabilizer = match w {
                        None => None,
                        Some(w) => {
                            let h = word(&ctx.group, w)?;
                            if h == 0 {
                                None
                            } else {
                                Some(Stabilizer::new(&ctx.group, h, *a)?)
                            }
                        }
                    };
                    Ok(OrbitTerm {
                        stabilizer,
                        coefficient: *r,
                    })
                })
                .collect::<Result<_>>()?,
        ),
    })
}

impl FixtureSpec {
    pub fn build(&self) -> Result<Fixture> {
        let group = constructions::builtin(&self.group)
            .ok_or_else(|| Error::InvalidBranchData(format!("unknown group {:?}", self.group)))?;
        let ctx = GroupContext::new(group)?;
        let points = self
            .branch_points
            .iter()
            .map(|(w, a)| Ok((word(&ctx.group, w)?, *a)))
            .collect::<Result<Vec<_>>>()?;
        let cover = CoverData::new(&ctx.subgroups, self.genus_base, &points)?;
        let divisor = resolve_divisor(&ctx, &self.divisor)?;
        Ok(Fixture {
            spec: self.clone(),
            ctx,
            cover,
            divisor,
        })
    }

    /// The same cover with the divisor replaced.
    pub fn with_divisor(&self, name: &str, divisor: DivisorSpec) -> Self {
        FixtureSpec {
            name: name.to_string(),
            divisor,
            ..self.clone()
        }
    }
}

fn points(list: &[(&str, i64)]) -> Vec<(String, i64)> {
    list.iter().map(|(w, a)| (w.to_string(), *a)).collect()
}

/// Klein four-group acting on a genus-2 curve over `P^1` with five branch
/// points; `D` is the sum of one reduced orbit over an `⟨a⟩` branch point
/// and one over the `⟨b⟩` branch point.
pub fn example1() -> FixtureSpec {
    FixtureSpec {
        name: "example1".into(),
        description: "Klein four-group, genus 2 over P^1, D = two reduced orbits".into(),
        group: "klein4".into(),
        genus_base: 0,
        branch_points: points(&[("a", 1), ("a", 1), ("a", 1), ("b", 1), ("a*b", 1)]),
        divisor: DivisorSpec::Orbits(vec![
            (Some("a".into()), 1, 1),
            (Some("b".into()), 1, 1),
        ]),
    }
}

/// Example 1 with `2D = π^*(D₀)`, `deg D₀ = 2`.
pub fn example1_pullback() -> FixtureSpec {
    FixtureSpec {
        description: "Klein four-group, genus 2 over P^1, 2D = pullback of a degree 2 divisor"
            .into(),
        ..example1().with_divisor("example1_2d", DivisorSpec::Pullback { degree_base: 2 })
    }
}

/// `C_q` acting on `P^1` by rotation, totally ramified over two points with
/// inverse ramification characters.
pub fn example2(q: usize) -> FixtureSpec {
    FixtureSpec {
        name: format!("example2_q{q}"),
        description: format!("cyclic group of order {q} acting on P^1, two fixed points"),
        group: format!("cyclic:{q}"),
        genus_base: 0,
        branch_points: points(&[("a", 1), ("a", -1)]),
        divisor: DivisorSpec::Pullback { degree_base: 2 },
    }
}

/// The order-21 group acting on the Klein quartic: two branch points with
/// inertia of order 3 and one with inertia of order 7.
pub fn example3() -> FixtureSpec {
    FixtureSpec {
        name: "example3".into(),
        description: "order-21 group on the Klein quartic over P^1".into(),
        group: "g21".into(),
        genus_base: 0,
        branch_points: points(&[("s", 1), ("s", 2), ("t", -1)]),
        divisor: DivisorSpec::Pullback { degree_base: 1 },
    }
}

/// All bundled fixtures.
pub fn all() -> Vec<FixtureSpec> {
    vec![
        example1(),
        example1_pullback(),
        example2(3),
        example2(5),
        example2(7),
        example3(),
    ]
}
