//! Multiplicities of irreducible representations in Riemann–Roch spaces,
//! the ramification module, the equivariant degree, and Borne's formula.

use std::sync::Arc;

use num::{Signed, Zero};

use crate::characters::{cyclic_character_powers, ClassFunction};
use crate::context::GroupContext;
use crate::cover::{CoverData, Nonspeciality};
use crate::cyclotomic::Rational;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn is_nonneg_integer(q: &Rational) -> bool {
    q.is_integer() && !q.is_negative()
}

/// A virtual character recorded by its multiplicities against the table.
#[derive(Clone, Debug, PartialEq)]
pub struct VirtualCharacter {
    /// One entry per irreducible, in table order. When `is_averaged` these
    /// are Galois-orbit averages.
    pub multiplicities: Vec<Rational>,
    /// Value at the identity.
    pub degree: Rational,
    /// All multiplicities are nonnegative integers.
    pub is_genuine: bool,
    /// The underlying class function has rational values.
    pub is_rational: bool,
    pub is_averaged: bool,
}

impl VirtualCharacter {
    pub fn from_multiplicities(ctx: &GroupContext, multiplicities: Vec<Rational>) -> Self {
        let degree = multiplicities
            .iter()
            .zip(ctx.table.degrees())
            .fold(Rational::zero(), |acc, (m, &d)| acc + m * int(d as i64));
        let is_genuine = multiplicities.iter().all(is_nonneg_integer);
        let is_rational = ctx.rational.orbits().iter().all(|o| {
            o.members
                .iter()
                .all(|&r| multiplicities[r] == multiplicities[o.members[0]])
        });
        VirtualCharacter {
            multiplicities,
            degree,
            is_genuine,
            is_rational,
            is_averaged: false,
        }
    }

    pub fn from_class_function(ctx: &GroupContext, f: &ClassFunction) -> Result<Self> {
        let m = ctx.table.decompose_rational(f)?;
        let v = Self::from_multiplicities(ctx, m);
        if v.is_rational != f.is_rational() {
            return Err(Error::InternalConsistency(
                "rationality of values and of multiplicities disagree".into(),
            ));
        }
        Ok(v)
    }

    /// Replaces each multiplicity by its Galois-orbit average.
    pub fn averaged(&self, ctx: &GroupContext) -> Self {
        let per_orbit = orbit_averages(ctx, &self.multiplicities);
        let mut v = Self::from_multiplicities(ctx, ctx.rational.spread(&per_orbit));
        v.is_rational = self.is_rational;
        v.is_averaged = !self.is_rational || self.is_averaged;
        v
    }

    /// Reassembles the class function `Σ n_j χ_j`.
    pub fn class_function(&self, ctx: &GroupContext) -> Result<ClassFunction> {
        ClassFunction::combination(&ctx.classes, ctx.table.irreducibles(), &self.multiplicities)
    }
}

/// Averages of per-irreducible values over each Galois orbit.
pub fn orbit_averages(ctx: &GroupContext, values: &[Rational]) -> Vec<Rational> {
    ctx.rational
        .orbits()
        .iter()
        .map(|o| {
            let sum = o
                .members
                .iter()
                .fold(Rational::zero(), |acc, &r| acc + &values[r]);
            sum / int(o.members.len() as i64)
        })
        .collect()
}

/// One orbit term of a `G`-invariant divisor: `r` times the reduced orbit
/// of a point with the given stabilizer.
#[derive(Clone, Debug)]
pub struct OrbitTerm {
    pub stabilizer: Option<Stabilizer>,
    pub coefficient: i64,
}

/// Cyclic stabilizer `⟨h⟩` with character `ψ(h) = ζ_e^a`.
#[derive(Clone, Debug)]
pub struct Stabilizer {
    pub generator: usize,
    pub order: usize,
    pub exponent: i64,
    subgroup: Subgroup,
}

impl Stabilizer {
    pub fn new(group: &Arc<FiniteGroup>, generator: usize, exponent: i64) -> Result<Self> {
        if generator >= group.order() {
            return Err(Error::InvalidBranchData(format!(
                "element {generator} outside the group"
            )));
        }
        let e = group.element_order(generator);
        let a = exponent.rem_euclid(e as i64);
        if crate::arith::gcd(a as u64, e as u64) != 1 {
            return Err(Error::InvalidBranchData(format!(
                "exponent {exponent} is not coprime to the stabilizer order {e}"
            )));
        }
        Ok(Stabilizer {
            generator,
            order: e,
            exponent: a,
            subgroup: Subgroup::new(group, &group.cyclic_powers(generator))?,
        })
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }
}

/// A `G`-invariant divisor, either `π^*(D₀)` or a sum of orbit terms with
/// disjoint supports.
#[derive(Clone, Debug)]
pub enum EquivariantDivisor {
    Pullback { degree_base: i64 },
    Orbits(Vec<OrbitTerm>),
}

impl EquivariantDivisor {
    /// `deg D`; an orbit with stabilizer of order `e` has `|G|/e` points.
    pub fn degree(&self, group: &FiniteGroup) -> i64 {
        let n = group.order() as i64;
        match self {
            EquivariantDivisor::Pullback { degree_base } => n * degree_base,
            EquivariantDivisor::Orbits(terms) => terms
                .iter()
                .map(|t| {
                    let e = t.stabilizer.as_ref().map_or(1, |s| s.order) as i64;
                    t.coefficient * n / e
                })
                .sum(),
        }
    }
}

/// How a decomposition was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Per-character Riemann–Roch formula for pullback divisors.
    Pullback,
    /// `(1 − g_Y) χ(k[G]) + deg_eq(D) − Γ̃`.
    Borne,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub character: VirtualCharacter,
    /// `n_j` per rational orbit, present when the character is rational.
    pub rational_multiplicities: Option<Vec<Rational>>,
    pub method: Method,
    pub nonspecial: Nonspeciality,
    pub diagnostics: Vec<String>,
}

/// `dim V^{H_ℓ}` for every irreducible `V` (rows) and subgroup class `ℓ`
/// (columns).
pub fn irreducible_fixed_dims(ctx: &GroupContext) -> Result<Vec<Vec<Rational>>> {
    ctx.table
        .irreducibles()
        .iter()
        .map(|chi| {
            ctx.subgroups
                .iter()
                .map(|c| chi.fixed_dim(&c.subgroup))
                .collect()
        })
        .collect()
}

/// `Σ_ℓ (dim W − dim W^{H_ℓ}) R_ℓ / 2` given the fixed dimensions of `W`.
fn ramification_sum(dim: &Rational, fixed: &[Rational], counts: &[u64]) -> Rational {
    let half = Rational::new(1.into(), 2.into());
    fixed
        .iter()
        .zip(counts)
        .fold(Rational::zero(), |acc, (f, &r)| {
            acc + (dim - f) * int(r as i64) * &half
        })
}

fn check_cover(ctx: &GroupContext, cover: &CoverData) -> Result<()> {
    if !Arc::ptr_eq(&ctx.group, cover.group()) && *ctx.group != **cover.group() {
        return Err(Error::InvalidBranchData(
            "cover and character data belong to different groups".into(),
        ));
    }
    Ok(())
}

/// Multiplicity of the irreducible `w` in `L(π^*D₀)`:
/// `dim W (deg₀ + 1 − g_Y) − Σ_ℓ (dim W − dim W^{H_ℓ}) R_ℓ/2`.
pub fn multiplicity_abs(
    ctx: &GroupContext,
    cover: &CoverData,
    deg0: i64,
    w: usize,
) -> Result<Rational> {
    check_cover(ctx, cover)?;
    let chi = ctx.table.character(w);
    let fixed = ctx
        .subgroups
        .iter()
        .map(|c| chi.fixed_dim(&c.subgroup))
        .collect::<Result<Vec<_>>>()?;
    let dim = int(ctx.table.degrees()[w] as i64);
    Ok(&dim * int(deg0 + 1 - cover.genus_base())
        - ramification_sum(&dim, &fixed, &cover.branch_counts()))
}

/// Multiplicity `n_j` of the simple `Q[G]`-module `V_j` in `L(π^*D₀)_Q`:
/// `(1/(m_j² d_j)) (dim V_j (deg₀ + 1 − g_Y) − Σ_ℓ (dim V_j − dim V_j^{H_ℓ}) R_ℓ/2)`.
pub fn multiplicity_rational_q(
    ctx: &GroupContext,
    cover: &CoverData,
    deg0: i64,
    j: usize,
) -> Result<Rational> {
    check_cover(ctx, cover)?;
    let orbit = ctx.rational.orbit(j);
    let fixed = ctx
        .subgroups
        .iter()
        .map(|c| orbit.eta.fixed_dim(&c.subgroup))
        .collect::<Result<Vec<_>>>()?;
    let dim = int(orbit.dim() as i64);
    let m = orbit.schur_index as i64;
    let scale = Rational::new(1.into(), (m * m * orbit.size() as i64).into());
    Ok(scale
        * (&dim * int(deg0 + 1 - cover.genus_base())
            - ramification_sum(&dim, &fixed, &cover.branch_counts())))
}

/// Decomposes `L(π^*D₀)` with the per-character formula. When `Γ̃` is not
/// rational the formula only yields Galois-orbit averages, which are
/// reported as such.
pub fn decompose_pullback(ctx: &GroupContext, cover: &CoverData, deg0: i64) -> Result<Decomposition> {
    check_cover(ctx, cover)?;
    let gamma = ramification_class_function(ctx, cover)?;
    let rational = gamma.is_rational();
    let counts = cover.branch_counts();
    let fixed = irreducible_fixed_dims(ctx)?;
    let mults: Vec<Rational> = fixed
        .iter()
        .zip(ctx.table.degrees())
        .map(|(f, &d)| {
            let dim = int(d as i64);
            &dim * int(deg0 + 1 - cover.genus_base()) - ramification_sum(&dim, f, &counts)
        })
        .collect();
    let mut character = VirtualCharacter::from_multiplicities(ctx, mults);
    character.is_rational = rational;
    character.is_averaged = !rational;
    let mut diagnostics = Vec::new();
    let degree = EquivariantDivisor::Pullback { degree_base: deg0 }.degree(&ctx.group);
    let nonspecial = cover.nonspecial_guard(degree);
    let rational_multiplicities = if rational {
        if !character.is_genuine {
            diagnostics.push(
                "inconsistent cover data: multiplicities are not nonnegative integers".into(),
            );
        }
        let n = (0..ctx.rational.len())
            .map(|j| multiplicity_rational_q(ctx, cover, deg0, j))
            .collect::<Result<Vec<_>>>()?;
        for (j, (nj, orbit)) in n.iter().zip(ctx.rational.orbits()).enumerate() {
            let expected = nj * int(orbit.schur_index as i64);
            if orbit
                .members
                .iter()
                .any(|&r| character.multiplicities[r] != expected)
            {
                return Err(Error::InternalConsistency(format!(
                    "rational multiplicity of orbit {} disagrees with its members",
                    j + 1
                )));
            }
            if !is_nonneg_integer(nj) {
                diagnostics.push(format!(
                    "Schur index inconsistent: orbit {} gets multiplicity {}",
                    j + 1,
                    crate::cyclotomic::format_rational(nj)
                ));
            }
        }
        Some(n)
    } else {
        diagnostics.push(
            "ramification module is not rational: multiplicities are Galois-orbit averages".into(),
        );
        None
    };
    if nonspecial == Nonspeciality::NotGuaranteed {
        diagnostics.push(format!(
            "nonspeciality not guaranteed (deg D = {degree} < 2g_X - 1 = {})",
            2 * cover.genus_top() - 1
        ));
    }
    Ok(Decomposition {
        character,
        rational_multiplicities,
        method: Method::Pullback,
        nonspecial,
        diagnostics,
    })
}

/// `Γ̃_G` as a class function: `Σ_b (1/e_b) Ind_{⟨h_b⟩}^G (Σ_{ℓ=1}^{e_b−1} ℓ ψ_b^ℓ)`.
pub fn ramification_class_function(ctx: &GroupContext, cover: &CoverData) -> Result<ClassFunction> {
    check_cover(ctx, cover)?;
    let mut acc = ClassFunction::zero(&ctx.classes);
    for p in cover.branch_points() {
        let powers = cyclic_character_powers(p.inertia(), p.generator, p.exponent)?;
        let mut weighted = ClassFunction::zero(p.inertia().local_classes());
        for (l, psi) in powers.iter().enumerate().skip(1) {
            weighted = weighted.try_add(&psi.scale(&int(l as i64)))?;
        }
        let induced = ClassFunction::induce(&ctx.classes, p.inertia(), &weighted)?;
        acc = acc.try_add(&induced.scale(&Rational::new(1.into(), (p.order as i64).into())))?;
    }
    Ok(acc)
}

/// The ramification module from its definition.
pub fn ramification_module_direct(ctx: &GroupContext, cover: &CoverData) -> Result<VirtualCharacter> {
    VirtualCharacter::from_class_function(ctx, &ramification_class_function(ctx, cover)?)
}

/// The closed form `Σ_ℓ (dim W − dim W^{H_ℓ}) R_ℓ/2` per irreducible `W`.
/// Equal to the direct computation when `Γ̃` is rational; otherwise only
/// the Galois-orbit averages agree, and the result is flagged averaged.
pub fn ramification_module_closed(ctx: &GroupContext, cover: &CoverData) -> Result<VirtualCharacter> {
    let counts = cover.branch_counts();
    let fixed = irreducible_fixed_dims(ctx)?;
    let closed: Vec<Rational> = fixed
        .iter()
        .zip(ctx.table.degrees())
        .map(|(f, &d)| ramification_sum(&int(d as i64), f, &counts))
        .collect();
    let direct = ramification_module_direct(ctx, cover)?;
    let mut v = VirtualCharacter::from_multiplicities(ctx, closed);
    if direct.is_rational {
        if v.multiplicities != direct.multiplicities {
            return Err(Error::InternalConsistency(
                "closed-form ramification module differs from the direct computation".into(),
            ));
        }
    } else {
        if orbit_averages(ctx, &v.multiplicities) != orbit_averages(ctx, &direct.multiplicities) {
            return Err(Error::InternalConsistency(
                "closed-form orbit averages differ from the direct computation".into(),
            ));
        }
        v.is_rational = false;
        v.is_averaged = true;
    }
    Ok(v)
}

fn orbit_term_class_function(ctx: &GroupContext, term: &OrbitTerm) -> Result<ClassFunction> {
    let r = term.coefficient;
    let Some(stab) = &term.stabilizer else {
        return Ok(ClassFunction::regular(&ctx.classes).scale(&int(r)));
    };
    if r == 0 {
        return Ok(ClassFunction::zero(&ctx.classes));
    }
    let e = stab.order as i64;
    let powers = cyclic_character_powers(stab.subgroup(), stab.generator, stab.exponent)?;
    let mut sum = ClassFunction::zero(stab.subgroup().local_classes());
    if r > 0 {
        for l in 1..=r {
            sum = sum.try_add(&powers[(-l).rem_euclid(e) as usize])?;
        }
    } else {
        for l in 0..=(-(r + 1)) {
            sum = sum.try_add(&powers[l.rem_euclid(e) as usize])?;
        }
        sum = -&sum;
    }
    ClassFunction::induce(&ctx.classes, stab.subgroup(), &sum)
}

/// `deg_eq(D)` as a class function.
pub fn equivariant_degree_class_function(
    ctx: &GroupContext,
    divisor: &EquivariantDivisor,
) -> Result<ClassFunction> {
    match divisor {
        EquivariantDivisor::Pullback { degree_base } => {
            Ok(ClassFunction::regular(&ctx.classes).scale(&int(*degree_base)))
        }
        EquivariantDivisor::Orbits(terms) => {
            let mut acc = ClassFunction::zero(&ctx.classes);
            for t in terms {
                acc = acc.try_add(&orbit_term_class_function(ctx, t)?)?;
            }
            Ok(acc)
        }
    }
}

/// The equivariant degree, additive over disjoint orbits.
pub fn equivariant_degree(ctx: &GroupContext, divisor: &EquivariantDivisor) -> Result<VirtualCharacter> {
    let f = equivariant_degree_class_function(ctx, divisor)?;
    let v = VirtualCharacter::from_class_function(ctx, &f)?;
    let expected = int(divisor.degree(&ctx.group));
    if v.degree != expected {
        return Err(Error::InternalConsistency(format!(
            "equivariant degree has dimension {}, expected {}",
            v.degree, expected
        )));
    }
    Ok(v)
}

/// `χ(L(D)) = (1 − g_Y) χ(k[G]) + deg_eq(D) − Γ̃` for nonspecial `D`.
pub fn borne_character(
    ctx: &GroupContext,
    cover: &CoverData,
    divisor: &EquivariantDivisor,
) -> Result<Decomposition> {
    check_cover(ctx, cover)?;
    let regular = ClassFunction::regular(&ctx.classes).scale(&int(1 - cover.genus_base()));
    let f = regular
        .try_add(&equivariant_degree_class_function(ctx, divisor)?)?
        .try_add(&-&ramification_class_function(ctx, cover)?)?;
    let character = VirtualCharacter::from_class_function(ctx, &f)?;
    let degree = divisor.degree(&ctx.group);
    let expected = int(degree + 1 - cover.genus_top());
    if character.degree != expected {
        return Err(Error::InternalConsistency(format!(
            "Borne character has degree {}, expected deg D + 1 - g_X = {}",
            character.degree, expected
        )));
    }
    let nonspecial = cover.nonspecial_guard(degree);
    let mut diagnostics = Vec::new();
    match nonspecial {
        Nonspeciality::Guaranteed => {
            if !character.is_genuine {
                diagnostics.push(
                    "inconsistent input: negative or fractional multiplicities for a nonspecial divisor"
                        .into(),
                );
            }
        }
        Nonspeciality::NotGuaranteed => diagnostics.push(format!(
            "virtual character (nonspeciality not guaranteed: deg D = {degree} < 2g_X - 1 = {})",
            2 * cover.genus_top() - 1
        )),
    }
    let rational_multiplicities = character.is_rational.then(|| {
        ctx.rational
            .orbits()
            .iter()
            .map(|o| {
                &character.multiplicities[o.members[0]] / int(o.schur_index as i64)
            })
            .collect()
    });
    Ok(Decomposition {
        character,
        rational_multiplicities,
        method: Method::Borne,
        nonspecial,
        diagnostics,
    })
}

/// `Γ̃(1) = Σ_b (e_b − 1)/2 · |G|/e_b`, the degree the direct module must have.
pub fn ramification_degree(cover: &CoverData) -> Rational {
    let n = cover.group().order() as i64;
    cover
        .branch_points()
        .iter()
        .fold(Rational::zero(), |acc, p| {
            let e = p.order as i64;
            acc + Rational::new((n * (e - 1)).into(), (2 * e).into())
        })
}
