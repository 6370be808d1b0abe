use equirr_core::cover::{CoverData, Nonspeciality};
use equirr_core::cyclotomic::{integer, Rational};
use equirr_core::equivariant::{
    borne_character, decompose_pullback, equivariant_degree, multiplicity_abs,
    ramification_degree, ramification_module_closed, ramification_module_direct,
    EquivariantDivisor, OrbitTerm, Stabilizer,
};
use equirr_core::fixtures::{self, DivisorSpec};
use equirr_core::random::random_instances;
use equirr_core::GroupContext;
use equirr_core::group::constructions;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&n| integer(n)).collect()
}

fn orbit(ctx: &GroupContext, word: &str, exponent: i64, coefficient: i64) -> OrbitTerm {
    let h = ctx.group.eval_word(word).unwrap();
    OrbitTerm {
        stabilizer: Some(Stabilizer::new(&ctx.group, h, exponent).unwrap()),
        coefficient,
    }
}

#[test]
fn example1_pullback_and_borne() {
    let f = fixtures::example1_pullback().build().unwrap();
    let d = decompose_pullback(&f.ctx, &f.cover, 2).unwrap();
    assert_eq!(d.character.multiplicities, ints(&[3, 2, 1, 1]));
    assert_eq!(d.rational_multiplicities, Some(ints(&[3, 2, 1, 1])));
    assert_eq!(d.nonspecial, Nonspeciality::Guaranteed);
    assert!(d.diagnostics.is_empty());

    let f = fixtures::example1().build().unwrap();
    let b = borne_character(&f.ctx, &f.cover, &f.divisor).unwrap();
    assert_eq!(b.character.multiplicities, ints(&[1, 1, 0, 1]));
    assert!(b.character.is_genuine);
}

#[test]
fn klein_negative_orbit() {
    let f = fixtures::example1()
        .with_divisor("neg", DivisorSpec::Orbits(vec![(Some("a".into()), 1, -1)]))
        .build()
        .unwrap();
    let deg = equivariant_degree(&f.ctx, &f.divisor).unwrap();
    assert_eq!(deg.multiplicities, ints(&[-1, -1, 0, 0]));
    let b = borne_character(&f.ctx, &f.cover, &f.divisor).unwrap();
    assert_eq!(b.nonspecial, Nonspeciality::NotGuaranteed);
    assert!(!b.diagnostics.is_empty());
}

#[test]
fn trivial_stabilizer_orbit_is_regular() {
    let f = fixtures::example3().build().unwrap();
    let d = EquivariantDivisor::Orbits(vec![OrbitTerm {
        stabilizer: None,
        coefficient: 2,
    }]);
    let deg = equivariant_degree(&f.ctx, &d).unwrap();
    assert_eq!(deg.multiplicities, ints(&[2, 2, 2, 6, 6]));
}

#[test]
fn inverse_character_on_non_self_conjugate_stabilizer() {
    let ctx = GroupContext::new(constructions::g21()).unwrap();
    // ψ(t) = ζ_7 and the orbit term induces ψ^{-1}, whose induced value at
    // t is ζ^3 + ζ^5 + ζ^6.
    let d = EquivariantDivisor::Orbits(vec![orbit(&ctx, "t", 1, 1)]);
    assert_eq!(equivariant_degree(&ctx, &d).unwrap().multiplicities, ints(&[0, 0, 0, 1, 0]));
    let d = EquivariantDivisor::Orbits(vec![orbit(&ctx, "t", -1, 1)]);
    assert_eq!(equivariant_degree(&ctx, &d).unwrap().multiplicities, ints(&[0, 0, 0, 0, 1]));
    let d = EquivariantDivisor::Orbits(vec![orbit(&ctx, "t", 1, 2)]);
    assert_eq!(equivariant_degree(&ctx, &d).unwrap().multiplicities, ints(&[0, 0, 0, 2, 0]));
}

#[test]
fn dihedral_rotation_stabilizer() {
    let ctx = GroupContext::new(constructions::dihedral(5)).unwrap();
    for r in 1..=6 {
        let d = EquivariantDivisor::Orbits(vec![orbit(&ctx, "r", 1, r)]);
        let deg = equivariant_degree(&ctx, &d).unwrap();
        assert_eq!(deg.degree, integer(2 * r));
        assert!(deg.is_genuine);
        // r copies of the orbit: the characters of ⟨r⟩ used are ψ^{-1} … ψ^{-r}.
        let trivial_copies = r / 5;
        assert_eq!(deg.multiplicities[0], integer(trivial_copies));
        assert_eq!(deg.multiplicities[1], integer(trivial_copies));
    }
}

#[test]
fn example2_and_example3_modules() {
    for q in [3, 5, 7, 11] {
        let f = fixtures::example2(q).build().unwrap();
        let g = ramification_module_direct(&f.ctx, &f.cover).unwrap();
        assert_eq!(g.degree, ramification_degree(&f.cover));
        assert_eq!(g.multiplicities[0], integer(0));
        assert!(g.multiplicities[1..].iter().all(|m| *m == integer(1)));
        let d = decompose_pullback(&f.ctx, &f.cover, 2).unwrap();
        assert_eq!(d.character.degree, integer(2 * q as i64 + 1));
    }
    let f = fixtures::example3().build().unwrap();
    assert_eq!(f.cover.genus_top(), 3);
    let direct = ramification_module_direct(&f.ctx, &f.cover).unwrap();
    assert_eq!(direct.multiplicities, ints(&[0, 1, 1, 3, 4]));
    let closed = ramification_module_closed(&f.ctx, &f.cover).unwrap();
    assert!(closed.is_averaged);
    assert_eq!(closed.multiplicities[3], Rational::new(7.into(), 2.into()));
    let d = decompose_pullback(&f.ctx, &f.cover, 1).unwrap();
    assert!(d.character.is_averaged);
    assert_eq!(d.character.degree, integer(21 + 1 - 3));
    assert!(d.diagnostics.iter().any(|m| m.contains("average")));
}

#[test]
fn abs_formula_matches_averaged_decomposition() {
    let f = fixtures::example1_pullback().build().unwrap();
    for deg0 in -2..6 {
        let d = decompose_pullback(&f.ctx, &f.cover, deg0).unwrap();
        for w in 0..4 {
            assert_eq!(
                multiplicity_abs(&f.ctx, &f.cover, deg0, w).unwrap(),
                d.character.multiplicities[w]
            );
        }
    }
}

#[test]
fn ramification_module_is_conjugation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for inst in random_instances(&mut rng, 20).unwrap() {
        let g = &inst.ctx.group;
        let base = ramification_module_direct(&inst.ctx, &inst.cover).unwrap();
        let conjugated: Vec<(usize, i64)> = inst
            .branch_points
            .iter()
            .map(|&(h, a)| {
                let x = rng.gen_range(0..g.order());
                (g.conjugate(h, x), a)
            })
            .collect();
        let cover =
            CoverData::new(&inst.ctx.subgroups, inst.cover.genus_base(), &conjugated).unwrap();
        let moved = ramification_module_direct(&inst.ctx, &cover).unwrap();
        assert_eq!(base.multiplicities, moved.multiplicities, "{}", inst.recipe.name());
    }
}
