use equirr_core::cover::CoverData;
use equirr_core::cyclotomic::integer;
use equirr_core::equivariant::multiplicity_rational_q;
use equirr_core::fixtures;
use equirr_core::group::constructions;
use equirr_core::oracle::{
    cover_identity_checks, determinant, fixed_dim_matrix, group_identity_checks,
    realizability_check, solve, solve_system, Realizability,
};
use equirr_core::random::random_instances;
use equirr_core::GroupContext;
use num::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn determinant_and_solve() {
    let m = vec![
        vec![integer(2), integer(1)],
        vec![integer(1), integer(3)],
    ];
    assert_eq!(determinant(&m), integer(5));
    let x = solve(&m, &[integer(3), integer(4)]).unwrap();
    assert_eq!(x, vec![integer(1), integer(1)]);
    let singular = vec![
        vec![integer(1), integer(2)],
        vec![integer(2), integer(4)],
    ];
    assert!(determinant(&singular).is_zero());
    assert!(solve(&singular, &[integer(1), integer(0)]).is_none());
}

#[test]
fn klein_fixed_dim_matrix() {
    let ctx = GroupContext::new(constructions::klein4()).unwrap();
    let a = fixed_dim_matrix(&ctx).unwrap();
    assert_eq!(a.entries.len(), 4);
    assert_eq!(a.entries[0], vec![integer(1); 4]);
    assert!(!a.determinant.is_zero());
}

#[test]
fn identities_hold_on_named_groups() {
    for g in [
        constructions::g21(),
        constructions::alternating(5),
        constructions::quaternion(),
        constructions::frobenius20(),
    ] {
        let ctx = GroupContext::new(g).unwrap();
        for c in group_identity_checks(&ctx).unwrap() {
            assert!(c.passed, "{}: {} vs {}", c.name, c.expected, c.computed);
        }
    }
}

#[test]
fn fixtures_pass_cover_checks_and_oracle() {
    for spec in fixtures::all() {
        let f = spec.build().unwrap();
        for c in cover_identity_checks(&f.ctx, &f.cover, 1).unwrap() {
            assert!(c.passed, "{} {}", spec.name, c.name);
        }
        for deg0 in [-1, 0, 3] {
            let oracle = solve_system(&f.ctx, &f.cover, deg0).unwrap();
            let closed: Vec<_> = (0..f.ctx.rational.len())
                .map(|j| multiplicity_rational_q(&f.ctx, &f.cover, deg0, j).unwrap())
                .collect();
            assert_eq!(oracle, closed, "{}", spec.name);
        }
    }
}

#[test]
fn realizability() {
    for spec in [fixtures::example1(), fixtures::example3(), fixtures::example2(5)] {
        let f = spec.build().unwrap();
        assert!(matches!(
            realizability_check(&f.ctx, &f.cover).unwrap(),
            Realizability::Realizable(_)
        ));
    }
    let ctx = GroupContext::new(constructions::cyclic(3)).unwrap();
    let a = ctx.group.eval_word("a").unwrap();
    let cover = CoverData::new(&ctx.subgroups, 0, &[(a, 1), (a, 1)]).unwrap();
    assert_eq!(realizability_check(&ctx, &cover).unwrap(), Realizability::NotRealizable);
    let cover = CoverData::new(&ctx.subgroups, 1, &[(a, 1)]).unwrap();
    assert_eq!(realizability_check(&ctx, &cover).unwrap(), Realizability::NotRealizable);

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for inst in random_instances(&mut rng, 15).unwrap() {
        let verdict = realizability_check(&inst.ctx, &inst.cover).unwrap();
        assert!(
            !matches!(verdict, Realizability::NotRealizable),
            "{}",
            inst.recipe.name()
        );
    }
}

/// Branch data that passes the Hurwitz integrality checks for `X` but
/// admits no generating vector. Either some intermediate quotient `X/H_ℓ`
/// gets an impossible genus, which the oracle reports, or the linear-system
/// solution still equals the closed form, since both only see the counts
/// `R_ℓ`.
#[test]
fn oracle_on_non_realizable_data() {
    use equirr_core::Error;
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let groups = [
        constructions::cyclic(3),
        constructions::cyclic(4),
        constructions::cyclic(6),
        constructions::klein4(),
        constructions::dihedral(3),
        constructions::dihedral(4),
    ];
    let (mut rejected, mut agreed) = (0, 0);
    for g in groups {
        let ctx = GroupContext::new(g).unwrap();
        let n = ctx.group.order();
        for _ in 0..60 {
            let r = rng.gen_range(1..=4);
            let points: Vec<(usize, i64)> = (0..r).map(|_| (rng.gen_range(1..n), 1)).collect();
            let genus = rng.gen_range(0..=1);
            let Ok(cover) = CoverData::new(&ctx.subgroups, genus, &points) else {
                continue;
            };
            if realizability_check(&ctx, &cover).unwrap() != Realizability::NotRealizable {
                continue;
            }
            match solve_system(&ctx, &cover, 0) {
                Err(Error::InconsistentCover(_)) => rejected += 1,
                Err(e) => panic!("{e}"),
                Ok(_) => {
                    agreed += 1;
                    for deg0 in [-2, 0, 4] {
                        let oracle = solve_system(&ctx, &cover, deg0).unwrap();
                        let closed: Vec<_> = (0..ctx.rational.len())
                            .map(|j| multiplicity_rational_q(&ctx, &cover, deg0, j).unwrap())
                            .collect();
                        assert_eq!(oracle, closed, "{n} {points:?} g_Y={genus}");
                    }
                }
            }
        }
    }
    println!("non-realizable: {rejected} rejected by quotient genera, {agreed} agree");
    assert!(rejected + agreed >= 10);
}
