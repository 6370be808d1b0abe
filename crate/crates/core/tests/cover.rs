use equirr_core::cover::CoverData;
use equirr_core::fixtures;
use equirr_core::Error;

#[test]
fn example1_genus_report() {
    let f = fixtures::example1().build().unwrap();
    let report = f.cover.genus_report().unwrap();
    assert_eq!(report.genus_top, 2);
    let genera: Vec<i64> = report.quotients.iter().map(|q| q.genus).collect();
    assert_eq!(genera, vec![2, 0, 1, 1]);
    // Over each branch point of X/⟨a⟩ → P^1 the fibre sizes times the
    // ramification indices sum to the degree 2.
    for q in &report.quotients {
        for fiber in &q.fibers {
            let total: usize = fiber.iter().map(|p| p.ramification_index).sum();
            assert_eq!(total as i64, f.cover.degree_over_base(q.class));
        }
    }
}

#[test]
fn riemann_roch_dimensions() {
    let f = fixtures::example3().build().unwrap();
    // The trivial subgroup sees X itself, of genus 3.
    assert_eq!(f.cover.riemann_roch_dim(0, 1).unwrap(), 21 + 1 - 3);
    let genera: Vec<i64> = (0..f.cover.subgroups().len())
        .map(|l| f.cover.quotient_genus(l).unwrap())
        .collect();
    assert_eq!(genera, vec![3, 1, 0]);
}

#[test]
fn rejects_inconsistent_branch_data() {
    let f = fixtures::example1().build().unwrap();
    let ctx = &f.ctx;
    let a = ctx.group.eval_word("a").unwrap();
    assert!(matches!(
        CoverData::new(&ctx.subgroups, 0, &[(a, 1)]),
        Err(Error::InconsistentCover(_))
    ));
    assert!(matches!(
        CoverData::new(&ctx.subgroups, -1, &[]),
        Err(Error::InvalidBranchData(_))
    ));
    assert!(matches!(
        CoverData::new(&ctx.subgroups, 0, &[(0, 1)]),
        Err(Error::InvalidBranchData(_))
    ));
    assert!(matches!(
        CoverData::new(&ctx.subgroups, 0, &[(a, 2), (a, 1)]),
        Err(Error::InvalidBranchData(_))
    ));
}
