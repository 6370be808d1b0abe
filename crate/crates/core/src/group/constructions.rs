//! Standard permutation groups used by the built-in fixtures and the test
//! corpus.

use super::{FiniteGroup, Permutation, DEFAULT_MAX_ORDER};

fn build(degree: usize, gens: &[(&str, &str)]) -> FiniteGroup {
    let gens: Vec<(String, Permutation)> = gens
        .iter()
        .map(|(name, cycles)| {
            (
                name.to_string(),
                Permutation::from_cycles(degree, cycles).expect("valid built-in permutation"),
            )
        })
        .collect();
    FiniteGroup::from_generators(&gens, DEFAULT_MAX_ORDER).expect("built-in group")
}

fn cycle(points: impl Iterator<Item = usize>) -> String {
    let body: Vec<String> = points.map(|p| p.to_string()).collect();
    format!("({})", body.join(" "))
}

/// Cyclic group of order `n` acting regularly; generator `a`.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let c = if n == 1 { "()".to_string() } else { cycle(0..n) };
    build(n, &[("a", &c)])
}

/// `C2 × C2` with generators `a`, `b`; elements indexed `e, a, b, ab`.
pub fn klein4() -> FiniteGroup {
    build(4, &[("a", "(0 1)(2 3)"), ("b", "(0 2)(1 3)")])
}

/// The nonabelian group of order 21, `C7 ⋊ C3`, generated by `s` of order 3
/// and `t` of order 7 with `s⁻¹ t s = t⁴`.
pub fn g21() -> FiniteGroup {
    build(7, &[("s", "(1 4 2)(3 5 6)"), ("t", "(0 1 2 3 4 5 6)")])
}

/// Dihedral group of order `2n` (symmetries of an `n`-gon), generators
/// rotation `r` and reflection `f`.
pub fn dihedral(n: usize) -> FiniteGroup {
    assert!(n >= 2);
    let r = cycle(0..n);
    let mut f = String::new();
    for i in 1..n {
        let j = n - i;
        if i < j {
            f.push_str(&format!("({i} {j})"));
        }
    }
    if n == 2 {
        return build(4, &[("r", "(0 1)(2 3)"), ("f", "(0 2)(1 3)")]);
    }
    build(n, &[("r", &r), ("f", &f)])
}

pub fn symmetric(n: usize) -> FiniteGroup {
    assert!(n >= 2);
    build(n, &[("a", &cycle(0..n)), ("b", "(0 1)")])
}

pub fn alternating(n: usize) -> FiniteGroup {
    assert!(n >= 3);
    let gens: Vec<(String, String)> = (2..n)
        .map(|k| (format!("a{}", k - 1), format!("(0 1 {k})")))
        .collect();
    let refs: Vec<(&str, &str)> = gens.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    build(n, &refs)
}

/// Quaternion group of order 8 acting regularly on 8 points.
pub fn quaternion() -> FiniteGroup {
    build(
        8,
        &[("i", "(0 1 2 3)(4 5 6 7)"), ("j", "(0 4 2 6)(1 7 3 5)")],
    )
}

/// Frobenius group `C5 ⋊ C4` of order 20 acting on 5 points.
pub fn frobenius20() -> FiniteGroup {
    build(5, &[("a", "(0 1 2 3 4)"), ("b", "(1 2 4 3)")])
}

/// Direct product of two permutation groups acting on disjoint point sets;
/// generator names get suffixes `1` and `2`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let pa = a.permutations().expect("permutation group");
    let pb = b.permutations().expect("permutation group");
    let da = pa[0].degree();
    let db = pb[0].degree();
    let total = da + db;
    let mut gens = Vec::new();
    for g in a.generators() {
        gens.push((format!("{}1", g.name), pa[g.element].shifted(0, total)));
    }
    for g in b.generators() {
        gens.push((format!("{}2", g.name), pb[g.element].shifted(da, total)));
    }
    FiniteGroup::from_generators(&gens, DEFAULT_MAX_ORDER).expect("direct product")
}

/// Resolves a built-in group name: `cyclic:n`, `dihedral:n`,
/// `symmetric:n`, `alternating:n`, `klein4`, `g21`, `quaternion`,
/// `frobenius20`.
pub fn builtin(name: &str) -> Option<FiniteGroup> {
    let (kind, arg) = match name.split_once(':') {
        Some((k, a)) => (k, Some(a.trim().parse::<usize>().ok()?)),
        None => (name, None),
    };
    match (kind.trim(), arg) {
        ("cyclic", Some(n)) if (1..=DEFAULT_MAX_ORDER).contains(&n) => Some(cyclic(n)),
        ("dihedral", Some(n)) if (2..=DEFAULT_MAX_ORDER / 2).contains(&n) => Some(dihedral(n)),
        ("symmetric", Some(n)) if (2..=7).contains(&n) => Some(symmetric(n)),
        ("alternating", Some(n)) if (3..=7).contains(&n) => Some(alternating(n)),
        ("klein4", None) => Some(klein4()),
        ("g21", None) => Some(g21()),
        ("quaternion", None) => Some(quaternion()),
        ("frobenius20", None) => Some(frobenius20()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(cyclic(1).order(), 1);
        assert_eq!(cyclic(12).order(), 12);
        assert_eq!(klein4().order(), 4);
        assert_eq!(g21().order(), 21);
        assert_eq!(dihedral(2).order(), 4);
        assert_eq!(dihedral(5).order(), 10);
        assert_eq!(dihedral(6).order(), 12);
        assert_eq!(symmetric(4).order(), 24);
        assert_eq!(alternating(4).order(), 12);
        assert_eq!(alternating(5).order(), 60);
        assert_eq!(quaternion().order(), 8);
        assert_eq!(quaternion().exponent(), 4);
        assert_eq!(frobenius20().order(), 20);
        let p = direct_product(&cyclic(3), &symmetric(3));
        assert_eq!(p.order(), 18);
        assert_eq!(p.exponent(), 6);
    }

    #[test]
    fn builtin_names() {
        assert_eq!(builtin("cyclic:7").unwrap().order(), 7);
        assert_eq!(builtin("klein4").unwrap().order(), 4);
        assert_eq!(builtin("g21").unwrap().order(), 21);
        assert_eq!(builtin("dihedral:5").unwrap().order(), 10);
        assert!(builtin("cyclic").is_none());
        assert!(builtin("cyclic:x").is_none());
        assert!(builtin("klein4:2").is_none());
        assert!(builtin("cyclic:0").is_none());
    }

    #[test]
    fn klein_indexing() {
        let g = klein4();
        // e, a, b, ab
        assert_eq!(g.mul(1, 2), 3);
        assert_eq!(g.generators()[0].element, 1);
        assert_eq!(g.generators()[1].element, 2);
    }

    #[test]
    fn g21_relation() {
        let g = g21();
        let s = g.eval_word("s").unwrap();
        let t = g.eval_word("t").unwrap();
        assert_eq!(g.conjugate(t, g.inv(s)), g.pow(t, 4));
    }
}
