//! Dixon–Schneider computation of the irreducible characters.
//!
//! Work happens over `F_p` with `p ≡ 1 (mod exponent)` and `p > 2√|G|`. The
//! class-sum matrices act on the center of the group algebra; their common
//! eigenvectors are the central characters `ω_χ(K_r) = |C_r| χ(g_r) / χ(1)`.
//! Each eigenvector yields `χ` modulo `p`, and the eigenvalue multiplicities
//! of `ρ(g)` are recovered by a discrete Fourier transform over `⟨g⟩` and
//! lifted to small integers, giving exact cyclotomic values.

use num::BigRational;

use crate::arith::{inv_mod_prime, is_prime, mod_pow, mul_mod, primitive_root};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::ConjugacyClasses;

const PRIME_SEARCH_LIMIT: u64 = 1 << 40;

/// Smallest prime `p ≡ 1 (mod exponent)` with `p² > 4·order`.
pub fn choose_prime(exponent: u64, order: u64) -> Result<u64> {
    let mut p = exponent + 1;
    while p < PRIME_SEARCH_LIMIT {
        if (p as u128) * (p as u128) > 4 * order as u128 && is_prime(p) {
            return Ok(p);
        }
        p += exponent;
    }
    Err(Error::NoSuitablePrime(PRIME_SEARCH_LIMIT))
}

type Matrix = Vec<Vec<u64>>;

/// `A_j[r][s] = #{x ∈ C_j : x⁻¹ g_s ∈ C_r}`, the structure constants of
/// multiplication by the class sum `K_j`.
fn class_matrix(classes: &ConjugacyClasses, j: usize, p: u64) -> Matrix {
    let g = classes.group();
    let k = classes.len();
    let mut m = vec![vec![0u64; k]; k];
    for (s, &gs) in classes.representatives().iter().enumerate() {
        for &x in classes.members(j) {
            let r = classes.class_of(g.mul(g.inv(x), gs));
            m[r][s] += 1;
        }
    }
    for row in &mut m {
        for v in row.iter_mut() {
            *v %= p;
        }
    }
    m
}

/// Row-reduces `rows` in place; returns the pivot column of each nonzero row
/// and drops zero rows.
fn row_reduce(rows: &mut Matrix, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(i) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, i);
        let inv = inv_mod_prime(rows[r][c], p);
        for v in rows[r].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for col in 0..ncols {
                    let sub = mul_mod(f, rows[r][col], p);
                    rows[i][col] = (rows[i][col] + p - sub) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{u : m u = 0}`.
fn nullspace(m: &Matrix, p: u64) -> Matrix {
    let n = m.len();
    let mut rows = m.clone();
    let pivots = row_reduce(&mut rows, p);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut u = vec![0u64; n];
            u[f] = 1;
            for (row, &pc) in rows.iter().zip(&pivots) {
                u[pc] = (p - row[f]) % p;
            }
            u
        })
        .collect()
}

/// Characteristic polynomial (constant term first) via reduction to upper
/// Hessenberg form.
pub(crate) fn charpoly(m: &Matrix, p: u64) -> Vec<u64> {
    let n = m.len();
    let mut h = m.clone();
    for c in 0..n.saturating_sub(2) {
        let Some(i) = (c + 1..n).find(|&i| h[i][c] != 0) else {
            continue;
        };
        if i != c + 1 {
            h.swap(i, c + 1);
            for row in h.iter_mut() {
                row.swap(i, c + 1);
            }
        }
        let t_inv = inv_mod_prime(h[c + 1][c], p);
        for j in c + 2..n {
            let u = mul_mod(h[j][c], t_inv, p);
            if u == 0 {
                continue;
            }
            for col in 0..n {
                let sub = mul_mod(u, h[c + 1][col], p);
                h[j][col] = (h[j][col] + p - sub) % p;
            }
            for row in 0..n {
                let add = mul_mod(u, h[row][j], p);
                h[row][c + 1] = (h[row][c + 1] + add) % p;
            }
        }
    }
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        // (x - h[m-1][m-1]) * P_{m-1}
        let prev = &polys[m - 1];
        let mut next = vec![0u64; m + 1];
        let d = h[m - 1][m - 1];
        for (i, &c) in prev.iter().enumerate() {
            next[i + 1] = (next[i + 1] + c) % p;
            next[i] = (next[i] + p - mul_mod(d, c, p)) % p;
        }
        let mut t = 1u64;
        for i in 1..m {
            t = mul_mod(t, h[m - i][m - i - 1], p);
            let f = mul_mod(t, h[m - i - 1][m - 1], p);
            if f == 0 {
                continue;
            }
            for (idx, &c) in polys[m - i - 1].iter().enumerate() {
                next[idx] = (next[idx] + p - mul_mod(f, c, p)) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().expect("at least the constant polynomial")
}

fn eval_poly(poly: &[u64], x: u64, p: u64) -> u64 {
    poly.iter()
        .rev()
        .fold(0u64, |acc, &c| (mul_mod(acc, x, p) + c) % p)
}

/// Splits an invariant subspace (rows = basis vectors) into eigenspaces of
/// `a`. Returns `None` when `a` acts as a scalar on it.
fn split(a: &Matrix, basis: &Matrix, p: u64) -> Result<Option<Vec<Matrix>>> {
    let mut rows = basis.clone();
    let pivots = row_reduce(&mut rows, p);
    let dim = rows.len();
    let k = a.len();
    // Coordinates of a·b_i are read off at the pivot columns.
    let mut restricted = vec![vec![0u64; dim]; dim];
    for (i, b) in rows.iter().enumerate() {
        for (j, &pc) in pivots.iter().enumerate() {
            let mut acc = 0u64;
            for (s, &bs) in b.iter().enumerate().take(k) {
                if bs != 0 {
                    acc = (acc + mul_mod(a[pc][s], bs, p)) % p;
                }
            }
            restricted[j][i] = acc;
        }
    }
    let poly = charpoly(&restricted, p);
    let roots: Vec<u64> = (0..p).filter(|&x| eval_poly(&poly, x, p) == 0).collect();
    if roots.len() <= 1 {
        if roots.is_empty() {
            return Err(Error::TableComputationFailed(
                "class matrix has no eigenvalue in the prime field".into(),
            ));
        }
        return Ok(None);
    }
    let mut pieces = Vec::with_capacity(roots.len());
    let mut total = 0;
    for &lambda in &roots {
        let mut shifted = restricted.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] = (row[i] + p - lambda) % p;
        }
        let null = nullspace(&shifted, p);
        total += null.len();
        let vectors: Matrix = null
            .iter()
            .map(|u| {
                let mut v = vec![0u64; k];
                for (ui, b) in u.iter().zip(&rows) {
                    if *ui != 0 {
                        for (vs, &bs) in v.iter_mut().zip(b) {
                            *vs = (*vs + mul_mod(*ui, bs, p)) % p;
                        }
                    }
                }
                v
            })
            .collect();
        pieces.push(vectors);
    }
    if total != dim {
        return Err(Error::TableComputationFailed(
            "class matrix is not diagonalizable over the prime field".into(),
        ));
    }
    Ok(Some(pieces))
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Irreducible characters as rows of values over the classes, in the order
/// the eigenspace splitting produced them.
pub fn dixon_schneider(classes: &ConjugacyClasses) -> Result<Vec<Vec<Cyclotomic>>> {
    let group = classes.group();
    let order = group.order() as u64;
    let exponent = group.exponent();
    let k = classes.len();
    let p = choose_prime(exponent, order)?;

    let identity: Matrix = (0..k)
        .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut done: Vec<Vec<u64>> = Vec::new();
    let mut pending: Vec<Matrix> = vec![identity];
    for j in 1..k {
        if pending.is_empty() {
            break;
        }
        let a = class_matrix(classes, j, p);
        let mut next = Vec::new();
        for space in pending {
            match split(&a, &space, p)? {
                None => next.push(space),
                Some(pieces) => {
                    for piece in pieces {
                        if piece.len() == 1 {
                            done.push(piece.into_iter().next().expect("one vector"));
                        } else {
                            next.push(piece);
                        }
                    }
                }
            }
        }
        pending = next;
    }
    for space in pending {
        if space.len() == 1 {
            done.push(space.into_iter().next().expect("one vector"));
        } else {
            return Err(Error::TableComputationFailed(format!(
                "eigenspace of dimension {} survived all class matrices",
                space.len()
            )));
        }
    }
    if done.len() != k {
        return Err(Error::TableComputationFailed(format!(
            "found {} characters for {k} classes",
            done.len()
        )));
    }

    let root = primitive_root(p);
    let max_degree = isqrt(order);
    done.into_iter()
        .map(|v| lift_character(classes, &v, p, root, max_degree))
        .collect()
}

fn lift_character(
    classes: &ConjugacyClasses,
    v: &[u64],
    p: u64,
    root: u64,
    max_degree: u64,
) -> Result<Vec<Cyclotomic>> {
    let group = classes.group();
    let order = group.order() as u64;
    let exponent = group.exponent();
    let sizes = classes.sizes();
    if v[0] == 0 {
        return Err(Error::TableComputationFailed(
            "central character vanishes at the identity".into(),
        ));
    }
    let norm = inv_mod_prime(v[0], p);
    let omega: Vec<u64> = v.iter().map(|&x| mul_mod(x, norm, p)).collect();

    // χ(1)² = |G| / Σ_r ω_r ω_{r'} / |C_r|
    let mut s = 0u64;
    for r in 0..omega.len() {
        let rinv = classes.inverse_class(r);
        let term = mul_mod(
            mul_mod(omega[r], omega[rinv], p),
            inv_mod_prime(sizes[r] as u64 % p, p),
            p,
        );
        s = (s + term) % p;
    }
    if s == 0 {
        return Err(Error::TableComputationFailed("degenerate norm".into()));
    }
    let deg_sq = mul_mod(order % p, inv_mod_prime(s, p), p);
    let degree = (1..=max_degree)
        .find(|&d| mul_mod(d, d, p) == deg_sq && order % d == 0)
        .ok_or_else(|| Error::TableComputationFailed("no integral degree".into()))?;

    let chi_mod: Vec<u64> = omega
        .iter()
        .zip(sizes)
        .map(|(&w, &size)| mul_mod(mul_mod(w, degree, p), inv_mod_prime(size as u64 % p, p), p))
        .collect();

    let mut values = Vec::with_capacity(omega.len());
    for &g in classes.representatives() {
        let o = group.element_order(g) as u64;
        let z = mod_pow(root, (p - 1) / o, p);
        let z_inv = inv_mod_prime(z, p);
        let o_inv = inv_mod_prime(o % p, p);
        let powers = group.cyclic_powers(g);
        let step = exponent / o;
        let mut terms = Vec::new();
        for kk in 0..o {
            let w = mod_pow(z_inv, kk, p);
            let mut acc = 0u64;
            let mut wj = 1u64;
            for &x in &powers {
                acc = (acc + mul_mod(chi_mod[classes.class_of(x)], wj, p)) % p;
                wj = mul_mod(wj, w, p);
            }
            let mult = mul_mod(acc, o_inv, p);
            if mult > degree {
                return Err(Error::TableComputationFailed(format!(
                    "eigenvalue multiplicity {mult} exceeds degree {degree}"
                )));
            }
            if mult != 0 {
                terms.push((
                    (kk * step) as i64,
                    BigRational::from_integer((mult as i64).into()),
                ));
            }
        }
        values.push(Cyclotomic::from_terms(exponent, &terms)?);
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det_mod(m: &Matrix, p: u64) -> u64 {
        let n = m.len();
        let mut a = m.clone();
        let mut det = 1u64;
        for c in 0..n {
            let Some(i) = (c..n).find(|&i| a[i][c] != 0) else {
                return 0;
            };
            if i != c {
                a.swap(i, c);
                det = (p - det) % p;
            }
            det = mul_mod(det, a[c][c], p);
            let inv = inv_mod_prime(a[c][c], p);
            for r in c + 1..n {
                let f = mul_mod(a[r][c], inv, p);
                for col in c..n {
                    let sub = mul_mod(f, a[c][col], p);
                    a[r][col] = (a[r][col] + p - sub) % p;
                }
            }
        }
        det
    }

    #[test]
    fn charpoly_matches_determinant() {
        let p = 101;
        let m: Matrix = vec![
            vec![3, 1, 4, 1],
            vec![5, 9, 2, 6],
            vec![5, 3, 5, 8],
            vec![9, 7, 9, 3],
        ];
        let poly = charpoly(&m, p);
        assert_eq!(poly.len(), 5);
        assert_eq!(poly[4], 1);
        for x in 0..p {
            let mut shifted = m.clone();
            for (i, row) in shifted.iter_mut().enumerate() {
                row[i] = (row[i] + p - x) % p;
            }
            // det(M - x) = (-1)^n charpoly(x); n = 4.
            assert_eq!(det_mod(&shifted, p), eval_poly(&poly, x, p));
        }
    }

    #[test]
    fn nullspace_dimension() {
        let p = 7;
        let m: Matrix = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 0, 0]];
        let null = nullspace(&m, p);
        assert_eq!(null.len(), 2);
        for u in &null {
            for row in &m {
                let dot = row
                    .iter()
                    .zip(u)
                    .fold(0, |acc, (a, b)| (acc + a * b) % p);
                assert_eq!(dot, 0);
            }
        }
    }

    #[test]
    fn prime_choice() {
        assert_eq!(choose_prime(2, 4).unwrap(), 5);
        assert_eq!(choose_prime(21, 21).unwrap(), 43);
        assert_eq!(choose_prime(30, 60).unwrap(), 31);
        assert_eq!(choose_prime(1, 1).unwrap(), 3);
    }
}
