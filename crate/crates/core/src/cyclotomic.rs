//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! A value is stored in the power basis `{ζ_N^i : 0 <= i < φ(N)}` with
//! coefficients reduced modulo the `N`-th cyclotomic polynomial, so equal
//! values of the same conductor have identical coefficient vectors. Values of
//! different conductors are lifted to the lcm before they are combined.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{self, euler_phi, gcd, lcm};
use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Largest conductor accepted by the constructors.
pub const MAX_CONDUCTOR: u64 = 10_000;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders a rational as `p` or `p/q`.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

fn phi_cache() -> &'static RwLock<HashMap<u64, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients (constant term first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<i64>> {
    if let Some(p) = phi_cache().read().expect("cache poisoned").get(&n) {
        return Arc::clone(p);
    }
    // x^n - 1 divided by every Φ_d with d | n, d < n.
    let mut poly = vec![0i128; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in arith::divisors(n) {
        if d == n {
            continue;
        }
        let divisor = cyclotomic_polynomial(d);
        poly = exact_div_monic(&poly, &divisor);
    }
    let coeffs: Vec<i64> = poly
        .into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow"))
        .collect();
    let coeffs = Arc::new(coeffs);
    phi_cache()
        .write()
        .expect("cache poisoned")
        .insert(n, Arc::clone(&coeffs));
    coeffs
}

fn exact_div_monic(num: &[i128], den: &[i64]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut quot = vec![0i128; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj as i128;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// An exact element of `Q(ζ_N)`.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero(conductor: u64) -> Self {
        Cyclotomic {
            conductor,
            coeffs: vec![Rational::zero(); euler_phi(conductor) as usize],
        }
    }

    pub fn one(conductor: u64) -> Self {
        Self::from_rational_in(conductor, Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(integer(n))
    }

    /// The rational `q` viewed as an element of `Q(ζ_N)`.
    pub fn from_rational_in(conductor: u64, q: Rational) -> Self {
        let mut z = Self::zero(conductor);
        z.coeffs[0] = q;
        z
    }

    /// `ζ_N^k` in canonical form.
    pub fn zeta(conductor: u64, k: i64) -> Result<Self> {
        check_conductor(conductor)?;
        let mut folded = vec![Rational::zero(); conductor as usize];
        folded[k.rem_euclid(conductor as i64) as usize] = Rational::one();
        Ok(Self::reduce(conductor, folded))
    }

    /// Builds `Σ c_i ζ_N^{e_i}` from arbitrary exponent/coefficient pairs.
    pub fn from_terms(conductor: u64, terms: &[(i64, Rational)]) -> Result<Self> {
        check_conductor(conductor)?;
        let mut folded = vec![Rational::zero(); conductor as usize];
        for (e, c) in terms {
            folded[e.rem_euclid(conductor as i64) as usize] += c;
        }
        Ok(Self::reduce(conductor, folded))
    }

    /// Builds a value directly from power-basis coefficients.
    pub fn from_coeffs(conductor: u64, coeffs: Vec<Rational>) -> Result<Self> {
        check_conductor(conductor)?;
        let phi = euler_phi(conductor) as usize;
        if coeffs.len() > phi {
            return Err(Error::InvalidCharacterTable(format!(
                "{} coefficients given for conductor {conductor} (basis size {phi})",
                coeffs.len()
            )));
        }
        let mut coeffs = coeffs;
        coeffs.resize(phi, Rational::zero());
        Ok(Cyclotomic { conductor, coeffs })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Power-basis coefficients, length `φ(N)`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Folds a length-`N` vector indexed by exponent into canonical form.
    fn reduce(conductor: u64, mut folded: Vec<Rational>) -> Self {
        let phi = euler_phi(conductor) as usize;
        let poly = cyclotomic_polynomial(conductor);
        for i in (phi..folded.len()).rev() {
            if folded[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut folded[i]);
            for (j, &pj) in poly.iter().enumerate().take(phi) {
                if pj != 0 {
                    folded[i - phi + j] -= &c * BigInt::from(pj);
                }
            }
        }
        folded.truncate(phi);
        Cyclotomic {
            conductor,
            coeffs: folded,
        }
    }

    /// Re-expresses the value in `Q(ζ_M)`; `M` must be a multiple of the
    /// current conductor.
    pub fn lift(&self, conductor: u64) -> Self {
        assert!(
            conductor % self.conductor == 0,
            "cannot lift conductor {} to {conductor}",
            self.conductor
        );
        if conductor == self.conductor {
            return self.clone();
        }
        let step = (conductor / self.conductor) as usize;
        let mut folded = vec![Rational::zero(); conductor as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                folded[i * step] = c.clone();
            }
        }
        Self::reduce(conductor, folded)
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let n = lcm(a.conductor, b.conductor);
        (a.lift(n), b.lift(n))
    }

    /// Image under the automorphism `ζ_N ↦ ζ_N^k`.
    pub fn galois_apply(&self, k: i64) -> Result<Self> {
        let n = self.conductor;
        if gcd(k.unsigned_abs() % n.max(1), n) != 1 && n != 1 {
            return Err(Error::NotGaloisElement { k, conductor: n });
        }
        if n == 1 {
            return Ok(self.clone());
        }
        let mut folded = vec![Rational::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let e = (i as i64 * k).rem_euclid(n as i64) as usize;
                folded[e] += c;
            }
        }
        Ok(Self::reduce(n, folded))
    }

    /// Complex conjugate, the Galois element `k = -1`.
    pub fn conj(&self) -> Self {
        self.galois_apply(-1).expect("-1 is always a unit")
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Sum of all Galois conjugates; always rational.
    pub fn trace(&self) -> Rational {
        let n = self.conductor;
        let mut acc = Cyclotomic::zero(n);
        for k in 1..=n.max(1) {
            if gcd(k, n) == 1 {
                acc = &acc + &self.galois_apply(k as i64).expect("unit");
            }
        }
        acc.as_rational().expect("trace is rational")
    }

    /// Multiplicative inverse via the product of the nontrivial conjugates.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.conductor;
        let mut others = Cyclotomic::one(n);
        for k in 2..n {
            if gcd(k, n) == 1 {
                others = &others * &self.galois_apply(k as i64)?;
            }
        }
        let norm = (&others * self)
            .as_rational()
            .expect("norm is rational");
        Ok(others.scale(&(Rational::one() / norm)))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    /// The same value expressed in the smallest cyclotomic field containing
    /// it.
    pub fn reduced(&self) -> Self {
        let n = self.conductor;
        if self.is_rational() {
            return Cyclotomic::from_rational(self.coeffs[0].clone());
        }
        for d in arith::divisors(n) {
            if d == n {
                break;
            }
            let fixed = (1..n)
                .filter(|&k| k % d == 1 % d && gcd(k, n) == 1)
                .all(|k| self.galois_apply(k as i64).expect("unit") == *self);
            if fixed {
                if let Some(v) = self.descend(d) {
                    return v;
                }
            }
        }
        self.clone()
    }

    /// Solves for coordinates in `Q(ζ_d)`, `d | N`, given that the value lies
    /// in that subfield.
    fn descend(&self, d: u64) -> Option<Self> {
        let phi_d = euler_phi(d) as usize;
        let phi_n = self.coeffs.len();
        // Columns: lifted basis vectors ζ_d^i; augmented with the target.
        let mut rows: Vec<Vec<Rational>> = vec![vec![Rational::zero(); phi_d + 1]; phi_n];
        for i in 0..phi_d {
            let col = Cyclotomic::zeta(d, i as i64).ok()?.lift(self.conductor);
            for (r, c) in col.coeffs.iter().enumerate() {
                rows[r][i] = c.clone();
            }
        }
        for (r, c) in self.coeffs.iter().enumerate() {
            rows[r][phi_d] = c.clone();
        }
        let mut pivot_row = 0;
        let mut pivots = Vec::with_capacity(phi_d);
        for c in 0..phi_d {
            let found = (pivot_row..phi_n).find(|&r| !rows[r][c].is_zero())?;
            rows.swap(pivot_row, found);
            let inv = Rational::one() / rows[pivot_row][c].clone();
            for v in rows[pivot_row].iter_mut() {
                *v *= &inv;
            }
            for r in 0..phi_n {
                if r != pivot_row && !rows[r][c].is_zero() {
                    let f = rows[r][c].clone();
                    for j in 0..=phi_d {
                        let sub = &f * &rows[pivot_row][j];
                        rows[r][j] -= sub;
                    }
                }
            }
            pivots.push(pivot_row);
            pivot_row += 1;
        }
        if rows[pivot_row..].iter().any(|r| !r[phi_d].is_zero()) {
            return None;
        }
        let coeffs = pivots.iter().map(|&r| rows[r][phi_d].clone()).collect();
        Some(Cyclotomic {
            conductor: d,
            coeffs,
        })
    }

    /// Total order on values of equal conductor: lexicographic on the
    /// power-basis coefficients.
    pub fn cmp_coeffs(&self, other: &Self) -> Ordering {
        let (a, b) = Self::common(self, other);
        a.coeffs.cmp(&b.coeffs)
    }
}

fn check_conductor(n: u64) -> Result<()> {
    if n == 0 || n > MAX_CONDUCTOR {
        return Err(Error::ConductorTooLarge {
            conductor: n,
            bound: MAX_CONDUCTOR,
        });
    }
    Ok(())
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.conductor != rhs.conductor {
            let (a, b) = Cyclotomic::common(self, rhs);
            return &a + &b;
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        if self.conductor == rhs.conductor {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x += y;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.conductor != rhs.conductor {
            let (a, b) = Cyclotomic::common(self, rhs);
            return &a * &b;
        }
        let n = self.conductor as usize;
        if self.is_rational() {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.is_rational() {
            return self.scale(&rhs.coeffs[0]);
        }
        let mut folded = vec![Rational::zero(); n];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    folded[(i + j) % n] += x * y;
                }
            }
        }
        Cyclotomic::reduce(self.conductor, folded)
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

/// Renders `a0 + a1*z7 + a2*z7^2 + ...` in the smallest conductor, skipping
/// zero terms.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let this = self.reduced();
        let mut out = String::new();
        for (i, c) in this.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = format_rational(&c.abs());
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let root = match i {
                0 => String::new(),
                1 => format!("z{}", this.conductor),
                _ => format!("z{}^{}", this.conductor, i),
            };
            if i == 0 {
                out.push_str(&mag);
            } else if mag == "1" {
                out.push_str(&root);
            } else {
                out.push_str(&format!("{mag}*{root}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

#[derive(Serialize, Deserialize)]
struct CyclotomicJson {
    conductor: u64,
    coeffs: BTreeMap<String, String>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        // Keys are sorted numerically, not as strings.
        use serde::ser::SerializeMap;
        struct Coeffs<'a>(&'a [Rational]);
        impl Serialize for Coeffs<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let nonzero: Vec<_> = self
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                let mut map = serializer.serialize_map(Some(nonzero.len()))?;
                for (i, c) in nonzero {
                    map.serialize_entry(&i.to_string(), &format_rational(c))?;
                }
                map.end()
            }
        }
        let this = self.reduced();
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("conductor", &this.conductor)?;
        map.serialize_entry("coeffs", &Coeffs(&this.coeffs))?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = CyclotomicJson::deserialize(deserializer)?;
        check_conductor(raw.conductor).map_err(D::Error::custom)?;
        let phi = euler_phi(raw.conductor) as usize;
        let mut coeffs = vec![Rational::zero(); phi];
        for (k, v) in raw.coeffs {
            let i: usize = k
                .parse()
                .map_err(|_| D::Error::custom(format!("bad coefficient index {k:?}")))?;
            if i >= phi {
                return Err(D::Error::custom(format!(
                    "coefficient index {i} outside basis of size {phi}"
                )));
            }
            coeffs[i] = parse_rational(&v)
                .ok_or_else(|| D::Error::custom(format!("bad rational {v:?}")))?;
        }
        Ok(Cyclotomic {
            conductor: raw.conductor,
            coeffs,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, k: i64) -> Cyclotomic {
        Cyclotomic::zeta(n, k).unwrap()
    }

    fn sum(n: u64, ks: &[i64]) -> Cyclotomic {
        ks.iter().fold(Cyclotomic::zero(n), |acc, &k| &acc + &z(n, k))
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        let p105 = cyclotomic_polynomial(105);
        assert_eq!(p105.len(), 49);
        assert!(p105.contains(&-2));
    }

    #[test]
    fn zeta_basics() {
        assert_eq!(z(1, 0), Cyclotomic::from_integer(1));
        assert_eq!(z(4, 2), Cyclotomic::from_integer(-1));
        assert_eq!(&z(3, 1) + &z(3, 2), Cyclotomic::from_integer(-1));
        assert_eq!(z(5, 0), Cyclotomic::one(5));
        assert!(matches!(
            Cyclotomic::zeta(10_001, 1),
            Err(Error::ConductorTooLarge { .. })
        ));
    }

    #[test]
    fn add_and_mul_examples() {
        assert_eq!(&z(7, 1) + &Cyclotomic::zero(1), z(7, 1));
        let a = sum(7, &[1, 2, 4]);
        let b = sum(7, &[3, 5, 6]);
        assert_eq!(&a * &b, Cyclotomic::from_integer(2));
        assert_eq!(&a + &b, Cyclotomic::from_integer(-1));
        assert_eq!(&z(3, 1) * &z(3, 2), Cyclotomic::from_integer(1));
    }

    #[test]
    fn mixed_conductors_lift() {
        // ζ_3 = ζ_21^7 and ζ_7 = ζ_21^3.
        assert_eq!(z(3, 1), z(21, 7));
        assert_eq!(&z(3, 1) * &z(7, 1), z(21, 10));
        assert_eq!((&z(3, 1) * &z(7, 1)).conductor(), 21);
    }

    #[test]
    fn galois_examples() {
        assert_eq!(z(7, 1).galois_apply(2).unwrap(), z(7, 2));
        let q = Cyclotomic::from_rational(rational(5, 3));
        assert_eq!(q.galois_apply(4).unwrap(), q);
        let x = &z(3, 1) + &z(3, 2).scale(&integer(2));
        let y = &z(3, 2) + &z(3, 1).scale(&integer(2));
        assert_eq!(x.galois_apply(2).unwrap(), y);
        assert!(matches!(
            z(6, 1).galois_apply(3),
            Err(Error::NotGaloisElement { .. })
        ));
    }

    #[test]
    fn rationality() {
        assert_eq!(sum(5, &[1, 2, 3, 4]).as_rational(), Some(integer(-1)));
        assert_eq!(sum(7, &[3, 5, 6]).as_rational(), None);
        assert_eq!(Cyclotomic::zero(1).as_rational(), Some(integer(0)));
    }

    #[test]
    fn inverse_and_division() {
        let a = &z(7, 1) + &Cyclotomic::from_integer(2);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Cyclotomic::one(7));
        assert_eq!(Cyclotomic::zero(5).inverse(), Err(Error::DivisionByZero));
        assert_eq!(
            z(4, 1).checked_div(&Cyclotomic::zero(4)),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for n in 2..=60u64 {
            let total: Vec<i64> = (0..n as i64).collect();
            assert!(sum(n, &total).is_zero(), "n = {n}");
        }
    }

    #[test]
    fn display_form() {
        assert_eq!(Cyclotomic::from_rational(rational(-7, 2)).to_string(), "-7/2");
        assert_eq!(z(7, 1).to_string(), "z7");
        let x = &Cyclotomic::from_integer(1) + &z(7, 2).scale(&integer(-3));
        assert_eq!(x.to_string(), "1 - 3*z7^2");
        assert_eq!(Cyclotomic::zero(3).to_string(), "0");
    }

    #[test]
    fn json_form() {
        let x = &z(7, 1).scale(&rational(1, 2)) + &Cyclotomic::from_integer(3);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"conductor":7,"coeffs":{"0":"3","1":"1/2"}}"#);
        let back: Cyclotomic = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
        let bad = r#"{"conductor":7,"coeffs":{"6":"1"}}"#;
        assert!(serde_json::from_str::<Cyclotomic>(bad).is_err());
    }
}
