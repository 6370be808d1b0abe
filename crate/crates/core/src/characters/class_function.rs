use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num::{One, Zero};

use crate::cyclotomic::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::group::{ConjugacyClasses, FiniteGroup, Subgroup};

fn same_parent(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A function on a group that is constant on conjugacy classes, stored as
/// one value per class.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    classes: Arc<ConjugacyClasses>,
    values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn new(classes: &Arc<ConjugacyClasses>, values: Vec<Cyclotomic>) -> Result<Self> {
        if values.len() != classes.len() {
            return Err(Error::IncompatibleClassFunctions);
        }
        Ok(ClassFunction {
            classes: Arc::clone(classes),
            values,
        })
    }

    pub fn zero(classes: &Arc<ConjugacyClasses>) -> Self {
        let n = classes.group().exponent();
        ClassFunction {
            classes: Arc::clone(classes),
            values: vec![Cyclotomic::zero(n); classes.len()],
        }
    }

    pub fn trivial(classes: &Arc<ConjugacyClasses>) -> Self {
        let n = classes.group().exponent();
        ClassFunction {
            classes: Arc::clone(classes),
            values: vec![Cyclotomic::one(n); classes.len()],
        }
    }

    /// Character of the regular representation `k[G]`.
    pub fn regular(classes: &Arc<ConjugacyClasses>) -> Self {
        let mut f = Self::zero(classes);
        let order = classes.group().order() as i64;
        f.values[0] = Cyclotomic::from_rational_in(
            classes.group().exponent(),
            Rational::from_integer(order.into()),
        );
        f
    }

    /// Builds a class function from a per-element rule; the rule is
    /// evaluated on class representatives only.
    pub fn from_fn(
        classes: &Arc<ConjugacyClasses>,
        mut f: impl FnMut(usize) -> Cyclotomic,
    ) -> Self {
        let values = classes.representatives().iter().map(|&g| f(g)).collect();
        ClassFunction {
            classes: Arc::clone(classes),
            values,
        }
    }

    pub fn classes(&self) -> &Arc<ConjugacyClasses> {
        &self.classes
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    pub fn at_element(&self, g: usize) -> &Cyclotomic {
        &self.values[self.classes.class_of(g)]
    }

    /// Value at the identity, when rational.
    pub fn degree(&self) -> Option<Rational> {
        self.values[0].as_rational()
    }

    pub fn is_rational(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_rational)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_zero)
    }

    fn check_same(&self, other: &ClassFunction) -> Result<()> {
        if self.classes.same_group(&other.classes) {
            Ok(())
        } else {
            Err(Error::IncompatibleClassFunctions)
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        ClassFunction {
            classes: Arc::clone(&self.classes),
            values: self.values.iter().map(|v| v.scale(q)).collect(),
        }
    }

    pub fn try_add(&self, other: &ClassFunction) -> Result<Self> {
        self.check_same(other)?;
        Ok(ClassFunction {
            classes: Arc::clone(&self.classes),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Pointwise product (tensor product of representations).
    pub fn try_mul(&self, other: &ClassFunction) -> Result<Self> {
        self.check_same(other)?;
        Ok(ClassFunction {
            classes: Arc::clone(&self.classes),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    pub fn galois_apply(&self, k: i64) -> Result<Self> {
        Ok(ClassFunction {
            classes: Arc::clone(&self.classes),
            values: self
                .values
                .iter()
                .map(|v| v.galois_apply(k))
                .collect::<Result<_>>()?,
        })
    }

    pub fn conj(&self) -> Self {
        self.galois_apply(-1).expect("-1 is a unit")
    }

    /// `(1/|G|) Σ_a f(a) · conj(g(a))`.
    pub fn inner_product(&self, other: &ClassFunction) -> Result<Cyclotomic> {
        self.check_same(other)?;
        let mut acc = Cyclotomic::zero(self.classes.group().exponent());
        for ((a, b), &size) in self
            .values
            .iter()
            .zip(&other.values)
            .zip(self.classes.sizes())
        {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let term = a * &b.conj();
            acc += &term.scale(&Rational::from_integer((size as i64).into()));
        }
        let order = Rational::from_integer((self.classes.group().order() as i64).into());
        Ok(acc.scale(&(Rational::one() / order)))
    }

    /// Restriction to `h`, as a class function on `h`'s own classes.
    pub fn restrict(&self, h: &Subgroup) -> Result<ClassFunction> {
        if !same_parent(h.parent(), self.classes.group()) {
            return Err(Error::NotASubgroup(
                "subgroup of a different group".into(),
            ));
        }
        let local = h.local_classes();
        let values = local
            .representatives()
            .iter()
            .map(|&i| self.at_element(h.elements()[i]).clone())
            .collect();
        Ok(ClassFunction {
            classes: Arc::clone(local),
            values,
        })
    }

    /// Induces `psi` (a class function on `h`) up to the group with class
    /// structure `classes`.
    pub fn induce(
        classes: &Arc<ConjugacyClasses>,
        h: &Subgroup,
        psi: &ClassFunction,
    ) -> Result<ClassFunction> {
        if !same_parent(h.parent(), classes.group()) {
            return Err(Error::NotASubgroup(
                "subgroup of a different group".into(),
            ));
        }
        if !psi.classes.same_group(h.local_classes()) {
            return Err(Error::IncompatibleClassFunctions);
        }
        // Ind ψ(g) = |G| / (|H| |g^G|) · Σ_{h ∈ H ∩ g^G} ψ(h)
        let n = classes.group().exponent();
        let mut sums = vec![Cyclotomic::zero(n); classes.len()];
        for (i, &g) in h.elements().iter().enumerate() {
            let local_class = h.local_classes().class_of(i);
            sums[classes.class_of(g)] += psi.value(local_class);
        }
        let order = classes.group().order() as i64;
        let values = sums
            .into_iter()
            .zip(classes.sizes())
            .map(|(s, &size)| {
                if s.is_zero() {
                    s
                } else {
                    s.scale(&Rational::new(
                        order.into(),
                        (h.order() as i64 * size as i64).into(),
                    ))
                }
            })
            .collect();
        Ok(ClassFunction {
            classes: Arc::clone(classes),
            values,
        })
    }

    /// `(1/|H|) Σ_{a ∈ H} χ(a)`, the dimension of the `H`-fixed subspace when
    /// this is a character.
    pub fn fixed_dim(&self, h: &Subgroup) -> Result<Rational> {
        if !same_parent(h.parent(), self.classes.group()) {
            return Err(Error::NotASubgroup(
                "subgroup of a different group".into(),
            ));
        }
        let mut acc = Cyclotomic::zero(self.classes.group().exponent());
        for &a in h.elements() {
            acc += self.at_element(a);
        }
        let avg = acc.scale(&Rational::new(One::one(), (h.order() as i64).into()));
        avg.as_rational().ok_or_else(|| {
            Error::NotACharacter(format!("average over a subgroup is irrational: {avg}"))
        })
    }

    /// Multiplicities against a list of characters (typically a table).
    pub fn multiplicities(&self, basis: &[ClassFunction]) -> Result<Vec<Cyclotomic>> {
        basis.iter().map(|chi| self.inner_product(chi)).collect()
    }

    /// `Σ coeffs[i] · basis[i]`.
    pub fn combination(
        classes: &Arc<ConjugacyClasses>,
        basis: &[ClassFunction],
        coeffs: &[Rational],
    ) -> Result<ClassFunction> {
        let mut acc = ClassFunction::zero(classes);
        for (chi, c) in basis.iter().zip(coeffs) {
            if !c.is_zero() {
                acc = acc.try_add(&chi.scale(c))?;
            }
        }
        Ok(acc)
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.classes.same_group(&other.classes) && self.values == other.values
    }
}

impl Add for &ClassFunction {
    type Output = ClassFunction;
    fn add(self, rhs: &ClassFunction) -> ClassFunction {
        self.try_add(rhs).expect("class functions on the same group")
    }
}

impl Neg for &ClassFunction {
    type Output = ClassFunction;
    fn neg(self) -> ClassFunction {
        ClassFunction {
            classes: Arc::clone(&self.classes),
            values: self.values.iter().map(|v| -v).collect(),
        }
    }
}

impl Sub for &ClassFunction {
    type Output = ClassFunction;
    fn sub(self, rhs: &ClassFunction) -> ClassFunction {
        self + &(-rhs)
    }
}

/// The characters `h^k ↦ ζ_e^{a·j·k}` of a cyclic subgroup `⟨h⟩` of order
/// `e`, as class functions on the subgroup. Index `j` of the returned vector
/// is `ψ^j` where `ψ(h) = ζ_e^a`.
pub fn cyclic_character_powers(
    h: &Subgroup,
    generator: usize,
    exponent_a: i64,
) -> Result<Vec<ClassFunction>> {
    let parent = h.parent();
    let e = parent.element_order(generator);
    if h.order() != e || !h.contains(generator) {
        return Err(Error::InvalidBranchData(format!(
            "element {generator} does not generate the given subgroup"
        )));
    }
    let n = parent.exponent();
    let step = (n / e as u64) as i64;
    let local = h.local_classes();
    // local element index -> k with element = generator^k
    let mut log = vec![0usize; e];
    for (k, &x) in parent.cyclic_powers(generator).iter().enumerate() {
        log[h.local_index(x).expect("power lies in subgroup")] = k;
    }
    (0..e)
        .map(|j| {
            let values = local
                .representatives()
                .iter()
                .map(|&i| {
                    let k = log[i] as i64;
                    Cyclotomic::zeta(n, step * exponent_a * j as i64 * k)
                })
                .collect::<Result<_>>()?;
            ClassFunction::new(local, values)
        })
        .collect()
}

