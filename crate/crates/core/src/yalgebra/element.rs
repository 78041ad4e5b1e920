use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::commutative::CommMonomial;
use super::context::{AlgebraContext, UVector};
use super::exponent::ExponentVector;
use crate::laurent::Laurent;

/// A finite `Z[t^{+-1}]`-combination of basis elements `b(e)`.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct AlgebraElement {
    terms: BTreeMap<ExponentVector, Laurent>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::basis(ExponentVector::new())
    }

    pub fn basis(e: ExponentVector) -> Self {
        Self::monomial(e, Laurent::one())
    }

    pub fn monomial(e: ExponentVector, c: Laurent) -> Self {
        let mut out = Self::zero();
        out.add_term(e, &c);
        out
    }

    pub fn t_power(k: i64) -> Self {
        Self::monomial(ExponentVector::new(), Laurent::monomial(k, 1))
    }

    pub fn add_term(&mut self, e: ExponentVector, c: &Laurent) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Laurent)> + '_ {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<ExponentVector, Laurent> {
        self.terms
    }

    pub fn from_terms(terms: BTreeMap<ExponentVector, Laurent>) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, &c);
        }
        out
    }

    pub fn coeff(&self, e: &ExponentVector) -> Laurent {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.deg()).max()
    }

    /// The first term in the module order, which is maximal in the dominance order.
    pub fn leading(&self) -> Option<(&ExponentVector, &Laurent)> {
        self.terms.iter().next()
    }

    pub fn remove(&mut self, e: &ExponentVector) -> Option<Laurent> {
        self.terms.remove(e)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (e, c) in other.terms() {
            self.add_term(e.clone(), c);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e.clone(), &-c);
        }
        out
    }

    pub fn scale(&self, c: &Laurent) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, d)| (e.clone(), d * c)).collect(),
        }
    }

    pub fn mul_t(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, d)| (e.clone(), d.shifted(k))).collect(),
        }
    }

    /// Keeps only terms of degree at most `max_degree`.
    pub fn truncated(&self, max_degree: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.deg() <= max_degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn map_exponents(&self, f: impl Fn(&ExponentVector) -> ExponentVector) -> Self {
        let mut out = Self::zero();
        for (e, c) in self.terms() {
            out.add_term(f(e), c);
        }
        out
    }

    pub fn dominant_monomials(&self, ctx: &AlgebraContext) -> Vec<ExponentVector> {
        self.terms.keys().filter(|e| ctx.is_dominant(e)).cloned().collect()
    }

    /// The `t = 1` image in the commutative shadow, keyed by exponent vectors.
    pub fn eval_t1(&self) -> BTreeMap<ExponentVector, BigInt> {
        self.terms
            .iter()
            .map(|(e, c)| (e.clone(), c.eval_at_one()))
            .filter(|(_, c)| *c != BigInt::from(0))
            .collect()
    }

    /// `Pi-hat` at `t = 1`: the classical image in commuting `Y` variables.
    pub fn pi_hat_t1(&self, ctx: &AlgebraContext) -> BTreeMap<CommMonomial, BigInt> {
        let mut out: BTreeMap<CommMonomial, BigInt> = BTreeMap::new();
        for (e, c) in self.terms() {
            *out.entry(ctx.pi_hat(e)).or_default() += c.eval_at_one();
        }
        out.retain(|_, c| *c != BigInt::from(0));
        out
    }

    /// Coefficients relative to the bar-invariant normalizations `t^{alpha(e)} b(e)`.
    pub fn invariant_coefficients(&self, ctx: &AlgebraContext) -> BTreeMap<ExponentVector, Laurent> {
        self.terms
            .iter()
            .map(|(e, c)| (e.clone(), c.shifted(-ctx.normalize_invariant(e))))
            .collect()
    }
}

/// The product, dropping terms whose degree exceeds `max_degree` when given.
pub fn multiply(
    ctx: &AlgebraContext,
    a: &AlgebraElement,
    b: &AlgebraElement,
    max_degree: Option<i64>,
) -> AlgebraElement {
    let prep = |x: &AlgebraElement| -> Vec<(ExponentVector, UVector, Laurent, i64)> {
        x.terms()
            .map(|(e, c)| (e.clone(), ctx.u_vector(e), c.clone(), e.deg()))
            .collect()
    };
    let left = prep(a);
    let right = prep(b);
    let mut out = AlgebraElement::zero();
    for (e1, u1, c1, g1) in &left {
        for (e2, u2, c2, g2) in &right {
            if max_degree.is_some_and(|m| g1 + g2 > m) {
                continue;
            }
            let twist = ctx.d1_with(e1, e2, u2) + ctx.d2_with(e1, u1, e2);
            let c = (c1 * c2).shifted(twist);
            out.add_term(e1.plus(e2), &c);
        }
    }
    out
}

/// `c(t) b(e) -> c(t^{-1}) t^{2 d1(e,e)} b(e)`.
pub fn bar(ctx: &AlgebraContext, a: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (e, c) in a.terms() {
        out.add_term(e.clone(), &c.bar().shifted(2 * ctx.d1(e, e)));
    }
    out
}

impl AlgebraContext {
    /// The generator `Y_{i,l}^{p}`, equal to `b(p e_Y)`.
    pub fn gen_y(&self, i: usize, l: i64, p: i64) -> AlgebraElement {
        AlgebraElement::basis(self.y_vec(i, l).scaled(p))
    }

    /// The bar-invariant generator `A_{i,l}^{-1} = t^{d1(e,e)} b(e_A)`.
    pub fn gen_a_inv(&self, i: usize, l: i64) -> AlgebraElement {
        let e = self.a_vec(i, l);
        let k = self.d1(&e, &e);
        AlgebraElement::monomial(e, Laurent::monomial(k, 1))
    }

    /// `t^{alpha(e)} b(e)`.
    pub fn invariant_monomial(&self, e: &ExponentVector) -> AlgebraElement {
        AlgebraElement::monomial(e.clone(), Laurent::monomial(self.normalize_invariant(e), 1))
    }

    pub fn power(&self, a: &AlgebraElement, n: u32, max_degree: Option<i64>) -> AlgebraElement {
        let mut out = AlgebraElement::one();
        for _ in 0..n {
            out = multiply(self, &out, a, max_degree);
        }
        out
    }
}
