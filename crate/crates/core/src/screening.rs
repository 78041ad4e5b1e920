//! Deformed screening operators and their kernels.
//!
//! `S_i` sends an element of the quantum torus to the bimodule spanned by the
//! symbols `S~_{i,l}`. Elements of that bimodule are kept in the left normal form
//! `sum c b(e) S~_{i,l}`; the defining relation `S~_{i,l-r} = t^{-1} A~_{i,l}^{-1} S~_{i,l+r}`
//! moves every index up to the largest one present in its class modulo `2 r_i`.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::yalgebra::{multiply, AlgebraContext, AlgebraElement, CommMonomial, ExponentVector};

/// `sum c(t) b(e) S~_{i,l}` for a fixed node `i`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScreeningElement {
    node: usize,
    terms: BTreeMap<(ExponentVector, i64), Laurent>,
}

impl ScreeningElement {
    pub fn zero(node: usize) -> Self {
        Self { node, terms: BTreeMap::new() }
    }

    pub fn node(&self) -> usize {
        self.node
    }

    pub fn add_term(&mut self, e: ExponentVector, l: i64, c: &Laurent) {
        if c.is_zero() {
            return;
        }
        let key = (e, l);
        let slot = self.terms.entry(key.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, i64, &Laurent)> + '_ {
        self.terms.iter().map(|((e, l), c)| (e, *l, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, l, c) in other.terms() {
            out.add_term(e.clone(), l, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, l, c) in other.terms() {
            out.add_term(e.clone(), l, &-c);
        }
        out
    }

    /// Left multiplication by an algebra element.
    pub fn mul_left(&self, ctx: &AlgebraContext, a: &AlgebraElement) -> Self {
        let mut out = Self::zero(self.node);
        for (e, l, c) in self.terms() {
            let prod = multiply(ctx, a, &AlgebraElement::monomial(e.clone(), c.clone()), None);
            for (f, d) in prod.terms() {
                out.add_term(f.clone(), l, d);
            }
        }
        out
    }

    /// Right multiplication, using `S~_{i,l} b(f) = t^{2 u_{i,l}(f)} b(f) S~_{i,l}`.
    pub fn mul_right(&self, ctx: &AlgebraContext, a: &AlgebraElement) -> Self {
        let mut out = Self::zero(self.node);
        for (e, l, c) in self.terms() {
            for (f, d) in a.terms() {
                let twist = 2 * ctx.u_char(f, self.node, l);
                let prod = multiply(
                    ctx,
                    &AlgebraElement::monomial(e.clone(), c.clone()),
                    &AlgebraElement::monomial(f.clone(), d.shifted(twist)),
                    None,
                );
                for (g, k) in prod.terms() {
                    out.add_term(g.clone(), l, k);
                }
            }
        }
        out
    }

    /// One application of the relation: `b(e) S~_{l} -> t^{-1} b(e) A~_{l+r}^{-1} S~_{l+2r}`.
    pub fn raise_once(ctx: &AlgebraContext, node: usize, e: &ExponentVector, l: i64) -> (AlgebraElement, i64) {
        let r = ctx.r(node);
        let step = multiply(
            ctx,
            &AlgebraElement::basis(e.clone()),
            &ctx.gen_a_inv(node, l + r),
            None,
        )
        .mul_t(-1);
        (step, ctx.norm(l + 2 * r))
    }

    /// Moves every term to the given representative of its class modulo `2 r_i`.
    /// Classes missing from `targets` are left alone. Generic contexts only.
    pub fn raised_to(&self, ctx: &AlgebraContext, targets: &BTreeMap<i64, i64>) -> Self {
        let period = 2 * ctx.r(self.node);
        let mut out = Self::zero(self.node);
        for (e, l, c) in self.terms() {
            let class = l.rem_euclid(period);
            let target = targets.get(&class).copied().unwrap_or(l);
            let mut cur = AlgebraElement::monomial(e.clone(), c.clone());
            let mut idx = l;
            while idx < target {
                let mut next = AlgebraElement::zero();
                for (f, d) in cur.terms() {
                    let (step, _) = Self::raise_once(ctx, self.node, f, idx);
                    next.add_assign(&step.scale(d));
                }
                cur = next;
                idx += period;
            }
            for (f, d) in cur.terms() {
                out.add_term(f.clone(), idx, d);
            }
        }
        out
    }

    /// The largest index present in each class modulo `2 r_i`.
    pub fn class_maxima(&self, ctx: &AlgebraContext) -> BTreeMap<i64, i64> {
        let period = 2 * ctx.r(self.node);
        let mut out: BTreeMap<i64, i64> = BTreeMap::new();
        for (_, l, _) in self.terms() {
            let slot = out.entry(l.rem_euclid(period)).or_insert(l);
            *slot = (*slot).max(l);
        }
        out
    }

    /// The normal form: every class raised to its largest index.
    pub fn normal_form(&self, ctx: &AlgebraContext) -> Self {
        self.raised_to(ctx, &self.class_maxima(ctx))
    }

    /// The classical image `b(e) S~_l -> Pi(e) S_l` at `t = 1`.
    pub fn pi_hat_t1(&self, ctx: &AlgebraContext) -> ClassicalScreening {
        let mut out = ClassicalScreening::zero(self.node);
        for (e, l, c) in self.terms() {
            out.add_term(ctx.pi_hat(e), l, &c.eval_at_one());
        }
        out
    }
}

/// `S_{i,t}` on a generic algebra element, in normal form.
pub fn apply_screening(ctx: &AlgebraContext, a: &AlgebraElement, i: usize) -> Result<ScreeningElement> {
    ctx.check_node(i)?;
    if !ctx.is_generic() {
        return Err(Error::PeriodicTorsion);
    }
    Ok(screening_raw(ctx, a, i).normal_form(ctx))
}

/// `sum_l t^{u-1} [u]_t b(e) S~_{i,l}` before any rewriting.
pub fn screening_raw(ctx: &AlgebraContext, a: &AlgebraElement, i: usize) -> ScreeningElement {
    let mut out = ScreeningElement::zero(i);
    for (e, c) in a.terms() {
        for ((j, l), u) in ctx.u_vector(e) {
            if j != i {
                continue;
            }
            let weight = Laurent::quantum_integer(u).shifted(u - 1);
            out.add_term(e.clone(), l, &(c * &weight));
        }
    }
    out
}

/// The classical bimodule `sum c m S_{i,l}` in commuting variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassicalScreening {
    node: usize,
    terms: BTreeMap<(CommMonomial, i64), BigInt>,
}

impl ClassicalScreening {
    pub fn zero(node: usize) -> Self {
        Self { node, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, m: CommMonomial, l: i64, c: &BigInt) {
        let zero = BigInt::from(0);
        if *c == zero {
            return;
        }
        let key = (m, l);
        let slot = self.terms.entry(key.clone()).or_default();
        *slot += c;
        if *slot == zero {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Raises classes to the given indices via `S_{l-r} = A_l^{-1} S_{l+r}`.
    pub fn raised_to(&self, ctx: &AlgebraContext, targets: &BTreeMap<i64, i64>) -> Self {
        let r = ctx.r(self.node);
        let period = 2 * r;
        let mut out = Self::zero(self.node);
        for ((m, l), c) in &self.terms {
            let target = targets.get(&l.rem_euclid(period)).copied().unwrap_or(*l);
            let mut m = m.clone();
            let mut idx = *l;
            while idx < target {
                m = m.mul(&ctx.pi_hat(&ctx.a_vec(self.node, idx + r)));
                idx += period;
            }
            out.add_term(m, idx, c);
        }
        out
    }
}

/// The classical screening `S_i(m) = m sum_l u_{i,l}(m) S_{i,l}` on a commutative element.
pub fn classical_screening(
    poly: &BTreeMap<CommMonomial, BigInt>,
    i: usize,
) -> ClassicalScreening {
    let mut out = ClassicalScreening::zero(i);
    for (m, c) in poly {
        for ((j, l), u) in m.entries() {
            if j == i {
                out.add_term(m.clone(), l, &(c * BigInt::from(u)));
            }
        }
    }
    out
}

/// `E_{i,t}(b(e))`: `b(e) b(-U) <-prod_l (Y_{i,l} + t Y_{i,l} A_{i,l+r_i}^{-1})^{u_{i,l}(e)}`
/// where `U = sum_l u_{i,l}(e) e_{Y_{i,l}}`. For `s >= 1` the product runs over the
/// window `l = s-1, ..., 0`.
pub fn e_it(
    ctx: &AlgebraContext,
    e: &ExponentVector,
    i: usize,
    max_degree: Option<i64>,
) -> Result<AlgebraElement> {
    ctx.check_node(i)?;
    let u = ctx.u_vector(e);
    let mut local: Vec<(i64, i64)> = u
        .iter()
        .filter(|((j, _), _)| *j == i)
        .map(|((_, l), c)| (*l, *c))
        .collect();
    if local.iter().any(|(_, c)| *c < 0) {
        return Err(Error::NotIDominant(i));
    }
    local.sort_by(|a, b| b.0.cmp(&a.0));
    let mut big_u = ExponentVector::new();
    for &(l, c) in &local {
        big_u.add_y(i, l, c);
    }
    let head = multiply(
        ctx,
        &AlgebraElement::basis(e.clone()),
        &AlgebraElement::basis(big_u.negated()),
        None,
    );
    let mut acc = head;
    let r = ctx.r(i);
    for (l, c) in local {
        let y = ctx.gen_y(i, l, 1);
        let factor = y.add(&multiply(ctx, &y, &ctx.gen_a_inv(i, l + r), None).mul_t(1));
        for _ in 0..c {
            acc = multiply(ctx, &acc, &factor, max_degree);
        }
    }
    Ok(acc)
}

/// Expresses `a` in the basis `E_{i,t}(M)`, `M` `i`-dominant, by eliminating maximal
/// monomials. Terms of degree above `max_degree` are ignored when it is given.
pub fn kernel_decompose(
    ctx: &AlgebraContext,
    a: &AlgebraElement,
    i: usize,
    max_degree: Option<i64>,
) -> Result<BTreeMap<ExponentVector, Laurent>> {
    ctx.check_node(i)?;
    let mut rest = match max_degree {
        Some(d) => a.truncated(d),
        None => a.clone(),
    };
    let mut out = BTreeMap::new();
    while let Some((e, c)) = rest.leading() {
        let (e, c) = (e.clone(), c.clone());
        if !ctx.is_i_dominant(&e, i) {
            return Err(Error::NotInKernel { witness: e });
        }
        let block = e_it(ctx, &e, i, max_degree)?;
        rest = rest.sub(&block.scale(&c));
        out.insert(e, c);
    }
    Ok(out)
}

/// Whether `a` lies in the kernel of `S_i`, decided by decomposition.
pub fn in_kernel(ctx: &AlgebraContext, a: &AlgebraElement, i: usize, max_degree: Option<i64>) -> bool {
    kernel_decompose(ctx, a, i, max_degree).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::yalgebra::word::parse_element;
    use crate::yalgebra::Mode;
    use proptest::prelude::*;

    fn ctx(cd: crate::cartan::CartanData, s: u32) -> AlgebraContext {
        AlgebraContext::new(cd, s, Mode::Standard).unwrap()
    }

    #[test]
    fn fundamental_block() {
        let c = ctx(catalog::b2(), 0);
        let got = e_it(&c, &c.y_vec(0, 0), 0, None).unwrap();
        let want = parse_element(&c, "Y[1,0]")
            .unwrap()
            .add(&parse_element(&c, "t Y[1,0] A[1,1]^-1").unwrap());
        assert_eq!(got, want);
        assert_eq!(e_it(&c, &c.y_vec(1, 3), 0, None).unwrap(), AlgebraElement::basis(c.y_vec(1, 3)));
    }

    #[test]
    fn dominant_block_is_a_monomial() {
        let c = ctx(catalog::sl2(), 0);
        let m = parse_element(&c, "A[1,4]^-1 Y[1,5] Y[1,3]").unwrap();
        let (e, _) = m.leading().unwrap();
        assert!(c.u_vector(e).is_empty());
        assert_eq!(e_it(&c, e, 0, None).unwrap(), AlgebraElement::basis(e.clone()));
    }

    #[test]
    fn non_i_dominant_rejected() {
        let c = ctx(catalog::sl2(), 0);
        assert_eq!(e_it(&c, &c.a_vec(0, 1), 0, None), Err(Error::NotIDominant(0)));
    }

    #[test]
    fn screening_of_generators() {
        let c = ctx(catalog::a(2), 0);
        let y = c.gen_y(0, 2, 1);
        let s = apply_screening(&c, &y, 0).unwrap();
        assert_eq!(s.len(), 1);
        let (e, l, k) = s.terms().next().unwrap();
        assert_eq!((e, l, k.clone()), (&c.y_vec(0, 2), 2, Laurent::one()));
        assert!(apply_screening(&c, &y, 1).unwrap().is_zero());
        let block = e_it(&c, &c.y_vec(0, 2), 0, None).unwrap();
        assert!(apply_screening(&c, &block, 0).unwrap().is_zero());
    }

    #[test]
    fn periodic_screening_is_refused() {
        let c = ctx(catalog::sl2(), 3);
        assert_eq!(apply_screening(&c, &c.gen_y(0, 0, 1), 0), Err(Error::PeriodicTorsion));
    }

    #[test]
    fn lone_y_leaves_a_witness() {
        let c = ctx(catalog::sl2(), 0);
        let err = kernel_decompose(&c, &c.gen_y(0, 0, 1), 0, None).unwrap_err();
        let mut w = c.y_vec(0, 0);
        w.add_v(0, 1, 1);
        assert_eq!(err, Error::NotInKernel { witness: w });
    }

    #[test]
    fn torsion_around_the_circle() {
        // sl2 at s = 3: S~_0 -> S~_2 -> S~_1 -> S~_0 picks up A_1 A_0 A_2 (all inverted).
        let c = ctx(catalog::sl2(), 3);
        let mut cur = AlgebraElement::one();
        let mut idx = 0;
        for _ in 0..3 {
            let mut next = AlgebraElement::zero();
            let mut new_idx = idx;
            for (f, d) in cur.terms() {
                let (step, j) = ScreeningElement::raise_once(&c, 0, f, idx);
                next.add_assign(&step.scale(d));
                new_idx = j;
            }
            cur = next;
            idx = new_idx;
        }
        assert_eq!(idx, 0);
        let chain = parse_element(&c, "t^-3 A[1]^-1 A[0]^-1 A[2]^-1").unwrap();
        assert_eq!(cur, chain);
    }

    fn small_element(c: &AlgebraContext) -> impl Strategy<Value = AlgebraElement> {
        let n = c.rank();
        let term = (
            prop::collection::vec((0..n, -2i64..3, -1i64..3), 0..3),
            prop::collection::vec((0..n, -2i64..3, 0i64..2), 0..3),
            -2i64..3,
            -2i64..3,
        );
        prop::collection::vec(term, 1..4).prop_map(|ts| {
            let mut out = AlgebraElement::zero();
            for (ys, vs, k, c) in ts {
                let e = ExponentVector::from_parts(
                    ys.into_iter().map(|(i, l, p)| ((i, l), p)),
                    vs.into_iter().map(|(i, l, p)| ((i, l), p)),
                );
                out.add_term(e, &Laurent::monomial(k, c));
            }
            out
        })
    }

    fn i_dominant_vector(c: &AlgebraContext, i: usize) -> impl Strategy<Value = ExponentVector> {
        let n = c.rank();
        let c = c.clone();
        (
            prop::collection::vec((0..n, -2i64..3, 0i64..2), 0..3),
            prop::collection::vec((0..n, -2i64..3, 0i64..2), 0..2),
        )
            .prop_map(move |(ys, vs)| {
                let mut e = ExponentVector::from_parts(
                    ys.into_iter().map(|(j, l, p)| ((j, l), p)),
                    vs.into_iter().map(|(j, l, p)| ((j, l), p)),
                );
                // cancel negative u_{i,l} with extra Y_{i,l}
                for ((j, l), u) in c.u_vector(&e) {
                    if j == i && u < 0 {
                        e.add_y(i, l, -u);
                    }
                }
                e
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn blocks_are_annihilated(e in i_dominant_vector(&ctx(catalog::b2(), 0), 1)) {
            let c = ctx(catalog::b2(), 0);
            let block = e_it(&c, &e, 1, None).unwrap();
            prop_assert!(apply_screening(&c, &block, 1).unwrap().is_zero());
            let dec = kernel_decompose(&c, &block, 1, None).unwrap();
            prop_assert_eq!(dec.len(), 1);
            prop_assert_eq!(dec.get(&e), Some(&Laurent::one()));
        }

        #[test]
        fn screening_is_a_derivation(a in small_element(&ctx(catalog::a(2), 0)),
                                     b in small_element(&ctx(catalog::a(2), 0))) {
            let c = ctx(catalog::a(2), 0);
            for i in 0..2 {
                let lhs = screening_raw(&c, &multiply(&c, &a, &b, None), i);
                let rhs = screening_raw(&c, &a, i).mul_right(&c, &b)
                    .add(&screening_raw(&c, &b, i).mul_left(&c, &a));
                let mut targets = lhs.class_maxima(&c);
                for (k, v) in rhs.class_maxima(&c) {
                    let slot = targets.entry(k).or_insert(v);
                    *slot = (*slot).max(v);
                }
                prop_assert_eq!(lhs.raised_to(&c, &targets), rhs.raised_to(&c, &targets));
            }
        }

        #[test]
        fn classical_shadow(a in small_element(&ctx(catalog::b2(), 0))) {
            let c = ctx(catalog::b2(), 0);
            for i in 0..2 {
                let raw = screening_raw(&c, &a, i);
                let targets = raw.class_maxima(&c);
                let deformed = raw.raised_to(&c, &targets).pi_hat_t1(&c);
                let classical = classical_screening(&a.pi_hat_t1(&c), i).raised_to(&c, &targets);
                prop_assert_eq!(deformed, classical);
            }
        }

        #[test]
        fn zero_screening_iff_decomposable(e1 in i_dominant_vector(&ctx(catalog::a(2), 0), 0),
                                           e2 in i_dominant_vector(&ctx(catalog::a(2), 0), 0),
                                           noise in small_element(&ctx(catalog::a(2), 0)),
                                           add_noise in any::<bool>()) {
            let c = ctx(catalog::a(2), 0);
            let mut x = multiply(&c, &e_it(&c, &e1, 0, None).unwrap(), &e_it(&c, &e2, 0, None).unwrap(), None);
            if add_noise {
                x = x.add(&noise);
            }
            let by_screening = apply_screening(&c, &x, 0).unwrap().is_zero();
            prop_assert_eq!(by_screening, in_kernel(&c, &x, 0, None));
        }
    }
}
