//! Kazhdan-Lusztig type decompositions of standard elements.
//!
//! For a bar-invariant dominant monomial `m = t^{alpha} b(e)` the standard element
//! `E_t(m)` splits as `L(m) + sum_{m' < m} P_{m',m} L(m')` with every `L` bar-invariant and
//! every `P` in `t^{-1} Z[t^{-1}]`. Because each `F_t(m')` has `m'` as its only dominant
//! monomial, the coefficient of `F_t(m')` in an element of the kernel can be read off the
//! dominant coefficients, so the whole decomposition is computed from the `E_t` alone.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;

use crate::charalg::{Characters, RepMonomial, Status};
use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::yalgebra::{multiply, AlgebraContext, AlgebraElement, CommMonomial, ExponentVector};

/// The output of a decomposition; every monomial is named by its exponent vector and
/// stands for the bar-invariant `t^{alpha(e)} b(e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KlResult {
    pub seed: ExponentVector,
    /// Dominant monomials reached from the seed, in module order (seed first).
    pub basis: Vec<ExponentVector>,
    /// `P_{from,to}` for every pair in the basis with a nonzero value, diagonal excluded.
    pub p: BTreeMap<(ExponentVector, ExponentVector), Laurent>,
    /// `mu_{from,to}`, diagonal excluded.
    pub mu: BTreeMap<(ExponentVector, ExponentVector), Laurent>,
    /// `L(m)` for every basis monomial.
    pub l: BTreeMap<ExponentVector, AlgebraElement>,
    /// `E_t` of the bar-invariant seed.
    pub standard: AlgebraElement,
    pub max_degree: i64,
    pub status: Status,
}

impl KlResult {
    /// `P_{from,to}`, with `P_{m,m} = 1`.
    pub fn p_of(&self, from: &ExponentVector, to: &ExponentVector) -> Laurent {
        if from == to {
            return Laurent::one();
        }
        self.p.get(&(from.clone(), to.clone())).cloned().unwrap_or_default()
    }

    pub fn mu_of(&self, from: &ExponentVector, to: &ExponentVector) -> Laurent {
        if from == to {
            return Laurent::one();
        }
        self.mu.get(&(from.clone(), to.clone())).cloned().unwrap_or_default()
    }

    /// The nonzero `P_{m', seed}`, `m'` below the seed.
    pub fn seed_polynomials(&self) -> Vec<(ExponentVector, Laurent)> {
        self.basis
            .iter()
            .filter(|e| **e != self.seed)
            .map(|e| (e.clone(), self.p_of(e, &self.seed)))
            .filter(|(_, p)| !p.is_zero())
            .collect()
    }

    pub fn l_of_seed(&self) -> &AlgebraElement {
        &self.l[&self.seed]
    }
}

/// `t^{alpha(e)} E_t(b(e))`.
fn invariant_standard(chars: &Characters, e: &ExponentVector) -> Result<(AlgebraElement, Status)> {
    let x = chars.e_t(e)?;
    let alpha = chars.context().normalize_invariant(e);
    Ok((x.element.mul_t(alpha), x.status))
}

/// Errors out when the degree bound for finite types says dominant monomials may exist
/// beyond the truncation.
fn certify(ctx: &AlgebraContext, e: &ExponentVector, max_degree: i64) -> Result<()> {
    let cd = ctx.cartan();
    if !cd.flags().finite {
        return Ok(());
    }
    let mut totals = vec![0i64; cd.rank()];
    for ((i, _), u) in ctx.u_vector(e) {
        totals[i] += u;
    }
    if let Some(v) = cd.solve(&totals) {
        let bound: Ratio<i128> = v.into_iter().sum();
        let reach = e.deg() as i128 + bound.floor().to_integer();
        if reach > max_degree as i128 {
            return Err(Error::TruncationInsufficient(format!(
                "dominant monomials below {e} may reach degree {reach}, above {max_degree}"
            )));
        }
    }
    Ok(())
}

/// Every dominant monomial occurring in `E_t(m)` and, transitively, in the `E_t` of
/// those, up to the truncation degree. For finite types the degree bound
/// `v <= C^{-1} U` certifies that nothing is missed.
pub fn dominant_closure(chars: &Characters, e: &ExponentVector) -> Result<Vec<ExponentVector>> {
    Ok(closure_with_standards(chars, e)?.0.into_keys().collect())
}

type Standards = BTreeMap<ExponentVector, (AlgebraElement, Status)>;

fn closure_with_standards(chars: &Characters, e: &ExponentVector) -> Result<(Standards, Status)> {
    let ctx = chars.context();
    if !ctx.is_dominant(e) {
        return Err(Error::NotDominant(e.to_string()));
    }
    certify(ctx, e, chars.max_degree())?;
    let mut done: Standards = BTreeMap::new();
    let mut queue: BTreeSet<ExponentVector> = [e.clone()].into_iter().collect();
    let mut status = Status::Complete;
    while let Some(m) = queue.pop_first() {
        let (x, st) = invariant_standard(chars, &m)?;
        status = status.and(&st);
        for d in x.dominant_monomials(ctx) {
            if !done.contains_key(&d) && d != m {
                queue.insert(d);
            }
        }
        done.insert(m, (x, st));
    }
    Ok((done, status))
}

/// The decomposition of `E_t(t^{alpha(e)} b(e))`.
pub fn kl_decompose(chars: &Characters, e: &ExponentVector) -> Result<KlResult> {
    let ctx = chars.context();
    let (standards, status) = closure_with_standards(chars, e)?;
    let basis: Vec<ExponentVector> = standards.keys().cloned().collect();
    let mut p: BTreeMap<(ExponentVector, ExponentVector), Laurent> = BTreeMap::new();
    let mut mu: BTreeMap<(ExponentVector, ExponentVector), Laurent> = BTreeMap::new();
    let mut l: BTreeMap<ExponentVector, AlgebraElement> = BTreeMap::new();

    // Bottom-up: every monomial below `top` is decomposed before `top`.
    for (k, top) in basis.iter().enumerate().rev() {
        let (x, _) = &standards[top];
        let lambda = x.invariant_coefficients(ctx);
        let below = &basis[k + 1..];
        let mut p_top: Vec<(ExponentVector, Laurent)> = Vec::new();
        for m1 in below {
            let mut c = lambda.get(m1).cloned().unwrap_or_default();
            for (m2, p2) in &p_top {
                if let Some(mu12) = mu.get(&(m1.clone(), m2.clone())) {
                    c -= &(p2 * mu12);
                }
            }
            let (mu1, p1) = c.split_sym_neg();
            if !mu1.is_zero() {
                mu.insert((m1.clone(), top.clone()), mu1);
            }
            if !p1.is_zero() {
                p.insert((m1.clone(), top.clone()), p1.clone());
                p_top.push((m1.clone(), p1));
            }
        }
        let mut lt = x.clone();
        for (m1, p1) in &p_top {
            lt = lt.sub(&l[m1].scale(p1));
        }
        l.insert(top.clone(), lt);
    }

    Ok(KlResult {
        seed: e.clone(),
        standard: standards[e].0.clone(),
        basis,
        p,
        mu,
        l,
        max_degree: chars.max_degree(),
        status,
    })
}

/// The element with `m` as its only dominant monomial, obtained by subtracting standard
/// elements of the lower dominant monomials in order. Returns it with the subtracted
/// coefficients `lambda`, both relative to bar-invariant normalizations.
pub fn ft_s_nonfinite(
    chars: &Characters,
    e: &ExponentVector,
) -> Result<(AlgebraElement, Vec<(ExponentVector, Laurent)>, Status)> {
    let ctx = chars.context();
    let (mut f, mut status) = invariant_standard(chars, e)?;
    let mut lambdas = Vec::new();
    loop {
        let next = f
            .terms()
            .find(|(d, _)| *d != e && ctx.is_dominant(d))
            .map(|(d, c)| (d.clone(), c.clone()));
        let Some((d, c)) = next else { break };
        let lambda = c.shifted(-ctx.normalize_invariant(&d));
        let (x, st) = invariant_standard(chars, &d)?;
        status = status.and(&st);
        f = f.sub(&x.scale(&lambda));
        lambdas.push((d, lambda));
    }
    Ok((f, lambdas, status))
}

/// Dominant monomials `m A^{-v}` with `sum v = level`, enumerated over all placements.
/// Only meaningful at a root of unity, where the index set is finite.
pub fn dominant_level(ctx: &AlgebraContext, e: &ExponentVector, level: i64) -> Vec<ExponentVector> {
    let s = ctx.s() as i64;
    assert!(s >= 1, "enumeration needs a finite index set");
    let slots: Vec<(usize, i64)> = (0..ctx.rank()).flat_map(|i| (0..s).map(move |l| (i, l))).collect();
    let mut out = Vec::new();
    let mut current = e.clone();
    place(ctx, &slots, 0, level, &mut current, &mut out);
    out.sort();
    out
}

fn place(
    ctx: &AlgebraContext,
    slots: &[(usize, i64)],
    from: usize,
    left: i64,
    current: &mut ExponentVector,
    out: &mut Vec<ExponentVector>,
) {
    if left == 0 {
        if ctx.is_dominant(current) {
            out.push(current.clone());
        }
        return;
    }
    for k in from..slots.len() {
        let (i, l) = slots[k];
        current.add_v(i, l, 1);
        place(ctx, slots, k, left - 1, current, out);
        current.add_v(i, l, -1);
    }
}

/// The collapsed polynomial between commutative dominant monomials at a root of unity:
/// the sum of `P_{M',M}` over lifts `M'` of `target` at the smallest level `k` where a
/// dominant lift exists. `None` when no lift exists within the truncation.
pub fn collapsed_p(
    chars: &Characters,
    result: &KlResult,
    target: &CommMonomial,
) -> Option<(i64, Laurent)> {
    let ctx = chars.context();
    let base = result.seed.deg();
    for k in 0..=(chars.max_degree() - base) {
        let lifts: Vec<ExponentVector> = dominant_level(ctx, &result.seed, k)
            .into_iter()
            .filter(|m| ctx.pi_hat(m) == *target)
            .collect();
        if lifts.is_empty() {
            continue;
        }
        let mut total = Laurent::zero();
        for m in &lifts {
            total += &result.p_of(m, &result.seed);
        }
        return Some((k, total));
    }
    None
}

/// `KlResult` for the Y-only lift of a commutative dominant monomial.
pub fn kl_nonfinite(chars: &Characters, m: &RepMonomial) -> Result<KlResult> {
    let lift = m.folded(chars.context().s()).to_y_vector();
    kl_decompose(chars, &lift)
}

/// `m^{-1} x`, for `m = t^{alpha(e)} b(e)`.
pub fn divide_left(ctx: &AlgebraContext, e: &ExponentVector, x: &AlgebraElement) -> AlgebraElement {
    let neg = e.negated();
    let twist = ctx.product_twist(&neg, e);
    let inverse = AlgebraElement::monomial(neg, Laurent::monomial(-ctx.normalize_invariant(e) - twist, 1));
    multiply(ctx, &inverse, x, None)
}
