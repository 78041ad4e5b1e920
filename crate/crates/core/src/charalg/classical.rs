use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::algorithm::{check_seed, AlgorithmOptions};
use super::Status;
use crate::error::Result;
use crate::yalgebra::{AlgebraContext, CommMonomial, ExponentVector};

/// The `t = 1` algorithm in commuting variables, keyed by exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalSeries {
    pub terms: BTreeMap<ExponentVector, BigInt>,
    pub status: Status,
}

impl ClassicalSeries {
    /// The image in commuting `Y` variables.
    pub fn pi_hat(&self, ctx: &AlgebraContext) -> BTreeMap<CommMonomial, BigInt> {
        let mut out: BTreeMap<CommMonomial, BigInt> = BTreeMap::new();
        for (e, c) in &self.terms {
            *out.entry(ctx.pi_hat(e)).or_default() += c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

/// `m prod_l (1 + A_{i,l+r_i}^{-1})^{u_{i,l}(m)}`, expanded binomially.
fn classical_block(ctx: &AlgebraContext, m: &ExponentVector, i: usize) -> BTreeMap<ExponentVector, BigInt> {
    let r = ctx.r(i);
    let mut acc: BTreeMap<ExponentVector, BigInt> = [(m.clone(), BigInt::from(1))].into_iter().collect();
    for ((j, l), u) in ctx.u_vector(m) {
        if j != i {
            continue;
        }
        let mut next: BTreeMap<ExponentVector, BigInt> = BTreeMap::new();
        let mut binom = BigInt::from(1);
        for k in 0..=u {
            for (e, c) in &acc {
                let mut f = e.clone();
                f.add_v(i, l + r, k);
                *next.entry(f).or_default() += c * &binom;
            }
            binom = binom * BigInt::from(u - k) / BigInt::from(k + 1);
        }
        acc = next;
    }
    acc
}

/// The classical algorithm with the same control flow as the deformed one.
pub fn classical_algorithm(
    ctx: &AlgebraContext,
    seed: &ExponentVector,
    opts: AlgorithmOptions,
) -> Result<ClassicalSeries> {
    check_seed(ctx, seed, &opts)?;
    let n = ctx.rank();
    let cap = opts.max_degree;
    let mut pending: BTreeMap<ExponentVector, Vec<BigInt>> = BTreeMap::new();
    pending.insert(seed.clone(), vec![BigInt::zero(); n]);
    let mut terms = BTreeMap::new();
    let mut status = Status::Complete;

    while let Some((m, forced)) = pending.pop_first() {
        let mut dominant_in = vec![true; n];
        for ((i, _), x) in ctx.u_vector(&m) {
            if x < 0 {
                dominant_in[i] = false;
            }
        }
        let coeff = if m == *seed {
            BigInt::from(1)
        } else if dominant_in.iter().all(|d| *d) {
            BigInt::zero()
        } else {
            let mut forcing = (0..n).filter(|i| !dominant_in[*i]).map(|i| &forced[i]);
            let first = forcing.next().cloned().unwrap_or_default();
            if forcing.any(|c| *c != first) {
                return Ok(ClassicalSeries {
                    terms,
                    status: Status::Inconsistent { witness: m },
                });
            }
            first
        };
        if !coeff.is_zero() {
            terms.insert(m.clone(), coeff.clone());
        }
        for i in (0..n).filter(|i| dominant_in[*i]) {
            let opened = &coeff - &forced[i];
            if opened.is_zero() {
                continue;
            }
            for (f, c) in classical_block(ctx, &m, i) {
                if f == m {
                    continue;
                }
                if f.deg() > cap {
                    status = Status::Truncated;
                    continue;
                }
                let slot = pending.entry(f).or_insert_with(|| vec![BigInt::zero(); n]);
                slot[i] += &opened * c;
            }
        }
    }
    Ok(ClassicalSeries { terms, status })
}
