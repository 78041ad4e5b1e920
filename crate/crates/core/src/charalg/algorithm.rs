use std::collections::BTreeMap;

use super::{CharacterSeries, Status};
use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::screening::e_it;
use crate::yalgebra::{AlgebraContext, AlgebraElement, ExponentVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AlgorithmOptions {
    /// Largest total degree kept.
    pub max_degree: i64,
    /// Run even when some `C_ij C_ji > 3`, where the algorithm may be ill defined.
    pub allow_large_cc: bool,
}

impl AlgorithmOptions {
    pub fn new(max_degree: i64) -> Self {
        Self { max_degree, allow_large_cc: false }
    }
}

/// Checks the preconditions shared by the deformed and classical algorithms.
pub(super) fn check_seed(ctx: &AlgebraContext, seed: &ExponentVector, opts: &AlgorithmOptions) -> Result<()> {
    if !ctx.is_generic() {
        return Err(Error::ModeUnsupported(
            "the algorithm runs in the generic algebra; specialize afterwards".into(),
        ));
    }
    if !opts.allow_large_cc && !ctx.cartan().flags().cc_le3 {
        return Err(Error::CcExceeds3);
    }
    if !ctx.is_dominant(seed) {
        return Err(Error::NotDominant(seed.to_string()));
    }
    Ok(())
}

/// The deformed algorithm started at the dominant `b(seed)`.
///
/// Monomials are visited in increasing degree. A monomial that is not `i`-dominant for
/// some `i` takes the coefficient forced by the `E_{i,t}` blocks already opened; every
/// such direction must force the same value. Dominant monomials other than the seed get
/// zero. Each `i`-dominant monomial then opens its own block with the missing amount.
pub fn ft_algorithm(
    ctx: &AlgebraContext,
    seed: &ExponentVector,
    opts: AlgorithmOptions,
) -> Result<CharacterSeries> {
    check_seed(ctx, seed, &opts)?;
    let n = ctx.rank();
    let cap = opts.max_degree;
    let mut pending: BTreeMap<ExponentVector, Vec<Laurent>> = BTreeMap::new();
    pending.insert(seed.clone(), vec![Laurent::zero(); n]);
    let mut element = AlgebraElement::zero();
    let mut status = Status::Complete;
    let mut collisions = Vec::new();

    while let Some((m, forced)) = pending.pop_first() {
        let u = ctx.u_vector(&m);
        let mut dominant_in = vec![true; n];
        for ((i, _), x) in &u {
            if *x < 0 {
                dominant_in[*i] = false;
            }
        }
        let coeff = if m == *seed {
            Laurent::one()
        } else if dominant_in.iter().all(|d| *d) {
            if forced.iter().any(|c| !c.is_zero()) {
                collisions.push(m.clone());
            }
            Laurent::zero()
        } else {
            let mut value: Option<&Laurent> = None;
            for i in (0..n).filter(|i| !dominant_in[*i]) {
                match value {
                    None => value = Some(&forced[i]),
                    Some(v) if *v != forced[i] => {
                        status = Status::Inconsistent { witness: m.clone() };
                        return Ok(CharacterSeries {
                            element,
                            max_degree: cap,
                            status,
                            seed: seed.clone(),
                            collisions,
                        });
                    }
                    Some(_) => {}
                }
            }
            value.cloned().unwrap_or_default()
        };
        element.add_term(m.clone(), &coeff);

        for i in (0..n).filter(|i| dominant_in[*i]) {
            let opened = &coeff - &forced[i];
            if opened.is_zero() {
                continue;
            }
            let block = e_it(ctx, &m, i, Some(cap + 1))?;
            for (f, c) in block.terms() {
                if *f == m {
                    continue;
                }
                if f.deg() > cap {
                    status = Status::Truncated;
                    continue;
                }
                let slot = pending.entry(f.clone()).or_insert_with(|| vec![Laurent::zero(); n]);
                slot[i] += &(&opened * c);
            }
        }
    }

    Ok(CharacterSeries {
        element,
        max_degree: cap,
        status,
        seed: seed.clone(),
        collisions,
    })
}
