use super::algorithm::{ft_algorithm, AlgorithmOptions};
use super::Status;
use crate::error::Result;
use crate::yalgebra::{AlgebraContext, ExponentVector};

/// Whether the algorithm closed up within the degree bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeOutcome {
    /// The series is finite; its largest degree.
    StoppedAt(i64),
    /// Still producing terms at the bound and no antidominant monomial seen.
    NotStoppedBy(i64),
    /// Truncated, but an antidominant monomial already occurred.
    AntidominantFound(ExponentVector),
    /// The algorithm is not well defined from this seed.
    Inconsistent(ExponentVector),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    pub outcome: ProbeOutcome,
    pub monomials: usize,
    /// A positive `a` with `sum_j a_j C_jk = 0`, when the matrix has one.
    pub null_vector: Option<Vec<i64>>,
    /// `sum_i a_i u_i(seed)`, with `u_i = sum_l u_{i,l}`.
    pub invariant_value: Option<i64>,
    /// Whether every produced monomial has the same weighted u-sum as the seed.
    pub invariant_holds: Option<bool>,
}

fn weighted_u_sum(ctx: &AlgebraContext, a: &[i64], e: &ExponentVector) -> i64 {
    ctx.u_vector(e).iter().map(|((i, _), u)| a[*i] * u).sum()
}

/// Runs the deformed algorithm and reports whether it stops within `opts.max_degree`.
/// When a positive null vector exists the weighted u-sum obstruction is checked on
/// every produced monomial.
pub fn stops_probe(ctx: &AlgebraContext, seed: &ExponentVector, opts: AlgorithmOptions) -> Result<ProbeReport> {
    let series = ft_algorithm(ctx, seed, opts)?;
    let monomials: Vec<&ExponentVector> = series.element.terms().map(|(e, _)| e).collect();
    let is_antidominant = |e: &ExponentVector| ctx.u_vector(e).values().all(|u| *u <= 0);
    let outcome = match &series.status {
        Status::Complete => ProbeOutcome::StoppedAt(series.element.max_degree().unwrap_or(0)),
        Status::Inconsistent { witness } => ProbeOutcome::Inconsistent(witness.clone()),
        Status::Truncated => match monomials.iter().find(|e| is_antidominant(e)) {
            Some(e) => ProbeOutcome::AntidominantFound((*e).clone()),
            None => ProbeOutcome::NotStoppedBy(opts.max_degree),
        },
    };
    let null_vector = ctx.cartan().positive_null_vector();
    let (invariant_value, invariant_holds) = match &null_vector {
        Some(a) => {
            let v = weighted_u_sum(ctx, a, seed);
            let holds = monomials.iter().all(|e| weighted_u_sum(ctx, a, e) == v);
            (Some(v), Some(holds))
        }
        None => (None, None),
    };
    Ok(ProbeReport {
        outcome,
        monomials: monomials.len(),
        null_vector,
        invariant_value,
        invariant_holds,
    })
}
