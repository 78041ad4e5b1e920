//! Specialization of the generic algebra at a primitive `s`-th root of unity.

use super::context::AlgebraContext;
use super::element::{multiply, AlgebraElement};
use super::exponent::ExponentVector;
use crate::error::{Error, Result};
use crate::laurent::Laurent;

/// Direction of an ordered product over spectral indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Increasing `l` from left to right.
    Ascending,
    /// Decreasing `l` from left to right.
    Descending,
}

fn check_periodic(ctx_s: &AlgebraContext) -> Result<()> {
    if ctx_s.is_generic() {
        return Err(Error::ModeUnsupported("the target context must have s >= 1".into()));
    }
    ctx_s.check_root_of_unity()
}

/// Folds spectral indices modulo `s`.
pub fn p_s(ctx_s: &AlgebraContext, e: &ExponentVector) -> ExponentVector {
    ctx_s.normalize(e)
}

fn interaction_radius(ctx: &AlgebraContext) -> i64 {
    2 * ctx.cartan().max_r() + ctx.cartan().max_neg_c() + 1
}

/// Range of `r` for which `e2[rs]` can interact with `e1`.
fn shift_range(ctx: &AlgebraContext, s: i64, e1: &ExponentVector, e2: &ExponentVector) -> Option<(i64, i64)> {
    let (a1, b1) = e1.support_range()?;
    let (a2, b2) = e2.support_range()?;
    let rho = interaction_radius(ctx);
    let lo = num_integer::Integer::div_ceil(&(a2 - b1 - rho), &s);
    let hi = num_integer::Integer::div_floor(&(b2 - a1 + rho), &s);
    Some((lo, hi))
}

/// `sum_r d(e1, e2[rs])` with `d` evaluated in the generic algebra.
fn periodic_sum(
    ctx_s: &AlgebraContext,
    e1: &ExponentVector,
    e2: &ExponentVector,
    d: impl Fn(&AlgebraContext, &ExponentVector, &ExponentVector) -> i64,
    negative_only: bool,
) -> i64 {
    let s = ctx_s.s() as i64;
    let generic = ctx_s.with_s(0);
    let Some((lo, hi)) = shift_range(&generic, s, e1, e2) else {
        return 0;
    };
    let hi = if negative_only { hi.min(-1) } else { hi };
    (lo..=hi).map(|r| d(&generic, e1, &e2.translated(-r * s))).sum()
}

pub fn big_d1(ctx_s: &AlgebraContext, e1: &ExponentVector, e2: &ExponentVector) -> i64 {
    periodic_sum(ctx_s, e1, e2, |c, a, b| c.d1(a, b), false)
}

pub fn big_d2(ctx_s: &AlgebraContext, e1: &ExponentVector, e2: &ExponentVector) -> i64 {
    periodic_sum(ctx_s, e1, e2, |c, a, b| c.d2(a, b), false)
}

pub fn big_d1_minus(ctx_s: &AlgebraContext, e: &ExponentVector) -> i64 {
    periodic_sum(ctx_s, e, e, |c, a, b| c.d1(a, b), true)
}

pub fn big_d2_minus(ctx_s: &AlgebraContext, e: &ExponentVector) -> i64 {
    periodic_sum(ctx_s, e, e, |c, a, b| c.d2(a, b), true)
}

/// `tau_{s,t}` by the closed formula `b(e) -> t^{D1^-(e) + D2^-(e)} b(p_s(e))`.
pub fn tau_st(ctx_s: &AlgebraContext, a: &AlgebraElement) -> Result<AlgebraElement> {
    check_periodic(ctx_s)?;
    let mut out = AlgebraElement::zero();
    for (e, c) in a.terms() {
        let k = big_d1_minus(ctx_s, e) + big_d2_minus(ctx_s, e);
        out.add_term(p_s(ctx_s, e), &c.shifted(k));
    }
    Ok(out)
}

/// The slice `pi_l(e) = prod_i Y_{i,l}^{y} prod_i A_{i,l}^{-v}` as a product of generators.
fn slice_product(ctx: &AlgebraContext, e: &ExponentVector, l: i64, a_first: bool) -> AlgebraElement {
    let slice = e.slice_at(l);
    let mut ys = AlgebraElement::one();
    for ((i, ll), c) in slice.y_entries() {
        ys = multiply(ctx, &ys, &ctx.gen_y(i, ll, c), None);
    }
    let mut as_ = AlgebraElement::one();
    for ((i, ll), c) in slice.v_entries() {
        let g = ctx.power(&ctx.gen_a_inv(i, ll), c as u32, None);
        as_ = multiply(ctx, &as_, &g, None);
    }
    if a_first {
        multiply(ctx, &as_, &ys, None)
    } else {
        multiply(ctx, &ys, &as_, None)
    }
}

/// The ordered product of the slices of `e` in the generic algebra.
pub fn ordered_product(ctx: &AlgebraContext, e: &ExponentVector, dir: Direction) -> AlgebraElement {
    let mut ls = e.spectral_indices();
    if dir == Direction::Descending {
        ls.reverse();
    }
    let mut acc = AlgebraElement::one();
    for l in ls {
        acc = multiply(ctx, &acc, &slice_product(ctx, e, l, false), None);
    }
    acc
}

/// Exponent `g` with `ordered_product(e) = t^g b(e)`.
pub fn ordered_phase(ctx: &AlgebraContext, e: &ExponentVector, dir: Direction) -> i64 {
    let p = ordered_product(ctx, e, dir);
    let (got, c) = p.leading().expect("ordered product is a monomial");
    debug_assert_eq!(got, e);
    c.min_exp().expect("nonzero coefficient")
}

/// `tau_{s,t}` by its definition: write `b(e)` as a power of `t` times the descending
/// product of its slices, then replace each slice by its image in the periodic algebra.
pub fn tau_st_ordered(ctx_s: &AlgebraContext, a: &AlgebraElement) -> Result<AlgebraElement> {
    check_periodic(ctx_s)?;
    let generic = ctx_s.with_s(0);
    let mut out = AlgebraElement::zero();
    for (e, c) in a.terms() {
        let g = ordered_phase(&generic, e, Direction::Descending);
        let mut image = AlgebraElement::one();
        let mut ls = e.spectral_indices();
        ls.reverse();
        for l in ls {
            image = multiply(ctx_s, &image, &slice_product(ctx_s, &e.slice_at(l), l, true), None);
        }
        let (pe, h) = image.leading().expect("image is a monomial");
        let h = h.min_exp().expect("nonzero coefficient");
        out.add_term(pe.clone(), &c.shifted(h - g));
    }
    Ok(out)
}

/// The closed exponent `gamma` with `t^gamma` times the ascending slice product equal to
/// `b(e)`. Valid when every `C_ij C_ji <= 3`.
pub fn ascending_phase_formula(ctx: &AlgebraContext, e: &ExponentVector) -> i64 {
    let cd = ctx.cartan();
    let n = cd.rank();
    let mut gamma = 0;
    let ls = e.spectral_indices();
    for &l in &ls {
        for i in 0..n {
            let vi = e.v(i, l);
            gamma += vi * vi;
            for j in 0..n {
                if i == j {
                    continue;
                }
                if cd.c(i, j) + cd.r(i) == -1 {
                    gamma -= vi * e.v(j, l);
                }
                if cd.c(i, j) == -3 && cd.r(i) == 1 {
                    gamma -= vi * (e.v(j, l + 1) + e.v(j, l - 1));
                }
            }
        }
    }
    gamma
}

/// The image of a single generator under `tau_{s,t}`.
pub fn tau_generator(ctx_s: &AlgebraContext, g: &super::word::Generator) -> AlgebraElement {
    use super::word::Generator;
    match *g {
        Generator::T(k) => AlgebraElement::t_power(k),
        Generator::Y { i, l, p } => ctx_s.gen_y(i, l, p),
        Generator::AInv { i, l, p } => ctx_s.power(&ctx_s.gen_a_inv(i, l), p as u32, None),
    }
}

/// `t^k` as an element; a convenience for comparisons.
pub fn t_pow(k: i64) -> Laurent {
    Laurent::monomial(k, 1)
}
