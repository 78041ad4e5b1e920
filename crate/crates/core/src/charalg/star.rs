use num_rational::Ratio;

use super::characters::Characters;
use super::rep::{rep_add_term, RepElement, RepMonomial};
use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::yalgebra::{multiply, AlgebraElement};

/// The deformed product `a * b = chi^{-1}(pi(chi(a) chi(b)))`.
///
/// `chi` is `chi_{q,t}` or `chi_{eps,t}` according to the context. The product of
/// characters is expanded over standard elements `E_t(b(e))` of its dominant monomials,
/// each of which is sent to `X^{u(e)}`. Bilinear, not associative in general.
pub fn star_product(chars: &Characters, a: &RepElement, b: &RepElement) -> Result<RepElement> {
    let ctx = chars.context();
    let cap = chars.max_degree();
    let mut product = AlgebraElement::zero();
    let mut all_complete = true;
    for (ma, ca) in a {
        let xa = chars.character(ma)?;
        for (mb, cb) in b {
            let xb = chars.character(mb)?;
            all_complete &= xa.is_complete() && xb.is_complete();
            check_bound(chars, &ma.mul(mb), cap)?;
            let term = multiply(ctx, &xa.element, &xb.element, Some(cap));
            product.add_assign(&term.scale(&(ca * cb)));
        }
    }
    if !ctx.cartan().flags().finite && !all_complete {
        return Err(Error::TruncationInsufficient(format!(
            "characters are not complete within degree {cap} and the Cartan matrix is not of finite type"
        )));
    }

    let mut out = RepElement::new();
    let mut rest = product;
    while let Some((e, c)) = rest.leading() {
        let (e, c) = (e.clone(), c.clone());
        if !ctx.is_dominant(&e) {
            return Err(Error::NotDominant(format!(
                "{e} is maximal in the remainder but not dominant"
            )));
        }
        let standard = chars.e_t(&e)?;
        rest = rest.sub(&standard.element.scale(&c));
        rep_add_term(&mut out, RepMonomial::from_dominant(ctx, &e)?, &c);
    }
    Ok(out)
}

/// For finite types the dominant monomials below `X^U` have degree at most
/// `sum_i (C^{-1} U)_i`; the product is exact only if that fits under `cap`.
fn check_bound(chars: &Characters, head: &RepMonomial, cap: i64) -> Result<()> {
    let cd = chars.context().cartan();
    if !cd.flags().finite {
        return Ok(());
    }
    let mut totals = vec![0i64; cd.rank()];
    for ((i, _), x) in head.entries() {
        totals[i] += x as i64;
    }
    let Some(v) = cd.solve(&totals) else {
        return Ok(());
    };
    let bound: Ratio<i128> = v.into_iter().sum();
    if bound.floor().to_integer() > cap as i128 {
        return Err(Error::TruncationInsufficient(format!(
            "dominant monomials of {head} may reach degree {}, above {cap}",
            bound.floor()
        )));
    }
    Ok(())
}

/// `(a * b) * c - a * (b * c)`.
pub fn associator(chars: &Characters, a: &RepElement, b: &RepElement, c: &RepElement) -> Result<RepElement> {
    let left = star_product(chars, &star_product(chars, a, b)?, c)?;
    let right = star_product(chars, a, &star_product(chars, b, c)?)?;
    let mut out = left;
    for (m, k) in right {
        rep_add_term(&mut out, m, &-&k);
    }
    Ok(out)
}

/// `c X` as a Rep element.
pub fn rep_term(m: RepMonomial, c: Laurent) -> RepElement {
    let mut out = RepElement::new();
    rep_add_term(&mut out, m, &c);
    out
}
