use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::yalgebra::word::{node_and_index, split_indexed, tokens};
use crate::yalgebra::{AlgebraContext, ExponentVector};

/// A monomial `prod X_{i,l}^{x}` in the Grothendieck ring, with 0-based nodes.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RepMonomial(BTreeMap<(usize, i64), u32>);

/// A `Z[t^{+-1}]`-combination of Rep monomials.
pub type RepElement = BTreeMap<RepMonomial, Laurent>;

impl RepMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(i: usize, l: i64) -> Self {
        Self([((i, l), 1)].into_iter().collect())
    }

    pub fn from_map(map: BTreeMap<(usize, i64), u32>) -> Self {
        Self(map.into_iter().filter(|(_, x)| *x != 0).collect())
    }

    pub fn exponent(&self, i: usize, l: i64) -> u32 {
        self.0.get(&(i, l)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, i64), u32)> + '_ {
        self.0.iter().map(|(k, v)| (*k, *v))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.0.clone();
        for (k, v) in other.entries() {
            *out.entry(k).or_insert(0) += v;
        }
        Self(out)
    }

    /// `X^u` for the u-characters of a dominant monomial.
    pub fn from_dominant(ctx: &AlgebraContext, e: &ExponentVector) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (k, u) in ctx.u_vector(e) {
            if u < 0 {
                return Err(Error::NotDominant(e.to_string()));
            }
            out.insert(k, u as u32);
        }
        Ok(Self(out))
    }

    /// The exponent vector `prod Y_{i,l}^{x_{i,l}}` with the same indices.
    pub fn to_y_vector(&self) -> ExponentVector {
        ExponentVector::from_parts(self.entries().map(|(k, x)| (k, x as i64)), std::iter::empty())
    }

    /// Indices reduced into `0..s`.
    pub fn folded(&self, s: u32) -> Self {
        if s == 0 {
            return self.clone();
        }
        let mut out = BTreeMap::new();
        for ((i, l), x) in self.entries() {
            *out.entry((i, l.rem_euclid(s as i64))).or_insert(0) += x;
        }
        Self(out)
    }

    /// Parses `X[i,l]^k` factors separated by `*` or whitespace; `1` is the empty product.
    pub fn parse(text: &str, rank: usize) -> Result<Self> {
        let mut out = BTreeMap::new();
        for tok in tokens(text) {
            if tok == "1" {
                continue;
            }
            let (name, idx, power) =
                split_indexed(tok).ok_or_else(|| Error::Parse(format!("unrecognized token {tok}")))?;
            if name != "X" {
                return Err(Error::Parse(format!("expected X[..] factors, got {tok}")));
            }
            let (i, l) = node_and_index(&idx, rank, tok)?;
            let p = power.unwrap_or(1);
            if p < 0 {
                return Err(Error::Parse(format!("{tok}: negative powers are not Rep monomials")));
            }
            *out.entry((i, l)).or_insert(0) += p as u32;
        }
        Ok(Self::from_map(out))
    }
}

impl fmt::Display for RepMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .entries()
            .map(|((i, l), x)| {
                if x == 1 {
                    format!("X[{},{}]", i + 1, l)
                } else {
                    format!("X[{},{}]^{}", i + 1, l, x)
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Debug for RepMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Drops zero coefficients.
pub fn rep_add_term(target: &mut RepElement, m: RepMonomial, c: &Laurent) {
    if c.is_zero() {
        return;
    }
    let slot = target.entry(m.clone()).or_default();
    *slot += c;
    if slot.is_zero() {
        target.remove(&m);
    }
}
