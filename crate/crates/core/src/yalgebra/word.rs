use super::context::AlgebraContext;
use super::element::{multiply, AlgebraElement};
use crate::error::{Error, Result};

/// One factor of an ordered product of generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `t^k`.
    T(i64),
    /// `Y_{i,l}^p`, `p` of either sign.
    Y { i: usize, l: i64, p: i64 },
    /// `(A_{i,l}^{-1})^p`, `p >= 1`.
    AInv { i: usize, l: i64, p: i64 },
}

/// Splits `"name[a,b]^p"` into its parts.
pub(crate) fn split_indexed(tok: &str) -> Option<(&str, Vec<i64>, Option<i64>)> {
    let open = tok.find('[')?;
    let close = tok.find(']')?;
    if close < open {
        return None;
    }
    let name = &tok[..open];
    let idx: Option<Vec<i64>> = tok[open + 1..close]
        .split(',')
        .map(|x| x.trim().parse::<i64>().ok())
        .collect();
    let rest = &tok[close + 1..];
    let power = if rest.is_empty() {
        None
    } else {
        Some(rest.strip_prefix('^')?.parse::<i64>().ok()?)
    };
    Some((name, idx?, power))
}

/// Resolves `[i,l]` or the rank-one shorthand `[l]` to a 0-based node and an index.
pub(crate) fn node_and_index(idx: &[i64], rank: usize, tok: &str) -> Result<(usize, i64)> {
    match idx {
        [l] if rank == 1 => Ok((0, *l)),
        [_] => Err(Error::Parse(format!(
            "{tok}: single-index form needs rank 1, have rank {rank}"
        ))),
        [i, l] => {
            if *i < 1 || *i as usize > rank {
                return Err(Error::IndexOutOfRange(format!("{tok}: node {i} of rank {rank}")));
            }
            Ok((*i as usize - 1, *l))
        }
        _ => Err(Error::Parse(format!("{tok}: expected one or two indices"))),
    }
}

pub(crate) fn tokens(text: &str) -> impl Iterator<Item = &str> {
    text.split(|c: char| c == '*' || c.is_whitespace()).filter(|s| !s.is_empty())
}

/// Parses `t^k`, `Y[i,l]^p` and `A[i,l]^-p`, separated by `*` or whitespace.
pub fn parse_word(text: &str, rank: usize) -> Result<Vec<Generator>> {
    let mut out = Vec::new();
    for tok in tokens(text) {
        if tok == "t" {
            out.push(Generator::T(1));
            continue;
        }
        if let Some(k) = tok.strip_prefix("t^") {
            let k = k.parse::<i64>().map_err(|_| Error::Parse(format!("bad power in {tok}")))?;
            out.push(Generator::T(k));
            continue;
        }
        let (name, idx, power) =
            split_indexed(tok).ok_or_else(|| Error::Parse(format!("unrecognized token {tok}")))?;
        let (i, l) = node_and_index(&idx, rank, tok)?;
        match name {
            "Y" => out.push(Generator::Y { i, l, p: power.unwrap_or(1) }),
            "A" => match power {
                Some(p) if p < 0 => out.push(Generator::AInv { i, l, p: -p }),
                _ => {
                    return Err(Error::Parse(format!(
                        "{tok}: A generators appear with negative powers only"
                    )))
                }
            },
            _ => return Err(Error::Parse(format!("unknown generator {name} in {tok}"))),
        }
    }
    Ok(out)
}

/// Multiplies the generators left to right.
pub fn word_to_element(ctx: &AlgebraContext, word: &[Generator]) -> Result<AlgebraElement> {
    let mut acc = AlgebraElement::one();
    for g in word {
        let factor = match *g {
            Generator::T(k) => AlgebraElement::t_power(k),
            Generator::Y { i, l, p } => {
                ctx.check_node(i)?;
                ctx.gen_y(i, l, p)
            }
            Generator::AInv { i, l, p } => {
                ctx.check_node(i)?;
                ctx.power(&ctx.gen_a_inv(i, l), p as u32, None)
            }
        };
        acc = multiply(ctx, &acc, &factor, None);
    }
    Ok(acc)
}

/// Parses and multiplies in one step.
pub fn parse_element(ctx: &AlgebraContext, text: &str) -> Result<AlgebraElement> {
    word_to_element(ctx, &parse_word(text, ctx.rank())?)
}
