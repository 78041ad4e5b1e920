use std::collections::BTreeMap;
use std::sync::Mutex;

use super::algorithm::{ft_algorithm, AlgorithmOptions};
use super::rep::RepMonomial;
use super::{CharacterSeries, Status};
use crate::error::{Error, Result};
use crate::yalgebra::tau::{tau_st, tau_st_ordered};
use crate::yalgebra::{multiply, AlgebraContext, AlgebraElement, ExponentVector};

/// How the root-of-unity character is obtained from the generic one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Route {
    /// Apply the specialization by its definition on ordered products.
    #[default]
    Tau,
    /// Expand in the basis and apply the closed phase formula termwise.
    Axquat,
}

/// Character computations over one context, with the fundamental series cached.
#[derive(Debug)]
pub struct Characters {
    ctx: AlgebraContext,
    generic: AlgebraContext,
    opts: AlgorithmOptions,
    fundamentals: Mutex<BTreeMap<usize, CharacterSeries>>,
}

impl Characters {
    /// `ctx` may be generic or at a root of unity of order `s > 2 rvee`.
    pub fn new(ctx: AlgebraContext, opts: AlgorithmOptions) -> Result<Self> {
        ctx.check_root_of_unity()?;
        let generic = ctx.with_s(0);
        Ok(Self {
            ctx,
            generic,
            opts,
            fundamentals: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn context(&self) -> &AlgebraContext {
        &self.ctx
    }

    pub fn generic_context(&self) -> &AlgebraContext {
        &self.generic
    }

    pub fn options(&self) -> AlgorithmOptions {
        self.opts
    }

    pub fn max_degree(&self) -> i64 {
        self.opts.max_degree
    }

    /// `F_t(b(seed))` in the generic algebra.
    pub fn ft(&self, seed: &ExponentVector) -> Result<CharacterSeries> {
        ft_algorithm(&self.generic, seed, self.opts)
    }

    /// `F_t(Y_{i,l})`, computed once per node and translated.
    pub fn fundamental(&self, i: usize, l: i64) -> Result<CharacterSeries> {
        self.generic.check_node(i)?;
        let base = {
            let mut cache = self.fundamentals.lock().expect("cache lock");
            match cache.get(&i) {
                Some(f) => f.clone(),
                None => {
                    let f = self.ft(&self.generic.y_vec(i, 0))?;
                    cache.insert(i, f.clone());
                    f
                }
            }
        };
        Ok(CharacterSeries {
            element: base.element.map_exponents(|e| e.translated(l)),
            max_degree: base.max_degree,
            status: match base.status {
                Status::Inconsistent { witness } => Status::Inconsistent { witness: witness.translated(l) },
                other => other,
            },
            seed: base.seed.translated(l),
            collisions: base.collisions.iter().map(|e| e.translated(l)).collect(),
        })
    }

    /// `chi_{q,t}` of a Rep monomial: fundamentals multiplied in increasing `l`.
    pub fn chi_qt(&self, m: &RepMonomial) -> Result<CharacterSeries> {
        let mut factors: Vec<((usize, i64), u32)> = m.entries().collect();
        factors.sort_by_key(|((i, l), _)| (*l, *i));
        let cap = self.opts.max_degree;
        let mut acc = AlgebraElement::one();
        let mut status = Status::Complete;
        let mut collisions = Vec::new();
        for ((i, l), x) in factors {
            let f = self.fundamental(i, l)?;
            status = status.and(&f.status);
            collisions.extend(f.collisions.iter().cloned());
            for _ in 0..x {
                acc = multiply(&self.generic, &acc, &f.element, Some(cap));
            }
        }
        Ok(CharacterSeries {
            element: acc,
            max_degree: cap,
            status,
            seed: m.to_y_vector(),
            collisions,
        })
    }

    /// The standard element `E_t(b(e))` for a dominant `e` of this context.
    ///
    /// Generic: `b(e) b(-U) chi_{q,t}(X^U)` with `U` the u-characters of `e`. At a root
    /// of unity `U` is read on the window `0..s`, the generic character of that lift is
    /// specialized and the same prefactor is applied.
    pub fn e_t(&self, e: &ExponentVector) -> Result<CharacterSeries> {
        let ctx = &self.ctx;
        let lift = RepMonomial::from_dominant(ctx, e)?;
        let generic = self.chi_qt(&lift)?;
        let body = if ctx.is_generic() {
            generic.element
        } else {
            tau_st(ctx, &generic.element)?
        };
        let prefactor = multiply(
            ctx,
            &AlgebraElement::basis(e.clone()),
            &AlgebraElement::basis(lift.to_y_vector().negated()),
            None,
        );
        let cap = self.opts.max_degree;
        Ok(CharacterSeries {
            element: multiply(ctx, &prefactor, &body, Some(cap)),
            max_degree: cap,
            status: generic.status,
            seed: e.clone(),
            collisions: generic.collisions,
        })
    }

    /// `chi_{eps,t}` of a Rep monomial over `Z/sZ`, through its window lift.
    pub fn chi_eps_t(&self, m: &RepMonomial, route: Route) -> Result<CharacterSeries> {
        let ctx = &self.ctx;
        if ctx.is_generic() {
            return Err(Error::ModeUnsupported("chi_eps_t needs s >= 1".into()));
        }
        let lift = m.folded(ctx.s());
        let generic = self.chi_qt(&lift)?;
        let element = match route {
            Route::Tau => tau_st_ordered(ctx, &generic.element)?,
            Route::Axquat => tau_st(ctx, &generic.element)?,
        };
        Ok(CharacterSeries {
            element,
            max_degree: generic.max_degree,
            status: generic.status,
            seed: lift.to_y_vector(),
            collisions: generic.collisions,
        })
    }

    /// `chi_{q,t}` or `chi_{eps,t}` according to the context.
    pub fn character(&self, m: &RepMonomial) -> Result<CharacterSeries> {
        if self.ctx.is_generic() {
            self.chi_qt(m)
        } else {
            self.chi_eps_t(m, Route::Axquat)
        }
    }
}
