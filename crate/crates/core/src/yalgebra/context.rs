use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::commutative::CommMonomial;
use super::exponent::ExponentVector;
use crate::cartan::{CartanData, ZMatrixKind};
use crate::error::{Error, Result};

/// Which quantized Cartan matrix feeds the u-characters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Built from `C(z)`; needs `B(z)` symmetric.
    #[default]
    Standard,
    /// Built from `C'(z)`; needs `B` symmetric.
    Primed,
}

/// Everything the algebra operations need: the Cartan data, the order `s` of the
/// root of unity (`0` for the generic algebra) and the mode.
#[derive(Clone, Debug)]
pub struct AlgebraContext {
    cd: Arc<CartanData>,
    s: u32,
    mode: Mode,
    /// `ops[i][j]` lists the `(k, P_k)` with `C_ij(z) = sum_k P_k z^k`.
    ops: Arc<Vec<Vec<Vec<(i64, i64)>>>>,
}

pub type UVector = BTreeMap<(usize, i64), i64>;

impl AlgebraContext {
    /// A context whose product is guaranteed associative and compatible with the bar
    /// involution.
    pub fn new(cd: CartanData, s: u32, mode: Mode) -> Result<Self> {
        match mode {
            Mode::Standard if !cd.flags().bz_symmetric => return Err(Error::NotBzSymmetric),
            Mode::Primed if !cd.flags().b_symmetric => return Err(Error::NotBSymmetric),
            _ => {}
        }
        Ok(Self::bicharacters_only(cd, s, mode))
    }

    /// A context for evaluating u-characters and bicharacters only; the symmetry
    /// requirement of the product is not checked.
    pub fn bicharacters_only(cd: CartanData, s: u32, mode: Mode) -> Self {
        let kind = match mode {
            Mode::Standard => ZMatrixKind::C,
            Mode::Primed => ZMatrixKind::CPrime,
        };
        let zm = cd.z_matrix(kind);
        let n = cd.rank();
        let ops = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        zm.get(i, j)
                            .terms()
                            .map(|(k, c)| (k, i64::try_from(c).expect("small coefficient")))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self {
            cd: Arc::new(cd),
            s,
            mode,
            ops: Arc::new(ops),
        }
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cd
    }

    pub fn rank(&self) -> usize {
        self.cd.rank()
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn is_generic(&self) -> bool {
        self.s == 0
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn r(&self, i: usize) -> i64 {
        self.cd.r(i)
    }

    /// The same Cartan data and mode at another order.
    pub fn with_s(&self, s: u32) -> Self {
        Self {
            cd: self.cd.clone(),
            s,
            mode: self.mode,
            ops: self.ops.clone(),
        }
    }

    /// Reduces a spectral index into the index set of this context.
    pub fn norm(&self, l: i64) -> i64 {
        if self.s == 0 {
            l
        } else {
            l.rem_euclid(self.s as i64)
        }
    }

    pub fn check_node(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange(format!("node {} of rank {}", i + 1, self.rank())))
        }
    }

    /// Requires `s = 0` or `s > 2 rvee`.
    pub fn check_root_of_unity(&self) -> Result<()> {
        let bound = 2 * self.cd.rvee();
        if self.s != 0 && (self.s as i64) <= bound {
            return Err(Error::SmallS { s: self.s, bound: self.cd.rvee() * 2 });
        }
        Ok(())
    }

    pub fn y_vec(&self, i: usize, l: i64) -> ExponentVector {
        let mut e = ExponentVector::new();
        e.add_y(i, self.norm(l), 1);
        e
    }

    pub fn a_vec(&self, i: usize, l: i64) -> ExponentVector {
        let mut e = ExponentVector::new();
        e.add_v(i, self.norm(l), 1);
        e
    }

    /// Reduces every index of `e` into the index set of this context.
    pub fn normalize(&self, e: &ExponentVector) -> ExponentVector {
        if self.s == 0 {
            return e.clone();
        }
        let mut out = ExponentVector::new();
        for ((i, l), c) in e.y_entries() {
            out.add_y(i, self.norm(l), c);
        }
        for ((i, l), c) in e.v_entries() {
            out.add_v(i, self.norm(l), c);
        }
        out
    }

    /// All `u_{i,l}(e)`, non-zero entries only.
    pub fn u_vector(&self, e: &ExponentVector) -> UVector {
        let mut u: UVector = e.y.clone();
        let n = self.rank();
        for (&(j, lp), &c) in &e.v {
            for i in 0..n {
                for &(k, p) in &self.ops[i][j] {
                    let key = (i, self.norm(lp - k));
                    let entry = u.entry(key).or_insert(0);
                    *entry -= p * c;
                    if *entry == 0 {
                        u.remove(&key);
                    }
                }
            }
        }
        u
    }

    pub fn u_char(&self, e: &ExponentVector, i: usize, l: i64) -> i64 {
        self.u_vector(e).get(&(i, self.norm(l))).copied().unwrap_or(0)
    }

    pub fn d1(&self, e1: &ExponentVector, e2: &ExponentVector) -> i64 {
        self.d1_with(e1, e2, &self.u_vector(e2))
    }

    pub fn d2(&self, e1: &ExponentVector, e2: &ExponentVector) -> i64 {
        self.d2_with(e1, &self.u_vector(e1), e2)
    }

    pub(crate) fn d1_with(&self, e1: &ExponentVector, e2: &ExponentVector, u2: &UVector) -> i64 {
        let mut acc = 0;
        for (&(i, lp), &c) in &e1.v {
            if let Some(u) = u2.get(&(i, self.norm(lp - self.r(i)))) {
                acc += c * u;
            }
        }
        for (&(i, lp), &c) in &e1.y {
            acc += c * e2.v(i, self.norm(lp - self.r(i)));
        }
        acc
    }

    pub(crate) fn d2_with(&self, e1: &ExponentVector, u1: &UVector, e2: &ExponentVector) -> i64 {
        let mut acc = 0;
        for (&(i, l), &c) in &e2.v {
            if let Some(u) = u1.get(&(i, self.norm(l + self.r(i)))) {
                acc += c * u;
            }
        }
        for (&(i, l), &c) in &e2.y {
            acc += c * e1.v(i, self.norm(l + self.r(i)));
        }
        acc
    }

    /// Exponent of `t` in `b(e1) b(e2) = t^{d1 + d2} b(e1 + e2)`.
    pub fn product_twist(&self, e1: &ExponentVector, e2: &ExponentVector) -> i64 {
        let u1 = self.u_vector(e1);
        let u2 = self.u_vector(e2);
        self.d1_with(e1, e2, &u2) + self.d2_with(e1, &u1, e2)
    }

    /// Exponent in `m1 m2 = t^{2 d1(m1,m2) - 2 d2(m2,m1)} m2 m1`.
    pub fn commutation_exponent(&self, e1: &ExponentVector, e2: &ExponentVector) -> i64 {
        2 * self.d1(e1, e2) - 2 * self.d2(e2, e1)
    }

    /// The exponent `alpha(e) = d1(e, e)` making `t^alpha b(e)` bar-invariant.
    pub fn normalize_invariant(&self, e: &ExponentVector) -> i64 {
        self.d1(e, e)
    }

    pub fn is_dominant(&self, e: &ExponentVector) -> bool {
        self.u_vector(e).values().all(|u| *u >= 0)
    }

    pub fn is_i_dominant(&self, e: &ExponentVector, i: usize) -> bool {
        self.u_vector(e).iter().all(|(k, u)| k.0 != i || *u >= 0)
    }

    /// The commutative monomial `prod Y_{i,l}^{u_{i,l}(e)}`.
    pub fn pi_hat(&self, e: &ExponentVector) -> CommMonomial {
        CommMonomial::from_map(self.u_vector(e))
    }

    /// `y_{i,l}(out) = y_{i,l+k}(e)`, likewise for `v`. Generic contexts only.
    pub fn shift(&self, e: &ExponentVector, k: i64) -> Result<ExponentVector> {
        if self.s != 0 {
            return Err(Error::ShiftInPeriodicContext);
        }
        Ok(e.translated(-k))
    }
}
