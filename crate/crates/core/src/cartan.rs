//! Generalized Cartan matrices, symmetrizers and their quantizations.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::Laurent;

type Q = Ratio<i128>;

/// Caller options for [`validate_cartan`].
#[derive(Clone, Debug, Default)]
pub struct ValidateOptions {
    pub symmetrizer: Option<Vec<i64>>,
    pub allow_decomposable: bool,
    pub name: Option<String>,
}

/// Boolean properties derived once at validation time.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanFlags {
    pub symmetric: bool,
    pub symmetrizable: bool,
    pub indecomposable: bool,
    pub finite: bool,
    pub affine: bool,
    pub bz_symmetric: bool,
    pub b_symmetric: bool,
    pub q_symmetrizable: bool,
    pub cc_le3: bool,
    pub det_cz_nonzero: bool,
    pub det_hypothesis: bool,
}

/// A validated generalized Cartan matrix with its symmetrizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    name: Option<String>,
    matrix: Vec<Vec<i64>>,
    symmetrizer: Vec<i64>,
    rvee: i64,
    flags: CartanFlags,
}

/// Which quantized matrix a [`ZPolyMatrix`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZMatrixKind {
    C,
    CPrime,
    B,
    BPrime,
}

/// A square matrix of Laurent polynomials in `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZPolyMatrix {
    pub kind: ZMatrixKind,
    pub entries: Vec<Vec<Laurent>>,
}

impl ZPolyMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Laurent {
        &self.entries[i][j]
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..n).all(|j| self.entries[i][j] == self.entries[j][i]))
    }
}

/// The exact determinant of `C(z)` and what it says about roots of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetReport {
    pub det: Laurent,
    pub is_zero: bool,
    /// Orders `s` such that a primitive `s`-th root of unity is a zero of the determinant.
    pub vanishing_orders: Vec<u64>,
    /// `Some` when the hypothesis `C_ij < -1 => -C_ji <= r_i` holds; then tells whether
    /// the determinant has the shape `z^-R + ... + z^R` with a symmetric middle.
    pub shape_ok: Option<bool>,
}

/// Entries of `C(z)^{-1}` expanded in decreasing powers of `z`, kept down to `z^{-order}`.
#[derive(Clone, Debug)]
pub struct InverseSeries {
    pub order: i64,
    entries: Vec<Vec<Laurent>>,
}

impl InverseSeries {
    /// Coefficient of `z^r` in entry `(i, j)`.
    pub fn coeff(&self, i: usize, j: usize, r: i64) -> BigInt {
        assert!(r >= -self.order, "coefficient below the expansion order");
        self.entries[i][j].coeff(r)
    }

    pub fn entry(&self, i: usize, j: usize) -> &Laurent {
        &self.entries[i][j]
    }
}

pub fn validate_cartan(matrix: Vec<Vec<i64>>, opts: ValidateOptions) -> Result<CartanData> {
    let n = matrix.len();
    if n == 0 {
        return Err(Error::NotCartan("empty matrix".into()));
    }
    if matrix.iter().any(|row| row.len() != n) {
        return Err(Error::NotCartan("matrix is not square".into()));
    }
    for i in 0..n {
        if matrix[i][i] != 2 {
            return Err(Error::NotCartan(format!("diagonal entry {} is not 2", i + 1)));
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            if matrix[i][j] > 0 {
                return Err(Error::NotCartan(format!(
                    "positive off-diagonal entry at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
            if (matrix[i][j] == 0) != (matrix[j][i] == 0) {
                return Err(Error::NotCartan(format!(
                    "zero pattern is not symmetric at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }

    let components = components(&matrix);
    let indecomposable = components.len() == 1;
    if !indecomposable && !opts.allow_decomposable {
        return Err(Error::Decomposable);
    }

    let computed = symmetrizer(&matrix, &components)?;
    let symmetrizer = match opts.symmetrizer {
        Some(r) => {
            if r.len() != n {
                return Err(Error::OverrideInconsistent(format!(
                    "expected {n} entries, got {}",
                    r.len()
                )));
            }
            if r.iter().any(|x| *x <= 0) {
                return Err(Error::OverrideInconsistent("entries must be positive".into()));
            }
            for i in 0..n {
                for j in 0..n {
                    if r[i] * matrix[i][j] != r[j] * matrix[j][i] {
                        return Err(Error::OverrideInconsistent(format!(
                            "r_{} C_{}{} != r_{} C_{}{}",
                            i + 1,
                            i + 1,
                            j + 1,
                            j + 1,
                            j + 1,
                            i + 1
                        )));
                    }
                }
            }
            r
        }
        None => computed,
    };

    let mut cd = CartanData {
        name: opts.name,
        matrix,
        symmetrizer,
        rvee: 1,
        flags: CartanFlags {
            symmetric: false,
            symmetrizable: true,
            indecomposable,
            finite: false,
            affine: false,
            bz_symmetric: false,
            b_symmetric: false,
            q_symmetrizable: false,
            cc_le3: false,
            det_cz_nonzero: false,
            det_hypothesis: false,
        },
    };
    cd.rvee = cd.compute_rvee();
    cd.flags = cd.compute_flags();
    Ok(cd)
}

fn components(matrix: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = matrix.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if j != i && matrix[i][j] != 0 && !seen[j] {
                    seen[j] = true;
                    comp.push(j);
                    queue.push_back(j);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// BFS propagation of `r_i C_ij = r_j C_ji`, normalized to coprime integers per block.
fn symmetrizer(matrix: &[Vec<i64>], components: &[Vec<usize>]) -> Result<Vec<i64>> {
    let n = matrix.len();
    let mut r: Vec<Option<Q>> = vec![None; n];
    for comp in components {
        let root = comp[0];
        r[root] = Some(Q::one());
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let ri = r[i].unwrap();
            for j in 0..n {
                if j == i || matrix[i][j] == 0 {
                    continue;
                }
                let rj = ri * Q::new(matrix[i][j] as i128, matrix[j][i] as i128);
                match r[j] {
                    None => {
                        r[j] = Some(rj);
                        queue.push_back(j);
                    }
                    Some(existing) if existing != rj => return Err(Error::NotSymmetrizable),
                    Some(_) => {}
                }
            }
        }
    }
    let mut out = vec![0i64; n];
    for comp in components {
        let lcm = comp
            .iter()
            .fold(1i128, |acc, &i| acc.lcm(r[i].unwrap().denom()));
        let ints: Vec<i128> = comp.iter().map(|&i| (r[i].unwrap() * Q::from(lcm)).to_integer()).collect();
        let g = ints.iter().fold(0i128, |acc, x| acc.gcd(x));
        for (&i, v) in comp.iter().zip(ints) {
            out[i] = (v / g) as i64;
        }
    }
    Ok(out)
}

impl CartanData {
    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn c(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn r(&self, i: usize) -> i64 {
        self.symmetrizer[i]
    }

    pub fn max_r(&self) -> i64 {
        *self.symmetrizer.iter().max().unwrap()
    }

    pub fn max_neg_c(&self) -> i64 {
        let n = self.rank();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .map(|(i, j)| -self.matrix[i][j])
            .max()
            .unwrap_or(0)
    }

    pub fn rvee(&self) -> i64 {
        self.rvee
    }

    pub fn flags(&self) -> &CartanFlags {
        &self.flags
    }

    fn compute_rvee(&self) -> i64 {
        let n = self.rank();
        let mut best = 1;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    best = best.max(self.r(i) - 1 - self.c(i, j));
                }
            }
        }
        best
    }

    fn compute_flags(&self) -> CartanFlags {
        let n = self.rank();
        let pairs = || (0..n).flat_map(move |i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j);
        let symmetric = pairs().all(|(i, j)| self.c(i, j) == self.c(j, i));
        let b_symmetric = pairs().all(|(i, j)| self.r(i) * self.c(i, j) == self.r(j) * self.c(j, i));
        let bz_symmetric = self.z_matrix(ZMatrixKind::B).is_symmetric();
        let q_symmetrizable = b_symmetric
            && pairs().all(|(i, j)| self.r(i) == 1 || self.c(i, j) == -1 || self.c(i, j) == 0);
        let cc_le3 = pairs().all(|(i, j)| self.c(i, j) * self.c(j, i) <= 3);
        let det_hypothesis = self.det_hypothesis();
        let det = self.det_cz();
        let (finite, affine) = self.finite_affine();
        CartanFlags {
            symmetric,
            symmetrizable: true,
            indecomposable: self.flags.indecomposable,
            finite,
            affine,
            bz_symmetric,
            b_symmetric,
            q_symmetrizable,
            cc_le3,
            det_cz_nonzero: !det.is_zero,
            det_hypothesis,
        }
    }

    fn det_hypothesis(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| {
            (0..n).all(|j| i == j || self.c(i, j) >= -1 || -self.c(j, i) <= self.r(i))
        })
    }

    /// Finite type: every principal minor is positive. Affine type: the determinant
    /// vanishes while every proper principal minor is positive.
    fn finite_affine(&self) -> (bool, bool) {
        let n = self.rank();
        if n > 16 || !self.flags.indecomposable {
            return (false, false);
        }
        let mut proper_positive = true;
        for mask in 1u32..(1 << n) - 1 {
            let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            if int_det(&self.matrix, &idx) <= Q::zero() {
                proper_positive = false;
                break;
            }
        }
        let full: Vec<usize> = (0..n).collect();
        let d = int_det(&self.matrix, &full);
        (
            proper_positive && d > Q::zero(),
            proper_positive && d.is_zero(),
        )
    }

    /// The quantized matrices `C(z)`, `C'(z)`, `B(z) = D(z) C(z)`, `B'(z)`.
    pub fn z_matrix(&self, kind: ZMatrixKind) -> ZPolyMatrix {
        let n = self.rank();
        let mut entries = vec![vec![Laurent::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let ri = self.r(i);
                entries[i][j] = match kind {
                    ZMatrixKind::C | ZMatrixKind::CPrime if i == j => {
                        Laurent::from_terms([(ri, 1), (-ri, 1)])
                    }
                    ZMatrixKind::C => Laurent::quantum_integer(self.c(i, j)),
                    ZMatrixKind::CPrime => Laurent::quantum_integer(self.c(i, j)).dilated(ri),
                    ZMatrixKind::B => {
                        let cij = if i == j {
                            Laurent::from_terms([(ri, 1), (-ri, 1)])
                        } else {
                            Laurent::quantum_integer(self.c(i, j))
                        };
                        &Laurent::quantum_integer(ri) * &cij
                    }
                    ZMatrixKind::BPrime => Laurent::quantum_integer(ri * self.c(i, j)),
                };
            }
        }
        ZPolyMatrix { kind, entries }
    }

    /// True when `C'(z) = C(z)`.
    pub fn primed_equals_standard(&self) -> bool {
        self.z_matrix(ZMatrixKind::C).entries == self.z_matrix(ZMatrixKind::CPrime).entries
    }

    pub fn det_cz(&self) -> DetReport {
        let cz = self.z_matrix(ZMatrixKind::C);
        let n = self.rank();
        let rows: Vec<usize> = (0..n).collect();
        let det = laurent_det(&cz.entries, &rows, &rows);
        let is_zero = det.is_zero();
        let vanishing_orders = if is_zero { Vec::new() } else { vanishing_orders(&det) };
        let shape_ok = if self.det_hypothesis() {
            let big_r: i64 = self.symmetrizer.iter().sum();
            let ok = det.max_exp() == Some(big_r)
                && det.min_exp() == Some(-big_r)
                && det.coeff(big_r).is_one()
                && det.coeff(-big_r).is_one()
                && det.is_bar_symmetric();
            Some(ok)
        } else {
            None
        };
        DetReport {
            det,
            is_zero,
            vanishing_orders,
            shape_ok,
        }
    }

    /// `C(z)^{-1}` as series in `z^{-1}`, exact down to `z^{-order}`.
    pub fn inverse_cz_series(&self, order: i64) -> Result<InverseSeries> {
        if !self.det_hypothesis() {
            return Err(Error::HypothesisViolated(
                "some C_ij < -1 has -C_ji > r_i".into(),
            ));
        }
        let report = self.det_cz();
        if report.is_zero {
            return Err(Error::HypothesisViolated("det C(z) vanishes".into()));
        }
        let det = report.det;
        let top = det.max_exp().unwrap();
        let lead = det.coeff(top);
        if !lead.abs().is_one() {
            return Err(Error::HypothesisViolated(
                "leading coefficient of det C(z) is not a unit".into(),
            ));
        }
        let n = self.rank();
        let cz = self.z_matrix(ZMatrixKind::C);
        let all: Vec<usize> = (0..n).collect();
        let mut adj = vec![vec![Laurent::zero(); n]; n];
        let mut adj_top = i64::MIN;
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = all.iter().copied().filter(|&x| x != j).collect();
                let cols: Vec<usize> = all.iter().copied().filter(|&x| x != i).collect();
                let minor = if n == 1 {
                    Laurent::one()
                } else {
                    laurent_det(&cz.entries, &rows, &cols)
                };
                adj[i][j] = if (i + j) % 2 == 0 { minor } else { -minor };
                if let Some(t) = adj[i][j].max_exp() {
                    adj_top = adj_top.max(t);
                }
            }
        }
        // 1/det = z^{-top} * sum_k inv_k z^{-k}
        let terms = (adj_top.max(0) - top + order + 2).max(1) as usize;
        let mut normalized = vec![BigInt::zero(); terms];
        for (k, c) in det.terms() {
            let idx = (top - k) as usize;
            if idx < terms {
                normalized[idx] = c * &lead;
            }
        }
        let mut inv = vec![BigInt::zero(); terms];
        inv[0] = lead.clone();
        for k in 1..terms {
            let mut acc = BigInt::zero();
            for m in 1..=k {
                acc += &normalized[m] * &inv[k - m];
            }
            inv[k] = -acc * &lead;
        }
        let inv_series = Laurent::from_terms(inv.into_iter().enumerate().map(|(k, c)| (-top - k as i64, c)));
        let mut entries = vec![vec![Laurent::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let full = &adj[i][j] * &inv_series;
                entries[i][j] = Laurent::from_terms(
                    full.terms().filter(|(k, _)| *k >= -order).map(|(k, c)| (k, c.clone())),
                );
            }
        }
        Ok(InverseSeries { order, entries })
    }

    /// The commutation exponent of `T_{i,l}` and `T_{j,k}` in the Heisenberg presentation.
    pub fn gamma_commutator(&self, i: usize, l: i64, j: usize, k: i64) -> Result<i64> {
        let n = self.rank();
        if i >= n || j >= n {
            return Err(Error::IndexOutOfRange(format!("node {} or {}", i + 1, j + 1)));
        }
        let rj = self.r(j);
        let d = l - k;
        let order = d.abs() + rj + 1;
        let inv = self.inverse_cz_series(order)?;
        let p = |r: i64| inv.coeff(j, i, r);
        let total = -p(-rj - d) - p(d + rj) + p(rj - d) + p(d - rj);
        Ok(total.to_i64().expect("commutation exponent fits in i64"))
    }

    /// A positive integer vector `a` with `sum_j a_j C_jk = 0` for all `k`, when one exists
    /// and the left kernel is one-dimensional.
    pub fn positive_null_vector(&self) -> Option<Vec<i64>> {
        let n = self.rank();
        let transposed: Vec<Vec<Q>> = (0..n)
            .map(|k| (0..n).map(|j| Q::from(self.c(j, k) as i128)).collect())
            .collect();
        let basis = rational_kernel(&transposed);
        if basis.len() != 1 {
            return None;
        }
        let v = &basis[0];
        let lcm = v.iter().fold(1i128, |acc, x| acc.lcm(x.denom()));
        let mut ints: Vec<i128> = v.iter().map(|x| (*x * Q::from(lcm)).to_integer()).collect();
        let g = ints.iter().fold(0i128, |acc, x| acc.gcd(x));
        ints.iter_mut().for_each(|x| *x /= g);
        if ints.iter().all(|x| *x < 0) {
            ints.iter_mut().for_each(|x| *x = -*x);
        }
        if ints.iter().all(|x| *x > 0) {
            Some(ints.into_iter().map(|x| x as i64).collect())
        } else {
            None
        }
    }

    /// `C^{-1} w` over the rationals, when `C` is invertible.
    pub fn solve(&self, w: &[i64]) -> Option<Vec<Ratio<i128>>> {
        let n = self.rank();
        let mut m: Vec<Vec<Q>> = (0..n)
            .map(|i| {
                let mut row: Vec<Q> = (0..n).map(|j| Q::from(self.c(i, j) as i128)).collect();
                row.push(Q::from(w[i] as i128));
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, pivot);
            let p = m[col][col];
            for x in m[col].iter_mut() {
                *x /= p;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col];
                    for c in 0..=n {
                        let v = m[col][c];
                        m[r][c] -= f * v;
                    }
                }
            }
        }
        Some(m.into_iter().map(|row| row[n]).collect())
    }
}

fn int_det(matrix: &[Vec<i64>], idx: &[usize]) -> Q {
    let k = idx.len();
    let mut m: Vec<Vec<Q>> = idx
        .iter()
        .map(|&i| idx.iter().map(|&j| Q::from(matrix[i][j] as i128)).collect())
        .collect();
    let mut det = Q::one();
    for col in 0..k {
        let Some(pivot) = (col..k).find(|&r| !m[r][col].is_zero()) else {
            return Q::zero();
        };
        if pivot != col {
            m.swap(col, pivot);
            det = -det;
        }
        let p = m[col][col];
        det *= p;
        for r in col + 1..k {
            let f = m[r][col] / p;
            for c in col..k {
                let v = m[col][c];
                m[r][c] -= f * v;
            }
        }
    }
    det
}

fn rational_kernel(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let rows = m.len();
    let cols = m[0].len();
    let mut a = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&x| !a[x][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pv = a[r][c];
        for x in a[r].iter_mut() {
            *x /= pv;
        }
        for x in 0..rows {
            if x != r && !a[x][c].is_zero() {
                let f = a[x][c];
                for y in 0..cols {
                    let v = a[r][y];
                    a[x][y] -= f * v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f];
            }
            v
        })
        .collect()
}

/// Determinant of the submatrix on `rows x cols` by Laplace expansion with memoization.
fn laurent_det(m: &[Vec<Laurent>], rows: &[usize], cols: &[usize]) -> Laurent {
    fn go(
        m: &[Vec<Laurent>],
        rows: &[usize],
        cols: &[usize],
        depth: usize,
        used: u64,
        memo: &mut HashMap<u64, Laurent>,
    ) -> Laurent {
        if depth == rows.len() {
            return Laurent::one();
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = Laurent::zero();
        let mut sign_pos = true;
        for (ci, &c) in cols.iter().enumerate() {
            if used & (1 << ci) != 0 {
                continue;
            }
            let entry = &m[rows[depth]][c];
            if !entry.is_zero() {
                let sub = go(m, rows, cols, depth + 1, used | (1 << ci), memo);
                let term = entry * &sub;
                if sign_pos {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
            sign_pos = !sign_pos;
        }
        memo.insert(used, acc.clone());
        acc
    }
    assert!(cols.len() <= 63);
    go(m, rows, cols, 0, 0, &mut HashMap::new())
}

fn totient(s: u64) -> u64 {
    (1..=s).filter(|k| k.gcd(&s) == 1).count() as u64
}

fn mobius(mut n: u64) -> i64 {
    let mut out = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            out = -out;
        }
        p += 1;
    }
    if n > 1 {
        out = -out;
    }
    out
}

/// `Phi_s = prod_{d | s} (z^d - 1)^{mu(s/d)}`.
fn cyclotomic(s: u64) -> Laurent {
    let mut num = Laurent::one();
    let mut den = Laurent::one();
    for d in 1..=s {
        if s % d != 0 {
            continue;
        }
        let f = Laurent::from_terms([(d as i64, 1), (0, -1)]);
        match mobius(s / d) {
            1 => num = &num * &f,
            -1 => den = &den * &f,
            _ => {}
        }
    }
    let (q, rem) = num.div_rem_monic(&den);
    debug_assert!(rem.is_zero());
    q
}

fn vanishing_orders(det: &Laurent) -> Vec<u64> {
    let low = det.min_exp().unwrap();
    let poly = det.shifted(-low);
    let span = (det.max_exp().unwrap() - low) as u64;
    // phi(s) >= sqrt(s/2), so any cyclotomic factor has s <= 2 span^2
    let bound = (2 * span * span).max(2);
    (1..=bound)
        .filter(|&s| totient(s) <= span)
        .filter(|&s| poly.div_rem_monic(&cyclotomic(s)).1.is_zero())
        .collect()
}
