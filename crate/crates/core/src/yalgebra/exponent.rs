use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Exponents of the commuting generators `Y_{i,l}` and `A_{i,l}^{-1}` attached to a
/// basis element. `y` entries may be negative; `v` entries are non-negative for
/// monomials of the algebra but may be negative in intermediate differences.
///
/// Node indices are 0-based internally and printed 1-based.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExponentVector {
    pub(crate) y: BTreeMap<(usize, i64), i64>,
    pub(crate) v: BTreeMap<(usize, i64), i64>,
}

fn bump(map: &mut BTreeMap<(usize, i64), i64>, key: (usize, i64), by: i64) {
    if by == 0 {
        return;
    }
    let e = map.entry(key).or_insert(0);
    *e += by;
    if *e == 0 {
        map.remove(&key);
    }
}

impl ExponentVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_parts<Y, V>(y: Y, v: V) -> Self
    where
        Y: IntoIterator<Item = ((usize, i64), i64)>,
        V: IntoIterator<Item = ((usize, i64), i64)>,
    {
        let mut out = Self::new();
        for (k, c) in y {
            out.add_y(k.0, k.1, c);
        }
        for (k, c) in v {
            out.add_v(k.0, k.1, c);
        }
        out
    }

    pub fn y(&self, i: usize, l: i64) -> i64 {
        self.y.get(&(i, l)).copied().unwrap_or(0)
    }

    pub fn v(&self, i: usize, l: i64) -> i64 {
        self.v.get(&(i, l)).copied().unwrap_or(0)
    }

    pub fn add_y(&mut self, i: usize, l: i64, by: i64) {
        bump(&mut self.y, (i, l), by);
    }

    pub fn add_v(&mut self, i: usize, l: i64, by: i64) {
        bump(&mut self.v, (i, l), by);
    }

    pub fn y_entries(&self) -> impl Iterator<Item = ((usize, i64), i64)> + '_ {
        self.y.iter().map(|(k, c)| (*k, *c))
    }

    pub fn v_entries(&self) -> impl Iterator<Item = ((usize, i64), i64)> + '_ {
        self.v.iter().map(|(k, c)| (*k, *c))
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty() && self.v.is_empty()
    }

    pub fn has_only_y(&self) -> bool {
        self.v.is_empty()
    }

    /// Total number of `A^{-1}` factors.
    pub fn deg(&self) -> i64 {
        self.v.values().sum()
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.y_entries() {
            out.add_y(k.0, k.1, c);
        }
        for (k, c) in other.v_entries() {
            out.add_v(k.0, k.1, c);
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }

    pub fn negated(&self) -> Self {
        Self {
            y: self.y.iter().map(|(k, c)| (*k, -c)).collect(),
            v: self.v.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn scaled(&self, n: i64) -> Self {
        if n == 0 {
            return Self::new();
        }
        Self {
            y: self.y.iter().map(|(k, c)| (*k, c * n)).collect(),
            v: self.v.iter().map(|(k, c)| (*k, c * n)).collect(),
        }
    }

    /// Smallest and largest spectral index in the support.
    pub fn support_range(&self) -> Option<(i64, i64)> {
        let ls = self.y.keys().chain(self.v.keys()).map(|k| k.1);
        let mut range: Option<(i64, i64)> = None;
        for l in ls {
            range = Some(match range {
                None => (l, l),
                Some((a, b)) => (a.min(l), b.max(l)),
            });
        }
        range
    }

    /// All spectral indices in the support, ascending.
    pub fn spectral_indices(&self) -> Vec<i64> {
        let mut ls: Vec<i64> = self.y.keys().chain(self.v.keys()).map(|k| k.1).collect();
        ls.sort_unstable();
        ls.dedup();
        ls
    }

    /// The part of the vector living at spectral index `l`.
    pub fn slice_at(&self, l: i64) -> Self {
        Self {
            y: self.y.iter().filter(|(k, _)| k.1 == l).map(|(k, c)| (*k, *c)).collect(),
            v: self.v.iter().filter(|(k, _)| k.1 == l).map(|(k, c)| (*k, *c)).collect(),
        }
    }

    /// Translation of the support by `delta` (no periodic reduction).
    pub fn translated(&self, delta: i64) -> Self {
        Self {
            y: self.y.iter().map(|(k, c)| ((k.0, k.1 + delta), *c)).collect(),
            v: self.v.iter().map(|(k, c)| ((k.0, k.1 + delta), *c)).collect(),
        }
    }

    fn sequence(&self) -> impl Iterator<Item = (u8, usize, i64, i64)> + '_ {
        self.y
            .iter()
            .map(|(k, c)| (0u8, k.0, k.1, *c))
            .chain(self.v.iter().map(|(k, c)| (1u8, k.0, k.1, *c)))
    }
}

/// Ascending degree, then lexicographic on the `(kind, node, index, exponent)` listing.
/// Smaller elements come first; since `m' < m` in the dominance order forces
/// `deg m' > deg m`, iteration order is a linear extension of the reversed partial order.
impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg()
            .cmp(&other.deg())
            .then_with(|| self.sequence().cmp(other.sequence()))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        let mut parts = Vec::new();
        for ((i, l), c) in self.y_entries() {
            if c == 1 {
                parts.push(format!("Y[{},{}]", i + 1, l));
            } else {
                parts.push(format!("Y[{},{}]^{}", i + 1, l, c));
            }
        }
        for ((i, l), c) in self.v_entries() {
            parts.push(format!("A[{},{}]^{}", i + 1, l, -c));
        }
        f.write_str(&parts.join("*"))
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{self}>")
    }
}
