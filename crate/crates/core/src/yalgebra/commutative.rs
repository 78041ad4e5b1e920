use std::collections::BTreeMap;
use std::fmt;

/// A Laurent monomial `prod Y_{i,l}^{k}` in commuting variables.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct CommMonomial(BTreeMap<(usize, i64), i64>);

impl CommMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_map(map: BTreeMap<(usize, i64), i64>) -> Self {
        Self(map.into_iter().filter(|(_, c)| *c != 0).collect())
    }

    pub fn var(i: usize, l: i64) -> Self {
        Self(BTreeMap::from([((i, l), 1)]))
    }

    pub fn exponent(&self, i: usize, l: i64) -> i64 {
        self.0.get(&(i, l)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, i64), i64)> + '_ {
        self.0.iter().map(|(k, c)| (*k, *c))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_pow(other, 1)
    }

    /// `self * other^n`.
    pub fn mul_pow(&self, other: &Self, n: i64) -> Self {
        let mut out = self.0.clone();
        for (k, c) in other.entries() {
            let e = out.entry(k).or_insert(0);
            *e += c * n;
            if *e == 0 {
                out.remove(&k);
            }
        }
        Self(out)
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().map(|(k, c)| (*k, -c)).collect())
    }

    pub fn is_dominant(&self) -> bool {
        self.0.values().all(|c| *c >= 0)
    }

    pub fn is_i_dominant(&self, i: usize) -> bool {
        self.0.iter().all(|(k, c)| k.0 != i || *c >= 0)
    }

    /// Reduction of spectral indices modulo `s`.
    pub fn fold(&self, s: u32) -> Self {
        if s == 0 {
            return self.clone();
        }
        let mut out = Self::one();
        for ((i, l), c) in self.entries() {
            out = out.mul_pow(&Self::var(i, l.rem_euclid(s as i64)), c);
        }
        out
    }
}

impl fmt::Display for CommMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .entries()
            .map(|((i, l), c)| {
                if c == 1 {
                    format!("Y[{},{}]", i + 1, l)
                } else {
                    format!("Y[{},{}]^{}", i + 1, l, c)
                }
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

impl fmt::Debug for CommMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
