//! Simply-laced root systems and their positive roots.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootType {
    A(usize),
    D(usize),
    E(usize),
}

impl RootType {
    pub fn new(family: char, n: usize) -> Result<Self> {
        let t = match family.to_ascii_uppercase() {
            'A' if n >= 1 => RootType::A(n),
            'D' if n >= 4 => RootType::D(n),
            'E' if (6..=8).contains(&n) => RootType::E(n),
            _ => return Err(Error::InvalidRootType(format!("{family}{n}"))),
        };
        Ok(t)
    }

    pub fn rank(&self) -> usize {
        match *self {
            RootType::A(n) | RootType::D(n) | RootType::E(n) => n,
        }
    }

    /// Edges of the Dynkin diagram on nodes `0..n` in Bourbaki numbering.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        match *self {
            RootType::A(n) => (1..n).map(|i| (i - 1, i)).collect(),
            RootType::D(n) => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                e.push((n - 3, n - 1));
                e
            }
            RootType::E(n) => {
                // 1-3, 3-4, 4-5, … and 2-4 (one-based)
                let mut e = vec![(0, 2), (1, 3)];
                e.extend((2..n - 1).map(|i| (i, i + 1)));
                e
            }
        }
    }

    /// Number of positive roots.
    pub fn positive_root_count(&self) -> usize {
        match *self {
            RootType::A(n) => n * (n + 1) / 2,
            RootType::D(n) => n * (n - 1),
            RootType::E(6) => 36,
            RootType::E(7) => 63,
            RootType::E(_) => 120,
        }
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j) in self.edges() {
            c[i][j] = -1;
            c[j][i] = -1;
        }
        c
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootType::A(n) => write!(f, "A{n}"),
            RootType::D(n) => write!(f, "D{n}"),
            RootType::E(n) => write!(f, "E{n}"),
        }
    }
}

impl FromStr for RootType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars
            .next()
            .ok_or_else(|| Error::InvalidRootType(s.to_string()))?;
        let rest = chars.as_str().trim_start_matches('_');
        let n = rest
            .parse::<usize>()
            .map_err(|_| Error::InvalidRootType(s.to_string()))?;
        RootType::new(family, n)
    }
}

impl Serialize for RootType {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RootSystem {
    #[serde(rename = "type")]
    pub root_type: RootType,
    pub simple_count: usize,
    /// Coordinates in the simple-root basis, sorted lexicographically.
    pub positive_roots: Vec<Vec<i64>>,
}

impl RootSystem {
    pub fn heights(&self) -> Vec<i64> {
        self.positive_roots.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn highest_root(&self) -> &[i64] {
        self.positive_roots
            .iter()
            .max_by_key(|r| r.iter().sum::<i64>())
            .expect("a root system has roots")
    }
}

/// Positive roots by string closure: `β + α_i` is a root exactly when the
/// `α_i`-string through `β` continues, i.e. `p − ⟨β, α_i^∨⟩ > 0` where `p`
/// is the largest `k` with `β − kα_i` a root.
pub fn positive_roots(t: RootType) -> RootSystem {
    let n = t.rank();
    let cartan = t.cartan_matrix();
    let mut roots: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut layer: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    roots.extend(layer.iter().cloned());
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for beta in &layer {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| beta[j] * cartan[j][i]).sum();
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if !roots.contains(&down) {
                        break;
                    }
                    p += 1;
                }
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !roots.contains(&up) {
                        next.insert(up);
                    }
                }
            }
        }
        roots.extend(next.iter().cloned());
        layer = next.into_iter().collect();
    }
    RootSystem {
        root_type: t,
        simple_count: n,
        positive_roots: roots.into_iter().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let a2 = positive_roots(RootType::A(2));
        assert_eq!(a2.positive_roots, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        let a3 = positive_roots(RootType::A(3));
        let mut h = a3.heights();
        h.sort();
        assert_eq!(h, vec![1, 1, 1, 2, 2, 3]);
    }

    #[test]
    fn counts_and_highest_roots() {
        for t in [
            RootType::A(1),
            RootType::A(7),
            RootType::D(4),
            RootType::D(6),
            RootType::E(6),
            RootType::E(7),
            RootType::E(8),
        ] {
            assert_eq!(positive_roots(t).positive_roots.len(), t.positive_root_count(), "{t}");
        }
        assert_eq!(positive_roots(RootType::E(6)).highest_root(), &[1, 2, 2, 3, 2, 1]);
        assert_eq!(positive_roots(RootType::E(8)).highest_root(), &[2, 3, 4, 6, 5, 4, 3, 2]);
        assert_eq!(positive_roots(RootType::D(5)).highest_root(), &[1, 2, 2, 1, 1]);
    }

    #[test]
    fn parsing() {
        assert_eq!("E6".parse::<RootType>().unwrap(), RootType::E(6));
        assert_eq!("a_3".parse::<RootType>().unwrap(), RootType::A(3));
        assert!("D3".parse::<RootType>().is_err());
        assert!("E9".parse::<RootType>().is_err());
        assert!("B2".parse::<RootType>().is_err());
    }
}
