//! Finite quivers, their path algebras, Dynkin classification of the
//! underlying graph, and the semisimple envelope of a Dynkin path algebra.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::matrix::{unit_vector, Vector};
use crate::roots::{positive_roots, RootType};
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "QuiverRepr", into = "QuiverRepr")]
pub struct Quiver {
    vertices: usize,
    arrows: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct QuiverRepr {
    vertices: usize,
    arrows: Vec<[usize; 2]>,
}

impl TryFrom<QuiverRepr> for Quiver {
    type Error = Error;

    fn try_from(r: QuiverRepr) -> Result<Self> {
        Quiver::new(r.vertices, r.arrows.iter().map(|a| (a[0], a[1])).collect())
    }
}

impl From<Quiver> for QuiverRepr {
    fn from(q: Quiver) -> Self {
        QuiverRepr {
            vertices: q.vertices,
            arrows: q.arrows.iter().map(|&(s, t)| [s, t]).collect(),
        }
    }
}

/// A path: its source vertex and arrow indices in the order traversed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

impl Quiver {
    pub fn new(vertices: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(s, t)) = arrows.iter().find(|&&(s, t)| s >= vertices || t >= vertices) {
            return Err(Error::InvalidQuiver(format!(
                "arrow {s} -> {t} leaves the vertex range 0..{vertices}"
            )));
        }
        Ok(Quiver { vertices, arrows })
    }

    /// `0 → 1 → … → n−1`.
    pub fn linear_a(n: usize) -> Self {
        Quiver::new(n, (1..n).map(|i| (i - 1, i)).collect()).unwrap()
    }

    /// The Dynkin diagram of `t` with every edge oriented from the smaller
    /// to the larger node.
    pub fn dynkin(t: RootType) -> Self {
        let mut arrows = t.edges();
        for e in &mut arrows {
            *e = (e.0.min(e.1), e.0.max(e.1));
        }
        Quiver::new(t.rank(), arrows).unwrap()
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// Reverses the arrows whose bit is set in `mask`.
    pub fn reorient(&self, mask: u64) -> Self {
        let arrows = self
            .arrows
            .iter()
            .enumerate()
            .map(|(i, &(s, t))| if mask >> i & 1 == 1 { (t, s) } else { (s, t) })
            .collect();
        Quiver {
            vertices: self.vertices,
            arrows,
        }
    }

    pub fn is_acyclic(&self) -> bool {
        let mut indeg = vec![0usize; self.vertices];
        for &(_, t) in &self.arrows {
            indeg[t] += 1;
        }
        let mut stack: Vec<usize> = (0..self.vertices).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &(s, t) in &self.arrows {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        stack.push(t);
                    }
                }
            }
        }
        seen == self.vertices
    }

    /// All paths: trivial paths by vertex, then by increasing length, each
    /// length extended from the previous one arrow by arrow.
    pub fn paths(&self) -> Result<Vec<Path>> {
        if !self.is_acyclic() {
            return Err(Error::InfiniteDimensional);
        }
        let mut all: Vec<Path> = (0..self.vertices)
            .map(|v| Path {
                source: v,
                target: v,
                arrows: Vec::new(),
            })
            .collect();
        let mut layer = all.clone();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for p in &layer {
                for (a, &(s, t)) in self.arrows.iter().enumerate() {
                    if s == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(a);
                        next.push(Path {
                            source: p.source,
                            target: t,
                            arrows,
                        });
                    }
                }
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        Ok(all)
    }
}

/// The path algebra with basis `paths()`. The product `p·q` is the path
/// "first `q`, then `p`" when `q` ends where `p` starts, and zero otherwise.
pub fn path_algebra(q: &Quiver) -> Result<Algebra> {
    let paths = q.paths()?;
    let d = paths.len();
    let index: HashMap<(usize, &[usize]), usize> = paths
        .iter()
        .enumerate()
        .map(|(i, p)| ((p.source, p.arrows.as_slice()), i))
        .collect();
    let mut unit = vec![crate::rational::Rational::zero(); d];
    for u in unit.iter_mut().take(q.vertices()) {
        *u = crate::rational::Rational::one();
    }
    let zero = vec![crate::rational::Rational::zero(); d];
    let table: Vec<Vec<Vector>> = paths
        .iter()
        .map(|p| {
            paths
                .iter()
                .map(|r| {
                    if r.target != p.source {
                        return zero.clone();
                    }
                    let arrows: Vec<usize> = r.arrows.iter().chain(&p.arrows).copied().collect();
                    unit_vector(d, index[&(r.source, arrows.as_slice())])
                })
                .collect()
        })
        .collect();
    Algebra::new(d, unit, table)
}

/// Span of the paths of positive length in the basis of `path_algebra`.
pub fn arrow_ideal(q: &Quiver) -> Result<Subspace> {
    let paths = q.paths()?;
    let d = paths.len();
    Ok(Subspace::span(
        d,
        paths
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_empty())
            .map(|(i, _)| unit_vector(d, i)),
    ))
}

pub fn radical_is_arrow_ideal(q: &Quiver) -> Result<bool> {
    Ok(path_algebra(q)?.radical() == arrow_ideal(q)?)
}

/// Type of the underlying graph when it is a Dynkin diagram of type A, D
/// or E; `None` otherwise (cycles, multiple edges, loops, several
/// components, or a non-Dynkin tree).
pub fn dynkin_classify(q: &Quiver) -> Option<RootType> {
    let n = q.vertices();
    if n == 0 || q.arrows().len() != n - 1 {
        return None;
    }
    let mut adj = vec![Vec::new(); n];
    let mut edges = std::collections::HashSet::new();
    for &(s, t) in q.arrows() {
        if s == t || !edges.insert((s.min(t), s.max(t))) {
            return None;
        }
        adj[s].push(t);
        adj[t].push(s);
    }
    // n − 1 distinct edges: a tree iff connected.
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return None;
    }
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    match branch.as_slice() {
        [] => Some(RootType::A(n)),
        [c] if adj[*c].len() == 3 => {
            let mut legs: Vec<usize> = adj[*c]
                .iter()
                .map(|&start| {
                    let (mut prev, mut cur, mut len) = (*c, start, 1);
                    while adj[cur].len() == 2 {
                        let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            legs.sort_unstable();
            match legs.as_slice() {
                [1, 1, k] => Some(RootType::D(k + 3)),
                [1, 2, 2] => Some(RootType::E(6)),
                [1, 2, 3] => Some(RootType::E(7)),
                [1, 2, 4] => Some(RootType::E(8)),
                _ => None,
            }
        }
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EnvelopeBlock {
    pub size: usize,
    pub mult: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnvelopeReport {
    #[serde(rename = "type")]
    pub root_type: RootType,
    /// `A_s ≅ Π M_size(Q)^mult`, by increasing size.
    pub blocks: Vec<EnvelopeBlock>,
}

impl EnvelopeReport {
    pub fn total_blocks(&self) -> usize {
        self.blocks.iter().map(|b| b.mult).sum()
    }

    /// `Σ mult · size²`.
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.mult * b.size * b.size).sum()
    }
}

/// One matrix block `M_h` per positive root of height `h`.
pub fn envelope(q: &Quiver) -> Result<EnvelopeReport> {
    let t = dynkin_classify(q).ok_or(Error::NotRepresentationFinite)?;
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for h in positive_roots(t).heights() {
        *counts.entry(h as usize).or_default() += 1;
    }
    Ok(EnvelopeReport {
        root_type: t,
        blocks: counts
            .into_iter()
            .map(|(size, mult)| EnvelopeBlock { size, mult })
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    #[test]
    fn small_path_algebras() {
        let one = path_algebra(&Quiver::new(1, vec![]).unwrap()).unwrap();
        assert_eq!(one.dim(), 1);
        let a2 = path_algebra(&Quiver::linear_a(2)).unwrap();
        // e0, e1, arrow  ->  E11, E22, E21
        let m = |i, j| crate::algebra::matrix_unit(2, i, j);
        let iso = Algebra::from_matrix_basis(&[m(0, 0), m(1, 1), m(1, 0)]).unwrap();
        assert_eq!(a2.table(), iso.table());
        for n in 1..=5 {
            let a = path_algebra(&Quiver::linear_a(n)).unwrap();
            assert_eq!(a.dim(), n * (n + 1) / 2);
        }
        let cyc = Quiver::new(2, vec![(0, 1), (1, 0)]).unwrap();
        assert_eq!(path_algebra(&cyc).unwrap_err(), Error::InfiniteDimensional);
    }

    #[test]
    fn radical_matches_arrow_ideal() {
        assert!(radical_is_arrow_ideal(&Quiver::linear_a(2)).unwrap());
        assert!(radical_is_arrow_ideal(&Quiver::new(3, vec![]).unwrap()).unwrap());
        assert!(radical_is_arrow_ideal(&Quiver::dynkin(RootType::E(6))).unwrap());
    }

    #[test]
    fn classification() {
        assert_eq!(dynkin_classify(&Quiver::linear_a(4)), Some(RootType::A(4)));
        let e6 = Quiver::new(6, vec![(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]).unwrap();
        assert_eq!(dynkin_classify(&e6), Some(RootType::E(6)));
        let d4 = Quiver::new(4, vec![(0, 1), (2, 1), (1, 3)]).unwrap();
        assert_eq!(dynkin_classify(&d4), Some(RootType::D(4)));
        let tri = Quiver::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(dynkin_classify(&tri), None);
        let double = Quiver::new(2, vec![(0, 1), (1, 0)]).unwrap();
        assert_eq!(dynkin_classify(&double), None);
        let e_tilde6 = Quiver::new(7, vec![(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)]).unwrap();
        assert_eq!(dynkin_classify(&e_tilde6), None);
        for t in [RootType::D(5), RootType::E(7), RootType::E(8), RootType::A(1)] {
            assert_eq!(dynkin_classify(&Quiver::dynkin(t)), Some(t));
        }
    }

    #[test]
    fn a2_envelope() {
        let r = envelope(&Quiver::linear_a(2)).unwrap();
        assert_eq!(
            r.blocks,
            vec![EnvelopeBlock { size: 1, mult: 2 }, EnvelopeBlock { size: 2, mult: 1 }]
        );
        let bad = Quiver::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(envelope(&bad).unwrap_err(), Error::NotRepresentationFinite);
    }

    #[test]
    fn linear_quiver_quotient() {
        let a = path_algebra(&Quiver::linear_a(4)).unwrap();
        let rad = a.radical();
        assert_eq!(a.nilpotency_index(&rad).unwrap(), 4);
        let (quot, _) = a.quotient(&rad).unwrap();
        assert_eq!(quot.dim(), 4);
        assert_eq!(quot.unit(), &vec![Rational::one(); 4]);
    }

    #[test]
    fn json_round_trip() {
        let q: Quiver = serde_json::from_str(r#"{"vertices":2,"arrows":[[0,1]]}"#).unwrap();
        assert_eq!(q, Quiver::linear_a(2));
        assert!(serde_json::from_str::<Quiver>(r#"{"vertices":1,"arrows":[[0,1]]}"#).is_err());
    }
}
