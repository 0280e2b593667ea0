//! Representations of the additive group over `Q`, stored by their
//! nilpotent generator `N` (the representation is `t ↦ exp(tN)`).
//!
//! The Jordan block of size `m + 1` has `N e_{i+1} = e_i`, `N e_0 = 0`; it
//! models `S^m V`, with `e_0` spanning the invariants.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{RatMatrix, Vector};
use crate::rational::Rational;
use crate::subspace::Subspace;
use crate::trace::numerically_trivial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GaRepRepr", into = "GaRepRepr")]
pub struct GaRep {
    nilpotent: RatMatrix,
}

#[derive(Serialize, Deserialize)]
struct GaRepRepr {
    dim: usize,
    nilpotent: RatMatrix,
}

impl TryFrom<GaRepRepr> for GaRep {
    type Error = Error;

    fn try_from(r: GaRepRepr) -> Result<Self> {
        if r.nilpotent.rows() != r.dim {
            return Err(Error::DimensionMismatch("dim does not match the matrix".into()));
        }
        GaRep::new(r.nilpotent)
    }
}

impl From<GaRep> for GaRepRepr {
    fn from(r: GaRep) -> Self {
        GaRepRepr {
            dim: r.dim(),
            nilpotent: r.nilpotent,
        }
    }
}

/// `S^m V` is the Jordan block of size `m + 1`.
pub fn jordan_block(size: usize) -> RatMatrix {
    RatMatrix::from_fn(size, size, |i, j| {
        if j == i + 1 {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

impl GaRep {
    pub fn new(nilpotent: RatMatrix) -> Result<Self> {
        if !nilpotent.is_square() {
            return Err(Error::DimensionMismatch("generator must be square".into()));
        }
        if !nilpotent.pow(nilpotent.rows() as u32)?.is_zero() {
            return Err(Error::NotNilpotentMatrix);
        }
        Ok(GaRep { nilpotent })
    }

    /// `S^m V`.
    pub fn symmetric_power(m: usize) -> Self {
        GaRep {
            nilpotent: jordan_block(m + 1),
        }
    }

    /// `⊕ S^{m_i} V`.
    pub fn direct_sum_of(ms: &[usize]) -> Self {
        let mut n = RatMatrix::zeros(0, 0);
        for &m in ms {
            n = n.direct_sum(&jordan_block(m + 1));
        }
        GaRep { nilpotent: n }
    }

    pub fn dim(&self) -> usize {
        self.nilpotent.rows()
    }

    pub fn nilpotent(&self) -> &RatMatrix {
        &self.nilpotent
    }

    /// `N ⊗ 1 + 1 ⊗ N`.
    pub fn tensor(&self, other: &GaRep) -> GaRep {
        let a = self.nilpotent.kron(&RatMatrix::identity(other.dim()));
        let b = RatMatrix::identity(self.dim()).kron(&other.nilpotent);
        GaRep {
            nilpotent: a.add(&b).unwrap(),
        }
    }

    pub fn direct_sum(&self, other: &GaRep) -> GaRep {
        GaRep {
            nilpotent: self.nilpotent.direct_sum(&other.nilpotent),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JordanType {
    /// Block sizes, weakly decreasing.
    pub partition: Vec<usize>,
}

/// `#(parts ≥ k) = rank(N^{k−1}) − rank(N^k)`.
pub fn jordan_type(r: &GaRep) -> JordanType {
    let mut ranks = vec![r.dim()];
    let mut p = RatMatrix::identity(r.dim());
    while *ranks.last().unwrap() > 0 {
        p = p.mul(&r.nilpotent).unwrap();
        ranks.push(p.rank());
    }
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut partition = Vec::new();
    for k in (1..=at_least.len()).rev() {
        let exactly = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
        partition.extend(std::iter::repeat_n(k, exactly));
    }
    JordanType { partition }
}

fn flatten(m: &RatMatrix) -> Vector {
    m.entries().to_vec()
}

fn unflatten(rows: usize, cols: usize, v: &[Rational]) -> RatMatrix {
    RatMatrix::from_entries(rows, cols, v.to_vec()).unwrap()
}

/// `Hom(A, B)` as a subspace of `b.dim × a.dim` matrices flattened row by
/// row: the kernel of `f ↦ f N_a − N_b f`.
pub fn hom_space(a: &GaRep, b: &GaRep) -> Subspace {
    let (p, q) = (a.dim(), b.dim());
    let mut system = RatMatrix::zeros(q * p, q * p);
    // (f N_a − N_b f)[i][j] = Σ_k f[i][k] N_a[k][j] − Σ_k N_b[i][k] f[k][j]
    for i in 0..q {
        for j in 0..p {
            let row = i * p + j;
            for k in 0..p {
                let x = a.nilpotent.get(k, j);
                if !x.is_zero() {
                    let cur = system.get(row, i * p + k).clone();
                    system.set(row, i * p + k, cur + x);
                }
            }
            for k in 0..q {
                let x = b.nilpotent.get(i, k);
                if !x.is_zero() {
                    let cur = system.get(row, k * p + j).clone();
                    system.set(row, k * p + j, cur - x);
                }
            }
        }
    }
    Subspace::kernel_of(&system)
}

pub fn intertwiners(a: &GaRep, b: &GaRep) -> Vec<RatMatrix> {
    hom_space(a, b)
        .basis()
        .iter()
        .map(|v| unflatten(b.dim(), a.dim(), v))
        .collect()
}

pub fn is_intertwiner(a: &GaRep, b: &GaRep, f: &RatMatrix) -> bool {
    f.rows() == b.dim()
        && f.cols() == a.dim()
        && f.mul(&a.nilpotent).unwrap() == b.nilpotent.mul(f).unwrap()
}

/// `P(m, n) = {j : |m−n| ≤ j ≤ m+n, j ≡ m+n mod 2}`.
pub fn p_set(m: usize, n: usize) -> Vec<usize> {
    (m.abs_diff(n)..=m + n).step_by(2).collect()
}

/// `dim Hom(S^m V, S^n V) = |P(m, n)|`.
pub fn hom_dim(m: usize, n: usize) -> usize {
    p_set(m, n).len()
}

/// `S^m V ⊗ S^n V ≅ ⊕_{j ∈ P(m,n)} S^j V`.
pub fn clebsch_gordan(m: usize, n: usize) -> Vec<usize> {
    p_set(m, n)
}

/// A basis adapted to the Jordan decomposition: columns grouped by block,
/// largest blocks first, each block listed from its invariant vector up.
/// Returns the basis matrix and the block sizes.
pub fn jordan_basis(r: &GaRep) -> (RatMatrix, Vec<usize>) {
    let d = r.dim();
    let n = &r.nilpotent;
    let mut powers = vec![RatMatrix::identity(d)];
    while !powers.last().unwrap().is_zero() {
        let next = powers.last().unwrap().mul(n).unwrap();
        powers.push(next);
    }
    // kernels[k] = ker N^k
    let kernels: Vec<Subspace> = powers.iter().map(Subspace::kernel_of).collect();
    let top = powers.len() - 1;
    let mut tops: Vec<(usize, Vector)> = Vec::new();
    for k in (1..=top).rev() {
        let mut span = kernels[k - 1].clone();
        for (size, x) in &tops {
            let image = powers[size - k].mul_vec(x).unwrap();
            span = span.sum(&Subspace::span(d, [image]));
        }
        for v in kernels[k].basis() {
            let bigger = span.sum(&Subspace::span(d, [v.clone()]));
            if bigger.dim() > span.dim() {
                span = bigger;
                tops.push((k, v.clone()));
            }
        }
    }
    let mut cols = Vec::with_capacity(d);
    let mut sizes = Vec::new();
    for (size, x) in &tops {
        sizes.push(*size);
        for i in 0..*size {
            cols.push(powers[size - 1 - i].mul_vec(x).unwrap());
        }
    }
    (RatMatrix::from_columns(d, &cols), sizes)
}

/// The radical of the category restricted to `Hom(A, B)`: intertwiners
/// whose component between any two isomorphic Jordan summands is a
/// polynomial in `N` without constant term.
pub fn category_radical(a: &GaRep, b: &GaRep) -> Subspace {
    let hom = hom_space(a, b);
    let (pa, sa) = jordan_basis(a);
    let (pb, sb) = jordan_basis(b);
    let pb_inv = pb.inverse().expect("Jordan basis is a basis");
    let starts = |sizes: &[usize]| {
        sizes
            .iter()
            .scan(0, |acc, &s| {
                let start = *acc;
                *acc += s;
                Some(start)
            })
            .collect::<Vec<_>>()
    };
    let (sta, stb) = (starts(&sa), starts(&sb));
    // constant term of component (s → t) is (P_b⁻¹ f P_a)[start_t][start_s]
    let mut functionals = Vec::new();
    for (s, &size_s) in sa.iter().enumerate() {
        for (t, &size_t) in sb.iter().enumerate() {
            if size_s == size_t {
                let (row, col) = (stb[t], sta[s]);
                let mut phi = vec![Rational::zero(); b.dim() * a.dim()];
                for i in 0..b.dim() {
                    for j in 0..a.dim() {
                        let c = pb_inv.get(row, i) * pa.get(j, col);
                        if !c.is_zero() {
                            phi[i * a.dim() + j] = c;
                        }
                    }
                }
                functionals.push(phi);
            }
        }
    }
    if functionals.is_empty() {
        return hom;
    }
    let kill = Subspace::kernel_of(&RatMatrix::from_rows(functionals).unwrap());
    hom.intersection(&kill)
}

pub fn radical_morphisms(a: &GaRep, b: &GaRep) -> Vec<RatMatrix> {
    category_radical(a, b)
        .basis()
        .iter()
        .map(|v| unflatten(b.dim(), a.dim(), v))
        .collect()
}

/// `f : S^source V → S^target V`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainLink {
    pub source: usize,
    pub target: usize,
    pub map: RatMatrix,
}

/// Whether a chain of radical morphisms between indecomposables, starting
/// at the unit `S^0 V` and ending at `S^{n_N} V`, composes to zero.
///
/// Radical maps send the invariant line of `S^a V` to zero unless the
/// target is strictly larger, so a nonzero composite has strictly
/// increasing indices and length at most `n_N`.
pub fn radical_chain_vanishing(max_target: usize, chain: &[ChainLink]) -> Result<bool> {
    let (first, last) = match (chain.first(), chain.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(Error::InvalidChain("empty chain".into())),
    };
    if first.source != 0 {
        return Err(Error::InvalidChain("chain must start at the unit object".into()));
    }
    if last.target != max_target {
        return Err(Error::InvalidChain(format!("chain must end at index {max_target}")));
    }
    let mut composite = RatMatrix::identity(1);
    for (k, link) in chain.iter().enumerate() {
        if k > 0 && chain[k - 1].target != link.source {
            return Err(Error::InvalidChain(format!("links {} and {k} do not compose", k - 1)));
        }
        let (a, b) = (GaRep::symmetric_power(link.source), GaRep::symmetric_power(link.target));
        if !is_intertwiner(&a, &b, &link.map) {
            return Err(Error::InvalidChain(format!("link {k} is not a morphism")));
        }
        if !category_radical(&a, &b).contains(&flatten(&link.map)) {
            return Err(Error::InvalidChain(format!("link {k} is not in the radical")));
        }
        composite = link.map.mul(&composite)?;
    }
    Ok(composite.is_zero())
}

fn random_radical_map(rng: &mut StdRng, source: usize, target: usize) -> RatMatrix {
    let (a, b) = (GaRep::symmetric_power(source), GaRep::symmetric_power(target));
    let mut f = RatMatrix::zeros(b.dim(), a.dim());
    for g in radical_morphisms(&a, &b) {
        let c = Rational::from(rng.gen_range(-4i64..=4));
        f = f.add(&g.scale(&c)).unwrap();
    }
    f
}

/// Random chains of `length` radical maps from `S^0 V` to `S^{n_N} V` with
/// intermediate indices up to `n_N + 2`; returns a chain with nonzero
/// composite if one is found.
pub fn search_chain_counterexample(
    max_target: usize,
    length: usize,
    trials: usize,
    seed: u64,
) -> Option<Vec<ChainLink>> {
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..trials {
        let mut indices = vec![0];
        for _ in 1..length {
            indices.push(rng.gen_range(0..=max_target + 2));
        }
        indices.push(max_target);
        let chain: Vec<ChainLink> = indices
            .windows(2)
            .map(|w| ChainLink {
                source: w[0],
                target: w[1],
                map: random_radical_map(&mut rng, w[0], w[1]),
            })
            .collect();
        if !radical_chain_vanishing(max_target, &chain).unwrap_or(true) {
            return Some(chain);
        }
    }
    None
}

/// `S^0 V → S^1 V → … → S^{n_N} V`, each map sending the invariant vector
/// to the invariant vector; its composite is nonzero, so the vanishing
/// bound `> n_N` cannot be lowered.
pub fn tight_chain(max_target: usize) -> Vec<ChainLink> {
    (0..max_target)
        .map(|m| {
            // S^m → S^{m+1}: e_i ↦ e_i
            let map = RatMatrix::from_fn(m + 2, m + 1, |i, j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            });
            ChainLink {
                source: m,
                target: m + 1,
                map,
            }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Sl2Report {
    pub m_max: usize,
    pub dims_match: bool,
    pub pairs_checked: usize,
    pub clebsch_gordan_match: bool,
    /// `ℛ = 𝒩` on `End(⊕_{m ≤ m_max} S^m V)`.
    pub radical_equals_numerically_trivial: bool,
    pub endomorphism_dim: usize,
    pub radical_dim: usize,
    pub consistent: bool,
}

/// Decomposition of `V_m ⊗ V_n` for `SL_2`, from weight multisets: peel off
/// the highest weight repeatedly.
pub fn sl2_tensor_decomposition(m: usize, n: usize) -> Vec<usize> {
    let weights = |k: usize| (0..=k).map(move |i| k as i64 - 2 * i as i64);
    let mut mult: std::collections::BTreeMap<i64, i64> = Default::default();
    for a in weights(m) {
        for b in weights(n) {
            *mult.entry(a + b).or_default() += 1;
        }
    }
    let mut out = Vec::new();
    while let Some((&top, _)) = mult.iter().rev().find(|(_, &c)| c > 0) {
        out.push(top as usize);
        for w in weights(top as usize) {
            *mult.get_mut(&w).unwrap() -= 1;
        }
    }
    out.sort_unstable();
    out
}

/// Checks the dictionary between indecomposable representations of the
/// additive group and irreducible representations of `SL_2`.
pub fn sl2_consistency(m_max: usize) -> Result<Sl2Report> {
    let dims_match = (0..=m_max).all(|m| {
        let r = GaRep::symmetric_power(m);
        r.dim() == m + 1 && jordan_type(&r).partition == vec![m + 1]
    });
    let mut cg_match = true;
    for m in 0..=m_max {
        for n in 0..=m_max {
            let t = GaRep::symmetric_power(m).tensor(&GaRep::symmetric_power(n));
            let mut ga: Vec<usize> = jordan_type(&t).partition.iter().map(|s| s - 1).collect();
            ga.sort_unstable();
            cg_match &= ga == sl2_tensor_decomposition(m, n) && ga == clebsch_gordan(m, n);
        }
    }
    let all: Vec<usize> = (0..=m_max).collect();
    let a = GaRep::direct_sum_of(&all);
    let ends = intertwiners(&a, &a);
    let rad = category_radical(&a, &a);
    let trivial = numerically_trivial(&ends, &ends)?;
    let d = a.dim();
    let trivial_ambient = Subspace::span(
        d * d,
        trivial.basis().iter().map(|x| {
            let mut v = vec![Rational::zero(); d * d];
            for (c, f) in x.iter().zip(&ends) {
                crate::matrix::axpy(&mut v, c, f.entries());
            }
            v
        }),
    );
    let r_eq_n = rad == trivial_ambient;
    Ok(Sl2Report {
        m_max,
        dims_match,
        pairs_checked: (m_max + 1) * (m_max + 1),
        clebsch_gordan_match: cg_match,
        radical_equals_numerically_trivial: r_eq_n,
        endomorphism_dim: ends.len(),
        radical_dim: rad.dim(),
        consistent: dims_match && cg_match && r_eq_n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jordan_types() {
        let zero = GaRep::new(RatMatrix::zeros(3, 3)).unwrap();
        assert_eq!(jordan_type(&zero).partition, vec![1, 1, 1]);
        assert_eq!(jordan_type(&GaRep::symmetric_power(2)).partition, vec![3]);
        assert_eq!(jordan_type(&GaRep::direct_sum_of(&[0, 1])).partition, vec![2, 1]);
        assert_eq!(
            GaRep::new(RatMatrix::identity(2)).unwrap_err(),
            Error::NotNilpotentMatrix
        );
    }

    #[test]
    fn hom_dims() {
        assert_eq!(hom_dim(0, 0), 1);
        assert_eq!(hom_dim(1, 1), 2);
        assert_eq!(hom_dim(2, 5), 3);
        let (a, b) = (GaRep::symmetric_power(2), GaRep::symmetric_power(5));
        assert_eq!(hom_space(&a, &b).dim(), 3);
    }

    #[test]
    fn clebsch_gordan_examples() {
        assert_eq!(clebsch_gordan(1, 1), vec![0, 2]);
        assert_eq!(clebsch_gordan(0, 4), vec![4]);
        assert_eq!(clebsch_gordan(2, 3), vec![1, 3, 5]);
        assert_eq!(sl2_tensor_decomposition(2, 3), vec![1, 3, 5]);
    }

    #[test]
    fn radical_examples() {
        let s1 = GaRep::symmetric_power(1);
        let rad = radical_morphisms(&s1, &s1);
        assert_eq!(rad, vec![jordan_block(2)]);
        let s2 = GaRep::symmetric_power(2);
        assert_eq!(category_radical(&s1, &s2).dim(), 2);
        let triv = GaRep::symmetric_power(0);
        assert!(category_radical(&triv, &triv).is_zero());
        let s3 = GaRep::symmetric_power(3);
        let rad = radical_morphisms(&s3, &s3);
        let n = jordan_block(4);
        assert_eq!(rad, vec![n.clone(), n.pow(2).unwrap(), n.pow(3).unwrap()]);
    }

    #[test]
    fn jordan_basis_conjugates_to_blocks() {
        let n = RatMatrix::from_i64(&[&[0, 1, 1], &[0, 0, 0], &[0, 0, 0]]);
        let r = GaRep::new(n.clone()).unwrap();
        let (p, sizes) = jordan_basis(&r);
        assert_eq!(sizes, vec![2, 1]);
        let j = p.inverse().unwrap().mul(&n).unwrap().mul(&p).unwrap();
        assert_eq!(j, jordan_block(2).direct_sum(&jordan_block(1)));
    }

    #[test]
    fn chains() {
        // S0 -> S1 -> S0, both radical: composite 0
        let up = RatMatrix::from_i64(&[&[1], &[0]]);
        let down = RatMatrix::from_i64(&[&[0, 1]]);
        let chain = vec![
            ChainLink { source: 0, target: 1, map: up },
            ChainLink { source: 1, target: 0, map: down },
        ];
        assert!(radical_chain_vanishing(0, &chain).unwrap());
        assert!(radical_chain_vanishing(0, &[]).is_err());
        assert!(!radical_chain_vanishing(3, &tight_chain(3)).unwrap());
        for n in 0..4 {
            assert!(search_chain_counterexample(n, n + 1, 40, n as u64).is_none());
        }
    }

    #[test]
    fn sl2_small() {
        let r = sl2_consistency(1).unwrap();
        assert!(r.consistent);
        assert_eq!(r.pairs_checked, 4);
        assert!(sl2_consistency(0).unwrap().consistent);
    }
}
