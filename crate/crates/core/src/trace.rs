//! Trace calculus on tensor powers of (super) vector spaces over `Q`.
//!
//! Tensor bases are lexicographic in the factor indices, and for a graded
//! object the even basis vectors come before the odd ones.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{RatMatrix, Vector};
use crate::rational::{binomial, factorial, Rational};
use crate::subspace::Subspace;

/// Default cap on `n` for explicit sums over the symmetric group.
pub const DEFAULT_MAX_N: usize = 7;

/// The cap in effect: `WEDKIT_MAX_N` when set to a number, else the default.
pub fn max_n() -> usize {
    std::env::var("WEDKIT_MAX_N")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_N)
}

fn check_cap(n: usize) -> Result<()> {
    let cap = max_n();
    if n > cap {
        return Err(Error::ExponentTooLarge { n, cap });
    }
    Ok(())
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// All permutations of `0..n` in lexicographic order of their images.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation { images: cur.clone() });
            // next permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "composing permutations of different degree");
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// Cycles `(i, σ(i), σ²(i), …)`, each starting at its least element,
    /// ordered by that element. Fixed points are included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn sign(&self) -> i64 {
        if (self.len() - self.cycles().len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Parses cycle notation such as `(0 1 2)(3 4)` over `0..n`. Without
    /// `n`, the degree is one more than the largest index mentioned.
    pub fn parse_cycles(s: &str, n: Option<usize>) -> Result<Permutation> {
        let err = |m: &str| Error::InvalidPermutation(format!("{m}: {s:?}"));
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = s.trim();
        if rest == "id" || rest.is_empty() {
            rest = "";
        }
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| err("expected '('"))?;
            let close = body.find(')').ok_or_else(|| err("unclosed cycle"))?;
            let cycle = body[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| err("bad index")))
                .collect::<Result<Vec<_>>>()?;
            cycles.push(cycle);
            rest = body[close + 1..].trim_start();
        }
        let needed = cycles.iter().flatten().map(|&i| i + 1).max().unwrap_or(0);
        let n = n.unwrap_or(needed);
        if needed > n {
            return Err(err("index out of range"));
        }
        let mut images: Vec<Option<usize>> = vec![None; n];
        for cycle in &cycles {
            for (k, &i) in cycle.iter().enumerate() {
                if images[i].is_some() {
                    return Err(err("index repeated"));
                }
                images[i] = Some(cycle[(k + 1) % cycle.len()]);
            }
        }
        Ok(Permutation {
            images: images.iter().enumerate().map(|(i, j)| j.unwrap_or(i)).collect(),
        })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|i| i.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Permutation::parse_cycles(s, None)
    }
}

/// `A = A₊ ⊕ A₋` with `p = dim A₊`, `q = dim A₋`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedObject {
    pub even_dim: usize,
    pub odd_dim: usize,
}

impl GradedObject {
    pub fn new(even_dim: usize, odd_dim: usize) -> Self {
        GradedObject { even_dim, odd_dim }
    }

    pub fn ungraded(d: usize) -> Self {
        Self::new(d, 0)
    }

    pub fn dim(&self) -> usize {
        self.even_dim + self.odd_dim
    }

    pub fn super_dim(&self) -> i64 {
        self.even_dim as i64 - self.odd_dim as i64
    }

    pub fn is_odd(&self, i: usize) -> bool {
        i >= self.even_dim
    }
}

/// Multi-index of a basis tensor from its position.
fn digits(mut index: usize, d: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for k in (0..n).rev() {
        out[k] = index % d;
        index /= d;
    }
    out
}

fn undigits(ds: &[usize], d: usize) -> usize {
    ds.iter().fold(0, |acc, &x| acc * d + x)
}

/// Permutes the factors of a basis tensor: slot `k` of the result holds
/// factor `σ(k)` of the input. Returns the new multi-index and the Koszul
/// sign (one factor of −1 per pair of odd factors that changes order).
pub fn permute_tensor(sigma: &Permutation, obj: GradedObject, t: &[usize]) -> (Vec<usize>, i64) {
    let n = t.len();
    let out: Vec<usize> = (0..n).map(|k| t[sigma.apply(k)]).collect();
    let mut sign = 1;
    for k in 0..n {
        for l in k + 1..n {
            let (a, b) = (sigma.apply(k), sigma.apply(l));
            if a > b && obj.is_odd(t[a]) && obj.is_odd(t[b]) {
                sign = -sign;
            }
        }
    }
    (out, sign)
}

/// The action of `σ` on `A^{⊗n}`: `e_{i_0}⊗…⊗e_{i_{n−1}} ↦ ±e_{i_{σ(0)}}⊗…⊗e_{i_{σ(n−1)}}`
/// with the Koszul sign.
pub fn perm_matrix(sigma: &Permutation, obj: GradedObject, n: usize) -> Result<RatMatrix> {
    if sigma.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "permutation of degree {} acting on tensor power {n}",
            sigma.len()
        )));
    }
    let d = obj.dim();
    let size = d.pow(n as u32);
    let mut m = RatMatrix::zeros(size, size);
    for col in 0..size {
        let (out, sign) = permute_tensor(sigma, obj, &digits(col, d, n));
        m.set(undigits(&out, d), col, Rational::from(sign));
    }
    Ok(m)
}

/// `str(f) = tr(f|A₊) − tr(f|A₋)`.
pub fn supertrace(obj: GradedObject, f: &RatMatrix) -> Result<Rational> {
    if f.rows() != obj.dim() || f.cols() != obj.dim() {
        return Err(Error::DimensionMismatch("supertrace of a map on another object".into()));
    }
    Ok((0..obj.dim())
        .map(|i| {
            if obj.is_odd(i) {
                -f.get(i, i)
            } else {
                f.get(i, i).clone()
            }
        })
        .sum())
}

/// `σ⁻¹∘(f₀⊗…⊗f_{n−1})` with `f_i : A_i → A_{σ(i)}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TensorMorphism {
    pub factors: Vec<RatMatrix>,
    pub perm: Permutation,
}

impl TensorMorphism {
    pub fn new(factors: Vec<RatMatrix>, perm: Permutation) -> Result<Self> {
        let tm = TensorMorphism { factors, perm };
        tm.check()?;
        Ok(tm)
    }

    /// Dimensions `dim A_i`, checking that `f_{σ(i)}` can follow `f_i`.
    pub fn source_dims(&self) -> Result<Vec<usize>> {
        let n = self.factors.len();
        if self.perm.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{n} factors but a permutation of degree {}",
                self.perm.len()
            )));
        }
        for (i, f) in self.factors.iter().enumerate() {
            let next = &self.factors[self.perm.apply(i)];
            if next.cols() != f.rows() {
                return Err(Error::DimensionMismatch(format!(
                    "factor {} does not compose after factor {i}",
                    self.perm.apply(i)
                )));
            }
        }
        Ok(self.factors.iter().map(RatMatrix::cols).collect())
    }

    fn check(&self) -> Result<()> {
        self.source_dims().map(|_| ())
    }

    /// For each cycle `(i, σ(i), …)`, the composite `f_{σ^{ℓ−1}(i)}∘…∘f_i`.
    pub fn cycle_composites(&self) -> Result<Vec<RatMatrix>> {
        self.check()?;
        self.perm
            .cycles()
            .into_iter()
            .map(|cycle| {
                let mut acc = self.factors[cycle[0]].clone();
                for &i in &cycle[1..] {
                    acc = self.factors[i].mul(&acc)?;
                }
                Ok(acc)
            })
            .collect()
    }
}

/// The cycle formula: the trace of `σ⁻¹∘(f₀⊗…⊗f_{n−1})` is the product over
/// the cycles of `σ` of the traces of the cycle composites.
pub fn twisted_trace(tm: &TensorMorphism) -> Result<Rational> {
    Ok(tm.cycle_composites()?.iter().map(RatMatrix::trace).product())
}

/// Direct evaluation of the same trace, summing over basis tensors without
/// forming the Kronecker product.
pub fn twisted_trace_direct(tm: &TensorMorphism) -> Result<Rational> {
    let dims = tm.source_dims()?;
    let n = dims.len();
    let inv = tm.perm.inverse();
    // r ranges over ⊗_k A_{σ(k)}; slot k of the image under σ⁻¹ is r_{σ⁻¹(k)}.
    let target: Vec<usize> = (0..n).map(|k| dims[tm.perm.apply(k)]).collect();
    let total: usize = target.iter().product();
    let mut r = vec![0usize; n];
    let mut acc = Rational::zero();
    for _ in 0..total {
        let mut term = Rational::one();
        for k in 0..n {
            let x = tm.factors[k].get(r[k], r[inv.apply(k)]);
            if x.is_zero() {
                term = Rational::zero();
                break;
            }
            term *= x;
        }
        acc += term;
        for k in (0..n).rev() {
            r[k] += 1;
            if r[k] < target[k] {
                break;
            }
            r[k] = 0;
        }
    }
    Ok(acc)
}

fn check_even(obj: GradedObject, f: &RatMatrix) -> Result<()> {
    if f.rows() != obj.dim() || f.cols() != obj.dim() {
        return Err(Error::DimensionMismatch("factor is not an endomorphism of the object".into()));
    }
    for i in 0..obj.dim() {
        for j in 0..obj.dim() {
            if obj.is_odd(i) != obj.is_odd(j) && !f.get(i, j).is_zero() {
                return Err(Error::DimensionMismatch("factor is not parity preserving".into()));
            }
        }
    }
    Ok(())
}

/// Graded cycle formula for even endomorphisms of one object: the
/// supertrace of `σ⁻¹∘(f₀⊗…⊗f_{n−1})` is the product of the supertraces of
/// the cycle composites.
pub fn twisted_supertrace(obj: GradedObject, tm: &TensorMorphism) -> Result<Rational> {
    for f in &tm.factors {
        check_even(obj, f)?;
    }
    tm.cycle_composites()?
        .iter()
        .map(|c| supertrace(obj, c))
        .product()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Projector {
    Antisymmetric,
    Symmetric,
}

/// Weight of `σ` in the projector, for a basis tensor `t`.
///
/// The antisymmetrizer uses `(−1)` per inversion between factors of equal
/// parity, so that its image is `Λ(A₊) ⊗ S(A₋)` with `S` the symmetric power
/// in the super sense; the symmetrizer uses the plain action.
fn projector_weight(kind: Projector, sigma: &Permutation, obj: GradedObject, t: &[usize]) -> i64 {
    match kind {
        Projector::Symmetric => 1,
        Projector::Antisymmetric => {
            let n = t.len();
            let mut sign = 1;
            for k in 0..n {
                for l in k + 1..n {
                    let (a, b) = (sigma.apply(k), sigma.apply(l));
                    if a > b && obj.is_odd(t[a]) == obj.is_odd(t[b]) {
                        sign = -sign;
                    }
                }
            }
            sign
        }
    }
}

/// `e·t` for a basis tensor `t`, as a sparse vector keyed by multi-index.
fn project_basis_tensor(
    kind: Projector,
    obj: GradedObject,
    perms: &[Permutation],
    t: &[usize],
) -> HashMap<Vec<usize>, i64> {
    let mut acc: HashMap<Vec<usize>, i64> = HashMap::new();
    for sigma in perms {
        let out: Vec<usize> = (0..t.len()).map(|k| t[sigma.apply(k)]).collect();
        *acc.entry(out).or_insert(0) += projector_weight(kind, sigma, obj, t);
    }
    acc.retain(|_, v| *v != 0);
    acc
}

/// `a_n = (1/n!) Σ w(σ) σ` or `s_n = (1/n!) Σ σ` as a dense matrix on `A^{⊗n}`.
pub fn projector(kind: Projector, obj: GradedObject, n: usize) -> Result<RatMatrix> {
    check_cap(n)?;
    let d = obj.dim();
    let size = d.pow(n as u32);
    let perms = Permutation::all(n);
    let scale = Rational::from_integer(factorial(n as u64)).inv().unwrap();
    let mut m = RatMatrix::zeros(size, size);
    for col in 0..size {
        for (out, w) in project_basis_tensor(kind, obj, &perms, &digits(col, d, n)) {
            m.set(undigits(&out, d), col, Rational::from(w) * &scale);
        }
    }
    Ok(m)
}

pub fn antisymmetrizer(obj: GradedObject, n: usize) -> Result<RatMatrix> {
    projector(Projector::Antisymmetric, obj, n)
}

pub fn symmetrizer(obj: GradedObject, n: usize) -> Result<RatMatrix> {
    projector(Projector::Symmetric, obj, n)
}

/// Rank of a projector. Both projectors commute with the permutation
/// action, so they preserve the span of each orbit of basis tensors, and
/// on that span the image is spanned by `e·t` for one representative.
pub fn projector_rank(kind: Projector, obj: GradedObject, n: usize) -> Result<usize> {
    check_cap(n)?;
    let perms = Permutation::all(n);
    let reps = multisets(obj.dim(), n);
    Ok(reps
        .par_iter()
        .filter(|t| !project_basis_tensor(kind, obj, &perms, t).is_empty())
        .count())
}

/// Weakly increasing sequences of length `n` over `0..d`.
fn multisets(d: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(d: usize, n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            go(d, n, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, n, 0, &mut Vec::with_capacity(n), &mut out);
    out
}

/// `tr(f^k)` for `k = 1..=n`.
pub fn power_traces(f: &RatMatrix, n: usize) -> Result<Vec<Rational>> {
    if !f.is_square() {
        return Err(Error::DimensionMismatch("trace of a non-square matrix".into()));
    }
    let mut out = Vec::with_capacity(n);
    let mut p = f.clone();
    for k in 1..=n {
        if k > 1 {
            p = p.mul(f)?;
        }
        out.push(p.trace());
    }
    Ok(out)
}

/// `tr Λⁿ(f) = (1/n!) Σ_σ sgn(σ) Π_cycles tr(f^{ℓ})`, summed over `𝔖_n`.
pub fn lambda_trace(f: &RatMatrix, n: usize) -> Result<Rational> {
    check_cap(n)?;
    if n == 0 {
        return Ok(Rational::one());
    }
    let t = power_traces(f, n)?;
    let total: Rational = Permutation::all(n)
        .par_iter()
        .map(|sigma| {
            let term: Rational = sigma.cycle_type().iter().map(|&l| t[l - 1].clone()).product();
            if sigma.sign() < 0 {
                -term
            } else {
                term
            }
        })
        .reduce(Rational::zero, |a, b| a + b);
    Ok(total / Rational::from_integer(factorial(n as u64)))
}

/// Power sums `t_1..t_n` to elementary symmetric functions `e_1..e_n`.
pub fn power_to_elementary(t: &[Rational]) -> Vec<Rational> {
    let mut e = vec![Rational::one()];
    for k in 1..=t.len() {
        let mut s = Rational::zero();
        for i in 1..=k {
            let term = &e[k - i] * &t[i - 1];
            if i % 2 == 1 {
                s += term;
            } else {
                s -= term;
            }
        }
        e.push(s / Rational::from(k));
    }
    e.split_off(1)
}

/// Elementary symmetric functions `e_1..e_n` to power sums `t_1..t_n`.
pub fn elementary_to_power(e: &[Rational]) -> Vec<Rational> {
    let mut t: Vec<Rational> = Vec::with_capacity(e.len());
    for k in 1..=e.len() {
        let mut s = Rational::from(k) * &e[k - 1];
        if k % 2 == 0 {
            s = -s;
        }
        for i in 1..k {
            let term = &e[i - 1] * &t[k - i - 1];
            if i % 2 == 1 {
                s += term;
            } else {
                s -= term;
            }
        }
        t.push(s);
    }
    t
}

/// `dim sΛⁿ(p, q) = Σ_{i+j=n} C(p,i) C(q,j)`.
pub fn super_lambda_dim(obj: GradedObject, n: usize) -> Rational {
    (0..=n)
        .map(|i| binomial(obj.even_dim as u64, i as u64) * binomial(obj.odd_dim as u64, (n - i) as u64))
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KimuraReport {
    pub kim: usize,
    pub super_dim: i64,
    pub first_vanishing: usize,
}

pub fn kimura_dim(obj: GradedObject) -> Result<KimuraReport> {
    let kim = obj.dim();
    let first_vanishing = (1..)
        .find(|&n| super_lambda_dim(obj, n).is_zero())
        .expect("binomial sums vanish past p + q");
    if first_vanishing != kim + 1 {
        return Err(Error::Internal(format!(
            "super exterior powers of {obj:?} first vanish at {first_vanishing}"
        )));
    }
    Ok(KimuraReport {
        kim,
        super_dim: obj.super_dim(),
        first_vanishing,
    })
}

/// Kernel of the pairing `(f, g) ↦ tr(g∘f)` in coordinates on `hom_ab`.
pub fn numerically_trivial(hom_ab: &[RatMatrix], hom_ba: &[RatMatrix]) -> Result<Subspace> {
    numerically_trivial_with(hom_ab, hom_ba, |m| Ok(m.trace()))
}

/// Same, with the supertrace of the graded source object.
pub fn numerically_trivial_super(
    source: GradedObject,
    hom_ab: &[RatMatrix],
    hom_ba: &[RatMatrix],
) -> Result<Subspace> {
    numerically_trivial_with(hom_ab, hom_ba, |m| supertrace(source, m))
}

fn numerically_trivial_with(
    hom_ab: &[RatMatrix],
    hom_ba: &[RatMatrix],
    tr: impl Fn(&RatMatrix) -> Result<Rational>,
) -> Result<Subspace> {
    let rows = hom_ab
        .iter()
        .map(|f| hom_ba.iter().map(|g| tr(&g.mul(f)?)).collect::<Result<Vector>>())
        .collect::<Result<Vec<Vector>>>()?;
    if hom_ba.is_empty() {
        return Ok(Subspace::full(hom_ab.len()));
    }
    // x is trivial iff Σ_i x_i G[i][j] = 0 for every j.
    let gram = RatMatrix::from_rows(rows)?;
    Ok(Subspace::kernel_of(&gram.transpose()))
}

#[derive(Clone, Debug, Serialize)]
pub struct NagataHigmanReport {
    pub exponent: usize,
    /// `2ⁿ − 1`.
    pub bound: usize,
    /// Dimension of the non-unital algebra generated by the inputs.
    pub algebra_dim: usize,
    pub bound_vanishes: bool,
    /// Smallest `k` with `R^k = 0`.
    pub minimal_vanishing_length: usize,
}

fn flatten(m: &RatMatrix) -> Vector {
    m.entries().to_vec()
}

fn unflatten(d: usize, v: &[Rational]) -> RatMatrix {
    RatMatrix::from_entries(d, d, v.to_vec()).unwrap()
}

fn product_span(d: usize, a: &Subspace, b: &Subspace) -> Subspace {
    let mut prods = Vec::new();
    for x in a.basis() {
        let mx = unflatten(d, x);
        for y in b.basis() {
            prods.push(flatten(&mx.mul(&unflatten(d, y)).unwrap()));
        }
    }
    Subspace::span(d * d, prods)
}

/// Verifies `R^{2ⁿ−1} = 0` for the non-unital algebra `R` generated by
/// square matrices satisfying `xⁿ = 0` on all of `R`.
pub fn nagata_higman_check(generators: &[RatMatrix], n: usize) -> Result<NagataHigmanReport> {
    if n == 0 {
        return Err(Error::DimensionMismatch("exponent must be at least 1".into()));
    }
    check_cap(n)?;
    let d = generators.first().map_or(0, RatMatrix::rows);
    if generators.iter().any(|g| g.rows() != d || g.cols() != d) {
        return Err(Error::DimensionMismatch("generators must be square of one size".into()));
    }
    let gens = Subspace::span(d * d, generators.iter().map(flatten));
    // R = Σ_k gens^k; each step multiplies by the generators.
    let mut r = gens.clone();
    let mut layer = gens.clone();
    for _ in 0..d * d {
        layer = product_span(d, &gens, &layer);
        let next = r.sum(&layer);
        if next.dim() == r.dim() {
            break;
        }
        r = next;
    }

    if let Some(witness) = exponent_witness(d, &r, n) {
        return Err(Error::ExponentHypothesisFails { exponent: n, witness });
    }

    let bound = (1usize << n) - 1;
    let mut power = r.clone();
    let mut k = 1;
    while !power.is_zero() {
        if k > bound.max(d * d) {
            return Err(Error::Internal("generated algebra is not nilpotent".into()));
        }
        power = product_span(d, &r, &power);
        k += 1;
    }
    Ok(NagataHigmanReport {
        exponent: n,
        bound,
        algebra_dim: r.dim(),
        bound_vanishes: k <= bound,
        minimal_vanishing_length: k,
    })
}

/// Polarization: `xⁿ = 0` on `R` iff every symmetrized product of `n`
/// basis elements vanishes. When one does not, some partial sum of those
/// basis elements has nonzero `n`-th power.
fn exponent_witness(d: usize, r: &Subspace, n: usize) -> Option<RatMatrix> {
    let basis: Vec<RatMatrix> = r.basis().iter().map(|v| unflatten(d, v)).collect();
    let perms = Permutation::all(n);
    for idx in multisets(basis.len(), n) {
        let mut sym = RatMatrix::zeros(d, d);
        for sigma in &perms {
            let mut p = RatMatrix::identity(d);
            for k in 0..n {
                p = p.mul(&basis[idx[sigma.apply(k)]]).unwrap();
            }
            sym = sym.add(&p).unwrap();
        }
        if sym.is_zero() {
            continue;
        }
        for mask in 1u32..(1 << n) {
            let mut x = RatMatrix::zeros(d, d);
            for (k, &i) in idx.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    x = x.add(&basis[i]).unwrap();
                }
            }
            if !x.pow(n as u32).unwrap().is_zero() {
                return Some(x);
            }
        }
        unreachable!("inclusion-exclusion over partial sums recovers the symmetrized product");
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_i64(rows)
    }

    #[test]
    fn permutations() {
        assert_eq!(Permutation::all(4).len(), 24);
        let s = Permutation::parse_cycles("(0 1 2)", None).unwrap();
        assert_eq!(s.images(), &[1, 2, 0]);
        assert_eq!(s.sign(), 1);
        assert_eq!(s.to_string(), "(0 1 2)");
        assert_eq!(s.compose(&s.inverse()), Permutation::identity(3));
        let t = Permutation::parse_cycles("(0 3)(1 2)", Some(5)).unwrap();
        assert_eq!(t.cycle_type(), vec![2, 2, 1]);
        assert!(Permutation::parse_cycles("(0 1)(1 2)", None).is_err());
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert_eq!(Permutation::parse_cycles("()", Some(2)).unwrap(), Permutation::identity(2));
    }

    #[test]
    fn perm_matrix_examples() {
        let id = Permutation::identity(3);
        assert!(perm_matrix(&id, GradedObject::ungraded(2), 3).unwrap().is_identity());
        let swap = Permutation::new(vec![1, 0]).unwrap();
        assert_eq!(perm_matrix(&swap, GradedObject::ungraded(1), 2).unwrap(), m(&[&[1]]));
        assert_eq!(perm_matrix(&swap, GradedObject::new(0, 1), 2).unwrap(), m(&[&[-1]]));
    }

    #[test]
    fn twisted_trace_examples() {
        let id2 = RatMatrix::identity(2);
        let tm = TensorMorphism::new(vec![id2.clone(), id2], Permutation::identity(2)).unwrap();
        assert_eq!(twisted_trace(&tm).unwrap(), Rational::from(4));
        let f = m(&[&[1, 0], &[0, 2]]);
        let cyc = Permutation::parse_cycles("(0 1 2)", None).unwrap();
        let tm = TensorMorphism::new(vec![f.clone(), f.clone(), f], cyc).unwrap();
        assert_eq!(twisted_trace(&tm).unwrap(), Rational::from(9));
        assert_eq!(twisted_trace_direct(&tm).unwrap(), Rational::from(9));
    }

    #[test]
    fn multi_object_cycle() {
        // f0: Q^2 -> Q^3, f1: Q^3 -> Q^2 along the swap.
        let f0 = m(&[&[1, 2], &[0, 1], &[3, -1]]);
        let f1 = m(&[&[1, 0, 2], &[-1, 1, 0]]);
        let tm = TensorMorphism::new(vec![f0.clone(), f1.clone()], Permutation::new(vec![1, 0]).unwrap())
            .unwrap();
        let expected = f1.mul(&f0).unwrap().trace();
        assert_eq!(twisted_trace(&tm).unwrap(), expected);
        assert_eq!(twisted_trace_direct(&tm).unwrap(), expected);
        let bad = TensorMorphism::new(vec![f0.clone(), f0], Permutation::new(vec![1, 0]).unwrap());
        assert!(bad.is_err());
    }

    #[test]
    fn projector_examples() {
        let d3 = GradedObject::ungraded(3);
        assert_eq!(projector_rank(Projector::Antisymmetric, d3, 2).unwrap(), 3);
        assert_eq!(projector_rank(Projector::Symmetric, d3, 2).unwrap(), 6);
        assert_eq!(projector_rank(Projector::Antisymmetric, GradedObject::ungraded(2), 3).unwrap(), 0);
        assert_eq!(projector_rank(Projector::Antisymmetric, GradedObject::new(1, 1), 3).unwrap(), 0);
        let a = antisymmetrizer(d3, 2).unwrap();
        assert_eq!(a.mul(&a).unwrap(), a);
        assert_eq!(a.rank(), 3);
        let s = symmetrizer(d3, 2).unwrap();
        assert!(a.mul(&s).unwrap().is_zero());
    }

    #[test]
    fn lambda_examples() {
        let f = m(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        assert_eq!(lambda_trace(&f, 2).unwrap(), Rational::from(11));
        assert_eq!(lambda_trace(&f, 1).unwrap(), Rational::from(6));
        assert_eq!(lambda_trace(&RatMatrix::identity(5), 3).unwrap(), Rational::from(10));
    }

    #[test]
    fn newton_examples() {
        let t = vec![Rational::from(3), Rational::from(5)];
        assert_eq!(power_to_elementary(&t)[1], Rational::from(2));
        let t = vec![Rational::from(6), Rational::from(14), Rational::from(36)];
        let e = power_to_elementary(&t);
        assert_eq!(e, vec![Rational::from(6), Rational::from(11), Rational::from(6)]);
        assert_eq!(elementary_to_power(&e), t);
    }

    #[test]
    fn kimura_examples() {
        let r = kimura_dim(GradedObject::new(1, 1)).unwrap();
        assert_eq!((r.kim, r.super_dim, r.first_vanishing), (2, 0, 3));
        assert_eq!(kimura_dim(GradedObject::new(0, 0)).unwrap().first_vanishing, 1);
        assert_eq!(kimura_dim(GradedObject::ungraded(4)).unwrap().first_vanishing, 5);
    }

    #[test]
    fn numerically_trivial_examples() {
        let units: Vec<RatMatrix> = (0..4)
            .map(|k| crate::algebra::matrix_unit(2, k / 2, k % 2))
            .collect();
        assert!(numerically_trivial(&units, &units).unwrap().is_zero());
        let evens = vec![crate::algebra::matrix_unit(2, 0, 0), crate::algebra::matrix_unit(2, 1, 1)];
        let n = numerically_trivial_super(GradedObject::new(1, 1), &evens, &evens).unwrap();
        assert!(n.is_zero());
    }

    #[test]
    fn nagata_higman_examples() {
        let n2 = m(&[&[0, 1], &[0, 0]]);
        let r = nagata_higman_check(&[n2], 2).unwrap();
        assert!(r.bound_vanishes);
        assert_eq!(r.minimal_vanishing_length, 2);
        let strict: Vec<RatMatrix> = [(0, 1), (0, 2), (1, 2)]
            .iter()
            .map(|&(i, j)| crate::algebra::matrix_unit(3, i, j))
            .collect();
        let r = nagata_higman_check(&strict, 3).unwrap();
        assert_eq!((r.bound, r.minimal_vanishing_length), (7, 3));
        let bad = m(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        match nagata_higman_check(&[bad], 2) {
            Err(Error::ExponentHypothesisFails { witness, .. }) => {
                assert!(!witness.pow(2).unwrap().is_zero())
            }
            other => panic!("expected a witness, got {other:?}"),
        }
    }
}
