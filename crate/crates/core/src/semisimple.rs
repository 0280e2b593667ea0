//! Artin-Wedderburn shape of a semisimple algebra: primitive central
//! idempotents, block dimensions, centers, and (when a rank-one idempotent
//! is found) the matrix size of each simple block.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Serialize, Serializer};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::matrix::{axpy, unit_vector, vec_add, vec_is_zero, RatMatrix, Vector};
use crate::poly::Poly;
use crate::rational::Rational;
use crate::subspace::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixSize {
    Split(usize),
    Unsplit,
}

impl Serialize for MatrixSize {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MatrixSize::Split(n) => serializer.serialize_u64(*n as u64),
            MatrixSize::Unsplit => serializer.serialize_str("unsplit"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SimpleBlock {
    pub block_dim: usize,
    pub center_dim: usize,
    pub matrix_size: MatrixSize,
    #[serde(skip)]
    pub central_idempotent: Vector,
    /// An idempotent of rank one over the center, when one was found.
    #[serde(skip)]
    pub rank_one_idempotent: Option<Vector>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SemisimpleReport {
    pub total_dim: usize,
    pub blocks: Vec<SimpleBlock>,
}

impl SemisimpleReport {
    pub fn is_split(&self) -> bool {
        self.blocks
            .iter()
            .all(|b| matches!(b.matrix_size, MatrixSize::Split(_)))
    }

    pub fn central_idempotents(&self) -> Vec<Vector> {
        self.blocks
            .iter()
            .map(|b| b.central_idempotent.clone())
            .collect()
    }
}

/// The center `{z : z e_k = e_k z for all k}`.
pub fn center(a: &Algebra) -> Subspace {
    let d = a.dim();
    let mut rows = Vec::with_capacity(d * d);
    for k in 0..d {
        let ek = unit_vector(d, k);
        let diff = a
            .left_regular(&ek)
            .unwrap()
            .sub(&a.right_regular(&ek).unwrap())
            .unwrap();
        rows.extend(diff.row_vectors());
    }
    Subspace::kernel_of(&RatMatrix::from_rows(rows).unwrap())
}

/// Minimal polynomial of `x` inside the corner algebra with unit `unit`
/// (`x` must satisfy `unit x = x unit = x`).
pub fn minimal_polynomial_in(a: &Algebra, x: &[Rational], unit: &[Rational]) -> Poly {
    let mut powers: Vec<Vector> = vec![unit.to_vec()];
    loop {
        let next = a.mul(powers.last().unwrap(), x);
        let m = RatMatrix::from_columns(a.dim(), &powers);
        if let Some(c) = m.solve(&next).unwrap() {
            let mut coeffs: Vec<Rational> = c.into_iter().map(|v| -v).collect();
            coeffs.push(Rational::one());
            return Poly::new(coeffs);
        }
        powers.push(next);
    }
}

/// `p(x)` where the constant term multiplies `unit`.
pub fn eval_in(a: &Algebra, p: &Poly, x: &[Rational], unit: &[Rational]) -> Vector {
    let mut acc = vec![Rational::zero(); a.dim()];
    for c in p.coeffs().iter().rev() {
        acc = a.mul(&acc, x);
        axpy(&mut acc, c, unit);
    }
    acc
}

/// Orthogonal idempotents attached to the coprime primary factors of the
/// minimal polynomial of `x`; they sum to `unit`. A single entry means no
/// splitting.
pub fn primary_idempotents(a: &Algebra, x: &[Rational], unit: &[Rational]) -> Vec<Vector> {
    let m = minimal_polynomial_in(a, x, unit);
    let factors = m.factor();
    if factors.len() <= 1 {
        return vec![unit.to_vec()];
    }
    factors
        .iter()
        .map(|(f, k)| {
            let primary = (0..*k).fold(Poly::one(), |acc, _| acc.mul(f));
            let cofactor = m.div_rem(&primary).0;
            let (_, s, _) = cofactor.ext_gcd(&primary);
            let e = s.mul(&cofactor).rem(&m);
            eval_in(a, &e, x, unit)
        })
        .collect()
}

/// Deterministic candidate elements drawn from a spanning set: the
/// vectors themselves, then pairwise sums.
fn sweep_candidates(span: &[Vector]) -> impl Iterator<Item = Vector> + '_ {
    let singles = span.iter().cloned();
    let pairs = (0..span.len())
        .flat_map(move |i| (i + 1..span.len()).map(move |j| vec_add(&span[i], &span[j])));
    singles.chain(pairs)
}

/// Splits the center of a semisimple algebra into primitive idempotents.
fn primitive_central_idempotents(a: &Algebra, z: &Subspace) -> Result<Vec<Vector>> {
    let mut done = Vec::new();
    let mut work = vec![a.unit().clone()];
    while let Some(e) = work.pop() {
        let ez = Subspace::span(a.dim(), z.basis().iter().map(|v| a.mul(&e, v)));
        if ez.dim() == 1 {
            done.push(e);
            continue;
        }
        let mut split = None;
        let mut is_field = false;
        let mut rng = StdRng::seed_from_u64(0x5eed);
        let random = (0..64).map(|_| {
            let mut v = vec![Rational::zero(); a.dim()];
            for b in ez.basis() {
                axpy(&mut v, &Rational::from(rng.gen_range(-3i64..=3)), b);
            }
            v
        });
        for x in sweep_candidates(ez.basis()).chain(random) {
            let m = minimal_polynomial_in(a, &x, &e);
            let deg = m.degree().unwrap_or(0);
            let parts = primary_idempotents(a, &x, &e);
            if parts.len() > 1 {
                split = Some(parts);
                break;
            }
            if deg == ez.dim() {
                // x generates eZ, and its minimal polynomial is irreducible.
                is_field = true;
                break;
            }
        }
        match (split, is_field) {
            (Some(parts), _) => work.extend(parts),
            (None, true) => done.push(e),
            (None, false) => {
                return Err(Error::Internal(
                    "failed to find a generator of a commutative semisimple block".into(),
                ))
            }
        }
    }
    Ok(done)
}

fn integer_sqrt(n: usize) -> Option<usize> {
    let r = (n as f64).sqrt().round() as usize;
    (r * r == n).then_some(r)
}

/// Dimension of the left ideal `A f`.
fn left_ideal_dim(a: &Algebra, f: &[Rational]) -> usize {
    Subspace::span(a.dim(), (0..a.dim()).map(|k| a.mul(&unit_vector(a.dim(), k), f))).dim()
}

/// Looks for an idempotent `f` inside the block with unit `e` whose left
/// ideal has dimension `target`, refining through corner algebras `f A f`.
fn rank_one_idempotent(a: &Algebra, e: &[Rational], block: &Subspace, target: usize) -> Option<Vector> {
    let mut f = e.to_vec();
    let mut current = left_ideal_dim(a, &f);
    while current > target {
        let corner: Vec<Vector> = block
            .basis()
            .iter()
            .map(|b| a.mul(&a.mul(&f, b), &f))
            .filter(|v| !vec_is_zero(v))
            .collect();
        let corner = Subspace::span(a.dim(), corner);
        let mut best: Option<(usize, Vector)> = None;
        for x in sweep_candidates(corner.basis()) {
            for g in primary_idempotents(a, &x, &f) {
                if vec_is_zero(&g) {
                    continue;
                }
                let d = left_ideal_dim(a, &g);
                if d < current && best.as_ref().is_none_or(|(bd, _)| d < *bd) {
                    best = Some((d, g));
                }
            }
            if best.as_ref().is_some_and(|(d, _)| *d == target) {
                break;
            }
        }
        let (d, g) = best?;
        f = g;
        current = d;
    }
    (current == target).then_some(f)
}

/// Decomposes a semisimple algebra into simple two-sided ideals.
pub fn semisimple_decompose(s: &Algebra) -> Result<SemisimpleReport> {
    let rad = s.radical();
    if !rad.is_zero() {
        return Err(Error::NotSemisimple(rad.dim()));
    }
    let z = center(s);
    let idempotents = primitive_central_idempotents(s, &z)?;
    let mut blocks = Vec::with_capacity(idempotents.len());
    for e in idempotents {
        let block = Subspace::span(s.dim(), (0..s.dim()).map(|k| s.mul(&e, &unit_vector(s.dim(), k))));
        let center_dim = Subspace::span(s.dim(), z.basis().iter().map(|v| s.mul(&e, v))).dim();
        let block_dim = block.dim();
        let (matrix_size, rank_one) = match integer_sqrt(block_dim / center_dim) {
            Some(1) => (MatrixSize::Split(1), Some(e.clone())),
            Some(n) if block_dim.is_multiple_of(center_dim) => {
                match rank_one_idempotent(s, &e, &block, block_dim / n) {
                    Some(f) => (MatrixSize::Split(n), Some(f)),
                    None => (MatrixSize::Unsplit, None),
                }
            }
            _ => (MatrixSize::Unsplit, None),
        };
        blocks.push(SimpleBlock {
            block_dim,
            center_dim,
            matrix_size,
            central_idempotent: e,
            rank_one_idempotent: rank_one,
        });
    }
    blocks.sort_by(|x, y| {
        (x.block_dim, x.center_dim)
            .cmp(&(y.block_dim, y.center_dim))
            .then_with(|| y.central_idempotent.cmp(&x.central_idempotent))
    });
    Ok(SemisimpleReport {
        total_dim: s.dim(),
        blocks,
    })
}

/// Summary of the Wedderburn property of an algebra.
#[derive(Clone, Debug, Serialize)]
pub struct WedderburnReport {
    pub wedderburn: bool,
    pub dim: usize,
    pub radical_dim: usize,
    pub radical_index: usize,
    /// Whether the trace form of `A/rad(A)` is non-degenerate.
    pub quotient_trace_form_nondegenerate: bool,
    pub quotient: SemisimpleReport,
}

/// Semi-primary with separable semisimple quotient. Over `Q` the radical
/// is nilpotent by finiteness and every semisimple algebra is separable,
/// so the check reduces to the non-degeneracy of the trace form on the
/// quotient; the report records the radical index and block data.
pub fn is_wedderburn(a: &Algebra) -> Result<WedderburnReport> {
    let rad = a.radical();
    let radical_index = a.nilpotency_index(&rad)?;
    let (quot, _) = a.quotient(&rad)?;
    let nondegenerate = quot.trace_form().determinant().is_some_and(|d| !d.is_zero());
    let report = semisimple_decompose(&quot)?;
    Ok(WedderburnReport {
        wedderburn: nondegenerate,
        dim: a.dim(),
        radical_dim: rad.dim(),
        radical_index,
        quotient_trace_form_nondegenerate: nondegenerate,
        quotient: report,
    })
}
