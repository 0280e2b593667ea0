//! Subspaces of `Q^n` kept in reduced echelon form, so equal subspaces have
//! identical representations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{echelon_of_rows, kernel_from_echelon, unit_vector, vec_is_zero, RatMatrix, Vector};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SubspaceRepr", into = "SubspaceRepr")]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct SubspaceRepr {
    ambient_dim: usize,
    basis: Vec<Vector>,
}

impl From<Subspace> for SubspaceRepr {
    fn from(s: Subspace) -> Self {
        SubspaceRepr {
            ambient_dim: s.ambient_dim,
            basis: s.basis,
        }
    }
}

impl TryFrom<SubspaceRepr> for Subspace {
    type Error = Error;

    fn try_from(r: SubspaceRepr) -> Result<Self> {
        Subspace::from_json_basis(r.ambient_dim, r.basis)
    }
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::span(ambient_dim, (0..ambient_dim).map(|i| unit_vector(ambient_dim, i)))
    }

    /// The span of arbitrary vectors of length `ambient_dim`.
    pub fn span<I>(ambient_dim: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vector>,
    {
        let rows: Vec<Vector> = vectors.into_iter().collect();
        debug_assert!(rows.iter().all(|v| v.len() == ambient_dim));
        let ech = echelon_of_rows(&rows, ambient_dim);
        Subspace {
            ambient_dim,
            basis: ech.rows,
            pivots: ech.pivots,
        }
    }

    /// Right null space of `m`.
    pub fn kernel_of(m: &RatMatrix) -> Self {
        let ech = m.echelon();
        Self::span(m.cols(), kernel_from_echelon(&ech))
    }

    pub fn from_json_basis(ambient_dim: usize, basis: Vec<Vector>) -> Result<Self> {
        if basis.iter().any(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch("subspace basis vector length".into()));
        }
        Ok(Self::span(ambient_dim, basis))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vector> {
        // In reduced echelon form the coordinate on basis vector k is the
        // entry of v at the k-th pivot column.
        let coords: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, b) in coords.iter().zip(&self.basis) {
            crate::matrix::axpy(&mut residual, &-c, b);
        }
        vec_is_zero(&residual).then_some(coords)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Self::span(
            self.ambient_dim,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // Solve sum a_i u_i = sum b_j w_j.
        let n = self.ambient_dim;
        let k = self.dim();
        let cols: Vec<Vector> = self
            .basis
            .iter()
            .cloned()
            .chain(other.basis.iter().map(|w| w.iter().map(|x| -x).collect()))
            .collect();
        if cols.is_empty() {
            return Self::zero(n);
        }
        let m = RatMatrix::from_columns(n, &cols);
        let vectors = m.kernel_basis().into_iter().map(|c| {
            let mut v = vec![Rational::zero(); n];
            for (a, u) in c[..k].iter().zip(&self.basis) {
                crate::matrix::axpy(&mut v, a, u);
            }
            v
        });
        Self::span(n, vectors)
    }

    /// Standard basis indices spanning a complement: the pivot-free columns.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient_dim).filter(|&i| !is_pivot[i]).collect()
    }

    /// Matrix of the projection onto the complement spanned by the
    /// pivot-free standard basis vectors, along this subspace. Its rows are
    /// indexed by `complement_indices()`, its columns by the ambient basis.
    pub fn quotient_projection(&self) -> RatMatrix {
        let comp = self.complement_indices();
        let n = self.ambient_dim;
        // v = sum_k v[p_k] b_k + (v - ...) ; the complement coordinate at
        // free index f is v[f] - sum_k v[p_k] b_k[f].
        RatMatrix::from_fn(comp.len(), n, |r, c| {
            let f = comp[r];
            if let Some(k) = self.pivots.iter().position(|&p| p == c) {
                -&self.basis[k][f]
            } else if c == f {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn basis_matrix(&self) -> RatMatrix {
        RatMatrix::from_columns(self.ambient_dim, &self.basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn canonical_representation() {
        let a = Subspace::span(3, vec![v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Subspace::span(3, vec![v(&[1, 2, 1]), v(&[1, 0, -1]), v(&[2, 2, 0])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn membership_and_coordinates() {
        let s = Subspace::span(3, vec![v(&[1, 0, 2]), v(&[0, 1, 3])]);
        assert_eq!(s.coordinates(&v(&[2, -1, 1])), Some(v(&[2, -1])));
        assert!(!s.contains(&v(&[0, 0, 1])));
    }

    #[test]
    fn intersection_and_sum() {
        let a = Subspace::span(3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(3, vec![v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(a.intersection(&b), Subspace::span(3, vec![v(&[0, 1, 0])]));
        assert_eq!(a.sum(&b), Subspace::full(3));
    }

    #[test]
    fn projection_kills_subspace() {
        let s = Subspace::span(3, vec![v(&[1, 2, 0])]);
        let p = s.quotient_projection();
        assert_eq!(s.complement_indices(), vec![1, 2]);
        assert!(vec_is_zero(&p.mul_vec(&v(&[1, 2, 0])).unwrap()));
        assert_eq!(p.mul_vec(&v(&[0, 1, 0])).unwrap(), vec![q(1, 1), q(0, 1)]);
    }
}
