//! Finite-dimensional associative unital algebras over `Q`, given by
//! structure constants in a fixed basis `e_0, ..., e_{d-1}`.

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{axpy, unit_vector, vec_is_zero, RatMatrix, Vector};
use crate::rational::Rational;
use crate::subspace::Subspace;

type SparseVec = Vec<(usize, Rational)>;

fn sparsify(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

#[derive(Clone, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    unit: Vector,
    /// `table[i][j]` holds the coordinates of `e_i * e_j`, sparsely.
    table: Vec<Vec<SparseVec>>,
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Algebra(dim {})", self.dim)
    }
}

impl Algebra {
    /// Builds and validates an algebra: associativity on all basis triples
    /// and both unit laws are checked exactly.
    pub fn new(dim: usize, unit: Vector, table: Vec<Vec<Vector>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidAlgebra("the zero algebra has no unit".into()));
        }
        if unit.len() != dim {
            return Err(Error::InvalidAlgebra("unit has the wrong length".into()));
        }
        if table.len() != dim
            || table
                .iter()
                .any(|row| row.len() != dim || row.iter().any(|v| v.len() != dim))
        {
            return Err(Error::InvalidAlgebra(format!(
                "multiplication table must be {dim} x {dim} x {dim}"
            )));
        }
        let table = table
            .iter()
            .map(|row| row.iter().map(|v| sparsify(v)).collect())
            .collect();
        let alg = Algebra { dim, unit, table };
        alg.validate()?;
        Ok(alg)
    }

    fn from_sparse_unchecked(dim: usize, unit: Vector, table: Vec<Vec<SparseVec>>) -> Self {
        Algebra { dim, unit, table }
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim;
        for i in 0..d {
            let ei = unit_vector(d, i);
            if self.mul(&self.unit, &ei) != ei || self.mul(&ei, &self.unit) != ei {
                return Err(Error::InvalidAlgebra(format!("unit law fails on e_{i}")));
            }
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    // (e_i e_j) e_k
                    let mut left = vec![Rational::zero(); d];
                    for (l, c) in &self.table[i][j] {
                        for (m, c2) in &self.table[*l][k] {
                            left[*m] += c * c2;
                        }
                    }
                    // e_i (e_j e_k)
                    let mut right = vec![Rational::zero(); d];
                    for (l, c) in &self.table[j][k] {
                        for (m, c2) in &self.table[i][*l] {
                            right[*m] += c * c2;
                        }
                    }
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!(
                            "associativity fails on (e_{i}, e_{j}, e_{k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        unit_vector(self.dim, i)
    }

    /// Coordinates of `e_i * e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> Vector {
        let mut v = vec![Rational::zero(); self.dim];
        for (k, c) in &self.table[i][j] {
            v[*k] = c.clone();
        }
        v
    }

    pub fn table(&self) -> Vec<Vec<Vector>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.basis_product(i, j)).collect())
            .collect()
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, t) in &self.table[i][j] {
                    out[*k] += &c * t;
                }
            }
        }
        out
    }

    pub fn pow(&self, x: &[Rational], e: usize) -> Vector {
        let mut acc = self.unit.clone();
        for _ in 0..e {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// Matrix of `y -> x y`.
    pub fn left_regular(&self, x: &[Rational]) -> Result<RatMatrix> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "element of length {} in an algebra of dimension {}",
                x.len(),
                self.dim
            )));
        }
        let cols: Vec<Vector> = (0..self.dim)
            .map(|j| self.mul(x, &unit_vector(self.dim, j)))
            .collect();
        Ok(RatMatrix::from_columns(self.dim, &cols))
    }

    /// Matrix of `y -> y x`.
    pub fn right_regular(&self, x: &[Rational]) -> Result<RatMatrix> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch("element length".into()));
        }
        let cols: Vec<Vector> = (0..self.dim)
            .map(|j| self.mul(&unit_vector(self.dim, j), x))
            .collect();
        Ok(RatMatrix::from_columns(self.dim, &cols))
    }

    /// Inverse of `x`, if it exists.
    pub fn inverse(&self, x: &[Rational]) -> Option<Vector> {
        let l = self.left_regular(x).ok()?;
        let y = l.solve(&self.unit).ok()??;
        // A one-sided inverse in a finite-dimensional algebra is two sided,
        // but only when it exists uniquely; confirm.
        (self.mul(&y, x) == self.unit).then_some(y)
    }

    /// `tr(L_{e_l})` for every basis element.
    fn regular_traces(&self) -> Vector {
        (0..self.dim)
            .map(|l| {
                (0..self.dim)
                    .map(|k| {
                        self.table[l][k]
                            .iter()
                            .find(|(i, _)| *i == k)
                            .map(|(_, c)| c.clone())
                            .unwrap_or_default()
                    })
                    .sum()
            })
            .collect()
    }

    /// Gram matrix of the regular trace form, `G[i][j] = tr(L_{e_i e_j})`.
    pub fn trace_form(&self) -> RatMatrix {
        let t = self.regular_traces();
        RatMatrix::from_fn(self.dim, self.dim, |i, j| {
            self.table[i][j].iter().map(|(l, c)| c * &t[*l]).sum()
        })
    }

    /// The Jacobson radical, computed as the kernel of the regular trace
    /// form (valid in characteristic zero).
    pub fn radical(&self) -> Subspace {
        Subspace::kernel_of(&self.trace_form())
    }

    pub fn is_semisimple(&self) -> bool {
        self.radical().is_zero()
    }

    pub fn is_left_ideal(&self, i: &Subspace) -> bool {
        i.basis().iter().all(|v| {
            (0..self.dim).all(|k| i.contains(&self.mul(&unit_vector(self.dim, k), v)))
        })
    }

    pub fn is_right_ideal(&self, i: &Subspace) -> bool {
        i.basis().iter().all(|v| {
            (0..self.dim).all(|k| i.contains(&self.mul(v, &unit_vector(self.dim, k))))
        })
    }

    pub fn is_ideal(&self, i: &Subspace) -> bool {
        i.ambient_dim() == self.dim && self.is_left_ideal(i) && self.is_right_ideal(i)
    }

    /// Closed under multiplication (no unit required).
    pub fn is_closed(&self, s: &Subspace) -> bool {
        s.basis()
            .iter()
            .all(|u| s.basis().iter().all(|v| s.contains(&self.mul(u, v))))
    }

    /// The span of all products `u v` with `u` in `a`, `v` in `b`.
    pub fn product_space(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut acc = Subspace::zero(self.dim);
        for u in a.basis() {
            let products: Vec<Vector> = b
                .basis()
                .iter()
                .map(|v| self.mul(u, v))
                .filter(|w| !vec_is_zero(w))
                .collect();
            if !products.is_empty() {
                acc = Subspace::span(self.dim, acc.basis().iter().cloned().chain(products));
            }
        }
        acc
    }

    /// Powers `I^1, I^2, ..., I^r = 0` of a nilpotent ideal (the last entry
    /// is the zero subspace).
    pub fn ideal_powers(&self, i: &Subspace) -> Result<Vec<Subspace>> {
        if !self.is_ideal(i) {
            return Err(Error::NotIdeal);
        }
        let mut powers = vec![i.clone()];
        while !powers.last().unwrap().is_zero() {
            if powers.len() > self.dim {
                return Err(Error::NotNilpotent);
            }
            let next = self.product_space(powers.last().unwrap(), i);
            powers.push(next);
        }
        Ok(powers)
    }

    /// Smallest `r >= 1` with `I^r = 0`.
    pub fn nilpotency_index(&self, i: &Subspace) -> Result<usize> {
        Ok(self.ideal_powers(i)?.len())
    }

    /// The quotient by a two-sided ideal on the pivot-free complement basis,
    /// together with the projection matrix (`dim(A/I) x dim(A)`).
    pub fn quotient(&self, i: &Subspace) -> Result<(Algebra, RatMatrix)> {
        if !self.is_ideal(i) {
            return Err(Error::NotIdeal);
        }
        let proj = i.quotient_projection();
        let comp = i.complement_indices();
        let qd = comp.len();
        if qd == 0 {
            return Err(Error::InvalidAlgebra(
                "quotient by the whole algebra is the zero algebra".into(),
            ));
        }
        let table = comp
            .iter()
            .map(|&a| {
                comp.iter()
                    .map(|&b| {
                        let prod = self.basis_product(a, b);
                        sparsify(&proj.mul_vec(&prod).unwrap())
                    })
                    .collect()
            })
            .collect();
        let unit = proj.mul_vec(&self.unit)?;
        Ok((Algebra::from_sparse_unchecked(qd, unit, table), proj))
    }

    /// The algebra structure on a subspace closed under multiplication,
    /// with the given element (lying in it) as unit. Coordinates are taken
    /// in the echelon basis of `s`.
    pub fn restrict(&self, s: &Subspace, unit: &[Rational]) -> Result<Algebra> {
        let coords_unit = s
            .coordinates(unit)
            .ok_or_else(|| Error::NotSubalgebra("unit is outside the subspace".into()))?;
        let k = s.dim();
        let mut table = Vec::with_capacity(k);
        for u in s.basis() {
            let mut row = Vec::with_capacity(k);
            for v in s.basis() {
                let c = s
                    .coordinates(&self.mul(u, v))
                    .ok_or_else(|| Error::NotSubalgebra("not closed under products".into()))?;
                row.push(c);
            }
            table.push(row);
        }
        Algebra::new(k, coords_unit, table).map_err(|e| match e {
            Error::InvalidAlgebra(m) => Error::NotSubalgebra(m),
            other => other,
        })
    }

    /// Unital subalgebra on `s` (must contain the unit of `self`).
    pub fn subalgebra(&self, s: &Subspace) -> Result<Algebra> {
        self.restrict(s, &self.unit.clone())
    }

    /// Minimal polynomial of an element, found from the first linear
    /// dependency among its powers.
    pub fn minimal_polynomial(&self, x: &[Rational]) -> crate::poly::Poly {
        let mut powers: Vec<Vector> = vec![self.unit.clone()];
        loop {
            let next = self.mul(powers.last().unwrap(), x);
            let m = RatMatrix::from_columns(self.dim, &powers);
            if let Some(c) = m.solve(&next).unwrap() {
                let mut coeffs: Vec<Rational> = c.into_iter().map(|v| -v).collect();
                coeffs.push(Rational::one());
                return crate::poly::Poly::new(coeffs);
            }
            powers.push(next);
        }
    }

    /// `p(x)` for a polynomial `p`.
    pub fn eval_poly(&self, p: &crate::poly::Poly, x: &[Rational]) -> Vector {
        let mut acc = vec![Rational::zero(); self.dim];
        for c in p.coeffs().iter().rev() {
            acc = self.mul(&acc, x);
            axpy(&mut acc, c, &self.unit);
        }
        acc
    }

    // --- constructions ---------------------------------------------------

    /// The algebra spanned by a linearly independent family of square
    /// matrices closed under products and containing the identity.
    pub fn from_matrix_basis(basis: &[RatMatrix]) -> Result<Algebra> {
        let Some(first) = basis.first() else {
            return Err(Error::InvalidAlgebra("empty basis".into()));
        };
        let n = first.rows();
        if basis.iter().any(|b| b.rows() != n || b.cols() != n) {
            return Err(Error::InvalidAlgebra("basis matrices must be square of equal size".into()));
        }
        let span = Subspace::span(n * n, basis.iter().map(|b| b.entries().to_vec()));
        if span.dim() != basis.len() {
            return Err(Error::InvalidAlgebra("basis matrices are linearly dependent".into()));
        }
        let cols: Vec<Vector> = basis.iter().map(|b| b.entries().to_vec()).collect();
        let m = RatMatrix::from_columns(n * n, &cols);
        let coords = |x: &RatMatrix| -> Result<Vector> {
            m.solve(x.entries())?
                .ok_or_else(|| Error::InvalidAlgebra("span is not closed under products".into()))
        };
        let mut table = Vec::with_capacity(basis.len());
        for a in basis {
            let mut row = Vec::with_capacity(basis.len());
            for b in basis {
                row.push(coords(&a.mul(b)?)?);
            }
            table.push(row);
        }
        let unit = coords(&RatMatrix::identity(n))
            .map_err(|_| Error::InvalidAlgebra("identity matrix is not in the span".into()))?;
        Algebra::new(basis.len(), unit, table)
    }

    /// Upper-triangular `n x n` matrices, basis `E_ij` (`i <= j`) in
    /// row-major order.
    pub fn upper_triangular(n: usize) -> Algebra {
        let basis: Vec<RatMatrix> = (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .map(|(i, j)| matrix_unit(n, i, j))
            .collect();
        Algebra::from_matrix_basis(&basis).expect("triangular matrices form an algebra")
    }

    /// Indices in the `upper_triangular(n)` basis of the strictly upper
    /// matrix units.
    pub fn strictly_upper_indices(n: usize) -> Vec<usize> {
        (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .enumerate()
            .filter(|(_, (i, j))| i < j)
            .map(|(k, _)| k)
            .collect()
    }

    /// Full matrix algebra `M_n(Q)`, basis `E_ij` row-major.
    pub fn full_matrix(n: usize) -> Algebra {
        let basis: Vec<RatMatrix> = (0..n)
            .flat_map(|i| (0..n).map(move |j| matrix_unit(n, i, j)))
            .collect();
        Algebra::from_matrix_basis(&basis).expect("matrix algebra")
    }

    /// `Q[t]/(f)` for a monic polynomial `f` of positive degree, basis
    /// `1, t, ..., t^{deg f - 1}`.
    pub fn truncated_polynomial(f: &crate::poly::Poly) -> Result<Algebra> {
        let n = f
            .degree()
            .filter(|&d| d > 0)
            .ok_or_else(|| Error::InvalidAlgebra("modulus must have positive degree".into()))?;
        let f = f.monic();
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut c = vec![Rational::zero(); i + j + 1];
                        c[i + j] = Rational::one();
                        let r = crate::poly::Poly::new(c).rem(&f);
                        let mut v = r.coeffs().to_vec();
                        v.resize(n, Rational::zero());
                        v
                    })
                    .collect()
            })
            .collect();
        Algebra::new(n, unit_vector(n, 0), table)
    }

    /// Group algebra from a multiplication table `mult[g][h] = g h`.
    pub fn group_algebra(mult: &[Vec<usize>]) -> Result<Algebra> {
        let n = mult.len();
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mult[e][g] == g && mult[g][e] == g))
            .ok_or_else(|| Error::InvalidAlgebra("group table has no identity".into()))?;
        let table = (0..n)
            .map(|g| (0..n).map(|h| unit_vector(n, mult[g][h])).collect())
            .collect();
        Algebra::new(n, unit_vector(n, identity), table)
    }

    /// `Q[C_n]`.
    pub fn cyclic_group(n: usize) -> Algebra {
        let mult: Vec<Vec<usize>> = (0..n).map(|g| (0..n).map(|h| (g + h) % n).collect()).collect();
        Algebra::group_algebra(&mult).expect("cyclic group")
    }

    /// `Q[S_n]` on the permutations of `0..n` in lexicographic order.
    pub fn symmetric_group(n: usize) -> Algebra {
        let perms = crate::trace::Permutation::all(n);
        let index = |p: &crate::trace::Permutation| perms.iter().position(|q| q == p).unwrap();
        let mult: Vec<Vec<usize>> = perms
            .iter()
            .map(|g| perms.iter().map(|h| index(&g.compose(h))).collect())
            .collect();
        Algebra::group_algebra(&mult).expect("symmetric group")
    }

    /// `A x B` with basis `(e_i, 0)` followed by `(0, f_j)`.
    pub fn direct_product(&self, other: &Algebra) -> Algebra {
        let (d1, d2) = (self.dim, other.dim);
        let d = d1 + d2;
        let mut table = vec![vec![SparseVec::new(); d]; d];
        for i in 0..d1 {
            for j in 0..d1 {
                table[i][j] = self.table[i][j].clone();
            }
        }
        for i in 0..d2 {
            for j in 0..d2 {
                table[d1 + i][d1 + j] = other.table[i][j]
                    .iter()
                    .map(|(k, c)| (d1 + k, c.clone()))
                    .collect();
            }
        }
        let mut unit = self.unit.clone();
        unit.extend(other.unit.iter().cloned());
        Algebra::from_sparse_unchecked(d, unit, table)
    }

    /// Algebra from a sparse multiplication rule on basis indices, used by
    /// path algebras. Validated like [`Algebra::new`].
    pub fn from_basis_rule(
        dim: usize,
        unit: Vector,
        rule: impl Fn(usize, usize) -> Option<usize>,
    ) -> Result<Algebra> {
        if dim == 0 {
            return Err(Error::InvalidAlgebra("the zero algebra has no unit".into()));
        }
        let table = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| match rule(i, j) {
                        Some(k) => vec![(k, Rational::one())],
                        None => Vec::new(),
                    })
                    .collect()
            })
            .collect();
        let alg = Algebra::from_sparse_unchecked(dim, unit, table);
        alg.validate()?;
        Ok(alg)
    }
}

/// The matrix unit `E_ij` of size `n`.
pub fn matrix_unit(n: usize, i: usize, j: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(n, n);
    m.set(i, j, Rational::one());
    m
}

#[derive(Serialize, Deserialize)]
struct AlgebraRepr {
    dim: usize,
    unit: Vector,
    table: Vec<Vec<Vector>>,
}

impl Serialize for Algebra {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        AlgebraRepr {
            dim: self.dim,
            unit: self.unit.clone(),
            table: self.table(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Algebra {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let r = AlgebraRepr::deserialize(deserializer)?;
        Algebra::new(r.dim, r.unit, r.table).map_err(de::Error::custom)
    }
}
