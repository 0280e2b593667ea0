//! Wedderburn–Malcev sections of `A → A/rad(A)`: construction along the
//! radical filtration, conjugacy by units in `1 + rad(A)`, and sections
//! fixing a given semisimple subalgebra.

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::matrix::{axpy, unit_vector, vec_add, vec_sub, RatMatrix, Vector};
use crate::rational::Rational;
use crate::semisimple::semisimple_decompose;
use crate::subspace::Subspace;

/// The radical, its powers, and the quotient on the echelon complement.
#[derive(Clone, Debug)]
pub struct Filtration {
    pub radical: Subspace,
    /// `R^1, R^2, …, R^r = 0`.
    pub powers: Vec<Subspace>,
    pub quotient: Algebra,
    /// `π`, of shape `dim(A/R) × dim(A)`.
    pub projection: RatMatrix,
    /// Basis indices of `A` whose images form the quotient basis.
    pub complement: Vec<usize>,
    /// Rows of `quotient_projection` for each `R^{m+1}`, indexed by `m`.
    layer_projections: Vec<RatMatrix>,
    /// A basis of `R^m` modulo `R^{m+1}`, indexed by `m`.
    layer_bases: Vec<Vec<Vector>>,
}

impl Filtration {
    pub fn new(a: &Algebra) -> Result<Self> {
        let radical = a.radical();
        let powers = a.ideal_powers(&radical)?;
        let (quotient, projection) = a.quotient(&radical)?;
        let complement = radical.complement_indices();
        let mut layer_projections = vec![RatMatrix::zeros(0, 0)];
        let mut layer_bases = vec![Vec::new()];
        for m in 1..powers.len() {
            let (rm, next) = (&powers[m - 1], &powers[m]);
            layer_projections.push(next.quotient_projection());
            let mut span = next.clone();
            let mut chosen = Vec::new();
            for v in rm.basis() {
                let bigger = span.sum(&Subspace::span(a.dim(), [v.clone()]));
                if bigger.dim() > span.dim() {
                    chosen.push(v.clone());
                    span = bigger;
                }
            }
            layer_bases.push(chosen);
        }
        Ok(Filtration {
            radical,
            powers,
            quotient,
            projection,
            complement,
            layer_projections,
            layer_bases,
        })
    }

    /// Nilpotency index `r` of the radical.
    pub fn index(&self) -> usize {
        self.powers.len()
    }

    pub fn quotient_dim(&self) -> usize {
        self.complement.len()
    }

    /// The section that sends quotient basis vectors to the matching
    /// standard basis vectors of `A`.
    pub fn linear_section(&self, dim: usize) -> RatMatrix {
        let cols: Vec<Vector> = self.complement.iter().map(|&c| unit_vector(dim, c)).collect();
        RatMatrix::from_columns(dim, &cols)
    }
}

/// A linear map `A/R → A`; column `j` is the image of quotient basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub map: RatMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SectionCheck {
    pub projection: bool,
    pub multiplicative: bool,
    pub unit: bool,
}

impl SectionCheck {
    pub fn ok(&self) -> bool {
        self.projection && self.multiplicative && self.unit
    }
}

impl Section {
    pub fn image(&self, j: usize) -> Vector {
        self.map.column(j)
    }

    /// `s(x̄)` for quotient coordinates `x̄`.
    pub fn apply(&self, x: &[Rational]) -> Vector {
        self.map.mul_vec(x).expect("quotient coordinates")
    }

    pub fn verify(&self, a: &Algebra, f: &Filtration) -> SectionCheck {
        let qd = f.quotient_dim();
        if self.map.rows() != a.dim() || self.map.cols() != qd {
            return SectionCheck {
                projection: false,
                multiplicative: false,
                unit: false,
            };
        }
        let projection = f.projection.mul(&self.map).unwrap().is_identity();
        let images: Vec<Vector> = (0..qd).map(|j| self.image(j)).collect();
        let multiplicative = (0..qd).all(|i| {
            (0..qd).all(|j| {
                let prod = f.quotient.basis_product(i, j);
                a.mul(&images[i], &images[j]) == self.apply(&prod)
            })
        });
        let unit = &self.apply(f.quotient.unit()) == a.unit();
        SectionCheck {
            projection,
            multiplicative,
            unit,
        }
    }

    fn conjugate_by(&self, a: &Algebra, u: &[Rational], u_inv: &[Rational]) -> Section {
        let cols: Vec<Vector> = (0..self.map.cols())
            .map(|j| a.mul(&a.mul(u, &self.image(j)), u_inv))
            .collect();
        Section {
            map: RatMatrix::from_columns(a.dim(), &cols),
        }
    }
}

fn require_split(f: &Filtration) -> Result<()> {
    if !semisimple_decompose(&f.quotient)?.is_split() {
        return Err(Error::UnsplitQuotient);
    }
    Ok(())
}

/// Writes `Σ_k z_k w_k` for unknown blocks `z` into the columns of a system.
fn layer_element(basis: &[Vector], z: &[Rational], dim: usize) -> Vector {
    let mut v = vec![Rational::zero(); dim];
    for (c, w) in z.iter().zip(basis) {
        axpy(&mut v, c, w);
    }
    v
}

/// A multiplicative section, corrected layer by layer: at step `m` the
/// defect `γ(x,y) = σ(xy) − σ(x)σ(y)` lies in `R^m`, and `σ − ρ` with
/// `ρ(xy) − σ(x)ρ(y) − ρ(x)σ(y) ≡ γ(x,y)` is multiplicative mod `R^{m+1}`.
pub fn lift_section(a: &Algebra) -> Result<Section> {
    let f = Filtration::new(a)?;
    require_split(&f)?;
    lift_with(a, &f)
}

fn lift_with(a: &Algebra, f: &Filtration) -> Result<Section> {
    let d = a.dim();
    let qd = f.quotient_dim();
    let mut sigma = f.linear_section(d);
    for m in 1..f.index() {
        let w = &f.layer_bases[m];
        let proj = &f.layer_projections[m];
        if w.is_empty() {
            continue;
        }
        let cur = Section { map: sigma.clone() };
        let images: Vec<Vector> = (0..qd).map(|j| cur.image(j)).collect();
        let k = w.len();
        let nrows = proj.rows();
        let mut system = RatMatrix::zeros(qd * qd * nrows, qd * k);
        let mut rhs = vec![Rational::zero(); qd * qd * nrows];
        for i in 0..qd {
            for j in 0..qd {
                let prod = f.quotient.basis_product(i, j);
                let gamma = vec_sub(&cur.apply(&prod), &a.mul(&images[i], &images[j]));
                let row0 = (i * qd + j) * nrows;
                for (r, x) in proj.mul_vec(&gamma)?.into_iter().enumerate() {
                    rhs[row0 + r] = x;
                }
                for (kk, wk) in w.iter().enumerate() {
                    // contributions of ρ(ē_l) = Σ z_{l,kk} w_kk
                    let mut add = |col: usize, v: Vector| {
                        for (r, x) in proj.mul_vec(&v).unwrap().into_iter().enumerate() {
                            if !x.is_zero() {
                                let cur = system.get(row0 + r, col).clone();
                                system.set(row0 + r, col, cur + x);
                            }
                        }
                    };
                    for (l, c) in prod.iter().enumerate() {
                        if !c.is_zero() {
                            add(l * k + kk, wk.iter().map(|x| x * c).collect());
                        }
                    }
                    add(j * k + kk, a.mul(&images[i], wk).iter().map(|x| -x).collect());
                    add(i * k + kk, a.mul(wk, &images[j]).iter().map(|x| -x).collect());
                }
            }
        }
        let z = system.solve(&rhs)?.ok_or_else(|| {
            Error::Internal(format!("inconsistent cocycle system at filtration step {m}"))
        })?;
        let cols: Vec<Vector> = (0..qd)
            .map(|l| vec_sub(&images[l], &layer_element(w, &z[l * k..(l + 1) * k], d)))
            .collect();
        sigma = RatMatrix::from_columns(d, &cols);
    }
    let s = Section { map: sigma };
    if !s.verify(a, f).ok() {
        return Err(Error::Internal("lifted section failed verification".into()));
    }
    Ok(s)
}

/// Finds `u ∈ 1 + R` with `target(x) = u·source(x)·u⁻¹` for the listed
/// pairs `(x̄, target)`: at step `m` the difference `δ = target − u s u⁻¹`
/// lies in `R^m` and is solved as `δ(x) ≡ n t(x) − t(x) n` for `n ∈ R^m`.
fn conjugator(
    a: &Algebra,
    f: &Filtration,
    source: &Section,
    pairs: &[(Vector, Vector)],
) -> Result<Vector> {
    let d = a.dim();
    let mut u = a.unit().clone();
    let mut u_inv = a.unit().clone();
    for m in 1..f.index() {
        let w = &f.layer_bases[m];
        let proj = &f.layer_projections[m];
        if w.is_empty() {
            continue;
        }
        let t = source.conjugate_by(a, &u, &u_inv);
        let nrows = proj.rows();
        let mut system = RatMatrix::zeros(pairs.len() * nrows, w.len());
        let mut rhs = vec![Rational::zero(); pairs.len() * nrows];
        for (p, (xbar, target)) in pairs.iter().enumerate() {
            let tx = t.apply(xbar);
            let delta = vec_sub(target, &tx);
            if !f.powers[m - 1].contains(&delta) {
                return Err(Error::InvalidSection(
                    "sections are not conjugate (difference leaves the radical filtration)".into(),
                ));
            }
            for (r, x) in proj.mul_vec(&delta)?.into_iter().enumerate() {
                rhs[p * nrows + r] = x;
            }
            for (kk, wk) in w.iter().enumerate() {
                let comm = vec_sub(&a.mul(wk, &tx), &a.mul(&tx, wk));
                for (r, x) in proj.mul_vec(&comm)?.into_iter().enumerate() {
                    system.set(p * nrows + r, kk, x);
                }
            }
        }
        let z = system.solve(&rhs)?.ok_or_else(|| {
            Error::Internal(format!("inconsistent coboundary system at filtration step {m}"))
        })?;
        let n = layer_element(w, &z, d);
        u = vec_add(&u, &a.mul(&n, &u));
        u_inv = a
            .inverse(&u)
            .ok_or_else(|| Error::Internal("1 + n is not invertible".into()))?;
    }
    Ok(u)
}

/// `u ∈ 1 + R` with `s2(x̄) = u·s1(x̄)·u⁻¹` for every quotient basis vector.
pub fn conjugate_sections(a: &Algebra, s1: &Section, s2: &Section) -> Result<Vector> {
    let f = Filtration::new(a)?;
    for (name, s) in [("first", s1), ("second", s2)] {
        if !s.verify(a, &f).ok() {
            return Err(Error::InvalidSection(format!("{name} section is not a multiplicative lift")));
        }
    }
    let qd = f.quotient_dim();
    let pairs: Vec<(Vector, Vector)> = (0..qd).map(|j| (unit_vector(qd, j), s2.image(j))).collect();
    let u = conjugator(a, &f, s1, &pairs)?;
    let u_inv = a
        .inverse(&u)
        .ok_or_else(|| Error::Internal("conjugator is not invertible".into()))?;
    if &s1.conjugate_by(a, &u, &u_inv) != s2 || !f.radical.contains(&vec_sub(&u, a.unit())) {
        return Err(Error::Internal("conjugator failed verification".into()));
    }
    Ok(u)
}

/// A section whose image contains the unital semisimple subalgebra `b`
/// pointwise: `s(π(x)) = x` for `x ∈ b`.
pub fn lift_section_fixing(a: &Algebra, b: &Subspace) -> Result<Section> {
    if b.ambient_dim() != a.dim() {
        return Err(Error::DimensionMismatch("subspace of another algebra".into()));
    }
    if !b.contains(a.unit()) {
        return Err(Error::NotSubalgebra("does not contain the unit".into()));
    }
    if !a.is_closed(b) {
        return Err(Error::NotSubalgebra("not closed under products".into()));
    }
    let rad = a.subalgebra(b)?.radical();
    if !rad.is_zero() {
        return Err(Error::NotSemisimple(rad.dim()));
    }
    let f = Filtration::new(a)?;
    require_split(&f)?;
    let s = lift_with(a, &f)?;
    let pairs: Vec<(Vector, Vector)> = b
        .basis()
        .iter()
        .map(|x| (f.projection.mul_vec(x).unwrap(), x.clone()))
        .collect();
    let u = conjugator(a, &f, &s, &pairs)?;
    let u_inv = a
        .inverse(&u)
        .ok_or_else(|| Error::Internal("conjugator is not invertible".into()))?;
    let fixed = s.conjugate_by(a, &u, &u_inv);
    let ok = fixed.verify(a, &f).ok()
        && pairs.iter().all(|(xbar, x)| &fixed.apply(xbar) == x);
    if !ok {
        return Err(Error::Internal("fixing section failed verification".into()));
    }
    Ok(fixed)
}

/// Wraps a matrix read from outside after checking its shape.
pub fn section_from_matrix(a: &Algebra, map: RatMatrix) -> Result<Section> {
    let f = Filtration::new(a)?;
    let s = Section { map };
    if s.map.rows() != a.dim() || s.map.cols() != f.quotient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "section must be {} x {}",
            a.dim(),
            f.quotient_dim()
        )));
    }
    Ok(s)
}
