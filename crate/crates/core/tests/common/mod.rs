//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

use wedkit::algebra::{matrix_unit, Algebra};
use wedkit::rational::Rational;
use wedkit::roots::RootType;
use wedkit::trace::Permutation;
use wedkit::RatMatrix;

pub fn rat(rng: &mut StdRng) -> Rational {
    let n = rng.gen_range(-5i64..=5);
    let d = rng.gen_range(1i64..=3);
    Rational::new(n, d)
}

pub fn random_matrix(rng: &mut StdRng, rows: usize, cols: usize) -> RatMatrix {
    RatMatrix::from_fn(rows, cols, |_, _| rat(rng))
}

pub fn random_invertible(rng: &mut StdRng, n: usize) -> RatMatrix {
    loop {
        let m = RatMatrix::from_fn(n, n, |_, _| Rational::from(rng.gen_range(-2i64..=2)));
        if m.rank() == n {
            return m;
        }
    }
}

fn digits(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = index % dims[k];
        index /= dims[k];
    }
    out
}

/// `tr(P · (f_0 ⊗ … ⊗ f_{n−1}))` where `P` undoes `σ` on tensor factors,
/// reading Kronecker entries `K[r][c] = Π f_k[r_k][c_k]` one at a time.
/// Here `f_k : A_k → A_{σ(k)}`, so row indices of `K` live in `⊗ A_{σ(k)}`.
pub fn kronecker_twisted_trace(factors: &[RatMatrix], sigma: &Permutation) -> Rational {
    let n = factors.len();
    let row_dims: Vec<usize> = factors.iter().map(|f| f.rows()).collect();
    let total: usize = row_dims.iter().product();
    let mut acc = Rational::zero();
    for r in 0..total {
        let rd = digits(r, &row_dims);
        // P sends the basis tensor with slot j in A_{σ(j)} back to ⊗ A_k,
        // putting factor j into slot σ(j); the diagonal entry of P·K at
        // column c needs K[r][c] with c = P(r).
        let mut c = vec![0; n];
        for j in 0..n {
            c[sigma.apply(j)] = rd[j];
        }
        let mut term = Rational::one();
        for k in 0..n {
            let x = factors[k].get(rd[k], c[k]);
            if x.is_zero() {
                term = Rational::zero();
                break;
            }
            term *= x;
        }
        acc += term;
    }
    acc
}

/// Literal brute force for one object: materializes `f_0 ⊗ … ⊗ f_{n−1}`
/// and the permutation matrix sending slot `j` to slot `σ(j)`.
pub fn dense_twisted_trace(factors: &[RatMatrix], sigma: &Permutation) -> Rational {
    let d = factors[0].rows();
    let n = factors.len();
    let mut k = RatMatrix::identity(1);
    for f in factors {
        k = k.kron(f);
    }
    let dims = vec![d; n];
    let total = d.pow(n as u32);
    let mut p = RatMatrix::zeros(total, total);
    for r in 0..total {
        let rd = digits(r, &dims);
        let mut c = 0;
        for slot in 0..n {
            let j = sigma.inverse().apply(slot);
            c = c * d + rd[j];
        }
        p.set(c, r, Rational::one());
    }
    p.mul(&k).unwrap().trace()
}

/// `tr(a_n · f^{⊗n})` with `a_n = (1/n!) Σ sgn(σ) σ`, each term evaluated
/// as a Kronecker trace.
pub fn kronecker_lambda_trace(f: &RatMatrix, n: usize) -> Rational {
    if n == 0 {
        return Rational::one();
    }
    let factors = vec![f.clone(); n];
    let mut acc = Rational::zero();
    let mut count = 0i64;
    for sigma in Permutation::all(n) {
        let t = kronecker_twisted_trace(&factors, &sigma);
        if sigma.sign() > 0 {
            acc += t;
        } else {
            acc -= t;
        }
        count += 1;
    }
    let nfact: i64 = (1..=n as i64).product();
    assert_eq!(count, nfact);
    acc / Rational::from(nfact)
}

/// Positive roots as the positive part of the Weyl-group orbit of the
/// simple roots, using reflections `s_i(β) = β − (β, α_i) α_i`.
pub fn weyl_orbit_positive_roots(t: RootType) -> BTreeSet<Vec<i64>> {
    let c = t.cartan_matrix();
    let n = t.rank();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut stack: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    while let Some(b) = stack.pop() {
        if !seen.insert(b.clone()) {
            continue;
        }
        for i in 0..n {
            let pairing: i64 = (0..n).map(|j| b[j] * c[j][i]).sum();
            let mut r = b.clone();
            r[i] -= pairing;
            if !seen.contains(&r) {
                stack.push(r);
            }
        }
    }
    seen.into_iter().filter(|r| r.iter().all(|&x| x >= 0)).collect()
}

/// A block upper-triangular matrix algebra with a random transitive
/// pattern of off-diagonal blocks and optionally tied diagonal blocks,
/// presented in a scrambled basis: conjugated by a random invertible
/// matrix, with random radical elements added to the semisimple basis
/// vectors and the radical basis mixed triangularly.
pub struct RandomSplitAlgebra {
    pub algebra: Algebra,
    /// `Σ n_i²` over the distinct diagonal classes.
    pub semisimple_dim: usize,
    pub radical_dim: usize,
}

pub fn random_split_algebra(rng: &mut StdRng) -> RandomSplitAlgebra {
    loop {
        if let Some(a) = try_random_split_algebra(rng) {
            return a;
        }
    }
}

fn try_random_split_algebra(rng: &mut StdRng) -> Option<RandomSplitAlgebra> {
    let k = rng.gen_range(1..=4);
    let sizes: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=2)).collect();
    let total: usize = sizes.iter().sum();
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, &s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();
    // random relation i < j, then transitive closure
    let mut rel = vec![vec![false; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            rel[i][j] = rng.gen_bool(0.5);
        }
    }
    for m in 0..k {
        for i in 0..k {
            for j in 0..k {
                if rel[i][m] && rel[m][j] {
                    rel[i][j] = true;
                }
            }
        }
    }
    // ties: block j copies block i when sizes agree and i, j are unrelated
    let mut class: Vec<usize> = (0..k).collect();
    for j in 0..k {
        for i in 0..j {
            if class[i] == i
                && sizes[i] == sizes[j]
                && !rel[i][j]
                && (0..k).all(|m| !(rel[i][m] || rel[m][i] || rel[j][m] || rel[m][j]))
                && rng.gen_bool(0.5)
            {
                class[j] = i;
                break;
            }
        }
    }
    let mut semisimple = Vec::new();
    let mut semisimple_dim = 0;
    for c in 0..k {
        if class[c] != c {
            continue;
        }
        let s = sizes[c];
        semisimple_dim += s * s;
        for a in 0..s {
            for b in 0..s {
                let mut m = RatMatrix::zeros(total, total);
                for blk in (0..k).filter(|&x| class[x] == c) {
                    m = m.add(&matrix_unit(total, offsets[blk] + a, offsets[blk] + b)).unwrap();
                }
                semisimple.push(m);
            }
        }
    }
    let mut radical = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if rel[i][j] {
                for a in 0..sizes[i] {
                    for b in 0..sizes[j] {
                        radical.push(matrix_unit(total, offsets[i] + a, offsets[j] + b));
                    }
                }
            }
        }
    }
    let radical_dim = radical.len();
    // mix the radical triangularly and push some of it into the semisimple part
    let mut mixed_rad = radical.clone();
    for i in 0..mixed_rad.len() {
        for j in i + 1..radical.len() {
            if rng.gen_bool(0.3) {
                let c = Rational::from(rng.gen_range(-2i64..=2));
                mixed_rad[i] = mixed_rad[i].add(&radical[j].scale(&c)).unwrap();
            }
        }
    }
    for s in semisimple.iter_mut() {
        for r in &radical {
            if rng.gen_bool(0.3) {
                let c = Rational::from(rng.gen_range(-2i64..=2));
                *s = s.add(&r.scale(&c)).unwrap();
            }
        }
    }
    let p = random_invertible(rng, total);
    let p_inv = p.inverse().unwrap();
    let mut basis: Vec<RatMatrix> = semisimple
        .into_iter()
        .chain(mixed_rad)
        .map(|m| p.mul(&m).unwrap().mul(&p_inv).unwrap())
        .collect();
    basis.shuffle(rng);
    let algebra = Algebra::from_matrix_basis(&basis).ok()?;
    Some(RandomSplitAlgebra {
        algebra,
        semisimple_dim,
        radical_dim,
    })
}

/// Generators of a family whose generated algebra satisfies `x² = 0`.
pub fn random_nil2_family(rng: &mut StdRng) -> Vec<RatMatrix> {
    let parts = rng.gen_range(1..=2);
    let mut blocks: Vec<Vec<RatMatrix>> = Vec::new();
    for _ in 0..parts {
        blocks.push(if rng.gen_bool(0.5) {
            grassmann_plane()
        } else {
            square_zero_family(rng)
        });
    }
    // direct sum: generator i of the family is the sum of the i-th
    // generators of each part (zero when a part has fewer)
    let count = blocks.iter().map(Vec::len).max().unwrap();
    let sizes: Vec<usize> = blocks.iter().map(|b| b[0].rows()).collect();
    let total: usize = sizes.iter().sum();
    let mut gens = Vec::new();
    for g in 0..count {
        let mut m = RatMatrix::zeros(0, 0);
        for (b, &s) in blocks.iter().zip(&sizes) {
            m = m.direct_sum(&b.get(g).cloned().unwrap_or_else(|| RatMatrix::zeros(s, s)));
        }
        gens.push(m);
    }
    let p = random_invertible(rng, total);
    let p_inv = p.inverse().unwrap();
    gens.into_iter()
        .map(|m| p.mul(&m).unwrap().mul(&p_inv).unwrap())
        .collect()
}

/// Left multiplication by the two generators of `Λ(Q²)` on the basis
/// `1, a, b, ab`.
pub fn grassmann_plane() -> Vec<RatMatrix> {
    let la = RatMatrix::from_i64(&[&[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 0]]);
    let lb = RatMatrix::from_i64(&[&[0, 0, 0, 0], &[0, 0, 0, 0], &[1, 0, 0, 0], &[0, -1, 0, 0]]);
    vec![la, lb]
}

/// Matrices `[[0, X], [0, 0]]`.
pub fn square_zero_family(rng: &mut StdRng) -> Vec<RatMatrix> {
    let (p, q) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
    let count = rng.gen_range(1..=3);
    (0..count)
        .map(|_| {
            let x = random_matrix(rng, p, q);
            RatMatrix::from_fn(p + q, p + q, |i, j| {
                if i < p && j >= p {
                    x.get(i, j - p).clone()
                } else {
                    Rational::zero()
                }
            })
        })
        .collect()
}

/// Left multiplication by the three generators of `Λ(Q³)` on its
/// 8-dimensional regular representation; here `(a + bc)² = 2abc ≠ 0`.
pub fn grassmann_space() -> Vec<RatMatrix> {
    // basis: subsets of {0,1,2} as bitmasks 0..8
    (0..3)
        .map(|g| {
            RatMatrix::from_fn(8, 8, |row, col| {
                let bit = 1 << g;
                if col & bit != 0 || row != (col | bit) {
                    return Rational::zero();
                }
                let lower = (col & (bit - 1)).count_ones();
                Rational::from(if lower % 2 == 0 { 1i64 } else { -1 })
            })
        })
        .collect()
}

/// Random acyclic quiver: arrows only go from lower to higher vertex
/// under a random relabeling.
pub fn random_acyclic_quiver(rng: &mut StdRng, max_vertices: usize, max_arrows: usize) -> wedkit::quiver::Quiver {
    let n = rng.gen_range(1..=max_vertices);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let m = if n == 1 { 0 } else { rng.gen_range(0..=max_arrows) };
    let arrows = (0..m)
        .map(|_| {
            let i = rng.gen_range(0..n - 1);
            let j = rng.gen_range(i + 1..n);
            (order[i], order[j])
        })
        .collect();
    wedkit::quiver::Quiver::new(n, arrows).unwrap()
}
