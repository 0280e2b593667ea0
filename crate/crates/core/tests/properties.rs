mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use wedkit::algebra::Algebra;
use wedkit::ga::{self, GaRep};
use wedkit::matrix::axpy;
use wedkit::quiver::{envelope, path_algebra, Quiver};
use wedkit::rational::Rational;
use wedkit::roots::RootType;
use wedkit::semisimple::{center, semisimple_decompose};
use wedkit::trace::{
    antisymmetrizer, lambda_trace, power_traces, symmetrizer, GradedObject, Permutation,
};
use wedkit::wedderburn::{lift_section, Filtration};
use wedkit::{RatMatrix, Subspace, Vector};

use common::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n, d))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(rational(), rows * cols)
        .prop_map(move |e| RatMatrix::from_entries(rows, cols, e).unwrap())
}

fn square(max: usize) -> impl Strategy<Value = RatMatrix> {
    (1..=max).prop_flat_map(|d| matrix(d, d))
}

fn square_pair(max: usize) -> impl Strategy<Value = (RatMatrix, RatMatrix)> {
    (1..=max).prop_flat_map(|d| (matrix(d, d), matrix(d, d)))
}

fn seed() -> impl Strategy<Value = StdRng> {
    any::<u64>().prop_map(StdRng::seed_from_u64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn matrix_product_is_associative(
        (a, b, c) in (1..=4usize, 1..=4usize, 1..=4usize, 1..=4usize)
            .prop_flat_map(|(p, q, r, s)| (matrix(p, q), matrix(q, r), matrix(r, s)))
    ) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn rank_nullity(m in (1..=5usize, 1..=5usize).prop_flat_map(|(r, c)| matrix(r, c))) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Rational::is_zero));
        }
    }

    #[test]
    fn solve_returns_a_solution(
        (m, x) in (1..=5usize, 1..=5usize)
            .prop_flat_map(|(r, c)| (matrix(r, c), prop::collection::vec(rational(), c)))
    ) {
        let b = m.mul_vec(&x).unwrap();
        let y = m.solve(&b).unwrap().expect("consistent system");
        prop_assert_eq!(m.mul_vec(&y).unwrap(), b);
    }

    #[test]
    fn kron_mixed_product(
        (a, b, c, d) in (1..=3usize, 1..=3usize).prop_flat_map(|(p, q)| {
            (matrix(p, p), matrix(q, q), matrix(p, p), matrix(q, q))
        })
    ) {
        let lhs = a.kron(&b).mul(&c.kron(&d)).unwrap();
        let rhs = a.mul(&c).unwrap().kron(&b.mul(&d).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn trace_is_cyclic_and_multiplicative((f, g) in square_pair(5), h in square(3)) {
        prop_assert_eq!(g.mul(&f).unwrap().trace(), f.mul(&g).unwrap().trace());
        prop_assert_eq!(f.kron(&h).trace(), f.trace() * h.trace());
    }

    #[test]
    fn exterior_traces_match_kronecker_oracle(f in square(3), n in 0..=3usize) {
        prop_assert_eq!(lambda_trace(&f, n).unwrap(), kronecker_lambda_trace(&f, n));
    }

    #[test]
    fn nilpotent_matrices_have_trivial_traces(
        (strict, p) in (1..=4usize).prop_flat_map(|d| (matrix(d, d), Just(d)))
    ) {
        let d = p;
        let n = RatMatrix::from_fn(d, d, |i, j| if i < j { strict.get(i, j).clone() } else { Rational::zero() });
        for t in power_traces(&n, d).unwrap() {
            prop_assert!(t.is_zero());
        }
        for k in 1..=d {
            prop_assert!(lambda_trace(&n, k).unwrap().is_zero());
        }
        let one_plus = RatMatrix::identity(d).add(&n).unwrap();
        prop_assert_eq!(lambda_trace(&one_plus, d).unwrap(), Rational::one());
    }

    #[test]
    fn graded_projectors_are_idempotent(p in 0..=2usize, q in 0..=2usize, n in 1..=3usize) {
        let obj = GradedObject::new(p, q);
        if obj.dim() > 0 {
            let a = antisymmetrizer(obj, n).unwrap();
            let s = symmetrizer(obj, n).unwrap();
            prop_assert_eq!(a.mul(&a).unwrap(), a.clone());
            prop_assert_eq!(s.mul(&s).unwrap(), s.clone());
            if n == 2 && q == 0 {
                prop_assert!(a.mul(&s).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn partial_contraction_expansion(f in square(2), n in 1..=4usize) {
        // Tracing out every slot but the first of σ·f^{⊗n} leaves
        // f^{ℓ} times the traces of the remaining cycles, ℓ being the
        // length of the cycle through slot 0.
        let d = f.rows();
        let total = d.pow(n as u32);
        let rest = total / d;
        let mut k = RatMatrix::identity(1);
        for _ in 0..n {
            k = k.kron(&f);
        }
        let mut brute = RatMatrix::zeros(d, d);
        let mut formula = RatMatrix::zeros(d, d);
        for sigma in Permutation::all(n) {
            let mut p = RatMatrix::zeros(total, total);
            for r in 0..total {
                let digits: Vec<usize> = (0..n).map(|s| r / d.pow((n - 1 - s) as u32) % d).collect();
                let mut c = 0;
                for slot in 0..n {
                    c = c * d + digits[sigma.inverse().apply(slot)];
                }
                p.set(c, r, Rational::one());
            }
            let m = p.mul(&k).unwrap();
            let sign = Rational::from(sigma.sign());
            for i in 0..d {
                for j in 0..d {
                    let v: Rational = (0..rest).map(|t| m.get(i * rest + t, j * rest + t).clone()).sum();
                    let cur = brute.get(i, j).clone();
                    brute.set(i, j, cur + &sign * v);
                }
            }
            let mut term = RatMatrix::identity(d).scale(&sign);
            for cycle in sigma.cycles() {
                let power = f.pow(cycle.len() as u32).unwrap();
                if cycle.contains(&0) {
                    term = term.mul(&power).unwrap();
                } else {
                    term = term.scale(&power.trace());
                }
            }
            formula = formula.add(&term).unwrap();
        }
        prop_assert_eq!(brute, formula);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn radical_of_direct_product(mut rng in seed()) {
        let a = random_split_algebra(&mut rng).algebra;
        let b = random_split_algebra(&mut rng).algebra;
        let ab = a.direct_product(&b);
        let (ra, rb) = (a.radical(), b.radical());
        let mut expected: Vec<Vector> = Vec::new();
        for v in ra.basis() {
            let mut w = v.clone();
            w.extend(std::iter::repeat_n(Rational::zero(), b.dim()));
            expected.push(w);
        }
        for v in rb.basis() {
            let mut w = vec![Rational::zero(); a.dim()];
            w.extend(v.iter().cloned());
            expected.push(w);
        }
        prop_assert_eq!(ab.radical(), Subspace::span(ab.dim(), expected));
    }

    #[test]
    fn central_idempotents_decompose_the_quotient(mut rng in seed()) {
        let r = random_split_algebra(&mut rng);
        let f = Filtration::new(&r.algebra).unwrap();
        let q = &f.quotient;
        let report = semisimple_decompose(q).unwrap();
        let es = report.central_idempotents();
        let z = center(q);
        let mut sum = vec![Rational::zero(); q.dim()];
        for (i, e) in es.iter().enumerate() {
            prop_assert!(z.contains(e));
            prop_assert_eq!(&q.mul(e, e), e);
            for e2 in &es[i + 1..] {
                prop_assert!(q.mul(e, e2).iter().all(Rational::is_zero));
            }
            axpy(&mut sum, &Rational::one(), e);
        }
        prop_assert_eq!(&sum, q.unit());
        let dims: usize = report.blocks.iter().map(|b| b.block_dim).sum();
        prop_assert_eq!(dims, r.semisimple_dim);
    }

    #[test]
    fn sections_lift_idempotents(mut rng in seed()) {
        let a = random_split_algebra(&mut rng).algebra;
        let f = Filtration::new(&a).unwrap();
        let s = lift_section(&a).unwrap();
        for e in semisimple_decompose(&f.quotient).unwrap().central_idempotents() {
            let lifted = s.apply(&e);
            prop_assert_eq!(a.mul(&lifted, &lifted), lifted.clone());
            prop_assert_eq!(f.projection.mul_vec(&lifted).unwrap(), e);
        }
    }

    #[test]
    fn path_algebra_radical_is_arrow_ideal(mut rng in seed()) {
        let q = random_acyclic_quiver(&mut rng, 5, 7);
        let a = path_algebra(&q).unwrap();
        let arrows = Subspace::span(a.dim(), (q.vertices()..a.dim()).map(|k| a.basis_vector(k)));
        prop_assert_eq!(a.radical(), arrows);
    }

    #[test]
    fn envelope_ignores_orientation(family in 0..3usize, rank in 1..=7usize, mask in any::<u64>()) {
        let t = match family {
            0 => RootType::A(rank),
            1 => RootType::D(rank.max(4)),
            _ => RootType::E(rank.clamp(6, 8)),
        };
        let q = Quiver::dynkin(t);
        prop_assert_eq!(envelope(&q.reorient(mask)).unwrap(), envelope(&q).unwrap());
        let roots = weyl_orbit_positive_roots(t);
        prop_assert_eq!(envelope(&q).unwrap().total_blocks(), roots.len());
    }

    #[test]
    fn category_radical_is_an_ideal(ms in prop::collection::vec(0..=3usize, 1..=3), ns in prop::collection::vec(0..=3usize, 1..=3)) {
        let (a, b) = (GaRep::direct_sum_of(&ms), GaRep::direct_sum_of(&ns));
        let rad_ab = ga::radical_morphisms(&a, &b);
        let rad_aa = ga::category_radical(&a, &a);
        let rad_bb = ga::category_radical(&b, &b);
        let hom_ba = ga::intertwiners(&b, &a);
        let hom_ab = ga::category_radical(&a, &b);
        for f in &rad_ab {
            prop_assert!(ga::is_intertwiner(&a, &b, f));
            for g in &hom_ba {
                prop_assert!(rad_aa.contains(g.mul(f).unwrap().entries()));
                prop_assert!(rad_bb.contains(f.mul(g).unwrap().entries()));
            }
            for h in ga::intertwiners(&b, &b) {
                prop_assert!(hom_ab.contains(h.mul(f).unwrap().entries()));
            }
        }
    }
}

#[test]
fn upper_triangular_algebras_are_wedderburn() {
    for n in 1..=4 {
        let a = Algebra::upper_triangular(n);
        let f = Filtration::new(&a).unwrap();
        assert_eq!(f.quotient_dim(), n);
        assert_eq!(f.index(), n);
    }
}
