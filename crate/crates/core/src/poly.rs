//! Univariate polynomials over the rationals and their factorization.
//!
//! Factorization over `Q` is needed to split commutative semisimple algebras
//! into fields. Square-free parts are factored over `Z` by the classical
//! Zassenhaus route: Berlekamp factorization modulo a small prime, linear
//! Hensel lifting, then recombination of lifted factors by trial division.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::Rational;

/// Dense polynomial, coefficients from the constant term up. Never has a
/// trailing zero coefficient; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly(Vec<Rational>);

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![Rational::one()])
    }

    /// `x - a`.
    pub fn linear(a: Rational) -> Self {
        Poly(vec![-a, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.0.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                Poly(self.0.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly::new(
            (0..n)
                .map(|i| {
                    let a = self.0.get(i).cloned().unwrap_or_default();
                    match other.0.get(i) {
                        Some(b) => a + b,
                        None => a,
                    }
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&Rational::from(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Poly::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = divisor.leading().unwrap().inv().unwrap();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quo = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.0.iter().enumerate() {
                if !d.is_zero() {
                    let v = &rem[k + j] - &c * d;
                    rem[k + j] = v;
                }
            }
            quo[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quo), Poly::new(rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from(i))
                .collect(),
        )
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (quo, r2) = r0.div_rem(&r1);
            let s2 = s0.sub(&quo.mul(&s1));
            let t2 = t0.sub(&quo.mul(&t1));
            r0 = std::mem::replace(&mut r1, r2);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = lc.inv().unwrap();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Square-free decomposition `self = lc * prod a_i^i` (Yun), returned as
    /// `(a_i, i)` pairs with `a_i` monic and non-constant.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_rem(&a0).0;
        let mut c = fp.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Factorization into monic irreducibles over `Q` with multiplicities.
    /// The leading coefficient is dropped. Sorted by degree, then by
    /// coefficients, for a deterministic order.
    pub fn factor(&self) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        for (part, mult) in self.squarefree_decomposition() {
            for g in factor_squarefree_integer(&primitive_integer(&part)) {
                out.push((from_integer_poly(&g).monic(), mult));
            }
        }
        out.sort_by(|a, b| {
            a.0.degree()
                .cmp(&b.0.degree())
                .then_with(|| a.0 .0.cmp(&b.0 .0))
        });
        out
    }

    pub fn is_irreducible(&self) -> bool {
        let f = self.factor();
        f.len() == 1 && f[0].1 == 1
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        Ok(())
    }
}

type IntPoly = Vec<BigInt>;

fn trim_int(mut p: IntPoly) -> IntPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Clear denominators and content; the result has a positive leading
/// coefficient.
pub fn primitive_integer(p: &Poly) -> IntPoly {
    let l = p
        .0
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: IntPoly = p.0.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let mut out: IntPoly = ints.into_iter().map(|c| c / &content).collect();
    if out.last().is_some_and(Signed::is_negative) {
        for c in &mut out {
            *c = -&*c;
        }
    }
    out
}

fn from_integer_poly(p: &[BigInt]) -> Poly {
    Poly::new(p.iter().map(|c| Rational::from(c.clone())).collect())
}

fn int_content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim_int(out)
}

/// Exact quotient `a / b` in `Z[x]`, if it exists.
fn int_exact_div(a: &[BigInt], b: &[BigInt]) -> Option<IntPoly> {
    let (q, r) = from_integer_poly(a).div_rem(&from_integer_poly(b));
    if !r.is_zero() || q.0.iter().any(|c| !c.is_integer()) {
        return None;
    }
    Some(q.0.iter().map(|c| c.numer().clone()).collect())
}

fn sym_mod(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

// --- arithmetic in F_p[x], p < 2^31 -----------------------------------------

type ModPoly = Vec<u64>;

fn mp_trim(mut a: ModPoly) -> ModPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn mp_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn mp_inv(a: u64, p: u64) -> u64 {
    mp_pow(a, p - 2, p)
}

fn mp_sub(a: &[u64], b: &[u64], p: u64) -> ModPoly {
    let n = a.len().max(b.len());
    mp_trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

fn mp_add(a: &[u64], b: &[u64], p: u64) -> ModPoly {
    let n = a.len().max(b.len());
    mp_trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

fn mp_mul(a: &[u64], b: &[u64], p: u64) -> ModPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    mp_trim(out)
}

fn mp_div_rem(a: &[u64], b: &[u64], p: u64) -> (ModPoly, ModPoly) {
    let db = b.len() - 1;
    let inv = mp_inv(b[db], p);
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (Vec::new(), mp_trim(rem));
    }
    let mut quo = vec![0u64; rem.len() - db];
    for k in (0..quo.len()).rev() {
        let c = rem[k + db] * inv % p;
        if c == 0 {
            continue;
        }
        for (j, &d) in b.iter().enumerate() {
            rem[k + j] = (rem[k + j] + p - c * d % p) % p;
        }
        quo[k] = c;
    }
    rem.truncate(db);
    (mp_trim(quo), mp_trim(rem))
}

fn mp_monic(a: &[u64], p: u64) -> ModPoly {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => {
            let inv = mp_inv(lc, p);
            a.iter().map(|&c| c * inv % p).collect()
        }
    }
}

fn mp_gcd(a: &[u64], b: &[u64], p: u64) -> ModPoly {
    let (mut a, mut b) = (mp_trim(a.to_vec()), mp_trim(b.to_vec()));
    while !b.is_empty() {
        let r = mp_div_rem(&a, &b, p).1;
        a = b;
        b = r;
    }
    mp_monic(&a, p)
}

/// `(s, t)` with `s*a + t*b = 1` for coprime `a`, `b`.
fn mp_bezout(a: &[u64], b: &[u64], p: u64) -> (ModPoly, ModPoly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (quo, r2) = mp_div_rem(&r0, &r1, p);
        let s2 = mp_sub(&s0, &mp_mul(&quo, &s1, p), p);
        let t2 = mp_sub(&t0, &mp_mul(&quo, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    debug_assert_eq!(r0.len(), 1, "bezout inputs not coprime");
    let inv = mp_inv(r0[0], p);
    (
        s0.iter().map(|&c| c * inv % p).collect(),
        t0.iter().map(|&c| c * inv % p).collect(),
    )
}

fn mp_derivative(a: &[u64], p: u64) -> ModPoly {
    mp_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * (i as u64 % p) % p)
            .collect(),
    )
}

fn to_mod(a: &[BigInt], p: u64) -> ModPoly {
    let pb = BigInt::from(p);
    mp_trim(
        a.iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect(),
    )
}

/// Null space of a square matrix over F_p (row-major), as row vectors.
fn mod_nullspace(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(piv) = (r..n).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = mp_inv(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..n {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..n {
                    a[i][j] = (a[i][j] + p - f * a[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[row][f]) % p;
            }
            v
        })
        .collect()
}

/// Berlekamp factorization of a monic square-free polynomial over F_p.
fn berlekamp(g: &[u64], p: u64) -> Vec<ModPoly> {
    let n = g.len() - 1;
    if n <= 1 {
        return vec![g.to_vec()];
    }
    // Row i of q holds x^(i p) mod g.
    let xp = {
        let mut acc = vec![1u64];
        let mut base = vec![0u64, 1];
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mp_div_rem(&mp_mul(&acc, &base, p), g, p).1;
            }
            base = mp_div_rem(&mp_mul(&base, &base, p), g, p).1;
            e >>= 1;
        }
        acc
    };
    let mut rows = Vec::with_capacity(n);
    let mut cur = vec![1u64];
    for _ in 0..n {
        let mut row = cur.clone();
        row.resize(n, 0);
        rows.push(row);
        cur = mp_div_rem(&mp_mul(&cur, &xp, p), g, p).1;
    }
    // Solve (Q^T - I) v = 0.
    let m: Vec<Vec<u64>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    let x = rows[i][j];
                    if i == j {
                        (x + p - 1) % p
                    } else {
                        x
                    }
                })
                .collect()
        })
        .collect();
    let kernel = mod_nullspace(&m, p);
    let r = kernel.len();
    let mut factors = vec![g.to_vec()];
    for v in &kernel {
        if factors.len() == r {
            break;
        }
        let v = mp_trim(v.clone());
        if v.len() <= 1 {
            continue;
        }
        let mut next = Vec::new();
        for h in factors {
            if h.len() <= 2 {
                next.push(h);
                continue;
            }
            let mut pieces = vec![h];
            for s in 0..p {
                let shifted = mp_sub(&v, &[s], p);
                let mut refined = Vec::new();
                for piece in pieces {
                    if piece.len() <= 2 {
                        refined.push(piece);
                        continue;
                    }
                    let d = mp_gcd(&piece, &shifted, p);
                    if d.len() > 1 && d.len() < piece.len() {
                        let other = mp_monic(&mp_div_rem(&piece, &d, p).0, p);
                        refined.push(d);
                        refined.push(other);
                    } else {
                        refined.push(piece);
                    }
                }
                pieces = refined;
            }
            next.extend(pieces);
        }
        factors = next;
    }
    debug_assert_eq!(factors.len(), r);
    factors
}

fn mod_poly_big(a: &[BigInt], m: &BigInt) -> IntPoly {
    trim_int(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn big_from_mod(a: &[u64]) -> IntPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lift `f = g * h (mod p)` with `g` monic to a factorization modulo
/// `modulus = p^k`.
fn hensel_lift(
    f: &[BigInt],
    g: &[u64],
    h: &[u64],
    p: u64,
    modulus: &BigInt,
) -> (IntPoly, IntPoly) {
    let (s, t) = mp_bezout(g, h, p);
    let pb = BigInt::from(p);
    let mut big_g = big_from_mod(g);
    let mut big_h = big_from_mod(h);
    let mut pk = pb.clone();
    while &pk < modulus {
        let prod = int_mul(&big_g, &big_h);
        let n = f.len().max(prod.len());
        let diff: IntPoly = (0..n)
            .map(|i| {
                f.get(i).cloned().unwrap_or_default() - prod.get(i).cloned().unwrap_or_default()
            })
            .collect();
        let e: ModPoly = mp_trim(
            diff.iter()
                .map(|c| {
                    let q = c.mod_floor(modulus);
                    debug_assert!((&q % &pk).is_zero());
                    ((q / &pk) % &pb).to_u64().unwrap()
                })
                .collect(),
        );
        if !e.is_empty() {
            let (quo, dg) = mp_div_rem(&mp_mul(&e, &t, p), g, p);
            let dh = mp_add(&mp_mul(&e, &s, p), &mp_mul(&quo, h, p), p);
            let add = |base: &mut IntPoly, delta: &[u64]| {
                if base.len() < delta.len() {
                    base.resize(delta.len(), BigInt::zero());
                }
                for (b, &d) in base.iter_mut().zip(delta) {
                    *b += &pk * BigInt::from(d);
                }
            };
            add(&mut big_g, &dg);
            add(&mut big_h, &dh);
            big_g = mod_poly_big(&big_g, modulus);
            big_h = mod_poly_big(&big_h, modulus);
        }
        pk *= &pb;
    }
    (big_g, big_h)
}

const SMALL_PRIMES: [u64; 30] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127,
];

/// Irreducible factors over `Z` of a primitive square-free polynomial with
/// positive leading coefficient.
pub fn factor_squarefree_integer(f: &[BigInt]) -> Vec<IntPoly> {
    let f = trim_int(f.to_vec());
    let n = f.len().saturating_sub(1);
    if n <= 1 {
        return vec![f];
    }
    let lc = f[n].clone();
    let p = SMALL_PRIMES
        .iter()
        .copied()
        .find(|&p| {
            if (&lc % BigInt::from(p)).is_zero() {
                return false;
            }
            let fm = to_mod(&f, p);
            mp_gcd(&fm, &mp_derivative(&fm, p), p).len() == 1
        })
        .expect("no suitable prime for a square-free polynomial");
    let fm = mp_monic(&to_mod(&f, p), p);
    let local = berlekamp(&fm, p);
    if local.len() == 1 {
        return vec![f];
    }

    // Bound on coefficients of any factor, times the leading coefficient.
    let max_coef = f.iter().map(|c| c.abs()).max().unwrap();
    let bound = BigInt::from(n + 1) * (BigInt::one() << n) * max_coef * lc.abs() * 2;
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus *= &pb;
    }

    // Multifactor lifting by peeling one factor at a time.
    let mut lifted = Vec::new();
    let mut rest_target = f.clone();
    let lc_inv_mod = lc.modpow(&(&modulus / &pb * (&pb - 1) - 1), &modulus);
    for (i, gi) in local.iter().enumerate() {
        if i + 1 == local.len() {
            // What is left is lc * g_last; store the monic version.
            let monic: IntPoly = rest_target
                .iter()
                .map(|c| (c * &lc_inv_mod).mod_floor(&modulus))
                .collect();
            lifted.push(trim_int(monic));
            break;
        }
        let hm = local[i + 1..]
            .iter()
            .fold(vec![lc.mod_floor(&pb).to_u64().unwrap()], |acc, x| {
                mp_mul(&acc, x, p)
            });
        let (g_big, h_big) = hensel_lift(&rest_target, gi, &hm, p, &modulus);
        lifted.push(g_big);
        rest_target = h_big;
    }

    // Recombination.
    let mut factors = Vec::new();
    let mut remaining: Vec<IntPoly> = lifted;
    let mut current = f.clone();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut found = false;
        for subset in combinations(remaining.len(), size) {
            let lc_cur = current.last().unwrap().clone();
            let mut cand = vec![lc_cur.clone()];
            for &i in &subset {
                cand = mod_poly_big(&int_mul(&cand, &remaining[i]), &modulus);
            }
            let cand: IntPoly = trim_int(cand.iter().map(|c| sym_mod(c, &modulus)).collect());
            let content = int_content(&cand);
            let cand: IntPoly = cand.iter().map(|c| c / &content).collect();
            if let Some(quotient) = int_exact_div(&current, &cand) {
                factors.push(cand);
                current = quotient;
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, x)| x)
                    .collect();
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if current.len() > 1 {
        let content = int_content(&current);
        factors.push(current.iter().map(|c| c / &content).collect());
    }
    factors
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    fn product(factors: &[(Poly, usize)]) -> Poly {
        factors.iter().fold(Poly::one(), |acc, (f, m)| {
            (0..*m).fold(acc, |a, _| a.mul(f))
        })
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]); // x^2 - 1
        let b = p(&[1, 1]); // x + 1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[-1, 1]).mul(&p(&[2, 1]))), p(&[-1, 1]));
        let (g, s, t) = p(&[-2, 0, 1]).ext_gcd(&p(&[1, 1]));
        assert_eq!(g, Poly::one());
        assert_eq!(s.mul(&p(&[-2, 0, 1])).add(&t.mul(&p(&[1, 1]))), Poly::one());
    }

    #[test]
    fn squarefree_parts() {
        // (x-1)^2 (x+2)^3 x
        let f = p(&[-1, 1])
            .mul(&p(&[-1, 1]))
            .mul(&p(&[2, 1]).mul(&p(&[2, 1])).mul(&p(&[2, 1])))
            .mul(&p(&[0, 1]));
        let sq = f.squarefree_decomposition();
        assert_eq!(sq, vec![(p(&[0, 1]), 1), (p(&[-1, 1]), 2), (p(&[2, 1]), 3)]);
    }

    #[test]
    fn factor_cyclotomic_products() {
        // x^3 - 1 = (x - 1)(x^2 + x + 1)
        let f = p(&[-1, 0, 0, 1]).factor();
        assert_eq!(f, vec![(p(&[-1, 1]), 1), (p(&[1, 1, 1]), 1)]);
        // x^6 - 1 has four irreducible factors over Q.
        let f = p(&[-1, 0, 0, 0, 0, 0, 1]).factor();
        assert_eq!(f.len(), 4);
        assert_eq!(product(&f), p(&[-1, 0, 0, 0, 0, 0, 1]));
        // x^4 + 1 is irreducible over Q but splits modulo every prime.
        assert!(p(&[1, 0, 0, 0, 1]).is_irreducible());
        assert!(p(&[-2, 0, 1]).is_irreducible());
    }

    #[test]
    fn factor_non_monic_and_rational() {
        // (2x + 1)(3x - 2)(x^2 + 3)
        let f = p(&[1, 2]).mul(&p(&[-2, 3])).mul(&p(&[3, 0, 1]));
        let fac = f.factor();
        assert_eq!(fac.len(), 3);
        assert_eq!(product(&fac), f.monic());
        let half = Poly::new(vec![Rational::new(1, 2), Rational::one()]);
        assert_eq!(half.factor(), vec![(half.clone(), 1)]);
    }

    #[test]
    fn factor_swinnerton_dyer_like() {
        // (x^2 - 2)(x^2 - 3)(x^2 - 5): many modular factors, three true ones.
        let f = p(&[-2, 0, 1]).mul(&p(&[-3, 0, 1])).mul(&p(&[-5, 0, 1]));
        let fac = f.factor();
        assert_eq!(fac.len(), 3);
        assert!(fac.iter().all(|(g, m)| g.degree() == Some(2) && *m == 1));
        // x^4 - 10x^2 + 1 (minimal polynomial of sqrt2 + sqrt3) is irreducible.
        assert!(p(&[1, 0, -10, 0, 1]).is_irreducible());
    }
}
