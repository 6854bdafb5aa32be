//! Rational roots of univariate polynomials over ℚ.
//!
//! The main path is modular: make the polynomial square-free and primitive,
//! find its roots modulo a word-sized prime `P` by distinct- and equal-degree
//! splitting, Hensel-lift each simple root past `2·|c_0|·|c_n|`, and recover
//! `p/q` by rational reconstruction. Every candidate is checked exactly, and
//! every rational root reduces to a root mod `P` (as `P ∤ c_n`), so the
//! result is complete.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;

/// Dense polynomial over `F_P`, ascending, no trailing zeros.
type Zp = Vec<u64>;

fn trim(a: &mut Zp) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn sub_poly(a: &Zp, b: &Zp, p: u64) -> Zp {
    let mut out: Zp = (0..a.len().max(b.len()))
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

fn mul_poly(a: &Zp, b: &Zp, p: u64) -> Zp {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(&mut out);
    out
}

fn divrem(a: &Zp, m: &Zp, p: u64) -> (Zp, Zp) {
    let mut r = a.clone();
    if r.len() < m.len() {
        return (vec![], r);
    }
    let lead_inv = inv_mod(*m.last().expect("nonzero divisor"), p);
    let mut q = vec![0u64; r.len() - m.len() + 1];
    while r.len() >= m.len() {
        let shift = r.len() - m.len();
        let c = mul_mod(*r.last().unwrap(), lead_inv, p);
        q[shift] = c;
        for (i, &y) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - mul_mod(c, y, p)) % p;
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn monic(mut a: Zp, p: u64) -> Zp {
    if let Some(&l) = a.last() {
        let inv = inv_mod(l, p);
        for c in &mut a {
            *c = mul_mod(*c, inv, p);
        }
    }
    a
}

fn gcd_poly(a: &Zp, b: &Zp, p: u64) -> Zp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = divrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    monic(a, p)
}

fn pow_poly_mod(base: &Zp, mut e: u64, m: &Zp, p: u64) -> Zp {
    let mut acc: Zp = vec![1];
    let mut b = divrem(base, m, p).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = divrem(&mul_poly(&acc, &b, p), m, p).1;
        }
        b = divrem(&mul_poly(&b, &b, p), m, p).1;
        e >>= 1;
    }
    acc
}

fn derivative_zp(a: &Zp, p: u64) -> Zp {
    let mut out: Zp = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
        .collect();
    trim(&mut out);
    out
}

/// Roots of a monic product of distinct linear factors (Cantor–Zassenhaus
/// with the shifts `x + 1, x + 2, …`).
fn split_linear(h: &Zp, p: u64, shift: &mut u64, out: &mut Vec<u64>) {
    match h.len() {
        0 | 1 => {}
        2 => out.push((p - h[0]) % p),
        _ => loop {
            *shift += 1;
            let t = pow_poly_mod(&vec![*shift % p, 1], (p - 1) / 2, h, p);
            let g = gcd_poly(&sub_poly(&t, &vec![1], p), h, p);
            if g.len() > 1 && g.len() < h.len() {
                let (cofactor, _) = divrem(h, &g, p);
                split_linear(&g, p, shift, out);
                split_linear(&monic(cofactor, p), p, shift, out);
                return;
            }
        },
    }
}

/// Roots in `F_p` of a square-free polynomial mod `p`.
fn roots_mod(f: &Zp, p: u64) -> Vec<u64> {
    let f = monic(f.clone(), p);
    let xp = pow_poly_mod(&vec![0, 1], p, &f, p);
    let h = gcd_poly(&sub_poly(&xp, &vec![0, 1], p), &f, p);
    let mut out = Vec::new();
    split_linear(&h, p, &mut 0, &mut out);
    out.sort_unstable();
    out
}

fn eval_int(f: &[BigInt], x: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn derivative_int(f: &[BigInt]) -> Vec<BigInt> {
    f.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

/// `p/q` with `|p| ≤ n` and `0 < q ≤ d` congruent to `r` mod `m`, if any.
fn rational_reconstruct(r: &BigInt, m: &BigInt, n: &BigInt, d: &BigInt) -> Option<BigRational> {
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while &r1 > n {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        (r0, r1, s0, s1) = (r1, r2, s1, s2);
    }
    if s1.is_zero() || &s1.abs() > d || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, s1))
}

/// Primitive integer polynomial proportional to `f` (ascending).
fn primitive(f: &[BigRational]) -> Vec<BigInt> {
    let den = f.iter().fold(BigInt::one(), |acc, c| arith::lcm(&acc, c.denom()));
    let ints: Vec<BigInt> = f.iter().map(|c| (c * &den).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if ints.last().is_some_and(|c| c.is_negative()) { -1 } else { 1 };
    ints.iter().map(|c| c / &content * sign).collect()
}

fn trim_q(a: &mut Vec<BigRational>) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn rem_q(a: &[BigRational], m: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let lead = m.last().expect("nonzero divisor").clone();
    while r.len() >= m.len() && !r.is_empty() {
        let shift = r.len() - m.len();
        let c = r.last().unwrap() / &lead;
        for (i, y) in m.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &c * y;
        }
        r.pop();
        trim_q(&mut r);
    }
    r
}

fn div_exact_q(a: &[BigRational], m: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let lead = m.last().expect("nonzero divisor").clone();
    let mut q = vec![BigRational::zero(); a.len() + 1 - m.len()];
    while r.len() >= m.len() && !r.is_empty() {
        let shift = r.len() - m.len();
        let c = r.last().unwrap() / &lead;
        for (i, y) in m.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &c * y;
        }
        q[shift] = c;
        r.pop();
    }
    q
}

/// `f / gcd(f, f')` over ℚ.
fn square_free(f: &[BigRational]) -> Vec<BigRational> {
    let df: Vec<BigRational> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    let (mut a, mut b) = (f.to_vec(), df);
    trim_q(&mut b);
    while !b.is_empty() {
        let r = rem_q(&a, &b);
        a = b;
        b = r;
    }
    if a.len() <= 1 {
        return f.to_vec();
    }
    div_exact_q(f, &a)
}

const PRIME_START: u64 = (1 << 31) - 1;

fn reduce(f: &[BigInt], p: u64) -> Zp {
    let bp = BigInt::from(p);
    let mut out: Zp = f
        .iter()
        .map(|c| c.mod_floor(&bp).to_u64().expect("residue fits"))
        .collect();
    trim(&mut out);
    out
}

/// Distinct rational roots of `f` (ascending coefficients, nonzero), sorted.
pub fn rational_roots(f: &[BigRational]) -> Vec<BigRational> {
    let mut f = f.to_vec();
    trim_q(&mut f);
    assert!(!f.is_empty(), "zero polynomial");
    let mut roots = Vec::new();
    let zeros = f.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        roots.push(BigRational::zero());
        f.drain(..zeros);
    }
    if f.len() == 2 {
        roots.push(-&f[0] / &f[1]);
    } else if f.len() > 2 {
        // a square-free reduction mod one prime proves f square-free
        let g = primitive(&f);
        let (g, p) = match squarefree_prime(&g, Some(4)) {
            Some(p) => (g, p),
            None => {
                let g = primitive(&square_free(&f));
                let p = squarefree_prime(&g, None).expect("square-free over Q");
                (g, p)
            }
        };
        roots.extend(nonzero_roots(&g, p));
    }
    roots.sort();
    roots
}

/// First prime below `2^31` not dividing the leading coefficient of `g` with
/// `g mod p` square-free, among at most `tries` such primes.
fn squarefree_prime(g: &[BigInt], tries: Option<usize>) -> Option<u64> {
    let lead = g.last().expect("nonzero polynomial");
    let mut p = PRIME_START;
    let mut tried = 0;
    while p > 2 {
        if arith::is_prime_u64(p) && !(lead % p).is_zero() {
            let gp = reduce(g, p);
            if gcd_poly(&gp, &derivative_zp(&gp, p), p).len() == 1 {
                return Some(p);
            }
            tried += 1;
            if tries.is_some_and(|t| tried >= t) {
                return None;
            }
        }
        p -= 2;
    }
    None
}

fn nonzero_roots(g: &[BigInt], p: u64) -> Vec<BigRational> {
    let n = g.len() - 1;
    if n == 1 {
        return vec![BigRational::new(-&g[0], g[1].clone())];
    }
    let (lead, constant) = (g[n].abs(), g[0].abs());
    let dg = derivative_int(g);
    let modulus_target: BigInt = &constant * &lead * 2;
    let mut out = Vec::new();
    for r in roots_mod(&reduce(g, p), p) {
        let (mut x, mut m) = (BigInt::from(r), BigInt::from(p));
        // quadratic Newton lifting: x stays a simple root mod m
        while m <= modulus_target {
            m = &m * &m;
            let fx = eval_int(g, &x);
            let dfx = eval_int(&dg, &x).mod_floor(&m);
            let inv = dfx.extended_gcd(&m).x;
            x = (&x - fx * inv).mod_floor(&m);
        }
        if let Some(q) = rational_reconstruct(&x, &m, &constant, &lead) {
            let value = g
                .iter()
                .rev()
                .fold(BigRational::zero(), |acc, c| acc * &q + BigRational::from_integer(c.clone()));
            if value.is_zero() {
                out.push(q);
            }
        }
    }
    out
}

/// Reference implementation: rational root theorem over all divisor pairs
/// within a Fujiwara bound. Exponential in the number of prime factors;
/// used as an oracle on small inputs.
pub fn rational_roots_by_divisors(f: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut f = f.to_vec();
    trim_q(&mut f);
    let mut roots = Vec::new();
    let zeros = f.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        roots.push(BigRational::zero());
        f.drain(..zeros);
    }
    if f.len() > 1 {
        let g = primitive(&f);
        let n = g.len() - 1;
        let lead = g[n].abs();
        let mut bound = BigInt::one();
        for k in 1..=n {
            let ratio = Integer::div_ceil(&g[n - k].abs(), &lead);
            let mut b = num_integer::Roots::nth_root(&ratio, k as u32);
            if num_traits::pow(b.clone(), k) < ratio {
                b += 1;
            }
            bound = bound.max(b);
        }
        bound *= 2;
        let bound_q = BigRational::from_integer(bound.clone());
        for q in arith::divisors(&lead)? {
            for p in arith::divisors_up_to(&g[0], Some(&(&bound * &q)))? {
                let cand = BigRational::new(p, q.clone());
                if cand > bound_q {
                    continue;
                }
                for c in [cand.clone(), -cand] {
                    let value = g
                        .iter()
                        .rev()
                        .fold(BigRational::zero(), |acc, k| acc * &c + BigRational::from_integer(k.clone()));
                    if value.is_zero() && !roots.contains(&c) {
                        roots.push(c);
                    }
                }
            }
        }
    }
    roots.sort();
    Some(roots)
}
