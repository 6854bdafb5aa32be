//! Integer helpers: factoring for divisor enumeration, gcd/lcm.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

const TRIAL_LIMIT: u64 = 1 << 16;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Pollard–Brent; `n` odd composite.
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn factor_u64(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    factor_u64(d, out);
    factor_u64(n / d, out);
}

/// Prime factorization with multiplicity, or `None` when the cofactor left
/// after trial division does not fit in 64 bits.
pub fn factorize(n: &BigInt) -> Option<Vec<(BigInt, u32)>> {
    let mut n = n.abs();
    assert!(!n.is_zero());
    let mut primes: Vec<BigInt> = Vec::new();
    let mut p = 2u64;
    while p < TRIAL_LIMIT && n > BigInt::one() {
        if n.to_u64().is_some() {
            break;
        }
        let bp = BigInt::from(p);
        while (&n % &bp).is_zero() {
            primes.push(bp.clone());
            n /= &bp;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let m = n.to_u64()?;
    let mut small = Vec::new();
    let mut m = m;
    for q in [2u64, 3, 5, 7, 11, 13] {
        while m % q == 0 && m > 1 {
            small.push(q);
            m /= q;
        }
    }
    factor_u64(m, &mut small);
    primes.extend(small.into_iter().map(BigInt::from));
    primes.sort();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((r, e)) if *r == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    Some(out)
}

/// Positive divisors of `n ≠ 0`, ascending.
pub fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    divisors_up_to(n, None)
}

const SCAN_LIMIT: u64 = 1 << 20;

/// Positive divisors of `n` not exceeding `limit`, sorted. Small limits are
/// scanned directly, so no factorization is needed.
pub fn divisors_up_to(n: &BigInt, limit: Option<&BigInt>) -> Option<Vec<BigInt>> {
    if let Some(l) = limit.and_then(ToPrimitive::to_u64).filter(|&l| l <= SCAN_LIMIT) {
        let n = n.abs();
        return Some(
            (1..=l)
                .map(BigInt::from)
                .filter(|d| (&n % d).is_zero())
                .collect(),
        );
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factorize(n)? {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = d.clone();
            for _ in 0..=e {
                if limit.is_some_and(|l| &pk > l) {
                    break;
                }
                next.push(pk.clone());
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    Some(divs)
}

pub fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    a.lcm(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisors_small() {
        let d: Vec<i64> = divisors(&BigInt::from(-12))
            .unwrap()
            .iter()
            .map(|x| x.to_i64().unwrap())
            .collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 12]);
        let bounded: Vec<i64> = divisors_up_to(&BigInt::from(360), Some(&BigInt::from(10)))
            .unwrap()
            .iter()
            .map(|x| x.to_i64().unwrap())
            .collect();
        assert_eq!(bounded, vec![1, 2, 3, 4, 5, 6, 8, 9, 10]);
    }

    #[test]
    fn factor_semiprime() {
        let n = BigInt::from(1_000_003u64) * BigInt::from(998_244_353u64);
        let f = factorize(&n).unwrap();
        assert_eq!(
            f,
            vec![(BigInt::from(1_000_003u64), 1), (BigInt::from(998_244_353u64), 1)]
        );
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(998_244_353));
        assert!(!is_prime_u64(561));
    }
}
