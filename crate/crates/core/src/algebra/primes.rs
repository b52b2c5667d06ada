//! Elementary number theory on machine integers.

use num_integer::Integer;

use crate::error::{input, Error, Result};

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime `p`; `a` must be nonzero mod `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller–Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
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

/// Prime factorisation by trial division, as `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factorize(n) {
        let len = ds.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

pub fn totient(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Multiplicative order of `a` modulo `m` (`gcd(a, m) = 1`).
pub fn multiplicative_order(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    debug_assert_eq!(a.gcd(&m), 1);
    let phi = totient(m);
    let mut ord = phi;
    for (p, _) in factorize(phi) {
        while ord.is_multiple_of(p) && pow_mod(a, ord / p, m) == 1 {
            ord /= p;
        }
    }
    ord
}

/// Smallest prime `l ≡ 1 (mod m)` with `l > 2·sqrt(bound)`.
pub fn find_dixon_prime(m: u64, bound: u64) -> Result<u64> {
    if m == 0 {
        return input("exponent must be positive");
    }
    const LIMIT: u64 = 1 << 62;
    let mut l = 1u64;
    loop {
        l = match l.checked_add(m) {
            Some(v) if v < LIMIT => v,
            _ => {
                return Err(Error::Resource(format!(
                    "no Dixon prime below 2^62 for exponent {m}"
                )))
            }
        };
        if (l as u128) * (l as u128) > 4 * bound as u128 && is_prime(l) {
            return Ok(l);
        }
    }
}

/// Smallest primitive root modulo the prime `p`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let fs = prime_divisors(p - 1);
    (2..p)
        .find(|&g| fs.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("primes have primitive roots")
}

/// An element of exact multiplicative order `n` in `F_p`.
pub fn primitive_nth_root(p: u64, n: u64) -> Result<u64> {
    if n == 0 || !(p - 1).is_multiple_of(n) {
        return input(format!("{n} does not divide {p} - 1"));
    }
    Ok(pow_mod(primitive_root(p), (p - 1) / n, p))
}

/// Largest divisor of `n` built only from primes outside `p`.
pub fn coprime_part(mut n: u64, p: u64) -> u64 {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_matches_sieve() {
        let n = 5000;
        let mut sieve = vec![true; n];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..n {
            if sieve[i] {
                for j in (i * i..n).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for (i, &s) in sieve.iter().enumerate() {
            assert_eq!(is_prime(i as u64), s, "{i}");
        }
        assert!(is_prime((1u64 << 61) - 1));
        assert!(!is_prime(3215031751));
    }

    #[test]
    fn dixon_primes() {
        assert_eq!(find_dixon_prime(6, 6).unwrap(), 7);
        assert_eq!(find_dixon_prime(1, 1).unwrap(), 3);
        assert_eq!(find_dixon_prime(4, 8).unwrap(), 13);
    }

    #[test]
    fn nth_roots() {
        assert_eq!(primitive_nth_root(7, 1).unwrap(), 1);
        let r = primitive_nth_root(7, 3).unwrap();
        assert!(r == 2 || r == 4);
        assert_eq!(pow_mod(r, 3, 7), 1);
        let r = primitive_nth_root(7, 6).unwrap();
        assert!(r == 3 || r == 5);
        assert!(primitive_nth_root(7, 4).is_err());
    }

    #[test]
    fn arithmetic_functions() {
        assert_eq!(totient(10230), 2400);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(multiplicative_order(2, 3), 2);
        assert_eq!(multiplicative_order(2, 5115), 20);
        assert_eq!(factorize(163680), vec![(2, 5), (3, 1), (5, 1), (11, 1), (31, 1)]);
    }
}
