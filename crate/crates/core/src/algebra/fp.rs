//! Dense polynomials over a prime field `F_p`, coefficient vectors stored
//! lowest degree first with no trailing zeros (the zero polynomial is empty).

use rand::Rng;

use super::primes::{inv_mod, mul_mod, pow_mod};

/// Arithmetic context for `F_p[x]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

pub type Poly = Vec<u64>;

// Below this modulus products fit in 64 bits and u128 accumulators never overflow.
const LAZY_LIMIT: u64 = 1 << 32;

impl Fp {
    pub fn new(p: u64) -> Self {
        Fp { p }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.p)
    }

    pub fn inv(&self, a: u64) -> u64 {
        inv_mod(a, self.p)
    }

    pub fn trim(mut a: Poly) -> Poly {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn degree(a: &[u64]) -> Option<usize> {
        a.len().checked_sub(1)
    }

    pub fn x(&self) -> Poly {
        if self.p == 1 {
            Vec::new()
        } else {
            vec![0, 1]
        }
    }

    pub fn from_signed(&self, coeffs: &[i64]) -> Poly {
        let p = self.p as i128;
        Self::trim(
            coeffs
                .iter()
                .map(|&c| (c as i128).rem_euclid(p) as u64)
                .collect(),
        )
    }

    pub fn poly_add(&self, a: &[u64], b: &[u64]) -> Poly {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        Self::trim(out)
    }

    pub fn poly_sub(&self, a: &[u64], b: &[u64]) -> Poly {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        Self::trim(out)
    }

    pub fn scale(&self, a: &[u64], c: u64) -> Poly {
        Self::trim(a.iter().map(|&x| self.mul(x, c)).collect())
    }

    pub fn poly_mul(&self, a: &[u64], b: &[u64]) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let p = self.p;
        if p < LAZY_LIMIT {
            let mut acc = vec![0u128; a.len() + b.len() - 1];
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    acc[i + j] += (x * y) as u128;
                }
            }
            Self::trim(acc.into_iter().map(|v| (v % p as u128) as u64).collect())
        } else {
            let mut out = vec![0u64; a.len() + b.len() - 1];
            for (i, &x) in a.iter().enumerate() {
                for (j, &y) in b.iter().enumerate() {
                    out[i + j] = self.add(out[i + j], self.mul(x, y));
                }
            }
            Self::trim(out)
        }
    }

    pub fn monic(&self, a: &[u64]) -> Poly {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.scale(a, self.inv(lc)),
        }
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn divrem(&self, a: &[u64], b: &[u64]) -> (Poly, Poly) {
        assert!(!b.is_empty(), "division by the zero polynomial");
        if a.len() < b.len() {
            return (Vec::new(), a.to_vec());
        }
        let db = b.len() - 1;
        let lc_inv = self.inv(*b.last().unwrap());
        let mut r = a.to_vec();
        let mut q = vec![0u64; a.len() - db];
        for i in (db..a.len()).rev() {
            let c = self.mul(r[i], lc_inv);
            if c == 0 {
                continue;
            }
            q[i - db] = c;
            for j in 0..=db {
                r[i - db + j] = self.sub(r[i - db + j], self.mul(c, b[j]));
            }
        }
        r.truncate(db);
        (Self::trim(q), Self::trim(r))
    }

    /// Remainder modulo a monic `m`.
    pub fn rem(&self, a: &[u64], m: &[u64]) -> Poly {
        debug_assert_eq!(m.last(), Some(&1));
        if a.len() < m.len() {
            return a.to_vec();
        }
        let p = self.p;
        let dm = m.len() - 1;
        if p >= LAZY_LIMIT {
            return self.divrem(a, m).1;
        }
        let neg: Vec<u64> = m[..dm].iter().map(|&c| (p - c) % p).collect();
        let mut acc: Vec<u128> = a.iter().map(|&c| c as u128).collect();
        for i in (dm..a.len()).rev() {
            let c = (acc[i] % p as u128) as u64;
            if c == 0 {
                continue;
            }
            let base = i - dm;
            for (j, &nj) in neg.iter().enumerate() {
                acc[base + j] += (c * nj) as u128;
            }
        }
        acc.truncate(dm);
        Self::trim(acc.into_iter().map(|v| (v % p as u128) as u64).collect())
    }

    pub fn mulmod(&self, a: &[u64], b: &[u64], m: &[u64]) -> Poly {
        self.rem(&self.poly_mul(a, b), m)
    }

    pub fn powmod(&self, a: &[u64], mut e: u128, m: &[u64]) -> Poly {
        let mut base = self.rem(a, m);
        let mut acc = self.rem(&[1], m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(&acc, &base, m);
            }
            e >>= 1;
            if e > 0 {
                base = self.mulmod(&base, &base, m);
            }
        }
        acc
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, a: &[u64], b: &[u64]) -> Poly {
        let mut a = Self::trim(a.to_vec());
        let mut b = Self::trim(b.to_vec());
        while !b.is_empty() {
            let r = self.divrem(&a, &b).1;
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    pub fn eval(&self, a: &[u64], x: u64) -> u64 {
        a.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    fn random_below(&self, deg: usize, rng: &mut impl Rng) -> Poly {
        Self::trim((0..deg).map(|_| rng.gen_range(0..self.p)).collect())
    }

    /// Candidate splitting polynomial for equal-degree factorisation.
    fn splitter(&self, f: &[u64], d: usize, rng: &mut impl Rng) -> Poly {
        let a = self.random_below(f.len() - 1, rng);
        if self.p == 2 {
            // absolute trace F_{2^d} -> F_2
            let mut t = a.clone();
            let mut acc = a;
            for _ in 1..d {
                t = self.mulmod(&t, &t, f);
                acc = self.poly_add(&acc, &t);
            }
            acc
        } else {
            // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p-1)/2)
            let mut t = a.clone();
            let mut norm = a;
            for _ in 1..d {
                t = self.powmod(&t, self.p as u128, f);
                norm = self.mulmod(&norm, &t, f);
            }
            let b = self.powmod(&norm, ((self.p - 1) / 2) as u128, f);
            self.poly_sub(&b, &[1])
        }
    }

    /// One irreducible factor of `f`, which must be monic, squarefree and a
    /// product of irreducibles of degree `d` (Cantor–Zassenhaus splitting,
    /// always descending into the smaller part).
    pub fn equal_degree_factor(&self, f: &[u64], d: usize, rng: &mut impl Rng) -> Poly {
        let mut f = f.to_vec();
        while f.len() - 1 > d {
            let g = self.gcd(&f, &self.splitter(&f, d, rng));
            let dg = g.len().saturating_sub(1);
            if dg == 0 || dg == f.len() - 1 {
                continue;
            }
            let h = self.divrem(&f, &g).0;
            f = if g.len() <= h.len() { g } else { self.monic(&h) };
        }
        f
    }

    /// Complete equal-degree factorisation of `f`.
    pub fn equal_degree_factors(&self, f: &[u64], d: usize, rng: &mut impl Rng) -> Vec<Poly> {
        let mut done = Vec::new();
        let mut todo = vec![self.monic(f)];
        while let Some(f) = todo.pop() {
            if f.len() - 1 <= d {
                done.push(f);
                continue;
            }
            let g = self.gcd(&f, &self.splitter(&f, d, rng));
            let dg = g.len().saturating_sub(1);
            if dg == 0 || dg == f.len() - 1 {
                todo.push(f);
                continue;
            }
            let h = self.monic(&self.divrem(&f, &g).0);
            todo.push(g);
            todo.push(h);
        }
        done.sort();
        done
    }

    /// Distinct roots of `f` in `F_p`, sorted.
    pub fn roots(&self, f: &[u64], rng: &mut impl Rng) -> Vec<u64> {
        let f = self.monic(f);
        if f.len() <= 1 {
            return Vec::new();
        }
        let xp = self.powmod(&self.x(), self.p as u128, &f);
        let g = self.gcd(&f, &self.poly_sub(&xp, &self.x()));
        if g.len() <= 1 {
            return Vec::new();
        }
        let mut roots: Vec<u64> = if self.p == 2 {
            (0..2).filter(|&r| self.eval(&g, r) == 0).collect()
        } else {
            self.equal_degree_factors(&g, 1, rng)
                .into_iter()
                .map(|lin| (self.p - lin[0]) % self.p)
                .collect()
        };
        roots.sort_unstable();
        roots
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self, f: &[u64]) -> bool {
        let Some(d) = Self::degree(f) else {
            return false;
        };
        if d == 0 {
            return false;
        }
        let f = self.monic(f);
        let x = self.x();
        // x^(p^k) by repeated Frobenius
        let frob = |k: usize| {
            let mut t = self.rem(&x, &f);
            for _ in 0..k {
                t = self.powmod(&t, self.p as u128, &f);
            }
            t
        };
        if self.poly_sub(&frob(d), &self.rem(&x, &f)) != Vec::<u64>::new() {
            return false;
        }
        for q in super::primes::prime_divisors(d as u64) {
            let h = self.poly_sub(&frob(d / q as usize), &x);
            if self.gcd(&f, &h).len() != 1 {
                return false;
            }
        }
        true
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn divrem_reconstructs() {
        let f = Fp::new(7);
        let a = vec![3, 1, 4, 1, 5, 6];
        let b = vec![2, 0, 1];
        let (q, r) = f.divrem(&a, &b);
        assert_eq!(f.poly_add(&f.poly_mul(&q, &b), &r), a);
        assert_eq!(f.rem(&a, &b), r);
    }

    #[test]
    fn roots_of_split_polynomial() {
        let f = Fp::new(13);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // (x-2)(x-5)^2(x-11)(x^2+2) ; x^2 + 2 has no roots mod 13? -2 = 11 is a non-residue mod 13
        let mut g = vec![1];
        for r in [2u64, 5, 5, 11] {
            g = f.poly_mul(&g, &[13 - r, 1]);
        }
        g = f.poly_mul(&g, &[2, 0, 1]);
        assert_eq!(f.roots(&g, &mut rng), vec![2, 5, 11]);
    }

    #[test]
    fn irreducibility() {
        let f2 = Fp::new(2);
        assert!(f2.is_irreducible(&[1, 1, 1]));
        assert!(!f2.is_irreducible(&[1, 0, 1]));
        assert!(f2.is_irreducible(&[1, 0, 1, 0, 0, 1])); // x^5 + x^2 + 1
        let f3 = Fp::new(3);
        assert!(f3.is_irreducible(&[1, 0, 1]));
        assert!(!f3.is_irreducible(&[2, 0, 1]));
    }

    #[test]
    fn equal_degree_factorisation_of_x15_minus_1_over_f2() {
        // Phi_15 = x^8 - x^7 + x^5 - x^4 + x^3 - x + 1 splits into two quartics mod 2
        let f2 = Fp::new(2);
        let phi15 = f2.from_signed(&[1, -1, 0, 1, -1, 1, 0, -1, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let facs = f2.equal_degree_factors(&phi15, 4, &mut rng);
        assert_eq!(facs.len(), 2);
        assert!(facs.iter().all(|g| g.len() == 5 && f2.is_irreducible(g)));
        let one = f2.equal_degree_factor(&phi15, 4, &mut rng);
        assert!(facs.contains(&one));
    }
}
