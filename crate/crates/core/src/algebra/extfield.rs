//! Finite fields `F_{p^d} = F_p[y]/(f)` and the reduction of cyclotomic
//! integers modulo a prime ideal above `p`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::cyclotomic::{cyclotomic_polynomial, Cyclotomic};
use super::fp::{Fp, Poly};
use super::primes::{coprime_part, is_prime, multiplicative_order};
use crate::error::{input, Result};

/// Element of an extension field: `d` coordinates over `F_p`.
pub type ExtElem = Vec<u64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtField {
    fp: Fp,
    modulus: Poly,
}

impl ExtField {
    /// `F_p[y]/(f)`; `f` is made monic and must be irreducible.
    pub fn new(p: u64, f: &[u64]) -> Result<ExtField> {
        if !is_prime(p) {
            return input(format!("{p} is not prime"));
        }
        let fp = Fp::new(p);
        let f = fp.monic(&Fp::trim(f.iter().map(|c| c % p).collect()));
        if !fp.is_irreducible(&f) {
            return input(format!("{f:?} is not irreducible over F_{p}"));
        }
        Ok(ExtField { fp, modulus: f })
    }

    pub fn characteristic(&self) -> u64 {
        self.fp.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn size(&self) -> u128 {
        (self.fp.p as u128).pow(self.degree() as u32)
    }

    pub fn zero(&self) -> ExtElem {
        vec![0; self.degree()]
    }

    pub fn from_int(&self, n: u64) -> ExtElem {
        let mut e = self.zero();
        e[0] = n % self.fp.p;
        e
    }

    pub fn from_bigint(&self, n: &BigInt) -> ExtElem {
        let p = BigInt::from(self.fp.p);
        let r = ((n % &p) + &p) % &p;
        self.from_int(r.to_u64().expect("residue below p"))
    }

    /// The class of `y`.
    pub fn generator(&self) -> ExtElem {
        self.pad(self.fp.rem(&[0, 1], &self.modulus))
    }

    fn pad(&self, mut v: Poly) -> ExtElem {
        v.resize(self.degree(), 0);
        v
    }

    pub fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        a.iter().zip(b).map(|(&x, &y)| self.fp.add(x, y)).collect()
    }

    pub fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        a.iter().zip(b).map(|(&x, &y)| self.fp.sub(x, y)).collect()
    }

    pub fn scale(&self, a: &ExtElem, c: u64) -> ExtElem {
        a.iter().map(|&x| self.fp.mul(x, c % self.fp.p)).collect()
    }

    pub fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let prod = self
            .fp
            .poly_mul(&Fp::trim(a.clone()), &Fp::trim(b.clone()));
        self.pad(self.fp.rem(&prod, &self.modulus))
    }

    pub fn pow(&self, a: &ExtElem, e: u128) -> ExtElem {
        self.pad(self.fp.powmod(&Fp::trim(a.clone()), e, &self.modulus))
    }

    pub fn is_zero(&self, a: &ExtElem) -> bool {
        a.iter().all(|&x| x == 0)
    }

    /// Evaluates an integer polynomial at `a`.
    pub fn eval_int_poly(&self, coeffs: &[i64], a: &ExtElem) -> ExtElem {
        let p = self.fp.p as i128;
        coeffs.iter().rev().fold(self.zero(), |acc, &c| {
            let c = (c as i128).rem_euclid(p) as u64;
            self.add(&self.mul(&acc, a), &self.from_int(c))
        })
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: &ExtElem) -> u128 {
        let n = self.size() - 1;
        let one = self.from_int(1);
        let mut ord = n;
        let mut m = n;
        let mut q = 2u128;
        while q * q <= m {
            if m.is_multiple_of(q) {
                while m.is_multiple_of(q) {
                    m /= q;
                }
                while ord.is_multiple_of(q) && self.pow(a, ord / q) == one {
                    ord /= q;
                }
            }
            q += 1;
        }
        if m > 1 && ord.is_multiple_of(m) && self.pow(a, ord / m) == one {
            ord /= m;
        }
        ord
    }
}

/// A ring homomorphism `Z[ζ_m] → F_{p^d}` sending `ζ_m` to an element `ξ`
/// of exact order `m'`, the `p'`-part of `m`.
#[derive(Debug)]
pub struct ResidueEmbedding {
    pub conductor: u64,
    pub p: u64,
    pub field: ExtField,
    pub xi: ExtElem,
    pub xi_order: u64,
    powers: Mutex<HashMap<u64, Arc<Vec<ExtElem>>>>,
}

/// Builds `F_{p^d}` from one irreducible factor of `Φ_{m'}` mod `p`
/// extracted by equal-degree splitting seeded with `seed`.
pub fn residue_field_embedding(m: u64, p: u64, seed: u64) -> Result<ResidueEmbedding> {
    if !is_prime(p) {
        return input(format!("{p} is not prime"));
    }
    if m == 0 {
        return input("conductor must be positive");
    }
    let m_prime = coprime_part(m, p);
    let d = multiplicative_order(p % m_prime.max(1), m_prime) as usize;
    let fp = Fp::new(p);
    let phi = fp.from_signed(&cyclotomic_polynomial(m_prime));
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (p << 32) ^ m);
    let f = fp.equal_degree_factor(&phi, d, &mut rng);
    let field = ExtField::new(p, &f)?;
    let xi = field.generator();
    Ok(ResidueEmbedding {
        conductor: m,
        p,
        field,
        xi,
        xi_order: m_prime,
        powers: Mutex::new(HashMap::new()),
    })
}

impl ResidueEmbedding {
    /// Images of `ζ_n^j` for `j < φ(n)`; `n` must divide the conductor.
    fn power_table(&self, n: u64) -> Arc<Vec<ExtElem>> {
        if let Some(t) = self.powers.lock().unwrap().get(&n) {
            return t.clone();
        }
        assert_eq!(self.conductor % n, 0, "conductor {n} does not divide {}", self.conductor);
        let step = self.field.pow(&self.xi, (self.conductor / n) as u128);
        let len = cyclotomic_polynomial(n).len() - 1;
        let mut table = Vec::with_capacity(len);
        let mut cur = self.field.from_int(1);
        for _ in 0..len {
            table.push(cur.clone());
            cur = self.field.mul(&cur, &step);
        }
        let table = Arc::new(table);
        self.powers.lock().unwrap().insert(n, table.clone());
        table
    }

    /// Image of a cyclotomic integer whose conductor divides the
    /// embedding's conductor.
    pub fn reduce(&self, c: &Cyclotomic) -> ExtElem {
        let table = self.power_table(c.conductor());
        let p = BigInt::from(self.p);
        let mut acc = self.field.zero();
        for (coef, img) in c.coeffs().iter().zip(table.iter()) {
            let r = ((coef % &p) + &p) % &p;
            let r = r.to_u64().expect("residue below p");
            if r != 0 {
                acc = self.field.add(&acc, &self.field.scale(img, r));
            }
        }
        acc
    }
}
