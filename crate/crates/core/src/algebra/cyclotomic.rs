//! Exact arithmetic in the cyclotomic integers `Z[ζ_m] = Z[x]/(Φ_m)`.
//!
//! Elements are stored in the power basis `1, ζ, .., ζ^(φ(m)-1)`, which is
//! an integral basis; an element is divisible by a rational integer `k` in
//! `Z[ζ_m]` exactly when every coordinate is.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::primes::{divisors, mobius, totient};
use crate::error::{internal, Error, Result};

type Cache<T> = OnceLock<Mutex<HashMap<u64, Arc<T>>>>;

fn cached<T>(cache: &'static Cache<T>, key: u64, make: impl FnOnce() -> T) -> Arc<T> {
    let map = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().unwrap().get(&key) {
        return v.clone();
    }
    let v = Arc::new(make());
    map.lock().unwrap().entry(key).or_insert(v).clone()
}

/// `Φ_m` with integer coefficients, lowest degree first, computed by
/// dividing `x^m - 1` by `Φ_d` for every proper divisor `d` of `m`.
pub fn cyclotomic_polynomial(m: u64) -> Arc<Vec<i64>> {
    static CACHE: Cache<Vec<i64>> = OnceLock::new();
    cached(&CACHE, m, || {
        assert!(m >= 1, "conductor must be positive");
        let mut num: Vec<i128> = vec![0; m as usize + 1];
        num[0] = -1;
        num[m as usize] = 1;
        for d in divisors(m) {
            if d == m {
                continue;
            }
            let phi_d = cyclotomic_polynomial(d);
            num = exact_div_monic(&num, &phi_d);
        }
        num.into_iter()
            .map(|c| i64::try_from(c).expect("cyclotomic coefficient fits in i64"))
            .collect()
    })
}

fn exact_div_monic(a: &[i128], b: &[i64]) -> Vec<i128> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![0i128; a.len() - db];
    for i in (db..a.len()).rev() {
        let c = r[i];
        q[i - db] = c;
        if c != 0 {
            for j in 0..=db {
                r[i - db + j] -= c * b[j] as i128;
            }
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0), "inexact cyclotomic division");
    q
}

/// `Tr(ζ_m^e)` for `e = 0..m` (Ramanujan sums).
pub fn ramanujan_sums(m: u64) -> Arc<Vec<i64>> {
    static CACHE: Cache<Vec<i64>> = OnceLock::new();
    cached(&CACHE, m, || {
        let phi = totient(m) as i64;
        (0..m)
            .map(|e| {
                let g = e.gcd(&m);
                let r = m / g;
                mobius(r) * phi / totient(r) as i64
            })
            .collect()
    })
}

/// Reduces an exponent-indexed vector (entry `e` is the coefficient of
/// `ζ_m^e`) to power-basis coordinates; `None` on `i128` overflow.
pub fn reduce_exponent_vector(m: u64, v: &[i128]) -> Option<Vec<i128>> {
    let phi = cyclotomic_polynomial(m);
    let deg = phi.len() - 1;
    let mut w = vec![0i128; (m as usize).max(deg)];
    for (e, &c) in v.iter().enumerate() {
        let slot = e % m as usize;
        w[slot] = w[slot].checked_add(c)?;
    }
    for i in (deg..w.len()).rev() {
        let c = w[i];
        if c == 0 {
            continue;
        }
        for j in 0..deg {
            let t = c.checked_mul(phi[j] as i128)?;
            w[i - deg + j] = w[i - deg + j].checked_sub(t)?;
        }
        w[i] = 0;
    }
    w.truncate(deg);
    Some(w)
}

fn reduce_big(m: u64, mut w: Vec<BigInt>) -> Vec<BigInt> {
    let phi = cyclotomic_polynomial(m);
    let deg = phi.len() - 1;
    if w.len() < deg {
        w.resize(deg, BigInt::zero());
    }
    for i in (deg..w.len()).rev() {
        if w[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut w[i]);
        for j in 0..deg {
            if phi[j] != 0 {
                w[i - deg + j] -= &c * phi[j];
            }
        }
    }
    w.truncate(deg);
    w
}

/// Multiset of eigenvalues `ζ_n^j` of a representing matrix of one element
/// of order `n`: `multiplicities[j]` copies of `ζ_n^j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EigenvalueMultiset {
    pub order: u64,
    pub multiplicities: Vec<u64>,
}

impl EigenvalueMultiset {
    pub fn degree(&self) -> u64 {
        self.multiplicities.iter().sum()
    }

    pub fn to_cyclotomic(&self) -> Cyclotomic {
        let v: Vec<i128> = self.multiplicities.iter().map(|&m| m as i128).collect();
        Cyclotomic::from_exponent_counts(self.order, &v)
    }
}

/// An element of `Z[ζ_m]` in canonical power-basis form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: Vec<BigInt>,
}

impl Cyclotomic {
    pub fn zero(m: u64) -> Self {
        let phi = totient(m) as usize;
        Cyclotomic {
            conductor: m,
            coeffs: vec![BigInt::zero(); phi],
        }
    }

    pub fn from_int(m: u64, n: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[0] = n.into();
        z
    }

    pub fn one(m: u64) -> Self {
        Self::from_int(m, 1)
    }

    /// `ζ_m^j`.
    pub fn zeta_pow(m: u64, j: i64) -> Self {
        let mut v = vec![0i128; m as usize];
        v[j.rem_euclid(m as i64) as usize] = 1;
        Self::from_exponent_counts(m, &v)
    }

    /// `Σ_e v[e] ζ_m^e`.
    pub fn from_exponent_counts(m: u64, v: &[i128]) -> Self {
        let coeffs = match reduce_exponent_vector(m, v) {
            Some(w) => w.into_iter().map(BigInt::from).collect(),
            None => {
                let mut w = vec![BigInt::zero(); m as usize];
                for (e, &c) in v.iter().enumerate() {
                    w[e % m as usize] += c;
                }
                reduce_big(m, w)
            }
        };
        Cyclotomic {
            conductor: m,
            coeffs,
        }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational integer this element equals, if any.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    /// Re-expresses the element in `Z[ζ_target]`; `target` must be a
    /// multiple of the conductor.
    pub fn lift(&self, target: u64) -> Self {
        assert_eq!(target % self.conductor, 0, "lift target must be a multiple");
        if target == self.conductor {
            return self.clone();
        }
        let step = (target / self.conductor) as usize;
        let mut w = vec![BigInt::zero(); target as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            w[j * step] = c.clone();
        }
        Cyclotomic {
            conductor: target,
            coeffs: reduce_big(target, w),
        }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.conductor == b.conductor {
            return (a.clone(), b.clone());
        }
        let l = a.conductor.lcm(&b.conductor);
        (a.lift(l), b.lift(l))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Division by a rational integer that must be exact in `Z[ζ_m]`.
    pub fn div_exact(&self, k: &BigInt) -> Result<Self> {
        if k.is_zero() {
            return internal("division of a cyclotomic integer by zero");
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return Err(Error::Internal(format!(
                    "{self} is not divisible by {k} in Z[ζ_{}]",
                    self.conductor
                )));
            }
            coeffs.push(q);
        }
        Ok(Cyclotomic {
            conductor: self.conductor,
            coeffs,
        })
    }

    /// Galois automorphism `ζ ↦ ζ^t` (`t` coprime to the conductor).
    pub fn galois(&self, t: i64) -> Self {
        let m = self.conductor as i64;
        debug_assert!(m == 1 || t.rem_euclid(m).gcd(&m) == 1);
        let mut w = vec![BigInt::zero(); m as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            w[(j as i64 * t).rem_euclid(m) as usize] += c;
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs: reduce_big(self.conductor, w),
        }
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Absolute trace `Tr_{Q(ζ_m)/Q}`.
    pub fn trace(&self) -> BigInt {
        let r = ramanujan_sums(self.conductor);
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c * r[j])
            .sum()
    }

    /// `Tr(a·b)` without forming the product; both arguments must share a
    /// conductor.
    pub fn trace_of_product(a: &Self, b: &Self) -> BigInt {
        assert_eq!(a.conductor, b.conductor);
        let m = a.conductor as usize;
        let r = ramanujan_sums(a.conductor);
        let small = |v: &[BigInt]| v.iter().map(|c| c.to_i64()).collect::<Option<Vec<i64>>>();
        if let (Some(x), Some(y)) = (small(&a.coeffs), small(&b.coeffs)) {
            let mut acc: i128 = 0;
            let mut ok = true;
            for (i, &xi) in x.iter().enumerate() {
                if xi == 0 {
                    continue;
                }
                let mut row: i128 = 0;
                for (j, &yj) in y.iter().enumerate() {
                    let e = i + j;
                    let e = if e >= m { e - m } else { e };
                    row += yj as i128 * r[e] as i128;
                }
                match (xi as i128).checked_mul(row).and_then(|t| acc.checked_add(t)) {
                    Some(v) => acc = v,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                return BigInt::from(acc);
            }
        }
        let mut acc = BigInt::zero();
        for (i, xi) in a.coeffs.iter().enumerate() {
            for (j, yj) in b.coeffs.iter().enumerate() {
                acc += xi * yj * r[(i + j) % m];
            }
        }
        acc
    }

    /// Numerical value under `ζ_m ↦ exp(2πi/m)`; cross-checks only.
    pub fn to_complex(&self) -> (f64, f64) {
        let m = self.conductor as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (j, c)| {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let t = std::f64::consts::TAU * j as f64 / m;
            (re + c * t.cos(), im + c * t.sin())
        })
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::common(self, rhs);
        Cyclotomic {
            conductor: a.conductor,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::common(self, rhs);
        Cyclotomic {
            conductor: a.conductor,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|x| -x).collect(),
        }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::common(self, rhs);
        let n = a.coeffs.len();
        let mut w = vec![BigInt::zero(); 2 * n - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    w[i + j] += x * y;
                }
            }
        }
        Cyclotomic {
            conductor: a.conductor,
            coeffs: reduce_big(a.conductor, w),
        }
    }
}

/// Renders as an integer combination of roots of unity, e.g. `1+2*E(5)^2`.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.conductor;
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            if j == 0 {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                if j == 1 {
                    write!(f, "E({m})")?;
                } else {
                    write!(f, "E({m})^{j}")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
