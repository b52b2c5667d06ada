//! Permutations, permutation groups and the constructions built on them.
//!
//! Composition is left-to-right throughout the crate: `a * b` first applies
//! `a`, then `b`, so `(a * b)[x] == b[a[x]]`. Points are 0-based.

use std::fmt;
use std::ops::Mul;

use num_integer::Integer;

use crate::error::{input, Result};

mod group;
mod quotient;
mod semidirect;

pub use group::{ClassData, ConjugacyClass, Group, DEFAULT_CAP};
pub use quotient::{coset_quotient, Quotient};
pub use semidirect::{semidirect_product, AutomorphismSpec, GeneratorImage, SemidirectProduct};

/// A bijection of `{0, .., degree - 1}` stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Box<[u32]>);

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm((0..degree as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return input(format!("image list {images:?} is not a bijection"));
            }
            seen[i] = true;
        }
        Ok(Perm(images.into_boxed_slice()))
    }

    /// Builds a permutation from disjoint-or-not cycles, composed left to right.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Perm> {
        let mut p = Perm::identity(degree);
        for c in cycles {
            let mut seen = Vec::with_capacity(c.len());
            for &x in c {
                if x as usize >= degree {
                    return input(format!("point {x} outside degree {degree}"));
                }
                if seen.contains(&x) {
                    return input(format!("point {x} repeated inside one cycle"));
                }
                seen.push(x);
            }
            let mut images: Vec<u32> = (0..degree as u32).collect();
            for (i, &x) in c.iter().enumerate() {
                images[x as usize] = c[(i + 1) % c.len()];
            }
            p = &p * &Perm(images.into_boxed_slice());
        }
        Ok(p)
    }

    /// Parses cycle notation such as `(0 1 2)(3 4)`; `()` is the identity.
    pub fn parse_cycles(degree: usize, s: &str) -> Result<Perm> {
        let mut cycles = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return input(format!("expected '(' in cycle string {s:?}"));
            };
            let Some(end) = body.find(')') else {
                return input(format!("unclosed cycle in {s:?}"));
            };
            let inner = &body[..end];
            let mut cyc = Vec::new();
            for tok in inner.split(|c: char| c == ',' || c.is_whitespace()) {
                if tok.is_empty() {
                    continue;
                }
                match tok.parse::<u32>() {
                    Ok(v) => cyc.push(v),
                    Err(_) => return input(format!("bad point {tok:?} in cycle string {s:?}")),
                }
            }
            if !cyc.is_empty() {
                cycles.push(cyc);
            }
            rest = body[end + 1..].trim_start();
        }
        Perm::from_cycles(degree, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.0[x as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv.into_boxed_slice())
    }

    /// Composition with a degree check; `self` acts first.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return input(format!(
                "degree mismatch: {} vs {}",
                self.degree(),
                other.degree()
            ));
        }
        Ok(self * other)
    }

    /// `self^-1 * other * self`, i.e. `other` conjugated by `self`.
    pub fn conjugate(&self, other: &Perm) -> Perm {
        // x -> self^-1 -> other -> self
        let mut out = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x as usize] = self.0[other.0[i] as usize];
        }
        Perm(out.into_boxed_slice())
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start as u32];
            seen[start] = true;
            let mut x = self.0[start] as usize;
            while x != start {
                seen[x] = true;
                cyc.push(x as u32);
                x = self.0[x] as usize;
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    /// `self^t` for any integer `t`, computed cycle by cycle.
    pub fn pow(&self, t: i64) -> Perm {
        let mut out: Vec<u32> = (0..self.0.len() as u32).collect();
        for cyc in self.cycles() {
            let len = cyc.len() as i64;
            let shift = t.rem_euclid(len) as usize;
            for (i, &x) in cyc.iter().enumerate() {
                out[x as usize] = cyc[(i + shift) % cyc.len()];
            }
        }
        Perm(out.into_boxed_slice())
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        self.0
            .iter()
            .zip(other.0.iter())
            .all(|(&a, &b)| other.0[a as usize] == self.0[b as usize])
    }
}

impl Mul for &Perm {
    type Output = Perm;

    #[inline]
    fn mul(self, rhs: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), rhs.degree());
        Perm(self.0.iter().map(|&x| rhs.0[x as usize]).collect())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_perm(n: usize) -> impl Strategy<Value = Perm> {
        Just((0..n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Perm::from_images(v).unwrap())
    }

    #[test]
    fn three_cycle_cubes_to_identity() {
        let p = Perm::parse_cycles(3, "(0 1 2)").unwrap();
        assert!((&(&p * &p) * &p).is_identity());
        assert_eq!(p.order(), 3);
    }

    #[test]
    fn transpositions_do_not_commute() {
        let p = Perm::parse_cycles(3, "(0 1)").unwrap();
        let q = Perm::parse_cycles(3, "(1 2)").unwrap();
        // left to right: 0 -p-> 1 -q-> 2
        assert_eq!((&p * &q).images(), &[2, 0, 1]);
        assert_eq!((&q * &p).images(), &[1, 2, 0]);
        assert_ne!(&p * &q, &q * &p);
        assert!(!p.commutes_with(&q));
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        let p = Perm::identity(3);
        let q = Perm::identity(4);
        assert!(p.compose(&q).is_err());
    }

    #[test]
    fn malformed_cycles_are_rejected() {
        assert!(Perm::parse_cycles(3, "(0 1").is_err());
        assert!(Perm::parse_cycles(3, "(0 3)").is_err());
        assert!(Perm::parse_cycles(3, "(0 0)").is_err());
        assert!(Perm::parse_cycles(3, "0 1").is_err());
        assert!(Perm::parse_cycles(3, "(0 x)").is_err());
        assert!(Perm::parse_cycles(3, "()").unwrap().is_identity());
    }

    #[test]
    fn display_round_trips() {
        let p = Perm::parse_cycles(6, "(0 4 2)(3 5)").unwrap();
        assert_eq!(p.to_string(), "(0 4 2)(3 5)");
        assert_eq!(Perm::parse_cycles(6, &p.to_string()).unwrap(), p);
    }

    proptest! {
        #[test]
        fn identity_is_neutral(p in arb_perm(5)) {
            let e = Perm::identity(5);
            prop_assert_eq!(&(&e * &p), &p);
            prop_assert_eq!(&(&p * &e), &p);
        }

        #[test]
        fn inverse_and_pow_agree(p in arb_perm(7), t in -20i64..20) {
            prop_assert!((&p * &p.inverse()).is_identity());
            let mut q = Perm::identity(7);
            let base = if t >= 0 { p.clone() } else { p.inverse() };
            for _ in 0..t.unsigned_abs() {
                q = &q * &base;
            }
            prop_assert_eq!(p.pow(t), q);
        }

        #[test]
        fn conjugate_matches_products(a in arb_perm(6), b in arb_perm(6)) {
            let c = &(&a.inverse() * &b) * &a;
            prop_assert_eq!(a.conjugate(&b), c);
        }
    }
}
