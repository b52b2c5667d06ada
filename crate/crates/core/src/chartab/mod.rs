//! Exact character tables and the class-function operations built on them.
//!
//! Class functions are vectors indexed by the class order of their group.
//! The value on a class of element order `n` is kept in `Z[ζ_n]`, so
//! conductors vary from class to class.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::algebra::cyclotomic::reduce_exponent_vector;
use crate::algebra::primes::{prime_divisors, totient};
use crate::algebra::{Cyclotomic, EigenvalueMultiset};
use crate::error::{input, Error, Result};
use crate::perm::Group;

mod dixon;
mod linalg;

pub use dixon::{class_mult_coeff, class_mult_coeffs};

pub type ClassFunction = Vec<Cyclotomic>;

#[derive(Debug)]
pub struct CharacterTable {
    group: Arc<Group>,
    ell: u64,
    degrees: Vec<u64>,
    values: Vec<ClassFunction>,
    eigen: Vec<Vec<EigenvalueMultiset>>,
    modular: Vec<Vec<u64>>,
    power_maps: BTreeMap<i64, Vec<usize>>,
}

/// Computes the character table of `g`; rows come out in canonical order
/// (by degree, trivial character first) whatever the seed.
pub fn character_table(group: Arc<Group>, seed: u64) -> Result<CharacterTable> {
    let out = dixon::dixon_schneider(&group, seed)?;
    let k = out.degrees.len();
    let mut rows: Vec<usize> = (0..k).collect();
    // Descending multiplicity vectors put the trivial character (all mass
    // on the eigenvalue 1) ahead of every other linear character.
    rows.sort_by(|&a, &b| {
        out.degrees[a]
            .cmp(&out.degrees[b])
            .then_with(|| {
                let ka: Vec<&[u64]> = out.eigen[a].iter().map(|e| &e.multiplicities[..]).collect();
                let kb: Vec<&[u64]> = out.eigen[b].iter().map(|e| &e.multiplicities[..]).collect();
                kb.cmp(&ka)
            })
    });
    let degrees: Vec<u64> = rows.iter().map(|&r| out.degrees[r]).collect();
    let eigen: Vec<Vec<EigenvalueMultiset>> = rows.iter().map(|&r| out.eigen[r].clone()).collect();
    let modular = rows.iter().map(|&r| out.modular[r].clone()).collect();
    let values = eigen
        .par_iter()
        .map(|row| row.iter().map(EigenvalueMultiset::to_cyclotomic).collect())
        .collect();
    let mut power_maps = BTreeMap::new();
    power_maps.insert(-1, group.power_map(-1));
    for p in prime_divisors(group.order() as u64) {
        power_maps.insert(p as i64, group.power_map(p as i64));
    }
    Ok(CharacterTable {
        group,
        ell: out.ell,
        degrees,
        values,
        eigen,
        modular,
        power_maps,
    })
}

type TableCache = Mutex<HashMap<[u8; 32], Arc<CharacterTable>>>;

fn cache() -> &'static TableCache {
    static CACHE: OnceLock<TableCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Memoised [`character_table`], keyed by the group's element set. The
/// returned table's class indices agree with those of `group`.
pub fn cached_table(group: &Group, seed: u64) -> Result<Arc<CharacterTable>> {
    let key = group.fingerprint();
    if let Some(t) = cache().lock().unwrap().get(&key) {
        return Ok(t.clone());
    }
    let table = Arc::new(character_table(Arc::new(group.clone()), seed)?);
    Ok(cache()
        .lock()
        .unwrap()
        .entry(key)
        .or_insert(table)
        .clone())
}

/// Every table memoised so far, ordered by group order then fingerprint.
pub fn cached_tables() -> Vec<Arc<CharacterTable>> {
    let guard = cache().lock().unwrap();
    let mut v: Vec<(&[u8; 32], &Arc<CharacterTable>)> = guard.iter().collect();
    v.sort_by_key(|(key, t)| (t.group.order(), **key));
    v.into_iter().map(|(_, t)| t.clone()).collect()
}

impl CharacterTable {
    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    /// Number of irreducible characters (= number of classes).
    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn dixon_prime(&self) -> u64 {
        self.ell
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn degree(&self, chi: usize) -> u64 {
        self.degrees[chi]
    }

    pub fn character(&self, chi: usize) -> &ClassFunction {
        &self.values[chi]
    }

    pub fn value(&self, chi: usize, class: usize) -> &Cyclotomic {
        &self.values[chi][class]
    }

    pub fn eigenvalues(&self, chi: usize, class: usize) -> &EigenvalueMultiset {
        &self.eigen[chi][class]
    }

    /// `χ(g_K)` reduced modulo the Dixon prime.
    pub fn modular_value(&self, chi: usize, class: usize) -> u64 {
        self.modular[chi][class]
    }

    /// Class map of `g ↦ gᵗ` for `t = -1` and each prime divisor of `|G|`.
    pub fn power_map(&self, t: i64) -> Option<&[usize]> {
        self.power_maps.get(&t).map(Vec::as_slice)
    }

    pub fn class_sizes(&self) -> Vec<u64> {
        self.group
            .classes()
            .classes
            .iter()
            .map(|c| c.size as u64)
            .collect()
    }

    pub fn linear_count(&self) -> usize {
        self.degrees.iter().filter(|&&d| d == 1).count()
    }

    pub fn trivial_character(&self) -> ClassFunction {
        constant_function(&self.group, 1)
    }

    pub fn regular_character(&self) -> ClassFunction {
        let mut v = constant_function(&self.group, 0);
        v[0] = Cyclotomic::from_int(1, self.group.order() as u64);
        v
    }

    pub fn inner_product(&self, a: &[Cyclotomic], b: &[Cyclotomic]) -> Result<i64> {
        inner_product(&self.group, a, b)
    }

    /// Multiplicity of each irreducible character in `f`.
    pub fn decompose(&self, f: &[Cyclotomic]) -> Result<Vec<i64>> {
        self.values
            .iter()
            .map(|chi| inner_product(&self.group, f, chi))
            .collect()
    }

    /// `ω_χ(K) = |K|·χ(g_K)/χ(1)`, an algebraic integer.
    pub fn central_character(&self, chi: usize, class: usize) -> Result<Cyclotomic> {
        let size = BigInt::from(self.group.classes().classes[class].size);
        self.values[chi][class]
            .scale(&size)
            .div_exact(&BigInt::from(self.degrees[chi]))
    }

    /// Exact first orthogonality relation for every pair of rows.
    pub fn check_row_orthogonality(&self) -> Result<()> {
        let k = self.len();
        (0..k).into_par_iter().try_for_each(|i| {
            for j in i..k {
                let ip = self.inner_product(&self.values[i], &self.values[j])?;
                if ip != i64::from(i == j) {
                    return Err(Error::Internal(format!(
                        "<chi_{i}, chi_{j}> = {ip}"
                    )));
                }
            }
            Ok(())
        })
    }

    /// Exact second orthogonality: `Σ_χ χ(g_s)·conj(χ(g_t)) = δ_st·|C_G(g_s)|`,
    /// evaluated on eigenvalue multisets in `Z[x]/(x^L - 1)`.
    pub fn check_column_orthogonality(&self) -> Result<()> {
        let cd = self.group.classes();
        let k = self.len();
        let order = self.group.order() as i128;
        (0..k).into_par_iter().try_for_each(|s| {
            for t in s..k {
                let ns = cd.classes[s].order;
                let nt = cd.classes[t].order;
                let l = ns.lcm(&nt);
                let (us, ut) = ((l / ns) as usize, (l / nt) as usize);
                let lu = l as usize;
                let mut acc = vec![0i128; lu];
                for chi in 0..k {
                    let a = &self.eigen[chi][s].multiplicities;
                    let b = &self.eigen[chi][t].multiplicities;
                    for (j, &mj) in a.iter().enumerate() {
                        if mj == 0 {
                            continue;
                        }
                        let ej = j * us;
                        for (i, &mi) in b.iter().enumerate() {
                            if mi == 0 {
                                continue;
                            }
                            let e = (ej + lu - (i * ut) % lu) % lu;
                            acc[e] += mj as i128 * mi as i128;
                        }
                    }
                }
                let reduced = reduce_exponent_vector(l, &acc)
                    .ok_or_else(|| Error::Internal("column sum overflow".into()))?;
                let expect = if s == t {
                    order / cd.classes[s].size as i128
                } else {
                    0
                };
                if reduced[0] != expect || reduced[1..].iter().any(|&c| c != 0) {
                    return Err(Error::Internal(format!(
                        "column orthogonality fails at classes {s}, {t}"
                    )));
                }
            }
            Ok(())
        })
    }

    /// `Σ χ(1)² = |G|`, `χ(1) | |G|`, trivial first row, and values at the
    /// identity equal to the degrees.
    pub fn check_degrees(&self) -> Result<()> {
        let order = self.group.order() as u64;
        let total: u64 = self.degrees.iter().map(|d| d * d).sum();
        if total != order {
            return Err(Error::Internal(format!("Σχ(1)² = {total} ≠ {order}")));
        }
        for (chi, &d) in self.degrees.iter().enumerate() {
            if !order.is_multiple_of(d) {
                return Err(Error::Internal(format!("degree {d} does not divide {order}")));
            }
            if self.values[chi][0].as_integer() != Some(BigInt::from(d)) {
                return Err(Error::Internal(format!("χ_{chi}(1) is not {d}")));
            }
        }
        if self.values[0]
            .iter()
            .any(|v| v.as_integer() != Some(BigInt::one()))
        {
            return Err(Error::Internal("first row is not the trivial character".into()));
        }
        Ok(())
    }

    /// All exact table checks.
    pub fn verify(&self) -> Result<()> {
        self.check_degrees()?;
        self.check_row_orthogonality()?;
        self.check_column_orthogonality()
    }
}

fn constant_function(g: &Group, c: i64) -> ClassFunction {
    g.classes()
        .classes
        .iter()
        .map(|k| Cyclotomic::from_int(k.order, c))
        .collect()
}

/// `⟨a, b⟩ = |G|⁻¹ Σ_K |K|·a(K)·b(K⁻¹)`, required to be a rational integer.
///
/// Each summand is replaced by its average over `Gal(Q(ζ_n)/Q)`. This does
/// not change a sum that is rational, which it is whenever `a` and `b` are
/// generalized characters, and it turns the sum into exact integer
/// arithmetic.
pub fn inner_product(g: &Group, a: &[Cyclotomic], b: &[Cyclotomic]) -> Result<i64> {
    let cd = g.classes();
    let k = cd.classes.len();
    if a.len() != k || b.len() != k {
        return input(format!(
            "class functions of length {} and {} on a group with {k} classes",
            a.len(),
            b.len()
        ));
    }
    let inv = g.power_map(-1);
    let mut terms = Vec::with_capacity(k);
    let mut l = BigInt::one();
    for c in 0..k {
        let x = &a[c];
        let y = &b[inv[c]];
        let m = x.conductor().lcm(&y.conductor());
        let tr = if x.conductor() == y.conductor() {
            Cyclotomic::trace_of_product(x, y)
        } else {
            Cyclotomic::trace_of_product(&x.lift(m), &y.lift(m))
        };
        let phi = BigInt::from(totient(m));
        l = l.lcm(&phi);
        terms.push((BigInt::from(cd.classes[c].size) * tr, phi));
    }
    let total: BigInt = terms.into_iter().map(|(t, phi)| t * (&l / phi)).sum();
    let denom = l * BigInt::from(g.order());
    let (q, r) = total.div_rem(&denom);
    if !r.is_zero() {
        return Err(Error::Internal(format!(
            "inner product {total}/{denom} is not an integer"
        )));
    }
    q.to_i64()
        .ok_or_else(|| Error::Internal("inner product overflows i64".into()))
}

/// Values of `chi` (a class function of `g`) on the classes of `h ≤ g`.
pub fn restrict_character(g: &Group, chi: &[Cyclotomic], h: &Group) -> Result<ClassFunction> {
    if !h.is_subgroup_of(g) {
        return input("restriction target is not a subgroup");
    }
    h.classes()
        .classes
        .iter()
        .map(|c| {
            let k = g
                .class_of_perm(&c.representative)
                .ok_or_else(|| Error::Internal("class fusion failed".into()))?;
            Ok(chi[k].clone())
        })
        .collect()
}

/// `ψ^G(g) = |G|/(|H|·|K_G(g)|) · Σ_{c ⊆ K_G(g)} |c|·ψ(c)`.
pub fn induce_character(h: &Group, psi: &[Cyclotomic], g: &Group) -> Result<ClassFunction> {
    if !h.is_subgroup_of(g) {
        return input("induction source is not a subgroup");
    }
    let gc = g.classes();
    let mut acc = constant_function(g, 0);
    for (c, v) in h.classes().classes.iter().zip(psi) {
        let k = g
            .class_of_perm(&c.representative)
            .ok_or_else(|| Error::Internal("class fusion failed".into()))?;
        acc[k] = &acc[k] + &v.scale(&BigInt::from(c.size));
    }
    let index = BigInt::from(g.order() / h.order());
    acc.into_iter()
        .zip(&gc.classes)
        .map(|(v, k)| v.scale(&index).div_exact(&BigInt::from(k.size)))
        .collect()
}

#[cfg(test)]
mod tests;
