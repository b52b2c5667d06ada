//! Closed-form group families.

use crate::algebra::primes::factorize;
use crate::algebra::{ExtElem, ExtField};
use crate::error::{input, Error, Result};
use crate::perm::{Group, Perm};

/// Largest field size accepted by the projective-line builders.
pub const MAX_FIELD: u64 = 64;

pub fn cyclic(n: usize, cap: usize) -> Result<Group> {
    if n == 0 {
        return input("cyclic group needs n >= 1");
    }
    let gens = if n == 1 {
        Vec::new()
    } else {
        vec![cycle_perm(n, 0..n as u32)]
    };
    checked(Group::generate(n, gens, cap)?, n as u64, "cyclic")
}

/// Dihedral group of order `2n` acting on the `n`-gon.
pub fn dihedral(n: usize, cap: usize) -> Result<Group> {
    if n < 3 {
        return input("dihedral group needs n >= 3");
    }
    let rot = cycle_perm(n, 0..n as u32);
    let refl = Perm::from_images((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect())?;
    checked(Group::generate(n, vec![rot, refl], cap)?, 2 * n as u64, "dihedral")
}

pub fn symmetric(n: usize, cap: usize) -> Result<Group> {
    if n == 0 {
        return input("symmetric group needs n >= 1");
    }
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(cycle_perm(n, [0, 1]));
    }
    if n >= 3 {
        gens.push(cycle_perm(n, 0..n as u32));
    }
    checked(Group::generate(n, gens, cap)?, factorial(n), "symmetric")
}

pub fn alternating(n: usize, cap: usize) -> Result<Group> {
    if n < 3 {
        return input("alternating group needs n >= 3");
    }
    let long = if n % 2 == 1 {
        cycle_perm(n, 0..n as u32)
    } else {
        cycle_perm(n, 1..n as u32)
    };
    let gens = vec![cycle_perm(n, [0, 1, 2]), long];
    checked(Group::generate(n, gens, cap)?, factorial(n) / 2, "alternating")
}

/// `PSL(2, q)` on the projective line `F_q ∪ {∞}`, with `∞` as point `q`.
pub fn psl2(q: u64, cap: usize) -> Result<Group> {
    psl2_gamma(q, 1, cap)
}

/// `PSL(2, q)` extended by the field automorphism of order `e`
/// (`x ↦ x^(p^(k/e))` for `q = p^k`).
pub fn psl2_gamma(q: u64, e: u32, cap: usize) -> Result<Group> {
    let field = TableField::new(q)?;
    if e == 0 || field.k % e != 0 {
        return input(format!("field automorphism order {e} does not divide {}", field.k));
    }
    let one = 1;
    let w = field.primitive;
    // x ↦ x + 1, x ↦ w²x, x ↦ -1/x all have determinant one
    let neg_one = field.neg(one);
    let mut gens = vec![
        field.mobius([one, one, 0, one])?,
        field.mobius([field.mul(w, w), 0, 0, one])?,
        field.mobius([0, neg_one, one, 0])?,
    ];
    if e > 1 {
        let power = field.p.pow(field.k / e);
        let mut images: Vec<u32> = (0..q).map(|x| field.pow(x as usize, power) as u32).collect();
        images.push(q as u32);
        gens.push(Perm::from_images(images)?);
    }
    let psl_order = q * (q * q - 1) / if q % 2 == 1 { 2 } else { 1 };
    checked(
        Group::generate(q as usize + 1, gens, cap)?,
        psl_order * e as u64,
        "projective",
    )
}

fn checked(g: Group, expected: u64, family: &str) -> Result<Group> {
    if g.order() as u64 != expected {
        return Err(Error::Internal(format!(
            "{family} builder produced order {} instead of {expected}",
            g.order()
        )));
    }
    Ok(g)
}

fn cycle_perm(n: usize, cycle: impl IntoIterator<Item = u32>) -> Perm {
    Perm::from_cycles(n, &[cycle.into_iter().collect()]).expect("valid cycle")
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// `F_q` with full addition and multiplication tables; elements are the
/// base-`p` digit encodings of polynomials over `F_p`.
struct TableField {
    q: usize,
    p: u64,
    k: u32,
    add: Vec<usize>,
    mul: Vec<usize>,
    primitive: usize,
}

impl TableField {
    fn new(q: u64) -> Result<TableField> {
        let f = factorize(q);
        if !(2..=MAX_FIELD).contains(&q) || f.len() != 1 {
            return input(format!("q = {q} is not a prime power in 2..={MAX_FIELD}"));
        }
        let (p, k) = f[0];
        let field = irreducible_field(p, k as usize)?;
        let q = q as usize;
        let encode = |e: &ExtElem| e.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize);
        let decode = |mut x: usize| -> ExtElem {
            (0..k)
                .map(|_| {
                    let c = (x % p as usize) as u64;
                    x /= p as usize;
                    c
                })
                .collect()
        };
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = encode(&field.add(&decode(a), &decode(b)));
                mul[a * q + b] = encode(&field.mul(&decode(a), &decode(b)));
            }
        }
        let mut t = TableField {
            q,
            p,
            k,
            add,
            mul,
            primitive: 0,
        };
        t.primitive = (2..q)
            .chain(1..2)
            .find(|&x| t.order(x) == q - 1)
            .expect("multiplicative group is cyclic");
        Ok(t)
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b]
    }

    fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b]
    }

    fn neg(&self, a: usize) -> usize {
        (0..self.q).find(|&b| self.add(a, b) == 0).unwrap()
    }

    fn inv(&self, a: usize) -> usize {
        (1..self.q).find(|&b| self.mul(a, b) == 1).unwrap()
    }

    fn pow(&self, a: usize, e: u64) -> usize {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    fn order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
            if n > self.q {
                return 0;
            }
        }
        n
    }

    /// `x ↦ (ax + b)/(cx + d)` on `F_q ∪ {∞}`.
    fn mobius(&self, [a, b, c, d]: [usize; 4]) -> Result<Perm> {
        let inf = self.q;
        let images = (0..=self.q)
            .map(|x| {
                let (num, den) = if x == inf {
                    (a, c)
                } else {
                    (self.add(self.mul(a, x), b), self.add(self.mul(c, x), d))
                };
                if den == 0 {
                    inf as u32
                } else {
                    self.mul(num, self.inv(den)) as u32
                }
            })
            .collect();
        Perm::from_images(images)
    }
}

/// `F_p[y]/(f)` for the first irreducible monic `f` of degree `k` in
/// base-`p` counting order.
fn irreducible_field(p: u64, k: usize) -> Result<ExtField> {
    let total = p.pow(k as u32);
    for code in 0..total {
        let mut f: Vec<u64> = (0..k)
            .scan(code, |rest, _| {
                let c = *rest % p;
                *rest /= p;
                Some(c)
            })
            .collect();
        f.push(1);
        if let Ok(field) = ExtField::new(p, &f) {
            return Ok(field);
        }
    }
    Err(Error::Internal(format!("no irreducible polynomial of degree {k} over F_{p}")))
}
