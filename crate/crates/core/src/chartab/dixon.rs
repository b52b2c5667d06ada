//! Dixon–Schneider: common eigenvectors of the class matrices over `F_ℓ`,
//! followed by exact lifting of each value through its eigenvalue multiset.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::linalg::{charpoly, mat_vec, nullspace, rref, Matrix};
use crate::algebra::primes::{divisors, find_dixon_prime, pow_mod, primitive_nth_root};
use crate::algebra::{EigenvalueMultiset, Fp};
use crate::error::{Error, Result};
use crate::perm::Group;

/// Class multiplication coefficients `a[t][i][j] = #{x ∈ K_i : x⁻¹z ∈ K_j}`
/// for a fixed `z ∈ K_t`.
pub fn class_mult_coeffs(g: &Group) -> Vec<Vec<Vec<u32>>> {
    let cd = g.classes();
    let k = cd.classes.len();
    let inverse: Vec<usize> = (0..g.order()).map(|i| g.inverse_index(i)).collect();
    let tensor: Vec<Vec<Vec<u32>>> = cd
        .classes
        .par_iter()
        .map(|ct| {
            let z = &ct.representative;
            let mut a = vec![vec![0u32; k]; k];
            for (x, &inv) in inverse.iter().enumerate() {
                let i = cd.class_of[x] as usize;
                let y = g.index_of(&(g.element(inv) * z)).expect("closed");
                a[i][cd.class_of[y] as usize] += 1;
            }
            a
        })
        .collect();
    let sizes: Vec<u64> = cd.classes.iter().map(|c| c.size as u64).collect();
    for i in 0..k {
        for j in 0..k {
            let total: u64 = (0..k).map(|t| tensor[t][i][j] as u64 * sizes[t]).sum();
            assert_eq!(total, sizes[i] * sizes[j], "class multiplication count");
        }
    }
    tensor
}

/// One coefficient, computed directly for a chosen representative `z`.
pub fn class_mult_coeff(g: &Group, i: usize, j: usize, t: usize) -> u32 {
    let cd = g.classes();
    let z = &cd.classes[t].representative;
    cd.members[i]
        .iter()
        .filter(|&&x| {
            let y = g.element(g.inverse_index(x as usize)) * z;
            g.class_of_perm(&y) == Some(j)
        })
        .count() as u32
}

pub(crate) struct DixonOutput {
    pub ell: u64,
    pub degrees: Vec<u64>,
    pub modular: Vec<Vec<u64>>,
    pub eigen: Vec<Vec<EigenvalueMultiset>>,
}

const RANDOM_COMBINATION_BUDGET: usize = 40;

pub(crate) fn dixon_schneider(g: &Group, seed: u64) -> Result<DixonOutput> {
    let cd = g.classes();
    let k = cd.classes.len();
    let order = g.order() as u64;
    let exponent = g.exponent();
    let ell = find_dixon_prime(exponent, order)?;
    let f = Fp::new(ell);
    let tensor = class_mult_coeffs(g);
    // (M_i)_{j,t} = a[t][i][j]
    let mats: Vec<Matrix> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| (0..k).map(|t| tensor[t][i][j] as u64 % ell).collect())
                .collect()
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut identity: Vec<Vec<u64>> = (0..k)
        .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
        .collect();
    rref(&f, &mut identity);
    let mut pending = vec![identity];
    let mut lines = Vec::with_capacity(k);
    while let Some(space) = pending.pop() {
        if space.len() == 1 {
            lines.push(space.into_iter().next().unwrap());
            continue;
        }
        let mut split = None;
        for m in mats.iter().skip(1) {
            let parts = split_space(&f, m, &space, &mut rng)?;
            if parts.len() > 1 {
                split = Some(parts);
                break;
            }
        }
        if split.is_none() {
            for _ in 0..RANDOM_COMBINATION_BUDGET {
                let mut comb = vec![vec![0u64; k]; k];
                for m in &mats {
                    let c = rng.gen_range(0..ell);
                    for (cr, mr) in comb.iter_mut().zip(m) {
                        for (x, &y) in cr.iter_mut().zip(mr) {
                            *x = f.add(*x, f.mul(c, y));
                        }
                    }
                }
                let parts = split_space(&f, &comb, &space, &mut rng)?;
                if parts.len() > 1 {
                    split = Some(parts);
                    break;
                }
            }
        }
        match split {
            Some(parts) => pending.extend(parts),
            None => {
                return Err(Error::Internal(format!(
                    "eigenspace splitting stalled on a {}-dimensional space \
                     (order {order}, {k} classes, prime {ell})",
                    space.len()
                )))
            }
        }
    }
    if lines.len() != k {
        return Err(Error::Internal(format!(
            "found {} characters for {k} classes",
            lines.len()
        )));
    }

    let sizes: Vec<u64> = cd.classes.iter().map(|c| c.size as u64 % ell).collect();
    let inv_class = g.power_map(-1);
    let candidates: Vec<u64> = divisors(order)
        .into_iter()
        .filter(|&d| d * d <= order)
        .collect();
    let mut degrees = Vec::with_capacity(k);
    let mut modular = Vec::with_capacity(k);
    for mut w in lines {
        if w[0] == 0 {
            return Err(Error::Internal("central character vanishes at the identity".into()));
        }
        let inv0 = f.inv(w[0]);
        for x in w.iter_mut() {
            *x = f.mul(*x, inv0);
        }
        let mut s = 0u64;
        for t in 0..k {
            s = f.add(s, f.mul(f.mul(w[t], w[inv_class[t]]), f.inv(sizes[t])));
        }
        if s == 0 {
            return Err(Error::Internal("degenerate orthogonality normalisation".into()));
        }
        let d2 = f.mul(order % ell, f.inv(s));
        let found: Vec<u64> = candidates
            .iter()
            .copied()
            .filter(|&d| f.mul(d % ell, d % ell) == d2)
            .collect();
        let [d] = found[..] else {
            return Err(Error::Internal(format!(
                "no unique degree with square {d2} mod {ell}"
            )));
        };
        let values: Vec<u64> = (0..k)
            .map(|t| f.mul(f.mul(w[t], d % ell), f.inv(sizes[t])))
            .collect();
        degrees.push(d);
        modular.push(values);
    }
    let total: u64 = degrees.iter().map(|d| d * d).sum();
    if total != order {
        return Err(Error::Internal(format!(
            "squared degrees sum to {total}, not {order}"
        )));
    }

    let z = primitive_nth_root(ell, exponent)?;
    let powers: Vec<Vec<usize>> = cd
        .classes
        .iter()
        .map(|c| {
            (0..c.order as i64)
                .map(|s| g.class_of_perm(&c.representative.pow(s)).expect("closed"))
                .collect()
        })
        .collect();
    let eigen = modular
        .par_iter()
        .zip(&degrees)
        .map(|(row, &d)| {
            cd.classes
                .iter()
                .enumerate()
                .map(|(t, c)| lift_class(&f, row, d, c.order, &powers[t], z, exponent))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DixonOutput {
        ell,
        degrees,
        modular,
        eigen,
    })
}

/// Splits an invariant subspace (rows in reduced echelon form) into the
/// eigenspaces of `m` restricted to it.
fn split_space(
    f: &Fp,
    m: &Matrix,
    space: &[Vec<u64>],
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Vec<Vec<u64>>>> {
    let r = space.len();
    let pivots: Vec<usize> = space
        .iter()
        .map(|row| row.iter().position(|&x| x != 0).expect("nonzero row"))
        .collect();
    let images: Vec<Vec<u64>> = space.iter().map(|b| mat_vec(f, m, b)).collect();
    // restricted[a][b] = coordinate a of M·basis_b
    let restricted: Matrix = (0..r)
        .map(|a| (0..r).map(|b| images[b][pivots[a]]).collect())
        .collect();
    let roots = f.roots(&charpoly(f, &restricted), rng);
    if roots.len() <= 1 {
        return Ok(vec![space.to_vec()]);
    }
    let mut parts = Vec::with_capacity(roots.len());
    let mut dim = 0;
    for lambda in roots {
        let mut shifted = restricted.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] = f.sub(row[i], lambda);
        }
        let mut vectors: Vec<Vec<u64>> = nullspace(f, &shifted)
            .into_iter()
            .map(|c| {
                let mut v = vec![0u64; space[0].len()];
                for (coef, b) in c.iter().zip(space) {
                    if *coef != 0 {
                        for (x, &y) in v.iter_mut().zip(b) {
                            *x = f.add(*x, f.mul(*coef, y));
                        }
                    }
                }
                v
            })
            .collect();
        rref(f, &mut vectors);
        dim += vectors.len();
        parts.push(vectors);
    }
    if dim != r {
        return Err(Error::Internal(format!(
            "class matrix is not diagonalisable on a {r}-dimensional space"
        )));
    }
    Ok(parts)
}

/// Recovers eigenvalue multiplicities `m_j = n⁻¹ Σ_s χ(gˢ) λ^{-js}` from
/// the values modulo `ℓ` on the powers of one class representative.
fn lift_class(
    f: &Fp,
    row: &[u64],
    degree: u64,
    n: u64,
    power_classes: &[usize],
    z: u64,
    exponent: u64,
) -> Result<EigenvalueMultiset> {
    let lambda = pow_mod(z, exponent / n, f.p);
    let lambda_inv = f.inv(lambda);
    let n_inv = f.inv(n % f.p);
    let mut mult = Vec::with_capacity(n as usize);
    let mut step = 1u64; // λ^{-j}
    for _ in 0..n {
        let mut acc = 0u64;
        let mut w = 1u64; // λ^{-js}
        for &c in power_classes {
            acc = f.add(acc, f.mul(row[c], w));
            w = f.mul(w, step);
        }
        let m = f.mul(acc, n_inv);
        if m > degree {
            return Err(Error::Internal(format!(
                "eigenvalue multiplicity {m} exceeds degree {degree}"
            )));
        }
        mult.push(m);
        step = f.mul(step, lambda_inv);
    }
    let e = EigenvalueMultiset {
        order: n,
        multiplicities: mult,
    };
    if e.degree() != degree {
        return Err(Error::Internal(format!(
            "eigenvalue multiplicities sum to {} instead of {degree}",
            e.degree()
        )));
    }
    Ok(e)
}
