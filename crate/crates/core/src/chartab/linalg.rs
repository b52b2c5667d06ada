//! Dense linear algebra over a prime field, just enough for eigenspace
//! splitting.

use crate::algebra::Fp;

pub(crate) type Matrix = Vec<Vec<u64>>;

/// Row-reduces `rows` in place to reduced echelon form and returns the
/// pivot column of each surviving row; zero rows are dropped.
pub(crate) fn rref(f: &Fp, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(sel) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let factor = row[c];
            for (x, &p) in row.iter_mut().zip(&pivot_row) {
                if p != 0 {
                    *x = f.sub(*x, f.mul(factor, p));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{v : A v = 0}` for a square matrix `a` (row-major).
pub(crate) fn nullspace(f: &Fp, a: &Matrix) -> Vec<Vec<u64>> {
    let n = a.first().map_or(0, Vec::len);
    let mut rows = a.clone();
    let pivots = rref(f, &mut rows);
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (row, &pc) in rows.iter().zip(&pivots) {
            v[pc] = (f.p - row[free]) % f.p;
        }
        basis.push(v);
    }
    basis
}

/// Characteristic polynomial `det(xI - A)`, lowest degree first, via
/// reduction to upper Hessenberg form.
pub(crate) fn charpoly(f: &Fp, a: &Matrix) -> Vec<u64> {
    let n = a.len();
    let mut h = a.clone();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let inv = f.inv(h[m][m - 1]);
        for i in m + 1..n {
            let u = f.mul(h[i][m - 1], inv);
            if u == 0 {
                continue;
            }
            for j in 0..n {
                let t = f.mul(u, h[m][j]);
                h[i][j] = f.sub(h[i][j], t);
            }
            for row in h.iter_mut() {
                let t = f.mul(u, row[i]);
                row[m] = f.add(row[m], t);
            }
        }
    }
    // p[k] is the charpoly of the leading k x k block
    let mut p: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        let mut next = f.poly_mul(&[f.sub(0, h[k - 1][k - 1]), 1], &p[k - 1]);
        let mut t = 1u64;
        for i in 1..k {
            t = f.mul(t, h[k - i][k - i - 1]);
            let c = f.mul(t, h[k - i - 1][k - 1]);
            next = f.poly_sub(&next, &f.scale(&p[k - i - 1], c));
        }
        p.push(next);
    }
    let mut out = p.pop().unwrap();
    out.resize(n + 1, 0);
    out
}

pub(crate) fn mat_vec(f: &Fp, a: &Matrix, v: &[u64]) -> Vec<u64> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0u64, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_of_companion_matrix() {
        let f = Fp::new(101);
        // companion of x^3 - 2x^2 + 5x - 7
        let a = vec![vec![0, 0, 7], vec![1, 0, 101 - 5], vec![0, 1, 2]];
        assert_eq!(charpoly(&f, &a), vec![101 - 7, 5, 101 - 2, 1]);
    }

    #[test]
    #[allow(clippy::identity_op, clippy::erasing_op)]
    fn charpoly_matches_determinant_expansion() {
        let f = Fp::new(13);
        let a = vec![vec![2, 3, 1], vec![4, 0, 5], vec![7, 1, 1]];
        let cp = charpoly(&f, &a);
        // trace and determinant
        assert_eq!(cp[2], (13 - 3) % 13);
        let det = (2 * (0 * 1 - 5 * 1) - 3 * (4 * 1 - 5 * 7) + (4 * 1 - 0 * 7)) as i64;
        assert_eq!(cp[0] as i64, (-det).rem_euclid(13));
    }

    #[test]
    fn nullspace_dimension() {
        let f = Fp::new(7);
        let a = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 0, 0]];
        let ns = nullspace(&f, &a);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(mat_vec(&f, &a, &v).iter().all(|&x| x == 0));
        }
    }
}
