use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Fraction-free determinant of a square integer matrix.
pub fn bareiss_det(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Diagonal of the Smith normal form, `d1 | d2 | ...`, of length `min(rows, cols)`.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a = m.clone();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            // pivot on the smallest nonzero absolute value in the remaining block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero() && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                diag.extend(std::iter::repeat(BigInt::zero()).take(rows.min(cols) - t));
                return finish(diag);
            };
            a.swap(t, pi);
            for r in a.iter_mut() {
                r.swap(t, pj);
            }
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_floor(&p);
                if !q.is_zero() {
                    for j in t..cols {
                        let v = &q * &a[t][j];
                        a[i][j] -= v;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = a[t][j].div_floor(&p);
                if !q.is_zero() {
                    for i in t..rows {
                        let v = &q * &a[i][t];
                        a[i][j] -= v;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if clean {
                diag.push(p.abs());
                break;
            }
        }
    }
    finish(diag)
}

/// Restores the divisibility chain: `diag(a, b) ~ diag(gcd, lcm)`.
fn finish(mut d: Vec<BigInt>) -> Vec<BigInt> {
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (d[i].clone(), d[j].clone());
            if a.is_zero() && !b.is_zero() {
                d.swap(i, j);
            } else if !b.is_zero() {
                d[i] = a.gcd(&b);
                d[j] = a.lcm(&b);
            }
        }
    }
    d
}

/// A basis of the saturated kernel `{x in Z^n : A x = 0}`, one vector per row.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    // rows of [A^T | I], reduced by unimodular row operations
    let mut w: IntMatrix = (0..n)
        .map(|i| {
            let mut r: Vec<BigInt> = (0..m).map(|k| a[k][i].clone()).collect();
            r.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    let mut row = 0;
    for col in 0..m {
        loop {
            let nz: Vec<usize> = (row..n).filter(|&r| !w[r][col].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&r| w[r][col].abs()).expect("nonempty");
            w.swap(row, piv);
            let mut done = true;
            for r in row + 1..n {
                if w[r][col].is_zero() {
                    continue;
                }
                let q = w[r][col].div_floor(&w[row][col]);
                for c in 0..m + n {
                    let v = &q * &w[row][c];
                    w[r][c] -= v;
                }
                done &= w[r][col].is_zero();
            }
            if done {
                row += 1;
                break;
            }
        }
        if row == n {
            break;
        }
    }
    w.into_iter()
        .filter(|r| r[..m].iter().all(Zero::is_zero))
        .map(|r| r[m..].to_vec())
        .collect()
}
