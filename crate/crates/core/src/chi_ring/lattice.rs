//! Integer solutions of `A x = b` by column Hermite reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

type Matrix = Vec<Vec<BigInt>>;

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Replace columns (k, j) of `m` by (s·c_k + t·c_j, u·c_k + v·c_j).
fn column_op(m: &mut Matrix, k: usize, j: usize, s: &BigInt, t: &BigInt, u: &BigInt, v: &BigInt) {
    for row in m.iter_mut() {
        let a = row[k].clone();
        let b = row[j].clone();
        row[k] = s * &a + t * &b;
        row[j] = u * &a + v * &b;
    }
}

/// Some integer solution of `a x = b`, or `None` if there is none.
/// `a` is given row-major with `rows × cols` entries.
pub fn solve_integer(a: &[Vec<BigInt>], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut h: Matrix = a.to_vec();
    let mut u = identity(cols);
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut k = 0;
    for r in 0..rows {
        if k == cols {
            break;
        }
        for j in (k + 1)..cols {
            if h[r][j].is_zero() {
                continue;
            }
            if h[r][k].is_zero() {
                let (one, zero) = (BigInt::one(), BigInt::zero());
                column_op(&mut h, k, j, &zero, &one, &one, &zero);
                column_op(&mut u, k, j, &zero, &one, &one, &zero);
                continue;
            }
            let x = h[r][k].clone();
            let y = h[r][j].clone();
            let eg = x.extended_gcd(&y);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let cu = -(&y / &g);
            let cv = &x / &g;
            column_op(&mut h, k, j, &s, &t, &cu, &cv);
            column_op(&mut u, k, j, &s, &t, &cu, &cv);
        }
        if !h[r][k].is_zero() {
            if h[r][k].is_negative() {
                for row in h.iter_mut() {
                    row[k] = -&row[k];
                }
                for row in u.iter_mut() {
                    row[k] = -&row[k];
                }
            }
            pivots.push((r, k));
            k += 1;
        }
    }
    // forward substitution on the echelon form
    let mut y = vec![BigInt::zero(); cols];
    let mut pivot_iter = pivots.iter().peekable();
    for r in 0..rows {
        let partial: BigInt = (0..cols).map(|j| &h[r][j] * &y[j]).sum();
        let resid = &b[r] - partial;
        match pivot_iter.peek() {
            Some(&&(pr, pc)) if pr == r => {
                pivot_iter.next();
                let (q, rem) = resid.div_rem(&h[r][pc]);
                if !rem.is_zero() {
                    return None;
                }
                y[pc] = q;
            }
            _ => {
                if !resid.is_zero() {
                    return None;
                }
            }
        }
    }
    let x: Vec<BigInt> = (0..cols)
        .map(|i| (0..cols).map(|j| &u[i][j] * &y[j]).sum())
        .collect();
    debug_assert!((0..rows).all(|r| (0..cols).map(|j| &a[r][j] * &x[j]).sum::<BigInt>() == b[r]));
    Some(x)
}
