//! Small dense linear algebra over an exact field.

use crate::fields::Field;

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
///
/// Every division is exact, so over a polynomial ring embedded in its
/// fraction field the intermediate entries stay polynomial.
pub fn det_bareiss<F: Field>(ctx: &F::Ctx, mut m: Vec<Vec<F>>) -> F {
    let n = m.len();
    if n == 0 {
        return F::one(ctx);
    }
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut negate = false;
    let mut prev = F::one(ctx);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(piv) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return F::zero(ctx);
            };
            m.swap(k, piv);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].clone() * &m[k][k] - m[i][k].clone() * &m[k][j];
                m[i][j] = t
                    .checked_div(&prev)
                    .expect("Bareiss pivot is nonzero by construction");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Matrix with row `row` and column `col` removed.
pub fn minor<F: Clone>(m: &[Vec<F>], row: usize, col: usize) -> Vec<Vec<F>> {
    m.iter()
        .enumerate()
        .filter(|&(i, _)| i != row)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|&(j, _)| j != col)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

/// Basis of the right null space `{y : A y = 0}`, one vector per free
/// column of the reduced row echelon form, with a 1 in that column.
pub fn nullspace<F: Field>(ctx: &F::Ctx, rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut a: Vec<Vec<F>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x = x.clone() * &inv;
        }
        let pivot = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = x.clone() - y.clone() * &f;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![F::zero(ctx); ncols];
            v[free] = F::one(ctx);
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[i][free].clone();
            }
            v
        })
        .collect()
}
