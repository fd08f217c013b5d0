//! Sylvester resultants and the extended resultant `U*P + V*Q = Res(P, Q)`.
//!
//! The cofactors are read off the adjugate of the Sylvester matrix, so they
//! are polynomial expressions in the input coefficients and the returned
//! scalar is the resultant itself, not a multiple of it.

use super::{ext_gcd, UPoly};
use crate::error::{Error, Result};
use crate::fields::Field;
use crate::linalg::{det_bareiss, minor};

/// Cofactors and resultant. When the resultant vanishes, `u` and `v` are the
/// Bezout cofactors of the monic gcd instead.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtResultant<F: Field> {
    pub u: UPoly<F>,
    pub v: UPoly<F>,
    pub resultant: F,
}

/// Sylvester matrix of `p` (degree m) and `q` (degree n): n shifted rows of
/// `p` then m shifted rows of `q`, columns from `x^{m+n-1}` down to `x^0`.
pub fn sylvester_matrix<F: Field>(p: &UPoly<F>, q: &UPoly<F>) -> Result<Vec<Vec<F>>> {
    let m = p.degree().ok_or(Error::DivisionByZero)?;
    let n = q.degree().ok_or(Error::DivisionByZero)?;
    let size = m + n;
    let ctx = p.ctx();
    let mut rows = Vec::with_capacity(size);
    for (poly, deg, copies) in [(p, m, n), (q, n, m)] {
        for i in 0..copies {
            let mut row = vec![F::zero(ctx); size];
            for k in 0..=deg {
                row[i + deg - k] = poly.coeff(k);
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

pub fn resultant<F: Field>(p: &UPoly<F>, q: &UPoly<F>) -> Result<F> {
    let s = sylvester_matrix(p, q)?;
    Ok(det_bareiss(p.ctx(), s))
}

pub fn ext_resultant<F: Field>(p: &UPoly<F>, q: &UPoly<F>) -> Result<ExtResultant<F>> {
    if p.ctx() != q.ctx() {
        return Err(Error::FieldMismatch);
    }
    let ctx = p.ctx();
    let m = p.degree().ok_or(Error::DivisionByZero)?;
    let n = q.degree().ok_or(Error::DivisionByZero)?;
    if m == 0 && n == 0 {
        return Err(Error::pre("extended resultant needs a nonconstant operand"));
    }
    let syl = sylvester_matrix(p, q)?;
    let resultant = det_bareiss(ctx, syl.clone());
    if resultant.is_zero() {
        let (_, u, v) = ext_gcd(p, q)?;
        return Ok(ExtResultant { u, v, resultant });
    }
    // y * Syl = (0, .., 0, Res) has solution y_j = cofactor (j, last).
    let size = m + n;
    let last = size - 1;
    let cofactor = |j: usize| {
        let d = det_bareiss(ctx, minor(&syl, j, last));
        if (j + last) % 2 == 1 {
            -d
        } else {
            d
        }
    };
    let y: Vec<F> = (0..size).map(cofactor).collect();
    // first n entries: U from x^{n-1} down; then V from x^{m-1} down
    let u = UPoly::new(ctx, y[..n].iter().rev().cloned().collect());
    let v = UPoly::new(ctx, y[n..].iter().rev().cloned().collect());
    Ok(ExtResultant { u, v, resultant })
}
