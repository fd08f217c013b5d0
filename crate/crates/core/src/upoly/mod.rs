//! Dense univariate polynomials over an exact field.
//!
//! Coefficients are stored in ascending order with no trailing zeros, so the
//! zero polynomial is the empty vector and has no degree.

mod resultant;

pub use resultant::{ext_resultant, resultant, sylvester_matrix, ExtResultant};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::fields::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct UPoly<F: Field> {
    coeffs: Vec<F>,
    ctx: F::Ctx,
}

impl<F: Field> UPoly<F> {
    pub fn new(ctx: &F::Ctx, coeffs: Vec<F>) -> Self {
        let mut p = UPoly {
            coeffs,
            ctx: ctx.clone(),
        };
        p.trim();
        p
    }

    pub fn from_i64s(ctx: &F::Ctx, coeffs: &[i64]) -> Self {
        Self::new(ctx, coeffs.iter().map(|&c| F::from_i64(ctx, c)).collect())
    }

    pub fn zero(ctx: &F::Ctx) -> Self {
        UPoly {
            coeffs: Vec::new(),
            ctx: ctx.clone(),
        }
    }

    pub fn one(ctx: &F::Ctx) -> Self {
        Self::constant(F::one(ctx))
    }

    pub fn constant(c: F) -> Self {
        let ctx = c.context();
        Self::new(&ctx, vec![c])
    }

    /// The main variable `x`.
    pub fn x(ctx: &F::Ctx) -> Self {
        Self::monomial(F::one(ctx), 1)
    }

    /// `c * x^k`.
    pub fn monomial(c: F, k: usize) -> Self {
        let ctx = c.context();
        let mut coeffs = vec![F::zero(&ctx); k];
        coeffs.push(c);
        Self::new(&ctx, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> F {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| F::zero(&self.ctx))
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(
            &self.ctx,
            self.coeffs.iter().map(|a| a.clone() * c).collect(),
        )
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![F::zero(&self.ctx); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UPoly {
            coeffs,
            ctx: self.ctx.clone(),
        }
    }

    pub fn monic(&self) -> Result<Self> {
        let lc = self.leading().ok_or(Error::DivisionByZero)?;
        let inv = lc.inv().ok_or(Error::DivisionByZero)?;
        Ok(self.scale(&inv))
    }

    pub fn eval(&self, at: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(&self.ctx), |acc, c| acc * at + c)
    }

    /// Derivative with respect to the main variable `x`.
    pub fn derivative_x(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * F::from_i64(&self.ctx, i as i64))
            .collect();
        Self::new(&self.ctx, coeffs)
    }

    pub fn try_map_coeffs<G: Field>(
        &self,
        ctx: &G::Ctx,
        mut f: impl FnMut(&F) -> Result<G>,
    ) -> Result<UPoly<G>> {
        let coeffs = self.coeffs.iter().map(&mut f).collect::<Result<Vec<_>>>()?;
        Ok(UPoly::new(ctx, coeffs))
    }

    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = divisor.coeffs[dd].inv().ok_or(Error::DivisionByZero)?;
        let Some(nd) = self.degree().filter(|&n| n >= dd) else {
            return Ok((Self::zero(&self.ctx), self.clone()));
        };
        let mut rem = self.coeffs.clone();
        let mut quot = vec![F::zero(&self.ctx); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = rem[k + dd].clone() * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(&self.ctx, quot), Self::new(&self.ctx, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.divrem(divisor)?.1)
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Result<Self> {
        (self * other).rem(modulus)
    }

    /// `self^e mod modulus` by square-and-multiply, reducing after every step.
    pub fn pow_mod(&self, mut e: u64, modulus: &Self) -> Result<Self> {
        let mut base = self.rem(modulus)?;
        let mut acc = Self::one(&self.ctx).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, modulus)?;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(&self.ctx), |acc, _| &acc * self)
    }

    /// Substitutes a polynomial for `x`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(&self.ctx), |acc, c| {
                &(&acc * inner) + &Self::constant(c.clone())
            })
    }
}

/// `x^e mod modulus`.
pub fn x_pow_mod<F: Field>(e: u64, modulus: &UPoly<F>) -> Result<UPoly<F>> {
    if modulus.degree().is_none_or(|d| d == 0) {
        return Err(Error::pre("modulus must have degree at least 1"));
    }
    UPoly::x(modulus.ctx()).pow_mod(e, modulus)
}

/// Monic greatest common divisor.
pub fn gcd<F: Field>(a: &UPoly<F>, b: &UPoly<F>) -> Result<UPoly<F>> {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    while !r1.is_zero() {
        let r = r0.rem(&r1)?;
        r0 = r1;
        r1 = r;
    }
    if r0.is_zero() {
        return Err(Error::pre("gcd of two zero polynomials"));
    }
    r0.monic()
}

/// Returns `(g, s, t)` with `s*a + t*b = g` and `g` monic.
pub fn ext_gcd<F: Field>(a: &UPoly<F>, b: &UPoly<F>) -> Result<(UPoly<F>, UPoly<F>, UPoly<F>)> {
    let ctx = a.ctx().clone();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (UPoly::one(&ctx), UPoly::zero(&ctx));
    let (mut t0, mut t1) = (UPoly::zero(&ctx), UPoly::one(&ctx));
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1)?;
        let s = &s0 - &(&q * &s1);
        let t = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let lc = r0
        .leading()
        .ok_or_else(|| Error::pre("gcd of two zero polynomials"))?
        .inv()
        .ok_or(Error::DivisionByZero)?;
    Ok((r0.scale(&lc), s0.scale(&lc), t0.scale(&lc)))
}

impl<F: Field> UPoly<F> {
    /// Canonical text form in the variable `var`, e.g. `x^5+x^2+7*x+9` or
    /// `x^2+(a)*x+(b)`. Coefficients that do not print as a bare natural
    /// number are parenthesized.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !out.is_empty() {
                out.push('+');
            }
            let text = c.to_string();
            let atom = if text.bytes().all(|b| b.is_ascii_digit()) {
                text
            } else {
                format!("({text})")
            };
            match (k, c.is_one()) {
                (0, _) => out.push_str(&atom),
                (_, true) => {}
                _ => {
                    out.push_str(&atom);
                    out.push('*');
                }
            }
            match k {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{k}")),
            }
        }
        out
    }
}

impl<F: Field> fmt::Display for UPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}

impl<F: Field> Add for &UPoly<F> {
    type Output = UPoly<F>;
    fn add(self, rhs: &UPoly<F>) -> UPoly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + &rhs.coeff(i)).collect();
        UPoly::new(&self.ctx, coeffs)
    }
}

impl<F: Field> Sub for &UPoly<F> {
    type Output = UPoly<F>;
    fn sub(self, rhs: &UPoly<F>) -> UPoly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - &rhs.coeff(i)).collect();
        UPoly::new(&self.ctx, coeffs)
    }
}

impl<F: Field> Mul for &UPoly<F> {
    type Output = UPoly<F>;
    fn mul(self, rhs: &UPoly<F>) -> UPoly<F> {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero(&self.ctx);
        }
        let mut out = vec![F::zero(&self.ctx); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b;
            }
        }
        UPoly::new(&self.ctx, out)
    }
}

impl<F: Field> Neg for &UPoly<F> {
    type Output = UPoly<F>;
    fn neg(self) -> UPoly<F> {
        UPoly::new(&self.ctx, self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for UPoly<F> {
            type Output = UPoly<F>;
            fn $m(self, rhs: UPoly<F>) -> UPoly<F> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<F: Field> Neg for UPoly<F> {
    type Output = UPoly<F>;
    fn neg(self) -> UPoly<F> {
        -&self
    }
}
