use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Differential, Field, FpElem, PrimeField};
use crate::error::{Error, Result};
use crate::upoly::{gcd, UPoly};

/// An element of F_p(T) kept in lowest terms with a monic denominator, so
/// equality is coefficient equality.
#[derive(Debug, Clone, PartialEq)]
pub struct RatFunc {
    num: UPoly<FpElem>,
    den: UPoly<FpElem>,
}

impl RatFunc {
    pub fn new(num: UPoly<FpElem>, den: UPoly<FpElem>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: UPoly<FpElem>, den: UPoly<FpElem>) -> Self {
        let ctx = *den.ctx();
        if num.is_zero() {
            return RatFunc {
                num,
                den: UPoly::one(&ctx),
            };
        }
        let g = gcd(&num, &den).expect("denominator is nonzero");
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (num.divrem(&g).unwrap().0, den.divrem(&g).unwrap().0)
        };
        let lc = *den.leading().unwrap();
        if !lc.is_one() {
            let inv = lc.inv().unwrap();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn from_poly(num: UPoly<FpElem>) -> Self {
        let ctx = *num.ctx();
        RatFunc {
            num,
            den: UPoly::one(&ctx),
        }
    }

    /// The indeterminate `T`.
    pub fn t(ctx: &PrimeField) -> Self {
        Self::from_poly(UPoly::x(ctx))
    }

    /// `c * T^k`.
    pub fn monomial(c: i64, k: usize, ctx: &PrimeField) -> Self {
        Self::from_poly(UPoly::monomial(ctx.elem(c), k))
    }

    pub fn num(&self) -> &UPoly<FpElem> {
        &self.num
    }

    pub fn den(&self) -> &UPoly<FpElem> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num.render("T"))
        } else {
            write!(f, "({})/({})", self.num.render("T"), self.den.render("T"))
        }
    }
}

impl Add<&RatFunc> for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return Self::canonical(&self.num + &rhs.num, self.den);
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Self::canonical(num, &self.den * &rhs.den)
    }
}

impl Sub<&RatFunc> for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs.clone())
    }
}

impl Mul<&RatFunc> for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        Self::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        self + &rhs
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self - &rhs
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        self * &rhs
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Field for RatFunc {
    type Ctx = PrimeField;

    fn context(&self) -> PrimeField {
        *self.den.ctx()
    }

    fn zero(ctx: &PrimeField) -> Self {
        Self::from_poly(UPoly::zero(ctx))
    }

    fn one(ctx: &PrimeField) -> Self {
        Self::from_poly(UPoly::one(ctx))
    }

    fn from_i64(ctx: &PrimeField, n: i64) -> Self {
        Self::from_poly(UPoly::constant(ctx.elem(n)))
    }

    fn characteristic(ctx: &PrimeField) -> u64 {
        ctx.p()
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::canonical(self.den.clone(), self.num.clone()))
        }
    }
}

impl Differential for RatFunc {
    /// d/dT by the quotient rule.
    fn derive(&self) -> Result<Self> {
        let num = &(&self.num.derivative_x() * &self.den) - &(&self.num * &self.den.derivative_x());
        Ok(Self::canonical(num, &self.den * &self.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> PrimeField {
        PrimeField::new(11).unwrap()
    }

    fn rf(num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(UPoly::from_i64s(&k(), num), UPoly::from_i64s(&k(), den)).unwrap()
    }

    #[test]
    fn canonical_form_reduces() {
        // (T^2-1)/(2T-2) = (T+1)/2 = 6T+6
        let x = rf(&[-1, 0, 1], &[-2, 2]);
        assert_eq!(x, rf(&[6, 6], &[1]));
        assert!(x.den().is_monic());
        assert_eq!(
            RatFunc::new(UPoly::one(&k()), UPoly::zero(&k())),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn derive_examples() {
        let t2 = RatFunc::monomial(1, 2, &k());
        assert_eq!(t2.derive().unwrap(), RatFunc::monomial(2, 1, &k()));
        assert!(RatFunc::from_i64(&k(), 5).derive().unwrap().is_zero());
        // (T^2+1)/T -> (T^2-1)/T^2
        assert_eq!(
            rf(&[1, 0, 1], &[0, 1]).derive().unwrap(),
            rf(&[-1, 0, 1], &[0, 0, 1])
        );
    }

    #[test]
    fn characteristic_kills_pth_powers() {
        let t11 = RatFunc::monomial(1, 11, &k());
        assert!(t11.derive().unwrap().is_zero());
    }

    #[test]
    fn display() {
        assert_eq!(rf(&[1, 0, 1], &[0, 1]).to_string(), "(T^2+1)/(T)");
        assert_eq!(rf(&[3, 2], &[1]).to_string(), "2*T+3");
        assert_eq!(RatFunc::from_i64(&k(), 7).to_string(), "7");
    }

    #[test]
    fn inverse() {
        let x = rf(&[1, 0, 1], &[0, 1]);
        assert_eq!(x.clone() * &x.inv().unwrap(), RatFunc::one(&k()));
        assert!(RatFunc::zero(&k()).inv().is_none());
    }
}
