use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Field;
use crate::error::{Error, Result};

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the witness set is exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &q in &WITNESSES {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The prime field F_p. Construction validates primality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(PrimeField { p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Reduces a signed integer into the field.
    pub fn elem(&self, n: i64) -> FpElem {
        FpElem {
            value: n.rem_euclid(self.p as i64) as u64,
            p: self.p,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FpElem> + '_ {
        (0..self.p).map(move |v| FpElem {
            value: v,
            p: self.p,
        })
    }
}

/// A residue modulo a prime, always fully reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpElem {
    value: u64,
    p: u64,
}

impl FpElem {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }
}

impl fmt::Display for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add<&FpElem> for FpElem {
    type Output = FpElem;
    fn add(self, rhs: &FpElem) -> FpElem {
        self + *rhs
    }
}

impl Add for FpElem {
    type Output = FpElem;
    fn add(self, rhs: FpElem) -> FpElem {
        debug_assert_eq!(self.p, rhs.p);
        let s = self.value + rhs.value;
        FpElem {
            value: if s >= self.p { s - self.p } else { s },
            p: self.p,
        }
    }
}

impl Sub<&FpElem> for FpElem {
    type Output = FpElem;
    fn sub(self, rhs: &FpElem) -> FpElem {
        self - *rhs
    }
}

impl Sub for FpElem {
    type Output = FpElem;
    fn sub(self, rhs: FpElem) -> FpElem {
        debug_assert_eq!(self.p, rhs.p);
        FpElem {
            value: if self.value >= rhs.value {
                self.value - rhs.value
            } else {
                self.value + self.p - rhs.value
            },
            p: self.p,
        }
    }
}

impl Mul<&FpElem> for FpElem {
    type Output = FpElem;
    fn mul(self, rhs: &FpElem) -> FpElem {
        self * *rhs
    }
}

impl Mul for FpElem {
    type Output = FpElem;
    fn mul(self, rhs: FpElem) -> FpElem {
        debug_assert_eq!(self.p, rhs.p);
        FpElem {
            value: mul_mod(self.value, rhs.value, self.p),
            p: self.p,
        }
    }
}

impl Neg for FpElem {
    type Output = FpElem;
    fn neg(self) -> FpElem {
        FpElem {
            value: if self.value == 0 {
                0
            } else {
                self.p - self.value
            },
            p: self.p,
        }
    }
}

impl Field for FpElem {
    type Ctx = PrimeField;

    fn context(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    fn zero(ctx: &PrimeField) -> Self {
        FpElem { value: 0, p: ctx.p }
    }

    fn one(ctx: &PrimeField) -> Self {
        FpElem { value: 1, p: ctx.p }
    }

    fn from_i64(ctx: &PrimeField, n: i64) -> Self {
        ctx.elem(n)
    }

    fn characteristic(ctx: &PrimeField) -> u64 {
        ctx.p
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn is_one(&self) -> bool {
        self.value == 1
    }

    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        Some(FpElem {
            value: pow_mod(self.value, self.p - 2, self.p),
            p: self.p,
        })
    }

    fn pow(&self, e: u64) -> Self {
        FpElem {
            value: pow_mod(self.value, e, self.p),
            p: self.p,
        }
    }
}

impl super::Differential for FpElem {
    fn derive(&self) -> Result<Self> {
        Ok(Self::zero(&self.context()))
    }
}

/// Cube root in F_p for p = 6k+5, where cubing is a bijection.
///
/// For nonzero x the root is x^{-(2k+1)}.
pub fn cube_root(x: FpElem) -> Result<FpElem> {
    let p = x.p;
    if p % 6 != 5 {
        return Err(Error::pre(format!(
            "cube root map requires p = 5 (mod 6), got p = {p}"
        )));
    }
    if x.is_zero() {
        return Ok(x);
    }
    let k = (p - 5) / 6;
    Ok(x.pow(p - 1 - (2 * k + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(4_294_967_291));
        assert!(!is_prime(4_294_967_297)); // 641 * 6700417
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2, 3, 5, 7
    }

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(PrimeField::new(15), Err(Error::NotPrime(15)));
    }

    #[test]
    fn arithmetic_reduces() {
        let f = PrimeField::new(11).unwrap();
        assert_eq!(f.elem(-7).value(), 4);
        assert_eq!((f.elem(7) + f.elem(9)).value(), 5);
        assert_eq!((f.elem(3) - f.elem(9)).value(), 5);
        assert_eq!((f.elem(7) * f.elem(9)).value(), 8);
        assert_eq!(f.elem(7).inv().unwrap() * f.elem(7), f.elem(1));
        assert!(f.elem(0).inv().is_none());
    }

    #[test]
    fn cube_root_examples() {
        let f11 = PrimeField::new(11).unwrap();
        let f17 = PrimeField::new(17).unwrap();
        assert_eq!(cube_root(f11.elem(1)).unwrap(), f11.elem(1));
        assert_eq!(cube_root(f11.elem(8)).unwrap(), f11.elem(2));
        assert_eq!(cube_root(f17.elem(15)).unwrap(), f17.elem(9));
        assert_eq!(cube_root(f17.elem(0)).unwrap(), f17.elem(0));
    }

    #[test]
    fn cube_root_rejects_wrong_residue_class() {
        let f7 = PrimeField::new(7).unwrap();
        assert!(matches!(cube_root(f7.elem(1)), Err(Error::Precondition(_))));
    }

    #[test]
    fn cube_root_is_inverse_of_cubing() {
        for p in [11u64, 17, 23] {
            let f = PrimeField::new(p).unwrap();
            for x in f.elements() {
                // brute-force oracle: the unique y with y^3 = x
                let y = f.elements().find(|y| *y * *y * *y == x).unwrap();
                assert_eq!(cube_root(x).unwrap(), y);
                assert_eq!(cube_root(x * x * x).unwrap(), x);
            }
        }
    }
}
