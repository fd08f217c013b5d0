//! Exact scalar fields.
//!
//! Every coefficient type used by [`crate::upoly::UPoly`] implements [`Field`].
//! Elements carry their own context (the modulus, or the symbol universe) so a
//! polynomial can always build zeros and small integers of the right field.
//! Fields that carry a derivation also implement [`Differential`].

mod fp;
mod ratfunc;
mod symbolic;

pub use fp::{cube_root, is_prime, FpElem, PrimeField};
pub use ratfunc::RatFunc;
pub use symbolic::{MPoly, Monomial, SymRat, SymVars};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::Result;

pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    type Ctx: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn context(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self;
    fn characteristic(ctx: &Self::Ctx) -> u64;

    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one(&self.context())
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|i| self.clone() * i)
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.context());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }
}

/// A field with a derivation `x -> x'`.
///
/// Implementations satisfy additivity, the Leibniz rule, and map the prime
/// subfield to zero.
pub trait Differential: Field {
    fn derive(&self) -> Result<Self>;
}
