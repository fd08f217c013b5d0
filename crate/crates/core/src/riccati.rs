//! Riccati numerators of algebraic elements over a differential field.
//!
//! For a monic squarefree `P` with root `α`, differentiating `P(α) = 0`
//! gives `α' P'_x(α) + P_T(α) = 0`, where `P_T` applies the coefficient
//! derivation. With `U P + V P'_x = R = Res(P, P'_x)` the polynomial
//! `Qr = V P_T mod P` satisfies `Qr P'_x ≡ R P_T (mod P)`, hence
//! `Qr(α) = -R α'`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::fields::{Differential, Field, PrimeField, RatFunc, SymRat, SymVars};
use crate::upoly::{ext_resultant, UPoly};

#[derive(Debug, Clone, PartialEq)]
pub struct RiccatiOutput<F: Field> {
    /// `Res(P, P'_x)`.
    pub resultant: F,
    /// `(-1)^{d(d-1)/2} Res(P, P'_x)`.
    pub disc: F,
    pub qr: UPoly<F>,
}

impl<F: Field> RiccatiOutput<F> {
    /// Coefficient `b_i` of `x^i` in `Qr`.
    pub fn b(&self, i: usize) -> F {
        self.qr.coeff(i)
    }
}

/// Applies the derivation to every coefficient; `x` is a constant.
pub fn coeff_derivative<F: Differential>(p: &UPoly<F>) -> Result<UPoly<F>> {
    p.try_map_coeffs(p.ctx(), |c| c.derive())
}

pub fn riccati_numerator<F: Differential>(p: &UPoly<F>) -> Result<RiccatiOutput<F>> {
    let d = match p.degree() {
        Some(d) if d >= 2 => d,
        _ => return Err(Error::pre("Riccati numerator needs degree at least 2")),
    };
    if !p.is_monic() {
        return Err(Error::pre("polynomial must be monic"));
    }
    let dp = p.derivative_x();
    if dp.is_zero() {
        return Err(Error::NotSquarefree);
    }
    let ext = ext_resultant(p, &dp)?;
    if ext.resultant.is_zero() {
        return Err(Error::NotSquarefree);
    }
    let pt = coeff_derivative(p)?;
    let qr = (&ext.v * &pt).rem(p)?;
    let disc = if (d * (d - 1) / 2) % 2 == 1 {
        -ext.resultant.clone()
    } else {
        ext.resultant.clone()
    };
    Ok(RiccatiOutput {
        resultant: ext.resultant,
        disc,
        qr,
    })
}

/// Checks `Qr P'_x - R P_T ≡ 0 (mod P)`.
pub fn satisfies_contract<F: Differential>(p: &UPoly<F>, out: &RiccatiOutput<F>) -> Result<bool> {
    let pt = coeff_derivative(p)?;
    let lhs = &(&out.qr * &p.derivative_x()) - &pt.scale(&out.resultant);
    Ok(lhs.rem(p)?.is_zero())
}

fn sym(vars: &std::sync::Arc<SymVars>, name: &str) -> SymRat {
    SymRat::var(vars, name).expect("standard symbol")
}

fn ratio(vars: &std::sync::Arc<SymVars>, n: i64, d: i64) -> SymRat {
    SymRat::rational(vars, BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn subst_poly(
    p: &UPoly<SymRat>,
    assignments: &[(&str, SymRat)],
    auto: bool,
) -> Result<UPoly<SymRat>> {
    p.try_map_coeffs(p.ctx(), |c| c.substitute(assignments, auto))
}

/// The quartic `x^4 + a x^2 + b x + c` before and after `c -> -a^2/12`.
#[derive(Debug, Clone)]
pub struct QuarticReport {
    pub before: RiccatiOutput<SymRat>,
    pub after: UPoly<SymRat>,
}

impl QuarticReport {
    pub fn leading_vanishes(&self) -> bool {
        self.after.coeff(3).is_zero()
    }
}

pub fn quartic_check() -> Result<QuarticReport> {
    let vars = SymVars::standard();
    let (a, b, c) = (sym(&vars, "a"), sym(&vars, "b"), sym(&vars, "c"));
    let zero = SymRat::zero(&vars);
    let p = UPoly::new(&vars, vec![c, b, a.clone(), zero, SymRat::one(&vars)]);
    let before = riccati_numerator(&p)?;
    let c_val = -(a.clone() * a).checked_div(&ratio(&vars, 12, 1)).unwrap();
    let after = subst_poly(&before.qr, &[("c", c_val)], true)?;
    Ok(QuarticReport { before, after })
}

/// Result of the quintic `x^5 + a x^2 + b x + c` check.
#[derive(Debug, Clone)]
pub struct QuinticReport<F: Field> {
    pub output: RiccatiOutput<F>,
}

impl<F: Field> QuinticReport<F> {
    /// `b_4 = b_3 = b_2 = b_0 = 0`.
    pub fn conditions_hold(&self) -> bool {
        [4, 3, 2, 0].iter().all(|&i| self.output.b(i).is_zero())
    }

    pub fn coefficients(&self) -> [F; 5] {
        std::array::from_fn(|i| self.output.b(i))
    }
}

/// Symbolic quintic check: eliminates `c` through `18a^3 + 325bc = 0` and
/// `a'` through `5b'c = 4c'b`, which together force `3 a b' = 4 a' b`.
pub fn quintic_check_symbolic() -> Result<QuinticReport<SymRat>> {
    let vars = SymVars::standard();
    let (a, b, c) = (sym(&vars, "a"), sym(&vars, "b"), sym(&vars, "c"));
    let zero = SymRat::zero(&vars);
    let p = UPoly::new(
        &vars,
        vec![
            c,
            b.clone(),
            a.clone(),
            zero.clone(),
            zero,
            SymRat::one(&vars),
        ],
    );
    let out = riccati_numerator(&p)?;
    let a3 = a.pow(3);
    let c_val = (ratio(&vars, -18, 1) * a3)
        .checked_div(&(ratio(&vars, 325, 1) * b.clone()))
        .unwrap();
    let ap_val = (ratio(&vars, 3, 1) * a * sym(&vars, "bp"))
        .checked_div(&(ratio(&vars, 4, 1) * b))
        .unwrap();
    let step = |x: &SymRat| -> Result<SymRat> {
        x.substitute(&[("c", c_val.clone())], true)?
            .substitute(&[("ap", ap_val.clone())], false)
    };
    let qr = out.qr.try_map_coeffs(&vars, step)?;
    Ok(QuinticReport {
        output: RiccatiOutput {
            resultant: step(&out.resultant)?,
            disc: step(&out.disc)?,
            qr,
        },
    })
}

/// Quintic check over F_p(T) for a concrete triple satisfying
/// `18a^3 + 325bc = 0` and `5b'c = 4c'b`.
pub fn quintic_check_instantiated(
    a: &RatFunc,
    b: &RatFunc,
    c: &RatFunc,
) -> Result<QuinticReport<RatFunc>> {
    let k: PrimeField = a.context();
    if [2, 3, 5, 13].contains(&k.p()) {
        return Err(Error::pre(format!(
            "characteristic {} makes 18 or 325 non-invertible",
            k.p()
        )));
    }
    if !crate::projective::check_c1(a, b, c) || !crate::projective::check_c2(a, b, c)? {
        return Err(Error::pre("triple does not satisfy (C1) and (C2)"));
    }
    let zero = RatFunc::zero(&k);
    let p = UPoly::new(
        &k,
        vec![
            c.clone(),
            b.clone(),
            a.clone(),
            zero.clone(),
            zero,
            RatFunc::one(&k),
        ],
    );
    Ok(QuinticReport {
        output: riccati_numerator(&p)?,
    })
}
