//! Symbolic coefficients: rational functions over Q in a fixed list of base
//! symbols, each paired with a derivative symbol (`a` with `ap`, ...).
//!
//! Polynomials are sparse maps from exponent vectors to exact rationals in
//! graded-lex order. Fractions are not reduced by a multivariate gcd; a
//! quotient is collapsed only when the denominator divides the numerator
//! exactly or shares a monomial factor with it.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Differential, Field};
use crate::error::{Error, Result};

/// The symbol universe: base symbols first, then their derivative symbols
/// in the same order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymVars {
    names: Vec<String>,
    nbase: usize,
}

impl SymVars {
    pub fn new<S: AsRef<str>>(base: &[S]) -> Result<Arc<Self>> {
        let mut names: Vec<String> = base.iter().map(|s| s.as_ref().to_string()).collect();
        let derived: Vec<String> = names.iter().map(|n| format!("{n}p")).collect();
        names.extend(derived);
        for (i, n) in names.iter().enumerate() {
            let valid = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && n.chars().all(|c| c.is_ascii_alphanumeric())
                && n != "x"
                && n != "T";
            if !valid {
                return Err(Error::pre(format!("invalid symbol name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::pre(format!("duplicate symbol `{n}`")));
            }
        }
        Ok(Arc::new(SymVars {
            nbase: base.len(),
            names,
        }))
    }

    /// `a, b, c, d` with `ap, bp, cp, dp`.
    pub fn standard() -> Arc<Self> {
        Self::new(&["a", "b", "c", "d"]).expect("valid names")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn is_base(&self, i: usize) -> bool {
        i < self.nbase
    }

    /// Derivative symbol paired with base symbol `i`.
    pub fn derivative_of(&self, i: usize) -> Option<usize> {
        (i < self.nbase).then_some(i + self.nbase)
    }
}

/// Exponent vector ordered by total degree, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over Q with no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::term(c, Monomial::one(nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(BigRational::one(), Monomial::var(nvars, i))
    }

    pub fn term(c: BigRational, m: Monomial) -> Self {
        let nvars = m.0.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { nvars, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Whether symbol `i` occurs with positive exponent.
    pub fn mentions(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    fn mul_term(&self, m: &Monomial, c: &BigRational) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.nvars, BigRational::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        let (dm, dc) = d.leading()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = MPoly::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading() {
            let m = rm.checked_div(&dm)?;
            let c = rc / &dc;
            rem = &rem - &d.mul_term(&m, &c);
            quot.add_term(m, c);
        }
        Some(quot)
    }

    fn partial(&self, i: usize) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                let mut m2 = m.clone();
                m2.0[i] -= 1;
                out.add_term(m2, c * BigRational::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    /// Monomial gcd of all terms.
    fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one(self.nvars);
        };
        let mut g = first.0.clone();
        for m in it {
            for (x, y) in g.iter_mut().zip(&m.0) {
                *x = (*x).min(*y);
            }
        }
        Monomial(g)
    }

    fn div_monomial(&self, m: &Monomial) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.checked_div(m).expect("monomial divides"), c.clone()))
                .collect(),
        }
    }

    pub(crate) fn render(&self, vars: &SymVars) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let mag = c.abs();
            let factors: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| match e {
                        1 => vars.name(i).to_string(),
                        _ => format!("{}^{e}", vars.name(i)),
                    })
                    .collect();
            if factors.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-BigRational::one())
    }
}

/// A quotient of two [`MPoly`] over a shared symbol universe.
#[derive(Debug, Clone)]
pub struct SymRat {
    num: MPoly,
    den: MPoly,
    vars: Arc<SymVars>,
}

impl SymRat {
    pub fn new(vars: &Arc<SymVars>, num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(vars.clone(), num, den))
    }

    pub fn from_poly(vars: &Arc<SymVars>, num: MPoly) -> Self {
        let den = MPoly::constant(vars.len(), BigRational::one());
        SymRat {
            num,
            den,
            vars: vars.clone(),
        }
    }

    pub fn var(vars: &Arc<SymVars>, name: &str) -> Result<Self> {
        let i = vars
            .index_of(name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
        Ok(Self::from_poly(vars, MPoly::var(vars.len(), i)))
    }

    pub fn rational(vars: &Arc<SymVars>, c: BigRational) -> Self {
        Self::from_poly(vars, MPoly::constant(vars.len(), c))
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn vars(&self) -> &Arc<SymVars> {
        &self.vars
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.as_constant().is_some_and(|c| c.is_one())
    }

    fn normalized(vars: Arc<SymVars>, mut num: MPoly, mut den: MPoly) -> Self {
        let n = vars.len();
        if num.is_zero() {
            return SymRat {
                num,
                den: MPoly::constant(n, BigRational::one()),
                vars,
            };
        }
        if let Some(c) = den.as_constant() {
            return SymRat {
                num: num.scale(&c.recip()),
                den: MPoly::constant(n, BigRational::one()),
                vars,
            };
        }
        if let Some(q) = num.div_exact(&den) {
            return SymRat {
                num: q,
                den: MPoly::constant(n, BigRational::one()),
                vars,
            };
        }
        let g = num.monomial_content();
        let h = den.monomial_content();
        let common = Monomial(g.0.iter().zip(&h.0).map(|(a, b)| *a.min(b)).collect());
        if common.degree() > 0 {
            num = num.div_monomial(&common);
            den = den.div_monomial(&common);
        }
        let lc = den.leading().unwrap().1.recip();
        SymRat {
            num: num.scale(&lc),
            den: den.scale(&lc),
            vars,
        }
    }

    fn same_den(&self, other: &SymRat) -> bool {
        self.den == other.den
    }

    /// Whether symbol `i` occurs in the numerator or denominator.
    pub fn mentions(&self, i: usize) -> bool {
        self.num.mentions(i) || self.den.mentions(i)
    }

    /// Simultaneous substitution of symbols by expressions.
    ///
    /// With `auto_derive`, each base symbol `v -> E` also sends its paired
    /// derivative symbol to the derivative of `E`.
    pub fn substitute(&self, assignments: &[(&str, SymRat)], auto_derive: bool) -> Result<SymRat> {
        let mut map: Vec<(usize, SymRat)> = Vec::new();
        for (name, expr) in assignments {
            let i = self
                .vars
                .index_of(name)
                .ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
            if expr.vars != self.vars {
                return Err(Error::FieldMismatch);
            }
            map.push((i, expr.clone()));
            if auto_derive {
                if let Some(d) = self.vars.derivative_of(i) {
                    if !assignments.iter().any(|(n, _)| *n == self.vars.name(d)) {
                        map.push((d, expr.derive()?));
                    }
                }
            }
        }
        for (_, e) in &map {
            if let Some((t, _)) = map.iter().find(|(t, _)| e.mentions(*t)) {
                return Err(Error::pre(format!(
                    "substituted expression mentions replaced symbol `{}`",
                    self.vars.name(*t)
                )));
            }
        }
        let (nn, nd) = subst_poly(&self.vars, &self.num, &map);
        let (dn, dd) = subst_poly(&self.vars, &self.den, &map);
        let num = &nn * &dd;
        let den = &nd * &dn;
        SymRat::new(&self.vars, num, den)
    }
}

/// Evaluates `poly` at the assignments, returning an unreduced
/// numerator/denominator pair over the least common power product.
fn subst_poly(vars: &Arc<SymVars>, poly: &MPoly, map: &[(usize, SymRat)]) -> (MPoly, MPoly) {
    let n = vars.len();
    let max_exp: Vec<u32> = map
        .iter()
        .map(|(i, _)| poly.terms.keys().map(|m| m.0[*i]).max().unwrap_or(0))
        .collect();
    let powers = |p: &MPoly, e: u32| -> Vec<MPoly> {
        let mut v = vec![MPoly::constant(n, BigRational::one())];
        for k in 0..e as usize {
            let next = &v[k] * p;
            v.push(next);
        }
        v
    };
    let num_pows: Vec<Vec<MPoly>> = map
        .iter()
        .zip(&max_exp)
        .map(|((_, e), &k)| powers(&e.num, k))
        .collect();
    let den_pows: Vec<Vec<MPoly>> = map
        .iter()
        .zip(&max_exp)
        .map(|((_, e), &k)| powers(&e.den, k))
        .collect();

    let mut num = MPoly::zero(n);
    for (m, c) in &poly.terms {
        let mut rest = m.clone();
        let mut t = MPoly::constant(n, c.clone());
        for (j, (i, _)) in map.iter().enumerate() {
            let e = m.0[*i];
            rest.0[*i] = 0;
            t = &t * &num_pows[j][e as usize];
            t = &t * &den_pows[j][(max_exp[j] - e) as usize];
        }
        num = &num + &t.mul_term(&rest, &BigRational::one());
    }
    let den = den_pows
        .iter()
        .zip(&max_exp)
        .fold(MPoly::constant(n, BigRational::one()), |acc, (pw, &k)| {
            &acc * &pw[k as usize]
        });
    (num, den)
}

impl fmt::Display for SymRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.num.render(&self.vars);
        if self.is_polynomial() {
            f.write_str(&num)
        } else {
            write!(f, "({num})/({})", self.den.render(&self.vars))
        }
    }
}

impl PartialEq for SymRat {
    fn eq(&self, other: &Self) -> bool {
        if self.vars != other.vars {
            return false;
        }
        if self.same_den(other) {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Add<&SymRat> for SymRat {
    type Output = SymRat;
    fn add(self, rhs: &SymRat) -> SymRat {
        if self.same_den(rhs) {
            let num = &self.num + &rhs.num;
            return SymRat::normalized(self.vars, num, self.den);
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        SymRat::normalized(self.vars, num, den)
    }
}

impl Sub<&SymRat> for SymRat {
    type Output = SymRat;
    fn sub(self, rhs: &SymRat) -> SymRat {
        self + &(-rhs.clone())
    }
}

impl Mul<&SymRat> for SymRat {
    type Output = SymRat;
    fn mul(self, rhs: &SymRat) -> SymRat {
        if self.is_polynomial() && rhs.is_polynomial() {
            let num = &self.num * &rhs.num;
            return SymRat::from_poly(&self.vars, num);
        }
        let num = &self.num * &rhs.num;
        let den = &self.den * &rhs.den;
        SymRat::normalized(self.vars, num, den)
    }
}

impl Add for SymRat {
    type Output = SymRat;
    fn add(self, rhs: SymRat) -> SymRat {
        self + &rhs
    }
}

impl Sub for SymRat {
    type Output = SymRat;
    fn sub(self, rhs: SymRat) -> SymRat {
        self - &rhs
    }
}

impl Mul for SymRat {
    type Output = SymRat;
    fn mul(self, rhs: SymRat) -> SymRat {
        self * &rhs
    }
}

impl Neg for SymRat {
    type Output = SymRat;
    fn neg(self) -> SymRat {
        SymRat {
            num: -&self.num,
            den: self.den,
            vars: self.vars,
        }
    }
}

impl Field for SymRat {
    type Ctx = Arc<SymVars>;

    fn context(&self) -> Arc<SymVars> {
        self.vars.clone()
    }

    fn zero(ctx: &Arc<SymVars>) -> Self {
        Self::from_poly(ctx, MPoly::zero(ctx.len()))
    }

    fn one(ctx: &Arc<SymVars>) -> Self {
        Self::rational(ctx, BigRational::one())
    }

    fn from_i64(ctx: &Arc<SymVars>, n: i64) -> Self {
        Self::rational(ctx, BigRational::from_integer(BigInt::from(n)))
    }

    fn characteristic(_: &Arc<SymVars>) -> u64 {
        0
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num == self.den
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(SymRat::normalized(
                self.vars.clone(),
                self.den.clone(),
                self.num.clone(),
            ))
        }
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let num = &self.num * &rhs.den;
        let den = &self.den * &rhs.num;
        Some(SymRat::normalized(self.vars.clone(), num, den))
    }
}

impl Differential for SymRat {
    /// Maps each base symbol `v` to its pair `vp`; fails if a derivative
    /// symbol is present, since that would need a second derivative.
    fn derive(&self) -> Result<Self> {
        let dpoly = |p: &MPoly| -> Result<MPoly> {
            let mut out = MPoly::zero(self.vars.len());
            for i in 0..self.vars.len() {
                if !p.mentions(i) {
                    continue;
                }
                let Some(d) = self.vars.derivative_of(i) else {
                    return Err(Error::SecondDerivative(self.vars.name(i).to_string()));
                };
                out = &out + &(&p.partial(i) * &MPoly::var(self.vars.len(), d));
            }
            Ok(out)
        };
        let dn = dpoly(&self.num)?;
        let dd = dpoly(&self.den)?;
        if dd.is_zero() {
            return Ok(SymRat::normalized(self.vars.clone(), dn, self.den.clone()));
        }
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        let den = &self.den * &self.den;
        Ok(SymRat::normalized(self.vars.clone(), num, den))
    }
}
