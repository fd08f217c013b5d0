//! Projective polynomials `H = u x^{r+1} + v x^r + w x + z`, their linear
//! fractional maps `f(x) = (-v x - z)/(u x + w)`, and the search for an `H`
//! divisible by a given `P`.

use crate::error::{Error, Result};
use crate::factor;
use crate::fields::{cube_root, Differential, Field, FpElem, PrimeField};
use crate::linalg::nullspace;
use crate::upoly::{x_pow_mod, UPoly};

/// Quadruple `(u, v, w, z)` with order `t`, so `r = p^t`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjParams<F: Field> {
    pub u: F,
    pub v: F,
    pub w: F,
    pub z: F,
    pub t: u32,
}

impl<F: Field> ProjParams<F> {
    /// Validated constructor: `u z - v w` must be nonzero.
    pub fn new(u: F, v: F, w: F, z: F, t: u32) -> Result<Self> {
        let params = Self::new_unchecked(u, v, w, z, t);
        if params.det().is_zero() {
            return Err(Error::pre("u z - v w must be nonzero"));
        }
        Ok(params)
    }

    pub fn new_unchecked(u: F, v: F, w: F, z: F, t: u32) -> Self {
        ProjParams { u, v, w, z, t }
    }

    pub fn ctx(&self) -> F::Ctx {
        self.u.context()
    }

    /// `u z - v w`.
    pub fn det(&self) -> F {
        self.u.clone() * &self.z - self.v.clone() * &self.w
    }

    pub fn r(&self) -> Result<u64> {
        let p = F::characteristic(&self.ctx());
        if p == 0 {
            return Err(Error::pre("order needs positive characteristic"));
        }
        p.checked_pow(self.t)
            .ok_or_else(|| Error::pre("p^t overflows 64 bits"))
    }

    /// Scales so that `u = 1`, or `v = 1` when `u = 0`.
    pub fn normalized(&self) -> Self {
        let lead = if self.u.is_zero() { &self.v } else { &self.u };
        let Some(inv) = lead.inv() else {
            return self.clone();
        };
        ProjParams {
            u: self.u.clone() * &inv,
            v: self.v.clone() * &inv,
            w: self.w.clone() * &inv,
            z: self.z.clone() * &inv,
            t: self.t,
        }
    }

    pub fn is_zero(&self) -> bool {
        [&self.u, &self.v, &self.w, &self.z]
            .iter()
            .all(|c| c.is_zero())
    }
}

pub fn h_poly<F: Field>(params: &ProjParams<F>) -> Result<UPoly<F>> {
    let r = params.r()? as usize;
    let ctx = params.ctx();
    let mut h = &UPoly::monomial(params.u.clone(), r + 1) + &UPoly::monomial(params.v.clone(), r);
    h = &h + &UPoly::new(&ctx, vec![params.z.clone(), params.w.clone()]);
    Ok(h)
}

/// 2x2 matrix `[[a, b], [c, d]]` acting as `x -> (a x + b)/(c x + d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Mobius<F: Field> {
    pub a: F,
    pub b: F,
    pub c: F,
    pub d: F,
}

impl<F: Field> Mobius<F> {
    pub fn det(&self) -> F {
        self.a.clone() * &self.d - self.b.clone() * &self.c
    }

    /// Matrix product; `self.compose(g)` acts as `x -> self(g(x))`.
    pub fn compose(&self, g: &Mobius<F>) -> Mobius<F> {
        Mobius {
            a: self.a.clone() * &g.a + self.b.clone() * &g.c,
            b: self.a.clone() * &g.b + self.b.clone() * &g.d,
            c: self.c.clone() * &g.a + self.d.clone() * &g.c,
            d: self.c.clone() * &g.b + self.d.clone() * &g.d,
        }
    }

    /// Raises every entry to the power `s`.
    pub fn frobenius(&self, s: u64) -> Mobius<F> {
        Mobius {
            a: self.a.pow(s),
            b: self.b.pow(s),
            c: self.c.pow(s),
            d: self.d.pow(s),
        }
    }

    /// `None` at a pole.
    pub fn apply(&self, x: &F) -> Option<F> {
        let num = self.a.clone() * x + &self.b;
        let den = self.c.clone() * x + &self.d;
        num.checked_div(&den)
    }

    /// Reads `(u, v, w, z) = (c, -a, d, -b)` back from the matrix.
    pub fn to_params(&self, t: u32) -> ProjParams<F> {
        ProjParams::new_unchecked(
            self.c.clone(),
            -self.a.clone(),
            self.d.clone(),
            -self.b.clone(),
            t,
        )
    }
}

/// `[[-v, -z], [u, w]]`, whose determinant is `u z - v w`.
pub fn mobius<F: Field>(params: &ProjParams<F>) -> Mobius<F> {
    Mobius {
        a: -params.v.clone(),
        b: -params.z.clone(),
        c: params.u.clone(),
        d: params.w.clone(),
    }
}

/// The relation of order `m t` obtained by iterating `α = f(α^r)`:
/// `M_m = M · M^[r] · ... · M^[r^{m-1}]`.
pub fn order_power<F: Field>(params: &ProjParams<F>, m: u32) -> Result<ProjParams<F>> {
    if m == 0 {
        return Err(Error::pre("order multiplier must be at least 1"));
    }
    let r = params.r()?;
    let base = mobius(params);
    let mut acc = base.clone();
    let mut s = 1u64;
    for _ in 1..m {
        s = s
            .checked_mul(r)
            .ok_or_else(|| Error::pre("r^m overflows 64 bits"))?;
        acc = acc.compose(&base.frobenius(s));
    }
    let t = params
        .t
        .checked_mul(m)
        .ok_or_else(|| Error::pre("order overflows"))?;
    Ok(acc.to_params(t))
}

/// One solution ray of the search.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate<F: Field> {
    /// Normalized quadruple.
    pub params: ProjParams<F>,
    /// `u z - v w = 0`, or `H` vanishes identically.
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult<F: Field> {
    pub r: u64,
    /// Dimension of the `(u, v)` solution space.
    pub dimension: usize,
    pub candidates: Vec<Candidate<F>>,
}

impl<F: Field> SearchResult<F> {
    /// First nondegenerate candidate.
    pub fn hyperquadratic(&self) -> Option<&ProjParams<F>> {
        self.candidates
            .iter()
            .find(|c| !c.degenerate)
            .map(|c| &c.params)
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }
}

/// Finds every `(u, v, w, z)` with `u x^{r+1} + v x^r + w x + z ≡ 0 (mod P)`.
///
/// With `A = x^{r+1} mod P` and `B = x^r mod P`, the coefficients of
/// `x^2 .. x^{d-1}` in `u A + v B` must vanish; `w` and `z` are then read
/// off the two lowest coefficients.
pub fn find_projective<F: Field>(p: &UPoly<F>, t: u32) -> Result<SearchResult<F>> {
    let d = match p.degree() {
        Some(d) if d >= 2 => d,
        _ => return Err(Error::pre("search needs deg P >= 2")),
    };
    if !p.is_monic() {
        return Err(Error::pre("P must be monic"));
    }
    let ctx = p.ctx().clone();
    let char_p = F::characteristic(&ctx);
    if char_p == 0 {
        return Err(Error::pre("search needs positive characteristic"));
    }
    let r = char_p
        .checked_pow(t)
        .ok_or_else(|| Error::pre("p^t overflows 64 bits"))?;
    let b = x_pow_mod(r, p)?;
    let a = b.mul_mod(&UPoly::x(&ctx), p)?;
    let rows: Vec<Vec<F>> = (2..d).map(|k| vec![a.coeff(k), b.coeff(k)]).collect();
    let basis = nullspace(&ctx, &rows, 2);
    let candidates = basis
        .iter()
        .map(|uv| {
            let (u, v) = (uv[0].clone(), uv[1].clone());
            let combo = &a.scale(&u) + &b.scale(&v);
            let params =
                ProjParams::new_unchecked(u, v, -combo.coeff(1), -combo.coeff(0), t).normalized();
            let trivial = r == 1
                && params.u.is_zero()
                && (params.v.clone() + &params.w).is_zero()
                && params.z.is_zero();
            Candidate {
                degenerate: trivial || params.det().is_zero(),
                params,
            }
        })
        .collect();
    Ok(SearchResult {
        r,
        dimension: basis.len(),
        candidates,
    })
}

/// Least `t <= t_max` at which `P` divides a nondegenerate projective
/// polynomial of order `t`. No irreducibility requirement.
pub fn min_order_upto<F: Field>(p: &UPoly<F>, t_max: u32) -> Result<Option<u32>> {
    for t in 0..=t_max {
        if find_projective(p, t)?.hyperquadratic().is_some() {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// Absolute order of the roots of an irreducible `P` over F_p, searched up
/// to `t_max`.
pub fn absolute_order_upto(p: &UPoly<FpElem>, t_max: u32) -> Result<Option<u32>> {
    if !factor::is_irreducible(p)? {
        return Err(Error::pre("absolute order needs an irreducible polynomial"));
    }
    min_order_upto(p, t_max)
}

/// `(a, b, c)` in F_p with `18a^3 + 325bc = 0` and `b^5 = 2c^4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HqTriple {
    pub a: FpElem,
    pub b: FpElem,
    pub c: FpElem,
}

impl HqTriple {
    pub fn p(&self) -> u64 {
        self.a.modulus()
    }

    /// `x^5 + a x^2 + b x + c`.
    pub fn quintic(&self) -> UPoly<FpElem> {
        let k = self.a.field();
        UPoly::new(
            &k,
            vec![self.c, self.b, self.a, k.elem(0), k.elem(0), k.elem(1)],
        )
    }
}

/// For p = 6k+5, p != 5: `u = 2 (18/325)^4`, `b = cr(a^4 cr(u))`,
/// `c = -18 a^3 / (325 b)`.
pub fn gen_triple(a: FpElem) -> Result<HqTriple> {
    let k = a.field();
    let p = k.p();
    if p % 6 != 5 || p == 5 {
        return Err(Error::pre(format!(
            "triple recipe needs p = 5 (mod 6) and p != 5, got {p}"
        )));
    }
    if a.is_zero() {
        return Err(Error::pre("a must be nonzero"));
    }
    let ratio = k.elem(18) * k.elem(325).inv().expect("325 invertible for p != 5, 13");
    let u = k.elem(2) * ratio.pow(4);
    let b = cube_root(a.pow(4) * cube_root(u)?)?;
    let c = -(k.elem(18) * a.pow(3)) * (k.elem(325) * b).inv().expect("b != 0");
    Ok(HqTriple { a, b, c })
}

/// All `p - 1` triples, ordered by `a`.
pub fn all_triples(k: PrimeField) -> Result<Vec<HqTriple>> {
    (1..k.p()).map(|a| gen_triple(k.elem(a as i64))).collect()
}

/// `18a^3 + 325bc = 0`.
pub fn check_c1<F: Field>(a: &F, b: &F, c: &F) -> bool {
    let ctx = a.context();
    (F::from_i64(&ctx, 18) * a.pow(3) + F::from_i64(&ctx, 325) * b.clone() * c).is_zero()
}

/// `5b'c = 4c'b`.
pub fn check_c2<F: Differential>(_a: &F, b: &F, c: &F) -> Result<bool> {
    let ctx = b.context();
    let lhs = F::from_i64(&ctx, 5) * b.derive()? * c;
    let rhs = F::from_i64(&ctx, 4) * c.derive()? * b;
    Ok(lhs == rhs)
}

/// `b^5 = 2c^4`.
pub fn check_c3<F: Field>(_a: &F, b: &F, c: &F) -> bool {
    b.pow(5) == F::from_i64(&c.context(), 2) * c.pow(4)
}

/// `x^4 + a x^2 + b x - a^2/12`, searched at order `p mod 3`.
pub fn quartic_family(a: FpElem, b: FpElem) -> Result<(UPoly<FpElem>, SearchResult<FpElem>)> {
    let k = a.field();
    if k.p() <= 3 {
        return Err(Error::pre("quartic family needs p > 3"));
    }
    let c = -(a * a) * k.elem(12).inv().unwrap();
    let p = UPoly::new(&k, vec![c, b, a, k.elem(0), k.elem(1)]);
    let res = find_projective(&p, (k.p() % 3) as u32)?;
    Ok((p, res))
}
