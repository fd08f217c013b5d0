//! Squarefree tests, distinct-degree factorization and Cantor-Zassenhaus
//! equal-degree splitting over F_p.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::fields::FpElem;
use crate::upoly::{gcd, UPoly};

/// Multiset of irreducible factor degrees, e.g. `2^5*1^2`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FactorShape {
    counts: BTreeMap<usize, usize>,
}

impl FactorShape {
    pub fn from_counts(counts: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let counts = counts.into_iter().filter(|&(_, n)| n > 0).collect();
        FactorShape { counts }
    }

    pub fn count(&self, degree: usize) -> usize {
        self.counts.get(&degree).copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> usize {
        self.counts.iter().map(|(d, n)| d * n).sum()
    }

    pub fn factor_count(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn counts(&self) -> &BTreeMap<usize, usize> {
        &self.counts
    }
}

impl fmt::Display for FactorShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .counts
            .iter()
            .rev()
            .map(|(d, n)| match n {
                1 => d.to_string(),
                _ => format!("{d}^{n}"),
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// `gcd(f, f') = 1`. A nonconstant `f` with `f' = 0` is a p-th power.
pub fn squarefree(f: &UPoly<FpElem>) -> Result<bool> {
    match f.degree() {
        None => Err(Error::pre("squarefree test of the zero polynomial")),
        Some(0) => Ok(true),
        Some(_) => {
            let df = f.derivative_x();
            if df.is_zero() {
                return Ok(false);
            }
            Ok(gcd(f, &df)?.is_constant())
        }
    }
}

fn check_monic_squarefree(f: &UPoly<FpElem>) -> Result<()> {
    if !f.is_monic() {
        return Err(Error::pre("polynomial must be monic"));
    }
    if !squarefree(f)? {
        return Err(Error::NotSquarefree);
    }
    Ok(())
}

/// Distinct-degree factorization: pairs `(d, g_d)` where `g_d` is the
/// product of all irreducible factors of degree `d`.
pub fn ddf(f: &UPoly<FpElem>) -> Result<Vec<(usize, UPoly<FpElem>)>> {
    check_monic_squarefree(f)?;
    let k = *f.ctx();
    let x = UPoly::x(&k);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(k.p(), &rest)?;
        let g = gcd(&(&h - &x), &rest)?;
        if !g.is_constant() {
            rest = rest.divrem(&g)?.0;
            h = h.rem(&rest)?;
            out.push((d, g));
        }
        d += 1;
    }
    if let Some(deg) = rest.degree().filter(|&n| n > 0) {
        out.push((deg, rest));
    }
    Ok(out)
}

pub fn shape(f: &UPoly<FpElem>) -> Result<FactorShape> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::pre("factor shape needs a nonconstant polynomial"));
    }
    let f = f.monic()?;
    let parts = ddf(&f)?;
    Ok(FactorShape::from_counts(
        parts.iter().map(|(d, g)| (*d, g.degree().unwrap() / d)),
    ))
}

pub fn is_irreducible(f: &UPoly<FpElem>) -> Result<bool> {
    if f.degree().unwrap_or(0) == 0 {
        return Ok(false);
    }
    let f = f.monic()?;
    if !squarefree(&f)? {
        return Ok(false);
    }
    Ok(shape(&f)?.factor_count() == 1)
}

fn random_below(f: &UPoly<FpElem>, rng: &mut impl Rng) -> UPoly<FpElem> {
    let k = *f.ctx();
    let n = f.degree().unwrap();
    UPoly::new(
        &k,
        (0..n)
            .map(|_| k.elem(rng.random_range(0..k.p()) as i64))
            .collect(),
    )
}

/// A polynomial whose gcd with `g` is a proper factor with probability
/// about 1/2 when `g` splits into degree-`d` irreducibles.
fn splitting_candidate(g: &UPoly<FpElem>, d: usize, rng: &mut impl Rng) -> Result<UPoly<FpElem>> {
    let k = *g.ctx();
    let p = k.p();
    let a = random_below(g, rng);
    if p == 2 {
        // trace of F_{2^d} over F_2
        let mut acc = a.clone();
        let mut term = a;
        for _ in 1..d {
            term = term.mul_mod(&term, g)?;
            acc = &acc + &term;
        }
        return Ok(acc);
    }
    // a^{(p^d - 1)/2} = (a^{1 + p + ... + p^{d-1}})^{(p-1)/2}
    let mut norm = a.clone();
    let mut frob = a;
    for _ in 1..d {
        frob = frob.pow_mod(p, g)?;
        norm = norm.mul_mod(&frob, g)?;
    }
    let half = norm.pow_mod((p - 1) / 2, g)?;
    Ok(&half - &UPoly::one(&k))
}

/// Splits a product of distinct monic irreducibles of degree `d` into its
/// factors, sorted canonically.
pub fn edf(g: &UPoly<FpElem>, d: usize, rng: &mut impl Rng) -> Result<Vec<UPoly<FpElem>>> {
    let n = g.degree().ok_or_else(|| Error::pre("zero polynomial"))?;
    if d == 0 || n % d != 0 {
        return Err(Error::pre(format!("degree {n} is not a multiple of {d}")));
    }
    let mut done = Vec::new();
    let mut todo = vec![g.monic()?];
    while let Some(h) = todo.pop() {
        let hd = h.degree().unwrap();
        if hd == d {
            done.push(h);
            continue;
        }
        loop {
            let cand = splitting_candidate(&h, d, rng)?;
            if cand.is_zero() {
                continue;
            }
            let s = gcd(&cand, &h)?;
            let sd = s.degree().unwrap();
            if sd > 0 && sd < hd {
                let other = h.divrem(&s)?.0;
                todo.push(s);
                todo.push(other);
                break;
            }
        }
    }
    sort_canonical(&mut done);
    Ok(done)
}

/// Complete factorization of a monic squarefree polynomial into monic
/// irreducibles.
pub fn factor_squarefree(f: &UPoly<FpElem>, rng: &mut impl Rng) -> Result<Vec<UPoly<FpElem>>> {
    let mut out = Vec::new();
    for (d, g) in ddf(f)? {
        out.extend(edf(&g, d, rng)?);
    }
    sort_canonical(&mut out);
    Ok(out)
}

/// Orders by degree, then by coefficients from the top down.
pub fn sort_canonical(v: &mut [UPoly<FpElem>]) {
    v.sort_by_key(|f| {
        let coeffs: Vec<u64> = f.coeffs().iter().rev().map(|c| c.value()).collect();
        (f.degree(), coeffs)
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::PrimeField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn poly(p: u64, c: &[i64]) -> UPoly<FpElem> {
        UPoly::from_i64s(&PrimeField::new(p).unwrap(), c)
    }

    #[test]
    fn squarefree_examples() {
        assert!(!squarefree(&poly(11, &[1, 2, 1])).unwrap());
        assert!(squarefree(&poly(11, &[9, 7, 1, 0, 0, 1])).unwrap());
        assert!(squarefree(&poly(5, &[0, -1, 0, 0, 0, 1])).unwrap());
        // x^5 + 1 = (x + 1)^5 over F_5
        assert!(!squarefree(&poly(5, &[1, 0, 0, 0, 0, 1])).unwrap());
    }

    #[test]
    fn ddf_examples() {
        let f = poly(5, &[1, 0, 1]);
        assert_eq!(ddf(&f).unwrap(), vec![(1, f.clone())]);
        let g = poly(5, &[2, 0, 1]);
        assert_eq!(ddf(&g).unwrap(), vec![(2, g.clone())]);
    }

    #[test]
    fn ddf_of_table_projective_polynomial() {
        let mut h = vec![0i64; 13];
        h[12] = 1;
        h[11] = 7;
        h[1] = 7;
        h[0] = 2;
        let h = poly(11, &h);
        let parts = ddf(&h).unwrap();
        let degs: Vec<(usize, usize)> = parts
            .iter()
            .map(|(d, g)| (*d, g.degree().unwrap()))
            .collect();
        assert_eq!(degs, vec![(1, 2), (2, 10)]);
        let s = shape(&h).unwrap();
        assert_eq!(s.to_string(), "2^5*1^2");
        assert_eq!(s.factor_count(), 7);
    }

    #[test]
    fn shape_examples() {
        assert_eq!(
            shape(&poly(11, &[9, 7, 1, 0, 0, 1])).unwrap().to_string(),
            "2^2*1"
        );
        assert_eq!(shape(&poly(11, &[3, 1])).unwrap().to_string(), "1");
        assert_eq!(shape(&poly(11, &[1, 2, 1])), Err(Error::NotSquarefree));
    }

    #[test]
    fn edf_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let f = poly(5, &[1, 0, 1]);
        assert_eq!(
            edf(&f, 1, &mut rng).unwrap(),
            vec![poly(5, &[2, 1]), poly(5, &[3, 1])]
        );
        let g = poly(5, &[2, 0, 1]);
        assert_eq!(edf(&g, 2, &mut rng).unwrap(), vec![g]);
    }

    #[test]
    fn edf_characteristic_two() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        // the two irreducible cubics over F_2
        let c1 = poly(2, &[1, 1, 0, 1]);
        let c2 = poly(2, &[1, 0, 1, 1]);
        let g = &c1 * &c2;
        let got = edf(&g, 3, &mut rng).unwrap();
        assert_eq!(got, vec![c1, c2]);
    }

    #[test]
    fn full_factorization_multiplies_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = poly(11, &[9, 7, 1, 0, 0, 1]);
        let factors = factor_squarefree(&f, &mut rng).unwrap();
        assert_eq!(factors.len(), 3);
        let prod = factors.iter().fold(UPoly::one(f.ctx()), |acc, g| &acc * g);
        assert_eq!(prod, f);
    }
}
