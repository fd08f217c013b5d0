//! Randomized algebraic identities.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hyperquad::factor::{factor_squarefree, is_irreducible, squarefree};
use hyperquad::fields::{
    cube_root, Differential, Field, FpElem, PrimeField, RatFunc, SymRat, SymVars,
};
use hyperquad::parse::{parse_expr, parse_poly};
use hyperquad::riccati::riccati_numerator;
use hyperquad::upoly::{x_pow_mod, UPoly};

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn fp_poly(p: u64, coeffs: &[i64]) -> UPoly<FpElem> {
    UPoly::from_i64s(&PrimeField::new(p).unwrap(), coeffs)
}

fn monic(p: u64, coeffs: &[i64]) -> UPoly<FpElem> {
    let mut c = coeffs.to_vec();
    c.push(1);
    fp_poly(p, &c)
}

fn ratfunc(p: u64, num: &[i64], den: &[i64]) -> RatFunc {
    RatFunc::new(fp_poly(p, num), monic(p, den)).unwrap()
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(&PRIMES[..])
}

fn coeffs(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-20i64..20, 0..=max_len)
}

fn ratfunc_strategy() -> impl Strategy<Value = (u64, Vec<i64>, Vec<i64>, Vec<i64>, Vec<i64>)> {
    (prime(), coeffs(4), coeffs(2), coeffs(4), coeffs(2))
}

fn sym_strategy() -> impl Strategy<Value = String> {
    let atom = prop::sample::select(vec!["a", "b", "c", "2", "-3", "1/2"]);
    let term = prop::collection::vec(atom, 1..=3).prop_map(|v| v.join("*"));
    let sum = prop::collection::vec(term, 1..=3).prop_map(|v| format!("({})", v.join("+")));
    (sum.clone(), prop::option::of(sum)).prop_map(|(n, d)| match d {
        Some(d) => format!("{n}/{d}"),
        None => n,
    })
}

proptest! {
    #[test]
    fn modpow_matches_repeated_multiplication(p in prime(), m in coeffs(4), base in coeffs(6), e in 0u64..=1024) {
        let modulus = monic(p, &m);
        prop_assume!(modulus.degree().unwrap() >= 2);
        let b = fp_poly(p, &base);
        let mut naive = UPoly::one(modulus.ctx()).rem(&modulus).unwrap();
        for _ in 0..e {
            naive = naive.mul_mod(&b, &modulus).unwrap();
        }
        prop_assert_eq!(b.pow_mod(e, &modulus).unwrap(), naive);
    }

    #[test]
    fn x_pow_mod_splits_exponents(p in prime(), m in coeffs(5), e1 in 0u64..=1_000_000, e2 in 0u64..=1_000_000) {
        let modulus = monic(p, &m);
        prop_assume!(modulus.degree().unwrap() >= 2);
        let lhs = x_pow_mod(e1 + e2, &modulus).unwrap();
        let rhs = x_pow_mod(e1, &modulus).unwrap().mul_mod(&x_pow_mod(e2, &modulus).unwrap(), &modulus).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn divrem_round_trip(p in prime(), a in coeffs(8), b in coeffs(5)) {
        let (a, b) = (fp_poly(p, &a), fp_poly(p, &b));
        prop_assume!(!b.is_zero());
        let (q, r) = a.divrem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.degree().is_none_or(|d| d < b.degree().unwrap()));
    }

    #[test]
    fn ratfunc_derivation_rules((p, n1, d1, n2, d2) in ratfunc_strategy()) {
        let (x, y) = (ratfunc(p, &n1, &d1), ratfunc(p, &n2, &d2));
        let (dx, dy) = (x.derive().unwrap(), y.derive().unwrap());
        prop_assert_eq!((x.clone() * &y).derive().unwrap(), dx.clone() * &y + x.clone() * &dy);
        prop_assert_eq!((x + &y).derive().unwrap(), dx + dy);
    }

    #[test]
    fn symbolic_derivation_rules(x in sym_strategy(), y in sym_strategy()) {
        let vars = SymVars::standard();
        let parse = |s: &str| parse_expr::<SymRat>(s, &vars);
        let (Ok(x), Ok(y)) = (parse(&x), parse(&y)) else {
            // zero denominators are rejected; nothing to check
            return Ok(());
        };
        let (dx, dy) = (x.derive().unwrap(), y.derive().unwrap());
        prop_assert_eq!((x.clone() * &y).derive().unwrap(), dx.clone() * &y + x.clone() * &dy);
        prop_assert_eq!((x + &y).derive().unwrap(), dx + dy);
    }

    #[test]
    fn ratfunc_canonical_form((p, n1, d1, n2, d2) in ratfunc_strategy()) {
        let x = ratfunc(p, &n1, &d1);
        let again = RatFunc::new(x.num().clone(), x.den().clone()).unwrap();
        prop_assert_eq!(again.num(), x.num());
        prop_assert_eq!(again.den(), x.den());
        let y = ratfunc(p, &n2, &d2);
        let cross = (x.num() * y.den()) == (y.num() * x.den());
        prop_assert_eq!(x == y, cross);
    }

    #[test]
    fn fp_poly_print_parse_round_trip(p in prime(), c in coeffs(7)) {
        let f = fp_poly(p, &c);
        let text = f.to_string();
        prop_assert_eq!(parse_poly::<FpElem>(&text, f.ctx()).unwrap(), f);
    }

    #[test]
    fn ratfunc_poly_print_parse_round_trip(p in prime(), parts in prop::collection::vec((coeffs(3), coeffs(2)), 1..4)) {
        let k = PrimeField::new(p).unwrap();
        let f = UPoly::new(&k, parts.iter().map(|(n, d)| ratfunc(p, n, d)).collect());
        prop_assert_eq!(parse_poly::<RatFunc>(&f.to_string(), &k).unwrap(), f);
    }

    #[test]
    fn symbolic_print_parse_round_trip(x in sym_strategy()) {
        let vars = SymVars::standard();
        if let Ok(x) = parse_expr::<SymRat>(&x, &vars) {
            let back = parse_expr::<SymRat>(&x.to_string(), &vars).unwrap();
            prop_assert_eq!(back.to_string(), x.to_string());
        }
    }

    #[test]
    fn factors_partition_input(p in prime(), c in coeffs(7), seed in any::<u64>()) {
        let f = monic(p, &c);
        prop_assume!(f.degree().unwrap() >= 1 && squarefree(&f).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let factors = factor_squarefree(&f, &mut rng).unwrap();
        let prod = factors.iter().fold(UPoly::one(f.ctx()), |acc, g| &acc * g);
        prop_assert_eq!(prod, f);
        for g in &factors {
            prop_assert!(g.is_monic() && is_irreducible(g).unwrap());
        }
    }

    #[test]
    fn quartic_family_cubic_term_vanishes(
        p in prop::sample::select(vec![5u64, 7, 11, 13]),
        (na, da, nb, db) in (coeffs(3), coeffs(2), coeffs(3), coeffs(2)),
    ) {
        let k = PrimeField::new(p).unwrap();
        let (a, b) = (ratfunc(p, &na, &da), ratfunc(p, &nb, &db));
        let c = -(a.clone() * &a) * &RatFunc::from_i64(&k, 12).inv().unwrap();
        let poly = UPoly::new(&k, vec![c, b, a, RatFunc::zero(&k), RatFunc::one(&k)]);
        match riccati_numerator(&poly) {
            Ok(out) => prop_assert!(out.qr.coeff(3).is_zero(), "b3 = {}", out.qr.coeff(3)),
            Err(hyperquad::Error::NotSquarefree) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn constant_coefficients_give_zero_numerator(p in prime(), c in coeffs(4)) {
        let k = PrimeField::new(p).unwrap();
        let base = monic(p, &c);
        prop_assume!(base.degree().unwrap() >= 2);
        let poly = UPoly::new(&k, (0..=base.degree().unwrap()).map(|i| RatFunc::from_poly(UPoly::constant(base.coeff(i)))).collect());
        match riccati_numerator(&poly) {
            Ok(out) => prop_assert!(out.qr.is_zero()),
            Err(hyperquad::Error::NotSquarefree) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}

#[test]
fn cube_root_is_inverse_of_cubing() {
    for p in [11, 17, 23] {
        let k = PrimeField::new(p).unwrap();
        for x in k.elements() {
            assert_eq!(cube_root(x).unwrap().pow(3), x);
            assert_eq!(cube_root(x.pow(3)).unwrap(), x);
        }
    }
}
