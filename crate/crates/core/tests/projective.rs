use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hyperquad::factor::factor_squarefree;
use hyperquad::fields::{Field, FpElem, PrimeField};
use hyperquad::projective::{find_projective, h_poly, mobius, order_power, ProjParams};
use hyperquad::table::make_table;
use hyperquad::upoly::{x_pow_mod, UPoly};

fn random_params(rng: &mut ChaCha8Rng, k: &PrimeField, t: u32) -> ProjParams<FpElem> {
    loop {
        let mut e = || k.elem(rng.random_range(0..k.p()) as i64);
        if let Ok(h) = ProjParams::new(e(), e(), e(), e(), t) {
            return h;
        }
    }
}

/// Monic cubics with no root in F_p.
fn irreducible_cubics(k: &PrimeField) -> Vec<UPoly<FpElem>> {
    let p = k.p() as i64;
    let mut out = Vec::new();
    for c0 in 0..p {
        for c1 in 0..p {
            for c2 in 0..p {
                let f = UPoly::from_i64s(k, &[c0, c1, c2, 1]);
                if k.elements().all(|x| !f.eval(&x).is_zero()) {
                    out.push(f);
                }
            }
        }
    }
    out
}

#[test]
fn every_irreducible_cubic_has_order_one_h() {
    for p in [5, 7, 11] {
        let k = PrimeField::new(p).unwrap();
        let cubics = irreducible_cubics(&k);
        // (p^3 - p) / 3 monic irreducible cubics
        assert_eq!(cubics.len() as u64, (p * p * p - p) / 3);
        for f in cubics {
            let res = find_projective(&f, 1).unwrap();
            assert!(!res.is_empty(), "p = {p}: {f}");
            for c in &res.candidates {
                assert!(!c.params.is_zero());
                assert!(
                    !c.degenerate,
                    "p = {p}: {f} gives degenerate {:?}",
                    c.params
                );
                assert!(h_poly(&c.params).unwrap().rem(&f).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn every_candidate_is_divisible() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..300 {
        let k = PrimeField::new([3, 5, 7, 11, 13][rng.random_range(0..5)]).unwrap();
        let d = rng.random_range(2..=6);
        let c: Vec<i64> = (0..d)
            .map(|_| rng.random_range(0..k.p() as i64))
            .chain([1])
            .collect();
        let f: UPoly<FpElem> = UPoly::from_i64s(&k, &c);
        for t in 0..=2 {
            for cand in find_projective(&f, t).unwrap().candidates {
                let rem = h_poly(&cand.params).unwrap().rem(&f).unwrap();
                assert!(rem.is_zero(), "{f} at t = {t}: {:?}", cand.params);
            }
        }
    }
}

#[test]
fn mobius_determinant_matches() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..100 {
        let k = PrimeField::new([5, 7, 11, 13, 17][rng.random_range(0..5)]).unwrap();
        let h = random_params(&mut rng, &k, 1);
        assert_eq!(mobius(&h).det(), h.u * h.z - h.v * h.w);
        let g = random_params(&mut rng, &k, 1);
        assert_eq!(mobius(&h).compose(&mobius(&g)).det(), h.det() * g.det());
    }
}

#[test]
fn order_power_determinant_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let k = PrimeField::new([5, 7, 11, 13][rng.random_range(0..4)]).unwrap();
        let h = random_params(&mut rng, &k, 1);
        let r = h.r().unwrap();
        for m in 1..=3 {
            let composed = order_power(&h, m).unwrap();
            assert_eq!(composed.t, m);
            let want = (0..m).fold(k.elem(1), |acc, j| acc * h.det().pow(r.pow(j)));
            assert!(!want.is_zero());
            let got = composed.det();
            assert_eq!(got, want, "{h:?}, m = {m}");
        }
    }
}

#[test]
fn order_two_composition_on_table_factors() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut checked = 0;
    for p in [11, 17] {
        let k = PrimeField::new(p).unwrap();
        for row in make_table(k, 1).unwrap() {
            let rec = row.h.unwrap();
            let e = |x: u64| k.elem(x as i64);
            let h = ProjParams::new(e(rec.u), e(rec.v), e(rec.w), e(rec.z), 1).unwrap();
            let h2 = order_power(&h, 2).unwrap();
            let hp = h_poly(&h).unwrap().monic().unwrap();
            for q in factor_squarefree(&hp, &mut rng).unwrap() {
                if q.degree().unwrap() > 2 {
                    continue;
                }
                let xr = x_pow_mod(p, &q).unwrap();
                let guard = &xr.scale(&h.u) + &UPoly::constant(h.w);
                if guard.rem(&q).unwrap().is_zero() {
                    continue;
                }
                let reduced = UPoly::new(&k, vec![h2.z, h2.v + h2.w, h2.u]);
                assert!(
                    reduced.rem(&q).unwrap().is_zero(),
                    "p = {p}, H = {rec:?}, q = {q}"
                );
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn small_tables_are_unitary_and_symmetric() {
    for p in [11, 17] {
        for row in make_table(PrimeField::new(p).unwrap(), 1).unwrap() {
            let h = row.h.expect("every row has H");
            assert_eq!(h.u, 1);
            assert_eq!(h.v, h.w);
        }
    }
}
