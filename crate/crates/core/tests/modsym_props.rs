use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use plfun::modsym::{monomial_x, rational_newforms, Cusp, EigenSymbol, ManinSymbolSpace};
use plfun_oracles::eta;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

#[test]
fn hecke_operators_commute_at_several_levels() {
    for (n, k) in [(11u64, 2u32), (17, 2), (15, 2), (1, 12), (7, 4)] {
        let s = ManinSymbolSpace::new(n, k).unwrap();
        let ts: Vec<_> = PRIMES.iter().map(|&p| s.hecke_operator(p).unwrap()).collect();
        for a in &ts {
            for b in &ts {
                assert_eq!(a.mul(b), b.mul(a), "level {n} weight {k}");
            }
        }
    }
}

#[test]
fn weight_two_eigenvalues_respect_the_ramanujan_bound() {
    for n in [11u64, 14, 15, 17, 19, 37] {
        let s = ManinSymbolSpace::new(n, 2).unwrap();
        for sign in [1i8, -1] {
            for f in rational_newforms(&s, sign, 13).unwrap() {
                for (p, a) in f.aq {
                    if n % p != 0 {
                        assert!(a * a <= 4 * p as i64, "level {n}: a_{p} = {a}");
                    }
                }
            }
        }
    }
}

#[test]
fn eleven_matches_eta_product_beyond_the_hecke_bound() {
    let s = ManinSymbolSpace::new(11, 2).unwrap();
    let mut phi = EigenSymbol::from_space(&s, 1, None).unwrap();
    let a = eta::level_eleven(60);
    for p in [17u64, 19, 23, 29, 31, 37, 41, 43, 47] {
        assert_eq!(phi.add_eigenvalue(&s, p).unwrap() as i128, a[p as usize], "a_{p}");
    }
}

#[test]
fn fricke_eigenvalue_is_a_sign() {
    let s = ManinSymbolSpace::new(11, 2).unwrap();
    let w = s.fricke();
    for sign in [1i8, -1] {
        let f = rational_newforms(&s, sign, 13).unwrap().remove(0);
        let img = w.vec_mul(&f.functional);
        let j = f.functional.iter().position(|x| !x.is_zero()).unwrap();
        let e = &img[j] / &f.functional[j];
        assert!(img.iter().zip(&f.functional).all(|(x, y)| *x == &e * y));
        assert!((&e * &e).is_one());
        // w_N = -a_N for weight 2
        let a11 = f.aq.iter().find(|t| t.0 == 11).unwrap().1;
        assert_eq!(e, q(-a11));
    }
}

fn symbol(n: u64, k: u32, sign: i8) -> (ManinSymbolSpace, EigenSymbol) {
    let s = ManinSymbolSpace::new(n, k).unwrap();
    let phi = EigenSymbol::from_space(&s, sign, None).unwrap();
    (s, phi)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lambda_is_periodic(a in -400i64..400, m in 1u64..300, d in 0usize..=2, sign in prop::sample::select(vec![1i8, -1])) {
        let (_, phi) = symbol(7, 4, sign);
        let lhs = phi.lambda_monomial(d, a, m).unwrap();
        let rhs = phi.lambda_monomial(d, a + m as i64, m).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn two_path_reductions_agree(num in -500i64..500, den in 1i64..500) {
        let (s, phi) = symbol(11, 2, 1);
        let f = rational_newforms(&s, 1, 13).unwrap().remove(0);
        let poly = monomial_x(0, 0);
        let r = Cusp::new(BigInt::from(num), BigInt::from(den));
        let direct = phi.eval_path(&poly, &r);
        let path = s.path(&poly, &Cusp::infinity(), &r);
        let coords = s.reduce(&path);
        let via_basis: BigRational = coords.iter().zip(&f.functional).map(|(x, y)| x * y).sum();
        // the symbol is the basis functional times a fixed normalization
        let c = phi.normalization.clone();
        prop_assert_eq!(direct, via_basis * c);
    }

    #[test]
    fn sign_symmetry(a in -200i64..200, m in 1u64..200) {
        for sign in [1i8, -1] {
            let (_, phi) = symbol(11, 2, sign);
            let x = phi.lambda_monomial(0, a, m).unwrap();
            let y = phi.lambda_monomial(0, -a, m).unwrap();
            prop_assert_eq!(x, y * q(sign as i64));
        }
    }
}

#[test]
fn plus_values_have_small_denominators() {
    // torsion of order 5 and the projection to the plus part bound the denominators by 10
    let (_, phi) = symbol(11, 2, 1);
    assert_eq!(phi.lambda_monomial(0, 0, 1).unwrap(), BigRational::new(1.into(), 5.into()));
    let vals: Vec<BigRational> = (1..40u64)
        .flat_map(|m| (0..m as i64).map(move |a| (a, m)))
        .map(|(a, m)| phi.lambda_monomial(0, a, m).unwrap())
        .collect();
    assert!(vals.iter().all(|v| (v * q(10)).is_integer()));
    assert!(vals.iter().any(|v| !(v * q(5)).is_integer()));
}
