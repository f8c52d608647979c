use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use plfun::character::{gauss_sum, gauss_sum_inverse, DirichletCharacter};
use plfun::cyclotomic::CyclotomicPadic;
use plfun::padic::{padic_div, vp_int};
use plfun::{teichmuller, PadicNumber};

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7, 11])
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-100_000i64..100_000, 1i64..2000).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn raising_precision_does_not_change_digits(p in prime(), x in rational(), y in rational(), n in 4i64..16) {
        let lo = |q: &BigRational| PadicNumber::from_rational(p, q, n);
        let hi = |q: &BigRational| PadicNumber::from_rational(p, q, n + 5);
        let (xl, yl, xh, yh) = (lo(&x), lo(&y), hi(&x), hi(&y));
        prop_assert!((&(&xl + &yl) - &(&xh + &yh)).is_zero());
        prop_assert!((&(&xl * &yl) - &(&xh * &yh)).is_zero());
        if !yl.is_zero() {
            let dl = padic_div(&xl, &yl).unwrap();
            let dh = padic_div(&xh, &yh).unwrap();
            prop_assert!((&dl - &dh).is_zero());
            prop_assert!(dl.abs_precision() <= dh.abs_precision());
        }
    }

    #[test]
    fn ring_laws(p in prime(), a in rational(), b in rational(), c in rational()) {
        let f = |q: &BigRational| PadicNumber::from_rational(p, q, 20);
        let (a, b, c) = (f(&a), f(&b), f(&c));
        prop_assert!((&(&(&a * &b) * &c) - &(&a * &(&b * &c))).is_zero());
        prop_assert!((&(&(&a + &b) + &c) - &(&a + &(&b + &c))).is_zero());
        prop_assert!((&(&a * &(&b + &c)) - &(&(&a * &b) + &(&a * &c))).is_zero());
        prop_assert!((&(&a * &b) - &(&b * &a)).is_zero());
    }

    #[test]
    fn lifted_value_is_the_rational(p in prime(), x in rational()) {
        let v = PadicNumber::from_rational(p, &x, 30);
        if !v.is_zero() {
            let expect = vp_int(p, x.numer()) as i64 - vp_int(p, x.denom()) as i64;
            prop_assert_eq!(v.valuation(), Some(expect));
        }
        let back = PadicNumber::from_rational(p, &v.lift(), 30);
        prop_assert!((&back - &v).is_zero());
    }
}

#[test]
fn teichmuller_has_order_dividing_p_minus_one() {
    for p in [3u64, 5, 7] {
        for a in 1..p as i64 {
            let w = teichmuller(p, a, 20).unwrap();
            let one = PadicNumber::one(p, 20);
            assert_zero(&(&w.pow(p as i64 - 1).unwrap() - &one));
            assert_eq!(w.residue(1).unwrap(), BigInt::from(a));
        }
    }
}

fn assert_zero(x: &PadicNumber) {
    assert!(x.is_zero(), "{x}");
}

#[test]
fn gauss_sum_norms() {
    for (p, n) in [(5u64, 1u32), (5, 2), (7, 1)] {
        for chi in DirichletCharacter::all(p, n, 12).unwrap() {
            let g = gauss_sum(&chi);
            let gb = gauss_sum(&chi.conjugate());
            let prod = &g * &gb;
            if chi.is_primitive() {
                let want = PadicNumber::from_int(p, chi.parity() * p.pow(n) as i64, 12);
                assert!(prod.congruent(&CyclotomicPadic::from_padic(&want).lift_to(prod.level())), "{chi:?}");
            } else if n == 1 {
                // trivial character modulo p: the sum of primitive p-th roots
                let want = CyclotomicPadic::from_padic(&PadicNumber::from_int(p, -1, 12));
                assert!(g.congruent(&want.lift_to(g.level())));
            } else {
                assert!(g.is_zero(), "{chi:?}");
            }
        }
    }
}

#[test]
fn gauss_sum_inverse_at_high_conductor() {
    for chi in DirichletCharacter::all(5, 3, 16).unwrap().into_iter().filter(|c| c.is_primitive()).step_by(7) {
        let g = gauss_sum(&chi);
        let prod = &g * &gauss_sum_inverse(&chi).unwrap();
        let one = CyclotomicPadic::from_padic(&PadicNumber::from_int(5, 1, 12)).lift_to(prod.level());
        assert!(prod.congruent(&one), "{chi:?}");
    }
    assert!(gauss_sum_inverse(&DirichletCharacter::trivial(5, 2, 12).unwrap()).is_err());
}
