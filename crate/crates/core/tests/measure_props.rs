use num_bigint::BigInt;
use proptest::prelude::*;

use plfun::measure::{
    amice_transform, certify_bounded, check_additivity, convolve, riemann_integrate, Domain, FiniteLevelDistribution,
};
use plfun::PadicNumber;

const PREC: i64 = 12;

fn weights(p: u64, len: usize) -> impl Strategy<Value = Vec<PadicNumber>> {
    prop::collection::vec(-2000i64..2000, len).prop_map(move |v| v.into_iter().map(|x| PadicNumber::from_int(p, x, PREC)).collect())
}

fn combination(p: u64, m: u32, support: u64) -> impl Strategy<Value = FiniteLevelDistribution<PadicNumber>> {
    weights(p, support as usize).prop_map(move |w| {
        let pts: Vec<(u64, PadicNumber)> = w.into_iter().enumerate().map(|(i, x)| (i as u64, x)).collect();
        FiniteLevelDistribution::dirac_combination(p, m, &pts, PREC).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dirac_combinations_and_restrictions_are_additive(mu in combination(5, 3, 30)) {
        prop_assert!(check_additivity(&mu).is_empty());
        prop_assert!(check_additivity(&mu.restrict_to_units().unwrap()).is_empty());
        prop_assert!(certify_bounded(&mu).bounded);
    }

    #[test]
    fn amice_transform_is_an_isometry(mu in combination(5, 3, 20)) {
        let f = amice_transform(&mu, 20).unwrap();
        let cert = certify_bounded(&mu);
        match f.min_valuation() {
            Some(v) => prop_assert_eq!(-v, cert.bound_exponent),
            None => prop_assert!(mu.level(3).unwrap().values().all(|x| x.is_zero())),
        }
    }

    #[test]
    fn convolution_commutes(a in combination(3, 4, 20), b in combination(3, 4, 20)) {
        let ab = convolve(&a, &b).unwrap();
        let ba = convolve(&b, &a).unwrap();
        prop_assert!(ab.values_equal(&ba));
        prop_assert!(check_additivity(&ab).is_empty());
    }

    #[test]
    fn convolution_associates(a in combination(3, 3, 9), b in combination(3, 3, 9), c in combination(3, 3, 9)) {
        let l = convolve(&convolve(&a, &b).unwrap(), &c).unwrap();
        let r = convolve(&a, &convolve(&b, &c).unwrap()).unwrap();
        prop_assert!(l.values_equal(&r));
    }

    #[test]
    fn locally_constant_sums_stabilize(mu in combination(5, 3, 60), f in weights(5, 5), c in 0u32..=1) {
        let modulus = 5u64.pow(c);
        let g = |x: u64| f[(x % modulus) as usize].clone();
        let sums = riemann_integrate(&mu, g, 3).unwrap();
        let (_, last) = sums.last().unwrap().clone();
        for (l, v) in &sums {
            if *l >= c {
                prop_assert!((v - &last).is_zero(), "level {} differs", l);
            }
        }
    }
}

#[test]
fn dirac_moments_are_binomials() {
    let one = PadicNumber::one(7, 10);
    for a in 0..20u64 {
        let d = FiniteLevelDistribution::dirac(7, Domain::Zp, 2, &BigInt::from(a), &one).unwrap();
        let f = amice_transform(&d, 8).unwrap();
        for n in 0..8u64 {
            let want = num_integer::binomial(a, n) as i64;
            assert!((f.coeff(n as usize).unwrap() - &PadicNumber::from_int(7, want, 10)).is_zero());
        }
    }
}
