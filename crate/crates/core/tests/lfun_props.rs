use proptest::prelude::*;

use plfun::character::DirichletCharacter;
use plfun::lfun::{
    build_modform_measure, hensel_root, interpolation_value, kubota_leopoldt, kummer_congruence, lp_evaluate,
    EigenTable, PadicLFunction, PeriodValues,
};
use plfun::modsym::{EigenSymbol, ManinSymbolSpace};
use plfun::PadicNumber;
use plfun_oracles::bernoulli;

fn eleven(p: u64, levels: u32) -> (EigenSymbol, EigenSymbol, PadicLFunction) {
    let space = ManinSymbolSpace::new(11, 2).unwrap();
    let mut plus = EigenSymbol::from_space(&space, 1, None).unwrap();
    let mut minus = EigenSymbol::from_space(&space, -1, None).unwrap();
    let ap = plus.add_eigenvalue(&space, p).unwrap();
    minus.add_eigenvalue(&space, p).unwrap();
    let root = hensel_root(ap, 1, 2, p, 20).unwrap();
    let l = PadicLFunction::new(&plus, Some(&minus as &dyn PeriodValues), &root, levels, 20).unwrap();
    (plus, minus, l)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn zeta_matches_bernoulli_values(p in prop::sample::select(vec![3u64, 5, 7, 11]), k in 1u32..30) {
        let z = kubota_leopoldt(p, k, 8).unwrap();
        let exact = bernoulli::zeta_value(p, k);
        let oracle = PadicNumber::from_rational(p, &exact, z.value.abs_precision());
        prop_assert!((&oracle - &z.value).is_zero());
        prop_assert_eq!(z.pole_adjacent, (k as u64 + 1) % (p - 1) == 0);
    }

    #[test]
    fn kummer_congruences(p in prop::sample::select(vec![5u64, 7]), k in 1u32..12, j in 1u32..=10) {
        prop_assume!((k as u64 + 1) % (p - 1) != 0);
        let k2 = k + j * (p as u32 - 1);
        let c = kummer_congruence(p, k, k2).unwrap();
        prop_assert!(c.agree);
        let d = bernoulli::zeta_value(p, k) - bernoulli::zeta_value(p, k2);
        prop_assert!(PadicNumber::from_rational(p, &d, c.t as i64 + 1).is_zero());
    }
}

#[test]
fn trivial_branch_of_the_series_is_the_trivial_value() {
    for p in [3u64, 7] {
        let (_, _, l) = eleven(p, 3);
        let fam = l.series_family((p * p) as usize).unwrap();
        let at_trivial = fam.branch(0).unwrap().eval_at_root(0, 0);
        let chi = DirichletCharacter::trivial(p, 1, 20).unwrap();
        let lp = lp_evaluate(&l, &chi, 0).unwrap();
        assert!(at_trivial.congruent(&lp), "p = {p}");
    }
}

#[test]
fn interpolation_at_five_for_conductor_up_to_125() {
    let (plus, minus, l) = eleven(5, 3);
    for chi in DirichletCharacter::all(5, 3, 20).unwrap().into_iter().step_by(3) {
        let lhs = lp_evaluate(&l, &chi, 0).unwrap();
        let rhs = interpolation_value(&plus, Some(&minus as &dyn PeriodValues), &l.root, &chi).unwrap();
        assert!(lhs.congruent(&rhs), "{chi:?}");
    }
}

#[test]
fn exported_tables_rebuild_the_same_measure() {
    let (plus, _, l) = eleven(3, 3);
    let table = EigenTable::from_symbol(&plus, &EigenTable::measure_moduli(3, 3)).unwrap();
    let m = build_modform_measure(&table, &l.root, 3, 20).unwrap();
    for (a, b) in m.moments.iter().zip(&l.plus.moments) {
        assert!(a.values_equal(b));
    }
    assert!(m.additivity_violations().is_empty());
}

#[test]
fn weight_four_measure_is_additive_in_every_degree() {
    let space = ManinSymbolSpace::new(7, 4).unwrap();
    let mut plus = EigenSymbol::from_space(&space, 1, None).unwrap();
    let ap = plus.add_eigenvalue(&space, 3).unwrap();
    let root = hensel_root(ap, 1, 4, 3, 20).unwrap();
    let m = build_modform_measure(&plus, &root, 3, 20).unwrap();
    assert_eq!(m.moments.len(), 3);
    assert!(m.additivity_violations().is_empty());
    assert!(m.certificates().iter().all(|c| c.bounded));
}
