//! Distributions built from period providers on GL4 and GL3 x GL2, the
//! distribution-relation checker, and the symmetric-cube quotient.
//!
//! Providers are deterministic functions from integer data to p-adic
//! values.  No automorphic periods are computed here; shipped providers are
//! synthetic, tabulated from files, or derived from a bounded measure.

use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CyclotomicPadic;
use crate::error::{Error, Result};
use crate::iwasawa::{series_quotient, zero_set, IwasawaSeries, SeriesFamily, WildZero};
use crate::measure::{check_additivity, Domain, FiniteLevelDistribution, Violation};
use crate::padic::{check_prime, PadicNumber, EXACT_ZERO_PREC};
use crate::polygon::Q64;
use crate::series::PowerSeries;

/// Deepest level any provider is asked about.
pub const MAX_PROVIDER_LEVEL: u32 = 12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Gl4Metadata {
    pub p: u64,
    /// `v_p(nu_1(p)), v_p(nu_2(p))`.
    pub nu_valuations: [Q64; 2],
    /// `lambda = p^2 nu_1(p) nu_2(p)`.
    pub lambda: PadicNumber,
}

impl Gl4Metadata {
    /// `kappa = p^{-4} lambda`.
    pub fn kappa(&self) -> PadicNumber {
        self.lambda.shift(-4)
    }

    pub fn lambda_is_unit(&self) -> bool {
        self.lambda.is_unit()
    }

    /// The stored `lambda` has the valuation the `nu` data imply.
    pub fn is_consistent(&self) -> bool {
        let v = Q64::from_integer(2) + self.nu_valuations[0] + self.nu_valuations[1];
        self.lambda.valuation().map(Q64::from_integer) == Some(v)
    }
}

/// `P(diag(a, 1), p^m)`.
pub trait Gl4PeriodProvider: Send + Sync {
    fn metadata(&self) -> &Gl4Metadata;
    fn eval(&self, a: u64, m: u32) -> Result<PadicNumber>;
}

/// Output of a provider-built distribution, with its additivity verdict.
#[derive(Clone, Debug)]
pub struct DistributionReport {
    pub measure: FiniteLevelDistribution<PadicNumber>,
    pub violations: Vec<Violation<PadicNumber>>,
    pub additive: bool,
    pub kappa: PadicNumber,
}

fn report(measure: FiniteLevelDistribution<PadicNumber>, kappa: PadicNumber) -> DistributionReport {
    let violations = check_additivity(&measure);
    DistributionReport { additive: violations.is_empty(), measure, violations, kappa }
}

fn check_levels(levels: u32) -> Result<()> {
    if levels == 0 || levels > MAX_PROVIDER_LEVEL {
        return Err(Error::Domain(format!("levels must be in 1..={MAX_PROVIDER_LEVEL}")));
    }
    Ok(())
}

/// `mu(a + p^m) = kappa^{-m} P(diag(a, 1), p^m)` on `Z_p^×`, levels `1..=levels`.
pub fn gl4_distribution(provider: &dyn Gl4PeriodProvider, levels: u32) -> Result<DistributionReport> {
    check_levels(levels)?;
    let meta = provider.metadata();
    let kinv = meta.kappa().inv()?;
    let pows: Vec<PadicNumber> = (0..=levels as i64).map(|m| kinv.pow(m)).collect::<Result<_>>()?;
    let mu = FiniteLevelDistribution::from_fn(meta.p, Domain::Units, levels, |m, a| {
        Ok(&pows[m as usize] * &provider.eval(a, m)?)
    })?;
    Ok(report(mu, meta.kappa()))
}

/// `P(diag(a, 1), p^m) = kappa^m nu(a + p^m)` for a stored measure `nu`.
#[derive(Clone, Debug)]
pub struct Gl4FromMeasure {
    pub meta: Gl4Metadata,
    pub nu: FiniteLevelDistribution<PadicNumber>,
}

impl Gl4PeriodProvider for Gl4FromMeasure {
    fn metadata(&self) -> &Gl4Metadata {
        &self.meta
    }
    fn eval(&self, a: u64, m: u32) -> Result<PadicNumber> {
        let v = self.nu.get(m, a as i64)?;
        Ok(&self.meta.kappa().pow(m as i64)? * v)
    }
}

/// `P(diag(a, 1), p^m) = kappa^m g(a mod p)`.
#[derive(Clone, Debug)]
pub struct Gl4Pattern {
    pub meta: Gl4Metadata,
    pub g: Vec<PadicNumber>,
}

impl Gl4PeriodProvider for Gl4Pattern {
    fn metadata(&self) -> &Gl4Metadata {
        &self.meta
    }
    fn eval(&self, a: u64, m: u32) -> Result<PadicNumber> {
        let p = self.meta.p;
        let g = self.g.get((a % p) as usize).ok_or_else(|| Error::Provider("pattern shorter than p".into()))?;
        Ok(&self.meta.kappa().pow(m as i64)? * g)
    }
}

/// Precomputed values keyed by `(m, a mod p^m)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Gl4Table {
    pub meta: Gl4Metadata,
    pub values: BTreeMap<(u32, u64), PadicNumber>,
}

impl Gl4PeriodProvider for Gl4Table {
    fn metadata(&self) -> &Gl4Metadata {
        &self.meta
    }
    fn eval(&self, a: u64, m: u32) -> Result<PadicNumber> {
        let key = (m, a % self.meta.p.pow(m));
        self.values.get(&key).cloned().ok_or_else(|| Error::Provider(format!("no value at m={m}, a={}", key.1)))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Gl32Metadata {
    pub p: u64,
    /// GL3 Hecke data `lambda, mu`.
    pub lambda: PadicNumber,
    pub mu: PadicNumber,
    /// GL2 unit root.
    pub alpha: PadicNumber,
    pub eta: PadicNumber,
    /// Override for the measure normalization.
    pub kappa: Option<PadicNumber>,
}

impl Gl32Metadata {
    /// `lambda^2 mu alpha eta p^{-3}`, the factor in the distribution relation.
    pub fn relation_constant(&self) -> PadicNumber {
        (&(&(&(&self.lambda * &self.lambda) * &self.mu) * &self.alpha) * &self.eta).shift(-3)
    }

    /// Defaults to `relation_constant / p`, the value for which the relation
    /// makes `gl32_measure` additive when the provider ignores the `j` slot.
    pub fn kappa(&self) -> PadicNumber {
        self.kappa.clone().unwrap_or_else(|| self.relation_constant().shift(-1))
    }

    pub fn is_ordinary(&self) -> bool {
        self.lambda.is_unit() && self.alpha.is_unit()
    }
}

/// `P(i, j, y, p^m)`.
pub trait Gl32PeriodProvider: Send + Sync {
    fn metadata(&self) -> &Gl32Metadata;
    fn eval(&self, i: i64, j: i64, y: i64, m: u32) -> Result<PadicNumber>;
}

/// Which index the middle slot of the relation runs over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum SlotConvention {
    /// `P(i + af, j + bf, y + cf, fp)`.
    #[default]
    Independent,
    /// `P(i + af, j + af, y + cf, fp)`, the middle slot tied to the first.
    Tied,
}

/// `sum_{a,b,c < p} P(i+af, j+bf, y+cf, fp) - lambda^2 mu alpha eta p^{-3} P(i,j,y,f)`
/// with `f = p^m`.
pub fn gl32_distribution_relation_check(
    provider: &dyn Gl32PeriodProvider,
    i: i64,
    j: i64,
    y: i64,
    m: u32,
    conv: SlotConvention,
) -> Result<PadicNumber> {
    let meta = provider.metadata();
    let p = meta.p as i64;
    let f = p.pow(m);
    let mut lhs = PadicNumber::zero(meta.p, EXACT_ZERO_PREC);
    for a in 0..p {
        for b in 0..p {
            let jb = match conv {
                SlotConvention::Independent => j + b * f,
                SlotConvention::Tied => j + a * f,
            };
            for c in 0..p {
                lhs = &lhs + &provider.eval(i + a * f, jb, y + c * f, m + 1)?;
            }
        }
    }
    let rhs = &meta.relation_constant() * &provider.eval(i, j, y, m)?;
    Ok(&lhs - &rhs)
}

/// Every node `(i, j, y)` modulo `p^m` for `m < levels`; returns the nodes
/// with nonzero residual.
pub fn gl32_relation_sweep(
    provider: &dyn Gl32PeriodProvider,
    levels: u32,
    conv: SlotConvention,
) -> Result<Vec<((i64, i64, i64, u32), PadicNumber)>> {
    check_levels(levels)?;
    let p = provider.metadata().p as i64;
    let mut bad = Vec::new();
    for m in 0..levels {
        let f = p.pow(m);
        let nodes: Vec<(i64, i64, i64)> =
            (0..f).flat_map(|i| (0..f).flat_map(move |j| (0..f).map(move |y| (i, j, y)))).collect();
        let res: Vec<_> = nodes
            .par_iter()
            .map(|&(i, j, y)| gl32_distribution_relation_check(provider, i, j, y, m, conv).map(|r| ((i, j, y, m), r)))
            .collect::<Result<_>>()?;
        bad.extend(res.into_iter().filter(|(_, r)| !r.is_zero()));
    }
    Ok(bad)
}

/// `mu(i + p^m) = kappa^{-m} sum_{y mod p^m} P(i, 1, y, p^m)` on `Z_p^×`.
pub fn gl32_measure(provider: &dyn Gl32PeriodProvider, levels: u32) -> Result<DistributionReport> {
    check_levels(levels)?;
    let meta = provider.metadata();
    if !meta.is_ordinary() {
        return Err(Error::NotOrdinary("GL3 x GL2 data must have unit lambda and alpha".into()));
    }
    let kappa = meta.kappa();
    let kinv = kappa.inv()?;
    let pows: Vec<PadicNumber> = (0..=levels as i64).map(|m| kinv.pow(m)).collect::<Result<_>>()?;
    let mu = FiniteLevelDistribution::from_fn(meta.p, Domain::Units, levels, |m, i| {
        let f = meta.p.pow(m) as i64;
        let mut acc = PadicNumber::zero(meta.p, EXACT_ZERO_PREC);
        for y in 0..f {
            acc = &acc + &provider.eval(i as i64, 1, y, m)?;
        }
        Ok(&pows[m as usize] * &acc)
    })?;
    Ok(report(mu, kappa))
}

fn power_table(x: &PadicNumber) -> Vec<PadicNumber> {
    (0..=MAX_PROVIDER_LEVEL as i64 + 1).map(|m| x.pow(m).expect("nonnegative power")).collect()
}

fn power(table: &[PadicNumber], m: u32) -> Result<&PadicNumber> {
    table.get(m as usize).ok_or_else(|| Error::Provider(format!("level {m} beyond provider range")))
}

/// `P(i, j, y, p^m) = (C p^{-3})^m` with `C` the relation constant: the
/// `p^3` children each carry one extra factor `C p^{-3}`.
#[derive(Clone, Debug)]
pub struct Gl32Consistent {
    meta: Gl32Metadata,
    pows: Vec<PadicNumber>,
}

impl Gl32Consistent {
    pub fn new(meta: Gl32Metadata) -> Self {
        let pows = power_table(&meta.relation_constant().shift(-3));
        Gl32Consistent { meta, pows }
    }
}

impl Gl32PeriodProvider for Gl32Consistent {
    fn metadata(&self) -> &Gl32Metadata {
        &self.meta
    }
    fn eval(&self, _i: i64, _j: i64, _y: i64, m: u32) -> Result<PadicNumber> {
        power(&self.pows, m).cloned()
    }
}

/// `P(i, j, y, p^m) = kappa^m p^{-m} nu(i + p^m)` for a measure `nu`, so that
/// `gl32_measure` returns `nu`.
#[derive(Clone, Debug)]
pub struct Gl32FromMeasure {
    meta: Gl32Metadata,
    nu: FiniteLevelDistribution<PadicNumber>,
    pows: Vec<PadicNumber>,
}

impl Gl32FromMeasure {
    pub fn new(meta: Gl32Metadata, nu: FiniteLevelDistribution<PadicNumber>) -> Result<Self> {
        if nu.p() != meta.p {
            return Err(Error::PrimeMismatch(nu.p(), meta.p));
        }
        let pows = power_table(&meta.kappa().shift(-1));
        Ok(Gl32FromMeasure { meta, nu, pows })
    }
}

impl Gl32PeriodProvider for Gl32FromMeasure {
    fn metadata(&self) -> &Gl32Metadata {
        &self.meta
    }
    fn eval(&self, i: i64, _j: i64, _y: i64, m: u32) -> Result<PadicNumber> {
        if i % self.meta.p as i64 == 0 {
            return Ok(PadicNumber::zero(self.meta.p, EXACT_ZERO_PREC));
        }
        Ok(power(&self.pows, m)? * self.nu.get(m, i)?)
    }
}

/// Deterministic pseudo-random integer values, for negative controls.
#[derive(Clone, Debug)]
pub struct Gl32Noise {
    pub meta: Gl32Metadata,
    pub seed: u64,
    pub prec: i64,
}

impl Gl32PeriodProvider for Gl32Noise {
    fn metadata(&self) -> &Gl32Metadata {
        &self.meta
    }
    fn eval(&self, i: i64, j: i64, y: i64, m: u32) -> Result<PadicNumber> {
        let f = self.meta.p.pow(m) as i64;
        let mut h = std::collections::hash_map::DefaultHasher::new();
        (self.seed, i.rem_euclid(f), j.rem_euclid(f), y.rem_euclid(f), m).hash(&mut h);
        Ok(PadicNumber::from_int(self.meta.p, BigInt::from(h.finish() >> 1), self.prec))
    }
}

/// Precomputed values keyed by `(m, i, j, y)` with residues mod `p^m`.
#[derive(Clone, Debug, PartialEq)]
pub struct Gl32Table {
    pub meta: Gl32Metadata,
    pub values: BTreeMap<(u32, u64, u64, u64), PadicNumber>,
}

impl Gl32PeriodProvider for Gl32Table {
    fn metadata(&self) -> &Gl32Metadata {
        &self.meta
    }
    fn eval(&self, i: i64, j: i64, y: i64, m: u32) -> Result<PadicNumber> {
        let f = self.meta.p.pow(m) as i64;
        let key = (m, i.rem_euclid(f) as u64, j.rem_euclid(f) as u64, y.rem_euclid(f) as u64);
        self.values.get(&key).cloned().ok_or_else(|| Error::Provider(format!("no value at {key:?}")))
    }
}

/// A character `omega^t chi_u` of `Z_p^×` with `u = zeta_{p^level}^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchPoint {
    pub t: u32,
    pub zero: WildZero,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BranchQuotient {
    pub t: u32,
    pub quotient: PowerSeries,
    /// `G` does not divide `F` integrally on this branch.
    pub remainder: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymcubeReport {
    pub p: u64,
    pub branches: Vec<BranchQuotient>,
    /// Characters up to the conductor bound where `G` vanishes.
    pub zeros: Vec<BranchPoint>,
    /// A character where `G` does not vanish.
    pub witness: Option<BranchPoint>,
    pub integral: bool,
    /// Hypotheses taken on trust.
    pub assumptions: Vec<String>,
}

/// Branchwise `F / G` and the zero set of `G` at characters of conductor
/// dividing `p^{level_bound+1}`.
pub fn symcube_quotient(f: &SeriesFamily, g: &SeriesFamily, level_bound: u32) -> Result<SymcubeReport> {
    if f.p != g.p {
        return Err(Error::PrimeMismatch(f.p, g.p));
    }
    if f.branches.len() != g.branches.len() {
        return Err(Error::Domain("families have different branch counts".into()));
    }
    check_prime(f.p)?;
    let mut branches = Vec::new();
    let mut zeros = Vec::new();
    let mut witness = None;
    for (fb, gb) in f.branches.iter().zip(&g.branches) {
        if fb.t != gb.t {
            return Err(Error::Domain("branch indices disagree".into()));
        }
        if gb.series.min_valuation().is_none() {
            return Err(Error::Domain(format!("divisor vanishes identically on branch {}", gb.t)));
        }
        let q = series_quotient(&fb.series, &gb.series)?;
        branches.push(BranchQuotient { t: fb.t, quotient: q.quotient, remainder: q.remainder });
        let z = zero_set(gb, level_bound);
        if witness.is_none() {
            witness = first_nonzero(gb, level_bound, &z).map(|zero| BranchPoint { t: gb.t, zero });
        }
        zeros.extend(z.into_iter().map(|zero| BranchPoint { t: gb.t, zero }));
    }
    Ok(SymcubeReport {
        p: f.p,
        integral: branches.iter().all(|b| !b.remainder),
        branches,
        zeros,
        witness,
        assumptions: vec!["nonvanishing of the twisted central values defining the divisor is assumed".into()],
    })
}

fn first_nonzero(g: &IwasawaSeries, n: u32, zeros: &[WildZero]) -> Option<WildZero> {
    let p = g.p();
    (0..=n)
        .flat_map(|k| (0..p.pow(k)).filter(move |e| k == 0 || e % p != 0).map(move |e| WildZero { level: k, exponent: e }))
        .find(|w| !zeros.contains(w))
}

/// `F(u - 1) / G(u - 1)` on branch `t`, the fallback when the quotient is
/// not integral.
pub fn pointwise_ratio(f: &SeriesFamily, g: &SeriesFamily, at: BranchPoint) -> Result<CyclotomicPadic> {
    let fb = f.branch(at.t).ok_or_else(|| Error::Domain("no such branch".into()))?;
    let gb = g.branch(at.t).ok_or_else(|| Error::Domain("no such branch".into()))?;
    let gv = gb.eval_at_root(at.zero.level, at.zero.exponent);
    fb.eval_at_root(at.zero.level, at.zero.exponent).checked_div(&gv)
}

impl SymcubeReport {
    /// The quotient series on branch `t` evaluated at `u - 1`.
    pub fn quotient_at(&self, at: BranchPoint) -> Result<CyclotomicPadic> {
        let b = self.branches.iter().find(|b| b.t == at.t).ok_or_else(|| Error::Domain("no such branch".into()))?;
        let s = IwasawaSeries::new(at.t, b.quotient.clone());
        Ok(s.eval_at_root(at.zero.level, at.zero.exponent))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::FiniteLevelDistribution;

    const PREC: i64 = 12;

    fn pn(n: i64) -> PadicNumber {
        PadicNumber::from_int(5, n, PREC)
    }

    fn gl4_meta() -> Gl4Metadata {
        Gl4Metadata { p: 5, nu_valuations: [Q64::new(-3, 2), Q64::new(-1, 2)], lambda: pn(7) }
    }

    fn gl32_meta() -> Gl32Metadata {
        Gl32Metadata { p: 5, lambda: pn(2), mu: pn(3), alpha: pn(7), eta: pn(1), kappa: None }
    }

    fn planted() -> FiniteLevelDistribution<PadicNumber> {
        let pts: Vec<(u64, PadicNumber)> = vec![(1, pn(3)), (7, pn(-2)), (18, pn(5)), (124, pn(1))];
        FiniteLevelDistribution::dirac_combination(5, 3, &pts, PREC).unwrap().restrict_to_units().unwrap()
    }

    #[test]
    fn gl4_round_trip() {
        assert!(gl4_meta().is_consistent() && gl4_meta().lambda_is_unit());
        let nu = planted();
        let prov = Gl4FromMeasure { meta: gl4_meta(), nu: nu.clone() };
        let r = gl4_distribution(&prov, 3).unwrap();
        assert!(r.additive);
        assert!(r.measure.values_equal(&nu));
        let zero = Gl4Pattern { meta: gl4_meta(), g: vec![pn(0); 5] };
        let r = gl4_distribution(&zero, 2).unwrap();
        assert!(r.measure.level(2).unwrap().values().all(|v| v.is_zero()));
        let pat = Gl4Pattern { meta: gl4_meta(), g: (0..5).map(pn).collect() };
        let r = gl4_distribution(&pat, 3).unwrap();
        assert_eq!(r.measure.get(3, 7).unwrap(), &pn(2));
        assert!(!r.additive);
    }

    #[test]
    fn gl32_consistent_provider() {
        let prov = Gl32Consistent::new(gl32_meta());
        assert!(gl32_relation_sweep(&prov, 2, SlotConvention::Independent).unwrap().is_empty());
        assert!(gl32_relation_sweep(&prov, 2, SlotConvention::Tied).unwrap().is_empty());
        let r = gl32_measure(&prov, 3).unwrap();
        assert!(r.additive);
        let noise = Gl32Noise { meta: gl32_meta(), seed: 1, prec: PREC };
        let res = gl32_distribution_relation_check(&noise, 1, 1, 0, 1, SlotConvention::Independent).unwrap();
        assert!(!res.is_zero());
    }

    #[test]
    fn gl32_round_trip() {
        let nu = planted();
        let prov = Gl32FromMeasure::new(gl32_meta(), nu.clone()).unwrap();
        let r = gl32_measure(&prov, 3).unwrap();
        assert!(r.additive);
        assert!(r.measure.values_equal(&nu));
        for (i, j, y) in [(1, 1, 0), (2, 3, 4), (7, 1, 11)] {
            let m = if i < 5 { 1 } else { 2 };
            let res = gl32_distribution_relation_check(&prov, i, j, y, m, SlotConvention::Independent).unwrap();
            assert!(res.is_zero(), "{i} {j} {y}");
        }
        let mut bad = gl32_meta();
        bad.alpha = pn(5);
        assert!(gl32_measure(&Gl32Consistent::new(bad), 2).is_err());
    }

    #[test]
    fn symcube_identity_quotient() {
        let g = PowerSeries::from_ints(5, &[3, 1, 4, 1, 5, 9, 2, 6], PREC);
        let h = PowerSeries::from_ints(5, &[1, 2, 0, 0, 1, 0, 0, 0], PREC);
        let fam = |s: &PowerSeries| SeriesFamily {
            p: 5,
            branches: (0..4).map(|t| IwasawaSeries::new(t, s.clone())).collect(),
        };
        let (gf, ff) = (fam(&g), fam(&(&g * &h)));
        let r = symcube_quotient(&gf, &gf, 1).unwrap();
        assert!(r.integral);
        let r = symcube_quotient(&ff, &gf, 1).unwrap();
        assert!(r.integral);
        assert!((&r.branches[0].quotient - &h).truncate(8).is_zero());
        assert!(r.witness.is_some());
        let zero = fam(&PowerSeries::from_ints(5, &[0; 8], PREC));
        assert!(symcube_quotient(&ff, &zero, 1).is_err());
    }
}
