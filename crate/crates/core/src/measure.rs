//! Distributions on `Z_p` and `Z_p^×` stored at finitely many levels.
//!
//! A table at level `m` records `mu(a + p^m Z_p)` for every residue `a`
//! (every unit residue on `Z_p^×`).  Queries deeper than the stored levels
//! are errors; nothing is extrapolated.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CyclotomicPadic;
use crate::error::{Error, Result};
use crate::padic::{PadicNumber, EXACT_ZERO_PREC};
use crate::series::PowerSeries;
use crate::util::binomial_u;

/// Ring of values a distribution can take.
pub trait Coefficient: Clone + Debug + Send + Sync {
    fn prime(&self) -> u64;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, s: &PadicNumber) -> Self;
    fn is_zero(&self) -> bool;
    /// `floor(v_p)`, `None` for zero.
    fn valuation_floor(&self) -> Option<i64>;
    fn zero_like(&self) -> Self;
}

impl Coefficient for PadicNumber {
    fn prime(&self) -> u64 {
        self.p()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, s: &PadicNumber) -> Self {
        self * s
    }
    fn is_zero(&self) -> bool {
        PadicNumber::is_zero(self)
    }
    fn valuation_floor(&self) -> Option<i64> {
        self.valuation()
    }
    fn zero_like(&self) -> Self {
        PadicNumber::zero(self.p(), EXACT_ZERO_PREC)
    }
}

impl Coefficient for CyclotomicPadic {
    fn prime(&self) -> u64 {
        self.p()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, s: &PadicNumber) -> Self {
        CyclotomicPadic::scale(self, s)
    }
    fn is_zero(&self) -> bool {
        CyclotomicPadic::is_zero(self)
    }
    /// The power basis is an integral basis, so the minimum coefficient
    /// valuation is the floor of the valuation.
    fn valuation_floor(&self) -> Option<i64> {
        self.coeffs().iter().filter_map(|c| c.valuation()).min()
    }
    fn zero_like(&self) -> Self {
        CyclotomicPadic::zero(self.p(), self.level(), EXACT_ZERO_PREC)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Domain {
    #[serde(rename = "Zp")]
    Zp,
    #[serde(rename = "Zp_units")]
    Units,
}

impl Domain {
    pub fn min_level(self) -> u32 {
        match self {
            Domain::Zp => 0,
            Domain::Units => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteLevelDistribution<V> {
    p: u64,
    domain: Domain,
    max_level: u32,
    levels: Vec<BTreeMap<u64, V>>,
}

/// Residues indexing the intervals of level `m`.
pub fn residues(p: u64, domain: Domain, m: u32) -> impl Iterator<Item = u64> {
    let pm = p.pow(m);
    (0..pm).filter(move |a| domain == Domain::Zp || a % p != 0)
}

fn checked_pow(p: u64, m: u32) -> Result<u64> {
    p.checked_pow(m)
        .filter(|&x| x <= 1 << 40)
        .ok_or_else(|| Error::ResourceBound(format!("{p}^{m} intervals")))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation<V> {
    pub level: u32,
    pub residue: u64,
    pub parent: V,
    pub children_sum: V,
}

impl<V: Coefficient> FiniteLevelDistribution<V> {
    pub fn from_fn<F>(p: u64, domain: Domain, max_level: u32, f: F) -> Result<Self>
    where
        F: Fn(u32, u64) -> Result<V> + Sync,
    {
        crate::padic::check_prime(p)?;
        if max_level < domain.min_level() {
            return Err(Error::Domain("no levels stored".into()));
        }
        let mut levels = Vec::new();
        for m in domain.min_level()..=max_level {
            checked_pow(p, m)?;
            let rs: Vec<u64> = residues(p, domain, m).collect();
            let vals: Result<Vec<(u64, V)>> =
                rs.par_iter().map(|&a| f(m, a).map(|v| (a, v))).collect();
            levels.push(vals?.into_iter().collect());
        }
        Ok(FiniteLevelDistribution { p, domain, max_level, levels })
    }

    /// Builds every level from the deepest one by summing children.
    pub fn from_top(p: u64, domain: Domain, max_level: u32, top: BTreeMap<u64, V>) -> Result<Self> {
        crate::padic::check_prime(p)?;
        let expected = residues(p, domain, max_level).count();
        if top.len() != expected || residues(p, domain, max_level).any(|a| !top.contains_key(&a)) {
            return Err(Error::Domain("top level table is incomplete".into()));
        }
        let zero = top.values().next().ok_or_else(|| Error::Domain("empty table".into()))?.zero_like();
        let mut levels = vec![top];
        let mut m = max_level;
        while m > domain.min_level() {
            let child = levels.last().expect("nonempty");
            let pm = p.pow(m - 1);
            let mut parent = BTreeMap::new();
            for a in residues(p, domain, m - 1) {
                let mut s = zero.clone();
                for b in 0..p {
                    if let Some(v) = child.get(&(a + b * pm)) {
                        s = s.add(v);
                    }
                }
                parent.insert(a, s);
            }
            levels.push(parent);
            m -= 1;
        }
        levels.reverse();
        Ok(FiniteLevelDistribution { p, domain, max_level, levels })
    }

    /// Raw constructor; tables must cover every residue of every level.
    pub fn from_levels(p: u64, domain: Domain, levels: Vec<BTreeMap<u64, V>>) -> Result<Self> {
        crate::padic::check_prime(p)?;
        if levels.is_empty() {
            return Err(Error::Domain("no levels stored".into()));
        }
        let max_level = domain.min_level() + levels.len() as u32 - 1;
        for (i, t) in levels.iter().enumerate() {
            let m = domain.min_level() + i as u32;
            let pm = checked_pow(p, m)?;
            let expected = residues(p, domain, m).count();
            if t.len() != expected {
                return Err(Error::Domain(format!("level {m} has {} entries, expected {expected}", t.len())));
            }
            if t.keys().any(|&a| a >= pm || (domain == Domain::Units && a % p == 0)) {
                return Err(Error::Domain(format!("bad residue at level {m}")));
            }
            if t.values().any(|v| v.prime() != p) {
                return Err(Error::PrimeMismatch(p, 0));
            }
        }
        Ok(FiniteLevelDistribution { p, domain, max_level, levels })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn max_level(&self) -> u32 {
        self.max_level
    }

    pub fn min_level(&self) -> u32 {
        self.domain.min_level()
    }

    pub fn level(&self, m: u32) -> Result<&BTreeMap<u64, V>> {
        if m < self.min_level() || m > self.max_level {
            return Err(Error::LevelExceeded { requested: m, stored: self.max_level });
        }
        Ok(&self.levels[(m - self.min_level()) as usize])
    }

    /// `mu(a + p^m Z_p)`; `a` is reduced modulo `p^m`.
    pub fn get(&self, m: u32, a: i64) -> Result<&V> {
        let t = self.level(m)?;
        let r = a.rem_euclid(self.p.pow(m) as i64) as u64;
        t.get(&r).ok_or_else(|| Error::Domain(format!("{a} is not in the domain")))
    }

    pub fn map<W: Coefficient, F: Fn(&V) -> W>(&self, f: F) -> FiniteLevelDistribution<W> {
        FiniteLevelDistribution {
            p: self.p,
            domain: self.domain,
            max_level: self.max_level,
            levels: self.levels.iter().map(|t| t.iter().map(|(a, v)| (*a, f(v))).collect()).collect(),
        }
    }

    pub fn scale(&self, c: &PadicNumber) -> Self {
        self.map(|v| v.scale(c))
    }

    /// Pointwise sum on the common levels.
    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.p != o.p || self.domain != o.domain {
            return Err(Error::Domain("incompatible distributions".into()));
        }
        let m = self.max_level.min(o.max_level);
        let levels = (self.min_level()..=m)
            .map(|l| {
                let (a, b) = (self.level(l).expect("stored"), o.level(l).expect("stored"));
                a.iter().map(|(r, v)| (*r, v.add(&b[r]))).collect()
            })
            .collect();
        Ok(FiniteLevelDistribution { p: self.p, domain: self.domain, max_level: m, levels })
    }

    /// Keeps levels up to `m`.
    pub fn truncate(&self, m: u32) -> Result<Self> {
        self.level(m)?;
        Ok(FiniteLevelDistribution {
            p: self.p,
            domain: self.domain,
            max_level: m,
            levels: self.levels[..=(m - self.min_level()) as usize].to_vec(),
        })
    }

    /// Restriction of a distribution on `Z_p` to `Z_p^×`.
    pub fn restrict_to_units(&self) -> Result<Self> {
        if self.domain == Domain::Units {
            return Ok(self.clone());
        }
        if self.max_level < 1 {
            return Err(Error::LevelExceeded { requested: 1, stored: self.max_level });
        }
        let levels = (1..=self.max_level)
            .map(|m| {
                self.level(m)
                    .expect("stored")
                    .iter()
                    .filter(|(a, _)| *a % self.p != 0)
                    .map(|(a, v)| (*a, v.clone()))
                    .collect()
            })
            .collect();
        Ok(FiniteLevelDistribution { p: self.p, domain: Domain::Units, max_level: self.max_level, levels })
    }

    /// Total mass, read from the shallowest level.
    pub fn total(&self) -> V {
        let t = &self.levels[0];
        let mut it = t.values();
        let first = it.next().expect("nonempty").clone();
        it.fold(first, |s, v| s.add(v))
    }

    pub fn values_equal(&self, o: &Self) -> bool {
        if self.p != o.p || self.domain != o.domain || self.max_level != o.max_level {
            return false;
        }
        self.levels.iter().zip(&o.levels).all(|(a, b)| {
            a.len() == b.len() && a.iter().all(|(r, v)| b.get(r).is_some_and(|w| v.sub(w).is_zero()))
        })
    }
}

impl FiniteLevelDistribution<PadicNumber> {
    /// Dirac mass `value * delta_x`.
    pub fn dirac(p: u64, domain: Domain, max_level: u32, x: &BigInt, value: &PadicNumber) -> Result<Self> {
        let zero = PadicNumber::zero(p, value.abs_precision());
        Self::from_fn(p, domain, max_level, |m, a| {
            let pm = BigInt::from(p.pow(m));
            let r: BigInt = num_integer::Integer::mod_floor(x, &pm);
            Ok(if r == BigInt::from(a) { value.clone() } else { zero.clone() })
        })
        .and_then(|d| {
            if domain == Domain::Units && num_integer::Integer::mod_floor(x, &BigInt::from(p)) == BigInt::from(0) {
                Err(Error::Domain("Dirac point is not a unit".into()))
            } else {
                Ok(d)
            }
        })
    }

    /// Finite combination `sum_i w_i delta_{x_i}` with integer points.
    pub fn dirac_combination(p: u64, max_level: u32, points: &[(u64, PadicNumber)], prec: i64) -> Result<Self> {
        let pm = checked_pow(p, max_level)?;
        let mut top: BTreeMap<u64, PadicNumber> =
            residues(p, Domain::Zp, max_level).map(|a| (a, PadicNumber::zero(p, prec))).collect();
        for (x, w) in points {
            let e = top.get_mut(&(x % pm)).expect("residue");
            *e = &*e + w;
        }
        Self::from_top(p, Domain::Zp, max_level, top)
    }
}

/// Every parent whose value differs from the sum of its children.
pub fn check_additivity<V: Coefficient>(mu: &FiniteLevelDistribution<V>) -> Vec<Violation<V>> {
    let p = mu.p;
    let mut out = Vec::new();
    for m in mu.min_level()..mu.max_level {
        let parent = mu.level(m).expect("stored");
        let child = mu.level(m + 1).expect("stored");
        let pm = p.pow(m);
        for (&a, v) in parent {
            let mut s = v.zero_like();
            for b in 0..p {
                if let Some(c) = child.get(&(a + b * pm)) {
                    s = s.add(c);
                }
            }
            if !s.sub(v).is_zero() {
                out.push(Violation { level: m, residue: a, parent: v.clone(), children_sum: s });
            }
        }
    }
    out
}

/// `sum_b f(b + shift p^m) mu(b + p^m Z_p)` over least nonnegative residues `b`.
pub fn riemann_sum<V, F>(mu: &FiniteLevelDistribution<V>, f: F, m: u32, shift: u64) -> Result<V>
where
    V: Coefficient,
    F: Fn(u64) -> V + Sync,
{
    let t = mu.level(m)?;
    let pm = mu.p.pow(m);
    let terms: Vec<V> = t
        .par_iter()
        .map(|(&b, v)| {
            let rep = b.checked_add(shift.saturating_mul(pm)).expect("representative fits in u64");
            f(rep).mul(v)
        })
        .collect();
    let mut it = terms.into_iter();
    let first = it.next().expect("nonempty level");
    Ok(it.fold(first, |s, x| s.add(&x)))
}

/// Riemann sums at each stored level up to `m`, so that stabilization is visible.
pub fn riemann_integrate<V, F>(mu: &FiniteLevelDistribution<V>, f: F, m: u32) -> Result<Vec<(u32, V)>>
where
    V: Coefficient,
    F: Fn(u64) -> V + Sync,
{
    mu.level(m)?;
    (mu.min_level()..=m).map(|l| riemann_sum(mu, &f, l, 0).map(|v| (l, v))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundednessCertificate {
    /// `B = p^bound_exponent`.
    pub bound_exponent: i64,
    pub level_checked: u32,
    pub bounded: bool,
}

/// Largest norm on each level.  Finite data cannot prove boundedness, so the
/// table is flagged only when the norm grows at every stored step and ends
/// above 1, the pattern of `p^{-m}`-type growth.  Cancellation in shallow
/// sums of an integral table does not count against it.
pub fn certify_bounded<V: Coefficient>(mu: &FiniteLevelDistribution<V>) -> BoundednessCertificate {
    let lo = mu.min_level();
    let hi = mu.max_level;
    let mins: Vec<Option<i64>> =
        (lo..=hi).map(|m| mu.level(m).expect("stored").values().filter_map(|v| v.valuation_floor()).min()).collect();
    let overall = mins.iter().flatten().copied().min();
    let growing = mins.len() >= 3
        && mins.windows(2).all(|w| matches!((w[0], w[1]), (Some(a), Some(b)) if b < a))
        && mins.last().copied().flatten().is_some_and(|v| v < 0);
    BoundednessCertificate { bound_exponent: overall.map_or(0, |v| -v), level_checked: hi, bounded: !growing }
}

/// `a_n = sum_b C(b, n) mu(b + p^M Z_p)` at the deepest level `M`.
///
/// This is the Amice transform of the measure `sum_b mu(b + p^M) delta_b`
/// that the table determines, so it is exact for combinations of Dirac
/// masses at integers below `p^M`.
pub fn amice_transform(mu: &FiniteLevelDistribution<PadicNumber>, terms: usize) -> Result<PowerSeries> {
    if !certify_bounded(mu).bounded {
        return Err(Error::Unbounded);
    }
    let p = mu.p;
    let m = mu.max_level;
    let t = mu.level(m)?;
    let mut coeffs = Vec::with_capacity(terms);
    for n in 0..terms {
        let mut s = PadicNumber::zero(p, EXACT_ZERO_PREC);
        for (&b, v) in t {
            let c = binomial_u(b, n as u64);
            if c == BigInt::from(0) {
                s = &s + &PadicNumber::zero(p, v.abs_precision());
                continue;
            }
            s = &s + &v.mul_int(c);
        }
        coeffs.push(s);
    }
    PowerSeries::new(p, coeffs)
}

/// Dirac combination at `0, ..., len-1` with binomial moments `F_n`, stored to level `m`.
pub fn inverse_amice(f: &PowerSeries, m: u32) -> Result<FiniteLevelDistribution<PadicNumber>> {
    let p = f.p();
    let len = f.len();
    let pm = checked_pow(p, m)?;
    if (len as u64) > pm {
        return Err(Error::LevelExceeded { requested: m, stored: m });
    }
    if f.coeffs().iter().any(|c| c.valuation_bound() < 0) {
        return Err(Error::Unbounded);
    }
    let prec = f.abs_precision();
    let mut points = Vec::with_capacity(len);
    for i in 0..len {
        let mut w = PadicNumber::zero(p, prec);
        for n in i..len {
            let c = binomial_u(n as u64, i as u64);
            let term = f.coeffs()[n].mul_int(c);
            w = if (n - i) % 2 == 0 { &w + &term } else { &w - &term };
        }
        points.push((i as u64, w));
    }
    FiniteLevelDistribution::dirac_combination(p, m, &points, prec)
}

/// Additive convolution at the shallower of the two top levels.
pub fn convolve<V: Coefficient>(
    lambda: &FiniteLevelDistribution<V>,
    mu: &FiniteLevelDistribution<V>,
) -> Result<FiniteLevelDistribution<V>> {
    if lambda.domain != Domain::Zp || mu.domain != Domain::Zp {
        return Err(Error::Domain("convolution needs measures on Z_p".into()));
    }
    if lambda.p != mu.p {
        return Err(Error::PrimeMismatch(lambda.p, mu.p));
    }
    let p = lambda.p;
    let m = lambda.max_level.min(mu.max_level);
    let pm = p.pow(m);
    let (l, r) = (lambda.level(m)?, mu.level(m)?);
    let zero = l.values().next().expect("nonempty").zero_like();
    let top: BTreeMap<u64, V> = (0..pm)
        .into_par_iter()
        .map(|c| {
            let mut s = zero.clone();
            for (&a, va) in l {
                if va.is_zero() {
                    continue;
                }
                let b = (c + pm - a) % pm;
                s = s.add(&va.mul(&r[&b]));
            }
            (c, s)
        })
        .collect();
    FiniteLevelDistribution::from_top(p, Domain::Zp, m, top)
}

/// Moments `mu((x - a)^i 1_{a + p^n Z_p})` for `0 <= i <= h`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdmissibleMeasure {
    pub p: u64,
    pub h: u32,
    /// `moments[n - 1][a][i]` for levels `n = 1..=M`.
    pub moments: Vec<BTreeMap<u64, Vec<PadicNumber>>>,
}

impl AdmissibleMeasure {
    pub fn max_level(&self) -> u32 {
        self.moments.len() as u32
    }

    /// A bounded measure viewed as 0-admissible.
    pub fn from_measure(mu: &FiniteLevelDistribution<PadicNumber>) -> Self {
        let moments = (1..=mu.max_level)
            .filter(|&m| m >= mu.min_level())
            .map(|m| mu.level(m).expect("stored").iter().map(|(a, v)| (*a, vec![v.clone()])).collect())
            .collect();
        AdmissibleMeasure { p: mu.p, h: 0, moments }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub h: u32,
    /// Implied constant, as a power of p.
    pub constant: i64,
    /// Fitted growth exponent per moment degree `i`, `None` when no data.
    pub exponents: Vec<Option<(i64, i64)>>,
    pub passes: bool,
}

/// Calibrates the implied constant on the shallow half of the levels and
/// fits the growth exponent on the rest.
pub fn check_admissible(mu: &AdmissibleMeasure) -> AdmissibilityReport {
    let h = mu.h as i64;
    let big_m = mu.max_level();
    let calib = big_m.div_ceil(2).max(1);
    // deficit D_{i,n} = max_a (-v(moment))
    let deficit = |i: usize, n: u32| -> Option<i64> {
        mu.moments[(n - 1) as usize]
            .values()
            .filter_map(|v| v.get(i).and_then(|x| x.valuation()))
            .map(|v| -v)
            .max()
    };
    let mut c = 0i64;
    for i in 0..=mu.h as usize {
        for n in 1..=calib.min(big_m) {
            if let Some(d) = deficit(i, n) {
                c = c.max(d - n as i64 * (h - i as i64));
            }
        }
    }
    let fit_levels: Vec<u32> = if big_m > calib { (calib + 1..=big_m).collect() } else { (1..=big_m).collect() };
    let mut exponents = Vec::new();
    let mut passes = true;
    for i in 0..=mu.h as usize {
        let mut best: Option<Ratio<i64>> = None;
        for &n in &fit_levels {
            if let Some(d) = deficit(i, n) {
                let e = Ratio::new(d - c, n as i64);
                best = Some(best.map_or(e, |b| b.max(e)));
            }
        }
        if let Some(e) = best {
            if e > Ratio::from_integer(h - i as i64) {
                passes = false;
            }
        }
        exponents.push(best.map(|e| (*e.numer(), *e.denom())));
    }
    AdmissibilityReport { h: mu.h, constant: c, exponents, passes }
}

/// `-log_p M_f(p^{-c}) = min_n (v(b_n) + n c)`; `None` for the zero series.
pub fn modulus_function(f: &PowerSeries, c: Ratio<i64>) -> Option<Ratio<i64>> {
    f.coeffs()
        .iter()
        .enumerate()
        .filter_map(|(n, b)| b.valuation().map(|v| Ratio::from_integer(v) + c * Ratio::from_integer(n as i64)))
        .min()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Growth {
    /// `f = o(g)` (and so also `O(g)`).
    LittleO,
    /// `f = O(g)` but not `o(g)`.
    BigO,
    Neither,
}

/// Growth order on the stored window: `max(0, max_{n>=2} -v(b_n) / log_p n)`.
pub fn growth_order(f: &PowerSeries) -> f64 {
    let p = f.p() as f64;
    let mut ord = 0.0f64;
    for (n, b) in f.coeffs().iter().enumerate().skip(2) {
        if let Some(v) = b.valuation() {
            let r = -(v as f64) / ((n as f64).ln() / p.ln());
            ord = ord.max(r);
        }
    }
    ord
}

/// Finite-window verdict comparing the coefficient growth of `f` and `g`.
pub fn growth_compare(f: &PowerSeries, g: &PowerSeries) -> Result<Growth> {
    if f.len() != g.len() {
        return Err(Error::Domain("truncations of different length".into()));
    }
    let (a, b) = (growth_order(f), growth_order(g));
    let eps = 1e-9;
    Ok(if a + eps < b {
        Growth::LittleO
    } else if (a - b).abs() <= eps {
        Growth::BigO
    } else {
        Growth::Neither
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(p: u64) -> PadicNumber {
        PadicNumber::one(p, 10)
    }

    #[test]
    fn dirac_is_additive() {
        let d = FiniteLevelDistribution::dirac(5, Domain::Zp, 3, &BigInt::from(1), &one(5)).unwrap();
        assert!(check_additivity(&d).is_empty());
    }

    #[test]
    fn perturbed_entry_is_flagged() {
        let d = FiniteLevelDistribution::dirac(5, Domain::Zp, 3, &BigInt::from(7), &one(5)).unwrap();
        let mut levels = d.levels.clone();
        let e = levels[3].get_mut(&7).unwrap();
        *e = &*e + &one(5);
        let bad = FiniteLevelDistribution::from_levels(5, Domain::Zp, levels).unwrap();
        let v = check_additivity(&bad);
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].level, v[0].residue), (2, 7));
    }

    #[test]
    fn haar_like_is_additive_but_unbounded() {
        let d = FiniteLevelDistribution::from_fn(5, Domain::Zp, 3, |m, _| {
            Ok(PadicNumber::from_int(5, 1, 10).shift(-(m as i64)))
        })
        .unwrap();
        assert!(check_additivity(&d).is_empty());
        assert!(!certify_bounded(&d).bounded);
        assert!(matches!(amice_transform(&d, 4), Err(Error::Unbounded)));
    }

    #[test]
    fn amice_of_diracs() {
        let d0 = FiniteLevelDistribution::dirac(5, Domain::Zp, 2, &BigInt::from(0), &one(5)).unwrap();
        let a0 = amice_transform(&d0, 5).unwrap();
        assert!((&a0 - &PowerSeries::one(5, 5, 10)).is_zero());
        let d3 = FiniteLevelDistribution::dirac(5, Domain::Zp, 2, &BigInt::from(3), &one(5)).unwrap();
        let a3 = amice_transform(&d3, 6).unwrap();
        assert!((&a3 - &PowerSeries::one_plus_t_pow(5, 3, 6, 10)).is_zero());
        let c = convolve(&FiniteLevelDistribution::dirac(5, Domain::Zp, 2, &BigInt::from(1), &one(5)).unwrap(),
            &FiniteLevelDistribution::dirac(5, Domain::Zp, 2, &BigInt::from(1), &one(5)).unwrap()).unwrap();
        let ac = amice_transform(&c, 6).unwrap();
        assert!((&ac - &PowerSeries::one_plus_t_pow(5, 2, 6, 10)).is_zero());
    }

    #[test]
    fn inverse_amice_examples() {
        let f = PowerSeries::from_ints(5, &[1], 10);
        let mu = inverse_amice(&f, 1).unwrap();
        let d0 = FiniteLevelDistribution::dirac(5, Domain::Zp, 1, &BigInt::from(0), &one(5)).unwrap();
        assert!(mu.values_equal(&d0));
        let f = PowerSeries::from_ints(5, &[1, 1], 10);
        let mu = inverse_amice(&f, 1).unwrap();
        let d1 = FiniteLevelDistribution::dirac(5, Domain::Zp, 1, &BigInt::from(1), &one(5)).unwrap();
        assert!(mu.values_equal(&d1));
    }

    #[test]
    fn admissibility_examples() {
        let d = FiniteLevelDistribution::dirac(5, Domain::Units, 4, &BigInt::from(2), &one(5)).unwrap();
        assert!(check_admissible(&AdmissibleMeasure::from_measure(&d)).passes);
        let mut bad = AdmissibleMeasure::from_measure(&d);
        for (n, t) in bad.moments.iter_mut().enumerate() {
            for v in t.values_mut() {
                v[0] = one(5).shift(-(n as i64 + 1));
            }
        }
        assert!(!check_admissible(&bad).passes);
    }

    #[test]
    fn modulus_and_growth() {
        let f = PowerSeries::from_ints(5, &[1, 0, 0, 0], 10);
        assert_eq!(modulus_function(&f, Ratio::new(1, 3)), Some(Ratio::from_integer(0)));
        let ones = PowerSeries::from_ints(5, &[1; 30], 10);
        let log: Vec<PadicNumber> = (0..30)
            .map(|n| {
                if n == 0 {
                    PadicNumber::zero(5, 10)
                } else {
                    let s = if n % 2 == 1 { 1 } else { -1 };
                    PadicNumber::from_rational(5, &crate::padic::ratio(s, n), 10)
                }
            })
            .collect();
        let log = PowerSeries::new(5, log).unwrap();
        assert_eq!(growth_compare(&ones, &log).unwrap(), Growth::LittleO);
        assert_eq!(growth_compare(&log, &log).unwrap(), Growth::BigO);
        assert_eq!(growth_compare(&log, &ones).unwrap(), Growth::Neither);
    }

    #[test]
    fn character_riemann_sums_are_level_independent() {
        use crate::character::DirichletCharacter;
        let p = 5;
        let mu = FiniteLevelDistribution::from_fn(p, Domain::Units, 4, |m, a| {
            Ok(PadicNumber::from_int(p, (a * a + 3 * m as u64) as i64, 12))
        })
        .unwrap();
        // not additive, so take its additive closure from the top
        let top = mu.level(4).unwrap().clone();
        let mu = FiniteLevelDistribution::from_top(p, Domain::Units, 4, top).unwrap();
        let chi = DirichletCharacter::new(p, 2, 3, 12).unwrap();
        let f = |x: u64| chi.value(x as i64);
        let sums = riemann_integrate(&mu.map(|v| CyclotomicPadic::from_padic(v)), f, 4).unwrap();
        for (_, s) in &sums[1..] {
            assert!(s.congruent(&sums[1].1));
        }
    }
}
