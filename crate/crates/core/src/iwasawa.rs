//! Measures on `Z_p^×` as families of power series, one per tame branch.
//!
//! On the branch `omega^t` the series is `g(T) = ∫ omega(x)^t (1+T)^{s(x)} dmu`,
//! so that `g(u - 1) = ∫ omega^t chi_u dmu` where `chi_u(gamma) = u`.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{phi_pn, CyclotomicPadic};
use crate::error::{Error, Result};
use crate::measure::{Domain, FiniteLevelDistribution};
use crate::padic::{teichmuller, PadicNumber, EXACT_ZERO_PREC};
use crate::series::PowerSeries;
use crate::util::binomial_u;
use crate::weight::gamma_index;

#[derive(Clone, Debug, PartialEq)]
pub struct IwasawaSeries {
    pub t: u32,
    pub series: PowerSeries,
    /// The coefficients represent the level-m sums exactly, so every term
    /// beyond the stored ones vanishes.
    pub complete: bool,
}

impl IwasawaSeries {
    pub fn new(t: u32, series: PowerSeries) -> Self {
        IwasawaSeries { t, series, complete: false }
    }

    pub fn p(&self) -> u64 {
        self.series.p()
    }

    pub fn len(&self) -> usize {
        self.series.len()
    }

    pub fn is_empty(&self) -> bool {
        self.series.is_empty()
    }

    /// Value at `T = u - 1` for `u` a primitive `p^k`-th root of unity raised to `e`.
    ///
    /// For an incomplete series the unseen tail has valuation at least
    /// `len / phi(p^k)`, and the result is reduced to that precision.
    pub fn eval_at_root(&self, k: u32, e: u64) -> CyclotomicPadic {
        let p = self.p();
        let prec = self.series.abs_precision().min(EXACT_ZERO_PREC);
        let u = CyclotomicPadic::zeta_power(p, k, e as i64, prec.max(1) as u32);
        let t = &u - &CyclotomicPadic::one(p, k, prec.max(1) as u32);
        let v = self.series.eval(&t);
        if self.complete {
            v
        } else {
            v.reduce_abs((self.len() / phi_pn(p, k)) as i64)
        }
    }
}

/// `g_n = sum_b omega(b)^t C(s(b), n) mu(b + p^m)` at the deepest stored level.
///
/// `s(b)` is taken as its least residue modulo `p^{m-1}`, so with `terms =
/// p^{m-1}` the series reproduces the level-m Riemann sums of every
/// character of conductor dividing `p^m` exactly.
pub fn measure_to_series(mu: &FiniteLevelDistribution<PadicNumber>, t: u32, terms: usize) -> Result<IwasawaSeries> {
    let p = mu.p();
    if t as u64 >= p - 1 {
        return Err(Error::Domain(format!("tame index {t} out of range")));
    }
    let mu = match mu.domain() {
        Domain::Units => mu.clone(),
        Domain::Zp => mu.restrict_to_units()?,
    };
    let m = mu.max_level();
    let cap = p.checked_pow(m - 1).unwrap_or(u64::MAX);
    if (terms as u64) > cap {
        return Err(Error::LevelExceeded { requested: m + 1, stored: m });
    }
    if !crate::measure::certify_bounded(&mu).bounded {
        return Err(Error::Unbounded);
    }
    let table = mu.level(m)?;
    let prec = table.values().map(|v| v.abs_precision()).min().unwrap_or(EXACT_ZERO_PREC);
    let rel = prec.clamp(1, 1 << 20) as u32;
    let mut weighted = Vec::with_capacity(table.len());
    for (&b, v) in table {
        if v.is_zero() && v.abs_precision() >= EXACT_ZERO_PREC {
            continue;
        }
        let s = gamma_index(p, m, b)?;
        let w = teichmuller(p, (b % p) as i64, rel)?.pow(t as i64)?;
        weighted.push((s, v * &w));
    }
    let coeffs: Vec<PadicNumber> = (0..terms)
        .map(|n| {
            let mut acc = PadicNumber::zero(p, EXACT_ZERO_PREC);
            for (s, v) in &weighted {
                let c = binomial_u(*s, n as u64);
                if c.to_u64() == Some(0) {
                    acc = &acc + &PadicNumber::zero(p, v.abs_precision());
                } else {
                    acc = &acc + &v.mul_int(c);
                }
            }
            acc
        })
        .collect();
    Ok(IwasawaSeries { t, series: PowerSeries::new(p, coeffs)?, complete: terms as u64 == cap })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeierstrassData {
    pub mu: i64,
    pub lambda: usize,
    pub unit: bool,
    /// False when a coefficient before `lambda` is zero only to a precision
    /// not exceeding `mu`, so a smaller valuation cannot be ruled out.
    pub certain: bool,
}

pub fn weierstrass_invariants(g: &PowerSeries) -> Result<WeierstrassData> {
    let mu = g.min_valuation().ok_or_else(|| Error::Indeterminate("every coefficient is zero at precision".into()))?;
    let lambda = g.coeffs().iter().position(|c| c.valuation() == Some(mu)).expect("attained");
    let certain = g.coeffs()[..lambda].iter().all(|c| !c.is_zero() || c.abs_precision() > mu);
    Ok(WeierstrassData { mu, lambda, unit: lambda == 0 && mu == 0, certain })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Quotient {
    pub quotient: PowerSeries,
    pub remainder: bool,
}

/// `F / G` in `Q_p[[T]]`; `remainder` is set unless the quotient is an
/// integral series, i.e. unless `G` divides `F` at the working truncation.
pub fn series_quotient(f: &PowerSeries, g: &PowerSeries) -> Result<Quotient> {
    if f.p() != g.p() {
        return Err(Error::PrimeMismatch(f.p(), g.p()));
    }
    let k = g.order_t().ok_or_else(|| Error::Domain("division by a series that is zero at precision".into()))?;
    let head_nonzero = f.coeffs().iter().take(k).any(|c| !c.is_zero());
    let n = f.len().min(g.len());
    if n <= k {
        return Err(Error::InsufficientPrecision("truncation shorter than the T-adic order of the divisor".into()));
    }
    let fs = f.truncate(n).shift_down(k);
    let gs = g.truncate(n).shift_down(k);
    let q = &fs * &gs.inverse()?;
    let remainder = head_nonzero || !q.is_integral();
    Ok(Quotient { quotient: q, remainder })
}

/// Wild root of unity `u = zeta_{p^level}^exponent` at which a series vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WildZero {
    pub level: u32,
    pub exponent: u64,
}

/// Every `u` in `mu_{p^n}` with `g(u - 1) = 0` at precision.
pub fn zero_set(g: &IwasawaSeries, n: u32) -> Vec<WildZero> {
    let p = g.p();
    let mut out = Vec::new();
    for k in 0..=n {
        let pk = p.pow(k);
        for e in (0..pk).filter(|e| k == 0 || e % p != 0) {
            if g.eval_at_root(k, e).is_zero() {
                out.push(WildZero { level: k, exponent: e });
            }
        }
    }
    out
}

/// One branch series for each tame index `0..p-1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesFamily {
    pub p: u64,
    pub branches: Vec<IwasawaSeries>,
}

impl SeriesFamily {
    pub fn from_measure(mu: &FiniteLevelDistribution<PadicNumber>, terms: usize) -> Result<Self> {
        let p = mu.p();
        let branches = (0..(p - 1) as u32).map(|t| measure_to_series(mu, t, terms)).collect::<Result<_>>()?;
        Ok(SeriesFamily { p, branches })
    }

    pub fn branch(&self, t: u32) -> Option<&IwasawaSeries> {
        self.branches.get(t as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn pn(n: i64) -> PadicNumber {
        PadicNumber::from_int(5, n, 12)
    }

    #[test]
    fn dirac_at_gamma_gives_one_plus_t() {
        let mu = FiniteLevelDistribution::dirac(5, Domain::Units, 3, &BigInt::from(6), &pn(1)).unwrap();
        let g = measure_to_series(&mu, 0, 25).unwrap();
        assert!(g.complete);
        assert!((&g.series - &PowerSeries::from_ints(5, &[1, 1], 12)).truncate(2).is_zero());
        assert!(g.series.coeffs()[2..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn weierstrass_examples() {
        let w = weierstrass_invariants(&PowerSeries::from_ints(5, &[5, 5], 8)).unwrap();
        assert_eq!((w.mu, w.lambda), (1, 0));
        let w = weierstrass_invariants(&PowerSeries::from_ints(5, &[5, 5, 1], 8)).unwrap();
        assert_eq!((w.mu, w.lambda), (0, 2));
        assert!(weierstrass_invariants(&PowerSeries::from_ints(5, &[0, 0], 8)).is_err());
    }

    #[test]
    fn quotient_examples() {
        let f = PowerSeries::from_ints(5, &[0, 2, 1, 0], 8);
        let g = PowerSeries::from_ints(5, &[0, 1, 0, 0], 8);
        let q = series_quotient(&f, &g).unwrap();
        assert!(!q.remainder);
        assert!((&q.quotient - &PowerSeries::from_ints(5, &[2, 1, 0], 8)).is_zero());
        let q = series_quotient(&f, &f).unwrap();
        assert!((&q.quotient - &PowerSeries::from_ints(5, &[1, 0, 0], 8)).is_zero());
        let q = series_quotient(&PowerSeries::from_ints(5, &[1, 0, 0], 8), &PowerSeries::from_ints(5, &[5, 1, 0], 8)).unwrap();
        assert!(q.remainder);
    }

    #[test]
    fn zero_sets() {
        let mk = |c: &[i64]| IwasawaSeries { t: 0, series: PowerSeries::from_ints(5, c, 10), complete: true };
        assert!(zero_set(&mk(&[1, 1]), 2).is_empty());
        assert_eq!(zero_set(&mk(&[0, 1]), 2), vec![WildZero { level: 0, exponent: 0 }]);
        // Phi_5(1+T) = 5 + 10T + 10T^2 + 5T^3 + T^4
        let z = zero_set(&mk(&[5, 10, 10, 5, 1]), 2);
        assert_eq!(z.len(), 4);
        assert!(z.iter().all(|w| w.level == 1));
    }
}
