//! Concrete p-adic L-functions: the Kubota–Leopoldt zeta function and the
//! measure attached to a modular eigen-symbol and an allowable Hecke root.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::character::{gauss_sum_inverse, DirichletCharacter};
use crate::cyclotomic::CyclotomicPadic;
use crate::error::{Error, Result};
use crate::iwasawa::{measure_to_series, SeriesFamily};
use crate::measure::{
    certify_bounded, check_additivity, AdmissibleMeasure, BoundednessCertificate, Domain, FiniteLevelDistribution,
    Violation,
};
use crate::modsym::EigenSymbol;
use crate::padic::{check_prime, mod_inverse, ppow, vp_int, PadicNumber, EXACT_ZERO_PREC};
use crate::util::binomial_u;

fn int_padic(p: u64, n: &BigInt, abs: i64) -> PadicNumber {
    PadicNumber::from_int(p, n.clone(), abs)
}

/// A root of `X^2 - a_p X + eps(p) p^{k-1}` with its co-root.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeckeRootChoice {
    pub p: u64,
    pub ap: i64,
    pub eps: i64,
    pub k: u32,
    pub alpha: PadicNumber,
    pub beta: PadicNumber,
    pub ordinary: bool,
    /// `v_p(alpha) < k - 1`.
    pub allowable: bool,
}

impl HeckeRootChoice {
    /// Accepts a caller-supplied root after checking the Hecke polynomial.
    pub fn from_alpha(p: u64, ap: i64, eps: i64, k: u32, alpha: PadicNumber) -> Result<Self> {
        check_prime(p)?;
        if k < 2 {
            return Err(Error::Domain("weight must be at least 2".into()));
        }
        if eps.rem_euclid(p as i64) == 0 {
            return Err(Error::Domain("eps(p) must be prime to p".into()));
        }
        if alpha.p() != p {
            return Err(Error::PrimeMismatch(alpha.p(), p));
        }
        if alpha.is_zero() {
            return Err(Error::InsufficientPrecision("root is zero at precision".into()));
        }
        let abs = alpha.abs_precision().max(1) + k as i64 + 2;
        let q = int_padic(p, &(BigInt::from(eps) * ppow(p, k - 1)), abs);
        let a = PadicNumber::from_int(p, ap, abs);
        let f = &(&(&alpha * &alpha) - &(&a * &alpha)) + &q;
        if !f.is_zero() {
            return Err(Error::Domain("alpha is not a root of the Hecke polynomial".into()));
        }
        let beta = q.checked_div(&alpha)?;
        let v = alpha.valuation().expect("nonzero");
        Ok(HeckeRootChoice { p, ap, eps, k, ordinary: v == 0, allowable: v < k as i64 - 1, alpha, beta })
    }

    pub fn slope(&self) -> i64 {
        self.alpha.valuation().expect("nonzero root")
    }

    /// The same polynomial with the roles of the roots exchanged.
    pub fn other_root(&self) -> Self {
        let v = self.beta.valuation().unwrap_or(i64::MAX);
        HeckeRootChoice {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
            ordinary: v == 0,
            allowable: v < self.k as i64 - 1,
            ..self.clone()
        }
    }
}

/// The root of smaller slope, found by Newton iteration to `prec` digits.
///
/// Only the case `2 v_p(a_p) < k - 1` is handled: the two slopes differ and
/// the small root lies in `Q_p`.  Equal slopes need a quadratic extension
/// (the plus/minus construction for supersingular primes is not implemented).
pub fn hensel_root(ap: i64, eps: i64, k: u32, p: u64, prec: u32) -> Result<HeckeRootChoice> {
    check_prime(p)?;
    if k < 2 {
        return Err(Error::Domain("weight must be at least 2".into()));
    }
    if prec == 0 {
        return Err(Error::Domain("precision must be positive".into()));
    }
    if ap == 0 {
        return Err(Error::Supersingular);
    }
    let a = BigInt::from(ap);
    let v = vp_int(p, &a);
    if 2 * v as i64 >= k as i64 - 1 {
        if (k - 1) % 2 == 1 {
            return Err(Error::NonIntegralSlope);
        }
        return Err(Error::NotOrdinary("both roots have slope (k-1)/2".into()));
    }
    let a1 = &a / ppow(p, v);
    let c = BigInt::from(eps) * ppow(p, k - 1 - 2 * v);
    let pb = BigInt::from(p);
    let mut u = a1.mod_floor(&pb);
    let mut cur = 1u32;
    while cur < prec {
        cur = (2 * cur).min(prec);
        let m = ppow(p, cur);
        let f = (&u * &u - &a1 * &u + &c).mod_floor(&m);
        let df = (BigInt::from(2) * &u - &a1).mod_floor(&m);
        let inv = mod_inverse(&df, &m).ok_or_else(|| Error::Domain("derivative is not a unit".into()))?;
        u = (&u - f * inv).mod_floor(&m);
    }
    let alpha = PadicNumber::from_parts(p, v as i64, u, prec)?;
    HeckeRootChoice::from_alpha(p, ap, eps, k, alpha)
}

/// Source of normalized period values `lambda^±(x^d, a, m)`.
pub trait PeriodValues: Send + Sync {
    fn level(&self) -> u64;
    fn weight(&self) -> u32;
    fn sign(&self) -> i8;
    fn eigenvalue(&self, q: u64) -> Option<i64>;
    fn lambda_monomial(&self, d: usize, a: i64, m: u64) -> Result<BigRational>;
}

impl PeriodValues for EigenSymbol {
    fn level(&self) -> u64 {
        EigenSymbol::level(self)
    }
    fn weight(&self) -> u32 {
        EigenSymbol::weight(self)
    }
    fn sign(&self) -> i8 {
        EigenSymbol::sign(self)
    }
    fn eigenvalue(&self, q: u64) -> Option<i64> {
        self.a(q)
    }
    fn lambda_monomial(&self, d: usize, a: i64, m: u64) -> Result<BigRational> {
        EigenSymbol::lambda_monomial(self, d, a, m)
    }
}

/// Period values precomputed on a grid of moduli, as exported to JSON.
///
/// `values[(d, m)][a]` is `lambda(x^d, a, m)` for `0 <= a < m`; the value
/// only depends on `a mod m`.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenTable {
    pub level: u64,
    pub weight: u32,
    pub sign: i8,
    pub aq: Vec<(u64, i64)>,
    pub values: BTreeMap<(usize, u64), Vec<BigRational>>,
}

impl EigenTable {
    pub fn from_symbol(phi: &EigenSymbol, moduli: &[u64]) -> Result<Self> {
        let w = phi.w();
        let mut values = BTreeMap::new();
        for &m in moduli {
            if m == 0 {
                return Err(Error::Domain("modulus must be positive".into()));
            }
            for d in 0..=w {
                let row: Result<Vec<BigRational>> =
                    (0..m as i64).into_par_iter().map(|a| phi.lambda_monomial(d, a, m)).collect();
                values.insert((d, m), row?);
            }
        }
        Ok(EigenTable {
            level: phi.level(),
            weight: phi.weight(),
            sign: phi.sign(),
            aq: phi.hecke_eigenvalues().to_vec(),
            values,
        })
    }

    /// Moduli `1, p, ..., p^levels` needed by a measure of that depth.
    pub fn measure_moduli(p: u64, levels: u32) -> Vec<u64> {
        (0..=levels).map(|n| p.pow(n)).collect()
    }
}

impl PeriodValues for EigenTable {
    fn level(&self) -> u64 {
        self.level
    }
    fn weight(&self) -> u32 {
        self.weight
    }
    fn sign(&self) -> i8 {
        self.sign
    }
    fn eigenvalue(&self, q: u64) -> Option<i64> {
        self.aq.iter().find(|(l, _)| *l == q).map(|(_, a)| *a)
    }
    fn lambda_monomial(&self, d: usize, a: i64, m: u64) -> Result<BigRational> {
        let row = self
            .values
            .get(&(d, m))
            .ok_or_else(|| Error::Domain(format!("table has no values for degree {d} and modulus {m}")))?;
        Ok(row[a.rem_euclid(m as i64) as usize].clone())
    }
}

/// Moment distributions `U -> mu_{f,alpha}(x^d 1_U)` on `Z_p^×`.
#[derive(Clone, Debug)]
pub struct ModularMeasure {
    pub sign: i8,
    pub root: HeckeRootChoice,
    /// Indexed by the degree `d = 0..=k-2`.
    pub moments: Vec<FiniteLevelDistribution<PadicNumber>>,
}

/// `mu(x^d, a + p^n) = alpha^{-n} lambda(x^d, a, p^n)
///                     - eps p^{k-2} alpha^{-n-1} lambda(x^d, a, p^{n-1})`
/// for levels `1..=levels`, values converted at absolute precision `prec`.
pub fn build_modform_measure(
    phi: &dyn PeriodValues,
    root: &HeckeRootChoice,
    levels: u32,
    prec: u32,
) -> Result<ModularMeasure> {
    let p = root.p;
    if phi.level() % p == 0 {
        return Err(Error::Domain(format!("p = {p} divides the level")));
    }
    if phi.weight() != root.k {
        return Err(Error::Domain("root and symbol have different weights".into()));
    }
    if let Some(a) = phi.eigenvalue(p) {
        if a != root.ap {
            return Err(Error::Domain(format!("a_{p} = {a} but the root was built for {}", root.ap)));
        }
    }
    if !root.allowable {
        return Err(Error::NotOrdinary(format!("root of slope {} is not allowable", root.slope())));
    }
    if levels == 0 {
        return Err(Error::Domain("at least one level is required".into()));
    }
    let abs = prec as i64;
    let ainv = root.alpha.inv()?;
    let pows: Vec<PadicNumber> = (0..=levels as i64 + 1).map(|n| ainv.pow(n)).collect::<Result<_>>()?;
    let epsq = int_padic(p, &(BigInt::from(root.eps) * ppow(p, root.k - 2)), abs + root.k as i64);
    let moments = (0..=(root.k - 2) as usize)
        .map(|d| {
            FiniteLevelDistribution::from_fn(p, Domain::Units, levels, |n, a| {
                let a = a as i64;
                let hi = phi.lambda_monomial(d, a, p.pow(n))?;
                let lo = phi.lambda_monomial(d, a, p.pow(n - 1))?;
                let hi = PadicNumber::from_rational(p, &hi, abs);
                let lo = PadicNumber::from_rational(p, &lo, abs);
                Ok(&(&pows[n as usize] * &hi) - &(&(&epsq * &pows[n as usize + 1]) * &lo))
            })
        })
        .collect::<Result<_>>()?;
    Ok(ModularMeasure { sign: phi.sign(), root: root.clone(), moments })
}

impl ModularMeasure {
    pub fn p(&self) -> u64 {
        self.root.p
    }

    pub fn levels(&self) -> u32 {
        self.moments[0].max_level()
    }

    /// Additivity failures per degree.
    pub fn additivity_violations(&self) -> Vec<(usize, Violation<PadicNumber>)> {
        self.moments
            .iter()
            .enumerate()
            .flat_map(|(d, mu)| check_additivity(mu).into_iter().map(move |v| (d, v)))
            .collect()
    }

    pub fn certificates(&self) -> Vec<BoundednessCertificate> {
        self.moments.iter().map(certify_bounded).collect()
    }

    /// Centered moments `mu((x - a)^i 1_{a + p^n})` for `i <= v_p(alpha)`.
    pub fn admissible(&self) -> Result<AdmissibleMeasure> {
        let h = self.root.slope() as u32;
        if h as usize >= self.moments.len() {
            return Err(Error::DegreeOverflow { degree: h as usize, max: self.moments.len() - 1 });
        }
        let p = self.p();
        let moments = (1..=self.levels())
            .map(|n| -> Result<BTreeMap<u64, Vec<PadicNumber>>> {
                let tables: Vec<&BTreeMap<u64, PadicNumber>> =
                    self.moments.iter().map(|m| m.level(n)).collect::<Result<_>>()?;
                let mut out = BTreeMap::new();
                for &a in tables[0].keys() {
                    let row = (0..=h as usize)
                        .map(|i| {
                            let mut acc = PadicNumber::zero(p, EXACT_ZERO_PREC);
                            for l in 0..=i {
                                let c = binomial_u(i as u64, l as u64) * BigInt::from(a).pow((i - l) as u32);
                                let c = if (i - l) % 2 == 1 { -c } else { c };
                                acc = &acc + &tables[l][&a].mul_int(c);
                            }
                            acc
                        })
                        .collect();
                    out.insert(a, row);
                }
                Ok(out)
            })
            .collect::<Result<_>>()?;
        Ok(AdmissibleMeasure { p, h, moments })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub source: String,
    pub level: u64,
    pub weight: u32,
    pub alpha: PadicNumber,
    pub conventions: Vec<String>,
}

/// The pair of sign measures for one eigenform and one root.
#[derive(Clone, Debug)]
pub struct PadicLFunction {
    pub root: HeckeRootChoice,
    pub plus: ModularMeasure,
    pub minus: Option<ModularMeasure>,
    pub provenance: Provenance,
}

impl PadicLFunction {
    pub fn new(
        plus: &dyn PeriodValues,
        minus: Option<&dyn PeriodValues>,
        root: &HeckeRootChoice,
        levels: u32,
        prec: u32,
    ) -> Result<Self> {
        if plus.sign() != 1 || minus.is_some_and(|m| m.sign() != -1) {
            return Err(Error::Domain("symbols must be supplied as (+, -)".into()));
        }
        let mp = build_modform_measure(plus, root, levels, prec)?;
        let mm = minus.map(|m| build_modform_measure(m, root, levels, prec)).transpose()?;
        let provenance = Provenance {
            source: "modular symbols".into(),
            level: plus.level(),
            weight: plus.weight(),
            alpha: root.alpha.clone(),
            conventions: vec![
                "periods normalized so the sign-fixed integral cuspidal lattice has content 1".into(),
                "symbol sign chosen by chi(-1)(-1)^j, even is +".into(),
            ],
        };
        Ok(PadicLFunction { root: root.clone(), plus: mp, minus: mm, provenance })
    }

    pub fn p(&self) -> u64 {
        self.root.p
    }

    pub fn weight(&self) -> u32 {
        self.root.k
    }

    pub fn levels(&self) -> u32 {
        self.plus.levels()
    }

    pub fn measure(&self, sign: i8) -> Result<&ModularMeasure> {
        if sign > 0 {
            Ok(&self.plus)
        } else {
            self.minus.as_ref().ok_or_else(|| Error::Domain("no symbol of sign - was supplied".into()))
        }
    }

    /// Order of growth bound `v_p(alpha)`.
    pub fn growth_bound(&self) -> i64 {
        self.root.slope()
    }

    /// Branch `omega^t` from the degree-0 measure of sign `(-1)^t`.
    pub fn series_family(&self, terms: usize) -> Result<SeriesFamily> {
        let p = self.p();
        let branches = (0..(p - 1) as u32)
            .map(|t| {
                let sign = if t % 2 == 0 { 1 } else { -1 };
                measure_to_series(&self.measure(sign)?.moments[0], t, terms)
            })
            .collect::<Result<_>>()?;
        Ok(SeriesFamily { p, branches })
    }
}

fn parity_sign(chi: &DirichletCharacter, j: u32) -> i8 {
    let s = chi.parity() * if j % 2 == 0 { 1 } else { -1 };
    if s > 0 {
        1
    } else {
        -1
    }
}

/// `∫ chi(x) x^j dmu` as a Riemann sum at level `max(cond(chi), 1)`.
///
/// The sum is exact: `chi` is constant on intervals of that level and the
/// moment `x^j` is stored directly.
pub fn lp_evaluate(l: &PadicLFunction, chi: &DirichletCharacter, j: u32) -> Result<CyclotomicPadic> {
    let p = l.p();
    if chi.p() != p {
        return Err(Error::PrimeMismatch(chi.p(), p));
    }
    if j > l.weight() - 2 {
        return Err(Error::Domain(format!("j = {j} outside the critical range 0..={}", l.weight() - 2)));
    }
    let prim = chi.primitive();
    let m = prim.conductor_exponent().max(1);
    let mu = l.measure(parity_sign(chi, j))?;
    if m > mu.levels() {
        return Err(Error::LevelExceeded { requested: m, stored: mu.levels() });
    }
    let chi_m = prim.extend(m)?;
    let table = mu.moments[j as usize].level(m)?;
    let mut acc = CyclotomicPadic::zero(p, chi_m.value_level(), EXACT_ZERO_PREC);
    for (&a, v) in table {
        acc = &acc + &chi_m.value(a as i64).scale(v);
    }
    Ok(acc)
}

/// `lp_evaluate` over many characters in parallel, in input order.
pub fn lp_sweep(l: &PadicLFunction, chars: &[DirichletCharacter], j: u32) -> Result<Vec<CyclotomicPadic>> {
    chars.par_iter().map(|c| lp_evaluate(l, c, j)).collect()
}

/// `L(f, chi, 1) / Omega = G(chi-bar)^{-1} sum_{a mod m} chi-bar(a) lambda(1, -a, m)`
/// for `chi` of conductor `m = p^n` and a weight-2 symbol of sign `chi(-1)`.
pub fn birch_twisted_value(phi: &dyn PeriodValues, chi: &DirichletCharacter) -> Result<CyclotomicPadic> {
    if phi.weight() != 2 {
        return Err(Error::Domain("twisted finite sums are implemented for weight 2".into()));
    }
    if phi.sign() as i64 != chi.parity() {
        return Err(Error::Domain("symbol sign does not match the parity of the character".into()));
    }
    let p = chi.p();
    let prim = chi.primitive();
    let n = prim.modulus_exponent();
    let m = p.pow(n);
    let bar = prim.conjugate();
    let abs = chi.precision() as i64;
    let mut acc = CyclotomicPadic::zero(p, bar.value_level(), EXACT_ZERO_PREC);
    for a in (0..m).filter(|a| n == 0 || a % p != 0) {
        let l = phi.lambda_monomial(0, -(a as i64), m)?;
        acc = &acc + &bar.value(a as i64).scale(&PadicNumber::from_rational(p, &l, abs));
    }
    Ok(&acc * &gauss_sum_inverse(&bar)?)
}

/// Right side of the interpolation formula at `j = 0`:
/// `e(chi, 0) p^n / (G(chi-bar) alpha^n) * L(f, chi-bar, 1) / Omega`.
pub fn interpolation_value(
    plus: &dyn PeriodValues,
    minus: Option<&dyn PeriodValues>,
    root: &HeckeRootChoice,
    chi: &DirichletCharacter,
) -> Result<CyclotomicPadic> {
    let p = root.p;
    let prim = chi.primitive();
    let n = prim.modulus_exponent();
    let phi = if chi.parity() > 0 {
        plus
    } else {
        minus.ok_or_else(|| Error::Domain("no symbol of sign - was supplied".into()))?
    };
    let bar = prim.conjugate();
    let e = euler_factor_mtt(&prim, 0, root)?;
    let b = birch_twisted_value(phi, &bar)?;
    let abs = chi.precision() as i64 + n as i64;
    let scale = &(&e.value * &int_padic(p, &ppow(p, n), abs)) * &root.alpha.pow(-(n as i64))?;
    Ok(&b.scale(&scale) * &gauss_sum_inverse(&bar)?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EulerFactor {
    pub value: PadicNumber,
    pub exceptional: bool,
}

impl EulerFactor {
    fn new(value: PadicNumber) -> Self {
        EulerFactor { exceptional: value.is_zero(), value }
    }
}

/// `(1 - chi-bar(p) eps p^{k-2-j} / alpha)(1 - chi(p) p^j / alpha)` where
/// `chi_p` is `chi(p)`, `None` for a ramified character.
pub fn euler_factor_mtt_at(chi_p: Option<&PadicNumber>, j: u32, data: &HeckeRootChoice) -> Result<EulerFactor> {
    let p = data.p;
    let prec = data.alpha.rel_precision().max(1);
    let one = PadicNumber::one(p, prec + data.k + j);
    let Some(x) = chi_p else {
        return Ok(EulerFactor::new(one));
    };
    let ainv = data.alpha.inv()?;
    let w = data.k as i64 - 2 - j as i64;
    let first = &(&x.inv()?.mul_int(data.eps) * &one.shift(w)) * &ainv;
    let second = &(x * &one.shift(j as i64)) * &ainv;
    Ok(EulerFactor::new(&(&one - &first) * &(&one - &second)))
}

/// The factor for a character of p-power conductor: `chi(p) = 1` when the
/// character is trivial and `0` otherwise.
pub fn euler_factor_mtt(chi: &DirichletCharacter, j: u32, data: &HeckeRootChoice) -> Result<EulerFactor> {
    if chi.p() != data.p {
        return Err(Error::PrimeMismatch(chi.p(), data.p));
    }
    if chi.conductor_exponent() > 0 {
        euler_factor_mtt_at(None, j, data)
    } else {
        euler_factor_mtt_at(Some(&PadicNumber::one(data.p, data.alpha.rel_precision().max(1))), j, data)
    }
}

/// Local character at `p`: its conductor exponent and, when unramified, `chi(p)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalCharacter {
    pub conductor_exponent: u32,
    pub frobenius: PadicNumber,
}

/// The three-case factor for a unit `alpha`:
/// `1 - alpha/chi(p)` if unramified and `alpha = ±1`,
/// `(1 - chi(p)/alpha)(1 - 1/(alpha chi(p)))` if unramified otherwise,
/// `alpha^{-c}` for conductor `p^c`, `c > 0`.
pub fn euler_factor_auto(chi: &LocalCharacter, alpha: &PadicNumber) -> Result<EulerFactor> {
    if !alpha.is_unit() {
        return Err(Error::Domain("alpha must be a p-adic unit".into()));
    }
    if chi.conductor_exponent > 0 {
        return Ok(EulerFactor::new(alpha.pow(-(chi.conductor_exponent as i64))?));
    }
    let x = &chi.frobenius;
    if !x.is_unit() {
        return Err(Error::Domain("chi(p) must be a unit for an unramified character".into()));
    }
    let one = PadicNumber::one(alpha.p(), alpha.rel_precision());
    let v = if (alpha - &one).is_zero() || (alpha + &one).is_zero() {
        &one - &alpha.checked_div(x)?
    } else {
        &(&one - &x.checked_div(alpha)?) * &(&one - &(alpha * x).inv()?)
    };
    Ok(EulerFactor::new(v))
}

/// `B_0, ..., B_n` with `B_1 = -1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    b.push(BigRational::one());
    for m in 1..=n {
        let s: BigRational = (0..m)
            .map(|j| &b[j] * BigRational::from_integer(binomial_u(m as u64 + 1, j as u64)))
            .sum();
        b.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// `sum_{0 <= a < n} a^k` by Faulhaber's formula; `b` holds `B_0..B_k`.
pub fn power_sum(k: u32, n: &BigInt, b: &[BigRational]) -> BigRational {
    let nq = BigRational::from_integer(n.clone());
    let mut acc = BigRational::zero();
    for j in 0..=k as usize {
        if b[j].is_zero() {
            continue;
        }
        acc += &b[j] * BigRational::from_integer(binomial_u(k as u64 + 1, j as u64)) * nq.pow((k + 1) as i32 - j as i32);
    }
    acc / BigRational::from_integer(BigInt::from(k + 1))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZetaValue {
    pub p: u64,
    pub k: u32,
    /// Regularizing parameter.
    pub c: u64,
    pub value: PadicNumber,
    /// `k + 1 ≡ 0 mod (p - 1)`: the branch meeting the pole, where the
    /// value is not integral.
    pub pole_adjacent: bool,
}

/// Largest regularizer accepted; the sum has `c - 1` terms.
pub const MAX_REGULARIZER: u64 = 1 << 20;

/// `(1 - p^k) zeta(-k)` to `prec` relative digits with `c = 1 + p`.
pub fn kubota_leopoldt(p: u64, k: u32, prec: u32) -> Result<ZetaValue> {
    kubota_leopoldt_with(p, k, prec, p + 1)
}

/// `zeta_p(k) = -(1 - c^{-(k+1)})^{-1} ∫_{Z_p^×} x^k dE_{1,c}`, the integral
/// taken as an exact Riemann sum at a level deep enough for `prec` digits.
pub fn kubota_leopoldt_with(p: u64, k: u32, prec: u32, c: u64) -> Result<ZetaValue> {
    check_prime(p)?;
    if k < 1 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    if prec == 0 {
        return Err(Error::Domain("precision must be positive".into()));
    }
    if c < 2 || c % p == 0 || c > MAX_REGULARIZER {
        return Err(Error::Domain(format!("regularizer {c} must be in 2..={MAX_REGULARIZER} and prime to p")));
    }
    if k % 2 == 0 {
        // B_{k+1} = 0, so the value is exactly zero and no level gives it relative digits
        return Ok(ZetaValue {
            p,
            k,
            c,
            value: PadicNumber::zero(p, prec as i64),
            pole_adjacent: (k as u64 + 1) % (p - 1) == 0,
        });
    }
    let b = bernoulli_numbers(k as usize);
    let ck = BigInt::from(c).pow(k + 1);
    let loss = vp_int(p, &(&ck - 1u32)) as i64;
    let reg = BigRational::new(&ck - 1u32, ck.clone());
    let mut level = prec as i64 + loss + 2;
    loop {
        if level > 1 << 12 {
            return Err(Error::ResourceBound("zeta value needs too deep a level".into()));
        }
        let r = regularized_sum(p, k, c, level as u32, &b);
        let x = PadicNumber::from_rational(p, &r, level);
        let d = PadicNumber::from_rational(p, &reg, level + loss + prec as i64 + 2);
        let z = -x.checked_div(&d)?;
        if z.rel_precision() >= prec {
            return Ok(ZetaValue {
                p,
                k,
                c,
                value: z.reduce_rel(prec),
                pole_adjacent: (k as u64 + 1) % (p - 1) == 0,
            });
        }
        level += (prec - z.rel_precision()) as i64 + 1;
    }
}

/// `sum_{a < p^N, p ∤ a} a^k E_{1,c}(a + p^N Z_p)` with
/// `E_{1,c}(a + p^N) = floor(c a / p^N) / c + (1/c - 1) / 2`.
fn regularized_sum(p: u64, k: u32, c: u64, level: u32, b: &[BigRational]) -> BigRational {
    let cb = BigInt::from(c);
    // (sum a^k, sum a^k floor(c a / M)) over 0 <= a < M
    let full = |mm: &BigInt| -> (BigRational, BigRational) {
        let s = power_sum(k, mm, b);
        let mut f = BigRational::zero();
        for j in 1..c {
            let lo = (BigInt::from(j) * mm + &cb - 1u32) / &cb;
            f += &s - power_sum(k, &lo, b);
        }
        (s, f)
    };
    let (s_top, f_top) = full(&ppow(p, level));
    let (s_low, f_low) = full(&ppow(p, level - 1));
    let pk = BigRational::from_integer(BigInt::from(p).pow(k));
    let s = s_top - &pk * s_low;
    let f = f_top - &pk * f_low;
    let cq = BigRational::from_integer(cb);
    let half = BigRational::new(1.into(), 2.into());
    &f / &cq + s * (cq.recip() - BigRational::one()) * half
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KummerCheck {
    pub k1: u32,
    pub k2: u32,
    /// The congruence holds modulo `p^{t+1}`.
    pub t: u32,
    pub agree: bool,
}

/// Compares `zeta_p(k1)` and `zeta_p(k2)` for `k1 ≡ k2 mod (p-1)p^t`.
pub fn kummer_congruence(p: u64, k1: u32, k2: u32) -> Result<KummerCheck> {
    check_prime(p)?;
    let diff = (k1 as i64 - k2 as i64).unsigned_abs();
    if diff == 0 || diff % (p - 1) != 0 {
        return Err(Error::Domain("weights must differ by a nonzero multiple of p - 1".into()));
    }
    if (k1 as u64 + 1) % (p - 1) == 0 {
        return Err(Error::Domain("pole-adjacent branch has no congruence".into()));
    }
    let t = vp_int(p, &BigInt::from(diff / (p - 1)));
    let z1 = kubota_leopoldt(p, k1, t + 2)?.value;
    let z2 = kubota_leopoldt(p, k2, t + 2)?.value;
    let agree = (&z1 - &z2).reduce_abs(t as i64 + 1).is_zero();
    Ok(KummerCheck { k1, k2, t, agree })
}

/// The rational `(1 - p^k)(-B_{k+1}/(k+1))`.
pub fn zeta_bernoulli_value(p: u64, k: u32) -> BigRational {
    let b = bernoulli_numbers(k as usize + 1);
    let one = BigRational::one();
    let pk = BigRational::from_integer(BigInt::from(p).pow(k));
    (one - pk) * -(&b[k as usize + 1] / BigRational::from_integer(BigInt::from(k + 1)))
}
