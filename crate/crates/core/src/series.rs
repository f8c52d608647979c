//! Truncated power series with p-adic coefficients.

use std::ops::{Add, Mul, Sub};

use crate::cyclotomic::CyclotomicPadic;
use crate::error::{Error, Result};
use crate::padic::{PadicNumber, EXACT_ZERO_PREC};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    p: u64,
    coeffs: Vec<PadicNumber>,
}

impl PowerSeries {
    pub fn new(p: u64, coeffs: Vec<PadicNumber>) -> Result<Self> {
        if coeffs.iter().any(|c| c.p() != p) {
            return Err(Error::Domain("coefficient over a different prime".into()));
        }
        Ok(PowerSeries { p, coeffs })
    }

    /// Series from integer coefficients at absolute precision `prec`.
    pub fn from_ints(p: u64, coeffs: &[i64], prec: i64) -> Self {
        PowerSeries { p, coeffs: coeffs.iter().map(|&c| PadicNumber::from_int(p, c, prec)).collect() }
    }

    pub fn one(p: u64, len: usize, prec: i64) -> Self {
        let mut c = vec![PadicNumber::zero(p, prec); len];
        if len > 0 {
            c[0] = PadicNumber::from_int(p, 1, prec);
        }
        PowerSeries { p, coeffs: c }
    }

    /// `(1+T)^a` truncated to `len` terms.
    pub fn one_plus_t_pow(p: u64, a: u64, len: usize, prec: i64) -> Self {
        let coeffs = (0..len)
            .map(|n| PadicNumber::from_int(p, crate::util::binomial_u(a, n as u64), prec))
            .collect();
        PowerSeries { p, coeffs }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[PadicNumber] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&PadicNumber> {
        self.coeffs.get(i)
    }

    pub fn truncate(&self, len: usize) -> Self {
        PowerSeries { p: self.p, coeffs: self.coeffs.iter().take(len).cloned().collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Smallest absolute precision among the coefficients.
    pub fn abs_precision(&self) -> i64 {
        self.coeffs.iter().map(|c| c.abs_precision()).min().unwrap_or(EXACT_ZERO_PREC)
    }

    pub fn reduce_abs(&self, abs: i64) -> Self {
        PowerSeries { p: self.p, coeffs: self.coeffs.iter().map(|c| c.reduce_abs(abs)).collect() }
    }

    /// Index of the first coefficient that is nonzero at precision.
    pub fn order_t(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Minimum coefficient valuation; `None` if every coefficient is zero.
    pub fn min_valuation(&self) -> Option<i64> {
        self.coeffs.iter().filter_map(|c| c.valuation()).min()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.valuation_bound() >= 0)
    }

    pub fn scale(&self, s: &PadicNumber) -> Self {
        PowerSeries { p: self.p, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// Divides by `T^k`, dropping the first `k` coefficients.
    pub fn shift_down(&self, k: usize) -> Self {
        PowerSeries { p: self.p, coeffs: self.coeffs.iter().skip(k).cloned().collect() }
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self
            .coeffs
            .first()
            .ok_or_else(|| Error::Domain("empty series".into()))?
            .inv()?;
        let n = self.len();
        let mut out: Vec<PadicNumber> = Vec::with_capacity(n);
        out.push(c0.clone());
        for k in 1..n {
            let mut s = PadicNumber::zero(self.p, EXACT_ZERO_PREC);
            for i in 1..=k {
                s = &s + &(&self.coeffs[i] * &out[k - i]);
            }
            out.push(-&(&s * &c0));
        }
        Ok(PowerSeries { p: self.p, coeffs: out })
    }

    /// Horner evaluation at a point of a cyclotomic ring.
    pub fn eval(&self, t: &CyclotomicPadic) -> CyclotomicPadic {
        let mut acc = CyclotomicPadic::zero(self.p, t.level(), EXACT_ZERO_PREC);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t) + &CyclotomicPadic::from_padic(c).lift_to(t.level());
        }
        acc
    }

    pub fn eval_padic(&self, t: &PadicNumber) -> PadicNumber {
        let mut acc = PadicNumber::zero(self.p, EXACT_ZERO_PREC);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t) + c;
        }
        acc
    }
}

impl<'a> Add<&'a PowerSeries> for &'a PowerSeries {
    type Output = PowerSeries;
    fn add(self, o: &PowerSeries) -> PowerSeries {
        assert_eq!(self.p, o.p);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        PowerSeries { p: self.p, coeffs }
    }
}

impl<'a> Sub<&'a PowerSeries> for &'a PowerSeries {
    type Output = PowerSeries;
    fn sub(self, o: &PowerSeries) -> PowerSeries {
        assert_eq!(self.p, o.p);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect();
        PowerSeries { p: self.p, coeffs }
    }
}

impl<'a> Mul<&'a PowerSeries> for &'a PowerSeries {
    type Output = PowerSeries;
    /// Product truncated to the shorter length.
    fn mul(self, o: &PowerSeries) -> PowerSeries {
        assert_eq!(self.p, o.p);
        let n = self.len().min(o.len());
        let mut coeffs = vec![PadicNumber::zero(self.p, EXACT_ZERO_PREC); n];
        for i in 0..n {
            for j in 0..(n - i) {
                coeffs[i + j] = &coeffs[i + j] + &(&self.coeffs[i] * &o.coeffs[j]);
            }
        }
        PowerSeries { p: self.p, coeffs }
    }
}
