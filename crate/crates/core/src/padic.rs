//! Truncated p-adic numbers.
//!
//! A nonzero element is stored as `p^val * unit` with `unit` a residue modulo
//! `p^prec` coprime to `p`, so `prec` is the relative precision and
//! `val + prec` the absolute one.  A value that is zero at the tracked
//! precision keeps its absolute precision in `val` and has `prec == 0`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PadicNumber {
    p: u64,
    val: i64,
    unit: BigInt,
    prec: u32,
}

/// Absolute precision used for zeros that are known exactly.
pub const EXACT_ZERO_PREC: i64 = 1 << 40;

pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn check_prime(p: u64) -> Result<()> {
    if is_odd_prime(p) {
        Ok(())
    } else {
        Err(Error::BadPrime(p))
    }
}

pub(crate) fn ppow(p: u64, e: u32) -> BigInt {
    BigInt::from(p).pow(e)
}

/// p-adic valuation of a nonzero integer.
pub fn vp_int(p: u64, n: &BigInt) -> u32 {
    debug_assert!(!n.is_zero());
    let pb = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

pub fn vp_u64(p: u64, mut n: u64) -> u32 {
    debug_assert!(n != 0);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Valuation of a nonzero rational.
pub fn vp_rational(p: u64, q: &BigRational) -> i64 {
    vp_int(p, q.numer()) as i64 - vp_int(p, q.denom()) as i64
}

fn strip(p: u64, n: &BigInt) -> (u32, BigInt) {
    let pb = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return (v, n);
        }
        n = q;
        v += 1;
    }
}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

impl PadicNumber {
    /// Builds `n * p^val` known modulo `p^abs`.
    fn normalize(p: u64, val: i64, n: BigInt, abs: i64) -> Self {
        if n.is_zero() || val >= abs {
            return Self::zero(p, abs);
        }
        let (t, u) = strip(p, &n);
        let val = val + t as i64;
        if val >= abs {
            return Self::zero(p, abs);
        }
        let prec = (abs - val) as u32;
        let unit = u.mod_floor(&ppow(p, prec));
        PadicNumber { p, val, unit, prec }
    }

    pub fn zero(p: u64, abs_prec: i64) -> Self {
        PadicNumber { p, val: abs_prec, unit: BigInt::zero(), prec: 0 }
    }

    pub fn one(p: u64, prec: u32) -> Self {
        Self::from_int(p, 1, prec as i64)
    }

    pub fn from_int(p: u64, n: impl Into<BigInt>, abs_prec: i64) -> Self {
        Self::normalize(p, 0, n.into(), abs_prec)
    }

    pub fn from_rational(p: u64, q: &BigRational, abs_prec: i64) -> Self {
        if q.is_zero() {
            return Self::zero(p, abs_prec);
        }
        let (vn, un) = strip(p, q.numer());
        let (vd, ud) = strip(p, q.denom());
        let val = vn as i64 - vd as i64;
        if val >= abs_prec {
            return Self::zero(p, abs_prec);
        }
        let prec = (abs_prec - val) as u32;
        let m = ppow(p, prec);
        let inv = mod_inverse(&ud, &m).expect("unit denominator");
        PadicNumber { p, val, unit: (un * inv).mod_floor(&m), prec }
    }

    /// Raw constructor; `unit` is reduced and must be coprime to `p`.
    pub fn from_parts(p: u64, val: i64, unit: BigInt, prec: u32) -> Result<Self> {
        if prec == 0 {
            return Ok(Self::zero(p, val));
        }
        let unit = unit.mod_floor(&ppow(p, prec));
        if (&unit % BigInt::from(p)).is_zero() {
            return Err(Error::Domain("unit part divisible by p".into()));
        }
        Ok(PadicNumber { p, val, unit, prec })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `None` for zero at the tracked precision.
    pub fn valuation(&self) -> Option<i64> {
        if self.prec == 0 {
            None
        } else {
            Some(self.val)
        }
    }

    /// Valuation, or the absolute precision for zero: a lower bound in both cases.
    pub fn valuation_bound(&self) -> i64 {
        self.val
    }

    pub fn abs_precision(&self) -> i64 {
        self.val + self.prec as i64
    }

    pub fn rel_precision(&self) -> u32 {
        self.prec
    }

    pub fn unit(&self) -> &BigInt {
        &self.unit
    }

    pub fn is_zero(&self) -> bool {
        self.prec == 0
    }

    pub fn is_unit(&self) -> bool {
        self.prec > 0 && self.val == 0
    }

    /// Base-p digits of the unit part, least significant first.
    pub fn digits(&self) -> Vec<u64> {
        let pb = BigInt::from(self.p);
        let mut n = self.unit.clone();
        let mut out = Vec::with_capacity(self.prec as usize);
        for _ in 0..self.prec {
            let (q, r) = n.div_rem(&pb);
            out.push(r.to_u64().unwrap_or(0));
            n = q;
        }
        out
    }

    /// Drops precision to at most `abs` (absolute).
    pub fn reduce_abs(&self, abs: i64) -> Self {
        if abs >= self.abs_precision() {
            return self.clone();
        }
        Self::normalize(self.p, self.val, self.unit.clone(), abs)
    }

    /// Drops relative precision to at most `n` digits.
    pub fn reduce_rel(&self, n: u32) -> Self {
        if self.is_zero() || n >= self.prec {
            return self.clone();
        }
        Self::normalize(self.p, self.val, self.unit.clone(), self.val + n as i64)
    }

    /// The representative `unit * p^val` as a rational number.
    pub fn lift(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let pv = BigRational::from_integer(ppow(self.p, self.val.unsigned_abs() as u32));
        let u = BigRational::from_integer(self.unit.clone());
        if self.val >= 0 {
            u * pv
        } else {
            u / pv
        }
    }

    /// Integer representative of an integral element, in `[0, p^abs)`.
    pub fn lift_integer(&self) -> Option<BigInt> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        if self.val < 0 {
            return None;
        }
        Some(&self.unit * ppow(self.p, self.val as u32))
    }

    /// Representative of the residue class in `[0, p^m)` for integral elements.
    pub fn residue(&self, m: u32) -> Option<BigInt> {
        if self.abs_precision() < m as i64 {
            return None;
        }
        self.lift_integer().map(|x| x.mod_floor(&ppow(self.p, m)))
    }

    /// Agreement modulo the smaller of the two precisions.
    pub fn congruent(&self, other: &Self) -> bool {
        self.p == other.p && (self - other).is_zero()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InsufficientPrecision(format!(
                "division by O({}^{})",
                self.p, self.val
            )));
        }
        let m = ppow(self.p, self.prec);
        let unit = mod_inverse(&self.unit, &m).expect("unit");
        Ok(PadicNumber { p: self.p, val: -self.val, unit, prec: self.prec })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        if e == 0 {
            let prec = if self.is_zero() { self.val.max(1) as u32 } else { self.prec };
            return Ok(Self::one(self.p, prec));
        }
        if self.is_zero() {
            return Ok(Self::zero(self.p, self.val.saturating_mul(e)));
        }
        let m = ppow(self.p, self.prec);
        let unit = self.unit.modpow(&BigInt::from(e), &m);
        Ok(PadicNumber { p: self.p, val: self.val * e, unit, prec: self.prec })
    }

    /// Multiplication by an exact integer.
    pub fn mul_int(&self, n: impl Into<BigInt>) -> Self {
        let n = n.into();
        if n.is_zero() {
            return Self::zero(self.p, EXACT_ZERO_PREC);
        }
        let v = vp_int(self.p, &n) as i64;
        let c = Self::from_int(self.p, n, v + self.prec.max(1) as i64);
        self * &c
    }

    /// Multiplication by `p^k`, exact.
    pub fn shift(&self, k: i64) -> Self {
        PadicNumber { p: self.p, val: self.val + k, unit: self.unit.clone(), prec: self.prec }
    }

    /// Natural logarithm on `1 + pZ_p`.
    pub fn log(&self) -> Result<Self> {
        let p = self.p;
        if self.val != 0 || self.prec == 0 || !(&self.unit % BigInt::from(p)).is_one() {
            return Err(Error::Domain("log requires x = 1 mod p".into()));
        }
        let a = self.prec;
        let y = &self.unit - BigInt::one();
        if y.is_zero() {
            return Ok(Self::zero(p, a as i64));
        }
        let s = vp_int(p, &y) as i64;
        let a_i = a as i64;
        // Terms y^n/n have valuation >= n*s - floor(log_p n), nondecreasing in n.
        let mut n0: i64 = 1;
        loop {
            if n0 * s - ilog(p, n0 as u64) as i64 >= a_i {
                break;
            }
            n0 += 1;
        }
        let g = ilog(p, n0.max(1) as u64);
        let wm = ppow(p, a + g);
        let am = ppow(p, a);
        let mut sum = BigInt::zero();
        let mut yn = BigInt::one();
        for n in 1..n0 {
            yn = (&yn * &y).mod_floor(&wm);
            let vn = vp_u64(p, n as u64);
            let nu = BigInt::from(n as u64 / p.pow(vn));
            let t = (&yn / ppow(p, vn)) * mod_inverse(&nu, &am).expect("unit");
            if n % 2 == 1 {
                sum += t;
            } else {
                sum -= t;
            }
        }
        Ok(Self::normalize(p, 0, sum.mod_floor(&am), a_i))
    }

    /// Exponential on `pZ_p`.
    pub fn exp(&self) -> Result<Self> {
        let p = self.p;
        let a = self.abs_precision();
        if self.is_zero() {
            if a < 1 {
                return Err(Error::Domain("exp requires v_p(x) >= 1".into()));
            }
            return Ok(Self::one(p, a as u32));
        }
        if self.val < 1 {
            return Err(Error::Domain("exp requires v_p(x) >= 1".into()));
        }
        let v = self.val;
        let pm1 = p as i64 - 1;
        // n*v - v_p(n!) >= n*v - (n-1)/(p-1) >= a once n >= (a(p-1)-1)/(v(p-1)-1).
        let num = a * pm1 - 1;
        let den = v * pm1 - 1;
        let n0 = ((num + den - 1) / den).max(1);
        let mut g = 0u32;
        for n in 1..n0 {
            g += vp_u64(p, n as u64);
        }
        let au = a as u32;
        let wm = ppow(p, au + g);
        let am = ppow(p, au);
        let x = self.lift_integer().expect("integral");
        let mut sum = BigInt::one();
        let mut xn = BigInt::one();
        let mut fact_unit = BigInt::one();
        let mut fact_v = 0u32;
        for n in 1..n0 {
            xn = (&xn * &x).mod_floor(&wm);
            let vn = vp_u64(p, n as u64);
            fact_v += vn;
            fact_unit = (fact_unit * BigInt::from(n as u64 / p.pow(vn))).mod_floor(&am);
            let t = (&xn / ppow(p, fact_v)) * mod_inverse(&fact_unit, &am).expect("unit");
            sum += t;
        }
        Ok(Self::normalize(p, 0, sum.mod_floor(&am), a))
    }
}

/// floor(log_p n) for n >= 1.
pub(crate) fn ilog(p: u64, n: u64) -> u32 {
    let mut k = 0;
    let mut x = n;
    while x >= p {
        x /= p;
        k += 1;
    }
    k
}

/// Teichmüller representative of `a` modulo `p^n`.
pub fn teichmuller(p: u64, a: i64, n: u32) -> Result<PadicNumber> {
    check_prime(p)?;
    if a.rem_euclid(p as i64) == 0 {
        return Err(Error::Domain(format!("{a} is divisible by {p}")));
    }
    let m = ppow(p, n);
    let pe = BigInt::from(p);
    let mut x = BigInt::from(a).mod_floor(&m);
    for _ in 0..=n {
        let y = x.modpow(&pe, &m);
        if y == x {
            break;
        }
        x = y;
    }
    Ok(PadicNumber::from_int(p, x, n as i64))
}

fn same_p(a: &PadicNumber, b: &PadicNumber) {
    assert_eq!(a.p, b.p, "p-adic numbers over different primes");
}

impl<'a> Add<&'a PadicNumber> for &'a PadicNumber {
    type Output = PadicNumber;
    fn add(self, o: &PadicNumber) -> PadicNumber {
        same_p(self, o);
        let abs = self.abs_precision().min(o.abs_precision());
        let v = self.val.min(o.val);
        if v >= abs {
            return PadicNumber::zero(self.p, abs);
        }
        let term = |x: &PadicNumber| {
            if x.is_zero() {
                BigInt::zero()
            } else {
                &x.unit * ppow(x.p, (x.val - v) as u32)
            }
        };
        PadicNumber::normalize(self.p, v, term(self) + term(o), abs)
    }
}

impl Neg for &PadicNumber {
    type Output = PadicNumber;
    fn neg(self) -> PadicNumber {
        if self.is_zero() {
            return self.clone();
        }
        let m = ppow(self.p, self.prec);
        PadicNumber { p: self.p, val: self.val, unit: (-&self.unit).mod_floor(&m), prec: self.prec }
    }
}

impl<'a> Sub<&'a PadicNumber> for &'a PadicNumber {
    type Output = PadicNumber;
    fn sub(self, o: &PadicNumber) -> PadicNumber {
        self + &(-o)
    }
}

impl<'a> Mul<&'a PadicNumber> for &'a PadicNumber {
    type Output = PadicNumber;
    fn mul(self, o: &PadicNumber) -> PadicNumber {
        same_p(self, o);
        let val = self.val + o.val;
        if self.is_zero() || o.is_zero() {
            // a zero stores its absolute precision in `val`
            return PadicNumber::zero(self.p, val);
        }
        let prec = self.prec.min(o.prec);
        let m = ppow(self.p, prec);
        PadicNumber { p: self.p, val, unit: (&self.unit * &o.unit).mod_floor(&m), prec }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<PadicNumber> for PadicNumber {
            type Output = PadicNumber;
            fn $f(self, o: PadicNumber) -> PadicNumber { (&self).$f(&o) }
        }
        impl<'a> $tr<&'a PadicNumber> for PadicNumber {
            type Output = PadicNumber;
            fn $f(self, o: &PadicNumber) -> PadicNumber { (&self).$f(o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for PadicNumber {
    type Output = PadicNumber;
    fn neg(self) -> PadicNumber {
        -&self
    }
}

pub fn padic_add(x: &PadicNumber, y: &PadicNumber) -> Result<PadicNumber> {
    if x.p != y.p {
        return Err(Error::PrimeMismatch(x.p, y.p));
    }
    Ok(x + y)
}

pub fn padic_mul(x: &PadicNumber, y: &PadicNumber) -> Result<PadicNumber> {
    if x.p != y.p {
        return Err(Error::PrimeMismatch(x.p, y.p));
    }
    Ok(x * y)
}

pub fn padic_div(x: &PadicNumber, y: &PadicNumber) -> Result<PadicNumber> {
    x.checked_div(y)
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.p;
        let mut first = true;
        for (i, d) in self.digits().iter().enumerate() {
            if *d == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let e = self.val + i as i64;
            match e {
                0 => write!(f, "{d}")?,
                1 if *d == 1 => write!(f, "{p}")?,
                1 => write!(f, "{d}*{p}")?,
                _ if *d == 1 => write!(f, "{p}^{e}")?,
                _ => write!(f, "{d}*{p}^{e}")?,
            }
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O({p}^{})", self.abs_precision())
    }
}

/// Rational number from a signed machine fraction, for tests and constants.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
