//! Elements of `Q_p(zeta_{p^n})` in the power basis `1, zeta, ..., zeta^{phi-1}`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::padic::{PadicNumber, EXACT_ZERO_PREC};

pub fn phi_pn(p: u64, n: u32) -> usize {
    if n == 0 {
        1
    } else {
        ((p - 1) * p.pow(n - 1)) as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicPadic {
    p: u64,
    level: u32,
    coeffs: Vec<PadicNumber>,
}

fn exact_zero(p: u64) -> PadicNumber {
    PadicNumber::zero(p, EXACT_ZERO_PREC)
}

/// Folds a vector indexed by exponents mod `p^n` onto the power basis.
fn fold(p: u64, n: u32, mut v: Vec<PadicNumber>) -> Vec<PadicNumber> {
    let phi = phi_pn(p, n);
    if n == 0 {
        v.truncate(1);
        return v;
    }
    let step = p.pow(n - 1) as usize;
    let tail: Vec<PadicNumber> = v.drain(phi..).collect();
    for (off, c) in tail.into_iter().enumerate() {
        if c.is_zero() && c.abs_precision() >= EXACT_ZERO_PREC {
            continue;
        }
        // zeta^{phi + r} = -sum_{i=0}^{p-2} zeta^{r + i p^{n-1}}
        for i in 0..(p as usize - 1) {
            let j = off + i * step;
            v[j] = &v[j] - &c;
        }
    }
    v
}

impl CyclotomicPadic {
    pub fn zero(p: u64, level: u32, prec: i64) -> Self {
        let mut coeffs = vec![exact_zero(p); phi_pn(p, level)];
        coeffs[0] = PadicNumber::zero(p, prec);
        CyclotomicPadic { p, level, coeffs }
    }

    pub fn one(p: u64, level: u32, prec: u32) -> Self {
        Self::from_padic(&PadicNumber::one(p, prec)).lift_to(level)
    }

    pub fn from_padic(x: &PadicNumber) -> Self {
        CyclotomicPadic { p: x.p(), level: 0, coeffs: vec![x.clone()] }
    }

    pub fn from_coeffs(p: u64, level: u32, coeffs: Vec<PadicNumber>) -> Result<Self> {
        if coeffs.len() != phi_pn(p, level) {
            return Err(Error::Domain(format!(
                "expected {} coefficients, got {}",
                phi_pn(p, level),
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| c.p() != p) {
            return Err(Error::Domain("coefficient over a different prime".into()));
        }
        Ok(CyclotomicPadic { p, level, coeffs })
    }

    /// `zeta_{p^n}^e` with coefficient precision `prec`.
    pub fn zeta_power(p: u64, level: u32, e: i64, prec: u32) -> Self {
        let pn = p.pow(level) as i64;
        let r = e.rem_euclid(pn) as usize;
        let mut v = vec![exact_zero(p); pn as usize];
        v[r] = PadicNumber::one(p, prec);
        CyclotomicPadic { p, level, coeffs: fold(p, level, v) }
    }

    /// Sum of `c_e zeta^e` over arbitrary exponents `e` mod `p^n`.
    pub fn from_exponent_table(p: u64, level: u32, table: Vec<PadicNumber>) -> Self {
        assert_eq!(table.len() as u64, p.pow(level));
        CyclotomicPadic { p, level, coeffs: fold(p, level, table) }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[PadicNumber] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Smallest absolute precision over the coefficients.
    pub fn abs_precision(&self) -> i64 {
        self.coeffs.iter().map(|c| c.abs_precision()).min().unwrap_or(EXACT_ZERO_PREC)
    }

    pub fn reduce_abs(&self, abs: i64) -> Self {
        CyclotomicPadic {
            p: self.p,
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c.reduce_abs(abs)).collect(),
        }
    }

    /// Embeds into the ring at a higher level.
    pub fn lift_to(&self, level: u32) -> Self {
        assert!(level >= self.level, "cannot lift to a lower level");
        if level == self.level {
            return self.clone();
        }
        let scale = self.p.pow(level - self.level) as usize;
        let mut coeffs = vec![exact_zero(self.p); phi_pn(self.p, level)];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * scale] = c.clone();
        }
        CyclotomicPadic { p: self.p, level, coeffs }
    }

    /// Moves to the smallest level containing the element (at tracked precision).
    pub fn lower(&self) -> Self {
        let mut x = self.clone();
        while x.level > 0 {
            let p = x.p as usize;
            let ok = x.coeffs.iter().enumerate().all(|(j, c)| j % p == 0 || c.is_zero());
            if !ok {
                break;
            }
            let coeffs: Vec<PadicNumber> =
                x.coeffs.iter().step_by(p).take(phi_pn(x.p, x.level - 1)).cloned().collect();
            x = CyclotomicPadic { p: x.p, level: x.level - 1, coeffs };
        }
        x
    }

    /// The element as a p-adic number if it lies in `Q_p`.
    pub fn to_padic(&self) -> Option<PadicNumber> {
        let low = self.lower();
        if low.level == 0 {
            Some(low.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn scale(&self, s: &PadicNumber) -> Self {
        CyclotomicPadic {
            p: self.p,
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Galois action `zeta -> zeta^b` for `b` prime to `p`.
    pub fn galois(&self, b: i64) -> Self {
        let pn = self.p.pow(self.level) as i64;
        let mut v = vec![exact_zero(self.p); pn as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            let e = (j as i64 * b).rem_euclid(pn) as usize;
            v[e] = &v[e] + c;
        }
        CyclotomicPadic { p: self.p, level: self.level, coeffs: fold(self.p, self.level, v) }
    }

    fn conjugate_product(&self) -> Self {
        let pn = self.p.pow(self.level) as i64;
        let mut acc: Option<Self> = None;
        for b in (2..pn).filter(|b| b % self.p as i64 != 0) {
            let g = self.galois(b);
            acc = Some(match acc {
                None => g,
                Some(a) => &a * &g,
            });
        }
        acc.unwrap_or_else(|| Self::one(self.p, self.level, self.abs_precision().max(1) as u32))
    }

    /// Norm down to `Q_p`.
    pub fn norm(&self) -> PadicNumber {
        if self.level == 0 {
            return self.coeffs[0].clone();
        }
        let n = self * &self.conjugate_product();
        n.coeffs[0].clone()
    }

    /// Valuation normalized so that `v(p) = 1`; `None` for zero.
    pub fn valuation(&self) -> Option<Ratio<i64>> {
        if self.is_zero() {
            return None;
        }
        let v = self.norm().valuation()?;
        Some(Ratio::new(v, phi_pn(self.p, self.level) as i64))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.level == 0 {
            return Ok(Self::from_padic(&self.coeffs[0].inv()?));
        }
        let conj = self.conjugate_product();
        let n = (self * &conj).coeffs[0].clone();
        let ninv = n.inv()?;
        Ok(conj.scale(&ninv))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut base = self.clone();
        let mut acc: Option<Self> = None;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => &a * &base,
                });
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc.unwrap_or_else(|| Self::one(self.p, self.level, self.abs_precision().max(1) as u32))
    }

    /// Agreement at tracked precision.
    pub fn congruent(&self, o: &Self) -> bool {
        self.p == o.p && (self - o).is_zero()
    }
}

fn common(a: &CyclotomicPadic, b: &CyclotomicPadic) -> (CyclotomicPadic, CyclotomicPadic) {
    assert_eq!(a.p, b.p, "cyclotomic elements over different primes");
    let l = a.level.max(b.level);
    (a.lift_to(l), b.lift_to(l))
}

impl<'a> Add<&'a CyclotomicPadic> for &'a CyclotomicPadic {
    type Output = CyclotomicPadic;
    fn add(self, o: &CyclotomicPadic) -> CyclotomicPadic {
        let (a, b) = common(self, o);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        CyclotomicPadic { p: a.p, level: a.level, coeffs }
    }
}

impl<'a> Sub<&'a CyclotomicPadic> for &'a CyclotomicPadic {
    type Output = CyclotomicPadic;
    fn sub(self, o: &CyclotomicPadic) -> CyclotomicPadic {
        let (a, b) = common(self, o);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
        CyclotomicPadic { p: a.p, level: a.level, coeffs }
    }
}

impl Neg for &CyclotomicPadic {
    type Output = CyclotomicPadic;
    fn neg(self) -> CyclotomicPadic {
        CyclotomicPadic {
            p: self.p,
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl<'a> Mul<&'a CyclotomicPadic> for &'a CyclotomicPadic {
    type Output = CyclotomicPadic;
    fn mul(self, o: &CyclotomicPadic) -> CyclotomicPadic {
        let (a, b) = common(self, o);
        let p = a.p;
        let level = a.level;
        let pn = p.pow(level) as usize;
        let mut v = vec![exact_zero(p); pn];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() && x.abs_precision() >= EXACT_ZERO_PREC {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() && y.abs_precision() >= EXACT_ZERO_PREC {
                    continue;
                }
                let e = (i + j) % pn;
                v[e] = &v[e] + &(x * y);
            }
        }
        CyclotomicPadic { p, level, coeffs: fold(p, level, v) }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<CyclotomicPadic> for CyclotomicPadic {
            type Output = CyclotomicPadic;
            fn $f(self, o: CyclotomicPadic) -> CyclotomicPadic { (&self).$f(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl fmt::Display for CyclotomicPadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "({c})")?,
                _ => write!(f, "({c})*z^{j}")?,
            }
        }
        if first {
            write!(f, "O({}^{})", self.p, self.abs_precision())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_has_order_pn() {
        let z = CyclotomicPadic::zeta_power(5, 2, 1, 10);
        let one = CyclotomicPadic::one(5, 2, 10);
        assert!(z.pow(25).congruent(&one));
        assert!(!z.pow(5).congruent(&one));
    }

    #[test]
    fn sum_of_primitive_roots_is_minus_one() {
        let mut s = CyclotomicPadic::zero(7, 1, 10);
        for a in 1..7 {
            s = &s + &CyclotomicPadic::zeta_power(7, 1, a, 10);
        }
        let m1 = CyclotomicPadic::from_padic(&PadicNumber::from_int(7, -1, 10));
        assert!(s.congruent(&m1.lift_to(1)));
        assert_eq!(s.to_padic().unwrap().lift_integer(), PadicNumber::from_int(7, -1, 10).lift_integer());
    }

    #[test]
    fn uniformizer_valuation() {
        let x = &CyclotomicPadic::zeta_power(5, 1, 1, 12) - &CyclotomicPadic::one(5, 1, 12);
        assert_eq!(x.valuation(), Some(Ratio::new(1, 4)));
        let y = &CyclotomicPadic::zeta_power(3, 2, 1, 12) - &CyclotomicPadic::one(3, 2, 12);
        assert_eq!(y.valuation(), Some(Ratio::new(1, 6)));
    }

    #[test]
    fn inverse_round_trip() {
        let x = &CyclotomicPadic::zeta_power(5, 2, 3, 12) + &CyclotomicPadic::one(5, 2, 12).scale(&PadicNumber::from_int(5, 2, 12));
        let y = x.inv().unwrap();
        assert!((&x * &y).congruent(&CyclotomicPadic::one(5, 2, 12)));
    }

    #[test]
    fn lowering_recovers_subfield() {
        let z = CyclotomicPadic::zeta_power(5, 1, 2, 8).lift_to(3);
        let low = z.lower();
        assert_eq!(low.level(), 1);
        assert!(low.congruent(&CyclotomicPadic::zeta_power(5, 1, 2, 8)));
    }
}
