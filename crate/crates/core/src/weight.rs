//! Points of weight space: continuous characters of `Z_p^×`.
//!
//! A character is `x -> omega(x)^t * u^{s(x)} * x^j` where `<x> = gamma^{s(x)}`
//! for the fixed generator `gamma = 1 + p` of `1 + pZ_p`.

use serde::{Deserialize, Serialize};

use crate::character::DirichletCharacter;
use crate::cyclotomic::CyclotomicPadic;
use crate::error::{Error, Result};
use crate::padic::{check_prime, mod_inverse, teichmuller, PadicNumber};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WildPart {
    /// `u = zeta_{p^level}^exponent`.
    Finite { level: u32, exponent: u64 },
    /// `u` with `v_p(u - 1) >= 1`.
    Series(PadicNumber),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightChar {
    p: u64,
    tame: u32,
    wild: WildPart,
    j: i64,
}

pub fn gamma(p: u64, prec: u32) -> PadicNumber {
    PadicNumber::from_int(p, 1 + p as i64, prec as i64)
}

/// `<x> = x / omega(x)` for a unit `x`.
pub fn diamond(x: &PadicNumber) -> Result<PadicNumber> {
    if !x.is_unit() {
        return Err(Error::Domain("expected a p-adic unit".into()));
    }
    let p = x.p();
    let n = x.rel_precision();
    let a0 = x.residue(1).expect("unit").to_i64().expect("small");
    let w = teichmuller(p, a0, n)?;
    x.checked_div(&w)
}

/// `s(x)` with `<x> = gamma^s(x)`; absolute precision one less than `x`.
pub fn log_gamma_coordinate(x: &PadicNumber) -> Result<PadicNumber> {
    let d = diamond(x)?;
    let p = x.p();
    let lg = gamma(p, d.abs_precision() as u32).log()?;
    d.log()?.checked_div(&lg)
}

/// `s(b) mod p^{m-1}` for a unit residue `b` modulo `p^m`, so that
/// `<b> = gamma^{s(b)}` modulo `p^m`.
pub fn gamma_index(p: u64, m: u32, b: u64) -> Result<u64> {
    if b % p == 0 {
        return Err(Error::Domain(format!("{b} is not a unit")));
    }
    if m <= 1 {
        return Ok(0);
    }
    let probe = DirichletCharacter::new(p, m, 1, 1)?;
    let pl = p.pow(m - 1);
    let ib = probe.index(b as i64).expect("unit") % pl;
    let ig = probe.index(1 + p as i64).expect("unit") % pl;
    let inv = mod_inverse(&BigInt::from(ig), &BigInt::from(pl)).expect("unit index");
    let s = (BigInt::from(ib) * inv) % BigInt::from(pl);
    Ok(s.to_u64().expect("small"))
}

impl WeightChar {
    pub fn new(p: u64, tame: u32, wild: WildPart, j: i64) -> Result<Self> {
        check_prime(p)?;
        if tame as u64 >= p - 1 {
            return Err(Error::Domain(format!("tame index {tame} out of range")));
        }
        let wild = match wild {
            WildPart::Finite { level, exponent } => {
                let m = p.checked_pow(level).ok_or_else(|| Error::ResourceBound("level".into()))?;
                reduce_finite(p, level, exponent % m)
            }
            WildPart::Series(u) => {
                if u.p() != p {
                    return Err(Error::PrimeMismatch(u.p(), p));
                }
                let d = &u - &PadicNumber::one(p, u.abs_precision().max(1) as u32);
                if !u.is_unit() || d.valuation_bound() < 1 {
                    return Err(Error::Domain("wild parameter must satisfy |u - 1| < 1".into()));
                }
                WildPart::Series(u)
            }
        };
        Ok(WeightChar { p, tame, wild, j })
    }

    pub fn trivial(p: u64) -> Result<Self> {
        Self::new(p, 0, WildPart::Finite { level: 0, exponent: 0 }, 0)
    }

    /// `x -> x^k`, i.e. tame index `k mod (p-1)`, trivial wild part, twist `k`.
    pub fn power(p: u64, k: i64) -> Result<Self> {
        check_prime(p)?;
        let t = k.rem_euclid(p as i64 - 1) as u32;
        let sh = WeightChar::new(p, t, WildPart::Finite { level: 0, exponent: 0 }, 0)?;
        Ok(WeightChar { j: k, ..sh })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn tame(&self) -> u32 {
        self.tame
    }

    pub fn wild(&self) -> &WildPart {
        &self.wild
    }

    pub fn twist(&self) -> i64 {
        self.j
    }

    pub fn with_twist(&self, j: i64) -> Self {
        WeightChar { j, ..self.clone() }
    }

    /// `chi(x)` for a unit `x`; the result has the precision of `x`.
    pub fn eval(&self, x: &PadicNumber) -> Result<CyclotomicPadic> {
        if x.p() != self.p {
            return Err(Error::PrimeMismatch(x.p(), self.p));
        }
        if !x.is_unit() {
            return Err(Error::Domain("character evaluated at a non-unit".into()));
        }
        let p = self.p;
        let n = x.rel_precision();
        let a0 = x.residue(1).expect("unit").to_i64().expect("small");
        let tame = teichmuller(p, a0, n)?.pow(self.tame as i64)?;
        let twist = x.pow(self.j)?;
        let scalar = &tame * &twist;
        match &self.wild {
            WildPart::Finite { level, exponent } => {
                let level = *level;
                if level == 0 {
                    return Ok(CyclotomicPadic::from_padic(&scalar));
                }
                if n < level + 1 {
                    return Err(Error::InsufficientPrecision(format!(
                        "need {} digits of x for a wild character of level {level}",
                        level + 1
                    )));
                }
                let s = log_gamma_coordinate(&x.reduce_abs(level as i64 + 1))?;
                let s = s.residue(level).ok_or_else(|| {
                    Error::InsufficientPrecision("wild coordinate".into())
                })?;
                let pl = BigInt::from(p.pow(level));
                let e = (s * BigInt::from(*exponent)) % pl;
                let z = CyclotomicPadic::zeta_power(p, level, e.to_i64().expect("small"), n);
                Ok(z.scale(&scalar))
            }
            WildPart::Series(u) => {
                let s = log_gamma_coordinate(x)?;
                let w = (&s * &u.log()?).exp()?;
                Ok(CyclotomicPadic::from_padic(&(&scalar * &w)))
            }
        }
    }

    /// Dirichlet character with the same values, for finite-order characters with `j = 0`.
    pub fn to_dirichlet(&self, prec: u32) -> Result<DirichletCharacter> {
        let p = self.p;
        if self.j != 0 {
            return Err(Error::Domain("twisted character has infinite order".into()));
        }
        let WildPart::Finite { level, exponent } = self.wild else {
            return Err(Error::Domain("series wild part has infinite order".into()));
        };
        let n = level + 1;
        let phi = ((p - 1) * p.pow(level)) as i64;
        if level == 0 {
            return DirichletCharacter::new(p, 1, self.tame as i64, prec);
        }
        let pl = p.pow(level) as i64;
        let probe = DirichletCharacter::new(p, n, 1, prec)?;
        let ig = probe.index(1 + p as i64).expect("unit") as i64;
        let inv = mod_inverse(&BigInt::from(ig.rem_euclid(pl)), &BigInt::from(pl))
            .expect("index of gamma is prime to p")
            .to_i64()
            .expect("small");
        let wexp = (exponent as i64 * inv).rem_euclid(pl);
        // CRT: e = tame mod (p-1), e = wexp mod p^level
        let e = (0..phi)
            .step_by(p as usize - 1)
            .map(|k| k + self.tame as i64)
            .find(|e| e.rem_euclid(pl) == wexp)
            .expect("CRT solution");
        DirichletCharacter::new(p, n, e, prec)
    }
}

fn reduce_finite(p: u64, mut level: u32, mut e: u64) -> WildPart {
    while level > 0 && e % p == 0 {
        e /= p;
        level -= 1;
    }
    if level == 0 {
        e = 0;
    }
    WildPart::Finite { level, exponent: e }
}

/// Tame/wild decomposition of a Dirichlet character of modulus `p^n`.
pub fn decompose(chi: &DirichletCharacter) -> WeightChar {
    let p = chi.p();
    let n = chi.modulus_exponent();
    let tame = chi.tame_index();
    if n <= 1 {
        return WeightChar { p, tame, wild: WildPart::Finite { level: 0, exponent: 0 }, j: 0 };
    }
    let level = n - 1;
    let pl = p.pow(level) as u128;
    let ig = chi.index(1 + p as i64).expect("unit") as u128;
    let e = ((chi.exponent() as u128 * ig) % pl) as u64;
    WeightChar { p, tame, wild: reduce_finite(p, level, e), j: 0 }
}

/// `<x>^s = exp(s log <x>)` for `s` in `Z_p`.
pub fn char_s(s: &PadicNumber, x: &PadicNumber) -> Result<PadicNumber> {
    if s.valuation_bound() < 0 {
        return Err(Error::Domain("exponent must be p-adically integral".into()));
    }
    let l = diamond(x)?.log()?;
    (s * &l).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decompose_examples() {
        let triv = DirichletCharacter::trivial(5, 2, 8).unwrap();
        assert_eq!(decompose(&triv), WeightChar::trivial(5).unwrap());
        let om = DirichletCharacter::teichmuller_char(5, 8).unwrap();
        let w = decompose(&om);
        assert_eq!(w.tame(), 1);
        assert_eq!(w.wild(), &WildPart::Finite { level: 0, exponent: 0 });
        // primitive, trivial tame part: exponent a nonzero multiple of p-1
        let chi = DirichletCharacter::new(5, 2, 4, 8).unwrap();
        let w = decompose(&chi);
        assert_eq!(w.tame(), 0);
        assert!(matches!(w.wild(), WildPart::Finite { level: 1, exponent } if *exponent != 0));
    }

    #[test]
    fn gamma_index_powers() {
        let p = 5;
        let mut x = 1u64;
        for s in 0..25u64 {
            let w = teichmuller(p, 3, 3).unwrap().residue(3).unwrap().to_u64().unwrap();
            assert_eq!(gamma_index(p, 3, x * w % 125).unwrap(), s);
            x = x * 6 % 125;
        }
    }

    #[test]
    fn coordinate_at_gamma() {
        let w = WeightChar::new(5, 0, WildPart::Series(PadicNumber::from_int(5, 6, 10)), 0).unwrap();
        let v = w.eval(&gamma(5, 10)).unwrap().to_padic().unwrap();
        assert!(v.congruent(&PadicNumber::from_int(5, 6, 9)));
    }

    #[test]
    fn char_s_integer_and_half() {
        let x = PadicNumber::from_int(5, 6, 12);
        assert!(char_s(&PadicNumber::zero(5, 12), &x).unwrap().congruent(&PadicNumber::one(5, 12)));
        let c = char_s(&PadicNumber::from_int(5, 3, 12), &x).unwrap();
        assert!(c.congruent(&PadicNumber::from_int(5, 216, 12)));
        let half = PadicNumber::from_rational(5, &crate::padic::ratio(1, 2), 12);
        let r = char_s(&half, &x).unwrap();
        assert!((&r * &r).congruent(&x.reduce_abs(11)));
    }
}
