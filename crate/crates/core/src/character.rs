//! Dirichlet characters of p-power modulus and their Gauss sums.
//!
//! Fix `g`, the least primitive root modulo `p^2` (hence modulo every `p^n`),
//! and `xi = omega(g) * zeta_{p^n}^p`, a primitive `phi(p^n)`-th root of unity.
//! The character with exponent `e` sends `a` to `xi^(e * ind_g(a))`, which
//! splits as `omega(a)^e * zeta_{p^{n-1}}^(e * ind_g(a))`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::cyclotomic::{phi_pn, CyclotomicPadic};
use crate::error::{Error, Result};
use crate::padic::{check_prime, teichmuller, PadicNumber};

pub(crate) struct DlogTable {
    /// `ind[a]` for units `a < p^n`, `u64::MAX` elsewhere.
    pub ind: Vec<u64>,
}

fn order_mod(g: u64, m: u64) -> u64 {
    let mut x = g % m;
    let mut k = 1;
    while x != 1 {
        x = x * g % m;
        k += 1;
    }
    k
}

pub fn primitive_root_mod_p2(p: u64) -> u64 {
    let m = p * p;
    (2..m).find(|&g| g % p != 0 && order_mod(g, m) == p * (p - 1)).expect("primitive root")
}

pub(crate) fn dlog_table(p: u64, n: u32) -> Arc<DlogTable> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Arc<DlogTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("dlog cache").get(&(p, n)) {
        return t.clone();
    }
    let m = p.pow(n);
    let g = primitive_root_mod_p2(p);
    let mut ind = vec![u64::MAX; m as usize];
    let phi = phi_pn(p, n) as u64;
    let mut x = 1 % m;
    for i in 0..phi {
        ind[x as usize] = i;
        x = x * g % m;
    }
    if n == 0 {
        ind[0] = 0;
    }
    let t = Arc::new(DlogTable { ind });
    cache.lock().expect("dlog cache").insert((p, n), t.clone());
    t
}

/// Largest `p^n` for which character tables are built.
pub const MAX_MODULUS: u64 = 1 << 22;

#[derive(Clone)]
pub struct DirichletCharacter {
    p: u64,
    n: u32,
    exponent: u64,
    prec: u32,
    table: Arc<DlogTable>,
}

impl std::fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DirichletCharacter")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("exponent", &self.exponent)
            .field("prec", &self.prec)
            .finish()
    }
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, o: &Self) -> bool {
        self.p == o.p && self.n == o.n && self.exponent == o.exponent
    }
}
impl Eq for DirichletCharacter {}

impl DirichletCharacter {
    /// Character of modulus `p^n` with exponent `e` (read modulo `phi(p^n)`).
    pub fn new(p: u64, n: u32, e: i64, prec: u32) -> Result<Self> {
        check_prime(p)?;
        let m = p.checked_pow(n).filter(|&m| m <= MAX_MODULUS);
        if m.is_none() {
            return Err(Error::ResourceBound(format!("modulus {p}^{n} too large")));
        }
        let phi = phi_pn(p, n) as i64;
        Ok(DirichletCharacter {
            p,
            n,
            exponent: e.rem_euclid(phi) as u64,
            prec,
            table: dlog_table(p, n),
        })
    }

    pub fn trivial(p: u64, n: u32, prec: u32) -> Result<Self> {
        Self::new(p, n, 0, prec)
    }

    /// The Teichmüller character `omega` of modulus `p`.
    pub fn teichmuller_char(p: u64, prec: u32) -> Result<Self> {
        Self::new(p, 1, 1, prec)
    }

    /// Every character of modulus `p^n`, ordered by exponent.
    pub fn all(p: u64, n: u32, prec: u32) -> Result<Vec<Self>> {
        let phi = phi_pn(p, n) as i64;
        (0..phi).map(|e| Self::new(p, n, e, prec)).collect()
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Exponent `n` of the modulus `p^n`.
    pub fn modulus_exponent(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.n)
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn with_precision(&self, prec: u32) -> Self {
        DirichletCharacter { prec, ..self.clone() }
    }

    pub fn tame_index(&self) -> u32 {
        (self.exponent % (self.p - 1)) as u32
    }

    /// `ind_g(a)` modulo `phi(p^n)`, `None` when `p | a`.
    pub fn index(&self, a: i64) -> Option<u64> {
        if self.n == 0 {
            return Some(0);
        }
        let m = self.modulus() as i64;
        let r = a.rem_euclid(m) as usize;
        let i = self.table.ind[r];
        (i != u64::MAX).then_some(i)
    }

    /// `chi(a)` as an exponent of `xi`, `None` when `p | a`.
    pub fn value_exponent(&self, a: i64) -> Option<u64> {
        let phi = phi_pn(self.p, self.n) as u128;
        self.index(a).map(|i| ((self.exponent as u128 * i as u128) % phi) as u64)
    }

    /// Level of the cyclotomic ring holding the values.
    pub fn value_level(&self) -> u32 {
        self.n.saturating_sub(1)
    }

    /// `chi(a)`; zero when `p | a` (for nontrivial modulus).
    pub fn value(&self, a: i64) -> CyclotomicPadic {
        let level = self.value_level();
        let Some(i) = self.index(a) else {
            return CyclotomicPadic::zero(self.p, level, crate::padic::EXACT_ZERO_PREC);
        };
        if self.n == 0 {
            return CyclotomicPadic::one(self.p, 0, self.prec);
        }
        let t = self.tame_index() as i64;
        let w = if level == 0 {
            0
        } else {
            let pl = self.p.pow(level) as u128;
            ((self.exponent as u128 * i as u128) % pl) as i64
        };
        let om = teichmuller(self.p, a, self.prec).expect("unit").pow(t).expect("unit");
        CyclotomicPadic::zeta_power(self.p, level, w, self.prec).scale(&om)
    }

    /// `chi(-1) = (-1)^e`.
    pub fn parity(&self) -> i64 {
        if self.exponent % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.exponent == 0
    }

    pub fn conjugate(&self) -> Self {
        let phi = phi_pn(self.p, self.n) as u64;
        DirichletCharacter { exponent: (phi - self.exponent) % phi, ..self.clone() }
    }

    /// Same character viewed modulo `p^n2`, `n2 >= n`.
    pub fn extend(&self, n2: u32) -> Result<Self> {
        if n2 < self.n {
            return Err(Error::Domain("cannot extend to a smaller modulus".into()));
        }
        if self.n == 0 {
            return Self::new(self.p, n2, 0, self.prec);
        }
        let e = self.exponent as i64 * self.p.pow(n2 - self.n) as i64;
        Self::new(self.p, n2, e, self.prec)
    }

    pub fn product(&self, o: &Self) -> Result<Self> {
        if self.p != o.p {
            return Err(Error::PrimeMismatch(self.p, o.p));
        }
        let n = self.n.max(o.n);
        let (a, b) = (self.extend(n)?, o.extend(n)?);
        Self::new(self.p, n, (a.exponent + b.exponent) as i64, self.prec.min(o.prec))
    }

    /// Exponent `c` of the conductor `p^c`.
    pub fn conductor_exponent(&self) -> u32 {
        if self.exponent == 0 {
            return 0;
        }
        for c in 1..self.n {
            let one_plus = 1 + self.p.pow(c) as i64;
            if self.value_exponent(one_plus) == Some(0) {
                return c;
            }
        }
        self.n
    }

    pub fn conductor(&self) -> u64 {
        self.p.pow(self.conductor_exponent())
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor_exponent() == self.n
    }

    /// The primitive character inducing this one.
    pub fn primitive(&self) -> Self {
        let c = self.conductor_exponent();
        if c == self.n {
            return self.clone();
        }
        let d = self.p.pow(self.n - c);
        Self::new(self.p, c, (self.exponent / d) as i64, self.prec).expect("valid modulus")
    }
}

/// `G(chi) = sum_{a mod p^n, p ∤ a} chi(a) zeta_{p^n}^a`.
pub fn gauss_sum(chi: &DirichletCharacter) -> CyclotomicPadic {
    let p = chi.p;
    let n = chi.n;
    if n == 0 {
        return CyclotomicPadic::one(p, 0, chi.prec);
    }
    let m = p.pow(n);
    let t = chi.tame_index() as i64;
    let omegas: Vec<PadicNumber> = (1..p as i64)
        .map(|b| teichmuller(p, b, chi.prec).expect("unit").pow(t).expect("unit"))
        .collect();
    let pl = p.pow(n - 1) as u128;
    let mut table = vec![PadicNumber::zero(p, crate::padic::EXACT_ZERO_PREC); m as usize];
    for a in 1..m {
        if a % p == 0 {
            continue;
        }
        let i = chi.table.ind[a as usize];
        let w = ((chi.exponent as u128 * i as u128) % pl) as u64;
        let e = ((a + p * w) % m) as usize;
        let om = &omegas[(a % p) as usize - 1];
        table[e] = &table[e] + om;
    }
    CyclotomicPadic::from_exponent_table(p, n, table)
}

/// `1 / G(chi) = chi(-1) G(chi-bar) / p^n` for primitive `chi`.  Inverting
/// through the norm needs about `n phi(p^n) / 2` digits, this needs `n`.
pub fn gauss_sum_inverse(chi: &DirichletCharacter) -> Result<CyclotomicPadic> {
    if !chi.is_primitive() {
        return Err(Error::Domain("Gauss sum of an imprimitive character is not invertible".into()));
    }
    let p = chi.p;
    let g = gauss_sum(&chi.conjugate());
    let q = num_rational::BigRational::new(chi.parity().into(), num_bigint::BigInt::from(p).pow(chi.n));
    Ok(g.scale(&PadicNumber::from_rational(p, &q, chi.prec as i64)))
}
