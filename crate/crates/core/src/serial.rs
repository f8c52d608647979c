//! JSON forms of numbers, series, measures and character descriptors.
//!
//! A p-adic number is written as
//! `{"p": 5, "valuation": v, "digits": [d0, d1, ...], "precision": N}`
//! with little-endian digits of the unit part and absolute precision `N`.
//! Zero has no digits and `valuation == precision`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use num_rational::BigRational;

use crate::character::DirichletCharacter;
use crate::cyclotomic::CyclotomicPadic;
use crate::error::{Error, Result};
use crate::higher_rank::{
    Gl32Metadata, Gl32PeriodProvider, Gl32Table, Gl4Metadata, Gl4PeriodProvider, Gl4Table, MAX_PROVIDER_LEVEL,
};
use crate::iwasawa::{IwasawaSeries, SeriesFamily};
use crate::lfun::EigenTable;
use crate::measure::{certify_bounded, BoundednessCertificate, Domain, FiniteLevelDistribution};
use crate::padic::{is_odd_prime, PadicNumber, EXACT_ZERO_PREC};
use crate::polygon::parse_q64;
use crate::series::PowerSeries;

pub const FORMAT_VERSION: u32 = 1;
/// Longest digit string accepted from input.
pub const MAX_DIGITS: usize = 1 << 16;
/// Largest prime accepted from input.
pub const MAX_PRIME: u64 = 1 << 31;
/// Largest level of a measure table accepted from input.
pub const MAX_MEASURE_ENTRIES: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PadicJson {
    pub p: u64,
    pub valuation: i64,
    pub digits: Vec<u64>,
    pub precision: i64,
}

impl From<&PadicNumber> for PadicJson {
    fn from(x: &PadicNumber) -> Self {
        if x.is_zero() {
            return PadicJson { p: x.p(), valuation: x.abs_precision(), digits: vec![], precision: x.abs_precision() };
        }
        PadicJson {
            p: x.p(),
            valuation: x.valuation().expect("nonzero"),
            digits: x.digits(),
            precision: x.abs_precision(),
        }
    }
}

impl TryFrom<&PadicJson> for PadicNumber {
    type Error = Error;
    fn try_from(j: &PadicJson) -> Result<Self> {
        if j.p > MAX_PRIME || !is_odd_prime(j.p) {
            return Err(Error::Parse(format!("{} is not an odd prime in range", j.p)));
        }
        let lim = EXACT_ZERO_PREC;
        if j.valuation.abs() > lim || j.precision.abs() > lim {
            return Err(Error::Parse("valuation or precision out of range".into()));
        }
        if j.digits.len() > MAX_DIGITS {
            return Err(Error::Parse("too many digits".into()));
        }
        if j.digits.iter().any(|&d| d >= j.p) {
            return Err(Error::Parse("digit not below p".into()));
        }
        if j.digits.is_empty() {
            if j.valuation != j.precision {
                return Err(Error::Parse("zero must have valuation equal to precision".into()));
            }
            return Ok(PadicNumber::zero(j.p, j.precision));
        }
        if j.digits[0] == 0 {
            return Err(Error::Parse("leading digit of a unit part is zero".into()));
        }
        if j.precision - j.valuation != j.digits.len() as i64 {
            return Err(Error::Parse("digit count disagrees with precision".into()));
        }
        let pb = BigInt::from(j.p);
        let mut u = BigInt::zero();
        for &d in j.digits.iter().rev() {
            u = u * &pb + BigInt::from(d);
        }
        PadicNumber::from_parts(j.p, j.valuation, u, j.digits.len() as u32)
    }
}

impl Serialize for PadicNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PadicJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for PadicNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PadicJson::deserialize(d)?;
        PadicNumber::try_from(&j).map_err(serde::de::Error::custom)
    }
}

pub fn parse_padic(s: &str) -> Result<PadicNumber> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesJson {
    pub version: u32,
    pub p: u64,
    pub t: u32,
    pub gamma: u64,
    pub coeffs: Vec<PadicNumber>,
    #[serde(rename = "M")]
    pub terms: usize,
    #[serde(rename = "N")]
    pub precision: i64,
    #[serde(default)]
    pub complete: bool,
}

impl From<&IwasawaSeries> for SeriesJson {
    fn from(g: &IwasawaSeries) -> Self {
        SeriesJson {
            version: FORMAT_VERSION,
            p: g.p(),
            t: g.t,
            gamma: g.p() + 1,
            coeffs: g.series.coeffs().to_vec(),
            terms: g.len(),
            precision: g.series.abs_precision(),
            complete: g.complete,
        }
    }
}

pub fn check_version(v: u32) -> Result<()> {
    if v != FORMAT_VERSION {
        return Err(Error::Parse(format!("unsupported format version {v}")));
    }
    Ok(())
}

impl TryFrom<SeriesJson> for IwasawaSeries {
    type Error = Error;
    fn try_from(j: SeriesJson) -> Result<Self> {
        check_version(j.version)?;
        if j.coeffs.len() > MAX_DIGITS {
            return Err(Error::Parse("series too long".into()));
        }
        if j.p > MAX_PRIME || !is_odd_prime(j.p) {
            return Err(Error::Parse(format!("{} is not an odd prime in range", j.p)));
        }
        if j.gamma != j.p + 1 {
            return Err(Error::Parse("only the generator 1 + p is supported".into()));
        }
        if j.t as u64 >= j.p - 1 {
            return Err(Error::Parse("tame index out of range".into()));
        }
        if j.terms != j.coeffs.len() {
            return Err(Error::Parse("M disagrees with the number of coefficients".into()));
        }
        let series = PowerSeries::new(j.p, j.coeffs).map_err(|e| Error::Parse(e.to_string()))?;
        if !series.is_empty() && series.abs_precision() != j.precision {
            return Err(Error::Parse("N disagrees with the coefficient precision".into()));
        }
        Ok(IwasawaSeries { t: j.t, series, complete: j.complete })
    }
}

pub fn series_to_json(g: &IwasawaSeries) -> String {
    serde_json::to_string(&SeriesJson::from(g)).expect("serializable")
}

pub fn parse_series(s: &str) -> Result<IwasawaSeries> {
    let j: SeriesJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    j.try_into()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelJson {
    pub m: u32,
    /// Residue (as a decimal string key) to value.
    pub values: BTreeMap<String, PadicNumber>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureJson {
    pub version: u32,
    pub p: u64,
    pub domain: Domain,
    pub levels: Vec<LevelJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<BoundednessCertificate>,
}

pub fn measure_to_json(mu: &FiniteLevelDistribution<PadicNumber>) -> String {
    let levels = (mu.min_level()..=mu.max_level())
        .map(|m| LevelJson {
            m,
            values: mu.level(m).expect("stored").iter().map(|(a, v)| (a.to_string(), v.clone())).collect(),
        })
        .collect();
    let j = MeasureJson {
        version: FORMAT_VERSION,
        p: mu.p(),
        domain: mu.domain(),
        levels,
        certificate: Some(certify_bounded(mu)),
    };
    serde_json::to_string(&j).expect("serializable")
}

pub fn parse_measure(s: &str) -> Result<FiniteLevelDistribution<PadicNumber>> {
    let j: MeasureJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    check_version(j.version)?;
    if j.p > MAX_PRIME || !is_odd_prime(j.p) {
        return Err(Error::Parse(format!("{} is not an odd prime in range", j.p)));
    }
    let total: usize = j.levels.iter().map(|l| l.values.len()).sum();
    if total > MAX_MEASURE_ENTRIES || j.levels.len() > 64 {
        return Err(Error::Parse("measure table too large".into()));
    }
    let mut levels = Vec::with_capacity(j.levels.len());
    for (i, l) in j.levels.into_iter().enumerate() {
        if l.m != j.domain.min_level() + i as u32 {
            return Err(Error::Parse(format!("levels out of order at m = {}", l.m)));
        }
        let mut t = BTreeMap::new();
        for (a, v) in l.values {
            let r: u64 = a.parse().map_err(|_| Error::Parse(format!("bad residue {a:?}")))?;
            if v.p() != j.p {
                return Err(Error::Parse("value over a different prime".into()));
            }
            if t.insert(r, v).is_some() {
                return Err(Error::Parse(format!("duplicate residue {a}")));
            }
        }
        levels.push(t);
    }
    let mu = FiniteLevelDistribution::from_levels(j.p, j.domain, levels).map_err(|e| Error::Parse(e.to_string()))?;
    if let Some(c) = j.certificate {
        if c != certify_bounded(&mu) {
            return Err(Error::Parse("certificate does not match the table".into()));
        }
    }
    Ok(mu)
}

/// Descriptor of a Dirichlet character of p-power conductor:
/// `trivial`, or `t:<tame>,n:<conductor exponent>[,w:<wild exponent>]`.
///
/// With a wild exponent the character is `omega^t * psi` where `psi` has
/// order `p^{n-1}` and sends `1 + p` to `zeta_{p^{n-1}}^w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CharDescriptor {
    pub tame: u32,
    pub n: u32,
    pub wild: Option<u64>,
}

impl CharDescriptor {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "trivial" {
            return Ok(CharDescriptor { tame: 0, n: 0, wild: None });
        }
        let (mut t, mut n, mut w) = (None, None, None);
        for part in s.split(',') {
            let (k, v) = part
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected key:value in {part:?}")))?;
            let num: u64 = v.trim().parse().map_err(|_| Error::Parse(format!("bad number {v:?}")))?;
            let slot = match k.trim() {
                "t" => &mut t,
                "n" => &mut n,
                "w" => &mut w,
                k => return Err(Error::Parse(format!("unknown key {k:?}"))),
            };
            if slot.replace(num).is_some() {
                return Err(Error::Parse(format!("repeated key {k:?}")));
            }
        }
        let tame = t.ok_or_else(|| Error::Parse("missing t".into()))?;
        let n = n.ok_or_else(|| Error::Parse("missing n".into()))?;
        if tame > u32::MAX as u64 || n > 64 {
            return Err(Error::Parse("descriptor value out of range".into()));
        }
        Ok(CharDescriptor { tame: tame as u32, n: n as u32, wild: w })
    }

    /// The character modulo `p^max(n,1)`, checked to have conductor exponent `n`.
    pub fn to_character(&self, p: u64, prec: u32) -> Result<DirichletCharacter> {
        if self.tame as u64 >= p - 1 {
            return Err(Error::Domain(format!("tame index {} must be below {}", self.tame, p - 1)));
        }
        let chi = if self.n <= 1 {
            if self.wild.is_some_and(|w| w != 0) {
                return Err(Error::Domain("wild exponent needs n >= 2".into()));
            }
            DirichletCharacter::new(p, 1, self.tame as i64, prec)?
        } else {
            let w = self.wild.unwrap_or(1);
            let wt = crate::weight::WeightChar::new(
                p,
                self.tame,
                crate::weight::WildPart::Finite { level: self.n - 1, exponent: w },
                0,
            )?;
            wt.to_dirichlet(prec)?
        };
        let c = chi.conductor_exponent();
        let chi = chi.primitive();
        if c != self.n {
            return Err(Error::Domain(format!("descriptor has conductor exponent {c}, not {}", self.n)));
        }
        Ok(chi)
    }
}

impl std::fmt::Display for CharDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.n == 0 {
            return write!(f, "trivial");
        }
        write!(f, "t:{},n:{}", self.tame, self.n)?;
        if let Some(w) = self.wild {
            write!(f, ",w:{w}")?;
        }
        Ok(())
    }
}

impl CharDescriptor {
    /// The descriptor naming the primitive character inducing `chi`.
    pub fn from_character(chi: &DirichletCharacter) -> Result<Self> {
        let prim = chi.primitive();
        let p = prim.p();
        let n = prim.conductor_exponent();
        let tame = prim.tame_index();
        if n <= 1 {
            return Ok(CharDescriptor { tame, n, wild: None });
        }
        for w in 0..p.pow(n - 1) {
            let d = CharDescriptor { tame, n, wild: Some(w) };
            if d.to_character(p, prim.precision()).is_ok_and(|c| c == prim) {
                return Ok(d);
            }
        }
        Err(Error::Domain("no descriptor for this character".into()))
    }
}

/// `{"p", "level", "coeffs"}` in the power basis of `Q_p(zeta_{p^level})`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CyclotomicJson {
    pub p: u64,
    pub level: u32,
    pub coeffs: Vec<PadicNumber>,
}

impl Serialize for CyclotomicPadic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CyclotomicJson { p: self.p(), level: self.level(), coeffs: self.coeffs().to_vec() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclotomicPadic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = CyclotomicJson::deserialize(d)?;
        if j.level > 8 {
            return Err(serde::de::Error::custom("cyclotomic level out of range"));
        }
        CyclotomicPadic::from_coeffs(j.p, j.level, j.coeffs).map_err(serde::de::Error::custom)
    }
}

/// One series per tame branch, `t = 0..p-2` in order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyJson {
    pub version: u32,
    pub p: u64,
    pub branches: Vec<SeriesJson>,
}

pub fn family_to_json(f: &SeriesFamily) -> String {
    let j = FamilyJson { version: FORMAT_VERSION, p: f.p, branches: f.branches.iter().map(SeriesJson::from).collect() };
    serde_json::to_string(&j).expect("serializable")
}

pub fn parse_family(s: &str) -> Result<SeriesFamily> {
    let j: FamilyJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    check_version(j.version)?;
    if j.p > MAX_PRIME || !is_odd_prime(j.p) {
        return Err(Error::Parse(format!("{} is not an odd prime in range", j.p)));
    }
    if j.branches.len() as u64 != j.p - 1 {
        return Err(Error::Parse(format!("expected {} branches", j.p - 1)));
    }
    let mut branches = Vec::with_capacity(j.branches.len());
    for (t, b) in j.branches.into_iter().enumerate() {
        if b.p != j.p || b.t as usize != t {
            return Err(Error::Parse(format!("branch {t} has the wrong prime or index")));
        }
        branches.push(IwasawaSeries::try_from(b)?);
    }
    Ok(SeriesFamily { p: j.p, branches })
}

/// Longest rational accepted in an eigen-symbol table, in characters.
pub const MAX_RATIONAL_LEN: usize = 4096;

fn parse_rational(s: &str) -> Result<BigRational> {
    if s.len() > MAX_RATIONAL_LEN {
        return Err(Error::Parse("rational too long".into()));
    }
    let q: BigRational = s.parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    Ok(q)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EigenRowJson {
    /// Degree of the monomial `x^d`.
    pub d: usize,
    pub m: u64,
    /// `lambda(x^d, a, m)` for `a = 0..m`, as `"num/den"` strings.
    pub row: Vec<String>,
}

/// Export layout of a normalized eigen-symbol.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EigenTableJson {
    pub version: u32,
    #[serde(rename = "N")]
    pub level: u64,
    pub k: u32,
    pub eps: i64,
    pub sign: i8,
    pub aq: Vec<(u64, i64)>,
    pub values: Vec<EigenRowJson>,
}

pub fn eigen_table_to_json(t: &EigenTable) -> String {
    let values = t
        .values
        .iter()
        .map(|(&(d, m), row)| EigenRowJson { d, m, row: row.iter().map(|x| x.to_string()).collect() })
        .collect();
    let j = EigenTableJson {
        version: FORMAT_VERSION,
        level: t.level,
        k: t.weight,
        eps: 1,
        sign: t.sign,
        aq: t.aq.clone(),
        values,
    };
    serde_json::to_string(&j).expect("serializable")
}

pub fn parse_eigen_table(s: &str) -> Result<EigenTable> {
    let j: EigenTableJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    check_version(j.version)?;
    if j.eps != 1 {
        return Err(Error::Parse("only trivial nebentypus is supported".into()));
    }
    if j.sign != 1 && j.sign != -1 {
        return Err(Error::Parse("sign must be 1 or -1".into()));
    }
    if j.k < 2 || j.k % 2 == 1 || j.k > 64 || j.level == 0 {
        return Err(Error::Parse("weight must be even in 2..=64 and the level positive".into()));
    }
    let total: u64 = j.values.iter().map(|r| r.row.len() as u64).sum();
    if total > MAX_MEASURE_ENTRIES as u64 {
        return Err(Error::Parse("table too large".into()));
    }
    let mut values = BTreeMap::new();
    for r in j.values {
        if r.d > (j.k - 2) as usize {
            return Err(Error::Parse(format!("degree {} exceeds k - 2", r.d)));
        }
        if r.m == 0 || r.row.len() as u64 != r.m {
            return Err(Error::Parse(format!("row for modulus {} has {} entries", r.m, r.row.len())));
        }
        let row = r.row.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>()?;
        if values.insert((r.d, r.m), row).is_some() {
            return Err(Error::Parse(format!("duplicate row d={}, m={}", r.d, r.m)));
        }
    }
    Ok(EigenTable { level: j.level, weight: j.k, sign: j.sign, aq: j.aq, values })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Gl4EntryJson {
    pub m: u32,
    pub a: u64,
    pub value: PadicNumber,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Gl32EntryJson {
    pub m: u32,
    pub i: u64,
    pub j: u64,
    pub y: u64,
    pub value: PadicNumber,
}

/// Period provider data file.  `nu_valuations` are rationals written as
/// strings (`"-3/2"`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum ProviderJson {
    #[serde(rename = "gl4")]
    Gl4 { version: u32, p: u64, nu_valuations: [String; 2], lambda: PadicNumber, values: Vec<Gl4EntryJson> },
    #[serde(rename = "gl32")]
    Gl32 {
        version: u32,
        p: u64,
        lambda: PadicNumber,
        mu: PadicNumber,
        alpha: PadicNumber,
        eta: PadicNumber,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        kappa: Option<PadicNumber>,
        values: Vec<Gl32EntryJson>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum ProviderFile {
    Gl4(Gl4Table),
    Gl32(Gl32Table),
}

fn check_residue(p: u64, m: u32, r: u64) -> Result<()> {
    if m > MAX_PROVIDER_LEVEL || r >= p.pow(m) {
        return Err(Error::Parse(format!("residue {r} out of range at level {m}")));
    }
    Ok(())
}

fn check_same_prime(p: u64, xs: &[&PadicNumber]) -> Result<()> {
    if xs.iter().any(|x| x.p() != p) {
        return Err(Error::Parse("value over a different prime".into()));
    }
    Ok(())
}

pub fn parse_provider(s: &str) -> Result<ProviderFile> {
    let j: ProviderJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    match j {
        ProviderJson::Gl4 { version, p, nu_valuations, lambda, values } => {
            check_version(version)?;
            check_prime_in_range(p)?;
            if values.len() > MAX_MEASURE_ENTRIES {
                return Err(Error::Parse("provider table too large".into()));
            }
            let nv = [parse_q64(&nu_valuations[0])?, parse_q64(&nu_valuations[1])?];
            check_same_prime(p, &[&lambda])?;
            let mut table = BTreeMap::new();
            for e in values {
                check_residue(p, e.m, e.a)?;
                check_same_prime(p, &[&e.value])?;
                if table.insert((e.m, e.a), e.value).is_some() {
                    return Err(Error::Parse("duplicate provider entry".into()));
                }
            }
            Ok(ProviderFile::Gl4(Gl4Table { meta: Gl4Metadata { p, nu_valuations: nv, lambda }, values: table }))
        }
        ProviderJson::Gl32 { version, p, lambda, mu, alpha, eta, kappa, values } => {
            check_version(version)?;
            check_prime_in_range(p)?;
            if values.len() > MAX_MEASURE_ENTRIES {
                return Err(Error::Parse("provider table too large".into()));
            }
            check_same_prime(p, &[&lambda, &mu, &alpha, &eta])?;
            if let Some(k) = &kappa {
                check_same_prime(p, &[k])?;
                if k.is_zero() {
                    return Err(Error::Parse("kappa must be nonzero".into()));
                }
            }
            let mut table = BTreeMap::new();
            for e in values {
                for r in [e.i, e.j, e.y] {
                    check_residue(p, e.m, r)?;
                }
                check_same_prime(p, &[&e.value])?;
                if table.insert((e.m, e.i, e.j, e.y), e.value).is_some() {
                    return Err(Error::Parse("duplicate provider entry".into()));
                }
            }
            let meta = Gl32Metadata { p, lambda, mu, alpha, eta, kappa };
            Ok(ProviderFile::Gl32(Gl32Table { meta, values: table }))
        }
    }
}

fn check_prime_in_range(p: u64) -> Result<()> {
    if p > MAX_PRIME || !is_odd_prime(p) {
        return Err(Error::Parse(format!("{p} is not an odd prime in range")));
    }
    Ok(())
}

pub fn provider_to_json(f: &ProviderFile) -> String {
    let j = match f {
        ProviderFile::Gl4(t) => ProviderJson::Gl4 {
            version: FORMAT_VERSION,
            p: t.meta.p,
            nu_valuations: t.meta.nu_valuations.map(|q| q.to_string()),
            lambda: t.meta.lambda.clone(),
            values: t.values.iter().map(|(&(m, a), v)| Gl4EntryJson { m, a, value: v.clone() }).collect(),
        },
        ProviderFile::Gl32(t) => ProviderJson::Gl32 {
            version: FORMAT_VERSION,
            p: t.meta.p,
            lambda: t.meta.lambda.clone(),
            mu: t.meta.mu.clone(),
            alpha: t.meta.alpha.clone(),
            eta: t.meta.eta.clone(),
            kappa: t.meta.kappa.clone(),
            values: t
                .values
                .iter()
                .map(|(&(m, i, j, y), v)| Gl32EntryJson { m, i, j, y, value: v.clone() })
                .collect(),
        },
    };
    serde_json::to_string(&j).expect("serializable")
}

/// Tabulates a GL4 provider on unit residues at levels `1..=levels`.
pub fn tabulate_gl4(provider: &dyn Gl4PeriodProvider, levels: u32) -> Result<Gl4Table> {
    let meta = provider.metadata().clone();
    let mut values = BTreeMap::new();
    for m in 1..=levels {
        for a in crate::measure::residues(meta.p, Domain::Units, m) {
            values.insert((m, a), provider.eval(a, m)?);
        }
    }
    Ok(Gl4Table { meta, values })
}

/// Tabulates a GL3 x GL2 provider on every `(i, j, y)` at levels `0..=levels`.
pub fn tabulate_gl32(provider: &dyn Gl32PeriodProvider, levels: u32) -> Result<Gl32Table> {
    let meta = provider.metadata().clone();
    let mut values = BTreeMap::new();
    for m in 0..=levels {
        let f = meta.p.pow(m);
        for i in 0..f {
            for j in 0..f {
                for y in 0..f {
                    values.insert((m, i, j, y), provider.eval(i as i64, j as i64, y as i64, m)?);
                }
            }
        }
    }
    Ok(Gl32Table { meta, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn padic_round_trip() {
        for x in [
            PadicNumber::from_int(5, 1234, 8),
            PadicNumber::from_int(5, 0, 6),
            PadicNumber::from_rational(7, &crate::padic::ratio(3, 49), 4),
        ] {
            let s = serde_json::to_string(&x).unwrap();
            assert_eq!(parse_padic(&s).unwrap(), x);
        }
    }

    #[test]
    fn rejects_malformed_numbers() {
        for bad in [
            r#"{"p":4,"valuation":0,"digits":[1],"precision":1}"#,
            r#"{"p":5,"valuation":0,"digits":[5],"precision":1}"#,
            r#"{"p":5,"valuation":0,"digits":[0,1],"precision":2}"#,
            r#"{"p":5,"valuation":0,"digits":[1],"precision":3}"#,
            r#"{"p":5,"valuation":1,"digits":[],"precision":3}"#,
        ] {
            assert!(parse_padic(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn descriptors() {
        assert_eq!(CharDescriptor::parse("trivial").unwrap().n, 0);
        let d = CharDescriptor::parse("t:1,n:1").unwrap();
        assert_eq!(d.to_string(), "t:1,n:1");
        assert_eq!(d.to_character(5, 8).unwrap().conductor_exponent(), 1);
        let d = CharDescriptor::parse("t:0,n:2").unwrap();
        assert_eq!(d.to_character(5, 8).unwrap().conductor_exponent(), 2);
        assert!(CharDescriptor::parse("t:1,t:2,n:1").is_err());
        assert!(CharDescriptor::parse("t:0,n:2,w:5").unwrap().to_character(5, 8).is_err());
    }

    #[test]
    fn series_round_trip() {
        let g = IwasawaSeries::new(2, PowerSeries::from_ints(5, &[1, 5, 0, 3], 6));
        assert_eq!(parse_series(&series_to_json(&g)).unwrap(), g);
    }

    #[test]
    fn descriptor_from_character() {
        for chi in DirichletCharacter::all(5, 2, 8).unwrap() {
            let d = CharDescriptor::from_character(&chi).unwrap();
            assert_eq!(d.to_character(5, 8).unwrap(), chi.primitive());
        }
    }

    #[test]
    fn eigen_table_round_trip() {
        let space = crate::modsym::ManinSymbolSpace::new(11, 2).unwrap();
        let phi = crate::modsym::EigenSymbol::from_space(&space, 1, None).unwrap();
        let t = EigenTable::from_symbol(&phi, &[1, 3, 9]).unwrap();
        let s = eigen_table_to_json(&t);
        assert_eq!(parse_eigen_table(&s).unwrap(), t);
        assert!(parse_eigen_table(&s.replace("\"eps\":1", "\"eps\":-1")).is_err());
    }

    #[test]
    fn provider_round_trip() {
        use crate::higher_rank::Gl32Consistent;
        let one = PadicNumber::one(5, 6);
        let meta = Gl32Metadata { p: 5, lambda: one.clone(), mu: one.clone(), alpha: one.clone(), eta: one, kappa: None };
        let t = tabulate_gl32(&Gl32Consistent::new(meta), 1).unwrap();
        let f = ProviderFile::Gl32(t);
        assert_eq!(parse_provider(&provider_to_json(&f)).unwrap(), f);
    }

    #[test]
    fn measure_round_trip() {
        let mu = FiniteLevelDistribution::dirac(5, Domain::Zp, 2, &BigInt::from(3), &PadicNumber::one(5, 6)).unwrap();
        let s = measure_to_json(&mu);
        assert!(parse_measure(&s).unwrap().values_equal(&mu));
    }
}
