//! Newton and Hodge polygons and symmetric-power Hecke polynomials.
//!
//! Polygons are stored with one vertex per integer abscissa `0..=d`, so two
//! polygons agree exactly when their slope multisets agree.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::{check_prime, vp_int, vp_rational};

pub type Q64 = Ratio<i64>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polygon {
    /// `(i, y_i)` for `i = 0..=d`, starting at the origin.
    vertices: Vec<(u64, Q64)>,
}

impl Polygon {
    /// Sorts the slopes and accumulates them from the origin.
    pub fn from_slopes(mut slopes: Vec<Q64>) -> Self {
        slopes.sort();
        let mut vertices = vec![(0, Q64::zero())];
        let mut y = Q64::zero();
        for (i, s) in slopes.into_iter().enumerate() {
            y += s;
            vertices.push((i as u64 + 1, y));
        }
        Polygon { vertices }
    }

    pub fn vertices(&self) -> &[(u64, Q64)] {
        &self.vertices
    }

    pub fn rank(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn slopes(&self) -> Vec<Q64> {
        self.vertices.windows(2).map(|w| w[1].1 - w[0].1).collect()
    }

    pub fn endpoint(&self) -> (u64, Q64) {
        *self.vertices.last().expect("origin")
    }

    pub fn is_convex(&self) -> bool {
        self.slopes().windows(2).all(|w| w[0] <= w[1])
    }

    /// Vertices where the slope changes, plus both ends.
    pub fn breakpoints(&self) -> Vec<(u64, Q64)> {
        let s = self.slopes();
        let mut out = vec![self.vertices[0]];
        for i in 1..self.vertices.len() - 1 {
            if s[i - 1] != s[i] {
                out.push(self.vertices[i]);
            }
        }
        if self.vertices.len() > 1 {
            out.push(self.endpoint());
        }
        out
    }
}

/// `1 + A_1 T + ... + A_d T^d` at a prime `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckePolyData {
    pub p: u64,
    pub coeffs: Vec<BigRational>,
}

impl HeckePolyData {
    pub fn new(p: u64, coeffs: Vec<BigRational>) -> Result<Self> {
        check_prime(p)?;
        if coeffs.first().is_none_or(|c| !c.is_one()) {
            return Err(Error::Domain("constant coefficient must be 1".into()));
        }
        Ok(HeckePolyData { p, coeffs })
    }

    pub fn from_ints(p: u64, coeffs: &[i64]) -> Result<Self> {
        Self::new(p, coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    /// `1 - a_p T + eps p^{k-1} T^2`, the reversed polynomial of
    /// `X^2 - a_p X + eps p^{k-1}`.
    pub fn modular(p: u64, ap: i64, eps: i64, k: u32) -> Result<Self> {
        let q = BigInt::from(eps) * BigInt::from(p).pow(k - 1);
        Self::new(
            p,
            vec![BigRational::one(), BigRational::from_integer((-ap).into()), BigRational::from_integer(q)],
        )
    }

    /// `prod (1 - r T)` over the given roots.
    pub fn from_roots(p: u64, roots: &[BigRational]) -> Result<Self> {
        let mut c = vec![BigRational::one()];
        for r in roots {
            let mut next = c.clone();
            next.push(BigRational::zero());
            for (i, x) in c.iter().enumerate() {
                next[i + 1] -= x * r;
            }
            c = next;
        }
        Self::new(p, c)
    }

    /// Index of the last nonzero coefficient.
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }
}

/// Lower convex hull of `(i, v_p(A_i))`.
pub fn newton_polygon(poly: &HeckePolyData) -> Result<Polygon> {
    let pts: Vec<(i64, i64)> = poly
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as i64, vp_rational(poly.p, c)))
        .collect();
    if pts.is_empty() {
        return Err(Error::Domain("zero polynomial".into()));
    }
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b unless it lies strictly below the segment a -> pt
            let cross = (b.0 - a.0) as i128 * (pt.1 - a.1) as i128 - (b.1 - a.1) as i128 * (pt.0 - a.0) as i128;
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    if hull[0].0 != 0 {
        return Err(Error::Domain("constant coefficient vanishes".into()));
    }
    let mut slopes = Vec::new();
    for w in hull.windows(2) {
        let s = Q64::new(w[1].1 - w[0].1, w[1].0 - w[0].0);
        slopes.extend(std::iter::repeat_n(s, (w[1].0 - w[0].0) as usize));
    }
    Ok(Polygon::from_slopes(slopes).shifted(hull[0].1))
}

impl Polygon {
    fn shifted(mut self, y0: i64) -> Self {
        for v in &mut self.vertices {
            v.1 += y0;
        }
        self
    }
}

/// Hodge numbers `h(i, j)` with `i + j = w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeData {
    pub weight: i64,
    pub numbers: Vec<(i64, i64, u32)>,
}

impl HodgeData {
    pub fn new(weight: i64, numbers: Vec<(i64, i64, u32)>) -> Result<Self> {
        if numbers.iter().any(|&(i, j, _)| i + j != weight) {
            return Err(Error::Domain("Hodge types must satisfy i + j = w".into()));
        }
        Ok(HodgeData { weight, numbers })
    }

    pub fn rank(&self) -> usize {
        self.numbers.iter().map(|t| t.2 as usize).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        let h = |i: i64, j: i64| self.numbers.iter().filter(|t| t.0 == i && t.1 == j).map(|t| t.2).sum::<u32>();
        self.numbers.iter().all(|&(i, j, _)| h(i, j) == h(j, i))
    }

    /// Weight-k modular form: types `(0, k-1)` and `(k-1, 0)`.
    pub fn modular(k: u32) -> Self {
        let w = k as i64 - 1;
        HodgeData { weight: w, numbers: vec![(0, w, 1), (w, 0, 1)] }
    }

    /// `Sym^m` of the weight-k motive: types `(i(k-1), (m-i)(k-1))`.
    pub fn sym_power(k: u32, m: u32) -> Self {
        let w = k as i64 - 1;
        let numbers = (0..=m as i64).map(|i| (i * w, (m as i64 - i) * w, 1)).collect();
        HodgeData { weight: m as i64 * w, numbers }
    }

    /// Rank 4, weight -1, types `(-2,1), (-1,0), (0,-1), (1,-2)`.
    pub fn gl4_shalika() -> Self {
        HodgeData { weight: -1, numbers: vec![(-2, 1, 1), (-1, 0, 1), (0, -1, 1), (1, -2, 1)] }
    }
}

pub fn hodge_polygon(h: &HodgeData) -> Polygon {
    let slopes = h
        .numbers
        .iter()
        .flat_map(|&(i, _, n)| std::iter::repeat_n(Q64::from_integer(i), n as usize))
        .collect();
    Polygon::from_slopes(slopes)
}

pub fn is_nearly_ordinary(poly: &HeckePolyData, h: &HodgeData) -> Result<bool> {
    let np = newton_polygon(poly)?;
    if np.rank() != h.rank() {
        return Err(Error::RankMismatch(np.rank(), h.rank()));
    }
    Ok(np == hodge_polygon(h))
}

/// Elementary symmetric functions `e_1..e_{m+1}` of `alpha^{m-i} beta^i`
/// where `alpha + beta = a`, `alpha beta = q`.
///
/// Power sums come from `alpha^r + beta^r` by the Lucas recurrence and the
/// complete homogeneous recurrence in `(alpha^r, beta^r)`; Newton's
/// identities turn them into elementary functions.
pub fn sym_power_elementary(a: &BigRational, q: &BigRational, m: u32) -> Vec<BigRational> {
    let n = m as usize + 1;
    // s[r] = alpha^r + beta^r
    let mut s = vec![BigRational::from_integer(2.into()), a.clone()];
    for r in 2..=n {
        let v = a * &s[r - 1] - q * &s[r - 2];
        s.push(v);
    }
    let power_sum = |r: usize| -> BigRational {
        let qr = q.pow(r as i32);
        let (mut h0, mut h1) = (BigRational::one(), s[r].clone());
        if m == 0 {
            return h0;
        }
        for _ in 2..=m {
            let h2 = &s[r] * &h1 - &qr * &h0;
            h0 = h1;
            h1 = h2;
        }
        h1
    };
    let pw: Vec<BigRational> = (1..=n).map(power_sum).collect();
    let mut e = vec![BigRational::one()];
    for k in 1..=n {
        let mut acc = BigRational::zero();
        for i in 1..=k {
            let t = &e[k - i] * &pw[i - 1];
            if i % 2 == 1 {
                acc += t;
            } else {
                acc -= t;
            }
        }
        e.push(acc / BigRational::from_integer(BigInt::from(k)));
    }
    e.remove(0);
    e
}

/// Hecke data of `Sym^m`: `A_i = (-1)^i e_i`.
pub fn sym_power_hecke(p: u64, a: &BigRational, q: &BigRational, m: u32) -> Result<HeckePolyData> {
    if m == 0 {
        return Err(Error::Domain("symmetric power must be at least 1".into()));
    }
    let e = sym_power_elementary(a, q, m);
    let mut coeffs = vec![BigRational::one()];
    for (i, x) in e.into_iter().enumerate() {
        coeffs.push(if i % 2 == 0 { -x } else { x });
    }
    HeckePolyData::new(p, coeffs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymPowerReport {
    pub p: u64,
    pub k: u32,
    pub m: u32,
    pub elementary: Vec<BigRational>,
    pub newton: Polygon,
    pub hodge: Polygon,
    pub polygons_equal: bool,
    pub endpoint: (u64, Q64),
    pub endpoint_expected: (u64, i64),
    pub passes: bool,
}

pub fn sym_power_ordinarity_report(ap: i64, eps: i64, k: u32, p: u64, m: u32) -> Result<SymPowerReport> {
    check_prime(p)?;
    if k < 2 {
        return Err(Error::Domain("weight must be at least 2".into()));
    }
    if ap == 0 || vp_int(p, &BigInt::from(ap)) > 0 {
        return Err(Error::NotOrdinary(format!("a_p = {ap} is not a unit at {p}")));
    }
    let a = BigRational::from_integer(ap.into());
    let q = BigRational::from_integer(BigInt::from(eps) * BigInt::from(p).pow(k - 1));
    let poly = sym_power_hecke(p, &a, &q, m)?;
    let newton = newton_polygon(&poly)?;
    let hodge = hodge_polygon(&HodgeData::sym_power(k, m));
    let endpoint = newton.endpoint();
    let expected = (m as u64 + 1, (k as i64 - 1) * m as i64 * (m as i64 + 1) / 2);
    let polygons_equal = newton == hodge;
    let endpoint_ok = endpoint == (expected.0, Q64::from_integer(expected.1));
    Ok(SymPowerReport {
        p,
        k,
        m,
        elementary: poly.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 0 { -c } else { c.clone() })
            .collect(),
        newton,
        hodge,
        polygons_equal,
        endpoint,
        endpoint_expected: expected,
        passes: polygons_equal && endpoint_ok,
    })
}

/// Newton polygon of the GL4 Hecke polynomial at `p` from the valuations of
/// `nu_1(p), nu_2(p)`: the Satake parameters are `nu_2^{-1}, nu_1^{-1},
/// nu_1, nu_2` and the roots carry the extra half twist `p^{-1/2}`.
pub fn gl4_newton_polygon(nu_vals: [Q64; 2]) -> Polygon {
    let half = Q64::new(1, 2);
    let slopes = nu_vals.iter().flat_map(|&v| [v - half, -v - half]).collect();
    Polygon::from_slopes(slopes)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gl4Report {
    pub newton: Polygon,
    pub hodge: Polygon,
    pub nearly_ordinary: bool,
    /// `v_p(lambda) = 2 + v(nu_1) + v(nu_2)`.
    pub lambda_valuation: Q64,
}

pub fn gl4_ordinarity_report(nu_vals: [Q64; 2]) -> Gl4Report {
    let newton = gl4_newton_polygon(nu_vals);
    let hodge = hodge_polygon(&HodgeData::gl4_shalika());
    Gl4Report {
        nearly_ordinary: newton == hodge,
        lambda_valuation: Q64::from_integer(2) + nu_vals[0] + nu_vals[1],
        newton,
        hodge,
    }
}

/// Parses `"-1.5"`, `"-3/2"` or `"2"` as a rational.
pub fn parse_q64(s: &str) -> Result<Q64> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Q64::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || fp.len() > 12 || !fp.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = ip.starts_with('-');
        let ipv: i64 = if ip.is_empty() || ip == "-" { 0 } else { ip.parse().map_err(|_| bad())? };
        let den = 10i64.pow(fp.len() as u32);
        let frac: i64 = fp.parse().map_err(|_| bad())?;
        let num = ipv.checked_mul(den).and_then(|x| if neg { x.checked_sub(frac) } else { x.checked_add(frac) });
        return Ok(Q64::new(num.ok_or_else(bad)?, den));
    }
    Ok(Q64::from_integer(s.parse().map_err(|_| bad())?))
}

/// `v_p` of a Hecke coefficient, as used by the hull; exposed for reports.
pub fn coefficient_valuations(poly: &HeckePolyData) -> Vec<Option<i64>> {
    poly.coeffs.iter().map(|c| (!c.is_zero()).then(|| vp_rational(poly.p, c))).collect()
}

/// Exact integer form of the elementary functions, when they are integral.
pub fn as_integers(v: &[BigRational]) -> Option<Vec<i128>> {
    v.iter().map(|x| if x.is_integer() { x.to_integer().to_i128() } else { None }).collect()
}
