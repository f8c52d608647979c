//! Weight-k modular symbols for `Gamma_0(N)` with trivial character.
//!
//! A Manin symbol `[P, (c:d)]` stands for `g(P {0, oo})` where `g` is any
//! matrix of `SL_2(Z)` with lower row `(c, d)` modulo `N`, and matrices act on
//! homogeneous polynomials of degree `w = k - 2` by
//! `(gP)(X, Y) = P(dX - bY, -cX + aY)`.
//!
//! Generators are indexed `i * #P^1 + point` for the monomial `X^i Y^{w-i}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{clear_denominators, integer_kernel, rational_content, Matrix};
use crate::util::{binomial_u, gcd_u64, is_prime_u64, primes_up_to};

/// Largest number of generators handled by the dense quotient.
pub const MAX_GENERATORS: usize = 2400;

fn q(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Points of `P^1(Z/NZ)` with a lookup table for normalization.
#[derive(Clone, Debug)]
pub struct P1List {
    n: u64,
    points: Vec<(u64, u64)>,
    index: Vec<u32>,
}

impl P1List {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 || n > 4000 {
            return Err(Error::ResourceBound(format!("level {n}")));
        }
        let nn = n as usize;
        let units: Vec<u64> = (1..=n).filter(|&u| gcd_u64(u % n, n) == 1).map(|u| u % n).collect();
        let mut index = vec![u32::MAX; nn * nn];
        let mut points = Vec::new();
        for c in 0..n {
            for d in 0..n {
                if gcd_u64(gcd_u64(c, d), n) != 1 || index[(c * n + d) as usize] != u32::MAX {
                    continue;
                }
                let id = points.len() as u32;
                points.push((c, d));
                for &u in &units {
                    let (uc, ud) = (u * c % n, u * d % n);
                    index[(uc * n + ud) as usize] = id;
                }
            }
        }
        Ok(P1List { n, points, index })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> (u64, u64) {
        self.points[i]
    }

    /// Index of the point `(c : d)`; `None` when `gcd(c, d, N) > 1`.
    pub fn index(&self, c: &BigInt, d: &BigInt) -> Option<usize> {
        let nb = BigInt::from(self.n);
        let c = c.mod_floor(&nb).to_u64().expect("reduced");
        let d = d.mod_floor(&nb).to_u64().expect("reduced");
        let i = self.index[(c * self.n + d) as usize];
        (i != u32::MAX).then_some(i as usize)
    }

    /// A matrix of `SL_2(Z)` whose lower row reduces to the point.
    pub fn lift(&self, i: usize) -> [BigInt; 4] {
        let n = self.n as i64;
        let (c0, d0) = self.points[i];
        let c = if c0 == 0 { n } else { c0 as i64 };
        let mut d = d0 as i64;
        while gcd_u64(c.unsigned_abs(), d.unsigned_abs()) != 1 {
            d += n;
        }
        let e = BigInt::from(d).extended_gcd(&BigInt::from(c));
        // e.x * d + e.y * c = 1, so a = e.x, b = -e.y gives a d - b c = 1
        [e.x, -e.y, BigInt::from(c), BigInt::from(d)]
    }
}

/// Homogeneous polynomial of degree `w`; entry `i` is the coefficient of `X^i Y^{w-i}`.
pub type Poly = Vec<BigRational>;

fn lin_pow(a: &BigInt, b: &BigInt, e: usize) -> Vec<BigInt> {
    // (aX + bY)^e, indexed by the power of X
    let mut out = vec![BigInt::zero(); e + 1];
    let mut ap = vec![BigInt::one(); e + 1];
    let mut bp = vec![BigInt::one(); e + 1];
    for i in 1..=e {
        ap[i] = &ap[i - 1] * a;
        bp[i] = &bp[i - 1] * b;
    }
    for (i, o) in out.iter_mut().enumerate() {
        *o = binomial_u(e as u64, i as u64) * &ap[i] * &bp[e - i];
    }
    out
}

/// `P(aX + bY, cX + dY)`.
pub fn poly_substitute(p: &Poly, m: &[BigInt; 4]) -> Poly {
    let w = p.len() - 1;
    let [a, b, c, d] = m;
    let mut out = vec![BigRational::zero(); w + 1];
    for (i, coef) in p.iter().enumerate() {
        if coef.is_zero() {
            continue;
        }
        let f = lin_pow(a, b, i);
        let g = lin_pow(c, d, w - i);
        for (s, fs) in f.iter().enumerate() {
            if fs.is_zero() {
                continue;
            }
            for (t, gt) in g.iter().enumerate() {
                if !gt.is_zero() {
                    out[s + t] += coef * q(fs * gt);
                }
            }
        }
    }
    out
}

/// `(gP)(X, Y) = P(dX - bY, -cX + aY)`.
pub fn poly_act(p: &Poly, g: &[BigInt; 4]) -> Poly {
    let [a, b, c, d] = g;
    poly_substitute(p, &[d.clone(), -b, -c, a.clone()])
}

pub fn monomial(w: usize, i: usize) -> Poly {
    let mut p = vec![BigRational::zero(); w + 1];
    p[i] = BigRational::one();
    p
}

/// Continued-fraction convergents `(p_j, q_j)` of `num / den`, `den > 0`.
fn convergents(num: &BigInt, den: &BigInt) -> Vec<(BigInt, BigInt)> {
    let (mut a, mut b) = (num.clone(), den.clone());
    let (mut p2, mut p1) = (BigInt::zero(), BigInt::one());
    let (mut q2, mut q1) = (BigInt::one(), BigInt::zero());
    let mut out = Vec::new();
    while !b.is_zero() {
        let (t, r) = a.div_mod_floor(&b);
        let pn = &t * &p1 + &p2;
        let qn = &t * &q1 + &q2;
        out.push((pn.clone(), qn.clone()));
        p2 = std::mem::replace(&mut p1, pn);
        q2 = std::mem::replace(&mut q1, qn);
        a = std::mem::replace(&mut b, r);
    }
    out
}

/// A cusp `num/den` in lowest terms with `den >= 0`; `(1, 0)` is infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cusp {
    pub num: BigInt,
    pub den: BigInt,
}

impl Cusp {
    pub fn new(num: BigInt, den: BigInt) -> Self {
        if den.is_zero() {
            return Cusp { num: BigInt::one(), den: BigInt::zero() };
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / &g, den / &g);
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        Cusp { num: n, den: d }
    }

    pub fn infinity() -> Self {
        Cusp { num: BigInt::one(), den: BigInt::zero() }
    }

    pub fn from_int(a: i64, m: i64) -> Self {
        Cusp::new(BigInt::from(a), BigInt::from(m))
    }

    pub fn is_infinity(&self) -> bool {
        self.den.is_zero()
    }

    pub fn act(&self, g: &[BigInt; 4]) -> Self {
        let [a, b, c, d] = g;
        Cusp::new(a * &self.num + b * &self.den, c * &self.num + d * &self.den)
    }
}

/// Sparse combination of generators.
pub type SymbolSum = BTreeMap<usize, BigRational>;

fn add_to(s: &mut SymbolSum, k: usize, v: BigRational) {
    if v.is_zero() {
        return;
    }
    let e = s.entry(k).or_insert_with(BigRational::zero);
    *e += v;
    if e.is_zero() {
        s.remove(&k);
    }
}

#[derive(Clone, Debug)]
pub struct ManinSymbolSpace {
    n: u64,
    k: u32,
    p1: P1List,
    /// Coordinates of every generator in the quotient basis.
    gen_vec: Vec<Vec<BigRational>>,
    /// Generators forming the quotient basis.
    basis: Vec<usize>,
    cusps: Vec<Cusp>,
    /// `boundary[g]`: (cusp index, coefficient) pairs.
    boundary: Vec<Vec<(usize, i64)>>,
}

impl ManinSymbolSpace {
    pub fn new(n: u64, k: u32) -> Result<Self> {
        if k < 2 || k % 2 == 1 {
            return Err(Error::Domain(format!("weight {k} must be even and at least 2")));
        }
        let p1 = P1List::new(n)?;
        let w = (k - 2) as usize;
        let np = p1.len();
        let ngens = (w + 1) * np;
        if ngens > MAX_GENERATORS {
            return Err(Error::ResourceBound(format!("{ngens} Manin generators")));
        }
        let gid = |i: usize, pt: usize| i * np + pt;
        let mut rels: Vec<SymbolSum> = Vec::new();
        let sigma = [BigInt::zero(), -BigInt::one(), BigInt::one(), BigInt::zero()];
        let tau = [BigInt::zero(), -BigInt::one(), BigInt::one(), -BigInt::one()];
        let tau2 = [-BigInt::one(), BigInt::one(), -BigInt::one(), BigInt::zero()];
        for pt in 0..np {
            let (c, d) = p1.point(pt);
            let (c, d) = (BigInt::from(c), BigInt::from(d));
            let s_pt = p1.index(&d, &-&c).expect("valid");
            let t_pt = p1.index(&d, &(-&c - &d)).expect("valid");
            let t2_pt = p1.index(&(-&c - &d), &c).expect("valid");
            for i in 0..=w {
                let x = monomial(w, i);
                // [P, g] + [P o sigma, g sigma] = 0
                let mut r = SymbolSum::new();
                add_to(&mut r, gid(i, pt), BigRational::one());
                for (j, v) in poly_substitute(&x, &sigma).into_iter().enumerate() {
                    add_to(&mut r, gid(j, s_pt), v);
                }
                rels.push(r);
                // [P, g] + [P o tau, g tau] + [P o tau^2, g tau^2] = 0
                let mut r = SymbolSum::new();
                add_to(&mut r, gid(i, pt), BigRational::one());
                for (j, v) in poly_substitute(&x, &tau).into_iter().enumerate() {
                    add_to(&mut r, gid(j, t_pt), v);
                }
                for (j, v) in poly_substitute(&x, &tau2).into_iter().enumerate() {
                    add_to(&mut r, gid(j, t2_pt), v);
                }
                rels.push(r);
            }
        }
        let mut rm = Matrix::zeros(rels.len(), ngens);
        for (ri, r) in rels.iter().enumerate() {
            for (&c, v) in r {
                rm.set(ri, c, v.clone());
            }
        }
        let (rref, pivots) = rm.rref();
        let basis: Vec<usize> = (0..ngens).filter(|c| !pivots.contains(c)).collect();
        let pos: BTreeMap<usize, usize> = basis.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let dim = basis.len();
        let mut gen_vec = vec![vec![BigRational::zero(); dim]; ngens];
        for (&g, &i) in &pos {
            gen_vec[g][i] = BigRational::one();
        }
        for (ri, &pc) in pivots.iter().enumerate() {
            for (&f, &fi) in &pos {
                let v = rref.get(ri, f);
                if !v.is_zero() {
                    gen_vec[pc][fi] = -v.clone();
                }
            }
        }
        let mut space = ManinSymbolSpace { n, k, p1, gen_vec, basis, cusps: Vec::new(), boundary: Vec::new() };
        space.build_boundary();
        Ok(space)
    }

    pub fn level(&self) -> u64 {
        self.n
    }

    pub fn weight(&self) -> u32 {
        self.k
    }

    pub fn w(&self) -> usize {
        (self.k - 2) as usize
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn num_generators(&self) -> usize {
        self.gen_vec.len()
    }

    pub fn p1(&self) -> &P1List {
        &self.p1
    }

    pub fn cusps(&self) -> &[Cusp] {
        &self.cusps
    }

    pub fn generator_vector(&self, g: usize) -> &[BigRational] {
        &self.gen_vec[g]
    }

    fn gid(&self, i: usize, pt: usize) -> usize {
        i * self.p1.len() + pt
    }

    /// Generator index of `[X^i Y^{w-i}, (c : d)]`.
    pub fn generator(&self, i: usize, c: &BigInt, d: &BigInt) -> Option<usize> {
        self.p1.index(c, d).map(|pt| self.gid(i, pt))
    }

    fn split(&self, g: usize) -> (usize, usize) {
        (g / self.p1.len(), g % self.p1.len())
    }

    /// Cusps `a/c`, `a'/c'` are equivalent iff `c' = u c` and `a' = u^{-1} a mod gcd(c, N)`
    /// for some unit `u`, up to the sign of the pair.
    pub fn cusps_equivalent(n: u64, x: &Cusp, y: &Cusp) -> bool {
        let nb = BigInt::from(n);
        let red = |v: &BigInt| v.mod_floor(&nb).to_u64().expect("reduced");
        let (a1, c1) = (red(&x.num), red(&x.den));
        let g = gcd_u64(c1, n);
        let gb = g.max(1);
        for sgn in [1i64, -1] {
            let a2 = red(&(&y.num * sgn));
            let c2 = red(&(&y.den * sgn));
            for u in (1..=n).filter(|&u| gcd_u64(u % n, n) == 1) {
                let u = u % n;
                if (u as u128 * c1 as u128 % n as u128) as u64 != c2 % n {
                    continue;
                }
                if (a2 as u128 * u as u128 % gb as u128) as u64 == a1 % gb {
                    return true;
                }
            }
        }
        false
    }

    fn cusp_index(&mut self, c: Cusp) -> usize {
        if let Some(i) = self.cusps.iter().position(|x| Self::cusps_equivalent(self.n, x, &c)) {
            return i;
        }
        self.cusps.push(c);
        self.cusps.len() - 1
    }

    fn build_boundary(&mut self) {
        let w = self.w();
        let ng = self.num_generators();
        let mut bd = Vec::with_capacity(ng);
        for g in 0..ng {
            let (i, pt) = self.split(g);
            let m = self.p1.lift(pt);
            let mut terms = Vec::new();
            if i == w {
                let c = Cusp::new(m[0].clone(), m[2].clone());
                terms.push((self.cusp_index(c), 1));
            }
            if i == 0 {
                let c = Cusp::new(m[1].clone(), m[3].clone());
                terms.push((self.cusp_index(c), -1));
            }
            bd.push(terms);
        }
        self.boundary = bd;
    }

    /// Generator coefficients of `P {oo, r}`.
    pub fn path_from_infinity(&self, p: &Poly, r: &Cusp, out: &mut SymbolSum) {
        if r.is_infinity() {
            return;
        }
        let conv = convergents(&r.num, &r.den);
        let (mut pp, mut qp) = (BigInt::one(), BigInt::zero());
        for (j, (pj, qj)) in conv.into_iter().enumerate() {
            let s = if j % 2 == 0 { -BigInt::one() } else { BigInt::one() };
            let g = [pj.clone(), &s * &pp, qj.clone(), &s * &qp];
            let pt = self.p1.index(&g[2], &g[3]).expect("unimodular lower row");
            let qpoly = poly_substitute(p, &g);
            for (i, v) in qpoly.into_iter().enumerate() {
                add_to(out, self.gid(i, pt), v);
            }
            pp = pj;
            qp = qj;
        }
    }

    /// Generator coefficients of `P {x, y}`.
    pub fn path(&self, p: &Poly, x: &Cusp, y: &Cusp) -> SymbolSum {
        let mut s = SymbolSum::new();
        self.path_from_infinity(p, y, &mut s);
        let mut t = SymbolSum::new();
        self.path_from_infinity(p, x, &mut t);
        for (k, v) in t {
            add_to(&mut s, k, -v);
        }
        s
    }

    /// Quotient coordinates of a generator combination.
    pub fn reduce(&self, s: &SymbolSum) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.dimension()];
        for (&g, c) in s {
            for (o, x) in v.iter_mut().zip(&self.gen_vec[g]) {
                if !x.is_zero() {
                    *o += c * x;
                }
            }
        }
        v
    }

    /// `M ([P, g])` for the Manin generator `g`, as a path.
    fn act_on_generator(&self, gen: usize, m: &[BigInt; 4], out: &mut SymbolSum, scale: &BigRational) {
        let (i, pt) = self.split(gen);
        let g = self.p1.lift(pt);
        let mg = mat_mul(m, &g);
        let poly = poly_act(&monomial(self.w(), i), &mg);
        let zero = Cusp::new(BigInt::zero(), BigInt::one());
        let s = self.path(&poly, &zero.act(&mg), &Cusp::infinity().act(&mg));
        for (k, v) in s {
            add_to(out, k, v * scale);
        }
    }

    fn operator_from(&self, mats: &[[BigInt; 4]], scale: &BigRational) -> Matrix {
        let cols: Vec<Vec<BigRational>> = self
            .basis
            .iter()
            .map(|&g| {
                let mut s = SymbolSum::new();
                for m in mats {
                    self.act_on_generator(g, m, &mut s, scale);
                }
                self.reduce(&s)
            })
            .collect();
        Matrix::from_cols(&cols, self.dimension())
    }

    /// `T_q` for `q` prime to `N`, `U_q` for `q | N`; columns are images of basis vectors.
    pub fn hecke_operator(&self, q: u64) -> Result<Matrix> {
        if !is_prime_u64(q) {
            return Err(Error::Domain(format!("{q} is not prime")));
        }
        let qb = BigInt::from(q);
        let mut mats: Vec<[BigInt; 4]> =
            (0..q).map(|r| [BigInt::one(), BigInt::from(r), BigInt::zero(), qb.clone()]).collect();
        if self.n % q != 0 {
            mats.push([qb.clone(), BigInt::zero(), BigInt::zero(), BigInt::one()]);
        }
        Ok(self.operator_from(&mats, &BigRational::one()))
    }

    /// The involution induced by `z -> -conj(z)`.
    pub fn star_involution(&self) -> Matrix {
        let cols: Vec<Vec<BigRational>> = self
            .basis
            .iter()
            .map(|&g| {
                let (i, pt) = self.split(g);
                let (c, d) = self.p1.point(pt);
                let img = self.generator(i, &-BigInt::from(c), &BigInt::from(d)).expect("valid");
                let sgn = if i % 2 == 0 { BigRational::one() } else { -BigRational::one() };
                self.gen_vec[img].iter().map(|x| x * &sgn).collect()
            })
            .collect();
        Matrix::from_cols(&cols, self.dimension())
    }

    /// Fricke involution `W_N = [0 -1; N 0]` scaled by `N^{-(k-2)/2}`.
    pub fn fricke(&self) -> Matrix {
        let nb = BigInt::from(self.n);
        let scale = BigRational::new(BigInt::one(), nb.pow((self.w() / 2) as u32));
        self.operator_from(&[[BigInt::zero(), -BigInt::one(), nb, BigInt::zero()]], &scale)
    }

    /// Boundary map as a `#cusps x dim` matrix.
    pub fn boundary_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.cusps.len(), self.dimension());
        for (j, &g) in self.basis.iter().enumerate() {
            for &(c, v) in &self.boundary[g] {
                let x = m.get(c, j) + q(v);
                m.set(c, j, x);
            }
        }
        m
    }

    /// Boundary of every generator, `#cusps x #generators`.
    fn boundary_on_generators(&self) -> Vec<Vec<BigInt>> {
        let mut rows = vec![vec![BigInt::zero(); self.num_generators()]; self.cusps.len()];
        for (g, terms) in self.boundary.iter().enumerate() {
            for &(c, v) in terms {
                rows[c][g] += v;
            }
        }
        rows
    }

    /// Dimension of the cuspidal subspace (kernel of the boundary map).
    pub fn cuspidal_dimension(&self) -> usize {
        self.dimension() - self.boundary_matrix().rank()
    }

    /// Dimension of the `sign` eigenspace of the involution inside the cuspidal subspace.
    pub fn cuspidal_sign_dimension(&self, sign: i8) -> usize {
        let inv = self.star_involution().shift_diag(&q(sign as i64));
        let stacked = self.boundary_matrix().vstack(&inv);
        self.dimension() - stacked.rank()
    }

    /// Checks that the boundary map kills every Manin relation.
    pub fn boundary_respects_relations(&self) -> bool {
        // boundary of each generator computed directly equals boundary of its reduction
        let bm = self.boundary_matrix();
        (0..self.num_generators()).all(|g| {
            let mut direct = vec![BigRational::zero(); self.cusps.len()];
            for &(c, v) in &self.boundary[g] {
                direct[c] += q(v);
            }
            bm.mul_vec(&self.gen_vec[g]) == direct
        })
    }
}

fn mat_mul(a: &[BigInt; 4], b: &[BigInt; 4]) -> [BigInt; 4] {
    [
        &a[0] * &b[0] + &a[1] * &b[2],
        &a[0] * &b[1] + &a[1] * &b[3],
        &a[2] * &b[0] + &a[3] * &b[2],
        &a[2] * &b[1] + &a[3] * &b[3],
    ]
}

/// Largest integer below the Ramanujan bound `2 q^{(k-1)/2}`.
pub fn ramanujan_bound(q: u64, k: u32) -> i64 {
    let x = BigInt::from(4) * BigInt::from(q).pow(k - 1);
    x.sqrt().to_i64().unwrap_or(i64::MAX)
}

/// Rows spanning `{ v in V : v T = a v }` for `V` spanned by `rows`.
fn restrict(rows: &[Vec<BigRational>], t: &Matrix, a: &BigRational) -> Vec<Vec<BigRational>> {
    if rows.is_empty() {
        return vec![];
    }
    let b = Matrix::from_rows(rows.to_vec(), t.rows());
    let bt = b.mul(&t.shift_diag(a));
    bt.left_kernel().into_iter().map(|c| b.vec_mul(&c)).collect()
}

fn eigenvalue_of(v: &[BigRational], t: &Matrix) -> Option<BigRational> {
    let tv = t.vec_mul(v);
    let j = v.iter().position(|x| !x.is_zero())?;
    let lam = &tv[j] / &v[j];
    tv.iter().zip(v).all(|(x, y)| *x == &lam * y).then_some(lam)
}

/// Hecke data found for a one-dimensional eigenspace.
#[derive(Clone, Debug, PartialEq)]
pub struct Eigensystem {
    pub aq: Vec<(u64, i64)>,
    pub functional: Vec<BigRational>,
}

/// Rational Hecke eigen-functionals in the `sign` part, with eigenvalues for primes up to `bound`.
pub fn rational_newforms(space: &ManinSymbolSpace, sign: i8, bound: u64) -> Result<Vec<Eigensystem>> {
    let inv = space.star_involution();
    let start = restrict(&Matrix::identity(space.dimension()).row_vectors(), &inv, &q(sign as i64));
    let primes = primes_up_to(bound.max(2));
    let ops: Vec<(u64, Matrix)> = primes.iter().map(|&p| space.hecke_operator(p).map(|t| (p, t))).collect::<Result<_>>()?;
    let good: Vec<&(u64, Matrix)> = ops.iter().filter(|(p, _)| space.n % p != 0).collect();
    let mut found = Vec::new();
    let mut stack = vec![(start, 0usize, Vec::<(u64, i64)>::new())];
    while let Some((rows, depth, data)) = stack.pop() {
        if rows.len() == 1 {
            let v = &rows[0];
            let mut aq = Vec::new();
            let mut ok = true;
            for (p, t) in &ops {
                match eigenvalue_of(v, t) {
                    Some(l) if l.is_integer() => aq.push((*p, l.to_integer().to_i64().expect("small"))),
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            let cusp = aq.iter().filter(|(p, _)| space.n % p != 0).all(|&(p, a)| a.abs() <= ramanujan_bound(p, space.k));
            if ok && cusp {
                found.push(Eigensystem { aq, functional: v.clone() });
            }
            continue;
        }
        if depth == good.len() {
            if !rows.is_empty() {
                return Err(Error::NotOneDimensional(rows.len()));
            }
            continue;
        }
        let (p, t) = good[depth];
        let bnd = ramanujan_bound(*p, space.k);
        for a in -bnd..=bnd {
            let sub = restrict(&rows, t, &q(a));
            if !sub.is_empty() {
                let mut d = data.clone();
                d.push((*p, a));
                stack.push((sub, depth + 1, d));
            }
        }
    }
    found.sort_by(|x, y| x.aq.cmp(&y.aq));
    Ok(found)
}

impl Matrix {
    fn row_vectors(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows()).map(|r| self.row(r).to_vec()).collect()
    }
}

/// A normalized Hecke eigen-symbol: the functional `Phi^±` on generators.
#[derive(Clone, Debug)]
pub struct EigenSymbol {
    n: u64,
    k: u32,
    sign: i8,
    aq: Vec<(u64, i64)>,
    p1: P1List,
    /// `Phi` evaluated on each Manin generator.
    phi_gen: Vec<BigRational>,
    /// Scaling applied to the raw eigenvector.
    pub normalization: BigRational,
}

/// Default range of primes for eigenvalue data.
pub const HECKE_BOUND: u64 = 13;

impl EigenSymbol {
    /// The unique rational newform of the space with the given sign, or the
    /// one matching `data` when eigenvalues are supplied.
    pub fn from_space(space: &ManinSymbolSpace, sign: i8, data: Option<&[(u64, i64)]>) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(Error::Domain("sign must be +1 or -1".into()));
        }
        let (aq, functional) = match data {
            Some(d) => {
                let inv = space.star_involution();
                let mut rows = restrict(&Matrix::identity(space.dimension()).row_vectors(), &inv, &q(sign as i64));
                for &(p, a) in d {
                    rows = restrict(&rows, &space.hecke_operator(p)?, &q(a));
                }
                if rows.len() != 1 {
                    return Err(Error::NotOneDimensional(rows.len()));
                }
                let v = rows.remove(0);
                let mut aq = Vec::new();
                for p in primes_up_to(HECKE_BOUND) {
                    let l = eigenvalue_of(&v, &space.hecke_operator(p)?).ok_or(Error::NotOneDimensional(2))?;
                    aq.push((p, l.to_integer().to_i64().ok_or_else(|| Error::Domain("irrational eigenvalue".into()))?));
                }
                (aq, v)
            }
            None => {
                let mut f = rational_newforms(space, sign, HECKE_BOUND)?;
                if f.len() != 1 {
                    return Err(Error::NotOneDimensional(f.len()));
                }
                let e = f.remove(0);
                (e.aq, e.functional)
            }
        };
        let raw: Vec<BigRational> = space
            .gen_vec
            .iter()
            .map(|g| g.iter().zip(&functional).filter(|(x, _)| !x.is_zero()).map(|(x, y)| x * y).sum())
            .collect();
        let content = lattice_content(space, sign, &raw)?;
        let mut sym = EigenSymbol {
            n: space.n,
            k: space.k,
            sign,
            aq,
            p1: space.p1.clone(),
            phi_gen: raw.iter().map(|x| x / &content).collect(),
            normalization: content.recip(),
        };
        sym.fix_sign();
        Ok(sym)
    }

    fn fix_sign(&mut self) {
        let w = self.w();
        let mut first = self.lambda(&monomial_x(w, 0), 0, 1).expect("valid");
        if first.is_zero() {
            'outer: for m in 1..=20u64 {
                for a in 0..m as i64 {
                    let v = self.lambda(&monomial_x(w, 0), a, m).expect("valid");
                    if !v.is_zero() {
                        first = v;
                        break 'outer;
                    }
                }
            }
        }
        if first.is_negative() {
            for x in &mut self.phi_gen {
                *x = -x.clone();
            }
            self.normalization = -self.normalization.clone();
        }
    }

    pub fn level(&self) -> u64 {
        self.n
    }

    pub fn weight(&self) -> u32 {
        self.k
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn w(&self) -> usize {
        (self.k - 2) as usize
    }

    pub fn hecke_eigenvalues(&self) -> &[(u64, i64)] {
        &self.aq
    }

    pub fn a(&self, q: u64) -> Option<i64> {
        self.aq.iter().find(|(p, _)| *p == q).map(|(_, a)| *a)
    }

    /// `Phi(P {oo, r})`.
    pub fn eval_path(&self, p: &Poly, r: &Cusp) -> BigRational {
        if r.is_infinity() {
            return BigRational::zero();
        }
        let np = self.p1.len();
        let mut acc = BigRational::zero();
        let conv = convergents(&r.num, &r.den);
        let (mut pp, mut qp) = (BigInt::one(), BigInt::zero());
        for (j, (pj, qj)) in conv.into_iter().enumerate() {
            let s = if j % 2 == 0 { -BigInt::one() } else { BigInt::one() };
            let g = [pj.clone(), &s * &pp, qj.clone(), &s * &qp];
            let pt = self.p1.index(&g[2], &g[3]).expect("unimodular lower row");
            for (i, v) in poly_substitute(p, &g).into_iter().enumerate() {
                if !v.is_zero() {
                    acc += v * &self.phi_gen[i * np + pt];
                }
            }
            pp = pj;
            qp = qj;
        }
        acc
    }

    /// `lambda^±(P, a, m) = Phi^±(P(mX + aY, Y) {oo, -a/m})` for `P` given by
    /// its coefficients in `x` (index = power of `x`).
    pub fn lambda(&self, p: &[BigRational], a: i64, m: u64) -> Result<BigRational> {
        let w = self.w();
        if p.len() > w + 1 {
            return Err(Error::DegreeOverflow { degree: p.len() - 1, max: w });
        }
        if m == 0 {
            return Err(Error::Domain("m must be positive".into()));
        }
        let mut hp = vec![BigRational::zero(); w + 1];
        hp[..p.len()].clone_from_slice(p);
        let sub = poly_substitute(&hp, &[BigInt::from(m), BigInt::from(a), BigInt::zero(), BigInt::one()]);
        Ok(self.eval_path(&sub, &Cusp::from_int(-a, m as i64)))
    }

    /// `lambda^±(x^d, a, m)`.
    pub fn lambda_monomial(&self, d: usize, a: i64, m: u64) -> Result<BigRational> {
        self.lambda(&monomial_x(d, d), a, m)
    }

    /// The functional on generators, for export and independent checks.
    pub fn generator_values(&self) -> &[BigRational] {
        &self.phi_gen
    }

    /// Computes `a_q` from `T_q` on `space` and records it.
    pub fn add_eigenvalue(&mut self, space: &ManinSymbolSpace, q: u64) -> Result<i64> {
        if space.n != self.n || space.k != self.k {
            return Err(Error::Domain("space does not match the symbol".into()));
        }
        if let Some(a) = self.a(q) {
            return Ok(a);
        }
        let f: Vec<BigRational> = space.basis.iter().map(|&g| self.phi_gen[g].clone()).collect();
        let lam = eigenvalue_of(&f, &space.hecke_operator(q)?).ok_or(Error::NotOneDimensional(2))?;
        if !lam.is_integer() {
            return Err(Error::Domain("irrational eigenvalue".into()));
        }
        let a = lam.to_integer().to_i64().ok_or_else(|| Error::Domain("eigenvalue overflow".into()))?;
        self.aq.push((q, a));
        self.aq.sort_unstable();
        Ok(a)
    }
}

/// Coefficient vector of `x^d` padded to length `len + 1`.
pub fn monomial_x(len: usize, d: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); len.max(d) + 1];
    v[d] = BigRational::one();
    v
}

/// Positive generator of `Phi(L)` where `L` is the lattice of integral
/// cuspidal symbols fixed by the involution with the given sign.
fn lattice_content(space: &ManinSymbolSpace, sign: i8, phi: &[BigRational]) -> Result<BigRational> {
    let ng = space.num_generators();
    let mut rows = space.boundary_on_generators();
    let dim = space.dimension();
    let inv: Vec<Vec<BigRational>> = (0..ng)
        .map(|g| {
            let (i, pt) = space.split(g);
            let (c, d) = space.p1.point(pt);
            let img = space.generator(i, &-BigInt::from(c), &BigInt::from(d)).expect("valid");
            let sgn = if i % 2 == 0 { 1 } else { -1 };
            (0..dim).map(|j| &space.gen_vec[img][j] * q(sgn) - &space.gen_vec[g][j] * q(sign as i64)).collect()
        })
        .collect();
    for j in 0..dim {
        let row: Vec<BigRational> = (0..ng).map(|g| inv[g][j].clone()).collect();
        if row.iter().any(|x| !x.is_zero()) {
            rows.push(clear_denominators(&row));
        }
    }
    let ker = integer_kernel(&rows, ng);
    let vals: Vec<BigRational> = ker
        .iter()
        .map(|n| n.iter().zip(phi).filter(|(a, _)| !a.is_zero()).map(|(a, b)| q(a.clone()) * b).sum())
        .collect();
    let c = rational_content(&vals);
    if c.is_zero() {
        return Err(Error::Indeterminate("functional vanishes on the integral cuspidal lattice".into()));
    }
    Ok(c)
}
