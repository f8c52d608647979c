//! Numerical period lattice of a weight-2 newform of prime level from its
//! q-expansion.
//!
//! `I(r) = 2 pi i int_r^{i oo} f(z) dz`.  Cusps `a/c` with `N | c` are
//! `Gamma_0(N)`-equivalent to `oo`, so `I(a/c)` is a period and is evaluated
//! by splitting the path at a point of height `1/c` on both ends.  `I(0)`
//! uses the Fricke involution.

use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct C {
    pub re: f64,
    pub im: f64,
}

impl C {
    fn new(re: f64, im: f64) -> Self {
        C { re, im }
    }
    fn add(self, o: C) -> C {
        C::new(self.re + o.re, self.im + o.im)
    }
    fn sub(self, o: C) -> C {
        C::new(self.re - o.re, self.im - o.im)
    }
    fn mul(self, o: C) -> C {
        C::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
    fn div(self, o: C) -> C {
        let d = o.re * o.re + o.im * o.im;
        C::new((self.re * o.re + self.im * o.im) / d, (self.im * o.re - self.re * o.im) / d)
    }
    fn scale(self, s: f64) -> C {
        C::new(self.re * s, self.im * s)
    }
}

/// `-sum a_n / n e^{2 pi i n w}`, the integral from `w` to `i oo`.
fn tail(a: &[i128], w: C) -> C {
    let q = C::new((-2.0 * PI * w.im).exp() * (2.0 * PI * w.re).cos(), (-2.0 * PI * w.im).exp() * (2.0 * PI * w.re).sin());
    let mut qn = C::new(1.0, 0.0);
    let mut s = C::new(0.0, 0.0);
    for (n, &an) in a.iter().enumerate().skip(1) {
        qn = qn.mul(q);
        s = s.add(qn.scale(an as f64 / n as f64));
    }
    s.scale(-1.0)
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// `I(a/c)` for `N | c`, `gcd(a, c) = 1`.
pub fn period_at(a: &[i128], num: i64, den: i64) -> C {
    // gamma = [[num, b], [den, d]] with num d - b den = 1
    let (g, x, y) = ext_gcd(num, den);
    assert_eq!(g.abs(), 1, "cusp not reduced");
    let (d, b) = (x * g, -y * g);
    let (num, den, b, d) = (num as f64, den as f64, b as f64, d as f64);
    let z = C::new(-d / den, 1.0 / den);
    let gz = C::new(num, 0.0).mul(z).add(C::new(b, 0.0)).div(C::new(den, 0.0).mul(z).add(C::new(d, 0.0)));
    // int_{gamma oo}^{oo} = int_{gamma z}^{oo} - int_{z}^{oo}
    tail(a, gz).sub(tail(a, z))
}

/// `I(0)` given the Fricke eigenvalue `w` of the form.
pub fn period_at_zero(a: &[i128], level: u64, w: i64) -> C {
    let z = C::new(0.0, 1.0 / (level as f64).sqrt());
    tail(a, z).scale(1.0 - w as f64)
}

/// Continued-fraction approximation with bounded denominator, if close.
pub fn rationalize(x: f64, max_den: i64, tol: f64) -> Option<(i64, i64)> {
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut y = x;
    loop {
        let t = y.floor();
        let ti = t as i64;
        let (h2, k2) = (ti * h1 + h0, ti * k1 + k0);
        if k2 > max_den {
            return None;
        }
        if (x - h2 as f64 / k2 as f64).abs() < tol {
            return Some((h2, k2));
        }
        let f = y - t;
        if f.abs() < 1e-15 {
            return None;
        }
        y = 1.0 / f;
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    ext_gcd(a, b).0.abs()
}

/// Reduced basis of the lattice generated by `pts`, found by expressing each
/// point in the current basis and saturating.
pub fn lattice_basis(pts: &[C]) -> (C, C) {
    let mut it = pts.iter().copied().filter(|z| z.re.hypot(z.im) > 1e-9);
    let b1 = it.next().expect("nonzero period");
    let mut b2 = it
        .clone()
        .find(|z| (b1.re * z.im - b1.im * z.re).abs() > 1e-9 * b1.re.hypot(b1.im) * z.re.hypot(z.im))
        .expect("independent periods");
    let mut b1 = b1;
    for v in pts {
        let det = b1.re * b2.im - b1.im * b2.re;
        let x = (v.re * b2.im - v.im * b2.re) / det;
        let y = (b1.re * v.im - b1.im * v.re) / det;
        let (xn, xd) = rationalize(x, 10_000, 1e-7).expect("rational coordinate");
        let (yn, yd) = rationalize(y, 10_000, 1e-7).expect("rational coordinate");
        let den = xd / gcd(xd, yd) * yd;
        if den == 1 {
            continue;
        }
        // Hermite form of the integer lattice spanned by (den,0), (0,den), (X,Y)
        let (xi, yi) = (xn * (den / xd), yn * (den / yd));
        let (g, s, _) = ext_gcd(xi, den);
        let g = g.abs();
        let sgn = if ext_gcd(xi, den).0 < 0 { -1 } else { 1 };
        // first basis vector (g, s*yi mod den), second (0, h)
        let c = (s * sgn * yi).rem_euclid(den);
        let h = gcd(den, gcd(yi * (den / g), c * (den / g)));
        let h = gcd(h, den);
        let nb1 = b1.scale(g as f64 / den as f64).add(b2.scale(c as f64 / den as f64));
        let nb2 = b2.scale(h as f64 / den as f64);
        b1 = nb1;
        b2 = nb2;
    }
    (b1, b2)
}

/// Least positive real period.
pub fn real_period(b1: C, b2: C) -> f64 {
    if b2.im.abs() < 1e-12 {
        return b2.re.abs();
    }
    if b1.im.abs() < 1e-12 {
        return b1.re.abs();
    }
    let (n, d) = rationalize(-b1.im / b2.im, 10_000, 1e-7).expect("rational ratio");
    // d b1 + n b2 is real
    b1.scale(d as f64).add(b2.scale(n as f64)).re.abs()
}

/// `|Re I(0)| / Omega^+` where `Omega^+` generates the real periods, for a
/// newform of prime level with coefficients `a[1..]`.  Periods are sampled at
/// cusps with denominators `N, 2N, 3N`.
pub fn normalized_central_value(a: &[i128], level: u64) -> f64 {
    let w = -(a[level as usize] as i64);
    let n = level as i64;
    let mut pts = Vec::new();
    for c in [n, 2 * n, 3 * n] {
        for num in 1..c {
            if gcd(num, c) == 1 {
                pts.push(period_at(a, num, c));
            }
        }
    }
    let (b1, b2) = lattice_basis(&pts);
    let omega = real_period(b1, b2);
    period_at_zero(a, level, w).re.abs() / omega
}
