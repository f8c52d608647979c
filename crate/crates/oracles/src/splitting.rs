//! Symmetric power Hecke polynomials computed inside the splitting field of
//! `X^2 - a X + q`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `r + s sqrt(D)` in `Q[x]/(x^2 - D)`.
#[derive(Clone, Debug, PartialEq)]
struct Quad {
    r: BigRational,
    s: BigRational,
}

impl Quad {
    fn mul(&self, o: &Quad, d: &BigRational) -> Quad {
        Quad { r: &self.r * &o.r + &self.s * &o.s * d, s: &self.r * &o.s + &self.s * &o.r }
    }

    fn add(&self, o: &Quad) -> Quad {
        Quad { r: &self.r + &o.r, s: &self.s + &o.s }
    }

    fn neg(&self) -> Quad {
        Quad { r: -self.r.clone(), s: -self.s.clone() }
    }

    fn one() -> Quad {
        Quad { r: BigRational::one(), s: BigRational::zero() }
    }

    fn zero() -> Quad {
        Quad { r: BigRational::zero(), s: BigRational::zero() }
    }
}

/// Coefficients of `prod_{i=0}^m (1 - alpha^i beta^{m-i} X)` where `alpha`,
/// `beta` are the roots of `X^2 - a X + q`.  Panics if the result is not
/// rational, which would mean the arithmetic is broken.
pub fn sym_power_poly(a: &BigRational, q: &BigRational, m: u32) -> Vec<BigRational> {
    let d = a * a - BigRational::from_integer(BigInt::from(4)) * q;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let alpha = Quad { r: a * &half, s: half.clone() };
    let beta = Quad { r: a * &half, s: -half };
    let pow = |x: &Quad, e: u32| (0..e).fold(Quad::one(), |acc, _| acc.mul(x, &d));
    let mut poly = vec![Quad::one()];
    for i in 0..=m {
        let root = pow(&alpha, i).mul(&pow(&beta, m - i), &d);
        let mut next = vec![Quad::zero(); poly.len() + 1];
        for (j, c) in poly.iter().enumerate() {
            next[j] = next[j].add(c);
            next[j + 1] = next[j + 1].add(&c.mul(&root, &d).neg());
        }
        poly = next;
    }
    poly.into_iter()
        .map(|c| {
            assert!(c.s.is_zero(), "irrational coefficient");
            c.r
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn sym_one_is_the_original() {
        assert_eq!(sym_power_poly(&z(3), &z(5), 1), vec![z(1), z(-3), z(5)]);
    }

    #[test]
    fn sym_two() {
        // roots a^2, q, b^2: e1 = a^2 - q, e2 = q(a^2 - q), e3 = q^3
        let p = sym_power_poly(&z(1), &z(6), 2);
        assert_eq!(p, vec![z(1), z(5), z(-30), z(-216)]);
    }
}
