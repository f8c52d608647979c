use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `C(a, n)` for nonnegative `a`.
pub fn binomial_u(a: u64, n: u64) -> BigInt {
    if n > a {
        return BigInt::zero();
    }
    let n = n.min(a - n);
    let mut r = BigInt::one();
    for i in 0..n {
        r = r * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    r
}

/// Binomial coefficients `C(a, 0..len)` for a (possibly negative) integer `a`.
pub fn binomial_row(a: &BigInt, len: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(len);
    let mut c = BigInt::one();
    for n in 0..len {
        out.push(c.clone());
        c = c * (a - BigInt::from(n)) / BigInt::from(n + 1);
    }
    out
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    gcd_u64(a.unsigned_abs(), b.unsigned_abs()) as i64
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&q| is_prime_u64(q)).collect()
}

pub fn euler_phi(n: u64) -> u64 {
    let mut m = n;
    let mut r = n;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            while m % d == 0 {
                m /= d;
            }
            r -= r / d;
        }
        d += 1;
    }
    if m > 1 {
        r -= r / m;
    }
    r
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}
