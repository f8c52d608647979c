//! Bernoulli numbers by the Akiyama-Tanigawa algorithm.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// `B_n` with the convention `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> BigRational {
    let mut a: Vec<BigRational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        a.push(BigRational::new(BigInt::one(), BigInt::from(m + 1)));
        for j in (1..=m).rev() {
            let d = &a[j - 1] - &a[j];
            a[j - 1] = d * BigRational::from_integer(BigInt::from(j));
        }
    }
    // the algorithm produces B_1 = +1/2
    if n == 1 {
        -a[0].clone()
    } else {
        a[0].clone()
    }
}

/// `(1 - p^k) * (-B_{k+1} / (k + 1))`, i.e. `(1 - p^k) zeta(-k)`.
pub fn zeta_value(p: u64, k: u32) -> BigRational {
    let pk = BigRational::from_integer(BigInt::from(p).pow(k));
    let b = bernoulli(k as usize + 1);
    (BigRational::one() - pk) * (-b / BigRational::from_integer(BigInt::from(k + 1)))
}


#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0), r(1, 1));
        assert_eq!(bernoulli(1), r(-1, 2));
        assert_eq!(bernoulli(2), r(1, 6));
        assert_eq!(bernoulli(3), r(0, 1));
        assert_eq!(bernoulli(4), r(-1, 30));
        assert_eq!(bernoulli(12), r(-691, 2730));
    }

    #[test]
    fn zeta_minus_three_at_five() {
        assert_eq!(zeta_value(5, 3), r(-31, 30));
        assert_eq!(zeta_value(5, 1), r(1, 3));
    }
}
