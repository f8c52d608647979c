//! q-expansions of eta products by direct series multiplication.

/// Coefficients `c_0..c_bound` of `prod_{n >= 1} (1 - q^{s n})^e`.
fn eta_power(s: usize, e: u32, bound: usize) -> Vec<i128> {
    let mut c = vec![0i128; bound + 1];
    c[0] = 1;
    let mut n = s;
    while n <= bound {
        for _ in 0..e {
            // multiply by (1 - q^n) in place, high to low
            for i in (n..=bound).rev() {
                c[i] -= c[i - n];
            }
        }
        n += s;
    }
    c
}

fn mul(a: &[i128], b: &[i128], bound: usize) -> Vec<i128> {
    let mut c = vec![0i128; bound + 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(bound + 1 - i) {
            c[i + j] += x * y;
        }
    }
    c
}

/// `a_1..a_bound` of `eta(z)^2 eta(11 z)^2 = q prod (1 - q^n)^2 (1 - q^{11 n})^2`,
/// returned with index = n.
pub fn level_eleven(bound: usize) -> Vec<i128> {
    let prod = mul(&eta_power(1, 2, bound), &eta_power(11, 2, bound), bound);
    let mut a = vec![0i128; bound + 1];
    a[1..].copy_from_slice(&prod[..bound]);
    a
}

/// `tau(1)..tau(bound)` of `Delta = q prod (1 - q^n)^24`, index = n.
pub fn ramanujan_tau(bound: usize) -> Vec<i128> {
    let prod = eta_power(1, 24, bound);
    let mut a = vec![0i128; bound + 1];
    a[1..].copy_from_slice(&prod[..bound]);
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eleven() {
        let a = level_eleven(20);
        assert_eq!(&a[1..=13], &[1, -2, -1, 2, 1, 2, -2, 0, -2, -2, 1, -2, 4]);
        assert_eq!(a[19], 0);
    }

    #[test]
    fn tau() {
        let t = ramanujan_tau(12);
        assert_eq!(t[2], -24);
        assert_eq!(t[3], 252);
        assert_eq!(t[11], 534612);
    }
}
