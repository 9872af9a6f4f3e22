//! Integer helpers: 2-parts, valuations, factorization of machine words.

use crate::error::{Error, Result};

/// Splits a nonzero integer as `n = n_2 * n_odd` with `n_2` a power of two.
pub fn two_part(n: i64) -> Result<(i64, i64)> {
    if n == 0 {
        return Err(Error::InvalidInput("two_part of zero".into()));
    }
    let v = n.trailing_zeros();
    Ok((1i64 << v, n >> v))
}

/// 2-adic valuation of a nonzero integer.
pub fn v2(n: u64) -> u32 {
    assert!(n != 0, "v2(0) is undefined");
    n.trailing_zeros()
}

pub fn odd_part(n: u64) -> u64 {
    if n == 0 {
        0
    } else {
        n >> n.trailing_zeros()
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Multiplicative order of 2 modulo an odd `m` (1 when `m == 1`).
pub fn order_of_two_mod(m: u64) -> u32 {
    assert!(m % 2 == 1, "modulus must be odd");
    if m == 1 {
        return 1;
    }
    let mut x = 2 % m;
    let mut k = 1;
    while x != 1 {
        x = (x * 2) % m;
        k += 1;
    }
    k
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(n: u64) -> Vec<u64> {
    fn rec(n: u64, out: &mut Vec<u64>) {
        if n == 1 {
            return;
        }
        if is_prime(n) {
            out.push(n);
            return;
        }
        for p in [2u64, 3, 5, 7, 11, 13] {
            if n.is_multiple_of(p) {
                out.push(p);
                let mut m = n;
                while m.is_multiple_of(p) {
                    m /= p;
                }
                rec(m, out);
                return;
            }
        }
        let d = pollard_rho(n);
        rec(d, out);
        rec(n / d, out);
    }
    let mut out = Vec::new();
    rec(n, &mut out);
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_part_examples() {
        assert_eq!(two_part(12).unwrap(), (4, 3));
        assert_eq!(two_part(1).unwrap(), (1, 1));
        assert_eq!(two_part(98).unwrap(), (2, 49));
        assert!(two_part(0).is_err());
        assert_eq!(two_part(-12).unwrap(), (4, -3));
    }

    #[test]
    fn order_of_two() {
        assert_eq!(order_of_two_mod(1), 1);
        assert_eq!(order_of_two_mod(3), 2);
        assert_eq!(order_of_two_mod(7), 3);
        assert_eq!(order_of_two_mod(15), 4);
        assert_eq!(order_of_two_mod(21), 6);
        assert_eq!(order_of_two_mod(1155), 60);
    }

    #[test]
    fn factors_of_mersenne_numbers() {
        assert_eq!(prime_factors((1 << 12) - 1), vec![3, 5, 7, 13]);
        assert_eq!(
            prime_factors((1u64 << 60) - 1),
            vec![3, 5, 7, 11, 13, 31, 41, 61, 151, 331, 1321]
        );
    }

    proptest::proptest! {
        #[test]
        fn two_part_is_multiplicative(a in 1i64..10_000, b in 1i64..10_000) {
            let (a2, _) = two_part(a).unwrap();
            let (b2, _) = two_part(b).unwrap();
            let (ab2, ab_odd) = two_part(a * b).unwrap();
            proptest::prop_assert_eq!(ab2, a2 * b2);
            proptest::prop_assert_eq!(ab_odd % 2, 1);
        }
    }
}
