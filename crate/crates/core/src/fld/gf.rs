//! Arithmetic in GF(2^k), `1 <= k <= 63`.
//!
//! Elements are polynomials over GF(2) modulo a fixed primitive polynomial,
//! packed into the low `k` bits of a `u64`. Addition is XOR and does not need
//! the field; everything else goes through [`Gf2k`].

use std::fmt;
use std::ops::{Add, AddAssign, Sub, SubAssign};
use std::sync::Arc;

use super::ints::prime_factors;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elt(pub u64);

impl Elt {
    pub const ZERO: Elt = Elt(0);
    pub const ONE: Elt = Elt(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn bit(self, i: usize) -> bool {
        (self.0 >> i) & 1 == 1
    }
}

impl Add for Elt {
    type Output = Elt;
    #[inline]
    fn add(self, rhs: Elt) -> Elt {
        Elt(self.0 ^ rhs.0)
    }
}

impl Sub for Elt {
    type Output = Elt;
    #[inline]
    fn sub(self, rhs: Elt) -> Elt {
        Elt(self.0 ^ rhs.0)
    }
}

impl AddAssign for Elt {
    #[inline]
    fn add_assign(&mut self, rhs: Elt) {
        self.0 ^= rhs.0;
    }
}

impl SubAssign for Elt {
    #[inline]
    fn sub_assign(&mut self, rhs: Elt) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Display for Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.0)
    }
}

/// Largest `k` for which log/exp tables are built.
const TABLE_MAX_K: u32 = 16;
/// Largest `k` for which scalar-multiplication bit matrices are cached.
const MULMAT_MAX_K: u32 = 10;

struct Inner {
    k: u32,
    poly: u64,
    log: Vec<u32>,
    exp: Vec<u64>,
    mulmats: Vec<u64>,
}

/// The field GF(2^k) with the lexicographically least primitive defining
/// polynomial of degree `k`.
#[derive(Clone)]
pub struct Gf2k(Arc<Inner>);

impl fmt::Debug for Gf2k {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {:#x}", self.0.k, self.0.poly)
    }
}

impl PartialEq for Gf2k {
    fn eq(&self, other: &Self) -> bool {
        self.0.k == other.0.k && self.0.poly == other.0.poly
    }
}

impl Eq for Gf2k {}

impl std::hash::Hash for Gf2k {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.k.hash(state);
        self.0.poly.hash(state);
    }
}

#[inline]
fn mul_raw(mut a: u64, mut b: u64, k: u32, poly: u64) -> u64 {
    let top = 1u64 << k;
    let mut r = 0u64;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & top != 0 {
            a ^= poly;
        }
    }
    r
}

fn pow_raw(mut a: u64, mut e: u64, k: u32, poly: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_raw(r, a, k, poly);
        }
        a = mul_raw(a, a, k, poly);
        e >>= 1;
    }
    r
}

/// Whether `x` generates the unit group of GF(2)[x]/(poly).
fn is_primitive_poly(poly: u64, k: u32) -> bool {
    if poly & 1 == 0 {
        return false;
    }
    let order = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    if k == 1 {
        return poly == 0b11;
    }
    let x = 2u64;
    if pow_raw(x, order, k, poly) != 1 {
        return false;
    }
    prime_factors(order)
        .into_iter()
        .all(|r| pow_raw(x, order / r, k, poly) != 1)
}

/// Lexicographically least primitive polynomial of degree `k` (bit-encoded,
/// including the leading term).
pub fn least_primitive_poly(k: u32) -> u64 {
    assert!((1..=63).contains(&k), "extension degree out of range");
    let lead = 1u64 << k;
    let mut low = 1u64;
    loop {
        let p = lead | low;
        if is_primitive_poly(p, k) {
            return p;
        }
        low += 2;
    }
}

impl Gf2k {
    /// GF(2^k) with the least primitive defining polynomial.
    pub fn new(k: u32) -> Self {
        Self::with_poly(k, least_primitive_poly(k))
    }

    /// GF(2^k) for an explicitly given primitive polynomial.
    pub fn with_poly(k: u32, poly: u64) -> Self {
        assert!((1..=63).contains(&k));
        assert!(poly >> k == 1, "polynomial degree must equal k");
        let (log, exp) = if k <= TABLE_MAX_K {
            let q = 1usize << k;
            let mut log = vec![0u32; q];
            let mut exp = vec![0u64; 2 * (q - 1)];
            let mut x = 1u64;
            for (i, e) in exp.iter_mut().take(q - 1).enumerate() {
                *e = x;
                log[x as usize] = i as u32;
                x = mul_raw(x, 2, k, poly);
            }
            for i in q - 1..2 * (q - 1) {
                exp[i] = exp[i - (q - 1)];
            }
            (log, exp)
        } else {
            (Vec::new(), Vec::new())
        };
        let mut inner = Inner {
            k,
            poly,
            log,
            exp,
            mulmats: Vec::new(),
        };
        if k <= MULMAT_MAX_K {
            let q = 1u64 << k;
            let mut mm = Vec::with_capacity((q as usize) * k as usize);
            for c in 0..q {
                mm.extend_from_slice(&compute_mulmat(c, k, poly));
            }
            inner.mulmats = mm;
        }
        Gf2k(Arc::new(inner))
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.0.k as usize
    }

    pub fn poly(&self) -> u64 {
        self.0.poly
    }

    /// Number of elements, 2^k.
    pub fn order(&self) -> u64 {
        1u64 << self.0.k
    }

    pub fn elements(&self) -> impl Iterator<Item = Elt> {
        (0..self.order()).map(Elt)
    }

    #[inline]
    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        if a.0 == 0 || b.0 == 0 {
            return Elt::ZERO;
        }
        let inner = &*self.0;
        if !inner.exp.is_empty() {
            let l = inner.log[a.0 as usize] + inner.log[b.0 as usize];
            Elt(inner.exp[l as usize])
        } else {
            Elt(mul_raw(a.0, b.0, inner.k, inner.poly))
        }
    }

    pub fn pow(&self, a: Elt, e: u64) -> Elt {
        if e == 0 {
            return Elt::ONE;
        }
        if a.is_zero() {
            return Elt::ZERO;
        }
        let inner = &*self.0;
        if !inner.exp.is_empty() {
            let q1 = self.order() - 1;
            let l = (inner.log[a.0 as usize] as u128 * e as u128 % q1 as u128) as usize;
            Elt(inner.exp[l])
        } else {
            Elt(pow_raw(a.0, e, inner.k, inner.poly))
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: Elt) -> Elt {
        assert!(!a.is_zero(), "inverse of zero");
        let inner = &*self.0;
        if !inner.exp.is_empty() {
            let q1 = (self.order() - 1) as u32;
            let l = inner.log[a.0 as usize];
            Elt(inner.exp[((q1 - l) % q1) as usize])
        } else {
            self.pow(a, self.order() - 2)
        }
    }

    pub fn div(&self, a: Elt, b: Elt) -> Elt {
        self.mul(a, self.inv(b))
    }

    #[inline]
    pub fn square(&self, a: Elt) -> Elt {
        self.mul(a, a)
    }

    /// The unique square root, `x^(2^(k-1))`.
    pub fn sqrt(&self, a: Elt) -> Elt {
        let mut r = a;
        for _ in 1..self.0.k {
            r = self.square(r);
        }
        r
    }

    /// Multiplicative order of a nonzero element.
    pub fn elt_order(&self, a: Elt) -> u64 {
        assert!(!a.is_zero());
        let n = self.order() - 1;
        let mut ord = n;
        for p in prime_factors(n) {
            while ord.is_multiple_of(p) && self.pow(a, ord / p) == Elt::ONE {
                ord /= p;
            }
        }
        ord
    }

    /// The least element (as an integer) generating the multiplicative group.
    pub fn least_generator(&self) -> Elt {
        let n = self.order() - 1;
        (1..self.order())
            .map(Elt)
            .find(|&a| self.elt_order(a) == n)
            .expect("finite field has a primitive element")
    }

    /// Bit matrix of multiplication by `c`: entry `j` is the mask over input
    /// bit planes `i` contributing to output plane `j`.
    #[inline]
    pub fn mulmat(&self, c: Elt, out: &mut [u64]) {
        let inner = &*self.0;
        let k = inner.k as usize;
        if !inner.mulmats.is_empty() {
            let off = c.0 as usize * k;
            out[..k].copy_from_slice(&inner.mulmats[off..off + k]);
        } else {
            out[..k].copy_from_slice(&compute_mulmat(c.0, inner.k, inner.poly));
        }
    }

    /// The trace map to GF(2).
    pub fn trace(&self, a: Elt) -> Elt {
        let mut t = Elt::ZERO;
        let mut x = a;
        for _ in 0..self.0.k {
            t += x;
            x = self.square(x);
        }
        t
    }
}

fn compute_mulmat(c: u64, k: u32, poly: u64) -> Vec<u64> {
    let k = k as usize;
    let mut out = vec![0u64; k];
    for i in 0..k {
        let prod = mul_raw(c, 1u64 << i, k as u32, poly);
        for (j, o) in out.iter_mut().enumerate() {
            if (prod >> j) & 1 == 1 {
                *o |= 1u64 << i;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_primitive_polys() {
        assert_eq!(least_primitive_poly(1), 0b11);
        assert_eq!(least_primitive_poly(2), 0b111);
        assert_eq!(least_primitive_poly(3), 0b1011);
        assert_eq!(least_primitive_poly(4), 0b10011);
        // x^6 + x + 1 is the least primitive sextic.
        assert_eq!(least_primitive_poly(6), 0b1000011);
    }

    #[test]
    fn table_and_raw_multiplication_agree() {
        let f = Gf2k::new(6);
        for a in 0..64u64 {
            for b in 0..64u64 {
                assert_eq!(f.mul(Elt(a), Elt(b)).0, mul_raw(a, b, 6, f.poly()));
            }
        }
    }

    #[test]
    fn inverses_and_square_roots() {
        for k in [1u32, 2, 3, 4, 6, 20] {
            let f = Gf2k::new(k);
            let sample: Vec<Elt> = (0..f.order().min(300)).map(Elt).collect();
            for &a in &sample {
                let s = f.sqrt(a);
                assert_eq!(f.square(s), a);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a)), Elt::ONE);
                }
            }
        }
    }

    #[test]
    fn large_field_generator() {
        let f = Gf2k::new(60);
        let g = Elt(2);
        assert_eq!(f.elt_order(g), (1u64 << 60) - 1);
    }

    #[test]
    fn mulmat_matches_scalar_multiplication() {
        for k in [3u32, 12] {
            let f = Gf2k::new(k);
            let mut mm = vec![0u64; k as usize];
            for c in [1u64, 2, 5, 7] {
                f.mulmat(Elt(c), &mut mm);
                for x in [1u64, 3, 6, 7] {
                    let mut y = 0u64;
                    for j in 0..k as usize {
                        let bit = (mm[j] & x).count_ones() & 1;
                        y |= (bit as u64) << j;
                    }
                    assert_eq!(Elt(y), f.mul(Elt(c), Elt(x)));
                }
            }
        }
    }
}
