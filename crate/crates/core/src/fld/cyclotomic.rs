//! Exact arithmetic in the cyclotomic field Q(ζ_m) on the power basis
//! `1, ζ, ..., ζ^(φ(m)-1)`, with big-rational coefficients.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn mobius(mut n: u64) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Integer coefficients of the m-th cyclotomic polynomial, low degree first,
/// from `Φ_m = ∏_{d | m} (x^d - 1)^μ(m/d)`.
pub fn cyclotomic_poly(m: u64) -> Vec<BigInt> {
    assert!(m >= 1);
    let divisors: Vec<u64> = (1..=m).filter(|d| m.is_multiple_of(*d)).collect();
    let mut num: Vec<BigInt> = vec![BigInt::one()];
    for &d in &divisors {
        if mobius(m / d) == 1 {
            // Multiply by x^d - 1.
            let mut out = vec![BigInt::zero(); num.len() + d as usize];
            for (i, c) in num.iter().enumerate() {
                out[i + d as usize] += c;
                out[i] -= c;
            }
            num = out;
        }
    }
    for &d in &divisors {
        if mobius(m / d) == -1 {
            // Exact division by x^d - 1: q_i = q_{i-d} - num_i read from the top.
            let d = d as usize;
            let qlen = num.len() - d;
            let mut q = vec![BigInt::zero(); qlen];
            for i in (0..qlen).rev() {
                let mut c = num[i + d].clone();
                if i + d < qlen {
                    c += &q[i + d];
                }
                q[i] = c;
            }
            num = q;
        }
    }
    num
}

/// Q(ζ_m) for a fixed modulus.
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    m: u64,
    phi: Vec<BigInt>,
}

impl CyclotomicField {
    pub fn new(m: u64) -> Arc<Self> {
        Arc::new(CyclotomicField {
            m,
            phi: cyclotomic_poly(m),
        })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// φ(m), the degree of the field over Q.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn phi(&self) -> &[BigInt] {
        &self.phi
    }
}

/// An element of Q(ζ_m).
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    coeffs: Vec<BigRational>,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field.m == other.field.m && self.coeffs == other.coeffs
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn reduce_mod_phi(mut c: Vec<BigRational>, phi: &[BigInt]) -> Vec<BigRational> {
    let d = phi.len() - 1;
    for i in (d..c.len()).rev() {
        let t = c[i].clone();
        if t.is_zero() {
            continue;
        }
        for (j, pj) in phi.iter().enumerate() {
            c[i - d + j] -= &t * BigRational::from_integer(pj.clone());
        }
    }
    c.truncate(d);
    c.resize(d, BigRational::zero());
    c
}

impl Cyclotomic {
    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        Cyclotomic {
            field: field.clone(),
            coeffs: vec![BigRational::zero(); field.degree()],
        }
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, q: BigRational) -> Self {
        let mut z = Self::zero(field);
        z.coeffs[0] = q;
        z
    }

    pub fn from_int(field: &Arc<CyclotomicField>, n: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_int(field, 1)
    }

    /// ζ_m^e for any integer exponent.
    pub fn zeta_pow(field: &Arc<CyclotomicField>, e: i64) -> Self {
        let m = field.m as i64;
        let e = e.rem_euclid(m) as usize;
        let mut c = vec![BigRational::zero(); e + 1];
        c[e] = BigRational::one();
        Cyclotomic {
            field: field.clone(),
            coeffs: reduce_mod_phi(c, &field.phi),
        }
    }

    /// Builds from arbitrary-length coefficients in powers of ζ.
    pub fn from_power_coeffs(field: &Arc<CyclotomicField>, c: Vec<BigRational>) -> Self {
        Cyclotomic {
            field: field.clone(),
            coeffs: reduce_mod_phi(c, &field.phi),
        }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The value as a rational, when it lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&o.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Cyclotomic {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&o.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Cyclotomic {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| a * q).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let d = self.coeffs.len();
        let mut c = vec![BigRational::zero(); 2 * d.max(1) - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        Cyclotomic {
            field: self.field.clone(),
            coeffs: reduce_mod_phi(c, &self.field.phi),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x].
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let phi: Vec<BigRational> = self
            .field
            .phi
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        // Invariant: s_i * a ≡ r_i (mod Φ).
        let mut r0 = phi;
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<BigRational> = Vec::new();
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while r1.len() > 1 {
            let (q, r) = qdivrem(&r0, &r1);
            let s2 = qsub(&s0, &qmul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        let c = r1[0].clone();
        let s: Vec<BigRational> = s1.iter().map(|x| x / &c).collect();
        Some(Cyclotomic::from_power_coeffs(&self.field, s))
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul(&i))
    }

    /// Image under the Galois automorphism ζ ↦ ζ^a.
    pub fn galois(&self, a: i64) -> Self {
        let m = self.field.m as i64;
        let mut c = vec![BigRational::zero(); self.field.m as usize];
        for (i, x) in self.coeffs.iter().enumerate() {
            if !x.is_zero() {
                let e = (a * i as i64).rem_euclid(m) as usize;
                c[e] += x;
            }
        }
        Cyclotomic::from_power_coeffs(&self.field, c)
    }

    /// Complex conjugation, ζ ↦ ζ^(-1).
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Common denominator of the coefficients and the integer numerators.
    pub fn integer_form(&self) -> (Vec<BigInt>, BigInt) {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
        let nums = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        (nums, den)
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn qmul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    trim(c)
}

fn qsub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

fn qdivrem(a: &[BigRational], d: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let dd = d.len() - 1;
    let mut r = a.to_vec();
    if r.len() <= dd {
        return (Vec::new(), trim(r));
    }
    let mut q = vec![BigRational::zero(); r.len() - dd];
    let lead = d[dd].clone();
    for i in (dd..r.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let t = &r[i] / &lead;
        for (j, dj) in d.iter().enumerate() {
            r[i - dd + j] -= &t * dj;
        }
        q[i - dd] = t;
    }
    r.truncate(dd);
    (trim(q), trim(r))
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{}", a)?;
            }
            match i {
                0 => {}
                1 => write!(f, "ζ")?,
                _ => write!(f, "ζ^{}", i)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_poly(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_poly(15), ints(&[1, -1, 0, 1, -1, 1, 0, -1, 1]));
        assert_eq!(cyclotomic_poly(21).len() - 1, 12);
    }

    #[test]
    fn zeta_has_order_m() {
        for m in [1u64, 3, 5, 7, 15, 21] {
            let k = CyclotomicField::new(m);
            let z = Cyclotomic::zeta_pow(&k, 1);
            let mut p = Cyclotomic::one(&k);
            for _ in 0..m {
                p = p.mul(&z);
            }
            assert_eq!(p, Cyclotomic::one(&k));
        }
    }

    #[test]
    fn sum_of_primitive_cube_roots() {
        let k = CyclotomicField::new(3);
        let s = Cyclotomic::zeta_pow(&k, 1).add(&Cyclotomic::zeta_pow(&k, 2));
        assert_eq!(s, Cyclotomic::from_int(&k, -1));
    }

    #[test]
    fn inverses() {
        let k = CyclotomicField::new(15);
        let a = Cyclotomic::zeta_pow(&k, 1)
            .add(&Cyclotomic::from_int(&k, 3))
            .add(&Cyclotomic::zeta_pow(&k, 7));
        let i = a.inv().unwrap();
        assert_eq!(a.mul(&i), Cyclotomic::one(&k));
        assert!(Cyclotomic::zero(&k).inv().is_none());
    }

    #[test]
    fn conjugation_inverts_zeta() {
        let k = CyclotomicField::new(7);
        let z = Cyclotomic::zeta_pow(&k, 3);
        assert_eq!(z.conj(), Cyclotomic::zeta_pow(&k, 4));
        assert_eq!(format!("{}", Cyclotomic::from_int(&k, -1)), "-1");
    }
}
