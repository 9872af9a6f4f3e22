//! Reduction from Z[ζ_m] (localized at a prime over 2) onto GF(2^k).
//!
//! The prime is the one containing `F(ζ)` where `F` is the Hensel lift of the
//! minimal polynomial of the fixed root `u`. Since 2 is unramified in Q(ζ_m)
//! for odd `m`, the completion is `Z_2[x]/(F)` and valuations are read off as
//! the least 2-adic valuation of a coefficient of `a(x) mod F`.

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::cyclotomic::{Cyclotomic, CyclotomicField};
use super::gf::{Elt, Gf2k};
use super::poly::Poly;
use crate::error::{Error, Result};

type Gf2Poly = Vec<u8>;

fn g_trim(mut a: Gf2Poly) -> Gf2Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn g_add(a: &[u8], b: &[u8]) -> Gf2Poly {
    let n = a.len().max(b.len());
    g_trim(
        (0..n)
            .map(|i| a.get(i).copied().unwrap_or(0) ^ b.get(i).copied().unwrap_or(0))
            .collect(),
    )
}

fn g_mul(a: &[u8], b: &[u8]) -> Gf2Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0u8; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 1 {
            for (j, &y) in b.iter().enumerate() {
                c[i + j] ^= y;
            }
        }
    }
    g_trim(c)
}

fn g_divrem(a: &[u8], d: &[u8]) -> (Gf2Poly, Gf2Poly) {
    let dd = d.len() - 1;
    let mut r = a.to_vec();
    if r.len() <= dd {
        return (Vec::new(), g_trim(r));
    }
    let mut q = vec![0u8; r.len() - dd];
    for i in (dd..r.len()).rev() {
        if r[i] == 1 {
            q[i - dd] = 1;
            for (j, &x) in d.iter().enumerate() {
                r[i - dd + j] ^= x;
            }
        }
    }
    r.truncate(dd);
    (g_trim(q), g_trim(r))
}

/// Returns `(s, t)` with `s*a + t*b = 1`, assuming `gcd(a, b) = 1`.
fn g_bezout(a: &[u8], b: &[u8]) -> (Gf2Poly, Gf2Poly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u8], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u8]);
    while !r1.is_empty() {
        let (q, r) = g_divrem(&r0, &r1);
        let s2 = g_add(&s0, &g_mul(&q, &s1));
        let t2 = g_add(&t0, &g_mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    assert_eq!(r0, vec![1u8], "factors are not coprime");
    (s0, t0)
}

fn z_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

/// Minimal polynomial over GF(2) of `u`, low degree first.
pub fn min_poly_gf2(f: &Gf2k, u: Elt) -> Gf2Poly {
    let mut conj = vec![u];
    let mut x = f.square(u);
    while x != u {
        conj.push(x);
        x = f.square(x);
    }
    let p = conj
        .iter()
        .fold(Poly::one(), |acc, &r| acc.mul(f, &Poly(vec![r, Elt::ONE])));
    p.0.iter()
        .map(|c| {
            assert!(c.0 <= 1, "minimal polynomial must have GF(2) coefficients");
            c.0 as u8
        })
        .collect()
}

/// Hensel-lifted factor of Φ_m modulo `2^s` and the reduction map it defines.
pub struct TwoAdicChannel {
    precision: u32,
    modulus: BigInt,
    lifted: Vec<BigInt>,
    min_poly: Gf2Poly,
    gf: Gf2k,
    u: Elt,
    cyc: Arc<CyclotomicField>,
    next: OnceLock<Box<TwoAdicChannel>>,
}

impl std::fmt::Debug for TwoAdicChannel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TwoAdicChannel")
            .field("precision", &self.precision)
            .field("lifted", &self.lifted)
            .finish()
    }
}

impl TwoAdicChannel {
    pub fn new(gf: &Gf2k, u: Elt, cyc: &Arc<CyclotomicField>, precision: u32) -> Self {
        assert!(precision >= 1);
        let f = min_poly_gf2(gf, u);
        let phi: Vec<BigInt> = cyc.phi().to_vec();
        let phi2: Gf2Poly = g_trim(
            phi.iter()
                .map(|c| c.mod_floor(&BigInt::from(2)).is_one() as u8)
                .collect(),
        );
        let (h, rem) = g_divrem(&phi2, &f);
        assert!(rem.is_empty(), "minimal polynomial of u must divide Φ_m mod 2");
        let (_, t0) = g_bezout(&f, &h);

        let to_z = |p: &[u8]| -> Vec<BigInt> { p.iter().map(|&c| BigInt::from(c)).collect() };
        let modulus = BigInt::one() << precision;
        let mut big_f = to_z(&f);
        let mut big_h = to_z(&h);
        for j in 1..precision {
            let two_j = BigInt::one() << j;
            let prod = z_mul(&big_f, &big_h);
            let e: Gf2Poly = g_trim(
                phi.iter()
                    .zip(prod.iter())
                    .map(|(a, b)| {
                        let d = (a - b).mod_floor(&modulus);
                        debug_assert!((&d % &two_j).is_zero());
                        ((d >> j) & BigInt::one()).is_one() as u8
                    })
                    .collect(),
            );
            if e.is_empty() {
                continue;
            }
            let (_, df) = g_divrem(&g_mul(&t0, &e), &f);
            let (dh, r) = g_divrem(&g_add(&e, &g_mul(&df, &h)), &f);
            debug_assert!(r.is_empty());
            for (i, &c) in df.iter().enumerate() {
                if c == 1 {
                    big_f[i] = (&big_f[i] + &two_j).mod_floor(&modulus);
                }
            }
            for (i, &c) in dh.iter().enumerate() {
                if c == 1 {
                    big_h[i] = (&big_h[i] + &two_j).mod_floor(&modulus);
                }
            }
        }
        TwoAdicChannel {
            precision,
            modulus,
            lifted: big_f,
            min_poly: f,
            gf: gf.clone(),
            u,
            cyc: cyc.clone(),
            next: OnceLock::new(),
        }
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// The lifted factor, monic, coefficients in `[0, 2^s)`, low degree first.
    pub fn lifted_poly(&self) -> &[BigInt] {
        &self.lifted
    }

    pub fn min_poly_mod2(&self) -> &[u8] {
        &self.min_poly
    }

    fn higher(&self) -> &TwoAdicChannel {
        self.next.get_or_init(|| {
            Box::new(TwoAdicChannel::new(
                &self.gf,
                self.u,
                &self.cyc,
                self.precision * 2,
            ))
        })
    }

    /// `a mod F` with coefficients reduced into `[0, 2^s)`.
    fn reduce_poly(&self, a: &[BigInt]) -> Vec<BigInt> {
        let k = self.lifted.len() - 1;
        let mut r: Vec<BigInt> = a.iter().map(|c| c.mod_floor(&self.modulus)).collect();
        for i in (k..r.len()).rev() {
            let c = r[i].clone();
            if c.is_zero() {
                continue;
            }
            for (j, fj) in self.lifted.iter().enumerate() {
                r[i - k + j] = (&r[i - k + j] - &c * fj).mod_floor(&self.modulus);
            }
        }
        r.truncate(k);
        r
    }

    /// Least 2-adic valuation of a coefficient of `a mod F`, if below `s`.
    fn min_valuation(&self, r: &[BigInt]) -> Option<u32> {
        r.iter()
            .filter(|c| !c.is_zero())
            .map(|c| c.trailing_zeros().unwrap_or(0) as u32)
            .min()
    }

    /// Valuation at the chosen prime over 2; `None` for zero.
    pub fn valuation(&self, y: &Cyclotomic) -> Option<i64> {
        if y.is_zero() {
            return None;
        }
        let (nums, den) = y.integer_form();
        let vd = den.trailing_zeros().unwrap_or(0) as i64;
        let mut ch = self;
        loop {
            let r = ch.reduce_poly(&nums);
            if let Some(v) = ch.min_valuation(&r) {
                return Some(v as i64 - vd);
            }
            ch = ch.higher();
        }
    }

    /// The residue `y*` in GF(2^k); errors when `y` is not 2-integral.
    pub fn reduce(&self, y: &Cyclotomic) -> Result<Elt> {
        if y.is_zero() {
            return Ok(Elt::ZERO);
        }
        let (nums, den) = y.integer_form();
        let vd = den.trailing_zeros().unwrap_or(0);
        let mut ch = self;
        loop {
            let r = ch.reduce_poly(&nums);
            match ch.min_valuation(&r) {
                None => ch = ch.higher(),
                Some(v) if (v as u64) < vd => {
                    return Err(Error::NotIntegral(v as i64 - vd as i64));
                }
                Some(_) => {
                    // The odd part of the denominator is 1 mod 2.
                    let mut acc = Elt::ZERO;
                    let mut pw = Elt::ONE;
                    for c in &r {
                        if ((c >> vd) & BigInt::one()).is_one() {
                            acc += pw;
                        }
                        pw = ch.gf.mul(pw, ch.u);
                    }
                    return Ok(acc);
                }
            }
        }
    }
}
