//! Exact arithmetic: GF(2^k), Q(ζ_m), the 2-adic reduction channel, and
//! integer 2-part helpers.

pub mod cyclotomic;
pub mod gf;
pub mod ints;
pub mod poly;
pub mod two_adic;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

pub use cyclotomic::{Cyclotomic, CyclotomicField};
pub use gf::{Elt, Gf2k};
pub use ints::{odd_part, order_of_two_mod, two_part, v2};
pub use poly::Poly;
pub use two_adic::TwoAdicChannel;

use crate::error::{Error, Result};

/// Default 2-adic working precision.
pub const DEFAULT_PRECISION: u32 = 32;

/// The field F = GF(2^k) together with a fixed primitive m-th root of unity
/// `u`, the cyclotomic field Q(ζ_m), and the reduction channel ζ_m ↦ u.
pub struct SplittingField {
    gf: Gf2k,
    m: u64,
    gamma: Elt,
    u: Elt,
    cyc: Arc<CyclotomicField>,
    u_log: HashMap<u64, u64>,
    channel: OnceLock<TwoAdicChannel>,
}

impl fmt::Debug for SplittingField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SplittingField")
            .field("k", &self.k())
            .field("m", &self.m)
            .field("defining_poly", &format_args!("{:#x}", self.gf.poly()))
            .field("gamma", &self.gamma)
            .field("u", &self.u)
            .finish()
    }
}

impl SplittingField {
    /// Smallest GF(2^k) containing a primitive m-th root of unity.
    pub fn for_odd_modulus(m: u64) -> Result<Arc<Self>> {
        if m == 0 || m.is_multiple_of(2) {
            return Err(Error::InvalidInput(format!("modulus {m} must be odd and positive")));
        }
        let k = order_of_two_mod(m);
        if k > 63 {
            return Err(Error::InvalidInput(format!(
                "GF(2^{k}) needed for modulus {m} exceeds supported degree 63"
            )));
        }
        Ok(Self::build(Gf2k::new(k), m))
    }

    /// GF(2^k) with `m` the largest divisor of `2^k - 1` dividing `m_hint`.
    /// Brauer values are only meaningful for classes whose order divides `m`.
    pub fn with_degree(k: u32, m_hint: u64) -> Arc<Self> {
        let gf = Gf2k::new(k);
        let m = ints::gcd(gf.order() - 1, m_hint.max(1));
        Self::build(gf, m)
    }

    fn build(gf: Gf2k, m: u64) -> Arc<Self> {
        let gamma = gf.least_generator();
        let u = gf.pow(gamma, (gf.order() - 1) / m);
        let mut u_log = HashMap::with_capacity(m as usize);
        let mut x = Elt::ONE;
        for e in 0..m {
            u_log.insert(x.0, e);
            x = gf.mul(x, u);
        }
        Arc::new(SplittingField {
            gf,
            m,
            gamma,
            u,
            cyc: CyclotomicField::new(m),
            u_log,
            channel: OnceLock::new(),
        })
    }

    pub fn gf(&self) -> &Gf2k {
        &self.gf
    }

    pub fn k(&self) -> usize {
        self.gf.k()
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn defining_poly(&self) -> u64 {
        self.gf.poly()
    }

    pub fn gamma(&self) -> Elt {
        self.gamma
    }

    pub fn u(&self) -> Elt {
        self.u
    }

    pub fn cyclotomic(&self) -> &Arc<CyclotomicField> {
        &self.cyc
    }

    pub fn sqrt(&self, x: Elt) -> Elt {
        self.gf.sqrt(x)
    }

    /// Exponent `e` in `[0, m)` with `x = u^e`, if `x` is an m-th root of unity.
    pub fn log_u(&self, x: Elt) -> Option<u64> {
        self.u_log.get(&x.0).copied()
    }

    /// Lifts a root of unity in ⟨u⟩ to the matching power of ζ_m.
    pub fn brauer_lift(&self, x: Elt) -> Result<Cyclotomic> {
        if x.is_zero() {
            return Err(Error::InvalidInput("brauer_lift of zero".into()));
        }
        let e = self.log_u(x).ok_or_else(|| {
            Error::InvalidInput(format!("{x} is not a power of the fixed root u"))
        })?;
        Ok(Cyclotomic::zeta_pow(&self.cyc, e as i64))
    }

    pub fn channel(&self) -> &TwoAdicChannel {
        self.channel
            .get_or_init(|| TwoAdicChannel::new(&self.gf, self.u, &self.cyc, DEFAULT_PRECISION))
    }

    /// The residue of a 2-integral cyclotomic number.
    pub fn reduce_mod2(&self, y: &Cyclotomic) -> Result<Elt> {
        self.channel().reduce(y)
    }

    pub fn valuation(&self, y: &Cyclotomic) -> Option<i64> {
        self.channel().valuation(y)
    }
}

/// The splitting field used for a group whose exponent has odd part `m`.
pub fn field_for_group(m: u64) -> Result<Arc<SplittingField>> {
    SplittingField::for_odd_modulus(m)
}
