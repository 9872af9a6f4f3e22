//! Dense univariate polynomials over GF(2^k).

use super::gf::{Elt, Gf2k};

/// Coefficients low degree first; always trimmed (no trailing zeros).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(pub Vec<Elt>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![Elt::ONE])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly(vec![Elt::ZERO, Elt::ONE])
    }

    pub fn from_coeffs(mut c: Vec<Elt>) -> Self {
        while c.last().is_some_and(|e| e.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Elt {
        self.0.last().copied().unwrap_or(Elt::ZERO)
    }

    pub fn eval(&self, f: &Gf2k, x: Elt) -> Elt {
        self.0
            .iter()
            .rev()
            .fold(Elt::ZERO, |acc, &c| f.mul(acc, x) + c)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let c = (0..n)
            .map(|i| {
                self.0.get(i).copied().unwrap_or(Elt::ZERO)
                    + other.0.get(i).copied().unwrap_or(Elt::ZERO)
            })
            .collect();
        Poly::from_coeffs(c)
    }

    pub fn mul(&self, f: &Gf2k, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Elt::ZERO; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                c[i + j] += f.mul(a, b);
            }
        }
        Poly::from_coeffs(c)
    }

    pub fn scale(&self, f: &Gf2k, s: Elt) -> Poly {
        Poly::from_coeffs(self.0.iter().map(|&c| f.mul(c, s)).collect())
    }

    pub fn monic(&self, f: &Gf2k) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(f, f.inv(self.lead()))
    }

    /// Quotient and remainder; panics when dividing by zero.
    pub fn divrem(&self, f: &Gf2k, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv_lead = f.inv(d.lead());
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Elt::ZERO; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = r[i];
            if c.is_zero() {
                continue;
            }
            let t = f.mul(c, inv_lead);
            q[i - dd] = t;
            for (j, &dj) in d.0.iter().enumerate() {
                r[i - dd + j] -= f.mul(t, dj);
            }
        }
        r.truncate(dd);
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    pub fn rem(&self, f: &Gf2k, d: &Poly) -> Poly {
        self.divrem(f, d).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, f: &Gf2k, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    fn mulmod(&self, f: &Gf2k, other: &Poly, m: &Poly) -> Poly {
        self.mul(f, other).rem(f, m)
    }

    /// Distinct roots in the field, ascending by integer encoding.
    pub fn roots(&self, f: &Gf2k) -> Vec<Elt> {
        let Some(deg) = self.degree() else {
            return Vec::new();
        };
        if deg == 0 {
            return Vec::new();
        }
        let mut out = if f.order() <= 1024 || (f.order() as u128) <= 4 * deg as u128 {
            f.elements()
                .filter(|&x| self.eval(f, x).is_zero())
                .collect::<Vec<_>>()
        } else {
            // Split the product of linear factors gcd(p, x^q - x) by traces.
            let p = self.monic(f);
            let mut xq = Poly::x();
            for _ in 0..f.k() {
                xq = xq.mulmod(f, &xq, &p);
            }
            let g = p.gcd(f, &xq.add(&Poly::x()));
            let mut roots = Vec::new();
            split_linear(f, g, &mut roots);
            roots
        };
        out.sort();
        out
    }
}

fn split_linear(f: &Gf2k, g: Poly, out: &mut Vec<Elt>) {
    match g.degree() {
        None | Some(0) => {}
        Some(1) => {
            let g = g.monic(f);
            out.push(g.0[0]);
        }
        Some(_) => {
            for j in 0..f.k() {
                let c = Elt(1u64 << j);
                let cx = Poly(vec![Elt::ZERO, c]);
                let mut t = cx.clone();
                let mut acc = Poly::zero();
                for _ in 0..f.k() {
                    acc = acc.add(&t);
                    t = t.mulmod(f, &t, &g);
                }
                let d = g.gcd(f, &acc.rem(f, &g));
                let dd = d.degree().unwrap_or(0);
                if dd > 0 && Some(dd) < g.degree() {
                    let (q, _) = g.divrem(f, &d);
                    split_linear(f, d, out);
                    split_linear(f, q, out);
                    return;
                }
            }
            unreachable!("trace splitting separates distinct roots");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_roots(f: &Gf2k, roots: &[Elt]) -> Poly {
        roots.iter().fold(Poly::one(), |acc, &r| {
            acc.mul(f, &Poly(vec![r, Elt::ONE]))
        })
    }

    #[test]
    fn divrem_reconstructs() {
        let f = Gf2k::new(4);
        let a = Poly::from_coeffs(vec![Elt(3), Elt(7), Elt(0), Elt(9), Elt(1)]);
        let d = Poly::from_coeffs(vec![Elt(5), Elt(2)]);
        let (q, r) = a.divrem(&f, &d);
        assert_eq!(q.mul(&f, &d).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 1);
    }

    #[test]
    fn roots_exhaustive_and_trace_split_agree() {
        let f = Gf2k::new(12);
        let rs = vec![Elt(5), Elt(77), Elt(1000), Elt(4095)];
        let mut p = from_roots(&f, &rs);
        // Multiply by an irreducible quadratic-free factor with no roots.
        p = p.mul(&f, &from_roots(&f, &[Elt(5)]));
        let mut got = p.roots(&f);
        got.sort();
        let mut want = rs.clone();
        want.sort();
        assert_eq!(got, want);

        let big = Gf2k::new(20);
        let rs = vec![Elt(3), Elt(123456), Elt(999_999)];
        let p = from_roots(&big, &rs);
        let mut want = rs.clone();
        want.sort();
        assert_eq!(p.roots(&big), want);
    }
}
