//! Concrete permutation groups used by the corpus, tests and examples.

use super::perm::{self, Perm};
use super::{PermGroup, DEFAULT_CAP};

fn build(n: usize, gens: Vec<Perm>, name: String) -> PermGroup {
    PermGroup::new(n, gens, DEFAULT_CAP)
        .expect("named groups are small")
        .named(name)
}

fn cycle(n: usize, pts: &[u32]) -> Perm {
    perm::from_cycles(n, &[pts]).expect("valid cycle")
}

pub fn trivial() -> PermGroup {
    build(1, Vec::new(), "1".into())
}

pub fn cyclic(n: usize) -> PermGroup {
    let pts: Vec<u32> = (1..=n as u32).collect();
    let gens = if n > 1 { vec![cycle(n, &pts)] } else { Vec::new() };
    build(n.max(1), gens, format!("C{n}"))
}

pub fn symmetric(n: usize) -> PermGroup {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(cycle(n, &[1, 2]));
    }
    if n >= 3 {
        let pts: Vec<u32> = (1..=n as u32).collect();
        gens.push(cycle(n, &pts));
    }
    build(n.max(1), gens, format!("S{n}"))
}

pub fn alternating(n: usize) -> PermGroup {
    let mut gens = Vec::new();
    if n >= 3 {
        gens.push(cycle(n, &[1, 2, 3]));
    }
    if n >= 4 {
        let pts: Vec<u32> = if n % 2 == 1 {
            (1..=n as u32).collect()
        } else {
            (2..=n as u32).collect()
        };
        gens.push(cycle(n, &pts));
    }
    build(n.max(1), gens, format!("A{n}"))
}

/// Dihedral group of order `2n` acting on an n-gon.
pub fn dihedral(n: usize) -> PermGroup {
    let pts: Vec<u32> = (1..=n as u32).collect();
    let refl: Perm = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
    build(n, vec![cycle(n, &pts), refl], format!("D{}", 2 * n))
}

/// Right regular representation of a group given by its multiplication.
pub fn regular_from_mul(
    n: usize,
    gens: &[usize],
    mul: impl Fn(usize, usize) -> usize,
    name: &str,
) -> PermGroup {
    let perms = gens
        .iter()
        .map(|&g| (0..n).map(|x| mul(x, g) as u32).collect())
        .collect();
    build(n, perms, name.into())
}

/// Quaternion group of order 8, regular action.
pub fn quaternion() -> PermGroup {
    // a^i b^j at index i + 4j, with b a = a^-1 b and b^2 = a^2.
    let mul = |x: usize, y: usize| {
        let (i, j) = (x % 4, x / 4);
        let (k, l) = (y % 4, y / 4);
        let mut e = if j == 0 { i + k } else { i + 4 - k };
        let mut jj = j + l;
        if jj == 2 {
            e += 2;
            jj = 0;
        }
        e % 4 + 4 * jj
    };
    regular_from_mul(8, &[1, 4], mul, "Q8")
}

/// Semidihedral group of order 16, regular action.
pub fn semidihedral16() -> PermGroup {
    // a^i b^j at index i + 8j, with b a = a^3 b and b^2 = 1.
    let mul = |x: usize, y: usize| {
        let (i, j) = (x % 8, x / 8);
        let (k, l) = (y % 8, y / 8);
        let e = if j == 0 { i + k } else { i + 3 * k };
        e % 8 + 8 * ((j + l) % 2)
    };
    regular_from_mul(16, &[1, 8], mul, "SD16")
}

/// SL(2,3) acting on the 8 nonzero row vectors of GF(3)^2.
pub fn sl23() -> PermGroup {
    let vecs: Vec<(u32, u32)> = (0..9).map(|x| (x % 3, x / 3)).filter(|&v| v != (0, 0)).collect();
    let act = |m: [[u32; 2]; 2]| -> Perm {
        vecs.iter()
            .map(|&(a, b)| {
                let img = ((a * m[0][0] + b * m[1][0]) % 3, (a * m[0][1] + b * m[1][1]) % 3);
                vecs.iter().position(|&v| v == img).expect("nonzero image") as u32
            })
            .collect()
    };
    build(8, vec![act([[1, 1], [0, 1]]), act([[1, 0], [1, 1]])], "SL(2,3)".into())
}

/// The affine group `x ↦ x + 1`, `x ↦ a x` on GF(p), of order `p * ord(a)`.
pub fn affine(p: u32, a: u32, name: &str) -> PermGroup {
    let n = p as usize;
    let shift: Perm = (0..p).map(|x| (x + 1) % p).collect();
    let scale: Perm = (0..p).map(|x| (x * a) % p).collect();
    build(n, vec![shift, scale], name.into())
}

/// Frobenius group of order 21.
pub fn c7_c3() -> PermGroup {
    affine(7, 2, "C7:C3")
}

/// Frobenius group of order 20.
pub fn c5_c4() -> PermGroup {
    affine(5, 2, "C5:C4")
}

/// Direct product acting on the disjoint union of the point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let (na, nb) = (a.degree(), b.degree());
    let mut gens = Vec::new();
    for g in a.gens() {
        let mut p = g.clone();
        p.extend(na as u32..(na + nb) as u32);
        gens.push(p);
    }
    for g in b.gens() {
        let mut p: Perm = (0..na as u32).collect();
        p.extend(g.iter().map(|&x| x + na as u32));
        gens.push(p);
    }
    build(na + nb, gens, format!("{}x{}", a.name(), b.name()))
}

/// ATLAS standard generators of M22 on 22 points.
pub fn m22() -> PermGroup {
    let a = perm::parse_perm(22, "(1,13)(2,8)(3,16)(4,12)(6,22)(7,17)(9,10)(11,14)", 0)
        .expect("valid generator");
    let b = perm::parse_perm(
        22,
        "(1,22,3,21)(2,18,4,13)(5,12)(6,11,7,15)(8,14,20,10)(17,19)",
        0,
    )
    .expect("valid generator");
    build(22, vec![a, b], "M22".into())
}

/// The groups of the example `G = E ⋊ ZS` on the p^2 points of E.
#[derive(Debug)]
pub struct MullerGroups {
    pub p: u32,
    pub g: PermGroup,
    /// `F e2 ⋊ <t>`.
    pub h: PermGroup,
    /// The translation subgroup E.
    pub e: PermGroup,
    /// `E ⋊ (Z × <t>)`.
    pub ezt: PermGroup,
    /// Generators of the point stabilizer ZS (linear maps).
    pub zs_gens: Vec<Perm>,
    /// `|Z| = p - 1`.
    pub z_order: u64,
    /// `s` with `2s = (p^2 - 1)_2`.
    pub s: u64,
}

fn generator_mod(p: u32) -> u32 {
    (2..p)
        .find(|&g| {
            let mut x = 1u64;
            let mut ord = 0;
            loop {
                x = x * g as u64 % p as u64;
                ord += 1;
                if x == 1 {
                    break;
                }
            }
            ord == p - 1
        })
        .unwrap_or(1)
}

pub fn muller(p: u32) -> Option<MullerGroups> {
    if p < 3 || !crate::fld::ints::is_prime(p as u64) {
        return None;
    }
    let n = (p * p) as usize;
    let idx = |a: u32, b: u32| -> u32 { a % p + p * (b % p) };
    let coords: Vec<(u32, u32)> = (0..n as u32).map(|x| (x % p, x / p)).collect();
    let linear = |f: &dyn Fn(u32, u32) -> (u32, u32)| -> Perm {
        coords.iter().map(|&(a, b)| {
            let (x, y) = f(a, b);
            idx(x, y)
        }).collect()
    };
    let translate = |da: u32, db: u32| -> Perm {
        coords.iter().map(|&(a, b)| idx(a + da, b + db)).collect()
    };
    let z = generator_mod(p);
    let zmap = linear(&|a, b| (a * z % p, b * z % p));
    let (s_gens, t, e2) = if p % 4 == 1 {
        let two_part = (p - 1) & (p - 1).wrapping_neg();
        let mut c = 1u32;
        for _ in 0..(p - 1) / two_part {
            c = c * z % p;
        }
        let d1 = linear(&|a, b| (a * c % p, b));
        let d2 = linear(&|a, b| (a, b * c % p));
        let t = linear(&|a, b| (b, a));
        (vec![d1, d2, t.clone()], t, (1, p - 1))
    } else {
        // E = GF(p)[i] with i^2 = -1; elements a + b i.
        let emul = |x: (u32, u32), y: (u32, u32)| -> (u32, u32) {
            let (a, b) = (x.0 as u64, x.1 as u64);
            let (c, d) = (y.0 as u64, y.1 as u64);
            let pp = p as u64;
            (
                ((a * c + (pp - 1) * (b * d % pp)) % pp) as u32,
                ((a * d + b * c) % pp) as u32,
            )
        };
        let q1 = (p * p - 1) as u64;
        let eorder = |x: (u32, u32)| -> u64 {
            let mut y = x;
            let mut k = 1;
            while y != (1, 0) {
                y = emul(y, x);
                k += 1;
            }
            k
        };
        let gen = coords
            .iter()
            .copied()
            .filter(|&v| v != (0, 0))
            .find(|&v| eorder(v) == q1)
            .expect("multiplicative group of a finite field is cyclic");
        let two_part = q1 & q1.wrapping_neg();
        let mut c = (1u32, 0u32);
        for _ in 0..q1 / two_part {
            c = emul(c, gen);
        }
        let cmap = linear(&|a, b| emul((a, b), c));
        let t = linear(&|a, b| (a, (p - b) % p));
        (vec![cmap, t.clone()], t, (0, 1))
    };
    let mut zs_gens = vec![zmap.clone()];
    zs_gens.extend(s_gens);
    let t1 = translate(1, 0);
    let t2 = translate(0, 1);
    let mut gens = vec![t1.clone(), t2.clone()];
    gens.extend(zs_gens.iter().cloned());
    let g = build(n, gens, format!("Muller({p})"));
    let h = build(n, vec![translate(e2.0, e2.1), t.clone()], format!("Fe2:<t>({p})"));
    let e = build(n, vec![t1.clone(), t2.clone()], format!("E({p})"));
    let ezt = build(n, vec![t1, t2, zmap, t], format!("E:(Zx<t>)({p})"));
    let q = (p as u64) * (p as u64) - 1;
    let s = (q & q.wrapping_neg()) / 2;
    Some(MullerGroups {
        p,
        g,
        h,
        e,
        ezt,
        zs_gens,
        z_order: (p - 1) as u64,
        s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(symmetric(3).order(), 6);
        assert_eq!(symmetric(6).order(), 720);
        assert_eq!(alternating(4).order(), 12);
        assert_eq!(alternating(5).order(), 60);
        assert_eq!(alternating(6).order(), 360);
        assert_eq!(dihedral(4).order(), 8);
        assert_eq!(quaternion().order(), 8);
        assert_eq!(semidihedral16().order(), 16);
        assert_eq!(sl23().order(), 24);
        assert_eq!(c7_c3().order(), 21);
        assert_eq!(c5_c4().order(), 20);
        assert_eq!(direct_product(&symmetric(3), &cyclic(3)).order(), 18);
        assert_eq!(trivial().order(), 1);
    }

    #[test]
    fn small_group_invariants() {
        // Q8 has a unique involution; SD16 has 5 involutions.
        let invol = |g: &PermGroup| (1..g.order()).filter(|&i| g.elt_order(i) == 2).count();
        assert_eq!(invol(&quaternion()), 1);
        assert_eq!(invol(&semidihedral16()), 5);
        assert_eq!(invol(&dihedral(4)), 5);
        assert_eq!(quaternion().classes().len(), 5);
        assert_eq!(semidihedral16().classes().len(), 7);
        assert_eq!(sl23().classes().len(), 7);
    }

    #[test]
    fn muller_orders() {
        let m3 = muller(3).unwrap();
        assert_eq!(m3.g.order(), 144);
        assert_eq!(m3.h.order(), 6);
        assert_eq!(m3.e.order(), 9);
        assert_eq!(m3.ezt.order(), 9 * 2 * 2);
        assert_eq!(m3.s, 4);
        assert!(m3.g.is_subgroup(&m3.h));
        let m5 = muller(5).unwrap();
        assert_eq!(m5.g.order(), 800);
        assert_eq!(m5.s, 4);
        assert!(muller(2).is_none());
    }

    #[test]
    fn m22_order() {
        assert_eq!(m22().order(), 443_520);
    }
}
