//! Intertwiner spaces and isomorphism tests.
//!
//! A homomorphism `M → N` is a matrix `X` with `ρ_M(g) X = X ρ_N(g)` for
//! every generator (row vectors, so `v ↦ v X`).

use std::sync::Arc;

use super::meataxe::{algebra_gens, chop_with, iso_via_cert, Certificate, ChopOptions, Factor};
use super::spin::replay;
use super::Representation;
use crate::error::{Error, Result};
use crate::fld::Elt;
use crate::grp::Group;
use crate::mat::Mat;

/// Largest `dim M * dim N` for the direct linear solve.
pub const DIRECT_SOLVE_LIMIT: usize = 4096;

/// Basis of `Hom(M, N)` for a certified irreducible `M`, by the standard
/// basis method: a homomorphism is fixed by the image of the certified
/// vector, which must lie in the kernel of the certifying element on `N`.
pub fn hom_from_irreducible(m: &Representation, cert: &Certificate, n: &Representation) -> Vec<Mat> {
    let f = n.gf();
    let (dm, dn) = (m.dim(), n.dim());
    let gn = algebra_gens(n);
    if dn == 0 {
        return Vec::new();
    }
    let e = cert.word.eval(&gn, f, dn).add(&Mat::scalar(f, dn, cert.lambda));
    let kernel = e.left_nullspace();
    if kernel.rows() == 0 {
        return Vec::new();
    }
    let ys: Vec<Mat> = (0..kernel.rows())
        .map(|r| Mat::from_packed_rows(f, dn, &replay(&gn, kernel.row(r), &cert.basis.recipe)))
        .collect();
    debug_assert!(ys.iter().all(|y| y.rows() == dm));
    // Residuals P_g Y - Y B_g, flattened, one row per kernel vector.
    let width = gn.len() * dm * dn;
    let mut sys = Mat::zero(f, ys.len(), width);
    for (j, y) in ys.iter().enumerate() {
        for (gi, (p, b)) in cert.std_gens.iter().zip(&gn).enumerate() {
            let r = p.mul(y).add(&y.mul(b));
            if r.is_zero() {
                continue;
            }
            let base = gi * dm * dn;
            for a in 0..dm {
                for c in 0..dn {
                    let x = r.get(a, c);
                    if !x.is_zero() {
                        sys.set(j, base + a * dn + c, x);
                    }
                }
            }
        }
    }
    let sols = sys.left_nullspace();
    (0..sols.rows())
        .map(|s| {
            let mut acc = Mat::zero(f, dm, dn);
            for (j, y) in ys.iter().enumerate() {
                let c = sols.get(s, j);
                if !c.is_zero() {
                    acc = acc.add(&y.scale(c));
                }
            }
            cert.std_inv.mul(&acc)
        })
        .collect()
}

/// Basis of `Hom(M, N)` by solving the full linear system.
pub fn hom_direct(m: &Representation, n: &Representation) -> Vec<Mat> {
    let f = n.gf();
    let (dm, dn) = (m.dim(), n.dim());
    let gm = algebra_gens(m);
    let gn = algebra_gens(n);
    let unknowns = dm * dn;
    let mut sys = Mat::zero(f, unknowns, gm.len() * unknowns);
    for (gi, (a, b)) in gm.iter().zip(&gn).enumerate() {
        let base = gi * unknowns;
        // (A X)_{ij} = Σ_k A_ik X_kj and (X B)_{ij} = Σ_k X_ik B_kj.
        for i in 0..dm {
            for k in 0..dm {
                let c = a.get(i, k);
                if c.is_zero() {
                    continue;
                }
                for j in 0..dn {
                    let (row, col) = (k * dn + j, base + i * dn + j);
                    sys.set(row, col, sys.get(row, col) + c);
                }
            }
        }
        for k in 0..dn {
            for j in 0..dn {
                let c = b.get(k, j);
                if c.is_zero() {
                    continue;
                }
                for i in 0..dm {
                    let (row, col) = (i * dn + k, base + i * dn + j);
                    sys.set(row, col, sys.get(row, col) + c);
                }
            }
        }
    }
    let sols = sys.left_nullspace();
    (0..sols.rows())
        .map(|s| Mat::from_fn(f, dm, dn, |i, j| sols.get(s, i * dn + j)))
        .collect()
}

fn irreducible_cert(m: &Representation) -> Result<Option<Arc<Certificate>>> {
    let r = chop_with(
        m,
        &ChopOptions {
            check_semisimple: false,
            ..Default::default()
        },
    )?;
    // A module that does not split is certified on the first step, in its
    // own basis.
    if r.is_irreducible() {
        Ok(Some(r.factors[0].cert.clone()))
    } else {
        Ok(None)
    }
}

/// Basis of `Hom(M, N)`.
pub fn hom_space(m: &Representation, n: &Representation) -> Result<Vec<Mat>> {
    if m.dim() == 0 || n.dim() == 0 {
        return Ok(Vec::new());
    }
    if m.dim() * n.dim() <= 256 {
        return Ok(hom_direct(m, n));
    }
    if let Some(c) = irreducible_cert(m)? {
        return Ok(hom_from_irreducible(m, &c, n));
    }
    let nd = n.dual();
    if let Some(cd) = irreducible_cert(&nd)? {
        // Hom(M, N) is the transpose of Hom(N*, M*).
        return Ok(hom_from_irreducible(&nd, &cd, &m.dual())
            .into_iter()
            .map(|y| y.transpose())
            .collect());
    }
    if m.dim() * n.dim() <= DIRECT_SOLVE_LIMIT {
        return Ok(hom_direct(m, n));
    }
    Err(Error::Incomplete(format!(
        "Hom between reducible modules of dimensions {} and {}",
        m.dim(),
        n.dim()
    )))
}

pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    Ok(hom_space(m, n)?.len())
}

/// An intertwiner `X` with `ρ_M(g) X = X ρ_N(g)` if `M ≅ N`.
pub fn is_isomorphic(m: &Representation, n: &Representation) -> Result<Option<Mat>> {
    if m.dim() != n.dim() {
        return Ok(None);
    }
    if let Some(c) = irreducible_cert(m)? {
        return Ok(iso_via_cert(m, &c, n));
    }
    if m.dim() * n.dim() > DIRECT_SOLVE_LIMIT {
        return Err(Error::Incomplete("isomorphism of large reducible modules".into()));
    }
    let basis = hom_direct(m, n);
    if basis.is_empty() {
        return Ok(None);
    }
    // Random combinations of the basis; a nonempty set of isomorphisms is
    // dense enough for a few tries over GF(2^k) to find one.
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let f = n.gf();
    for _ in 0..64 {
        let mut x = Mat::zero(f, m.dim(), n.dim());
        for b in &basis {
            x = x.add(&b.scale(Elt(rng.gen_range(0..f.order()))));
        }
        if x.inverse().is_some() {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// Clifford data for an irreducible module restricted to a normal subgroup.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub multiplicity: usize,
    pub constituents: Vec<Factor>,
    pub semisimple: bool,
    /// Whether the constituents form one orbit under conjugation by the
    /// ambient group.
    pub single_orbit: bool,
}

pub fn restriction_decomposition(v: &Representation, n: &Group) -> Result<Restriction> {
    let g = v.group().clone();
    if !g.is_normal(n) {
        return Err(Error::NotNormal);
    }
    let res = v.restrict(n)?;
    let rep = chop_with(&res, &ChopOptions::default())?;
    let mults: Vec<usize> = rep.factors.iter().map(|f| f.multiplicity).collect();
    let multiplicity = mults[0];
    if mults.iter().any(|&e| e != multiplicity) {
        return Err(Error::Finding(format!(
            "constituents of the restriction have unequal multiplicities {mults:?}"
        )));
    }
    let first = &rep.factors[0];
    let mut reached = vec![false; rep.factors.len()];
    reached[0] = true;
    let mut frontier = vec![first.module.clone()];
    while let Some(w) = frontier.pop() {
        for p in g.gens() {
            let c = w.conjugate(p)?;
            for (i, fa) in rep.factors.iter().enumerate() {
                if !reached[i] && iso_via_cert(&fa.module, &fa.cert, &c).is_some() {
                    reached[i] = true;
                    frontier.push(fa.module.clone());
                }
            }
        }
    }
    Ok(Restriction {
        multiplicity,
        semisimple: rep.semisimple.unwrap_or(false),
        single_orbit: reached.iter().all(|&r| r),
        constituents: rep.factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fld::field_for_group;
    use crate::grp::named;
    use std::sync::Arc;

    #[test]
    fn hom_dims() {
        let s3: Group = named::symmetric(3).into_group();
        let f = field_for_group(3).unwrap();
        let t = Representation::trivial(&s3, &f);
        assert_eq!(hom_dim(&t, &t).unwrap(), 1);
        let p = Representation::permutation_module(&s3, &f);
        let r = chop_with(&p, &ChopOptions::default()).unwrap();
        let two = r.factors[1].module.clone();
        assert_eq!(two.dim(), 2);
        let sum = two.direct_sum(&two).unwrap();
        assert_eq!(hom_dim(&two, &sum).unwrap(), 2);
        assert_eq!(hom_from_irreducible(&two, &r.factors[1].cert, &sum).len(), 2);
        assert!(is_isomorphic(&two, &two.dual()).unwrap().is_some());
    }

    #[test]
    fn c3_characters() {
        let c3: Group = named::cyclic(3).into_group();
        let f = field_for_group(3).unwrap();
        let u = f.u();
        let gf = f.gf().clone();
        let omega = Representation::from_images(&c3, &f, vec![Mat::scalar(&gf, 1, u)], "w");
        let omega2 = Representation::from_images(&c3, &f, vec![Mat::scalar(&gf, 1, gf.square(u))], "w2");
        assert!(is_isomorphic(&omega, &omega2).unwrap().is_none());
        assert!(is_isomorphic(&omega.dual(), &omega2).unwrap().is_some());
        let prod = omega.tensor(&omega2).unwrap();
        assert!(prod.is_trivial_action());
        let reg = Representation::regular_module(&c3, &f);
        assert_eq!(hom_dim(&omega, &reg).unwrap(), 1);
        assert_eq!(hom_dim(&reg, &omega).unwrap(), 1);
    }

    #[test]
    fn hom_methods_agree() {
        let a4: Group = named::alternating(4).into_group();
        let f = field_for_group(3).unwrap();
        let reg = Representation::regular_module(&a4, &f);
        let p = Representation::permutation_module(&a4, &f);
        let r = chop_with(&p, &ChopOptions::default()).unwrap();
        for fa in &r.factors {
            let a = hom_from_irreducible(&fa.module, &fa.cert, &reg).len();
            let b = hom_direct(&fa.module, &reg).len();
            assert_eq!(a, b);
            assert_eq!(a, 1);
        }
    }

    #[test]
    fn clifford_s3_over_c3() {
        let s3: Group = named::symmetric(3).into_group();
        let f = field_for_group(3).unwrap();
        let p = Representation::permutation_module(&s3, &f);
        let two = chop_with(&p, &ChopOptions::default()).unwrap().factors[1].module.clone();
        let c3 = Arc::new(s3.subgroup(vec![vec![1, 2, 0]]).unwrap());
        let r = restriction_decomposition(&two, &c3).unwrap();
        assert_eq!(r.multiplicity, 1);
        assert_eq!(r.constituents.len(), 2);
        assert!(r.single_orbit && r.semisimple);
        let t = restriction_decomposition(&Representation::trivial(&s3, &f), &c3).unwrap();
        assert_eq!((t.multiplicity, t.constituents.len()), (1, 1));
    }
}
