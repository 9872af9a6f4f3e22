//! Composition factors by the Meataxe with Norton's irreducibility test.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::algebra::{AlgebraWord, WordPool};
use super::hom::hom_from_irreducible;
use super::spin::{spin, standard_basis, StandardBasis};
use super::Representation;
use crate::error::{Error, Result};
use crate::fld::{Elt, Gf2k, Poly};
use crate::mat::{row_get, Echelon, Mat};

/// Proof that a module is absolutely irreducible, reusable for
/// isomorphism tests: `word` evaluates to `E` with `E - lambda` of nullity
/// one, the kernel vector spins to the whole module, and the transposed
/// kernel vector spins to the whole transposed module.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub word: AlgebraWord,
    pub lambda: Elt,
    pub vector: Vec<u64>,
    pub basis: StandardBasis,
    /// Inverse of the matrix whose rows are the standard basis.
    pub std_inv: Mat,
    /// Algebra generators written in the standard basis.
    pub std_gens: Vec<Mat>,
}

impl Certificate {
    fn new(m: &Representation, word: AlgebraWord, lambda: Elt, vector: Vec<u64>) -> Self {
        let f = m.gf();
        let gens = algebra_gens(m);
        let basis = standard_basis(&gens, &vector, m.dim(), f);
        let s = Mat::from_packed_rows(f, m.dim(), &basis.vectors);
        let std_inv = s.inverse().expect("certified vector spins the whole module");
        let std_gens = gens.iter().map(|a| s.mul(a).mul(&std_inv)).collect();
        Certificate {
            word,
            lambda,
            vector,
            basis,
            std_inv,
            std_gens,
        }
    }
}

/// Generator images, or the identity for a group without generators, so
/// that the enveloping algebra always has a generating set.
pub fn algebra_gens(m: &Representation) -> Vec<Mat> {
    if m.images().is_empty() {
        vec![m.identity_matrix()]
    } else {
        m.images().to_vec()
    }
}

#[derive(Clone, Debug)]
pub struct Factor {
    pub module: Representation,
    pub cert: Arc<Certificate>,
    pub multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct DecompositionReport {
    /// Distinct factors, by dimension and then order of appearance.
    pub factors: Vec<Factor>,
    /// Factor indices along a composition series, bottom first.
    pub series: Vec<usize>,
    /// `None` when the check was not requested.
    pub semisimple: Option<bool>,
}

impl DecompositionReport {
    pub fn dims_with_multiplicity(&self) -> Vec<(usize, usize)> {
        self.factors
            .iter()
            .map(|f| (f.module.dim(), f.multiplicity))
            .collect()
    }

    pub fn total_dim(&self) -> usize {
        self.factors.iter().map(|f| f.module.dim() * f.multiplicity).sum()
    }

    pub fn is_irreducible(&self) -> bool {
        self.series.len() == 1
    }
}

#[derive(Clone, Debug)]
pub struct ChopOptions {
    pub seed: u64,
    /// Random algebra elements tried per module before giving up.
    pub max_attempts: usize,
    pub check_semisimple: bool,
}

impl Default for ChopOptions {
    fn default() -> Self {
        ChopOptions {
            seed: 1,
            max_attempts: 300,
            check_semisimple: true,
        }
    }
}

pub(crate) enum Outcome {
    Split(Echelon),
    Irreducible(Certificate),
}

/// Minimal polynomial of `e` relative to `v`.
fn krylov_minpoly(e: &Mat, v: &[u64]) -> Poly {
    let f = e.field();
    let d = e.rows();
    let mut ech = Echelon::new(f, d);
    let mut raw: Vec<Vec<u64>> = Vec::new();
    let mut cur = v.to_vec();
    loop {
        let dependent = !ech.insert(cur.clone());
        raw.push(cur.clone());
        if dependent {
            break;
        }
        cur = e.vec_mul(&cur);
    }
    let k = Mat::from_packed_rows(f, d, &raw);
    let rel = k.left_nullspace();
    let n = raw.len();
    let coeffs: Vec<Elt> = (0..n).map(|i| rel.get(0, i)).collect();
    Poly::from_coeffs(coeffs)
}

fn random_vector(f: &Gf2k, d: usize, rng: &mut impl Rng) -> Vec<u64> {
    loop {
        let m = Mat::random(f, 1, d, rng);
        if !m.is_zero() {
            return m.row(0).to_vec();
        }
    }
}

/// One Meataxe step: a proper submodule or a certificate of irreducibility.
pub(crate) fn split_or_certify(
    m: &Representation,
    rng: &mut impl Rng,
    max_attempts: usize,
) -> Result<Outcome> {
    let d = m.dim();
    let f = m.gf().clone();
    if d == 1 {
        let mut e0 = Mat::zero(&f, 1, 1);
        e0.set(0, 0, Elt::ONE);
        return Ok(Outcome::Irreducible(Certificate::new(
            m,
            AlgebraWord::zero(),
            Elt::ZERO,
            e0.row(0).to_vec(),
        )));
    }
    let gens = algebra_gens(m);
    let gens_t: Vec<Mat> = gens.iter().map(|a| a.transpose()).collect();
    let mut pool = WordPool::new(&gens, &f, d);
    for _ in 0..max_attempts {
        let (word, e) = pool.next(rng);
        let v = random_vector(&f, d, rng);
        for lambda in krylov_minpoly(&e, &v).roots(&f) {
            let a = e.add(&Mat::scalar(&f, d, lambda));
            let kernel = a.left_nullspace();
            for r in 0..kernel.rows().min(3) {
                let s = spin(&gens, &[kernel.row(r).to_vec()], d, &f);
                if s.len() < d {
                    return Ok(Outcome::Split(s));
                }
            }
            let tk = a.right_nullspace();
            for r in 0..tk.rows().min(3) {
                let u = spin(&gens_t, &[tk.row(r).to_vec()], d, &f);
                if u.len() < d {
                    let ann = u.to_mat().transpose().left_nullspace();
                    return Ok(Outcome::Split(Echelon::from_mat(&ann)));
                }
            }
            if kernel.rows() == 1 {
                return Ok(Outcome::Irreducible(Certificate::new(
                    m,
                    word,
                    lambda,
                    kernel.row(0).to_vec(),
                )));
            }
        }
    }
    Err(Error::RetryExhausted(max_attempts))
}

/// Certificate for a module already known or expected to be irreducible;
/// `None` if it splits.
pub fn certify(m: &Representation, seed: u64) -> Result<Option<Certificate>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match split_or_certify(m, &mut rng, ChopOptions::default().max_attempts)? {
        Outcome::Irreducible(c) => Ok(Some(c)),
        Outcome::Split(_) => Ok(None),
    }
}

/// `Some(X)` with `ρ_M(g) X = X ρ_N(g)` if the certified irreducible `m`
/// is isomorphic to `n`.
pub fn iso_via_cert(m: &Representation, cert: &Certificate, n: &Representation) -> Option<Mat> {
    if m.dim() != n.dim() {
        return None;
    }
    hom_from_irreducible(m, cert, n).into_iter().next()
}

pub fn chop(m: &Representation) -> Result<DecompositionReport> {
    chop_with(m, &ChopOptions::default())
}

pub fn chop_with(m: &Representation, opts: &ChopOptions) -> Result<DecompositionReport> {
    if m.dim() == 0 {
        return Err(Error::InvalidInput("chop of the zero module".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut stack = vec![m.clone()];
    let mut factors: Vec<Factor> = Vec::new();
    let mut series = Vec::new();
    while let Some(x) = stack.pop() {
        if x.dim() == 0 {
            continue;
        }
        match split_or_certify(&x, &mut rng, opts.max_attempts)? {
            Outcome::Split(s) => {
                stack.push(x.quotient(&s));
                stack.push(x.submodule(&s));
            }
            Outcome::Irreducible(cert) => {
                let known = factors
                    .iter()
                    .position(|fa| iso_via_cert(&fa.module, &fa.cert, &x).is_some());
                match known {
                    Some(i) => {
                        factors[i].multiplicity += 1;
                        series.push(i);
                    }
                    None => {
                        series.push(factors.len());
                        factors.push(Factor {
                            module: x,
                            cert: Arc::new(cert),
                            multiplicity: 1,
                        });
                    }
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..factors.len()).collect();
    order.sort_by_key(|&i| (factors[i].module.dim(), i));
    let mut rank = vec![0; factors.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    let series = series.into_iter().map(|i| rank[i]).collect();
    let mut slots: Vec<Option<Factor>> = factors.into_iter().map(Some).collect();
    let factors: Vec<Factor> = order.iter().map(|&i| slots[i].take().expect("each slot once")).collect();
    let semisimple = if opts.check_semisimple {
        let socle: usize = factors
            .iter()
            .map(|fa| hom_from_irreducible(&fa.module, &fa.cert, m).len() * fa.module.dim())
            .sum();
        Some(socle == m.dim())
    } else {
        None
    };
    Ok(DecompositionReport {
        factors,
        series,
        semisimple,
    })
}

/// The entries of a packed vector, for debugging and tests.
pub fn vector_entries(f: &Gf2k, v: &[u64], d: usize) -> Vec<Elt> {
    let w = crate::mat::words_for(d);
    (0..d).map(|i| row_get(v, f.k(), w, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fld::{field_for_group, SplittingField};
    use crate::grp::{named, Group};

    fn perm_s3_gf2() -> Representation {
        let g: Group = named::symmetric(3).into_group();
        let f = SplittingField::with_degree(1, 3);
        Representation::permutation_module(&g, &f)
    }

    #[test]
    fn s3_permutation_module() {
        let r = chop(&perm_s3_gf2()).unwrap();
        assert_eq!(r.dims_with_multiplicity(), vec![(1, 1), (2, 1)]);
        // The permutation module of S3 over GF(2) is 1 ⊕ 2.
        assert_eq!(r.semisimple, Some(true));
    }

    #[test]
    fn trivial_is_irreducible() {
        let g: Group = named::symmetric(3).into_group();
        let f = field_for_group(3).unwrap();
        let r = chop(&Representation::trivial(&g, &f)).unwrap();
        assert!(r.is_irreducible());
    }

    #[test]
    fn regular_a4() {
        let g: Group = named::alternating(4).into_group();
        let f = field_for_group(3).unwrap();
        let reg = Representation::regular_module(&g, &f);
        for seed in [1, 2, 3] {
            let r = chop_with(&reg, &ChopOptions { seed, ..Default::default() }).unwrap();
            assert_eq!(r.dims_with_multiplicity(), vec![(1, 4), (1, 4), (1, 4)]);
            assert_eq!(r.semisimple, Some(false));
        }
    }

    #[test]
    fn group_without_generators() {
        let g: Group = named::trivial().into_group();
        let f = field_for_group(1).unwrap();
        let reg = Representation::trivial(&g, &f).direct_sum(&Representation::trivial(&g, &f)).unwrap();
        let r = chop(&reg).unwrap();
        assert_eq!(r.dims_with_multiplicity(), vec![(1, 2)]);
        assert_eq!(r.semisimple, Some(true));
    }
}
