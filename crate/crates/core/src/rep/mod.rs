//! Matrix representations over the splitting field.
//!
//! Modules are right modules on row vectors: generator `g` acts by
//! `v ↦ v * images[g]`, and the matrix of a product `g h` is `ρ(g) ρ(h)`.

pub mod algebra;
pub mod hom;
pub mod meataxe;
pub mod serial;
pub mod simples;
pub mod spin;
pub mod stab;

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fld::{Elt, Gf2k, SplittingField};
use crate::grp::{perm, Group, PermGroup};
use crate::mat::{Echelon, Mat};

pub use hom::{hom_dim, hom_space, is_isomorphic, restriction_decomposition, Restriction};
pub use meataxe::{certify, chop, chop_with, Certificate, ChopOptions, DecompositionReport, Factor};
pub use simples::{IrrSet, SimpleModule};
pub use stab::{stabilizers, Stabilizers};

/// Group orders up to which the full multiplication check is run.
pub const FULL_CHECK_ORDER: usize = 5000;

pub struct Representation {
    group: Group,
    field: Arc<SplittingField>,
    dim: usize,
    images: Vec<Mat>,
    label: String,
    all: OnceLock<Vec<Mat>>,
}

impl Clone for Representation {
    fn clone(&self) -> Self {
        Representation {
            group: self.group.clone(),
            field: self.field.clone(),
            dim: self.dim,
            images: self.images.clone(),
            label: self.label.clone(),
            all: OnceLock::new(),
        }
    }
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Representation({} of {}, dim {}, GF(2^{}))",
            self.label,
            self.group.name(),
            self.dim,
            self.field.k()
        )
    }
}

impl Representation {
    /// Builds a representation from generator images without checks.
    pub fn from_images(
        group: &Group,
        field: &Arc<SplittingField>,
        images: Vec<Mat>,
        label: impl Into<String>,
    ) -> Self {
        let dim = images.first().map_or(0, |m| m.rows());
        Representation {
            group: group.clone(),
            field: field.clone(),
            dim,
            images,
            label: label.into(),
            all: OnceLock::new(),
        }
    }

    /// Like [`Representation::from_images`] with a `dim` for groups without
    /// generators.
    pub fn from_images_dim(
        group: &Group,
        field: &Arc<SplittingField>,
        dim: usize,
        images: Vec<Mat>,
        label: impl Into<String>,
    ) -> Self {
        let mut r = Self::from_images(group, field, images, label);
        r.dim = dim;
        r
    }

    /// Builds and verifies a representation.
    pub fn checked(
        group: &Group,
        field: &Arc<SplittingField>,
        dim: usize,
        images: Vec<Mat>,
        label: impl Into<String>,
    ) -> Result<Self> {
        if images.len() != group.ngens() {
            return Err(Error::InvalidInput(format!(
                "{} matrices for {} generators",
                images.len(),
                group.ngens()
            )));
        }
        for m in &images {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::InvalidInput("generator image has wrong shape".into()));
            }
            if m.field() != field.gf() {
                return Err(Error::InvalidInput("generator image over the wrong field".into()));
            }
            if m.inverse().is_none() {
                return Err(Error::InvalidInput("generator image is singular".into()));
            }
        }
        let r = Self::from_images_dim(group, field, dim, images, label);
        if !r.verify(0xC4A2)? {
            return Err(Error::InvalidInput(
                "matrices do not satisfy the group relations".into(),
            ));
        }
        Ok(r)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn field(&self) -> &Arc<SplittingField> {
        &self.field
    }

    pub fn gf(&self) -> &Gf2k {
        self.field.gf()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn images(&self) -> &[Mat] {
        &self.images
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }

    pub fn identity_matrix(&self) -> Mat {
        Mat::identity(self.gf(), self.dim)
    }

    /// Matrices of every group element, indexed like the group's elements.
    pub fn all_matrices(&self) -> &[Mat] {
        self.all.get_or_init(|| {
            let g = &self.group;
            let mut out: Vec<Mat> = Vec::with_capacity(g.order());
            out.push(self.identity_matrix());
            for i in 1..g.order() {
                let (p, gi) = g.parent(i).expect("non-identity has a parent");
                out.push(out[p].mul(&self.images[gi]));
            }
            out
        })
    }

    /// Matrix of group element `i`.
    pub fn matrix_of(&self, i: usize) -> Mat {
        if let Some(all) = self.all.get() {
            return all[i].clone();
        }
        self.group
            .word(i)
            .into_iter()
            .fold(self.identity_matrix(), |acc, gi| acc.mul(&self.images[gi]))
    }

    pub fn matrix_of_perm(&self, p: &[u32]) -> Result<Mat> {
        let i = self
            .group
            .find(p)
            .ok_or_else(|| Error::InvalidInput("element not in the module's group".into()))?;
        Ok(self.matrix_of(i))
    }

    /// Checks the homomorphism property: `ρ(x) ρ(g) = ρ(x g)` for every
    /// element `x` and generator `g` when the group is small, otherwise on a
    /// deterministic sample of elements.
    pub fn verify(&self, seed: u64) -> Result<bool> {
        let g = &self.group;
        for m in &self.images {
            if m.inverse().is_none() {
                return Ok(false);
            }
        }
        let budget = g.order().saturating_mul(self.dim.max(1).pow(2));
        let sample: Vec<usize> = if g.order() <= FULL_CHECK_ORDER && budget <= 50_000_000 {
            (0..g.order()).collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..24).map(|_| rng.gen_range(0..g.order())).collect()
        };
        for x in sample {
            let mx = self.matrix_of(x);
            for gi in 0..g.ngens() {
                let y = g.mul(x, g.gen_index(gi));
                if mx.mul(&self.images[gi]) != self.matrix_of(y) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn trivial(group: &Group, field: &Arc<SplittingField>) -> Self {
        let images = vec![Mat::identity(field.gf(), 1); group.ngens()];
        Self::from_images_dim(group, field, 1, images, "1")
    }

    /// Permutation module on the points the group acts on.
    pub fn permutation_module(group: &Group, field: &Arc<SplittingField>) -> Self {
        let images = group
            .gens()
            .iter()
            .map(|g| Mat::permutation(field.gf(), g))
            .collect();
        Self::from_images_dim(group, field, group.degree(), images, "perm")
    }

    /// Permutation module on the right cosets of a subgroup.
    pub fn coset_module(group: &Group, field: &Arc<SplittingField>, h: &PermGroup) -> Self {
        let tr = group.right_transversal(h);
        let images = (0..group.ngens())
            .map(|gi| {
                let g = group.gen_index(gi);
                let p: Vec<u32> = tr
                    .reps
                    .iter()
                    .map(|&r| tr.coset_of[group.mul(r, g)])
                    .collect();
                Mat::permutation(field.gf(), &p)
            })
            .collect();
        Self::from_images_dim(group, field, tr.index(), images, format!("perm[G:{}]", h.order()))
    }

    /// Right regular module.
    pub fn regular_module(group: &Group, field: &Arc<SplittingField>) -> Self {
        let images = (0..group.ngens())
            .map(|gi| {
                let g = group.gen_index(gi);
                let p: Vec<u32> = (0..group.order()).map(|x| group.mul(x, g) as u32).collect();
                Mat::permutation(field.gf(), &p)
            })
            .collect();
        Self::from_images_dim(group, field, group.order(), images, "regular")
    }

    /// `g ↦ (ρ(g)^-1)^T`.
    pub fn dual(&self) -> Self {
        let images = self
            .images
            .iter()
            .map(|m| m.inverse().expect("representation matrices are invertible").transpose())
            .collect();
        Self::from_images_dim(&self.group, &self.field, self.dim, images, format!("{}*", self.label))
    }

    pub fn tensor(&self, o: &Representation) -> Result<Self> {
        self.same_group(o)?;
        let images = self
            .images
            .iter()
            .zip(&o.images)
            .map(|(a, b)| a.kron(b))
            .collect();
        Ok(Self::from_images_dim(
            &self.group,
            &self.field,
            self.dim * o.dim,
            images,
            format!("{}⊗{}", self.label, o.label),
        ))
    }

    pub fn direct_sum(&self, o: &Representation) -> Result<Self> {
        self.same_group(o)?;
        let images = self
            .images
            .iter()
            .zip(&o.images)
            .map(|(a, b)| Mat::block_diag(&[a, b]))
            .collect();
        Ok(Self::from_images_dim(
            &self.group,
            &self.field,
            self.dim + o.dim,
            images,
            format!("{}⊕{}", self.label, o.label),
        ))
    }

    fn same_group(&self, o: &Representation) -> Result<()> {
        if !Arc::ptr_eq(&self.group, &o.group) && self.group.gens() != o.group.gens() {
            return Err(Error::InvalidInput("modules are for different groups".into()));
        }
        if self.field.gf() != o.field.gf() {
            return Err(Error::InvalidInput("modules are over different fields".into()));
        }
        Ok(())
    }

    /// Restriction to a subgroup given on the same points.
    pub fn restrict(&self, h: &Group) -> Result<Self> {
        if !self.group.is_subgroup(h) {
            return Err(Error::InvalidInput("not a subgroup of the module's group".into()));
        }
        let images = h
            .gens()
            .iter()
            .map(|p| self.matrix_of_perm(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_images_dim(
            h,
            &self.field,
            self.dim,
            images,
            format!("{}↓{}", self.label, h.name()),
        ))
    }

    /// Induction from the module's group `T` to `g`, using the right
    /// transversal of `T` in `g`: if `r_i x = t r_j` then block `(i, j)` of
    /// the image of `x` is `ρ(t)`.
    pub fn induce(&self, g: &Group) -> Result<Self> {
        let t = &self.group;
        if !g.is_subgroup(t) {
            return Err(Error::InvalidInput("module group is not a subgroup".into()));
        }
        let tr = g.right_transversal(t);
        let n = tr.index();
        let inv_reps: Vec<usize> = tr.reps.iter().map(|&r| g.inv(r)).collect();
        let d = self.dim;
        let images = (0..g.ngens())
            .map(|gi| {
                let x = g.gen_index(gi);
                let mut m = Mat::zero(self.gf(), n * d, n * d);
                for i in 0..n {
                    let rx = g.mul(tr.reps[i], x);
                    let j = tr.coset_of[rx] as usize;
                    let tt = g.mul(rx, inv_reps[j]);
                    let block = self.matrix_of_perm(g.elt(tt))?;
                    m.set_block(i * d, j * d, &block);
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_images_dim(
            g,
            &self.field,
            n * d,
            images,
            format!("{}↑{}", self.label, g.name()),
        ))
    }

    /// The conjugate module `X^g(n) = X(g n g^-1)` for `g` normalizing the
    /// module's group.
    pub fn conjugate(&self, g: &[u32]) -> Result<Self> {
        let ginv = perm::inverse(g);
        let images = self
            .group
            .gens()
            .iter()
            .map(|n| {
                let c = perm::conjugate(n, &ginv);
                self.matrix_of_perm(&c)
                    .map_err(|_| Error::InvalidInput("element does not normalize the subgroup".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_images_dim(
            &self.group,
            &self.field,
            self.dim,
            images,
            format!("{}^g", self.label),
        ))
    }

    /// Twist by a scalar-valued function on generators (used for tensoring
    /// with linear characters).
    pub fn scale_generators(&self, scalars: &[Elt]) -> Self {
        let images = self
            .images
            .iter()
            .zip(scalars)
            .map(|(m, &c)| m.scale(c))
            .collect();
        Self::from_images_dim(&self.group, &self.field, self.dim, images, self.label.clone())
    }

    /// Action on an invariant subspace, in the basis of its echelon rows.
    pub fn submodule(&self, sub: &Echelon) -> Self {
        let f = self.gf();
        let images = self
            .images
            .iter()
            .map(|a| {
                let rows: Vec<Vec<Elt>> = sub
                    .rows()
                    .iter()
                    .map(|b| {
                        let mut w = a.vec_mul(b);
                        let c = sub.reduce_coeffs(&mut w);
                        debug_assert!(crate::mat::row_is_zero(&w), "subspace is not invariant");
                        c
                    })
                    .collect();
                if rows.is_empty() {
                    Mat::zero(f, 0, 0)
                } else {
                    Mat::from_rows(f, &rows)
                }
            })
            .collect();
        Self::from_images_dim(&self.group, &self.field, sub.len(), images, format!("{}/sub", self.label))
    }

    /// Action on the quotient by an invariant subspace, in the coordinates
    /// of the non-pivot columns.
    pub fn quotient(&self, sub: &Echelon) -> Self {
        let np = sub.non_pivots();
        let r = np.len();
        let f = self.gf();
        let images = self
            .images
            .iter()
            .map(|a| {
                let mut m = Mat::zero(f, r, r);
                for (j, &c) in np.iter().enumerate() {
                    let mut w = a.row(c).to_vec();
                    sub.reduce(&mut w);
                    let q = sub.quotient_coords(&w, &np);
                    m.row_mut(j).copy_from_slice(&q);
                }
                m
            })
            .collect();
        Self::from_images_dim(&self.group, &self.field, r, images, format!("{}/quo", self.label))
    }

    /// Generator images after the change of basis `v ↦ v S^-1`, i.e.
    /// `S ρ(g) S^-1`.
    pub fn change_basis(&self, s: &Mat) -> Result<Self> {
        let si = s
            .inverse()
            .ok_or_else(|| Error::InvalidInput("change of basis is singular".into()))?;
        let images = self.images.iter().map(|a| s.mul(a).mul(&si)).collect();
        Ok(Self::from_images_dim(&self.group, &self.field, self.dim, images, self.label.clone()))
    }

    /// Whether every generator acts as the identity.
    pub fn is_trivial_action(&self) -> bool {
        self.images.iter().all(|m| m.is_identity())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fld::field_for_group;
    use crate::grp::named;

    pub(crate) fn setup(g: PermGroup) -> (Group, Arc<SplittingField>) {
        let g = g.into_group();
        let f = field_for_group(g.odd_exponent()).unwrap();
        (g, f)
    }

    #[test]
    fn permutation_and_regular_dims() {
        let (s3, f) = setup(named::symmetric(3));
        assert_eq!(Representation::permutation_module(&s3, &f).dim(), 3);
        let (c3, f3) = setup(named::cyclic(3));
        assert_eq!(Representation::regular_module(&c3, &f3).dim(), 3);
        let (a4, f4) = setup(named::alternating(4));
        let reg = Representation::regular_module(&a4, &f4);
        assert_eq!(reg.dim(), 12);
        assert!(reg.verify(1).unwrap());
    }

    #[test]
    fn functors_are_representations() {
        let (s4, f) = setup(named::symmetric(4));
        let p = Representation::permutation_module(&s4, &f);
        assert!(p.verify(1).unwrap());
        assert!(p.dual().verify(1).unwrap());
        assert!(p.tensor(&p).unwrap().verify(1).unwrap());
        let a4 = Arc::new(s4.subgroup(named::alternating(4).gens().to_vec()).unwrap());
        let r = p.restrict(&a4).unwrap();
        assert!(r.verify(1).unwrap());
        let back = r.induce(&s4).unwrap();
        assert_eq!(back.dim(), 8);
        assert!(back.verify(1).unwrap());
        let c = r.conjugate(&s4.gens()[0]).unwrap();
        assert!(c.verify(1).unwrap());
    }

    #[test]
    fn checked_rejects_bad_matrices() {
        let (s3, f) = setup(named::symmetric(3));
        let gf = f.gf().clone();
        // Both generators sent to the same transposition matrix: (1 2 3) would
        // need order 3.
        let t = Mat::permutation(&gf, &[1, 0]);
        let bad = Representation::checked(&s3, &f, 2, vec![t.clone(), t], "bad");
        assert!(bad.is_err());
        let triv = Representation::checked(&s3, &f, 1, vec![Mat::identity(&gf, 1); 2], "1");
        assert!(triv.is_ok());
    }
}
