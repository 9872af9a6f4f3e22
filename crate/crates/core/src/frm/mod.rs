//! Invariant bilinear and quadratic forms.
//!
//! A bilinear form is `b(v, w) = v B w^T` on row vectors, so invariance
//! under a matrix `A` reads `A B A^T = B`. A quadratic form is a pair
//! `(diag, gram)` with
//! `Q(Σ λ_i e_i) = Σ λ_i^2 diag_i + Σ_{i<j} λ_i λ_j gram_ij`.

use crate::error::{Error, Result};
use crate::fld::{Elt, Gf2k};
use crate::grp::Group;
use crate::mat::{row_get, words_for, Mat};
use crate::report::Report;
use crate::rep::{hom_space, is_isomorphic, stabilizers, IrrSet, Representation, FULL_CHECK_ORDER};

mod hyperbolic;

pub use hyperbolic::{hyperbolic_witness, HyperbolicWitness};

/// Matrices against which invariance is certified: the generators, and
/// every group element when the group is small enough.
fn check_matrices(m: &Representation) -> Vec<Mat> {
    let g = m.group();
    let mut out = m.images().to_vec();
    if g.order() <= FULL_CHECK_ORDER && g.order() * m.dim().max(1).pow(2) <= 20_000_000 {
        out.extend(m.all_matrices().iter().cloned());
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilForm {
    pub gram: Mat,
}

impl BilForm {
    pub fn new(gram: Mat) -> Self {
        BilForm { gram }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn field(&self) -> &Gf2k {
        self.gram.field()
    }

    pub fn is_symmetric(&self) -> bool {
        self.gram == self.gram.transpose()
    }

    pub fn is_alternating(&self) -> bool {
        self.is_symmetric() && (0..self.dim()).all(|i| self.gram.get(i, i).is_zero())
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.gram.rank() == self.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.gram.is_zero()
    }

    pub fn eval(&self, v: &[Elt], w: &[Elt]) -> Elt {
        let f = self.field();
        let mut acc = Elt::ZERO;
        for (i, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in w.iter().enumerate() {
                if !b.is_zero() {
                    acc += f.mul(f.mul(a, b), self.gram.get(i, j));
                }
            }
        }
        acc
    }

    pub fn is_invariant_under(&self, a: &Mat) -> bool {
        a.mul(&self.gram).mul(&a.transpose()) == self.gram
    }

    /// Invariance under all generators, and every element for small groups.
    pub fn is_invariant(&self, m: &Representation) -> bool {
        check_matrices(m).iter().all(|a| self.is_invariant_under(a))
    }

    pub fn scale(&self, c: Elt) -> BilForm {
        BilForm::new(self.gram.scale(c))
    }

    /// `c` with `self = c * other`, if the forms are proportional.
    pub fn ratio_to(&self, other: &BilForm) -> Option<Elt> {
        let f = self.field();
        let (mut i0, mut j0) = (usize::MAX, 0);
        'find: for i in 0..other.dim() {
            for j in 0..other.dim() {
                if !other.gram.get(i, j).is_zero() {
                    (i0, j0) = (i, j);
                    break 'find;
                }
            }
        }
        if i0 == usize::MAX {
            return self.is_zero().then_some(Elt::ONE);
        }
        let c = f.div(self.gram.get(i0, j0), other.gram.get(i0, j0));
        (other.scale(c) == *self).then_some(c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadForm {
    pub diag: Vec<Elt>,
    pub gram: Mat,
}

impl QuadForm {
    pub fn new(diag: Vec<Elt>, gram: Mat) -> Self {
        QuadForm { diag, gram }
    }

    pub fn zero(f: &Gf2k, n: usize) -> Self {
        QuadForm::new(vec![Elt::ZERO; n], Mat::zero(f, n, n))
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn field(&self) -> &Gf2k {
        self.gram.field()
    }

    pub fn eval(&self, v: &[Elt]) -> Elt {
        let f = self.field();
        let mut acc = Elt::ZERO;
        for (i, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            acc += f.mul(f.square(a), self.diag[i]);
            for (j, &b) in v.iter().enumerate().skip(i + 1) {
                if !b.is_zero() {
                    acc += f.mul(f.mul(a, b), self.gram.get(i, j));
                }
            }
        }
        acc
    }

    /// `Q` on a packed row vector.
    pub fn eval_packed(&self, v: &[u64]) -> Elt {
        let k = self.field().k();
        let w = words_for(self.dim());
        let elts: Vec<Elt> = (0..self.dim()).map(|i| row_get(v, k, w, i)).collect();
        self.eval(&elts)
    }

    pub fn polarize(&self) -> BilForm {
        BilForm::new(self.gram.clone())
    }

    /// `Q(v A) = Q(v)` for all `v`: equal on basis vectors and the
    /// polarization is invariant.
    pub fn is_invariant_under(&self, a: &Mat) -> bool {
        self.polarize().is_invariant_under(a)
            && (0..self.dim()).all(|i| self.eval_packed(a.row(i)) == self.diag[i])
    }

    pub fn is_invariant(&self, m: &Representation) -> bool {
        check_matrices(m).iter().all(|a| self.is_invariant_under(a))
    }

    pub fn scale(&self, c: Elt) -> QuadForm {
        let f = self.field().clone();
        QuadForm::new(
            self.diag.iter().map(|&d| f.mul(d, c)).collect(),
            self.gram.scale(c),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.diag.iter().all(|d| d.is_zero()) && self.gram.is_zero()
    }

    /// The same form in the basis `v ↦ v P`: if `P` maps this module onto
    /// another (`ρ(g) P = P σ(g)`), the result is the transported form on the
    /// target.
    pub fn transport(&self, p: &Mat) -> Result<QuadForm> {
        let pi = p
            .inverse()
            .ok_or_else(|| Error::InvalidInput("transport along a singular matrix".into()))?;
        let gram = pi.mul(&self.gram).mul(&pi.transpose());
        let diag = (0..self.dim()).map(|i| self.eval_packed(pi.row(i))).collect();
        Ok(QuadForm::new(diag, gram))
    }
}

/// Basis of the space of invariant bilinear forms `Hom(M, M*)`.
pub fn invariant_bilinear_space(m: &Representation) -> Result<Vec<BilForm>> {
    Ok(hom_space(m, &m.dual())?.into_iter().map(BilForm::new).collect())
}

/// The nondegenerate invariant alternating form on a non-trivial self-dual
/// irreducible module.
pub fn fong_form(m: &Representation) -> Result<BilForm> {
    if m.is_trivial_action() {
        return Err(Error::Precondition("the trivial module is excluded".into()));
    }
    let space = invariant_bilinear_space(m)?;
    let Some(b) = space.into_iter().next() else {
        return Err(Error::Precondition("module is not self-dual".into()));
    };
    let b = if b.is_symmetric() {
        b
    } else {
        BilForm::new(b.gram.add(&b.gram.transpose()))
    };
    if !b.is_alternating() || !b.is_nondegenerate() {
        return Err(Error::Finding(format!(
            "invariant form on {} is not a nondegenerate alternating form",
            m.label()
        )));
    }
    Ok(b)
}

/// Every non-trivial self-dual simple has even dimension and a
/// nondegenerate invariant alternating form.
pub fn verify_fong(irr: &IrrSet) -> Result<Report> {
    let mut r = Report::new("fong", irr.group.name(), "");
    let dual = irr.dual_map();
    for (j, s) in irr.iter().enumerate() {
        if dual[j] != j || s.is_trivial() {
            continue;
        }
        match fong_form(&s.module) {
            Ok(b) => {
                let ok = s.dim() % 2 == 0 && b.is_invariant(&s.module);
                r.push(
                    s.label.clone(),
                    ok,
                    format!("dim {}, nondegenerate alternating invariant form", s.dim()),
                );
            }
            Err(Error::Finding(msg)) => r.push(s.label.clone(), false, msg),
            Err(e) => return Err(e),
        }
    }
    if r.items.is_empty() {
        r.note("no non-trivial self-dual simples");
    }
    Ok(r)
}

/// Result of the quadratic-type decision for a fixed polarization.
#[derive(Clone, Debug)]
pub struct QuadraticType {
    pub form: BilForm,
    pub witness: Option<QuadForm>,
    /// Dimension of the space of invariant diagonals polarizing to zero;
    /// zero means a witness, when it exists, is unique.
    pub kernel_dim: usize,
}

/// Solves for invariant quadratic forms polarizing to `b`: for each
/// generator `A` and basis vector `e_i`, `Q(e_i A) = Q(e_i)` is linear in
/// the diagonal because squares of matrix entries are constants.
pub fn solve_quadratic(m: &Representation, b: &BilForm) -> (Option<QuadForm>, usize) {
    let f = m.gf().clone();
    let d = m.dim();
    let gens = m.images();
    let zero = QuadForm::new(vec![Elt::ZERO; d], b.gram.clone());
    // Unknowns are the rows; columns are equations; the last row holds the
    // constants.
    let neq = gens.len() * d;
    let mut sys = Mat::zero(&f, d + 1, neq.max(1));
    for (gi, a) in gens.iter().enumerate() {
        for i in 0..d {
            let col = gi * d + i;
            for k in 0..d {
                let x = a.get(i, k);
                if !x.is_zero() {
                    sys.set(k, col, sys.get(k, col) + f.square(x));
                }
            }
            sys.set(i, col, sys.get(i, col) + Elt::ONE);
            sys.set(d, col, zero.eval_packed(a.row(i)));
        }
    }
    // Solutions (x, 1) of x S' = c, i.e. left null vectors of the full
    // system with last coordinate 1.
    let null = sys.left_nullspace();
    let homog = Mat::from_fn(&f, d, neq.max(1), |r, c| sys.get(r, c)).left_nullspace();
    let kernel_dim = homog.rows();
    let mut witness = None;
    for r in 0..null.rows() {
        let t = null.get(r, d);
        if !t.is_zero() {
            let ti = f.inv(t);
            let diag = (0..d).map(|i| f.mul(null.get(r, i), ti)).collect();
            witness = Some(QuadForm::new(diag, b.gram.clone()));
            break;
        }
    }
    (witness, kernel_dim)
}

/// Decides whether a non-trivial self-dual irreducible module carries an
/// invariant quadratic form; the witness is certified before returning.
pub fn quadratic_type(m: &Representation) -> Result<QuadraticType> {
    let b = fong_form(m)?;
    let (witness, kernel_dim) = solve_quadratic(m, &b);
    if let Some(q) = &witness {
        if !q.is_invariant(m) {
            return Err(Error::Finding("quadratic witness fails the invariance check".into()));
        }
    }
    Ok(QuadraticType {
        form: b,
        witness,
        kernel_dim,
    })
}

/// Block-diagonal extension of a form on a `T`-module to the module induced
/// to `g` (same transversal as [`Representation::induce`]).
pub fn induce_bilinear(b: &BilForm, m: &Representation, g: &Group) -> Result<(Representation, BilForm)> {
    if !b.is_invariant(m) {
        return Err(Error::InvalidInput("form is not invariant".into()));
    }
    let up = m.induce(g)?;
    let n = up.dim() / m.dim().max(1);
    let blocks: Vec<&Mat> = (0..n).map(|_| &b.gram).collect();
    let bu = BilForm::new(Mat::block_diag(&blocks));
    if !bu.is_invariant(&up) {
        return Err(Error::Finding("induced bilinear form is not invariant".into()));
    }
    Ok((up, bu))
}

/// `q↑G(Σ w_i ⊗ r_i) = Σ q(w_i)`.
pub fn induce_quadratic(q: &QuadForm, m: &Representation, g: &Group) -> Result<(Representation, QuadForm)> {
    if !q.is_invariant(m) {
        return Err(Error::InvalidInput("quadratic form is not invariant".into()));
    }
    let up = m.induce(g)?;
    let n = up.dim() / m.dim().max(1);
    let blocks: Vec<&Mat> = (0..n).map(|_| &q.gram).collect();
    let diag = (0..n).flat_map(|_| q.diag.iter().copied()).collect();
    let qu = QuadForm::new(diag, Mat::block_diag(&blocks));
    if !qu.is_invariant(&up) {
        return Err(Error::Finding("induced quadratic form is not invariant".into()));
    }
    Ok((up, qu))
}

/// The quadratic form on `U ⊗ V` vanishing on basic tensors and polarizing
/// to `B_U ⊗ B_V`. The defining double sum is read over unordered pairs of
/// index pairs, which gives zero diagonal and the Kronecker Gram matrix.
pub fn tensor_quadratic(
    u: &Representation,
    bu: &BilForm,
    v: &Representation,
    bv: &BilForm,
) -> Result<(Representation, QuadForm)> {
    if !bu.is_alternating() || !bv.is_alternating() {
        return Err(Error::InvalidInput("tensor_quadratic needs alternating forms".into()));
    }
    if !bu.is_nondegenerate() || !bv.is_nondegenerate() {
        return Err(Error::InvalidInput("tensor_quadratic needs nondegenerate forms".into()));
    }
    if !bu.is_invariant(u) || !bv.is_invariant(v) {
        return Err(Error::InvalidInput("tensor_quadratic needs invariant forms".into()));
    }
    let uv = u.tensor(v)?;
    let q = QuadForm::new(vec![Elt::ZERO; uv.dim()], bu.gram.kron(&bv.gram));
    if !q.is_invariant(&uv) {
        return Err(Error::Finding("tensor quadratic form is not invariant".into()));
    }
    Ok((uv, q))
}

/// `a = c b` for some scalar `c`. Invariant quadratic forms over a fixed
/// polarization are unique on modules without trivial quotients, so this
/// compares witnesses built in different ways.
pub fn same_up_to_scalar(a: &QuadForm, b: &QuadForm) -> bool {
    match a.polarize().ratio_to(&b.polarize()) {
        Some(c) => a.diag == b.scale(c).diag,
        None => false,
    }
}

/// Intertwiner-transported comparison of two quadratic forms on isomorphic
/// irreducible modules.
pub fn equivalent_forms(
    m: &Representation,
    qm: &QuadForm,
    n: &Representation,
    qn: &QuadForm,
) -> Result<bool> {
    let Some(x) = is_isomorphic(m, n)? else {
        return Ok(false);
    };
    Ok(same_up_to_scalar(&qm.transport(&x)?, qn))
}

/// The stabilizer and extended stabilizer of a module of a normal subgroup.
pub fn extended_stabilizer(w: &Representation, g: &Group) -> Result<(Group, Group)> {
    let s = stabilizers(w, g)?;
    Ok((s.stabilizer, s.extended))
}

#[cfg(test)]
mod tests;
