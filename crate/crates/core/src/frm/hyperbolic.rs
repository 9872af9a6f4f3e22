//! Hyperbolic quadratic forms for modules lying over a non-self-dual
//! module that is conjugate to its dual.

use super::{fong_form, induce_quadratic, BilForm, QuadForm};
use crate::error::{Error, Result};
use crate::grp::Group;
use crate::mat::Mat;
use crate::rep::{
    chop_with, hom::hom_from_irreducible, is_isomorphic, meataxe::certify, stabilizers, ChopOptions,
    Representation,
};

#[derive(Clone, Debug)]
pub struct HyperbolicWitness {
    pub stabilizer: Group,
    pub extended: Group,
    /// The irreducible `T`-module over `W`.
    pub u: Representation,
    /// `X = U↑T*`, with `U` in the first block and `τU` in the second.
    pub x: Representation,
    pub b_x: BilForm,
    pub q_x: QuadForm,
    /// `X↑G` and the induced form.
    pub induced: Representation,
    pub q: QuadForm,
    /// The form transported to the module supplied by the caller.
    pub on_v: Option<QuadForm>,
}

fn lies_over(u: &Representation, w: &Representation) -> Result<bool> {
    let cert = certify(w, 23)?.ok_or_else(|| Error::Precondition("W is not irreducible".into()))?;
    Ok(!hom_from_irreducible(w, &cert, &u.restrict(w.group())?).is_empty())
}

/// Builds the hyperbolic form `Q(u_1 + τ u_2) = B(u_1, τ u_2)` on
/// `X = U↑T*` and induces it to `G`. When `v` is given, `U` is taken from
/// `v↓T` and the result is transported onto `v`.
pub fn hyperbolic_witness(
    w: &Representation,
    g: &Group,
    v: Option<&Representation>,
) -> Result<HyperbolicWitness> {
    if is_isomorphic(w, &w.dual())?.is_some() {
        return Err(Error::Precondition("W is self-dual".into()));
    }
    let st = stabilizers(w, g)?;
    if st.extended.order() != 2 * st.stabilizer.order() {
        return Err(Error::Precondition("W is not G-conjugate to its dual".into()));
    }
    let t = st.stabilizer.clone();
    let ts = st.extended.clone();
    let opts = ChopOptions {
        check_semisimple: false,
        ..Default::default()
    };
    let candidates: Vec<Representation> = match v {
        Some(v) => chop_with(&v.restrict(&t)?, &opts)?
            .factors
            .into_iter()
            .map(|f| f.module)
            .collect(),
        None => {
            let wt = w.induce(&t)?;
            chop_with(&wt, &opts)?.factors.into_iter().map(|f| f.module).collect()
        }
    };
    let mut chosen = None;
    for u in candidates {
        if !lies_over(&u, w)? {
            continue;
        }
        let x = u.induce(&ts)?;
        if is_isomorphic(&x, &x.dual())?.is_some() {
            chosen = Some((u, x));
            break;
        }
    }
    let (u, x) = chosen.ok_or_else(|| {
        Error::Precondition("no self-dual irreducible module over W was found".into())
    })?;
    let b_x = fong_form(&x)?;
    let d = u.dim();
    let top = b_x.gram.submatrix(0, d, 0, d);
    let bottom = b_x.gram.submatrix(d, d, d, d);
    if !top.is_zero() || !bottom.is_zero() {
        return Err(Error::Finding("U and τU are not totally isotropic".into()));
    }
    let q_x = QuadForm::new(vec![crate::fld::Elt::ZERO; x.dim()], b_x.gram.clone());
    if !q_x.is_invariant(&x) {
        return Err(Error::Finding("hyperbolic form is not T*-invariant".into()));
    }
    let (induced, q) = induce_quadratic(&q_x, &x, g)?;
    let pol = q.polarize();
    if !pol.is_alternating() || !pol.is_nondegenerate() {
        return Err(Error::Finding("induced polarization is degenerate".into()));
    }
    let on_v = match v {
        Some(v) => {
            let iso: Mat = is_isomorphic(&induced, v)?
                .ok_or_else(|| Error::Precondition("V does not match the induced module".into()))?;
            let qv = q.transport(&iso)?;
            if !qv.is_invariant(v) {
                return Err(Error::Finding("transported form is not invariant".into()));
            }
            Some(qv)
        }
        None => None,
    };
    Ok(HyperbolicWitness {
        stabilizer: t,
        extended: ts,
        u,
        x,
        b_x,
        q_x,
        induced,
        q,
        on_v,
    })
}
