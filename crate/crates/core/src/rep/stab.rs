//! Stabilizers of modules of a normal subgroup under conjugation.

use std::sync::Arc;

use super::meataxe::{certify, iso_via_cert};
use super::Representation;
use crate::error::{Error, Result};
use crate::grp::Group;

/// `{g ∈ G : W^g ≅ W}` and `{g ∈ G : W^g ≅ W or W^g ≅ W*}` for an
/// irreducible module `W` of a normal subgroup of `G`, together with the
/// conjugates of `W` by a right transversal of the stabilizer.
#[derive(Clone, Debug)]
pub struct Stabilizers {
    pub stabilizer: Group,
    pub extended: Group,
    pub orbit: Vec<Representation>,
}

pub fn stabilizers(w: &Representation, g: &Group) -> Result<Stabilizers> {
    let n = w.group().clone();
    if !g.is_normal(&n) {
        return Err(Error::NotNormal);
    }
    let cert = certify(w, 17)?
        .ok_or_else(|| Error::Precondition("module is not irreducible".into()))?;
    let wd = w.dual();
    let cert_d = certify(&wd, 17)?.expect("dual of an irreducible module is irreducible");
    let tr = g.right_transversal(&n);
    let mut same_c = vec![false; tr.index()];
    let mut dual_c = vec![false; tr.index()];
    let mut orbit: Vec<Representation> = Vec::new();
    let mut orbit_certs = Vec::new();
    for (ci, &r) in tr.reps.iter().enumerate() {
        let c = w.conjugate(g.elt(r))?;
        let same = iso_via_cert(w, &cert, &c).is_some();
        let dual = same || iso_via_cert(&wd, &cert_d, &c).is_some();
        if !orbit
            .iter()
            .zip(&orbit_certs)
            .any(|(o, oc)| iso_via_cert(o, oc, &c).is_some())
        {
            let cc = certify(&c, 17)?.expect("conjugate of an irreducible module is irreducible");
            orbit.push(c);
            orbit_certs.push(cc);
        }
        same_c[ci] = same;
        dual_c[ci] = dual;
    }
    let in_t: Vec<bool> = tr.coset_of.iter().map(|&c| same_c[c as usize]).collect();
    let in_ts: Vec<bool> = tr.coset_of.iter().map(|&c| dual_c[c as usize]).collect();
    let name = |s: &str| format!("{}({})", s, w.label());
    Ok(Stabilizers {
        stabilizer: Arc::new(g.subgroup_from_flags(&in_t).named(name("T"))),
        extended: Arc::new(g.subgroup_from_flags(&in_ts).named(name("T*"))),
        orbit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fld::field_for_group;
    use crate::grp::named;
    use crate::mat::Mat;

    #[test]
    fn s3_over_c3() {
        let s3: Group = named::symmetric(3).into_group();
        let f = field_for_group(3).unwrap();
        let c3: Group = Arc::new(s3.subgroup(vec![vec![1, 2, 0]]).unwrap());
        let omega = Representation::from_images(&c3, &f, vec![Mat::scalar(f.gf(), 1, f.u())], "w");
        let st = stabilizers(&omega, &s3).unwrap();
        assert_eq!(st.stabilizer.order(), 3);
        assert_eq!(st.extended.order(), 6);
        assert_eq!(st.orbit.len(), 2);
        let triv = Representation::trivial(&c3, &f);
        let st = stabilizers(&triv, &s3).unwrap();
        assert_eq!((st.stabilizer.order(), st.orbit.len()), (6, 1));
    }
}
