//! Clifford theory for self-dual simple modules of normal subgroups.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fld::Elt;
use crate::frm::{fong_form, BilForm};
use crate::grp::{named, Group};
use crate::mat::Mat;
use crate::rep::meataxe::iso_via_cert;
use crate::rep::{certify, restriction_decomposition, stabilizers, IrrSet, Representation, Restriction};

mod verify;
pub use verify::*;

/// Stabilizer and extended stabilizer of a simple module of a normal
/// subgroup.
#[derive(Clone, Debug)]
pub struct StabilizerData {
    pub t: Group,
    pub tstar: Group,
    /// `|T*:T|`, either 1 or 2.
    pub index_flag: usize,
    /// The distinct `G`-conjugates of the module.
    pub orbit: Vec<Representation>,
}

pub fn stabilizer(w: &Representation, g: &Group) -> Result<StabilizerData> {
    let s = stabilizers(w, g)?;
    let index_flag = s.extended.order() / s.stabilizer.order();
    if index_flag > 2 {
        return Err(Error::Finding(format!("|T*:T| = {index_flag}")));
    }
    Ok(StabilizerData {
        t: s.stabilizer,
        tstar: s.extended,
        index_flag,
        orbit: s.orbit,
    })
}

/// Largest `|T|^2 dim^2` for which the cocycle identities are checked on
/// every pair of elements; beyond it a seeded sample is used.
pub const FULL_PAIR_BUDGET: usize = 20_000_000;
const SAMPLE_PAIRS: usize = 4096;

/// Every intermediate object of the self-dual extension algorithm, indexed
/// by the elements of `T`.
#[derive(Clone, Debug)]
pub struct ExtensionScaffold {
    pub w: Representation,
    pub t: Group,
    pub form: BilForm,
    /// Intertwiners `Y(g)` with `X(n) Y(g) = Y(g) X(g^-1 n g)`; empty when
    /// `T = N`.
    pub y: Vec<Mat>,
    /// `(g, h, α(g, h))` on the checked pairs.
    pub alpha: Vec<(u32, u32, Elt)>,
    pub lambda: Vec<Elt>,
    pub mu: Vec<Elt>,
    pub epsilon: Vec<Elt>,
    pub epsilon_order: u64,
    pub delta: Vec<Elt>,
    pub xhat: Representation,
    pub all_pairs: bool,
    /// Number of nontrivial linear characters of `T/N` whose twist of
    /// `X̂` was shown not to be self-dual.
    pub other_extensions: usize,
}

impl ExtensionScaffold {
    /// `X̂(g)` for an element index of `T`.
    pub fn xhat_at(&self, g: usize) -> Mat {
        if self.y.is_empty() {
            return self.xhat.matrix_of(g);
        }
        let f = self.w.gf();
        self.y[g].scale(f.inv(f.mul(self.mu[g], self.delta[g])))
    }
}

fn finding(msg: String) -> Error {
    Error::Finding(msg)
}

/// Ratio `c` with `a = c b`, if any.
fn ratio(a: &Mat, b: &Mat) -> Option<Elt> {
    let f = a.field();
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            if !b.get(i, j).is_zero() {
                let c = f.div(a.get(i, j), b.get(i, j));
                return (b.scale(c) == *a).then_some(c);
            }
        }
    }
    None
}

/// The unique self-dual extension of a self-dual simple module `W` of `N`
/// to a group `T` with `N ◁ T` stabilizing `W`.
pub fn canonical_selfdual_extension(w: &Representation, t: &Group) -> Result<ExtensionScaffold> {
    let n = w.group().clone();
    if !t.is_normal(&n) {
        return Err(Error::NotNormal);
    }
    let f = w.gf().clone();
    let d = w.dim();
    let cert = certify(w, 17)?.ok_or_else(|| Error::Precondition("module is not irreducible".into()))?;
    let form = if w.is_trivial_action() {
        BilForm::new(Mat::identity(&f, d))
    } else {
        fong_form(w)?
    };
    if !form.is_invariant(w) {
        return Err(finding(format!("form on {} is not invariant", w.label())));
    }
    let nt = t.order();
    if nt == n.order() {
        let one = vec![Elt::ONE; nt];
        let images = t
            .gens()
            .iter()
            .map(|p| w.matrix_of_perm(p))
            .collect::<Result<Vec<_>>>()?;
        return Ok(ExtensionScaffold {
            w: w.clone(),
            t: t.clone(),
            form,
            y: Vec::new(),
            alpha: Vec::new(),
            lambda: one.clone(),
            mu: one.clone(),
            epsilon: one.clone(),
            epsilon_order: 1,
            delta: one,
            xhat: Representation::from_images_dim(t, w.field(), d, images, format!("{}^", w.label())),
            all_pairs: true,
            other_extensions: 0,
        });
    }
    let tr = t.right_transversal(&n);
    let mut y_reps = Vec::with_capacity(tr.index());
    for (j, &r) in tr.reps.iter().enumerate() {
        if j == 0 {
            y_reps.push(Mat::identity(&f, d));
            continue;
        }
        let c = w.conjugate(t.elt(r))?;
        let z = iso_via_cert(w, &cert, &c).ok_or_else(|| {
            Error::Precondition(format!("{} is not stable under the given group", w.label()))
        })?;
        y_reps.push(z.inverse().expect("intertwiner of simples is invertible"));
    }
    let inv_reps: Vec<usize> = tr.reps.iter().map(|&r| t.inv(r)).collect();
    let xs = w.all_matrices();
    let y: Vec<Mat> = (0..nt)
        .map(|x| {
            let j = tr.coset_of[x] as usize;
            let nn = t.mul(x, inv_reps[j]);
            let ni = n.find(t.elt(nn)).expect("element of N");
            xs[ni].mul(&y_reps[j])
        })
        .collect();

    let n_idx: Vec<usize> = t.indices_of(&n);
    for &ni in &n_idx {
        let own = n.find(t.elt(ni)).expect("element of N");
        if y[ni] != xs[own] {
            return Err(finding("Y does not restrict to X on N".into()));
        }
    }
    for gi in 0..t.ngens() {
        let g = t.gen_index(gi);
        for (k, p) in n.gens().iter().enumerate() {
            let c = t.conj(t.find(p).expect("N in T"), g);
            let cn = n.find(t.elt(c)).expect("N is normal");
            if w.images()[k].mul(&y[g]) != y[g].mul(&xs[cn]) {
                return Err(finding("Y fails to intertwine X and its conjugate".into()));
            }
        }
    }

    let mut lambda = Vec::with_capacity(nt);
    for yx in &y {
        let img = BilForm::new(yx.mul(&form.gram).mul(&yx.transpose()));
        lambda.push(img.ratio_to(&form).ok_or_else(|| finding("B^g is not a multiple of B".into()))?);
    }
    let mu: Vec<Elt> = lambda.iter().map(|&l| f.sqrt(l)).collect();

    let all_pairs = nt.saturating_mul(nt).saturating_mul(d * d) <= FULL_PAIR_BUDGET;
    let pairs: Vec<(usize, usize)> = if all_pairs {
        (0..nt).flat_map(|a| (0..nt).map(move |b| (a, b))).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut v: Vec<(usize, usize)> = (0..t.ngens())
            .flat_map(|a| (0..t.ngens()).map(move |b| (a, b)))
            .map(|(a, b)| (t.gen_index(a), t.gen_index(b)))
            .collect();
        v.extend((0..SAMPLE_PAIRS).map(|_| (rng.gen_range(0..nt), rng.gen_range(0..nt))));
        v
    };
    let mut alpha = Vec::with_capacity(pairs.len());
    for &(a, b) in &pairs {
        let ab = t.mul(a, b);
        let prod = y[a].mul(&y[b]);
        let al = ratio(&y[ab], &prod).ok_or_else(|| finding("Y(gh) is not a multiple of Y(g)Y(h)".into()))?;
        let rhs = f.mul(f.square(al), f.mul(lambda[a], lambda[b]));
        if lambda[ab] != rhs {
            return Err(finding("λ(gh) ≠ α(g,h)² λ(g) λ(h)".into()));
        }
        let beta = f.div(f.mul(al, f.mul(mu[a], mu[b])), mu[ab]);
        if beta != Elt::ONE {
            return Err(finding("rescaled cocycle is not trivial".into()));
        }
        alpha.push((a as u32, b as u32, al));
    }

    let yhat: Vec<Mat> = y.iter().zip(&mu).map(|(m, &c)| m.scale(f.inv(c))).collect();
    let mut epsilon = Vec::with_capacity(nt);
    for yh in &yhat {
        let img = BilForm::new(yh.mul(&form.gram).mul(&yh.transpose()));
        epsilon.push(img.ratio_to(&form).ok_or_else(|| finding("Ŷ does not scale B".into()))?);
    }
    for &(a, b, _) in &alpha {
        let (a, b) = (a as usize, b as usize);
        if epsilon[t.mul(a, b)] != f.mul(epsilon[a], epsilon[b]) {
            return Err(finding("ε is not a homomorphism".into()));
        }
    }
    for &ni in &n_idx {
        if epsilon[ni] != Elt::ONE {
            return Err(finding("ε is not trivial on N".into()));
        }
    }
    let epsilon_order = epsilon.iter().fold(1u64, |acc, &e| {
        num_integer::Integer::lcm(&acc, &f.elt_order(e))
    });
    if epsilon_order % 2 == 0 {
        return Err(finding("ε has even order".into()));
    }
    let delta: Vec<Elt> = epsilon.iter().map(|&e| f.pow(e, epsilon_order.div_ceil(2))).collect();
    for (e, dl) in epsilon.iter().zip(&delta) {
        if f.square(*dl) != *e {
            return Err(finding("δ² ≠ ε".into()));
        }
    }

    let images: Vec<Mat> = (0..t.ngens())
        .map(|gi| {
            let g = t.gen_index(gi);
            yhat[g].scale(f.inv(delta[g]))
        })
        .collect();
    let xhat = Representation::from_images(t, w.field(), images, format!("{}^", w.label()));
    if !xhat.verify(3)? {
        return Err(finding("X̂ is not a representation".into()));
    }
    if all_pairs {
        for (x, m) in xhat.all_matrices().iter().enumerate() {
            if *m != yhat[x].scale(f.inv(delta[x])) {
                return Err(finding("X̂ differs from δ⁻¹Ŷ".into()));
            }
        }
    }
    if xhat.restrict(&n)?.images() != w.images() {
        return Err(finding("X̂ does not extend X".into()));
    }
    if !form.is_invariant(&xhat) {
        return Err(finding("B is not X̂-invariant".into()));
    }

    let mut other_extensions = 0;
    if nt > n.order() {
        let q: Group = Arc::new(t.quotient(&n)?);
        let lin = IrrSet::compute(&q, w.field())?;
        let xcert = certify(&xhat, 19)?.ok_or_else(|| finding("X̂ is reducible".into()))?;
        for s in lin.iter().filter(|s| s.dim() == 1 && !s.is_trivial()) {
            let scal: Vec<Elt> = s.module.images().iter().map(|m| m.get(0, 0)).collect();
            let twisted = xhat.scale_generators(&scal);
            let tc = certify(&twisted, 23)?.expect("twist of a simple module is simple");
            if iso_via_cert(&twisted, &tc, &twisted.dual()).is_some() {
                return Err(finding(format!(
                    "a second self-dual extension of {} exists",
                    w.label()
                )));
            }
            if iso_via_cert(&xhat, &xcert, &twisted).is_some() {
                return Err(finding("twisted extension is isomorphic to X̂".into()));
            }
            other_extensions += 1;
        }
    }

    Ok(ExtensionScaffold {
        w: w.clone(),
        t: t.clone(),
        form,
        y,
        alpha,
        lambda,
        mu,
        epsilon,
        epsilon_order,
        delta,
        xhat,
        all_pairs,
        other_extensions,
    })
}

/// The canonical self-dual simple module of `G` over `W`, with the data
/// used to build it.
#[derive(Clone, Debug)]
pub struct CanonicalModule {
    pub module: Representation,
    pub stabilizer: StabilizerData,
    pub scaffold: ExtensionScaffold,
    pub restriction: Restriction,
}

pub fn canonical_module(w: &Representation, g: &Group) -> Result<CanonicalModule> {
    let n = w.group().clone();
    let st = stabilizer(w, g)?;
    if st.index_flag != 1 {
        return Err(Error::Precondition(format!("{} is not self-dual", w.label())));
    }
    let scaffold = canonical_selfdual_extension(w, &st.t)?;
    let v = scaffold
        .xhat
        .induce(g)?
        .with_label(format!("V({})", w.label()));
    let vc = certify(&v, 29)?.ok_or_else(|| finding(format!("{} is reducible", v.label())))?;
    if iso_via_cert(&v, &vc, &v.dual()).is_none() {
        return Err(finding(format!("{} is not self-dual", v.label())));
    }
    let restriction = restriction_decomposition(&v, &n)?;
    if restriction.multiplicity != 1
        || !restriction.single_orbit
        || restriction.constituents.len() != st.orbit.len()
    {
        return Err(finding(format!(
            "{}↓N is not the multiplicity-free sum of the conjugates of {}",
            v.label(),
            w.label()
        )));
    }
    Ok(CanonicalModule {
        module: v,
        stabilizer: st,
        scaffold,
        restriction,
    })
}

/// The groups of the subnormal multiplicity example, with the predicted
/// multiplicities of `U` and of the trivial module in `V↓H`.
#[derive(Clone, Debug)]
pub struct MullerFamily {
    pub p: u32,
    pub g: Group,
    pub h: Group,
    pub e: Group,
    pub s: u64,
    pub expected_u: u64,
    pub expected_trivial: u64,
}

pub fn muller_family(p: u32, cap: usize) -> Result<MullerFamily> {
    if p == 2 {
        return Err(Error::InvalidInput("p must be odd".into()));
    }
    let m = named::muller(p).ok_or_else(|| Error::InvalidInput(format!("{p} is not an odd prime")))?;
    if m.g.order() > cap {
        return Err(Error::GroupTooLarge { cap });
    }
    let g: Group = Arc::new(m.g);
    let h: Group = Arc::new(g.subgroup(m.h.gens().to_vec())?.named(m.h.name().to_string()));
    let e: Group = Arc::new(g.subgroup(m.e.gens().to_vec())?.named(m.e.name().to_string()));
    Ok(MullerFamily {
        p,
        g,
        h,
        e,
        s: m.s,
        expected_u: m.s - 1,
        expected_trivial: m.z_order,
    })
}
