use std::sync::Arc;

use super::*;
use crate::fld::{field_for_group, SplittingField};
use crate::grp::named;
use crate::rep::{chop, IrrSet};

fn gf2_simple(g: crate::grp::PermGroup, dim: usize) -> Representation {
    let g = g.into_group();
    let f = SplittingField::with_degree(1, 1);
    let p = Representation::permutation_module(&g, &f);
    chop(&p)
        .unwrap()
        .factors
        .into_iter()
        .find(|fa| fa.module.dim() == dim)
        .unwrap()
        .module
}

fn all_vectors(f: &Gf2k, d: usize) -> Vec<Vec<Elt>> {
    let q = f.order();
    let total = q.pow(d as u32);
    (0..total)
        .map(|mut x| {
            (0..d)
                .map(|_| {
                    let e = Elt(x % q);
                    x /= q;
                    e
                })
                .collect()
        })
        .collect()
}

fn apply(v: &[Elt], a: &Mat) -> Vec<Elt> {
    let f = a.field();
    (0..a.cols())
        .map(|j| {
            v.iter()
                .enumerate()
                .fold(Elt::ZERO, |acc, (i, &x)| acc + f.mul(x, a.get(i, j)))
        })
        .collect()
}

/// All diagonals over the field making `(diag, b)` invariant, by evaluating
/// on every vector under every group element.
fn brute_force_quadratics(m: &Representation, b: &BilForm) -> Vec<Vec<Elt>> {
    let f = m.gf().clone();
    let vs = all_vectors(&f, m.dim());
    let mats = m.all_matrices().to_vec();
    all_vectors(&f, m.dim())
        .into_iter()
        .filter(|diag| {
            let q = QuadForm::new(diag.clone(), b.gram.clone());
            mats.iter()
                .all(|a| vs.iter().all(|v| q.eval(&apply(v, a)) == q.eval(v)))
        })
        .collect()
}

#[test]
fn bilinear_space_dimensions() {
    let two = gf2_simple(named::symmetric(3), 2);
    assert_eq!(invariant_bilinear_space(&two).unwrap().len(), 1);
    let c3 = named::cyclic(3).into_group();
    let f = field_for_group(3).unwrap();
    let omega = Representation::from_images(&c3, &f, vec![Mat::scalar(f.gf(), 1, f.u())], "w");
    assert_eq!(invariant_bilinear_space(&omega).unwrap().len(), 0);
    assert!(matches!(fong_form(&omega), Err(Error::Precondition(_))));
    let triv = Representation::trivial(&c3, &f);
    assert_eq!(invariant_bilinear_space(&triv).unwrap().len(), 1);
    assert!(fong_form(&triv).is_err());
}

#[test]
fn fong_forms() {
    let two = gf2_simple(named::symmetric(3), 2);
    let b = fong_form(&two).unwrap();
    assert!(b.is_alternating() && b.is_nondegenerate() && b.is_invariant(&two));
    let four = gf2_simple(named::symmetric(6), 4);
    let b4 = fong_form(&four).unwrap();
    assert!(b4.is_alternating() && b4.is_nondegenerate() && b4.is_invariant(&four));
}

#[test]
fn s3_natural_module_has_quadratic_type() {
    let two = gf2_simple(named::symmetric(3), 2);
    let qt = quadratic_type(&two).unwrap();
    let q = qt.witness.clone().unwrap();
    assert_eq!(qt.kernel_dim, 0);
    let brute = brute_force_quadratics(&two, &qt.form);
    assert_eq!(brute, vec![q.diag.clone()]);
    for v in all_vectors(two.gf(), 2).into_iter().skip(1) {
        assert_eq!(q.eval(&v), Elt::ONE);
    }
}

#[test]
fn s6_natural_module_is_not_of_quadratic_type() {
    let four = gf2_simple(named::symmetric(6), 4);
    let qt = quadratic_type(&four).unwrap();
    assert!(qt.witness.is_none());
    assert!(brute_force_quadratics(&four, &qt.form).is_empty());
}

#[test]
fn scaling_the_polarization() {
    let a5 = named::alternating(5).into_group();
    let f = field_for_group(15).unwrap();
    let irr = IrrSet::compute(&a5, &f).unwrap();
    let four = &irr.by_label("4a").unwrap().module;
    let qt = quadratic_type(four).unwrap();
    let c = f.u();
    let (w2, _) = solve_quadratic(four, &qt.form.scale(c));
    assert_eq!(qt.witness.is_some(), w2.is_some());
    if let (Some(a), Some(b)) = (&qt.witness, &w2) {
        assert_eq!(a.scale(c), *b);
    }
}

#[test]
fn hyperbolic_plane() {
    let f = Gf2k::new(1);
    let mut g = Mat::zero(&f, 2, 2);
    g.set(0, 1, Elt::ONE);
    g.set(1, 0, Elt::ONE);
    let q = QuadForm::new(vec![Elt::ZERO; 2], g.clone());
    assert_eq!(q.polarize().gram, g);
    assert_eq!(q.eval(&[Elt::ONE, Elt::ONE]), Elt::ONE);
    assert!(QuadForm::zero(&f, 3).polarize().is_zero());
}

#[test]
fn induced_forms() {
    let s3 = named::symmetric(3).into_group();
    let two = gf2_simple(named::symmetric(3), 2);
    let two = Representation::from_images(&s3, two.field(), two.images().to_vec(), "2");
    let q = quadratic_type(&two).unwrap().witness.unwrap();
    let (same, qs) = induce_quadratic(&q, &two, &s3).unwrap();
    assert_eq!(same.dim(), 2);
    assert_eq!(qs, q);

    let s3c2 = Arc::new(named::direct_product(&named::symmetric(3), &named::cyclic(2)));
    let s3_in = Arc::new(
        s3c2.subgroup(
            named::symmetric(3)
                .gens()
                .iter()
                .map(|p| {
                    let mut p = p.clone();
                    p.extend([3, 4]);
                    p
                })
                .collect(),
        )
        .unwrap(),
    );
    let two_in = Representation::from_images(&s3_in, two.field(), two.images().to_vec(), "2");
    let (up, qu) = induce_quadratic(&q, &two_in, &s3c2).unwrap();
    assert_eq!(up.dim(), 4);
    assert!(qu.is_invariant(&up));
    let (_, bu) = induce_bilinear(&q.polarize(), &two_in, &s3c2).unwrap();
    assert!(bu.is_alternating());
    assert_eq!(qu.polarize(), bu);
}

#[test]
fn tensor_forms_vanish_on_basic_tensors() {
    let two = gf2_simple(named::symmetric(3), 2);
    let b = fong_form(&two).unwrap();
    let (uv, q) = tensor_quadratic(&two, &b, &two, &b).unwrap();
    assert_eq!(uv.dim(), 4);
    assert_eq!(q.polarize().gram, b.gram.kron(&b.gram));
    let f = two.gf().clone();
    let nonzero: Vec<Vec<Elt>> = all_vectors(&f, 2).into_iter().skip(1).collect();
    let mut count = 0;
    for u in &nonzero {
        for v in &nonzero {
            let t: Vec<Elt> = u.iter().flat_map(|&a| v.iter().map(move |&b| (a, b))).map(|(a, b)| f.mul(a, b)).collect();
            assert_eq!(q.eval(&t), Elt::ZERO);
            count += 1;
        }
    }
    assert_eq!(count, 9);
    assert!(tensor_quadratic(&two, &BilForm::new(Mat::identity(&f, 2)), &two, &b).is_err());
}

#[test]
fn hyperbolic_witness_s3() {
    let s3 = named::symmetric(3).into_group();
    let f = field_for_group(3).unwrap();
    let c3: Group = Arc::new(s3.subgroup(vec![vec![1, 2, 0]]).unwrap());
    let omega = Representation::from_images(&c3, &f, vec![Mat::scalar(f.gf(), 1, f.u())], "w");
    let hw = hyperbolic_witness(&omega, &s3, None).unwrap();
    assert_eq!(hw.induced.dim(), 2);
    assert!(hw.q.is_invariant(&hw.induced));
    let qt = quadratic_type(&hw.induced).unwrap();
    assert!(same_up_to_scalar(&hw.q, qt.witness.as_ref().unwrap()));

    let irr = IrrSet::compute(&s3, &f).unwrap();
    let v = &irr.by_label("2a").unwrap().module;
    let hw = hyperbolic_witness(&omega, &s3, Some(v)).unwrap();
    let on_v = hw.on_v.unwrap();
    assert!(on_v.is_invariant(v));
    assert!(same_up_to_scalar(&on_v, quadratic_type(v).unwrap().witness.as_ref().unwrap()));

    let triv = Representation::trivial(&c3, &f);
    assert!(matches!(hyperbolic_witness(&triv, &s3, None), Err(Error::Precondition(_))));
}

#[test]
fn hyperbolic_witness_muller3() {
    let mg = named::muller(3).unwrap();
    let g = Arc::new(mg.g);
    let e: Group = Arc::new(g.subgroup(mg.e.gens().to_vec()).unwrap());
    let f = field_for_group(g.odd_exponent()).unwrap();
    let theta = Representation::from_images(
        &e,
        &f,
        vec![Mat::scalar(f.gf(), 1, f.gf().pow(f.u(), f.m() / 3)), Mat::identity(f.gf(), 1)],
        "theta",
    );
    let hw = hyperbolic_witness(&theta, &g, None).unwrap();
    assert!(hw.q.is_invariant(&hw.induced));
    let qt = quadratic_type(&hw.induced).unwrap();
    assert!(qt.witness.is_some());
}

proptest::proptest! {
    #[test]
    fn polarization_identity(d in 1usize..=6, seed in 0u64..1000) {
        use rand::{Rng, SeedableRng};
        let f = Gf2k::new(1);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut g = Mat::zero(&f, d, d);
        for i in 0..d {
            for j in i + 1..d {
                let x = Elt(rng.gen_range(0..2));
                g.set(i, j, x);
                g.set(j, i, x);
            }
        }
        let diag: Vec<Elt> = (0..d).map(|_| Elt(rng.gen_range(0..2))).collect();
        let q = QuadForm::new(diag, g);
        let b = q.polarize();
        let vs = all_vectors(&f, d);
        for v1 in &vs {
            for v2 in &vs {
                let s: Vec<Elt> = v1.iter().zip(v2).map(|(&a, &b)| a + b).collect();
                proptest::prop_assert_eq!(q.eval(&s), q.eval(v1) + b.eval(v1, v2) + q.eval(v2));
            }
        }
    }
}
