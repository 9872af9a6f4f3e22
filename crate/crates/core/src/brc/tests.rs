use super::*;
use crate::fld::field_for_group;
use crate::grp::{named, PermGroup};

fn irr(g: PermGroup) -> IrrSet {
    let g = g.into_group();
    IrrSet::compute(&g, &field_for_group(g.odd_exponent()).unwrap()).unwrap()
}

fn int(c: &Cyclotomic) -> i64 {
    let q = c.as_rational().expect("rational value");
    assert!(q.is_integer());
    q.to_integer().to_i64().unwrap()
}

#[test]
fn s3_table() {
    let s = irr(named::symmetric(3));
    let t = brauer_table(&s).unwrap();
    let ints: Vec<Vec<i64>> = t.matrix().iter().map(|r| r.iter().map(int).collect()).collect();
    assert_eq!(ints, vec![vec![1, 1], vec![2, -1]]);
    assert_eq!(pim_degrees(&t).unwrap().phi, vec![2, 2]);
    let d = det_squared_check(&t);
    assert_eq!((d.det.as_str(), d.product.as_str(), d.sign), ("-3", "9", 1));
    let p = self_dual_partition(&s);
    assert_eq!((p.r(), p.pairs.len()), (2, 0));
    assert!(p.matches_classes());
    let r = radical_codimension(&s);
    assert_eq!((r.codimension, r.oracle), (5, Some(5)));
    assert!(t.to_text().contains("2a"));
}

#[test]
fn c3_table() {
    let s = irr(named::cyclic(3));
    let t = brauer_table(&s).unwrap();
    assert_eq!(t.len(), 3);
    // Oracle: the character of a 1-dimensional module is the lift of its
    // single matrix entry.
    let g = &s.group;
    for (row, sm) in t.rows.iter().zip(s.iter()) {
        for (k, &c) in t.classes.iter().enumerate() {
            let a = sm.module.matrix_of(g.classes().list[c].rep);
            assert_eq!(row.values[k], s.field.brauer_lift(a.get(0, 0)).unwrap());
        }
    }
    let d = det_squared_check(&t);
    assert_eq!((d.product.as_str(), d.sign.abs()), ("27", 1));
    let p = self_dual_partition(&s);
    assert_eq!((p.r(), p.pairs.len()), (1, 1));
    assert_eq!(pim_degrees(&t).unwrap().phi, vec![1, 1, 1]);
}

#[test]
fn trivial_group() {
    let s = irr(named::trivial());
    let t = brauer_table(&s).unwrap();
    assert_eq!(int(&t.rows[0].values[0]), 1);
    assert_eq!(pim_degrees(&t).unwrap().phi, vec![1]);
    assert_eq!(det_squared_check(&t).sign, 1);
}

#[test]
fn pim_degrees_by_cartan_oracle() {
    // Decomposition matrix of S4 from the ordinary degrees 1,1,2,3,3;
    // Φ_u(1) = Σ_χ d_{χu} χ(1).
    let d = [[1, 0], [1, 0], [0, 1], [1, 1], [1, 1]];
    let chi = [1u64, 1, 2, 3, 3];
    let oracle: Vec<u64> = (0..2).map(|u| (0..5).map(|c| d[c][u] * chi[c]).sum()).collect();
    let t = brauer_table(&irr(named::symmetric(4))).unwrap();
    assert_eq!(pim_degrees(&t).unwrap().phi, oracle);

    let t = brauer_table(&irr(named::alternating(4))).unwrap();
    assert_eq!(pim_degrees(&t).unwrap().phi, vec![4, 4, 4]);

    let s = irr(named::c7_c3());
    let t = brauer_table(&s).unwrap();
    let phi = pim_degrees(&t).unwrap().phi;
    assert_eq!(phi, s.dims().iter().map(|&d| d as u64).collect::<Vec<_>>());
}

#[test]
fn radical_codimensions() {
    for (g, expect) in [
        (named::alternating(4), 3),
        (named::dihedral(4), 1),
        (named::quaternion(), 1),
        (named::alternating(5), 1 + 4 + 4 + 16),
    ] {
        let r = radical_codimension(&irr(g));
        assert_eq!(r.codimension, expect);
        assert!(r.ok());
    }
}

#[test]
fn a5_character_identities() {
    let s = irr(named::alternating(5));
    let t = brauer_table(&s).unwrap();
    let g = &s.group;
    let cl = g.classes();
    for (sm, row) in s.iter().zip(&t.rows) {
        for (k, &c) in t.classes.iter().enumerate() {
            let a = sm.module.matrix_of(cl.list[c].rep);
            assert_eq!(s.field.reduce_mod2(&row.values[k]).unwrap(), a.trace());
        }
        let dual = brauer_character(&sm.module.dual()).unwrap();
        assert_eq!(dual.values, dual_values(&t, &row.values));
    }
    let a = &s.by_label("2a").unwrap().module;
    let b = &s.by_label("2b").unwrap().module;
    let ca = brauer_character(a).unwrap();
    let cb = brauer_character(b).unwrap();
    let prod = brauer_character(&a.tensor(b).unwrap()).unwrap();
    let sum = brauer_character(&a.direct_sum(b).unwrap()).unwrap();
    for k in 0..t.len() {
        assert_eq!(prod.values[k], ca.values[k].mul(&cb.values[k]));
        assert_eq!(sum.values[k], ca.values[k].add(&cb.values[k]));
    }
    assert_eq!(self_dual_partition(&s).r(), 4);
    assert!(det_squared_check(&t).ok());
    let pim = t.pim_values();
    let id = t.classes.iter().position(|&c| cl.list[c].elt_order == 1).unwrap();
    let phi = pim_degrees(&t).unwrap().phi;
    for u in 0..t.len() {
        assert_eq!(int(&pim[u][id]) as u64, phi[u]);
    }
}

#[test]
fn even_order_elements_are_rejected() {
    let s = irr(named::symmetric(3));
    let m = &s.simples[1].module;
    let g = m.group();
    let inv = (0..g.order()).find(|&i| g.elt_order(i) == 2).unwrap();
    assert!(matches!(brauer_value(m, inv), Err(Error::InvalidInput(_))));
}

proptest::proptest! {
    #[test]
    fn permutation_character_counts_fixed_points(i in 0usize..120) {
        let g = named::symmetric(5).into_group();
        let f = field_for_group(15).unwrap();
        let p = Representation::permutation_module(&g, &f);
        if g.elt_order(i) % 2 == 1 {
            let fixed = g.elt(i).iter().enumerate().filter(|(a, &b)| *a as u32 == b).count();
            proptest::prop_assert_eq!(int(&brauer_value(&p, i).unwrap()), fixed as i64);
        }
    }
}
