use std::sync::Arc;

use super::*;
use crate::fld::field_for_group;
use crate::grp::{named, PermGroup};

fn irr(g: PermGroup) -> IrrSet {
    let g = g.into_group();
    IrrSet::compute(&g, &field_for_group(g.odd_exponent()).unwrap()).unwrap()
}

fn sub(g: &Group, gens: Vec<Vec<u32>>, name: &str) -> Group {
    Arc::new(g.subgroup(gens).unwrap().named(name))
}

fn pair(g: Group, n: Group) -> PairContext {
    let f = field_for_group(g.odd_exponent()).unwrap();
    PairContext::new(&g, &n, &f).unwrap()
}

/// Connected components of the Cartan matrix `DᵀD`, as sorted lists of
/// Brauer character indices.
fn cartan_components(d: &[Vec<u32>]) -> Vec<Vec<usize>> {
    let n = d[0].len();
    let linked = |a: usize, b: usize| d.iter().any(|row| row[a] > 0 && row[b] > 0);
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = out.len();
        let mut members = vec![s];
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            for y in 0..n {
                if comp[y] == usize::MAX && linked(x, y) {
                    comp[y] = out.len();
                    members.push(y);
                }
            }
            head += 1;
        }
        members.sort();
        out.push(members);
    }
    out
}

#[test]
fn s3_blocks() {
    let s = irr(named::symmetric(3));
    let b = Blocks::compute(&s).unwrap();
    assert_eq!(b.len(), 2);
    assert_eq!(defects(&b), vec![1, 0]);
    assert_eq!(b.blocks[0].simples, vec!["1a"]);
    assert_eq!(b.blocks[1].simples, vec!["2a"]);
    // Decomposition matrix of S3 from the ordinary degrees 1, 1, 2.
    let comps = cartan_components(&[vec![1, 0], vec![1, 0], vec![0, 1]]);
    let mut ours: Vec<Vec<usize>> = b.blocks.iter().map(|x| x.members.clone()).collect();
    ours.sort();
    assert_eq!(ours, comps);
    let cl = s.group.classes();
    let three = (0..cl.len()).find(|&c| cl.list[c].elt_order == 3).unwrap();
    // The 3-cycles act on the 2-dim simple by -1 ≡ 1; the defect-0
    // idempotent is the 3-cycle class sum.
    assert_eq!(b.blocks[1].omega[three], Elt::ONE);
    assert_eq!(b.blocks[1].idempotent, b.center.class_sum(three));
    let m = &s.by_label("2a").unwrap().module;
    assert_eq!(assign_block(&b.center, &b.blocks, m).unwrap(), 1);
    assert!(b.is_real(0) && b.is_real(1));
}

#[test]
fn c3_blocks_over_gf4() {
    let s = irr(named::cyclic(3));
    assert_eq!(s.field.k(), 2);
    let b = Blocks::compute(&s).unwrap();
    assert_eq!(b.len(), 3);
    assert_eq!(defects(&b), vec![0, 0, 0]);
    let dual = s.dual_map();
    for (j, &bj) in b.block_of.iter().enumerate() {
        assert_eq!(b.contragredient(bj), b.block_of[dual[j]]);
    }
    let real: Vec<bool> = (0..3).map(|i| b.is_real(i)).collect();
    assert_eq!(real.iter().filter(|&&x| x).count(), 1);
}

#[test]
fn two_groups_have_one_block() {
    for g in [named::dihedral(4), named::quaternion(), named::semidihedral16(), named::cyclic(4)] {
        let order = g.order() as u64;
        let s = irr(g);
        let b = Blocks::compute(&s).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b.blocks[0].defect, v2(order));
        assert_eq!(b.blocks[0].idempotent, b.center.one());
    }
}

#[test]
fn principal_block_has_full_defect() {
    for g in [named::symmetric(4), named::alternating(5), named::sl23(), named::c5_c4()] {
        let order = g.order() as u64;
        let b = Blocks::compute(&irr(g)).unwrap();
        assert_eq!(b.blocks[0].defect, v2(order));
        assert!(b.blocks[0].is_principal);
        let cl = b.group.classes();
        for (c, w) in b.blocks[0].omega.iter().enumerate() {
            assert_eq!(*w == Elt::ONE, cl.list[c].size() % 2 == 1);
        }
    }
}

#[test]
fn central_characters_are_multiplicative() {
    for g in [named::symmetric(4), named::alternating(5), named::sl23(), named::c7_c3()] {
        let b = Blocks::compute(&irr(g)).unwrap();
        let z = &b.center;
        let k = z.dim();
        for bd in &b.blocks {
            assert_eq!(z.evaluate(&bd.omega, &bd.idempotent), Elt::ONE);
            assert_eq!(bd.omega[b.group.classes().of(0)], Elt::ONE);
            for i in 0..k {
                for j in 0..k {
                    let prod = z.mul(&z.class_sum(i), &z.class_sum(j));
                    assert_eq!(z.evaluate(&bd.omega, &prod), z.field.mul(bd.omega[i], bd.omega[j]));
                }
            }
            assert_eq!(central_character(z, &bd.idempotent).unwrap(), bd.omega);
        }
    }
}

#[test]
fn structure_constants_by_counting() {
    // Oracle: count pairs (x, y) in C_i × C_j with xy = z for z in C_l.
    let g = named::symmetric(4).into_group();
    let z = Center::new(&g, &crate::fld::Gf2k::new(1));
    let cl = g.classes();
    for i in 0..cl.len() {
        for j in 0..cl.len() {
            for l in 0..cl.len() {
                let target = cl.list[l].rep;
                let n = cl.list[i]
                    .members
                    .iter()
                    .flat_map(|&x| cl.list[j].members.iter().map(move |&y| (x, y)))
                    .filter(|&(x, y)| g.mul(x, y) == target)
                    .count();
                assert_eq!(z.structure_constant(i, j, l), n % 2 == 1);
            }
        }
    }
}

#[test]
fn block_dimension_matches_idempotent_rank() {
    for g in [named::symmetric(3), named::symmetric(4), named::alternating(5), named::c7_c3(), named::sl23()] {
        let bc = BlockContext::new(irr(g)).unwrap();
        for (i, b) in bc.blocks.blocks.iter().enumerate() {
            let dim: u64 = b.members.iter().map(|&j| bc.phi[j] * bc.table.degrees[j] as u64).sum();
            assert_eq!(bc.blocks.idempotent_rank(i) as u64, dim);
        }
    }
}

#[test]
fn contragredient_is_an_involution() {
    for g in [named::c7_c3(), named::cyclic(7), named::alternating(4)] {
        let b = Blocks::compute(&irr(g)).unwrap();
        for i in 0..b.len() {
            assert_eq!(b.contragredient(b.contragredient(i)), i);
        }
    }
}

#[test]
fn covering_examples() {
    let s3: Group = named::symmetric(3).into_group();
    let c3 = sub(&s3, vec![vec![1, 2, 0]], "C3");
    let ctx = pair(s3.clone(), c3);
    let gb = Blocks::compute(&ctx.irr_g).unwrap();
    let nb = Blocks::compute(&ctx.irr_n).unwrap();
    let cov = covering(&ctx, &gb, &nb).unwrap();
    assert_eq!(orbit_count(&cov), 2);
    assert_eq!(cov.covers[0], vec![true, false, false]);
    assert_eq!(cov.covers[1], vec![false, true, true]);
    for i in 1..3 {
        assert_eq!(weakly_regular_blocks(&cov, i), &[1]);
    }
    assert_eq!(weakly_regular_blocks(&cov, 0), &[0]);

    let s4: Group = named::symmetric(4).into_group();
    let a4 = sub(&s4, named::alternating(4).gens().to_vec(), "A4");
    let ctx = pair(s4.clone(), a4);
    let gb = Blocks::compute(&ctx.irr_g).unwrap();
    let nb = Blocks::compute(&ctx.irr_n).unwrap();
    assert_eq!(nb.len(), 1);
    let cov = covering(&ctx, &gb, &nb).unwrap();
    assert!(cov.covers[0][0]);
    assert_eq!(weakly_regular_blocks(&cov, 0), &[0]);
    assert!(cov.records.iter().all(|r| r.covers == r.weakly_regular));
}

#[test]
fn covering_is_constant_on_orbits() {
    let g: Group = named::direct_product(&named::symmetric(3), &named::symmetric(3)).into_group();
    let n = sub(&g, vec![vec![0, 1, 2, 4, 5, 3]], "C3");
    let ctx = pair(g, n);
    let gb = Blocks::compute(&ctx.irr_g).unwrap();
    let nb = Blocks::compute(&ctx.irr_n).unwrap();
    let cov = covering(&ctx, &gb, &nb).unwrap();
    for row in &cov.covers {
        for i in 0..nb.len() {
            for j in 0..nb.len() {
                if cov.n_orbit[i] == cov.n_orbit[j] {
                    assert_eq!(row[i], row[j]);
                }
            }
        }
    }
}

#[test]
fn t4_on_pairs() {
    let s3: Group = named::symmetric(3).into_group();
    let s4: Group = named::symmetric(4).into_group();
    let a4: Group = named::alternating(4).into_group();
    let c73: Group = named::c7_c3().into_group();
    let pairs = vec![
        (s3.clone(), sub(&s3, vec![vec![1, 2, 0]], "C3")),
        (s3.clone(), s3.clone()),
        (s4.clone(), sub(&s4, named::alternating(4).gens().to_vec(), "A4")),
        (s4.clone(), sub(&s4, vec![vec![1, 0, 3, 2], vec![2, 3, 0, 1]], "V4")),
        (a4.clone(), sub(&a4, vec![vec![1, 0, 3, 2], vec![2, 3, 0, 1]], "V4")),
        (c73.clone(), sub(&c73, vec![c73.gens()[0].clone()], "C7")),
    ];
    for (g, n) in pairs {
        let ctx = pair(g, n);
        let r = verify_t4(&ctx).unwrap();
        assert!(r.passed(), "{}", r.to_text());
    }
    let r = verify_t4(&pair(s3.clone(), sub(&s3, vec![vec![1, 2, 0]], "C3"))).unwrap();
    let real_item = r.items.iter().find(|i| i.subject == "B1 real").unwrap();
    assert!(real_item.detail.contains("G-conjugate: true"), "{}", real_item.detail);
}

#[test]
fn odd_height0_s3() {
    let bc = BlockContext::new(irr(named::symmetric(3))).unwrap();
    assert_eq!(bc.phi, vec![2, 2]);
    let r = verify_odd_height0(&bc).unwrap();
    assert!(r.passed(), "{}", r.to_text());
    assert!(r.items[0].detail.contains("[1a] (1)"));
    assert!(r.items[1].detail.contains("[2a] (1)"));
}

#[test]
fn block_verifiers_on_groups() {
    for g in [
        named::cyclic(3),
        named::symmetric(4),
        named::alternating(5),
        named::dihedral(4),
        named::sl23(),
        named::c5_c4(),
        named::c7_c3(),
    ] {
        let bc = BlockContext::new(irr(g)).unwrap();
        for r in [
            verify_odd_height0(&bc).unwrap(),
            verify_central_theta(&bc).unwrap(),
            verify_principal_block_lemma(&bc).unwrap(),
        ] {
            assert!(r.passed(), "{}", r.to_text());
        }
    }
}

#[test]
fn s6_natural_module_is_principal() {
    let bc = BlockContext::new(irr(named::symmetric(6))).unwrap();
    let r = verify_principal_block_lemma(&bc).unwrap();
    assert!(r.passed(), "{}", r.to_text());
    let four: Vec<_> = r.items.iter().filter(|i| i.detail.starts_with("non-quadratic")).collect();
    assert!(!four.is_empty());
    assert!(four.iter().all(|i| i.detail.ends_with("B0")));
    for r in [verify_odd_height0(&bc).unwrap(), verify_central_theta(&bc).unwrap()] {
        assert!(r.passed(), "{}", r.to_text());
    }
}

#[test]
fn export_lists_every_block() {
    let b = Blocks::compute(&irr(named::alternating(5))).unwrap();
    let e = b.export();
    assert_eq!(e.blocks.len(), b.len());
    assert!(b.to_text().contains("B0 (principal)"));
}

proptest::proptest! {
    #![proptest_config(proptest::prelude::ProptestConfig::with_cases(32))]
    #[test]
    fn omega_multiplicative_on_random_pairs(i in 0usize..64, j in 0usize..64) {
        let g = named::symmetric(5);
        let b = Blocks::compute(&irr(g)).unwrap();
        let z = &b.center;
        let (i, j) = (i % z.dim(), j % z.dim());
        let prod = z.mul(&z.class_sum(i), &z.class_sum(j));
        for bd in &b.blocks {
            proptest::prop_assert_eq!(z.evaluate(&bd.omega, &prod), z.field.mul(bd.omega[i], bd.omega[j]));
        }
    }
}
