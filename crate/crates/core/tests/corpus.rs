//! Independent derivations of the facts listed with the default corpus.

use char2::blk::Blocks;
use char2::cli::corpus::{default_corpus, CorpusEntry};
use char2::cli::suite::{defect_profile, Subject};
use char2::clf::default_field;
use char2::fld::v2;
use char2::rep::{chop, is_isomorphic, Representation};

fn listed(e: &CorpusEntry, key: &str) -> Option<String> {
    e.expected.iter().find(|x| x.key == key).map(|x| x.value.clone())
}

/// Composition factors of the regular module, grouped by isomorphism. Every
/// simple occurs, as often as the dimension of its projective cover.
#[test]
fn expected_dimensions() {
    for e in default_corpus().unwrap() {
        let Some(value) = listed(&e, "simple dimensions") else { continue };
        let field = default_field(&e.group).unwrap();
        let reg = Representation::regular_module(&e.group, &field);
        let rep = chop(&reg).unwrap();
        let mut classes: Vec<(Representation, usize)> = Vec::new();
        for f in &rep.factors {
            match classes
                .iter_mut()
                .find(|(m, _)| is_isomorphic(m, &f.module).unwrap().is_some())
            {
                Some(c) => c.1 += f.multiplicity,
                None => classes.push((f.module.clone(), f.multiplicity)),
            }
        }
        let two_part = 1usize << v2(e.group.order() as u64);
        for (m, k) in &classes {
            assert_eq!(k % two_part, 0, "{}: a simple of dimension {} occurs {k} times", e.name, m.dim());
        }
        let weighted: usize = classes.iter().map(|(m, k)| m.dim() * k).sum();
        assert_eq!(weighted, e.group.order());
        let mut dims: Vec<usize> = classes.iter().map(|(m, _)| m.dim()).collect();
        dims.sort_unstable();
        assert_eq!(format!("{dims:?}"), value, "{}", e.name);
        let n_regular = e.group.classes().list.iter().filter(|c| c.is_2regular).count();
        assert_eq!(dims.len(), n_regular, "{}", e.name);
    }
}

/// Every block has a simple of height zero, so its defect is
/// `v2|G| - min v2(dim S)` over its simples.
#[test]
fn expected_defects() {
    for e in default_corpus().unwrap() {
        let Some(value) = listed(&e, "block defects") else { continue };
        let mut s = Subject::new(&e.group, 1).unwrap();
        let irr = s.irr().unwrap().clone();
        let blocks = Blocks::compute(&irr).unwrap();
        let a = v2(e.group.order() as u64);
        let mut oracle: Vec<u32> = blocks
            .blocks
            .iter()
            .map(|b| a - b.members.iter().map(|&j| v2(irr.simples[j].dim() as u64)).min().unwrap())
            .collect();
        oracle[1..].sort_unstable_by(|x, y| y.cmp(x));
        assert_eq!(format!("{oracle:?}"), value, "{}", e.name);
        assert_eq!(defect_profile(&blocks), oracle, "{}", e.name);
    }
}
