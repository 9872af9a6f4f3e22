//! The built-in groups and their normal and subnormal subgroups.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grp::{named, Group, PermGroup};

/// Normal subgroups are enumerated automatically up to this order.
pub const AUTO_NORMAL_LIMIT: usize = 400;

/// A fact about an entry that the suite's own computation must reproduce,
/// with the test that derives it independently.
#[derive(Clone, Debug, Serialize)]
pub struct Expected {
    pub key: &'static str,
    pub value: String,
    pub oracle: &'static str,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub group: Group,
    pub normals: Vec<Group>,
    /// Subnormal but not normal subgroups.
    pub subnormals: Vec<Group>,
    /// Prime of the subnormal example family, when the entry is one.
    pub muller: Option<u32>,
    pub expected: Vec<Expected>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorpusKind {
    Default,
    Extended,
}

fn sub(g: &PermGroup, gens: Vec<Vec<u32>>, name: &str) -> Result<Group> {
    Ok(Arc::new(g.subgroup(gens)?.named(name)))
}

fn dims(v: &[usize]) -> Expected {
    Expected {
        key: "simple dimensions",
        value: format!("{v:?}"),
        oracle: "tests/corpus.rs::expected_dimensions",
    }
}

fn defects(v: &[u32]) -> Expected {
    Expected {
        key: "block defects",
        value: format!("{v:?}"),
        oracle: "tests/corpus.rs::expected_defects",
    }
}

/// Proper non-trivial normal subgroups named by order, with a letter when
/// several share an order.
pub fn auto_normals(g: &PermGroup) -> Vec<Group> {
    let subs = g.proper_normal_subgroups();
    let orders: Vec<usize> = subs.iter().map(|h| h.order()).collect();
    let mut seen = std::collections::HashMap::new();
    subs.into_iter()
        .map(|h| {
            let o = h.order();
            let name = if orders.iter().filter(|&&x| x == o).count() > 1 {
                let k = seen.entry(o).or_insert(0u8);
                *k += 1;
                format!("N{o}{}", (b'a' + *k - 1) as char)
            } else {
                format!("N{o}")
            };
            Arc::new(h.named(name))
        })
        .collect()
}

fn entry(name: &str, g: PermGroup, expected: Vec<Expected>) -> CorpusEntry {
    let g = g.named(name);
    let normals = if g.order() <= AUTO_NORMAL_LIMIT {
        auto_normals(&g)
    } else {
        Vec::new()
    };
    CorpusEntry {
        name: name.to_string(),
        group: Arc::new(g),
        normals,
        subnormals: Vec::new(),
        muller: None,
        expected,
    }
}

fn muller_entry(p: u32) -> Result<CorpusEntry> {
    let m = named::muller(p).ok_or_else(|| Error::InvalidInput(format!("no example family for p = {p}")))?;
    let name = format!("Muller{p}");
    let (s, z_order) = (m.s, m.z_order);
    let mut e = if m.g.order() <= AUTO_NORMAL_LIMIT {
        entry(&name, m.g, Vec::new())
    } else {
        CorpusEntry {
            name: name.clone(),
            group: Arc::new(m.g.named(&name)),
            normals: Vec::new(),
            subnormals: Vec::new(),
            muller: None,
            expected: Vec::new(),
        }
    };
    e.muller = Some(p);
    e.expected.push(Expected {
        key: "self-dual multiplicity",
        value: (s - 1).to_string(),
        oracle: "clf::tests::muller_predictions",
    });
    e.expected.push(Expected {
        key: "trivial multiplicity",
        value: z_order.to_string(),
        oracle: "clf::tests::muller_three",
    });
    Ok(e)
}

/// The default corpus, in a fixed order.
pub fn default_corpus() -> Result<Vec<CorpusEntry>> {
    let mut out = vec![
        entry("C3", named::cyclic(3), vec![dims(&[1, 1, 1]), defects(&[0, 0, 0])]),
        entry("C7", named::cyclic(7), vec![dims(&[1; 7])]),
        entry("S3", named::symmetric(3), vec![dims(&[1, 2]), defects(&[1, 0])]),
        entry("S4", named::symmetric(4), vec![dims(&[1, 2]), defects(&[3])]),
        entry("A4", named::alternating(4), vec![dims(&[1, 1, 1]), defects(&[2])]),
        entry("A5", named::alternating(5), vec![dims(&[1, 2, 2, 4]), defects(&[2, 0])]),
        entry("S5", named::symmetric(5), vec![dims(&[1, 4, 4]), defects(&[3, 1])]),
        entry("A6", named::alternating(6), vec![dims(&[1, 4, 4, 8, 8]), defects(&[3, 0, 0])]),
        entry("S6", named::symmetric(6), vec![dims(&[1, 4, 4, 16]), defects(&[4, 0])]),
        entry("D8", named::dihedral(4), vec![dims(&[1]), defects(&[3])]),
        entry("Q8", named::quaternion(), vec![dims(&[1]), defects(&[3])]),
        entry("SD16", named::semidihedral16(), vec![dims(&[1]), defects(&[4])]),
        entry("SL(2,3)", named::sl23(), vec![dims(&[1, 1, 1]), defects(&[3])]),
        entry("C7:C3", named::c7_c3(), vec![dims(&[1, 1, 1, 3, 3])]),
        entry("C5:C4", named::c5_c4(), vec![dims(&[1, 4]), defects(&[2, 0])]),
        entry(
            "S3xC3",
            named::direct_product(&named::symmetric(3), &named::cyclic(3)),
            vec![dims(&[1, 1, 1, 2, 2, 2])],
        ),
        entry(
            "S3xS3",
            named::direct_product(&named::symmetric(3), &named::symmetric(3)),
            vec![dims(&[1, 2, 2, 4]), defects(&[2, 1, 1, 0])],
        ),
        muller_entry(3)?,
    ];
    let by_name = |out: &mut Vec<CorpusEntry>, name: &str| -> usize {
        out.iter().position(|e| e.name == name).expect("corpus entry")
    };
    let s6 = by_name(&mut out, "S6");
    let a6 = sub(&out[s6].group, named::alternating(6).gens().to_vec(), "A6")?;
    out[s6].normals.push(a6);
    let d8 = by_name(&mut out, "D8");
    let refl = sub(&out[d8].group, vec![reflection(&out[d8].group)?], "C2")?;
    out[d8].subnormals.push(refl);
    let s4 = by_name(&mut out, "S4");
    let dbl = sub(&out[s4].group, vec![vec![1, 0, 3, 2]], "C2")?;
    out[s4].subnormals.push(dbl);
    Ok(out)
}

/// A non-central involution of a dihedral group.
fn reflection(g: &PermGroup) -> Result<Vec<u32>> {
    (0..g.order())
        .find(|&i| g.elt_order(i) == 2 && g.classes().list[g.classes().of(i)].size() > 1)
        .map(|i| g.elt(i).to_vec())
        .ok_or_else(|| Error::InvalidInput("no reflection".into()))
}

/// The default corpus plus the larger members of the subnormal family.
pub fn extended_corpus() -> Result<Vec<CorpusEntry>> {
    let mut out = default_corpus()?;
    out.push(muller_entry(5)?);
    out.push(muller_entry(7)?);
    Ok(out)
}

pub fn corpus(kind: CorpusKind) -> Result<Vec<CorpusEntry>> {
    match kind {
        CorpusKind::Default => default_corpus(),
        CorpusKind::Extended => extended_corpus(),
    }
}

/// A group by corpus name (case-insensitive), including `M22` and the
/// family members `Muller<p>`.
pub fn named_group(name: &str) -> Option<Group> {
    let lower = name.to_ascii_lowercase();
    if lower == "m22" {
        return Some(Arc::new(named::m22().named("M22")));
    }
    if let Some(p) = lower.strip_prefix("muller").and_then(|p| p.parse::<u32>().ok()) {
        return named::muller(p).map(|m| Arc::new(m.g.named(format!("Muller{p}"))));
    }
    let g = match lower.as_str() {
        "c3" => named::cyclic(3),
        "c7" => named::cyclic(7),
        "s3" => named::symmetric(3),
        "s4" => named::symmetric(4),
        "a4" => named::alternating(4),
        "a5" => named::alternating(5),
        "s5" => named::symmetric(5),
        "a6" => named::alternating(6),
        "s6" => named::symmetric(6),
        "d8" => named::dihedral(4),
        "q8" => named::quaternion(),
        "sd16" => named::semidihedral16(),
        "sl(2,3)" | "sl23" => named::sl23(),
        "c7:c3" => named::c7_c3(),
        "c5:c4" => named::c5_c4(),
        "s3xc3" => named::direct_product(&named::symmetric(3), &named::cyclic(3)),
        "s3xs3" => named::direct_product(&named::symmetric(3), &named::symmetric(3)),
        _ => return None,
    };
    let canonical = CORPUS_NAMES.iter().find(|n| n.to_ascii_lowercase() == lower).copied();
    Some(Arc::new(g.named(canonical.unwrap_or(name))))
}

pub const CORPUS_NAMES: [&str; 17] = [
    "C3", "C7", "S3", "S4", "A4", "A5", "S5", "A6", "S6", "D8", "Q8", "SD16", "SL(2,3)", "C7:C3", "C5:C4",
    "S3xC3", "S3xS3",
];
