//! Permutation groups by full enumeration: elements, words, classes,
//! subgroups, normality, cosets and quotients.

mod classes;
pub mod named;
pub mod perm;
pub mod sub;

use std::fmt;
use std::sync::{Arc, OnceLock};

pub use classes::{Classes, ConjClass};
pub use perm::Perm;
pub use sub::{
    coset_transversal, g_orbits_on_subgroup_classes, real_2regular_classes_in, subnormal_chain,
    ClassOrbit, NormalEmbedding, Transversal,
};

use crate::error::{Error, Result};

/// Default cap on the number of enumerated elements.
pub const DEFAULT_CAP: usize = 1_000_000;

const EMPTY: u32 = u32::MAX;

/// A finite permutation group with every element enumerated.
///
/// Element 0 is the identity and elements are numbered in breadth-first
/// order from the generators, so `elt(i) = elt(parent) * gen` for a recorded
/// parent and generator; [`PermGroup::word`] replays that path.
pub struct PermGroup {
    name: String,
    degree: usize,
    gens: Vec<Perm>,
    flat: Vec<u32>,
    order: usize,
    table: Vec<u32>,
    parent: Vec<(u32, u32)>,
    classes: OnceLock<Classes>,
}

pub type Group = Arc<PermGroup>;

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup({}, degree {}, order {})", self.name, self.degree, self.order)
    }
}

#[inline]
fn hash_perm(p: &[u32]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &x in p {
        h ^= x as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h ^ (h >> 29)
}

impl PermGroup {
    /// Enumerates the group generated by `gens` on `degree` points.
    pub fn new(degree: usize, gens: Vec<Perm>, cap: usize) -> Result<Self> {
        for g in &gens {
            if g.len() != degree {
                return Err(Error::InvalidInput("generator degree mismatch".into()));
            }
        }
        let mut g = PermGroup {
            name: String::new(),
            degree,
            gens,
            flat: Vec::new(),
            order: 0,
            table: vec![EMPTY; 16],
            parent: Vec::new(),
            classes: OnceLock::new(),
        };
        g.insert(&perm::identity(degree), (0, EMPTY));
        let mut head = 0;
        while head < g.order {
            for gi in 0..g.gens.len() {
                let p = perm::compose(g.elt(head), &g.gens[gi]);
                if g.find(&p).is_none() {
                    if g.order >= cap {
                        return Err(Error::GroupTooLarge { cap });
                    }
                    g.insert(&p, (head as u32, gi as u32));
                }
            }
            head += 1;
        }
        Ok(g)
    }

    pub fn from_text(text: &str, cap: usize) -> Result<Self> {
        let (n, gens) = perm::parse_group_text(text)?;
        Self::new(n, gens, cap)
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn into_group(self) -> Group {
        Arc::new(self)
    }

    fn insert(&mut self, p: &[u32], parent: (u32, u32)) {
        if (self.order + 1) * 2 > self.table.len() {
            let cap = self.table.len() * 2;
            self.table = vec![EMPTY; cap];
            for i in 0..self.order {
                let h = hash_perm(self.elt(i)) as usize;
                let mask = cap - 1;
                let mut s = h & mask;
                while self.table[s] != EMPTY {
                    s = (s + 1) & mask;
                }
                self.table[s] = i as u32;
            }
        }
        let mask = self.table.len() - 1;
        let mut s = hash_perm(p) as usize & mask;
        while self.table[s] != EMPTY {
            s = (s + 1) & mask;
        }
        self.table[s] = self.order as u32;
        self.flat.extend_from_slice(p);
        self.parent.push(parent);
        self.order += 1;
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn gens(&self) -> &[Perm] {
        &self.gens
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    #[inline]
    pub fn elt(&self, i: usize) -> &[u32] {
        &self.flat[i * self.degree..(i + 1) * self.degree]
    }

    pub fn find(&self, p: &[u32]) -> Option<usize> {
        if p.len() != self.degree {
            return None;
        }
        let mask = self.table.len() - 1;
        let mut s = hash_perm(p) as usize & mask;
        loop {
            let e = self.table[s];
            if e == EMPTY {
                return None;
            }
            if self.elt(e as usize) == p {
                return Some(e as usize);
            }
            s = (s + 1) & mask;
        }
    }

    pub fn contains(&self, p: &[u32]) -> bool {
        self.find(p).is_some()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.find(&perm::compose(self.elt(a), self.elt(b)))
            .expect("group is closed under multiplication")
    }

    pub fn inv(&self, a: usize) -> usize {
        self.find(&perm::inverse(self.elt(a)))
            .expect("group is closed under inversion")
    }

    /// `b^-1 a b`.
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.find(&perm::conjugate(self.elt(a), self.elt(b)))
            .expect("group is closed under conjugation")
    }

    pub fn gen_index(&self, gi: usize) -> usize {
        self.find(&self.gens[gi]).expect("generator is an element")
    }

    pub fn elt_order(&self, i: usize) -> u64 {
        perm::order(self.elt(i))
    }

    /// Generator indices whose left-to-right product is element `i`.
    pub fn word(&self, mut i: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while i != 0 {
            let (p, g) = self.parent[i];
            w.push(g as usize);
            i = p as usize;
        }
        w.reverse();
        w
    }

    /// `(parent, generator)` with `elt(i) = elt(parent) * gens[generator]`.
    pub fn parent(&self, i: usize) -> Option<(usize, usize)> {
        if i == 0 {
            None
        } else {
            let (p, g) = self.parent[i];
            Some((p as usize, g as usize))
        }
    }

    pub fn exponent(&self) -> u64 {
        self.classes()
            .list
            .iter()
            .fold(1, |e, c| crate::fld::ints::lcm(e, c.elt_order))
    }

    /// Odd part of the exponent, the order of the root of unity we need.
    pub fn odd_exponent(&self) -> u64 {
        crate::fld::ints::odd_part(self.exponent())
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().enumerate().all(|(i, a)| {
            self.gens[i + 1..]
                .iter()
                .all(|b| perm::compose(a, b) == perm::compose(b, a))
        })
    }

    pub fn classes(&self) -> &Classes {
        self.classes.get_or_init(|| Classes::compute(self))
    }

    /// A subgroup given by generators, each of which must lie in `self`.
    pub fn subgroup(&self, gens: Vec<Perm>) -> Result<PermGroup> {
        for g in &gens {
            if !self.contains(g) {
                return Err(Error::InvalidInput(format!(
                    "generator {} is not in the ambient group",
                    perm::to_cycles(g)
                )));
            }
        }
        PermGroup::new(self.degree, gens, self.order.max(1))
    }

    /// Ambient index of every element of a subgroup `h`.
    pub fn indices_of(&self, h: &PermGroup) -> Vec<usize> {
        (0..h.order())
            .map(|i| self.find(h.elt(i)).expect("subgroup element lies in ambient group"))
            .collect()
    }

    pub fn is_subgroup(&self, h: &PermGroup) -> bool {
        h.degree == self.degree && h.gens.iter().all(|g| self.contains(g))
    }

    /// Whether `h` is a normal subgroup of `self`.
    pub fn is_normal(&self, h: &PermGroup) -> bool {
        self.is_subgroup(h)
            && self
                .gens
                .iter()
                .all(|g| h.gens.iter().all(|x| h.contains(&perm::conjugate(x, g))))
    }

    /// Membership flags over ambient indices for the subgroup generated by
    /// the elements `idx`.
    pub fn generated_by(&self, idx: &[usize]) -> Vec<bool> {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut list = vec![0usize];
        let mut head = 0;
        while head < list.len() {
            let e = list[head];
            for &s in idx {
                let p = self.mul(e, s);
                if !inside[p] {
                    inside[p] = true;
                    list.push(p);
                }
            }
            head += 1;
        }
        inside
    }

    /// Builds a subgroup from membership flags, choosing generators greedily
    /// among members in index order.
    pub fn subgroup_from_flags(&self, inside: &[bool]) -> PermGroup {
        let members: Vec<usize> = (0..self.order).filter(|&i| inside[i]).collect();
        let mut gens: Vec<usize> = Vec::new();
        let mut cur = vec![false; self.order];
        cur[0] = true;
        for &m in &members {
            if !cur[m] {
                gens.push(m);
                cur = self.generated_by(&gens);
            }
        }
        PermGroup::new(
            self.degree,
            gens.iter().map(|&i| self.elt(i).to_vec()).collect(),
            self.order.max(1),
        )
        .expect("subgroup order bounded by ambient order")
    }

    /// Normal closure in `self` of the elements `idx`, as flags.
    pub fn normal_closure_flags(&self, idx: &[usize]) -> Vec<bool> {
        let mut gens: Vec<usize> = idx.to_vec();
        loop {
            let inside = self.generated_by(&gens);
            let mut added = false;
            let snapshot = gens.clone();
            for &x in &snapshot {
                for gi in 0..self.ngens() {
                    let c = self.conj(x, self.gen_index(gi));
                    if !inside[c] && !gens.contains(&c) {
                        gens.push(c);
                        added = true;
                    }
                }
            }
            if !added {
                return inside;
            }
        }
    }

    pub fn normal_closure(&self, h: &PermGroup) -> PermGroup {
        let idx: Vec<usize> = h.gens.iter().filter_map(|g| self.find(g)).collect();
        self.subgroup_from_flags(&self.normal_closure_flags(&idx))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> PermGroup {
        PermGroup::from_text("degree 3\n(1 2)\n(1 2 3)\n", DEFAULT_CAP).unwrap()
    }

    #[test]
    fn orders_by_enumeration() {
        assert_eq!(s3().order(), 6);
        assert_eq!(PermGroup::from_text("degree 4\n", DEFAULT_CAP).unwrap().order(), 1);
        let a4 = PermGroup::from_text("degree 4\n(1 2 3)\n(2 3 4)\n", DEFAULT_CAP).unwrap();
        assert_eq!(a4.order(), 12);
        assert!(matches!(
            PermGroup::from_text("degree 5\n(1 2)\n(1 2 3 4 5)\n", 100),
            Err(Error::GroupTooLarge { cap: 100 })
        ));
    }

    #[test]
    fn words_replay_elements() {
        let g = s3();
        for i in 0..g.order() {
            let mut p = perm::identity(3);
            for gi in g.word(i) {
                p = perm::compose(&p, &g.gens()[gi]);
            }
            assert_eq!(p.as_slice(), g.elt(i));
        }
    }

    #[test]
    fn normality() {
        let g = s3();
        let c3 = g.subgroup(vec![vec![1, 2, 0]]).unwrap();
        let c2 = g.subgroup(vec![vec![1, 0, 2]]).unwrap();
        assert!(g.is_normal(&c3));
        assert!(!g.is_normal(&c2));
        assert_eq!(g.normal_closure(&c2).order(), 6);
        assert!(g.subgroup(vec![vec![0, 1, 2, 3]]).is_err());
    }
}
