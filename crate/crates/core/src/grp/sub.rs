use std::sync::Arc;

use super::{Group, PermGroup};
use crate::error::{Error, Result};

/// Right coset representatives `T g` of a subgroup, identity first.
#[derive(Clone, Debug)]
pub struct Transversal {
    pub reps: Vec<usize>,
    /// Coset number of every ambient element.
    pub coset_of: Vec<u32>,
}

impl Transversal {
    pub fn index(&self) -> usize {
        self.reps.len()
    }
}

/// A subgroup with a verified chain of normal inclusions up to the ambient
/// group. `chain` lists the groups strictly above `subgroup`, ending with
/// `ambient`; it is empty when the two coincide.
#[derive(Clone, Debug)]
pub struct NormalEmbedding {
    pub ambient: Group,
    pub subgroup: Group,
    pub chain: Vec<Group>,
}

impl NormalEmbedding {
    pub fn normal(ambient: &Group, n: &Group) -> Result<Self> {
        if !ambient.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let chain = if n.order() == ambient.order() {
            Vec::new()
        } else {
            vec![ambient.clone()]
        };
        Ok(NormalEmbedding {
            ambient: ambient.clone(),
            subgroup: n.clone(),
            chain,
        })
    }

    pub fn is_normal(&self) -> bool {
        self.chain.len() <= 1
    }
}

/// A G-orbit of N-classes for N normal in G.
#[derive(Clone, Debug)]
pub struct ClassOrbit {
    /// Class indices in N.
    pub n_classes: Vec<usize>,
    /// The G-class equal to the union of the orbit.
    pub g_class: usize,
    pub real: bool,
    pub is_2regular: bool,
}

impl PermGroup {
    pub fn right_transversal(&self, t: &PermGroup) -> Transversal {
        let t_idx = self.indices_of(t);
        let mut coset_of = vec![u32::MAX; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() {
            if coset_of[g] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(g);
            for &x in &t_idx {
                coset_of[self.mul(x, g)] = id;
            }
        }
        Transversal { reps, coset_of }
    }

    /// The commutator subgroup: the normal closure of the commutators of
    /// the generators.
    pub fn derived_subgroup(&self) -> PermGroup {
        let mut comms = Vec::new();
        for a in 0..self.ngens() {
            for b in a + 1..self.ngens() {
                let (x, y) = (self.gen_index(a), self.gen_index(b));
                let c = self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y));
                if c != 0 {
                    comms.push(c);
                }
            }
        }
        let name = format!("{}'", self.name());
        self.subgroup_from_flags(&self.normal_closure_flags(&comms)).named(name)
    }

    /// The quotient `self / n` acting on the right cosets of `n`.
    pub fn quotient(&self, n: &PermGroup) -> Result<PermGroup> {
        if !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let tr = self.right_transversal(n);
        let gens = (0..self.ngens())
            .map(|gi| {
                let g = self.gen_index(gi);
                tr.reps
                    .iter()
                    .map(|&r| tr.coset_of[self.mul(r, g)])
                    .collect::<Vec<u32>>()
            })
            .collect();
        let name = format!("{}/{}", self.name(), n.name());
        Ok(PermGroup::new(tr.index(), gens, self.order().max(1))?.named(name))
    }

    /// All normal subgroups other than 1 and G, ordered by size.
    pub fn proper_normal_subgroups(&self) -> Vec<PermGroup> {
        let classes = self.classes();
        let mut found: Vec<(Vec<bool>, Vec<usize>)> = Vec::new();
        let gen_from = |cls: &[usize]| -> Vec<bool> {
            let idx: Vec<usize> = cls
                .iter()
                .flat_map(|&c| classes.list[c].members.iter().copied())
                .collect();
            self.generated_by(&idx)
        };
        for c in 1..classes.len() {
            let flags = gen_from(&[c]);
            if !found.iter().any(|(f, _)| *f == flags) {
                found.push((flags, vec![c]));
            }
        }
        loop {
            let mut added = false;
            let n = found.len();
            for i in 0..n {
                for j in i + 1..n {
                    let mut cls = found[i].1.clone();
                    cls.extend_from_slice(&found[j].1);
                    cls.sort_unstable();
                    cls.dedup();
                    let flags = gen_from(&cls);
                    if !found.iter().any(|(f, _)| *f == flags) {
                        found.push((flags, cls));
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        let mut subs: Vec<Vec<bool>> = found
            .into_iter()
            .map(|(f, _)| f)
            .filter(|f| {
                let k = f.iter().filter(|&&b| b).count();
                k > 1 && k < self.order()
            })
            .collect();
        subs.sort_by(|a, b| {
            let ka = a.iter().filter(|&&x| x).count();
            let kb = b.iter().filter(|&&x| x).count();
            ka.cmp(&kb).then_with(|| b.cmp(a))
        });
        subs.iter().map(|f| self.subgroup_from_flags(f)).collect()
    }
}

/// Identity-first right transversal of `t` in `g`.
pub fn coset_transversal(g: &PermGroup, t: &PermGroup) -> Transversal {
    g.right_transversal(t)
}

/// The chain `H ◁ N_1 ◁ ... ◁ G` of iterated normal closures.
pub fn subnormal_chain(g: &Group, h: &Group) -> Result<NormalEmbedding> {
    if !g.is_subgroup(h) {
        return Err(Error::InvalidInput("H is not a subgroup of G".into()));
    }
    let mut chain = Vec::new();
    let mut cur = g.clone();
    while cur.order() != h.order() {
        chain.push(cur.clone());
        let next = cur.normal_closure(h);
        if next.order() == cur.order() {
            return Err(Error::NotSubnormal);
        }
        cur = Arc::new(next);
    }
    chain.reverse();
    Ok(NormalEmbedding {
        ambient: g.clone(),
        subgroup: h.clone(),
        chain,
    })
}

/// G-classes inside normal `n` that are real in G and 2-regular.
pub fn real_2regular_classes_in(g: &PermGroup, n: &PermGroup) -> Result<Vec<usize>> {
    if !g.is_normal(n) {
        return Err(Error::NotNormal);
    }
    let cl = g.classes();
    Ok(cl
        .list
        .iter()
        .filter(|c| c.is_2regular && c.is_real() && n.contains(g.elt(c.rep)))
        .map(|c| c.index)
        .collect())
}

/// Partition of the classes of normal `n` into G-orbits.
pub fn g_orbits_on_subgroup_classes(g: &PermGroup, n: &PermGroup) -> Result<Vec<ClassOrbit>> {
    if !g.is_normal(n) {
        return Err(Error::NotNormal);
    }
    let gcl = g.classes();
    let ncl = n.classes();
    let mut orbits: Vec<ClassOrbit> = Vec::new();
    for c in &ncl.list {
        let gi = g.find(n.elt(c.rep)).expect("N lies in G");
        let gc = gcl.of(gi);
        match orbits.iter_mut().find(|o| o.g_class == gc) {
            Some(o) => o.n_classes.push(c.index),
            None => orbits.push(ClassOrbit {
                n_classes: vec![c.index],
                g_class: gc,
                real: gcl.list[gc].is_real(),
                is_2regular: c.is_2regular,
            }),
        }
    }
    Ok(orbits)
}

#[cfg(test)]
mod tests {
    use super::super::named;
    use super::*;

    #[test]
    fn derived_subgroups() {
        assert_eq!(named::symmetric(4).derived_subgroup().order(), 12);
        assert_eq!(named::alternating(4).derived_subgroup().order(), 4);
        assert_eq!(named::alternating(5).derived_subgroup().order(), 60);
        assert_eq!(named::cyclic(7).derived_subgroup().order(), 1);
        assert_eq!(named::c7_c3().derived_subgroup().order(), 7);
    }

    #[test]
    fn transversals_and_quotients() {
        let s3 = named::symmetric(3).into_group();
        let c3 = Arc::new(s3.subgroup(vec![vec![1, 2, 0]]).unwrap());
        let t = coset_transversal(&s3, &c3);
        assert_eq!(t.index(), 2);
        assert_eq!(t.reps[0], 0);
        assert_eq!(coset_transversal(&s3, &s3).index(), 1);
        assert_eq!(s3.quotient(&c3).unwrap().order(), 2);
        let s4 = named::symmetric(4);
        let v4 = s4
            .subgroup(vec![vec![1, 0, 3, 2], vec![2, 3, 0, 1]])
            .unwrap();
        assert_eq!(s4.quotient(&v4).unwrap().order(), 6);
    }

    #[test]
    fn normal_subgroup_counts() {
        let orders = |g: PermGroup| -> Vec<usize> {
            g.proper_normal_subgroups().iter().map(|h| h.order()).collect()
        };
        assert_eq!(orders(named::symmetric(3)), vec![3]);
        assert_eq!(orders(named::symmetric(4)), vec![4, 12]);
        assert_eq!(orders(named::alternating(5)), Vec::<usize>::new());
        assert_eq!(orders(named::dihedral(4)), vec![2, 4, 4, 4]);
        assert_eq!(orders(named::quaternion()), vec![2, 4, 4, 4]);
    }

    #[test]
    fn real_classes_and_orbits() {
        let s3 = named::symmetric(3);
        let c3 = s3.subgroup(vec![vec![1, 2, 0]]).unwrap();
        assert_eq!(real_2regular_classes_in(&s3, &c3).unwrap().len(), 2);
        let orbits = g_orbits_on_subgroup_classes(&s3, &c3).unwrap();
        assert_eq!(orbits.len(), 2);
        assert_eq!(orbits[1].n_classes.len(), 2);
        assert!(orbits.iter().all(|o| o.real));

        let c3b = named::cyclic(3);
        let same = c3b.subgroup(c3b.gens().to_vec()).unwrap();
        assert_eq!(real_2regular_classes_in(&c3b, &same).unwrap().len(), 1);
        assert!(g_orbits_on_subgroup_classes(&c3b, &same)
            .unwrap()
            .iter()
            .all(|o| o.n_classes.len() == 1));

        let s4 = named::symmetric(4);
        let v4 = s4.subgroup(vec![vec![1, 0, 3, 2], vec![2, 3, 0, 1]]).unwrap();
        assert_eq!(real_2regular_classes_in(&s4, &v4).unwrap().len(), 1);
        let a4 = named::alternating(4);
        let a4_in = s4.subgroup(a4.gens().to_vec()).unwrap();
        let orbits = g_orbits_on_subgroup_classes(&s4, &a4_in).unwrap();
        let fused: Vec<&ClassOrbit> = orbits.iter().filter(|o| o.n_classes.len() == 2).collect();
        assert_eq!(fused.len(), 1);
        assert!(fused[0].real);
        let c2 = s3.subgroup(vec![vec![1, 0, 2]]).unwrap();
        assert!(matches!(real_2regular_classes_in(&s3, &c2), Err(Error::NotNormal)));
    }

    #[test]
    fn chains() {
        let s4 = named::symmetric(4).into_group();
        let v4 = Arc::new(s4.subgroup(vec![vec![1, 0, 3, 2], vec![2, 3, 0, 1]]).unwrap());
        assert_eq!(subnormal_chain(&s4, &v4).unwrap().chain.len(), 1);
        assert!(subnormal_chain(&s4, &s4).unwrap().chain.is_empty());
        let c2 = Arc::new(s4.subgroup(vec![vec![1, 0, 3, 2]]).unwrap());
        let ch = subnormal_chain(&s4, &c2).unwrap();
        assert_eq!(ch.chain.iter().map(|g| g.order()).collect::<Vec<_>>(), vec![4, 24]);
        let t = Arc::new(s4.subgroup(vec![vec![1, 0, 2, 3]]).unwrap());
        assert!(matches!(subnormal_chain(&s4, &t), Err(Error::NotSubnormal)));
    }
}
