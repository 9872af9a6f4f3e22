use super::{perm, PermGroup};

#[derive(Clone, Debug)]
pub struct ConjClass {
    pub index: usize,
    /// Lexicographically least member (as an image list).
    pub rep: usize,
    pub members: Vec<usize>,
    pub centralizer_order: u64,
    pub elt_order: u64,
    pub is_2regular: bool,
    /// Exponent of the 2-part of the centralizer order.
    pub defect: u32,
    /// Index of the class of inverses.
    pub inverse: usize,
}

impl ConjClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn is_real(&self) -> bool {
        self.inverse == self.index
    }
}

/// The conjugacy classes of a group, ordered by element order, then size,
/// then least representative.
#[derive(Clone, Debug)]
pub struct Classes {
    pub list: Vec<ConjClass>,
    pub class_of: Vec<u32>,
}

impl Classes {
    pub(super) fn compute(g: &PermGroup) -> Classes {
        let n = g.order();
        let mut raw_of = vec![u32::MAX; n];
        let mut raw: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            if raw_of[x] != u32::MAX {
                continue;
            }
            let id = raw.len() as u32;
            raw_of[x] = id;
            let mut orbit = vec![x];
            let mut head = 0;
            while head < orbit.len() {
                let y = orbit[head];
                for s in g.gens() {
                    let c = g
                        .find(&perm::conjugate(g.elt(y), s))
                        .expect("closed under conjugation");
                    if raw_of[c] == u32::MAX {
                        raw_of[c] = id;
                        orbit.push(c);
                    }
                }
                head += 1;
            }
            orbit.sort_unstable();
            raw.push(orbit);
        }
        let mut built: Vec<(u64, usize, usize, Vec<usize>)> = raw
            .into_iter()
            .map(|members| {
                let rep = *members
                    .iter()
                    .min_by(|&&a, &&b| g.elt(a).cmp(g.elt(b)))
                    .expect("classes are nonempty");
                (g.elt_order(rep), members.len(), rep, members)
            })
            .collect();
        built.sort_by(|a, b| {
            (a.0, a.1)
                .cmp(&(b.0, b.1))
                .then_with(|| g.elt(a.2).cmp(g.elt(b.2)))
        });
        let mut class_of = vec![0u32; n];
        for (ci, c) in built.iter().enumerate() {
            for &m in &c.3 {
                class_of[m] = ci as u32;
            }
        }
        let list = built
            .into_iter()
            .enumerate()
            .map(|(index, (elt_order, size, rep, members))| {
                let centralizer_order = (n / size) as u64;
                ConjClass {
                    index,
                    rep,
                    members,
                    centralizer_order,
                    elt_order,
                    is_2regular: elt_order % 2 == 1,
                    defect: centralizer_order.trailing_zeros(),
                    inverse: class_of[g.inv(rep)] as usize,
                }
            })
            .collect();
        Classes { list, class_of }
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn of(&self, elt: usize) -> usize {
        self.class_of[elt] as usize
    }

    pub fn class_inverse(&self, c: usize) -> usize {
        self.list[c].inverse
    }

    /// Indices of the 2-regular classes, in class order.
    pub fn regular(&self) -> Vec<usize> {
        self.list
            .iter()
            .filter(|c| c.is_2regular)
            .map(|c| c.index)
            .collect()
    }
}
