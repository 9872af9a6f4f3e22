//! Spinning vectors under a set of matrices.

use crate::mat::{row_is_zero, Echelon, Mat};

/// The smallest subspace containing `seeds` and invariant under `gens`.
pub fn spin(gens: &[Mat], seeds: &[Vec<u64>], cols: usize, f: &crate::fld::Gf2k) -> Echelon {
    let mut e = Echelon::new(f, cols);
    let mut queue: Vec<Vec<u64>> = Vec::new();
    for s in seeds {
        if e.insert(s.clone()) {
            queue.push(s.clone());
        }
    }
    let mut head = 0;
    while head < queue.len() && e.len() < cols {
        let v = queue[head].clone();
        head += 1;
        for a in gens {
            let w = a.vec_mul(&v);
            let mut r = w.clone();
            e.reduce(&mut r);
            if !row_is_zero(&r) {
                e.insert_reduced(r);
                queue.push(w);
            }
        }
    }
    e
}

/// A standard basis: vectors `b_0 = v`, then each new `b_i * gens[g]` that
/// is independent of the earlier ones, recorded as `(i, g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardBasis {
    pub vectors: Vec<Vec<u64>>,
    pub recipe: Vec<(usize, usize)>,
}

pub fn standard_basis(gens: &[Mat], v: &[u64], cols: usize, f: &crate::fld::Gf2k) -> StandardBasis {
    let mut e = Echelon::new(f, cols);
    let mut vectors = Vec::new();
    let mut recipe = Vec::new();
    if !e.insert(v.to_vec()) {
        return StandardBasis { vectors, recipe };
    }
    vectors.push(v.to_vec());
    let mut head = 0;
    while head < vectors.len() && e.len() < cols {
        for (gi, a) in gens.iter().enumerate() {
            let w = a.vec_mul(&vectors[head]);
            let mut r = w.clone();
            e.reduce(&mut r);
            if !row_is_zero(&r) {
                e.insert_reduced(r);
                vectors.push(w);
                recipe.push((head, gi));
            }
        }
        head += 1;
    }
    StandardBasis { vectors, recipe }
}

/// Replays a recipe from `v` in another module, without independence checks.
pub fn replay(gens: &[Mat], v: &[u64], recipe: &[(usize, usize)]) -> Vec<Vec<u64>> {
    let mut out = vec![v.to_vec()];
    for &(i, g) in recipe {
        let w = gens[g].vec_mul(&out[i]);
        out.push(w);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fld::Gf2k;

    #[test]
    fn spin_permutation_module() {
        let f = Gf2k::new(1);
        let c = Mat::permutation(&f, &[1, 2, 0]);
        let mut ones = Mat::zero(&f, 1, 3);
        for j in 0..3 {
            ones.set(0, j, crate::fld::Elt::ONE);
        }
        assert_eq!(spin(std::slice::from_ref(&c), &[ones.row(0).to_vec()], 3, &f).len(), 1);
        let e0 = Mat::identity(&f, 3).row(0).to_vec();
        assert_eq!(spin(std::slice::from_ref(&c), std::slice::from_ref(&e0), 3, &f).len(), 3);
        let sb = standard_basis(std::slice::from_ref(&c), &e0, 3, &f);
        assert_eq!(sb.recipe, vec![(0, 0), (1, 0)]);
        assert_eq!(replay(&[c], &e0, &sb.recipe), sb.vectors);
    }
}
