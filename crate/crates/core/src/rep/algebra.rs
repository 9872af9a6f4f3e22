//! Random elements of the group algebra, kept as replayable recipes so the
//! same element can be evaluated in any module for the same group.

use rand::Rng;

use crate::fld::{Elt, Gf2k};
use crate::mat::Mat;

/// Pool entries beyond the generators are products `pool[a] * pool[b]`;
/// the element itself is a linear combination of pool entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraWord {
    pub steps: Vec<(usize, usize)>,
    pub combo: Vec<(usize, Elt)>,
}

impl AlgebraWord {
    pub fn zero() -> Self {
        AlgebraWord {
            steps: Vec::new(),
            combo: Vec::new(),
        }
    }

    pub fn eval(&self, gens: &[Mat], f: &Gf2k, dim: usize) -> Mat {
        let mut pool: Vec<Mat> = gens.to_vec();
        for &(a, b) in &self.steps {
            let m = pool[a].mul(&pool[b]);
            pool.push(m);
        }
        combine(&pool, &self.combo, f, dim)
    }
}

fn combine(pool: &[Mat], combo: &[(usize, Elt)], f: &Gf2k, dim: usize) -> Mat {
    let mut out = Mat::zero(f, dim, dim);
    for &(i, c) in combo {
        out = out.add(&pool[i].scale(c));
    }
    out
}

/// Generates a sequence of random algebra elements for one module, caching
/// the pool matrices.
pub struct WordPool {
    f: Gf2k,
    dim: usize,
    pool: Vec<Mat>,
    steps: Vec<(usize, usize)>,
}

impl WordPool {
    pub fn new(gens: &[Mat], f: &Gf2k, dim: usize) -> Self {
        WordPool {
            f: f.clone(),
            dim,
            pool: gens.to_vec(),
            steps: Vec::new(),
        }
    }

    /// Extends the pool by one random product and returns a random
    /// combination involving the new entry, with its matrix.
    pub fn next(&mut self, rng: &mut impl Rng) -> (AlgebraWord, Mat) {
        let n = self.pool.len();
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let m = self.pool[a].mul(&self.pool[b]);
        self.pool.push(m);
        self.steps.push((a, b));
        let top = self.pool.len() - 1;
        let q = self.f.order();
        let mut combo = vec![(top, Elt(rng.gen_range(1..q)))];
        let extra = rng.gen_range(1..=2.min(top));
        for _ in 0..extra {
            let i = rng.gen_range(0..top);
            if combo.iter().all(|&(j, _)| j != i) {
                combo.push((i, Elt(rng.gen_range(1..q))));
            }
        }
        let word = AlgebraWord {
            steps: self.steps.clone(),
            combo,
        };
        let mat = combine(&self.pool, &word.combo, &self.f, self.dim);
        (word, mat)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn replay_matches_pool() {
        let f = Gf2k::new(2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let gens = vec![Mat::random(&f, 4, 4, &mut rng), Mat::random(&f, 4, 4, &mut rng)];
        let mut pool = WordPool::new(&gens, &f, 4);
        for _ in 0..5 {
            let (w, m) = pool.next(&mut rng);
            assert_eq!(w.eval(&gens, &f, 4), m);
        }
    }
}
