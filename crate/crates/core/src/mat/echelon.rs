use super::{row_axpy, row_get, row_is_zero, row_leading, row_scale, row_set, words_for, Mat};
use crate::fld::{Elt, Gf2k};

/// An incrementally grown semi-echelon basis.
///
/// Each stored row has a leading 1 at its pivot column and is zero at the
/// pivots of all rows inserted before it, so reducing against the rows in
/// insertion order clears every pivot column.
#[derive(Clone, Debug)]
pub struct Echelon {
    f: Gf2k,
    cols: usize,
    words: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(f: &Gf2k, cols: usize) -> Self {
        Echelon {
            f: f.clone(),
            cols,
            words: words_for(cols),
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_mat(m: &Mat) -> Self {
        let mut e = Self::new(m.field(), m.cols());
        for r in 0..m.rows() {
            e.insert(m.row(r).to_vec());
        }
        e
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn words(&self) -> usize {
        self.words
    }

    pub fn stride(&self) -> usize {
        self.f.k() * self.words
    }

    pub fn field(&self) -> &Gf2k {
        &self.f
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns without a pivot, ascending; they index the quotient space.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_piv = vec![false; self.cols];
        for &p in &self.pivots {
            is_piv[p] = true;
        }
        (0..self.cols).filter(|&c| !is_piv[c]).collect()
    }

    pub fn reduce(&self, v: &mut [u64]) {
        let k = self.f.k();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = row_get(v, k, self.words, p);
            if !c.is_zero() {
                row_axpy(&self.f, v, row, c, self.words);
            }
        }
    }

    /// Reduces `v` and returns the coefficients subtracted, one per row.
    pub fn reduce_coeffs(&self, v: &mut [u64]) -> Vec<Elt> {
        let k = self.f.k();
        let mut out = Vec::with_capacity(self.rows.len());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = row_get(v, k, self.words, p);
            if !c.is_zero() {
                row_axpy(&self.f, v, row, c, self.words);
            }
            out.push(c);
        }
        out
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        row_is_zero(&w)
    }

    /// Adds `v` to the span; returns `true` if the span grew.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        self.reduce(&mut v);
        self.insert_reduced(v)
    }

    /// Adds an already reduced vector.
    pub fn insert_reduced(&mut self, mut v: Vec<u64>) -> bool {
        let k = self.f.k();
        let Some(p) = row_leading(&v, k, self.words) else {
            return false;
        };
        let lead = row_get(&v, k, self.words, p);
        row_scale(&self.f, &mut v, self.f.inv(lead), self.words);
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    /// Entries of a reduced vector at the non-pivot columns, packed.
    pub fn quotient_coords(&self, v: &[u64], non_pivots: &[usize]) -> Vec<u64> {
        let k = self.f.k();
        let qw = words_for(non_pivots.len());
        let mut out = vec![0u64; k * qw];
        for (i, &c) in non_pivots.iter().enumerate() {
            let x = row_get(v, k, self.words, c);
            if !x.is_zero() {
                row_set(&mut out, k, qw, i, x);
            }
        }
        out
    }

    pub fn to_mat(&self) -> Mat {
        Mat::from_packed_rows(&self.f, self.cols, &self.rows)
    }
}
