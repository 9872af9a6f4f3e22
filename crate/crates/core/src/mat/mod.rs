//! Dense matrices over GF(2^k) stored as bit planes.
//!
//! Row `r` of an `n x c` matrix is a contiguous run of `k * words` machine
//! words: plane `p` (bit `p` of every entry) occupies words
//! `[p * words, (p + 1) * words)`, with column `j` at bit `j % 64` of word
//! `j / 64`. Adding a scalar multiple of one row to another is a handful of
//! word XORs per plane, which is where nearly all the time goes.

mod echelon;

pub use echelon::Echelon;

use std::fmt;

use rand::Rng;

use crate::fld::{Elt, Gf2k};

#[inline]
pub fn words_for(cols: usize) -> usize {
    cols.div_ceil(64).max(1)
}

/// Entry `c` of a packed row.
#[inline]
pub fn row_get(row: &[u64], k: usize, words: usize, c: usize) -> Elt {
    let (w, b) = (c / 64, c % 64);
    let mut x = 0u64;
    for p in 0..k {
        x |= ((row[p * words + w] >> b) & 1) << p;
    }
    Elt(x)
}

#[inline]
pub fn row_set(row: &mut [u64], k: usize, words: usize, c: usize, v: Elt) {
    let (w, b) = (c / 64, c % 64);
    for p in 0..k {
        let word = &mut row[p * words + w];
        *word = (*word & !(1u64 << b)) | (((v.0 >> p) & 1) << b);
    }
}

pub fn row_is_zero(row: &[u64]) -> bool {
    row.iter().all(|&w| w == 0)
}

/// First column holding a nonzero entry.
pub fn row_leading(row: &[u64], k: usize, words: usize) -> Option<usize> {
    for w in 0..words {
        let mut or = 0u64;
        for p in 0..k {
            or |= row[p * words + w];
        }
        if or != 0 {
            return Some(w * 64 + or.trailing_zeros() as usize);
        }
    }
    None
}

/// `dst += c * src` on packed rows.
#[inline]
pub fn row_axpy(f: &Gf2k, dst: &mut [u64], src: &[u64], c: Elt, words: usize) {
    if c.is_zero() {
        return;
    }
    if c == Elt::ONE {
        for (d, s) in dst.iter_mut().zip(src) {
            *d ^= s;
        }
        return;
    }
    let k = f.k();
    let mut mm = [0u64; 64];
    f.mulmat(c, &mut mm);
    for (j, &mask) in mm.iter().take(k).enumerate() {
        let d = &mut dst[j * words..(j + 1) * words];
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            let s = &src[i * words..(i + 1) * words];
            for (dw, sw) in d.iter_mut().zip(s) {
                *dw ^= sw;
            }
        }
    }
}

/// `row *= c` in place.
pub fn row_scale(f: &Gf2k, row: &mut [u64], c: Elt, words: usize) {
    if c == Elt::ONE {
        return;
    }
    let src = row.to_vec();
    row.iter_mut().for_each(|w| *w = 0);
    row_axpy(f, row, &src, c, words);
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    f: Gf2k,
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over GF(2^{})", self.rows, self.cols, self.f.k())?;
        for r in 0..self.rows {
            let entries: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", entries.join(" "))?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn zero(f: &Gf2k, rows: usize, cols: usize) -> Self {
        let words = words_for(cols);
        Mat {
            f: f.clone(),
            rows,
            cols,
            words,
            data: vec![0; rows * f.k() * words],
        }
    }

    pub fn identity(f: &Gf2k, n: usize) -> Self {
        Self::scalar(f, n, Elt::ONE)
    }

    pub fn scalar(f: &Gf2k, n: usize, c: Elt) -> Self {
        let mut m = Self::zero(f, n, n);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    pub fn from_fn(f: &Gf2k, rows: usize, cols: usize, mut g: impl FnMut(usize, usize) -> Elt) -> Self {
        let mut m = Self::zero(f, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = g(r, c);
                if !v.is_zero() {
                    m.set(r, c, v);
                }
            }
        }
        m
    }

    pub fn from_rows(f: &Gf2k, rows: &[Vec<Elt>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_fn(f, rows.len(), cols, |r, c| rows[r][c])
    }

    /// Stacks packed rows (each of this field's stride for `cols`).
    pub fn from_packed_rows(f: &Gf2k, cols: usize, rows: &[Vec<u64>]) -> Self {
        let mut m = Self::zero(f, 0, cols);
        for r in rows {
            m.push_row(r);
        }
        m
    }

    /// Permutation matrix sending basis vector `i` to `perm[i]`.
    pub fn permutation(f: &Gf2k, perm: &[u32]) -> Self {
        let n = perm.len();
        let mut m = Self::zero(f, n, n);
        for (i, &j) in perm.iter().enumerate() {
            m.set(i, j as usize, Elt::ONE);
        }
        m
    }

    pub fn random(f: &Gf2k, rows: usize, cols: usize, rng: &mut impl Rng) -> Self {
        let q = f.order();
        Self::from_fn(f, rows, cols, |_, _| Elt(rng.gen_range(0..q)))
    }

    pub fn field(&self) -> &Gf2k {
        &self.f
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn words(&self) -> usize {
        self.words
    }

    /// Number of `u64` per packed row.
    pub fn stride(&self) -> usize {
        self.f.k() * self.words
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elt {
        row_get(self.row(r), self.f.k(), self.words, c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elt) {
        let (k, w) = (self.f.k(), self.words);
        row_set(self.row_mut(r), k, w, c, v);
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u64] {
        let s = self.stride();
        &self.data[r * s..(r + 1) * s]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [u64] {
        let s = self.stride();
        &mut self.data[r * s..(r + 1) * s]
    }

    pub fn row_elts(&self, r: usize) -> Vec<Elt> {
        (0..self.cols).map(|c| self.get(r, c)).collect()
    }

    pub fn zero_row(&self) -> Vec<u64> {
        vec![0; self.stride()]
    }

    pub fn push_row(&mut self, row: &[u64]) {
        assert_eq!(row.len(), self.stride());
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let s = self.stride();
        let (lo, hi) = (a.min(b), a.max(b));
        let (x, y) = self.data.split_at_mut(hi * s);
        x[lo * s..(lo + 1) * s].swap_with_slice(&mut y[..s]);
    }

    /// `row[dst] += c * row[src]`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, c: Elt) {
        assert_ne!(dst, src);
        let s = self.stride();
        let (d, sr) = if dst < src {
            let (x, y) = self.data.split_at_mut(src * s);
            (&mut x[dst * s..(dst + 1) * s], &y[..s])
        } else {
            let (x, y) = self.data.split_at_mut(dst * s);
            (&mut y[..s], &x[src * s..(src + 1) * s])
        };
        row_axpy(&self.f, d, sr, c, self.words);
    }

    pub fn scale_row(&mut self, r: usize, c: Elt) {
        let (w, f) = (self.words, self.f.clone());
        row_scale(&f, self.row_mut(r), c, w);
    }

    pub fn is_zero(&self) -> bool {
        row_is_zero(&self.data)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(&self.f, self.rows)
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let mut r = self.clone();
        for (a, b) in r.data.iter_mut().zip(&o.data) {
            *a ^= b;
        }
        r
    }

    pub fn scale(&self, c: Elt) -> Mat {
        let mut r = self.clone();
        for i in 0..r.rows {
            r.scale_row(i, c);
        }
        r
    }

    /// Packed row vector times this matrix.
    pub fn vec_mul(&self, v: &[u64]) -> Vec<u64> {
        let k = self.f.k();
        let vw = words_for(self.rows);
        let mut out = self.zero_row();
        for i in 0..self.rows {
            let c = row_get(v, k, vw, i);
            if !c.is_zero() {
                row_axpy(&self.f, &mut out, self.row(i), c, self.words);
            }
        }
        out
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut out = Mat::zero(&self.f, self.rows, o.cols);
        let k = self.f.k();
        for r in 0..self.rows {
            let src = self.row(r);
            let dst_s = out.stride();
            let dst = &mut out.data[r * dst_s..(r + 1) * dst_s];
            for i in 0..self.cols {
                let c = row_get(src, k, self.words, i);
                if !c.is_zero() {
                    row_axpy(&self.f, dst, o.row(i), c, o.words);
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        let mut base = self.clone();
        let mut acc = Mat::identity(&self.f, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(&self.f, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if !v.is_zero() {
                    t.set(c, r, v);
                }
            }
        }
        t
    }

    /// Kronecker product: entry `(i*p + k, j*q + l) = a_ij * b_kl`.
    pub fn kron(&self, o: &Mat) -> Mat {
        let (p, q) = (o.rows, o.cols);
        let mut out = Mat::zero(&self.f, self.rows * p, self.cols * q);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..p {
                    for l in 0..q {
                        let b = o.get(k, l);
                        if !b.is_zero() {
                            out.set(i * p + k, j * q + l, self.f.mul(a, b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn submatrix(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> Mat {
        Mat::from_fn(&self.f, rows, cols, |r, c| self.get(r0 + r, c0 + c))
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self.set(r0 + r, c0 + c, b.get(r, c));
            }
        }
    }

    pub fn block_diag(blocks: &[&Mat]) -> Mat {
        let f = blocks[0].f.clone();
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zero(&f, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Horizontal concatenation `[self | o]`.
    pub fn hcat(&self, o: &Mat) -> Mat {
        assert_eq!(self.rows, o.rows);
        let mut out = Mat::zero(&self.f, self.rows, self.cols + o.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, o);
        out
    }

    pub fn vcat(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.cols);
        let mut out = self.clone();
        out.data.extend_from_slice(&o.data);
        out.rows += o.rows;
        out
    }

    pub fn trace(&self) -> Elt {
        (0..self.rows.min(self.cols)).fold(Elt::ZERO, |a, i| a + self.get(i, i))
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        self.rref_cols(self.cols)
    }

    /// Reduced row echelon form using pivots only among the first `ncols`
    /// columns (the rest ride along, as in an augmented system).
    pub fn rref_cols(&mut self, ncols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..ncols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&r| !self.get(r, c).is_zero()) else {
                continue;
            };
            self.swap_rows(rank, p);
            let inv = self.f.inv(self.get(rank, c));
            self.scale_row(rank, inv);
            for r in 0..self.rows {
                if r != rank {
                    let v = self.get(r, c);
                    if !v.is_zero() {
                        self.add_row_multiple(r, rank, v);
                    }
                }
            }
            pivots.push(c);
            rank += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(&self.f, self.cols);
        for r in 0..self.rows {
            e.insert(self.row(r).to_vec());
        }
        e.len()
    }

    /// Basis (as rows) of `{v : v * self = 0}`.
    pub fn left_nullspace(&self) -> Mat {
        let aug = self.hcat(&Mat::identity(&self.f, self.rows));
        let mut a = aug;
        let piv = a.rref_cols(self.cols);
        let r = piv.len();
        a.submatrix(r, self.rows - r, self.cols, self.rows)
    }

    /// Basis (as rows) of `{x : self * x^T = 0}`.
    pub fn right_nullspace(&self) -> Mat {
        let mut a = self.clone();
        let piv = a.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        let mut out = Mat::zero(&self.f, free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            out.set(i, fc, Elt::ONE);
            for (pr, &pc) in piv.iter().enumerate() {
                let v = a.get(pr, fc);
                if !v.is_zero() {
                    out.set(i, pc, v);
                }
            }
        }
        out
    }

    pub fn nullity(&self) -> usize {
        self.rows - self.rank()
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.hcat(&Mat::identity(&self.f, n));
        let piv = a.rref_cols(n);
        if piv.len() < n {
            return None;
        }
        Some(a.submatrix(0, n, n, n))
    }

    /// Multiplicative order of an invertible matrix.
    pub fn order(&self) -> u64 {
        let id = Mat::identity(&self.f, self.rows);
        let mut p = self.clone();
        let mut n = 1;
        while p != id {
            p = p.mul(self);
            n += 1;
        }
        n
    }

    /// All entries, row-major.
    pub fn entries(&self) -> Vec<Elt> {
        (0..self.rows)
            .flat_map(|r| (0..self.cols).map(move |c| (r, c)))
            .map(|(r, c)| self.get(r, c))
            .collect()
    }

    /// Rows as hex strings, `ceil(k/4)` digits per entry.
    pub fn hex_rows(&self) -> Vec<String> {
        let digits = self.f.k().div_ceil(4);
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| format!("{:0width$x}", self.get(r, c).0, width = digits))
                    .collect()
            })
            .collect()
    }

    pub fn from_hex_rows(f: &Gf2k, cols: usize, rows: &[&str]) -> Option<Mat> {
        let digits = f.k().div_ceil(4);
        let mut m = Mat::zero(f, rows.len(), cols);
        for (r, s) in rows.iter().enumerate() {
            if s.len() != digits * cols || !s.is_ascii() {
                return None;
            }
            for c in 0..cols {
                let v = u64::from_str_radix(&s[c * digits..(c + 1) * digits], 16).ok()?;
                if v >= f.order() {
                    return None;
                }
                m.set(r, c, Elt(v));
            }
        }
        Some(m)
    }
}
