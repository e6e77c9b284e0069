//! Bit-packed GF(2) vectors and matrices with 64-bit words; Gaussian
//! elimination here is the independent oracle for every rank and null-space
//! claim made elsewhere in the crate.

use super::GfError;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> BitVec {
        BitVec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_bits(bits: &[u8]) -> BitVec {
        let mut v = BitVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }
}

/// Row-major bit-packed binary matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> BinaryMatrix {
        let words_per_row = cols.div_ceil(64);
        BinaryMatrix {
            rows,
            cols,
            words_per_row,
            data: vec![0; rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> BinaryMatrix {
        let mut m = BinaryMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> BinaryMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = BinaryMatrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            for (j, &b) in row.iter().enumerate() {
                if b != 0 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.data[r * self.words_per_row + c / 64] >> (c % 64)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        let idx = r * self.words_per_row + c / 64;
        let mask = 1u64 << (c % 64);
        if value {
            self.data[idx] |= mask;
        } else {
            self.data[idx] &= !mask;
        }
    }

    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    pub fn row(&self, r: usize) -> BitVec {
        BitVec {
            len: self.cols,
            words: self.row_words(r).to_vec(),
        }
    }

    pub fn set_row(&mut self, r: usize, v: &BitVec) {
        debug_assert_eq!(v.len, self.cols);
        self.data[r * self.words_per_row..(r + 1) * self.words_per_row]
            .copy_from_slice(&v.words);
    }

    pub fn column(&self, c: usize) -> BitVec {
        let mut v = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn col_weight(&self, c: usize) -> usize {
        (0..self.rows).filter(|&r| self.get(r, c)).count()
    }

    /// Number of positions where rows r1 and r2 are both 1.
    pub fn row_and_weight(&self, r1: usize, r2: usize) -> usize {
        self.row_words(r1)
            .iter()
            .zip(self.row_words(r2))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn xor_row_into(&mut self, src: usize, dst: usize) {
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * self.words_per_row);
            (
                &lo[src * self.words_per_row..(src + 1) * self.words_per_row],
                &mut hi[..self.words_per_row],
            )
        } else {
            let (lo, hi) = self.data.split_at_mut(src * self.words_per_row);
            (
                &hi[..self.words_per_row],
                &mut lo[dst * self.words_per_row..(dst + 1) * self.words_per_row],
            )
        };
        for (d, s) in b.iter_mut().zip(a) {
            *d ^= s;
        }
    }

    pub fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        for w in 0..self.words_per_row {
            self.data
                .swap(r1 * self.words_per_row + w, r2 * self.words_per_row + w);
        }
    }

    pub fn transpose(&self) -> BinaryMatrix {
        let mut t = BinaryMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            let words = self.row_words(r);
            for (wi, &w) in words.iter().enumerate() {
                let mut bits = w;
                while bits != 0 {
                    let b = bits.trailing_zeros() as usize;
                    t.set(wi * 64 + b, r, true);
                    bits &= bits - 1;
                }
            }
        }
        t
    }

    /// v * M^T over GF(2): one bit per row of M.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        debug_assert_eq!(v.len, self.cols);
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            let dot = self
                .row_words(r)
                .iter()
                .zip(&v.words)
                .fold(0u64, |acc, (a, b)| acc ^ (a & b));
            if dot.count_ones() % 2 == 1 {
                out.set(r, true);
            }
        }
        out
    }

    /// Gaussian elimination over GF(2): returns the rank and a basis of the
    /// right null space { v : M v^T = 0 }. rank + basis.len() == cols.
    pub fn rank_and_nullspace(&self) -> Result<(usize, Vec<BitVec>), GfError> {
        if self.rows == 0 || self.cols == 0 {
            return Err(GfError::EmptyMatrix);
        }
        let mut m = self.clone();
        let mut pivot_col_of_row: Vec<usize> = Vec::new();
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols {
            let mut pivot = None;
            for i in r..m.rows {
                if m.get(i, c) {
                    pivot = Some(i);
                    break;
                }
            }
            let Some(p) = pivot else { continue };
            m.swap_rows(r, p);
            for i in 0..m.rows {
                if i != r && m.get(i, c) {
                    m.xor_row_into(r, i);
                }
            }
            pivot_col_of_row.push(c);
            pivot_cols.push(c);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        let rank = r;

        let mut is_pivot = vec![false; m.cols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        let mut basis = Vec::with_capacity(m.cols - rank);
        for free in 0..m.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = BitVec::zeros(m.cols);
            v.set(free, true);
            for (row, &pc) in pivot_col_of_row.iter().enumerate() {
                if m.get(row, free) {
                    v.set(pc, true);
                }
            }
            basis.push(v);
        }
        Ok((rank, basis))
    }

    pub fn rank(&self) -> usize {
        self.rank_and_nullspace().map(|(r, _)| r).unwrap_or(0)
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &BinaryMatrix) -> BinaryMatrix {
        debug_assert_eq!(self.cols, other.cols);
        let mut m = BinaryMatrix::zeros(self.rows + other.rows, self.cols);
        m.data[..self.data.len()].copy_from_slice(&self.data);
        m.data[self.data.len()..].copy_from_slice(&other.data);
        m
    }

    /// Applies the same index permutation to rows and columns:
    /// `out[i][j] = self[perm[i]][perm[j]]`.
    pub fn permute_symmetric(&self, perm: &[usize]) -> BinaryMatrix {
        debug_assert_eq!(self.rows, self.cols);
        debug_assert_eq!(perm.len(), self.rows);
        let mut out = BinaryMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(perm[i], perm[j]) {
                    out.set(i, j, true);
                }
            }
        }
        out
    }
}
