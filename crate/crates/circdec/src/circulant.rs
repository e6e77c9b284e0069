//! Circulant matrices and their pi-permutation decomposition into
//! block-circulant arrays, plus recomposition, sectioning, masking and
//! subarray extraction.
//!
//! The cyclic-shift convention throughout is one place to the right for rows.
//! Blocks of a decomposed array are never stored densely: the c x c grid is
//! fully determined by the c stored sections and the doubly cyclic pattern,
//! so a block is just a (section index, shift flag) descriptor.

use crate::gf::{BinaryMatrix, BitVec, Fe};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CirculantError {
    #[error("{c} is not a proper factor of {n}")]
    NotAProperFactor { n: usize, c: usize },
    #[error("section index {index} out of range (c = {c})")]
    SectionOutOfRange { index: usize, c: usize },
    #[error("duplicate section index {0}")]
    DuplicateIndex(usize),
    #[error("empty section list")]
    EmptySectionList,
    #[error("block ({row},{col}) violates the doubly cyclic pattern: {detail}")]
    PatternViolation {
        row: usize,
        col: usize,
        detail: String,
    },
    #[error("window of {rows}x{cols} blocks at origin ({r0},{c0}) overflows a {c}x{c} array")]
    WindowOverflow {
        rows: usize,
        cols: usize,
        r0: usize,
        c0: usize,
        c: usize,
    },
    #[error("dense materialization needs {needed} bytes, over the {cap} byte cap")]
    MemoryCap { needed: usize, cap: usize },
    #[error("generator length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("masking matrix is {zr}x{zc} but the window is {wr}x{wc}")]
    MaskShape {
        zr: usize,
        zc: usize,
        wr: usize,
        wc: usize,
    },
}

/// Default cap on dense materialization (2 GiB).
pub const DEFAULT_MATERIALIZE_CAP: usize = 2 << 30;

/// Matrix entry type: GF(2) bits (`u8`) or general field elements (`Fe`).
pub trait Scalar: Copy + Eq + std::fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
}

impl Scalar for u8 {
    fn zero() -> u8 {
        0
    }
}

impl Scalar for Fe {
    fn zero() -> Fe {
        Fe::Zero
    }
}

/// Whether a circulant was generated from its first row (each row the right
/// cyclic-shift of the row above) or
/// from its first column (each column the downward shift of the column on its
/// left). Internally the generator is always stored in row convention; the
/// tag records provenance for constructions that are defined column-wise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Rows,
    Columns,
}

/// Square circulant over a field, determined by its generator (first row).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circulant<T: Scalar> {
    generator: Vec<T>,
    orientation: Orientation,
}

impl<T: Scalar> Circulant<T> {
    pub fn new(generator: Vec<T>) -> Circulant<T> {
        Circulant {
            generator,
            orientation: Orientation::Rows,
        }
    }

    /// Builds the circulant whose j-th *column* is the j-th downward
    /// cyclic-shift of `v`; stored in row convention as the index-reversed
    /// generator.
    pub fn from_columns(v: &[T]) -> Circulant<T> {
        let n = v.len();
        let generator = (0..n).map(|t| v[(n - t) % n]).collect();
        Circulant {
            generator,
            orientation: Orientation::Columns,
        }
    }

    pub fn n(&self) -> usize {
        self.generator.len()
    }

    pub fn generator(&self) -> &[T] {
        &self.generator
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Entry (i, j) = w[(j - i) mod n].
    pub fn entry(&self, i: usize, j: usize) -> T {
        let n = self.n();
        self.generator[(j % n + n - i % n) % n]
    }

    /// Weight of the generator (equals every row and column weight).
    pub fn weight(&self) -> usize {
        self.generator.iter().filter(|x| !x.is_zero()).count()
    }

    /// The circulant with all rows cyclically shifted one place right.
    pub fn shifted_once(&self) -> Circulant<T> {
        let n = self.n();
        let mut g = Vec::with_capacity(n);
        for t in 0..n {
            g.push(self.generator[(t + n - 1) % n]);
        }
        Circulant {
            generator: g,
            orientation: self.orientation,
        }
    }
}

impl Circulant<u8> {
    /// Dense bit-packed form, guarded by the materialization cap.
    pub fn to_binary_matrix(&self, cap: Option<usize>) -> Result<BinaryMatrix, CirculantError> {
        let n = self.n();
        check_cap(n, n, cap)?;
        let mut m = BinaryMatrix::zeros(n, n);
        for i in 0..n {
            for (t, &g) in self.generator.iter().enumerate() {
                if g != 0 {
                    m.set(i, (t + i) % n, true);
                }
            }
        }
        Ok(m)
    }
}

fn check_cap(rows: usize, cols: usize, cap: Option<usize>) -> Result<(), CirculantError> {
    let cap = cap.unwrap_or(DEFAULT_MATERIALIZE_CAP);
    let needed = rows * cols.div_ceil(64) * 8;
    if needed > cap {
        return Err(CirculantError::MemoryCap { needed, cap });
    }
    Ok(())
}

/// The interleaving permutation pi = [pi0, pi0+1, ...,
/// pi0+c-1] with pi0 = [0, c, 2c, ..., (l-1)c]. Applying it to both the rows
/// and columns of an n x n circulant produces a c x c array of l x l
/// circulants.
pub fn pi_permutation(n: usize, c: usize) -> Result<Vec<usize>, CirculantError> {
    if c <= 1 || c >= n || n % c != 0 {
        return Err(CirculantError::NotAProperFactor { n, c });
    }
    let l = n / c;
    let mut perm = Vec::with_capacity(n);
    for off in 0..c {
        for u in 0..l {
            perm.push(u * c + off);
        }
    }
    Ok(perm)
}

/// Inverse of `pi_permutation(n, c)`.
pub fn pi_inverse(n: usize, c: usize) -> Result<Vec<usize>, CirculantError> {
    let pi = pi_permutation(n, c)?;
    let mut inv = vec![0usize; n];
    for (i, &p) in pi.iter().enumerate() {
        inv[p] = i;
    }
    Ok(inv)
}

/// The i-th cyclic section of w under n = c*l: (w_i, w_{c+i}, ..., w_{(l-1)c+i}).
pub fn cyclic_section<T: Scalar>(w: &[T], c: usize, i: usize) -> Result<Vec<T>, CirculantError> {
    let n = w.len();
    if c == 0 || n % c != 0 {
        return Err(CirculantError::NotAProperFactor { n, c });
    }
    if i >= c {
        return Err(CirculantError::SectionOutOfRange { index: i, c });
    }
    let l = n / c;
    Ok((0..l).map(|u| w[u * c + i]).collect())
}

/// c x c array of l x l circulant blocks in the doubly cyclic pattern: block
/// (r, t) holds section (t - r mod c), shifted once exactly when t < r.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCirculantArray<T: Scalar> {
    c: usize,
    l: usize,
    sections: Vec<Vec<T>>,
    orientation: Orientation,
}

/// Descriptor of one block of the array.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockRef {
    pub section: usize,
    pub shifted: bool,
}

/// Masking specification: zero out whole sections of a block-circulant array
/// (type-3 masking), or multiply a CPM subarray entrywise by a binary matrix.
#[derive(Debug, Clone)]
pub enum MaskPattern {
    Sections(Vec<usize>),
    Matrix(BinaryMatrix),
}

impl<T: Scalar> BlockCirculantArray<T> {
    /// Decomposes an n x n circulant into the c x c doubly cyclic array.
    pub fn decompose(w: &Circulant<T>, c: usize) -> Result<Self, CirculantError> {
        let n = w.n();
        if c <= 1 || c >= n || n % c != 0 {
            return Err(CirculantError::NotAProperFactor { n, c });
        }
        let sections = (0..c)
            .map(|i| cyclic_section(w.generator(), c, i))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BlockCirculantArray {
            c,
            l: n / c,
            sections,
            orientation: w.orientation(),
        })
    }

    /// Builds an array from explicit sections and a block grid, validating
    /// the doubly cyclic pattern. A zero section matches either shift flag.
    pub fn from_grid(
        sections: Vec<Vec<T>>,
        grid: &[Vec<BlockRef>],
    ) -> Result<Self, CirculantError> {
        let c = sections.len();
        if c == 0 {
            return Err(CirculantError::EmptySectionList);
        }
        let l = sections[0].len();
        for s in &sections {
            if s.len() != l {
                return Err(CirculantError::LengthMismatch {
                    expected: l,
                    got: s.len(),
                });
            }
        }
        if grid.len() != c {
            return Err(CirculantError::LengthMismatch {
                expected: c,
                got: grid.len(),
            });
        }
        for (r, row) in grid.iter().enumerate() {
            if row.len() != c {
                return Err(CirculantError::LengthMismatch {
                    expected: c,
                    got: row.len(),
                });
            }
            for (t, b) in row.iter().enumerate() {
                let want_section = (t + c - r % c) % c;
                let want_shift = t < r;
                if b.section >= c {
                    return Err(CirculantError::SectionOutOfRange {
                        index: b.section,
                        c,
                    });
                }
                if b.section != want_section {
                    return Err(CirculantError::PatternViolation {
                        row: r,
                        col: t,
                        detail: format!(
                            "holds section {}, pattern requires section {}",
                            b.section, want_section
                        ),
                    });
                }
                let zero_block = sections[b.section].iter().all(|x| x.is_zero());
                if b.shifted != want_shift && !zero_block {
                    return Err(CirculantError::PatternViolation {
                        row: r,
                        col: t,
                        detail: format!(
                            "shift flag {}, pattern requires {}",
                            b.shifted, want_shift
                        ),
                    });
                }
            }
        }
        Ok(BlockCirculantArray {
            c,
            l,
            sections,
            orientation: Orientation::Rows,
        })
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn n(&self) -> usize {
        self.c * self.l
    }

    pub fn section(&self, i: usize) -> &[T] {
        &self.sections[i]
    }

    pub fn sections(&self) -> &[Vec<T>] {
        &self.sections
    }

    /// Descriptor of block (r, t) per the doubly cyclic pattern.
    pub fn block_ref(&self, r: usize, t: usize) -> BlockRef {
        BlockRef {
            section: (t + self.c - r % self.c) % self.c,
            shifted: t < r,
        }
    }

    /// Generator of block (r, t) as an l x l circulant (section, shifted once
    /// if the pattern says so).
    pub fn block_circulant(&self, r: usize, t: usize) -> Circulant<T> {
        let b = self.block_ref(r, t);
        let base = Circulant::new(self.sections[b.section].clone());
        if b.shifted {
            base.shifted_once()
        } else {
            base
        }
    }

    /// Inverse of `decompose`: recompose(decompose(W, c)) == W.
    pub fn recompose(&self) -> Circulant<T> {
        let n = self.n();
        let mut gen = vec![T::zero(); n];
        for (i, section) in self.sections.iter().enumerate() {
            for (u, &x) in section.iter().enumerate() {
                gen[u * self.c + i] = x;
            }
        }
        Circulant {
            generator: gen,
            orientation: self.orientation,
        }
    }

    /// Replaces the named sections (every occurrence, shifted copies
    /// included) by zero vectors. The result still satisfies the doubly
    /// cyclic pattern.
    pub fn mask_sections(&self, pattern: &MaskPattern) -> Result<Self, CirculantError> {
        let indices = match pattern {
            MaskPattern::Sections(idx) => idx,
            MaskPattern::Matrix(_) => {
                return Err(CirculantError::PatternViolation {
                    row: 0,
                    col: 0,
                    detail: "matrix masking applies to CPM subarrays; see geometry::mask_product"
                        .to_string(),
                })
            }
        };
        let mut out = self.clone();
        for &i in indices {
            if i >= self.c {
                return Err(CirculantError::SectionOutOfRange { index: i, c: self.c });
            }
            out.sections[i] = vec![T::zero(); self.l];
        }
        Ok(out)
    }
}

impl BlockCirculantArray<u8> {
    /// Dense s x t block window starting at block origin (r0, c0).
    pub fn subarray(
        &self,
        rows: usize,
        cols: usize,
        origin: (usize, usize),
        cap: Option<usize>,
    ) -> Result<BinaryMatrix, CirculantError> {
        let (r0, c0) = origin;
        if r0 + rows > self.c || c0 + cols > self.c {
            return Err(CirculantError::WindowOverflow {
                rows,
                cols,
                r0,
                c0,
                c: self.c,
            });
        }
        check_cap(rows * self.l, cols * self.l, cap)?;
        let mut m = BinaryMatrix::zeros(rows * self.l, cols * self.l);
        for br in 0..rows {
            for bc in 0..cols {
                let block = self.block_circulant(r0 + br, c0 + bc);
                for i in 0..self.l {
                    for (t, &g) in block.generator().iter().enumerate() {
                        if g != 0 {
                            m.set(br * self.l + i, bc * self.l + (t + i) % self.l, true);
                        }
                    }
                }
            }
        }
        Ok(m)
    }

    /// The whole array as a dense matrix.
    pub fn materialize(&self, cap: Option<usize>) -> Result<BinaryMatrix, CirculantError> {
        self.subarray(self.c, self.c, (0, 0), cap)
    }

    /// Vertical stack of the plain circulants of the given sections
    /// (the H_col construction).
    pub fn stack_sections(
        &self,
        indices: &[usize],
        cap: Option<usize>,
    ) -> Result<BinaryMatrix, CirculantError> {
        if indices.is_empty() {
            return Err(CirculantError::EmptySectionList);
        }
        let mut seen = vec![false; self.c];
        for &i in indices {
            if i >= self.c {
                return Err(CirculantError::SectionOutOfRange { index: i, c: self.c });
            }
            if seen[i] {
                return Err(CirculantError::DuplicateIndex(i));
            }
            seen[i] = true;
        }
        check_cap(indices.len() * self.l, self.l, cap)?;
        let mut m = BinaryMatrix::zeros(indices.len() * self.l, self.l);
        for (k, &i) in indices.iter().enumerate() {
            for row in 0..self.l {
                for (t, &g) in self.sections[i].iter().enumerate() {
                    if g != 0 {
                        m.set(k * self.l + row, (t + row) % self.l, true);
                    }
                }
            }
        }
        Ok(m)
    }

    /// Sections as plain-text vectors, one per line.
    pub fn sections_to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.sections {
            let line: Vec<String> = s.iter().map(|b| b.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Applies a permutation to a bit vector: `out[i] = v[perm[i]]`. Composing a
/// codeword with `pi_permutation` this way commutes with the null spaces of
/// the circulant and its decomposed array.
pub fn permute_bits(v: &BitVec, perm: &[usize]) -> BitVec {
    let mut out = BitVec::zeros(v.len());
    for (i, &p) in perm.iter().enumerate() {
        if v.get(p) {
            out.set(i, true);
        }
    }
    out
}
