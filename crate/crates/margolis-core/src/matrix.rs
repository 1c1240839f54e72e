//! Dense bit-packed linear algebra over F2.
//!
//! Rows are `u64` words; elimination picks the first set bit as pivot. The
//! graded bases this engine produces stay in the low thousands, where dense
//! packed elimination is fast enough and simple to make deterministic.

use alloc::vec;
use alloc::vec::Vec;

/// Words needed for `bits` columns.
fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

#[derive(Clone, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    width: usize,
    data: Vec<u64>,
}

impl F2Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        let width = words_for(cols);
        F2Matrix {
            rows,
            cols,
            width,
            data: vec![0; rows * width],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.width..(r + 1) * self.width]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.width..(r + 1) * self.width]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.width + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        let word = &mut self.data[r * self.width + c / 64];
        if value {
            *word |= 1 << (c % 64);
        } else {
            *word &= !(1 << (c % 64));
        }
    }

    pub fn push_row(&mut self, row: &[u64]) {
        assert_eq!(row.len(), self.width);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    /// dst ^= src, as rows.
    pub fn xor_row_into(&mut self, src: usize, dst: usize) {
        assert_ne!(src, dst);
        let (s, d) = (src * self.width, dst * self.width);
        for k in 0..self.width {
            let v = self.data[s + k];
            self.data[d + k] ^= v;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn row_is_zero(&self, r: usize) -> bool {
        self.row(r).iter().all(|&w| w == 0)
    }

    /// In-place reduced row echelon form; returns the pivot columns in order.
    /// Zero rows sink to the bottom. The result is the canonical RREF of the
    /// row space.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..self.cols {
            let Some(pivot) = (next_row..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.swap_rows(pivot, next_row);
            for r in 0..self.rows {
                if r != next_row && self.get(r, col) {
                    self.xor_row_into(next_row, r);
                }
            }
            pivots.push(col);
            next_row += 1;
            if next_row == self.rows {
                break;
            }
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.width {
            self.data.swap(a * self.width + k, b * self.width + k);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{ v : sum_r v_r * row_r = 0 }`, i.e. the kernel of the map
    /// sending coefficient vectors over the rows to their combination.
    /// Returned in RREF over the row coordinates.
    pub fn row_combination_kernel(&self) -> F2Matrix {
        // augment [M | I] and eliminate on the M part only
        let aug_cols = self.cols + self.rows;
        let mut aug = F2Matrix::zero(self.rows, aug_cols);
        for r in 0..self.rows {
            let src = self.row(r);
            aug.row_mut(r)[..self.width].copy_from_slice(src);
            // mask off any stray high bits beyond self.cols
            aug.set(r, self.cols + r, true);
        }
        let mut next_row = 0;
        for col in 0..self.cols {
            let Some(pivot) = (next_row..aug.rows).find(|&r| aug.get(r, col)) else {
                continue;
            };
            aug.swap_rows(pivot, next_row);
            for r in 0..aug.rows {
                if r != next_row && aug.get(r, col) {
                    aug.xor_row_into(next_row, r);
                }
            }
            next_row += 1;
            if next_row == aug.rows {
                break;
            }
        }
        let mut kernel = F2Matrix::zero(0, self.rows);
        for r in next_row..aug.rows {
            debug_assert!(aug.row(r)[..self.width]
                .iter()
                .enumerate()
                .all(|(k, &w)| w & col_mask(self.cols, k) == 0));
            let mut row = vec![0u64; words_for(self.rows)];
            for c in 0..self.rows {
                if aug.get(r, self.cols + c) {
                    row[c / 64] |= 1 << (c % 64);
                }
            }
            kernel.push_row(&row);
        }
        kernel.rref();
        kernel
    }

    /// Matrix product, rows of `self` recombined through `rhs`.
    pub fn multiply(&self, rhs: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = F2Matrix::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    let (orow, rrow) = (r * out.width, c * rhs.width);
                    for k in 0..rhs.width {
                        out.data[orow + k] ^= rhs.data[rrow + k];
                    }
                }
            }
        }
        out
    }
}

/// Bits of word `k` that lie inside a `cols`-wide row.
fn col_mask(cols: usize, k: usize) -> u64 {
    let lo = k * 64;
    if cols >= lo + 64 {
        !0
    } else if cols <= lo {
        0
    } else {
        (1u64 << (cols - lo)) - 1
    }
}

impl core::fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}", if self.get(r, c) { '1' } else { '0' })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Row space of a matrix held in RREF for repeated reductions against it.
pub struct EchelonForm {
    mat: F2Matrix,
    pivots: Vec<usize>,
}

impl EchelonForm {
    pub fn new(mut mat: F2Matrix) -> Self {
        let pivots = mat.rref();
        EchelonForm { mat, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce `v` (a row of the same column count) modulo the row space.
    pub fn reduce(&self, v: &mut [u64]) {
        for (r, &col) in self.pivots.iter().enumerate() {
            if v[col / 64] >> (col % 64) & 1 == 1 {
                for (k, &w) in self.mat.row(r).iter().enumerate() {
                    v[k] ^= w;
                }
            }
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut tmp = v.to_vec();
        self.reduce(&mut tmp);
        tmp.iter().all(|&w| w == 0)
    }
}
