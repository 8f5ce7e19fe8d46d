//! Square binary matrices stored as tuples of row integers.
//!
//! Row `i` (top row first) is the integer whose binary digits are the row's
//! entries. The column tuple uses the same packing on the transpose: column
//! `m` (leftmost first) is read top to bottom with the top row as the most
//! significant bit. With this convention, the column tuple of a matrix is the
//! row tuple of its transpose.

use std::fmt;

use serde::Serialize;

use crate::bitcore::{check_width, full_mask, to_binary_string, BitMask};
use crate::error::{invalid, Result};

/// Column integers of the `n`×`n` matrix with the given rows, leftmost first.
///
/// Column `m` (0-based) collects bit `n-1-m` of every row; row `i` lands at
/// bit `n-1-i`.
pub fn columns_of(rows: &[BitMask], n: u32) -> Vec<BitMask> {
    let n = n as usize;
    let mut cols = vec![0; n];
    for (i, &x) in rows.iter().enumerate() {
        let row_bit = 1 << (n - 1 - i);
        for (m, col) in cols.iter_mut().enumerate() {
            if (x >> (n - 1 - m)) & 1 == 1 {
                *col |= row_bit;
            }
        }
    }
    cols
}

/// The canonical-element test on raw rows.
///
/// Rows must be nondecreasing; walking columns from left to right, every
/// column must have exactly `k` ones and must not be smaller than the column
/// before it. Row popcounts are the caller's responsibility.
pub fn is_canonical_rows(rows: &[BitMask], n: u32, k: u32) -> bool {
    if rows.windows(2).any(|w| w[0] > w[1]) {
        return false;
    }
    let mut prev = 0;
    for bit in (0..n).rev() {
        let mut col = 0;
        for (i, &x) in rows.iter().enumerate() {
            col |= ((x >> bit) & 1) << (n as usize - 1 - i);
        }
        if col < prev || col.count_ones() != k {
            return false;
        }
        prev = col;
    }
    true
}

/// True iff every row and every column has exactly `k` ones.
pub fn is_member_rows(rows: &[BitMask], n: u32, k: u32) -> bool {
    rows.iter().all(|x| x.count_ones() == k)
        && columns_of(rows, n).iter().all(|y| y.count_ones() == k)
}

/// An `n`×`n` binary matrix as its tuple of row integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RowTuple {
    n: u32,
    rows: Vec<BitMask>,
}

impl RowTuple {
    /// Validates the dimension and that every row fits in `n` bits.
    pub fn new(n: u32, rows: Vec<BitMask>) -> Result<Self> {
        check_width(n)?;
        if rows.len() != n as usize {
            return Err(invalid!("expected {n} rows, got {}", rows.len()));
        }
        if let Some(bad) = rows.iter().find(|&&x| x > full_mask(n)) {
            return Err(invalid!("row {bad} does not fit in {n} bits"));
        }
        Ok(RowTuple { n, rows })
    }

    pub(crate) fn from_rows_unchecked(n: u32, rows: Vec<BitMask>) -> Self {
        debug_assert_eq!(rows.len(), n as usize);
        RowTuple { n, rows }
    }

    /// Builds a tuple from a 0/1 grid, one inner slice per row.
    pub fn from_grid(grid: &[Vec<u8>]) -> Result<Self> {
        let n = grid.len() as u32;
        let mut rows = Vec::with_capacity(grid.len());
        for line in grid {
            if line.len() != grid.len() {
                return Err(invalid!("grid is not square"));
            }
            let mut x = 0;
            for &b in line {
                if b > 1 {
                    return Err(invalid!("grid entry {b} is not 0 or 1"));
                }
                x = (x << 1) | b as BitMask;
            }
            rows.push(x);
        }
        RowTuple::new(n, rows)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn rows(&self) -> &[BitMask] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BitMask> {
        self.rows
    }

    /// Entry at `(row, col)`, both 0-based from the top-left corner.
    pub fn get(&self, row: usize, col: usize) -> u8 {
        ((self.rows[row] >> (self.n as usize - 1 - col)) & 1) as u8
    }

    /// Column integers, leftmost column first.
    pub fn columns(&self) -> Vec<BitMask> {
        columns_of(&self.rows, self.n)
    }

    pub fn transpose(&self) -> RowTuple {
        RowTuple {
            n: self.n,
            rows: self.columns(),
        }
    }

    pub fn is_member(&self, k: u32) -> bool {
        is_member_rows(&self.rows, self.n, k)
    }

    /// Rows nondecreasing, columns nondecreasing, every column with `k` ones.
    pub fn is_canonical(&self, k: u32) -> bool {
        is_canonical_rows(&self.rows, self.n, k)
    }

    /// One line of `n` binary digits per row.
    pub fn render(&self) -> String {
        let mut out = String::with_capacity((self.n as usize + 1) * self.n as usize);
        for &x in &self.rows {
            out.push_str(&to_binary_string(x, self.n));
            out.push('\n');
        }
        out
    }

    /// Applies a row permutation: row `i` of the result is row `perm[i]`.
    pub fn permute_rows(&self, perm: &[usize]) -> RowTuple {
        RowTuple {
            n: self.n,
            rows: perm.iter().map(|&i| self.rows[i]).collect(),
        }
    }

    /// Applies a column permutation: column `m` of the result is column
    /// `perm[m]` of `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> RowTuple {
        let n = self.n as usize;
        let rows = self
            .rows
            .iter()
            .map(|&x| {
                perm.iter().enumerate().fold(0, |acc, (m, &src)| {
                    acc | (((x >> (n - 1 - src)) & 1) << (n - 1 - m))
                })
            })
            .collect();
        RowTuple { n: self.n, rows }
    }
}

impl fmt::Display for RowTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, x) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(">")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitcore::k_subset_masks;
    use rand::{Rng, SeedableRng};

    fn t(n: u32, rows: &[u64]) -> RowTuple {
        RowTuple::new(n, rows.to_vec()).unwrap()
    }

    // Independent transpose through an explicit grid.
    fn grid_transpose(m: &RowTuple) -> RowTuple {
        let n = m.n() as usize;
        let grid: Vec<Vec<u8>> = (0..n).map(|c| (0..n).map(|r| m.get(r, c)).collect()).collect();
        RowTuple::from_grid(&grid).unwrap()
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(t(2, &[1, 2]).transpose(), t(2, &[1, 2]));
        assert_eq!(t(2, &[3, 0]).transpose(), t(2, &[2, 2]));
        assert_eq!(t(3, &[4, 2, 1]).transpose(), t(3, &[4, 2, 1]));
    }

    #[test]
    fn columns_follow_bit_convention() {
        // rows 110, 011, 101 -> columns read top-down 101, 110, 011
        assert_eq!(t(3, &[6, 3, 5]).columns(), vec![5, 6, 3]);
    }

    #[test]
    fn membership_examples() {
        assert!(t(3, &[1, 2, 4]).is_member(1));
        assert!(!t(3, &[1, 1, 4]).is_member(1));
        assert!(t(2, &[3, 3]).is_member(2));
    }

    #[test]
    fn canonical_examples() {
        assert!(t(3, &[1, 2, 4]).is_canonical(1));
        assert!(!t(3, &[2, 1, 4]).is_canonical(1));
        assert!(!t(3, &[4, 2, 1]).is_canonical(1));
        // sorted rows but column popcounts off
        assert!(!t(3, &[1, 1, 2]).is_canonical(1));
    }

    #[test]
    fn render_examples() {
        assert_eq!(t(2, &[1, 2]).render(), "01\n10\n");
        assert_eq!(t(1, &[1]).render(), "1\n");
        assert_eq!(t(3, &[7, 7, 7]).render(), "111\n111\n111\n");
        assert_eq!(t(3, &[1, 2, 4]).to_string(), "<1, 2, 4>");
    }

    #[test]
    fn rejects_malformed_tuples() {
        assert!(RowTuple::new(2, vec![1]).is_err());
        assert!(RowTuple::new(2, vec![1, 4]).is_err());
        assert!(RowTuple::new(0, vec![]).is_err());
        assert!(RowTuple::from_grid(&[vec![0, 2], vec![1, 0]]).is_err());
    }

    #[test]
    fn transpose_involution_exhaustive_small() {
        for n in 1..=3u32 {
            let total = 1u64 << (n * n);
            for code in 0..total {
                let rows: Vec<u64> = (0..n).map(|i| (code >> (i * n)) & full_mask(n)).collect();
                let m = t(n, &rows);
                let tr = m.transpose();
                assert_eq!(tr, grid_transpose(&m));
                assert_eq!(tr.transpose(), m);
            }
        }
    }

    #[test]
    fn transpose_involution_random() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(17);
        for _ in 0..100_000 {
            let n = rng.gen_range(4..=8u32);
            let rows: Vec<u64> = (0..n).map(|_| rng.gen::<u64>() & full_mask(n)).collect();
            let m = t(n, &rows);
            assert_eq!(m.transpose().transpose(), m);
        }
    }

    #[test]
    fn membership_and_canonicity_are_transpose_symmetric() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(99);
        for n in 2..=6u32 {
            for k in 1..n {
                let pool = k_subset_masks(n, k).unwrap();
                for _ in 0..2_000 {
                    let mut rows: Vec<u64> =
                        (0..n).map(|_| pool.masks()[rng.gen_range(0..pool.len())]).collect();
                    if rng.gen_bool(0.5) {
                        rows.sort_unstable();
                    }
                    let m = t(n, &rows);
                    assert_eq!(m.is_member(k), m.transpose().is_member(k));
                    if m.is_canonical(k) {
                        assert!(m.is_member(k));
                        assert!(m.transpose().is_canonical(k));
                    }
                }
            }
        }
    }

    #[test]
    fn sorting_preserves_membership() {
        // a member of the (4, 2) set with unsorted rows and columns
        let m = t(4, &[0b1010, 0b0101, 0b1100, 0b0011]);
        assert!(m.is_member(2));
        let mut rows = m.rows().to_vec();
        rows.sort_unstable();
        let sorted_rows = t(4, &rows);
        assert!(sorted_rows.is_member(2));
        let mut cols = sorted_rows.columns();
        cols.sort_unstable();
        let sorted_both = t(4, &cols).transpose();
        assert!(sorted_both.is_member(2));
    }

    #[test]
    fn permutations_match_grid_semantics() {
        let m = t(3, &[0b110, 0b011, 0b101]);
        let p = m.permute_columns(&[2, 0, 1]);
        for r in 0..3 {
            assert_eq!(p.get(r, 0), m.get(r, 2));
            assert_eq!(p.get(r, 1), m.get(r, 0));
            assert_eq!(p.get(r, 2), m.get(r, 1));
        }
        assert_eq!(m.permute_rows(&[2, 0, 1]).rows(), &[0b101, 0b110, 0b011]);
    }
}
