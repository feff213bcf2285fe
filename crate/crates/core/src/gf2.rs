//! Bit-packed GF(2) vectors and matrices.
//!
//! A vector of `GF(2)^r` is a machine word whose bit `i` holds the entry in
//! row `i`, counting rows from the bottom. This matches the convention used for
//! integer-encoded columns: the least significant bit is the bottom row.
//!
//! A [`GF2Matrix`] is an ordered list of such columns. Column order matters:
//! columns are the ground-set elements of the matroid they represent. Sets of
//! columns (cycles, row vectors) are `u64` masks over column indices, so every
//! matrix here has at most 64 columns.

use crate::error::{Error, Result};

/// Largest supported row count.
pub const MAX_WIDTH: usize = 31;
/// Largest supported column count.
pub const MAX_COLUMNS: usize = 64;

/// A set of column indices, bit `j` standing for column `j`.
pub type ColumnSet = u64;

/// A vector of `GF(2)^width`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GF2Vector {
    bits: u32,
    width: u8,
}

impl GF2Vector {
    pub fn new(bits: u32, width: usize) -> Result<Self> {
        if width == 0 || width > MAX_WIDTH {
            return Err(Error::WidthOutOfRange(width));
        }
        if u64::from(bits) >= 1u64 << width {
            return Err(Error::PointOutOfRange { value: u64::from(bits), width });
        }
        Ok(Self { bits, width: width as u8 })
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn width(self) -> usize {
        usize::from(self.width)
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    /// Entry in row `row`, rows counted from the bottom.
    pub fn get(self, row: usize) -> bool {
        (self.bits >> row) & 1 == 1
    }
}

impl std::ops::BitXor for GF2Vector {
    type Output = GF2Vector;

    fn bitxor(self, rhs: GF2Vector) -> GF2Vector {
        debug_assert_eq!(self.width, rhs.width);
        GF2Vector { bits: self.bits ^ rhs.bits, width: self.width }
    }
}

/// An ordered list of columns of equal width.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GF2Matrix {
    width: usize,
    columns: Vec<u32>,
}

impl GF2Matrix {
    pub fn new(width: usize, columns: Vec<u32>) -> Result<Self> {
        if width > MAX_WIDTH {
            return Err(Error::WidthOutOfRange(width));
        }
        if columns.len() > MAX_COLUMNS {
            return Err(Error::TooManyElements(columns.len()));
        }
        if let Some(&bad) = columns.iter().find(|&&c| u64::from(c) >= 1u64 << width) {
            return Err(Error::PointOutOfRange { value: u64::from(bad), width });
        }
        Ok(Self { width, columns })
    }

    /// Builds a matrix from row vectors, each a mask over `ncols` columns.
    /// Row 0 is the bottom row.
    pub fn from_rows(rows: &[ColumnSet], ncols: usize) -> Result<Self> {
        let mut columns = vec![0u32; ncols];
        for (i, &row) in rows.iter().enumerate() {
            for (j, col) in columns.iter_mut().enumerate() {
                if (row >> j) & 1 == 1 {
                    *col |= 1 << i;
                }
            }
        }
        Self::new(rows.len(), columns)
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn columns(&self) -> &[u32] {
        &self.columns
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> GF2Vector {
        GF2Vector { bits: self.columns[j], width: self.width.max(1) as u8 }
    }

    /// Row vectors as masks over columns; index 0 is the bottom row.
    pub fn rows(&self) -> Vec<ColumnSet> {
        (0..self.width)
            .map(|i| self.columns.iter().enumerate().fold(0u64, |acc, (j, &c)| acc | (u64::from((c >> i) & 1) << j)))
            .collect()
    }
}

/// Incremental XOR basis over words. Pivots are the lowest set bit of each
/// stored vector, and every stored vector is reduced against earlier pivots.
#[derive(Clone, Debug, Default)]
pub struct Echelon<T> {
    rows: Vec<(T, T)>,
}

macro_rules! echelon_impl {
    ($t:ty) => {
        impl Echelon<$t> {
            pub fn new() -> Self {
                Self { rows: Vec::new() }
            }

            #[inline]
            pub fn rank(&self) -> usize {
                self.rows.len()
            }

            /// Reduces `v` against the stored pivots and returns the remainder.
            #[inline]
            pub fn reduce(&self, mut v: $t) -> $t {
                for &(row, pivot) in &self.rows {
                    if v & pivot != 0 {
                        v ^= row;
                    }
                }
                v
            }

            /// Adds `v` to the span; returns `false` if it was already inside.
            #[inline]
            pub fn insert(&mut self, v: $t) -> bool {
                let r = self.reduce(v);
                if r == 0 {
                    return false;
                }
                let pivot = r & r.wrapping_neg();
                for (row, _) in self.rows.iter_mut() {
                    if *row & pivot != 0 {
                        *row ^= r;
                    }
                }
                self.rows.push((r, pivot));
                true
            }

            #[inline]
            pub fn contains(&self, v: $t) -> bool {
                self.reduce(v) == 0
            }

            /// Fully reduced rows sorted by pivot: a canonical description of the span.
            pub fn canonical_rows(&self) -> Vec<$t> {
                let mut rows: Vec<(&$t, &$t)> = self.rows.iter().map(|(r, p)| (p, r)).collect();
                rows.sort();
                rows.into_iter().map(|(_, r)| *r).collect()
            }
        }
    };
}

echelon_impl!(u32);
echelon_impl!(u64);

/// Rank of a list of columns.
pub fn rank_of_columns(columns: &[u32]) -> usize {
    let mut e = Echelon::<u32>::new();
    for &c in columns {
        e.insert(c);
    }
    e.rank()
}

/// Dimension of the column span over GF(2).
pub fn rank(m: &GF2Matrix) -> usize {
    rank_of_columns(m.columns())
}

/// A basis of `{x : m x = 0}`, each vector a mask over the columns of `m`.
///
/// Columns are processed left to right; every dependent column contributes the
/// one null vector that expresses it through the earlier pivot columns, so the
/// output is deterministic and has size `ncols - rank`.
pub fn null_space_basis(m: &GF2Matrix) -> Vec<ColumnSet> {
    // (reduced vector, pivot bit, combination of columns giving it)
    let mut rows: Vec<(u32, u32, ColumnSet)> = Vec::with_capacity(m.width());
    let mut basis = Vec::new();
    for (j, &c) in m.columns().iter().enumerate() {
        let mut v = c;
        let mut combo: ColumnSet = 1 << j;
        for &(row, pivot, rc) in &rows {
            if v & pivot != 0 {
                v ^= row;
                combo ^= rc;
            }
        }
        if v == 0 {
            basis.push(combo);
        } else {
            let pivot = v & v.wrapping_neg();
            rows.push((v, pivot, combo));
        }
    }
    basis
}

/// A matrix whose row space is the orthogonal complement of the row space of
/// `m`. Column `j` of the result corresponds to column `j` of `m`.
pub fn orthogonal_complement(m: &GF2Matrix) -> GF2Matrix {
    let basis = null_space_basis(m);
    GF2Matrix::from_rows(&basis, m.ncols()).expect("complement fits: rows ≤ columns ≤ 64")
}

/// Whether two matrices with the same column count have the same row space.
pub fn same_row_space(a: &GF2Matrix, b: &GF2Matrix) -> bool {
    let span = |m: &GF2Matrix| {
        let mut e = Echelon::<u64>::new();
        for r in m.rows() {
            e.insert(r);
        }
        e.canonical_rows()
    };
    a.ncols() == b.ncols() && span(a) == span(b)
}

/// Re-expresses `columns` in coordinates of their own span.
///
/// The basis is the first maximal independent subsequence of the columns; the
/// `i`-th basis column becomes the unit vector in row `s - 1 - i` (top row
/// first), `s` being the rank. Returns `(s, new_columns)`.
pub fn compact_columns(columns: &[u32]) -> (usize, Vec<u32>) {
    // (reduced vector, pivot, combination over basis indices)
    let mut rows: Vec<(u32, u32, u32)> = Vec::new();
    let mut coords = Vec::with_capacity(columns.len());
    for &c in columns {
        let mut v = c;
        let mut combo = 0u32;
        for &(row, pivot, rc) in &rows {
            if v & pivot != 0 {
                v ^= row;
                combo ^= rc;
            }
        }
        if v != 0 {
            let idx = rows.len();
            let pivot = v & v.wrapping_neg();
            rows.push((v, pivot, combo ^ (1 << idx)));
            combo = 1 << idx;
        }
        coords.push(combo);
    }
    let s = rows.len();
    let out = coords
        .into_iter()
        .map(|combo| (0..s).filter(|&i| (combo >> i) & 1 == 1).fold(0u32, |acc, i| acc | 1 << (s - 1 - i)))
        .collect();
    (s, out)
}

/// Parity of the set bits of `x`.
#[inline]
pub fn parity(x: u64) -> bool {
    x.count_ones() & 1 == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ag32() -> GF2Matrix {
        GF2Matrix::new(4, vec![8, 4, 2, 1, 7, 11, 13, 14]).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&ag32()), 4);
        assert_eq!(rank(&GF2Matrix::new(4, vec![]).unwrap()), 0);
        assert_eq!(rank(&GF2Matrix::new(4, vec![1, 2, 3]).unwrap()), 2);
    }

    #[test]
    fn null_space_examples() {
        assert_eq!(null_space_basis(&ag32()).len(), 4);
        assert_eq!(null_space_basis(&GF2Matrix::new(2, vec![1, 1]).unwrap()), vec![0b11]);
        let k4 = GF2Matrix::new(3, vec![4, 2, 1, 6, 3, 5]).unwrap();
        assert_eq!(rank(&k4), 3);
        assert_eq!(null_space_basis(&k4).len(), 3);
    }

    #[test]
    fn complement_of_standard_form() {
        // [I_4 | A] against [A^T | I_4]
        let m = ag32();
        let comp = orthogonal_complement(&m);
        assert_eq!(comp.width(), 4);
        let a_cols = [7u32, 11, 13, 14];
        // rows of [I|A]: row i (bit i) has a one in column (3 - i) and in each A column with bit i.
        let mut expected_rows = Vec::new();
        for (k, &ac) in a_cols.iter().enumerate() {
            // row k of [A^T | I]: entries A^T[k][j] = bit (3-j) of column k of A ... built by orthogonality below
            let mut row = 1u64 << (4 + k);
            for j in 0..4 {
                if (ac >> (3 - j)) & 1 == 1 {
                    row |= 1 << j;
                }
            }
            expected_rows.push(row);
        }
        let expected = GF2Matrix::from_rows(&expected_rows, 8).unwrap();
        assert!(same_row_space(&comp, &expected));
    }

    #[test]
    fn complement_of_zero_rows_is_everything() {
        let m = GF2Matrix::new(0, vec![0; 5]).unwrap();
        let comp = orthogonal_complement(&m);
        assert_eq!(comp.width(), 5);
        assert_eq!(rank(&comp), 5);
    }

    #[test]
    fn compact_puts_first_basis_column_on_top() {
        let (s, cols) = compact_columns(&[0b10000, 0b00100, 0b10100, 0]);
        assert_eq!(s, 2);
        assert_eq!(cols, vec![0b10, 0b01, 0b11, 0]);
    }

    #[test]
    fn vector_range_checked() {
        assert!(GF2Vector::new(16, 4).is_err());
        assert!(GF2Vector::new(15, 4).is_ok());
        assert!(GF2Vector::new(0, 0).is_err());
    }
}
