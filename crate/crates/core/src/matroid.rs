//! Binary matroids given by a GF(2) representation.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::canon::{self, CanonicalKey};
use crate::error::{Error, Result};
use crate::gf2::{self, ColumnSet, Echelon, GF2Matrix, MAX_WIDTH};

/// A binary matroid: labelled columns of a fixed width.
///
/// Labels are opaque strings and must be distinct. Loops are zero columns and
/// parallel classes are runs of equal nonzero columns. The width may exceed the
/// rank; [`BinaryMatroid::compact`] restores `width == rank`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatroid {
    width: usize,
    labels: Vec<String>,
    columns: Vec<u32>,
}

impl fmt::Debug for BinaryMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryMatroid(width={}, ", self.width)?;
        f.debug_map().entries(self.labels.iter().zip(&self.columns)).finish()?;
        write!(f, ")")
    }
}

impl BinaryMatroid {
    pub fn new(width: usize, labels: Vec<String>, columns: Vec<u32>) -> Result<Self> {
        if labels.len() != columns.len() {
            return Err(Error::Invalid(format!("{} labels for {} columns", labels.len(), columns.len())));
        }
        // validates width and column range
        GF2Matrix::new(width, columns.clone())?;
        let mut seen = HashSet::with_capacity(labels.len());
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(BinaryMatroid { width, labels, columns })
    }

    /// Columns labelled `0, 1, 2, ...`.
    pub fn from_columns(width: usize, columns: Vec<u32>) -> Result<Self> {
        let labels = (0..columns.len()).map(|i| i.to_string()).collect();
        Self::new(width, labels, columns)
    }

    /// A simple matroid whose elements are labelled by their point values.
    pub fn from_points(width: usize, points: &[u32]) -> Result<Self> {
        let labels = points.iter().map(|p| p.to_string()).collect();
        Self::new(width, labels, points.to_vec())
    }

    pub fn from_key(key: &CanonicalKey) -> Self {
        Self::from_points(key.width(), key.points()).expect("canonical keys are valid point sets")
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn columns(&self) -> &[u32] {
        &self.columns
    }

    pub fn matrix(&self) -> GF2Matrix {
        GF2Matrix::new(self.width, self.columns.clone()).expect("validated on construction")
    }

    pub fn rank(&self) -> usize {
        gf2::rank_of_columns(&self.columns)
    }

    pub fn corank(&self) -> usize {
        self.len() - self.rank()
    }

    /// Full element set as a mask.
    pub fn ground_mask(&self) -> ColumnSet {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn mask_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<ColumnSet> {
        labels.iter().try_fold(0u64, |acc, l| Ok(acc | 1u64 << self.index_of(l.as_ref())?))
    }

    pub fn labels_of(&self, mask: ColumnSet) -> Vec<String> {
        (0..self.len()).filter(|&i| (mask >> i) & 1 == 1).map(|i| self.labels[i].clone()).collect()
    }

    pub fn rank_of<S: AsRef<str>>(&self, subset: &[S]) -> Result<usize> {
        Ok(self.rank_of_mask(self.mask_of(subset)?))
    }

    pub fn rank_of_mask(&self, mask: ColumnSet) -> usize {
        let mut e = Echelon::<u32>::new();
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            e.insert(self.columns[i]);
            m &= m - 1;
        }
        e.rank()
    }

    /// `r(X) + r(E - X) - r(M)`.
    pub fn lambda<S: AsRef<str>>(&self, subset: &[S]) -> Result<usize> {
        Ok(self.lambda_mask(self.mask_of(subset)?))
    }

    pub fn lambda_mask(&self, mask: ColumnSet) -> usize {
        let comp = self.ground_mask() & !mask;
        self.rank_of_mask(mask) + self.rank_of_mask(comp) - self.rank()
    }

    /// Keeps the elements in `keep`, in their original order.
    pub fn restrict_mask(&self, keep: ColumnSet) -> BinaryMatroid {
        let idx = (0..self.len()).filter(|&i| (keep >> i) & 1 == 1);
        let (labels, columns) = idx.map(|i| (self.labels[i].clone(), self.columns[i])).unzip();
        BinaryMatroid { width: self.width, labels, columns }
    }

    pub fn delete<S: AsRef<str>>(&self, labels: &[S]) -> Result<BinaryMatroid> {
        Ok(self.delete_mask(self.mask_of(labels)?))
    }

    pub fn delete_mask(&self, mask: ColumnSet) -> BinaryMatroid {
        self.restrict_mask(self.ground_mask() & !mask)
    }

    pub fn contract<S: AsRef<str>>(&self, labels: &[S]) -> Result<BinaryMatroid> {
        Ok(self.contract_mask(self.mask_of(labels)?))
    }

    /// Contracts the elements of `mask`: each non-loop contracted column is used
    /// as a pivot to clear its pivot row from every other column, and that row
    /// is then dropped. Contracting a loop just deletes it.
    pub fn contract_mask(&self, mask: ColumnSet) -> BinaryMatroid {
        let mut cols = self.columns.clone();
        let mut width = self.width;
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            let v = cols[i];
            if v == 0 {
                continue;
            }
            let pivot = v.trailing_zeros();
            for c in cols.iter_mut() {
                if (*c >> pivot) & 1 == 1 {
                    *c ^= v;
                }
                *c = drop_bit(*c, pivot);
            }
            width -= 1;
        }
        let keep = self.ground_mask() & !mask;
        let idx = (0..self.len()).filter(|&i| (keep >> i) & 1 == 1);
        let (labels, columns) = idx.map(|i| (self.labels[i].clone(), cols[i])).unzip();
        BinaryMatroid { width, labels, columns }
    }

    /// Removes loops and all but the first element of each parallel class.
    pub fn simplify(&self) -> BinaryMatroid {
        let mut seen = HashSet::new();
        let keep = (0..self.len())
            .filter(|&i| self.columns[i] != 0 && seen.insert(self.columns[i]))
            .fold(0u64, |acc, i| acc | 1 << i);
        self.restrict_mask(keep)
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = HashSet::new();
        self.columns.iter().all(|&c| c != 0 && seen.insert(c))
    }

    /// Re-expresses the columns in coordinates of their span, so that
    /// `width == rank`. Element order and labels are unchanged.
    pub fn compact(&self) -> BinaryMatroid {
        let (w, cols) = gf2::compact_columns(&self.columns);
        BinaryMatroid { width: w, labels: self.labels.clone(), columns: cols }
    }

    /// The dual, on the same labels; its representation spans the orthogonal
    /// complement of this one's row space.
    pub fn dual(&self) -> BinaryMatroid {
        let comp = gf2::orthogonal_complement(&self.matrix());
        BinaryMatroid { width: comp.width(), labels: self.labels.clone(), columns: comp.columns().to_vec() }
    }

    /// Appends a column.
    pub fn extend(&self, label: impl Into<String>, column: u32) -> Result<BinaryMatroid> {
        let mut labels = self.labels.clone();
        let mut columns = self.columns.clone();
        labels.push(label.into());
        columns.push(column);
        BinaryMatroid::new(self.width, labels, columns)
    }

    /// Re-embeds into `width` rows by zero-padding at the top.
    pub fn widen(&self, width: usize) -> Result<BinaryMatroid> {
        if width < self.width || width > MAX_WIDTH {
            return Err(Error::WidthOutOfRange(width));
        }
        Ok(BinaryMatroid { width, labels: self.labels.clone(), columns: self.columns.clone() })
    }

    /// Index triples of 3-element circuits.
    pub fn triangle_indices(&self) -> Vec<[usize; 3]> {
        let n = self.len();
        let c = &self.columns;
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for d in b + 1..n {
                    let (x, y, z) = (c[a], c[b], c[d]);
                    if x != 0 && y != 0 && z != 0 && x != y && x ^ y == z {
                        out.push([a, b, d]);
                    }
                }
            }
        }
        out
    }

    pub fn triangles(&self) -> Vec<Vec<String>> {
        self.triangle_indices().iter().map(|t| t.iter().map(|&i| self.labels[i].clone()).collect()).collect()
    }

    /// 3-element cocircuits.
    pub fn triad_indices(&self) -> Vec<[usize; 3]> {
        self.dual().triangle_indices()
    }

    pub fn triads(&self) -> Vec<Vec<String>> {
        self.dual().triangles()
    }

    /// Point set of a simple matroid.
    pub fn points(&self) -> Result<Vec<u32>> {
        if !self.is_simple() {
            return Err(Error::NotSimple);
        }
        Ok(self.columns.clone())
    }

    /// Canonical key of a simple matroid.
    pub fn canonical_key(&self) -> Result<CanonicalKey> {
        canon::canonical_key(&self.points()?, self.width)
    }

    /// Whether the columns agree label by label (after aligning element order).
    pub fn same_labelled(&self, other: &BinaryMatroid) -> bool {
        if self.len() != other.len() || self.width != other.width {
            return false;
        }
        let theirs: HashMap<&str, u32> =
            other.labels.iter().map(String::as_str).zip(other.columns.iter().copied()).collect();
        self.labels.iter().zip(&self.columns).all(|(l, c)| theirs.get(l.as_str()) == Some(c))
    }

    pub fn is_3connected(&self) -> bool {
        crate::connectivity::is_3connected(self)
    }

    pub fn is_internally_4connected(&self) -> bool {
        crate::connectivity::is_internally_4connected(self)
    }

    /// Rows top to bottom, the top row holding the most significant bit.
    pub fn format_matrix(&self) -> String {
        let mut out = String::new();
        for row in (0..self.width).rev() {
            let line: Vec<&str> = self.columns.iter().map(|&c| if (c >> row) & 1 == 1 { "1" } else { "0" }).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Removes bit `pos`, shifting higher bits down.
#[inline]
pub(crate) fn drop_bit(v: u32, pos: u32) -> u32 {
    let low = v & ((1u32 << pos) - 1);
    let high = (v >> (pos + 1)) << pos;
    low | high
}

/// Contraction of a single point from a point set, simplified.
/// The result lives in `width - 1` rows.
pub fn contract_point_simplified(points: &[u32], p: u32) -> Vec<u32> {
    let pivot = p.trailing_zeros();
    let mut out: Vec<u32> = points
        .iter()
        .filter(|&&q| q != p)
        .map(|&q| drop_bit(if (q >> pivot) & 1 == 1 { q ^ p } else { q }, pivot))
        .filter(|&q| q != 0)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> BinaryMatroid {
        BinaryMatroid::from_columns(3, vec![4, 2, 1, 6, 3, 5]).unwrap()
    }

    #[test]
    fn rank_queries() {
        let m = k4();
        assert_eq!(m.rank_of::<&str>(&[]).unwrap(), 0);
        assert_eq!(m.rank_of(&["0", "1", "3"]).unwrap(), 2);
        assert!(matches!(m.rank_of(&["9"]), Err(Error::UnknownLabel(l)) if l == "9"));
    }

    #[test]
    fn lambda_examples() {
        let m = k4();
        assert_eq!(m.lambda(&["0"]).unwrap(), 1);
        let all: Vec<String> = m.labels().to_vec();
        assert_eq!(m.lambda(&all).unwrap(), 0);
        // direct sum of two triangles
        let ds = BinaryMatroid::from_columns(4, vec![1, 2, 3, 4, 8, 12]).unwrap();
        assert_eq!(ds.lambda(&["0", "1", "2"]).unwrap(), 0);
    }

    #[test]
    fn contraction_drops_pivot_row() {
        let m = k4();
        let c = m.contract(&["0"]).unwrap();
        assert_eq!(c.width(), 2);
        assert_eq!(c.rank(), 2);
        assert_eq!(c.len(), 5);
        assert_eq!(m.contract::<&str>(&[]).unwrap(), m);
        // contracting a loop deletes it
        let l = BinaryMatroid::from_columns(2, vec![0, 1, 2]).unwrap();
        assert_eq!(l.contract(&["0"]).unwrap(), l.delete(&["0"]).unwrap());
    }

    #[test]
    fn simplify_examples() {
        let m = BinaryMatroid::from_columns(1, vec![1, 1, 0]).unwrap();
        let s = m.simplify();
        assert_eq!(s.columns(), &[1]);
        assert_eq!(s.labels(), &["0".to_string()]);
        assert_eq!(k4().simplify(), k4());
    }

    #[test]
    fn uniform_duals() {
        let u13 = BinaryMatroid::from_columns(1, vec![1, 1, 1]).unwrap();
        let d = u13.dual();
        assert_eq!(d.rank(), 2);
        assert_eq!(d.len(), 3);
        assert!(d.is_simple());
        assert_eq!(d.canonical_key().unwrap().points(), &[1, 2, 3]);
        assert!(u13.triangles().is_empty());
        assert_eq!(u13.triads().len(), 1);
    }

    #[test]
    fn fano_triangles() {
        let f7 = BinaryMatroid::from_columns(3, (1..8).collect()).unwrap();
        assert_eq!(f7.triangles().len(), 7);
    }

    #[test]
    fn contract_point_matches_general_contraction() {
        let pts = [1u32, 2, 3, 5, 6, 12, 9];
        let m = BinaryMatroid::from_points(4, &pts).unwrap();
        for &p in &pts {
            let general = m.contract(&[p.to_string()]).unwrap().simplify().canonical_key().unwrap();
            let fast = canon::canonical_key(&contract_point_simplified(&pts, p), 3).unwrap();
            assert_eq!(general, fast);
        }
    }

    #[test]
    fn drop_bit_shifts() {
        assert_eq!(drop_bit(0b1011, 1), 0b101);
        assert_eq!(drop_bit(0b1000, 3), 0);
    }

    #[test]
    fn matrix_printing_puts_msb_on_top() {
        let m = BinaryMatroid::from_columns(2, vec![2, 1, 3]).unwrap();
        assert_eq!(m.format_matrix(), "1 0 1\n0 1 1\n");
    }
}
