//! Tutte connectivity: 3-connectivity and internal 4-connectivity.
//!
//! Small matroids are tested on every subset `X` up to complementation. When
//! the rank (or the corank, via the dual) is at most 8, subset ranks come from
//! precomputed spans of the two halves of the ground set, stored as bitsets
//! over `GF(2)^8`: `dim(U + W) = dim U + dim W - log2 |U ∩ W|`.
//!
//! A simple matroid with at least ten elements is tested on its flats only.
//! If `(X, Y)` has `lambda <= 2` and both sides of size at least `s <= 4`,
//! then `cl(X)` or `cl(Y)` leaves at least `s` elements outside it: otherwise
//! all but `2(s - 1)` elements lie in `span X ∩ span Y`, a space of dimension
//! `lambda`, which holds at most three points.

use std::collections::HashSet;

use crate::gf2::{self, ColumnSet, Echelon};
use crate::matroid::BinaryMatroid;

/// A set `side` with `lambda(side) = order - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub side: Vec<String>,
    pub order: usize,
}

const FAST_WIDTH: usize = 8;
const FLATS_FROM: usize = 10;

/// Subspace of `GF(2)^8` as a 256-bit membership set.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct SpanSet([u64; 4]);

const BUTTERFLY: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

impl SpanSet {
    const ZERO: SpanSet = SpanSet([1, 0, 0, 0]);

    #[inline]
    fn contains(&self, v: u32) -> bool {
        (self.0[(v >> 6) as usize] >> (v & 63)) & 1 == 1
    }

    /// `{ x ^ a : x in self }`.
    #[inline]
    fn translate(&self, a: u32) -> SpanSet {
        let mut w = self.0;
        for (j, &m) in BUTTERFLY.iter().enumerate() {
            if (a >> j) & 1 == 1 {
                let s = 1u32 << j;
                for x in w.iter_mut() {
                    *x = ((*x & m) << s) | ((*x >> s) & m);
                }
            }
        }
        let hi = (a >> 6) as usize & 3;
        SpanSet([w[hi], w[1 ^ hi], w[2 ^ hi], w[3 ^ hi]])
    }

    #[inline]
    fn union(&self, o: &SpanSet) -> SpanSet {
        SpanSet([self.0[0] | o.0[0], self.0[1] | o.0[1], self.0[2] | o.0[2], self.0[3] | o.0[3]])
    }

    /// `log2 |self ∩ o|`.
    #[inline]
    fn meet_dim(&self, o: &SpanSet) -> u32 {
        let c = (self.0[0] & o.0[0]).count_ones()
            + (self.0[1] & o.0[1]).count_ones()
            + (self.0[2] & o.0[2]).count_ones()
            + (self.0[3] & o.0[3]).count_ones();
        c.trailing_zeros()
    }
}

/// Spans and dimensions of every subset of `cols`.
fn half_spans(cols: &[u32]) -> (Vec<SpanSet>, Vec<u8>) {
    let n = 1usize << cols.len();
    let mut spans = Vec::with_capacity(n);
    let mut dims = Vec::with_capacity(n);
    spans.push(SpanSet::ZERO);
    dims.push(0u8);
    for mask in 1..n {
        let i = mask.trailing_zeros() as usize;
        let prev = mask & (mask - 1);
        let s = spans[prev];
        let a = cols[i];
        if s.contains(a) {
            spans.push(s);
            dims.push(dims[prev]);
        } else {
            spans.push(s.union(&s.translate(a)));
            dims.push(dims[prev] + 1);
        }
    }
    (spans, dims)
}

/// Calls `visit(mask, lambda)` for every subset not containing the last
/// element, stopping at the first `true`. Returns the stopping mask.
fn scan(m: &BinaryMatroid, mut visit: impl FnMut(ColumnSet, usize) -> bool) -> Option<ColumnSet> {
    let n = m.len();
    if n == 0 {
        return None;
    }
    if n >= FLATS_FROM && m.is_simple() {
        return scan_flats(m, visit);
    }
    let (w, cols) = gf2::compact_columns(m.columns());
    if w <= FAST_WIDTH {
        return scan_fast(&cols, w, visit);
    }
    let d = m.dual();
    let (dw, dcols) = gf2::compact_columns(d.columns());
    if dw <= FAST_WIDTH {
        return scan_fast(&dcols, dw, visit);
    }
    let full = m.ground_mask();
    let r = m.rank();
    let top = 1u64 << (n - 1);
    (0..top).find(|&x| visit(x, rank_mask(&cols, x) + rank_mask(&cols, full & !x) - r))
}

/// Calls `visit(flat, lambda)` for every flat of a loopless matroid,
/// stopping at the first `true`.
fn scan_flats(m: &BinaryMatroid, mut visit: impl FnMut(ColumnSet, usize) -> bool) -> Option<ColumnSet> {
    let cols = m.columns();
    let full = m.ground_mask();
    let r = m.rank();
    let closure = |e: &Echelon<u32>| -> ColumnSet {
        cols.iter().enumerate().filter(|(_, &c)| e.contains(c)).fold(0, |a, (i, _)| a | 1 << i)
    };
    let mut seen: HashSet<ColumnSet> = HashSet::from([0]);
    let mut stack = vec![(Echelon::<u32>::new(), 0 as ColumnSet)];
    while let Some((span, flat)) = stack.pop() {
        let lambda = span.rank() + rank_mask(cols, full & !flat) - r;
        if visit(flat, lambda) {
            return Some(flat);
        }
        let mut rest = full & !flat;
        while rest != 0 {
            let mut child = span.clone();
            child.insert(cols[rest.trailing_zeros() as usize]);
            let cf = closure(&child);
            rest &= !cf;
            if seen.insert(cf) {
                stack.push((child, cf));
            }
        }
    }
    None
}

fn rank_mask(cols: &[u32], mask: ColumnSet) -> usize {
    let mut e = Echelon::<u32>::new();
    let mut m = mask;
    while m != 0 {
        e.insert(cols[m.trailing_zeros() as usize]);
        m &= m - 1;
    }
    e.rank()
}

fn scan_fast(cols: &[u32], r: usize, mut visit: impl FnMut(ColumnSet, usize) -> bool) -> Option<ColumnSet> {
    let n = cols.len();
    let h = n / 2;
    let (a, b) = cols.split_at(h);
    let (sa, da) = half_spans(a);
    let (sb, db) = half_spans(b);
    let fa = (1usize << a.len()) - 1;
    let fb = (1usize << b.len()) - 1;
    // the last element (top of `b`) is kept on the complement side
    let nb = 1usize << (b.len() - 1);
    for xa in 0..=fa {
        let ca = fa & !xa;
        let (sxa, dxa, sca, dca) = (&sa[xa], u32::from(da[xa]), &sa[ca], u32::from(da[ca]));
        for xb in 0..nb {
            let cb = fb & !xb;
            let rx = dxa + u32::from(db[xb]) - sxa.meet_dim(&sb[xb]);
            let rc = dca + u32::from(db[cb]) - sca.meet_dim(&sb[cb]);
            let lambda = (rx + rc) as usize - r;
            let mask = xa as u64 | (xb as u64) << h;
            if visit(mask, lambda) {
                return Some(mask);
            }
        }
    }
    None
}

fn small_side(mask: ColumnSet, n: usize) -> usize {
    let k = mask.count_ones() as usize;
    k.min(n - k)
}

fn violates_3(lambda: usize, side: usize) -> bool {
    (lambda == 0 && side >= 1) || (lambda <= 1 && side >= 2)
}

fn violates_i4(lambda: usize, side: usize) -> bool {
    violates_3(lambda, side) || (lambda <= 2 && side >= 4)
}

fn separation(m: &BinaryMatroid, bad: fn(usize, usize) -> bool) -> Option<Separation> {
    let n = m.len();
    let mut order = 0;
    let mask = scan(m, |x, l| {
        order = l + 1;
        bad(l, small_side(x, n))
    })?;
    Some(Separation { side: m.labels_of(mask), order })
}

/// A separation witnessing that `m` is not 3-connected.
pub fn find_2_separation(m: &BinaryMatroid) -> Option<Separation> {
    separation(m, violates_3)
}

/// A separation witnessing that `m` is not internally 4-connected.
pub fn find_non_i4c_separation(m: &BinaryMatroid) -> Option<Separation> {
    separation(m, violates_i4)
}

/// Whether `m` is simple and its dual is simple.
fn simple_and_cosimple(m: &BinaryMatroid) -> bool {
    m.is_simple() && m.dual().is_simple()
}

pub fn is_3connected(m: &BinaryMatroid) -> bool {
    if m.len() >= 4 && !simple_and_cosimple(m) {
        return false;
    }
    let n = m.len();
    scan(m, |x, l| violates_3(l, small_side(x, n))).is_none()
}

/// A triangle and a triad sharing two elements: their union has `lambda <= 2`.
pub fn has_triangle_meeting_triad(m: &BinaryMatroid) -> bool {
    let tri: Vec<u64> = m.triangle_indices().iter().map(|t| t.iter().fold(0, |a, &i| a | 1 << i)).collect();
    if tri.is_empty() {
        return false;
    }
    m.triad_indices()
        .iter()
        .map(|t| t.iter().fold(0u64, |a, &i| a | 1 << i))
        .any(|c| tri.iter().any(|&t| (t & c).count_ones() == 2))
}

pub fn is_internally_4connected(m: &BinaryMatroid) -> bool {
    let n = m.len();
    if n >= 4 && !simple_and_cosimple(m) {
        return false;
    }
    if n >= 8 && has_triangle_meeting_triad(m) {
        return false;
    }
    scan(m, |x, l| violates_i4(l, small_side(x, n))).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::rank_of_columns;

    // definition-level checks over all subsets, no symmetry reduction
    fn brute(m: &BinaryMatroid, bad: fn(usize, usize) -> bool) -> bool {
        let n = m.len();
        let r = m.rank();
        let full = m.ground_mask();
        let pick = |x: u64| -> Vec<u32> { (0..n).filter(|i| (x >> i) & 1 == 1).map(|i| m.columns()[i]).collect() };
        (0..=full).all(|x| {
            let l = rank_of_columns(&pick(x)) + rank_of_columns(&pick(full & !x)) - r;
            !bad(l, small_side(x, n))
        })
    }

    fn k4() -> BinaryMatroid {
        BinaryMatroid::from_columns(3, vec![4, 2, 1, 6, 3, 5]).unwrap()
    }

    #[test]
    fn translate_is_xor_shift() {
        let mut s = SpanSet([0; 4]);
        for v in [0u32, 5, 77, 130, 255] {
            s.0[(v >> 6) as usize] |= 1 << (v & 63);
        }
        for a in [1u32, 64, 129, 255] {
            let t = s.translate(a);
            for v in 0..256u32 {
                assert_eq!(t.contains(v), s.contains(v ^ a));
            }
        }
    }

    #[test]
    fn small_examples() {
        assert!(is_3connected(&k4()));
        assert!(is_internally_4connected(&k4()));
        let u13 = BinaryMatroid::from_columns(1, vec![1, 1, 1]).unwrap();
        assert!(is_internally_4connected(&u13));
        let u02 = BinaryMatroid::from_columns(1, vec![0, 0]).unwrap();
        assert!(!is_3connected(&u02));
        let empty = BinaryMatroid::from_columns(1, vec![]).unwrap();
        assert!(is_internally_4connected(&empty));
    }

    #[test]
    fn witnesses_have_the_right_order() {
        let ds = BinaryMatroid::from_columns(4, vec![1, 2, 3, 4, 8, 12]).unwrap();
        let sep = find_2_separation(&ds).unwrap();
        let l = ds.lambda(&sep.side).unwrap();
        assert_eq!(sep.order, l + 1);
        assert!(find_2_separation(&k4()).is_none());
    }

    #[test]
    fn agrees_with_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..400 {
            let w = rng.random_range(1..=5);
            let n = rng.random_range(0..=10);
            let cols: Vec<u32> = (0..n).map(|_| rng.random_range(0..(1u32 << w))).collect();
            let m = BinaryMatroid::from_columns(w, cols).unwrap();
            assert_eq!(is_3connected(&m), brute(&m, violates_3), "{m:?}");
            assert_eq!(is_internally_4connected(&m), brute(&m, violates_i4), "{m:?}");
        }
    }

    #[test]
    fn flats_agree_with_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(12);
        let mut seen = [0usize; 2];
        for _ in 0..300 {
            let w = rng.random_range(4..=6);
            let n = rng.random_range(FLATS_FROM..=15);
            let mut cols: Vec<u32> = Vec::new();
            while cols.len() < n {
                let c = rng.random_range(1..(1u32 << w));
                if !cols.contains(&c) {
                    cols.push(c);
                }
            }
            let m = BinaryMatroid::from_columns(w, cols).unwrap();
            let c3 = is_3connected(&m);
            assert_eq!(c3, brute(&m, violates_3), "{m:?}");
            assert_eq!(is_internally_4connected(&m), brute(&m, violates_i4), "{m:?}");
            seen[usize::from(c3)] += 1;
        }
        assert!(seen[0] > 0 && seen[1] > 0);
        // a direct sum of two Fano planes: the flats include the 2-separation
        let cols: Vec<u32> = (1..8).chain((1..8).map(|c| c << 3)).collect();
        let m = BinaryMatroid::from_columns(6, cols).unwrap();
        assert!(!is_3connected(&m));
        assert_eq!(find_2_separation(&m).unwrap().order, 1);
    }

    #[test]
    fn generic_path_matches_fast_path() {
        // rank 9 and corank 9: forces the elimination fallback
        let mut cols: Vec<u32> = (0..9).map(|i| 1 << i).collect();
        cols.extend([0x1FF, 0x0F3, 0x1A5, 0x0CE, 0x159, 0x1E2, 0x0B7, 0x13C, 0x16B]);
        let m = BinaryMatroid::from_columns(9, cols).unwrap();
        assert_eq!(is_3connected(&m), brute(&m, violates_3));
        assert_eq!(is_internally_4connected(&m), brute(&m, violates_i4));
    }
}
