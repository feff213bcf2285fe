//! Canonical forms, stabilizers and orbits for point sets of `PG(r-1, 2)`.
//!
//! Two simple binary matroids are isomorphic exactly when their point sets are
//! related by an invertible linear map, so isomorphism reduces to comparing
//! canonical images under `GL(r, 2)` (which equals `PGL(r, 2)` over GF(2)).
//!
//! The canonical image of a set `X` is its lexicographically smallest sorted
//! image. Every such minimizer sends some ordered basis `b_0, ..., b_{s-1}`
//! drawn from `X` itself to the unit vectors `1, 2, 4, ...`: once the points of
//! `X` in `span(b_0..b_{j-1})` have been placed below `2^j`, the smallest value
//! still available is `2^j`, and it is reached only by a point of `X` outside
//! that span. The search therefore backtracks over such bases, one level per
//! basis vector. At level `j` the candidate `c` fixes the block of images in
//! `[2^j, 2^{j+1})` (the points of `X` in the coset `c + span`); only children
//! with the minimal block survive, and whole branches are cut when their image
//! prefix exceeds the best leaf. Leaves whose image equals the best one yield
//! automorphisms, after which the search returns to the point where the two
//! paths diverge. Those automorphisms generate the full stabilizer.
//!
//! Keys are always compact: a set of rank `s` canonicalizes into the points
//! below `2^s`, and the key records `s` as its width. The key therefore does
//! not depend on the ambient width the set was given in.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2::MAX_WIDTH;
use crate::perm::{group_order, Perm};

/// The lexicographically least image of a point set under `GL(r, 2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    width: usize,
    points: Vec<u32>,
}

impl CanonicalKey {
    /// Wraps an already-canonical point list. No canonicity check is made.
    pub fn from_canonical_points(width: usize, points: Vec<u32>) -> Self {
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        CanonicalKey { width, points }
    }

    /// The span rank of the set.
    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn points(&self) -> &[u32] {
        &self.points
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.points.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn into_points(self) -> Vec<u32> {
        self.points
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r={};", self.width)?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Parses a `r=<width>;<p1>,<p2>,...` record. Points must be strictly
/// increasing, nonzero and below `2^width`.
impl FromStr for CanonicalKey {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let rest = s.strip_prefix("r=").ok_or("record must start with `r=`")?;
        let (w, pts) = rest.split_once(';').ok_or("missing `;` after width")?;
        let width: usize = w.parse().map_err(|_| format!("bad width `{w}`"))?;
        if width > MAX_WIDTH {
            return Err(format!("width {width} too large"));
        }
        let mut points = Vec::new();
        if !pts.is_empty() {
            for (col, tok) in pts.split(',').enumerate() {
                let p: u32 = tok.parse().map_err(|_| format!("bad point `{tok}` at position {}", col + 1))?;
                if p == 0 || u64::from(p) >= 1u64 << width {
                    return Err(format!("point {p} out of range for width {width}"));
                }
                if points.last().is_some_and(|&last| last >= p) {
                    return Err(format!("points not strictly increasing at position {}", col + 1));
                }
                points.push(p);
            }
        }
        Ok(CanonicalKey { width, points })
    }
}

/// An invertible linear map of `GF(2)^width`, stored as the images of the unit
/// vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearMap {
    cols: Vec<u32>,
}

impl LinearMap {
    pub fn identity(width: usize) -> Self {
        LinearMap { cols: (0..width).map(|i| 1u32 << i).collect() }
    }

    /// The map with the given images of the unit vectors `1, 2, 4, ...`.
    pub fn from_columns(cols: Vec<u32>) -> Self {
        LinearMap { cols }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[u32] {
        &self.cols
    }

    #[inline]
    pub fn apply(&self, v: u32) -> u32 {
        let mut out = 0;
        let mut bits = v;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            out ^= self.cols[i];
            bits &= bits - 1;
        }
        out
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &LinearMap) -> LinearMap {
        LinearMap { cols: other.cols.iter().map(|&c| self.apply(c)).collect() }
    }

    pub fn is_invertible(&self) -> bool {
        crate::gf2::rank_of_columns(&self.cols) == self.cols.len()
    }

    pub fn inverse(&self) -> LinearMap {
        let w = self.width();
        let unit: Vec<u32> = (0..w).map(|i| 1 << i).collect();
        Self::from_basis_images(&self.cols, &unit, w).expect("inverse of a singular map")
    }

    /// The map sending `src[i]` to `dst[i]`. `src` must be independent and `dst`
    /// must be independent of the same length. When they do not span, both are
    /// completed by the same unit vectors (those outside `span(src)`, in
    /// increasing order), which must also lie outside `span(dst)`.
    pub fn from_basis_images(src: &[u32], dst: &[u32], width: usize) -> Option<LinearMap> {
        if src.len() != dst.len() || src.len() > width {
            return None;
        }
        let mut src_full = src.to_vec();
        let mut dst_full = dst.to_vec();
        let completion = unit_completion(src, width)?;
        src_full.extend_from_slice(&completion);
        dst_full.extend_from_slice(&completion);
        Self::from_full_bases(&src_full, &dst_full)
    }

    /// The map sending the basis `src` to the basis `dst`.
    pub fn from_full_bases(src_full: &[u32], dst_full: &[u32]) -> Option<LinearMap> {
        let width = src_full.len();
        if dst_full.len() != width
            || crate::gf2::rank_of_columns(src_full) != width
            || crate::gf2::rank_of_columns(dst_full) != width
        {
            return None;
        }
        // coordinates of each unit vector in the completed source basis
        let mut rows: Vec<(u32, u32, u32)> = Vec::with_capacity(width);
        for (k, &s) in src_full.iter().enumerate() {
            let mut v = s;
            let mut combo = 1u32 << k;
            for &(row, pivot, rc) in &rows {
                if v & pivot != 0 {
                    v ^= row;
                    combo ^= rc;
                }
            }
            let pivot = v & v.wrapping_neg();
            rows.push((v, pivot, combo));
        }
        let cols = (0..width)
            .map(|i| {
                let mut v = 1u32 << i;
                let mut combo = 0u32;
                for &(row, pivot, rc) in &rows {
                    if v & pivot != 0 {
                        v ^= row;
                        combo ^= rc;
                    }
                }
                debug_assert_eq!(v, 0);
                let mut img = 0;
                let mut c = combo;
                while c != 0 {
                    img ^= dst_full[c.trailing_zeros() as usize];
                    c &= c - 1;
                }
                img
            })
            .collect();
        Some(LinearMap { cols })
    }
}

/// Unit vectors outside `span(basis)`, in increasing order; `None` if `basis`
/// is dependent.
fn unit_completion(basis: &[u32], width: usize) -> Option<Vec<u32>> {
    let mut e = crate::gf2::Echelon::<u32>::new();
    for &b in basis {
        if !e.insert(b) {
            return None;
        }
    }
    Some((0..width).map(|i| 1u32 << i).filter(|&u| e.insert(u)).collect())
}

/// Everything one canonical search produces.
#[derive(Clone, Debug)]
pub struct Canonization {
    /// The canonical image.
    pub key: CanonicalKey,
    /// A map of the ambient space carrying the input set onto the key points.
    pub map: LinearMap,
    /// The input point sent to `1`, the least point of the key.
    pub least: Option<u32>,
    /// Generators of the automorphisms of the input set, each extended to the
    /// ambient space by the identity on a fixed complement of the span.
    pub generators: Vec<LinearMap>,
}

pub(crate) fn validate(points: &[u32], width: usize) -> Result<()> {
    if width > MAX_WIDTH {
        return Err(Error::WidthOutOfRange(width));
    }
    let mut seen = std::collections::HashSet::with_capacity(points.len());
    for &p in points {
        if p == 0 {
            return Err(Error::ZeroPoint);
        }
        if u64::from(p) >= 1u64 << width {
            return Err(Error::PointOutOfRange { value: u64::from(p), width });
        }
        if !seen.insert(p) {
            return Err(Error::DuplicatePoint(p));
        }
    }
    Ok(())
}

#[derive(Clone, Copy)]
struct Entry {
    point: u32,
    rem: u32,
    coord: u32,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Tied,
    Leading,
}

struct Search {
    width: usize,
    best_image: Option<Vec<u32>>,
    best_basis: Vec<u32>,
    generators: Vec<LinearMap>,
    abort_to: Option<usize>,
}

/// Lexicographic comparison where a sequence that stops early is the larger
/// one: its next value would have to come from a later block.
#[inline]
fn cmp_blocks(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    b.len().cmp(&a.len())
}

impl Search {
    fn best_block(&self, depth: usize) -> &[u32] {
        let best = self.best_image.as_ref().expect("tied without a best leaf");
        let lo = best.partition_point(|&v| v < 1 << depth);
        let hi = best.partition_point(|&v| v < 1 << (depth + 1));
        &best[lo..hi]
    }

    fn run(&mut self, depth: usize, rest: &[Entry], image: &mut Vec<u32>, basis: &mut Vec<u32>, status: Status) {
        if rest.is_empty() {
            self.leaf(image, basis, status);
            return;
        }
        let top = 1u32 << depth;
        // blocks for every candidate
        let mut blocks: Vec<Vec<u32>> = Vec::with_capacity(rest.len());
        for c in rest {
            let mut block: Vec<u32> =
                rest.iter().filter(|q| q.rem == c.rem).map(|q| top | (q.coord ^ c.coord)).collect();
            block.sort_unstable();
            blocks.push(block);
        }
        let min = blocks.iter().min_by(|a, b| cmp_blocks(a, b)).expect("nonempty").clone();
        let mut status = status;
        if status == Status::Tied {
            match cmp_blocks(&min, self.best_block(depth)) {
                Ordering::Greater => return,
                Ordering::Less => status = Status::Leading,
                Ordering::Equal => {}
            }
        }
        let image_len = image.len();
        for (ci, c) in rest.iter().enumerate() {
            if cmp_blocks(&blocks[ci], &min) != Ordering::Equal {
                continue;
            }
            let k = c.coord ^ top;
            let pivot = c.rem & c.rem.wrapping_neg();
            let next: Vec<Entry> = rest
                .iter()
                .filter(|q| q.rem != c.rem)
                .map(|q| {
                    if q.rem & pivot != 0 {
                        Entry { point: q.point, rem: q.rem ^ c.rem, coord: q.coord ^ k }
                    } else {
                        *q
                    }
                })
                .collect();
            image.extend_from_slice(&min);
            basis.push(c.point);
            self.run(depth + 1, &next, image, basis, status);
            basis.pop();
            image.truncate(image_len);
            status = Status::Tied;
            if let Some(d) = self.abort_to {
                if d < depth {
                    return;
                }
                self.abort_to = None;
            }
        }
    }

    fn leaf(&mut self, image: &[u32], basis: &[u32], status: Status) {
        if self.best_image.is_none() || status == Status::Leading {
            self.best_image = Some(image.to_vec());
            self.best_basis = basis.to_vec();
            return;
        }
        debug_assert_eq!(self.best_image.as_deref(), Some(image));
        let sigma =
            LinearMap::from_basis_images(&self.best_basis, basis, self.width).expect("leaf bases are independent");
        self.generators.push(sigma);
        let d = self.best_basis.iter().zip(basis).position(|(a, b)| a != b).unwrap_or(basis.len());
        self.abort_to = Some(d);
    }
}

/// Runs the canonical search on a set of distinct nonzero points of
/// `GF(2)^width`.
pub fn canonize(points: &[u32], width: usize) -> Result<Canonization> {
    validate(points, width)?;
    Ok(canonize_unchecked(points, width))
}

pub(crate) fn canonize_unchecked(points: &[u32], width: usize) -> Canonization {
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    let rest: Vec<Entry> = sorted.iter().map(|&p| Entry { point: p, rem: p, coord: 0 }).collect();
    let mut search = Search { width, best_image: None, best_basis: Vec::new(), generators: Vec::new(), abort_to: None };
    let mut image = Vec::with_capacity(points.len());
    let mut basis = Vec::with_capacity(width);
    search.run(0, &rest, &mut image, &mut basis, Status::Leading);
    let best_image = search.best_image.unwrap_or_default();
    let s = search.best_basis.len();
    let mut src = search.best_basis.clone();
    src.extend(unit_completion(&search.best_basis, width).expect("basis from search"));
    let units: Vec<u32> = (0..width).map(|i| 1 << i).collect();
    let map = LinearMap::from_full_bases(&src, &units).expect("basis from search");
    Canonization {
        key: CanonicalKey { width: s, points: best_image },
        map,
        least: search.best_basis.first().copied(),
        generators: search.generators,
    }
}

/// The canonical key of a set of distinct nonzero points.
pub fn canonical_key(points: &[u32], width: usize) -> Result<CanonicalKey> {
    Ok(canonize(points, width)?.key)
}

/// The setwise stabilizer of a point set inside `GL(width, 2)`.
#[derive(Clone, Debug)]
pub struct StabilizerGroup {
    pub width: usize,
    pub generators: Vec<LinearMap>,
    pub order: u128,
}

impl StabilizerGroup {
    /// The group's action on the nonzero points of `GF(2)^width`, one
    /// permutation of point indices (`point - 1`) per generator.
    pub fn point_permutations(&self) -> Vec<Perm> {
        let n = (1usize << self.width) - 1;
        self.generators.iter().map(|g| Perm((1..=n as u32).map(|p| (g.apply(p) - 1) as u16).collect())).collect()
    }
}

/// `|GL(m, 2)|`, if it fits.
pub fn general_linear_order(m: usize) -> Option<u128> {
    let mut order: u128 = 1;
    for i in 0..m {
        let term = (1u128 << m).checked_sub(1u128 << i)?;
        order = order.checked_mul(term)?;
    }
    Some(order)
}

/// Generators and order of the subgroup of `GL(width, 2)` fixing `points`
/// setwise.
pub fn stabilizer(points: &[u32], width: usize) -> Result<StabilizerGroup> {
    let canon = canonize(points, width)?;
    stabilizer_from(points, width, &canon)
}

pub(crate) fn stabilizer_from(points: &[u32], width: usize, canon: &Canonization) -> Result<StabilizerGroup> {
    let s = canon.key.width();
    let m = width - s;
    // exact order of the automorphism group acting on the points themselves
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    let index: HashMap<u32, usize> = sorted.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let perms: Vec<Perm> =
        canon.generators.iter().map(|g| Perm(sorted.iter().map(|&p| index[&g.apply(p)] as u16).collect())).collect();
    let mut basis_idx = Vec::new();
    let mut e = crate::gf2::Echelon::<u32>::new();
    for (i, &p) in sorted.iter().enumerate() {
        if e.insert(p) {
            basis_idx.push(i);
        }
    }
    let aut_order = if sorted.is_empty() { 1 } else { group_order(&perms, sorted.len(), &basis_idx) };
    let overflow = || Error::Invalid(format!("stabilizer order overflows at width {width}"));
    let shear = 1u128.checked_shl((s * m) as u32).filter(|_| s * m < 128).ok_or_else(overflow)?;
    let order =
        aut_order.checked_mul(shear).and_then(|o| o.checked_mul(general_linear_order(m)?)).ok_or_else(overflow)?;

    let mut generators = canon.generators.clone();
    if m > 0 {
        // A basis adapted to the span: span basis first, then the completion
        // used by `LinearMap::from_basis_images`.
        let mut span = crate::gf2::Echelon::<u32>::new();
        let mut span_basis = Vec::new();
        for &p in &sorted {
            if span.insert(p) {
                span_basis.push(p);
            }
        }
        let completion: Vec<u32> = (0..width).map(|i| 1u32 << i).filter(|&u| span.insert(u)).collect();
        let full: Vec<u32> = span_basis.iter().chain(&completion).copied().collect();
        let mut push_shear = |k: usize, add: u32| {
            let mut dst = full.clone();
            dst[s + k] ^= add;
            generators.push(LinearMap::from_basis_images(&full, &dst, width).expect("transvection"));
        };
        for k in 0..m {
            for &b in &span_basis {
                push_shear(k, b);
            }
            for (l, &u) in completion.iter().enumerate() {
                if l != k {
                    push_shear(k, u);
                }
            }
        }
    }
    Ok(StabilizerGroup { width, generators, order })
}

/// Partitions `domain` into orbits of the group generated by `generators`.
/// Orbits are sorted internally and listed by least element.
pub fn orbits_on_points(generators: &[LinearMap], domain: &[u32]) -> Vec<Vec<u32>> {
    let index: HashMap<u32, usize> = domain.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut parent: Vec<usize> = (0..domain.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in generators {
        for (i, &p) in domain.iter().enumerate() {
            if let Some(&j) = index.get(&g.apply(p)) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut classes: HashMap<usize, Vec<u32>> = HashMap::new();
    for (i, &p) in domain.iter().enumerate() {
        let root = find(&mut parent, i);
        classes.entry(root).or_default().push(p);
    }
    let mut out: Vec<Vec<u32>> = classes
        .into_values()
        .map(|mut v| {
            v.sort_unstable();
            v
        })
        .collect();
    out.sort();
    out
}

/// The automorphism orbit (within `points`) of the point that the canonical
/// map sends to the least key point.
pub fn canonical_least_orbit(points: &[u32], width: usize) -> Result<Vec<u32>> {
    let canon = canonize(points, width)?;
    Ok(least_orbit_of(points, &canon))
}

pub(crate) fn least_orbit_of(points: &[u32], canon: &Canonization) -> Vec<u32> {
    let Some(least) = canon.least else { return Vec::new() };
    orbits_on_points(&canon.generators, points)
        .into_iter()
        .find(|o| o.binary_search(&least).is_ok())
        .expect("least point lies in the set")
}

/// All points of `PG(width-1, 2)`.
pub fn projective_points(width: usize) -> Vec<u32> {
    (1..(1u32 << width)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bases_share_a_key() {
        let a = canonical_key(&[1, 2, 4, 8], 4).unwrap();
        let b = canonical_key(&[7, 11, 13, 14], 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.points(), &[1, 2, 4, 8]);
    }

    #[test]
    fn full_geometry_is_fixed() {
        let pg = projective_points(4);
        assert_eq!(canonical_key(&pg, 4).unwrap().points(), pg.as_slice());
    }

    #[test]
    fn zero_point_rejected() {
        assert!(matches!(canonical_key(&[0, 1], 2), Err(Error::ZeroPoint)));
        assert!(matches!(canonical_key(&[1, 1], 2), Err(Error::DuplicatePoint(1))));
        assert!(canonical_key(&[4], 2).is_err());
    }

    #[test]
    fn empty_set_key() {
        let k = canonical_key(&[], 5).unwrap();
        assert_eq!(k.to_string(), "r=0;");
        assert!(k.is_empty());
    }

    #[test]
    fn key_round_trips_through_text() {
        let k = canonical_key(&[3, 5, 6, 9], 4).unwrap();
        let parsed: CanonicalKey = k.to_string().parse().unwrap();
        assert_eq!(parsed, k);
        assert!("r=3;1,1".parse::<CanonicalKey>().is_err());
        assert!("r=2;4".parse::<CanonicalKey>().is_err());
        assert!("3;1".parse::<CanonicalKey>().is_err());
    }

    #[test]
    fn stabilizer_orders() {
        assert_eq!(stabilizer(&projective_points(3), 3).unwrap().order, 168);
        assert_eq!(stabilizer(&[], 3).unwrap().order, 168);
        assert_eq!(stabilizer(&projective_points(4), 4).unwrap().order, 20160);
        // a basis of GF(2)^3: the maps permuting it
        assert_eq!(stabilizer(&[1, 2, 4], 3).unwrap().order, 6);
    }

    #[test]
    fn generators_fix_the_set() {
        let x = [1u32, 2, 3, 4, 12];
        let g = stabilizer(&x, 4).unwrap();
        for m in &g.generators {
            assert!(m.is_invertible());
            let mut img: Vec<u32> = x.iter().map(|&p| m.apply(p)).collect();
            img.sort_unstable();
            assert_eq!(img, x);
        }
    }

    #[test]
    fn orbits_of_line_stabilizer() {
        let g = stabilizer(&[1, 2], 3).unwrap();
        let orbits = orbits_on_points(&g.generators, &[3, 4, 5, 6, 7]);
        assert_eq!(orbits, vec![vec![3], vec![4, 5, 6, 7]]);
        assert_eq!(orbits_on_points(&[], &[1, 2, 3]), vec![vec![1], vec![2], vec![3]]);
        let all = stabilizer(&projective_points(3), 3).unwrap();
        assert_eq!(orbits_on_points(&all.generators, &projective_points(3)).len(), 1);
    }

    #[test]
    fn least_orbit_of_transitive_sets() {
        assert_eq!(canonical_least_orbit(&[1, 2, 4, 8], 4).unwrap(), vec![1, 2, 4, 8]);
        assert_eq!(canonical_least_orbit(&projective_points(3), 3).unwrap(), projective_points(3));
    }

    #[test]
    fn canonical_map_carries_set_onto_key() {
        let x = [3u32, 5, 6, 9, 17];
        let c = canonize(&x, 5).unwrap();
        assert!(c.map.is_invertible());
        let mut img: Vec<u32> = x.iter().map(|&p| c.map.apply(p)).collect();
        img.sort_unstable();
        assert_eq!(img, c.key.points());
        assert_eq!(c.map.apply(c.least.unwrap()), 1);
    }

    #[test]
    fn linear_map_inverse() {
        let m = LinearMap::from_columns(vec![3, 1, 4]);
        assert!(m.is_invertible());
        let inv = m.inverse();
        for v in 1..8 {
            assert_eq!(inv.apply(m.apply(v)), v);
        }
    }
}
