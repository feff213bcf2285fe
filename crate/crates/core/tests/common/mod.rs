//! Brute-force oracles that share no code with the library's search: explicit
//! group enumeration, orbit partitions and direct minimization.

#![allow(dead_code)]

use std::collections::HashMap;

use binmat::BinaryMatroid;
use rand::Rng;

/// A linear map as its column images.
pub type Matrix = Vec<u32>;

pub fn apply(g: &[u32], v: u32) -> u32 {
    let mut out = 0;
    for (i, &c) in g.iter().enumerate() {
        if v >> i & 1 == 1 {
            out ^= c;
        }
    }
    out
}

pub fn invertible(g: &[u32]) -> bool {
    let mut rows: Vec<u32> = Vec::new();
    for &c in g {
        let mut v = c;
        for &r in &rows {
            v = v.min(v ^ r);
        }
        if v == 0 {
            return false;
        }
        rows.push(v);
    }
    true
}

/// Every element of `GL(r, 2)`.
pub fn general_linear(r: usize) -> Vec<Matrix> {
    let n = 1u32 << r;
    let mut out = Vec::new();
    let mut cols = Vec::with_capacity(r);
    fn rec(r: usize, n: u32, cols: &mut Vec<u32>, out: &mut Vec<Matrix>) {
        if cols.len() == r {
            out.push(cols.clone());
            return;
        }
        for c in 1..n {
            cols.push(c);
            if invertible(cols) {
                rec(r, n, cols, out);
            }
            cols.pop();
        }
    }
    rec(r, n, &mut cols, &mut out);
    out
}

pub fn random_invertible(r: usize, rng: &mut impl Rng) -> Matrix {
    loop {
        let g: Matrix = (0..r).map(|_| rng.random_range(1..1u32 << r)).collect();
        if invertible(&g) {
            return g;
        }
    }
}

pub fn image(g: &[u32], points: &[u32]) -> Vec<u32> {
    let mut out: Vec<u32> = points.iter().map(|&p| apply(g, p)).collect();
    out.sort_unstable();
    out
}

/// Points of `PG(r-1, 2)` in a subset encoded as a bitmask over `1..2^r`.
pub fn points_of(mask: u64) -> Vec<u32> {
    (0..64).filter(|i| mask >> i & 1 == 1).map(|i| i as u32 + 1).collect()
}

pub fn mask_of(points: &[u32]) -> u64 {
    points.iter().fold(0, |m, &p| m | 1 << (p - 1))
}

/// Orbit partition of all subsets of `PG(r-1, 2)` under the full group:
/// `class[mask]` is the index of the orbit of `mask`, and `sizes[c]` the
/// number of subsets in orbit `c`.
pub struct OrbitPartition {
    pub r: usize,
    pub class: Vec<u32>,
    pub sizes: Vec<usize>,
    pub cardinality: Vec<usize>,
}

pub fn orbit_partition(r: usize) -> OrbitPartition {
    let group = general_linear(r);
    let n = (1usize << r) - 1;
    // each group element as a permutation of point indices
    let perms: Vec<Vec<u8>> = group.iter().map(|g| (1..=n as u32).map(|p| (apply(g, p) - 1) as u8).collect()).collect();
    let total = 1usize << n;
    let mut class = vec![u32::MAX; total];
    let mut sizes = Vec::new();
    let mut cardinality = Vec::new();
    for mask in 0..total {
        if class[mask] != u32::MAX {
            continue;
        }
        let id = sizes.len() as u32;
        let mut count = 0;
        for perm in &perms {
            let mut img = 0usize;
            let mut m = mask;
            while m != 0 {
                let i = m.trailing_zeros() as usize;
                img |= 1 << perm[i];
                m &= m - 1;
            }
            if class[img] == u32::MAX {
                class[img] = id;
                count += 1;
            }
        }
        sizes.push(count);
        cardinality.push(mask.count_ones() as usize);
    }
    OrbitPartition { r, class, sizes, cardinality }
}

impl OrbitPartition {
    /// Number of orbits of each cardinality `0..=2^r - 1`.
    pub fn counts_by_cardinality(&self) -> Vec<usize> {
        let n = (1usize << self.r) - 1;
        let mut out = vec![0; n + 1];
        for &k in &self.cardinality {
            out[k] += 1;
        }
        out
    }
}

/// Lexicographically least sorted image of a spanning set over the whole
/// group, with the points sent to `1` by minimizing elements.
pub fn brute_min_image(points: &[u32], group: &[Matrix]) -> (Vec<u32>, Vec<u32>) {
    let mut best: Option<Vec<u32>> = None;
    let mut least = Vec::new();
    for g in group {
        let img = image(g, points);
        match best.as_ref().map(|b| img.cmp(b)) {
            Some(std::cmp::Ordering::Greater) => continue,
            Some(std::cmp::Ordering::Equal) => {}
            _ => {
                best = Some(img);
                least.clear();
            }
        }
        least.extend(points.iter().copied().filter(|&p| apply(g, p) == 1));
    }
    least.sort_unstable();
    least.dedup();
    (best.unwrap_or_default(), least)
}

/// Rank by elimination.
pub fn rank(vectors: impl IntoIterator<Item = u64>) -> usize {
    let mut rows: Vec<u64> = Vec::new();
    for v in vectors {
        let mut v = v;
        for &r in &rows {
            v = v.min(v ^ r);
        }
        if v != 0 {
            rows.push(v);
        }
    }
    rows.len()
}

pub fn rank_of(m: &BinaryMatroid, mask: u64) -> usize {
    rank(m.columns().iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &c)| u64::from(c)))
}

/// `r(X) + r(E - X) - r(M)` by elimination.
pub fn lambda(m: &BinaryMatroid, mask: u64) -> usize {
    let all = m.ground_mask();
    rank_of(m, mask) + rank_of(m, all & !mask) - rank_of(m, all)
}

pub fn random_points(width: usize, len: usize, rng: &mut impl Rng) -> Vec<u32> {
    let mut pts = Vec::with_capacity(len);
    while pts.len() < len {
        let p = rng.random_range(1..1u32 << width);
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    pts
}

/// Random simple matroid of exactly the given rank.
pub fn random_simple(width: usize, len: usize, rng: &mut impl Rng) -> BinaryMatroid {
    loop {
        let pts = random_points(width, len, rng);
        if rank(pts.iter().map(|&p| u64::from(p))) == width {
            return BinaryMatroid::from_points(width, &pts).unwrap();
        }
    }
}

/// Canonical-key census of all subsets of at most `max_len` points of
/// `PG(r-1, 2)`, by cardinality.
pub fn key_census(r: usize, max_len: usize) -> Vec<usize> {
    let n = (1u32 << r) - 1;
    let mut seen: Vec<HashMap<binmat::CanonicalKey, ()>> = vec![HashMap::new(); max_len + 1];
    let mut cur = Vec::new();
    fn rec(
        from: u32,
        n: u32,
        max_len: usize,
        cur: &mut Vec<u32>,
        r: usize,
        seen: &mut [HashMap<binmat::CanonicalKey, ()>],
    ) {
        seen[cur.len()].insert(binmat::canonical_key(cur, r).unwrap(), ());
        if cur.len() == max_len {
            return;
        }
        for p in from..=n {
            cur.push(p);
            rec(p + 1, n, max_len, cur, r, seen);
            cur.pop();
        }
    }
    rec(1, n, max_len, &mut cur, r, &mut seen);
    seen.iter().map(HashMap::len).collect()
}

/// Class counts of a database by cardinality.
pub fn db_counts(db: &binmat::MatroidDatabase, max_len: usize) -> Vec<usize> {
    let mut out = vec![0; max_len + 1];
    for ((_, size), keys) in db.strata() {
        if size <= max_len {
            out[size] += keys.len();
        }
    }
    out
}
