//! Minor containment for simple binary matroids.

use std::collections::HashMap;

use crate::canon::{self, CanonicalKey, Canonization};
use crate::error::{Error, Result};
use crate::matroid::{contract_point_simplified, BinaryMatroid};
use crate::persist::MatroidDatabase;

/// Decides containment of one fixed simple target, remembering the verdict for
/// every simple state it has visited.
///
/// States are simplified and canonized, so the search branches on one element
/// per automorphism orbit and shares work between hosts.
#[derive(Clone, Debug)]
pub struct MinorOracle {
    target: CanonicalKey,
    len: usize,
    rank: usize,
    corank: usize,
    memo: HashMap<CanonicalKey, bool>,
    memoize: bool,
}

impl MinorOracle {
    pub fn new(target: &BinaryMatroid) -> Result<Self> {
        let key = target.canonical_key()?;
        Ok(Self::from_key(key))
    }

    pub fn from_key(target: CanonicalKey) -> Self {
        let len = target.len();
        let rank = target.rank();
        MinorOracle { target, len, rank, corank: len - rank, memo: HashMap::new(), memoize: true }
    }

    /// Disables the verdict cache (for cross-checking).
    pub fn without_memo(mut self) -> Self {
        self.memoize = false;
        self
    }

    pub fn target(&self) -> &CanonicalKey {
        &self.target
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// Whether `host` has a minor isomorphic to the target.
    pub fn check(&mut self, host: &BinaryMatroid) -> bool {
        let si = host.simplify();
        let c = canon::canonize_unchecked(si.columns(), si.width());
        self.visit(&c)
    }

    /// As [`MinorOracle::check`], for a simple point set.
    pub fn check_points(&mut self, points: &[u32], width: usize) -> Result<bool> {
        let c = canon::canonize(points, width)?;
        Ok(self.visit(&c))
    }

    pub fn check_key(&mut self, key: &CanonicalKey) -> bool {
        let c = canon::canonize_unchecked(key.points(), key.width());
        self.visit(&c)
    }

    fn visit(&mut self, c: &Canonization) -> bool {
        let key = &c.key;
        let n = key.len();
        let r = key.rank();
        if n < self.len || r < self.rank || n - r < self.corank {
            return false;
        }
        if n == self.len {
            return *key == self.target;
        }
        if let Some(&v) = self.memo.get(key) {
            return v;
        }
        let found = self.expand(c);
        if self.memoize {
            self.memo.insert(key.clone(), found);
        }
        found
    }

    fn expand(&mut self, c: &Canonization) -> bool {
        // the canonical points carry the automorphisms conjugated by `map`
        let points = c.key.points();
        let w = c.key.width();
        let gens: Vec<canon::LinearMap> = {
            let inv = c.map.inverse();
            c.generators.iter().map(|g| c.map.after(g).after(&inv)).collect()
        };
        let reps: Vec<u32> = canon::orbits_on_points(&gens, points).into_iter().map(|o| o[0]).collect();
        let contract_first = c.key.rank() > self.rank;
        for pass in 0..2 {
            let contracting = (pass == 0) == contract_first;
            for &e in &reps {
                let child = if contracting {
                    let pts = contract_point_simplified(points, e);
                    canon::canonize_unchecked(&pts, w - 1)
                } else {
                    let pts: Vec<u32> = points.iter().copied().filter(|&p| p != e).collect();
                    canon::canonize_unchecked(&pts, w)
                };
                if self.visit(&child) {
                    return true;
                }
            }
        }
        false
    }
}

/// Whether some sequence of deletions and contractions of `host` is isomorphic
/// to the simple matroid `target`.
pub fn has_minor(host: &BinaryMatroid, target: &BinaryMatroid) -> Result<bool> {
    Ok(MinorOracle::new(target)?.check(host))
}

/// Whether `host` has any of `targets` as a minor.
pub fn has_minor_list(host: &BinaryMatroid, targets: &[BinaryMatroid]) -> Result<bool> {
    for t in targets {
        if has_minor(host, t)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The single-element deletions and simplified contractions of a simple point
/// set, one per automorphism orbit, as canonical keys.
pub fn minor_children(points: &[u32], width: usize) -> Result<Vec<CanonicalKey>> {
    let c = canon::canonize(points, width)?;
    let mut out = Vec::new();
    for orbit in canon::orbits_on_points(&c.generators, points) {
        let e = orbit[0];
        let del: Vec<u32> = points.iter().copied().filter(|&p| p != e).collect();
        out.push(canon::canonize_unchecked(&del, width).key);
        out.push(canon::canonize_unchecked(&contract_point_simplified(points, e), width - 1).key);
    }
    Ok(out)
}

/// Decides target-freeness of a simple matroid from a database that holds every
/// simple target-free matroid with fewer elements: the candidate is target-free
/// exactly when all its single-element deletions and simplified contractions
/// are in the database. Only valid when the candidate is larger than the target.
pub fn minor_free_by_database(candidate: &BinaryMatroid, db: &MatroidDatabase) -> Result<bool> {
    let si = candidate.points()?;
    for key in minor_children(&si, candidate.width())? {
        if !db.covers(key.rank(), key.len()) {
            return Err(Error::MissingStratum { rank: key.rank(), size: key.len() });
        }
        if !db.contains(&key) {
            return Ok(false);
        }
    }
    Ok(true)
}
