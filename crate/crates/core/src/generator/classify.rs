use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::canon::{self, CanonicalKey};
use crate::catalog;
use crate::error::Result;
use crate::matroid::{contract_point_simplified, BinaryMatroid};
use crate::persist::MatroidDatabase;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StratumCount {
    pub rank: usize,
    pub size: usize,
    pub total: usize,
    pub three_connected: usize,
    pub internally_4_connected: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Classification {
    pub counts: Vec<StratumCount>,
    pub internally_4_connected: Vec<CanonicalKey>,
    /// 3-connected but not internally 4-connected.
    pub three_connected_only: Vec<CanonicalKey>,
    /// Members of `three_connected_only` with an internally 4-connected minor
    /// on at least six elements other than `M(K4)`, `F7`, `F7*` and `M(K3,3)`.
    pub sporadic: Vec<CanonicalKey>,
    /// Catalog names of classified keys.
    pub names: BTreeMap<CanonicalKey, &'static str>,
    /// `(minor, matroid)` pairs of 3-connected members one deletion or
    /// contraction apart, when requested.
    pub minor_edges: Vec<(CanonicalKey, CanonicalKey)>,
}

impl Classification {
    pub fn name_of(&self, key: &CanonicalKey) -> Option<&'static str> {
        self.names.get(key).copied()
    }
}

struct Node {
    c3: bool,
    i4c: bool,
    children: Vec<CanonicalKey>,
}

fn examine(key: &CanonicalKey) -> Result<Node> {
    let m = BinaryMatroid::from_key(key);
    let c3 = m.is_3connected();
    let i4c = c3 && m.is_internally_4connected();
    let pts = key.points();
    let w = key.width();
    let mut children = Vec::new();
    if w > 0 {
        let c = canon::canonize_unchecked(pts, w);
        for orbit in canon::orbits_on_points(&c.generators, pts) {
            let e = orbit[0];
            let del: Vec<u32> = pts.iter().copied().filter(|&p| p != e).collect();
            children.push(canon::canonize_unchecked(&del, w).key);
            children.push(canon::canonize_unchecked(&contract_point_simplified(pts, e), w - 1).key);
        }
    }
    Ok(Node { c3, i4c, children })
}

/// Connectivity census of a database, with the minor-closed search for
/// 3-connected members above a large internally 4-connected minor.
pub fn classify(db: &MatroidDatabase, with_edges: bool) -> Result<Classification> {
    let mut names = BTreeMap::new();
    for e in catalog::catalog() {
        if e.matroid.is_simple() {
            names.entry(e.matroid.canonical_key()?).or_insert(e.name);
        }
    }
    let small: Vec<CanonicalKey> =
        ["M1", "M2", "M3", "M14"].iter().map(|n| catalog::lookup(n)?.matroid.canonical_key()).collect::<Result<_>>()?;

    let mut by_size: BTreeMap<usize, Vec<&CanonicalKey>> = BTreeMap::new();
    for k in db.keys() {
        by_size.entry(k.len()).or_default().push(k);
    }
    let mut good: HashMap<CanonicalKey, bool> = HashMap::new();
    let mut flags: BTreeMap<CanonicalKey, (bool, bool)> = BTreeMap::new();
    let mut out = Classification::default();
    for keys in by_size.values() {
        let nodes: Vec<Node> = keys.par_iter().map(|k| examine(k)).collect::<Result<_>>()?;
        for (k, node) in keys.iter().zip(&nodes) {
            let own = node.i4c && k.len() >= 6 && !small.contains(k);
            let g = own || node.children.iter().any(|c| good.get(c).copied().unwrap_or(false));
            good.insert((*k).clone(), g);
            flags.insert((*k).clone(), (node.c3, node.i4c));
            if node.c3 && !node.i4c && g {
                out.sporadic.push((*k).clone());
            }
        }
        if with_edges {
            for (k, node) in keys.iter().zip(&nodes) {
                if !node.c3 {
                    continue;
                }
                let mut kids: Vec<&CanonicalKey> =
                    node.children.iter().filter(|c| flags.get(*c).is_some_and(|f| f.0)).collect();
                kids.sort();
                kids.dedup();
                out.minor_edges.extend(kids.into_iter().map(|c| (c.clone(), (*k).clone())));
            }
        }
    }
    for ((rank, size), keys) in db.strata() {
        let mut count = StratumCount { rank, size, total: keys.len(), three_connected: 0, internally_4_connected: 0 };
        for k in keys {
            let (c3, i4c) = flags[k];
            if i4c {
                count.internally_4_connected += 1;
                out.internally_4_connected.push(k.clone());
            } else if c3 {
                out.three_connected_only.push(k.clone());
            }
            count.three_connected += usize::from(c3);
        }
        out.counts.push(count);
    }
    out.sporadic.sort();
    let interesting = |k: &CanonicalKey| flags.get(k).is_some_and(|f| f.0);
    out.names = names.into_iter().filter(|(k, _)| interesting(k) && db.contains(k)).collect();
    Ok(out)
}
