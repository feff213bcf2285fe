use std::collections::HashSet;

use rayon::prelude::*;

use crate::canon::{self, CanonicalKey};
use crate::catalog;
use crate::error::{Error, Result};
use crate::matroid::BinaryMatroid;
use crate::minor::MinorOracle;

#[derive(Clone, Debug)]
pub struct SplitterOptions {
    pub max_steps: usize,
    /// Minors no search node may have.
    pub forbidden: Vec<BinaryMatroid>,
    /// Also prune nodes with a minor isomorphic to an internally
    /// 4-connected catalog matroid one element larger than the seed.
    pub prune_larger_listed: bool,
}

impl Default for SplitterOptions {
    fn default() -> Self {
        SplitterOptions { max_steps: 3, forbidden: vec![catalog::prism()], prune_larger_listed: true }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Extension,
    Coextension,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchNode {
    pub key: CanonicalKey,
    pub depth: usize,
    pub step: Step,
    /// Key of the node this one was first reached from.
    pub parent: CanonicalKey,
    pub internally_4_connected: bool,
}

impl SearchNode {
    pub fn matroid(&self) -> BinaryMatroid {
        BinaryMatroid::from_key(&self.key)
    }
}

/// Single-point additions to a simple set, one per automorphism orbit.
fn additions(points: &[u32], width: usize) -> Vec<Vec<u32>> {
    let c = canon::canonize_unchecked(points, width);
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    let outside: Vec<u32> = (1..1u32 << width).filter(|p| sorted.binary_search(p).is_err()).collect();
    canon::orbits_on_points(&c.generators, &outside)
        .into_iter()
        .map(|o| {
            let mut y = points.to_vec();
            y.push(o[0]);
            y
        })
        .collect()
}

/// The 3-connected single-element extensions and coextensions of a node.
fn successors(key: &CanonicalKey) -> Result<Vec<(CanonicalKey, Step)>> {
    let w = key.width();
    let mut cands: Vec<(usize, Vec<u32>, Step)> =
        additions(key.points(), w).into_iter().map(|y| (w, y, Step::Extension)).collect();
    let dual = BinaryMatroid::from_key(key).dual();
    let dw = dual.width();
    cands.extend(additions(dual.columns(), dw).into_iter().map(|y| (dw, y, Step::Coextension)));
    let found: Vec<Option<(CanonicalKey, Step)>> = cands
        .into_par_iter()
        .map(|(width, pts, step)| {
            let m = BinaryMatroid::from_columns(width, pts)?;
            if !m.is_3connected() {
                return Ok(None);
            }
            let m = if step == Step::Coextension { m.dual() } else { m };
            Ok(Some((m.canonical_key()?, step)))
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// Breadth-first search over 3-connected extensions and coextensions of
/// `seed`, up to `opts.max_steps` steps, keeping the nodes without a
/// forbidden minor. Returns every distinct node reached, in discovery order.
pub fn splitter_search(seed: &BinaryMatroid, opts: &SplitterOptions) -> Result<Vec<SearchNode>> {
    if seed.len() < 6 || !seed.is_3connected() {
        return Err(Error::Invalid("the seed must be 3-connected with at least 6 elements".into()));
    }
    let seed_key = seed.canonical_key()?;
    let mut oracles: Vec<MinorOracle> = opts.forbidden.iter().map(MinorOracle::new).collect::<Result<_>>()?;
    if opts.prune_larger_listed {
        for e in catalog::i4c_prism_free() {
            if e.matroid.len() == seed.len() + 1 {
                oracles.push(MinorOracle::new(&e.matroid)?);
            }
        }
    }
    let mut seen: HashSet<CanonicalKey> = HashSet::from([seed_key.clone()]);
    let mut frontier = vec![seed_key];
    let mut out = Vec::new();
    for depth in 1..=opts.max_steps {
        let mut next = Vec::new();
        for parent in &frontier {
            for (key, step) in successors(parent)? {
                if !seen.insert(key.clone()) {
                    continue;
                }
                if oracles.iter_mut().any(|o| o.check_key(&key)) {
                    continue;
                }
                let i4c = BinaryMatroid::from_key(&key).is_internally_4connected();
                out.push(SearchNode {
                    key: key.clone(),
                    depth,
                    step,
                    parent: parent.clone(),
                    internally_4_connected: i4c,
                });
                next.push(key);
            }
        }
        frontier = next;
    }
    Ok(out)
}
