//! Simple graphs and their cycle matroids.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::gf2::{self, MAX_WIDTH};
use crate::matroid::BinaryMatroid;

/// A loopless graph without parallel edges. Edge order is significant: it is
/// the element order of the cycle matroid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &(u, v) in &edges {
            if u >= vertices || v >= vertices {
                return Err(Error::Invalid(format!("edge {u}-{v} leaves the vertex range 0..{vertices}")));
            }
            if u == v {
                return Err(Error::Invalid(format!("loop at vertex {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::Invalid(format!("repeated edge {u}-{v}")));
            }
        }
        Ok(SimpleGraph { vertices, edges })
    }

    /// Builds a graph from an edge list that may mention an edge twice; later
    /// copies are dropped.
    fn dedup(vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let edges = edges.into_iter().filter(|&(u, v)| seen.insert((u.min(v), u.max(v)))).collect();
        Self::new(vertices, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut count = self.vertices;
        for &(u, v) in &self.edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
                count -= 1;
            }
        }
        count
    }
}

/// The cycle matroid: edge `uv` is `e_u + e_v`, re-expressed in coordinates of
/// the span so the width equals `|V| - components`. Edges are labelled by
/// their index.
pub fn cycle_matroid(g: &SimpleGraph) -> Result<BinaryMatroid> {
    if g.vertices > MAX_WIDTH {
        return Err(Error::WidthOutOfRange(g.vertices));
    }
    let cols: Vec<u32> = g.edges.iter().map(|&(u, v)| (1u32 << u) | (1u32 << v)).collect();
    let (w, compact) = gf2::compact_columns(&cols);
    BinaryMatroid::from_columns(w, compact)
}

/// The bond matroid, the dual of the cycle matroid.
pub fn bond_matroid(g: &SimpleGraph) -> Result<BinaryMatroid> {
    Ok(cycle_matroid(g)?.dual())
}

/// Hub `0` joined to the rim `1..=n`; spokes first, then rim edges.
pub fn wheel(n: usize) -> Result<SimpleGraph> {
    if n < 3 {
        return Err(Error::Invalid(format!("wheel needs at least 3 rim vertices, got {n}")));
    }
    let spokes = (1..=n).map(|i| (0, i));
    let rim = (1..=n).map(|i| (i, i % n + 1));
    SimpleGraph::new(n + 1, spokes.chain(rim).collect())
}

/// Two `n`-cycles `u_i = i`, `v_i = n + i` joined by the matchings `u_i v_i`
/// and `u_i v_{i-1}`.
pub fn planar_quartic_ladder(n: usize) -> Result<SimpleGraph> {
    if n < 3 {
        return Err(Error::Invalid(format!("planar quartic ladder needs n >= 3, got {n}")));
    }
    let u = |i: usize| i % n;
    let v = |i: usize| n + i % n;
    let mut edges = Vec::with_capacity(4 * n);
    edges.extend((0..n).map(|i| (u(i), u(i + 1))));
    edges.extend((0..n).map(|i| (v(i), v(i + 1))));
    edges.extend((0..n).map(|i| (u(i), v(i))));
    edges.extend((0..n).map(|i| (u(i), v(i + n - 1))));
    SimpleGraph::new(2 * n, edges)
}

/// A Hamilton cycle on `2n - 1` vertices plus `v_i v_{i+n-1}` and
/// `v_i v_{i+n}` for `0 <= i <= n - 1`, indices mod `2n - 1`.
pub fn mobius_quartic_ladder(n: usize) -> Result<SimpleGraph> {
    if n < 3 {
        return Err(Error::Invalid(format!("Möbius quartic ladder needs n >= 3, got {n}")));
    }
    let m = 2 * n - 1;
    let cycle = (0..m).map(|i| (i, (i + 1) % m));
    let chords = (0..n).flat_map(|i| [(i, (i + n - 1) % m), (i, (i + n) % m)]);
    SimpleGraph::dedup(m, cycle.chain(chords))
}

/// Vertices are 3-bit labels; edges join labels at Hamming distance one.
pub fn cube() -> SimpleGraph {
    let mut edges = Vec::new();
    for a in 0..8usize {
        for bit in 0..3 {
            let b = a ^ (1 << bit);
            if a < b {
                edges.push((a, b));
            }
        }
    }
    SimpleGraph::new(8, edges).expect("cube is simple")
}

/// The cube plus vertex `8` joined to the face `{0, 1, 2, 3}`.
pub fn terrahawk() -> SimpleGraph {
    let mut edges = cube().edges;
    edges.extend((0..4).map(|v| (v, 8)));
    SimpleGraph::new(9, edges).expect("terrahawk is simple")
}

/// `K_6` minus the perfect matching `{i, i + 3}`.
pub fn octahedron() -> SimpleGraph {
    let mut edges = Vec::new();
    for a in 0..6 {
        for b in a + 1..6 {
            if b != a + 3 {
                edges.push((a, b));
            }
        }
    }
    SimpleGraph::new(6, edges).expect("octahedron is simple")
}

pub fn complete(n: usize) -> SimpleGraph {
    let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    SimpleGraph::new(n, edges).expect("complete graph is simple")
}

pub fn complete_bipartite(a: usize, b: usize) -> SimpleGraph {
    let edges = (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j))).collect();
    SimpleGraph::new(a + b, edges).expect("complete bipartite graph is simple")
}

/// Triangles `{0, 1, 2}` and `{3, 4, 5}` joined by `i -- i + 3`.
pub fn prism_graph() -> SimpleGraph {
    let edges = vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)];
    SimpleGraph::new(6, edges).expect("prism is simple")
}
