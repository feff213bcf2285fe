//! The named matroids: the 42 internally 4-connected prism-free matroids, the
//! five sporadic ones, and the graphs and geometries around them.

use std::sync::OnceLock;

use crate::construct::{affine_geometry_32, cat, decode_sequence, projective_geometry};
use crate::error::{Error, Result};
use crate::graph::{self, cycle_matroid};
use crate::matroid::BinaryMatroid;

/// Properties a catalog entry is expected to have.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Expected {
    pub size: usize,
    pub rank: usize,
    pub three_connected: bool,
    pub internally_4_connected: bool,
    pub prism_free: bool,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    /// Short conventional name, such as `M(K5)`; may be empty.
    pub description: &'static str,
    pub matroid: BinaryMatroid,
    pub expected: Expected,
}

/// Column values of `PG(3, 2)` in rank-4 table order.
pub const PG32_COLUMNS: [u32; 15] = [8, 4, 2, 1, 12, 10, 9, 6, 5, 3, 14, 13, 11, 7, 15];

/// Column values of `AG(3,2) ▽ U_{1,1}` in rank-5 table order.
pub const CAT_COLUMNS: [u32; 17] = [1, 16, 8, 4, 2, 14, 22, 26, 28, 17, 9, 5, 3, 15, 23, 27, 29];

const RANK4_ROWS: [(&str, &str, &str); 11] = [
    ("M3", "000011100011101", "F7*"),
    ("M4", "000001111011111", "M*(K3,3)"),
    ("M5", "000011111111110", "M(K5)"),
    ("M6", "000011111011111", ""),
    ("M7", "010011111011111", ""),
    ("M8", "000011111111111", ""),
    ("M9", "110011111011111", ""),
    ("M10", "100011111111111", ""),
    ("M11", "110011111111111", ""),
    ("M12", "111011111111111", ""),
    ("M13", "111111111111111", "PG(3,2)"),
];

const RANK5_ROWS: [(&str, &str, &str); 23] = [
    ("M14", "01111110011100000", "M(K3,3)"),
    ("M15", "11111110011000010", ""),
    ("M16", "01111110011100010", "R10"),
    ("M17", "11111111011010000", ""),
    ("M18", "11111110011100010", ""),
    ("M19", "01111111011110000", ""),
    ("M20", "11111111011010010", ""),
    ("M21", "11111111011010001", ""),
    ("M22", "11111111011110000", ""),
    ("M23", "01111111111110000", ""),
    ("M24", "11111111011010011", ""),
    ("M25", "11111111111110000", ""),
    ("M26", "11111111011111000", ""),
    ("M27", "01111111111111000", ""),
    ("M28", "11111111111111000", ""),
    ("M29", "11111111011111100", ""),
    ("M30", "01111111111111100", ""),
    ("M31", "11111111111111100", ""),
    ("M32", "11111111011111110", ""),
    ("M33", "01111111111111110", ""),
    ("M34", "11111111111111110", ""),
    ("M35", "01111111111111111", ""),
    ("M36", "11111111111111111", "AG(3,2) cat U1,1"),
];

const SPORADIC: [(&str, usize, &[u64]); 5] = [
    ("S1", 5, &[1, 4, 5, 8, 9, 14, 15, 16, 22, 27, 29]),
    ("S2", 5, &[1, 3, 4, 8, 9, 14, 15, 16, 22, 27, 29]),
    ("S3", 5, &[1, 3, 4, 5, 8, 9, 14, 15, 16, 22, 27, 29]),
    ("S4", 6, &[1, 2, 4, 8, 15, 16, 32, 42, 44, 49, 56, 63]),
    ("S5", 5, &[1, 2, 3, 4, 5, 8, 9, 14, 15, 16, 22, 27, 29]),
];

fn select(header: &[u32], bits: &str, rank: usize) -> BinaryMatroid {
    let values: Vec<u64> =
        header.iter().zip(bits.bytes()).filter(|(_, b)| *b == b'1').map(|(&c, _)| u64::from(c)).collect();
    decode_sequence(&values, rank).expect("static table data")
}

fn expected(m: &BinaryMatroid, c3: bool, i4c: bool, prism_free: bool) -> Expected {
    Expected { size: m.len(), rank: m.rank(), three_connected: c3, internally_4_connected: i4c, prism_free }
}

fn uniform(name: &'static str, width: usize, cols: Vec<u32>, rank: usize) -> CatalogEntry {
    let matroid = BinaryMatroid::from_columns(width, cols).expect("static data");
    let size = matroid.len();
    CatalogEntry {
        name,
        description: "",
        matroid,
        expected: Expected { size, rank, three_connected: true, internally_4_connected: true, prism_free: true },
    }
}

fn graphic(
    name: &'static str,
    description: &'static str,
    g: &graph::SimpleGraph,
    flags: (bool, bool, bool),
) -> CatalogEntry {
    let matroid = cycle_matroid(g).expect("static graph");
    let expected = expected(&matroid, flags.0, flags.1, flags.2);
    CatalogEntry { name, description, matroid, expected }
}

fn build() -> Vec<CatalogEntry> {
    let mut out = vec![
        uniform("U00", 0, vec![], 0),
        uniform("U01", 0, vec![0], 0),
        uniform("U11", 1, vec![1], 1),
        uniform("U12", 1, vec![1, 1], 1),
        uniform("U13", 1, vec![1, 1, 1], 1),
        uniform("U23", 2, vec![1, 2, 3], 2),
        graphic("M1", "M(K4)", &graph::complete(4), (true, true, true)),
    ];
    let f7 = projective_geometry(3).expect("static");
    out.push(CatalogEntry { name: "M2", description: "F7", expected: expected(&f7, true, true, true), matroid: f7 });
    for (name, bits, desc) in RANK4_ROWS {
        let m = select(&PG32_COLUMNS, bits, 4);
        out.push(CatalogEntry { name, description: desc, expected: expected(&m, true, true, true), matroid: m });
    }
    for (name, bits, desc) in RANK5_ROWS {
        let m = select(&CAT_COLUMNS, bits, 5);
        out.push(CatalogEntry { name, description: desc, expected: expected(&m, true, true, true), matroid: m });
    }
    for (name, rank, values) in SPORADIC {
        let m = decode_sequence(values, rank).expect("static");
        out.push(CatalogEntry { name, description: "", expected: expected(&m, true, false, true), matroid: m });
    }
    let pg = projective_geometry(4).expect("static");
    out.push(CatalogEntry {
        name: "PG32",
        description: "PG(3,2)",
        expected: expected(&pg, true, true, true),
        matroid: pg,
    });
    let ag = affine_geometry_32();
    out.push(CatalogEntry {
        name: "AG32",
        description: "AG(3,2)",
        expected: expected(&ag, true, false, true),
        matroid: ag,
    });
    let u11 = BinaryMatroid::new(1, vec!["e".into()], vec![1]).expect("static");
    let c = cat(&affine_geometry_32(), &u11).expect("static");
    out.push(CatalogEntry {
        name: "CAT",
        description: "AG(3,2) cat U1,1",
        expected: expected(&c, true, true, true),
        matroid: c,
    });
    out.push(graphic("PRISM", "M(prism)", &graph::prism_graph(), (true, false, false)));
    out.push(graphic("K5", "M(K5)", &graph::complete(5), (true, true, true)));
    out.push(graphic("K33", "M(K3,3)", &graph::complete_bipartite(3, 3), (true, true, true)));
    out.push(graphic("W4", "M(W4)", &graph::wheel(4).expect("static"), (true, false, true)));
    out.push(graphic("CUBE", "M(cube)", &graph::cube(), (true, true, false)));
    out.push(graphic("OCTAHEDRON", "M(octahedron)", &graph::octahedron(), (true, true, false)));
    out.push(graphic("TERRAHAWK", "M(terrahawk)", &graph::terrahawk(), (true, true, false)));
    for e in &out {
        assert_eq!(e.matroid.len(), e.expected.size, "{} size", e.name);
        assert_eq!(e.matroid.rank(), e.expected.rank, "{} rank", e.name);
    }
    out
}

/// Every catalog entry, in a fixed order.
pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

/// Case-insensitive lookup.
pub fn lookup(name: &str) -> Result<&'static CatalogEntry> {
    catalog().iter().find(|e| e.name.eq_ignore_ascii_case(name)).ok_or_else(|| Error::UnknownName(name.to_string()))
}

pub fn matroid(name: &str) -> Result<BinaryMatroid> {
    Ok(lookup(name)?.matroid.clone())
}

/// The 42 internally 4-connected prism-free matroids: the six small uniform
/// ones and `M1`..`M36`.
pub fn i4c_prism_free() -> Vec<&'static CatalogEntry> {
    catalog().iter().take(42).collect()
}

/// `M1`..`M36`.
pub fn table_entries() -> Vec<&'static CatalogEntry> {
    catalog().iter().skip(6).take(36).collect()
}

/// `S1`..`S5`.
pub fn sporadic() -> Vec<&'static CatalogEntry> {
    catalog().iter().skip(42).take(5).collect()
}

/// The prism, the excluded minor throughout.
pub fn prism() -> BinaryMatroid {
    cycle_matroid(&graph::prism_graph()).expect("static graph")
}
