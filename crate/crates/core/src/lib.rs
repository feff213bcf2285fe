//! Binary matroids as point sets of projective space over GF(2): canonical
//! forms, connectivity, minors, exhaustive generation with excluded minors,
//! and a catalog of the internally 4-connected prism-free ones.

pub mod canon;
pub mod catalog;
pub mod connectivity;
pub mod construct;
pub mod error;
pub mod generator;
pub mod gf2;
pub mod graph;
pub mod matroid;
pub mod minor;
pub mod perm;
pub mod persist;
pub mod verify;

pub use canon::{canonical_key, canonize, stabilizer, CanonicalKey, LinearMap, StabilizerGroup};
pub use catalog::{CatalogEntry, Expected};
pub use error::{Error, Result};
pub use generator::{classify, enumerate_minor_free, splitter_search, Classification, EnumerateOptions, Excluded};
pub use gf2::{GF2Matrix, GF2Vector};
pub use graph::SimpleGraph;
pub use matroid::BinaryMatroid;
pub use minor::{has_minor, has_minor_list, MinorOracle};
pub use persist::{read_db, write_db, DbHeader, MatroidDatabase};
