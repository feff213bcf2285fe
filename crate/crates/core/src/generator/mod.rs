//! Exhaustive generation of simple binary matroids with excluded minors, the
//! extension search from known matroids, and classification of the results.

mod classify;
mod orderly;
mod splitter;

pub use classify::{classify, Classification, StratumCount};
pub use orderly::{enumerate_minor_free, orderly_step, EnumerateOptions, LevelStats};
pub use splitter::{splitter_search, SearchNode, SplitterOptions, Step};

use crate::canon::CanonicalKey;
use crate::catalog;
use crate::error::{Error, Result};

/// Named excluded minors, resolved to canonical keys.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Excluded {
    names: Vec<String>,
    keys: Vec<CanonicalKey>,
}

impl Excluded {
    pub fn none() -> Self {
        Self::default()
    }

    /// Resolves catalog names. Each named matroid must be simple.
    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let mut out = Excluded::default();
        for n in names {
            let entry = catalog::lookup(n.as_ref())?;
            if !entry.matroid.is_simple() {
                return Err(Error::Invalid(format!("excluded minor {} is not simple", entry.name)));
            }
            out.names.push(entry.name.to_string());
            out.keys.push(entry.matroid.canonical_key()?);
        }
        Ok(out)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn keys(&self) -> &[CanonicalKey] {
        &self.keys
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub(crate) fn contains(&self, key: &CanonicalKey) -> bool {
        self.keys.contains(key)
    }

    pub(crate) fn min_len(&self) -> usize {
        self.keys.iter().map(CanonicalKey::len).min().unwrap_or(usize::MAX)
    }
}
