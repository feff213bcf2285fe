//! The `.bmdb` database format.
//!
//! ```text
//! #format binmat-db
//! #version 1
//! #width 5
//! #exclude PRISM
//! #setting <name> <value>
//! #progress 5 9
//! #stratum 3 7
//! r=3;1,2,3,4,5,6,7
//! #count 1
//! #end 1
//! ```
//!
//! Strata appear in increasing `(rank, size)` order and their records in
//! increasing key order. `#progress` names the last level an enumeration
//! completed; `#end` carries the total record count and marks a complete file.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use crate::canon::CanonicalKey;
use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;
const MAGIC: &str = "binmat-db";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DbHeader {
    pub version: u32,
    /// Largest rank the database is meant to cover.
    pub width: usize,
    /// Catalog names of the excluded minors.
    pub exclude: Vec<String>,
    pub settings: BTreeMap<String, String>,
    /// Last `(rank, size)` level known complete.
    pub progress: Option<(usize, usize)>,
}

impl DbHeader {
    pub fn new(width: usize, exclude: Vec<String>) -> Self {
        DbHeader { version: FORMAT_VERSION, width, exclude, settings: BTreeMap::new(), progress: None }
    }
}

/// Rank-stratified sets of canonical keys.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidDatabase {
    pub header: DbHeader,
    strata: BTreeMap<(usize, usize), Vec<CanonicalKey>>,
}

impl MatroidDatabase {
    pub fn new(header: DbHeader) -> Self {
        MatroidDatabase { header, strata: BTreeMap::new() }
    }

    /// Replaces a stratum. Keys are sorted and deduplicated; each must have the
    /// stratum's rank and size.
    pub fn set_stratum(&mut self, rank: usize, size: usize, mut keys: Vec<CanonicalKey>) -> Result<()> {
        if let Some(k) = keys.iter().find(|k| k.rank() != rank || k.len() != size) {
            return Err(Error::Invalid(format!("key {k} does not belong to stratum rank={rank} size={size}")));
        }
        keys.sort_unstable();
        keys.dedup();
        self.strata.insert((rank, size), keys);
        Ok(())
    }

    /// Adds keys to their strata, creating them as needed.
    pub fn insert_all(&mut self, keys: impl IntoIterator<Item = CanonicalKey>) {
        let mut touched = Vec::new();
        for k in keys {
            let at = (k.rank(), k.len());
            self.strata.entry(at).or_default().push(k);
            touched.push(at);
        }
        touched.sort_unstable();
        touched.dedup();
        for at in touched {
            let v = self.strata.get_mut(&at).expect("just inserted");
            v.sort_unstable();
            v.dedup();
        }
    }

    pub fn has_stratum(&self, rank: usize, size: usize) -> bool {
        self.strata.contains_key(&(rank, size))
    }

    /// Whether the database answers membership for `(rank, size)`: the stratum
    /// is present, or lies past the closing empty stratum of its rank.
    pub fn covers(&self, rank: usize, size: usize) -> bool {
        if self.has_stratum(rank, size) {
            return true;
        }
        let mut of_rank = self.strata.range((rank, 0)..=(rank, usize::MAX));
        match (of_rank.next(), of_rank.next_back()) {
            (Some((&(_, first), _)), Some((&(_, last), keys))) => size < first || (keys.is_empty() && size > last),
            (Some((&(_, only), keys)), None) => size < only || (keys.is_empty() && size > only),
            _ => false,
        }
    }

    /// Whether the largest stratum of `rank` is present and empty.
    pub fn rank_closed(&self, rank: usize) -> bool {
        self.strata.range((rank, 0)..=(rank, usize::MAX)).next_back().is_some_and(|(_, v)| v.is_empty())
    }

    pub fn stratum(&self, rank: usize, size: usize) -> Option<&[CanonicalKey]> {
        self.strata.get(&(rank, size)).map(Vec::as_slice)
    }

    /// `((rank, size), keys)` in increasing order.
    pub fn strata(&self) -> impl Iterator<Item = ((usize, usize), &[CanonicalKey])> {
        self.strata.iter().map(|(&k, v)| (k, v.as_slice()))
    }

    pub fn keys(&self) -> impl Iterator<Item = &CanonicalKey> {
        self.strata.values().flatten()
    }

    pub fn len(&self) -> usize {
        self.strata.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, key: &CanonicalKey) -> bool {
        self.strata.get(&(key.rank(), key.len())).is_some_and(|v| v.binary_search(key).is_ok())
    }

    /// Drops every stratum after `(rank, size)`.
    pub fn truncate_after(&mut self, rank: usize, size: usize) {
        self.strata.retain(|&k, _| k <= (rank, size));
    }

    /// Sorted union. Versions and exclusions must agree; the width is the
    /// larger one; settings must not conflict.
    pub fn merge(&self, other: &MatroidDatabase) -> Result<MatroidDatabase> {
        let (a, b) = (&self.header, &other.header);
        if a.version != b.version {
            return Err(Error::IncompatibleHeaders(format!("version {} vs {}", a.version, b.version)));
        }
        let (mut ea, mut eb) = (a.exclude.clone(), b.exclude.clone());
        ea.sort();
        eb.sort();
        if ea != eb {
            return Err(Error::IncompatibleHeaders(format!(
                "excluded minors [{}] vs [{}]",
                a.exclude.join(" "),
                b.exclude.join(" ")
            )));
        }
        let mut settings = a.settings.clone();
        for (k, v) in &b.settings {
            match settings.get(k) {
                Some(x) if x != v => {
                    return Err(Error::IncompatibleHeaders(format!("setting {k}: `{x}` vs `{v}`")));
                }
                _ => {
                    settings.insert(k.clone(), v.clone());
                }
            }
        }
        let header = DbHeader {
            version: a.version,
            width: a.width.max(b.width),
            exclude: ea,
            settings,
            progress: a.progress.max(b.progress),
        };
        let mut strata = self.strata.clone();
        for (&at, keys) in &other.strata {
            let v = strata.entry(at).or_default();
            v.extend(keys.iter().cloned());
            v.sort_unstable();
            v.dedup();
        }
        Ok(MatroidDatabase { header, strata })
    }

    pub fn to_text(&self) -> String {
        let h = &self.header;
        let mut out = String::new();
        let _ = writeln!(out, "#format {MAGIC}");
        let _ = writeln!(out, "#version {}", h.version);
        let _ = writeln!(out, "#width {}", h.width);
        let _ = writeln!(out, "#exclude {}", h.exclude.join(" "));
        for (k, v) in &h.settings {
            let _ = writeln!(out, "#setting {k} {v}");
        }
        if let Some((r, k)) = h.progress {
            let _ = writeln!(out, "#progress {r} {k}");
        }
        for (&(r, n), keys) in &self.strata {
            let _ = writeln!(out, "#stratum {r} {n}");
            for k in keys {
                let _ = writeln!(out, "{k}");
            }
            let _ = writeln!(out, "#count {}", keys.len());
        }
        let _ = writeln!(out, "#end {}", self.len());
        out
    }

    /// Parses the text format; `path` only labels errors.
    pub fn from_text(text: &str, path: &str) -> Result<MatroidDatabase> {
        Parser { path, last_complete: None }.parse(text)
    }
}

struct Parser<'a> {
    path: &'a str,
    last_complete: Option<(usize, usize)>,
}

impl Parser<'_> {
    fn err(&self, line: usize, msg: impl Into<String>) -> Error {
        Error::Parse { path: self.path.to_string(), line, msg: msg.into() }
    }

    fn truncated(&self) -> Error {
        let last = match self.last_complete {
            Some((r, k)) => format!("rank={r} size={k}"),
            None => "none".to_string(),
        };
        Error::Truncated { path: self.path.to_string(), last }
    }

    fn pair(&self, line: usize, value: &str) -> Result<(usize, usize)> {
        let mut it = value.split(' ');
        let parse = |s: Option<&str>| s.and_then(|s| s.parse::<usize>().ok());
        match (parse(it.next()), parse(it.next()), it.next()) {
            (Some(a), Some(b), None) => Ok((a, b)),
            _ => Err(self.err(line, format!("expected two integers, found `{value}`"))),
        }
    }

    fn parse(mut self, text: &str) -> Result<MatroidDatabase> {
        let mut lines = text.split_inclusive('\n').enumerate().map(|(i, l)| (i + 1, l));
        let header_line = |name: &str, lines: &mut dyn Iterator<Item = (usize, &str)>| -> Result<(usize, String)> {
            let (no, raw) = lines.next().ok_or_else(|| self.truncated())?;
            let l = raw.strip_suffix('\n').ok_or_else(|| self.truncated())?;
            let value = l
                .strip_prefix('#')
                .and_then(|l| l.strip_prefix(name))
                .and_then(|l| l.strip_prefix(' ').or(if l.is_empty() { Some("") } else { None }))
                .ok_or_else(|| self.err(no, format!("expected `#{name}` header")))?;
            Ok((no, value.to_string()))
        };
        let (no, magic) = header_line("format", &mut lines)?;
        if magic != MAGIC {
            return Err(self.err(no, format!("unknown format `{magic}`")));
        }
        let (no, v) = header_line("version", &mut lines)?;
        let version: u32 = v.parse().map_err(|_| self.err(no, format!("bad version `{v}`")))?;
        if version != FORMAT_VERSION {
            return Err(Error::Format {
                path: self.path.to_string(),
                msg: format!("version mismatch: file has {version}, expected {FORMAT_VERSION}"),
            });
        }
        let (no, w) = header_line("width", &mut lines)?;
        let width: usize = w.parse().map_err(|_| self.err(no, format!("bad width `{w}`")))?;
        let (_, ex) = header_line("exclude", &mut lines)?;
        let exclude: Vec<String> = if ex.is_empty() { Vec::new() } else { ex.split(' ').map(String::from).collect() };
        let mut header = DbHeader { version, width, exclude, settings: BTreeMap::new(), progress: None };
        let mut strata: BTreeMap<(usize, usize), Vec<CanonicalKey>> = BTreeMap::new();
        let mut open: Option<((usize, usize), Vec<CanonicalKey>)> = None;
        let mut seen_stratum = false;
        for (no, raw) in lines {
            let Some(l) = raw.strip_suffix('\n') else {
                return Err(self.truncated());
            };
            if let Some(rest) = l.strip_prefix('#') {
                let (name, value) = rest.split_once(' ').unwrap_or((rest, ""));
                match name {
                    "setting" if !seen_stratum && open.is_none() => {
                        let (k, v) =
                            value.split_once(' ').ok_or_else(|| self.err(no, "setting needs a name and a value"))?;
                        if header.settings.last_key_value().is_some_and(|(last, _)| last.as_str() >= k) {
                            return Err(self.err(no, "settings out of order"));
                        }
                        header.settings.insert(k.to_string(), v.to_string());
                    }
                    "progress" if !seen_stratum && open.is_none() && header.progress.is_none() => {
                        header.progress = Some(self.pair(no, value)?);
                    }
                    "stratum" if open.is_none() => {
                        let at = self.pair(no, value)?;
                        if strata.last_key_value().is_some_and(|(&last, _)| last >= at) {
                            return Err(self.err(no, "strata out of order"));
                        }
                        seen_stratum = true;
                        open = Some((at, Vec::new()));
                    }
                    "count" => {
                        let (at, keys) = open.take().ok_or_else(|| self.err(no, "`#count` outside a stratum"))?;
                        let n: usize = value.parse().map_err(|_| self.err(no, format!("bad count `{value}`")))?;
                        if n != keys.len() {
                            return Err(Error::Format {
                                path: self.path.to_string(),
                                msg: format!(
                                    "checksum failure at line {no}: stratum rank={} size={} has {} records, count says {n}",
                                    at.0,
                                    at.1,
                                    keys.len()
                                ),
                            });
                        }
                        strata.insert(at, keys);
                        self.last_complete = Some(at);
                    }
                    "end" if open.is_none() => {
                        let total: usize = value.parse().map_err(|_| self.err(no, format!("bad total `{value}`")))?;
                        let have: usize = strata.values().map(Vec::len).sum();
                        if total != have {
                            return Err(Error::Format {
                                path: self.path.to_string(),
                                msg: format!("checksum failure: {have} records, `#end` says {total}"),
                            });
                        }
                        if no != text.lines().count() {
                            return Err(self.err(no + 1, "content after `#end`"));
                        }
                        return Ok(MatroidDatabase { header, strata });
                    }
                    _ => return Err(self.err(no, format!("unexpected `#{name}` line"))),
                }
            } else {
                let (at, keys) = open.as_mut().ok_or_else(|| self.err(no, "record outside a stratum"))?;
                let key: CanonicalKey = l.parse().map_err(|e: String| self.err(no, e))?;
                if key.rank() != at.0 || key.len() != at.1 {
                    return Err(self.err(no, format!("record does not belong to stratum rank={} size={}", at.0, at.1)));
                }
                if keys.last().is_some_and(|last| *last >= key) {
                    return Err(self.err(no, "records out of order"));
                }
                keys.push(key);
            }
        }
        Err(self.truncated())
    }
}

/// Writes atomically: a sibling temporary file is renamed over `path`.
pub fn write_db(db: &MatroidDatabase, path: &Path) -> Result<()> {
    let tmp = path.with_extension("bmdb.tmp");
    let mut f = fs::File::create(&tmp).map_err(|e| Error::io(&tmp, e))?;
    f.write_all(db.to_text().as_bytes()).map_err(|e| Error::io(&tmp, e))?;
    f.sync_all().map_err(|e| Error::io(&tmp, e))?;
    drop(f);
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

pub fn read_db(path: &Path) -> Result<MatroidDatabase> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    MatroidDatabase::from_text(&text, &path.display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(s: &str) -> CanonicalKey {
        s.parse().unwrap()
    }

    fn sample() -> MatroidDatabase {
        let mut h = DbHeader::new(3, vec!["PRISM".into()]);
        h.settings.insert("seeded".into(), "yes".into());
        h.progress = Some((3, 7));
        let mut db = MatroidDatabase::new(h);
        db.insert_all(["r=3;1,2,3,4,5,6,7", "r=2;1,2,3", "r=3;1,2,4", "r=0;"].map(key));
        db.set_stratum(3, 8, vec![]).unwrap();
        db
    }

    #[test]
    fn empty_round_trip() {
        let db = MatroidDatabase::new(DbHeader::new(0, vec![]));
        let text = db.to_text();
        assert_eq!(MatroidDatabase::from_text(&text, "x").unwrap().to_text(), text);
    }

    #[test]
    fn round_trip_is_byte_exact() {
        let text = sample().to_text();
        let back = MatroidDatabase::from_text(&text, "x").unwrap();
        assert_eq!(back, sample());
        assert_eq!(back.to_text(), text);
        assert!(back.has_stratum(3, 8));
        assert!(!back.has_stratum(3, 9));
        assert!(back.covers(3, 9));
        assert!(back.covers(3, 1));
        assert!(!back.covers(3, 5));
        assert!(!back.covers(4, 5));
        assert!(back.rank_closed(3));
        assert!(!back.rank_closed(2));
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("a.bmdb");
        write_db(&sample(), &p).unwrap();
        assert_eq!(read_db(&p).unwrap(), sample());
        assert!(matches!(read_db(&dir.path().join("missing.bmdb")), Err(Error::Io { .. })));
    }

    #[test]
    fn truncation_names_last_level() {
        let text = sample().to_text();
        let cut = &text[..text.find("r=3;1,2,4").unwrap() + 4];
        match MatroidDatabase::from_text(cut, "t.bmdb") {
            Err(Error::Truncated { last, .. }) => assert_eq!(last, "rank=2 size=3"),
            other => panic!("{other:?}"),
        }
        let no_end = text.replace("#end 4\n", "");
        assert!(matches!(MatroidDatabase::from_text(&no_end, "t"), Err(Error::Truncated { .. })));
    }

    #[test]
    fn malformed_lines_report_position() {
        let text = sample().to_text().replace("r=3;1,2,4", "r=3;1,x,4");
        match MatroidDatabase::from_text(&text, "t") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 14),
            other => panic!("{other:?}"),
        }
        let bad_count = sample().to_text().replace("#count 0", "#count 3");
        assert!(matches!(MatroidDatabase::from_text(&bad_count, "t"), Err(Error::Format { .. })));
        let bad_version = sample().to_text().replace("#version 1", "#version 9");
        assert!(matches!(MatroidDatabase::from_text(&bad_version, "t"), Err(Error::Format { .. })));
    }

    #[test]
    fn contains_and_merge() {
        let db = sample();
        assert!(db.contains(&key("r=3;1,2,3,4,5,6,7")));
        assert!(!db.contains(&key("r=3;1,2,3,4")));
        assert_eq!(db.merge(&db).unwrap(), db);
        let mut other = MatroidDatabase::new(DbHeader::new(4, vec!["PRISM".into()]));
        other.insert_all([key("r=3;1,2,3,4")]);
        let ab = db.merge(&other).unwrap();
        assert_eq!(ab, other.merge(&db).unwrap());
        assert_eq!(ab.len(), 5);
        let foreign = MatroidDatabase::new(DbHeader::new(4, vec![]));
        assert!(matches!(db.merge(&foreign), Err(Error::IncompatibleHeaders(_))));
    }
}
