use std::path::PathBuf;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::Excluded;
use crate::canon::{self, CanonicalKey, Canonization};
use crate::error::{Error, Result};
use crate::matroid::contract_point_simplified;
use crate::persist::{write_db, DbHeader, MatroidDatabase};

/// One completed `(rank, size)` level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelStats {
    pub rank: usize,
    pub size: usize,
    pub classes: usize,
    /// Time since the run started.
    pub elapsed: Duration,
}

impl std::fmt::Display for LevelStats {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "r={} k={} classes={} elapsed={:.3}", self.rank, self.size, self.classes, self.elapsed.as_secs_f64())
    }
}

#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    pub max_rank: usize,
    pub excluded: Excluded,
    /// Rewritten after every level.
    pub checkpoint: Option<PathBuf>,
    /// Worker threads; `None` uses every core.
    pub jobs: Option<usize>,
}

impl EnumerateOptions {
    pub fn new(max_rank: usize, excluded: Excluded) -> Self {
        EnumerateOptions { max_rank, excluded, checkpoint: None, jobs: None }
    }
}

struct Filter<'a> {
    excluded: &'a Excluded,
    min_len: usize,
    db: &'a MatroidDatabase,
}

impl Filter<'_> {
    fn member(&self, key: &CanonicalKey) -> Result<bool> {
        if !self.db.covers(key.rank(), key.len()) {
            return Err(Error::MissingStratum { rank: key.rank(), size: key.len() });
        }
        Ok(self.db.contains(key))
    }

    /// Whether `y` avoids every excluded minor, given that the database holds
    /// all smaller excluded-minor-free matroids.
    fn accepts(&self, y: &[u32], width: usize, cy: &Canonization) -> Result<bool> {
        if self.excluded.contains(&cy.key) {
            return Ok(false);
        }
        if cy.key.len() <= self.min_len {
            return Ok(true);
        }
        let reps: Vec<u32> = canon::orbits_on_points(&cy.generators, y).into_iter().map(|o| o[0]).collect();
        for &e in &reps {
            let del: Vec<u32> = y.iter().copied().filter(|&p| p != e).collect();
            if !self.member(&canon::canonize_unchecked(&del, width).key)? {
                return Ok(false);
            }
        }
        for &e in &reps {
            let con = contract_point_simplified(y, e);
            if !self.member(&canon::canonize_unchecked(&con, width - 1).key)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn augment(&self, base: &[u32], x: u32, width: usize, out: &mut Vec<CanonicalKey>) -> Result<()> {
        let mut y = base.to_vec();
        y.push(x);
        let cy = canon::canonize_unchecked(&y, width);
        if !canon::least_orbit_of(&y, &cy).contains(&x) {
            return Ok(());
        }
        if self.accepts(&y, width, &cy)? {
            out.push(cy.key);
        }
        Ok(())
    }

    fn children_of_spanning(&self, key: &CanonicalKey, width: usize) -> Result<Vec<CanonicalKey>> {
        let pts = key.points();
        let c = canon::canonize_unchecked(pts, width);
        let outside: Vec<u32> = (1..1u32 << width).filter(|p| pts.binary_search(p).is_err()).collect();
        let mut out = Vec::new();
        for orbit in canon::orbits_on_points(&c.generators, &outside) {
            self.augment(pts, orbit[0], width, &mut out)?;
        }
        Ok(out)
    }

    fn children_of_lower(&self, key: &CanonicalKey, width: usize) -> Result<Vec<CanonicalKey>> {
        let mut out = Vec::new();
        self.augment(key.points(), 1 << (width - 1), width, &mut out)?;
        Ok(out)
    }
}

/// One level of the orderly generation: from the spanning rank-`rank` classes
/// of size `k` (`level`) and the rank-`(rank - 1)` classes of size `k`
/// (`lower`), every excluded-minor-free spanning rank-`rank` class of size
/// `k + 1`, sorted. `db` must hold every smaller excluded-minor-free class.
///
/// Runs on the current rayon pool.
pub fn orderly_step(
    level: &[CanonicalKey],
    lower: &[CanonicalKey],
    rank: usize,
    excluded: &Excluded,
    db: &MatroidDatabase,
) -> Result<Vec<CanonicalKey>> {
    if rank == 0 || rank > 24 {
        return Err(Error::WidthOutOfRange(rank));
    }
    let filter = Filter { excluded, min_len: excluded.min_len(), db };
    let upper: Vec<Vec<CanonicalKey>> =
        level.par_iter().map(|k| filter.children_of_spanning(k, rank)).collect::<Result<_>>()?;
    let lifted: Vec<Vec<CanonicalKey>> =
        lower.par_iter().map(|k| filter.children_of_lower(k, rank)).collect::<Result<_>>()?;
    let mut out: Vec<CanonicalKey> = upper.into_iter().chain(lifted).flatten().collect();
    out.par_sort_unstable();
    if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::Invalid(format!("class {} generated twice", w[0])));
    }
    Ok(out)
}

fn fresh(opts: &EnumerateOptions) -> Result<MatroidDatabase> {
    let mut header = DbHeader::new(opts.max_rank, opts.excluded.names().to_vec());
    header.settings.insert("generator".into(), "orderly".into());
    let mut db = MatroidDatabase::new(header);
    db.set_stratum(0, 0, vec![CanonicalKey::from_canonical_points(0, Vec::new())])?;
    db.set_stratum(0, 1, Vec::new())?;
    db.header.progress = Some((0, 1));
    Ok(db)
}

/// Every simple binary matroid of rank at most `opts.max_rank` with no minor
/// in `opts.excluded`, one canonical key per isomorphism class.
///
/// Continues from `resume` when given; its excluded minors must match.
/// `progress` is called after every level.
pub fn enumerate_minor_free(
    opts: &EnumerateOptions,
    resume: Option<MatroidDatabase>,
    progress: &mut dyn FnMut(&LevelStats),
) -> Result<MatroidDatabase> {
    if opts.max_rank == 0 || opts.max_rank > 24 {
        return Err(Error::WidthOutOfRange(opts.max_rank));
    }
    let mut db = match resume {
        Some(db) => {
            if db.header.exclude != opts.excluded.names() {
                return Err(Error::IncompatibleHeaders(format!(
                    "database excludes [{}], requested [{}]",
                    db.header.exclude.join(" "),
                    opts.excluded.names().join(" ")
                )));
            }
            if !db.has_stratum(0, 0) {
                return Err(Error::MissingStratum { rank: 0, size: 0 });
            }
            db
        }
        None => fresh(opts)?,
    };
    db.header.width = db.header.width.max(opts.max_rank);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
    let start = Instant::now();
    for r in 1..=opts.max_rank {
        if db.rank_closed(r) {
            continue;
        }
        let mut k = db.strata().filter(|((rank, _), _)| *rank == r).map(|((_, s), _)| s).last().unwrap_or(r - 1);
        loop {
            let level = db.stratum(r, k).unwrap_or(&[]);
            let lower = db.stratum(r - 1, k).unwrap_or(&[]);
            let next = pool.install(|| orderly_step(level, lower, r, &opts.excluded, &db))?;
            let classes = next.len();
            db.set_stratum(r, k + 1, next)?;
            db.header.progress = Some((r, k + 1));
            if let Some(path) = &opts.checkpoint {
                write_db(&db, path)?;
            }
            progress(&LevelStats { rank: r, size: k + 1, classes, elapsed: start.elapsed() });
            k += 1;
            if classes == 0 && db.stratum(r - 1, k).is_none_or(<[_]>::is_empty) {
                break;
            }
        }
    }
    Ok(db)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(db: &MatroidDatabase, max_size: usize) -> Vec<usize> {
        (0..=max_size).map(|k| db.strata().filter(|((_, s), _)| *s == k).map(|(_, v)| v.len()).sum()).collect()
    }

    #[test]
    fn rank_three_census() {
        let db = enumerate_minor_free(&EnumerateOptions::new(3, Excluded::none()), None, &mut |_| {}).unwrap();
        // subsets of the Fano plane up to collineation
        assert_eq!(counts(&db, 7), [1, 1, 1, 2, 2, 1, 1, 1]);
        assert!(db.rank_closed(3));
    }

    #[test]
    fn excluding_the_fano_plane() {
        let ex = Excluded::from_names(&["M2"]).unwrap();
        let db = enumerate_minor_free(&EnumerateOptions::new(3, ex), None, &mut |_| {}).unwrap();
        assert_eq!(counts(&db, 7), [1, 1, 1, 2, 2, 1, 1, 0]);
    }

    #[test]
    fn resume_matches_a_full_run() {
        let opts = EnumerateOptions::new(4, Excluded::none());
        let full = enumerate_minor_free(&opts, None, &mut |_| {}).unwrap();
        let mut partial = enumerate_minor_free(&EnumerateOptions::new(3, Excluded::none()), None, &mut |_| {}).unwrap();
        partial.header.width = 4;
        let resumed = enumerate_minor_free(&opts, Some(partial), &mut |_| {}).unwrap();
        assert_eq!(full.to_text(), resumed.to_text());
        let wrong = enumerate_minor_free(
            &EnumerateOptions::new(4, Excluded::from_names(&["M2"]).unwrap()),
            Some(full),
            &mut |_| {},
        );
        assert!(matches!(wrong, Err(Error::IncompatibleHeaders(_))));
    }
}
