mod common;

use std::collections::BTreeSet;

use binmat::catalog;
use binmat::generator::{
    classify, enumerate_minor_free, splitter_search, EnumerateOptions, Excluded, SplitterOptions, Step,
};
use binmat::minor::minor_children;
use binmat::{BinaryMatroid, MatroidDatabase, MinorOracle};

fn prism_free(rank: usize) -> MatroidDatabase {
    enumerate_minor_free(&EnumerateOptions::new(rank, Excluded::from_names(&["PRISM"]).unwrap()), None, &mut |_| {})
        .unwrap()
}

#[test]
fn census_matches_orbit_partition_at_rank_3() {
    let db = enumerate_minor_free(&EnumerateOptions::new(3, Excluded::none()), None, &mut |_| {}).unwrap();
    assert_eq!(common::db_counts(&db, 7), common::orbit_partition(3).counts_by_cardinality());
}

#[test]
fn excluding_the_fano_plane_drops_exactly_its_class() {
    let all = enumerate_minor_free(&EnumerateOptions::new(3, Excluded::none()), None, &mut |_| {}).unwrap();
    let db = enumerate_minor_free(&EnumerateOptions::new(3, Excluded::from_names(&["M2"]).unwrap()), None, &mut |_| {})
        .unwrap();
    let f7 = catalog::matroid("M2").unwrap().canonical_key().unwrap();
    let want: BTreeSet<_> = all.keys().filter(|k| **k != f7).cloned().collect();
    assert_eq!(db.keys().cloned().collect::<BTreeSet<_>>(), want);
}

#[test]
fn prism_free_database_is_hereditary_and_prism_free() {
    let db = prism_free(5);
    let mut oracle = MinorOracle::new(&catalog::prism()).unwrap();
    for key in db.keys() {
        assert!(!oracle.check_key(key), "{key}");
        for child in minor_children(key.points(), key.width()).unwrap() {
            assert!(db.contains(&child), "{child} is a minor of {key} but missing");
        }
    }
}

#[test]
fn prism_free_database_is_closed_under_duality() {
    let db = prism_free(5);
    let mut oracle = MinorOracle::new(&catalog::prism()).unwrap();
    let mut checked = 0;
    for key in db.keys() {
        let m = BinaryMatroid::from_key(key);
        if !m.is_3connected() || m.len() < 4 {
            continue;
        }
        let d = m.dual();
        if d.rank() <= 5 && d.is_simple() && !oracle.check(&d) {
            assert!(db.contains(&d.canonical_key().unwrap()), "dual of {key}");
            checked += 1;
        }
    }
    assert!(checked >= 20, "{checked}");
}

#[test]
fn extension_search_agrees_with_the_census() {
    let db = prism_free(5);
    let report = classify(&db, false).unwrap();
    for seed in ["M5", "M6", "M8"] {
        for node in splitter_search(&catalog::matroid(seed).unwrap(), &SplitterOptions::default()).unwrap() {
            if node.key.rank() <= 5 {
                assert!(db.contains(&node.key), "{seed} reaches {} outside the census", node.key);
                assert!(report.sporadic.contains(&node.key));
            } else {
                assert_eq!(node.step, Step::Coextension);
            }
        }
    }
}

#[test]
fn worker_count_does_not_change_the_output() {
    let run = |jobs| {
        let opts = EnumerateOptions { jobs: Some(jobs), ..EnumerateOptions::new(4, Excluded::none()) };
        enumerate_minor_free(&opts, None, &mut |_| {}).unwrap().to_text()
    };
    assert_eq!(run(1), run(3));
}

#[test]
fn checkpoint_file_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ckpt.bmdb");
    let prism = Excluded::from_names(&["PRISM"]).unwrap();
    let opts = EnumerateOptions { checkpoint: Some(path.clone()), ..EnumerateOptions::new(4, prism.clone()) };
    enumerate_minor_free(&opts, None, &mut |_| {}).unwrap();
    let partial = binmat::read_db(&path).unwrap();
    let mut levels = 0;
    let resumed = enumerate_minor_free(&EnumerateOptions::new(5, prism), Some(partial), &mut |s| {
        assert_eq!(s.rank, 5);
        levels += 1;
    })
    .unwrap();
    assert!(levels > 0);
    assert_eq!(resumed.to_text(), prism_free(5).to_text());
}
