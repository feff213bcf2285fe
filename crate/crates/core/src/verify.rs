//! Self-checks of the catalog and of the structural facts it rests on. Each
//! suite reports its claims individually instead of stopping at the first
//! failure.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::canon::CanonicalKey;
use crate::catalog::{self, CatalogEntry};
use crate::error::{Error, Result};
use crate::graph::{self, bond_matroid, cycle_matroid};
use crate::matroid::BinaryMatroid;
use crate::minor::MinorOracle;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Tables,
    Sporadic,
    PrismHosts,
    Wheel,
    SmallCases,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["tables", "sporadic", "prism-hosts", "wheel", "small-cases", "all"];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "tables" => Suite::Tables,
            "sporadic" => Suite::Sporadic,
            "prism-hosts" => Suite::PrismHosts,
            "wheel" => Suite::Wheel,
            "small-cases" => Suite::SmallCases,
            "all" => Suite::All,
            _ => return Err(Error::Invalid(format!("unknown suite `{s}`"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub suite: &'static str,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{status} [{}] {}", self.suite, self.name)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

struct Report {
    suite: &'static str,
    claims: Vec<Claim>,
}

impl Report {
    fn new(suite: &'static str) -> Self {
        Report { suite, claims: Vec::new() }
    }

    fn claim(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.claims.push(Claim { suite: self.suite, name: name.into(), pass, detail: detail.into() });
    }

    /// Records an error as a failed claim.
    fn check(&mut self, name: impl Into<String>, result: Result<(bool, String)>) {
        match result {
            Ok((pass, detail)) => self.claim(name, pass, detail),
            Err(e) => self.claim(name, false, format!("error: {e}")),
        }
    }
}

pub fn run(suite: Suite) -> Vec<Claim> {
    match suite {
        Suite::Tables => tables(),
        Suite::Sporadic => sporadic(),
        Suite::PrismHosts => prism_hosts(),
        Suite::Wheel => wheel(),
        Suite::SmallCases => small_cases(),
        Suite::All => [tables(), sporadic(), prism_hosts(), wheel(), small_cases()].concat(),
    }
}

fn key(name: &str) -> Result<CanonicalKey> {
    catalog::lookup(name)?.matroid.canonical_key()
}

fn isomorphic(a: &BinaryMatroid, b: &BinaryMatroid) -> Result<(bool, String)> {
    let (ka, kb) = (a.canonical_key()?, b.canonical_key()?);
    Ok((ka == kb, format!("{ka} vs {kb}")))
}

fn flags(e: &CatalogEntry, prism: &mut MinorOracle) -> (bool, bool, bool) {
    let m = &e.matroid;
    (m.is_3connected(), m.is_internally_4connected(), !prism.check(m))
}

/// Catalog entries against their recorded sizes, ranks and connectivity.
pub fn tables() -> Vec<Claim> {
    let mut r = Report::new("tables");
    let mut prism = MinorOracle::new(&catalog::prism()).expect("the prism is simple");
    for e in catalog::catalog() {
        let x = e.expected;
        let m = &e.matroid;
        let (c3, i4c, pf) = flags(e, &mut prism);
        let got = (m.len(), m.rank(), c3, i4c, pf);
        let want = (x.size, x.rank, x.three_connected, x.internally_4_connected, x.prism_free);
        let simple_ok = m.len() < 4 || m.is_simple();
        r.claim(
            format!("{} size={} rank={} 3c={} i4c={} prism-free={}", e.name, want.0, want.1, want.2, want.3, want.4),
            got == want && simple_ok,
            if got == want { String::new() } else { format!("got {got:?}") },
        );
    }
    let k33 = cycle_matroid(&graph::complete_bipartite(3, 3)).expect("static");
    let identities: [(&str, Result<BinaryMatroid>); 8] = [
        ("M1 = M(K4)", Ok(cycle_matroid(&graph::complete(4)).expect("static"))),
        ("M3 = F7*", catalog::matroid("M2").map(|m| m.dual())),
        ("M4 = M*(K3,3)", Ok(k33.dual())),
        ("M5 = M(K5)", Ok(cycle_matroid(&graph::complete(5)).expect("static"))),
        ("M13 = PG(3,2)", catalog::matroid("PG32")),
        ("M14 = M(K3,3)", Ok(k33)),
        ("M16 is self-dual", catalog::matroid("M16").map(|m| m.dual())),
        ("M36 = AG(3,2) cat U1,1", catalog::matroid("CAT")),
    ];
    for (name, other) in identities {
        let lhs = name.split_whitespace().next().expect("nonempty");
        r.check(name, other.and_then(|o| isomorphic(&catalog::matroid(lhs)?, &o)));
    }
    let listed = catalog::i4c_prism_free();
    let mut seen = BTreeSet::new();
    for e in &listed {
        seen.insert(small_invariant(&e.matroid));
    }
    r.claim(
        "the 42 listed matroids are pairwise non-isomorphic",
        seen.len() == 42 && listed.len() == 42,
        format!("{} classes", seen.len()),
    );
    r.check("each listed matroid is a minor of AG(3,2) cat U1,1", minors_of_cat(&listed));
    r.claims
}

fn minors_of_cat(listed: &[&CatalogEntry]) -> Result<(bool, String)> {
    let host = catalog::matroid("CAT")?;
    let mut missing = Vec::new();
    for e in listed {
        let ok = if e.matroid.is_simple() {
            MinorOracle::new(&e.matroid)?.check(&host)
        } else {
            has_small_minor(&host, &e.matroid)
        };
        if !ok {
            missing.push(e.name);
        }
    }
    Ok((missing.is_empty(), if missing.is_empty() { String::new() } else { format!("missing {}", missing.join(" ")) }))
}

/// Minor test for targets of at most three elements: contract at most two
/// elements, then restrict.
fn has_small_minor(host: &BinaryMatroid, target: &BinaryMatroid) -> bool {
    let want = small_invariant(target);
    let n = host.len();
    let k = target.len();
    let subsets = |ground: u64, size: usize| -> Vec<u64> {
        let bits: Vec<usize> = (0..n).filter(|&i| ground >> i & 1 == 1).collect();
        let mut out = Vec::new();
        let mut stack = vec![(0usize, 0u64, 0usize)];
        while let Some((from, mask, len)) = stack.pop() {
            if len == size {
                out.push(mask);
                continue;
            }
            for (j, &b) in bits.iter().enumerate().skip(from) {
                stack.push((j + 1, mask | 1 << b, len + 1));
            }
        }
        out
    };
    let all = host.ground_mask();
    (0..=2).any(|c| {
        subsets(all, c).into_iter().any(|x| {
            let contracted = host.contract_mask(x);
            let rest = contracted.ground_mask();
            subsets(rest, k).into_iter().any(|y| small_invariant(&contracted.restrict_mask(y)) == want)
        })
    })
}

/// Isomorphism invariant of a possibly non-simple matroid: size, rank, loop
/// count, parallel class sizes and the canonical key of the simplification.
/// Complete for matroids on at most three elements.
pub fn small_invariant(m: &BinaryMatroid) -> (usize, usize, usize, Vec<usize>, CanonicalKey) {
    let mut classes: BTreeMap<u32, usize> = BTreeMap::new();
    let mut loops = 0;
    for &c in m.columns() {
        if c == 0 {
            loops += 1;
        } else {
            *classes.entry(c).or_default() += 1;
        }
    }
    let mut sizes: Vec<usize> = classes.values().copied().collect();
    sizes.sort_unstable();
    let points: Vec<u32> = classes.keys().copied().collect();
    let key = crate::canon::canonical_key(&points, m.width()).expect("distinct nonzero points");
    (m.len(), m.rank(), loops, sizes, key)
}

fn label_op(m: &BinaryMatroid, label: &str, contract: bool) -> Result<BinaryMatroid> {
    let mask = m.mask_of(&[label])?;
    Ok(if contract { m.contract_mask(mask).simplify() } else { m.delete_mask(mask) })
}

/// The reductions of the sporadic matroids to the listed ones.
pub fn sporadic() -> Vec<Claim> {
    let mut r = Report::new("sporadic");
    let cases = [
        ("si(S1/16) = M5", "S1", "16", true, "M5"),
        ("si(S2/16) = M6", "S2", "16", true, "M6"),
        ("S3\\3 = S1", "S3", "3", false, "S1"),
        ("S3\\5 = S2", "S3", "5", false, "S2"),
        ("si(S4/1) = S1", "S4", "1", true, "S1"),
        ("S5\\29 = M20", "S5", "29", false, "M20"),
    ];
    for (name, from, label, contract, to) in cases {
        r.check(
            name,
            (|| {
                let minor = label_op(&catalog::matroid(from)?, label, contract)?;
                let (a, b) = (minor.canonical_key()?, key(to)?);
                Ok((a == b, format!("{a}")))
            })(),
        );
    }
    r.claims
}

/// Prism minors in the exceptional graphs and bond matroids, and their
/// absence in `AG(3,2) cat U1,1`.
pub fn prism_hosts() -> Vec<Claim> {
    let mut r = Report::new("prism-hosts");
    let mut prism = MinorOracle::new(&catalog::prism()).expect("the prism is simple");
    let mut hosts: Vec<(String, Result<BinaryMatroid>)> =
        vec![("M(terrahawk)".into(), cycle_matroid(&graph::terrahawk()))];
    for n in 3..=5 {
        hosts.push((
            format!("M(planar ladder, {} vertices)", 2 * n),
            graph::planar_quartic_ladder(n).and_then(|g| cycle_matroid(&g)),
        ));
        hosts.push((
            format!("M*(planar ladder, {} vertices)", 2 * n),
            graph::planar_quartic_ladder(n).and_then(|g| bond_matroid(&g)),
        ));
    }
    for n in 4..=5 {
        hosts.push((
            format!("M(Möbius ladder, {} vertices)", 2 * n - 1),
            graph::mobius_quartic_ladder(n).and_then(|g| cycle_matroid(&g)),
        ));
        hosts.push((
            format!("M*(Möbius ladder, {} vertices)", 2 * n - 1),
            graph::mobius_quartic_ladder(n).and_then(|g| bond_matroid(&g)),
        ));
    }
    hosts
        .push(("M*(Möbius ladder, 5 vertices)".into(), graph::mobius_quartic_ladder(3).and_then(|g| bond_matroid(&g))));
    for (name, host) in hosts {
        r.check(format!("{name} has a prism minor"), host.map(|h| (prism.check(&h), String::new())));
    }
    r.check("AG(3,2) cat U1,1 has no prism minor", catalog::matroid("CAT").map(|h| (!prism.check(&h), String::new())));
    r.claims
}

fn is_triangle(m: &BinaryMatroid, mask: u64) -> bool {
    mask.count_ones() == 3
        && m.rank_of_mask(mask) == 2
        && (0..m.len()).all(|i| mask >> i & 1 == 0 || m.rank_of_mask(mask & !(1 << i)) == 2)
}

fn is_triad(m: &BinaryMatroid, mask: u64) -> bool {
    let rest = m.ground_mask() & !mask;
    mask.count_ones() == 3
        && m.rank_of_mask(rest) == m.rank() - 1
        && (0..m.len()).all(|i| mask >> i & 1 == 0 || m.rank_of_mask(rest | 1 << i) == m.rank())
}

fn wheel4() -> BinaryMatroid {
    let w = cycle_matroid(&graph::wheel(4).expect("static")).expect("static");
    let labels = ["a", "b", "c", "d", "e", "f", "g", "h"].iter().map(|s| s.to_string()).collect();
    BinaryMatroid::new(w.width(), labels, w.columns().to_vec()).expect("static")
}

/// Single-element extensions and coextensions of `M(W4)`.
pub fn wheel() -> Vec<Claim> {
    let mut r = Report::new("wheel");
    let w4 = wheel4();
    r.claim("M(W4) has columns a..h = 8 4 2 1 12 6 3 9", w4.columns() == [8, 4, 2, 1, 12, 6, 3, 9], "");
    let aeh = w4.mask_of(&["a", "e", "h"]).expect("labels");
    let abe = w4.mask_of(&["a", "b", "e"]).expect("labels");
    for col in 1..8u32 {
        let m = w4.extend("x", col).expect("fits");
        r.claim(
            format!("extension by {col:04b}: {{a,e,h}} is a triad and {{a,b,e}} a triangle"),
            is_triad(&m, aeh) && is_triangle(&m, abe) && !m.is_internally_4connected(),
            "",
        );
    }
    for col in 8..15u32 {
        let m = w4.extend("x", col).expect("fits");
        r.claim(
            format!("extension by {col:04b}: a triad meets a triangle in two elements"),
            crate::connectivity::has_triangle_meeting_triad(&m) && !m.is_internally_4connected(),
            "",
        );
    }
    let k33 = cycle_matroid(&graph::complete_bipartite(3, 3)).expect("static");
    r.check("extension by 1111 is M*(K3,3)", isomorphic(&w4.extend("x", 15).expect("fits"), &k33.dual()));
    let dual = w4.dual();
    let mut good = Vec::new();
    let mut detail = Vec::new();
    for col in 1..16u32 {
        let m = dual.extend("x", col).expect("fits").dual();
        if m.is_internally_4connected() {
            good.push(m);
            detail.push(format!("{col:04b}"));
        }
    }
    r.claim(
        "exactly one coextension is internally 4-connected",
        good.len() == 1,
        format!("columns of the dual: {}", detail.join(" ")),
    );
    match good.first() {
        Some(m) => r.check("that coextension is M(K3,3)", isomorphic(m, &k33)),
        None => r.claim("that coextension is M(K3,3)", false, "none found"),
    }
    r.claims
}

/// The internally 4-connected binary matroids on at most five elements,
/// found by trying every multiset of at most five columns of length five.
pub fn small_cases() -> Vec<Claim> {
    let mut r = Report::new("small-cases");
    let mut found = BTreeSet::new();
    let mut cols = Vec::with_capacity(5);
    let mut examined = 0usize;
    fn walk(
        cols: &mut Vec<u32>,
        from: u32,
        found: &mut BTreeSet<(usize, usize, usize, Vec<usize>, CanonicalKey)>,
        examined: &mut usize,
    ) {
        let m = BinaryMatroid::from_columns(5, cols.clone()).expect("fits");
        *examined += 1;
        if m.is_internally_4connected() {
            found.insert(small_invariant(&m.compact()));
        }
        if cols.len() == 5 {
            return;
        }
        for c in from..32 {
            cols.push(c);
            walk(cols, c, found, examined);
            cols.pop();
        }
    }
    walk(&mut cols, 0, &mut found, &mut examined);
    let names = ["U00", "U01", "U11", "U12", "U13", "U23"];
    let want: BTreeSet<_> = names.iter().map(|n| small_invariant(&catalog::matroid(n).expect("static"))).collect();
    let named: Vec<&str> = found
        .iter()
        .map(|inv| {
            names
                .iter()
                .find(|n| small_invariant(&catalog::matroid(n).expect("static")) == *inv)
                .copied()
                .unwrap_or("?")
        })
        .collect();
    r.claim(
        "internally 4-connected matroids on at most 5 elements are U00 U01 U11 U12 U13 U23",
        found == want && want.len() == 6,
        format!("{examined} column multisets; found {}", named.join(" ")),
    );
    r.claims
}
