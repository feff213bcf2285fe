//! Permutation groups on small point sets: just enough of Schreier–Sims to
//! compute exact group orders from generators.

use std::collections::HashMap;

/// A permutation of `0..n`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Perm(pub Vec<u16>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u16).collect())
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        usize::from(self.0[x])
    }

    /// `self` after `other`: `x -> self(other(x))`.
    pub fn after(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[usize::from(x)]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[usize::from(x)] = i as u16;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| usize::from(x) == i)
    }
}

struct Level {
    base: usize,
    gens: Vec<Perm>,
    // point -> transversal element mapping `base` to that point
    transversal: HashMap<usize, Perm>,
}

impl Level {
    fn new(base: usize, n: usize) -> Self {
        let mut transversal = HashMap::new();
        transversal.insert(base, Perm::identity(n));
        Level { base, gens: Vec::new(), transversal }
    }

    fn rebuild_orbit(&mut self, n: usize) {
        self.transversal.clear();
        self.transversal.insert(self.base, Perm::identity(n));
        let mut queue = vec![self.base];
        while let Some(x) = queue.pop() {
            let ux = self.transversal[&x].clone();
            for g in &self.gens {
                let y = g.apply(x);
                if let std::collections::hash_map::Entry::Vacant(e) = self.transversal.entry(y) {
                    e.insert(g.after(&ux));
                    queue.push(y);
                }
            }
        }
    }
}

/// Strips `g` through the chain starting at `from`; returns the residue and
/// the level where it fell out (`levels.len()` if it sifted through).
fn sift(levels: &[Level], mut g: Perm, from: usize) -> (Perm, usize) {
    for (i, level) in levels.iter().enumerate().skip(from) {
        let b = g.apply(level.base);
        match level.transversal.get(&b) {
            Some(u) => g = u.inverse().after(&g),
            None => return (g, i),
        }
    }
    (g, levels.len())
}

/// Exact order of the group generated by `gens` acting on `0..n`, given a base
/// (a point sequence whose pointwise stabilizer is trivial in that group).
pub fn group_order(gens: &[Perm], n: usize, base: &[usize]) -> u128 {
    let mut levels: Vec<Level> = base.iter().map(|&b| Level::new(b, n)).collect();
    for g in gens.iter().filter(|g| !g.is_identity()) {
        add_generator(&mut levels, g.clone(), 0, n);
    }
    levels.iter().map(|l| l.transversal.len() as u128).product()
}

fn add_generator(levels: &mut Vec<Level>, g: Perm, at: usize, n: usize) {
    // Insert at every level `at..=j` where `g` fixes the earlier base points.
    let mut j = at;
    while j < levels.len() {
        levels[j].gens.push(g.clone());
        levels[j].rebuild_orbit(n);
        if g.apply(levels[j].base) != levels[j].base {
            break;
        }
        j += 1;
    }
    assert!(j < levels.len(), "base does not determine the group");
    // Schreier generators at levels at..=j, deepest first.
    for i in (at..=j).rev() {
        close_level(levels, i, n);
    }
}

fn close_level(levels: &mut Vec<Level>, i: usize, n: usize) {
    loop {
        let mut pending = None;
        'scan: for (&x, ux) in levels[i].transversal.iter() {
            for s in &levels[i].gens {
                let sx = s.apply(x);
                let usx = &levels[i].transversal[&sx];
                let h = usx.inverse().after(&s.after(ux));
                if h.is_identity() {
                    continue;
                }
                let (res, drop) = sift(levels, h, i + 1);
                if !res.is_identity() {
                    pending = Some((res, drop));
                    break 'scan;
                }
            }
        }
        match pending {
            Some((res, _drop)) => add_generator(levels, res, i + 1, n),
            None => return,
        }
    }
}
