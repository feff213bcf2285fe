//! Named constructions: integer sequences, geometries, cat, sums.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::gf2::{self, ColumnSet, Echelon, GF2Matrix, MAX_WIDTH};
use crate::matroid::BinaryMatroid;

/// Columns given as integers, least significant bit in the bottom row. Each
/// element is labelled by its integer.
pub fn decode_sequence(values: &[u64], rank: usize) -> Result<BinaryMatroid> {
    if rank == 0 || rank > MAX_WIDTH {
        return Err(Error::WidthOutOfRange(rank));
    }
    let mut cols = Vec::with_capacity(values.len());
    for &v in values {
        if v == 0 || v >= 1u64 << rank {
            return Err(Error::PointOutOfRange { value: v, width: rank });
        }
        cols.push(v as u32);
    }
    let labels = values.iter().map(|v| v.to_string()).collect();
    BinaryMatroid::new(rank, labels, cols)
}

/// `PG(r-1, 2)`: every nonzero vector of `GF(2)^r`, in increasing order.
pub fn projective_geometry(r: usize) -> Result<BinaryMatroid> {
    if r == 0 || r > 16 {
        return Err(Error::WidthOutOfRange(r));
    }
    let pts: Vec<u32> = (1..1u32 << r).collect();
    BinaryMatroid::from_points(r, &pts)
}

/// `AG(3, 2)` as `[I_4 | A]` with `A` the all-ones matrix minus the identity.
/// Elements are labelled `1..=8`.
pub fn affine_geometry_32() -> BinaryMatroid {
    let cols = vec![8, 4, 2, 1, 7, 11, 13, 14];
    let labels = (1..=8).map(|i| i.to_string()).collect();
    BinaryMatroid::new(4, labels, cols).expect("static data")
}

/// `m1 ⊕ m2`, with `m1` in the high rows.
pub fn direct_sum(m1: &BinaryMatroid, m2: &BinaryMatroid) -> Result<BinaryMatroid> {
    let w = m1.width() + m2.width();
    if w > MAX_WIDTH {
        return Err(Error::WidthOutOfRange(w));
    }
    let shift = m2.width();
    let labels = m1.labels().iter().chain(m2.labels()).cloned().collect();
    let cols = m1.columns().iter().map(|&c| c << shift).chain(m2.columns().iter().copied()).collect();
    BinaryMatroid::new(w, labels, cols)
}

/// `m1 ▽ m2`: the direct sum plus an element `(a,b)` on the line through `a`
/// and `b` for every `a` in `m1` and `b` in `m2`, ordered by `(a, b)`.
pub fn cat(m1: &BinaryMatroid, m2: &BinaryMatroid) -> Result<BinaryMatroid> {
    if m1.columns().contains(&0) || m2.columns().contains(&0) {
        return Err(Error::Invalid("cat requires loopless matroids".into()));
    }
    let mut sum = direct_sum(m1, m2)?;
    let shift = m2.width();
    for (a, &ca) in m1.labels().iter().zip(m1.columns()) {
        for (b, &cb) in m2.labels().iter().zip(m2.columns()) {
            sum = sum.extend(format!("({a},{b})"), (ca << shift) ^ cb)?;
        }
    }
    Ok(sum)
}

/// A copy of `label` added in parallel, called `new_label`.
pub fn parallel_extension(m: &BinaryMatroid, label: &str, new_label: &str) -> Result<BinaryMatroid> {
    let i = m.index_of(label)?;
    m.extend(new_label, m.columns()[i])
}

/// The 3-sum of `m1` and `m2` along their common triangle `t`: the matroid on
/// `(E1 ∪ E2) - t` whose cycles are the sets `Z1 Δ Z2` with `Zi` a cycle of
/// `mi` and `Z1 ∩ t = Z2 ∩ t`. Elements of `m1` come first.
pub fn three_sum<S: AsRef<str>>(m1: &BinaryMatroid, m2: &BinaryMatroid, t: &[S]) -> Result<BinaryMatroid> {
    let t: Vec<&str> = t.iter().map(AsRef::as_ref).collect();
    if t.len() != 3 || t.iter().collect::<HashSet<_>>().len() != 3 {
        return Err(Error::ThreeSum("the gluing set must have three distinct elements".into()));
    }
    for (name, m) in [("first", m1), ("second", m2)] {
        if m.len() < 7 {
            return Err(Error::ThreeSum(format!("the {name} matroid has {} < 7 elements", m.len())));
        }
    }
    let e1: HashSet<&str> = m1.labels().iter().map(String::as_str).collect();
    let e2: HashSet<&str> = m2.labels().iter().map(String::as_str).collect();
    let common: HashSet<&str> = e1.intersection(&e2).copied().collect();
    if common != t.iter().copied().collect() {
        let mut c: Vec<&str> = common.into_iter().collect();
        c.sort_unstable();
        return Err(Error::ThreeSum(format!("the common elements are {{{}}}, not the gluing set", c.join(","))));
    }
    for (name, m) in [("first", m1), ("second", m2)] {
        let tm = m.mask_of(&t)?;
        let is_triangle = m.rank_of_mask(tm) == 2
            && (0..3).all(|k| {
                let one = t[k];
                let rest: Vec<&str> = t.iter().copied().filter(|&x| x != one).collect();
                m.rank_of(&rest).map(|r| r == 2).unwrap_or(false) && m.rank_of(&[one]).map(|r| r == 1).unwrap_or(false)
            });
        if !is_triangle {
            return Err(Error::ThreeSum(format!("the gluing set is not a triangle of the {name} matroid")));
        }
        if m.rank_of_mask(m.ground_mask() & !tm) != m.rank() {
            return Err(Error::ThreeSum(format!("the gluing set contains a cocircuit of the {name} matroid")));
        }
    }
    // coordinates: E1 - t, then E2 - t, then the three elements of t
    let rest1: Vec<usize> = (0..m1.len()).filter(|&i| !t.contains(&m1.labels()[i].as_str())).collect();
    let rest2: Vec<usize> = (0..m2.len()).filter(|&i| !t.contains(&m2.labels()[i].as_str())).collect();
    let n = rest1.len() + rest2.len();
    if n + 3 > 64 {
        return Err(Error::TooManyElements(n));
    }
    let embed = |m: &BinaryMatroid, rest: &[usize], offset: usize, z: ColumnSet| -> ColumnSet {
        let mut out = 0;
        for (k, &i) in rest.iter().enumerate() {
            out |= ((z >> i) & 1) << (offset + k);
        }
        for (k, name) in t.iter().enumerate() {
            let i = m.index_of(name).expect("checked above");
            out |= ((z >> i) & 1) << (n + k);
        }
        out
    };
    let mut gens = Vec::new();
    for z in gf2::null_space_basis(&m1.matrix()) {
        gens.push(embed(m1, &rest1, 0, z));
    }
    for z in gf2::null_space_basis(&m2.matrix()) {
        gens.push(embed(m2, &rest2, rest1.len(), z));
    }
    // sums whose t-part vanishes: eliminate the t coordinates first
    let tbits: ColumnSet = 0b111 << n;
    let mut e = Echelon::<u64>::new();
    for g in &gens {
        let swapped = (g >> n) | ((g & ((1 << n) - 1)) << 3);
        e.insert(swapped);
    }
    let cycles: Vec<ColumnSet> = e.canonical_rows().into_iter().filter(|r| r & 0b111 == 0).map(|r| r >> 3).collect();
    debug_assert!(cycles.iter().all(|c| c & tbits == 0));
    if cycles.len() > MAX_WIDTH {
        return Err(Error::WidthOutOfRange(cycles.len()));
    }
    let cycle_matrix = GF2Matrix::from_rows(&cycles, n)?;
    let rep = gf2::orthogonal_complement(&cycle_matrix);
    let labels = rest1.iter().map(|&i| m1.labels()[i].clone()).chain(rest2.iter().map(|&i| m2.labels()[i].clone()));
    BinaryMatroid::new(rep.width(), labels.collect(), rep.columns().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decode_matches_displayed_matrix() {
        let m = decode_sequence(&[1, 2, 3, 4, 6, 8, 9, 12], 4).unwrap();
        assert_eq!(m.format_matrix(), "0 0 0 0 0 1 1 1\n0 0 0 1 1 0 0 1\n0 1 1 0 1 0 0 0\n1 0 1 0 0 0 1 0\n");
        assert!(decode_sequence(&[4], 2).is_err());
        assert!(decode_sequence(&[0], 2).is_err());
        assert_eq!(decode_sequence(&[1], 1).unwrap().rank(), 1);
    }

    #[test]
    fn affine_geometry_has_no_triangles() {
        let ag = affine_geometry_32();
        assert_eq!((ag.len(), ag.rank()), (8, 4));
        assert!(ag.triangles().is_empty());
        assert_eq!(projective_geometry(4).unwrap().len(), 15);
    }

    #[test]
    fn cat_of_two_points_is_a_triangle() {
        let u11 = |l: &str| BinaryMatroid::new(1, vec![l.into()], vec![1]).unwrap();
        let c = cat(&u11("a"), &u11("b")).unwrap();
        assert_eq!(c.labels(), &["a", "b", "(a,b)"]);
        assert_eq!(c.triangles().len(), 1);
        assert_eq!(c.rank(), 2);
    }

    #[test]
    fn cat_restricts_to_direct_sum() {
        let ag = affine_geometry_32();
        let u11 = BinaryMatroid::new(1, vec!["e".into()], vec![1]).unwrap();
        let c = cat(&ag, &u11).unwrap();
        assert_eq!((c.len(), c.rank()), (17, 5));
        let ds = direct_sum(&ag, &u11).unwrap();
        let keep = c.mask_of(ds.labels()).unwrap();
        assert!(c.restrict_mask(keep).same_labelled(&ds));
        assert!(cat(&ag, &ag).is_err());
    }

    #[test]
    fn three_sum_of_fano_planes() {
        let f = |names: [&str; 7]| {
            BinaryMatroid::new(3, names.iter().map(|s| s.to_string()).collect(), (1..8).collect()).unwrap()
        };
        // elements 1, 2, 3 form a triangle (1 ^ 2 = 3)
        let a = f(["x", "y", "z", "a4", "a5", "a6", "a7"]);
        let b = f(["x", "y", "z", "b4", "b5", "b6", "b7"]);
        let s = three_sum(&a, &b, &["x", "y", "z"]).unwrap();
        assert_eq!(s.len(), 8);
        assert_eq!(s.rank(), 4);
        let k4 = BinaryMatroid::from_columns(3, vec![1, 2, 3, 4, 5, 6]).unwrap();
        assert!(matches!(three_sum(&k4, &k4, &["0", "1", "2"]), Err(Error::ThreeSum(_))));
        assert!(matches!(three_sum(&a, &b, &["x", "y", "a4"]), Err(Error::ThreeSum(_))));
    }

    #[test]
    fn parallel_extension_shape() {
        let m = affine_geometry_32();
        let p = parallel_extension(&m, "3", "3'").unwrap();
        assert_eq!(p.len(), 9);
        assert_eq!(p.columns()[8], p.columns()[2]);
        assert!(!p.is_simple());
    }
}
