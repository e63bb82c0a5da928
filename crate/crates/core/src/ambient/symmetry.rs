use std::collections::HashSet;

use serde::Serialize;

use super::automorphism::reference_automorphisms;
use super::{Ambient, IsoType};
use crate::error::Result;
use crate::oracle::group_elements;

/// Restricts point maps of `F` to the points of the subobject `y`, as
/// permutations of `0..|y|`.
fn restrict(amb: &Ambient, y: usize, perms: &[Vec<u32>]) -> (Vec<u32>, Vec<Vec<u32>>) {
    let pts: Vec<u32> = amb.element(y).members().ones().map(|p| p as u32).collect();
    let mut local = vec![u32::MAX; amb.num_points()];
    for (i, &p) in pts.iter().enumerate() {
        local[p as usize] = i as u32;
    }
    let restricted = perms.iter().map(|g| pts.iter().map(|&p| local[g[p as usize] as usize]).collect()).collect();
    (pts, restricted)
}

fn aut_order(amb: &Ambient, ty: &IsoType) -> Result<usize> {
    let y = amb.reference(ty)?;
    let (_, gens) = restrict(amb, y, &reference_automorphisms(amb, ty)?);
    let size = amb.element(y).cardinality();
    Ok(group_elements(size, &gens, amb.caps().max_group)?.len())
}

/// Whether every isomorphism between subobjects of an object of type `phi`
/// extends to an automorphism. Checked exhaustively on the reference object:
/// `Aut(y)` must be transitive on each type of subobject, and the stabilizer
/// of one representative must restrict onto its full automorphism group.
pub fn is_symmetric_type(amb: &Ambient, phi: &IsoType) -> Result<bool> {
    let y = amb.reference(phi)?;
    let (pts, gens) = restrict(amb, y, &reference_automorphisms(amb, phi)?);
    let group = group_elements(pts.len(), &gens, amb.caps().max_group)?;
    let mut local = vec![u32::MAX; amb.num_points()];
    for (i, &p) in pts.iter().enumerate() {
        local[p as usize] = i as u32;
    }
    let below = amb.enumerate_below(y)?;
    let mut types: Vec<usize> = below.iter().map(|&x| amb.type_of(x)).collect();
    types.sort_unstable();
    types.dedup();
    for t in types {
        let ty = amb.types()[t].clone();
        let xs = amb.below_of_type(y, &ty);
        let x0 = xs[0];
        let x_pts: Vec<usize> = amb.element(x0).members().ones().map(|p| local[p] as usize).collect();
        let x_set: HashSet<usize> = x_pts.iter().copied().collect();
        let mut orbit = HashSet::new();
        let mut restrictions = HashSet::new();
        for g in &group {
            let image: Vec<u32> = x_pts.iter().map(|&p| g[p]).collect();
            let mut key = image.clone();
            key.sort_unstable();
            if image.iter().all(|&q| x_set.contains(&(q as usize))) {
                restrictions.insert(image);
            }
            orbit.insert(key);
        }
        if orbit.len() != xs.len() || restrictions.len() != aut_order(amb, &ty)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of the exhaustive symmetric-couple check for `(big, small)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoupleReport {
    pub big_symmetric: bool,
    pub small_symmetric: bool,
    /// Every type below `small` occurs as `f ∧ f'` for each `f`.
    pub realizes_all: bool,
    /// `x ∨ f` is the pushout of `x ⊇ x ∧ f ⊆ f` for all `x` of type at most `small`.
    pub cartesian: bool,
    /// Types below `small` never realized as an intersection type.
    pub unrealized: Vec<String>,
}

impl CoupleReport {
    pub fn holds(&self) -> bool {
        self.big_symmetric && self.small_symmetric && self.realizes_all && self.cartesian
    }
}

/// Checks both conditions over all `f` of type `small` and all `x` of type at
/// most `small` inside the reference object of type `big`.
pub fn symmetric_couple_report(amb: &Ambient, big: &IsoType, small: &IsoType) -> Result<CoupleReport> {
    let big_symmetric = is_symmetric_type(amb, big)?;
    let small_symmetric = is_symmetric_type(amb, small)?;
    let y = amb.reference(big)?;
    let fs = amb.below_of_type(y, small);
    let below = amb.enumerate_below(y)?;
    let wanted: Vec<usize> = {
        let mut t: Vec<usize> = amb.lattice().down(amb.reference(small)?).iter().map(|&x| amb.type_of(x)).collect();
        t.sort_unstable();
        t.dedup();
        t
    };
    let mut realizes_all = small.leq(big) && !fs.is_empty();
    let mut unrealized = Vec::new();
    for &f in &fs {
        let seen: HashSet<usize> = fs.iter().map(|&g| amb.type_of(amb.meet(f, g))).collect();
        for &t in &wanted {
            if !seen.contains(&t) {
                realizes_all = false;
                let name = amb.types()[t].to_string();
                if !unrealized.contains(&name) {
                    unrealized.push(name);
                }
            }
        }
    }
    let is_sets = amb.ring().is_none();
    let mut cartesian = true;
    'outer: for &x in below.iter().filter(|&&x| amb.types()[amb.type_of(x)].leq(small)) {
        for &f in &fs {
            let (j, m) = (amb.join(x, f), amb.meet(x, f));
            let size = |i: usize| amb.element(i).cardinality();
            let ok =
                if is_sets { size(j) + size(m) == size(x) + size(f) } else { size(j) * size(m) == size(x) * size(f) };
            if !ok {
                cartesian = false;
                break 'outer;
            }
        }
    }
    Ok(CoupleReport { big_symmetric, small_symmetric, realizes_all, cartesian, unrealized })
}

pub fn is_symmetric_couple(amb: &Ambient, big: &IsoType, small: &IsoType) -> Result<bool> {
    Ok(symmetric_couple_report(amb, big, small)?.holds())
}

#[cfg(test)]
mod tests {
    use super::super::Instance;
    use super::*;

    #[test]
    fn symmetric_types() {
        let a = Ambient::new(Instance::chain_ring(2, 2, 2)).unwrap();
        let p = IsoType::partition;
        assert!(is_symmetric_type(&a, &p(vec![2, 2])).unwrap());
        assert!(is_symmetric_type(&a, &p(vec![1, 1])).unwrap());
        assert!(!is_symmetric_type(&a, &p(vec![2, 1])).unwrap());
        let s = Ambient::new(Instance::sets(5)).unwrap();
        assert!((0..=5).all(|m| is_symmetric_type(&s, &IsoType::Size(m)).unwrap()));
    }

    #[test]
    fn symmetric_couples() {
        let a = Ambient::new(Instance::chain_ring(2, 2, 2)).unwrap();
        let p = IsoType::partition;
        assert!(is_symmetric_couple(&a, &p(vec![2, 2]), &p(vec![2])).unwrap());
        let s = Ambient::new(Instance::sets(6)).unwrap();
        for m in 0..=6 {
            assert_eq!(is_symmetric_couple(&s, &IsoType::Size(6), &IsoType::Size(m)).unwrap(), 6 >= 2 * m);
        }
        let s3 = Ambient::new(Instance::sets(3)).unwrap();
        assert!(!is_symmetric_couple(&s3, &IsoType::Size(3), &IsoType::Size(2)).unwrap());
    }
}
