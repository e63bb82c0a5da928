use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;

use super::matrix::ExactMatrix;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A group given by generating permutations of `0..degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationAction {
    degree: usize,
    gens: Vec<Vec<u32>>,
}

impl PermutationAction {
    pub fn new(degree: usize, gens: Vec<Vec<u32>>) -> Result<Self> {
        for g in &gens {
            let mut seen = vec![false; degree];
            if g.len() != degree {
                return Err(Error::Shape(format!("generator of degree {} on {degree} points", g.len())));
            }
            for &x in g {
                if x as usize >= degree || std::mem::replace(&mut seen[x as usize], true) {
                    return Err(Error::Shape("generator is not a bijection".into()));
                }
            }
        }
        Ok(PermutationAction { degree, gens })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.gens
    }

    /// Diagonal action on pairs `(i, j)`, encoded as `i * other.degree + j`.
    /// Both actions must list images of the same group generators.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.gens.len() != other.gens.len() {
            return Err(Error::Shape("actions have different generator lists".into()));
        }
        let d2 = other.degree;
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(g, h)| (0..self.degree * d2).map(|ij| g[ij / d2] * d2 as u32 + h[ij % d2]).collect())
            .collect();
        Ok(PermutationAction { degree: self.degree * d2, gens })
    }

    /// Orbits by breadth-first search; each orbit sorted, orbits ordered by
    /// their least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for g in &self.gens {
                    let y = g[x] as usize;
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                        queue.push_back(y);
                    }
                }
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// Orbit index of each point.
    pub fn orbit_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.degree];
        for (o, orbit) in self.orbits().iter().enumerate() {
            for &x in orbit {
                idx[x] = o;
            }
        }
        idx
    }
}

/// Every element of the group generated by `gens`, by closure from the identity.
pub fn group_elements(degree: usize, gens: &[Vec<u32>], cap: usize) -> Result<Vec<Vec<u32>>> {
    let id: Vec<u32> = (0..degree as u32).collect();
    let mut seen: HashSet<Vec<u32>> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(h) = queue.pop_front() {
        for g in gens {
            let gh: Vec<u32> = h.iter().map(|&x| g[x as usize]).collect();
            if seen.insert(gh.clone()) {
                if out.len() >= cap {
                    return Err(Error::cap("group closure", cap));
                }
                out.push(gh.clone());
                queue.push_back(gh);
            }
        }
    }
    Ok(out)
}

pub fn group_order(degree: usize, gens: &[Vec<u32>], cap: usize) -> Result<usize> {
    Ok(group_elements(degree, gens, cap)?.len())
}

/// Number of orbits as the average number of fixed points over the listed
/// group elements (each a permutation of the domain).
pub fn burnside_count(elements: &[Vec<u32>]) -> Rational {
    let fixed: usize = elements.iter().map(|g| g.iter().enumerate().filter(|(i, &x)| *i == x as usize).count()).sum();
    Rational::new(BigInt::from(fixed), BigInt::from(elements.len()))
}

/// The permutation matrix with `P e_i = e_{g(i)}`.
pub fn permutation_matrix(g: &[u32]) -> ExactMatrix {
    let mut p = ExactMatrix::zeros(g.len(), g.len());
    for (i, &gi) in g.iter().enumerate() {
        p.set(gi as usize, i, rational::one());
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn symmetric_group_orders() {
        let gens = vec![vec![1, 0, 2], vec![1, 2, 0]];
        assert_eq!(group_order(3, &gens, 100).unwrap(), 6);
        assert!(group_order(3, &gens, 5).is_err());
    }

    #[test]
    fn orbits_and_burnside_agree() {
        // S_3 on ordered pairs: diagonal and off-diagonal
        let a = PermutationAction::new(3, vec![vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        let pairs = a.product(&a).unwrap();
        let orbits = pairs.orbits();
        assert_eq!(orbits.len(), 2);
        assert_eq!(orbits[0][0], 0);
        let elems = group_elements(9, pairs.generators(), 100).unwrap();
        assert_eq!(burnside_count(&elems), int(2));
    }

    #[test]
    fn permutation_matrix_moves_basis_vectors() {
        let p = permutation_matrix(&[1, 2, 0]);
        let e0 = ExactMatrix::from_ints(&[vec![1], vec![0], vec![0]]).unwrap();
        assert_eq!(p.mul(&e0).unwrap(), ExactMatrix::from_ints(&[vec![0], vec![1], vec![0]]).unwrap());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(PermutationAction::new(2, vec![vec![0, 0]]).is_err());
    }
}
