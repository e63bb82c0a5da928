use serde::{Deserialize, Serialize};

use super::howell::ChainRing;
use super::{Ambient, IsoType};
use crate::error::{Error, Result};

/// An automorphism of the ambient object: a permutation of the points, or an
/// invertible matrix acting on row vectors by `x -> x A`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Automorphism {
    Permutation(Vec<u32>),
    Matrix(Vec<Vec<u32>>),
}

impl Automorphism {
    /// The induced permutation of ambient point indices.
    pub fn point_permutation(&self, inst: &super::Instance) -> Vec<u32> {
        match (self, inst.ring()) {
            (Automorphism::Permutation(p), _) => p.clone(),
            (Automorphism::Matrix(a), Some(r)) => {
                (0..r.num_points() as u32).map(|pt| r.encode(&row_times(&r, &r.decode(pt), a, r.modulus))).collect()
            }
            (Automorphism::Matrix(_), None) => panic!("matrix automorphism on a sets instance"),
        }
    }

    /// Bijectivity for permutations, unit determinant for matrices.
    pub fn is_invertible(&self, inst: &super::Instance) -> bool {
        match (self, inst.ring()) {
            (Automorphism::Permutation(p), _) => {
                let mut seen = vec![false; p.len()];
                p.len() == inst.rank() as usize
                    && p.iter().all(|&x| (x as usize) < p.len() && !std::mem::replace(&mut seen[x as usize], true))
            }
            (Automorphism::Matrix(a), Some(r)) => {
                a.len() == r.n as usize && a.iter().all(|row| row.len() == r.n as usize) && det_is_unit(a, r.p)
            }
            _ => false,
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism, inst: &super::Instance) -> Automorphism {
        match (self, other, inst.ring()) {
            (Automorphism::Permutation(s), Automorphism::Permutation(o), _) => {
                Automorphism::Permutation(o.iter().map(|&i| s[i as usize]).collect())
            }
            (Automorphism::Matrix(s), Automorphism::Matrix(o), Some(r)) => {
                // x -> (x O) S = x (O S)
                Automorphism::Matrix(o.iter().map(|row| row_times(&r, row, s, r.modulus)).collect())
            }
            _ => panic!("composition of automorphisms of different kinds"),
        }
    }
}

fn row_times(r: &ChainRing, x: &[u32], a: &[Vec<u32>], modulus: u32) -> Vec<u32> {
    let n = a.first().map_or(0, |row| row.len());
    let mut out = vec![0u32; n];
    for (xi, row) in x.iter().zip(a) {
        if *xi != 0 {
            for (o, &v) in out.iter_mut().zip(row) {
                *o = ((*o as u64 + r.mul(*xi, v) as u64) % modulus as u64) as u32;
            }
        }
    }
    out
}

fn det_is_unit(a: &[Vec<u32>], p: u32) -> bool {
    let n = a.len();
    let mut m: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|&x| (x % p) as u64).collect()).collect();
    let p = p as u64;
    let inv = |x: u64| (1..p).find(|&w| x * w % p == 1).unwrap();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| m[i][c] != 0) else { return false };
        m.swap(c, piv);
        let iv = inv(m[c][c]);
        for i in c + 1..n {
            let f = m[i][c] * iv % p;
            if f != 0 {
                for j in c..n {
                    m[i][j] = (m[i][j] + p * p - f * m[c][j] % p) % p;
                }
            }
        }
    }
    true
}

/// Generators of `GL_n` over `Z/m` for the ring `r`: elementary transvections
/// and `diag(u, 1, ..., 1)` for each unit `u != 1`.
fn gl_generators(n: usize, units: impl Iterator<Item = u32>) -> Vec<Vec<Vec<u32>>> {
    let eye = |n: usize| (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect::<Vec<u32>>()).collect::<Vec<_>>();
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut a = eye(n);
                a[i][j] = 1;
                gens.push(a);
            }
        }
    }
    if n > 0 {
        for u in units.filter(|&u| u != 1) {
            let mut a = eye(n);
            a[0][0] = u;
            gens.push(a);
        }
    }
    gens
}

fn sym_generators(m: usize) -> Vec<Vec<u32>> {
    if m < 2 {
        return Vec::new();
    }
    let mut swap: Vec<u32> = (0..m as u32).collect();
    swap.swap(0, 1);
    let cycle: Vec<u32> = (0..m as u32).map(|i| (i + 1) % m as u32).collect();
    if m == 2 {
        vec![swap]
    } else {
        vec![swap, cycle]
    }
}

/// Generators of `Aut(F)`: a transposition and an `n`-cycle for sets;
/// transvections and unit scalings for `(Z/p^k)^n`.
pub fn aut_generators(inst: &super::Instance) -> Vec<Automorphism> {
    match inst.ring() {
        None => sym_generators(inst.rank() as usize).into_iter().map(Automorphism::Permutation).collect(),
        Some(r) => gl_generators(r.n as usize, r.units()).into_iter().map(Automorphism::Matrix).collect(),
    }
}

/// Automorphisms of the reference object `y` of type `ty`, as permutations of
/// all ambient points fixing everything outside `y`. Generators of a general
/// linear group for rectangular types, the full group (by filtering
/// endomorphisms) otherwise.
pub(crate) fn reference_automorphisms(amb: &Ambient, ty: &IsoType) -> Result<Vec<Vec<u32>>> {
    let y = amb.reference(ty)?;
    let identity: Vec<u32> = (0..amb.num_points() as u32).collect();
    let Some(r) = amb.ring().copied() else {
        let m = ty.size() as usize;
        return Ok(sym_generators(m)
            .into_iter()
            .map(|g| {
                let mut full = identity.clone();
                full[..m].copy_from_slice(&g);
                full
            })
            .collect());
    };
    let parts = ty.parts().to_vec();
    if parts.is_empty() {
        return Ok(Vec::new());
    }
    let members: Vec<u32> = amb.element(y).members().ones().map(|p| p as u32).collect();
    if members.len() > amb.caps().max_reference {
        return Err(Error::cap("reference object size", amb.caps().max_reference));
    }
    // coordinates of a point of y with respect to the generators p^(k - t_i) e_i
    let coords = |pt: u32| -> Vec<u32> {
        let v = r.decode(pt);
        parts.iter().enumerate().map(|(i, &t)| v[i] / r.pow(r.k - t as u32)).collect()
    };
    let embed = |a: &[u32]| -> u32 {
        let mut v = vec![0u32; r.n as usize];
        for (i, (&ai, &t)) in a.iter().zip(&parts).enumerate() {
            v[i] = r.mul(ai % r.pow(t as u32), r.pow(r.k - t as u32));
        }
        r.encode(&v)
    };

    if parts.iter().all(|&t| t == parts[0]) {
        let l = parts[0] as u32;
        let sub = ChainRing::new(r.p, l, parts.len() as u32);
        return Ok(gl_generators(parts.len(), sub.units())
            .into_iter()
            .map(|a| {
                let mut full = identity.clone();
                for &pt in &members {
                    full[pt as usize] = embed(&row_times(&sub, &coords(pt), &a, sub.modulus));
                }
                full
            })
            .collect());
    }

    // images of the i-th generator: points of y killed by p^(t_i)
    let candidates: Vec<Vec<Vec<u32>>> = parts
        .iter()
        .map(|&t| {
            members
                .iter()
                .map(|&pt| coords(pt))
                .filter(|c| {
                    let v: Vec<u32> = parts
                        .iter()
                        .zip(c)
                        .map(|(&s, &ci)| (ci as u64 * r.pow(t as u32) as u64 % r.pow(s as u32) as u64) as u32)
                        .collect();
                    v.iter().all(|&x| x == 0)
                })
                .collect()
        })
        .collect();
    let total: u128 = candidates.iter().map(|c| c.len() as u128).product();
    if total > amb.caps().max_group as u128 {
        return Err(Error::cap("endomorphisms of the reference object", amb.caps().max_group));
    }
    let member_coords: Vec<Vec<u32>> = members.iter().map(|&pt| coords(pt)).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; parts.len()];
    loop {
        let images: Vec<&Vec<u32>> = choice.iter().zip(&candidates).map(|(&c, cand)| &cand[c]).collect();
        let apply = |a: &[u32]| -> Vec<u32> {
            let mut out = vec![0u32; parts.len()];
            for (&ai, img) in a.iter().zip(&images) {
                for (o, (&x, &t)) in out.iter_mut().zip(img.iter().zip(&parts)) {
                    let m = r.pow(t as u32) as u64;
                    *o = ((*o as u64 + ai as u64 * x as u64) % m) as u32;
                }
            }
            out
        };
        let injective = member_coords.iter().all(|a| a.iter().all(|&x| x == 0) || apply(a).iter().any(|&x| x != 0));
        if injective {
            let mut full = identity.clone();
            for (&pt, a) in members.iter().zip(&member_coords) {
                full[pt as usize] = embed(&apply(a));
            }
            out.push(full);
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                return Ok(out);
            }
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::Instance;
    use super::*;

    #[test]
    fn generator_counts() {
        assert_eq!(aut_generators(&Instance::sets(3)).len(), 2);
        // two transvections, no nontrivial units mod 2
        assert_eq!(aut_generators(&Instance::field(2, 2)).len(), 2);
        // two transvections and diag(3, 1) mod 4
        assert_eq!(aut_generators(&Instance::chain_ring(2, 2, 2)).len(), 3);
        for inst in [Instance::sets(4), Instance::chain_ring(2, 2, 2), Instance::field(3, 3)] {
            assert!(aut_generators(&inst).iter().all(|g| g.is_invertible(&inst)));
        }
    }

    #[test]
    fn singular_matrices_are_rejected() {
        let inst = Instance::chain_ring(2, 2, 2);
        assert!(!Automorphism::Matrix(vec![vec![2, 0], vec![0, 1]]).is_invertible(&inst));
        assert!(Automorphism::Matrix(vec![vec![3, 2], vec![0, 1]]).is_invertible(&inst));
        assert!(!Automorphism::Permutation(vec![0, 0, 1]).is_invertible(&Instance::sets(3)));
    }

    #[test]
    fn composition_matches_point_action() {
        let inst = Instance::chain_ring(3, 1, 2);
        let g = aut_generators(&inst);
        let (a, b) = (&g[0], &g[2]);
        let ab = a.compose(b, &inst).point_permutation(&inst);
        let pa = a.point_permutation(&inst);
        let pb = b.point_permutation(&inst);
        assert!((0..9).all(|x| ab[x] == pa[pb[x] as usize]));
    }

    #[test]
    fn reference_automorphisms_of_mixed_type() {
        let amb = Ambient::new(Instance::chain_ring(2, 2, 2)).unwrap();
        // Aut(Z/4 + Z/2) has order 8
        let all = reference_automorphisms(&amb, &IsoType::partition(vec![2, 1])).unwrap();
        assert_eq!(all.len(), 8);
    }
}
