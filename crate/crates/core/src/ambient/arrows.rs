use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use super::automorphism::reference_automorphisms;
use super::{Ambient, IsoType, Subobject};
use crate::error::{Error, Result};
use crate::poset::{Poset, PosetMap};

/// An `Aut(y)`-orbit of subobjects of the reference object `y` of type
/// `target`, labeled by its least member in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowType {
    pub source: IsoType,
    pub target: IsoType,
    pub orbit_id: Subobject,
    /// Orbit size: the number of subobjects of `y` embedded this way.
    pub size: usize,
    /// Type of the cokernel `y / x`.
    pub coker: IsoType,
}

/// All arrow types into a fixed target type, with the labeling of the lattice
/// of the reference object and the induced poset of arrow types.
#[derive(Debug)]
pub struct ArrowTable {
    target: IsoType,
    reference: usize,
    subs: Vec<usize>,
    label: HashMap<usize, usize>,
    arrows: Vec<ArrowType>,
    poset: Arc<Poset>,
    sub_poset: Arc<Poset>,
    label_map: PosetMap,
}

impl ArrowTable {
    pub fn new(amb: &Ambient, target: &IsoType) -> Result<Self> {
        let y = amb.reference(target)?;
        let gens = reference_automorphisms(amb, target)?;
        let (subs, sub_poset, _) = amb.sub_lattice(y)?;
        let pos: HashMap<usize, usize> = subs.iter().enumerate().map(|(i, &s)| (s, i)).collect();

        let mut orbit_of = vec![usize::MAX; subs.len()];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for start in 0..subs.len() {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            orbit_of[start] = id;
            let mut members = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for g in &gens {
                    let j = pos[&amb.apply_points(g, subs[i])];
                    if orbit_of[j] == usize::MAX {
                        orbit_of[j] = id;
                        members.push(j);
                        queue.push_back(j);
                    }
                }
            }
            orbits.push(members);
        }

        let mut arrows: Vec<(ArrowType, Vec<usize>)> = orbits
            .into_iter()
            .map(|members| {
                let min = *members.iter().min_by_key(|&&i| amb.element(subs[i])).unwrap();
                let x = subs[min];
                let arrow = ArrowType {
                    source: amb.element(x).iso_type().clone(),
                    target: target.clone(),
                    orbit_id: amb.element(x).clone(),
                    size: members.len(),
                    coker: amb.quotient_type(x, y).expect("subobject of the reference"),
                };
                (arrow, members)
            })
            .collect();
        arrows.sort_by(|a, b| (&a.0.source, &a.0.orbit_id).cmp(&(&b.0.source, &b.0.orbit_id)));

        let mut label = HashMap::new();
        let mut local_label = vec![0; subs.len()];
        for (a, (_, members)) in arrows.iter().enumerate() {
            for &m in members {
                label.insert(subs[m], a);
                local_label[m] = a;
            }
        }
        let arrows: Vec<ArrowType> = arrows.into_iter().map(|(a, _)| a).collect();
        // i <= j iff some subobject labeled i lies below the representative of j
        let reps: Vec<usize> = arrows.iter().map(|a| amb.index_of(&a.orbit_id).unwrap()).collect();
        let labels: Vec<String> = arrows.iter().map(|a| format!("{}:{}", a.source, a.orbit_id)).collect();
        let poset = Arc::new(Poset::from_relation(labels, |i, j| {
            amb.lattice().down(reps[j]).iter().any(|x| label.get(x) == Some(&i))
        })?);
        let label_map = PosetMap::new(&sub_poset, &poset, local_label)?;
        Ok(ArrowTable { target: target.clone(), reference: y, subs, label, arrows, poset, sub_poset, label_map })
    }

    pub fn target(&self) -> &IsoType {
        &self.target
    }

    /// Lattice index of the reference object.
    pub fn reference(&self) -> usize {
        self.reference
    }

    pub fn arrows(&self) -> &[ArrowType] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Indices of the arrow types with the given source.
    pub fn with_source(&self, source: &IsoType) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&i| &self.arrows[i].source == source).collect()
    }

    /// Arrow type of a subobject of the reference object.
    pub fn label_of(&self, x: usize) -> Option<usize> {
        self.label.get(&x).copied()
    }

    /// Subobjects of the reference object, sorted.
    pub fn subobjects(&self) -> &[usize] {
        &self.subs
    }

    /// The poset of arrow types.
    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    /// The lattice of the reference object (ordered like [`Self::subobjects`]).
    pub fn sub_poset(&self) -> &Arc<Poset> {
        &self.sub_poset
    }

    /// The labeling of that lattice by arrow types, as a poset map.
    pub fn label_map(&self) -> &PosetMap {
        &self.label_map
    }
}

/// `Aut(y)`-orbits of type-`source` subobjects of the reference object of type `target`.
pub fn arrow_types(amb: &Ambient, source: &IsoType, target: &IsoType) -> Result<Vec<ArrowType>> {
    if !source.leq(target) {
        return Err(Error::NotContained(source.to_string(), target.to_string()));
    }
    let table = ArrowTable::new(amb, target)?;
    Ok(table.with_source(source).into_iter().map(|i| table.arrows[i].clone()).collect())
}

/// For each `b` in the Grassmannian of a type, a point map of `F` sending `b`
/// onto the reference object, found by breadth-first search over the
/// generators of `Aut(F)`. Used to label flags `a <= b` by arrow type.
#[derive(Debug)]
pub struct Transport {
    to_reference: HashMap<usize, Vec<u32>>,
}

impl Transport {
    pub fn new(amb: &Ambient, ty: &IsoType) -> Result<Self> {
        let y = amb.reference(ty)?;
        let gens = amb.generator_points();
        let inverses: Vec<Vec<u32>> = gens
            .iter()
            .map(|g| {
                let mut inv = vec![0u32; g.len()];
                for (i, &gi) in g.iter().enumerate() {
                    inv[gi as usize] = i as u32;
                }
                inv
            })
            .collect();
        let mut to_reference = HashMap::new();
        to_reference.insert(y, (0..amb.num_points() as u32).collect::<Vec<u32>>());
        let mut queue = VecDeque::from([y]);
        while let Some(b) = queue.pop_front() {
            for (g, ginv) in gens.iter().zip(&inverses) {
                let c = amb.apply_points(g, b);
                if !to_reference.contains_key(&c) {
                    let qb = &to_reference[&b];
                    let qc: Vec<u32> = ginv.iter().map(|&x| qb[x as usize]).collect();
                    to_reference.insert(c, qc);
                    queue.push_back(c);
                }
            }
        }
        let size = amb.grassmannian(ty).len();
        if to_reference.len() != size {
            return Err(Error::TheoremViolation(format!(
                "Aut(F) has {} elements in the orbit of the reference object of type {ty}, expected {size}",
                to_reference.len()
            )));
        }
        Ok(Transport { to_reference })
    }

    /// Image of `a <= b` inside the reference object, under the transport of `b`.
    pub fn to_reference(&self, amb: &Ambient, a: usize, b: usize) -> usize {
        amb.apply_points(&self.to_reference[&b], a)
    }

    /// Arrow type of the flag `a <= b`.
    pub fn label(&self, amb: &Ambient, table: &ArrowTable, a: usize, b: usize) -> usize {
        table.label_of(self.to_reference(amb, a, b)).expect("transported flag lies in the reference object")
    }
}

#[cfg(test)]
mod tests {
    use super::super::Instance;
    use super::*;

    #[test]
    fn arrow_counts() {
        let a = Ambient::new(Instance::chain_ring(2, 2, 2)).unwrap();
        let p = IsoType::partition;
        assert_eq!(arrow_types(&a, &p(vec![1]), &p(vec![2, 1])).unwrap().len(), 2);
        assert_eq!(arrow_types(&a, &p(vec![1]), &p(vec![2])).unwrap().len(), 1);
        assert!(arrow_types(&a, &p(vec![2]), &p(vec![1, 1])).is_err());
        let s = Ambient::new(Instance::sets(5)).unwrap();
        for m in 0..=5 {
            for j in 0..=m {
                assert_eq!(arrow_types(&s, &IsoType::Size(j), &IsoType::Size(m)).unwrap().len(), 1);
            }
        }
    }

    #[test]
    fn orbit_sizes_add_up() {
        let a = Ambient::new(Instance::chain_ring(2, 2, 2)).unwrap();
        let t = ArrowTable::new(&a, &IsoType::partition(vec![2, 1])).unwrap();
        assert_eq!(t.arrows().iter().map(|x| x.size).sum::<usize>(), t.subobjects().len());
        let ones: Vec<usize> =
            t.with_source(&IsoType::partition(vec![1])).iter().map(|&i| t.arrows()[i].size).collect();
        assert_eq!(ones.iter().sum::<usize>(), 3);
        assert!(t.arrows().iter().all(|x| x.orbit_id.iso_type() == &x.source));
    }

    #[test]
    fn transport_reaches_every_subobject() {
        let a = Ambient::new(Instance::field(2, 3)).unwrap();
        let ty = IsoType::partition(vec![1, 1]);
        let t = Transport::new(&a, &ty).unwrap();
        let y = a.reference(&ty).unwrap();
        for b in a.grassmannian(&ty) {
            assert_eq!(t.to_reference(&a, b, b), y);
        }
    }
}
