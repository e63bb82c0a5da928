//! Concrete ambient objects: finite sets and free modules `(Z/p^k)^n`, with
//! their full subobject lattice, types, automorphism generators and arrow types.

mod arrows;
mod automorphism;
mod howell;
mod symmetry;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{Poset, PosetMap};

pub use arrows::{arrow_types, ArrowTable, ArrowType, Transport};
pub use automorphism::{aut_generators, Automorphism};
pub use howell::ChainRing;
pub use symmetry::{is_symmetric_couple, is_symmetric_type, symmetric_couple_report, CoupleReport};

/// Ambient object `F`: `n` points, or the free module `(Z/p^k)^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Instance {
    Sets { n: u32 },
    ChainRing { p: u32, k: u32, n: u32 },
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl Instance {
    pub fn sets(n: u32) -> Self {
        Instance::Sets { n }
    }

    pub fn chain_ring(p: u32, k: u32, n: u32) -> Self {
        Instance::ChainRing { p, k, n }
    }

    pub fn field(q: u32, n: u32) -> Self {
        Instance::ChainRing { p: q, k: 1, n }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Instance::Sets { n } if n == 0 => Err(Error::InvalidInstance("n must be at least 1".into())),
            Instance::Sets { n } if n > 63 => Err(Error::InvalidInstance("at most 63 points".into())),
            Instance::ChainRing { p, .. } if !is_prime(p) => Err(Error::InvalidInstance(format!("{p} is not prime"))),
            Instance::ChainRing { k, n, .. } if k == 0 || n == 0 => {
                Err(Error::InvalidInstance("k and n must be at least 1".into()))
            }
            Instance::ChainRing { p, k, .. } if p.checked_pow(k).is_none_or(|m| m > 255) => {
                Err(Error::InvalidInstance("p^k must be at most 255".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn ring(&self) -> Option<ChainRing> {
        match *self {
            Instance::ChainRing { p, k, n } => Some(ChainRing::new(p, k, n)),
            Instance::Sets { .. } => None,
        }
    }

    pub fn rank(&self) -> u32 {
        match *self {
            Instance::Sets { n } | Instance::ChainRing { n, .. } => n,
        }
    }

    /// Type of the ambient object itself.
    pub fn top_type(&self) -> IsoType {
        match *self {
            Instance::Sets { n } => IsoType::Size(n),
            Instance::ChainRing { k, n, .. } => IsoType::Partition(vec![k as u8; n as usize]),
        }
    }

    /// Whether `ty` is a type of this instance's kind that fits inside `F`.
    pub fn admits(&self, ty: &IsoType) -> bool {
        ty.kind_matches(self) && ty.leq(&self.top_type())
    }

    /// Parses a command-line type: an integer for sets, comma-separated parts
    /// for partitions (`"0"` is the empty partition).
    pub fn parse_type(&self, s: &str) -> Result<IsoType> {
        let bad = || Error::InvalidType(format!("cannot parse type {s:?}"));
        let ty = match self {
            Instance::Sets { .. } => IsoType::Size(s.trim().parse().map_err(|_| bad())?),
            Instance::ChainRing { .. } => {
                let parts =
                    s.split(',').map(|t| t.trim().parse::<u8>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?;
                IsoType::partition(parts)
            }
        };
        if !self.admits(&ty) {
            return Err(Error::InvalidType(format!("{ty} does not fit in the ambient object")));
        }
        Ok(ty)
    }

    /// Direct sum of two types.
    pub fn direct_sum(&self, a: &IsoType, b: &IsoType) -> IsoType {
        match (a, b) {
            (IsoType::Size(x), IsoType::Size(y)) => IsoType::Size(x + y),
            (IsoType::Partition(x), IsoType::Partition(y)) => IsoType::partition(x.iter().chain(y).copied().collect()),
            _ => panic!("direct sum of types of different kinds"),
        }
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instance::Sets { n } => write!(f, "sets(n={n})"),
            Instance::ChainRing { p, k, n } => write!(f, "chain-ring(p={p},k={k},n={n})"),
        }
    }
}

/// Isomorphism type: a cardinality for sets, a partition for modules.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IsoType {
    Size(u32),
    Partition(Vec<u8>),
}

impl IsoType {
    /// Normalizes parts: drops zeros, sorts decreasingly.
    pub fn partition(mut parts: Vec<u8>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        IsoType::Partition(parts)
    }

    pub fn zero_like(&self) -> Self {
        match self {
            IsoType::Size(_) => IsoType::Size(0),
            IsoType::Partition(_) => IsoType::Partition(Vec::new()),
        }
    }

    /// `log_p` of the order for modules, the cardinality for sets.
    pub fn size(&self) -> u32 {
        match self {
            IsoType::Size(n) => *n,
            IsoType::Partition(parts) => parts.iter().map(|&x| x as u32).sum(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.size() == 0
    }

    fn kind_matches(&self, inst: &Instance) -> bool {
        matches!(
            (self, inst),
            (IsoType::Size(_), Instance::Sets { .. }) | (IsoType::Partition(_), Instance::ChainRing { .. })
        )
    }

    /// Embedding order: sizes compare numerically, partitions by containment.
    pub fn leq(&self, other: &IsoType) -> bool {
        match (self, other) {
            (IsoType::Size(a), IsoType::Size(b)) => a <= b,
            (IsoType::Partition(a), IsoType::Partition(b)) => {
                a.len() <= b.len() && a.iter().zip(b).all(|(x, y)| x <= y)
            }
            _ => false,
        }
    }

    pub fn parts(&self) -> &[u8] {
        match self {
            IsoType::Partition(p) => p,
            IsoType::Size(_) => &[],
        }
    }
}

/// Graded lexicographic: total size first, then parts.
impl Ord for IsoType {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (IsoType::Size(a), IsoType::Size(b)) => a.cmp(b),
            (IsoType::Partition(a), IsoType::Partition(b)) => (self.size(), a).cmp(&(other.size(), b)),
            (IsoType::Size(_), IsoType::Partition(_)) => std::cmp::Ordering::Less,
            (IsoType::Partition(_), IsoType::Size(_)) => std::cmp::Ordering::Greater,
        }
    }
}

impl PartialOrd for IsoType {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IsoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoType::Size(n) => write!(f, "{n}"),
            IsoType::Partition(p) if p.is_empty() => write!(f, "0"),
            IsoType::Partition(p) => {
                let s: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", s.join(","))
            }
        }
    }
}

/// Canonical form of a subobject: sorted points, or Howell rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Form {
    Points(Vec<u32>),
    Rows(Vec<Vec<u32>>),
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            Form::Points(p) => write!(f, "{{{}}}", join(p)),
            Form::Rows(rows) => {
                let r: Vec<String> = rows.iter().map(|r| format!("[{}]", join(r))).collect();
                write!(f, "[{}]", r.join(","))
            }
        }
    }
}

/// A subobject of the ambient object, in canonical form with its type and the
/// set of ambient points it contains.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subobject {
    ty: IsoType,
    form: Form,
    members: FixedBitSet,
}

impl Subobject {
    pub fn iso_type(&self) -> &IsoType {
        &self.ty
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn cardinality(&self) -> usize {
        self.members.count_ones(..)
    }
}

impl fmt::Display for Subobject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.form.fmt(f)
    }
}

/// Resource limits for enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub max_lattice: usize,
    pub max_group: usize,
    pub max_reference: usize,
    pub max_points: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_lattice: 1_000_000, max_group: 1_000_000, max_reference: 4096, max_points: 1 << 16 }
    }
}

/// The subobject lattice of a fixed ambient object, built once.
#[derive(Debug)]
pub struct Ambient {
    inst: Instance,
    caps: Caps,
    ring: Option<ChainRing>,
    points: usize,
    elems: Vec<Subobject>,
    by_members: HashMap<FixedBitSet, usize>,
    lattice: Arc<Poset>,
    types: Vec<IsoType>,
    type_of: Vec<usize>,
    type_poset: Arc<Poset>,
    type_map: PosetMap,
    generators: Vec<Automorphism>,
    gen_points: Vec<Vec<u32>>,
}

impl Ambient {
    pub fn new(inst: Instance) -> Result<Self> {
        Self::with_caps(inst, Caps::default())
    }

    pub fn with_caps(inst: Instance, caps: Caps) -> Result<Self> {
        inst.validate()?;
        let ring = inst.ring();
        let points = match (&inst, ring) {
            (Instance::Sets { n }, _) => *n as usize,
            (_, Some(r)) => {
                let total = (r.modulus as u128).pow(r.n);
                if total > caps.max_points as u128 {
                    return Err(Error::cap("number of ambient points", caps.max_points));
                }
                total as usize
            }
            _ => unreachable!(),
        };
        let mut elems = match (&inst, ring) {
            (Instance::Sets { n }, _) => enumerate_subsets(*n, caps)?,
            (_, Some(r)) => enumerate_submodules_of(&r, points, caps)?,
            _ => unreachable!(),
        };
        elems.sort();
        let by_members: HashMap<FixedBitSet, usize> =
            elems.iter().enumerate().map(|(i, s)| (s.members.clone(), i)).collect();
        let labels = elems.iter().map(|s| s.form.to_string()).collect();
        let lattice = Arc::new(Poset::from_relation(labels, |a, b| elems[a].members.is_subset(&elems[b].members))?);

        let mut types: Vec<IsoType> = elems.iter().map(|s| s.ty.clone()).collect();
        types.dedup();
        let type_of = elems.iter().map(|s| types.binary_search(&s.ty).unwrap()).collect::<Vec<_>>();
        let type_poset = Arc::new(Poset::from_relation(types.iter().map(|t| t.to_string()).collect(), |a, b| {
            types[a].leq(&types[b])
        })?);
        let type_map = PosetMap::new(&lattice, &type_poset, type_of.clone())?;

        let generators = aut_generators(&inst);
        let gen_points = generators.iter().map(|g| g.point_permutation(&inst)).collect();
        Ok(Ambient {
            inst,
            caps,
            ring,
            points,
            elems,
            by_members,
            lattice,
            types,
            type_of,
            type_poset,
            type_map,
            generators,
            gen_points,
        })
    }

    pub fn instance(&self) -> &Instance {
        &self.inst
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    pub fn ring(&self) -> Option<&ChainRing> {
        self.ring.as_ref()
    }

    pub fn num_points(&self) -> usize {
        self.points
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn element(&self, i: usize) -> &Subobject {
        &self.elems[i]
    }

    pub fn elements(&self) -> &[Subobject] {
        &self.elems
    }

    /// Index of a subobject of this ambient.
    pub fn index_of(&self, s: &Subobject) -> Result<usize> {
        self.by_members.get(&s.members).copied().ok_or(Error::MismatchedAmbient)
    }

    pub fn index_of_members(&self, m: &FixedBitSet) -> Option<usize> {
        self.by_members.get(m).copied()
    }

    /// The subobject lattice of `F` as a poset (elements in canonical order).
    pub fn lattice(&self) -> &Arc<Poset> {
        &self.lattice
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.lattice.leq(a, b)
    }

    /// Types occurring in `F`, in canonical order.
    pub fn types(&self) -> &[IsoType] {
        &self.types
    }

    pub fn type_index(&self, ty: &IsoType) -> Result<usize> {
        self.types.binary_search(ty).map_err(|_| Error::InvalidType(format!("{ty} does not occur in {}", self.inst)))
    }

    pub fn type_of(&self, i: usize) -> usize {
        self.type_of[i]
    }

    pub fn type_poset(&self) -> &Arc<Poset> {
        &self.type_poset
    }

    /// The type map from the subobject lattice onto the type poset.
    pub fn type_map(&self) -> &PosetMap {
        &self.type_map
    }

    /// The interval `[0, phi]` of the type poset: type indices in canonical
    /// order and the induced subposet.
    pub fn type_interval(&self, phi: &IsoType) -> Result<(Vec<usize>, Arc<Poset>)> {
        self.type_index(phi)?;
        let idx: Vec<usize> = (0..self.types.len()).filter(|&t| self.types[t].leq(phi)).collect();
        let poset = Arc::new(self.type_poset.subposet(&idx));
        Ok((idx, poset))
    }

    pub fn generators(&self) -> &[Automorphism] {
        &self.generators
    }

    /// Generators as permutations of ambient point indices.
    pub fn generator_points(&self) -> &[Vec<u32>] {
        &self.gen_points
    }

    pub fn zero(&self) -> usize {
        self.lattice.bottom().expect("lattice has a bottom")
    }

    pub fn top(&self) -> usize {
        self.elems.len() - 1
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        let mut m = self.elems[a].members.clone();
        m.intersect_with(&self.elems[b].members);
        self.by_members[&m]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        match (&self.elems[a].form, &self.elems[b].form, self.ring) {
            (Form::Rows(x), Form::Rows(y), Some(r)) => {
                let form = r.howell(x.iter().chain(y).cloned());
                self.by_members[&members_of(&r, self.points, &form)]
            }
            _ => {
                let mut m = self.elems[a].members.clone();
                m.union_with(&self.elems[b].members);
                self.by_members[&m]
            }
        }
    }

    pub fn meet_of(&self, x: &Subobject, y: &Subobject) -> Result<Subobject> {
        Ok(self.elems[self.meet(self.index_of(x)?, self.index_of(y)?)].clone())
    }

    pub fn join_of(&self, x: &Subobject, y: &Subobject) -> Result<Subobject> {
        Ok(self.elems[self.join(self.index_of(x)?, self.index_of(y)?)].clone())
    }

    /// Type of `y / x`; the size difference for sets.
    pub fn quotient_type(&self, x: usize, y: usize) -> Result<IsoType> {
        if !self.leq(x, y) {
            return Err(Error::NotContained(self.elems[x].to_string(), self.elems[y].to_string()));
        }
        Ok(match (&self.elems[x].form, &self.elems[y].form, self.ring) {
            (Form::Rows(a), Form::Rows(b), Some(r)) => IsoType::Partition(r.quotient_type(a, b)),
            _ => IsoType::Size(self.elems[y].ty.size() - self.elems[x].ty.size()),
        })
    }

    /// Recomputes the type of a subobject from its canonical form.
    pub fn iso_type(&self, x: usize) -> IsoType {
        match (&self.elems[x].form, self.ring) {
            (Form::Rows(rows), Some(r)) => IsoType::Partition(r.smith_type(rows)),
            _ => IsoType::Size(self.elems[x].members.count_ones(..) as u32),
        }
    }

    /// Builds the subobject generated by the given vectors (or points, for sets).
    pub fn generated_by(&self, gens: &[Vec<u32>]) -> Result<usize> {
        match self.ring {
            Some(r) => {
                if gens.iter().any(|g| g.len() != r.n as usize) {
                    return Err(Error::Shape(format!("vectors must have length {}", r.n)));
                }
                let form = r.howell(gens.iter().cloned());
                Ok(self.by_members[&members_of(&r, self.points, &form)])
            }
            None => {
                let mut m = FixedBitSet::with_capacity(self.points);
                for g in gens.iter().flatten() {
                    if *g as usize >= self.points {
                        return Err(Error::Shape(format!("point {g} out of range")));
                    }
                    m.insert(*g as usize);
                }
                Ok(self.by_members[&m])
            }
        }
    }

    /// The fixed reference object of type `ty` inside `F`: the first points for
    /// sets, the span of `p^(k - t_i) e_i` for a partition `t`.
    pub fn reference(&self, ty: &IsoType) -> Result<usize> {
        if !self.inst.admits(ty) {
            return Err(Error::InvalidType(format!("{ty} does not fit in {}", self.inst)));
        }
        match (ty, self.ring) {
            (IsoType::Size(m), None) => self.generated_by(&[(0..*m).collect()]),
            (IsoType::Partition(parts), Some(r)) => {
                let rows: Vec<Vec<u32>> = parts
                    .iter()
                    .enumerate()
                    .map(|(i, &t)| {
                        let mut v = vec![0; r.n as usize];
                        v[i] = r.pow(r.k - t as u32);
                        v
                    })
                    .collect();
                self.generated_by(&rows)
            }
            _ => unreachable!(),
        }
    }

    /// All subobjects of `y` in canonical order (the lower interval `[0, y]`).
    pub fn enumerate_below(&self, y: usize) -> Result<Vec<usize>> {
        let below = self.lattice.down(y);
        if below.len() > self.caps.max_lattice {
            return Err(Error::cap("subobject lattice size", self.caps.max_lattice));
        }
        let mut v = below.to_vec();
        v.sort_unstable();
        Ok(v)
    }

    /// The Grassmannian of type-`ty` subobjects of `F`, in canonical order.
    pub fn grassmannian(&self, ty: &IsoType) -> Vec<usize> {
        match self.types.binary_search(ty) {
            Ok(t) => (0..self.elems.len()).filter(|&i| self.type_of[i] == t).collect(),
            Err(_) => Vec::new(),
        }
    }

    /// Subobjects of `y` of type `ty`.
    pub fn below_of_type(&self, y: usize, ty: &IsoType) -> Vec<usize> {
        match self.types.binary_search(ty) {
            Ok(t) => {
                let mut v: Vec<usize> =
                    self.lattice.down(y).iter().copied().filter(|&i| self.type_of[i] == t).collect();
                v.sort_unstable();
                v
            }
            Err(_) => Vec::new(),
        }
    }

    /// The interval `[0, y]` as a poset, with its elements (sorted) and the
    /// type map restricted to it.
    pub fn sub_lattice(&self, y: usize) -> Result<(Vec<usize>, Arc<Poset>, PosetMap)> {
        let elems = self.enumerate_below(y)?;
        let poset = Arc::new(self.lattice.subposet(&elems));
        let map = PosetMap::new(&poset, &self.type_poset, elems.iter().map(|&e| self.type_of[e]).collect())?;
        Ok((elems, poset, map))
    }

    /// Image of subobject `x` under a point map (a permutation of ambient points).
    pub fn apply_points(&self, perm: &[u32], x: usize) -> usize {
        let mut m = FixedBitSet::with_capacity(self.points);
        for pt in self.elems[x].members.ones() {
            m.insert(perm[pt] as usize);
        }
        self.by_members[&m]
    }

    /// Image of a subobject under an automorphism of `F`.
    pub fn apply(&self, g: &Automorphism, x: &Subobject) -> Result<Subobject> {
        let perm = g.point_permutation(&self.inst);
        Ok(self.elems[self.apply_points(&perm, self.index_of(x)?)].clone())
    }

    /// Permutations of the listed subobjects induced by the generators of
    /// `Aut(F)`; `domain` must be stable under the group.
    pub fn induced_permutations(&self, domain: &[usize]) -> Result<Vec<Vec<u32>>> {
        let pos: HashMap<usize, u32> = domain.iter().enumerate().map(|(i, &x)| (x, i as u32)).collect();
        self.gen_points
            .iter()
            .map(|g| {
                domain
                    .iter()
                    .map(|&x| {
                        pos.get(&self.apply_points(g, x))
                            .copied()
                            .ok_or_else(|| Error::InvalidType("domain is not stable under Aut(F)".into()))
                    })
                    .collect()
            })
            .collect()
    }
}

fn members_of(r: &ChainRing, points: usize, form: &[Vec<u32>]) -> FixedBitSet {
    let mut m = FixedBitSet::with_capacity(points);
    for pt in r.span_points(form) {
        m.insert(pt as usize);
    }
    m
}

fn enumerate_subsets(n: u32, caps: Caps) -> Result<Vec<Subobject>> {
    if n >= 40 || (1usize << n) > caps.max_lattice {
        return Err(Error::cap("subobject lattice size", caps.max_lattice));
    }
    Ok((0u64..1 << n)
        .map(|mask| {
            let pts: Vec<u32> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let mut members = FixedBitSet::with_capacity(n as usize);
            for &p in &pts {
                members.insert(p as usize);
            }
            Subobject { ty: IsoType::Size(pts.len() as u32), form: Form::Points(pts), members }
        })
        .collect())
}

fn make_submodule(r: &ChainRing, points: usize, form: Vec<Vec<u32>>) -> Subobject {
    let members = members_of(r, points, &form);
    let ty = IsoType::Partition(r.smith_type(&form));
    Subobject { ty, form: Form::Rows(form), members }
}

/// Closure of `{0}` under adding cyclic submodules, deduplicated by canonical form.
fn enumerate_submodules_of(r: &ChainRing, points: usize, caps: Caps) -> Result<Vec<Subobject>> {
    let mut cyclic: Vec<Vec<Vec<u32>>> = (1..points as u32).map(|pt| r.howell([r.decode(pt)])).collect();
    cyclic.sort();
    cyclic.dedup();
    let cyclic_members: Vec<FixedBitSet> = cyclic.iter().map(|f| members_of(r, points, f)).collect();

    let zero = make_submodule(r, points, Vec::new());
    let mut seen: HashMap<FixedBitSet, usize> = HashMap::new();
    seen.insert(zero.members.clone(), 0);
    let mut out = vec![zero];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (c, cm) in cyclic.iter().zip(&cyclic_members) {
            if cm.is_subset(&out[i].members) {
                continue;
            }
            let Form::Rows(rows) = &out[i].form else { unreachable!() };
            let form = r.howell(rows.iter().chain(c).cloned());
            let members = members_of(r, points, &form);
            if seen.contains_key(&members) {
                continue;
            }
            if out.len() >= caps.max_lattice {
                return Err(Error::cap("subobject lattice size", caps.max_lattice));
            }
            seen.insert(members.clone(), out.len());
            let ty = IsoType::Partition(r.smith_type(&form));
            out.push(Subobject { ty, form: Form::Rows(form), members });
            queue.push_back(out.len() - 1);
        }
    }
    Ok(out)
}

/// All subobjects of `ambient`, complete and in canonical order.
pub fn enumerate_submodules(amb: &Ambient, ambient: &Subobject) -> Result<Vec<Subobject>> {
    let y = amb.index_of(ambient)?;
    Ok(amb.enumerate_below(y)?.into_iter().map(|i| amb.element(i).clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4sq() -> Ambient {
        Ambient::new(Instance::chain_ring(2, 2, 2)).unwrap()
    }

    #[test]
    fn lattice_sizes() {
        assert_eq!(Ambient::new(Instance::field(2, 2)).unwrap().len(), 5);
        assert_eq!(Ambient::new(Instance::chain_ring(2, 2, 1)).unwrap().len(), 3);
        assert_eq!(Ambient::new(Instance::sets(3)).unwrap().len(), 8);
        assert_eq!(z4sq().len(), 15);
        // 1 + 15 + 35 + 15 + 1
        assert_eq!(Ambient::new(Instance::field(2, 4)).unwrap().len(), 67);
    }

    #[test]
    fn types_and_quotients() {
        let a = z4sq();
        let x = a.generated_by(&[vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(a.element(x).iso_type(), &IsoType::Partition(vec![1, 1]));
        assert_eq!(a.element(a.top()).iso_type(), &IsoType::Partition(vec![2, 2]));
        let s = Ambient::new(Instance::sets(4)).unwrap();
        assert_eq!(s.element(s.generated_by(&[vec![0, 3]]).unwrap()).iso_type(), &IsoType::Size(2));

        let c = Ambient::new(Instance::chain_ring(2, 2, 1)).unwrap();
        let half = c.generated_by(&[vec![2]]).unwrap();
        assert_eq!(c.quotient_type(half, c.top()).unwrap(), IsoType::partition(vec![1]));
        assert_eq!(c.quotient_type(c.zero(), c.top()).unwrap(), IsoType::partition(vec![2]));
        assert!(c.quotient_type(c.top(), half).is_err());
        let b = s.generated_by(&[vec![1]]).unwrap();
        assert_eq!(s.quotient_type(b, s.top()).unwrap(), IsoType::Size(3));
    }

    #[test]
    fn meet_and_join() {
        let a = z4sq();
        let x = a.generated_by(&[vec![1, 0]]).unwrap();
        let y = a.generated_by(&[vec![1, 2]]).unwrap();
        assert_eq!(a.meet(x, x), x);
        assert_eq!(a.meet(x, y), a.generated_by(&[vec![2, 0]]).unwrap());
        assert_eq!(a.join(x, y), a.generated_by(&[vec![1, 0], vec![0, 2]]).unwrap());
        let s = Ambient::new(Instance::sets(4)).unwrap();
        let u = s.generated_by(&[vec![0, 1]]).unwrap();
        let v = s.generated_by(&[vec![1, 2]]).unwrap();
        assert_eq!(s.meet(u, v), s.generated_by(&[vec![1]]).unwrap());
        assert_eq!(s.join(u, v), s.generated_by(&[vec![0, 1, 2]]).unwrap());
    }

    #[test]
    fn reference_objects_have_their_type() {
        let a = Ambient::new(Instance::chain_ring(2, 2, 3)).unwrap();
        for ty in a.types().to_vec() {
            assert_eq!(a.element(a.reference(&ty).unwrap()).iso_type(), &ty);
        }
    }

    #[test]
    fn parse_types() {
        let i = Instance::chain_ring(2, 2, 2);
        assert_eq!(i.parse_type("2").unwrap(), IsoType::Partition(vec![2]));
        assert_eq!(i.parse_type("1,2").unwrap(), IsoType::Partition(vec![2, 1]));
        assert_eq!(i.parse_type("0").unwrap(), IsoType::Partition(vec![]));
        assert!(i.parse_type("3").is_err());
        assert!(i.parse_type("1,1,1").is_err());
        assert_eq!(Instance::sets(6).parse_type("3").unwrap(), IsoType::Size(3));
        assert!(Instance::sets(6).parse_type("7").is_err());
    }

    #[test]
    fn instance_validation_and_json() {
        assert!(Instance::chain_ring(4, 1, 2).validate().is_err());
        assert!(Instance::chain_ring(2, 0, 2).validate().is_err());
        assert!(Instance::sets(0).validate().is_err());
        let j = serde_json::to_string(&Instance::chain_ring(2, 2, 2)).unwrap();
        assert_eq!(j, r#"{"kind":"chain-ring","p":2,"k":2,"n":2}"#);
        let s: Instance = serde_json::from_str(r#"{"kind":"sets","n":6}"#).unwrap();
        assert_eq!(s, Instance::sets(6));
    }

    #[test]
    fn type_order_is_graded_lex() {
        let mut v = vec![IsoType::partition(vec![2]), IsoType::partition(vec![1, 1]), IsoType::partition(vec![1])];
        v.sort();
        assert_eq!(v, vec![IsoType::partition(vec![1]), IsoType::partition(vec![1, 1]), IsoType::partition(vec![2])]);
        assert!(!IsoType::partition(vec![2]).leq(&IsoType::partition(vec![1, 1])));
        assert!(IsoType::partition(vec![1]).leq(&IsoType::partition(vec![1, 1])));
    }
}
