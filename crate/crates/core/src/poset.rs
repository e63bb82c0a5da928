//! Finite posets, their incidence algebras, and pushforwards along type maps.
//!
//! Elements are opaque indices `0..len` carrying unique string labels. The
//! order relation is stored explicitly as one bitset row per element, so the
//! same engine serves type posets, subobject lattices and arrow-type posets.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub const DEFAULT_CLUB_INTERVAL_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    /// `leq[x]` has bit `y` set iff `x <= y`.
    leq: Vec<Vec<u64>>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    /// A linear extension; `position[x]` is the index of `x` in it.
    order: Vec<usize>,
    position: Vec<usize>,
    bottom: Option<usize>,
}

fn words(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

impl Poset {
    /// Builds a poset from explicit comparable pairs. The relation must already
    /// be reflexive and transitive; nothing is closed implicitly.
    pub fn new(labels: Vec<String>, pairs: &[(usize, usize)], bottom: Option<usize>) -> Result<Self> {
        let n = labels.len();
        let mut leq = vec![vec![0u64; words(n)]; n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::InvalidPoset(format!("pair ({a}, {b}) out of range")));
            }
            leq[a][b / 64] |= 1 << (b % 64);
        }
        Self::from_bits(labels, leq, bottom)
    }

    /// Builds a poset from a relation predicate. The bottom element is detected.
    pub fn from_relation(labels: Vec<String>, rel: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = labels.len();
        let mut leq = vec![vec![0u64; words(n)]; n];
        for (a, row) in leq.iter_mut().enumerate() {
            for b in 0..n {
                if rel(a, b) {
                    row[b / 64] |= 1 << (b % 64);
                }
            }
        }
        let mut p = Self::from_bits(labels, leq, None)?;
        p.bottom = (0..n).find(|&b| p.up[b].len() == n);
        Ok(p)
    }

    fn from_bits(labels: Vec<String>, leq: Vec<Vec<u64>>, bottom: Option<usize>) -> Result<Self> {
        let n = labels.len();
        let mut seen = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if seen.insert(l.as_str(), i).is_some() {
                return Err(Error::InvalidPoset(format!("duplicate element id {l:?}")));
            }
        }
        let bit = |a: usize, b: usize| leq[a][b / 64] >> (b % 64) & 1 == 1;
        for a in 0..n {
            if !bit(a, a) {
                return Err(Error::InvalidPoset(format!("not reflexive at {:?}", labels[a])));
            }
        }
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for a in 0..n {
            for b in 0..n {
                if bit(a, b) {
                    if a != b && bit(b, a) {
                        return Err(Error::InvalidPoset(format!(
                            "not antisymmetric: {:?} and {:?}",
                            labels[a], labels[b]
                        )));
                    }
                    up[a].push(b);
                    down[b].push(a);
                }
            }
        }
        // transitivity: a <= b implies up(b) is a subset of up(a)
        for a in 0..n {
            for &b in &up[a] {
                if leq[b].iter().zip(&leq[a]).any(|(ub, ua)| ub & !ua != 0) {
                    return Err(Error::InvalidPoset(format!(
                        "not transitive above {:?} <= {:?}",
                        labels[a], labels[b]
                    )));
                }
            }
        }
        if let Some(b) = bottom {
            if b >= n || up[b].len() != n {
                return Err(Error::InvalidPoset("declared bottom is not below every element".into()));
            }
        }
        // strict inclusion of down-sets makes down-set size a linear extension
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| (down[x].len(), x));
        let mut position = vec![0; n];
        for (i, &x) in order.iter().enumerate() {
            position[x] = i;
        }
        for list in up.iter_mut().chain(down.iter_mut()) {
            list.sort_by_key(|&x| position[x]);
        }
        Ok(Poset { labels, leq, up, down, order, position, bottom })
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        Self::from_relation((0..n).map(|i| i.to_string()).collect(), |a, b| a <= b).unwrap()
    }

    /// The lattice of subsets of a `k`-element set, elements indexed by bitmask.
    pub fn boolean(k: u32) -> Self {
        Self::from_relation((0..1usize << k).map(|i| format!("{i:0w$b}", w = k as usize)).collect(), |a, b| a & !b == 0)
            .unwrap()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y / 64] >> (y % 64) & 1 == 1
    }

    /// Elements `>= x`, in linear-extension order.
    pub fn up(&self, x: usize) -> &[usize] {
        &self.up[x]
    }

    /// Elements `<= y`, in linear-extension order.
    pub fn down(&self, y: usize) -> &[usize] {
        &self.down[y]
    }

    pub fn linear_extension(&self) -> &[usize] {
        &self.order
    }

    pub fn bottom(&self) -> Option<usize> {
        self.bottom
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&t| self.down[t].len() == self.len())
    }

    /// All `(x, y)` with `x <= y`, sorted.
    pub fn comparable_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> =
            (0..self.len()).flat_map(|x| self.up[x].iter().map(move |&y| (x, y))).collect();
        pairs.sort_unstable();
        pairs
    }

    /// Elements of `[x, y]` in linear-extension order; empty when `x` is not below `y`.
    pub fn interval(&self, x: usize, y: usize) -> Vec<usize> {
        self.up[x].iter().copied().filter(|&z| self.leq(z, y)).collect()
    }

    /// The induced subposet on `elems` (kept in the given order).
    pub fn subposet(&self, elems: &[usize]) -> Self {
        let labels = elems.iter().map(|&e| self.labels[e].clone()).collect();
        Self::from_relation(labels, |a, b| self.leq(elems[a], elems[b])).unwrap()
    }

    /// Whether every pair of elements has a greatest lower bound.
    pub fn is_meet_semilattice(&self) -> bool {
        (0..self.len()).all(|a| {
            (a..self.len()).all(|b| {
                let lower: Vec<usize> = self.down[a].iter().copied().filter(|&z| self.leq(z, b)).collect();
                lower.iter().any(|&m| lower.iter().all(|&z| self.leq(z, m)))
            })
        })
    }

    pub fn to_doc(&self) -> PosetDoc {
        PosetDoc {
            elements: self.labels.clone(),
            leq: self
                .comparable_pairs()
                .into_iter()
                .map(|(a, b)| [self.labels[a].clone(), self.labels[b].clone()])
                .collect(),
            bottom: self.bottom.map(|b| self.labels[b].clone()),
        }
    }

    pub fn from_doc(doc: &PosetDoc) -> Result<Self> {
        let index: HashMap<&str, usize> = doc.elements.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let look = |l: &str| index.get(l).copied().ok_or_else(|| Error::InvalidPoset(format!("unknown element {l:?}")));
        let pairs = doc.leq.iter().map(|[a, b]| Ok((look(a)?, look(b)?))).collect::<Result<Vec<_>>>()?;
        let bottom = doc.bottom.as_deref().map(look).transpose()?;
        Self::new(doc.elements.clone(), &pairs, bottom)
    }
}

/// JSON form of a poset: `{"elements": [...], "leq": [[a, b], ...], "bottom": id?}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDoc {
    pub elements: Vec<String>,
    pub leq: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bottom: Option<String>,
}

/// JSON form of an incidence function: `{"pairs": [[a, b, "p/q"], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceDoc {
    pub pairs: Vec<(String, String, String)>,
}

fn same(p: &Arc<Poset>, q: &Arc<Poset>) -> bool {
    Arc::ptr_eq(p, q) || **p == **q
}

/// A rational function on the comparable pairs of a poset.
#[derive(Debug, Clone, PartialEq)]
pub struct IncidenceFunction {
    poset: Arc<Poset>,
    values: BTreeMap<(usize, usize), Rational>,
}

impl IncidenceFunction {
    /// Evaluates `f` on every comparable pair.
    pub fn from_fn(poset: &Arc<Poset>, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let values = poset.comparable_pairs().into_iter().map(|(x, y)| ((x, y), f(x, y))).collect();
        IncidenceFunction { poset: poset.clone(), values }
    }

    pub fn delta(poset: &Arc<Poset>) -> Self {
        Self::from_fn(poset, |x, y| if x == y { rational::one() } else { rational::zero() })
    }

    pub fn zeta(poset: &Arc<Poset>) -> Self {
        Self::from_fn(poset, |_, _| rational::one())
    }

    /// The Möbius function, row by row via [`mobius_row`].
    pub fn mobius(poset: &Arc<Poset>) -> Self {
        let mut values = BTreeMap::new();
        for x in 0..poset.len() {
            for (&y, v) in poset.up(x).iter().zip(mobius_row(poset, x)) {
                values.insert((x, y), v);
            }
        }
        IncidenceFunction { poset: poset.clone(), values }
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    /// Value at `(x, y)`; zero off the comparable pairs.
    pub fn get(&self, x: usize, y: usize) -> Rational {
        self.values.get(&(x, y)).cloned().unwrap_or_else(rational::zero)
    }

    pub fn value(&self, x: usize, y: usize) -> Option<&Rational> {
        self.values.get(&(x, y))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.values.iter()
    }

    /// `[f*g](x,y) = sum_{x <= z <= y} f(x,z) g(z,y)`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        if !same(&self.poset, &other.poset) {
            return Err(Error::MismatchedPoset);
        }
        let p = &*self.poset;
        Ok(Self::from_fn(&self.poset, |x, y| {
            let mut s = rational::zero();
            for &z in p.up(x) {
                if p.leq(z, y) {
                    if let (Some(a), Some(b)) = (self.values.get(&(x, z)), other.values.get(&(z, y))) {
                        if !a.is_zero() && !b.is_zero() {
                            s += a * b;
                        }
                    }
                }
            }
            s
        }))
    }

    /// Module action `(f.v)(x) = sum_{y >= x} f(x,y) v(y)`.
    pub fn act(&self, v: &PosetFunction) -> Result<PosetFunction> {
        if !same(&self.poset, &v.poset) {
            return Err(Error::MismatchedPoset);
        }
        let p = &*self.poset;
        let values = (0..p.len())
            .map(|x| {
                let mut s = rational::zero();
                for &y in p.up(x) {
                    s += self.get(x, y) * &v.values[y];
                }
                s
            })
            .collect();
        Ok(PosetFunction { poset: self.poset.clone(), values })
    }

    /// Whether `f` lies in the subalgebra `J(P)` for the map `t`: for all `y1, y2`
    /// with equal image and every target element `x'`, the fiber sums
    /// `sum_{t(x) = x'} f(x, y_i)` agree.
    pub fn in_j(&self, t: &PosetMap) -> Result<bool> {
        Ok(self.j_violation(t)?.is_none())
    }

    fn fiber_sums(&self, t: &PosetMap, y: usize) -> Vec<Rational> {
        let mut sums = vec![rational::zero(); t.target.len()];
        for &x in self.poset.down(y) {
            if let Some(v) = self.values.get(&(x, y)) {
                sums[t.map[x]] += v;
            }
        }
        sums
    }

    fn j_violation(&self, t: &PosetMap) -> Result<Option<String>> {
        if !same(&self.poset, &t.source) {
            return Err(Error::MismatchedPoset);
        }
        let mut rep: HashMap<usize, (usize, Vec<Rational>)> = HashMap::new();
        for y in 0..self.poset.len() {
            let sums = self.fiber_sums(t, y);
            match rep.get(&t.map[y]) {
                None => {
                    rep.insert(t.map[y], (y, sums));
                }
                Some((y0, s0)) => {
                    if *s0 != sums {
                        return Ok(Some(format!(
                            "fiber sums differ at {:?} and {:?}",
                            self.poset.label(*y0),
                            self.poset.label(y)
                        )));
                    }
                }
            }
        }
        Ok(None)
    }

    /// `[t_* f](x', y') = sum_{t(x) = x'} f(x, y)` for any `y` over `y'`.
    /// Refuses functions outside `J(P)`, whose value would depend on `y`.
    pub fn pushforward(&self, t: &PosetMap) -> Result<IncidenceFunction> {
        if let Some(why) = self.j_violation(t)? {
            return Err(Error::NotInJ(why));
        }
        let mut rep_sums: HashMap<usize, Vec<Rational>> = HashMap::new();
        for y in 0..self.poset.len() {
            rep_sums.entry(t.map[y]).or_insert_with(|| self.fiber_sums(t, y));
        }
        Ok(IncidenceFunction::from_fn(&t.target, |xp, yp| {
            rep_sums.get(&yp).map(|s| s[xp].clone()).unwrap_or_else(rational::zero)
        }))
    }

    pub fn to_doc(&self) -> IncidenceDoc {
        IncidenceDoc {
            pairs: self
                .values
                .iter()
                .map(|(&(x, y), v)| {
                    (self.poset.label(x).to_string(), self.poset.label(y).to_string(), rational::format(v))
                })
                .collect(),
        }
    }

    pub fn from_doc(poset: &Arc<Poset>, doc: &IncidenceDoc) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (a, b, v) in &doc.pairs {
            let x = poset.index_of(a).ok_or_else(|| Error::Parse(format!("unknown element {a:?}")))?;
            let y = poset.index_of(b).ok_or_else(|| Error::Parse(format!("unknown element {b:?}")))?;
            if !poset.leq(x, y) {
                return Err(Error::Parse(format!("pair ({a}, {b}) is not comparable")));
            }
            values.insert((x, y), rational::parse(v)?);
        }
        if values.len() != poset.comparable_pairs().len() {
            return Err(Error::Parse("incidence function must cover every comparable pair".into()));
        }
        Ok(IncidenceFunction { poset: poset.clone(), values })
    }
}

/// A rational function on the elements of a poset.
#[derive(Debug, Clone, PartialEq)]
pub struct PosetFunction {
    poset: Arc<Poset>,
    values: Vec<Rational>,
}

impl PosetFunction {
    pub fn new(poset: &Arc<Poset>, values: Vec<Rational>) -> Result<Self> {
        if values.len() != poset.len() {
            return Err(Error::Shape(format!("{} values for {} elements", values.len(), poset.len())));
        }
        Ok(PosetFunction { poset: poset.clone(), values })
    }

    pub fn constant(poset: &Arc<Poset>, c: Rational) -> Self {
        PosetFunction { poset: poset.clone(), values: vec![c; poset.len()] }
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, x: usize) -> &Rational {
        &self.values[x]
    }

    pub fn total(&self) -> Rational {
        self.values.iter().sum()
    }

    /// Summation along fibers: `t_* v(xi) = sum_{t(x) = xi} v(x)`.
    pub fn pushforward(&self, t: &PosetMap) -> Result<PosetFunction> {
        if !same(&self.poset, &t.source) {
            return Err(Error::MismatchedPoset);
        }
        let mut values = vec![rational::zero(); t.target.len()];
        for (x, v) in self.values.iter().enumerate() {
            values[t.map[x]] += v;
        }
        Ok(PosetFunction { poset: t.target.clone(), values })
    }
}

/// An order-preserving map between finite posets.
#[derive(Debug, Clone)]
pub struct PosetMap {
    source: Arc<Poset>,
    target: Arc<Poset>,
    map: Vec<usize>,
}

impl PosetMap {
    pub fn new(source: &Arc<Poset>, target: &Arc<Poset>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.len() || map.iter().any(|&m| m >= target.len()) {
            return Err(Error::Shape("map must be total on the source".into()));
        }
        for (x, y) in source.comparable_pairs() {
            if !target.leq(map[x], map[y]) {
                return Err(Error::NotOrderPreserving(format!(
                    "{:?} <= {:?} but images are not ordered",
                    source.label(x),
                    source.label(y)
                )));
            }
        }
        Ok(PosetMap { source: source.clone(), target: target.clone(), map })
    }

    pub fn identity(p: &Arc<Poset>) -> Self {
        PosetMap { source: p.clone(), target: p.clone(), map: (0..p.len()).collect() }
    }

    pub fn source(&self) -> &Arc<Poset> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Poset> {
        &self.target
    }

    pub fn image(&self, x: usize) -> usize {
        self.map[x]
    }

    /// Whether for every pair of elements with the same image, their lower
    /// intervals are isomorphic over the target. Exhaustive backtracking,
    /// intervals capped at [`DEFAULT_CLUB_INTERVAL_CAP`] elements.
    pub fn check_club(&self) -> Result<bool> {
        self.check_club_with_cap(DEFAULT_CLUB_INTERVAL_CAP)
    }

    pub fn check_club_with_cap(&self, cap: usize) -> Result<bool> {
        let p = &*self.source;
        if p.bottom().is_none() {
            return Err(Error::MissingBottom);
        }
        // isomorphism over the target is an equivalence relation, so comparing
        // against one representative per fiber suffices
        let mut rep: HashMap<usize, usize> = HashMap::new();
        for y in 0..p.len() {
            if p.down(y).len() > cap {
                return Err(Error::cap("interval size for the isomorphism search", cap));
            }
            match rep.get(&self.map[y]) {
                None => {
                    rep.insert(self.map[y], y);
                }
                Some(&y0) => {
                    if !self.intervals_isomorphic(y0, y) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    fn intervals_isomorphic(&self, y1: usize, y2: usize) -> bool {
        let p = &*self.source;
        let a = p.down(y1);
        let b = p.down(y2);
        if a.len() != b.len() {
            return false;
        }
        let sig = |x: usize, dom: &[usize]| {
            let below = dom.iter().filter(|&&z| p.leq(z, x)).count();
            let above = dom.iter().filter(|&&z| p.leq(x, z)).count();
            (self.map[x], below, above)
        };
        let sa: Vec<_> = a.iter().map(|&x| sig(x, a)).collect();
        let sb: Vec<_> = b.iter().map(|&x| sig(x, b)).collect();
        let mut assigned = vec![usize::MAX; a.len()];
        let mut used = vec![false; b.len()];
        fn search(
            i: usize,
            p: &Poset,
            a: &[usize],
            b: &[usize],
            sa: &[(usize, usize, usize)],
            sb: &[(usize, usize, usize)],
            assigned: &mut [usize],
            used: &mut [bool],
        ) -> bool {
            if i == a.len() {
                return true;
            }
            for j in 0..b.len() {
                if used[j] || sa[i] != sb[j] {
                    continue;
                }
                let consistent = (0..i).all(|k| {
                    let bk = b[assigned[k]];
                    p.leq(a[k], a[i]) == p.leq(bk, b[j]) && p.leq(a[i], a[k]) == p.leq(b[j], bk)
                });
                if consistent {
                    assigned[i] = j;
                    used[j] = true;
                    if search(i + 1, p, a, b, sa, sb, assigned, used) {
                        return true;
                    }
                    used[j] = false;
                }
            }
            false
        }
        search(0, p, a, b, &sa, &sb, &mut assigned, &mut used)
    }
}

/// `mu(x, y)` for every `y >= x`, aligned with [`Poset::up`], by the recursion
/// `mu(x,x) = 1`, `mu(x,y) = -sum_{x <= z < y} mu(x,z)`.
pub fn mobius_row(p: &Poset, x: usize) -> Vec<Rational> {
    let ups = p.up(x);
    let mut mu: Vec<Rational> = Vec::with_capacity(ups.len());
    for (i, &y) in ups.iter().enumerate() {
        let v = if y == x {
            rational::one()
        } else {
            let mut s = rational::zero();
            for (j, &z) in ups[..i].iter().enumerate() {
                if p.leq(z, y) {
                    s += &mu[j];
                }
            }
            -s
        };
        mu.push(v);
    }
    mu
}

/// `chi = mu(bottom, top)`, the reduced Euler characteristic of the order complex.
pub fn euler_char(p: &Arc<Poset>) -> Result<Rational> {
    let b = p.bottom().ok_or(Error::MissingBottom)?;
    let t = p.top().ok_or(Error::MissingTop)?;
    let row = mobius_row(p, b);
    Ok(row[p.up(b).iter().position(|&y| y == t).unwrap()].clone())
}

/// Whether two incidence functions agree with the unit on every pair.
pub fn is_delta(f: &IncidenceFunction) -> bool {
    f.pairs().all(|(&(x, y), v)| if x == y { v.is_one() } else { v.is_zero() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn arc(p: Poset) -> Arc<Poset> {
        Arc::new(p)
    }

    #[test]
    fn construction_rejects_broken_relations() {
        let l = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
        assert!(Poset::new(l(2), &[(0, 0)], None).is_err(), "not reflexive");
        assert!(Poset::new(l(2), &[(0, 0), (1, 1), (0, 1), (1, 0)], None).is_err());
        assert!(Poset::new(l(3), &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)], None).is_err());
        assert!(Poset::new(vec!["a".into(), "a".into()], &[(0, 0), (1, 1)], None).is_err());
        assert!(Poset::new(l(2), &[(0, 0), (1, 1)], Some(0)).is_err(), "0 is not a bottom");
        let ok = Poset::new(l(2), &[(0, 0), (1, 1), (0, 1)], Some(0)).unwrap();
        assert_eq!(ok.top(), Some(1));
    }

    #[test]
    fn convolution_examples() {
        let c = arc(Poset::chain(3));
        let z = IncidenceFunction::zeta(&c);
        let d = IncidenceFunction::delta(&c);
        let mu = IncidenceFunction::mobius(&c);
        assert_eq!(d.convolve(&z).unwrap(), z);
        assert!(is_delta(&z.convolve(&mu).unwrap()));
        assert_eq!(z.convolve(&z).unwrap().get(0, 2), int(3));
    }

    #[test]
    fn zeta_pair_counts() {
        assert_eq!(IncidenceFunction::zeta(&arc(Poset::chain(1))).pairs().count(), 1);
        assert_eq!(IncidenceFunction::zeta(&arc(Poset::chain(3))).pairs().count(), 6);
        assert_eq!(IncidenceFunction::zeta(&arc(Poset::boolean(2))).pairs().count(), 9);
    }

    #[test]
    fn mobius_examples() {
        let c = arc(Poset::chain(3));
        let mu = IncidenceFunction::mobius(&c);
        for x in 0..3 {
            assert_eq!(mu.get(x, x), int(1));
        }
        assert_eq!(mu.get(0, 2), int(0));
        let b = arc(Poset::boolean(2));
        assert_eq!(IncidenceFunction::mobius(&b).get(0, 3), int(1));
    }

    #[test]
    fn action_examples() {
        let c = arc(Poset::chain(3));
        let ones = PosetFunction::constant(&c, int(1));
        let z = IncidenceFunction::zeta(&c);
        assert_eq!(IncidenceFunction::delta(&c).act(&ones).unwrap(), ones);
        assert_eq!(z.act(&ones).unwrap().get(0), &int(3));
        let b = arc(Poset::boolean(2));
        let v = PosetFunction::new(&b, vec![int(5), int(-2), int(7), int(1)]).unwrap();
        let zv = IncidenceFunction::zeta(&b).act(&v).unwrap();
        assert_eq!(IncidenceFunction::mobius(&b).act(&zv).unwrap(), v);
    }

    #[test]
    fn mismatched_posets_are_rejected() {
        let a = IncidenceFunction::zeta(&arc(Poset::chain(2)));
        let b = IncidenceFunction::zeta(&arc(Poset::chain(3)));
        assert_eq!(a.convolve(&b), Err(Error::MismatchedPoset));
    }

    #[test]
    fn pushforward_vector_examples() {
        let b = arc(Poset::boolean(2));
        let v = PosetFunction::new(&b, vec![int(1), int(2), int(3), int(4)]).unwrap();
        assert_eq!(v.pushforward(&PosetMap::identity(&b)).unwrap(), v);
        let pt = arc(Poset::chain(1));
        let to_pt = PosetMap::new(&b, &pt, vec![0; 4]).unwrap();
        assert_eq!(v.pushforward(&to_pt).unwrap().values(), &[int(10)]);
    }

    #[test]
    fn in_j_rejects_asymmetric_fiber() {
        // two incomparable maximal elements over the same target point
        let p = arc(Poset::new(
            vec!["0".into(), "a".into(), "b".into()],
            &[(0, 0), (1, 1), (2, 2), (0, 1), (0, 2)],
            Some(0),
        )
        .unwrap());
        let t = arc(Poset::chain(2));
        let tau = PosetMap::new(&p, &t, vec![0, 1, 1]).unwrap();
        assert!(IncidenceFunction::delta(&p).in_j(&tau).unwrap());
        let f = IncidenceFunction::from_fn(&p, |x, y| if (x, y) == (0, 1) { int(2) } else { int(1) });
        assert!(!f.in_j(&tau).unwrap());
        assert!(matches!(f.pushforward(&tau), Err(Error::NotInJ(_))));
        assert_eq!(IncidenceFunction::delta(&p).pushforward(&tau).unwrap(), IncidenceFunction::delta(&t));
    }

    #[test]
    fn club_needs_bottom() {
        let p = arc(Poset::new(vec!["a".into(), "b".into()], &[(0, 0), (1, 1)], None).unwrap());
        assert_eq!(PosetMap::identity(&p).check_club(), Err(Error::MissingBottom));
        assert!(PosetMap::identity(&arc(Poset::chain(1))).check_club().unwrap());
    }

    #[test]
    fn club_detects_non_isomorphic_intervals() {
        // y1 covers a 2-chain below it, y2 covers two atoms; same image
        let labels = ["0", "a", "b", "c", "y1", "y2"].map(String::from).to_vec();
        let rel = |x: usize, y: usize| x == y || x == 0 || matches!((x, y), (1, 2) | (1, 4) | (2, 4) | (1, 5) | (3, 5));
        let p = arc(Poset::from_relation(labels, rel).unwrap());
        let t = arc(Poset::chain(4));
        let tau = PosetMap::new(&p, &t, vec![0, 1, 2, 1, 3, 3]).unwrap();
        assert!(!tau.check_club().unwrap());
    }

    #[test]
    fn euler_char_examples() {
        assert_eq!(euler_char(&arc(Poset::chain(1))).unwrap(), int(1));
        assert_eq!(euler_char(&arc(Poset::chain(3))).unwrap(), int(0));
        assert_eq!(euler_char(&arc(Poset::boolean(2))).unwrap(), int(1));
    }

    #[test]
    fn doc_round_trip() {
        let b = arc(Poset::boolean(2));
        let doc = b.to_doc();
        let back = Poset::from_doc(&doc).unwrap();
        assert_eq!(back, *b);
        let mu = IncidenceFunction::mobius(&b);
        assert_eq!(IncidenceFunction::from_doc(&b, &mu.to_doc()).unwrap(), mu);
        let json = serde_json::to_string(&mu.to_doc()).unwrap();
        assert!(json.contains("\"-1/1\""));
    }
}
