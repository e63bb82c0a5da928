//! Counting quantities on subobject lattices: q-binomials, containment and
//! avoidance counts, Euler characteristics, the pushed-forward Möbius function,
//! and the inclusion-exclusion identities relating them.
//!
//! Enumeration is the ground truth; closed forms are only ever compared to it.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::ambient::{Ambient, ArrowTable, Caps, Instance, IsoType};
use crate::error::{Error, Result};
use crate::poset::{euler_char, IncidenceFunction, PosetFunction, PosetMap};
use crate::rational::{self, Rational};
use crate::report::Check;

/// Gaussian binomial `(n over m)_q`; zero outside `0 <= m <= n`.
pub fn gauss_binom(n: i64, m: i64, q: u64) -> BigInt {
    if m < 0 || n < 0 || m > n {
        return BigInt::zero();
    }
    let q = BigInt::from(q);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..m {
        num *= q.pow((n - i) as u32) - 1u32;
        den *= q.pow((i + 1) as u32) - 1u32;
    }
    num / den
}

/// `(-1)^d q^(d choose 2)`, the Euler characteristic of a `d`-dimensional space.
pub fn chi_field(d: u32, q: u64) -> BigInt {
    let v = BigInt::from(q).pow(d * d.saturating_sub(1) / 2);
    if d % 2 == 1 {
        -v
    } else {
        v
    }
}

/// `(-1)^(n-m) q^((n-m) choose 2) (n over m)_q`.
pub fn mu_hat_field(m: u32, n: u32, q: u64) -> BigInt {
    if m > n {
        return BigInt::zero();
    }
    chi_field(n - m, q) * gauss_binom(n as i64, m as i64, q)
}

/// A fixed ambient object with memoized counts.
#[derive(Debug)]
pub struct Counter<'a> {
    amb: &'a Ambient,
    chi: Mutex<HashMap<IsoType, Rational>>,
    cont: Mutex<HashMap<(IsoType, IsoType, IsoType), u64>>,
    arrows: Mutex<HashMap<IsoType, std::sync::Arc<ArrowTable>>>,
}

/// Outcome of a brute-force avoidance count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AvoidCount {
    pub value: u64,
    /// Disjoint representative pairs available, and how many were counted.
    pub pairs_total: usize,
    pub pairs_checked: usize,
}

/// The inclusion-exclusion evaluation of an avoidance count.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AvoidFormula {
    #[serde(with = "rational::serde_q")]
    pub value: Rational,
    /// Types `omega + alpha` with a nonzero coefficient that do not occur in
    /// the big object; their terms were taken as zero.
    pub unrealizable: Vec<String>,
}

/// Work budget (subobject comparisons) for checking that an avoidance count
/// does not depend on the chosen disjoint pair.
const AVOID_BUDGET: usize = 1 << 21;

impl<'a> Counter<'a> {
    pub fn new(amb: &'a Ambient) -> Self {
        Counter { amb, chi: Mutex::default(), cont: Mutex::default(), arrows: Mutex::default() }
    }

    pub fn ambient(&self) -> &'a Ambient {
        self.amb
    }

    pub fn arrow_table(&self, target: &IsoType) -> Result<std::sync::Arc<ArrowTable>> {
        if let Some(t) = self.arrows.lock().unwrap().get(target) {
            return Ok(t.clone());
        }
        let t = std::sync::Arc::new(ArrowTable::new(self.amb, target)?);
        self.arrows.lock().unwrap().insert(target.clone(), t.clone());
        Ok(t)
    }

    /// Number of type-`alpha` subobjects of an object of type `beta`.
    pub fn count_sub(&self, beta: &IsoType, alpha: &IsoType) -> Result<u64> {
        let y = self.amb.reference(beta)?;
        Ok(self.amb.below_of_type(y, alpha).len() as u64)
    }

    /// Number of type-`beta` subobjects of an object of type `phi` containing a
    /// fixed type-`alpha` subobject; checked to be the same for every choice.
    pub fn count_cont(&self, alpha: &IsoType, beta: &IsoType, phi: &IsoType) -> Result<u64> {
        let key = (alpha.clone(), beta.clone(), phi.clone());
        if let Some(&v) = self.cont.lock().unwrap().get(&key) {
            return Ok(v);
        }
        let amb = self.amb;
        let y = amb.reference(phi)?;
        let reps = amb.below_of_type(y, alpha);
        if reps.is_empty() {
            return Err(Error::InvalidType(format!("{alpha} does not embed in {phi}")));
        }
        let mut count: HashMap<usize, u64> = reps.iter().map(|&a| (a, 0)).collect();
        if alpha.leq(beta) {
            let t_alpha = amb.type_index(alpha)?;
            for b in amb.below_of_type(y, beta) {
                for &a in amb.lattice().down(b) {
                    if amb.type_of(a) == t_alpha {
                        *count.get_mut(&a).unwrap() += 1;
                    }
                }
            }
        }
        let v = count[&reps[0]];
        if let Some((&a, &w)) = count.iter().find(|(_, &w)| w != v) {
            return Err(Error::RepresentativeDependent(format!(
                "[{alpha} < {beta}]_{phi}: {} gives {v}, {} gives {w}",
                amb.element(reps[0]),
                amb.element(a)
            )));
        }
        self.cont.lock().unwrap().insert(key, v);
        Ok(v)
    }

    /// Euler characteristic `mu(0, y)` of the lattice of an object of type `alpha`.
    pub fn chi(&self, alpha: &IsoType) -> Result<Rational> {
        if let Some(v) = self.chi.lock().unwrap().get(alpha) {
            return Ok(v.clone());
        }
        let (_, poset, _) = self.amb.sub_lattice(self.amb.reference(alpha)?)?;
        let v = euler_char(&poset)?;
        self.chi.lock().unwrap().insert(alpha.clone(), v.clone());
        Ok(v)
    }

    /// `mu_hat(alpha, beta)` as a sum over arrow types `iota` from `alpha` into
    /// `beta` of `(beta over iota) * chi(coker iota)`.
    pub fn mu_hat(&self, alpha: &IsoType, beta: &IsoType) -> Result<Rational> {
        if !alpha.leq(beta) {
            return Err(Error::NotContained(alpha.to_string(), beta.to_string()));
        }
        let table = self.arrow_table(beta)?;
        let mut s = rational::zero();
        for i in table.with_source(alpha) {
            let a = &table.arrows()[i];
            s += rational::int(a.size as i64) * self.chi(&a.coker)?;
        }
        Ok(s)
    }

    /// `(beta over alpha) * chi(beta / alpha)`, meaningful when the quotient
    /// type does not depend on the embedding (symmetric `beta`).
    pub fn mu_hat_product(&self, alpha: &IsoType, beta: &IsoType) -> Result<Rational> {
        let y = self.amb.reference(beta)?;
        let xs = self.amb.below_of_type(y, alpha);
        let Some(&x) = xs.first() else {
            return Err(Error::NotContained(alpha.to_string(), beta.to_string()));
        };
        let q = self.amb.quotient_type(x, y)?;
        Ok(rational::int(xs.len() as i64) * self.chi(&q)?)
    }

    /// `zeta_hat` and `mu_hat` on the type interval `[0, phi]`, as pushforwards
    /// of the zeta and Möbius functions of the lattice of the reference object.
    /// Returns the types of the interval in canonical order alongside.
    pub fn hat_functions(&self, phi: &IsoType) -> Result<(Vec<IsoType>, IncidenceFunction, IncidenceFunction)> {
        let amb = self.amb;
        let (idx, interval) = amb.type_interval(phi)?;
        let (elems, sub, _) = amb.sub_lattice(amb.reference(phi)?)?;
        let local: HashMap<usize, usize> = idx.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        let tau = PosetMap::new(&sub, &interval, elems.iter().map(|&e| local[&amb.type_of(e)]).collect())?;
        let zeta = IncidenceFunction::zeta(&sub).pushforward(&tau)?;
        let mu = IncidenceFunction::mobius(&sub).pushforward(&tau)?;
        Ok((idx.iter().map(|&t| amb.types()[t].clone()).collect(), zeta, mu))
    }

    fn disjoint(&self, a: usize, b: usize) -> bool {
        let amb = self.amb;
        amb.element(a).members().intersection_count(amb.element(b).members()) == amb.element(amb.zero()).cardinality()
    }

    /// Type-`beta` subobjects of the reference object of type `big` that
    /// contain a fixed `x_omega` and meet a fixed `x_kappa` trivially, where
    /// `x_omega ∧ x_kappa = 0`. The first disjoint pair in canonical order is
    /// used; further pairs are compared within a fixed work budget.
    pub fn avoid_bruteforce(
        &self,
        omega: &IsoType,
        beta: &IsoType,
        kappa: &IsoType,
        big: &IsoType,
    ) -> Result<AvoidCount> {
        let amb = self.amb;
        let y = amb.reference(big)?;
        let ws = amb.below_of_type(y, omega);
        let ks = amb.below_of_type(y, kappa);
        let pairs: Vec<(usize, usize)> =
            ws.iter().flat_map(|&w| ks.iter().map(move |&k| (w, k))).filter(|&(w, k)| self.disjoint(w, k)).collect();
        if pairs.is_empty() {
            return Err(Error::NoDisjointRepresentatives(omega.to_string(), kappa.to_string()));
        }
        let t_beta = amb.type_index(beta).ok();
        let count = |(w, k): (usize, usize)| -> u64 {
            let Some(tb) = t_beta else { return 0 };
            amb.lattice()
                .up(w)
                .iter()
                .filter(|&&b| amb.type_of(b) == tb && amb.leq(b, y) && self.disjoint(b, k))
                .count() as u64
        };
        let value = count(pairs[0]);
        let per_pair = amb.lattice().up(pairs[0].0).len().max(1);
        let budget = (AVOID_BUDGET / per_pair).clamp(1, pairs.len());
        let stride = pairs.len().div_ceil(budget);
        let mut checked = 0;
        for &pair in pairs.iter().step_by(stride) {
            let v = count(pair);
            checked += 1;
            if v != value {
                return Err(Error::RepresentativeDependent(format!(
                    "<{omega} < {beta} | {kappa}>_{big}: {} and {} give {value} and {v}",
                    amb.element(pairs[0].0),
                    amb.element(pair.0)
                )));
            }
        }
        Ok(AvoidCount { value, pairs_total: pairs.len(), pairs_checked: checked })
    }

    /// `sum_{alpha <= kappa} chi(alpha) [omega + alpha < beta]_big (kappa over alpha)`.
    pub fn avoid_formula(
        &self,
        omega: &IsoType,
        beta: &IsoType,
        kappa: &IsoType,
        big: &IsoType,
    ) -> Result<AvoidFormula> {
        let amb = self.amb;
        let y = amb.reference(big)?;
        let has_pair = amb
            .below_of_type(y, omega)
            .iter()
            .any(|&w| amb.below_of_type(y, kappa).iter().any(|&k| self.disjoint(w, k)));
        if !has_pair {
            return Err(Error::NoDisjointRepresentatives(omega.to_string(), kappa.to_string()));
        }
        let yk = amb.reference(kappa)?;
        let mut alphas: Vec<usize> = amb.lattice().down(yk).iter().map(|&x| amb.type_of(x)).collect();
        alphas.sort_unstable();
        alphas.dedup();
        let mut value = rational::zero();
        let mut unrealizable = Vec::new();
        for t in alphas {
            let alpha = amb.types()[t].clone();
            let coeff = self.chi(&alpha)? * rational::int(self.count_sub(kappa, &alpha)? as i64);
            if coeff.is_zero() {
                continue;
            }
            let sum = amb.instance().direct_sum(omega, &alpha);
            if amb.below_of_type(y, &sum).is_empty() {
                unrealizable.push(sum.to_string());
                continue;
            }
            value += coeff * rational::int(self.count_cont(&sum, beta, big)? as i64);
        }
        Ok(AvoidFormula { value, unrealizable })
    }

    /// Whether, inside an object `x` of type `kappa`, the number of subobjects
    /// of type `alpha` equals the number with quotient of type `alpha`, for all `alpha`.
    pub fn check_duality(&self, kappa: &IsoType) -> Result<bool> {
        let amb = self.amb;
        let y = amb.reference(kappa)?;
        let below = amb.enumerate_below(y)?;
        let mut by_type: HashMap<IsoType, i64> = HashMap::new();
        for &x in &below {
            *by_type.entry(amb.types()[amb.type_of(x)].clone()).or_default() += 1;
            *by_type.entry(amb.quotient_type(x, y)?).or_default() -= 1;
        }
        Ok(by_type.values().all(|&v| v == 0))
    }

    /// For a finite set `X` given by its images `phi(x)` in the lattice of `F`:
    /// checks `t = zeta . s` and `s(0) = sum_alpha chi(alpha) t_hat(alpha)`.
    pub fn counting_principle_check(&self, images: &[usize]) -> Result<PrincipleCheck> {
        let amb = self.amb;
        let lat = amb.lattice();
        let mut s = vec![rational::zero(); amb.len()];
        for &x in images {
            if x >= amb.len() {
                return Err(Error::Shape(format!("image {x} is not a subobject index")));
            }
            s[x] += rational::one();
        }
        let t_direct: Vec<Rational> =
            (0..amb.len()).map(|y| rational::int(images.iter().filter(|&&x| lat.leq(y, x)).count() as i64)).collect();
        let s_fn = PosetFunction::new(lat, s)?;
        let t_fn = IncidenceFunction::zeta(lat).act(&s_fn)?;
        let mut t_hat: HashMap<usize, Rational> = HashMap::new();
        for (y, v) in t_direct.iter().enumerate() {
            *t_hat.entry(amb.type_of(y)).or_insert_with(rational::zero) += v;
        }
        let mut rhs = rational::zero();
        for (&t, v) in &t_hat {
            rhs += self.chi(&amb.types()[t])? * v;
        }
        Ok(PrincipleCheck { t_matches: t_fn.values() == t_direct.as_slice(), lhs: s_fn.get(amb.zero()).clone(), rhs })
    }
}

/// Result of [`Counter::counting_principle_check`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrincipleCheck {
    pub t_matches: bool,
    #[serde(with = "rational::serde_q")]
    pub lhs: Rational,
    #[serde(with = "rational::serde_q")]
    pub rhs: Rational,
}

impl PrincipleCheck {
    pub fn holds(&self) -> bool {
        self.t_matches && self.lhs == self.rhs
    }
}

/// The three evaluations of the field-case avoidance count
/// `<m < l | k>_n` over `F_q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldIdentity {
    pub n: u32,
    pub m: u32,
    pub l: u32,
    pub k: u32,
    pub q: u32,
    /// `(n-m-k over l-m-k)_q q^(k(l-m-k))`, as printed.
    pub closed_form: String,
    /// `sum_i (-1)^i q^(i choose 2) (n-m-i over l-m-i)_q (k over i)_q`.
    pub alternating_sum: String,
    /// Direct enumeration, when `q` is prime and the space fits the caps.
    pub brute_force: Option<u64>,
}

impl FieldIdentity {
    pub fn closed_form_agrees(&self) -> Option<bool> {
        self.brute_force.map(|b| self.closed_form == b.to_string())
    }

    pub fn alternating_sum_agrees(&self) -> Option<bool> {
        self.brute_force.map(|b| self.alternating_sum == b.to_string())
    }
}

fn field_identity_sides(n: u32, m: u32, l: u32, k: u32, q: u32) -> (BigInt, BigInt) {
    let qq = q as u64;
    let (n, m, l, k) = (n as i64, m as i64, l as i64, k as i64);
    let e = l - m - k;
    let closed =
        if e < 0 { BigInt::zero() } else { gauss_binom(n - m - k, e, qq) * BigInt::from(qq).pow((k * e) as u32) };
    let mut sum = BigInt::zero();
    for i in 0..=k {
        let term = chi_field(i as u32, qq).abs() * gauss_binom(n - m - i, l - m - i, qq) * gauss_binom(k, i, qq);
        if i % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
    }
    (closed, sum)
}

fn check_field_params(n: u32, m: u32, l: u32, k: u32) -> Result<()> {
    if m <= l && l + k <= n {
        Ok(())
    } else {
        Err(Error::InvalidType(format!("parameters (n,m,l,k) = ({n},{m},{l},{k}) out of range")))
    }
}

pub fn check_field_identity(n: u32, m: u32, l: u32, k: u32, q: u32, caps: Caps) -> Result<FieldIdentity> {
    check_field_params(n, m, l, k)?;
    let inst = Instance::field(q, n);
    if inst.validate().is_ok() && (q as u128).pow(n) <= caps.max_points as u128 {
        let amb = Ambient::with_caps(inst, caps)?;
        Counter::new(&amb).field_identity(m, l, k)
    } else {
        let (closed, sum) = field_identity_sides(n, m, l, k, q);
        Ok(FieldIdentity {
            n,
            m,
            l,
            k,
            q,
            closed_form: closed.to_string(),
            alternating_sum: sum.to_string(),
            brute_force: None,
        })
    }
}

impl FieldIdentity {
    /// Brute force against the alternating sum (must agree) and against the
    /// closed form (a disagreement is a discrepancy).
    pub fn checks(&self) -> Vec<Check> {
        let name = format!("field-identity({},{},{},{},{})", self.n, self.m, self.l, self.k, self.q);
        let Some(b) = self.brute_force else { return Vec::new() };
        vec![
            Check::eq(format!("{name}.alternating-sum"), &self.alternating_sum, b.to_string()),
            Check::compare(format!("{name}.closed-form"), &self.closed_form, b.to_string()),
        ]
    }
}

/// Möbius values of the subspace lattice of `F_q^d` against
/// `(-1)^e q^C(e,2)` with `e = dim y - dim x`, and `mu_hat(m, n)` against
/// `(-1)^(n-m) q^C(n-m,2) (n over m)_q`.
pub fn verify_mobius_field(q: u32, d: u32, caps: Caps) -> Result<Vec<Check>> {
    let amb = Ambient::with_caps(Instance::field(q, d), caps)?;
    let lat = amb.lattice();
    let mu = IncidenceFunction::mobius(lat);
    let mut bad = Vec::new();
    let mut pairs = 0;
    for (&(x, y), v) in mu.pairs() {
        pairs += 1;
        let e = amb.element(y).iso_type().size() - amb.element(x).iso_type().size();
        if *v != rational::big(&chi_field(e, q as u64)) {
            bad.push(format!("{} <= {}", amb.element(x), amb.element(y)));
        }
    }
    let name = format!("mobius-field(q={q},d={d})");
    let mut out = vec![Check::eq(format!("{name}.pairs"), &bad, Vec::<String>::new())
        .with_witness(serde_json::json!({ "cases": pairs }))];
    let counter = Counter::new(&amb);
    let (types, _, mu_hat) = counter.hat_functions(&amb.instance().top_type())?;
    let mut got = Vec::new();
    let mut want = Vec::new();
    for a in 0..types.len() {
        for b in a..types.len() {
            got.push(rational::format(&mu_hat.get(a, b)));
            want.push(rational::format(&rational::big(&mu_hat_field(types[a].size(), types[b].size(), q as u64))));
        }
    }
    out.push(Check::eq(format!("{name}.mu-hat"), got, want));
    Ok(out)
}

impl Counter<'_> {
    /// The three evaluations of `<m < l | k>_n` in this ambient `F_q^n`.
    pub fn field_identity(&self, m: u32, l: u32, k: u32) -> Result<FieldIdentity> {
        let Instance::ChainRing { p, k: 1, n } = *self.amb.instance() else {
            return Err(Error::InvalidInstance("field identity needs a field instance".into()));
        };
        check_field_params(n, m, l, k)?;
        let (closed, sum) = field_identity_sides(n, m, l, k, p);
        let ty = |d: u32| IsoType::Partition(vec![1; d as usize]);
        let brute = self.avoid_bruteforce(&ty(m), &ty(l), &ty(k), &ty(n))?.value;
        Ok(FieldIdentity {
            n,
            m,
            l,
            k,
            q: p,
            closed_form: closed.to_string(),
            alternating_sum: sum.to_string(),
            brute_force: Some(brute),
        })
    }

    /// Types of subobjects of the reference object of type `big`, in canonical order.
    pub fn types_below(&self, big: &IsoType) -> Result<Vec<IsoType>> {
        let amb = self.amb;
        let y = amb.reference(big)?;
        let mut ts: Vec<usize> = amb.lattice().down(y).iter().map(|&x| amb.type_of(x)).collect();
        ts.sort_unstable();
        ts.dedup();
        Ok(ts.into_iter().map(|t| amb.types()[t].clone()).collect())
    }

    /// `avoid_formula = avoid_bruteforce` for every `(omega, beta, kappa)` below
    /// `big` with `omega <= beta` and disjoint representatives of `omega`, `kappa`.
    pub fn verify_avoid(&self, big: &IsoType) -> Result<Vec<Check>> {
        let types = self.types_below(big)?;
        let mut out = Vec::new();
        for omega in &types {
            for kappa in &types {
                for beta in types.iter().filter(|b| omega.leq(b)) {
                    let name = format!("avoid[{omega},{beta},{kappa}]_{big}");
                    let brute = match self.avoid_bruteforce(omega, beta, kappa, big) {
                        Ok(b) => b,
                        Err(Error::NoDisjointRepresentatives(..)) => break,
                        Err(e) => {
                            out.push(Check::error(name, &e));
                            continue;
                        }
                    };
                    match self.avoid_formula(omega, beta, kappa, big) {
                        Ok(f) => out.push(
                            Check::eq(
                                name,
                                rational::format(&f.value),
                                rational::format(&rational::int(brute.value as i64)),
                            )
                            .with_witness(serde_json::json!({
                                "pairs_checked": brute.pairs_checked,
                                "pairs_total": brute.pairs_total,
                                "unrealizable": f.unrealizable,
                            })),
                        ),
                        Err(e) => out.push(Check::error(name, &e)),
                    }
                }
            }
        }
        Ok(out)
    }
}
