use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use super::{kernel_matrix, span, Intertwiner};
use crate::ambient::{symmetric_couple_report, Ambient, CoupleReport, IsoType};
use crate::counting::Counter;
use crate::error::{Error, Result};
use crate::oracle::{permutation_matrix, ExactMatrix, PermutationAction};
use crate::poset::{IncidenceFunction, Poset};
use crate::rational::{self, Rational};

/// An element of `H_phi` in compact form: coefficients on the geometric
/// basis, indexed like [`HeckeAlgebra::types`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeckeElement {
    coeffs: Vec<Rational>,
}

impl HeckeElement {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        HeckeElement { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        HeckeElement { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        HeckeElement { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        HeckeElement { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rational::format).collect()
    }
}

/// Row `lambda`, column `mu`: the scalar by which `c_mu` acts on `e_lambda`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectralTable {
    pub types: Vec<String>,
    pub values: Vec<Vec<String>>,
    #[serde(skip)]
    pub exact: Vec<Vec<Rational>>,
}

/// The Hecke algebra `H_phi` of `Aut(F)`-invariant kernels on `X_phi`.
#[derive(Debug)]
pub struct HeckeAlgebra<'a> {
    counter: Counter<'a>,
    phi: IsoType,
    couple: CoupleReport,
    types: Vec<IsoType>,
    interval: Arc<Poset>,
    zeta_hat: IncidenceFunction,
    mu_hat: IncidenceFunction,
    xs: Vec<usize>,
    labels: Vec<u32>,
    /// `structure[(l * t + m) * t + n]`: coefficient of `g_n` in `g_l g_m`.
    structure: Vec<u64>,
}

impl<'a> HeckeAlgebra<'a> {
    pub fn new(amb: &'a Ambient, phi: &IsoType) -> Result<Self> {
        let big = amb.instance().top_type();
        let couple = symmetric_couple_report(amb, &big, phi)?;
        if !couple.holds() {
            return Err(Error::NotSymmetricCouple(big.to_string(), phi.to_string()));
        }
        let counter = Counter::new(amb);
        let (types, zeta_hat, mu_hat) = counter.hat_functions(phi)?;
        let interval = zeta_hat.poset().clone();
        let local: HashMap<usize, u32> =
            types.iter().enumerate().map(|(i, t)| (amb.type_index(t).unwrap(), i as u32)).collect();
        let xs = amb.grassmannian(phi);
        let n = xs.len();
        if n * n > amb.caps().max_lattice {
            return Err(Error::cap("|X_phi|^2", amb.caps().max_lattice));
        }
        let mut labels = vec![0u32; n * n];
        for i in 0..n {
            for j in i..n {
                let l = local[&amb.type_of(amb.meet(xs[i], xs[j]))];
                labels[i * n + j] = l;
                labels[j * n + i] = l;
            }
        }
        let t = types.len();
        let mut structure: Vec<Option<u64>> = vec![None; t * t * t];
        for z in 0..n {
            let mut cnt = vec![0u64; t * t];
            for y in 0..n {
                cnt[labels[y] as usize * t + labels[y * n + z] as usize] += 1;
            }
            let nu = labels[z] as usize;
            for (lm, &c) in cnt.iter().enumerate() {
                match structure[lm * t + nu] {
                    None => structure[lm * t + nu] = Some(c),
                    Some(v) if v != c => {
                        return Err(Error::TheoremViolation(format!(
                            "g_{} g_{} is not constant on the class {}",
                            types[lm / t],
                            types[lm % t],
                            types[nu]
                        )))
                    }
                    Some(_) => {}
                }
            }
        }
        if let Some(missing) = (0..t).find(|&nu| structure[nu].is_none()) {
            return Err(Error::TheoremViolation(format!("no pair in X_{phi} meets in type {}", types[missing])));
        }
        let structure = structure.into_iter().map(Option::unwrap).collect();
        Ok(HeckeAlgebra { counter, phi: phi.clone(), couple, types, interval, zeta_hat, mu_hat, xs, labels, structure })
    }

    pub fn ambient(&self) -> &'a Ambient {
        self.counter.ambient()
    }

    pub fn counter(&self) -> &Counter<'a> {
        &self.counter
    }

    pub fn phi(&self) -> &IsoType {
        &self.phi
    }

    pub fn couple(&self) -> &CoupleReport {
        &self.couple
    }

    /// The interval `[0, phi]` of types, in canonical order.
    pub fn types(&self) -> &[IsoType] {
        &self.types
    }

    pub fn interval(&self) -> &Arc<Poset> {
        &self.interval
    }

    pub fn dim(&self) -> usize {
        self.types.len()
    }

    pub fn type_pos(&self, ty: &IsoType) -> Result<usize> {
        self.types.iter().position(|t| t == ty).ok_or_else(|| Error::NotContained(ty.to_string(), self.phi.to_string()))
    }

    pub fn phi_pos(&self) -> usize {
        self.type_pos(&self.phi).expect("phi lies in its own interval")
    }

    pub fn zeta_hat(&self) -> &IncidenceFunction {
        &self.zeta_hat
    }

    pub fn mu_hat(&self) -> &IncidenceFunction {
        &self.mu_hat
    }

    /// `X_phi` as lattice indices, in canonical order.
    pub fn grassmannian(&self) -> &[usize] {
        &self.xs
    }

    /// Position in [`Self::types`] of `tau(x ∧ y)`, for positions in `X_phi`.
    pub fn label(&self, x: usize, y: usize) -> usize {
        self.labels[x * self.xs.len() + y] as usize
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn structure_constant(&self, l: usize, m: usize, n: usize) -> u64 {
        let t = self.dim();
        self.structure[(l * t + m) * t + n]
    }

    pub fn zero(&self) -> HeckeElement {
        HeckeElement::new(vec![rational::zero(); self.dim()])
    }

    pub fn g(&self, l: usize) -> HeckeElement {
        let mut e = self.zero();
        e.coeffs[l] = rational::one();
        e
    }

    pub fn identity(&self) -> HeckeElement {
        self.g(self.phi_pos())
    }

    /// `c_l = sum_{k >= l} (k over l) g_k`.
    pub fn c(&self, l: usize) -> HeckeElement {
        HeckeElement::new((0..self.dim()).map(|k| self.zeta_hat.get(l, k)).collect())
    }

    pub fn geometric_basis(&self) -> Vec<HeckeElement> {
        (0..self.dim()).map(|l| self.g(l)).collect()
    }

    pub fn cellular_basis(&self) -> Vec<HeckeElement> {
        (0..self.dim()).map(|l| self.c(l)).collect()
    }

    /// Product in compact form, through the structure constants.
    pub fn mul(&self, a: &HeckeElement, b: &HeckeElement) -> HeckeElement {
        let t = self.dim();
        let mut out = self.zero();
        for (l, al) in a.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (m, bm) in b.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let ab = al * bm;
                for n in 0..t {
                    let s = self.structure_constant(l, m, n);
                    if s != 0 {
                        out.coeffs[n] += &ab * rational::int(s as i64);
                    }
                }
            }
        }
        out
    }

    pub fn matrix(&self, e: &HeckeElement) -> ExactMatrix {
        let n = self.xs.len();
        kernel_matrix(n, n, &self.labels, &e.coeffs)
    }

    /// `T_{lambda -> phi}`, the matrix on `X_phi x X_lambda` of containment.
    pub fn averaging_up(&self, l: usize) -> Result<Intertwiner> {
        Intertwiner::averaging(self.ambient(), &self.types[l], &self.phi, None)
    }

    /// `c_l` as the composite `T_{l -> phi} T_{phi -> l}`.
    pub fn c_from_operators(&self, l: usize) -> Result<ExactMatrix> {
        let up = self.averaging_up(l)?;
        up.matrix.mul(&up.matrix.transpose())
    }

    fn below(&self, l: usize, strict: bool) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.interval.leq(k, l) && !(strict && k == l)).collect()
    }

    /// `H^l`, spanned by the `c_k` with `k <= l`, as rows in compact coordinates.
    pub fn ideal(&self, l: usize) -> ExactMatrix {
        self.span_of_c(&self.below(l, false))
    }

    /// `H^{l-}`, spanned by the `c_k` with `k < l`.
    pub fn ideal_minus(&self, l: usize) -> ExactMatrix {
        self.span_of_c(&self.below(l, true))
    }

    pub fn span_of_c(&self, ks: &[usize]) -> ExactMatrix {
        let rows: Vec<Vec<Rational>> = ks.iter().map(|&k| self.c(k).coeffs).collect();
        span(&rows, self.dim())
    }

    /// The unit of the ring spanned by the given elements (assumed closed
    /// under multiplication); zero for the empty span.
    pub fn unit_of(&self, basis: &[HeckeElement]) -> Result<HeckeElement> {
        if basis.is_empty() {
            return Ok(self.zero());
        }
        let t = self.dim();
        let products: Vec<Vec<HeckeElement>> =
            basis.iter().map(|bi| basis.iter().map(|bj| self.mul(bj, bi)).collect()).collect();
        let a =
            ExactMatrix::from_fn(basis.len() * t, basis.len(), |row, j| products[row / t][j].coeffs[row % t].clone());
        let rhs: Vec<Rational> = basis.iter().flat_map(|b| b.coeffs.iter().cloned()).collect();
        let Some(x) = a.solve(&rhs)? else {
            return Err(Error::TheoremViolation("ideal has no unit".into()));
        };
        let mut u = self.zero();
        for (xj, bj) in x.iter().zip(basis) {
            u = u.add(&bj.scale(xj));
        }
        Ok(u)
    }

    pub fn ideal_unit(&self, l: usize) -> Result<HeckeElement> {
        let basis: Vec<HeckeElement> = self.below(l, false).into_iter().map(|k| self.c(k)).collect();
        self.unit_of(&basis).map_err(|_| Error::TheoremViolation(format!("H^{} has no unit", self.types[l])))
    }

    pub fn ideal_minus_unit(&self, l: usize) -> Result<HeckeElement> {
        let basis: Vec<HeckeElement> = self.below(l, true).into_iter().map(|k| self.c(k)).collect();
        self.unit_of(&basis).map_err(|_| Error::TheoremViolation(format!("H^{}- has no unit", self.types[l])))
    }

    /// `e_l = u_l - u_{l-}`, in the order of [`Self::types`].
    pub fn idempotents(&self) -> Result<Vec<HeckeElement>> {
        (0..self.dim()).map(|l| Ok(self.ideal_unit(l)?.sub(&self.ideal_minus_unit(l)?))).collect()
    }

    /// The scalar `s` with `h e = s e`, if `h` acts on `e` by a scalar.
    pub fn eigenvalue(&self, h: &HeckeElement, e: &HeckeElement) -> Option<Rational> {
        let p = self.mul(h, e);
        let i = e.coeffs.iter().position(|x| !x.is_zero())?;
        let s = &p.coeffs[i] / &e.coeffs[i];
        (p == e.scale(&s)).then_some(s)
    }

    pub fn spectral_table(&self) -> Result<SpectralTable> {
        let es = self.idempotents()?;
        let mut exact = Vec::with_capacity(self.dim());
        for (l, e) in es.iter().enumerate() {
            let row = (0..self.dim())
                .map(|m| {
                    self.eigenvalue(&self.c(m), e).ok_or_else(|| {
                        Error::TheoremViolation(format!(
                            "c_{} does not act on e_{} by a scalar",
                            self.types[m], self.types[l]
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            exact.push(row);
        }
        Ok(SpectralTable {
            types: self.types.iter().map(ToString::to_string).collect(),
            values: exact.iter().map(|r| r.iter().map(rational::format).collect()).collect(),
            exact,
        })
    }

    /// `A[omega][kappa]`: the coefficient of `e_kappa` in `c_omega`.
    pub fn a_matrix(&self) -> Result<Vec<Vec<Rational>>> {
        let table = self.spectral_table()?;
        let t = self.dim();
        Ok((0..t).map(|w| (0..t).map(|k| table.exact[k][w].clone()).collect()).collect())
    }

    /// Permutations of `X_phi` induced by the generators of `Aut(F)`.
    pub fn generator_permutations(&self) -> Result<Vec<Vec<u32>>> {
        self.ambient().induced_permutations(&self.xs)
    }

    pub fn generator_matrices(&self) -> Result<Vec<ExactMatrix>> {
        Ok(self.generator_permutations()?.iter().map(|g| permutation_matrix(g)).collect())
    }

    /// Orbits of `Aut(F)` on `X_phi x X_phi`, by breadth-first search.
    pub fn pair_orbits(&self) -> Result<Vec<Vec<usize>>> {
        let action = PermutationAction::new(self.xs.len(), self.generator_permutations()?)?;
        Ok(action.product(&action)?.orbits())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::Instance;
    use crate::rational::int;

    #[test]
    fn sets_6_3() {
        let a = Ambient::new(Instance::sets(6)).unwrap();
        let h = HeckeAlgebra::new(&a, &IsoType::Size(3)).unwrap();
        assert_eq!(h.dim(), 4);
        assert_eq!(h.grassmannian().len(), 20);
        let e = h.idempotents().unwrap();
        let sum = e.iter().fold(h.zero(), |s, x| s.add(x));
        assert_eq!(sum, h.identity());
        assert_eq!(h.spectral_table().unwrap().exact[0][0], int(20));
        let a = h.a_matrix().unwrap();
        assert_eq!(a[2][2], int(2));
        assert_eq!(a[3][3], int(1));
    }

    #[test]
    fn row_sums_of_g0_in_z4_squared() {
        let a = Ambient::new(Instance::chain_ring(2, 2, 2)).unwrap();
        let h = HeckeAlgebra::new(&a, &IsoType::partition(vec![2])).unwrap();
        assert_eq!(h.grassmannian().len(), 6);
        let row_sum = |l: usize| h.matrix(&h.g(l)).row(0).iter().sum::<Rational>();
        assert_eq!((row_sum(0), row_sum(1), row_sum(2)), (int(4), int(1), int(1)));
        assert_eq!(h.c_from_operators(1).unwrap(), h.matrix(&h.c(1)));
    }

    #[test]
    fn rejects_non_couples() {
        let a = Ambient::new(Instance::sets(6)).unwrap();
        assert!(matches!(HeckeAlgebra::new(&a, &IsoType::Size(4)), Err(Error::NotSymmetricCouple(..))));
    }
}
