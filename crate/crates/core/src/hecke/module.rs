use num_traits::Zero;

use super::{kernel_matrix, span, Flags, HeckeAlgebra, HeckeElement, Intertwiner};
use crate::ambient::{ArrowType, IsoType};
use crate::error::{Error, Result};
use crate::oracle::{permutation_matrix, ExactMatrix, PermutationAction};
use crate::poset::IncidenceFunction;
use crate::rational::{self, Rational};

/// An element of `N_{phi,nu}`: coefficients on the basis `G_i`, indexed by
/// the arrow types into `nu`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModuleElement {
    coeffs: Vec<Rational>,
}

impl ModuleElement {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        ModuleElement { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

/// `N_{phi,nu} = Hom_G(F_nu, F_phi)` with its geometric basis `G_i`, labeled
/// by the arrow type of `x ∧ y ⊆ y` for `x` in `X_phi`, `y` in `X_nu`.
#[derive(Debug)]
pub struct HeckeModule<'h, 'a> {
    alg: &'h HeckeAlgebra<'a>,
    nu: IsoType,
    flags: Flags,
    ys: Vec<usize>,
    labels: Vec<u32>,
    zeta_hat: IncidenceFunction,
    mu_hat: IncidenceFunction,
    /// `action[(l * r + i) * r + j]`: coefficient of `G_j` in `g_l G_i`.
    action: Vec<u64>,
}

impl<'h, 'a> HeckeModule<'h, 'a> {
    pub fn new(alg: &'h HeckeAlgebra<'a>, nu: &IsoType) -> Result<Self> {
        let amb = alg.ambient();
        alg.type_pos(nu)?;
        let flags = Flags::new(amb, nu)?;
        let xs = alg.grassmannian();
        let ys = amb.grassmannian(nu);
        let (nx, ny) = (xs.len(), ys.len());
        if nx * ny > amb.caps().max_lattice {
            return Err(Error::cap("|X_phi x X_nu|", amb.caps().max_lattice));
        }
        let mut labels = vec![0u32; nx * ny];
        for (i, &x) in xs.iter().enumerate() {
            for (j, &y) in ys.iter().enumerate() {
                labels[i * ny + j] = flags.label(amb, amb.meet(x, y), y) as u32;
            }
        }
        let r = flags.table.len();
        let mut seen = vec![false; r];
        for &l in &labels {
            seen[l as usize] = true;
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::TheoremViolation(format!(
                "arrow type {} of {nu} is not realized by any pair in X_{} x X_{nu}",
                flags.table.arrows()[i].orbit_id,
                alg.phi()
            )));
        }
        let zeta_hat = IncidenceFunction::zeta(flags.table.sub_poset()).pushforward(flags.table.label_map())?;
        let mu_hat = IncidenceFunction::mobius(flags.table.sub_poset()).pushforward(flags.table.label_map())?;

        let t = alg.dim();
        let mut action: Vec<Option<u64>> = vec![None; t * r * r];
        for x in 0..nx {
            for y in 0..ny {
                let mut cnt = vec![0u64; t * r];
                for z in 0..nx {
                    cnt[alg.label(x, z) * r + labels[z * ny + y] as usize] += 1;
                }
                let j = labels[x * ny + y] as usize;
                for (li, &c) in cnt.iter().enumerate() {
                    match action[li * r + j] {
                        None => action[li * r + j] = Some(c),
                        Some(v) if v != c => {
                            return Err(Error::TheoremViolation(format!(
                                "g_{} G_{} is not constant on the class of G_{j}",
                                alg.types()[li / r],
                                li % r
                            )))
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        let action = action.into_iter().map(Option::unwrap).collect();
        Ok(HeckeModule { alg, nu: nu.clone(), flags, ys, labels, zeta_hat, mu_hat, action })
    }

    pub fn algebra(&self) -> &'h HeckeAlgebra<'a> {
        self.alg
    }

    pub fn nu(&self) -> &IsoType {
        &self.nu
    }

    pub fn flags(&self) -> &Flags {
        &self.flags
    }

    pub fn arrows(&self) -> &[ArrowType] {
        self.flags.table.arrows()
    }

    pub fn dim(&self) -> usize {
        self.flags.table.len()
    }

    /// `X_nu` as lattice indices.
    pub fn grassmannian(&self) -> &[usize] {
        &self.ys
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn zeta_hat(&self) -> &IncidenceFunction {
        &self.zeta_hat
    }

    pub fn mu_hat(&self) -> &IncidenceFunction {
        &self.mu_hat
    }

    pub fn zero(&self) -> ModuleElement {
        ModuleElement::new(vec![rational::zero(); self.dim()])
    }

    #[allow(non_snake_case)]
    pub fn G(&self, i: usize) -> ModuleElement {
        let mut v = self.zero();
        v.coeffs[i] = rational::one();
        v
    }

    /// `C_i = sum_{i' >= i} zeta_hat(i, i') G_{i'}`.
    #[allow(non_snake_case)]
    pub fn C(&self, i: usize) -> ModuleElement {
        ModuleElement::new((0..self.dim()).map(|j| self.zeta_hat.get(i, j)).collect())
    }

    pub fn act(&self, h: &HeckeElement, v: &ModuleElement) -> ModuleElement {
        let r = self.dim();
        let mut out = self.zero();
        for (l, hl) in h.coeffs().iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (i, vi) in v.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let p = hl * vi;
                for j in 0..r {
                    let s = self.action[(l * r + i) * r + j];
                    if s != 0 {
                        out.coeffs[j] += &p * rational::int(s as i64);
                    }
                }
            }
        }
        out
    }

    pub fn matrix(&self, v: &ModuleElement) -> ExactMatrix {
        kernel_matrix(self.alg.grassmannian().len(), self.ys.len(), &self.labels, &v.coeffs)
    }

    /// `C_i` as the composite `T_{lambda -> phi} T^i_{nu -> lambda}`.
    pub fn c_from_operators(&self, i: usize) -> Result<ExactMatrix> {
        let amb = self.alg.ambient();
        let lam = &self.arrows()[i].source;
        let up = Intertwiner::averaging(amb, lam, self.alg.phi(), None)?;
        let down = Intertwiner::averaging(amb, lam, &self.nu, Some((&self.flags, i)))?.transpose();
        Ok(up.compose(&down)?.matrix)
    }

    fn sources_below(&self, ty: &IsoType, strict: bool) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| {
                let s = &self.arrows()[i].source;
                s.leq(ty) && !(strict && s == ty)
            })
            .collect()
    }

    fn span_of_c(&self, is: &[usize]) -> ExactMatrix {
        let rows: Vec<Vec<Rational>> = is.iter().map(|&i| self.C(i).coeffs).collect();
        span(&rows, self.dim())
    }

    /// `N^lambda`, spanned by the `C_i` with source type `<= lambda`.
    pub fn submodule(&self, lam: &IsoType) -> ExactMatrix {
        self.span_of_c(&self.sources_below(lam, false))
    }

    /// `N^{lambda-}`, spanned by the `C_i` with source type `< lambda`.
    pub fn submodule_minus(&self, lam: &IsoType) -> ExactMatrix {
        self.span_of_c(&self.sources_below(lam, true))
    }

    /// `span{h v : v in the rows of vs}` for each `h`, stacked.
    pub fn product_span(&self, hs: &[HeckeElement], vs: &ExactMatrix) -> ExactMatrix {
        let rows: Vec<Vec<Rational>> = hs
            .iter()
            .flat_map(|h| (0..vs.rows()).map(move |k| self.act(h, &ModuleElement::new(vs.row(k).to_vec())).coeffs))
            .collect();
        span(&rows, self.dim())
    }

    /// Number of arrow types `lambda -> nu`.
    pub fn arrow_count(&self, lam: &IsoType) -> usize {
        self.flags.table.with_source(lam).len()
    }

    /// `dim(e N)` computed from the matrices of `e` and of the `G_i`.
    pub fn image_rank(&self, e: &HeckeElement) -> Result<usize> {
        let em = self.alg.matrix(e);
        let mut rows = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            rows.push(em.mul(&self.matrix(&self.G(i)))?.flatten());
        }
        Ok(span(&rows, self.alg.grassmannian().len() * self.ys.len()).rank())
    }

    /// `dim(e N)` in compact coordinates.
    pub fn image_rank_compact(&self, e: &HeckeElement) -> usize {
        let rows: Vec<Vec<Rational>> = (0..self.dim()).map(|i| self.act(e, &self.G(i)).coeffs).collect();
        span(&rows, self.dim()).rank()
    }

    /// Permutations of `X_nu` induced by the generators of `Aut(F)`.
    pub fn generator_permutations(&self) -> Result<Vec<Vec<u32>>> {
        self.alg.ambient().induced_permutations(&self.ys)
    }

    pub fn generator_matrices(&self) -> Result<Vec<ExactMatrix>> {
        Ok(self.generator_permutations()?.iter().map(|g| permutation_matrix(g)).collect())
    }

    /// Number of `Aut(F)`-orbits on `X_phi x X_nu`, by breadth-first search.
    pub fn orbit_count(&self) -> Result<usize> {
        let xa = PermutationAction::new(self.alg.grassmannian().len(), self.alg.generator_permutations()?)?;
        let ya = PermutationAction::new(self.ys.len(), self.generator_permutations()?)?;
        Ok(xa.product(&ya)?.orbits().len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::{Ambient, Instance};

    #[test]
    fn dimensions() {
        let a = Ambient::new(Instance::chain_ring(2, 2, 2)).unwrap();
        let h = HeckeAlgebra::new(&a, &IsoType::partition(vec![2])).unwrap();
        let n = HeckeModule::new(&h, &IsoType::partition(vec![1])).unwrap();
        assert_eq!(n.dim(), 2);
        assert_eq!(n.orbit_count().unwrap(), 2);
        for i in 0..n.dim() {
            assert_eq!(n.c_from_operators(i).unwrap(), n.matrix(&n.C(i)));
        }
        let s = Ambient::new(Instance::sets(6)).unwrap();
        let h = HeckeAlgebra::new(&s, &IsoType::Size(3)).unwrap();
        let n = HeckeModule::new(&h, &IsoType::Size(2)).unwrap();
        assert_eq!(n.dim(), 3);
        assert_eq!(n.orbit_count().unwrap(), 3);
    }
}
