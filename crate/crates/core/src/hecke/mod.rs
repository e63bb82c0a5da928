//! The Hecke algebra `H_phi`, its modules `N_{phi,nu}`, and the checks of
//! their cellular structure.

mod algebra;
mod fourier;
mod module;
mod verify;

use std::sync::Arc;

use num_traits::Zero;

pub use algebra::{HeckeAlgebra, HeckeElement, SpectralTable};
pub use fourier::{fourier_report_field, FourierEntry, FourierReport};
pub use module::{HeckeModule, ModuleElement};
pub use verify::{
    verify_cell_idem, verify_cellalg, verify_cellmod, verify_cellular, verify_compo, verify_equivariance,
    verify_geometric, verify_idempotents, verify_multiplicities,
};

use crate::ambient::{Ambient, ArrowTable, IsoType, Transport};
use crate::error::{Error, Result};
use crate::oracle::ExactMatrix;
use crate::rational::{self, Rational};

/// `(x, y) -> coeffs[labels[x * cols + y]]`.
pub(crate) fn kernel_matrix(rows: usize, cols: usize, labels: &[u32], coeffs: &[Rational]) -> ExactMatrix {
    ExactMatrix::from_fn(rows, cols, |i, j| coeffs[labels[i * cols + j] as usize].clone())
}

pub(crate) fn span(rows: &[Vec<Rational>], width: usize) -> ExactMatrix {
    ExactMatrix::stack(rows, width).expect("equal-length coordinate vectors")
}

/// Coefficients of `m` on the indicator matrices of the label classes, if
/// `m` is constant on each class.
pub fn decompose(labels: &[u32], classes: usize, m: &ExactMatrix) -> Option<Vec<Rational>> {
    let mut coeffs: Vec<Option<Rational>> = vec![None; classes];
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let c = &mut coeffs[labels[i * m.cols() + j] as usize];
            match c {
                None => *c = Some(m.get(i, j).clone()),
                Some(v) if v != m.get(i, j) => return None,
                Some(_) => {}
            }
        }
    }
    Some(coeffs.into_iter().map(|c| c.unwrap_or_else(rational::zero)).collect())
}

/// Arrow types into `ty`, with the transport used to label flags `a <= b`
/// for `b` of type `ty`.
#[derive(Debug)]
pub struct Flags {
    pub table: Arc<ArrowTable>,
    pub transport: Transport,
}

impl Flags {
    pub fn new(amb: &Ambient, ty: &IsoType) -> Result<Self> {
        Ok(Flags { table: Arc::new(ArrowTable::new(amb, ty)?), transport: Transport::new(amb, ty)? })
    }

    pub fn label(&self, amb: &Ambient, a: usize, b: usize) -> usize {
        self.transport.label(amb, &self.table, a, b)
    }
}

/// A linear map `F_source -> F_target` as a matrix on `X_target x X_source`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Intertwiner {
    pub target: IsoType,
    pub source: IsoType,
    pub matrix: ExactMatrix,
}

impl Intertwiner {
    /// Entry `(b, a)` is 1 when `a <= b` (with the given arrow type, if any).
    pub fn averaging(amb: &Ambient, lam: &IsoType, mu: &IsoType, arrow: Option<(&Flags, usize)>) -> Result<Self> {
        if !lam.leq(mu) {
            return Err(Error::NotContained(lam.to_string(), mu.to_string()));
        }
        let xs = amb.grassmannian(lam);
        let ys = amb.grassmannian(mu);
        let matrix = ExactMatrix::from_fn(ys.len(), xs.len(), |i, j| {
            let (a, b) = (xs[j], ys[i]);
            let hit = amb.leq(a, b) && arrow.is_none_or(|(f, k)| f.label(amb, a, b) == k);
            if hit {
                rational::one()
            } else {
                rational::zero()
            }
        });
        Ok(Intertwiner { target: mu.clone(), source: lam.clone(), matrix })
    }

    pub fn transpose(&self) -> Self {
        Intertwiner { target: self.source.clone(), source: self.target.clone(), matrix: self.matrix.transpose() }
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.source != other.target {
            return Err(Error::Shape(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source, self.target, other.source, other.target
            )));
        }
        Ok(Intertwiner {
            target: self.target.clone(),
            source: other.source.clone(),
            matrix: self.matrix.mul(&other.matrix)?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

pub(crate) fn is_nonneg_integer(r: &Rational) -> bool {
    r.is_integer() && !(r < &Rational::zero())
}
