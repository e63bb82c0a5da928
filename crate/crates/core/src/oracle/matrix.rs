use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A dense matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { rational::one() } else { rational::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let n = rows.len();
        Ok(ExactMatrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    /// Rows of integers, for tests and 0/1 operators.
    pub fn from_ints(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| rational::int(x)).collect()).collect())
    }

    /// Stacks equally long vectors as rows; `width` is used when `vectors` is empty.
    pub fn stack(vectors: &[Vec<Rational>], width: usize) -> Result<Self> {
        if vectors.is_empty() {
            return Ok(Self::zeros(0, width));
        }
        Self::from_rows(vectors.to_vec())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// All entries, row-major, as one vector.
    pub fn flatten(&self) -> Vec<Rational> {
        self.data.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape("operands differ in shape".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(ExactMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    /// Reduced row echelon form (pivots 1, zeros above and below) and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for j in c..m.cols {
                        let v = m.get(i, j) - &f * m.get(r, j);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Rank by fraction-free (Bareiss) elimination on the row-scaled integer matrix.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect();
        let (rows, cols) = (self.rows, self.cols);
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(r, p);
            for i in r + 1..rows {
                for j in c + 1..cols {
                    let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                    m[i][j] = v;
                }
                m[i][c] = BigInt::zero();
            }
            prev = m[r][c].clone();
            r += 1;
        }
        r
    }

    /// Canonical basis of the row space: the nonzero rows of the rref.
    pub fn row_basis(&self) -> Self {
        let (m, pivots) = self.rref();
        let k = pivots.len();
        ExactMatrix { rows: k, cols: m.cols, data: m.data[..k * m.cols].to_vec() }
    }

    pub fn span_equal(&self, other: &Self) -> bool {
        self.cols == other.cols && self.row_basis() == other.row_basis()
    }

    /// Whether every row of `other` lies in the row space of `self`.
    pub fn span_contains(&self, other: &Self) -> bool {
        self.cols == other.cols && self.vstack(other).map(|s| s.rank()) == Ok(self.rank())
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Shape("column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(ExactMatrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Canonical basis of the intersection of the row spaces (Zassenhaus).
    pub fn intersect_span(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Shape("column counts differ".into()));
        }
        let n = self.cols;
        let block = Self::from_fn(self.rows + other.rows, 2 * n, |i, j| {
            if i < self.rows {
                self.get(i, j % n).clone()
            } else if j < n {
                other.get(i - self.rows, j).clone()
            } else {
                rational::zero()
            }
        });
        let (red, _) = block.rref();
        let rows: Vec<Vec<Rational>> = (0..red.rows)
            .filter(|&i| red.row(i)[..n].iter().all(Zero::is_zero) && red.row(i)[n..].iter().any(|x| !x.is_zero()))
            .map(|i| red.row(i)[n..].to_vec())
            .collect();
        Ok(Self::stack(&rows, n)?.row_basis())
    }

    /// A solution of `self * x = b`, free variables set to zero; `None` if inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if b.len() != self.rows {
            return Err(Error::Shape("right-hand side length".into()));
        }
        let aug =
            Self::from_fn(
                self.rows,
                self.cols + 1,
                |i, j| {
                    if j < self.cols {
                        self.get(i, j).clone()
                    } else {
                        b[i].clone()
                    }
                },
            );
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![rational::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = red.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (red, pivots) = self.rref();
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![rational::zero(); self.cols];
                v[free] = rational::one();
                for (r, &c) in pivots.iter().enumerate() {
                    v[c] = -red.get(r, free).clone();
                }
                v
            })
            .collect()
    }

    /// Entries as `"p/q"` strings, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(rational::format).collect()).collect()
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_ints(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(ExactMatrix::identity(4).rank(), 4);
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(ExactMatrix::zeros(3, 2).rank(), 0);
        let half = ExactMatrix::from_rows(vec![vec![Rational::new(1.into(), 2.into()), int(1)], vec![int(1), int(2)]])
            .unwrap();
        assert_eq!(half.rank(), 1);
    }

    #[test]
    fn rref_has_unit_pivots() {
        let (r, piv) = m(&[&[2, 4, 6], &[1, 1, 1]]).rref();
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(r, m(&[&[1, 0, -1], &[0, 1, 2]]));
    }

    #[test]
    fn span_operations() {
        let a = m(&[&[1, 0, 0], &[0, 1, 0]]);
        let b = m(&[&[1, 1, 0], &[1, -1, 0]]);
        assert!(a.span_equal(&b));
        let c = m(&[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(a.intersect_span(&c).unwrap(), m(&[&[0, 1, 0]]));
        assert!(a.span_contains(&m(&[&[3, 5, 0]])));
        assert!(!a.span_contains(&m(&[&[0, 0, 1]])));
    }

    #[test]
    fn solve_and_nullspace() {
        let a = m(&[&[1, 1], &[1, -1]]);
        assert_eq!(a.solve(&[int(3), int(1)]).unwrap(), Some(vec![int(2), int(1)]));
        let s = m(&[&[1, 1], &[2, 2]]);
        assert_eq!(s.solve(&[int(1), int(3)]).unwrap(), None);
        let ns = s.nullspace();
        assert_eq!(ns, vec![vec![int(-1), int(1)]]);
    }
}
