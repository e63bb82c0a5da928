//! Arithmetic over `Z/p^k`: Howell canonical forms of row spans, Smith
//! invariants, and enumeration of module elements.

/// The chain ring `Z/p^k` acting on row vectors of length `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainRing {
    pub p: u32,
    pub k: u32,
    pub n: u32,
    /// `p^k`
    pub modulus: u32,
}

impl ChainRing {
    pub fn new(p: u32, k: u32, n: u32) -> Self {
        ChainRing { p, k, n, modulus: p.pow(k) }
    }

    pub fn pow(&self, e: u32) -> u32 {
        self.p.pow(e)
    }

    /// p-adic valuation, `k` for zero.
    pub fn val(&self, x: u32) -> u32 {
        let mut x = x % self.modulus;
        if x == 0 {
            return self.k;
        }
        let mut v = 0;
        while x.is_multiple_of(self.p) {
            x /= self.p;
            v += 1;
        }
        v
    }

    pub fn is_unit(&self, x: u32) -> bool {
        self.val(x) == 0
    }

    pub fn units(&self) -> impl Iterator<Item = u32> + '_ {
        (1..self.modulus).filter(|&u| self.is_unit(u))
    }

    pub fn inv(&self, u: u32) -> u32 {
        let m = self.modulus as u64;
        (1..self.modulus).find(|&w| (u as u64 * w as u64) % m == 1).expect("inverse of a non-unit")
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.modulus as u64) as u32
    }

    pub fn num_points(&self) -> usize {
        (self.modulus as usize).pow(self.n)
    }

    pub fn encode(&self, v: &[u32]) -> u32 {
        v.iter().fold(0u32, |acc, &x| acc * self.modulus + x % self.modulus)
    }

    pub fn decode(&self, mut idx: u32) -> Vec<u32> {
        let mut v = vec![0; self.n as usize];
        for slot in v.iter_mut().rev() {
            *slot = idx % self.modulus;
            idx /= self.modulus;
        }
        v
    }

    fn axpy(&self, row: &mut [u32], f: u32, piv: &[u32]) {
        // row -= f * piv
        let m = self.modulus as u64;
        for (r, &x) in row.iter_mut().zip(piv) {
            let sub = (f as u64 * x as u64) % m;
            *r = ((*r as u64 + m - sub) % m) as u32;
        }
    }

    fn scale(&self, row: &[u32], f: u32) -> Vec<u32> {
        row.iter().map(|&x| self.mul(x, f)).collect()
    }

    /// Howell normal form of the row span: echelon rows with pivots `p^v`,
    /// entries above each pivot reduced modulo it, and every element of the
    /// span that vanishes on the first `c` columns expressible by the rows
    /// whose pivots lie at or after column `c`. Unique per submodule.
    pub fn howell(&self, rows: impl IntoIterator<Item = Vec<u32>>) -> Vec<Vec<u32>> {
        let n = self.n as usize;
        let mut pending: Vec<Vec<u32>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(|x| x % self.modulus).collect::<Vec<_>>())
            .filter(|r: &Vec<u32>| r.iter().any(|&x| x != 0))
            .collect();
        let mut out: Vec<(usize, Vec<u32>)> = Vec::new();
        for c in 0..n {
            let Some(bi) =
                (0..pending.len()).filter(|&i| pending[i][c] != 0).min_by_key(|&i| (self.val(pending[i][c]), i))
            else {
                continue;
            };
            let raw = pending.remove(bi);
            let v = self.val(raw[c]);
            let pv = self.pow(v);
            let piv = self.scale(&raw, self.inv(raw[c] / pv));
            for r in pending.iter_mut() {
                if r[c] != 0 {
                    let f = r[c] / pv;
                    self.axpy(r, f, &piv);
                }
            }
            if v > 0 {
                pending.push(self.scale(&piv, self.pow(self.k - v)));
            }
            pending.retain(|r| r.iter().any(|&x| x != 0));
            out.push((c, piv));
        }
        for j in 0..out.len() {
            let (c, pj) = (out[j].0, out[j].1.clone());
            for (_, row) in out[..j].iter_mut() {
                let f = row[c] / pj[c];
                if f > 0 {
                    self.axpy(row, f, &pj);
                }
            }
        }
        out.into_iter().map(|(_, r)| r).collect()
    }

    /// Valuation of each row's leading entry (rows in Howell form).
    pub fn pivot_valuations(&self, form: &[Vec<u32>]) -> Vec<u32> {
        form.iter().map(|r| self.val(*r.iter().find(|&&x| x != 0).expect("zero row in canonical form"))).collect()
    }

    /// `log_p` of the size of the span of a Howell form.
    pub fn log_size(&self, form: &[Vec<u32>]) -> u32 {
        self.pivot_valuations(form).iter().map(|v| self.k - v).sum()
    }

    /// All point indices in the span of a Howell form.
    pub fn span_points(&self, form: &[Vec<u32>]) -> Vec<u32> {
        let radix: Vec<u32> = self.pivot_valuations(form).iter().map(|v| self.pow(self.k - v)).collect();
        let total: usize = radix.iter().map(|&r| r as usize).product();
        let mut out = Vec::with_capacity(total);
        let mut coef = vec![0u32; form.len()];
        let n = self.n as usize;
        loop {
            let mut v = vec![0u32; n];
            for (a, row) in coef.iter().zip(form) {
                if *a != 0 {
                    for (x, &r) in v.iter_mut().zip(row) {
                        *x = (*x + self.mul(*a, r)) % self.modulus;
                    }
                }
            }
            out.push(self.encode(&v));
            let mut i = 0;
            loop {
                if i == coef.len() {
                    return out;
                }
                coef[i] += 1;
                if coef[i] < radix[i] {
                    break;
                }
                coef[i] = 0;
                i += 1;
            }
        }
    }

    /// Invariant-factor type of the span: the partition `(k - v)` over the
    /// Smith diagonal entries `p^v` with `v < k`, sorted decreasingly.
    pub fn smith_type(&self, rows: &[Vec<u32>]) -> Vec<u8> {
        let mut a: Vec<Vec<u32>> = rows.to_vec();
        let n = self.n as usize;
        let mut used_r = vec![false; a.len()];
        let mut used_c = vec![false; n];
        let mut parts = Vec::new();
        loop {
            let mut best: Option<(u32, usize, usize)> = None;
            for (i, row) in a.iter().enumerate() {
                if used_r[i] {
                    continue;
                }
                for (j, &x) in row.iter().enumerate() {
                    if !used_c[j] && x != 0 {
                        let v = self.val(x);
                        if best.is_none_or(|(bv, _, _)| v < bv) {
                            best = Some((v, i, j));
                        }
                    }
                }
            }
            let Some((v, r, c)) = best else { break };
            let pv = self.pow(v);
            let piv = self.scale(&a[r], self.inv(a[r][c] / pv));
            a[r] = piv.clone();
            for i in 0..a.len() {
                if i != r && a[i][c] != 0 {
                    let f = a[i][c] / pv;
                    self.axpy(&mut a[i], f, &piv);
                }
            }
            // the column operations only touch the pivot row now
            for j in 0..n {
                if j != c {
                    a[r][j] = 0;
                }
            }
            used_r[r] = true;
            used_c[c] = true;
            parts.push((self.k - v) as u8);
        }
        parts.sort_unstable_by(|x, y| y.cmp(x));
        parts
    }

    /// Type of `y / x` for Howell forms `x <= y`, from the sizes `|p^j y + x|`.
    pub fn quotient_type(&self, x: &[Vec<u32>], y: &[Vec<u32>]) -> Vec<u8> {
        let logs: Vec<u32> = (0..=self.k)
            .map(|j| {
                let pj = self.pow(j);
                let rows = y.iter().map(|r| self.scale(r, pj)).chain(x.iter().cloned());
                self.log_size(&self.howell(rows))
            })
            .collect();
        // conjugate partition: number of parts exceeding j
        let conj: Vec<u32> = (0..self.k as usize).map(|j| logs[j] - logs[j + 1]).collect();
        let len = conj.first().copied().unwrap_or(0);
        (1..=len).map(|i| conj.iter().filter(|&&c| c >= i).count() as u8).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn howell_examples() {
        let r = ChainRing::new(2, 2, 2);
        // <(2,0),(0,2)> in (Z/4)^2
        assert_eq!(r.howell([vec![2, 0], vec![0, 2]]), vec![vec![2, 0], vec![0, 2]]);
        // <(1,2)> needs the annihilator row 2*(1,2) = (2,0)
        assert_eq!(r.howell([vec![1, 2]]), vec![vec![1, 2]]);
        assert_eq!(r.howell([vec![3, 2]]), vec![vec![1, 2]]);
        // <(2,1)>: pivot 2 at column 0, Howell row 2*(1,2)... = (0,2)
        let h = r.howell([vec![2, 1]]);
        assert_eq!(h, vec![vec![2, 1], vec![0, 2]]);
        assert_eq!(r.span_points(&h).len(), 4);
    }

    #[test]
    fn smith_types() {
        let r = ChainRing::new(2, 2, 2);
        assert_eq!(r.smith_type(&[vec![2, 0], vec![0, 2]]), vec![1, 1]);
        assert_eq!(r.smith_type(&[vec![1, 0], vec![0, 1]]), vec![2, 2]);
        assert_eq!(r.smith_type(&[vec![2, 1], vec![0, 2]]), vec![2]);
        assert_eq!(r.smith_type(&[]), Vec::<u8>::new());
    }

    #[test]
    fn quotient_types() {
        let r = ChainRing::new(2, 2, 1);
        assert_eq!(r.quotient_type(&[vec![2]], &[vec![1]]), vec![1]);
        assert_eq!(r.quotient_type(&[], &[vec![1]]), vec![2]);
        let r2 = ChainRing::new(2, 2, 2);
        assert_eq!(r2.quotient_type(&[vec![2, 0]], &[vec![1, 0], vec![0, 1]]), vec![2, 1]);
    }

    #[test]
    fn encode_decode() {
        let r = ChainRing::new(3, 1, 3);
        for i in 0..27 {
            assert_eq!(r.encode(&r.decode(i)), i);
        }
        assert_eq!(r.encode(&[1, 0, 0]), 9);
    }
}
