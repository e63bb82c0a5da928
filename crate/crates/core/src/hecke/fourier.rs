use num_bigint::BigInt;
use serde::Serialize;

use super::HeckeAlgebra;
use crate::ambient::{Ambient, Caps, Instance, IsoType};
use crate::counting::gauss_binom;
use crate::error::{Error, Result};
use crate::rational;
use crate::report::Check;

/// One coefficient of `g_k` on `e_j` in `H_m` over `F_q^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FourierEntry {
    pub k: u32,
    pub j: u32,
    /// Computed from the idempotents; absent when `q` is not prime.
    pub ground_truth: Option<String>,
    /// The displayed double sum, under each reading of its free parameter `l`.
    pub readings: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FourierReport {
    pub n: u32,
    pub m: u32,
    pub q: u32,
    pub entries: Vec<FourierEntry>,
    pub checks: Vec<Check>,
}

/// `sum_{i=k}^m (-1)^(i-k) q^C(i-k,2) (i over k)_q (n-i-j over m-i-j)_q q^(j(m-i-j)) (l-j over i-j)_q`.
pub fn fourier_formula(n: u32, m: u32, q: u32, k: u32, j: u32, l: u32) -> BigInt {
    let (n, m, k, j, l) = (n as i64, m as i64, k as i64, j as i64, l as i64);
    let qq = q as u64;
    let mut s = BigInt::from(0);
    for i in k..=m {
        let e = m - i - j;
        if e < 0 {
            continue;
        }
        let d = i - k;
        let term = BigInt::from(qq).pow((d * (d - 1) / 2).max(0) as u32)
            * gauss_binom(i, k, qq)
            * gauss_binom(n - i - j, e, qq)
            * BigInt::from(qq).pow((j * e) as u32)
            * gauss_binom(l - j, i - j, qq);
        if d % 2 == 1 {
            s -= term;
        } else {
            s += term;
        }
    }
    s
}

/// Compares the coefficients of `g_k` in the idempotent basis of `H_m`, for
/// the subspaces of `F_q^n`, with the displayed double sum.
pub fn fourier_report_field(n: u32, m: u32, q: u32, caps: Caps) -> Result<FourierReport> {
    if q < 2 || n < 2 * m {
        return Err(Error::InvalidType(format!("need q >= 2 and n >= 2m, got n={n}, m={m}, q={q}")));
    }
    let inst = Instance::field(q, n);
    let truth: Option<Vec<Vec<rational::Rational>>> = if inst.validate().is_ok() {
        let amb = Ambient::with_caps(inst, caps)?;
        let alg = HeckeAlgebra::new(&amb, &IsoType::Partition(vec![1; m as usize]))?;
        let es = alg.idempotents()?;
        let table = (0..=m as usize)
            .map(|k| {
                es.iter()
                    .enumerate()
                    .map(|(j, e)| {
                        alg.eigenvalue(&alg.g(k), e)
                            .ok_or_else(|| Error::TheoremViolation(format!("g_{k} does not act on e_{j} by a scalar")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Some(table)
    } else {
        None
    };
    let readings = [("l=m", m), ("l=n", n)];
    let mut entries = Vec::new();
    let mut checks = Vec::new();
    for k in 0..=m {
        for j in 0..=m {
            let ground = truth.as_ref().map(|t| t[k as usize][j as usize].clone());
            let values: Vec<(String, String)> = readings
                .iter()
                .map(|&(name, l)| (name.to_string(), fourier_formula(n, m, q, k, j, l).to_string()))
                .collect();
            if let Some(g) = &ground {
                let g = rational::as_integer(g).map_or_else(|| rational::format(g), |v| v.to_string());
                for (name, v) in &values {
                    checks.push(Check::compare(format!("fourier.g{k}.e{j}[{name}]"), v, &g));
                }
            }
            entries.push(FourierEntry { k, j, ground_truth: ground.map(|g| rational::format(&g)), readings: values });
        }
    }
    Ok(FourierReport { n, m, q, entries, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn identity_column() {
        let r = fourier_report_field(4, 1, 2, Caps::default()).unwrap();
        let top: Vec<&FourierEntry> = r.entries.iter().filter(|e| e.k == 1).collect();
        assert!(top.iter().all(|e| e.ground_truth.as_deref() == Some("1/1")));
        // g_0 is adjacency of disjoint lines: 14 - 0 on constants, -1 elsewhere
        let g0: Vec<&str> = r.entries.iter().filter(|e| e.k == 0).map(|e| e.ground_truth.as_deref().unwrap()).collect();
        assert_eq!(g0, ["14/1", "-1/1"]);
        assert!(r.checks.iter().all(|c| c.status != Status::Fail));
    }

    #[test]
    fn formula_only_for_prime_powers() {
        let r = fourier_report_field(4, 1, 4, Caps::default()).unwrap();
        assert!(r.entries.iter().all(|e| e.ground_truth.is_none()));
        assert!(r.checks.is_empty());
    }
}
