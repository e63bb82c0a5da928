use std::collections::HashMap;

use num_traits::Zero;
use serde_json::json;

use super::{decompose, is_nonneg_integer, span, Flags, HeckeAlgebra, HeckeElement, HeckeModule, Intertwiner};
use crate::ambient::{is_symmetric_couple, IsoType};
use crate::error::Result;
use crate::oracle::ExactMatrix;
use crate::poset::is_delta;
use crate::rational::{self, Rational};
use crate::report::Check;

fn all_hold(name: &str, failures: Vec<String>, cases: usize) -> Check {
    Check::eq(name, &failures, Vec::<String>::new()).with_witness(json!({ "cases": cases }))
}

fn run(name: &str, f: impl FnOnce() -> Result<Vec<Check>>) -> Vec<Check> {
    f().unwrap_or_else(|e| vec![Check::error(name, &e)])
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(rational::format).collect()
}

/// The geometric basis: identity, partition of the all-ones kernel,
/// symmetry, orbit parametrization, commutativity, closure and dimension.
pub fn verify_geometric(alg: &HeckeAlgebra) -> Vec<Check> {
    run("geometric", || {
        let t = alg.dim();
        let n = alg.grassmannian().len();
        let gs: Vec<ExactMatrix> = (0..t).map(|l| alg.matrix(&alg.g(l))).collect();
        let mut out = vec![Check::holds("geometric.identity", gs[alg.phi_pos()] == ExactMatrix::identity(n))];
        let mut total = ExactMatrix::zeros(n, n);
        for g in &gs {
            total = total.add(g)?;
        }
        out.push(Check::holds("geometric.partition", total == ExactMatrix::from_fn(n, n, |_, _| rational::one())));
        let asym: Vec<String> =
            (0..t).filter(|&l| gs[l] != gs[l].transpose()).map(|l| alg.types()[l].to_string()).collect();
        out.push(all_hold("geometric.symmetric", asym, t));

        let orbits = alg.pair_orbits()?;
        let mut seen = vec![None; t];
        let mut bad = Vec::new();
        for (o, orbit) in orbits.iter().enumerate() {
            let l = alg.labels()[orbit[0]] as usize;
            if orbit.iter().any(|&p| alg.labels()[p] as usize != l) {
                bad.push(format!("orbit {o} carries several intersection types"));
            }
            if let Some(prev) = seen[l].replace(o) {
                bad.push(format!("orbits {prev} and {o} share type {}", alg.types()[l]));
            }
        }
        out.push(Check::eq("geometric.orbits", orbits.len(), t).with_witness(&bad));
        out.push(all_hold("geometric.orbit-invariant", bad, orbits.len()));

        let mut noncomm = Vec::new();
        let mut open = Vec::new();
        for l in 0..t {
            for m in l..t {
                let lm = gs[l].mul(&gs[m])?;
                if m > l && lm != gs[m].mul(&gs[l])? {
                    noncomm.push(format!("{},{}", alg.types()[l], alg.types()[m]));
                }
                match decompose(alg.labels(), t, &lm) {
                    Some(c) if c == alg.mul(&alg.g(l), &alg.g(m)).coeffs() => {}
                    _ => open.push(format!("{},{}", alg.types()[l], alg.types()[m])),
                }
            }
        }
        out.push(all_hold("geometric.commute", noncomm, t * (t - 1) / 2));
        out.push(all_hold("geometric.closure", open, t * (t + 1) / 2));
        let flat: Vec<Vec<Rational>> = gs.iter().map(ExactMatrix::flatten).collect();
        out.push(Check::eq("hecke.dim", span(&flat, n * n).rank(), t));
        Ok(out)
    })
}

/// The cellular basis against the averaging operators, and the round trip
/// between the two bases through `zeta_hat` and `mu_hat`.
pub fn verify_cellular(alg: &HeckeAlgebra) -> Vec<Check> {
    run("cellular", || {
        let t = alg.dim();
        let mut out = Vec::new();
        let mut bad = Vec::new();
        for l in 0..t {
            if alg.c_from_operators(l)? != alg.matrix(&alg.c(l)) {
                bad.push(alg.types()[l].to_string());
            }
        }
        out.push(all_hold("cellular.c-equals-zeta-g", bad, t));
        let mut bad = Vec::new();
        for l in 0..t {
            let mut g = alg.zero();
            for k in 0..t {
                g = g.add(&alg.c(k).scale(&alg.mu_hat().get(l, k)));
            }
            if g != alg.g(l) {
                bad.push(alg.types()[l].to_string());
            }
        }
        out.push(all_hold("cellular.g-equals-mu-c", bad, t));
        out.push(Check::holds("cellular.mu-zeta-inverse", is_delta(&alg.mu_hat().convolve(alg.zeta_hat())?)));
        let cs: Vec<Vec<Rational>> = (0..t).map(|l| alg.c(l).coeffs().to_vec()).collect();
        out.push(Check::eq("cellular.basis-rank", span(&cs, t).rank(), t));
        Ok(out)
    })
}

/// Ideal units, idempotents, ranks.
pub fn verify_idempotents(alg: &HeckeAlgebra) -> Vec<Check> {
    run("idempotents", || {
        let t = alg.dim();
        let n = alg.grassmannian().len();
        let mut out = Vec::new();
        let mut bad = Vec::new();
        for l in 0..t {
            let u = alg.ideal_unit(l)?;
            let acts = (0..t).filter(|&k| alg.interval().leq(k, l)).all(|k| alg.mul(&u, &alg.c(k)) == alg.c(k));
            if alg.mul(&u, &u) != u || !acts {
                bad.push(alg.types()[l].to_string());
            }
        }
        out.push(all_hold("ideal-unit", bad, t));
        let es = alg.idempotents()?;
        let mut bad = Vec::new();
        for l in 0..t {
            for m in 0..t {
                let p = alg.mul(&es[l], &es[m]);
                let want = if l == m { es[l].clone() } else { alg.zero() };
                if p != want {
                    bad.push(format!("{},{}", alg.types()[l], alg.types()[m]));
                }
            }
        }
        out.push(all_hold("idempotents.orthogonal", bad, t * t));
        let sum = es.iter().fold(alg.zero(), |s, e| s.add(e));
        out.push(Check::eq("idempotents.sum", sum.to_strings(), alg.identity().to_strings()));
        let mut bad = Vec::new();
        for (l, e) in es.iter().enumerate() {
            let row = span(&[e.coeffs().to_vec()], t);
            if !alg.ideal(l).span_contains(&row) || alg.ideal_minus(l).span_contains(&row) {
                bad.push(alg.types()[l].to_string());
            }
        }
        out.push(all_hold("idempotents.filtration", bad, t));
        let mut ranks = Vec::new();
        let mut traces = Vec::new();
        for e in &es {
            let m = alg.matrix(e);
            ranks.push(m.rank());
            let tr: Rational = (0..n).map(|i| m.get(i, i).clone()).sum();
            traces.push(rational::as_integer(&tr).map(|v| v.to_string()).unwrap_or_else(|| rational::format(&tr)));
        }
        let rank_strings: Vec<String> = ranks.iter().map(ToString::to_string).collect();
        out.push(
            Check::eq("idempotents.ranks", rank_strings, traces)
                .with_witness(json!({ "types": alg.types().iter().map(ToString::to_string).collect::<Vec<_>>() })),
        );
        out.push(Check::eq("idempotents.rank-total", ranks.iter().sum::<usize>(), n));
        let zero = alg.type_pos(&alg.phi().zero_like())?;
        let avg = HeckeElement::new(vec![Rational::new(1.into(), (n as i64).into()); t]);
        out.push(Check::eq("idempotents.e0-averaging", es[zero].to_strings(), avg.to_strings()));
        Ok(out)
    })
}

fn meet_in(alg: &HeckeAlgebra, l: usize, m: usize) -> Option<usize> {
    let p = alg.interval();
    let lower: Vec<usize> = (0..alg.dim()).filter(|&k| p.leq(k, l) && p.leq(k, m)).collect();
    lower.iter().copied().find(|&k| lower.iter().all(|&j| p.leq(j, k)))
}

/// The four parts of the cellular ideal structure of `H_phi`.
pub fn verify_cellalg(alg: &HeckeAlgebra) -> Vec<Check> {
    run("cellalg", || {
        let t = alg.dim();
        let p = alg.interval();
        let cs = alg.cellular_basis();
        let mut out = Vec::new();

        let mut bad = Vec::new();
        for l in 0..t {
            for (name, ideal) in [("", alg.ideal(l)), ("-", alg.ideal_minus(l))] {
                let prods: Vec<Vec<Rational>> = (0..ideal.rows())
                    .flat_map(|r| {
                        let v = HeckeElement::new(ideal.row(r).to_vec());
                        cs.iter().map(move |c| alg.mul(c, &v).coeffs().to_vec()).collect::<Vec<_>>()
                    })
                    .collect();
                if !ideal.span_contains(&span(&prods, t)) {
                    bad.push(format!("H^{}{name}", alg.types()[l]));
                }
            }
            if alg.ideal_unit(l).is_err() || alg.ideal_minus_unit(l).is_err() {
                bad.push(format!("unit of H^{}", alg.types()[l]));
            }
        }
        out.push(all_hold("cellalg.part1", bad, t));

        let mut bad = Vec::new();
        for l in 0..t {
            let mut sum = ExactMatrix::zeros(0, t);
            for k in (0..t).filter(|&k| k != l && p.leq(k, l)) {
                sum = sum.vstack(&alg.ideal(k))?;
            }
            if !sum.span_equal(&alg.ideal_minus(l)) {
                bad.push(alg.types()[l].to_string());
            }
        }
        out.push(all_hold("cellalg.lower-ideal-is-sum", bad, t));

        let lattice = (0..t).all(|l| (0..t).all(|m| meet_in(alg, l, m).is_some()));
        let mut bad = Vec::new();
        for l in 0..t {
            for m in 0..t {
                let (hl, hm) = (alg.ideal(l), alg.ideal(m));
                let mut prods = Vec::new();
                for a in 0..hl.rows() {
                    for b in 0..hm.rows() {
                        let x = alg.mul(&HeckeElement::new(hl.row(a).to_vec()), &HeckeElement::new(hm.row(b).to_vec()));
                        prods.push(x.coeffs().to_vec());
                    }
                }
                let prod = span(&prods, t);
                let cap = hl.intersect_span(&hm)?;
                let meet_ok = !lattice || meet_in(alg, l, m).is_some_and(|k| cap.span_equal(&alg.ideal(k)));
                if !prod.span_equal(&cap) || !meet_ok {
                    bad.push(format!("{},{}", alg.types()[l], alg.types()[m]));
                }
            }
        }
        out.push(all_hold("cellalg.part2", bad, t * t).with_witness(json!({ "cases": t * t, "lattice": lattice })));

        let table = alg.spectral_table()?;
        let mut bad = Vec::new();
        for l in 0..t {
            for m in 0..t {
                let s = &table.exact[l][m];
                if (!p.leq(l, m) && !s.is_zero()) || (l == m && s.is_zero()) {
                    bad.push(format!("c_{} on e_{}", alg.types()[m], alg.types()[l]));
                }
            }
        }
        let rows_distinct = (0..t).all(|a| (a + 1..t).all(|b| table.exact[a] != table.exact[b]));
        let cols_distinct = (0..t).all(|a| (a + 1..t).all(|b| (0..t).any(|r| table.exact[r][a] != table.exact[r][b])));
        if !rows_distinct || !cols_distinct {
            bad.push("characters not distinct".into());
        }
        out.push(all_hold("cellalg.part3", bad, t * t).with_witness(&table));

        let es = alg.idempotents()?;
        let mut bad = Vec::new();
        for l in 0..t {
            let ideal = alg.ideal(l);
            let mut below = Vec::new();
            for (m, e) in es.iter().enumerate() {
                let inside = ideal.span_contains(&span(&[e.coeffs().to_vec()], t));
                if inside != p.leq(m, l) {
                    bad.push(format!("e_{} in H^{}: {inside}", alg.types()[m], alg.types()[l]));
                }
                if p.leq(m, l) {
                    below.push(e.coeffs().to_vec());
                }
            }
            if !span(&below, t).span_equal(&ideal) {
                bad.push(format!("H^{} is not spanned by its idempotents", alg.types()[l]));
            }
        }
        out.push(all_hold("cellalg.part4", bad, t));
        Ok(out)
    })
}

/// The four parts of the cellular submodule structure of `N_{phi,nu}`,
/// plus the dimension count against the orbit oracle.
pub fn verify_cellmod(module: &HeckeModule) -> Vec<Check> {
    run("cellmod", || {
        let alg = module.algebra();
        let nu = module.nu().clone();
        let t = alg.dim();
        let r = module.dim();
        let (nx, ny) = (alg.grassmannian().len(), module.grassmannian().len());
        let mut out = Vec::new();

        let flat: Vec<Vec<Rational>> = (0..r).map(|i| module.matrix(&module.G(i)).flatten()).collect();
        let arrow_total: usize = alg.types().iter().filter(|l| l.leq(&nu)).map(|l| module.arrow_count(l)).sum();
        out.push(
            Check::eq(format!("cellmod.dim[{nu}]"), span(&flat, nx * ny).rank(), module.orbit_count()?)
                .with_witness(json!({ "arrow_types": arrow_total })),
        );
        out.push(Check::eq(format!("cellmod.arrow-count[{nu}]"), r, arrow_total));

        let mut bad = Vec::new();
        for i in 0..r {
            if module.c_from_operators(i)? != module.matrix(&module.C(i)) {
                bad.push(i.to_string());
            }
        }
        out.push(all_hold(&format!("cellmod.c-equals-zeta-g[{nu}]"), bad, r));
        let mut bad = Vec::new();
        for i in 0..r {
            let mut g = vec![rational::zero(); r];
            for k in 0..r {
                let mu = module.mu_hat().get(i, k);
                for (gj, cj) in g.iter_mut().zip(module.C(k).coeffs()) {
                    *gj += &mu * cj;
                }
            }
            if g != module.G(i).coeffs() {
                bad.push(i.to_string());
            }
        }
        out.push(all_hold(&format!("cellmod.g-equals-mu-c[{nu}]"), bad, r));

        let cs = alg.cellular_basis();
        let lams: Vec<usize> = (0..t).filter(|&l| alg.types()[l].leq(&nu)).collect();
        let mut bad = Vec::new();
        for &l in &lams {
            let ty = &alg.types()[l];
            for (name, sub) in [("", module.submodule(ty)), ("-", module.submodule_minus(ty))] {
                if !sub.span_contains(&module.product_span(&cs, &sub)) {
                    bad.push(format!("N^{ty}{name}"));
                }
            }
        }
        out.push(all_hold(&format!("cellmod.part1[{nu}]"), bad, lams.len()));

        let full = span(&(0..r).map(|i| module.G(i).coeffs().to_vec()).collect::<Vec<_>>(), r);
        let ideal_elems = |m: usize, strict: bool| -> Vec<HeckeElement> {
            (0..t).filter(|&k| alg.interval().leq(k, m) && !(strict && k == m)).map(|k| alg.c(k)).collect()
        };
        let mut bad = Vec::new();
        for &l in &lams {
            let ty = &alg.types()[l];
            let nl = module.submodule(ty);
            for m in 0..t {
                let lhs = module.product_span(&ideal_elems(m, false), &nl);
                let rhs = module.submodule(&alg.types()[m]).intersect_span(&nl)?;
                if !lhs.span_equal(&rhs) {
                    bad.push(format!("H^{} N^{ty}", alg.types()[m]));
                }
            }
            if !module.product_span(&ideal_elems(l, false), &full).span_equal(&nl) {
                bad.push(format!("H^{ty} N"));
            }
            if !module.product_span(&ideal_elems(l, true), &full).span_equal(&module.submodule_minus(ty)) {
                bad.push(format!("H^{ty}- N"));
            }
        }
        out.push(all_hold(&format!("cellmod.part2[{nu}]"), bad, lams.len() * t));

        let es = alg.idempotents()?;
        let table = alg.spectral_table()?;
        let mut bad = Vec::new();
        for &l in &lams {
            let ty = &alg.types()[l];
            let (nl, nlm) = (module.submodule(ty), module.submodule_minus(ty));
            let quotient = nl.rank() - nlm.rank();
            let isotypic = module.image_rank_compact(&es[l]);
            let arrows = module.arrow_count(ty);
            if quotient != arrows || isotypic != arrows {
                bad.push(format!("{ty}: quotient {quotient}, isotypic {isotypic}, arrows {arrows}"));
            }
            for m in 0..t {
                let shifted = cs[m].sub(&alg.identity().scale(&table.exact[l][m]));
                if !nlm.span_contains(&module.product_span(&[shifted], &nl)) {
                    bad.push(format!("c_{} on N^{ty}/N^{ty}-", alg.types()[m]));
                }
            }
        }
        out.push(all_hold(&format!("cellmod.part3[{nu}]"), bad, lams.len()));

        let mut bad = Vec::new();
        for &l in &lams {
            let ty = &alg.types()[l];
            let nl = module.submodule(ty);
            let mut total = 0;
            for (m, e) in es.iter().enumerate() {
                let got = module.product_span(std::slice::from_ref(e), &nl).rank();
                let want = if alg.types()[m].leq(ty) { module.arrow_count(&alg.types()[m]) } else { 0 };
                total += got;
                if got != want {
                    bad.push(format!("e_{} N^{ty}: {got} != {want}", alg.types()[m]));
                }
            }
            if total != nl.rank() {
                bad.push(format!("N^{ty}: isotypic dimensions sum to {total}, not {}", nl.rank()));
            }
        }
        out.push(all_hold(&format!("cellmod.part4[{nu}]"), bad, lams.len()));
        Ok(out)
    })
}

/// `dim(e_lambda N_{phi,nu})` against the number of arrow types `lambda -> nu`.
pub fn verify_multiplicities(module: &HeckeModule) -> Vec<Check> {
    run("multiplicity", || {
        let alg = module.algebra();
        let es = alg.idempotents()?;
        let mut out = Vec::new();
        for (l, e) in es.iter().enumerate() {
            let ty = &alg.types()[l];
            let rank = module.image_rank(e)?;
            let compact = module.image_rank_compact(e);
            out.push(
                Check::eq(format!("multiplicity[{ty},{}]", module.nu()), rank, module.arrow_count(ty))
                    .with_witness(json!({ "compact_rank": compact })),
            );
        }
        Ok(out)
    })
}

/// Theorem-level identity for the transition matrix between cellular basis
/// and idempotents, on the pairs whose hypotheses are machine-checked.
pub fn verify_cell_idem(alg: &HeckeAlgebra) -> Vec<Check> {
    run("cell-idem", || {
        let amb = alg.ambient();
        let counter = alg.counter();
        let big = amb.instance().top_type();
        let phi = alg.phi();
        let t = alg.dim();
        let a = alg.a_matrix()?;
        let mut out = Vec::new();
        let mut gated = Vec::new();
        let mut duality: HashMap<usize, bool> = HashMap::new();
        for w in 0..t {
            let omega = &alg.types()[w];
            let couple = is_symmetric_couple(amb, &big, omega)?;
            for k in 0..t {
                let kappa = &alg.types()[k];
                let dual = match duality.get(&k) {
                    Some(&d) => d,
                    None => *duality.entry(k).or_insert(counter.check_duality(kappa)?),
                };
                if !(couple && dual) {
                    gated.push(format!("{omega},{kappa}"));
                    continue;
                }
                let cont = counter.count_cont(kappa, omega, phi).unwrap_or(0);
                let rhs = if cont == 0 {
                    rational::zero()
                } else {
                    let avoid = counter.avoid_bruteforce(omega, phi, kappa, &big)?;
                    rational::int((cont * avoid.value) as i64)
                };
                out.push(Check::eq(
                    format!("cell-idem[{omega},{kappa}]"),
                    rational::format(&a[w][k]),
                    rational::format(&rhs),
                ));
            }
        }
        let mut bad = Vec::new();
        for w in 0..t {
            for k in 0..t {
                let lower = alg.interval().leq(k, w);
                if (!lower && !a[w][k].is_zero()) || (w == k && a[w][k].is_zero()) {
                    bad.push(format!("{},{}", alg.types()[w], alg.types()[k]));
                }
            }
        }
        out.push(all_hold("cell-idem.triangular", bad, t * t));
        out.push(
            Check::eq("cell-idem.gated", gated.len(), gated.len())
                .with_witness(json!({ "pairs": gated, "a_matrix": a.iter().map(|r| strings(r)).collect::<Vec<_>>() })),
        );
        Ok(out)
    })
}

/// Every generator permutation matrix commutes with every `g_lambda`, and
/// intertwines the two actions on every `G_i`.
pub fn verify_equivariance(alg: &HeckeAlgebra, modules: &[HeckeModule]) -> Vec<Check> {
    run("equivariance", || {
        let ps = alg.generator_matrices()?;
        let gs: Vec<ExactMatrix> = (0..alg.dim()).map(|l| alg.matrix(&alg.g(l))).collect();
        let mut bad = Vec::new();
        for (gi, p) in ps.iter().enumerate() {
            for (l, g) in gs.iter().enumerate() {
                if p.mul(g)? != g.mul(p)? {
                    bad.push(format!("generator {gi}, g_{}", alg.types()[l]));
                }
            }
        }
        let mut out = vec![all_hold("equivariance.g", bad, ps.len() * gs.len())];
        for module in modules {
            let qs = module.generator_matrices()?;
            let mut bad = Vec::new();
            for (gi, (p, q)) in ps.iter().zip(&qs).enumerate() {
                for i in 0..module.dim() {
                    let m = module.matrix(&module.G(i));
                    if p.mul(&m)? != m.mul(q)? {
                        bad.push(format!("generator {gi}, G_{i}"));
                    }
                }
            }
            out.push(all_hold(&format!("equivariance.G[{}]", module.nu()), bad, ps.len() * module.dim()));
        }
        Ok(out)
    })
}

/// Whether `m = c * base` for a natural number `c`.
fn natural_multiple(m: &ExactMatrix, base: &ExactMatrix) -> bool {
    if m.is_zero() {
        return true;
    }
    let first =
        (0..base.rows()).flat_map(|r| (0..base.cols()).map(move |s| (r, s))).find(|&(r, s)| !base.get(r, s).is_zero());
    first.is_some_and(|(r, s)| {
        let c = m.get(r, s) / base.get(r, s);
        is_nonneg_integer(&c) && &base.scale(&c) == m
    })
}

fn flag_labels(amb: &crate::ambient::Ambient, flags: &Flags, lo: &IsoType, hi: &IsoType) -> Vec<u32> {
    let xs = amb.grassmannian(lo);
    let ys = amb.grassmannian(hi);
    let none = flags.table.len() as u32;
    let mut out = Vec::with_capacity(xs.len() * ys.len());
    for &b in &ys {
        for &a in &xs {
            out.push(if amb.leq(a, b) { flags.label(amb, a, b) as u32 } else { none });
        }
    }
    out
}

/// Composition laws of the averaging operators over chains `mu <= lambda <= eta`
/// in `[0, phi]`, and their transposes.
pub fn verify_compo(alg: &HeckeAlgebra) -> Vec<Check> {
    run("compo", || {
        let amb = alg.ambient();
        let counter = alg.counter();
        let types = alg.types();
        let phi = alg.phi();
        let p = alg.interval();
        let t = alg.dim();
        let mut flags = Vec::with_capacity(t);
        for ty in types {
            flags.push(Flags::new(amb, ty)?);
        }
        let arrows = |lo: usize, hi: usize| flags[hi].table.with_source(&types[lo]);
        let up = |lo: usize, hi: usize, k: Option<usize>| {
            Intertwiner::averaging(amb, &types[lo], &types[hi], k.map(|k| (&flags[hi], k)))
        };

        let (mut bad1, mut bad1t, mut cases1) = (Vec::new(), Vec::new(), 0);
        for mu in 0..t {
            for lam in (0..t).filter(|&l| p.leq(mu, l)) {
                for eta in (0..t).filter(|&e| p.leq(lam, e)) {
                    let labels = flag_labels(amb, &flags[eta], &types[mu], &types[eta]);
                    let classes = flags[eta].table.len() + 1;
                    let n_mu = amb.grassmannian(&types[mu]).len();
                    let labels_t: Vec<u32> = {
                        let n_eta = labels.len() / n_mu.max(1);
                        (0..labels.len()).map(|q| labels[(q % n_eta) * n_mu + q / n_eta]).collect()
                    };
                    for i in arrows(mu, lam) {
                        let ti = up(mu, lam, Some(i))?;
                        for j in arrows(lam, eta) {
                            cases1 += 1;
                            let tj = up(lam, eta, Some(j))?;
                            let name = format!("{}->{}->{} ({i},{j})", types[mu], types[lam], types[eta]);
                            let ok = |c: Option<Vec<Rational>>| {
                                c.is_some_and(|c| c.iter().all(is_nonneg_integer) && c[classes - 1].is_zero())
                            };
                            if !ok(decompose(&labels, classes, &tj.compose(&ti)?.matrix)) {
                                bad1.push(name.clone());
                            }
                            if !ok(decompose(&labels_t, classes, &ti.transpose().compose(&tj.transpose())?.matrix)) {
                                bad1t.push(name);
                            }
                        }
                    }
                }
            }
        }
        let top = alg.phi_pos();
        let (mut bad2, mut bad2t, mut bad3, mut bad3t, mut cases2, mut cases3) =
            (Vec::new(), Vec::new(), Vec::new(), Vec::new(), 0, 0);
        for mu in 0..t {
            let up_mu = up(mu, top, None)?;
            for lam in (0..t).filter(|&l| p.leq(mu, l)) {
                let up_lam = up(lam, top, None)?;
                for i in arrows(mu, lam) {
                    cases2 += 1;
                    let name = format!("{}->{} ({i})", types[mu], types[lam]);
                    let ti = up(mu, lam, Some(i))?;
                    if !natural_multiple(&up_lam.compose(&ti)?.matrix, &up_mu.matrix) {
                        bad2.push(name.clone());
                    }
                    if !natural_multiple(
                        &ti.transpose().compose(&up_lam.transpose())?.matrix,
                        &up_mu.transpose().matrix,
                    ) {
                        bad2t.push(name);
                    }
                }
                cases3 += 1;
                let cont = rational::int(counter.count_cont(&types[mu], &types[lam], phi)? as i64);
                let whole = up(mu, lam, None)?;
                let name = format!("{}->{}", types[mu], types[lam]);
                if up_lam.compose(&whole)?.matrix != up_mu.matrix.scale(&cont) {
                    bad3.push(name.clone());
                }
                if whole.transpose().compose(&up_lam.transpose())?.matrix != up_mu.transpose().matrix.scale(&cont) {
                    bad3t.push(name);
                }
            }
        }
        Ok(vec![
            all_hold("compo.part1", bad1, cases1),
            all_hold("compo.part1-transpose", bad1t, cases1),
            all_hold("compo.part2", bad2, cases2),
            all_hold("compo.part2-transpose", bad2t, cases2),
            all_hold("compo.part3", bad3, cases3),
            all_hold("compo.part3-transpose", bad3t, cases3),
        ])
    })
}
