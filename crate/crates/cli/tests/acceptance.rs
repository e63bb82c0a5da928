//! One line per acceptance criterion; exits nonzero if any criterion fails.

use std::path::Path;
use std::process::{Command, Stdio};

use hecke_core::ambient::{arrow_types, is_symmetric_couple, Ambient, Caps, Instance, IsoType};
use hecke_core::counting::{check_field_identity, verify_mobius_field, Counter};
use hecke_core::hecke::{self, HeckeAlgebra, HeckeModule};
use hecke_core::oracle::{group_order, ExactMatrix};
use hecke_core::rational::{self, int};
use hecke_core::report::{Check, Status};

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_pass(checks: &[Check]) -> Outcome {
    let bad: Vec<&str> = checks.iter().filter(|c| c.status != Status::Pass).map(|c| c.check.as_str()).collect();
    ensure(!checks.is_empty() && bad.is_empty(), || format!("checks not passing: {bad:?}"))
}

fn instances() -> Vec<(Instance, IsoType)> {
    vec![
        (Instance::sets(6), IsoType::Size(3)),
        (Instance::field(2, 4), IsoType::partition(vec![1, 1])),
        (Instance::chain_ring(2, 2, 2), IsoType::partition(vec![2])),
    ]
}

fn with_algebra(inst: &Instance, phi: &IsoType, f: impl FnOnce(&HeckeAlgebra) -> Outcome) -> Outcome {
    let amb = Ambient::new(inst.clone()).map_err(|e| e.to_string())?;
    let alg = HeckeAlgebra::new(&amb, phi).map_err(|e| e.to_string())?;
    f(&alg).map_err(|e| format!("{inst}, phi={phi}: {e}"))
}

fn arrow_count(amb: &Ambient, lam: &IsoType, nu: &IsoType) -> Result<usize, String> {
    if !lam.leq(nu) {
        return Ok(0);
    }
    arrow_types(amb, lam, nu).map(|a| a.len()).map_err(|e| e.to_string())
}

fn mobius() -> Outcome {
    for q in [2, 3] {
        for d in 1..=4 {
            all_pass(&verify_mobius_field(q, d, Caps::default()).map_err(|e| e.to_string())?)?;
        }
    }
    Ok(())
}

fn counting() -> Outcome {
    let mut insts: Vec<Instance> = (1..=8).map(Instance::sets).collect();
    for q in [2, 3] {
        insts.extend((1..=5).map(|n| Instance::field(q, n)));
    }
    insts.push(Instance::chain_ring(2, 2, 2));
    for inst in insts {
        let amb = Ambient::new(inst.clone()).map_err(|e| e.to_string())?;
        let checks = Counter::new(&amb).verify_avoid(&inst.top_type()).map_err(|e| e.to_string())?;
        all_pass(&checks).map_err(|e| format!("{inst}: {e}"))?;
    }
    let r = check_field_identity(4, 1, 2, 1, 2, Caps::default()).map_err(|e| e.to_string())?;
    let statuses: Vec<Status> = r.checks().iter().map(|c| c.status).collect();
    ensure(
        r.brute_force == Some(6)
            && r.alternating_sum == "6"
            && r.closed_form == "1"
            && statuses == [Status::Pass, Status::Discrepancy],
        || format!("field case (4,1,2,1,2): {r:?}, {statuses:?}"),
    )
}

fn structure() -> Outcome {
    for ((inst, phi), dim) in instances().into_iter().zip([4, 3, 3]) {
        with_algebra(&inst, &phi, |alg| {
            let interval = alg.ambient().type_interval(&phi).map_err(|e| e.to_string())?.0.len();
            ensure(alg.dim() == dim && interval == dim, || format!("dim {} vs |[0,phi]| {interval}", alg.dim()))?;
            let gs: Vec<ExactMatrix> = alg.geometric_basis().iter().map(|g| alg.matrix(g)).collect();
            for a in &gs {
                for b in &gs {
                    ensure(a.mul(b).unwrap() == b.mul(a).unwrap(), || "g matrices do not commute".into())?;
                }
            }
            all_pass(&hecke::verify_cellular(alg))?;
            let parts: Vec<Check> = hecke::verify_cellalg(alg)
                .into_iter()
                .filter(|c| c.check.starts_with("cellalg.part1") || c.check.starts_with("cellalg.part2"))
                .collect();
            ensure(parts.len() == 2, || format!("expected parts 1 and 2, got {parts:?}"))?;
            all_pass(&parts)
        })?;
    }
    Ok(())
}

fn idempotents() -> Outcome {
    for (inst, phi) in instances() {
        with_algebra(&inst, &phi, |alg| {
            let es = alg.idempotents().map_err(|e| e.to_string())?;
            let mut sum = alg.zero();
            for (i, a) in es.iter().enumerate() {
                sum = sum.add(a);
                for (j, b) in es.iter().enumerate() {
                    let want = if i == j { a.clone() } else { alg.zero() };
                    ensure(alg.mul(a, b) == want, || format!("e_{i} e_{j} != delta e_{i}"))?;
                }
            }
            ensure(sum == alg.identity(), || "idempotents do not sum to 1".into())?;
            let ranks: Vec<usize> = es.iter().map(|e| alg.matrix(e).rank()).collect();
            match inst {
                Instance::Sets { .. } => ensure(ranks == [1, 5, 9, 5], || format!("ranks {ranks:?}"))?,
                Instance::ChainRing { k: 2, .. } => {
                    ensure(ranks.iter().sum::<usize>() == 6, || format!("ranks {ranks:?}"))?
                }
                _ => {}
            }
            let amb = alg.ambient();
            for nu in alg.types() {
                let module = HeckeModule::new(alg, nu).map_err(|e| e.to_string())?;
                for (e, lam) in es.iter().zip(alg.types()) {
                    let mult = module.image_rank(e).map_err(|e| e.to_string())?;
                    let arrows = arrow_count(amb, lam, nu)?;
                    ensure(mult == arrows, || format!("mult(U_{lam}, F_{nu}) = {mult}, arrows {arrows}"))?;
                }
            }
            Ok(())
        })?;
    }
    let amb = Ambient::new(Instance::chain_ring(2, 2, 2)).map_err(|e| e.to_string())?;
    let n = arrow_count(&amb, &IsoType::partition(vec![1]), &IsoType::partition(vec![2, 1]))?;
    ensure(n == 2, || format!("|(1) -> (2,1)| = {n}"))
}

fn cellmod() -> Outcome {
    for (inst, phi) in instances() {
        with_algebra(&inst, &phi, |alg| {
            let es = alg.idempotents().map_err(|e| e.to_string())?;
            for nu in alg.types() {
                let module = HeckeModule::new(alg, nu).map_err(|e| e.to_string())?;
                all_pass(&hecke::verify_cellmod(&module))?;
                let orbits = module.orbit_count().map_err(|e| e.to_string())?;
                ensure(module.dim() == orbits, || format!("dim N_{nu} = {} vs {orbits} orbits", module.dim()))?;
                for (e, lam) in es.iter().zip(alg.types()) {
                    let d = module.image_rank(e).map_err(|e| e.to_string())?;
                    let arrows = arrow_count(alg.ambient(), lam, nu)?;
                    ensure(d == arrows, || format!("dim e_{lam} N_{nu} = {d}, arrows {arrows}"))?;
                }
            }
            Ok(())
        })?;
    }
    Ok(())
}

fn cell_idem() -> Outcome {
    for (inst, phi) in [instances()[0].clone(), instances()[2].clone()] {
        with_algebra(&inst, &phi, |alg| {
            let amb = alg.ambient();
            let counter = alg.counter();
            let big = inst.top_type();
            let a = alg.a_matrix().map_err(|e| e.to_string())?;
            let err = |e: hecke_core::error::Error| e.to_string();
            for (w, omega) in alg.types().iter().enumerate() {
                ensure(is_symmetric_couple(amb, &big, omega).map_err(err)?, || {
                    format!("({big},{omega}) not a symmetric couple")
                })?;
                for (k, kappa) in alg.types().iter().enumerate() {
                    ensure(counter.check_duality(kappa).map_err(err)?, || format!("duality fails for {kappa}"))?;
                    let rhs = if kappa.leq(omega) {
                        let cont = counter.count_cont(kappa, omega, &phi).map_err(err)?;
                        let avoid = counter.avoid_bruteforce(omega, &phi, kappa, &big).map_err(err)?.value;
                        int((cont * avoid) as i64)
                    } else {
                        rational::zero()
                    };
                    ensure(a[w][k] == rhs, || format!("A[{omega},{kappa}] = {} vs {rhs}", a[w][k]))?;
                }
            }
            let checks = hecke::verify_cell_idem(alg);
            let gated = checks.iter().find(|c| c.check == "cell-idem.gated").map(|c| c.witness["pairs"].clone());
            ensure(gated == Some(serde_json::json!([])), || format!("gated pairs: {gated:?}"))?;
            all_pass(&checks)
        })?;
    }
    Ok(())
}

fn equivariance() -> Outcome {
    for (inst, phi) in instances() {
        with_algebra(&inst, &phi, |alg| {
            let ps = alg.generator_matrices().map_err(|e| e.to_string())?;
            ensure(!ps.is_empty(), || "no generators".into())?;
            for g in alg.geometric_basis() {
                let m = alg.matrix(&g);
                for p in &ps {
                    ensure(p.mul(&m).unwrap() == m.mul(p).unwrap(), || "generator does not commute with g".into())?;
                }
            }
            let modules: Vec<HeckeModule> = alg
                .types()
                .iter()
                .map(|nu| HeckeModule::new(alg, nu))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            for module in &modules {
                let qs = module.generator_matrices().map_err(|e| e.to_string())?;
                for i in 0..module.dim() {
                    let m = module.matrix(&module.G(i));
                    for (p, q) in ps.iter().zip(&qs) {
                        ensure(p.mul(&m).unwrap() == m.mul(q).unwrap(), || {
                            format!("generator breaks G_{i} in N_{}", module.nu())
                        })?;
                    }
                }
            }
            all_pass(&hecke::verify_equivariance(alg, &modules))
        })?;
    }
    Ok(())
}

fn groups() -> Outcome {
    for (inst, want) in [(Instance::sets(3), 6), (Instance::field(2, 3), 168), (Instance::chain_ring(2, 2, 2), 96)] {
        let amb = Ambient::new(inst.clone()).map_err(|e| e.to_string())?;
        let order = group_order(amb.num_points(), amb.generator_points(), 1_000_000).map_err(|e| e.to_string())?;
        ensure(order == want, || format!("|Aut({inst})| = {order}, want {want}"))?;
    }
    Ok(())
}

fn run_cli(args: &[&str], out: &Path, cache: &Path) -> Result<Vec<u8>, String> {
    let status = Command::new(env!("CARGO_BIN_EXE_hecke"))
        .args(args)
        .arg("--out")
        .arg(out)
        .arg("--cache")
        .arg(cache)
        .stderr(Stdio::null())
        .status()
        .map_err(|e| e.to_string())?;
    ensure(status.code() == Some(0), || format!("{args:?} exited with {status}"))?;
    std::fs::read(out).map_err(|e| e.to_string())
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let runs: [&[&str]; 3] = [
        &["verify", "--suite", "all", "--instance", "sets", "--n", "6", "--m", "3"],
        &[
            "verify",
            "--suite",
            "all",
            "--instance",
            "chain-ring",
            "--p",
            "2",
            "--k",
            "1",
            "--n",
            "4",
            "--m-type",
            "1,1",
        ],
        &["verify", "--suite", "all", "--instance", "chain-ring", "--p", "2", "--k", "2", "--n", "2", "--m-type", "2"],
    ];
    for args in runs {
        for format in ["json", "md"] {
            let args: Vec<&str> = args.iter().copied().chain(["--format", format]).collect();
            let out = dir.path().join("report");
            let cache = dir.path().join(format!("cache-{format}"));
            let cold = run_cli(&args, &out, &cache)?;
            let warm = run_cli(&args, &out, &cache)?;
            ensure(!cold.is_empty() && cold == warm, || format!("{args:?}: reports differ between runs"))?;
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("mobius values on F_q^d and the pushed-forward mu", mobius),
        ("avoid formula equals brute force; closed form at (4,1,2,1,2) flagged", counting),
        ("Hecke algebra structure: commuting g, dimensions, round trips, cellalg parts 1-2", structure),
        ("idempotents, ranks and multiplicities", idempotents),
        ("cell modules: idempotent images and orbit counts", cellmod),
        ("cell-idem A-matrix", cell_idem),
        ("equivariance of generator permutation matrices", equivariance),
        ("group orders 6, 168, 96", groups),
        ("byte-identical verify reports", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(()) => println!("criterion {}: PASS  {name}", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {e}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
