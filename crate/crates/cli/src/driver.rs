//! Suite execution and report assembly.

use hecke_core::ambient::{Ambient, Instance};
use hecke_core::cache::{CountEntry, CountTable, Provenance};
use hecke_core::counting::{check_field_identity, gauss_binom, verify_mobius_field, Counter};
use hecke_core::error::Error;
use hecke_core::hecke::{self, HeckeAlgebra, HeckeModule};
use hecke_core::poset::{is_delta, IncidenceFunction, Poset};
use hecke_core::report::{Check, Status};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::config::{fourier_dims, RunConfig, Suite};
use crate::CliError;

#[derive(Debug, Clone, Serialize)]
pub struct ReportCheck {
    pub check: String,
    pub instance: Instance,
    pub status: Status,
    pub lhs: Value,
    pub rhs: Value,
    pub witness: Value,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub discrepancy: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub config: RunConfig,
    /// SHA-256 of the count entries this run used, if a cache was given.
    pub cache_hash: Option<String>,
    pub complete: bool,
    pub summary: Summary,
    pub checks: Vec<ReportCheck>,
}

impl Report {
    pub fn failed(&self) -> bool {
        self.summary.fail > 0
    }
}

/// Brute-force counts gathered during a run, reconciled with the on-disk cache.
pub struct CountLedger {
    used: Vec<CountEntry>,
    table: Option<CountTable>,
}

impl CountLedger {
    pub fn open(config: &RunConfig) -> Result<Self, CliError> {
        let table = config.cache.as_deref().map(|dir| CountTable::load(dir, &config.instance)).transpose()?;
        Ok(CountLedger { used: Vec::new(), table })
    }

    pub fn record(&mut self, entry: CountEntry) -> Result<(), Error> {
        if let Some(t) = &mut self.table {
            t.insert(entry.clone())?;
        }
        if let Err(pos) = self.used.binary_search(&entry) {
            self.used.insert(pos, entry);
        }
        Ok(())
    }

    /// `count_sub(beta, alpha)` for every `alpha <= beta` below the top type,
    /// plus the Gaussian binomial where the ambient object is a vector space.
    pub fn record_subobject_counts(&mut self, counter: &Counter) -> Result<Vec<Vec<u64>>, Error> {
        let amb = counter.ambient();
        let types = amb.types();
        let mut table = vec![vec![0; types.len()]; types.len()];
        for (b, beta) in types.iter().enumerate() {
            for (a, alpha) in types.iter().enumerate().filter(|(_, a)| a.leq(beta)) {
                let v = counter.count_sub(beta, alpha)?;
                table[a][b] = v;
                let key = ["count_sub".to_string(), beta.to_string(), alpha.to_string()];
                let key: Vec<&str> = key.iter().map(String::as_str).collect();
                self.record(CountEntry::new(&key, v, Provenance::BruteForce))?;
                if let Instance::ChainRing { p, k: 1, .. } = amb.instance() {
                    let closed = gauss_binom(beta.size() as i64, alpha.size() as i64, *p as u64);
                    self.record(CountEntry::new(&key, closed, Provenance::ClosedForm))?;
                }
            }
        }
        Ok(table)
    }

    pub fn save(&self, config: &RunConfig) -> Result<(), CliError> {
        if let (Some(t), Some(dir)) = (&self.table, config.cache.as_deref()) {
            t.save(dir)?;
        }
        Ok(())
    }

    pub fn hash(&self, config: &RunConfig) -> Option<String> {
        config.cache.as_ref()?;
        let bytes = serde_json::to_vec(&self.used).expect("count entries serialize");
        Some(hex::encode(Sha256::digest(bytes)))
    }
}

fn poset_suite(amb: &Ambient) -> Result<Vec<Check>, Error> {
    let mut out = Vec::new();
    for (name, p) in [("lattice", amb.lattice()), ("types", amb.type_poset())] {
        let zeta = IncidenceFunction::zeta(p);
        let mu = IncidenceFunction::mobius(p);
        out.push(Check::holds(format!("poset.{name}.zeta-mu"), is_delta(&zeta.convolve(&mu)?)));
        out.push(Check::holds(format!("poset.{name}.mu-zeta"), is_delta(&mu.convolve(&zeta)?)));
        out.push(Check::holds(format!("poset.{name}.round-trip"), Poset::from_doc(&p.to_doc())? == **p));
    }
    out.push(Check::holds("poset.lattice.meet-semilattice", amb.lattice().is_meet_semilattice()));
    out.push(Check::eq("poset.lattice.bottom", amb.lattice().bottom(), Some(amb.zero())));
    if let Instance::ChainRing { p, k: 1, n } = *amb.instance() {
        out.extend(verify_mobius_field(p, n, *amb.caps())?);
    }
    Ok(out)
}

fn counting_suite(amb: &Ambient, counter: &Counter, ledger: &mut CountLedger) -> Result<Vec<Check>, Error> {
    let mut out = Vec::new();
    let cache = ledger.record_subobject_counts(counter);
    out.push(match cache {
        Ok(_) => Check::holds("counts.cache-agreement", true),
        Err(e @ Error::CacheConflict(_)) => Check::error("counts.cache-agreement", &e),
        Err(e) => return Err(e),
    });
    let mut dual = Vec::new();
    for ty in amb.types() {
        if !counter.check_duality(ty)? {
            dual.push(ty.to_string());
        }
    }
    out.push(Check::eq("counts.duality", dual, Vec::<String>::new()).with_witness(amb.types().len()));
    out.extend(counter.verify_avoid(&amb.instance().top_type())?);
    if let Instance::ChainRing { p, k: 1, n } = *amb.instance() {
        for m in 0..=n {
            for l in m..=n {
                for k in 0..=n - l {
                    out.extend(check_field_identity(n, m, l, k, p, *amb.caps())?.checks());
                }
            }
        }
    }
    Ok(out)
}

/// Runs `f`, turning errors other than cap overruns into failed checks.
fn attempt(name: &str, out: &mut Vec<Check>, f: impl FnOnce() -> Result<Vec<Check>, Error>) -> Result<(), Error> {
    match f() {
        Ok(checks) => out.extend(checks),
        Err(e @ Error::CapExceeded { .. }) => return Err(e),
        Err(e) => out.push(Check::error(name, &e)),
    }
    Ok(())
}

fn run_suites(config: &RunConfig, ledger: &mut CountLedger, out: &mut Vec<Check>) -> Result<(), Error> {
    let amb = Ambient::with_caps(config.instance.clone(), config.caps())?;
    let counter = Counter::new(&amb);
    let has = |s| config.suites.contains(&s);
    if has(Suite::Poset) {
        attempt("poset", out, || poset_suite(&amb))?;
    }
    if has(Suite::Counting) {
        attempt("counting", out, || counting_suite(&amb, &counter, ledger))?;
    }
    let Some(phi) = config.phi_type.as_ref().filter(|_| config.suites.iter().any(|s| s.needs_phi())) else {
        return Ok(());
    };
    let alg = HeckeAlgebra::new(&amb, phi)?;
    if has(Suite::Hecke) {
        out.extend(hecke::verify_geometric(&alg));
        out.extend(hecke::verify_cellular(&alg));
        out.extend(hecke::verify_idempotents(&alg));
        out.extend(hecke::verify_compo(&alg));
    }
    if has(Suite::Cellalg) {
        out.extend(hecke::verify_cellalg(&alg));
    }
    if has(Suite::CellIdem) {
        out.extend(hecke::verify_cell_idem(&alg));
    }
    if has(Suite::Hecke) || has(Suite::Cellmod) || has(Suite::Multiplicities) {
        let modules = alg.types().iter().map(|nu| HeckeModule::new(&alg, nu)).collect::<Result<Vec<_>, _>>()?;
        for m in &modules {
            if has(Suite::Cellmod) {
                out.extend(hecke::verify_cellmod(m));
            }
            if has(Suite::Multiplicities) {
                out.extend(hecke::verify_multiplicities(m));
            }
        }
        if has(Suite::Hecke) {
            out.extend(hecke::verify_equivariance(&alg, &modules));
        }
    }
    if has(Suite::Fourier) {
        if let Some((n, m, q)) = fourier_dims(&config.instance, Some(phi)) {
            attempt("fourier", out, || Ok(hecke::fourier_report_field(n, m, q, config.caps())?.checks))?;
        }
    }
    Ok(())
}

/// Runs every selected suite. A cap overrun stops the run and yields a
/// partial report with `complete: false`.
pub fn verify(config: &RunConfig) -> Result<Report, CliError> {
    let mut ledger = CountLedger::open(config)?;
    let mut checks = Vec::new();
    let complete = match run_suites(config, &mut ledger, &mut checks) {
        Ok(()) => true,
        Err(e @ Error::CapExceeded { .. }) => {
            checks.push(Check::error("caps", &e));
            false
        }
        Err(e) => {
            checks.push(Check::error("setup", &e));
            true
        }
    };
    ledger.save(config)?;
    let mut summary = Summary::default();
    for c in &checks {
        match c.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::Discrepancy => summary.discrepancy += 1,
        }
    }
    let checks = checks
        .into_iter()
        .map(|c| ReportCheck {
            check: c.check,
            instance: config.instance.clone(),
            status: c.status,
            lhs: c.lhs,
            rhs: c.rhs,
            witness: c.witness,
        })
        .collect();
    Ok(Report { config: config.clone(), cache_hash: ledger.hash(config), complete, summary, checks })
}
