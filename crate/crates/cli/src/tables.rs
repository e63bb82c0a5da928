//! The `table` subcommand.

use hecke_core::ambient::Ambient;
use hecke_core::counting::Counter;
use hecke_core::hecke::{HeckeAlgebra, HeckeModule};
use hecke_core::rational;
use serde::Serialize;

use crate::config::{RunConfig, TableKind};
use crate::driver::CountLedger;
use crate::CliError;

/// Entry `values[i][j]` belongs to row label `rows[i]` and column label `cols[j]`.
#[derive(Debug, Clone, Serialize)]
pub struct TableReport {
    pub config: RunConfig,
    pub table: TableKind,
    pub cache_hash: Option<String>,
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub values: Vec<Vec<String>>,
}

pub fn table(config: &RunConfig, what: TableKind) -> Result<TableReport, CliError> {
    let amb = Ambient::with_caps(config.instance.clone(), config.caps())?;
    let counter = Counter::new(&amb);
    let mut ledger = CountLedger::open(config)?;
    let names = |ts: &[hecke_core::ambient::IsoType]| ts.iter().map(|t| t.to_string()).collect::<Vec<_>>();
    let (rows, values) = match what {
        TableKind::Mobius => {
            let (types, _, mu) = counter.hat_functions(&amb.instance().top_type())?;
            let values =
                (0..types.len()).map(|a| (0..types.len()).map(|b| rational::format(&mu.get(a, b))).collect()).collect();
            (names(&types), values)
        }
        TableKind::Counts => {
            let counts = ledger.record_subobject_counts(&counter)?;
            let values = counts.iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect();
            (names(amb.types()), values)
        }
        TableKind::Spectral => {
            let alg = HeckeAlgebra::new(&amb, config.phi()?)?;
            let t = alg.spectral_table()?;
            (t.types, t.values)
        }
        TableKind::AMatrix => {
            let alg = HeckeAlgebra::new(&amb, config.phi()?)?;
            let a = alg.a_matrix()?;
            (names(alg.types()), a.iter().map(|r| r.iter().map(rational::format).collect()).collect())
        }
        TableKind::Multiplicities => {
            let alg = HeckeAlgebra::new(&amb, config.phi()?)?;
            let es = alg.idempotents()?;
            let mut values = vec![Vec::new(); es.len()];
            for nu in alg.types() {
                let module = HeckeModule::new(&alg, nu)?;
                for (row, e) in values.iter_mut().zip(&es) {
                    row.push(module.image_rank(e)?.to_string());
                }
            }
            (names(alg.types()), values)
        }
    };
    ledger.save(config)?;
    Ok(TableReport {
        config: config.clone(),
        table: what,
        cache_hash: ledger.hash(config),
        cols: rows.clone(),
        rows,
        values,
    })
}
