//! Command-line arguments and the validated run configuration.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hecke_core::ambient::{Caps, Instance, IsoType};
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "hecke", version, about = "Exact verification of Hecke algebras on Grassmannians of finite modules")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run verification suites and write a report.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated suites.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        suite: Vec<Suite>,
    },
    /// Compute one table and write it.
    Table {
        what: TableKind,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InstanceKind {
    Sets,
    ChainRing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Poset,
    Counting,
    Hecke,
    Cellalg,
    Cellmod,
    Multiplicities,
    CellIdem,
    Fourier,
    All,
}

impl Suite {
    pub fn needs_phi(self) -> bool {
        !matches!(self, Suite::Poset | Suite::Counting)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableKind {
    Mobius,
    Counts,
    Spectral,
    AMatrix,
    Multiplicities,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Json,
    Md,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    #[arg(long, value_enum)]
    pub instance: InstanceKind,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub n: u32,
    /// Subset size of `phi` (sets).
    #[arg(long)]
    pub m: Option<u32>,
    /// Partition type of `phi`, as comma-separated parts (chain rings).
    #[arg(long = "m-type")]
    pub m_type: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub cache: Option<PathBuf>,
    /// Treat discrepancies as failures.
    #[arg(long)]
    pub strict: bool,
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_lattice: u64,
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_group: u64,
}

/// Everything that determines a run; embedded verbatim in every report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub instance: Instance,
    pub phi: Option<String>,
    pub suites: Vec<Suite>,
    pub max_lattice: usize,
    pub max_group: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub cache: Option<PathBuf>,
    pub strict: bool,
    #[serde(skip)]
    pub phi_type: Option<IsoType>,
}

impl RunConfig {
    pub fn new(args: &CommonArgs, suites: &[Suite]) -> Result<Self, CliError> {
        let usage = |m: &str| CliError::Usage(m.to_string());
        let instance = match args.instance {
            InstanceKind::Sets => {
                if args.p.is_some() || args.k.is_some() || args.m_type.is_some() {
                    return Err(usage("--p, --k and --m-type apply to chain-ring instances"));
                }
                Instance::sets(args.n)
            }
            InstanceKind::ChainRing => {
                if args.m.is_some() {
                    return Err(usage("chain-ring instances take --m-type, not --m"));
                }
                let p = args.p.ok_or_else(|| usage("chain-ring instances need --p"))?;
                let k = args.k.ok_or_else(|| usage("chain-ring instances need --k"))?;
                Instance::chain_ring(p, k, args.n)
            }
        };
        instance.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        let phi_text = match args.instance {
            InstanceKind::Sets => args.m.map(|m| m.to_string()),
            InstanceKind::ChainRing => args.m_type.clone(),
        };
        let phi_type = phi_text
            .as_deref()
            .map(|s| instance.parse_type(s))
            .transpose()
            .map_err(|e| CliError::Usage(e.to_string()))?;

        let mut suites: Vec<Suite> = if suites.contains(&Suite::All) {
            let mut all = vec![
                Suite::Poset,
                Suite::Counting,
                Suite::Hecke,
                Suite::Cellalg,
                Suite::Cellmod,
                Suite::Multiplicities,
                Suite::CellIdem,
            ];
            if fourier_dims(&instance, phi_type.as_ref()).is_some() {
                all.push(Suite::Fourier);
            }
            all
        } else {
            suites.to_vec()
        };
        suites.sort_unstable();
        suites.dedup();
        if phi_type.is_none() && suites.iter().any(|s| s.needs_phi()) {
            return Err(usage("the selected suites need a type: --m (sets) or --m-type (chain-ring)"));
        }
        if suites.contains(&Suite::Fourier) && fourier_dims(&instance, phi_type.as_ref()).is_none() {
            return Err(usage(
                "the fourier suite needs a field instance (chain-ring with --k 1) and --m-type 1,..,1 with n >= 2m",
            ));
        }
        Ok(RunConfig {
            instance,
            phi: phi_type.as_ref().map(|t| t.to_string()),
            suites,
            max_lattice: args.max_lattice as usize,
            max_group: args.max_group as usize,
            format: args.format,
            out: args.out.clone(),
            cache: args.cache.clone(),
            strict: args.strict,
            phi_type,
        })
    }

    pub fn caps(&self) -> Caps {
        Caps { max_lattice: self.max_lattice, max_group: self.max_group, ..Caps::default() }
    }

    pub fn phi(&self) -> Result<&IsoType, CliError> {
        self.phi_type
            .as_ref()
            .ok_or_else(|| CliError::Usage("a type is required: --m (sets) or --m-type (chain-ring)".into()))
    }
}

/// `(n, m, q)` when the instance is `F_q^n` and `phi` has dimension `m <= n / 2`.
pub fn fourier_dims(inst: &Instance, phi: Option<&IsoType>) -> Option<(u32, u32, u32)> {
    let (Instance::ChainRing { p, k: 1, n }, Some(phi)) = (inst, phi) else { return None };
    let m = phi.size();
    (2 * m <= *n).then_some((*n, m, *p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig, CliError> {
        let cli = Cli::try_parse_from(["hecke", "verify"].iter().chain(args)).unwrap();
        let Command::Verify { common, suite } = cli.command else { unreachable!() };
        RunConfig::new(&common, &suite)
    }

    #[test]
    fn all_expands_by_instance() {
        let sets = parse(&["--instance", "sets", "--n", "6", "--m", "3"]).unwrap();
        assert!(!sets.suites.contains(&Suite::Fourier) && sets.suites.len() == 7);
        let field =
            parse(&["--instance", "chain-ring", "--p", "2", "--k", "1", "--n", "4", "--m-type", "1,1"]).unwrap();
        assert_eq!(field.suites.last(), Some(&Suite::Fourier));
        assert_eq!(field.phi.as_deref(), Some("(1,1)"));
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(matches!(parse(&["--instance", "sets", "--n", "6"]), Err(CliError::Usage(_))));
        assert!(matches!(parse(&["--instance", "sets", "--n", "6", "--m-type", "2"]), Err(CliError::Usage(_))));
        assert!(matches!(
            parse(&["--instance", "chain-ring", "--p", "4", "--k", "1", "--n", "2"]),
            Err(CliError::Usage(_))
        ));
        assert!(parse(&["--instance", "sets", "--n", "6", "--suite", "poset,counting"]).is_ok());
    }
}
