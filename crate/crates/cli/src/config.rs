use ccr_hopf::algebra::{Basis, Variant};
use ccr_hopf::hopf::Flavor;
use ccr_hopf::Execution;
use serde::{Deserialize, Serialize};

pub const SEED_ENV: &str = "CCR_HOPF_SEED";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum VariantArg {
    Undeformed,
    /// Same as `collapsed`.
    Deformed,
    Strict,
    Collapsed,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Undeformed => Variant::Undeformed,
            VariantArg::Deformed | VariantArg::Collapsed => Variant::DeformedCollapsed,
            VariantArg::Strict => Variant::DeformedStrict,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum BasisArg {
    PhiPi,
    Ladder,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Basis {
        match b {
            BasisArg::PhiPi => Basis::PhiPi,
            BasisArg::Ladder => Basis::Ladder,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum FlavorArg {
    Classical,
    Deformed,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Flavor {
        match f {
            FlavorArg::Classical => Flavor::Classical,
            FlavorArg::Deformed => Flavor::Deformed,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ExecutionArg {
    Parallel,
    Sequential,
}

impl From<ExecutionArg> for Execution {
    fn from(e: ExecutionArg) -> Execution {
        match e {
            ExecutionArg::Parallel => Execution::Parallel,
            ExecutionArg::Sequential => Execution::Sequential,
        }
    }
}

/// Options shared by every subcommand, echoed into the report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, clap::Args)]
pub struct CommandConfig {
    #[arg(long, value_enum, default_value_t = VariantArg::Undeformed, global = true)]
    pub variant: VariantArg,
    #[arg(long, value_enum, default_value_t = BasisArg::PhiPi, global = true)]
    pub basis: BasisArg,
    /// Keep `I*I` unreduced (defaults on for strict only).
    #[arg(long, global = true)]
    pub free_unit: bool,
    #[arg(long, default_value_t = 2, global = true)]
    pub d: usize,
    #[arg(long, default_value_t = 10, global = true)]
    pub nmax: u32,
    /// Numeric deformation parameter; symbolic `kappa`, `s` when absent.
    #[arg(long, global = true)]
    pub q: Option<f64>,
    #[arg(long, global = true)]
    pub c: Option<f64>,
    /// Degree bound for Hopf checks.
    #[arg(long, default_value_t = 3, global = true)]
    pub degree: usize,
    /// Mode window for Hopf checks.
    #[arg(long, default_value_t = 2, global = true)]
    pub modes: u32,
    #[arg(long, value_enum, default_value_t = FlavorArg::Classical, global = true)]
    pub flavor: FlavorArg,
    /// JSON file with the Gram matrix as rows of numbers or scalar strings.
    #[arg(long, global = true)]
    pub gram: Option<String>,
    /// Overridden by the CCR_HOPF_SEED environment variable when it is set.
    #[arg(long, default_value_t = 42, global = true)]
    pub seed: u64,
    #[arg(long, default_value_t = 100_000, global = true)]
    pub samples: usize,
    #[arg(long, global = true)]
    pub output: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[arg(long, value_enum, default_value_t = ExecutionArg::Parallel, global = true)]
    pub execution: ExecutionArg,
}

impl Default for CommandConfig {
    fn default() -> Self {
        CommandConfig {
            variant: VariantArg::Undeformed,
            basis: BasisArg::PhiPi,
            free_unit: false,
            d: 2,
            nmax: 10,
            q: None,
            c: None,
            degree: 3,
            modes: 2,
            flavor: FlavorArg::Classical,
            gram: None,
            seed: 42,
            samples: 100_000,
            output: None,
            format: Format::Json,
            execution: ExecutionArg::Parallel,
        }
    }
}
