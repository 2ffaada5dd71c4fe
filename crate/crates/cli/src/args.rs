use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Pre-Galois analysis of finite extensions modelled by permutation groups.
///
/// Groups are read from group files (1-based cycle notation) or taken from
/// the built-in catalog by name, e.g. `S4`, `A5`, `D8`, `reg:S3`.
#[derive(Parser, Debug, Clone)]
#[command(name = "pregal", version)]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Largest group closure may build; overrides PREGAL_MAX_ELEMENTS.
    #[arg(long, global = true)]
    pub max_elements: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Complements of the stabilizer, potential and pre-Galois groups.
    Analyze(ModelArgs),
    /// List complements of the stabilizer.
    Complements(ComplementArgs),
    /// Subgroup correspondence for each complement.
    Correspondence(CorrespondenceArgs),
    /// Regular subgroups normalized by the translation image.
    Hopf(ModelArgs),
    /// Twisted cover of an arithmetic scenario and its kernel identity.
    Twist(ScenarioArgs),
    /// Fibre of an arithmetic scenario over its rational point.
    Specialize(SpecializeArgs),
    /// Normalizer quotient against Out(G), and the group of the field of moduli.
    Moduli(ModuliArgs),
    /// Rigidity and rationality checks for a class tuple.
    Rigidity(RigidityArgs),
    /// Catalog groups and scenarios.
    Catalog(CatalogArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Analyze(_) => "analyze",
            Command::Complements(_) => "complements",
            Command::Correspondence(_) => "correspondence",
            Command::Hopf(_) => "hopf",
            Command::Twist(_) => "twist",
            Command::Specialize(_) => "specialize",
            Command::Moduli(_) => "moduli",
            Command::Rigidity(_) => "rigidity",
            Command::Catalog(_) => "catalog",
        }
    }
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ModelArgs {
    /// Group file or catalog name for Γ.
    #[arg(long)]
    pub gamma: String,
    /// Γ_E is the stabilizer of this 1-based point (default 1).
    #[arg(long, conflicts_with_all = ["sub", "sub_gens"])]
    pub stab: Option<usize>,
    /// Γ_E is this named subgroup block of the group file.
    #[arg(long, conflicts_with = "sub_gens")]
    pub sub: Option<String>,
    /// Γ_E generated by these permutations, separated by ';'.
    #[arg(long)]
    pub sub_gens: Option<String>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ComplementArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    /// Only normal complements.
    #[arg(long)]
    pub normal: bool,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CorrespondenceArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    /// Only the complement with this 1-based index in the `complements` listing.
    #[arg(long)]
    pub complement: Option<usize>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ScenarioArgs {
    /// Built-in scenario name or a JSON scenario file.
    #[arg(long)]
    pub scenario: String,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SpecializeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub scenario: ScenarioArgs,
    /// Use the original cover instead of the twisted one.
    #[arg(long)]
    pub untwisted: bool,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ModuliArgs {
    /// Group file or catalog name for G.
    #[arg(long)]
    pub group: String,
    /// Normalizing permutation giving the Galois action of a cyclic quotient.
    #[arg(long)]
    pub action: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EmbeddingArg {
    Regular,
    Natural,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct RigidityArgs {
    /// Group file or catalog name for G.
    #[arg(long)]
    pub group: String,
    /// Comma-separated class labels, e.g. 2A,3A,5A.
    #[arg(long)]
    pub classes: String,
    #[arg(long, value_enum, default_value_t = EmbeddingArg::Regular)]
    pub embedding: EmbeddingArg,
    /// `all` or a comma-separated list of integers coprime to the tuple exponent.
    #[arg(long, default_value = "all")]
    pub exponents: String,
    /// Vouch that the base field has cohomological dimension at most one.
    #[arg(long)]
    pub cd_le_one: bool,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CatalogArgs {
    /// Describe one group instead of listing the catalog.
    pub name: Option<String>,
}
