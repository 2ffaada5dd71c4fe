use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("bound exceeded: {what} needs {needed}, limit is {limit}")]
    BoundExceeded {
        what: &'static str,
        needed: u64,
        limit: u64,
    },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("core of the point stabilizer is not trivial (order {core_order})")]
    NotCoreFree { core_order: usize },
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("map is not surjective: {0}")]
    NotSurjective(String),
    #[error("not a complement: {0}")]
    NotAComplement(String),
    #[error("not a normal complement: {0}")]
    NotNormalComplement(String),
    #[error("subgroup is not characteristic in the complement")]
    NotCharacteristic,
    #[error("centre of the group is not trivial (order {0})")]
    CenterNotTrivial(usize),
    #[error("no rational point: phi restricted to the section is not trivial")]
    NoRationalPoint,
    #[error("group is not simple: {0}")]
    NotSimple(String),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("no generating tuple with product one in the given classes")]
    EmptyTupleSet,
    #[error("exponent {exponent} is not coprime to {modulus}")]
    BadExponent { exponent: i64, modulus: u64 },
    #[error("class tuple is not weakly rational for exponent {0}")]
    NotWeaklyRational(u64),
    #[error("invalid model: {0}")]
    InvalidModel(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Variant name, used as the machine-readable error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::BoundExceeded { .. } => "BoundExceeded",
            Error::InvalidPermutation(_) => "InvalidPermutation",
            Error::DegreeMismatch { .. } => "DegreeMismatch",
            Error::NotSubgroup(_) => "NotSubgroup",
            Error::NotNormal(_) => "NotNormal",
            Error::NotCoreFree { .. } => "NotCoreFree",
            Error::NotAHomomorphism(_) => "NotAHomomorphism",
            Error::NotSurjective(_) => "NotSurjective",
            Error::NotAComplement(_) => "NotAComplement",
            Error::NotNormalComplement(_) => "NotNormalComplement",
            Error::NotCharacteristic => "NotCharacteristic",
            Error::CenterNotTrivial(_) => "CenterNotTrivial",
            Error::NoRationalPoint => "NoRationalPoint",
            Error::NotSimple(_) => "NotSimple",
            Error::HypothesisFailed(_) => "HypothesisFailed",
            Error::EmptyTupleSet => "EmptyTupleSet",
            Error::BadExponent { .. } => "BadExponent",
            Error::NotWeaklyRational(_) => "NotWeaklyRational",
            Error::InvalidModel(_) => "InvalidModel",
        }
    }
}
