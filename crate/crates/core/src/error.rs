use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown irrep label `{0}`")]
    UnknownLabel(String),

    #[error("fusion table has no entry for `{a}` ⊗ `{b}`")]
    MissingFusion { a: String, b: String },

    #[error("fusion of mixed words is not supported (`{0}`); only powers of g or of ḡ fuse")]
    MixedWord(String),

    #[error("decomposition support of {size} entries exceeds the cap of {cap}")]
    SupportLimit { size: usize, cap: usize },

    #[error("multiplicity overflow while decomposing `{0}`")]
    Overflow(String),

    #[error("invalid fusion table: {0}")]
    InvalidTable(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("no j*j spectrum available for `{0}`")]
    MissingSpectrum(String),

    #[error("spectrum recursion failed at `{label}`: {detail}")]
    SpectrumSubtraction { label: String, detail: String },

    #[error("`{0}` is not spectral for this action")]
    NotSpectral(String),

    #[error("empty spectrum")]
    EmptySpectrum,

    #[error("no spectral irrep with d(u) > dim(u); the type III bound is vacuous (see the Kac bound)")]
    NoQualifyingIrrep,

    #[error("base model is not of Kac type")]
    NotKac,

    #[error("action is tracial; the Kac bound is meaningless")]
    Tracial,

    #[error("correspondence is not fusion-preserving: {0}")]
    NotFusionPreserving(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{context}: {source}")]
    Json {
        context: String,
        #[source]
        source: serde_json::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
