use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum KernelError {
    #[error("fuel exhausted ({0})")]
    FuelExhausted(&'static str),
    #[error("unbound variable #{0}")]
    UnboundVar(usize),
    #[error("unknown constant `{0}`")]
    UnknownConst(String),
    #[error("`{term}` has type `{ty}`, which is not a product")]
    NotAFunction { term: String, ty: String },
    #[error("sort error: {0}")]
    SortError(String),
    #[error("Kind has no type")]
    UntypableKind,
    #[error("type mismatch for `{term}`: expected `{expected}`, found `{found}`")]
    TypeMismatch {
        term: String,
        expected: String,
        found: String,
    },
}

impl KernelError {
    pub fn is_fuel(&self) -> bool {
        matches!(self, KernelError::FuelExhausted(_))
    }
}

pub type KResult<T> = Result<T, KernelError>;
