use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown or unsupported simple type: {0}")]
    UnknownType(String),
    #[error("invalid isogeny specification: {0}")]
    BadIsogeny(String),
    #[error("characteristic {p} is special for type {label}{rank}")]
    SpecialCharacteristic { label: char, rank: usize, p: u64 },
    #[error("invalid field: {0}")]
    BadField(String),
    #[error("elements live over different fields")]
    FieldMismatch,
    #[error("weight is not in the character lattice of this isogeny form: {0}")]
    WeightNotInLattice(String),
    #[error("weight is not dominant: {0}")]
    NotDominant(String),
    #[error("weight is not restricted for p = {p}: {weight}")]
    NotRestricted { weight: String, p: u64 },
    #[error("module dimension {dim} exceeds cap {cap}")]
    DimCap { dim: usize, cap: usize },
    #[error("p-th power of the action matrix is not in the image of the representation")]
    PPowerOutsideImage,
    #[error("invalid partition {partition} for {algebra}")]
    BadPartition { partition: String, algebra: String },
    #[error("enumeration cap exceeded: {0}")]
    EnumerationCap(String),
    #[error("serialization error: {0}")]
    Serialization(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
