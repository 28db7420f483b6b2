use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1, got {0}")]
    BadDegree(u32),
    #[error("field GF({p}^{k}) exceeds the supported size 2^16")]
    FieldTooLarge { p: u32, k: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrices are over different fields")]
    FieldMismatch,
    #[error("matrix dimension {0} outside 1..=4")]
    BadDimension(usize),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("element cap of {cap} exceeded while enumerating")]
    CapExceeded { cap: usize },
    #[error("generators are of incompatible kinds or shapes")]
    IncompatibleGenerators,
    #[error("empty generator list")]
    NoGenerators,
    #[error("element is not in the group")]
    NotAMember,
    #[error("subgroups belong to different parent groups")]
    ParentMismatch,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("member set is not closed under multiplication")]
    NotASubgroup,
    #[error("generator image count {got} does not match {expected} generators")]
    ImageCount { expected: usize, got: usize },
    #[error("not a homomorphism: domain element #{witness} acquires two images")]
    NotAHomomorphism { witness: u32 },
    #[error("map is not bijective")]
    NotBijective,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("morphism does not map N1 into N2")]
    NotAPairMorphism,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl GroupError {
    /// True for failures that indicate a broken invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, GroupError::Invariant(_))
    }
}

pub type Result<T, E = GroupError> = std::result::Result<T, E>;
