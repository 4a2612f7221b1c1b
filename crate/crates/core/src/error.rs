use num_bigint::BigInt;

/// Errors reported by constructors and operations with mathematical
/// preconditions. Shape violations of plain matrix arithmetic panic instead,
/// as they indicate programming errors rather than bad data.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invariant factors must be >= 2 and form a divisibility chain, got {0:?}")]
    BadInvariantFactors(Vec<BigInt>),

    #[error("matrix does not respect the relations of the source group (generator {0})")]
    IllDefinedHom(usize),

    #[error("operation requires a finite group, but the group has free rank {0}")]
    NotFinite(usize),

    #[error("pairing values are not annihilated by the generator orders")]
    NotBilinear,

    #[error("matrix is singular; the uniformization datum must have det(u) != 0")]
    SingularDatum,

    #[error("level {0} does not annihilate the component group")]
    LevelTooSmall(BigInt),

    #[error("graph is not connected")]
    Disconnected,

    #[error("residue moduli differ: {0} vs {1}")]
    ModulusMismatch(BigInt, BigInt),

    #[error("modulus must be >= 1, got {0}")]
    BadModulus(BigInt),

    #[error("the given endomorphism is not an automorphism")]
    NotAutomorphism,

    #[error("consecutive differentials do not compose to zero (degree {0})")]
    NotAComplex(i64),

    #[error("double complex squares do not commute at (p, q) = ({0}, {1})")]
    NotBicomplex(i64, i64),

    #[error("sequence is not degreewise short exact: {0}")]
    NotExact(String),

    #[error("cochain degree {0} not supported here (max {1})")]
    DegreeOutOfRange(usize, usize),

    #[error("covering data incomplete or inconsistent: {0}")]
    BadCovering(String),
}

pub type Result<T> = std::result::Result<T, Error>;
