use thiserror::Error;

/// Every failure the library can report.
///
/// Variants are grouped by the layer that raises them. Math-domain failures
/// (a violated precondition of an operation) are distinguished from parse
/// failures so that front ends can map them to different exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // series kernel
    #[error("series has zero constant term and cannot be inverted")]
    ZeroConstantTerm,
    #[error("composition with an inner series of order 0 does not converge")]
    DivergentComposition,
    #[error("series must have order exactly 1 (f(0)=0, f'(0)!=0)")]
    NotOrderOne,
    #[error("square root requires even order")]
    OddOrder,
    #[error("leading coefficient {0} is not the square of a rational")]
    NonSquareLeadingCoefficient(String),
    #[error("all stored coefficients are zero; order cannot be certified")]
    IndeterminateOrder,
    #[error("bad constant term: {0}")]
    BadConstantTerm(&'static str),
    #[error("series must vanish at 0")]
    NonzeroConstant,
    #[error("half-series has a nonzero coefficient at z^({half_exponent}/2)")]
    NonIntegralHalfSeries { half_exponent: usize },
    #[error("insufficient precision: need {needed}, have {available}")]
    InsufficientPrecision { needed: usize, available: usize },
    #[error("Laurent polynomial has negative exponent {0} where a power series is required")]
    NegativeExponent(i64),
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("cannot divide by z^{0}: a lower coefficient is nonzero")]
    NotDivisible(usize),

    // Riordan arrays
    #[error("Riordan arrays have different flavors")]
    FlavorMismatch,
    #[error("invalid Riordan array: {0}")]
    InvalidArray(&'static str),
    #[error("matrix does not have a unit diagonal")]
    NotUnitDiagonal,

    // pseudo-involutions
    #[error("B-equation inconsistent at degree {degree}: f is not pseudo-involutory")]
    InconsistentBEquation { degree: usize },
    #[error("B-recurrence violated at (n={n}, k={k})")]
    RecurrenceViolated { n: usize, k: usize },
    #[error("companion is underdetermined at degree {degree}")]
    UnderdeterminedCompanion { degree: usize },
    #[error("no pseudo-involutory companion: conflict at degree {degree}")]
    NoCompanion { degree: usize },
    #[error("function is not pseudo-involutory")]
    NotPseudoInvolutory,
    #[error("operation requires f'(0)=1 (f=-z and f'(0)=-1 are excluded)")]
    NegativeLinearTerm,
    #[error("phi must be odd with phi(0)=0")]
    PhiNotOdd,

    // gamma tools
    #[error("gamma(1) = 0")]
    GammaVanishesAtOne,
    #[error("scale factor must be nonzero")]
    ZeroScale,
    #[error("internal identity check failed: {0}")]
    SanityCheck(&'static str),

    // rational g
    #[error("p(0) and q(0) must both equal 1")]
    NotMonicAtZero,
    #[error("p and q are equal; the pseudo-involution equation is degenerate")]
    DegenerateRational,
    #[error("x=0 is not a simple root of the equation at z=0")]
    NotASimpleRoot,

    // input
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by malformed input rather than mathematics.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
