//! Error type shared by all subsystems.

use thiserror::Error;

/// Errors raised by toolkit operations.
///
/// Variants mirror the failure modes of the individual operations; the
/// message carries the measured quantity that violated the contract.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("qubit index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("dense limit exceeded: {n} qubits > cap {cap}")]
    DenseLimitExceeded { n: usize, cap: usize },
    #[error("non-finite entry encountered: {0}")]
    NonFinite(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operator is not Hermitian: {0}")]
    NotHermitian(String),
    #[error("eigensolver did not converge: {0}")]
    NoConvergence(String),
    #[error("Pauli word is not splittable: {0}")]
    NotSplittable(String),
    #[error("pulse time out of range: {0}")]
    PulseOutOfRange(String),
    #[error("no decomposition solution found: {0}")]
    NoSolution(String),
    #[error("norm budget exceeded: {0}")]
    NormBudgetExceeded(String),
    #[error("operator norm too large for decomposition: {0}")]
    NormTooLarge(String),
    #[error("degenerate vector pair (angle near pi): {0}")]
    DegeneratePair(String),
    #[error("subdivision limit reached: {0}")]
    SubdivisionLimit(String),
    #[error("energy precondition violated: {0}")]
    EnergyPreconditionViolated(String),
    #[error("operator has a negative eigenvalue: {0}")]
    NegativeEigenvalue(String),
    #[error("gate locality violation: {0}")]
    LocalityViolation(String),
    #[error("sequence length exceeds bound: {0}")]
    LengthExceeded(String),
    #[error("gate straddles the bipartition: {0}")]
    BipartitionViolation(String),
    #[error("endpoint does not satisfy the formula: {0}")]
    InvalidEndpoints(String),
    #[error("epsilon out of range: {0}")]
    EpsilonOutOfRange(String),
    #[error("subspaces are not k-orthogonal: {0}")]
    NotKOrthogonal(String),
    #[error("final state too far from target subspace: {0}")]
    EndpointTooFar(String),
    #[error("invalid streaming circuit: {0}")]
    InvalidCircuit(String),
    #[error("weight must be positive: {0}")]
    WeightNonPositive(String),
    #[error("proof length mismatch: {0}")]
    ProofLengthMismatch(String),
    #[error("coefficient must be nonnegative: {0}")]
    NegativeCoefficient(String),
    #[error("both coefficients are zero")]
    ZeroCoefficients,
    #[error("circuit does not match the required proof-step pattern: {0}")]
    InvalidPattern(String),
    #[error("lemma hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("energy hypothesis violated: {0}")]
    EnergyHypothesisViolated(String),
    #[error("residual tie at proof step {0}: input is not a low-energy state")]
    TieAtStep(usize),
    #[error("total term weight is zero")]
    ZeroWeight,
    #[error("invalid thresholds: {0}")]
    InvalidThresholds(String),
    #[error("unknown command: {0}")]
    UnknownCommand(String),
    #[error("malformed input: {0}")]
    MalformedInput(String),
}
