//! Crate-wide error type.

use num_complex::Complex64;
use thiserror::Error;

use crate::grid::Domain;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    // grid construction and field plumbing
    #[error("grid dimension must be 1 or 2, got {0}")]
    UnsupportedDimension(usize),
    #[error("points per dimension must be a positive power of two, got {0}")]
    InvalidPointCount(usize),
    #[error("grid half-length must be positive and finite, got {0}")]
    InvalidHalfLength(f64),
    #[error("field carries {actual} values but the grid has {expected} nodes")]
    ValueCountMismatch { expected: usize, actual: usize },
    #[error("non-finite sample {value} at node {index} (x = {position:?})")]
    NonFiniteSample {
        index: usize,
        position: Vec<f64>,
        value: Complex64,
    },
    #[error("expected a field in the {expected:?} domain, found {actual:?}")]
    DomainMismatch { expected: Domain, actual: Domain },
    #[error("fields live on different grids")]
    GridMismatch,

    // symbols
    #[error("homogeneous order must be finite, got {0}")]
    InvalidOrder(f64),
    #[error("symbol terms must have strictly increasing orders, all positive")]
    NonIncreasingOrders,
    #[error("top symbol order must be at least 1, got {0}")]
    TopOrderTooLow(f64),
    #[error("operation supports dimension {required} only, got {actual}")]
    DimensionUnsupported { required: usize, actual: usize },
    #[error("symbol dimension {symbol} does not match grid dimension {grid}")]
    SymbolGridMismatch { symbol: usize, grid: usize },
    #[error(
        "derived order {order} is below -{dim} and is not locally integrable; \
         refusing the pointwise identification"
    )]
    OrderBelowIntegrable { order: f64, dim: usize },
    #[error("derivative spec needs |gamma| = |gamma_tilde|, got {gamma} and {gamma_tilde}")]
    UnbalancedDerivativeSpec { gamma: usize, gamma_tilde: usize },
    #[error("sigma = {sigma} exceeds the integer part {floor_m} of the singularity index")]
    SigmaTooLarge { sigma: usize, floor_m: usize },
    #[error("symbol is purely polynomial; no singularity index is defined")]
    PurelyPolynomial,
    #[error(
        "symbol is not globally elliptic: |p(xi)|/<xi>^M = {ratio:.3e} at xi = {witness:?}"
    )]
    NotElliptic { witness: Vec<f64>, ratio: f64 },

    // multiplier
    #[error("multiplier order {order} at or below -{dim} cannot act on a grid field")]
    SingularOrderOutOfRange { order: f64, dim: usize },
    #[error("smoothing operator needs order in (-{half_dim}, 0), got {order}")]
    SmoothingOrderOutOfRange { order: f64, half_dim: f64 },
    #[error("cutoff radii must satisfy 0 < inner < outer, got {inner} and {outer}")]
    InvalidCutoff { inner: f64, outer: f64 },

    // besselwave
    #[error("modified Bessel argument must be positive, got {0}")]
    NonPositiveArgument(f64),
    #[error("half-integer order needs an odd numerator, got {0}")]
    EvenNumerator(i64),
    #[error("power-law transform supports positive integer exponents, got {0}")]
    UnsupportedExponent(u32),
    #[error("power-law transform is singular at xi = 0; evaluate off the origin")]
    ZeroFrequency,
    #[error("example generator needs k >= 2, got {0}")]
    GeneratorOrderTooSmall(u32),
    #[error("residual is undefined for a zero reference solution")]
    DegenerateCase,
    #[error("window half-width {requested} exceeds the trusted region {trusted}")]
    WindowOutsideTrustedRegion { requested: f64, trusted: f64 },

    // solver
    #[error("nonlinearity must vanish to second order at zero; found a term of degree {0}")]
    NonlinearityDegreeTooLow(u32),
    #[error("stabilized iteration needs a monomial nonlinearity")]
    NotMonomial,
    #[error("initial guess must be nonzero")]
    ZeroInitialGuess,
    #[error("stabilizing factor is undefined: inner product denominator vanished")]
    DegenerateStabilizer,
    #[error(
        "iteration diverged at step {iteration}: residual {residual:.3e} grew past \
         10x its minimum {minimum:.3e}"
    )]
    Diverged {
        iteration: usize,
        residual: f64,
        minimum: f64,
        history: Vec<f64>,
    },

    // decayometer
    #[error("fit window ({lo}, {hi}) is invalid; need 1 <= lo < hi")]
    InvalidWindow { lo: f64, hi: f64 },
    #[error("tail sample at r = {radius} is not positive; decay model inapplicable")]
    NonPositiveTail { radius: f64 },
    #[error("fit window contains only {0} sample radii; need at least 2")]
    WindowTooNarrow(usize),
    #[error("scan lengths must be strictly increasing multiples of the first by powers of two")]
    InvalidScanLengths,

    // commutators
    #[error("multi-index length {len} does not match dimension {dim}")]
    MultiIndexMismatch { len: usize, dim: usize },
    #[error("weight order |rho| = {rho} must stay below m + n = {limit}")]
    WeightOrderTooLarge { rho: usize, limit: f64 },
    #[error("identity expansion is not implemented for alpha = {alpha}, beta = {beta}")]
    UnsupportedExpansion { alpha: usize, beta: usize },
    #[error("probe regime violated: {inequality}")]
    RegimeViolation { inequality: String },
}
