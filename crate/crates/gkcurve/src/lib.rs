//! Exact computer algebra for generalized GK curves over finite fields.
//!
//! The curves treated here are the plane curves `y^{q^2} - y = z^r` and
//! their covers `x^q + x = y^{q+1}`, `y^{q^2} - y = z^r`, where
//! `r = (q^nu + 1)/(q + 1)` for an odd exponent `nu`. Both families are
//! maximal over GF(q^{2 nu}), and the crate computes every object needed
//! to work with them explicitly:
//!
//! * exact arithmetic in GF(p^m) with deterministically chosen moduli
//!   ([`gf`]),
//! * sparse polynomials and valuation-tracked truncated power series
//!   ([`series`]),
//! * the surface polynomials `f`, `g`, `w = fg`, `Z` and the functional
//!   equation certifying the intersection divisor ([`surface`]),
//! * genus formulas, rational-point enumeration and maximality checks
//!   ([`curve`]),
//! * local power-series charts at affine points ([`expansion`]),
//! * the two-point free-module basis produced by pivot-restricted
//!   Gaussian elimination, with its pole/vanishing-order tables
//!   ([`basis`]),
//! * Weierstrass semigroups at the point at infinity and at a second
//!   point ([`semigroup`]),
//! * Riemann-Roch space bases and evaluation-code generator matrices
//!   ([`rr`]).

pub mod basis;
pub mod curve;
pub mod expansion;
pub mod gf;
pub mod rr;
pub mod semigroup;
pub mod series;
pub mod surface;

pub use gf::{Field, FieldElement, FieldSpec};
pub use series::{SparsePoly, TruncatedSeries, Valuation};

/// Errors shared by all modules of the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field GF({p}^{m}) exceeds the supported size bound")]
    FieldTooLarge { p: u64, m: usize },
    #[error("spec modulus {found:?} does not match the deterministic modulus {expected:?}")]
    ModulusMismatch { expected: Vec<u64>, found: Vec<u64> },
    #[error("invalid coefficient sequence for GF({p}^{m})")]
    InvalidCoefficients { p: u64, m: usize },
    #[error("index {0} is out of range for the field")]
    IndexOutOfRange(u64),
    #[error("{k} does not divide the extension degree {m}")]
    NotASubfieldDegree { k: usize, m: usize },
    #[error("additive equation with no terms")]
    EmptyAdditiveMap,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("exponent {0} is divisible by the field characteristic")]
    ExponentDivisibleByP(u64),
    #[error("nu must be odd and positive, got {0}")]
    BadNu(u32),
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("point does not match the curve model")]
    ModelMismatch,
    #[error("charts exist at affine points only")]
    ChartAtInfinity,
    #[error("chart precision {0} is too small")]
    PrecisionTooSmall(usize),
    #[error("chart carries no x series (plane chart used on a three-variable polynomial)")]
    NoXSeries,
    #[error("polynomial in {0} variables cannot be evaluated in this chart")]
    UnsupportedArity(usize),
    #[error("pole-order tie between y^{} z^{} and y^{} z^{}", .0.0, .0.1, .1.0, .1.1)]
    PoleOrderTie((u32, u32), (u32, u32)),
    #[error("row y^{i} z^{j}: pivot not found below {max} (precision or point defect)")]
    PivotNotFound { i: u32, j: u32, max: u64 },
    #[error("pivot collision at t^{pivot} between y^{} z^{} and y^{} z^{}", .first.0, .first.1, .second.0, .second.1)]
    PivotCollision { pivot: usize, first: (u32, u32), second: (u32, u32) },
    #[error("second point must have a nonzero z coordinate")]
    GammaZero,
    #[error("second point must be affine")]
    SecondPointAtInfinity,
    #[error("no h function is available for this second point")]
    UnsupportedSecondPoint,
    #[error("vanishing order {b} lies outside [0, {m})")]
    VanishOutOfRange { b: u64, m: u64 },
    #[error("gap count {gaps} does not match the genus {genus}")]
    GapCountMismatch { gaps: u64, genus: u64 },
    #[error("evaluation point lies in the divisor support")]
    PointInSupport,
    #[error("h vanished at a point outside the second-point fiber")]
    UnexpectedZero,
    #[error("unknown export format {0:?}")]
    UnknownFormat(String),
    #[error("malformed document: {0}")]
    MalformedDocument(String),
    #[error("divisor verification failed: expected order {expected}, found {found}")]
    DivisorOrderMismatch { expected: u64, found: u64 },
    #[error("no suitable point found after {0} attempts")]
    SamplingExhausted(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
