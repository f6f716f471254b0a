use thiserror::Error;

use crate::jets::Var;

/// Every failure the library reports.
#[derive(Debug, Error)]
pub enum Error {
    #[error("inner jet for {0:?} has a nonvanishing constant term")]
    NonvanishingConstantTerm(Var),
    #[error("jet has zero constant term")]
    ZeroConstantTerm,
    #[error("jet has negative constant term")]
    NegativeConstantTerm,
    #[error("square root of {0} is not representable in the exact tower (try --float)")]
    IrrationalSqrt(String),
    #[error("jet is not divisible by {0:?}")]
    NotDivisible(Var),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("c1(0,s) is not reduced to s through the truncation order")]
    NotReducedC1,
    #[error("unknown builtin germ `{0}`")]
    UnknownName(String),
    #[error("unknown verification suite {name:?} (known: {known})")]
    UnknownSuite { name: String, known: String },
    #[error("2-jet is not A-equivalent to (u,v^2,0) or (u,v^2,uv): {0}")]
    WrongTwoJet(String),
    #[error("truncation order {order} is below the required {required}")]
    OrderTooLow { order: usize, required: usize },
    #[error("germ cannot be brought to normal form: {0}")]
    NotNormalizable(String),
    #[error("dc1/ds(0,0) is not positive; the parameter cannot be reduced with an orientation preserving change")]
    ParameterOrientation,
    #[error("germ is not frontal (residual at order {0})")]
    NotFrontal(usize),
    #[error("Newton iteration did not converge: {0}")]
    NoConvergence(String),
    #[error("d2(0) = 0; the operation needs a nondegenerate quadratic term")]
    DegenerateD2,
    #[error("implicit-function hypothesis fails on the branch (i_u vanishes near v = {v})")]
    BranchSingular { v: f64 },
    #[error("no real self-intersection branch")]
    NoRealBranch,
    #[error("curve has vanishing second derivative at the base point")]
    FlatCurve,
    #[error("degenerate branch data: {0}")]
    DegenerateBranch(String),
    #[error("point is not in S2 (|c1| = {residual:e})")]
    NotInS2 { residual: f64 },
    #[error("f_u and the second eta derivative are parallel")]
    DegenerateFrame,
    #[error("trajectory curvature vanishes at the origin")]
    DegenerateCurvature,
    #[error("curvature is zero; recovery is undefined")]
    ZeroCurvature,
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse {
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("invalid germ spec: {0}")]
    Spec(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
