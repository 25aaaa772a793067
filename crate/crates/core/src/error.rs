//! Error type shared by all laboratory modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension must be 2 or 3, got {0}")]
    UnsupportedDimension(usize),

    #[error("resolution must be odd, got {0}")]
    EvenResolution(usize),

    #[error("resolution must be at least 17, got {0}")]
    ResolutionTooSmall(usize),

    #[error("half-width must be positive, got {0}")]
    NonPositiveHalfWidth(f64),

    #[error("homogeneity {0} is not admissible (must be a half-integer or positive integer)")]
    InadmissibleHomogeneity(f64),

    #[error("homogeneity {0} is not a solution homogeneity (integers or 3/2 + 2N)")]
    NotSolutionHomogeneity(f64),

    #[error("homogeneity {0} is not a slit homogeneity (1/2 + N)")]
    NotSlitHomogeneity(f64),

    #[error("the full slit basis is only available for n = 2 (requested n = {0})")]
    SlitBasisUnsupported(usize),

    #[error("ball of radius {radius} at ({cx}, {cy}, {cz}) exits the computational domain")]
    BallOutsideDomain {
        cx: f64,
        cy: f64,
        cz: f64,
        radius: f64,
    },

    #[error("radius {radius} is below the accuracy floor {floor} (4h)")]
    RadiusBelowFloor { radius: f64, floor: f64 },

    #[error("angular node count {0} is below the minimum of 64")]
    TooFewAngularNodes(usize),

    #[error("spine direction must be a unit vector in the thin space")]
    InvalidSpine,

    #[error("circle profile must be sampled at >= 256 angles, got {0}")]
    TooFewProfileSamples(usize),

    #[error("circle profile contains non-finite values")]
    NonFiniteProfile,

    #[error("circle profile is not even about the thin axis (asymmetry {0:.3e})")]
    ProfileNotEven(f64),

    #[error("boundary data produces a negative thin trace (min {0:.3e})")]
    NegativeThinTrace(f64),

    #[error("field values must be finite")]
    NonFiniteField,

    #[error("solution has not converged (residual {residual:.3e} after {iterations} sweeps)")]
    NotConverged { residual: f64, iterations: usize },

    #[error("point ({0}, {1}, {2}) is not a contact point")]
    NotContactPoint(f64, f64, f64),

    #[error("frequency estimate {estimate:.3} at the scan center is not within {tol} of lambda = {lambda}")]
    FrequencyMismatch {
        estimate: f64,
        lambda: f64,
        tol: f64,
    },

    #[error("decay scan needs at least 2 usable scales, got {0}")]
    TooFewScales(usize),

    #[error("boundary mass H_0 vanishes at the requested sphere")]
    ZeroBoundaryMass,

    #[error("monotonicity check needs at least 3 values, got {0}")]
    TooFewRadii(usize),

    #[error("certificate failure: node-wise w*L(w) reaches {min:.3e}, below -{tol:.3e}")]
    CertificateFailure { min: f64, tol: f64 },

    #[error("field does not vanish on the required thin half-line (max |f| = {0:.3e})")]
    SlitVanishingFailure(f64),

    #[error("grids do not match")]
    GridMismatch,

    #[error("snapshot is malformed: {0}")]
    MalformedSnapshot(String),

    #[error("relaxation parameter must lie in (0, 2), got {0}")]
    InvalidRelaxation(f64),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
