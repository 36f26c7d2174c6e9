//! Numerical certification of a sharp Gaussian uncertainty principle.
//!
//! With the Fourier transform in the convention
//! `f̂(ξ) = ∫ f(x) e^{−2πi⟨x,ξ⟩} dx`, fix exponents `p, q ∈ [1, ∞)`, a
//! dimension `d ≥ 1`, and a Gaussian weight parameter `0 < α < 1`.  The
//! object of study is the sharp constant
//!
//! ```text
//! U(y) = sup_f |f(y)| / ( ‖f e^{πα|x|²}‖_p + ‖f̂ e^{πα|ξ|²}‖_q ),
//! ```
//!
//! the largest possible value at a point `y` of a function whose weighted
//! size and weighted Fourier size are both under control.  `U(y)` is
//! comparable to `(1 + |y|)^{d/p} e^{−πα|y|²}`: the Gaussian decay forced by
//! the weights is attained, but only up to a polynomial factor that the
//! uncertainty principle makes unavoidable.
//!
//! This crate certifies that comparability numerically:
//!
//! * [`dualbound`] produces **upper bounds** on `U(y)` from explicit dual
//!   test functions (localized reproducing kernels), and independent moment
//!   upper bounds with the same polynomial-versus-factorial dichotomy.
//! * [`extremizer`] produces **lower bounds** by constructing near-extremal
//!   functions from de-la-Vallée-Poussin means of band-limited kernels, in
//!   one dimension and (for `p = q = 2`) in radial form in dimensions 2
//!   and 3.
//! * [`oracle`] computes `U(y)` essentially exactly for `p = q = 2` via a
//!   Hermite–Gram matrix, giving an independent reference the bounds are
//!   checked against.
//! * [`kernel`] builds the minimal-norm polynomial kernels behind the upper
//!   bounds, [`quadrature`] and [`special`] supply the supporting numerics,
//!   and [`acceptance`] bundles the end-to-end verification suite.
//!
//! All computations are deterministic: no wall-clock, no environmental
//! dependence, fixed seeds wherever randomness is called for.

pub mod acceptance;
pub mod dualbound;
pub mod extremizer;
pub mod kernel;
pub mod oracle;
pub mod quadrature;
pub mod special;

/// Version of this library, for embedding in emitted metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Error type shared by every fallible routine in this crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A precondition on the arguments was violated; the message names the
    /// offending argument and the constraint.
    InvalidArgument(String),
    /// An iterative or adaptive computation failed to reach its accuracy
    /// target.  Carries the best available estimate together with an
    /// estimate of its error, so callers can decide whether the partial
    /// result is still usable.
    AccuracyFailure {
        message: String,
        best: f64,
        error_estimate: f64,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

impl std::fmt::Display for Error {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::AccuracyFailure {
                message,
                best,
                error_estimate,
            } => write!(
                f,
                "accuracy failure: {message} (best estimate {best:e}, error estimate {error_estimate:e})"
            ),
        }
    }
}

impl std::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
