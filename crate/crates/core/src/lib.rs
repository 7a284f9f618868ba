//! Exact q-series arithmetic and verification tools for Mathieu moonshine.
//!
//! The crate provides:
//! - [`qseries`]: truncated Laurent series on the exponent lattice (1/24)ℤ
//!   with exact Gaussian-rational coefficients,
//! - [`forms`]: the named generating functions (Dedekind η, eta-quotients,
//!   Jacobi thetas, the weight-2 Eisenstein series φ₂^{(N)}, the Lambert sum
//!   Λ, the mock modular form Σ(τ), the parity functions f_m),
//! - [`mckay`]: the registry of the 21 McKay-Thompson series of the Mathieu
//!   group M₂₄ and their exact expansions,
//! - [`parity`]: empirical parity scans and Sturm-bound congruence
//!   certificates for the series coefficients,
//! - [`m24`]: character-table ingestion for M₂₄ and decomposition of the
//!   graded moonshine module into irreducibles.
//!
//! Everything is exact: no floating point appears anywhere in the pipeline.

pub mod coeff;
pub mod error;
pub mod exponent;
pub mod forms;
pub mod m24;
pub mod mckay;
pub mod parity;
pub mod qseries;

pub use num;

pub use coeff::Coeff;
pub use exponent::Exponent;
pub use qseries::QSeries;

/// Crate version recorded in emitted certificates.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
