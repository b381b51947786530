//! Numerical tools around the variance of primes in short intervals and the
//! pair correlation of Riemann zeta zeros.
//!
//! The crate computes, exactly where the mathematics allows and with certified
//! truncation bounds elsewhere:
//!
//! - the Chebyshev function ψ(x) = Σ_{n≤x} Λ(n) over large ranges via a
//!   segmented sieve ([`psi`]),
//! - second moments ∫₁^X (ψ(x+h)−ψ(x)−h)² dx and the proportional-window
//!   variant, in closed form between prime-power breakpoints ([`moments`]),
//! - zeta-zero ordinates (Riemann–Siegel / Euler–Maclaurin) and the weighted
//!   pair-correlation statistic F(X,T) ([`zeros`]),
//! - the Fourier kernel pair K_η / K̂_η, the constants B, C, C′, D, and
//!   numeric checks of the Tauberian lemmas tying the two worlds together
//!   ([`kernels`]),
//! - the truncated zero-sum approximation to ψ((1+δ)x) − ψ(x) − δx and its
//!   mean-square comparison against the sieve truth ([`explicit`]).
//!
//! Every long-running reduction is deterministic: parallel work is merged in
//! a fixed order, so repeated runs are bit-identical.
//!
//! The `zeta-moments` binary exposes the same operations as subcommands; see
//! the crate examples for library usage.

pub mod acceptance;
pub mod cli;
pub mod error;
pub mod explicit;
pub(crate) mod jet;
pub mod kernels;
pub mod moments;
pub mod psi;
pub(crate) mod rng;
pub mod report;
pub mod sampled;
pub mod sum;
pub mod zeros;

pub use error::{Error, Result};
pub use kernels::Constants;
pub use moments::{MomentResult, Window};
pub use psi::PsiTable;
pub use report::VerifierReport;
pub use zeros::{PairCorrelationConfig, ZeroList, ZeroSource};
