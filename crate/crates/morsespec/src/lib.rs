//! Extended-precision special functions and spectral analysis for the
//! half-line Schrödinger operator with a Morse potential
//! `V(u) = e^{2u}/4 + k e^u`.
//!
//! The crate has three layers:
//!
//! 1. **Special functions** ([`gamma`], [`hyp1f1`], [`whittaker`]): the
//!    complex gamma function, the regularized confluent hypergeometric
//!    function `₁F̃₁`, and the Whittaker functions `M_{κ,μ}`, `W_{κ,μ}` on
//!    the principal branch (real `κ`, real `x > 0`, complex `μ`), plus the
//!    modified Bessel specialization `K_μ`. Results carry an explicit
//!    decimal scale ([`scaled::ScaledValue`]) so magnitudes like
//!    `e^{-πt/2}` at large `t` never flush to zero, and every routine is
//!    driven by a [`precision::PrecisionConfig`].
//! 2. **Independent oracles** ([`ode`], [`fdeig`]): adaptive Runge–Kutta
//!    back-integration of the Whittaker ODE from asymptotic initial data,
//!    and a finite-difference eigenvalue solver for half-line Schrödinger
//!    problems. Neither shares code with layer 1; they exist to check it.
//! 3. **Spectral analysis** ([`spectrum`], [`weyl`], [`mfunc`],
//!    [`debranges`]): zeros of `Z(μ) = W_{-k,μ}(e^{u0})` on the real and
//!    imaginary `μ` axes, eigenvalue counting against Weyl asymptotics, the
//!    closed-form Weyl–Titchmarsh `m`-function with Herglotz/Riccati
//!    verification, and the de Branges structure function `E₀(u,z)` with
//!    Hermite–Biehler and interlacing checks.
//!
//! The companion binary crate `morsespec-cli` exposes all of this as the
//! `morsespec` command-line tool.

pub mod debranges;
pub mod error;
pub mod fdeig;
pub mod gamma;
pub mod hyp1f1;
pub mod mfunc;
pub mod ode;
pub mod precision;
pub mod scaled;
pub mod spectrum;
pub mod weyl;
pub mod whittaker;

mod arith;
mod cplx;

pub use error::{Error, Result};
pub use precision::PrecisionConfig;
pub use scaled::ScaledValue;
