//! The principal Weyl–Titchmarsh m-function of the Morse half-line
//! problem in closed form, with its verification surface: the
//! linear-fractional `α`-family, the Riccati residual, large-`|z|`
//! asymptotics, and the pole/zero ↔ Dirichlet/Neumann correspondence.
//!
//! For `E = z²` the principal m-function is the logarithmic derivative
//! at the endpoint of the decaying solution `ψ(u) = e^{−u/2}W_{−k,iz}(e^u)`:
//!
//! ```text
//! m(u0, z²) = −W_{1−k, iz}(x0) / W_{−k, iz}(x0) + (x0/2 + k − 1/2),
//! ```
//!
//! with `x0 = e^{u0}`. It is Herglotz (maps the upper `E` half-plane
//! into itself), extends meromorphically with simple real poles at the
//! Dirichlet eigenvalues and real zeros at the Neumann eigenvalues, and
//! satisfies the Riccati equation `dm/du0 + m² = V_k(u0) − E`.

use crate::error::{Error, Result};
use crate::precision::PrecisionConfig;
use crate::scaled::ScaledValue;
use crate::spectrum::{
    bisect, lowest_eigenvalues, mu_from_energy, potential_value, scaled_real, MorseProblem,
};
use crate::whittaker::{whittaker_w, WhittakerParams};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::FRAC_PI_2;

/// Poles are declared when the Whittaker ratio `|W_{1−k}/W_{−k}|`
/// exceeds `10⁸`, i.e. the denominator is below `10⁻⁸` of the numerator
/// in scaled magnitude — the same resolution to which the spectrum
/// module refines its zeros.
pub(crate) const POLE_LOG10: f64 = 8.0;

/// One evaluated m-function point, as emitted in CLI tables.
#[derive(Clone, Copy, Debug)]
pub struct MFunctionSample {
    pub u0: f64,
    /// Spectral parameter `E = z²`.
    pub e: Complex64,
    /// `m_α(u0, E)`.
    pub value: Complex64,
    /// Boundary angle of the family member; `0` is the principal branch.
    pub alpha: f64,
}

impl MFunctionSample {
    /// Evaluates `m_α` at energy `e`, taking `z` as the `Im ≥ 0` square
    /// root of `e`.
    pub fn compute(
        k: f64,
        u0: f64,
        e: Complex64,
        alpha: f64,
        cfg: &PrecisionConfig,
    ) -> Result<Self> {
        let value = m_alpha(k, u0, im_nonneg_root(e), alpha, cfg)?;
        Ok(MFunctionSample {
            u0,
            e,
            value,
            alpha,
        })
    }
}

/// One matched pair in a [`CorrespondenceReport`]: an eigenvalue from
/// the spectrum module next to the located pole (or zero) of `m`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CorrespondenceRow {
    pub eigenvalue: f64,
    pub located: f64,
    pub abs_diff: f64,
}

/// Verification that the real poles of `m` are the Dirichlet eigenvalues
/// and its real zeros are the Neumann eigenvalues, in strict alternation.
#[derive(Clone, Debug, Serialize)]
pub struct CorrespondenceReport {
    pub dirichlet_poles: Vec<CorrespondenceRow>,
    pub neumann_zeros: Vec<CorrespondenceRow>,
    /// Strict interlacing `z₁ < p₁ < z₂ < p₂ < …` (the lowest Neumann
    /// eigenvalue sits below the lowest Dirichlet one).
    pub interlaced: bool,
}

/// The square root of `e` with `Im ≥ 0`: the branch under which
/// `ψ = e^{−u/2}W_{−k,iz}(e^u)` is the decaying solution for `Im E > 0`.
/// `m` is even in `z` (the Whittaker index enters as `μ = iz` and `W` is
/// even in `μ`), so the choice fixes only the reporting convention.
pub fn im_nonneg_root(e: Complex64) -> Complex64 {
    let z = e.sqrt();
    if z.im < 0.0 {
        -z
    } else {
        z
    }
}

/// The principal (`α = 0`, Dirichlet-based) m-function `m(u0, z²)`.
///
/// Fails with a pole error when `z²` lies within the pole guard of a
/// Dirichlet eigenvalue; see [`POLE_LOG10`].
pub fn m_principal(k: f64, u0: f64, z: Complex64, cfg: &PrecisionConfig) -> Result<Complex64> {
    validate_params(k, u0)?;
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!(
            "spectral parameter z must be finite, got {z}"
        )));
    }
    let mu = Complex64::new(-z.im, z.re); // μ = iz
    let ratio = guarded_ratio(k, u0, mu, &format!("m(u0={u0}, z={z})"), cfg)?;
    Ok(-ratio.to_c64_lossy() + Complex64::new(0.5 * u0.exp() + k - 0.5, 0.0))
}

/// The `α`-family member `m_α = [(cos α)m₀ − sin α] / [(sin α)m₀ + cos α]`
/// with `m₀` the principal m-function; the family is exactly π-periodic
/// in `α`.
///
/// Fails with a pole error when `z²` is at the `α`-spectrum (denominator
/// below `10⁻⁸·max(1, |m₀|)`).
pub fn m_alpha(
    k: f64,
    u0: f64,
    z: Complex64,
    alpha: f64,
    cfg: &PrecisionConfig,
) -> Result<Complex64> {
    if !alpha.is_finite() {
        return Err(Error::Domain(format!(
            "boundary angle must be finite, got {alpha}"
        )));
    }
    let m0 = m_principal(k, u0, z, cfg)?;
    let (s, c) = alpha.sin_cos();
    let den = s * m0 + Complex64::new(c, 0.0);
    if den.norm() <= 1e-8 * m0.norm().max(1.0) {
        return Err(Error::Pole(format!(
            "z = {z} is at the spectrum of the alpha = {alpha} problem"
        )));
    }
    Ok((c * m0 - Complex64::new(s, 0.0)) / den)
}

/// `|dm/du0 + m² − (V_k(u0) − E)|` with `dm/du0` by central difference
/// over `u0 ± h`: the defect in the Riccati equation, `O(h²)` for the
/// true m-function.
///
/// Requires `h ∈ [10⁻⁶, 10⁻³]` (below, f64 cancellation in the
/// difference dominates; above, the curvature term does).
pub fn riccati_residual(
    k: f64,
    u0: f64,
    e: Complex64,
    h: f64,
    cfg: &PrecisionConfig,
) -> Result<f64> {
    if !(1e-6..=1e-3).contains(&h) {
        return Err(Error::Domain(format!(
            "difference step h = {h} outside [1e-6, 1e-3]"
        )));
    }
    if !e.re.is_finite() || !e.im.is_finite() {
        return Err(Error::Domain(format!("energy must be finite, got {e}")));
    }
    let z = im_nonneg_root(e);
    let m_minus = m_principal(k, u0 - h, z, cfg)?;
    let m_mid = m_principal(k, u0, z, cfg)?;
    let m_plus = m_principal(k, u0 + h, z, cfg)?;
    let dm = (m_plus - m_minus) / (2.0 * h);
    Ok((dm + m_mid * m_mid - (Complex64::new(potential_value(k, u0), 0.0) - e)).norm())
}

/// Locates the lowest `n` real poles and real zeros of the principal
/// m-function by bisection and matches them, to `10⁻⁶` in `E`, against
/// the Dirichlet and Neumann eigenvalue lists computed independently by
/// the spectrum module's shooting scan.
///
/// `prob.alpha` must be `0` or `π/2` — the two boundary conditions the
/// correspondence is about; the report always covers both sides.
pub fn pole_zero_correspondence(
    prob: &MorseProblem,
    n: usize,
    cfg: &PrecisionConfig,
) -> Result<CorrespondenceReport> {
    if n == 0 {
        return Err(Error::Domain("eigenvalue count n must be at least 1".into()));
    }
    if prob.alpha != 0.0 && (prob.alpha - FRAC_PI_2).abs() > 1e-12 {
        return Err(Error::Domain(format!(
            "pole/zero correspondence covers the Dirichlet/Neumann pair only \
             (alpha 0 or pi/2), got alpha = {}",
            prob.alpha
        )));
    }
    let dirichlet = MorseProblem::dirichlet(prob.k, prob.u0)?;
    let neumann = MorseProblem::new(prob.k, prob.u0, FRAC_PI_2)?;
    let dir_eigs = lowest_eigenvalues(&dirichlet, n, cfg)?;
    let neu_eigs = lowest_eigenvalues(&neumann, n, cfg)?;

    let mut dirichlet_poles = Vec::with_capacity(n);
    for &ev in &dir_eigs {
        let located = locate_real_root(
            |e| m_denominator_real(prob.k, prob.u0, e, cfg),
            ev,
            "the m-function denominator",
        )?;
        let row = matched_row(ev, located, "Dirichlet eigenvalue", "m-pole")?;
        dirichlet_poles.push(row);
    }
    let mut neumann_zeros = Vec::with_capacity(n);
    for &ev in &neu_eigs {
        let located = locate_real_root(
            |e| m_real(prob.k, prob.u0, e, cfg),
            ev,
            "the m-function",
        )?;
        let row = matched_row(ev, located, "Neumann eigenvalue", "m-zero")?;
        neumann_zeros.push(row);
    }

    let mut interlaced = true;
    for j in 0..n {
        if !(neumann_zeros[j].located < dirichlet_poles[j].located) {
            interlaced = false;
        }
        if j + 1 < n && !(dirichlet_poles[j].located < neumann_zeros[j + 1].located) {
            interlaced = false;
        }
    }
    Ok(CorrespondenceReport {
        dirichlet_poles,
        neumann_zeros,
        interlaced,
    })
}

/// `m` at real energy, with the index `μ` placed exactly on its axis so
/// the Whittaker values (and hence `m`) are certified real.
pub(crate) fn m_real(k: f64, u0: f64, e: f64, cfg: &PrecisionConfig) -> Result<f64> {
    validate_params(k, u0)?;
    if !e.is_finite() {
        return Err(Error::Domain(format!("energy must be finite, got {e}")));
    }
    let mu = mu_from_energy(Complex64::new(e, 0.0));
    let ratio = guarded_ratio(k, u0, mu, &format!("m(u0={u0}, E={e})"), cfg)?;
    Ok(-scaled_real(&ratio) + (0.5 * u0.exp() + k - 0.5))
}

/// The denominator `W_{−k, μ(E)}(x0)` at real `E`, sign-faithfully
/// collapsed; its zeros are the Dirichlet eigenvalues, i.e. the poles
/// of `m`.
fn m_denominator_real(k: f64, u0: f64, e: f64, cfg: &PrecisionConfig) -> Result<f64> {
    validate_params(k, u0)?;
    let mu = mu_from_energy(Complex64::new(e, 0.0));
    let den = whittaker_w(WhittakerParams::new(-k, mu, u0.exp())?, cfg)?;
    Ok(scaled_real(&den))
}

fn validate_params(k: f64, u0: f64) -> Result<()> {
    if !k.is_finite() || !u0.is_finite() {
        return Err(Error::Domain(format!(
            "potential parameters must be finite, got k={k}, u0={u0}"
        )));
    }
    let x0 = u0.exp();
    if !x0.is_finite() || x0 <= 0.0 {
        return Err(Error::Domain(format!(
            "endpoint x0 = e^(u0) not representable for u0 = {u0}"
        )));
    }
    Ok(())
}

/// `W_{1−k,μ}(x0) / W_{−k,μ}(x0)` with the pole guard of [`POLE_LOG10`].
fn guarded_ratio(
    k: f64,
    u0: f64,
    mu: Complex64,
    what: &str,
    cfg: &PrecisionConfig,
) -> Result<ScaledValue> {
    let x0 = u0.exp();
    let num = whittaker_w(WhittakerParams::new(1.0 - k, mu, x0)?, cfg)?;
    let den = whittaker_w(WhittakerParams::new(-k, mu, x0)?, cfg)?;
    if den.is_zero() {
        return Err(Error::Pole(format!("{what}: denominator W vanished")));
    }
    let ratio = num.div(&den)?;
    if ratio.abs_log10() >= POLE_LOG10 {
        return Err(Error::Pole(format!(
            "{what} lies within the pole guard of a Dirichlet eigenvalue \
             (|W-ratio| = 10^{:.1})",
            ratio.abs_log10()
        )));
    }
    Ok(ratio)
}

/// Matches a located root against the expected eigenvalue to `10⁻⁶`.
fn matched_row(
    eigenvalue: f64,
    located: f64,
    expected_name: &str,
    found_name: &str,
) -> Result<CorrespondenceRow> {
    let abs_diff = (located - eigenvalue).abs();
    if abs_diff > 1e-6 {
        return Err(Error::Correspondence(format!(
            "{expected_name} {eigenvalue} vs located {found_name} {located}: \
             off by {abs_diff:.3e}"
        )));
    }
    Ok(CorrespondenceRow {
        eigenvalue,
        located,
        abs_diff,
    })
}

/// Brackets a sign change of `f` around `guess` (window `10⁻⁴·(1+|E|)`,
/// widened ×4 up to three times) and bisects it to `10⁻⁹·(1+|E|)`.
fn locate_real_root<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    guess: f64,
    what: &str,
) -> Result<f64> {
    let mut w = 1e-4 * (1.0 + guess.abs());
    for _ in 0..4 {
        let (a, b) = (guess - w, guess + w);
        let fa = f(a)?;
        let fb = f(b)?;
        if fa == 0.0 {
            return Ok(a);
        }
        if fb == 0.0 {
            return Ok(b);
        }
        if fa.signum() != fb.signum() {
            let (lo, hi, _) = bisect(&mut f, a, b, fa, |x| 1e-9 * (1.0 + x.abs()))?;
            return Ok(0.5 * (lo + hi));
        }
        w *= 4.0;
    }
    Err(Error::Correspondence(format!(
        "no sign change of {what} within {w:.3e} of E = {guess}"
    )))
}
