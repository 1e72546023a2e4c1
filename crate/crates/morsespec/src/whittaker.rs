//! Whittaker functions M, 𝓜, and W on the principal branch (x > 0, real
//! first index, complex second index), plus the K-Bessel specialization.
//!
//! The regularized first kind is a direct product,
//!
//! ```text
//!   𝓜_{κ,μ}(x) = e^{-x/2} x^{1/2+μ} · hyp1f1_reg(1/2-κ+μ, 1+2μ, x),
//! ```
//!
//! entire in μ. The second kind is assembled from the two-term reflection
//!
//! ```text
//!   W_{κ,μ}(x) = π/sin(2πμ) · [ 𝓜_{κ,-μ}(x)/Γ(1/2-κ+μ) − 𝓜_{κ,μ}(x)/Γ(1/2-κ-μ) ],
//! ```
//!
//! valid when 2μ is not an integer. Three regimes are handled separately:
//!
//! * μ = it on the imaginary axis: the two terms are complex conjugates,
//!   so `W = -2π·Im[𝓜_{κ,it}(x)/Γ(1/2-κ-it)]/sinh(2πt)` is computed as a
//!   real number — certified real by construction, not by cancellation.
//! * 2μ within `halfint_offset` of an integer: W is entire in μ, so the
//!   evaluator averages the two evaluations at μ ± offset; the symmetric
//!   average cancels the linear term, leaving an O(offset²) error.
//! * anything else: the reflection formula as written, in complex
//!   arithmetic that keeps exactly-real intermediates exactly real.
//!
//! Cancellation between the two reflection terms is measured (peak term
//! magnitude against the result) and reported as a precision-loss error
//! when it exceeds the configured budget.

use num_complex::Complex64;

use crate::arith::{PrecScope, Real};
use crate::cplx::Cplx;
use crate::error::{Error, Result};
use crate::gamma::{gamma_cx, recip_gamma_cx};
use crate::hyp1f1::hyp1f1_reg_cx;
use crate::precision::PrecisionConfig;
use crate::scaled::ScaledValue;

/// Arguments of a Whittaker evaluation: first index `kappa` (real),
/// second index `mu` (complex), argument `x` on the principal branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WhittakerParams {
    pub kappa: f64,
    pub mu: Complex64,
    pub x: f64,
}

impl WhittakerParams {
    /// Validated constructor: requires finite indices and x > 0.
    pub fn new(kappa: f64, mu: Complex64, x: f64) -> Result<Self> {
        let p = WhittakerParams { kappa, mu, x };
        p.validate()?;
        Ok(p)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if !self.kappa.is_finite() || !self.mu.re.is_finite() || !self.mu.im.is_finite() {
            return Err(Error::Domain(format!(
                "Whittaker indices must be finite, got kappa={}, mu={}",
                self.kappa, self.mu
            )));
        }
        if !self.x.is_finite() || self.x <= 0.0 {
            return Err(Error::Domain(format!(
                "principal branch requires x > 0, got x={}",
                self.x
            )));
        }
        Ok(())
    }
}

/// True when the result is real for symmetry reasons: real kappa and
/// x > 0 with mu either real or purely imaginary.
fn real_by_symmetry(mu: Complex64) -> bool {
    mu.im == 0.0 || mu.re == 0.0
}

/// Attempts before the W combination gives up escalating its internal
/// precision against cancellation.
const MAX_W_ESCALATIONS: u32 = 4;

// ---------------------------------------------------------------------------
// core evaluations on exact arguments
// ---------------------------------------------------------------------------

/// Regularized Whittaker M of exact arguments.
pub(crate) fn m_reg_cx(kappa: &Real, mu: &Cplx, x: &Real, cfg: &PrecisionConfig) -> Result<Cplx> {
    let half = Real::from_f64(0.5);
    let alpha = &Cplx::from_real(&half - kappa) + mu;
    let beta = &Cplx::from_real(Real::one()) + &(mu + mu);
    let series = hyp1f1_reg_cx(&alpha, &beta, &Cplx::from_real(x.clone()), cfg)?;
    let power = Cplx::pow_of_positive_real(x, &(&Cplx::from_real(half) + mu));
    let damp = (x * &Real::from_f64(-0.5)).exp();
    Ok((&series * &power).scale(&damp))
}

/// W for purely imaginary μ = it (t ≠ 0): the two reflection terms are
/// complex conjugates, so the value is extracted as -2π·Im(T)/sinh(2πt)
/// with T = 𝓜_{κ,it}(x)/Γ(1/2-κ-it). Exactly real by construction.
/// Returns the value and the decimal digits lost to cancellation.
fn w_imag_axis_cx(
    kappa: &Real,
    t: &Real,
    x: &Real,
    cfg: &PrecisionConfig,
) -> Result<(Real, f64)> {
    let mu = Cplx::new(Real::zero(), t.clone());
    let m = m_reg_cx(kappa, &mu, x, cfg)?;
    let half = Real::from_f64(0.5);
    let rg = recip_gamma_cx(&Cplx::new(&half - kappa, t.neg()), cfg)?;
    let term = &m * &rg;

    let two_pi = &Real::pi() * &Real::from_f64(2.0);
    let denom = (&two_pi * t).sinh();
    let w = &(&term.im * &two_pi).neg() / &denom;

    // The imaginary-part extraction is where the two conjugate reflection
    // terms cancel; compare the term magnitude (same prefactor) with the
    // result.
    let term_mag = term.log10_abs_approx() + two_pi.log10_abs_approx() - denom.log10_abs_approx();
    let w_mag = if w.is_zero() {
        term_mag - cfg.working_digits as f64
    } else {
        w.log10_abs_approx()
    };
    Ok((w, (term_mag - w_mag).max(0.0)))
}

/// W by the two-term reflection formula; requires 2μ at distance at least
/// `halfint_offset` from the integers. Returns the value and the decimal
/// digits cancelled between the terms.
fn w_reflection_cx(
    kappa: &Real,
    mu: &Cplx,
    x: &Real,
    cfg: &PrecisionConfig,
) -> Result<(Cplx, f64)> {
    let half = Real::from_f64(0.5);
    let base = Cplx::from_real(&half - kappa);
    let rg_plus = recip_gamma_cx(&(&base + mu), cfg)?;
    let rg_minus = recip_gamma_cx(&(&base - mu), cfg)?;
    let m_neg = m_reg_cx(kappa, &(-mu), x, cfg)?;
    let m_pos = m_reg_cx(kappa, mu, x, cfg)?;

    let term_plus = &m_neg * &rg_plus;
    let term_minus = &m_pos * &rg_minus;
    let diff = &term_plus - &term_minus;
    if term_plus.is_zero() && term_minus.is_zero() {
        return Ok((Cplx::zero(), 0.0));
    }

    let peak = term_plus
        .abs_sqr()
        .max(&term_minus.abs_sqr())
        .log10_abs_approx()
        * 0.5;
    let diff_mag = if diff.is_zero() {
        peak - cfg.working_digits as f64
    } else {
        0.5 * diff.abs_sqr().log10_abs_approx()
    };
    if diff.is_zero() {
        // All significance cancelled; the caller escalates.
        return Ok((Cplx::zero(), (peak - diff_mag).max(0.0)));
    }

    let sin = (mu + mu).sin_pi();
    let w = Cplx::from_real(Real::pi()).div(&sin) * &diff;
    Ok((w, (peak - diff_mag).max(0.0)))
}

/// One evaluation of W at the requested precision, choosing between the
/// certified-real imaginary-axis arrangement and the generic reflection.
/// Assumes 2μ is nondegenerate (dispatcher handles the averaging).
fn w_once(kappa: &Real, mu: &Cplx, x: &Real, cfg: &PrecisionConfig) -> Result<(Cplx, f64)> {
    if mu.re.is_zero() && !mu.im.is_zero() {
        let (w, lost) = w_imag_axis_cx(kappa, &mu.im, x, cfg)?;
        return Ok((Cplx::from_real(w), lost));
    }
    w_reflection_cx(kappa, mu, x, cfg)
}

/// Full W dispatcher on exact arguments. The returned value has an
/// exactly-zero imaginary part whenever μ is real or purely imaginary.
///
/// The reflection terms grow like e^{+x/2} while W itself decays like
/// e^{-x/2}, so large x (or a μ close to a zero of W) cancels heavily;
/// the driver re-runs at widened precision until `cfg.working_digits - 6`
/// digits survive, and reports a precision-loss error only when the
/// escalation attempts are exhausted.
pub(crate) fn w_cx(kappa: &Real, mu: &Cplx, x: &Real, cfg: &PrecisionConfig) -> Result<Cplx> {
    // Far from the origin the reflection terms cancel ~x/log(10) digits
    // while the large-x expansion truncates near e^{-x}: once the
    // expansion can clear the full digit target on its own it is both
    // better conditioned and cheaper, and it is uniform in μ (no
    // degeneracy to dodge). The gate keeps small-x calls off the series,
    // whose cost grows with x.
    let target = 10f64.powf(-(cfg.working_digits as f64));
    if x.to_f64() >= std::f64::consts::LN_10 * (cfg.working_digits as f64 + 6.0) {
        let (w, rel_err) = w_asymptotic_series_cx(kappa, mu, x, target);
        if rel_err <= target {
            return Ok(w);
        }
    }

    // Distance of 2μ from the nearest integer decides degeneracy.
    let two_mu = mu + mu;
    let nearest = two_mu.re.round_nearest();
    let dist_sqr = (&two_mu - &Cplx::from_real(nearest)).abs_sqr();
    let eps = Real::from_f64(cfg.halfint_offset);

    if dist_sqr.cmp(&(&eps * &eps)) == std::cmp::Ordering::Less {
        // W is entire in μ: average evaluations displaced by ±offset along
        // the real μ-direction. |2(μ±offset) - n| ≥ offset, so the inner
        // calls take the nondegenerate branches. Averaging two nearby
        // values of the same sign does not cancel.
        let shift = Cplx::from_real(eps);
        let wp = w_cx(kappa, &(mu + &shift), x, cfg)?;
        let wm = w_cx(kappa, &(mu - &shift), x, cfg)?;
        let avg = (&wp + &wm).scale(&Real::from_f64(0.5));
        if !mu.is_exactly_real() && mu.re.is_zero() {
            // μ = it: the displaced points are conjugate reflections,
            // W(it+ε) = conj(W(it-ε)), so the true average is real.
            return Ok(Cplx::from_real(avg.re));
        }
        return Ok(avg);
    }

    let mut eff = cfg.working_digits;
    let mut last_lost = 0.0f64;
    for _ in 0..MAX_W_ESCALATIONS {
        let wide = cfg.escalated(eff);
        let _scope = PrecScope::enter(&wide);
        let (w, lost) = w_once(kappa, mu, x, &wide)?;
        if eff as f64 - lost >= cfg.loss_budget() {
            return Ok(w);
        }
        last_lost = lost;
        eff = cfg
            .working_digits
            .saturating_add(lost.ceil() as u32)
            .saturating_add(10);
    }
    Err(Error::PrecisionLoss(format!(
        "Whittaker W combination cancelled ~{last_lost:.1} digits; escalation exhausted at {eff} working digits"
    )))
}

/// dW/dx from the first-index recurrence
/// `x W' = (x/2 - κ) W_{κ,μ} - W_{κ+1,μ}`.
pub(crate) fn w_prime_cx(kappa: &Real, mu: &Cplx, x: &Real, cfg: &PrecisionConfig) -> Result<Cplx> {
    let w0 = w_cx(kappa, mu, x, cfg)?;
    let w1 = w_cx(&(kappa + &Real::one()), mu, x, cfg)?;
    let coeff = &(x * &Real::from_f64(0.5)) - kappa;
    let num = &w0.scale(&coeff) - &w1;
    Ok(num.scale(&x.recip()))
}

/// Truncated large-x expansion `e^{-x/2} x^κ Σ_s (1/2+μ-κ)_s (1/2-μ-κ)_s /
/// (s! (-x)^s)`, cut at the smallest term — or earlier, once the last
/// kept term falls below `target_rel` of the partial sum (pass 0 to
/// always cut at the smallest term). Returns the sum and a relative
/// error estimate (the usual first-omitted-term bound, floored at
/// 1e-300 so it stays a nonzero f64).
pub(crate) fn w_asymptotic_series_cx(
    kappa: &Real,
    mu: &Cplx,
    x: &Real,
    target_rel: f64,
) -> (Cplx, f64) {
    let half = Real::from_f64(0.5);
    let mu_sqr = mu * mu;
    let neg_x = x.neg();

    let mut term = Cplx::one();
    let mut sum = Cplx::one();
    let mut best_sqr = term.abs_sqr();
    let mut s: i64 = 0;
    // Terms shrink until s ≈ x; cap generously beyond that.
    let max_s = (4.0 * x.to_f64()).max(64.0) as i64;
    loop {
        // ratio = ((s + 1/2 - κ)² - μ²) / ((s+1)(-x))
        let b = &(&Real::from_i64(s) + &half) - kappa;
        let num = &Cplx::from_real(&b * &b) - &mu_sqr;
        let den = &Real::from_i64(s + 1) * &neg_x;
        let next = (&term * &num).scale(&den.recip());
        let next_sqr = next.abs_sqr();
        if next_sqr.cmp(&best_sqr) != std::cmp::Ordering::Less || s >= max_s {
            break;
        }
        term = next;
        best_sqr = next_sqr;
        sum = &sum + &term;
        s += 1;
        if target_rel > 0.0 {
            let cap = &sum.abs_sqr() * &Real::from_f64(target_rel * target_rel);
            if best_sqr.cmp(&cap) != std::cmp::Ordering::Greater {
                break;
            }
        }
    }

    let lead = &(x * &Real::from_f64(-0.5)).exp() * &x.pow(kappa);
    let rel_err = 10f64.powf(
        (0.5 * (best_sqr.log10_abs_approx() - sum.abs_sqr().log10_abs_approx().max(-600.0)))
            .max(-300.0),
    );
    (sum.scale(&lead), rel_err)
}

// ---------------------------------------------------------------------------
// public operations
// ---------------------------------------------------------------------------

/// Whittaker function of the first kind,
/// `M_{κ,μ}(x) = e^{-x/2} x^{1/2+μ} ₁F₁(1/2-κ+μ; 1+2μ; x)`.
///
/// Has poles at 2μ ∈ {-1, -2, …}; use [`whittaker_m_regularized`] there.
pub fn whittaker_m(p: WhittakerParams, cfg: &PrecisionConfig) -> Result<ScaledValue> {
    p.validate()?;
    cfg.validate()?;
    if p.mu.im == 0.0 {
        let tm = 2.0 * p.mu.re;
        if tm < 0.0 && tm == tm.round() {
            return Err(Error::Pole(format!(
                "M is undefined at 2·mu = {tm} (negative integer); the regularized form is finite"
            )));
        }
    }
    let _scope = PrecScope::enter(cfg);
    let kappa = Real::from_f64(p.kappa);
    let mu = Cplx::from_c64(p.mu);
    let x = Real::from_f64(p.x);
    let mreg = m_reg_cx(&kappa, &mu, &x, cfg)?;
    // M = Γ(1+2μ) · 𝓜; the Γ evaluation also guards near-pole arguments.
    let g = gamma_cx(&(&Cplx::from_real(Real::one()) + &(&mu + &mu)), cfg)?;
    Ok(ScaledValue::from_cplx(&(&mreg * &g), p.mu.im == 0.0))
}

/// Regularized Whittaker function of the first kind,
/// `𝓜_{κ,μ}(x) = M_{κ,μ}(x)/Γ(1+2μ)`, entire in μ.
pub fn whittaker_m_regularized(p: WhittakerParams, cfg: &PrecisionConfig) -> Result<ScaledValue> {
    p.validate()?;
    cfg.validate()?;
    let _scope = PrecScope::enter(cfg);
    let kappa = Real::from_f64(p.kappa);
    let mu = Cplx::from_c64(p.mu);
    let x = Real::from_f64(p.x);
    let mreg = m_reg_cx(&kappa, &mu, &x, cfg)?;
    Ok(ScaledValue::from_cplx(&mreg, p.mu.im == 0.0))
}

/// Whittaker function of the second kind `W_{κ,μ}(x)`, principal branch.
///
/// Even in μ; real (and certified so) when μ is real or purely imaginary.
pub fn whittaker_w(p: WhittakerParams, cfg: &PrecisionConfig) -> Result<ScaledValue> {
    p.validate()?;
    cfg.validate()?;
    let _scope = PrecScope::enter(cfg);
    let kappa = Real::from_f64(p.kappa);
    let mu = Cplx::from_c64(p.mu);
    let x = Real::from_f64(p.x);
    let w = w_cx(&kappa, &mu, &x, cfg)?;
    Ok(ScaledValue::from_cplx(&w, real_by_symmetry(p.mu)))
}

/// Derivative `dW_{κ,μ}/dx`, computed from the recurrence
/// `x W' = (x/2 - κ) W_{κ,μ} - W_{κ+1,μ}` (no finite differencing).
pub fn whittaker_w_prime(p: WhittakerParams, cfg: &PrecisionConfig) -> Result<ScaledValue> {
    p.validate()?;
    cfg.validate()?;
    let _scope = PrecScope::enter(cfg);
    let kappa = Real::from_f64(p.kappa);
    let mu = Cplx::from_c64(p.mu);
    let x = Real::from_f64(p.x);
    let wp = w_prime_cx(&kappa, &mu, &x, cfg)?;
    Ok(ScaledValue::from_cplx(&wp, real_by_symmetry(p.mu)))
}

/// Leading large-x form `e^{-x/2} x^κ` (the normalization W tends to),
/// independent of μ. Useful as a reference magnitude.
pub fn whittaker_w_asymptotic(p: WhittakerParams, cfg: &PrecisionConfig) -> Result<ScaledValue> {
    p.validate()?;
    cfg.validate()?;
    let _scope = PrecScope::enter(cfg);
    let kappa = Real::from_f64(p.kappa);
    let x = Real::from_f64(p.x);
    let lead = &(&x * &Real::from_f64(-0.5)).exp() * &x.pow(&kappa);
    Ok(ScaledValue::from_real(&lead))
}

/// K-Bessel (MacDonald) function via `K_μ(w) = √(π/(2w)) · W_{0,μ}(2w)`.
///
/// Real and certified so for real μ and for purely imaginary order.
pub fn k_bessel(mu: Complex64, w: f64, cfg: &PrecisionConfig) -> Result<ScaledValue> {
    if !w.is_finite() || w <= 0.0 {
        return Err(Error::Domain(format!("K-Bessel requires w > 0, got {w}")));
    }
    if !mu.re.is_finite() || !mu.im.is_finite() {
        return Err(Error::Domain("K-Bessel order must be finite".into()));
    }
    cfg.validate()?;
    let _scope = PrecScope::enter(cfg);
    let kappa = Real::zero();
    let mu_cx = Cplx::from_c64(mu);
    let x = Real::from_f64(2.0 * w);
    let wv = w_cx(&kappa, &mu_cx, &x, cfg)?;
    let pref = (&Real::pi() / &Real::from_f64(2.0 * w)).sqrt();
    Ok(ScaledValue::from_cplx(
        &wv.scale(&pref),
        real_by_symmetry(mu),
    ))
}

/// Main term of the oscillatory large-t form of `K_{it}(x)` for t > x > 0:
/// `√(2π) (t²-x²)^{-1/4} e^{-πt/2} sin(t·arccosh(t/x) - √(t²-x²) + π/4)`.
///
/// Plain double-precision: the factor e^{-πt/2} underflows to 0 for
/// t ≳ 900, which is far beyond the intended comparison range.
pub fn k_bessel_asymptotic_imag(t: f64, x: f64) -> Result<f64> {
    if !t.is_finite() || !x.is_finite() || x <= 0.0 || t <= x {
        return Err(Error::Domain(format!(
            "main term requires t > x > 0, got t={t}, x={x}"
        )));
    }
    let r = (t * t - x * x).sqrt();
    let phase = t * (t / x).acosh() - r + std::f64::consts::FRAC_PI_4;
    // (t²-x²)^{-1/4} = r^{-1/2} with r = √(t²-x²).
    Ok((2.0 * std::f64::consts::PI).sqrt() / r.sqrt()
        * (-std::f64::consts::FRAC_PI_2 * t).exp()
        * phase.sin())
}
