//! Back-integration oracle for the Whittaker function `W_{κ,μ}`.
//!
//! This module deliberately shares no evaluation machinery with
//! [`crate::whittaker`]: it reconstructs `W` by integrating Whittaker's
//! differential equation
//!
//! ```text
//! f″ = (1/4 − κ/x − (1/4 − μ²)/x²) f
//! ```
//!
//! inward from a large anchor `x_start`, where the solution that decays as
//! `x → ∞` is pinned down by its asymptotic expansion
//! `W ≈ e^{−x/2} x^κ (1 + a₁/x + a₂/x² + …)`. Inward integration is the
//! numerically stable direction for this solution: the complementary
//! solution behaves like `e^{+x/2}`, so any contamination of the initial
//! data along it shrinks like `e^{−(x_start−x)}` relative to the wanted
//! solution as `x` decreases.
//!
//! To keep every quantity in comfortable `f64` range the integrator works
//! in the gauged variable `g(x) = W(x)·e^{x/2} x^{−κ}`, which stays of
//! moderate size along the whole run; `W` and `W′` are reconstructed per
//! node with the decimal exponent of `e^{−x/2} x^κ` carried separately in
//! the [`ScaledValue`] scale. Substituting `W = e^{−x/2} x^κ g` into the
//! equation above gives the gauged form actually integrated:
//!
//! ```text
//! g″ = (1 − 2κ/x) g′ − ((κ − 1/2)² − μ²)/x² · g.
//! ```
//!
//! The stepper is an embedded Dormand–Prince 5(4) pair with standard
//! proportional step control. Tolerances act on the gauged state, whose
//! components are `O(1)`-to-moderately-small, so `rel_tol` is effectively
//! a relative tolerance on `W` itself.

use crate::arith::PrecScope;
use crate::cplx::Cplx;
use crate::error::{Error, Result};
use crate::scaled::ScaledValue;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::LN_10;

/// Controls one inward integration run.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct IntegrationSpec {
    /// Anchor abscissa where the asymptotic initial data is imposed.
    /// Must satisfy `x_start ≥ 10·(1 + |μ|² + κ²)` for the parameters
    /// being integrated.
    pub x_start: f64,
    /// Target abscissa; the last table node lands here exactly.
    pub x_end: f64,
    /// Relative tolerance of the local error control.
    pub rel_tol: f64,
    /// Absolute floor of the local error control (on the gauged state).
    pub abs_tol: f64,
    /// Budget of attempted steps (accepted and rejected).
    pub max_steps: usize,
}

impl IntegrationSpec {
    /// Default-tolerance spec integrating from the standard anchor `60`
    /// down to `x_end`.
    pub fn down_to(x_end: f64) -> Self {
        IntegrationSpec {
            x_start: 60.0,
            x_end,
            rel_tol: 1e-13,
            abs_tol: 1e-30,
            max_steps: 500_000,
        }
    }

    /// Like [`IntegrationSpec::down_to`], with the anchor enlarged when the
    /// given parameters need a more remote asymptotic regime.
    pub fn for_params(kappa: f64, mu: Complex64, x_end: f64) -> Self {
        let mut spec = Self::down_to(x_end);
        let needed = anchor_requirement(kappa, mu);
        if spec.x_start < needed {
            spec.x_start = needed.ceil();
        }
        spec
    }

    fn validate(&self) -> Result<()> {
        let finite = self.x_start.is_finite()
            && self.x_end.is_finite()
            && self.rel_tol.is_finite()
            && self.abs_tol.is_finite();
        if !finite {
            return Err(Error::Domain("integration spec has non-finite fields".into()));
        }
        if self.x_end <= 0.0 || self.x_start <= self.x_end {
            return Err(Error::Domain(format!(
                "integration range must satisfy x_start > x_end > 0, got [{}, {}]",
                self.x_end, self.x_start
            )));
        }
        if self.rel_tol <= 0.0 || self.abs_tol <= 0.0 {
            return Err(Error::Domain(format!(
                "tolerances must be positive, got rel_tol={:e}, abs_tol={:e}",
                self.rel_tol, self.abs_tol
            )));
        }
        if self.max_steps == 0 {
            return Err(Error::Domain("max_steps must be at least 1".into()));
        }
        Ok(())
    }
}

/// One accepted integration node.
#[derive(Clone, Debug, Serialize)]
pub struct WhittakerTableEntry {
    pub x: f64,
    pub w: ScaledValue,
    pub w_prime: ScaledValue,
}

/// Output of [`integrate_whittaker_inward`]: one entry per accepted step,
/// ordered by strictly decreasing `x`, first entry at `x_start`, last
/// entry exactly at `x_end`.
#[derive(Clone, Debug, Serialize)]
pub struct WhittakerTable {
    entries: Vec<WhittakerTableEntry>,
}

impl WhittakerTable {
    pub fn entries(&self) -> &[WhittakerTableEntry] {
        &self.entries
    }

    /// The node at the integration target `x_end`.
    pub fn end(&self) -> &WhittakerTableEntry {
        self.entries.last().expect("table has at least the anchor node")
    }
}

/// Minimum trusted step size; the integrator reports stiffness below it.
const MIN_STEP: f64 = 1e-12;

/// Step magnitude cap. Explicit Runge–Kutta stability for the
/// `e^{±x/2}`-type modes of the equation limits useful steps to a few
/// units regardless of accuracy, and a bounded step keeps the output
/// table dense enough to be used as one.
const MAX_STEP: f64 = 3.0;

/// Smallest anchor admissible for the given parameters.
fn anchor_requirement(kappa: f64, mu: Complex64) -> f64 {
    10.0 * (1.0 + mu.norm_sqr() + kappa * kappa)
}

type Y = [Complex64; 2];

// Dormand–Prince 5(4) tableau (nodes 0, 1/5, 3/10, 4/5, 8/9, 1, 1; the
// seventh stage is the FSAL evaluation at the accepted point).
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// Difference between the 5th- and embedded 4th-order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn lc(y: &Y, h: f64, terms: &[(f64, &Y)]) -> Y {
    let mut out = *y;
    for &(c, k) in terms {
        out[0] += k[0] * (h * c);
        out[1] += k[1] * (h * c);
    }
    out
}

/// One embedded step from `(x, y)` with signed increment `h`; returns the
/// 5th-order solution, the embedded error estimate, and the FSAL stage.
fn dp5_step<F: Fn(f64, &Y) -> Y>(f: &F, x: f64, y: &Y, h: f64, k1: &Y) -> (Y, Y, Y) {
    let k2 = f(x + 0.2 * h, &lc(y, h, &[(A21, k1)]));
    let k3 = f(x + 0.3 * h, &lc(y, h, &[(A31, k1), (A32, &k2)]));
    let k4 = f(x + 0.8 * h, &lc(y, h, &[(A41, k1), (A42, &k2), (A43, &k3)]));
    let k5 = f(
        x + (8.0 / 9.0) * h,
        &lc(y, h, &[(A51, k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
    );
    let k6 = f(
        x + h,
        &lc(y, h, &[(A61, k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
    );
    let y5 = lc(y, h, &[(B1, k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
    let k7 = f(x + h, &y5);
    let zero = [Complex64::new(0.0, 0.0); 2];
    let err = lc(
        &zero,
        h,
        &[(E1, k1), (E3, &k3), (E4, &k4), (E5, &k5), (E6, &k6), (E7, &k7)],
    );
    (y5, err, k7)
}

fn state_norm(y: &Y) -> f64 {
    (y[0].norm_sqr() + y[1].norm_sqr()).sqrt()
}

/// Sums the asymptotic expansion of the gauged solution,
/// `g(x) = 1 + a₁/x + a₂/x² + …`, and its derivative, at the anchor.
/// Successive terms obey `t_{s+1} = t_s · (μ² − (s+1/2−κ)²)/((s+1)·x)`;
/// the sum is truncated at the smallest term, which the anchor
/// precondition keeps below the f64 roundoff floor.
fn asymptotic_gauge_data(kappa: f64, mu2: Complex64, x: f64) -> Result<(Complex64, Complex64)> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut g = term;
    let mut gp = Complex64::new(0.0, 0.0);
    let mut tail_rel = 1.0f64;
    for s in 0..200u32 {
        let sf = s as f64;
        let shift = sf + 0.5 - kappa;
        let next = term * ((mu2 - Complex64::new(shift * shift, 0.0)) / ((sf + 1.0) * x));
        if next.norm() >= term.norm() {
            // The divergent tail of the asymptotic series has begun.
            break;
        }
        g += next;
        gp += next * (-(sf + 1.0) / x);
        term = next;
        tail_rel = term.norm() / g.norm();
        if tail_rel <= 1e-18 {
            break;
        }
    }
    if tail_rel > 1e-12 {
        return Err(Error::Domain(format!(
            "anchor x_start = {x} is not far enough into the asymptotic \
             regime (truncated tail {tail_rel:.2e} of the initial data)"
        )));
    }
    Ok((g, gp))
}

fn make_entry(x: f64, y: &Y, kappa: f64, real_flow: bool) -> WhittakerTableEntry {
    // ln of the positive gauge prefactor e^{-x/2} x^kappa, split into a
    // decimal shift and a residual factor in [1, 10).
    let ln_pref = -0.5 * x + kappa * x.ln();
    let shift = (ln_pref / LN_10).floor();
    let rem = (ln_pref - shift * LN_10).exp();
    let w = y[0] * rem;
    let wp = (y[1] + y[0] * (kappa / x - 0.5)) * rem;
    let _scope = PrecScope::enter_bits(192);
    let sv = |v: Complex64| -> ScaledValue {
        ScaledValue::from_cplx(&Cplx::from_f64(v.re, v.im), real_flow && v.im == 0.0)
            .mul_pow10(shift as i32)
    };
    WhittakerTableEntry {
        x,
        w: sv(w),
        w_prime: sv(wp),
    }
}

/// Integrates Whittaker's equation inward from asymptotic initial data at
/// `spec.x_start`, producing a table of `(x, W_{κ,μ}(x), W′_{κ,μ}(x))`
/// nodes down to `spec.x_end`.
///
/// Errors: [`Error::Domain`] when the spec is malformed or the anchor is
/// below `10·(1 + |μ|² + κ²)`; [`Error::Stiffness`] when the adaptive step
/// collapses below `1e-12`; [`Error::Convergence`] when the step budget is
/// exhausted.
pub fn integrate_whittaker_inward(
    kappa: f64,
    mu: Complex64,
    spec: IntegrationSpec,
) -> Result<WhittakerTable> {
    spec.validate()?;
    if !kappa.is_finite() || !mu.re.is_finite() || !mu.im.is_finite() {
        return Err(Error::Domain(format!(
            "indices must be finite, got kappa={kappa}, mu={mu}"
        )));
    }
    let needed = anchor_requirement(kappa, mu);
    if spec.x_start < needed {
        return Err(Error::Domain(format!(
            "asymptotic anchor too small for kappa={}, mu={}: x_start = {} < {:.1}",
            kappa, mu, spec.x_start, needed
        )));
    }

    let mu2 = mu * mu;
    // With mu real or purely imaginary, mu² is real, every coefficient
    // below is real, and f64 arithmetic keeps imaginary parts exactly
    // zero: the reconstructed values are certified real.
    let real_flow = mu2.im == 0.0;
    let coeff = Complex64::new((kappa - 0.5) * (kappa - 0.5), 0.0) - mu2;
    let rhs = move |x: f64, y: &Y| -> Y {
        [
            y[1],
            y[1] * (1.0 - 2.0 * kappa / x) - y[0] * (coeff / (x * x)),
        ]
    };

    let (g0, gp0) = asymptotic_gauge_data(kappa, mu2, spec.x_start)?;
    let mut x = spec.x_start;
    let mut y: Y = [g0, gp0];
    let mut entries = vec![make_entry(x, &y, kappa, real_flow)];

    let mut h = -0.5f64.min((spec.x_start - spec.x_end) / 10.0);
    let mut k1 = rhs(x, &y);
    let mut rejected_last = false;
    let mut steps = 0usize;
    while x > spec.x_end {
        steps += 1;
        if steps > spec.max_steps {
            return Err(Error::Convergence(format!(
                "step budget {} exhausted at x = {x:.6}",
                spec.max_steps
            )));
        }
        let landing = x + h <= spec.x_end;
        if landing {
            h = spec.x_end - x;
        }
        let (y5, errv, k7) = dp5_step(&rhs, x, &y, h, &k1);
        let scale = spec.abs_tol + spec.rel_tol * state_norm(&y).max(state_norm(&y5));
        let err = ((errv[0].norm_sqr() + errv[1].norm_sqr()) / 2.0).sqrt() / scale;
        let grow_cap = if rejected_last { 1.0 } else { 5.0 };
        let fac = if err.is_finite() {
            (0.9 * err.powf(-0.2)).clamp(0.2, grow_cap)
        } else {
            0.2
        };
        if err <= 1.0 {
            x = if landing { spec.x_end } else { x + h };
            y = y5;
            k1 = k7;
            entries.push(make_entry(x, &y, kappa, real_flow));
            rejected_last = false;
        } else {
            rejected_last = true;
        }
        h = (h * fac).max(-MAX_STEP);
        if x > spec.x_end && h.abs() < MIN_STEP {
            return Err(Error::Stiffness(format!(
                "step size {:.3e} fell below {MIN_STEP:.0e} at x = {x:.6}",
                h.abs()
            )));
        }
    }
    Ok(WhittakerTable { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::PrecisionConfig;
    use crate::whittaker::{whittaker_w, whittaker_w_prime, WhittakerParams};
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    /// Gauged-entry integration with caller-supplied initial data, for the
    /// perturbation test below.
    fn integrate_with_initial(
        kappa: f64,
        mu: Complex64,
        spec: IntegrationSpec,
        g0: Complex64,
        gp0: Complex64,
    ) -> WhittakerTable {
        let mu2 = mu * mu;
        let coeff = Complex64::new((kappa - 0.5) * (kappa - 0.5), 0.0) - mu2;
        let rhs = move |x: f64, y: &Y| -> Y {
            [
                y[1],
                y[1] * (1.0 - 2.0 * kappa / x) - y[0] * (coeff / (x * x)),
            ]
        };
        let mut x = spec.x_start;
        let mut y: Y = [g0, gp0];
        let mut entries = vec![make_entry(x, &y, kappa, true)];
        let mut h = -0.5;
        let mut k1 = rhs(x, &y);
        let mut rejected_last = false;
        while x > spec.x_end {
            let landing = x + h <= spec.x_end;
            if landing {
                h = spec.x_end - x;
            }
            let (y5, errv, k7) = dp5_step(&rhs, x, &y, h, &k1);
            let scale = spec.abs_tol + spec.rel_tol * state_norm(&y).max(state_norm(&y5));
            let err = ((errv[0].norm_sqr() + errv[1].norm_sqr()) / 2.0).sqrt() / scale;
            let grow_cap = if rejected_last { 1.0 } else { 5.0 };
            let fac = (0.9 * err.powf(-0.2)).clamp(0.2, grow_cap);
            if err <= 1.0 {
                x = if landing { spec.x_end } else { x + h };
                y = y5;
                k1 = k7;
                entries.push(make_entry(x, &y, kappa, true));
                rejected_last = false;
            } else {
                rejected_last = true;
            }
            h = (h * fac).max(-MAX_STEP);
        }
        WhittakerTable { entries }
    }

    #[test]
    fn recovers_closed_form_solutions_exactly() {
        // kappa=0, mu=1/2: W = e^{-x/2} exactly; the gauged solution is the
        // constant 1 and every node must match to well below the tolerance.
        let table = integrate_whittaker_inward(
            0.0,
            Complex64::new(0.5, 0.0),
            IntegrationSpec::down_to(1.0),
        )
        .unwrap();
        let entries = table.entries();
        assert_eq!(entries.first().unwrap().x, 60.0);
        assert_eq!(entries.last().unwrap().x, 1.0);
        assert!(entries.windows(2).all(|w| w[1].x < w[0].x), "x must decrease");
        let mut checked = 0;
        for e in entries {
            if e.x <= 20.0 {
                let want = (-e.x / 2.0).exp();
                let got = e.w.to_f64_real().expect("certified real");
                assert!(
                    (got - want).abs() <= 1e-13 * want,
                    "W at x={}: got {got:e}, want {want:e}",
                    e.x
                );
                let got_p = e.w_prime.to_f64_real().expect("certified real");
                assert!((got_p + 0.5 * want).abs() <= 1e-13 * want);
                checked += 1;
            }
        }
        assert!(checked >= 5, "expected several nodes in [1, 20], got {checked}");

        // mu = kappa - 1/2 collapses the whole asymptotic series, so
        // W = e^{-x/2} x^kappa exactly; exercises the x^kappa gauge factor.
        let table = integrate_whittaker_inward(
            0.7,
            Complex64::new(0.2, 0.0),
            IntegrationSpec::down_to(2.0),
        )
        .unwrap();
        let want = (-1.0f64).exp() * 2.0f64.powf(0.7);
        let got = table.end().w.to_f64_real().unwrap();
        assert!((got - want).abs() <= 1e-13 * want, "got {got}, want {want}");
    }

    #[test]
    fn matches_primary_evaluator_at_unit_argument() {
        let mu = Complex64::new(0.0, 2.0);
        let table =
            integrate_whittaker_inward(-0.5, mu, IntegrationSpec::for_params(-0.5, mu, 1.0))
                .unwrap();
        let end = table.end();
        assert_eq!(end.x, 1.0);
        assert!(end.w.is_real_certified());

        let p = WhittakerParams::new(-0.5, mu, 1.0).unwrap();
        let w_ref = whittaker_w(p, &cfg()).unwrap();
        let wp_ref = whittaker_w_prime(p, &cfg()).unwrap();
        let rel_w = end.w.rel_diff(&w_ref);
        let rel_wp = end.w_prime.rel_diff(&wp_ref);
        assert!(rel_w <= 1e-8, "W mismatch: rel {rel_w:.2e}");
        assert!(rel_wp <= 1e-7, "W' mismatch: rel {rel_wp:.2e}");
    }

    #[test]
    fn inward_integration_amplifies_initial_error_like_the_inward_dominant_mode() {
        // Perturbing the anchor data mixes in both fundamental solutions.
        // Integrating inward, the absolute difference between the base and
        // perturbed runs must grow like e^{-x/2} x^kappa (the solution
        // recessive at infinity is the dominant one in this direction),
        // while the relative difference stays at the perturbation size --
        // which is exactly why back-integration pins W down.
        let kappa = 1.0;
        let mu = Complex64::new(0.25, 0.0);
        let spec = IntegrationSpec::down_to(2.0);
        let mu2 = mu * mu;
        let (g0, gp0) = asymptotic_gauge_data(kappa, mu2, spec.x_start).unwrap();
        let delta = 1e-6;
        let base = integrate_with_initial(kappa, mu, spec, g0, gp0);
        let pert = integrate_with_initial(kappa, mu, spec, g0 * (1.0 + delta), gp0);

        let d_start = pert.entries()[0].w.sub(&base.entries()[0].w);
        let d_end = pert.end().w.sub(&base.end().w);
        let growth_log10 = d_end.abs_log10() - d_start.abs_log10();
        let predicted = ((spec.x_start - spec.x_end) / 2.0
            + kappa * (spec.x_end / spec.x_start).ln())
            / LN_10;
        assert!(
            (growth_log10 - predicted).abs() <= 0.5,
            "difference grew by 10^{growth_log10:.2}, dominant-mode prediction 10^{predicted:.2}"
        );

        let rel_end = pert.end().w.rel_diff(&base.end().w);
        assert!(
            rel_end >= delta / 3.0 && rel_end <= 3.0 * delta,
            "relative difference at the end should stay ~{delta:e}, got {rel_end:e}"
        );
    }

    #[test]
    fn agrees_with_primary_evaluator_on_random_draws() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let c = cfg();
        for i in 0..12 {
            let kappa = rng.gen_range(-2.0..2.0);
            let t = rng.gen_range(0.0..10.0);
            let x = rng.gen_range(0.5..10.0);
            let mu = Complex64::new(0.0, t);
            let table =
                integrate_whittaker_inward(kappa, mu, IntegrationSpec::for_params(kappa, mu, x))
                    .unwrap();
            let w_ref = whittaker_w(WhittakerParams::new(kappa, mu, x).unwrap(), &c).unwrap();
            let got = &table.end().w;
            let rel = got.rel_diff(&w_ref);
            let diff = got.sub(&w_ref);
            let sig_abs_log10 =
                diff.abs_log10() - f64::from(got.scale().max(w_ref.scale()));
            assert!(
                rel <= 1e-8 || diff.is_zero() || sig_abs_log10 <= -30.0,
                "draw {i} (kappa={kappa:.3}, t={t:.3}, x={x:.3}): rel {rel:.2e}, \
                 significand abs 10^{sig_abs_log10:.1}"
            );
        }

        // One draw off both mu-axes exercises the genuinely complex path.
        let mu = Complex64::new(0.2, 0.4);
        let table =
            integrate_whittaker_inward(0.3, mu, IntegrationSpec::for_params(0.3, mu, 2.0))
                .unwrap();
        let w_ref = whittaker_w(WhittakerParams::new(0.3, mu, 2.0).unwrap(), &cfg()).unwrap();
        assert!(!table.end().w.is_real_certified());
        assert!(table.end().w.rel_diff(&w_ref) <= 1e-8);
    }

    #[test]
    fn validates_spec_and_asymptotic_anchor() {
        let mu = Complex64::new(0.0, 1.0);
        let bad = |s: IntegrationSpec| {
            matches!(
                integrate_whittaker_inward(0.0, mu, s),
                Err(Error::Domain(_))
            )
        };
        let mut s = IntegrationSpec::down_to(1.0);
        s.x_end = 0.0;
        assert!(bad(s));
        let mut s = IntegrationSpec::down_to(1.0);
        s.x_start = 0.5;
        assert!(bad(s));
        let mut s = IntegrationSpec::down_to(1.0);
        s.rel_tol = 0.0;
        assert!(bad(s));
        let mut s = IntegrationSpec::down_to(1.0);
        s.max_steps = 0;
        assert!(bad(s));

        // Anchor below 10(1 + |mu|^2 + kappa^2) = 100 must be rejected.
        let far = Complex64::new(0.0, 3.0);
        assert!(matches!(
            integrate_whittaker_inward(0.0, far, IntegrationSpec::down_to(1.0)),
            Err(Error::Domain(_))
        ));
        // ... and the parameter-aware constructor enlarges it.
        let spec = IntegrationSpec::for_params(0.0, far, 1.0);
        assert!(spec.x_start >= 100.0);
        assert!(integrate_whittaker_inward(0.0, far, spec).is_ok());

        assert!(matches!(
            integrate_whittaker_inward(f64::NAN, mu, IntegrationSpec::down_to(1.0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn reports_stiffness_and_step_budget_exhaustion() {
        let mu = Complex64::new(0.5, 0.0);
        // A tolerance far below f64 roundoff forces every step to be
        // rejected and the step size to collapse.
        let mut s = IntegrationSpec::down_to(1.0);
        s.rel_tol = 1e-300;
        s.abs_tol = 1e-300;
        // (use a nonzero first-order coefficient so roundoff is visible)
        let r = integrate_whittaker_inward(1.2, Complex64::new(0.0, 0.3), s);
        assert!(matches!(r, Err(Error::Stiffness(_))), "got {r:?}");

        let mut s = IntegrationSpec::down_to(1.0);
        s.max_steps = 10;
        assert!(matches!(
            integrate_whittaker_inward(0.0, mu, s),
            Err(Error::Convergence(_))
        ));
    }
}
