//! Weyl counting integral and closed-form counting asymptotics for the
//! Morse half-line problem with potential `V_k(u) = e^{2u}/4 + k·e^u`.
//!
//! [`weyl_integral`] evaluates the classical phase-space count
//! `(1/π)∫ √(T − V_k(u)) du` over the allowed region `[u0, u_T]`, and
//! [`asymptotic_count`] gives the closed-form μ-plane zero-count main
//! term; the two agree up to a bounded remainder, which the spectral
//! tests pin down empirically.

use crate::error::{Error, Result};

/// Turning point: the unique `u_T` with `V_k(u_T) = t` on the increasing
/// branch, from the positive root of the quadratic in `e^u`.
fn turning_point(k: f64, t: f64) -> f64 {
    let disc = (k * k + t).sqrt();
    let y = if k >= 0.0 {
        // 2(disc - k) rewritten to avoid cancellation for large k
        2.0 * t / (disc + k)
    } else {
        2.0 * (disc - k)
    };
    y.ln()
}

/// `V_k(u) = e^{2u}/4 + k·e^u`.
fn potential(k: f64, u: f64) -> f64 {
    let w = u.exp();
    w * w / 4.0 + k * w
}

/// Adaptive Simpson on `[a, b]` with the classic `(S₂ − S)/15` error
/// estimate and Richardson correction.
fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        m: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + recurse(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    recurse(f, a, m, b, fa, fm, fb, whole, tol, 48)
}

/// `∫_a^{u_T} √(t − V_k(u)) du` with the square-root turning-point
/// singularity removed by `u = u_T − s²` (the substituted integrand is
/// smooth at `s = 0`).
fn allowed_integral(k: f64, a: f64, u_t: f64, t: f64, tol: f64) -> f64 {
    let s_max = (u_t - a).sqrt();
    let g = move |s: f64| {
        let u = u_t - s * s;
        2.0 * s * (t - potential(k, u)).max(0.0).sqrt()
    };
    adaptive_simpson(&g, 0.0, s_max, tol)
}

pub(crate) fn weyl_integral_with_tol(k: f64, u0: f64, t: f64, tol_rel: f64) -> Result<f64> {
    if !k.is_finite() || !u0.is_finite() || !t.is_finite() {
        return Err(Error::Domain(format!(
            "weyl integral needs finite arguments, got k={k}, u0={u0}, T={t}"
        )));
    }
    let v0 = potential(k, u0);
    // V is monotone on [u0, ∞) unless k < 0 and u0 is left of the dip at
    // log(2|k|).
    let monotone = k >= 0.0 || u0 >= (-2.0 * k).ln();
    if t <= v0 {
        if monotone {
            // Empty classically-allowed region.
            return Ok(0.0);
        }
        // The allowed region exists but is detached from u0; the
        // single-turning-point count does not apply.
        return Err(Error::Domain(format!(
            "T = {t} does not exceed the head maximum V({u0}) = {v0} of the \
             non-monotone potential (k = {k})"
        )));
    }
    let u_t = turning_point(k, t);
    if u_t <= u0 {
        return Ok(0.0);
    }
    // Scale the absolute Simpson tolerance by a cheap overestimate of the
    // integral's size.
    let tol = tol_rel * (t - v0).sqrt().max(t.abs().sqrt()) * (u_t - u0);
    let raw = if !monotone {
        // Split at a fixed station past the dip so each piece is smooth;
        // the right piece carries the turning point.
        let u1 = (6.0 * (-k) + 1.0).ln();
        if u1 < u_t {
            let left =
                adaptive_simpson(&|u: f64| (t - potential(k, u)).max(0.0).sqrt(), u0, u1, tol)
                    + allowed_integral(k, u1, u_t, t, tol);
            left
        } else {
            allowed_integral(k, u0, u_t, t, tol)
        }
    } else {
        allowed_integral(k, u0, u_t, t, tol)
    };
    Ok(raw / std::f64::consts::PI)
}

/// Classical phase-space eigenvalue count `(1/π)∫_{u0}^{u_T} √(T − V_k(u)) du`.
///
/// Returns `0` when the allowed region is empty (`T ≤ V_k(u0)` with `V`
/// increasing at `u0`). For a non-monotone potential head (`k < 0`,
/// `u0 < log 2|k|`), `T` must exceed `V_k(u0)` so that the region is a
/// single interval; otherwise a domain error is reported.
pub fn weyl_integral(k: f64, u0: f64, t: f64) -> Result<f64> {
    weyl_integral_with_tol(k, u0, t, 1e-11)
}

/// Main term of the μ-plane zero count with `|Im μ| ≤ T` (both signs):
/// `(2/π)·T·log T + (2/π)(2·log 2 − 1 − u0)·T`.
///
/// Intended for `T > 1`. The eigenvalue-plane count up to energy `E` is
/// `asymptotic_count(u0, √E) / 2`.
pub fn asymptotic_count(u0: f64, t_mu: f64) -> f64 {
    let c = std::f64::consts::FRAC_2_PI;
    c * t_mu * t_mu.ln() + c * (2.0 * std::f64::consts::LN_2 - 1.0 - u0) * t_mu
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exact value for k = 0: with v0 = e^{u0}/(2√T),
    /// ∫ = √T·[log((1+√(1−v0²))/v0) − √(1−v0²)].
    fn closed_form_k0(u0: f64, t: f64) -> f64 {
        let v0 = u0.exp() / (2.0 * t.sqrt());
        let w = (1.0 - v0 * v0).sqrt();
        t.sqrt() * (((1.0 + w) / v0).ln() - w) / std::f64::consts::PI
    }

    #[test]
    fn matches_closed_form_for_pure_exponential_potential() {
        for (u0, t) in [(0.0, 1e4), (0.0, 37.5), (1.0, 1e3), (-2.0, 500.0)] {
            let got = weyl_integral(0.0, u0, t).unwrap();
            let want = closed_form_k0(u0, t);
            let rel = (got - want).abs() / want;
            assert!(rel <= 1e-9, "u0={u0}, T={t}: got {got}, want {want}, rel {rel:.2e}");
        }
    }

    #[test]
    fn empty_allowed_region_gives_zero() {
        // T = V(u0) exactly, monotone potential.
        assert_eq!(weyl_integral(0.0, 0.0, 0.25).unwrap(), 0.0);
        assert_eq!(weyl_integral(1.0, 0.0, 1.25).unwrap(), 0.0);
        assert_eq!(weyl_integral(2.0, 1.0, 0.5).unwrap(), 0.0);
    }

    #[test]
    fn detached_region_is_a_domain_error() {
        // k=-2, u0=0 sits left of the dip at log 4; V(0) = -1.75.
        let r = weyl_integral(-2.0, 0.0, -1.8);
        assert!(matches!(r, Err(Error::Domain(_))), "got {r:?}");
        // Just above the head maximum the integral is fine.
        assert!(weyl_integral(-2.0, 0.0, -1.7).unwrap() > 0.0);
        // Non-finite input is rejected.
        assert!(matches!(
            weyl_integral(f64::NAN, 0.0, 1.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn split_and_negative_energy_paths_match_brute_force() {
        // Brute-force midpoint rule on the raw integrand.
        let brute = |k: f64, u0: f64, t: f64, u_t: f64| {
            let n = 4_000_000usize;
            let h = (u_t - u0) / n as f64;
            let mut s = 0.0;
            for i in 0..n {
                let u = u0 + (i as f64 + 0.5) * h;
                s += (t - potential(k, u)).max(0.0).sqrt();
            }
            s * h / std::f64::consts::PI
        };
        // Split path: k=-2, u0=0, T=100 (u1 = log 13 < u_T).
        let got = weyl_integral(-2.0, 0.0, 100.0).unwrap();
        let want = brute(-2.0, 0.0, 100.0, turning_point(-2.0, 100.0));
        assert!((got - want).abs() / want < 1e-5, "split: {got} vs {want}");
        // Negative-energy window of the dipping well: T in (V_min, V(u0)) ... (V(u0), 0).
        let got = weyl_integral(-2.0, 0.0, -1.0).unwrap();
        let want = brute(-2.0, 0.0, -1.0, turning_point(-2.0, -1.0));
        assert!((got - want).abs() / want < 1e-5, "negative T: {got} vs {want}");
    }

    #[test]
    fn tracks_the_asymptotic_main_term() {
        // |(1/π)∫ − main/2| stays bounded (well under 2) as T grows.
        for t in [1e3, 1e4, 1e5] {
            let integral = weyl_integral(0.0, 0.0, t).unwrap();
            let main = asymptotic_count(0.0, t.sqrt()) / 2.0;
            assert!(
                (integral - main).abs() <= 2.0,
                "T={t}: integral {integral}, main {main}"
            );
        }
        // Same comparison with a shifted endpoint.
        for t in [1e3, 1e4] {
            let integral = weyl_integral(0.0, 1.5, t).unwrap();
            let main = asymptotic_count(1.5, t.sqrt()) / 2.0;
            assert!((integral - main).abs() <= 2.0);
        }
    }

    #[test]
    fn quadrature_refinement_is_converged() {
        for (k, u0, t) in [(0.0, 0.0, 1e4), (-2.0, 0.0, 100.0), (3.0, -1.0, 2e3)] {
            let coarse = weyl_integral_with_tol(k, u0, t, 1e-9).unwrap();
            let fine = weyl_integral_with_tol(k, u0, t, 1e-13).unwrap();
            let rel = (coarse - fine).abs() / fine.abs();
            assert!(rel < 1e-8, "k={k}, u0={u0}, T={t}: rel {rel:.2e}");
        }
    }

    #[test]
    fn count_coefficients_are_as_stated() {
        // Second coefficient cancels exactly at u0 = 2 log 2 − 1.
        let u0 = 2.0 * std::f64::consts::LN_2 - 1.0;
        for t in [2.0, 10.0, 100.0] {
            let got = asymptotic_count(u0, t);
            let want = std::f64::consts::FRAC_2_PI * t * t.ln();
            assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0));
        }
        // Linear-in-T part recovers c2 = (2/π)(2 log 2 − 1 − u0).
        let u0 = 0.7;
        let t = 50.0;
        let c2 = (asymptotic_count(u0, t) - std::f64::consts::FRAC_2_PI * t * t.ln()) / t;
        let want = std::f64::consts::FRAC_2_PI * (2.0 * std::f64::consts::LN_2 - 1.0 - u0);
        assert!((c2 - want).abs() <= 1e-13);
    }
}
