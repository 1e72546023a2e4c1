//! Spectral theory of the Morse half-line problem: eigenvalues as zeros
//! of `Z(μ) = W_{κ,μ}(e^{u0})` with `κ = −k`, zero scans on both μ-axes,
//! zero counting against the closed-form main term, and eigenvalue
//! monotonicity checks in the potential parameters.
//!
//! Energies and μ-coordinates are linked by `E = −μ²`: the imaginary
//! axis `μ = it` carries the positive spectrum `E = t²`, while real
//! zeros `μ ∈ (−κ, κ)` (possible only for `κ > 0`, i.e. attractive
//! wells) carry finitely many negative eigenvalues.

use crate::error::{Error, Result};
use crate::precision::PrecisionConfig;
use crate::scaled::ScaledValue;
use crate::weyl::asymptotic_count;
use crate::whittaker::{whittaker_w, WhittakerParams};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::{FRAC_2_PI, LN_2, PI, TAU};

/// The Morse half-line problem `−ψ″ + (e^{2u}/4 + k·e^u)ψ = Eψ` on
/// `[u0, ∞)` with boundary condition
/// `cos α·ψ(u0) + sin α·ψ′(u0) = 0`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct MorseProblem {
    /// Potential parameter; the Whittaker index is `κ = −k`.
    pub k: f64,
    /// Left endpoint; the Whittaker argument is `x0 = e^{u0}`.
    pub u0: f64,
    /// Boundary angle, normalized to `[0, 2π)`; `0` is Dirichlet.
    pub alpha: f64,
}

impl MorseProblem {
    pub fn new(k: f64, u0: f64, alpha: f64) -> Result<Self> {
        if !k.is_finite() || !u0.is_finite() || !alpha.is_finite() {
            return Err(Error::Domain(format!(
                "Morse problem parameters must be finite, got k={k}, u0={u0}, alpha={alpha}"
            )));
        }
        if !u0.exp().is_finite() {
            return Err(Error::Domain(format!(
                "u0 = {u0} overflows the endpoint x0 = e^(u0)"
            )));
        }
        Ok(MorseProblem {
            k,
            u0,
            alpha: alpha.rem_euclid(TAU),
        })
    }

    pub fn dirichlet(k: f64, u0: f64) -> Result<Self> {
        Self::new(k, u0, 0.0)
    }

    /// Whittaker first index `κ = −k`.
    pub fn kappa(&self) -> f64 {
        -self.k
    }

    /// Left endpoint in the Whittaker variable, `x0 = e^{u0}`.
    pub fn x0(&self) -> f64 {
        self.u0.exp()
    }

    fn require_dirichlet(&self, what: &str) -> Result<()> {
        if self.alpha != 0.0 {
            return Err(Error::Domain(format!(
                "{what} requires the Dirichlet problem (alpha = 0), got alpha = {}",
                self.alpha
            )));
        }
        Ok(())
    }
}

/// Which μ-axis a spectral zero lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    /// `μ = it`: positive eigenvalue `E = t²`.
    Imaginary,
    /// `μ` real: negative eigenvalue `E = −μ²` (or the double zero at 0).
    Real,
}

/// One refined zero of `Z(μ)` on an axis.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SpectralZero {
    pub axis: Axis,
    /// Position within its axis's list, ascending, from 0.
    pub index: usize,
    /// `t` for `μ = it`, or real `μ` itself.
    pub coordinate: f64,
    /// Final bisection bracket straddling the sign change.
    pub bracket: (f64, f64),
    /// `E = t²` on the imaginary axis, `E = −μ²` on the real axis.
    pub energy: f64,
    /// `|Z|` at `coordinate` (decimal-clamped), as a refinement diagnostic.
    pub residual: f64,
    /// 1 for a simple zero; 2 for the double zero at `μ = 0`.
    pub multiplicity: u32,
}

/// One checkpoint row of a [`CountingReport`].
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CountRow {
    pub t: f64,
    /// μ-plane zero count with `|Im μ| ≤ t`: both signs, the double zero
    /// (if any) counted twice.
    pub observed: usize,
    pub main_term: f64,
    /// `observed − main_term`; empirically O(1).
    pub diff: f64,
}

/// Observed zero counts against the closed-form main term
/// `c1·T·log T + c2·T`.
#[derive(Clone, Debug, Serialize)]
pub struct CountingReport {
    pub rows: Vec<CountRow>,
    pub c1: f64,
    pub c2: f64,
}

/// Eigenvalue tables over parameter grids, with the monotonicity
/// assertions already enforced at construction.
#[derive(Clone, Debug, Serialize)]
pub struct MonotonicityReport {
    pub alpha: f64,
    pub k_values: Vec<f64>,
    pub u0_values: Vec<f64>,
    pub n_levels: usize,
    /// `levels[i][j][l]` = l-th eigenvalue at `(k_values[i], u0_values[j])`.
    pub levels: Vec<Vec<Vec<f64>>>,
    /// Whether the `u0`-sweep comparison applied for each `k` (it is
    /// asserted only for `k ≥ 0`, or for `k < 0` once every `u0` is at or
    /// beyond the potential's dip at `log 2|k|`).
    pub u0_sweep_checked: Vec<bool>,
}

/// `V_k(u) = e^{2u}/4 + k·e^u`.
pub fn potential_value(k: f64, u: f64) -> f64 {
    let w = u.exp();
    w * w / 4.0 + k * w
}

/// Reduces the general exponential potential `V(v) = A·e^{2v} + B·e^v` on
/// `[v0, ∞)` to the normal form `V_k` on `[u0, ∞)` by the translation
/// `u = v + log(4A)/2` (the unique shift sending `A·e^{2v}` to
/// `e^{2u}/4`): returns `(k, u0) = (B/(2√A), v0 + log(4A)/2)`.
pub fn rescale_general(a: f64, b: f64, v0: f64) -> Result<(f64, f64)> {
    if !(a > 0.0) || !a.is_finite() || !b.is_finite() || !v0.is_finite() {
        return Err(Error::Domain(format!(
            "rescaling needs finite parameters with A > 0, got A={a}, B={b}, v0={v0}"
        )));
    }
    Ok((b / (2.0 * a.sqrt()), v0 + 0.5 * (4.0 * a).ln()))
}

/// `μ = iz` with `z = √E` (principal branch). For real `E ≤ 0` the index
/// is taken real, `μ = √(−E)`, exactly; `W` is even in `μ`, so the branch
/// choice never matters.
pub(crate) fn mu_from_energy(e: Complex64) -> Complex64 {
    if e.im == 0.0 {
        if e.re <= 0.0 {
            Complex64::new((-e.re).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, e.re.sqrt())
        }
    } else {
        let z = e.sqrt();
        Complex64::new(-z.im, z.re)
    }
}

/// Collapses a scaled value to a sign-faithful `f64` (the true value with
/// the decimal exponent saturated to ±250) for bracketing and reporting.
pub(crate) fn scaled_real(v: &ScaledValue) -> f64 {
    if v.is_zero() {
        return 0.0;
    }
    v.significand().re * 10f64.powi(v.scale().clamp(-250, 250))
}

/// `Z(μ) = W_{κ,μ}(e^{u0})`, the spectral determinant of the Dirichlet
/// problem; even in `μ`, real-valued (and certified) on both axes.
pub fn z_function(prob: &MorseProblem, mu: Complex64, cfg: &PrecisionConfig) -> Result<ScaledValue> {
    whittaker_w(WhittakerParams::new(prob.kappa(), mu, prob.x0())?, cfg)
}

/// `ψ(u, E) = e^{−u/2}·W_{κ, iz}(e^u)`, `z = √E`: the decaying solution
/// whose boundary combination vanishes exactly at eigenvalues.
pub fn eigenfunction_value(
    prob: &MorseProblem,
    e: Complex64,
    u: f64,
    cfg: &PrecisionConfig,
) -> Result<ScaledValue> {
    if !(u >= prob.u0) {
        return Err(Error::Domain(format!(
            "evaluation point u = {u} is left of the endpoint u0 = {}",
            prob.u0
        )));
    }
    let w = whittaker_w(
        WhittakerParams::new(prob.kappa(), mu_from_energy(e), u.exp())?,
        cfg,
    )?;
    Ok(w.mul(&ScaledValue::from_f64((-u / 2.0).exp())))
}

/// `cos α·ψ(u0) + sin α·ψ′(u0)` as a scaled value, with
/// `ψ′(u0) = e^{−u0/2}[(x0/2 − κ − ½)·W_{κ,μ}(x0) − W_{κ+1,μ}(x0)]`
/// from the contiguous derivative identity.
fn boundary_form(prob: &MorseProblem, e: f64, cfg: &PrecisionConfig) -> Result<ScaledValue> {
    let mu = mu_from_energy(Complex64::new(e, 0.0));
    let kappa = prob.kappa();
    let x0 = prob.x0();
    let (ca, sa) = (prob.alpha.cos(), prob.alpha.sin());
    let w = whittaker_w(WhittakerParams::new(kappa, mu, x0)?, cfg)?;
    let coeff = if prob.alpha == 0.0 {
        1.0
    } else {
        ca + sa * (x0 / 2.0 - kappa - 0.5)
    };
    let mut form = w.mul(&ScaledValue::from_f64(coeff));
    if prob.alpha != 0.0 && sa != 0.0 {
        let w_up = whittaker_w(WhittakerParams::new(kappa + 1.0, mu, x0)?, cfg)?;
        form = form.sub(&w_up.mul(&ScaledValue::from_f64(sa)));
    }
    Ok(form.mul(&ScaledValue::from_f64((-prob.u0 / 2.0).exp())))
}

/// Boundary form at real energy `E`, collapsed to a sign-faithful `f64`;
/// zero exactly at the eigenvalues of the `α` problem.
pub fn shooting_function(prob: &MorseProblem, e: f64, cfg: &PrecisionConfig) -> Result<f64> {
    if !e.is_finite() {
        return Err(Error::Domain(format!("shooting energy must be finite, got {e}")));
    }
    Ok(scaled_real(&boundary_form(prob, e, cfg)?))
}

/// Density-adapted initial scan step in `t`: a quarter of the asymptotic
/// zero gap `π/log T`, floored at `T = e²` so small scans stay sane.
pub fn default_scan_step(t_max: f64) -> f64 {
    0.25 * PI / t_max.max(std::f64::consts::E * std::f64::consts::E).ln()
}

/// Bisection on a sign change; returns the refined bracket and the last
/// midpoint value.
pub(crate) fn bisect<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    mut a: f64,
    mut b: f64,
    mut fa: f64,
    tol_at: impl Fn(f64) -> f64,
) -> Result<(f64, f64, f64)> {
    let mut fm = fa;
    for _ in 0..200 {
        if b - a <= tol_at(b) {
            break;
        }
        let mid = 0.5 * (a + b);
        fm = f(mid)?;
        if fm == 0.0 {
            return Ok((mid, mid, 0.0));
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Ok((a, b, fm))
}

/// One scan pass: sample points `t = j·s` (plus a sentinel hugging 0) and
/// collect sign-change brackets `(a, b, f(a))`.
fn scan_brackets<F: FnMut(f64) -> Result<f64>>(
    f: &mut F,
    t_max: f64,
    s: f64,
) -> Result<Vec<(f64, f64, f64)>> {
    let mut brackets = Vec::new();
    let mut t_prev = (s * 1e-4).min(1e-4);
    let mut f_prev = f(t_prev)?;
    let mut j = 1u64;
    loop {
        let t = (j as f64 * s).min(t_max);
        let v = f(t)?;
        if v == 0.0 {
            brackets.push((t, t, 0.0));
        } else if f_prev != 0.0 && v.signum() != f_prev.signum() {
            brackets.push((t_prev, t, f_prev));
        }
        t_prev = t;
        f_prev = v;
        if t >= t_max {
            return Ok(brackets);
        }
        j += 1;
    }
}

/// Zeros of `Z(it)` for `t ∈ (0, T]`: the positive Dirichlet spectrum in
/// the coordinate `E = t²`.
///
/// Scans at `step`, re-scans at half step, and accepts only when the two
/// passes agree on the count (halving further on disagreement); each
/// bracket is bisected to `|b − a| ≤ 10⁻¹⁰·max(1, t)`.
pub fn dirichlet_zero_scan(
    prob: &MorseProblem,
    t_max: f64,
    step: f64,
    cfg: &PrecisionConfig,
) -> Result<Vec<SpectralZero>> {
    prob.require_dirichlet("the zero scan")?;
    if !(t_max > 0.0) || !t_max.is_finite() {
        return Err(Error::Domain(format!("scan endpoint must be positive, got {t_max}")));
    }
    if !(step > 0.0) || !step.is_finite() || step > t_max {
        return Err(Error::Domain(format!(
            "scan step must lie in (0, {t_max}], got {step}"
        )));
    }
    let mut f = |t: f64| -> Result<f64> {
        Ok(scaled_real(&z_function(prob, Complex64::new(0.0, t), cfg)?))
    };

    let refined = scan_refined_zeros(&mut f, t_max, step)?;
    Ok(refined
        .into_iter()
        .enumerate()
        .map(|(index, (coordinate, bracket, residual))| SpectralZero {
            axis: Axis::Imaginary,
            index,
            coordinate,
            bracket,
            energy: coordinate * coordinate,
            residual,
            multiplicity: 1,
        })
        .collect())
}

/// Count-verified zero refinement shared by the axis scans: samples at
/// `step`, re-scans at half step, and accepts only when the two passes
/// agree on the bracket count (halving up to 8 more times); each accepted
/// bracket is bisected to `|b − a| ≤ 10⁻¹⁰·max(1, t)`. Returns ascending
/// `(coordinate, bracket, residual)` rows.
pub(crate) fn scan_refined_zeros<F: FnMut(f64) -> Result<f64>>(
    f: &mut F,
    t_max: f64,
    step: f64,
) -> Result<Vec<(f64, (f64, f64), f64)>> {
    let mut s = step;
    let mut current = scan_brackets(f, t_max, s)?;
    for _ in 0..8 {
        let halved = scan_brackets(f, t_max, s / 2.0)?;
        if halved.len() == current.len() {
            let mut zeros = Vec::with_capacity(halved.len());
            for &(a, b, fa) in halved.iter() {
                let (lo, hi, fm) = if a == b {
                    (a, b, 0.0)
                } else {
                    bisect(&mut *f, a, b, fa, |t| 1e-10 * t.abs().max(1.0))?
                };
                zeros.push((0.5 * (lo + hi), (lo, hi), fm.abs()));
            }
            return Ok(zeros);
        }
        s /= 2.0;
        current = halved;
    }
    Err(Error::Convergence(
        "zero count kept changing under step halving; the scan step cannot resolve \
         the sign structure"
            .into(),
    ))
}

/// Real-axis zeros of `Z(μ)` (equivalently, negative Dirichlet
/// eigenvalues `E = −μ²`), including the double zero at `μ = 0` when
/// present. Empty whenever `κ = −k ≤ 0`; otherwise all zeros lie in
/// `(−κ, κ)` and only the positive representatives are returned
/// (`Z` is even).
pub fn exceptional_real_zeros(
    prob: &MorseProblem,
    cfg: &PrecisionConfig,
) -> Result<Vec<SpectralZero>> {
    prob.require_dirichlet("the real-zero scan")?;
    let kappa = prob.kappa();
    if kappa <= 0.0 {
        return Ok(Vec::new());
    }
    let mut f =
        |mu: f64| -> Result<f64> { Ok(scaled_real(&z_function(prob, Complex64::new(mu, 0.0), cfg)?)) };
    let mut zeros = Vec::new();

    // Double zero at the origin: |Z(0)| must sit 8 decades under the
    // local scale AND Z must hold its sign on both axes within 10^-3
    // (a simple zero at 0 is impossible — Z is even — so smallness plus
    // sign constancy pins the quadratic behavior).
    {
        // At μ = 0 the evaluator averages over μ = ±offset, which near a
        // double zero reads back c·offset² instead of 0; shrink the
        // offset so that bias sits far below the detection threshold.
        let mut cfg0 = cfg.clone();
        cfg0.halfint_offset = cfg.halfint_offset.min(1e-9);
        let z0 = z_function(prob, Complex64::new(0.0, 0.0), &cfg0)?;
        let mut local_log = f64::NEG_INFINITY;
        let mut constant_signs = true;
        for axis_im in [false, true] {
            let mut sign = 0.0f64;
            for i in 1..=4 {
                let c = 2.5e-4 * i as f64;
                let mu = if axis_im {
                    Complex64::new(0.0, c)
                } else {
                    Complex64::new(c, 0.0)
                };
                let z = z_function(prob, mu, cfg)?;
                local_log = local_log.max(z.abs_log10());
                let v = scaled_real(&z);
                if i == 1 {
                    sign = v.signum();
                } else if v.signum() != sign {
                    constant_signs = false;
                }
            }
        }
        let small = z0.is_zero() || z0.abs_log10() < local_log - 8.0;
        if small && constant_signs {
            zeros.push(SpectralZero {
                axis: Axis::Real,
                index: 0,
                coordinate: 0.0,
                bracket: (-1e-3, 1e-3),
                energy: 0.0,
                residual: scaled_real(&z0).abs(),
                multiplicity: 2,
            });
        }
    }

    // Simple zeros in (0, κ).
    let n_samples = 240usize;
    let h = kappa / (n_samples + 1) as f64;
    let mut prev = (h * 1e-3, f(h * 1e-3)?);
    for j in 1..=n_samples {
        let mu = h * j as f64;
        let v = f(mu)?;
        if v == 0.0 {
            zeros.push(SpectralZero {
                axis: Axis::Real,
                index: 0,
                coordinate: mu,
                bracket: (mu, mu),
                energy: -mu * mu,
                residual: 0.0,
                multiplicity: 1,
            });
        } else if prev.1 != 0.0 && v.signum() != prev.1.signum() {
            let (lo, hi, fm) = bisect(&mut f, prev.0, mu, prev.1, |m| 1e-10 * m.abs().max(1.0))?;
            let coordinate = 0.5 * (lo + hi);
            zeros.push(SpectralZero {
                axis: Axis::Real,
                index: 0,
                coordinate,
                bracket: (lo, hi),
                energy: -coordinate * coordinate,
                residual: fm.abs(),
                multiplicity: 1,
            });
        }
        prev = (mu, v);
    }
    zeros.sort_by(|a, b| a.coordinate.total_cmp(&b.coordinate));
    for (i, z) in zeros.iter_mut().enumerate() {
        z.index = i;
    }
    Ok(zeros)
}

/// The `n` lowest eigenvalues of the general-`α` problem, by marching the
/// shooting function upward from below the spectrum (`E = −k² − 1` for
/// attractive wells, `−1` otherwise), bracketing its sign changes, and
/// bisecting each to `10⁻¹⁰·(1 + |E|)`.
///
/// Fails with a scan-exhaustion error if fewer than `n` eigenvalues lie
/// below `e_max`.
pub fn eigenvalues_general_alpha(
    prob: &MorseProblem,
    n: usize,
    e_max: f64,
    cfg: &PrecisionConfig,
) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::Domain("eigenvalue count n must be at least 1".into()));
    }
    let lower = if prob.k < 0.0 { -prob.k * prob.k - 1.0 } else { -1.0 };
    if !e_max.is_finite() || e_max <= lower {
        return Err(Error::Domain(format!(
            "scan ceiling E_max = {e_max} must exceed the lower bound {lower}"
        )));
    }
    let mut f = |e: f64| shooting_function(prob, e, cfg);
    let mut out = Vec::with_capacity(n);
    let mut e_prev = lower;
    let mut f_prev = f(e_prev)?;
    let mut step = 0.1;
    while out.len() < n {
        if e_prev >= e_max {
            return Err(Error::ScanExhausted(format!(
                "found {} of {} eigenvalues below E_max = {}; raise the ceiling",
                out.len(),
                n,
                e_max
            )));
        }
        let e = (e_prev + step).min(e_max);
        let v = f(e)?;
        if v == 0.0 {
            out.push(e);
        } else if f_prev != 0.0 && v.signum() != f_prev.signum() {
            let (lo, hi, _) = bisect(&mut f, e_prev, e, f_prev, |x| 1e-10 * (1.0 + x.abs()))?;
            out.push(0.5 * (lo + hi));
        }
        if e >= 1.0 {
            step *= 1.05;
        }
        e_prev = e;
        f_prev = v;
    }
    Ok(out)
}

/// Runs both axis scans for the Dirichlet problem and tabulates the total
/// μ-plane zero count (both signs; double zero twice) against the
/// closed-form main term at `n_checkpoints` values of `T`.
pub fn counting_report(
    prob: &MorseProblem,
    t_max: f64,
    n_checkpoints: usize,
    cfg: &PrecisionConfig,
) -> Result<CountingReport> {
    prob.require_dirichlet("counting")?;
    if !(t_max > 2.0) || !t_max.is_finite() {
        return Err(Error::Domain(format!(
            "counting endpoint must exceed 2 (the main term needs T > 1), got {t_max}"
        )));
    }
    if n_checkpoints == 0 {
        return Err(Error::Domain("need at least one checkpoint".into()));
    }
    let imag = dirichlet_zero_scan(prob, t_max, default_scan_step(t_max), cfg)?;
    let real = exceptional_real_zeros(prob, cfg)?;
    let real_fixed: usize = real
        .iter()
        .map(|z| z.multiplicity as usize)
        .sum::<usize>()
        * 2;

    let lo = 2f64.max(t_max / n_checkpoints as f64);
    let ts: Vec<f64> = if n_checkpoints == 1 {
        vec![t_max]
    } else {
        (0..n_checkpoints)
            .map(|i| lo + (t_max - lo) * i as f64 / (n_checkpoints - 1) as f64)
            .collect()
    };
    let rows = ts
        .into_iter()
        .map(|t| {
            let observed = 2 * imag.iter().filter(|z| z.coordinate <= t).count() + real_fixed;
            let main_term = asymptotic_count(prob.u0, t);
            CountRow {
                t,
                observed,
                main_term,
                diff: observed as f64 - main_term,
            }
        })
        .collect();
    Ok(CountingReport {
        rows,
        c1: FRAC_2_PI,
        c2: FRAC_2_PI * (2.0 * LN_2 - 1.0 - prob.u0),
    })
}

/// Eigenvalues with an automatically raised scan ceiling.
pub(crate) fn lowest_eigenvalues(
    prob: &MorseProblem,
    n: usize,
    cfg: &PrecisionConfig,
) -> Result<Vec<f64>> {
    let mut e_max = 25.0 * (n as f64 + 1.0 + prob.k * prob.k);
    for _ in 0..3 {
        match eigenvalues_general_alpha(prob, n, e_max, cfg) {
            Err(Error::ScanExhausted(_)) => e_max *= 4.0,
            other => return other,
        }
    }
    eigenvalues_general_alpha(prob, n, e_max, cfg)
}

/// Computes the lowest `n` eigenvalues over the grid
/// `k_values × u0_values` at a fixed boundary angle and asserts the
/// comparison-theorem monotonicity: strictly increasing in `u0` (where
/// applicable) and strictly increasing in `k`, level by level.
pub fn monotonicity_check(
    k_values: &[f64],
    u0_values: &[f64],
    alpha: f64,
    n: usize,
    cfg: &PrecisionConfig,
) -> Result<MonotonicityReport> {
    if k_values.is_empty() || u0_values.is_empty() || n == 0 {
        return Err(Error::Domain(
            "monotonicity check needs nonempty grids and n >= 1".into(),
        ));
    }
    for w in k_values.windows(2) {
        if !(w[1] > w[0]) {
            return Err(Error::Domain("k grid must be strictly increasing".into()));
        }
    }
    for w in u0_values.windows(2) {
        if !(w[1] > w[0]) {
            return Err(Error::Domain("u0 grid must be strictly increasing".into()));
        }
    }

    let mut levels = Vec::with_capacity(k_values.len());
    let mut u0_sweep_checked = Vec::with_capacity(k_values.len());
    for &k in k_values {
        let mut row = Vec::with_capacity(u0_values.len());
        for &u0 in u0_values {
            let prob = MorseProblem::new(k, u0, alpha)?;
            row.push(lowest_eigenvalues(&prob, n, cfg)?);
        }
        u0_sweep_checked
            .push(k >= 0.0 || u0_values.iter().all(|&u0| u0 >= (-2.0 * k).ln() - 1e-12));
        levels.push(row);
    }

    for (i, &k) in k_values.iter().enumerate() {
        if u0_sweep_checked[i] {
            for j in 1..u0_values.len() {
                for l in 0..n {
                    if !(levels[i][j][l] > levels[i][j - 1][l]) {
                        return Err(Error::Monotonicity(format!(
                            "E_{l} fails to increase in u0 at k={k}: E({})={} vs E({})={}",
                            u0_values[j - 1],
                            levels[i][j - 1][l],
                            u0_values[j],
                            levels[i][j][l]
                        )));
                    }
                }
            }
        }
    }
    for j in 0..u0_values.len() {
        for i in 1..k_values.len() {
            for l in 0..n {
                if !(levels[i][j][l] > levels[i - 1][j][l]) {
                    return Err(Error::Monotonicity(format!(
                        "E_{l} fails to increase in k at u0={}: E(k={})={} vs E(k={})={}",
                        u0_values[j],
                        k_values[i - 1],
                        levels[i - 1][j][l],
                        k_values[i],
                        levels[i][j][l]
                    )));
                }
            }
        }
    }

    Ok(MonotonicityReport {
        alpha: alpha.rem_euclid(TAU),
        k_values: k_values.to_vec(),
        u0_values: u0_values.to_vec(),
        n_levels: n,
        levels,
        u0_sweep_checked,
    })
}
