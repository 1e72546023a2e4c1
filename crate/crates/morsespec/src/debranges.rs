//! Structure function of the base half-line problem and its
//! Hermite–Biehler geometry.
//!
//! For `k = 0` on `[u, ∞)`, with `x = e^u` and second Whittaker index
//! `μ = iz`, the function
//!
//! ```text
//! E₀(u, z) = e^{(x−u)/2}·W_{½,iz}(x) − iz·e^{−(x+u)/2}·W_{−½,iz}(x)
//! ```
//!
//! is entire in `z` with `E₀(u, 0) = 1`, and satisfies the strict
//! Hermite–Biehler contraction `|E₀(u, z̄)| < |E₀(u, z)|` for `Im z > 0`.
//! With the reflection `E#(z) = conj(E(z̄))`, the even/odd split
//! `A = (E₀ + E₀#)/2`, `B = i(E₀ − E₀#)/2` collapses to single Whittaker
//! terms,
//!
//! ```text
//! A(u, z) = e^{(x−u)/2}·W_{½,iz}(x),    B(u, z) = z·e^{−(x+u)/2}·W_{−½,iz}(x),
//! ```
//!
//! so the real zeros of `A` and of `B/z` are the positive Dirichlet
//! spectra of the `k = −½` and `k = +½` problems at `u0 = u`, and they
//! strictly interlace. The ratio `−B/A` admits a second closed form via
//! the three-term recurrence
//! `z²·W_{−½,iz}(x) = −W_{3/2,iz}(x) + (x − 1)·W_{½,iz}(x)`.
//!
//! Note the orientation: `B/A` is the Herglotz member of the pair, so the
//! ratio `−B/A` exposed here maps the upper half-plane to the lower one.

use crate::error::{Error, Result};
use crate::mfunc::POLE_LOG10;
use crate::precision::PrecisionConfig;
use crate::scaled::ScaledValue;
use crate::spectrum::{default_scan_step, scaled_real, scan_refined_zeros};
use crate::whittaker::{whittaker_w, WhittakerParams};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// One evaluated structure-function point, as emitted in CLI tables.
#[derive(Clone, Debug, Serialize)]
pub struct StructureFunctionSample {
    pub u: f64,
    pub z_re: f64,
    pub z_im: f64,
    pub e_value: ScaledValue,
    pub a_value: ScaledValue,
    pub b_value: ScaledValue,
}

impl StructureFunctionSample {
    pub fn compute(u: f64, z: Complex64, cfg: &PrecisionConfig) -> Result<Self> {
        let (a_value, b_value) = ab_parts(u, z, cfg)?;
        // E₀ = A − iB reassembles without further Whittaker evaluations.
        let e_value =
            a_value.sub(&b_value.mul(&ScaledValue::from_c64(Complex64::new(0.0, 1.0))?));
        Ok(StructureFunctionSample {
            u,
            z_re: z.re,
            z_im: z.im,
            e_value,
            a_value,
            b_value,
        })
    }
}

/// Sampled Hermite–Biehler margins over `{|z| ≤ 30, Im z ∈ [0.05, 10]}`.
#[derive(Clone, Debug, Serialize)]
pub struct HermiteBiehlerReport {
    pub u: f64,
    pub samples: usize,
    /// Smallest `log₁₀|E₀(z)| − log₁₀|E₀#(z)|` over the draws; positive
    /// exactly when the strict contraction held with that decimal margin.
    pub min_margin_log10: f64,
    pub mean_margin_log10: f64,
    pub max_margin_log10: f64,
    /// The draw attaining the minimum margin.
    pub worst_z: (f64, f64),
}

/// Interlaced real-axis zeros of `A` and `B` up to `t_max`.
#[derive(Clone, Debug, Serialize)]
pub struct InterlacingReport {
    pub u: f64,
    pub t_max: f64,
    /// Positive zeros of `A(u, ·)`, ascending.
    pub a_zeros: Vec<f64>,
    /// Nonnegative zeros of `B(u, ·)`, ascending; the odd factor `z`
    /// forces the leading zero at the origin.
    pub b_zeros: Vec<f64>,
}

/// The structure function `E₀(u, z)`, decimal-scaled.
pub fn structure_e0(u: f64, z: Complex64, cfg: &PrecisionConfig) -> Result<ScaledValue> {
    validate(u, z)?;
    let (plus, minus) = structure_terms(u, z, cfg)?;
    let iz = ScaledValue::from_c64(Complex64::new(-z.im, z.re))?;
    Ok(plus.sub(&iz.mul(&minus)))
}

/// The reflected structure function `E₀#(u, z) = conj(E₀(u, z̄))`.
pub fn e0_sharp(u: f64, z: Complex64, cfg: &PrecisionConfig) -> Result<ScaledValue> {
    Ok(structure_e0(u, z.conj(), cfg)?.conj())
}

/// The split `A = (E₀ + E₀#)/2`, `B = i(E₀ − E₀#)/2`: entire, even and
/// odd respectively, real on the real axis, with `E₀ = A − iB`.
pub fn ab_parts(u: f64, z: Complex64, cfg: &PrecisionConfig) -> Result<(ScaledValue, ScaledValue)> {
    let e = structure_e0(u, z, cfg)?;
    let es = e0_sharp(u, z, cfg)?;
    let a = e.add(&es).mul(&ScaledValue::from_f64(0.5));
    let b = e.sub(&es).mul(&ScaledValue::from_c64(Complex64::new(0.0, 0.5))?);
    Ok((a, b))
}

/// Samples the strict contraction `|E₀#(u, z)| < |E₀(u, z)|` on `samples`
/// seeded draws (at least 100) from `{|z| ≤ 30, Im z ∈ [0.05, 10]}`,
/// failing on any non-positive margin.
pub fn hermite_biehler_check(
    u: f64,
    samples: usize,
    seed: u64,
    cfg: &PrecisionConfig,
) -> Result<HermiteBiehlerReport> {
    validate(u, Complex64::new(0.0, 0.0))?;
    if samples < 100 {
        return Err(Error::Domain(format!(
            "at least 100 Hermite-Biehler samples required, got {samples}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_margin = f64::INFINITY;
    let mut max_margin = f64::NEG_INFINITY;
    let mut sum = 0.0;
    let mut worst = (0.0, 0.0);
    let mut accepted = 0usize;
    while accepted < samples {
        let re = rng.gen_range(-30.0..30.0);
        let im = rng.gen_range(0.05..10.0);
        if re * re + im * im > 900.0 {
            continue;
        }
        let z = Complex64::new(re, im);
        let margin =
            structure_e0(u, z, cfg)?.abs_log10() - e0_sharp(u, z, cfg)?.abs_log10();
        if !(margin > 0.0) {
            return Err(Error::HermiteBiehler(format!(
                "|E0| failed to dominate its reflection at z = {z}, u = {u} \
                 (log10 margin {margin:.3e})"
            )));
        }
        sum += margin;
        if margin < min_margin {
            min_margin = margin;
            worst = (re, im);
        }
        max_margin = max_margin.max(margin);
        accepted += 1;
    }
    Ok(HermiteBiehlerReport {
        u,
        samples,
        min_margin_log10: min_margin,
        mean_margin_log10: sum / samples as f64,
        max_margin_log10: max_margin,
        worst_z: worst,
    })
}

/// Locates the real zeros of `A` and `B` in `[0, t_max]` from their
/// single-term closed forms and verifies the strict interlacing
/// `b₀ = 0 < a₁ < b₁ < a₂ < ⋯`.
///
/// `A` is even and `B` odd, so the nonnegative axis determines every real
/// zero; neither component vanishes at purely imaginary `z` (real `μ`)
/// for this potential, so the real axis carries all zeros of each.
pub fn ab_zero_interlacing(
    u: f64,
    t_max: f64,
    cfg: &PrecisionConfig,
) -> Result<InterlacingReport> {
    validate(u, Complex64::new(0.0, 0.0))?;
    if !(t_max > 0.0) || !t_max.is_finite() {
        return Err(Error::Domain(format!(
            "scan endpoint must be positive, got {t_max}"
        )));
    }
    let step = default_scan_step(t_max);
    let x = u.exp();
    // The positive prefactors and the odd factor z neither move nor add
    // real zeros, so the scans read the Whittaker signs directly.
    let mut fa = |t: f64| -> Result<f64> {
        let w = whittaker_w(WhittakerParams::new(0.5, Complex64::new(0.0, t), x)?, cfg)?;
        Ok(scaled_real(&w))
    };
    let a_zeros: Vec<f64> = scan_refined_zeros(&mut fa, t_max, step)?
        .into_iter()
        .map(|(t, _, _)| t)
        .collect();
    let mut fb = |t: f64| -> Result<f64> {
        let w = whittaker_w(WhittakerParams::new(-0.5, Complex64::new(0.0, t), x)?, cfg)?;
        Ok(scaled_real(&w))
    };
    let mut b_zeros: Vec<f64> = scan_refined_zeros(&mut fb, t_max, step)?
        .into_iter()
        .map(|(t, _, _)| t)
        .collect();
    b_zeros.insert(0, 0.0);

    // A prefix of the strict alternation starting at b₀ = 0 has either
    // equally many b's as a's (ending on an a) or one more (ending on a b).
    if b_zeros.len() < a_zeros.len() || b_zeros.len() > a_zeros.len() + 1 {
        return Err(Error::Interlacing(format!(
            "zero counts cannot interlace on (0, {t_max}]: {} for A against {} for B",
            a_zeros.len(),
            b_zeros.len() - 1
        )));
    }
    for j in 0..a_zeros.len() {
        if !(b_zeros[j] < a_zeros[j]) {
            return Err(Error::Interlacing(format!(
                "b_{j} = {} fails to precede a_{} = {}",
                b_zeros[j],
                j + 1,
                a_zeros[j]
            )));
        }
        if j + 1 < b_zeros.len() && !(a_zeros[j] < b_zeros[j + 1]) {
            return Err(Error::Interlacing(format!(
                "a_{} = {} fails to precede b_{} = {}",
                j + 1,
                a_zeros[j],
                j + 1,
                b_zeros[j + 1]
            )));
        }
    }
    Ok(InterlacingReport {
        u,
        t_max,
        a_zeros,
        b_zeros,
    })
}

/// The spectral-boundary ratio `m(u, z) = −B(u, z)/A(u, z)`.
///
/// Odd in `z` with `m(u, 0) = 0`, and anti-Herglotz: `B/A` maps the upper
/// half-plane to itself, so this ratio maps it to the lower one. Fails
/// with a pole error within the guard band of a zero of `A`, where
/// `|B/A| ≥ 10⁸`.
pub fn debranges_m(u: f64, z: Complex64, cfg: &PrecisionConfig) -> Result<Complex64> {
    let (a, b) = ab_parts(u, z, cfg)?;
    if a.is_zero() {
        return Err(Error::Pole(format!("A(u = {u}) vanished at z = {z}")));
    }
    let ratio = b.div(&a)?;
    if ratio.abs_log10() >= POLE_LOG10 {
        return Err(Error::Pole(format!(
            "z = {z} lies within the pole guard of a zero of A (|B/A| = 10^{:.1})",
            ratio.abs_log10()
        )));
    }
    Ok(-ratio.to_c64_lossy())
}

/// Relative gap between the two closed forms of `−B/A`,
///
/// ```text
/// form₁ = −z·e^{−x}·W_{−½,iz}(x) / W_{½,iz}(x)
/// form₂ = −z⁻¹·e^{−x}·[(x − 1) − W_{3/2,iz}(x) / W_{½,iz}(x)]
/// ```
///
/// equal through the recurrence
/// `z²·W_{−½,iz} = −W_{3/2,iz} + (x − 1)·W_{½,iz}`. The second form
/// divides by `z`, so `z = 0` is rejected.
pub fn debranges_m_consistency(u: f64, z: Complex64, cfg: &PrecisionConfig) -> Result<f64> {
    validate(u, z)?;
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain(
            "the second closed form divides by z; z must be nonzero".into(),
        ));
    }
    let x = u.exp();
    let mu = Complex64::new(-z.im, z.re);
    let wp = whittaker_w(WhittakerParams::new(0.5, mu, x)?, cfg)?;
    if wp.is_zero() {
        return Err(Error::Pole(format!(
            "the common denominator W vanished at z = {z}"
        )));
    }
    let wm = whittaker_w(WhittakerParams::new(-0.5, mu, x)?, cfg)?;
    let w32 = whittaker_w(WhittakerParams::new(1.5, mu, x)?, cfg)?;
    let zsv = ScaledValue::from_c64(z)?;
    let emx = ScaledValue::from_exp(-x)?;
    let form1 = zsv.neg().mul(&emx).mul(&wm.div(&wp)?);
    let bracket = ScaledValue::from_f64(x)
        .sub(&ScaledValue::from_f64(1.0))
        .sub(&w32.div(&wp)?);
    let form2 = bracket.mul(&emx).neg().div(&zsv)?;
    Ok(form1.rel_diff(&form2))
}

/// The two prefactored Whittaker terms at `x = e^u`:
/// `e^{(x−u)/2}·W_{½,iz}(x)` and `e^{−(x+u)/2}·W_{−½,iz}(x)`.
fn structure_terms(
    u: f64,
    z: Complex64,
    cfg: &PrecisionConfig,
) -> Result<(ScaledValue, ScaledValue)> {
    let x = u.exp();
    let mu = Complex64::new(-z.im, z.re);
    let plus = whittaker_w(WhittakerParams::new(0.5, mu, x)?, cfg)?
        .mul(&ScaledValue::from_exp(0.5 * (x - u))?);
    let minus = whittaker_w(WhittakerParams::new(-0.5, mu, x)?, cfg)?
        .mul(&ScaledValue::from_exp(-0.5 * (x + u))?);
    Ok((plus, minus))
}

fn validate(u: f64, z: Complex64) -> Result<()> {
    if !u.is_finite() {
        return Err(Error::Domain(format!("endpoint u must be finite, got {u}")));
    }
    if !u.exp().is_finite() {
        return Err(Error::Domain(format!(
            "endpoint x = e^u not representable for u = {u}"
        )));
    }
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!(
            "spectral parameter z must be finite, got {z}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{dirichlet_zero_scan, MorseProblem};

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn collapses_to_one_at_the_origin_and_matches_frozen_values() {
        // W_{½,0}(x) = √x·e^{−x/2}, so E₀(u, 0) collapses to exactly 1;
        // computing it stresses the whole scale-folding pipeline.
        for u in [0.0, 1.0, 3.0, 6.0] {
            let e = structure_e0(u, Complex64::new(0.0, 0.0), &cfg()).unwrap();
            assert!(e.is_real_certified(), "E0({u}, 0) lost reality");
            let v = e.to_c64_lossy();
            assert!((v.re - 1.0).abs() <= 1e-13, "E0({u}, 0) = {v}");
            assert_eq!(v.im, 0.0);
        }
        let frozen = [
            (
                0.0,
                Complex64::new(2.0, 0.5),
                Complex64::new(-0.18374829025573652, -0.041993996145527712),
            ),
            (
                1.0,
                Complex64::new(2.0, 0.5),
                Complex64::new(0.19569088714039387, -0.21258362246557767),
            ),
            // x = e⁶ ≈ 403: the two terms carry decimal scales near ±87
            // and the assembled value still lands at unit size.
            (
                6.0,
                Complex64::new(0.5, 0.25),
                Complex64::new(0.99953572450748422, -0.00061863574166921425),
            ),
        ];
        for (u, z, want) in frozen {
            let got = structure_e0(u, z, &cfg()).unwrap().to_c64_lossy();
            assert!(rel(got, want) <= 1e-12, "E0({u}, {z}) = {got}");
        }
        let sample =
            StructureFunctionSample::compute(0.0, Complex64::new(2.0, 0.5), &cfg()).unwrap();
        assert!(rel(sample.e_value.to_c64_lossy(), frozen[0].2) <= 1e-12);
        assert!(structure_e0(f64::NAN, Complex64::new(1.0, 0.0), &cfg()).is_err());
        assert!(structure_e0(0.0, Complex64::new(f64::INFINITY, 0.0), &cfg()).is_err());
    }

    #[test]
    fn sharp_matches_the_reflected_combination() {
        // E₀#(u, z) = conj(E₀(u, z̄)) must equal the sign-flipped two-term
        // combination e^{(x−u)/2}W_{½,iz} + iz·e^{−(x+u)/2}W_{−½,iz}, by
        // W's evenness in μ and its reality for purely imaginary μ.
        let draws = [
            (0.0, Complex64::new(2.0, 0.5)),
            (1.0, Complex64::new(-1.3, 2.2)),
            (0.5, Complex64::new(0.7, -1.1)),
            (3.0, Complex64::new(4.0, 1.0)),
        ];
        for (u, z) in draws {
            let sharp = e0_sharp(u, z, &cfg()).unwrap();
            let (plus, minus) = structure_terms(u, z, &cfg()).unwrap();
            let iz = ScaledValue::from_c64(Complex64::new(-z.im, z.re)).unwrap();
            let flipped = plus.add(&iz.mul(&minus));
            assert!(
                sharp.rel_diff(&flipped) <= 1e-12,
                "u = {u}, z = {z}: gap {}",
                sharp.rel_diff(&flipped)
            );
        }
        // E₀ = A − iB reassembles the structure function.
        let (u, z) = draws[1];
        let (a, b) = ab_parts(u, z, &cfg()).unwrap();
        let back = a.sub(&b.mul(&ScaledValue::from_c64(Complex64::new(0.0, 1.0)).unwrap()));
        assert!(back.rel_diff(&structure_e0(u, z, &cfg()).unwrap()) <= 1e-12);
    }

    #[test]
    fn ab_parts_are_real_on_the_axis_and_match_the_closed_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for u in [0.0f64, 1.0] {
            let x = u.exp();
            for _ in 0..12 {
                let t: f64 = rng.gen_range(0.05..12.0);
                let (a, b) = ab_parts(u, Complex64::new(t, 0.0), &cfg()).unwrap();
                // The two evaluations behind A and B differ only in the
                // sign of an exact zero, so the imaginary parts cancel
                // identically, not merely to roundoff.
                let av = a.to_c64_lossy();
                let bv = b.to_c64_lossy();
                assert_eq!(av.im, 0.0, "Im A({u}, {t})");
                assert_eq!(bv.im, 0.0, "Im B({u}, {t})");
                let wa = whittaker_w(
                    WhittakerParams::new(0.5, Complex64::new(0.0, t), x).unwrap(),
                    &cfg(),
                )
                .unwrap()
                .mul(&ScaledValue::from_exp(0.5 * (x - u)).unwrap());
                let wb = whittaker_w(
                    WhittakerParams::new(-0.5, Complex64::new(0.0, t), x).unwrap(),
                    &cfg(),
                )
                .unwrap()
                .mul(&ScaledValue::from_exp(-0.5 * (x + u)).unwrap())
                .mul(&ScaledValue::from_f64(t));
                assert!(a.rel_diff(&wa) <= 1e-12, "A({u}, {t})");
                assert!(b.rel_diff(&wb) <= 1e-12, "B({u}, {t})");
            }
        }
        // Frozen axis values at u = 0.
        let (a, b) = ab_parts(0.0, Complex64::new(3.7, 0.0), &cfg()).unwrap();
        assert!((a.to_c64_lossy().re - 0.0069334092850063686).abs() <= 1e-14);
        assert!((b.to_c64_lossy().re - 0.00020978878256004735).abs() <= 1e-16);
        // The odd factor zeroes B at the origin exactly.
        let (_, b0) = ab_parts(2.0, Complex64::new(0.0, 0.0), &cfg()).unwrap();
        assert!(b0.is_zero());
    }

    #[test]
    fn hermite_biehler_holds_on_samples() {
        let report = hermite_biehler_check(0.5, 120, 42, &cfg()).unwrap();
        assert_eq!(report.samples, 120);
        assert!(
            report.min_margin_log10 > 0.0,
            "min margin {}",
            report.min_margin_log10
        );
        assert!(report.min_margin_log10 <= report.mean_margin_log10);
        assert!(report.mean_margin_log10 <= report.max_margin_log10);
        assert!(report.worst_z.1 >= 0.05);
        assert!(report.worst_z.0.hypot(report.worst_z.1) <= 30.0);
        // The modulus comparison degenerates to equality on the real axis.
        for t in [0.9, 7.3] {
            let z = Complex64::new(t, 0.0);
            let gap = structure_e0(0.5, z, &cfg()).unwrap().abs_log10()
                - e0_sharp(0.5, z, &cfg()).unwrap().abs_log10();
            assert!(gap.abs() <= 1e-12, "real-axis |E0| gap 10^{gap}");
        }
        assert!(matches!(
            hermite_biehler_check(0.5, 50, 42, &cfg()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn ab_zeros_interlace_and_match_the_spectra() {
        let report = ab_zero_interlacing(0.0, 12.0, &cfg()).unwrap();
        assert_eq!(report.a_zeros.len(), 11);
        assert_eq!(report.b_zeros.len(), 11);
        assert_eq!(report.b_zeros[0], 0.0);
        assert!((report.a_zeros[0] - 1.7476342986798492).abs() <= 1e-9);
        assert!((report.b_zeros[1] - 2.3877058892638811).abs() <= 1e-9);
        for j in 0..report.a_zeros.len() {
            assert!(report.b_zeros[j] < report.a_zeros[j]);
            if j + 1 < report.b_zeros.len() {
                assert!(report.a_zeros[j] < report.b_zeros[j + 1]);
            }
        }
        // A-zeros are the k = −½ positive Dirichlet spectrum at u0 = u;
        // positive B-zeros the k = +½ one.
        let step = default_scan_step(12.0);
        let a_spec = dirichlet_zero_scan(
            &MorseProblem::dirichlet(-0.5, 0.0).unwrap(),
            12.0,
            step,
            &cfg(),
        )
        .unwrap();
        assert_eq!(a_spec.len(), report.a_zeros.len());
        for (zero, t) in a_spec.iter().zip(&report.a_zeros) {
            assert!((zero.coordinate - t).abs() <= 1e-8);
        }
        let b_spec = dirichlet_zero_scan(
            &MorseProblem::dirichlet(0.5, 0.0).unwrap(),
            12.0,
            step,
            &cfg(),
        )
        .unwrap();
        assert_eq!(b_spec.len(), report.b_zeros.len() - 1);
        for (zero, t) in b_spec.iter().zip(&report.b_zeros[1..]) {
            assert!((zero.coordinate - t).abs() <= 1e-8);
        }
        assert!(matches!(
            ab_zero_interlacing(0.0, -1.0, &cfg()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            ab_zero_interlacing(f64::NAN, 5.0, &cfg()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn debranges_m_matches_its_closed_forms() {
        let cfg = cfg();
        let m = debranges_m(0.0, Complex64::new(2.0, 0.5), &cfg).unwrap();
        let want = Complex64::new(-0.0096876415713584156, -0.40896583410821851);
        assert!(rel(m, want) <= 1e-12, "m(0, 2+0.5i) = {m}");
        // The two closed forms stay mutually consistent off the axis.
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut checked = 0usize;
        while checked < 15 {
            let re: f64 = rng.gen_range(-20.0..20.0);
            let im: f64 = rng.gen_range(-6.0..6.0);
            if im.abs() < 0.05 || re.hypot(im) > 20.0 {
                continue;
            }
            let u = [0.0, 0.5, 1.0][checked % 3];
            let gap = debranges_m_consistency(u, Complex64::new(re, im), &cfg).unwrap();
            assert!(gap <= 1e-8, "consistency gap {gap} at ({re}, {im}), u = {u}");
            checked += 1;
        }
        // −B/A sends the upper half-plane to the lower one (B/A is the
        // Herglotz member of the pair); pinning the sign keeps the
        // convention from silently flipping.
        let mut upper = 0usize;
        while upper < 12 {
            let re = rng.gen_range(-10.0..10.0);
            let im = rng.gen_range(0.1..6.0);
            let z = Complex64::new(re, im);
            let m = debranges_m(0.5, z, &cfg).unwrap();
            assert!(m.im < 0.0, "Im m = {} at z = {z}", m.im);
            upper += 1;
        }
        // Odd in z, with the forced zero at the origin.
        assert_eq!(
            debranges_m(1.0, Complex64::new(0.0, 0.0), &cfg).unwrap(),
            Complex64::new(0.0, 0.0)
        );
        let m_neg = debranges_m(0.0, Complex64::new(-2.0, -0.5), &cfg).unwrap();
        assert!(rel(m_neg, -want) <= 1e-12);
        // Pole guard at the first zero of A.
        assert!(matches!(
            debranges_m(0.0, Complex64::new(1.7476342986798492, 0.0), &cfg),
            Err(Error::Pole(_))
        ));
        assert!(matches!(
            debranges_m_consistency(0.0, Complex64::new(0.0, 0.0), &cfg),
            Err(Error::Domain(_))
        ));
    }
}
