//! Decimal-scaled complex values.
//!
//! Evaluations in this crate routinely produce magnitudes like `e^{-πt/2}`
//! or `e^{-e^u}` that underflow `f64`. A [`ScaledValue`] keeps the result
//! exact-to-working-precision as `significand × 10^scale` with the
//! significand normalized into `0.1 ≤ |sig| < 10` (zero has significand 0
//! and scale 0). The significand is stored at extended precision and also
//! exposed as an `f64` pair for interchange; `scale` is a plain decimal
//! exponent.
//!
//! `is_real_certified` records that the imaginary part is *exactly* zero by
//! construction (real arithmetic throughout, or an explicit real part of a
//! conjugate-symmetric combination), not merely small after rounding.

use crate::arith::{PrecScope, Real};
use crate::cplx::Cplx;
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::ser::{Serialize, SerializeStruct, Serializer};

#[derive(Clone, Debug)]
pub struct ScaledValue {
    sig: Cplx,
    scale: i32,
    is_real_certified: bool,
}

impl ScaledValue {
    // ----- construction (crate-internal paths assume an active PrecScope) --

    pub(crate) fn zero() -> Self {
        ScaledValue {
            sig: Cplx::zero(),
            scale: 0,
            is_real_certified: true,
        }
    }

    /// Normalizes an extended complex value. `certified_real` must only be
    /// passed when the imaginary part is exactly zero by construction.
    pub(crate) fn from_cplx(x: &Cplx, certified_real: bool) -> Self {
        debug_assert!(x.is_finite(), "ScaledValue from non-finite value");
        debug_assert!(!certified_real || x.im.is_zero());
        if x.is_zero() {
            return ScaledValue {
                sig: Cplx::zero(),
                scale: 0,
                is_real_certified: certified_real,
            };
        }
        let a = x.abs();
        // |x| = 0.d₁d₂… × 10^e10 exactly, so floor(log10|x|) = e10 - 1
        // (up to the rounding of the 24th digit, which can only push a
        // value that is 10 - ulp up to 10; the band 0.1 ≤ |sig| < 10
        // absorbs that).
        let (_, _, e10) = a
            .to_decimal_parts(24)
            .expect("finite value has decimal parts");
        let scale = e10 - 1;
        let f = Real::pow10(-(scale as i64));
        ScaledValue {
            sig: x.scale(&f),
            scale,
            is_real_certified: certified_real,
        }
    }

    pub(crate) fn from_real(x: &Real) -> Self {
        Self::from_cplx(&Cplx::from_real(x.clone()), true)
    }

    /// Builds a value from interchange parts, validating normalization.
    pub fn from_parts(
        significand_re: f64,
        significand_im: f64,
        scale: i32,
        is_real_certified: bool,
    ) -> Result<Self> {
        if !significand_re.is_finite() || !significand_im.is_finite() {
            return Err(Error::Domain("non-finite significand".into()));
        }
        let norm = Complex64::new(significand_re, significand_im).norm();
        if norm == 0.0 {
            if scale != 0 {
                return Err(Error::Domain("zero must carry scale 0".into()));
            }
            return Ok(ScaledValue::zero());
        }
        if !(0.1..10.0).contains(&norm) {
            return Err(Error::Domain(format!(
                "significand modulus {norm} outside [0.1, 10)"
            )));
        }
        if is_real_certified && significand_im != 0.0 {
            return Err(Error::Domain(
                "certified-real value with nonzero imaginary part".into(),
            ));
        }
        let _s = PrecScope::enter_bits(192);
        Ok(ScaledValue {
            sig: Cplx::from_f64(significand_re, significand_im),
            scale,
            is_real_certified,
        })
    }

    pub fn from_f64(v: f64) -> Self {
        let _s = PrecScope::enter_bits(192);
        Self::from_cplx(&Cplx::from_f64(v, 0.0), true)
    }

    /// Builds a value from a double-precision complex number; the result is
    /// certified real exactly when the imaginary part is zero.
    pub fn from_c64(v: Complex64) -> Result<Self> {
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::Domain(format!("non-finite value {v}")));
        }
        let _s = PrecScope::enter_bits(192);
        Ok(Self::from_cplx(&Cplx::from_f64(v.re, v.im), v.im == 0.0))
    }

    /// The value `e^t`, with the decimal magnitude folded into the scale so
    /// exponents far beyond double-precision range stay representable.
    pub fn from_exp(t: f64) -> Result<Self> {
        if !t.is_finite() {
            return Err(Error::Domain(format!("non-finite exponent {t}")));
        }
        let decimal = t / std::f64::consts::LN_10;
        if decimal.abs() >= (i32::MAX as f64) / 2.0 {
            return Err(Error::Domain(format!(
                "exponent {t} outside the representable scale range"
            )));
        }
        let _s = PrecScope::enter_bits(192);
        // e^t = exp(t − shift·ln 10) · 10^shift with the residual exponent
        // near zero, so the extended-precision exponential stays O(1) and
        // the significand loses nothing for large |t|.
        let shift = decimal.round() as i32;
        let residual =
            Real::from_f64(t) - Real::from_i64(shift as i64) * Real::from_i64(10).ln();
        Ok(Self::from_real(&residual.exp()).mul_pow10(shift))
    }

    // ----- accessors -----------------------------------------------------

    /// Normalized significand as a double-precision complex number.
    pub fn significand(&self) -> Complex64 {
        self.sig.to_c64()
    }

    /// Decimal exponent.
    pub fn scale(&self) -> i32 {
        self.scale
    }

    /// True when the imaginary part is exactly zero by construction.
    pub fn is_real_certified(&self) -> bool {
        self.is_real_certified
    }

    pub fn is_zero(&self) -> bool {
        self.sig.is_zero()
    }

    /// Sign of the real part of the significand (-1, 0, +1).
    pub fn re_sign(&self) -> i8 {
        self.sig.re.signum_i8()
    }

    /// `log10 |value|` (`-inf` for zero). Safe for any scale.
    pub fn abs_log10(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        self.scale as f64 + self.sig.log10_abs_approx()
    }

    /// The value as a `Complex64`, losing the scale protection: values with
    /// |scale| beyond ~±308 overflow to infinity or flush to zero.
    pub fn to_c64_lossy(&self) -> Complex64 {
        let s = self.significand();
        let f = 10f64.powi(self.scale.clamp(-400, 400));
        Complex64::new(s.re * f, s.im * f)
    }

    /// Real value as `f64` if certified real (lossy in scale, as above).
    pub fn to_f64_real(&self) -> Option<f64> {
        if self.is_real_certified {
            Some(self.to_c64_lossy().re)
        } else {
            None
        }
    }

    // ----- arithmetic ------------------------------------------------------

    fn op_scope(&self, other: Option<&ScaledValue>) -> PrecScope {
        let b1 = self.sig.re.0.mantissa_max_bit_len().unwrap_or(128);
        let b2 = other
            .map(|o| o.sig.re.0.mantissa_max_bit_len().unwrap_or(128))
            .unwrap_or(0);
        PrecScope::enter_bits(b1.max(b2).max(128) + 64)
    }

    /// Multiplies by `10^delta` exactly, by shifting the decimal exponent.
    pub(crate) fn mul_pow10(&self, delta: i32) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        ScaledValue {
            sig: self.sig.clone(),
            scale: self.scale.saturating_add(delta),
            is_real_certified: self.is_real_certified,
        }
    }

    pub fn neg(&self) -> Self {
        ScaledValue {
            sig: -&self.sig,
            scale: self.scale,
            is_real_certified: self.is_real_certified,
        }
    }

    pub fn conj(&self) -> Self {
        ScaledValue {
            sig: self.sig.conj(),
            scale: self.scale,
            is_real_certified: self.is_real_certified,
        }
    }

    pub fn mul(&self, other: &ScaledValue) -> Self {
        let _s = self.op_scope(Some(other));
        if self.is_zero() || other.is_zero() {
            return ScaledValue::zero();
        }
        let prod = &self.sig * &other.sig;
        let mut out = ScaledValue::from_cplx(&prod, self.is_real_certified && other.is_real_certified);
        out.scale = out
            .scale
            .saturating_add(self.scale)
            .saturating_add(other.scale);
        out
    }

    pub fn div(&self, other: &ScaledValue) -> Result<Self> {
        let _s = self.op_scope(Some(other));
        if other.is_zero() {
            return Err(Error::Domain("division of scaled value by zero".into()));
        }
        if self.is_zero() {
            return Ok(ScaledValue::zero());
        }
        let q = self.sig.div(&other.sig);
        let mut out = ScaledValue::from_cplx(&q, self.is_real_certified && other.is_real_certified);
        out.scale = out
            .scale
            .saturating_add(self.scale)
            .saturating_sub(other.scale);
        Ok(out)
    }

    pub fn add(&self, other: &ScaledValue) -> Self {
        let _s = self.op_scope(Some(other));
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // If the scales are too far apart for the mantissas to overlap,
        // the smaller operand cannot perturb the larger one.
        let gap = self.scale as i64 - other.scale as i64;
        let digits = 78; // generous upper bound for 256-bit mantissas
        if gap > digits {
            return self.clone();
        }
        if gap < -digits {
            return other.clone();
        }
        let base = self.scale.min(other.scale);
        let fa = Real::pow10((self.scale - base) as i64);
        let fb = Real::pow10((other.scale - base) as i64);
        let sum = self.sig.scale(&fa) + other.sig.scale(&fb);
        let mut out =
            ScaledValue::from_cplx(&sum, self.is_real_certified && other.is_real_certified);
        out.scale = out.scale.saturating_add(base);
        out
    }

    pub fn sub(&self, other: &ScaledValue) -> Self {
        self.add(&other.neg())
    }

    /// Relative difference `|self - other| / |other|` as f64 (other ≠ 0);
    /// robust across the full scale range.
    pub fn rel_diff(&self, other: &ScaledValue) -> f64 {
        let _s = self.op_scope(Some(other));
        if other.is_zero() {
            return if self.is_zero() { 0.0 } else { f64::INFINITY };
        }
        let d = self.sub(other);
        if d.is_zero() {
            return 0.0;
        }
        10f64.powf((d.abs_log10() - other.abs_log10()).min(300.0))
    }

    // ----- rendering -------------------------------------------------------

    /// Renders the real and imaginary parts to `digits` significant decimal
    /// digits with the scale folded into each exponent.
    pub fn to_string_digits(&self, digits: usize) -> String {
        let _s = self.op_scope(None);
        let part = |r: &Real| -> String {
            if r.is_zero() {
                return "0".into();
            }
            match r.to_decimal_parts(digits) {
                None => "nan".into(),
                Some((sign, ds, e10)) => {
                    let mut out = String::new();
                    if sign < 0 {
                        out.push('-');
                    }
                    out.push((b'0' + ds[0]) as char);
                    if ds.len() > 1 {
                        out.push('.');
                        for &d in &ds[1..] {
                            out.push((b'0' + d) as char);
                        }
                    }
                    out.push('e');
                    out.push_str(&(e10 as i64 - 1 + self.scale as i64).to_string());
                    out
                }
            }
        };
        if self.is_real_certified || self.sig.im.is_zero() {
            part(&self.sig.re)
        } else {
            format!("{} + {}i", part(&self.sig.re), part(&self.sig.im))
        }
    }
}

impl std::fmt::Display for ScaledValue {
    /// Full `f64`-significand precision; use [`ScaledValue::to_string_digits`]
    /// to control the digit count.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_string_digits(17))
    }
}

impl Serialize for ScaledValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let s = self.significand();
        let mut st = serializer.serialize_struct("ScaledValue", 3)?;
        st.serialize_field("significand_re", &s.re)?;
        st.serialize_field("significand_im", &s.im)?;
        st.serialize_field("scale", &self.scale)?;
        st.end()
    }
}
