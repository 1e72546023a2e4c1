//! Thin extended-precision real layer over `astro_float::BigFloat`.
//!
//! The rest of the crate never touches `BigFloat` directly: it works with
//! [`Real`], whose arithmetic reads the working precision from a
//! thread-local context installed by [`PrecScope`]. Every public entry
//! point of the crate opens a scope from its `PrecisionConfig`, so interior
//! code can use plain operators without threading a precision argument
//! through every call.

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use std::cell::{Cell, RefCell};
use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub(crate) const RM: RoundingMode = RoundingMode::ToEven;


thread_local! {
    static PREC_BITS: Cell<usize> = const { Cell::new(160) };
    static CONSTS: RefCell<Consts> =
        RefCell::new(Consts::new().expect("constants cache allocation"));
}

/// Current working precision in bits (mantissa size for new results).
pub(crate) fn bits() -> usize {
    PREC_BITS.with(|c| c.get())
}

fn with_cc<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// RAII guard installing a working precision for the current thread.
pub(crate) struct PrecScope {
    prev: usize,
}

impl PrecScope {
    pub fn enter(cfg: &crate::precision::PrecisionConfig) -> Self {
        Self::enter_bits(cfg.bits())
    }

    pub fn enter_bits(b: usize) -> Self {
        let prev = PREC_BITS.with(|c| c.replace(b));
        PrecScope { prev }
    }
}

impl Drop for PrecScope {
    fn drop(&mut self) {
        let b = self.prev;
        PREC_BITS.with(|c| c.set(b));
    }
}

/// Extended-precision real number; all operations round to the precision
/// of the enclosing [`PrecScope`].
#[derive(Clone, Debug)]
pub(crate) struct Real(pub(crate) BigFloat);

impl Real {
    // ----- constructors ------------------------------------------------

    pub fn zero() -> Self {
        Real(BigFloat::from_i64(0, bits()))
    }

    pub fn one() -> Self {
        Real(BigFloat::from_i64(1, bits()))
    }

    pub fn from_f64(v: f64) -> Self {
        Real(BigFloat::from_f64(v, bits()))
    }

    pub fn from_i64(v: i64) -> Self {
        Real(BigFloat::from_i64(v, bits()))
    }

    /// Parses a decimal literal (used for embedded reference constants).
    pub fn parse(s: &str) -> Self {
        with_cc(|cc| Real(BigFloat::parse(s, Radix::Dec, bits(), RM, cc)))
    }

    pub fn pi() -> Self {
        with_cc(|cc| Real(cc.pi(bits(), RM)))
    }

    pub fn ln2() -> Self {
        with_cc(|cc| Real(cc.ln_2(bits(), RM)))
    }

    /// `10^k` at working precision (exact while it fits the mantissa).
    pub fn pow10(k: i64) -> Self {
        let p = BigFloat::from_i64(10, bits()).powi(k.unsigned_abs() as usize, bits(), RM);
        if k >= 0 {
            Real(p)
        } else {
            Real(BigFloat::from_i64(1, bits()).div(&p, bits(), RM))
        }
    }

    // ----- arithmetic ---------------------------------------------------

    pub fn neg(&self) -> Self {
        Real(BigFloat::neg(&self.0))
    }

    pub fn abs(&self) -> Self {
        Real(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        Real(self.0.reciprocal(bits(), RM))
    }

    pub fn sqrt(&self) -> Self {
        Real(self.0.sqrt(bits(), RM))
    }

    pub fn exp(&self) -> Self {
        with_cc(|cc| Real(self.0.exp(bits(), RM, cc)))
    }

    pub fn ln(&self) -> Self {
        with_cc(|cc| Real(self.0.ln(bits(), RM, cc)))
    }

    pub fn log10(&self) -> Self {
        with_cc(|cc| Real(self.0.log10(bits(), RM, cc)))
    }

    pub fn sin(&self) -> Self {
        with_cc(|cc| Real(self.0.sin(bits(), RM, cc)))
    }

    pub fn cos(&self) -> Self {
        with_cc(|cc| Real(self.0.cos(bits(), RM, cc)))
    }

    pub fn atan(&self) -> Self {
        with_cc(|cc| Real(self.0.atan(bits(), RM, cc)))
    }

    pub fn sinh(&self) -> Self {
        with_cc(|cc| Real(self.0.sinh(bits(), RM, cc)))
    }

    pub fn cosh(&self) -> Self {
        with_cc(|cc| Real(self.0.cosh(bits(), RM, cc)))
    }

    pub fn acosh(&self) -> Self {
        with_cc(|cc| Real(self.0.acosh(bits(), RM, cc)))
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, n: u32) -> Self {
        Real(self.0.powi(n as usize, bits(), RM))
    }

    /// Real power `self^y` for `self > 0` via `exp(y ln self)`.
    pub fn pow(&self, y: &Real) -> Self {
        with_cc(|cc| Real(self.0.pow(&y.0, bits(), RM, cc)))
    }

    /// Four-quadrant arctangent, `atan2(self, x)` with `self` as ordinate.
    pub fn atan2(&self, x: &Real) -> Self {
        let y = self;
        if x.is_zero() {
            if y.is_zero() {
                return Real::zero();
            }
            let h = Real::pi() * Real::from_f64(0.5);
            return if y.is_negative() { h.neg() } else { h };
        }
        let base = (y / x).atan();
        if x.is_positive() {
            base
        } else if y.is_negative() {
            base - Real::pi()
        } else {
            base + Real::pi()
        }
    }

    pub fn max(&self, other: &Real) -> Self {
        Real(self.0.max(&other.0))
    }

    // ----- predicates & comparisons --------------------------------------

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive() && !self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.0.is_nan() && !self.0.is_inf()
    }

    /// -1, 0, +1.
    pub fn signum_i8(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn cmp(&self, other: &Real) -> Ordering {
        match self.0.cmp(&other.0) {
            Some(v) if v < 0 => Ordering::Less,
            Some(v) if v > 0 => Ordering::Greater,
            _ => Ordering::Equal,
        }
    }

    pub fn lt(&self, other: &Real) -> bool {
        self.cmp(other) == Ordering::Less
    }

    pub fn gt(&self, other: &Real) -> bool {
        self.cmp(other) == Ordering::Greater
    }

    // ----- conversions ----------------------------------------------------

    /// Nearest `f64` (overflow saturates to ±inf, underflow to 0).
    pub fn to_f64(&self) -> f64 {
        if self.0.is_nan() {
            return f64::NAN;
        }
        if self.0.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.0.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        match self.0.as_raw_parts() {
            None => f64::NAN,
            Some((words, _, sign, exp, _)) => {
                if words.iter().all(|&w| w == 0) {
                    return 0.0;
                }
                let nw = words.len();
                let mut frac = words[nw - 1] as f64 / 2f64.powi(64);
                if nw >= 2 {
                    frac += words[nw - 2] as f64 / 2f64.powi(128);
                }
                // value = frac * 2^exp with frac in [0.5, 1); scale in two
                // stages so exponents at the edge of the f64 range do not
                // spuriously overflow (frac < 1, so frac*2^1024 can be
                // finite even though 2^1024 itself is not).
                let v = if exp > 1100 {
                    f64::INFINITY
                } else if exp < -1200 {
                    0.0
                } else {
                    let half = exp / 2;
                    (frac * 2f64.powi(half)) * 2f64.powi(exp - half)
                };
                if sign == Sign::Neg {
                    -v
                } else {
                    v
                }
            }
        }
    }

    /// Cheap estimate of `log10(|self|)` (good to ~15 digits; `-inf` at 0).
    pub fn log10_abs_approx(&self) -> f64 {
        if self.0.is_nan() {
            return f64::NAN;
        }
        if self.0.is_inf() {
            return f64::INFINITY;
        }
        match self.0.as_raw_parts() {
            None => f64::NAN,
            Some((words, _, _, exp, _)) => {
                if words.iter().all(|&w| w == 0) {
                    return f64::NEG_INFINITY;
                }
                let nw = words.len();
                let mut frac = words[nw - 1] as f64 / 2f64.powi(64);
                if nw >= 2 {
                    frac += words[nw - 2] as f64 / 2f64.powi(128);
                }
                exp as f64 * std::f64::consts::LOG10_2 + frac.log10()
            }
        }
    }

    /// Exact decimal decomposition: returns `(sign, digits, e10)` with the
    /// value equal to `sign * 0.d₁d₂… * 10^e10`. Digits are rounded to
    /// `n_digits` (round half away from zero, with carry propagation).
    pub fn to_decimal_parts(&self, n_digits: usize) -> Option<(i8, Vec<u8>, i32)> {
        if !self.is_finite() {
            return None;
        }
        if self.is_zero() {
            return Some((0, vec![0; n_digits.max(1)], 0));
        }
        let (sign, mut digits, mut e10) =
            with_cc(|cc| self.0.convert_to_radix(Radix::Dec, RM, cc)).ok()?;
        // Strip leading zeros the converter may produce.
        let lead = digits.iter().take_while(|&&d| d == 0).count();
        if lead > 0 {
            digits.drain(..lead);
            // convert_to_radix's exponent counts from the first returned
            // digit; leading zeros shift the true exponent down.
            e10 -= lead as i32;
        }
        if digits.is_empty() {
            return Some((0, vec![0; n_digits.max(1)], 0));
        }
        if digits.len() > n_digits {
            let roundup = digits[n_digits] >= 5;
            digits.truncate(n_digits);
            if roundup {
                let mut i = n_digits;
                loop {
                    if i == 0 {
                        digits.insert(0, 1);
                        digits.truncate(n_digits);
                        e10 += 1;
                        break;
                    }
                    i -= 1;
                    if digits[i] == 9 {
                        digits[i] = 0;
                    } else {
                        digits[i] += 1;
                        break;
                    }
                }
            }
        } else {
            digits.resize(n_digits, 0);
        }
        let s = if sign == Sign::Neg { -1 } else { 1 };
        Some((s, digits, e10))
    }

    /// Scientific-notation string with `n_digits` significant digits.
    pub fn to_decimal_string(&self, n_digits: usize) -> String {
        if self.0.is_nan() {
            return "nan".into();
        }
        if self.0.is_inf_pos() {
            return "inf".into();
        }
        if self.0.is_inf_neg() {
            return "-inf".into();
        }
        if self.is_zero() {
            return "0".into();
        }
        let (sign, digits, e10) = match self.to_decimal_parts(n_digits) {
            Some(p) => p,
            None => return "nan".into(),
        };
        let mut out = String::new();
        if sign < 0 {
            out.push('-');
        }
        out.push((b'0' + digits[0]) as char);
        if digits.len() > 1 {
            out.push('.');
            for &d in &digits[1..] {
                out.push((b'0' + d) as char);
            }
        }
        // normalized form d.ddd × 10^(e10-1)
        out.push('e');
        out.push_str(&(e10 - 1).to_string());
        out
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $bf:ident) => {
        impl $trait<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                Real(self.0.$bf(&rhs.0, bits(), RM))
            }
        }
        impl $trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                (&self).$method(rhs)
            }
        }
        impl $trait<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self.$method(&rhs)
            }
        }
    };
}

impl_binop!(Add, add, add);
impl_binop!(Sub, sub, sub);
impl_binop!(Mul, mul, mul);
impl_binop!(Div, div, div);

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(BigFloat::neg(&self.0))
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(BigFloat::neg(&self.0))
    }
}
