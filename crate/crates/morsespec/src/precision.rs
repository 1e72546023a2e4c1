//! Precision configuration threaded through every evaluation.
//!
//! A [`PrecisionConfig`] is a small value type passed (by reference) into
//! each public operation. It controls the internal binary working
//! precision, series termination, and the half-integer degeneracy guard of
//! the Whittaker evaluator. Raising `working_digits` makes everything
//! slower and more accurate; the other knobs rarely need touching.

use crate::error::{Error, Result};
use serde::Serialize;


/// Tuning knobs for extended-precision evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PrecisionConfig {
    /// Decimal digits carried internally (binary mantissa is sized to hold
    /// this plus guard bits). Minimum 16.
    pub working_digits: u32,
    /// Relative series-termination threshold: a sum is accepted once two
    /// consecutive terms are below `series_tail_rel * |partial sum|`.
    pub series_tail_rel: f64,
    /// Hard cap on series terms before giving up with a convergence error.
    pub series_max_terms: u32,
    /// Distance below which `2μ` counts as degenerate (at or near an
    /// integer): the Whittaker W evaluator then averages two evaluations
    /// displaced by exactly this offset in `μ`. The averaging error is
    /// O(offset²), so the default keeps degenerate-case accuracy near
    /// 1e-14 relative.
    pub halfint_offset: f64,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        Self::with_digits(34)
    }
}

impl PrecisionConfig {
    /// Config carrying `digits` working digits, with the series tail set
    /// two digits below the target and the other knobs at their defaults.
    pub fn with_digits(digits: u32) -> Self {
        PrecisionConfig {
            working_digits: digits,
            series_tail_rel: 10f64.powi(-(digits as i32 + 2)),
            series_max_terms: 5000,
            halfint_offset: 1e-7,
        }
    }

    /// A copy with at least `digits` working digits (used by scans that
    /// escalate precision in cancellation-prone parameter ranges).
    pub fn escalated(&self, digits: u32) -> Self {
        if self.working_digits >= digits {
            *self
        } else {
            PrecisionConfig {
                working_digits: digits,
                series_tail_rel: self.series_tail_rel.min(10f64.powi(-(digits as i32 + 2))),
                series_max_terms: self.series_max_terms,
                halfint_offset: self.halfint_offset,
            }
        }
    }

    /// Validates the invariants documented on the fields.
    pub fn validate(&self) -> Result<()> {
        if self.working_digits < 16 {
            return Err(Error::Domain(format!(
                "working_digits must be at least 16, got {}",
                self.working_digits
            )));
        }
        if self.working_digits > 1000 {
            return Err(Error::Domain(format!(
                "working_digits {} is beyond the supported range (<= 1000)",
                self.working_digits
            )));
        }
        if self.series_tail_rel.is_nan() || self.series_tail_rel <= 0.0 || self.series_tail_rel >= 1e-3 {
            return Err(Error::Domain(format!(
                "series_tail_rel must lie in (0, 1e-3), got {:e}",
                self.series_tail_rel
            )));
        }
        if self.series_max_terms < 100 {
            return Err(Error::Domain(format!(
                "series_max_terms must be at least 100, got {}",
                self.series_max_terms
            )));
        }
        if self.halfint_offset.is_nan() || self.halfint_offset <= 0.0 || self.halfint_offset > 1e-3 {
            return Err(Error::Domain(format!(
                "halfint_offset must lie in (0, 1e-3], got {:e}",
                self.halfint_offset
            )));
        }
        Ok(())
    }

    /// Binary mantissa size: enough bits for `working_digits` decimal
    /// digits plus 32 guard bits for intermediate rounding.
    pub(crate) fn bits(&self) -> usize {
        digits_to_bits(self.working_digits)
    }

    /// Digit-loss budget: evaluations report a precision-loss error when
    /// cancellation eats past `working_digits - 6` digits.
    pub(crate) fn loss_budget(&self) -> f64 {
        self.working_digits as f64 - 6.0
    }
}

/// Mantissa bits needed to carry `digits` decimal digits, plus guard bits.
pub(crate) fn digits_to_bits(digits: u32) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_valid_and_34_digits() {
        let cfg = PrecisionConfig::default();
        cfg.validate().unwrap();
        assert_eq!(cfg.working_digits, 34);
        assert!((cfg.series_tail_rel.log10() + 36.0).abs() < 1e-9);
        assert_eq!(cfg.series_max_terms, 5000);
        assert_eq!(cfg.halfint_offset, 1e-7);
    }

    #[test]
    fn bits_cover_requested_digits() {
        assert!(PrecisionConfig::with_digits(34).bits() >= 145);
        assert!(PrecisionConfig::with_digits(50).bits() >= 198);
    }

    #[test]
    fn escalation_is_monotone() {
        let cfg = PrecisionConfig::default();
        let up = cfg.escalated(50);
        assert_eq!(up.working_digits, 50);
        assert!(up.series_tail_rel <= cfg.series_tail_rel);
        assert_eq!(cfg.escalated(20), cfg);
    }

    #[test]
    fn validation_rejects_bad_configs() {
        let cfg = PrecisionConfig { working_digits: 8, ..Default::default() };
        assert!(cfg.validate().is_err());
        let cfg = PrecisionConfig { series_tail_rel: 0.0, ..Default::default() };
        assert!(cfg.validate().is_err());
        let cfg = PrecisionConfig { series_max_terms: 10, ..Default::default() };
        assert!(cfg.validate().is_err());
        let cfg = PrecisionConfig { halfint_offset: 0.1, ..Default::default() };
        assert!(cfg.validate().is_err());
    }
}
