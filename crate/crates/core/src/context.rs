use crate::error::{NumError, Result};
use crate::real::Real;

/// Decimal-to-binary factor used to size working precision (log2 10, rounded up).
const BITS_PER_DIGIT: f64 = 3.33;

pub const DEFAULT_DIGITS: u32 = 50;
pub const DEFAULT_GUARD_DIGITS: u32 = 20;
pub const DEFAULT_MAX_ITER: usize = 4096;
pub const DEFAULT_SCAN_CELLS: usize = 1024;

/// Precision policy threaded through every operation.
///
/// Immutable once built; every `Real` created through it carries
/// `precision_bits` of mantissa.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NumericContext {
    precision_bits: usize,
    target_digits: u32,
    max_iter: usize,
    guard_digits: u32,
    scan_cells: usize,
}

fn min_bits(target_digits: u32, guard_digits: u32) -> usize {
    ((BITS_PER_DIGIT * f64::from(target_digits + guard_digits)).ceil() as usize).max(64)
}

impl NumericContext {
    /// Context for `target_digits` decimal digits with default guard digits and caps.
    /// Working precision is rounded up to a whole number of 64-bit words.
    pub fn with_digits(target_digits: u32) -> Self {
        let bits = min_bits(target_digits, DEFAULT_GUARD_DIGITS).div_ceil(64) * 64;
        NumericContext {
            precision_bits: bits,
            target_digits,
            max_iter: DEFAULT_MAX_ITER,
            guard_digits: DEFAULT_GUARD_DIGITS,
            scan_cells: DEFAULT_SCAN_CELLS,
        }
    }

    pub fn new(
        precision_bits: usize,
        target_digits: u32,
        max_iter: usize,
        guard_digits: u32,
    ) -> Result<Self> {
        let ctx = NumericContext {
            precision_bits,
            target_digits,
            max_iter,
            guard_digits,
            scan_cells: DEFAULT_SCAN_CELLS,
        };
        ctx.validate()
    }

    pub fn with_precision_bits(self, bits: usize) -> Result<Self> {
        NumericContext {
            precision_bits: bits,
            ..self
        }
        .validate()
    }

    pub fn with_max_iter(self, max_iter: usize) -> Result<Self> {
        NumericContext { max_iter, ..self }.validate()
    }

    pub fn with_scan_cells(self, scan_cells: usize) -> Result<Self> {
        NumericContext { scan_cells, ..self }.validate()
    }

    fn validate(self) -> Result<Self> {
        if self.precision_bits < 64 {
            return Err(NumError::InvalidContext("precision_bits must be at least 64"));
        }
        if self.precision_bits < min_bits(self.target_digits, self.guard_digits) {
            return Err(NumError::InvalidContext(
                "precision_bits too small for target_digits + guard_digits",
            ));
        }
        if self.max_iter == 0 {
            return Err(NumError::InvalidContext("max_iter must be at least 1"));
        }
        if self.scan_cells < 2 {
            return Err(NumError::InvalidContext("scan grid needs at least 2 cells"));
        }
        Ok(self)
    }

    pub fn precision_bits(&self) -> usize {
        self.precision_bits
    }

    pub fn target_digits(&self) -> u32 {
        self.target_digits
    }

    pub fn max_iter(&self) -> usize {
        self.max_iter
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    pub fn scan_cells(&self) -> usize {
        self.scan_cells
    }

    pub fn guard_bits(&self) -> usize {
        (BITS_PER_DIGIT * f64::from(self.guard_digits)).ceil() as usize
    }

    /// Acceptance tolerance `10^(-target_digits + 5)` for residual checks.
    pub fn tol(&self) -> Real {
        Real::pow10(5 - self.target_digits as i32, self.precision_bits)
    }

    /// Unit roundoff `2^(-precision_bits)`.
    pub fn eps(&self) -> Real {
        self.pow2(-(self.precision_bits as i32))
    }

    pub fn pow2(&self, e: i32) -> Real {
        Real::pow2(e, self.precision_bits)
    }

    pub fn int(&self, n: i64) -> Real {
        Real::from_i64(n, self.precision_bits)
    }

    pub fn ratio(&self, num: i64, den: i64) -> Real {
        Real::ratio(num, den, self.precision_bits)
    }

    pub fn pi(&self) -> Real {
        Real::pi(self.precision_bits)
    }

    pub fn parse(&self, s: &str) -> Result<Real> {
        Real::parse_decimal(s, self.precision_bits)
    }

    /// Re-rounds a value produced elsewhere to this context's precision.
    pub fn adopt(&self, x: &Real) -> Real {
        x.with_precision(self.precision_bits)
    }
}

impl Default for NumericContext {
    fn default() -> Self {
        Self::with_digits(DEFAULT_DIGITS)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits_map_to_word_aligned_bits() {
        let c = NumericContext::with_digits(50);
        assert_eq!(c.precision_bits(), 256);
        assert!(c.precision_bits() >= 233);
        assert_eq!(NumericContext::with_digits(100).precision_bits(), 448);
        assert_eq!(NumericContext::with_digits(1).precision_bits(), 128);
    }

    #[test]
    fn invariants_are_enforced() {
        assert!(NumericContext::new(32, 5, 10, 0).is_err());
        assert!(NumericContext::new(128, 50, 10, 20).is_err());
        assert!(NumericContext::new(256, 50, 0, 20).is_err());
        assert!(NumericContext::new(256, 50, 10, 20).is_ok());
        let c = NumericContext::default();
        assert!(c.with_precision_bits(100).is_err());
        assert!(c.with_scan_cells(1).is_err());
    }

    #[test]
    fn tolerance_follows_target_digits() {
        let c = NumericContext::with_digits(50);
        assert_eq!(c.tol(), Real::pow10(-45, c.precision_bits()));
    }
}
