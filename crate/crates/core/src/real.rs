//! Arbitrary-precision real scalar.
//!
//! `Real` wraps an `astro_float::BigFloat` together with the binary precision
//! it was produced at. Binary operators evaluate at the larger of the two
//! operand precisions, so values created from one [`NumericContext`] stay at
//! that context's precision through whole formulas.
//!
//! [`NumericContext`]: crate::NumericContext

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};

use crate::error::{NumError, Result};

const RM: RoundingMode = RoundingMode::ToEven;

/// The constant cache is rebuilt per call; nothing is shared between threads.
fn consts() -> Consts {
    Consts::new().expect("allocating astro-float constant cache")
}

#[derive(Clone, Debug)]
pub struct Real {
    v: BigFloat,
    p: usize,
}

impl Real {
    fn wrap(v: BigFloat, p: usize) -> Self {
        Real { v, p }
    }

    pub fn from_i64(n: i64, p: usize) -> Self {
        Self::wrap(BigFloat::from_i64(n, p), p)
    }

    /// `num / den` rounded to `p` bits.
    pub fn ratio(num: i64, den: i64, p: usize) -> Self {
        Self::from_i64(num, p) / Self::from_i64(den, p)
    }

    /// Exact conversion of a binary double; used only for coarse grids and seeds.
    pub fn from_f64(x: f64, p: usize) -> Self {
        Self::wrap(BigFloat::from_f64(x, p), p)
    }

    pub fn pi(p: usize) -> Self {
        Self::wrap(consts().pi(p, RM), p)
    }

    /// `2^e` exactly.
    pub fn pow2(e: i32, p: usize) -> Self {
        let mut v = BigFloat::from_i64(1, p);
        v.set_exponent(e + 1);
        Self::wrap(v, p)
    }

    /// `10^e` at precision `p`.
    pub fn pow10(e: i32, p: usize) -> Self {
        let ten = Self::from_i64(10, p);
        if e >= 0 {
            ten.powi(e as u32)
        } else {
            ten.powi(e.unsigned_abs()).recip()
        }
    }

    /// Parses a plain or scientific decimal literal such as `0.125` or `-3.5e-7`.
    pub fn parse_decimal(s: &str, p: usize) -> Result<Self> {
        let t = s.trim();
        let well_formed = !t.is_empty()
            && t.chars()
                .all(|c| c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E'))
            && t.chars().any(|c| c.is_ascii_digit());
        if !well_formed {
            return Err(NumError::Parse(alloc::format!("`{s}` is not a decimal number")));
        }
        let v = BigFloat::parse(t, Radix::Dec, p, RM, &mut consts());
        let r = Self::wrap(v, p);
        if r.is_finite() {
            Ok(r)
        } else {
            Err(NumError::Parse(alloc::format!("`{s}` is not a decimal number")))
        }
    }

    pub fn precision(&self) -> usize {
        self.p
    }

    /// Same value re-rounded to `p` bits.
    pub fn with_precision(&self, p: usize) -> Self {
        let mut v = self.v.clone();
        // set_precision only fails on allocation failure or on NaN/Inf, which keep their flavor.
        let _ = v.set_precision(p, RM);
        Self::wrap(v, p)
    }

    pub fn is_finite(&self) -> bool {
        !self.v.is_nan() && !self.v.is_inf()
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    /// Strictly greater than zero.
    pub fn is_positive(&self) -> bool {
        self.is_finite() && !self.v.is_zero() && self.v.is_positive()
    }

    /// Strictly less than zero.
    pub fn is_negative(&self) -> bool {
        self.is_finite() && !self.v.is_zero() && self.v.is_negative()
    }

    /// Returns `self` when finite, `NonFinite` otherwise.
    pub fn finite(self, op: &'static str) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(NumError::NonFinite { op })
        }
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.v.abs(), self.p)
    }

    pub fn recip(&self) -> Self {
        Self::wrap(self.v.reciprocal(self.p, RM), self.p)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn sqrt(&self) -> Self {
        Self::wrap(self.v.sqrt(self.p, RM), self.p)
    }

    pub fn cbrt(&self) -> Self {
        Self::wrap(self.v.cbrt(self.p, RM), self.p)
    }

    /// Positive real `n`-th root of a positive value.
    pub fn root(&self, n: u32) -> Self {
        match n {
            1 => self.clone(),
            2 => self.sqrt(),
            3 => self.cbrt(),
            _ => {
                let nn = Self::from_i64(i64::from(n), self.p);
                (&self.ln() / &nn).exp()
            }
        }
    }

    pub fn exp(&self) -> Self {
        Self::wrap(self.v.exp(self.p, RM, &mut consts()), self.p)
    }

    pub fn ln(&self) -> Self {
        Self::wrap(self.v.ln(self.p, RM, &mut consts()), self.p)
    }

    /// `self^e` for a positive base.
    pub fn powr(&self, e: &Real) -> Self {
        let p = self.p.max(e.p);
        Self::wrap(self.v.pow(&e.v, p, RM, &mut consts()), p)
    }

    /// `self^(num/den)` for a positive base, taken on the real positive branch.
    pub fn pow_ratio(&self, num: i64, den: i64) -> Self {
        if den == 1 {
            return if num >= 0 {
                self.powi(num as u32)
            } else {
                self.powi(num.unsigned_abs() as u32).recip()
            };
        }
        self.powr(&Self::ratio(num, den, self.p))
    }

    pub fn powi(&self, n: u32) -> Self {
        Self::wrap(self.v.powi(n as usize, self.p, RM), self.p)
    }

    pub fn floor(&self) -> Self {
        Self::wrap(self.v.floor(), self.p)
    }

    pub fn max(&self, other: &Real) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn min(&self, other: &Real) -> Self {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Binary exponent `e` with `2^(e-1) <= |self| < 2^e`; `None` for zero or non-finite.
    pub fn exponent(&self) -> Option<i32> {
        if self.v.is_zero() || !self.is_finite() {
            None
        } else {
            self.v.exponent()
        }
    }

    /// Nearest double, for diagnostics and coarse scans only.
    pub fn to_f64(&self) -> f64 {
        if self.v.is_nan() {
            return f64::NAN;
        }
        if self.v.is_inf() {
            return if self.v.is_inf_pos() {
                f64::INFINITY
            } else {
                f64::NEG_INFINITY
            };
        }
        if self.v.is_zero() {
            return 0.0;
        }
        let words = match self.v.mantissa_digits() {
            Some(w) => w,
            None => return f64::NAN,
        };
        let e = self.v.exponent().unwrap_or(0);
        let top = words.last().copied().unwrap_or(0) as f64 / 18_446_744_073_709_551_616.0;
        let mag = top * pow2_f64(e);
        if self.v.sign() == Some(Sign::Neg) {
            -mag
        } else {
            mag
        }
    }

    /// Decimal rendering with exactly `sig` significant digits, rounded half-up.
    ///
    /// Moderate magnitudes are printed positionally, others as `d.ddd…e±N`.
    /// The output is accepted by [`Real::parse_decimal`].
    pub fn to_decimal(&self, sig: usize) -> String {
        let sig = sig.max(1);
        if !self.is_finite() {
            return String::from(if self.v.is_nan() { "NaN" } else { "inf" });
        }
        if self.v.is_zero() {
            return String::from("0");
        }
        let work = self.p.max(sig * 4 + 64);
        let a = self.abs().with_precision(work);
        let ln10 = Self::from_i64(10, work).ln();
        let mut e10 = (&a.ln() / &ln10).to_f64().floor() as i32;
        let mut m = &a / &Self::pow10(e10, work);
        let one = Self::from_i64(1, work);
        let ten = Self::from_i64(10, work);
        while m >= ten {
            m = &m / &ten;
            e10 += 1;
        }
        while m < one {
            m = &m * &ten;
            e10 -= 1;
        }
        let mut digits: Vec<u8> = Vec::with_capacity(sig + 1);
        for _ in 0..=sig {
            let d = m.floor();
            let di = d.to_f64() as i64;
            digits.push(di.clamp(0, 9) as u8);
            m = &(&m - &d) * &ten;
        }
        let next = digits.pop().unwrap_or(0);
        if next >= 5 {
            let mut i = digits.len();
            loop {
                if i == 0 {
                    digits.insert(0, 1);
                    digits.pop();
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
        let mut out = String::new();
        if self.is_negative() {
            out.push('-');
        }
        let ds: String = digits.iter().map(|d| char::from(b'0' + d)).collect();
        if (-6..21).contains(&e10) {
            if e10 < 0 {
                out.push_str("0.");
                for _ in 0..(-e10 - 1) {
                    out.push('0');
                }
                out.push_str(&ds);
            } else {
                let int_len = e10 as usize + 1;
                if ds.len() <= int_len {
                    out.push_str(&ds);
                    for _ in ds.len()..int_len {
                        out.push('0');
                    }
                } else {
                    out.push_str(&ds[..int_len]);
                    out.push('.');
                    out.push_str(&ds[int_len..]);
                }
            }
        } else {
            out.push_str(&ds[..1]);
            if ds.len() > 1 {
                out.push('.');
                out.push_str(&ds[1..]);
            }
            out.push('e');
            out.push_str(&alloc::format!("{e10}"));
        }
        out
    }

    /// Number of decimal digits the current precision can represent.
    pub fn decimal_capacity(&self) -> usize {
        (self.p as f64 * core::f64::consts::LOG10_2) as usize
    }
}

fn pow2_f64(e: i32) -> f64 {
    let mut r = 1.0f64;
    let (mut b, mut n) = if e >= 0 { (2.0f64, e) } else { (0.5f64, -e) };
    while n > 0 {
        if n & 1 == 1 {
            r *= b;
        }
        b *= b;
        n >>= 1;
    }
    r
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().unwrap_or_else(|| self.decimal_capacity().saturating_sub(2));
        f.write_str(&self.to_decimal(sig))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.v.cmp(&other.v) == Some(0)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.cmp(&other.v).map(|c| c.cmp(&0))
    }
}

macro_rules! bin_op {
    ($tr:ident, $m:ident) => {
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                let p = self.p.max(rhs.p);
                Real::wrap(self.v.$m(&rhs.v, p, RM), p)
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                (&self).$m(rhs)
            }
        }
        impl $tr<Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                self.$m(&rhs)
            }
        }
        impl $tr<i64> for &Real {
            type Output = Real;
            fn $m(self, rhs: i64) -> Real {
                self.$m(&Real::from_i64(rhs, self.p))
            }
        }
        impl $tr<i64> for Real {
            type Output = Real;
            fn $m(self, rhs: i64) -> Real {
                (&self).$m(&Real::from_i64(rhs, self.p))
            }
        }
    };
}

bin_op!(Add, add);
bin_op!(Sub, sub);
bin_op!(Mul, mul);
bin_op!(Div, div);

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::wrap(BigFloat::neg(&self.v), self.p)
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: usize = 256;

    #[test]
    fn decimal_round_trip_keeps_requested_digits() {
        let x = Real::from_i64(2, P).sqrt();
        let s = x.to_decimal(40);
        assert_eq!(s, "1.414213562373095048801688724209698078570");
        let back = Real::parse_decimal(&s, P).unwrap();
        assert!((&back - &x).abs() < Real::pow10(-39, P));
    }

    #[test]
    fn decimal_rendering_handles_carry_and_scale() {
        assert_eq!(Real::ratio(9999, 1000, P).to_decimal(3), "10.0");
        assert_eq!(Real::ratio(-1, 800, P).to_decimal(5), "-0.0012500");
        assert_eq!(Real::from_i64(100, P).to_decimal(2), "100");
        assert_eq!(Real::ratio(1, 3, P).to_decimal(4), "0.3333");
        let tiny = Real::pow10(-30, P) * 3;
        assert_eq!(tiny.to_decimal(3), "3.00e-30");
        assert_eq!(Real::ratio(-7, 2, P).to_decimal(3), "-3.50");
        let parsed = Real::parse_decimal("3e-30", P).unwrap();
        assert!((&parsed - &tiny).abs() < Real::pow10(-100, P));
        assert_eq!(Real::from_i64(0, P).to_decimal(5), "0");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Real::parse_decimal("abc", P).is_err());
        assert!(Real::parse_decimal("", P).is_err());
        assert!(Real::parse_decimal("1/2", P).is_err());
        assert_eq!(Real::parse_decimal("0.5", P).unwrap(), Real::ratio(1, 2, P));
    }

    #[test]
    fn to_f64_matches_small_values() {
        assert_eq!(Real::ratio(3, 4, P).to_f64(), 0.75);
        assert_eq!(Real::from_i64(-12, P).to_f64(), -12.0);
        assert!((Real::pi(P).to_f64() - core::f64::consts::PI).abs() < 1e-15);
        assert_eq!(Real::pow2(-3, P).to_f64(), 0.125);
    }

    #[test]
    fn fractional_powers_stay_on_positive_branch() {
        let x = Real::from_i64(32, P);
        let fifth = x.root(5);
        assert!((&fifth - &Real::from_i64(2, P)).abs() < Real::pow2(-240, P));
        let y = Real::from_i64(8, P).pow_ratio(-2, 3);
        assert!((&y - &Real::ratio(1, 4, P)).abs() < Real::pow2(-240, P));
    }
}
