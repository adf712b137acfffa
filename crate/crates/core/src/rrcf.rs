//! The Rogers–Ramanujan continued fraction
//! `R(q) = q^(1/5) / (1 + q/(1 + q²/(1 + q³/(1 + ...))))`.

use crate::context::NumericContext;
use crate::error::{NumError, Result};
use crate::numerics::backward_continued_fraction_from;
use crate::qseries::{euler_f, QNome};
use crate::real::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    ContinuedFraction,
    EtaQuotient,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RRValue {
    pub q: QNome,
    pub value: Real,
    pub route: Route,
    pub digits: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ASource {
    EtaQuotient,
    Parametric,
}

/// `a = R^-5 - 11 - R^5`.
#[derive(Debug, Clone, PartialEq)]
pub struct AValue {
    pub a: Real,
    pub source: ASource,
}

/// Backward recurrence on the continued fraction itself.
pub fn rrcf_cf(ctx: &NumericContext, q: &QNome) -> Result<RRValue> {
    let qv = ctx.adopt(q.value());
    let mut power = ctx.int(1);
    let start = geometric_start_depth(ctx, &qv);
    let tail = backward_continued_fraction_from(ctx, "rrcf_cf", start, |_| {
        power = &power * &qv;
        power.clone()
    })?;
    let value = qv.root(5) / tail;
    Ok(RRValue {
        q: q.clone(),
        value,
        route: Route::ContinuedFraction,
        digits: ctx.target_digits(),
    })
}

/// Smallest depth `N >= 8` with `q^N < 2^(-p/2)`, where the recurrence starts.
pub(crate) fn geometric_start_depth(ctx: &NumericContext, q: &Real) -> usize {
    let lnq = q.ln().to_f64();
    let half_bits = ctx.precision_bits() as f64 / 2.0 * core::f64::consts::LN_2;
    if lnq.is_nan() || lnq >= 0.0 {
        return usize::MAX / 2;
    }
    let n = half_bits / -lnq;
    if n > 1e15 {
        usize::MAX / 2
    } else {
        (n as usize + 1).max(8)
    }
}

/// `R` from `1/R - 1 - R = f(-q^(1/5)) / (q^(1/5) f(-q^5))`, taking the positive root.
pub fn rrcf_via_identity(ctx: &NumericContext, q: &QNome) -> Result<RRValue> {
    let q5 = q.root(5)?;
    let c = euler_f(ctx, &q5)? / (ctx.adopt(q5.value()) * euler_f(ctx, &q.pow(5)?)?);
    let b = c + 1;
    // (-b + sqrt(b² + 4)) / 2 without cancellation
    let value = (ctx.int(2) / (&b + &(b.square() + 4).sqrt())).finite("rrcf_via_identity")?;
    Ok(RRValue {
        q: q.clone(),
        value,
        route: Route::EtaQuotient,
        digits: ctx.target_digits(),
    })
}

/// `a = f(-q)^6 / (q f(-q^5)^6)`.
pub fn a_quotient(ctx: &NumericContext, q: &QNome) -> Result<AValue> {
    let num = euler_f(ctx, q)?.powi(6);
    let den = ctx.adopt(q.value()) * euler_f(ctx, &q.pow(5)?)?.powi(6);
    Ok(AValue {
        a: (num / den).finite("a_quotient")?,
        source: ASource::EtaQuotient,
    })
}

/// `R^-5 - 11 - R^5`.
pub fn a_of_r(r: &Real) -> Real {
    let r5 = r.powi(5);
    r5.recip() - 11 - r5
}

/// Inverts `a = R^-5 - 11 - R^5`: `R^5` is the positive root of `X² + (a+11) X - 1`.
pub fn rrcf_from_a(ctx: &NumericContext, a: &Real) -> Result<Real> {
    let a = ctx.adopt(a);
    if !a.is_finite() || a <= ctx.int(-13) {
        return Err(NumError::domain("rrcf_from_a", "a must exceed -13"));
    }
    let b = a + 11;
    let r5 = ctx.int(2) / (&b + &(b.square() + 4).sqrt());
    Ok(r5.root(5))
}

/// `R'(q) = (1/5) q^(-5/6) f(-q)^4 R (R^-5 - 11 - R^5)^(1/6)`.
pub fn rrcf_derivative_q(ctx: &NumericContext, q: &QNome) -> Result<Real> {
    let r = rrcf_cf(ctx, q)?.value;
    let a = a_of_r(&r);
    if !a.is_positive() {
        return Err(NumError::domain("rrcf_derivative_q", "R^-5 - 11 - R^5 must be positive"));
    }
    let qv = ctx.adopt(q.value());
    let d = qv.pow_ratio(-5, 6) * euler_f(ctx, q)?.powi(4) * &r * a.root(6) / 5;
    d.finite("rrcf_derivative_q")
}
