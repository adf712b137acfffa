//! Complete elliptic integral `K`, singular moduli `k_r`, the inverse map
//! `x ↦ r` with `k_r = x`, and the degree-5 multiplier `M5(r) = K(k_25r)/K(k_r)`.

use alloc::vec::Vec;

use crate::context::NumericContext;
use crate::error::{NumError, Result};
use crate::numerics::{agm, bisect_root, real_roots_in, Interval, Polynomial};
use crate::qseries::{theta2, theta3, theta4, QNome};
use crate::real::Real;

/// A modulus pair with `k² + k'² = 1`, both in `(0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Modulus {
    k: Real,
    k_prime: Real,
}

impl Modulus {
    /// Builds the pair from `k`, taking `k' = sqrt((1-k)(1+k))`.
    pub fn from_k(ctx: &NumericContext, k: &Real) -> Result<Self> {
        let k = ctx.adopt(k);
        let one = ctx.int(1);
        if !k.is_positive() || k >= one {
            return Err(NumError::domain("modulus", "k must lie in (0, 1)"));
        }
        let k_prime = ((&one - &k) * (&one + &k)).sqrt();
        Ok(Modulus { k, k_prime })
    }

    /// Accepts an independently computed pair after checking `k² + k'² = 1`.
    pub fn from_pair(ctx: &NumericContext, k: Real, k_prime: Real) -> Result<Self> {
        let one = ctx.int(1);
        for v in [&k, &k_prime] {
            if !v.is_positive() || *v >= one {
                return Err(NumError::domain("modulus", "k and k' must lie in (0, 1)"));
            }
        }
        let defect = (k.square() + k_prime.square() - &one).abs();
        if defect > ctx.tol() {
            return Err(NumError::ResidualTooLarge {
                check: "k^2 + k'^2 = 1",
                residual: defect.to_decimal(6),
            });
        }
        Ok(Modulus { k, k_prime })
    }

    pub fn k(&self) -> &Real {
        &self.k
    }

    pub fn k_prime(&self) -> &Real {
        &self.k_prime
    }

    /// Swaps the roles of `k` and `k'`.
    pub fn complement(&self) -> Modulus {
        Modulus {
            k: self.k_prime.clone(),
            k_prime: self.k.clone(),
        }
    }
}

/// `k_r` together with its period `K(k_r)` and nome `e^(-π√r)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularPoint {
    pub r: Real,
    pub modulus: Modulus,
    /// `K(k_r)`
    pub k_value: Real,
    /// `e^(-π√r)`
    pub q_nome: Real,
}

/// `K` from the complementary modulus: `π / (2 agm(1, k'))`.
pub fn elliptic_k_from_complement(ctx: &NumericContext, k_prime: &Real) -> Result<Real> {
    if !k_prime.is_positive() || *k_prime > ctx.int(1) {
        return Err(NumError::domain("elliptic_k", "k' must lie in (0, 1]"));
    }
    if k_prime.exponent().is_some_and(|e| e < -(ctx.precision_bits() as i32) / 4) {
        return Err(NumError::domain("elliptic_k", "k too close to 1"));
    }
    Ok(ctx.pi() / (agm(ctx, &ctx.int(1), k_prime)? * 2))
}

/// Complete elliptic integral of the first kind, `K(k) = π / (2 agm(1, sqrt(1-k²)))`.
///
/// Values with `k >= 1 - 2^(-precision_bits/2)` are refused.
pub fn elliptic_k(ctx: &NumericContext, k: &Real) -> Result<Real> {
    let k = ctx.adopt(k);
    let one = ctx.int(1);
    if k.is_negative() || k >= &one - &ctx.pow2(-(ctx.precision_bits() as i32) / 2) {
        return Err(NumError::domain("elliptic_k", "requires 0 <= k < 1"));
    }
    let k_prime = ((&one - &k) * (&one + &k)).sqrt();
    elliptic_k_from_complement(ctx, &k_prime)
}

/// Theta-quotient evaluation for `r >= 1`, where the nome is at most `e^(-π)`.
fn singular_by_theta(ctx: &NumericContext, r: &Real) -> Result<(Modulus, Real)> {
    let q = QNome::from_r(ctx, r)?;
    let t2 = theta2(ctx, &q)?.square();
    let t3 = theta3(ctx, &q)?.square();
    let t4 = theta4(ctx, &q)?.square();
    let modulus = Modulus::from_pair(ctx, &t2 / &t3, &t4 / &t3)?;
    let k_value = ctx.pi() * &t3 / 2;
    Ok((modulus, k_value))
}

/// Singular modulus `k_r`, the solution of `K(k')/K(k) = √r`.
///
/// Computed as `θ2²/θ3²` at `q = e^(-π√r)`. For `r < 1` the complementary
/// point `1/r` is evaluated instead and `k ↔ k'` swapped, which keeps the
/// nome small. The result is checked against the period ratio directly.
pub fn singular_modulus(ctx: &NumericContext, r: &Real) -> Result<SingularPoint> {
    let r = ctx.adopt(r);
    if !r.is_positive() {
        return Err(NumError::domain("singular_modulus", "r must be positive"));
    }
    let one = ctx.int(1);
    let (modulus, k_value) = if r >= one {
        singular_by_theta(ctx, &r)?
    } else {
        let (m, k_inv) = singular_by_theta(ctx, &r.recip())?;
        // K(k_r) = K(k'_{1/r}) = K(k_{1/r}) / √r
        (m.complement(), k_inv / r.sqrt())
    };
    let k_comp = elliptic_k_from_complement(ctx, modulus.k())?;
    let period_ratio = &k_comp / &k_value;
    let defect = (&period_ratio - &r.sqrt()).abs() / r.sqrt();
    if defect > ctx.tol() {
        return Err(NumError::NonConvergence {
            op: "singular_modulus",
            iterations: ctx.max_iter(),
        });
    }
    let q_nome = (-(ctx.pi() * r.sqrt())).exp();
    Ok(SingularPoint {
        r,
        modulus,
        k_value,
        q_nome,
    })
}

/// Period-ratio residual `K(k')/K(k) - √r`; decreasing in `k`.
pub fn period_ratio_residual(ctx: &NumericContext, k: &Real, r: &Real) -> Result<Real> {
    let m = Modulus::from_k(ctx, k)?;
    let ratio = elliptic_k_from_complement(ctx, m.k())? / elliptic_k_from_complement(ctx, m.k_prime())?;
    Ok(ratio - ctx.adopt(r).sqrt())
}

/// `k_r` by bisection on the period-ratio equation alone. Slow, assumption-free;
/// serves as the independent check on [`singular_modulus`].
pub fn singular_modulus_by_bisection(ctx: &NumericContext, r: &Real) -> Result<Modulus> {
    if !r.is_positive() {
        return Err(NumError::domain("singular_modulus", "r must be positive"));
    }
    let f = |k: &Real| period_ratio_residual(ctx, k, r);
    let one = ctx.int(1);
    let mut lo = ctx.ratio(1, 2);
    let mut hi = ctx.ratio(1, 2);
    let limit = ctx.pow2(-(ctx.precision_bits() as i32) / 4);
    while f(&lo)?.is_negative() {
        lo = lo / 2;
        if lo < limit {
            return Err(NumError::NoSignChange { op: "singular_modulus" });
        }
    }
    while f(&hi)?.is_positive() {
        hi = &one - &((&one - &hi) / 2);
        if &one - &hi < limit {
            return Err(NumError::NoSignChange { op: "singular_modulus" });
        }
    }
    if lo == hi {
        return Modulus::from_k(ctx, &lo);
    }
    let k = bisect_root(ctx, f, &Interval::new(lo, hi)?)?;
    Modulus::from_k(ctx, &k)
}

/// The inverse of `r ↦ k_r`: `r = (K(sqrt(1-x²)) / K(x))²`.
pub fn inverse_singular_modulus(ctx: &NumericContext, x: &Real) -> Result<Real> {
    let m = Modulus::from_k(ctx, x).map_err(|_| NumError::domain("inverse_singular_modulus", "x must lie in (0, 1)"))?;
    let num = elliptic_k_from_complement(ctx, m.k())?;
    let den = elliptic_k_from_complement(ctx, m.k_prime())?;
    Ok((num / den).square())
}

/// Degree-5 multiplier `M5(r) = K(k_25r) / K(k_r)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Multiplier5 {
    pub r: Real,
    pub value: Real,
    /// `(5M-1)^5 (1-M) - 256 k² k'² M` at `M = value`.
    pub residual: Real,
}

/// `(5x-1)^5 (1-x) - 256 k² k'² x`, whose roots include `M5(r)` when `k = k_r`.
pub fn eq20_polynomial(ctx: &NumericContext, modulus: &Modulus) -> Result<Polynomial> {
    // (5x - 1)^5 = sum_j C(5,j) 5^j (-1)^(5-j) x^j
    const BINOM: [i64; 6] = [1, 5, 10, 10, 5, 1];
    let mut quintic = [0i64; 6];
    for j in 0..6 {
        let sign = if (5 - j) % 2 == 0 { 1 } else { -1 };
        quintic[j] = sign * BINOM[j] * 5i64.pow(j as u32);
    }
    // multiply by (1 - x)
    let mut sextic = [0i64; 7];
    for j in 0..6 {
        sextic[j] += quintic[j];
        sextic[j + 1] -= quintic[j];
    }
    let mut coeffs: Vec<Real> = sextic.iter().map(|&c| ctx.int(c)).collect();
    let kk = modulus.k().square() * modulus.k_prime().square() * 256;
    coeffs[1] = &coeffs[1] - &kk;
    Polynomial::new(coeffs)
}

/// Evaluates the multiplier polynomial residual at `m`.
pub fn eq20_residual(modulus: &Modulus, m: &Real) -> Real {
    let one = Real::from_i64(1, m.precision());
    (m * 5 - 1).powi(5) * (&one - m) - modulus.k().square() * modulus.k_prime().square() * 256 * m
}

/// `M5(r)` from the period ratio, with the multiplier polynomial as a residual check.
pub fn multiplier5(ctx: &NumericContext, r: &Real) -> Result<Multiplier5> {
    let base = singular_modulus(ctx, r)?;
    let scaled = singular_modulus(ctx, &(ctx.adopt(r) * 25))?;
    let value = &scaled.k_value / &base.k_value;
    let residual = eq20_residual(&base.modulus, &value);
    if residual.abs() > ctx.tol() {
        return Err(NumError::ResidualTooLarge {
            check: "multiplier polynomial",
            residual: residual.to_decimal(6),
        });
    }
    Ok(Multiplier5 {
        r: ctx.adopt(r),
        value,
        residual,
    })
}

/// Real roots of the multiplier polynomial in `(1/5, 1)`; `M5(r)` is one of them.
pub fn multiplier5_candidates(ctx: &NumericContext, r: &Real) -> Result<Vec<Real>> {
    let sp = singular_modulus(ctx, r)?;
    let p = eq20_polynomial(ctx, &sp.modulus)?;
    let range = Interval::new(ctx.ratio(1, 5), ctx.int(1))?;
    let roots = real_roots_in(ctx, &p, &range)?;
    let (lo, hi) = (ctx.ratio(1, 5), ctx.int(1));
    Ok(roots
        .into_iter()
        .map(|pr| pr.value)
        .filter(|v| *v > lo && *v < hi)
        .collect())
}
