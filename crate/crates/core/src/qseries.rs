//! q-products and theta series.
//!
//! Every infinite sum or product stops at the first term below
//! `2^(-precision_bits)` of the running value, and the remainder is bounded by
//! a geometric majorant. Nomes above [`MAX_NOME`] are refused.

use crate::context::NumericContext;
use crate::elliptic::singular_modulus;
use crate::error::{NumError, Result};
use crate::real::Real;

/// Largest nome accepted by the theta and eta routines.
pub const MAX_NOME: f64 = 0.9;

/// A nome `q` with `0 < q < 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct QNome(Real);

impl QNome {
    pub fn new(q: Real) -> Result<Self> {
        let one = Real::from_i64(1, q.precision());
        if !q.is_positive() || q >= one {
            return Err(NumError::domain("nome", "q must lie in (0, 1)"));
        }
        Ok(QNome(q))
    }

    /// `q = exp(-pi sqrt(r))`.
    pub fn from_r(ctx: &NumericContext, r: &Real) -> Result<Self> {
        if !r.is_positive() {
            return Err(NumError::domain("nome", "r must be positive"));
        }
        Self::new((-(ctx.pi() * ctx.adopt(r).sqrt())).exp())
    }

    pub fn value(&self) -> &Real {
        &self.0
    }

    pub fn into_inner(self) -> Real {
        self.0
    }

    /// `q^n` for a positive integer `n`.
    pub fn pow(&self, n: u32) -> Result<QNome> {
        QNome::new(self.0.powi(n))
    }

    /// Positive real `n`-th root, i.e. the nome `q^(1/n)`.
    pub fn root(&self, n: u32) -> Result<QNome> {
        QNome::new(self.0.root(n))
    }
}

/// A truncated infinite sum or product.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub value: Real,
    /// Number of terms or factors actually used.
    pub terms: usize,
    /// Bound on the neglected tail: absolute for sums, on `|log tail|` for products.
    pub tail_bound: Real,
}

impl Series {
    /// Decimal digits the truncation alone leaves intact.
    pub fn digits_believed(&self) -> u32 {
        if self.tail_bound.is_zero() {
            return u32::MAX;
        }
        let rel = &self.tail_bound / &self.value.abs();
        let d = -(rel.to_f64().log10());
        if d.is_finite() && d > 0.0 {
            d as u32
        } else {
            0
        }
    }
}

/// Number of factors in a q-Pochhammer symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Terms {
    Finite(usize),
    Infinite,
}

fn check_near_one(ctx: &NumericContext, q: &QNome, op: &'static str) -> Result<Real> {
    let q = ctx.adopt(q.value());
    if q.to_f64() > MAX_NOME {
        return Err(NumError::domain(op, "nome too close to 1 (q > 0.9)"));
    }
    Ok(q)
}

fn exhausted(op: &'static str, ctx: &NumericContext) -> NumError {
    NumError::NonConvergence {
        op,
        iterations: ctx.max_iter(),
    }
}

/// `(a; q)_n = prod_{k=0}^{n-1} (1 - a q^k)`.
///
/// For `n = ∞` the product stops once `|a q^k| < 2^(-precision_bits)`; the
/// neglected factors satisfy `|log tail| <= |a| q^K / (1 - q)`.
pub fn qpochhammer(ctx: &NumericContext, a: &Real, q: &QNome, n: Terms) -> Result<Series> {
    let qv = ctx.adopt(q.value());
    let one = ctx.int(1);
    let mut prod = one.clone();
    let mut term = ctx.adopt(a);
    match n {
        Terms::Finite(n) => {
            for _ in 0..n {
                prod = &prod * &(&one - &term);
                term = &term * &qv;
            }
            Ok(Series {
                value: prod.finite("qpochhammer")?,
                terms: n,
                tail_bound: ctx.int(0),
            })
        }
        Terms::Infinite => {
            let eps = ctx.eps();
            for k in 0..ctx.max_iter() {
                if term.abs() < eps {
                    let tail_bound = term.abs() / (&one - &qv);
                    return Ok(Series {
                        value: prod.finite("qpochhammer")?,
                        terms: k,
                        tail_bound,
                    });
                }
                prod = &prod * &(&one - &term);
                term = &term * &qv;
            }
            Err(exhausted("qpochhammer", ctx))
        }
    }
}

/// Euler's function `f(-q) = (q; q)_∞`, summed with the pentagonal-number series
/// `sum_k (-1)^k q^(k(3k-1)/2)`.
pub fn euler_f(ctx: &NumericContext, q: &QNome) -> Result<Real> {
    Ok(euler_f_series(ctx, q)?.value)
}

pub fn euler_f_series(ctx: &NumericContext, q: &QNome) -> Result<Series> {
    let qv = check_near_one(ctx, q, "euler_f")?;
    let one = ctx.int(1);
    let eps = ctx.eps();
    let mut sum = one.clone();
    // a = q^(k(3k-1)/2), b = q^(k(3k+1)/2) = a q^k
    let mut qk = qv.clone();
    let mut a = qv.clone();
    for k in 1..ctx.max_iter() {
        let b = &a * &qk;
        let pair = &a + &b;
        if k % 2 == 1 {
            sum = &sum - &pair;
        } else {
            sum = &sum + &pair;
        }
        // a_{k+1} = a_k q^(3k+1)
        let step = &(&qk * &qk * &qk) * &qv;
        a = &a * &step;
        qk = &qk * &qv;
        if a < &eps * &sum.abs() {
            let tail_bound = &a * 2 / (&one - &qv);
            return Ok(Series {
                value: sum,
                terms: k,
                tail_bound,
            });
        }
    }
    Err(exhausted("euler_f", ctx))
}

/// `f(-q)` as the raw product `prod_{n>=1} (1 - q^n)`; independent of the pentagonal route.
pub fn euler_f_product(ctx: &NumericContext, q: &QNome) -> Result<Real> {
    check_near_one(ctx, q, "euler_f")?;
    Ok(qpochhammer(ctx, q.value(), q, Terms::Infinite)?.value)
}

/// `theta2(q) = 2 sum_{n>=0} q^((n+1/2)^2) = 2 q^(1/4) sum_{n>=0} q^(n(n+1))`.
pub fn theta2(ctx: &NumericContext, q: &QNome) -> Result<Real> {
    let qv = check_near_one(ctx, q, "theta2")?;
    let q2 = qv.square();
    let eps = ctx.eps();
    let mut sum = ctx.int(1);
    // term = q^(n(n+1)), ratio q^(2n+2)
    let mut ratio = q2.clone();
    let mut term = ctx.int(1);
    for _ in 0..ctx.max_iter() {
        term = &term * &ratio;
        ratio = &ratio * &q2;
        sum = &sum + &term;
        if term < &eps * &sum {
            return Ok(sum * 2 * qv.root(4));
        }
    }
    Err(exhausted("theta2", ctx))
}

fn theta_34(ctx: &NumericContext, q: &QNome, alternate: bool, op: &'static str) -> Result<Real> {
    let qv = check_near_one(ctx, q, op)?;
    let q2 = qv.square();
    let eps = ctx.eps();
    let mut sum = ctx.int(0);
    // term = q^(n^2), ratio q^(2n+1)
    let mut ratio = qv.clone();
    let mut term = ctx.int(1);
    for n in 1..ctx.max_iter() {
        term = &term * &ratio;
        ratio = &ratio * &q2;
        if alternate && n % 2 == 1 {
            sum = &sum - &term;
        } else {
            sum = &sum + &term;
        }
        if term < &eps * &(&sum.abs() * 2 + 1) {
            return Ok(sum * 2 + 1);
        }
    }
    Err(exhausted(op, ctx))
}

/// `theta3(q) = 1 + 2 sum_{n>=1} q^(n^2)`.
pub fn theta3(ctx: &NumericContext, q: &QNome) -> Result<Real> {
    theta_34(ctx, q, false, "theta3")
}

/// `theta4(q) = 1 + 2 sum_{n>=1} (-1)^n q^(n^2)`.
pub fn theta4(ctx: &NumericContext, q: &QNome) -> Result<Real> {
    theta_34(ctx, q, true, "theta4")
}

/// Both sides of an eta-quotient identity and their relative mismatch.
#[derive(Debug, Clone, PartialEq)]
pub struct EtaQuotientReport {
    pub r: Real,
    pub lhs: Real,
    pub rhs: Real,
    /// `|lhs - rhs| / max(|lhs|, |rhs|)`
    pub residual: Real,
}

impl EtaQuotientReport {
    fn new(r: Real, lhs: Real, rhs: Real) -> Self {
        let residual = (&lhs - &rhs).abs() / lhs.abs().max(&rhs.abs());
        EtaQuotientReport { r, lhs, rhs, residual }
    }
}

/// `f(-q)^8` against `2^(8/3) π^-4 q^(-1/3) k^(2/3) k'^(8/3) K(k)^4`, `q = e^(-π√r)`.
pub fn residual_eq8(ctx: &NumericContext, r: &Real) -> Result<EtaQuotientReport> {
    let sp = singular_modulus(ctx, r)?;
    let q = QNome::new(sp.q_nome.clone())?;
    let lhs = euler_f(ctx, &q)?.powi(8);
    let pi = ctx.pi();
    let rhs = ctx.int(2).pow_ratio(8, 3) / pi.powi(4)
        * sp.q_nome.pow_ratio(-1, 3)
        * sp.modulus.k().pow_ratio(2, 3)
        * sp.modulus.k_prime().pow_ratio(8, 3)
        * sp.k_value.powi(4);
    Ok(EtaQuotientReport::new(ctx.adopt(r), lhs, rhs))
}

/// `f(-q^2)^6` against `2 k k' K(k)^3 / (π^3 q^(1/2))`, `q = e^(-π√r)`.
pub fn residual_eq9(ctx: &NumericContext, r: &Real) -> Result<EtaQuotientReport> {
    let sp = singular_modulus(ctx, r)?;
    let q = QNome::new(sp.q_nome.clone())?;
    let lhs = euler_f(ctx, &q.pow(2)?)?.powi(6);
    let rhs = sp.modulus.k() * sp.modulus.k_prime() * 2 * sp.k_value.powi(3)
        / (ctx.pi().powi(3) * sp.q_nome.sqrt());
    Ok(EtaQuotientReport::new(ctx.adopt(r), lhs, rhs))
}
