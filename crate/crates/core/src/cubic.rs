//! Ramanujan's cubic continued fraction
//! `V(q) = q^(1/3) / (1 + (q+q²)/(1 + (q²+q⁴)/(1 + (q³+q⁶)/(1 + ...))))`
//! and the algebraic maps tying it to singular moduli.

use alloc::vec::Vec;

use crate::context::NumericContext;
use crate::elliptic::inverse_singular_modulus;
use crate::error::{NumError, Result};
use crate::numerics::{backward_continued_fraction_from, Polynomial};
use crate::qseries::QNome;
use crate::real::Real;
use crate::rrcf::geometric_start_depth;

/// `V(q)` with `T = sqrt(1 - 8V³)` and the modulus `k` it determines.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicValue {
    pub q: QNome,
    pub v: Real,
    pub t: Real,
    pub k: Real,
}

/// `w3 = k_r k_9r`, the recovered `x = k_r` and the value `V(e^(-π√r))`.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicParametric {
    pub w3: Real,
    pub x: Real,
    pub t: Real,
}

fn check_open(op: &'static str, v: &Real, hi: &Real) -> Result<()> {
    if v.is_positive() && v < hi {
        Ok(())
    } else {
        Err(NumError::domain(op, "argument out of range"))
    }
}

pub fn cubic_cf(ctx: &NumericContext, q: &QNome) -> Result<CubicValue> {
    let qv = ctx.adopt(q.value());
    let q2 = qv.square();
    let (mut p1, mut p2) = (ctx.int(1), ctx.int(1));
    let start = geometric_start_depth(ctx, &qv);
    let tail = backward_continued_fraction_from(ctx, "cubic_cf", start, |_| {
        p1 = &p1 * &qv;
        p2 = &p2 * &q2;
        &p1 + &p2
    })?;
    let v = qv.cbrt() / tail;
    let (t, k) = t_and_modulus(&v);
    Ok(CubicValue { q: q.clone(), v, t, k })
}

/// `T = sqrt(1 - 8t³)` and `sqrt((1-T)/(1+T) · ((3+T)/(3-T))³)`.
fn t_and_modulus(v: &Real) -> (Real, Real) {
    let one = Real::from_i64(1, v.precision());
    let v3 = v.powi(3) * 8;
    let t = (&one - &v3).sqrt();
    // 1 - T = 8t³ / (1 + T)
    let ratio = v3 / (&t + 1).square();
    let k = (ratio * ((&t + 3) / (Real::from_i64(3, v.precision()) - &t)).powi(3)).sqrt();
    (t, k)
}

/// The modulus `k_r` carried by `t = V(e^(-π√r))`.
#[allow(non_snake_case)]
pub fn Vi_of(ctx: &NumericContext, t: &Real) -> Result<Real> {
    let t = ctx.adopt(t);
    check_open("Vi_of", &t, &ctx.ratio(1, 2))?;
    Ok(t_and_modulus(&t).1)
}

/// `x` with `x · (w3/x) = w3` and `(x, w3/x)` on the cubic modular curve.
#[allow(non_snake_case)]
pub fn G_of(ctx: &NumericContext, w3: &Real) -> Result<Real> {
    let w = ctx.adopt(w3);
    check_open("G_of", &w, &ctx.int(1))?;
    let s = w.sqrt();
    let ws = &w * &s;
    let inner = ctx.int(1) - &s * 3 + &w * 4 - &ws * 3 + w.square();
    if inner.is_negative() {
        return Err(NumError::domain("G_of", "inner radical is negative"));
    }
    let den = &s * 2 - &w * 3 + &ws * 2 - &s * inner.sqrt() * 2;
    if !den.is_positive() {
        return Err(NumError::domain("G_of", "outer radical is not positive"));
    }
    let x = &w / den.sqrt();
    check_open("G_of", &x, &ctx.int(1))?;
    check_open("G_of", &(&w / &x), &ctx.int(1))?;
    Ok(x)
}

/// `(1-x²)^(1/3) w3^(1/4) / (2^(1/3) x^(1/3) (1 - sqrt(w3)))`.
pub fn t_parametric(ctx: &NumericContext, x: &Real, w3: &Real) -> Result<Real> {
    let (x, w) = (ctx.adopt(x), ctx.adopt(w3));
    let one = ctx.int(1);
    check_open("t_parametric", &x, &one)?;
    check_open("t_parametric", &w, &one)?;
    let num = ((&one - &x) * (&one + &x)).cbrt() * w.root(4);
    let den = ctx.int(2).cbrt() * x.cbrt() * (&one - &w.sqrt());
    Ok(num / den)
}

pub fn cubic_parametric(ctx: &NumericContext, w3: &Real) -> Result<CubicParametric> {
    let x = G_of(ctx, w3)?;
    let t = t_parametric(ctx, &x, w3)?;
    Ok(CubicParametric { w3: ctx.adopt(w3), x, t })
}

/// `V(q^(1/3))` from `V = V(q)`.
pub fn step_cube_root(ctx: &NumericContext, v: &Real) -> Result<Real> {
    let v = ctx.adopt(v);
    check_open("step_cube_root", &v, &ctx.ratio(1, 2))?;
    let v2 = v.square();
    let num = &v * (ctx.int(1) - &v + &v2);
    let den = ctx.int(1) + &v * 2 + v2 * 4;
    Ok((num / den).cbrt())
}

/// `[V, V(q^(1/3)), ..., V(q^(1/3^n))]`.
pub fn cube_root_chain(ctx: &NumericContext, v: &Real, n: usize) -> Result<Vec<Real>> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(ctx.adopt(v));
    for i in 0..n {
        let next = step_cube_root(ctx, &out[i])?;
        out.push(next);
    }
    Ok(out)
}

/// `|k^(-1)(Vi(V(q))) - (log q)² / π²|`.
pub fn identity36_residual(ctx: &NumericContext, q: &QNome) -> Result<Real> {
    let v = cubic_cf(ctx, q)?;
    let r = inverse_singular_modulus(ctx, &v.k)?;
    let expected = ctx.adopt(q.value()).ln().square() / ctx.pi().square();
    Ok((r - expected).abs())
}

/// Degree-3 modular equation `sqrt(k_r k_9r) + sqrt(k'_r k'_9r) - 1`.
pub fn residual_mod3(ctx: &NumericContext, k_r: &Real, k_9r: &Real) -> Result<Real> {
    let (a, b) = (ctx.adopt(k_r), ctx.adopt(k_9r));
    let one = ctx.int(1);
    check_open("residual_mod3", &a, &one)?;
    check_open("residual_mod3", &b, &one)?;
    let ap = ((&one - &a) * (&one + &a)).sqrt();
    let bp = ((&one - &b) * (&one + &b)).sqrt();
    Ok((&a * &b).sqrt() + (ap * bp).sqrt() - one)
}

/// `√(k k') + √(k_9 k'_9) - 1`, the degree-3 relation in the form it is sometimes printed.
/// It does not vanish on singular moduli; kept to report that.
pub fn residual_mod3_printed(ctx: &NumericContext, k_r: &Real, k_9r: &Real) -> Result<Real> {
    let (a, b) = (ctx.adopt(k_r), ctx.adopt(k_9r));
    let one = ctx.int(1);
    check_open("residual_mod3", &a, &one)?;
    check_open("residual_mod3", &b, &one)?;
    let ap = ((&one - &a) * (&one + &a)).sqrt();
    let bp = ((&one - &b) * (&one + &b)).sqrt();
    Ok((&a * &ap).sqrt() + (&b * &bp).sqrt() - one)
}

/// `512x⁶ - 4608x⁵ + 51264x⁴ + 50048x³ - 6408x² - 72x - 1`, claimed to vanish at `V(e^(-π√2/9))³`.
pub fn rho3_polynomial(ctx: &NumericContext) -> Polynomial {
    Polynomial::from_i64(ctx, &[-1, -72, -6408, 50048, 51264, -4608, 512]).expect("nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::singular_modulus;

    fn ctx() -> NumericContext {
        NumericContext::with_digits(50)
    }

    fn k(c: &NumericContext, r: &Real) -> Real {
        singular_modulus(c, r).unwrap().modulus.k().clone()
    }

    fn v_root2(c: &NumericContext) -> Real {
        c.ratio(3, 2).sqrt() - 1
    }

    fn nome(c: &NumericContext, r: &Real) -> QNome {
        QNome::from_r(c, r).unwrap()
    }

    #[test]
    fn convention_pinned_at_root_two() {
        let c = ctx();
        let v = cubic_cf(&c, &nome(&c, &c.int(2))).unwrap();
        assert!((&v.v - &v_root2(&c)).abs() < c.tol());
        assert!(v.v.to_decimal(10).starts_with("0.2247448714"));
        assert!((&v.k - &(c.int(2).sqrt() - 1)).abs() < c.tol());
        assert!((&v.k - &k(&c, &c.int(2))).abs() < c.tol());
    }

    #[test]
    fn value_invariants() {
        let c = ctx();
        for r in [1, 2, 4] {
            let v = cubic_cf(&c, &nome(&c, &c.int(r))).unwrap();
            assert!((v.t.square() + v.v.powi(3) * 8 - c.int(1)).abs() < c.tol());
            let t = &v.t;
            let quartic = (c.int(1) - t) * (t + 3).powi(3) / ((t + 1) * (c.int(3) - t).powi(3));
            assert!((v.k.square() - quartic).abs() < c.tol());
            assert!(t.is_positive() && *t < c.int(1));
            assert!((&v.k - &k(&c, &c.int(r))).abs() < c.tol(), "r = {r}");
            assert!((Vi_of(&c, &v.v).unwrap() - &v.k).abs() < c.pow2(-240));
        }
    }

    #[test]
    fn small_q_limits() {
        let c = ctx();
        let q = QNome::new(c.pow2(-150)).unwrap();
        let v = cubic_cf(&c, &q).unwrap();
        assert!((&v.v / q.value().cbrt() - c.int(1)).abs() < c.pow2(-140));
        let t = c.pow2(-60);
        assert!(Vi_of(&c, &t).unwrap() < c.pow2(-80));
        let small = c.pow2(-90);
        let stepped = step_cube_root(&c, &small).unwrap();
        assert!((&stepped / small.cbrt() - c.int(1)).abs() < c.pow2(-25));
    }

    #[test]
    fn g_recovers_k_r() {
        let c = ctx();
        for r in [1, 2, 4] {
            let kr = k(&c, &c.int(r));
            let k9 = k(&c, &c.int(9 * r));
            let w3 = &kr * &k9;
            let x = G_of(&c, &w3).unwrap();
            assert!((&x - &kr).abs() < c.tol(), "r = {r}");
            assert!(residual_mod3(&c, &x, &(&w3 / &x)).unwrap().abs() < c.tol());
            let cp = cubic_parametric(&c, &w3).unwrap();
            let cf = cubic_cf(&c, &nome(&c, &c.int(r))).unwrap().v;
            assert!((&cp.t - &cf).abs() < c.tol(), "r = {r}");
        }
        let kr = k(&c, &c.int(1));
        assert!((&kr - &c.ratio(1, 2).sqrt()).abs() < c.tol());
    }

    #[test]
    fn mod3_forms() {
        let c = ctx();
        let (k1, k9) = (k(&c, &c.int(1)), k(&c, &c.int(9)));
        let (k2, k18) = (k(&c, &c.int(2)), k(&c, &c.int(18)));
        assert!(residual_mod3(&c, &k1, &k9).unwrap().abs() < c.tol());
        assert!(residual_mod3(&c, &k2, &k18).unwrap().abs() < c.tol());
        let h = c.ratio(1, 2);
        assert!(residual_mod3(&c, &h, &h).unwrap().abs() > c.ratio(1, 100));
        assert!(residual_mod3_printed(&c, &k1, &k9).unwrap().abs() > c.ratio(1, 20));
    }

    #[test]
    fn cube_root_step_commutes_with_cf() {
        let c = ctx();
        for r in [1, 2] {
            let q = nome(&c, &c.int(r));
            let v = cubic_cf(&c, &q).unwrap().v;
            let direct = cubic_cf(&c, &q.root(3).unwrap()).unwrap().v;
            assert!((step_cube_root(&c, &v).unwrap() - direct).abs() < c.tol());
        }
        let v = v_root2(&c);
        let expected = (&v / 2).cbrt();
        assert!((step_cube_root(&c, &v).unwrap() - expected).abs() < c.tol());
    }

    #[test]
    fn chain_reaches_two_over_nine_powers() {
        let c = ctx();
        let chain = cube_root_chain(&c, &v_root2(&c), 2).unwrap();
        for (n, nine) in [(1usize, 9), (2, 81)] {
            let r = inverse_singular_modulus(&c, &Vi_of(&c, &chain[n]).unwrap()).unwrap();
            assert!((r - c.ratio(2, nine)).abs() < c.tol(), "n = {n}");
        }
        let rho3 = chain[2].powi(3);
        assert!(rho3.to_decimal(25).starts_with("0.1249981694100895514"));
        assert!(rho3_polynomial(&c).eval(&rho3).abs() < c.tol());
    }

    #[test]
    fn identity_on_nomes() {
        let c = ctx();
        for r in [c.int(1), c.int(2), c.int(4), c.ratio(2, 9)] {
            let res = identity36_residual(&c, &nome(&c, &r)).unwrap();
            assert!(res < c.tol(), "r = {}", r.to_decimal(6));
        }
    }

    #[test]
    fn domains() {
        let c = ctx();
        assert!(matches!(Vi_of(&c, &c.ratio(1, 2)), Err(NumError::Domain { .. })));
        assert!(matches!(step_cube_root(&c, &c.int(0)), Err(NumError::Domain { .. })));
        assert!(matches!(G_of(&c, &c.int(1)), Err(NumError::Domain { .. })));
        let q = QNome::new(c.ratio(999, 1000)).unwrap();
        assert!(matches!(cubic_cf(&c, &q), Err(NumError::NonConvergence { .. })));
    }
}
