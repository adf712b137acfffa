//! Radical solution of the quintic modular equation and the parametric
//! evaluation of `R(q)` built on it.
//!
//! With `w = sqrt(k_r k_25r)` given, the pair `(x, y) = (k_r, k_25r)` is
//! recovered in radicals, `r` follows from the inverse singular modulus, and
//! `a_r = R^-5 - 11 - R^5` is an explicit algebraic function of `(x, w)`.

use alloc::vec::Vec;

use crate::context::NumericContext;
use crate::elliptic::{elliptic_k, inverse_singular_modulus, multiplier5, singular_modulus};
use crate::error::{NumError, Result};
use crate::numerics::{real_roots_in, Interval, Polynomial};
use crate::qseries::QNome;
use crate::real::Real;
use crate::rrcf::{a_quotient, rrcf_cf, rrcf_from_a};

/// `(x, y) = (k_r, k_25r)` recovered from `w = sqrt(x y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SexticSolution {
    pub w: Real,
    pub l: Real,
    /// Auxiliary `(18 + L) / (64 + 3L)`, not the multiplier.
    pub m: Real,
    pub x: Real,
    pub y: Real,
    /// `sqrt(k'_r k'_25r)`
    pub w_prime: Real,
    /// True when the radical formula was rejected and the root came from the sextic.
    pub from_root_search: bool,
}

/// Named residuals of one pipeline run. `a_vs_eta_quotient` is relative, the rest absolute.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineResiduals {
    pub modular_equation: Real,
    pub sextic: Real,
    pub a_vs_eta_quotient: Real,
    pub r_vs_continued_fraction: Real,
}

impl PipelineResiduals {
    pub fn named(&self) -> [(&'static str, &Real); 4] {
        [
            ("modular_equation", &self.modular_equation),
            ("sextic", &self.sextic),
            ("a_vs_eta_quotient", &self.a_vs_eta_quotient),
            ("r_vs_continued_fraction", &self.r_vs_continued_fraction),
        ]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParametricEvaluation {
    pub input_w: Real,
    pub solution: SexticSolution,
    pub r: Real,
    pub q: Real,
    pub a_r: Real,
    pub r_value: Real,
    pub r_prime: Option<Real>,
    pub residuals: PipelineResiduals,
    /// Decimal digits cancelled in `1 - x²` as `x → 1`.
    pub digits_lost: u32,
}

fn check_unit(op: &'static str, name: &str, v: &Real) -> Result<()> {
    let one = Real::from_i64(1, v.precision());
    if v.is_positive() && *v < one {
        Ok(())
    } else {
        Err(NumError::domain(op, alloc::format!("{name} must lie in (0, 1)")))
    }
}

fn complement(v: &Real) -> Real {
    let one = Real::from_i64(1, v.precision());
    ((&one - v) * (&one + v)).sqrt()
}

/// Positive root of `L² + 18(1 - w²) L - 384 w²`.
pub fn solve_l(ctx: &NumericContext, w: &Real) -> Result<Real> {
    let w = ctx.adopt(w);
    check_unit("solve_l", "w", &w)?;
    let b = (ctx.int(1) - w.square()) * 18;
    let c4 = w.square() * 1536;
    // 2c / (b + sqrt(b² + 4c)) with c = 384 w²
    Ok(&c4 / 2 / (&b + &(b.square() + &c4).sqrt()))
}

/// `sqrt(L(18 + L) / (6(64 + 3L)))`, the inverse of [`solve_l`].
pub fn w_of_l(l: &Real) -> Real {
    let den = (l * 3 + 64) * 6;
    (l * (l + 18) / den).sqrt()
}

/// The sextic `x^6 + x^3(10x^2 - 16)w + 15x^4 w^2 - 20x^3 w^3 + 15x^2 w^4 + x(10 - 16x^2)w^5 + w^6`.
pub fn residual_eq13(x: &Real, w: &Real) -> Real {
    sextic_in_x(x.precision(), w).eval(x)
}

fn sextic_in_x(p: usize, w: &Real) -> Polynomial {
    let w2 = w.square();
    let w3 = &w2 * w;
    let w4 = w2.square();
    let w5 = &w4 * w;
    let w6 = &w3 * &w3;
    let coeffs = alloc::vec![
        w6,
        w5 * 10,
        w4 * 15,
        -(w * 16 + w3 * 20 + w.powi(5) * 16),
        w2 * 15,
        w * 10,
        Real::from_i64(1, p),
    ];
    Polynomial::new(coeffs).expect("leading coefficient is one")
}

/// Sum of the magnitudes of the sextic's terms, the scale its residual is judged against.
fn sextic_scale(x: &Real, w: &Real) -> Real {
    let p = sextic_in_x(x.precision(), w);
    let ax = x.abs();
    let mut s = Real::from_i64(0, x.precision());
    let mut xn = Real::from_i64(1, x.precision());
    for c in p.coeffs() {
        s = s + c.abs() * &xn;
        xn = &xn * &ax;
    }
    s
}

/// `xy + x'y' + 2·4^(1/3)(x y x' y')^(1/3) - 1` with `x' = sqrt(1 - x²)`.
pub fn residual_eq12(ctx: &NumericContext, x: &Real, y: &Real) -> Result<Real> {
    let (x, y) = (ctx.adopt(x), ctx.adopt(y));
    check_unit("residual_eq12", "x", &x)?;
    check_unit("residual_eq12", "y", &y)?;
    let (xp, yp) = (complement(&x), complement(&y));
    let xy = &x * &y;
    let xyp = &xp * &yp;
    let cross = (&xy * &xyp * 4).cbrt() * 2;
    Ok(xy + xyp + cross - 1)
}

fn build_solution(ctx: &NumericContext, w: &Real, l: Real, m: Real, x: Real, y: Real, from_root_search: bool) -> SexticSolution {
    let w_prime = (complement(&x) * complement(&y)).sqrt();
    SexticSolution {
        w: ctx.adopt(w),
        l,
        m,
        x,
        y,
        w_prime,
        from_root_search,
    }
}

fn accept(ctx: &NumericContext, x: &Real, y: &Real, w: &Real) -> Result<bool> {
    let one = ctx.int(1);
    if !(x.is_positive() && *x < one && y.is_positive() && *y < one) {
        return Ok(false);
    }
    let sextic = residual_eq13(x, w).abs() / sextic_scale(x, w);
    let modular = residual_eq12(ctx, x, y)?.abs();
    let tol = ctx.tol();
    Ok(sextic < tol && modular < tol)
}

/// Recovers `(k_r, k_25r)` from `w` in radicals, falling back to a root search
/// on the sextic over `(w, 1)` if the radical branch fails its residual checks.
pub fn prop1_xy(ctx: &NumericContext, w: &Real) -> Result<SexticSolution> {
    let w = ctx.adopt(w);
    let l = solve_l(ctx, &w)?;
    let m = (&l + 18) / (&l * 3 + 64);
    let u = (&l / &m).root(6);
    let t = &u - &(ctx.int(4) / &u);
    let two_thirds = ctx.ratio(2, 3);
    let big = (&two_thirds * t.square() + 4).sqrt();
    let lin = two_thirds.sqrt() * &t;
    // s = (big + lin)/2, rationalised when lin < 0
    let s = if lin.is_negative() {
        ctx.int(2) / (&big - &lin)
    } else {
        (&big + &lin) / 2
    };
    if s.is_positive() && s < ctx.int(1) {
        let s2 = s.square();
        let x = &w / &s2;
        let y = &w * &s2;
        if accept(ctx, &x, &y, &w)? {
            return Ok(build_solution(ctx, &w, l, m, x, y, false));
        }
    }
    let (x, y) = sextic_root_search(ctx, &w)?;
    Ok(build_solution(ctx, &w, l, m, x, y, true))
}

fn sextic_root_search(ctx: &NumericContext, w: &Real) -> Result<(Real, Real)> {
    let p = sextic_in_x(ctx.precision_bits(), w);
    let range = Interval::new(w.clone(), ctx.int(1))?;
    let roots = real_roots_in(ctx, &p, &range).unwrap_or_default();
    let mut best: Option<(Real, Real, Real)> = None;
    for root in roots {
        let x = root.value;
        let y = w.square() / &x;
        let Ok(res) = residual_eq12(ctx, &x, &y) else {
            continue;
        };
        let res = res.abs();
        if best.as_ref().is_none_or(|(_, _, b)| res < *b) {
            best = Some((x, y, res));
        }
    }
    match best {
        Some((x, y, _)) if accept(ctx, &x, &y, w)? => Ok((x, y)),
        Some((x, y, _)) => Err(NumError::ResidualTooLarge {
            check: "sextic root search",
            residual: residual_eq12(ctx, &x, &y)?.abs().to_decimal(6),
        }),
        None => Err(NumError::ResidualTooLarge {
            check: "sextic root search",
            residual: "no admissible root in (w, 1)".into(),
        }),
    }
}

/// `m = w/x + w'/x' - w w'/(x x')`, with `1/m = M5(r)` when `x = k_r`.
fn inverse_multiplier(x: &Real, w: &Real) -> Result<(Real, Real)> {
    let y = w.square() / x;
    let one = Real::from_i64(1, x.precision());
    if !(y.is_positive() && y < one) {
        return Err(NumError::domain("multiplier_from_w", "w²/x must lie in (0, 1)"));
    }
    let xp = complement(x);
    let wp = (&xp * &complement(&y)).sqrt();
    let m = w / x + &wp / &xp - w * &wp / (x * &xp);
    Ok((m, wp))
}

/// Degree-5 multiplier `M5(r)` from `(k_r, w)` alone.
pub fn multiplier_from_w(ctx: &NumericContext, x: &Real, w: &Real) -> Result<Real> {
    let (x, w) = (ctx.adopt(x), ctx.adopt(w));
    check_unit("multiplier_from_w", "x", &x)?;
    check_unit("multiplier_from_w", "w", &w)?;
    Ok(inverse_multiplier(&x, &w)?.0.recip())
}

/// Which `-20 x^i w^j` term the denominator of `a_r M5³` carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DenominatorVariant {
    /// `-20 x w³`, the form used by [`a_parametric`].
    XW3,
    /// `-20 x³ w`
    X3W,
    /// `-20 x³ w³`
    X3W3,
}

impl DenominatorVariant {
    pub const ALL: [DenominatorVariant; 3] = [Self::XW3, Self::X3W, Self::X3W3];

    pub fn label(self) -> &'static str {
        match self {
            Self::XW3 => "-20xw^3",
            Self::X3W => "-20x^3w",
            Self::X3W3 => "-20x^3w^3",
        }
    }
}

/// `a_r` as an algebraic function of `(x, w)`.
pub fn a_parametric(ctx: &NumericContext, x: &Real, w: &Real) -> Result<Real> {
    a_parametric_variant(ctx, x, w, DenominatorVariant::XW3)
}

pub fn a_parametric_variant(ctx: &NumericContext, x: &Real, w: &Real, variant: DenominatorVariant) -> Result<Real> {
    let (x, w) = (ctx.adopt(x), ctx.adopt(w));
    check_unit("a_parametric", "x", &x)?;
    check_unit("a_parametric", "w", &w)?;
    let (x2, x3) = (x.square(), x.powi(3));
    let (w2, w3) = (w.square(), w.powi(3));
    let num = x.powi(6) * 16 - x2.square() * 26 - &w * &x3 + &x2 * 10 + &w * &x;
    let twenty = match variant {
        DenominatorVariant::XW3 => &x * &w3,
        DenominatorVariant::X3W => &x3 * &w,
        DenominatorVariant::X3W3 => &x3 * &w3,
    } * 20;
    let den = x2.square() - &x3 * &w * 6 - twenty + &w2 * &x2 * 15 - &x * &w * 6 + w2.square() * 15 + &w2;
    if den.is_zero() {
        return Err(NumError::DivisionByZero { op: "a_parametric" });
    }
    let (m, _) = inverse_multiplier(&x, &w)?;
    (num / den * m.powi(3)).finite("a_parametric")
}

/// Per-variant relative distance `|a_variant - a_r| / a_r` at `r`, with `a_r` from the moduli.
#[derive(Debug, Clone, PartialEq)]
pub struct VariantReport {
    pub r: Real,
    pub reference: Real,
    pub rows: Vec<(DenominatorVariant, Real)>,
}

impl VariantReport {
    pub fn satisfied(&self, tol: &Real) -> Vec<DenominatorVariant> {
        self.rows.iter().filter(|(_, d)| d < tol).map(|(v, _)| *v).collect()
    }
}

pub fn denominator_variant_report(ctx: &NumericContext, r: &Real) -> Result<VariantReport> {
    let (x, w) = moduli_pair(ctx, r)?;
    let reference = a_from_moduli(ctx, r)?;
    let mut rows = Vec::new();
    for v in DenominatorVariant::ALL {
        let a = a_parametric_variant(ctx, &x, &w, v)?;
        rows.push((v, ((a - &reference) / &reference).abs()));
    }
    Ok(VariantReport {
        r: ctx.adopt(r),
        reference,
        rows,
    })
}

/// `(k_r, sqrt(k_r k_25r))` from the elliptic module.
pub fn moduli_pair(ctx: &NumericContext, r: &Real) -> Result<(Real, Real)> {
    let x = singular_modulus(ctx, r)?.modulus.k().clone();
    let y = singular_modulus(ctx, &(ctx.adopt(r) * 25))?.modulus.k().clone();
    let w = (&x * &y).sqrt();
    Ok((x, w))
}

/// `a_r = (k'_r / k'_25r)² sqrt(k_r / k_25r) / M5(r)³`.
pub fn a_from_moduli(ctx: &NumericContext, r: &Real) -> Result<Real> {
    let base = singular_modulus(ctx, r)?;
    let scaled = singular_modulus(ctx, &(ctx.adopt(r) * 25))?;
    let m5 = multiplier5(ctx, r)?.value;
    let (b, s) = (&base.modulus, &scaled.modulus);
    let a = (b.k_prime() / s.k_prime()).square() * (b.k() / s.k()).sqrt() / m5.powi(3);
    a.finite("a_from_moduli")
}

/// `w⁵ - k_r² w - k_r³(k_r² - 1) / (a_r M5(r)³)`.
pub fn residual_eq21(ctx: &NumericContext, r: &Real) -> Result<Real> {
    let (x, w) = moduli_pair(ctx, r)?;
    let a = a_from_moduli(ctx, r)?;
    let m5 = multiplier5(ctx, r)?.value;
    let x2 = x.square();
    Ok(w.powi(5) - &x2 * &w - x.powi(3) * (x2 - 1) / (a * m5.powi(3)))
}

/// The full pipeline `w → (x, y) → r → a_r → R(e^(-π√r))`, cross-checked against the
/// continued fraction and the eta quotient at the recovered nome.
pub fn evaluate_parametric(ctx: &NumericContext, w: &Real) -> Result<ParametricEvaluation> {
    let solution = prop1_xy(ctx, w)?;
    let (x, w) = (&solution.x, &solution.w);
    let r = inverse_singular_modulus(ctx, x)?;
    let q = QNome::from_r(ctx, &r)?;
    let a_r = a_parametric(ctx, x, w)?;
    let r_value = rrcf_from_a(ctx, &a_r)?;
    let r_cf = rrcf_cf(ctx, &q)?.value;
    let a_eta = a_quotient(ctx, &q)?.a;
    let residuals = PipelineResiduals {
        modular_equation: residual_eq12(ctx, x, &solution.y)?.abs(),
        sextic: residual_eq13(x, w).abs(),
        a_vs_eta_quotient: ((&a_r - &a_eta) / &a_eta).abs(),
        r_vs_continued_fraction: (&r_value - &r_cf).abs(),
    };
    let tol = ctx.tol();
    for (name, v) in residuals.named() {
        if *v > tol {
            return Err(NumError::ResidualTooLarge {
                check: name,
                residual: v.to_decimal(6),
            });
        }
    }
    let gap = ctx.int(1) - x;
    let digits_lost = (-(gap.ln() / ctx.int(10).ln()).to_f64()).max(0.0) as u32;
    Ok(ParametricEvaluation {
        digits_lost,
        input_w: w.clone(),
        solution,
        r,
        q: q.into_inner(),
        a_r,
        r_value,
        r_prime: None,
        residuals,
    })
}

/// `dR/dq` at the pipeline's nome, from `(x, w)`, `R` and `K(x)`.
pub fn derivative_parametric(ctx: &NumericContext, eval: &ParametricEvaluation) -> Result<Real> {
    let s = &eval.solution;
    let (x, w) = (&s.x, &s.w);
    let (m, wp) = inverse_multiplier(x, w)?;
    let kx = elliptic_k(ctx, x)?;
    let pi = ctx.pi();
    let front = ctx.int(2).pow_ratio(4, 3) * x.sqrt() * (ctx.int(1) - x.square())
        / (w.root(6) * wp.pow_ratio(2, 3) * 5);
    let d = front * m.sqrt() * &eval.r_value * kx.square() / (&eval.q * pi.square());
    d.finite("derivative_parametric")
}

impl ParametricEvaluation {
    /// Fills in `r_prime`.
    pub fn with_derivative(mut self, ctx: &NumericContext) -> Result<Self> {
        self.r_prime = Some(derivative_parametric(ctx, &self)?);
        Ok(self)
    }
}
