//! Generic kernels: AGM, bracketed root finding, Newton polish, real-root
//! isolation for low-degree polynomials, and backward evaluation of
//! continued fractions `1 + a1/(1 + a2/(1 + ...))`.

use alloc::vec::Vec;

use crate::context::NumericContext;
use crate::error::{NumError, Result};
use crate::real::Real;

/// Closed interval with `lo < hi`.
#[derive(Debug, Clone, PartialEq)]
pub struct Interval {
    lo: Real,
    hi: Real,
}

impl Interval {
    pub fn new(lo: Real, hi: Real) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(NumError::domain("interval", "requires finite lo < hi"));
        }
        Ok(Interval { lo, hi })
    }

    pub fn lo(&self) -> &Real {
        &self.lo
    }

    pub fn hi(&self) -> &Real {
        &self.hi
    }

    pub fn width(&self) -> Real {
        &self.hi - &self.lo
    }
}

/// Arithmetic-geometric mean of two positive numbers.
pub fn agm(ctx: &NumericContext, a: &Real, b: &Real) -> Result<Real> {
    if !a.is_positive() || !b.is_positive() {
        return Err(NumError::domain("agm", "arguments must be positive"));
    }
    let mut a = ctx.adopt(a);
    let mut b = ctx.adopt(b);
    let coarse = ctx.pow2(-(ctx.precision_bits() as i32) / 2);
    for _ in 0..ctx.max_iter() {
        let close = (&a - &b).abs() < &coarse * &a;
        let next_a = (&a + &b) / 2;
        b = (&a * &b).sqrt();
        a = next_a;
        // Quadratic convergence: one step past 2^(-p/2) lands below 2^(-p).
        if close {
            return Ok((&a + &b) / 2);
        }
    }
    Err(NumError::NonConvergence {
        op: "agm",
        iterations: ctx.max_iter(),
    })
}

fn same_sign(a: &Real, b: &Real) -> bool {
    a.is_positive() == b.is_positive()
}

/// Bisection down to an absolute bracket width of `width`.
fn bisect_to<F>(ctx: &NumericContext, f: &F, lo: &Real, hi: &Real, width: &Real) -> Result<Real>
where
    F: Fn(&Real) -> Result<Real>,
{
    let mut lo = ctx.adopt(lo);
    let mut hi = ctx.adopt(hi);
    let mut flo = f(&lo)?;
    let fhi = f(&hi)?;
    if flo.is_zero() {
        return Ok(lo);
    }
    if fhi.is_zero() {
        return Ok(hi);
    }
    if same_sign(&flo, &fhi) {
        return Err(NumError::NoSignChange { op: "bisect_root" });
    }
    for _ in 0..ctx.max_iter() {
        let mid = (&lo + &hi) / 2;
        if &(&hi - &lo) < width {
            return Ok(mid);
        }
        let fm = f(&mid)?;
        if fm.is_zero() {
            return Ok(mid);
        }
        if same_sign(&fm, &flo) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Err(NumError::NonConvergence {
        op: "bisect_root",
        iterations: ctx.max_iter(),
    })
}

/// Root of a continuous `f` inside a sign-changing bracket.
///
/// Stops once the bracket is narrower than `2^(-precision_bits + guard_bits)`.
pub fn bisect_root<F>(ctx: &NumericContext, f: F, bracket: &Interval) -> Result<Real>
where
    F: Fn(&Real) -> Result<Real>,
{
    let width = ctx.pow2(-((ctx.precision_bits() - ctx.guard_bits()) as i32));
    bisect_to(ctx, &f, &bracket.lo, &bracket.hi, &width)
}

/// Newton iteration from a seed already inside the basin of a simple root.
pub fn newton_refine<F, D>(ctx: &NumericContext, f: F, f_prime: D, x0: &Real) -> Result<Real>
where
    F: Fn(&Real) -> Result<Real>,
    D: Fn(&Real) -> Result<Real>,
{
    let mut x = ctx.adopt(x0);
    let step_tol = ctx.pow2(-((ctx.precision_bits() - ctx.guard_bits()) as i32));
    let one = ctx.int(1);
    for _ in 0..ctx.max_iter() {
        let fx = f(&x)?;
        if fx.is_zero() {
            return Ok(x);
        }
        let dfx = f_prime(&x)?;
        if dfx.is_zero() || dfx.abs() < ctx.eps() * fx.abs().min(&one) {
            return Err(NumError::DerivativeVanished { op: "newton_refine" });
        }
        let step = &fx / &dfx;
        x = (&x - &step).finite("newton_refine")?;
        if step.abs() < &step_tol * &x.abs().max(&one) {
            return Ok(x);
        }
    }
    Err(NumError::NonConvergence {
        op: "newton_refine",
        iterations: ctx.max_iter(),
    })
}

/// Dense univariate polynomial, constant term first.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Real>,
}

impl Polynomial {
    /// Trailing zero coefficients are dropped; the zero polynomial is rejected.
    pub fn new(mut coeffs: Vec<Real>) -> Result<Self> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(NumError::domain("polynomial", "zero polynomial"));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(NumError::NonFinite { op: "polynomial" });
        }
        Ok(Polynomial { coeffs })
    }

    pub fn from_i64(ctx: &NumericContext, coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| ctx.int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Real] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: &Real) -> Real {
        let mut it = self.coeffs.iter().rev();
        let mut acc = it.next().cloned().expect("non-empty coefficients");
        for c in it {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Formal derivative; the derivative of a constant is the constant 0.
    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() == 1 {
            let zero = Real::from_i64(0, self.coeffs[0].precision());
            return Polynomial { coeffs: alloc::vec![zero] };
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * i as i64)
            .collect();
        Polynomial { coeffs }
    }

    pub fn max_abs_coeff(&self) -> Real {
        let mut m = self.coeffs[0].abs();
        for c in &self.coeffs[1..] {
            m = m.max(&c.abs());
        }
        m
    }

    fn is_zero_poly(&self) -> bool {
        self.coeffs.iter().all(Real::is_zero)
    }
}

/// A real root and the number of coincident roots merged into it.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyRoot {
    pub value: Real,
    pub multiplicity: u32,
}

pub const MAX_ROOT_DEGREE: usize = 8;

/// Sign-change bracket refined by bisection, then polished with Newton.
fn isolate_in_cell(ctx: &NumericContext, p: &Polynomial, dp: &Polynomial, a: &Real, b: &Real) -> Result<Real> {
    let f = |x: &Real| Ok(p.eval(x));
    let coarse = (b - a) * ctx.pow2(-40);
    let seed = bisect_to(ctx, &f, a, b, &coarse)?;
    match newton_refine(ctx, f, |x: &Real| Ok(dp.eval(x)), &seed) {
        Ok(x) if &x >= a && &x <= b => Ok(x),
        // Newton left the cell or stalled: fall back to full bisection.
        _ => bisect_to(ctx, &f, a, b, &((b - a) * ctx.eps())),
    }
}

fn multiplicity_at(ctx: &NumericContext, p: &Polynomial, x: &Real) -> u32 {
    let thresh = p.max_abs_coeff() * ctx.pow2(-(ctx.precision_bits() as i32) / 3);
    let mut m = 1u32;
    let mut d = p.derivative();
    while (m as usize) < p.degree() && !d.is_zero_poly() && d.eval(x).abs() <= &thresh * (m as i64 + 1) {
        m += 1;
        d = d.derivative();
    }
    m
}

/// All real roots of `p` in the closed `range`, ascending, with multiplicities.
///
/// The range is scanned on a uniform grid of `ctx.scan_cells()` cells. Sign
/// changes of `p` are bracketed; sign changes of `p'` without one of `p` are
/// inspected for touching (even-multiplicity) roots. Roots closer than
/// `2^(-precision_bits/3)` are merged.
pub fn real_roots_in(ctx: &NumericContext, p: &Polynomial, range: &Interval) -> Result<Vec<PolyRoot>> {
    if p.degree() > MAX_ROOT_DEGREE {
        return Err(NumError::DegreeTooHigh(p.degree()));
    }
    if p.degree() == 0 {
        return Ok(Vec::new());
    }
    let dp = p.derivative();
    let ddp = dp.derivative();
    let n = ctx.scan_cells();
    let lo = ctx.adopt(&range.lo);
    let step = range.width() / n as i64;
    let xs: Vec<Real> = (0..=n).map(|i| &lo + &(&step * i as i64)).collect();
    let vs: Vec<Real> = xs.iter().map(|x| p.eval(x)).collect();
    let ds: Vec<Real> = xs.iter().map(|x| dp.eval(x)).collect();
    let touch = p.max_abs_coeff() * ctx.pow2(-(ctx.precision_bits() as i32) / 2);

    let mut found: Vec<Real> = Vec::new();
    for i in 0..n {
        let (a, b) = (&xs[i], &xs[i + 1]);
        if vs[i].is_zero() {
            found.push(a.clone());
            continue;
        }
        if vs[i + 1].is_zero() {
            continue;
        }
        if !same_sign(&vs[i], &vs[i + 1]) {
            found.push(isolate_in_cell(ctx, p, &dp, a, b)?);
        } else if !ds[i].is_zero() && !ds[i + 1].is_zero() && !same_sign(&ds[i], &ds[i + 1]) {
            let c = isolate_in_cell(ctx, &dp, &ddp, a, b)?;
            if p.eval(&c).abs() <= touch {
                found.push(c);
            }
        }
    }
    if vs[n].is_zero() {
        found.push(xs[n].clone());
    }

    found.sort_by(|a, b| a.partial_cmp(b).unwrap_or(core::cmp::Ordering::Equal));
    let merge = ctx.pow2(-(ctx.precision_bits() as i32) / 3);
    let one = ctx.int(1);
    let mut roots: Vec<PolyRoot> = Vec::new();
    for x in found {
        if let Some(last) = roots.last() {
            if (&x - &last.value).abs() < &merge * &x.abs().max(&one) {
                continue;
            }
        }
        let multiplicity = multiplicity_at(ctx, p, &x);
        roots.push(PolyRoot { value: x, multiplicity });
    }
    Ok(roots)
}

/// Evaluates `1 + a(1)/(1 + a(2)/(1 + a(3)/(1 + ...)))` by backward recurrence.
///
/// The tail is seeded with 1. Depth starts at 8 and doubles until deepening by
/// another 8 levels moves the value by less than `2^(-precision_bits)` relative;
/// the depth is capped at `ctx.max_iter()`.
pub fn backward_continued_fraction<F>(ctx: &NumericContext, op: &'static str, numerator: F) -> Result<Real>
where
    F: FnMut(usize) -> Real,
{
    backward_continued_fraction_from(ctx, op, 8, numerator)
}

/// As [`backward_continued_fraction`], with the first trial depth given.
/// Fails with `NonConvergence` when `start + 8` already exceeds `max_iter`.
pub fn backward_continued_fraction_from<F>(
    ctx: &NumericContext,
    op: &'static str,
    start: usize,
    mut numerator: F,
) -> Result<Real>
where
    F: FnMut(usize) -> Real,
{
    let mut cache: Vec<Real> = Vec::new();
    let mut eval = |depth: usize, cache: &mut Vec<Real>| -> Real {
        while cache.len() < depth {
            let n = cache.len() + 1;
            cache.push(numerator(n));
        }
        let mut t = ctx.int(1);
        for a in cache[..depth].iter().rev() {
            t = &(a / &t) + 1;
        }
        t
    };
    let eps = ctx.eps();
    let mut depth = start.max(1);
    while depth + 8 <= ctx.max_iter() {
        let shallow = eval(depth, &mut cache);
        let deep = eval(depth + 8, &mut cache).finite(op)?;
        if (&deep - &shallow).abs() < &eps * &deep.abs() {
            return Ok(deep);
        }
        depth *= 2;
    }
    Err(NumError::NonConvergence {
        op,
        iterations: ctx.max_iter(),
    })
}
