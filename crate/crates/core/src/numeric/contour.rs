use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_rational::BigRational;
use num_traits::Signed;

use super::{bits_for_digits, check_digits, BigComplex, BigFloat, KernelSpec, NumericError};

/// Nodes per Gauss–Legendre panel.
pub const GL_ORDER: usize = 20;
const MAX_DEPTH: u32 = 40;

/// Gauss–Legendre nodes and weights mapped to `[0, 1]`.
#[derive(Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<BigFloat>,
    pub weights: Vec<BigFloat>,
}

type RuleCache = Mutex<HashMap<(usize, u32), Arc<GaussLegendre>>>;
static RULES: std::sync::OnceLock<RuleCache> = std::sync::OnceLock::new();

/// `(P_n(x), P_{n-1}(x))` by the three-term recurrence.
fn legendre(n: usize, x: &BigFloat) -> (BigFloat, BigFloat) {
    let prec = x.prec();
    let mut p0 = BigFloat::one(prec);
    let mut p1 = x.clone();
    for k in 1..n {
        let k = k as i64;
        let p2 = (&(x * &p1).mul_int(2 * k + 1) - &p0.mul_int(k)).div_int(k + 1);
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

/// `n`-point rule at `prec` bits, by Newton iteration from Chebyshev-like seeds.
pub fn gauss_legendre(n: usize, prec: u32) -> Arc<GaussLegendre> {
    let cache = RULES.get_or_init(Default::default);
    if let Some(rule) = cache
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .get(&(n, prec))
    {
        return rule.clone();
    }
    let work = prec + 32;
    let one = BigFloat::one(work);
    let stop = BigFloat::one(work).mul_pow2(-(prec as i64) - 8);
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 1..=n {
        let seed = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        let mut x = BigFloat::from_f64(seed, work);
        for _ in 0..64 {
            let (p, q) = legendre(n, &x);
            // P_n' = n (x P_n - P_{n-1}) / (x² - 1)
            let deriv = (&(&x * &p) - &q).mul_int(n as i64) / (&(&x * &x) - &one);
            let dx = &p / &deriv;
            x = &x - &dx;
            if dx.abs() < stop {
                break;
            }
        }
        let (p, q) = legendre(n, &x);
        let deriv = (&(&x * &p) - &q).mul_int(n as i64) / (&(&x * &x) - &one);
        let w = BigFloat::from_int(2, work) / (&(&one - &(&x * &x)) * &(&deriv * &deriv));
        nodes.push(((&one + &x).mul_pow2(-1)).with_prec(prec));
        weights.push(w.mul_pow2(-1).with_prec(prec));
    }
    let rule = Arc::new(GaussLegendre { nodes, weights });
    cache
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .insert((n, prec), rule.clone());
    rule
}

/// Integral of `f` and of `|f|` over one straight segment.
#[derive(Debug, Clone)]
pub struct SegmentIntegral {
    pub value: BigComplex,
    pub magnitude: BigFloat,
    pub evaluations: usize,
}

struct Panel {
    t0: BigFloat,
    t1: BigFloat,
    depth: u32,
    estimate: (BigComplex, BigFloat),
}

/// Adaptive Gauss–Legendre quadrature of `∫ f(z) dz` along `z0 → z1`.
///
/// A panel is accepted once its single-panel estimate agrees with the sum of
/// its two halves to `tol` times its share of the segment.
pub fn integrate_segment<F>(
    f: &F,
    z0: &BigComplex,
    z1: &BigComplex,
    initial_panels: usize,
    tol: &BigFloat,
) -> Result<SegmentIntegral, NumericError>
where
    F: Fn(&BigComplex) -> Result<BigComplex, NumericError>,
{
    let prec = z0.prec();
    let rule = gauss_legendre(GL_ORDER, prec);
    let dz = z1 - z0;
    let dz_abs = dz.abs();
    let mut evaluations = 0usize;
    let mut panel =
        |t0: &BigFloat, t1: &BigFloat| -> Result<(BigComplex, BigFloat), NumericError> {
            let h = t1 - t0;
            let mut acc = BigComplex::zero(prec);
            let mut mag = BigFloat::zero(prec);
            for (x, w) in rule.nodes.iter().zip(&rule.weights) {
                let t = t0 + &(&h * x);
                let v = f(&(z0 + &dz.scale(&t)))?;
                evaluations += 1;
                mag = &mag + &(&v.abs() * w);
                acc = &acc + &v.scale(w);
            }
            Ok((&acc.scale(&h) * &dz, &(&mag * &h) * &dz_abs))
        };

    let mut stack = Vec::new();
    for i in (0..initial_panels).rev() {
        let t0 = BigFloat::from_int(i as i64, prec).div_int(initial_panels as i64);
        let t1 = BigFloat::from_int(i as i64 + 1, prec).div_int(initial_panels as i64);
        let estimate = panel(&t0, &t1)?;
        stack.push(Panel {
            t0,
            t1,
            depth: 0,
            estimate,
        });
    }
    let mut value = BigComplex::zero(prec);
    let mut magnitude = BigFloat::zero(prec);
    while let Some(p) = stack.pop() {
        let mid = (&p.t0 + &p.t1).mul_pow2(-1);
        let left = panel(&p.t0, &mid)?;
        let right = panel(&mid, &p.t1)?;
        let refined = &left.0 + &right.0;
        let share = &p.t1 - &p.t0;
        if (&refined - &p.estimate.0).abs() <= tol * &share {
            value = &value + &refined;
            magnitude = &magnitude + &(&left.1 + &right.1);
            continue;
        }
        if p.depth >= MAX_DEPTH {
            return Err(NumericError::NoConvergence(
                "adaptive quadrature depth exceeded".into(),
            ));
        }
        stack.push(Panel {
            t0: mid.clone(),
            t1: p.t1,
            depth: p.depth + 1,
            estimate: right,
        });
        stack.push(Panel {
            t0: p.t0,
            t1: mid,
            depth: p.depth + 1,
            estimate: left,
        });
    }
    Ok(SegmentIntegral {
        value,
        magnitude,
        evaluations,
    })
}

/// Per-side contributions of the rectangle contour.
#[derive(Debug, Clone)]
pub struct ContourResult {
    pub value: BigComplex,
    pub bottom: BigComplex,
    pub right: BigComplex,
    pub top: BigComplex,
    pub left: BigComplex,
    /// `∫|f(z)||dz|` over the two horizontal sides.
    pub horizontal_magnitude: BigFloat,
    pub evaluations: usize,
}

/// Positively oriented rectangle with vertical sides at `Re z = -1/4` and
/// `Re z = n - 1/4` and horizontal sides at `Im z = ±height`.
pub fn rectangle_contour_breakdown(
    spec: &KernelSpec,
    height: &BigRational,
    digits: u32,
) -> Result<ContourResult, NumericError> {
    check_digits(digits)?;
    if !height.is_positive() {
        return Err(NumericError::InvalidArgument(format!(
            "height must be positive, got {height}"
        )));
    }
    let prec = bits_for_digits(digits);
    let tol = BigFloat::ten_pow_neg(digits - 10, prec);
    let tiny = BigFloat::ten_pow_neg(digits, prec);
    let f = |z: &BigComplex| spec.eval(z, &tiny);

    let x0 = BigFloat::from_rational(&BigRational::new((-1).into(), 4.into()), prec);
    let x1 = &x0 + &BigFloat::from_int(spec.n as i64, prec);
    let y = BigFloat::from_rational(height, prec);
    let corner = |x: &BigFloat, y: &BigFloat| BigComplex::new(x.clone(), y.clone());
    let (bl, br) = (corner(&x0, &-&y), corner(&x1, &-&y));
    let (tr, tl) = (corner(&x1, &y), corner(&x0, &y));

    // Vertical sides pass within 1/4 of poles, so start from unit-length panels.
    let vertical_panels = (2 * height.ceil().to_integer().try_into().unwrap_or(1usize)).max(2);
    let horizontal_panels = (spec.n as usize).max(2);
    let bottom = integrate_segment(&f, &bl, &br, horizontal_panels, &tol)?;
    let right = integrate_segment(&f, &br, &tr, vertical_panels, &tol)?;
    let top = integrate_segment(&f, &tr, &tl, horizontal_panels, &tol)?;
    let left = integrate_segment(&f, &tl, &bl, vertical_panels, &tol)?;
    let value = &(&(&bottom.value + &right.value) + &top.value) + &left.value;
    Ok(ContourResult {
        value,
        horizontal_magnitude: &bottom.magnitude + &top.magnitude,
        evaluations: bottom.evaluations + right.evaluations + top.evaluations + left.evaluations,
        bottom: bottom.value,
        right: right.value,
        top: top.value,
        left: left.value,
    })
}

/// `∮ f(z) dz` over the rectangle of [`rectangle_contour_breakdown`].
pub fn rectangle_contour_integral(
    spec: &KernelSpec,
    height: &BigRational,
    digits: u32,
) -> Result<BigComplex, NumericError> {
    Ok(rectangle_contour_breakdown(spec, height, digits)?.value)
}
