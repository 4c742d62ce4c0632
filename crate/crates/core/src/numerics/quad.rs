//! Adaptive Gauss-Kronrod quadrature.
//!
//! The kernel is a 7/15-point Gauss-Kronrod pair with QUADPACK-style error
//! rescaling and global bisection of the interval with the largest error.
//! Subdivision order is fully deterministic; when `parallel` is set only the
//! integrand evaluations of a bisection step are farmed out to rayon.

use rayon::prelude::*;

use crate::error::{CasimirError, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Absolute floor below which error estimates are treated as converged.
pub const UNDERFLOW_ATOL: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

impl QuadratureResult {
    fn zero() -> Self {
        QuadratureResult {
            value: 0.0,
            abs_error_estimate: 0.0,
            evaluations: 0,
        }
    }

    /// Sum of two results over adjacent ranges.
    pub fn combine(self, other: QuadratureResult) -> QuadratureResult {
        QuadratureResult {
            value: self.value + other.value,
            abs_error_estimate: self.abs_error_estimate + other.abs_error_estimate,
            evaluations: self.evaluations + other.evaluations,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_intervals: usize,
    pub parallel: bool,
}

impl QuadOptions {
    pub fn new(rel_tol: f64) -> Self {
        QuadOptions {
            rel_tol,
            abs_tol: UNDERFLOW_ATOL,
            max_intervals: 4000,
            parallel: false,
        }
    }

    pub fn abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol.max(UNDERFLOW_ATOL);
        self
    }

    pub fn max_intervals(mut self, n: usize) -> Self {
        self.max_intervals = n;
        self
    }

    pub fn parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }

    fn target(&self, value: f64) -> f64 {
        (self.rel_tol * value.abs()).max(self.abs_tol)
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    splittable: bool,
}

fn nodes(a: f64, b: f64) -> [f64; 15] {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut x = [0.0; 15];
    for j in 0..7 {
        x[2 * j] = centre - half * XGK[j];
        x[2 * j + 1] = centre + half * XGK[j];
    }
    x[14] = centre;
    x
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

fn apply_rule(a: f64, b: f64, fx: &[f64]) -> Result<Panel> {
    let half = 0.5 * (b - a);
    let fc = fx[14];
    let mut res_k = fc * WGK[7];
    let mut res_g = fc * WG[3];
    let mut res_abs = (fc * WGK[7]).abs();
    for j in 0..7 {
        let (f1, f2) = (fx[2 * j], fx[2 * j + 1]);
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fx[2 * j] - mean).abs() + (fx[2 * j + 1] - mean).abs());
    }
    let value = res_k * half;
    let error = rescale_error((res_k - res_g) * half, res_abs * half.abs(), res_asc * half.abs());
    if !value.is_finite() || !error.is_finite() {
        return Err(CasimirError::Quadrature {
            lo: a,
            hi: b,
            estimate: f64::INFINITY,
        });
    }
    let centre = 0.5 * (a + b);
    let splittable = half.abs() > 64.0 * f64::EPSILON * centre.abs().max(f64::MIN_POSITIVE);
    Ok(Panel {
        a,
        b,
        value,
        error,
        splittable,
    })
}

fn eval_panels<F>(f: &F, ranges: &[(f64, f64)], parallel: bool) -> Result<Vec<Panel>>
where
    F: Fn(f64) -> f64 + Sync,
{
    let xs: Vec<f64> = ranges.iter().flat_map(|&(a, b)| nodes(a, b)).collect();
    let fx: Vec<f64> = if parallel {
        xs.par_iter().map(|&x| f(x)).collect()
    } else {
        xs.iter().map(|&x| f(x)).collect()
    };
    ranges
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| apply_rule(a, b, &fx[15 * i..15 * (i + 1)]))
        .collect()
}

/// Integrates `f` over `[a, b]` to relative tolerance `rel_tol`.
pub fn adaptive_quad<F>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64 + Sync,
{
    adaptive_quad_with(&f, a, b, &[], &QuadOptions::new(rel_tol))
}

/// Integrates `f` over `[a, b]`, seeding the subdivision with `breaks`.
///
/// Stops when the summed error estimate is below
/// `max(rel_tol * |I|, abs_tol)`.
pub fn adaptive_quad_with<F>(
    f: &F,
    a: f64,
    b: f64,
    breaks: &[f64],
    opts: &QuadOptions,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64 + Sync,
{
    if !(a < b) {
        if a == b {
            return Ok(QuadratureResult::zero());
        }
        return Err(CasimirError::InvalidParameter(format!(
            "quadrature bounds must satisfy a < b (got {a:e}, {b:e})"
        )));
    }
    let mut cuts: Vec<f64> = breaks.iter().copied().filter(|&x| x > a && x < b).collect();
    cuts.sort_by(|x, y| x.total_cmp(y));
    cuts.dedup();
    let mut edges = Vec::with_capacity(cuts.len() + 2);
    edges.push(a);
    edges.extend(cuts);
    edges.push(b);
    let ranges: Vec<(f64, f64)> = edges.windows(2).map(|w| (w[0], w[1])).collect();

    let mut panels = eval_panels(f, &ranges, opts.parallel)?;
    let mut evaluations = 15 * ranges.len();

    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        if error <= opts.target(value) {
            return Ok(QuadratureResult {
                value,
                abs_error_estimate: error,
                evaluations,
            });
        }
        let worst = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| p.splittable)
            .max_by(|(i, p), (j, q)| p.error.total_cmp(&q.error).then(j.cmp(i)))
            .map(|(i, _)| i);
        let Some(idx) = worst else {
            let p = panels
                .iter()
                .max_by(|p, q| p.error.total_cmp(&q.error))
                .copied()
                .unwrap_or(Panel {
                    a,
                    b,
                    value,
                    error,
                    splittable: false,
                });
            return Err(CasimirError::Quadrature {
                lo: p.a,
                hi: p.b,
                estimate: error,
            });
        };
        if panels.len() >= opts.max_intervals {
            let p = panels[idx];
            return Err(CasimirError::Quadrature {
                lo: p.a,
                hi: p.b,
                estimate: error,
            });
        }
        let p = panels[idx];
        let mid = 0.5 * (p.a + p.b);
        let halves = eval_panels(f, &[(p.a, mid), (mid, p.b)], opts.parallel)?;
        evaluations += 30;
        panels[idx] = halves[0];
        panels.insert(idx + 1, halves[1]);
    }
}

/// Integrates `f` over `[a, b]` (both positive) in the variable `ln x`.
///
/// Suited to integrands with structure spread over many decades.
pub fn log_quad<F>(f: &F, a: f64, b: f64, breaks: &[f64], opts: &QuadOptions) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64 + Sync,
{
    if !(a > 0.0) {
        return Err(CasimirError::InvalidParameter(format!(
            "log-scale quadrature needs a positive lower bound (got {a:e})"
        )));
    }
    let g = |u: f64| {
        let x = u.exp();
        x * f(x)
    };
    let log_breaks: Vec<f64> = breaks.iter().filter(|&&x| x > 0.0).map(|x| x.ln()).collect();
    adaptive_quad_with(&g, a.ln(), b.ln(), &log_breaks, opts)
}

/// Asymptotic decay class declared for a semi-infinite integrand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Decay {
    /// `|f(x)| <~ exp(-rate x)`.
    Exponential(f64),
    /// `|f(x)| <~ x^(-p)` with `p > 1`.
    PowerLaw(f64),
}

const MAX_PANELS: usize = 200;
const ENVELOPE_SAMPLES: usize = 16;

/// Integrates `f` over `[a, inf)`.
///
/// Panels of geometrically growing width are integrated until the analytic
/// tail bound implied by `decay` falls below half the requested accuracy.
pub fn semi_infinite_quad<F>(f: F, a: f64, opts: &QuadOptions, decay: Decay) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64 + Sync,
{
    semi_infinite_quad_from(&f, a, None, opts, decay)
}

/// As [`semi_infinite_quad`] but with an explicit first panel end.
pub fn semi_infinite_quad_from<F>(
    f: &F,
    a: f64,
    first_end: Option<f64>,
    opts: &QuadOptions,
    decay: Decay,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64 + Sync,
{
    let h0 = match decay {
        Decay::Exponential(rate) if rate > 0.0 => 4.0 / rate,
        Decay::PowerLaw(p) if p > 1.0 => a.abs().max(1.0),
        _ => {
            return Err(CasimirError::InvalidParameter(format!(
                "unsupported decay declaration {decay:?}"
            )))
        }
    };
    let mut lo = a;
    let mut hi = first_end.filter(|&x| x > a).unwrap_or(a + h0);
    let mut total = QuadratureResult::zero();
    let mut previous_envelope = f64::INFINITY;
    let mut growth_streak = 0;
    let sub_opts = QuadOptions {
        rel_tol: opts.rel_tol * 0.25,
        ..*opts
    };

    for _ in 0..MAX_PANELS {
        let panel = adaptive_quad_with(f, lo, hi, &[], &sub_opts)?;
        total = total.combine(panel);

        // Envelope of |f| over the last quarter of the panel.
        let start = lo + 0.75 * (hi - lo);
        let envelope = (0..=ENVELOPE_SAMPLES)
            .map(|i| f(start + (hi - start) * i as f64 / ENVELOPE_SAMPLES as f64).abs())
            .fold(0.0, f64::max);
        total.evaluations += ENVELOPE_SAMPLES + 1;
        let tail = match decay {
            Decay::Exponential(rate) => envelope / rate,
            Decay::PowerLaw(p) => envelope * hi / (p - 1.0),
        };
        let goal = opts.target(total.value);
        if tail <= 0.5 * goal && panel.value.abs() <= goal.max(opts.rel_tol * total.value.abs()) {
            total.abs_error_estimate += tail;
            return Ok(total);
        }
        if envelope > previous_envelope * 1.000_001 {
            growth_streak += 1;
            if growth_streak >= 4 {
                return Err(CasimirError::DecayViolation { at: hi });
            }
        } else {
            growth_streak = 0;
        }
        previous_envelope = envelope;
        let width = hi - lo;
        lo = hi;
        hi = lo + 2.0 * width;
    }
    Err(CasimirError::DecayViolation { at: lo })
}
