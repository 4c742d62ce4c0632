//! Bracketed root finding for real functions of one variable.

/// Where to place the sign-scan samples on `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SamplingPlan {
    Linear(usize),
    /// Geometric spacing; `a` and `b` must be nonzero with the same sign.
    Geometric(usize),
    /// Log-spaced in the distance from each endpoint, for intervals whose
    /// ends are accumulation points or poles.
    ClusteredEnds(usize),
}

const MIN_RELATIVE_OFFSET: f64 = 1e-13;
const MAX_BISECTIONS: usize = 400;

impl SamplingPlan {
    pub fn points(&self, a: f64, b: f64) -> Vec<f64> {
        let mut xs = match *self {
            SamplingPlan::Linear(n) => {
                let n = n.max(2);
                (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
            }
            SamplingPlan::Geometric(n) => {
                let n = n.max(2);
                let ratio = b / a;
                if !(ratio > 0.0) {
                    return SamplingPlan::Linear(n).points(a, b);
                }
                let (la, lr) = (a.abs().ln(), ratio.ln());
                (0..n)
                    .map(|i| a.signum() * (la + lr * i as f64 / (n - 1) as f64).exp())
                    .collect()
            }
            SamplingPlan::ClusteredEnds(n) => {
                let half = (n / 2).max(2);
                let width = b - a;
                let lo = (MIN_RELATIVE_OFFSET * width).ln();
                let hi = (0.5 * width).ln();
                let mut xs = Vec::with_capacity(2 * half);
                for i in 0..half {
                    let d = (lo + (hi - lo) * i as f64 / (half - 1) as f64).exp();
                    xs.push(a + d);
                    xs.push(b - d);
                }
                xs
            }
        };
        xs.retain(|x| x.is_finite());
        xs.sort_by(|x, y| x.total_cmp(y));
        xs.dedup();
        xs
    }
}

fn bisect<G: Fn(f64) -> f64>(g: &G, mut lo: f64, mut hi: f64, mut g_lo: f64, refine_tol: f64) -> f64 {
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= refine_tol * lo.abs().max(hi.abs()) || mid == lo || mid == hi {
            return mid;
        }
        let g_mid = g(mid);
        if g_mid == 0.0 {
            return mid;
        }
        if (g_mid < 0.0) == (g_lo < 0.0) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Roots of `g` on `[a, b]` located by sign changes between samples.
///
/// `g` may be undefined (non-finite) at isolated samples; those are skipped.
/// Each bracket is bisected to relative width `refine_tol`. The result is
/// sorted ascending; an empty list means no sign change was seen.
pub fn bracket_roots<G: Fn(f64) -> f64>(g: G, a: f64, b: f64, plan: SamplingPlan, refine_tol: f64) -> Vec<f64> {
    let xs = plan.points(a, b);
    let samples: Vec<(f64, f64)> = xs
        .into_iter()
        .map(|x| (x, g(x)))
        .filter(|(_, v)| v.is_finite())
        .collect();
    let mut roots = Vec::new();
    for w in samples.windows(2) {
        let ((x0, g0), (x1, g1)) = (w[0], w[1]);
        if g0 == 0.0 {
            roots.push(x0);
        } else if g1 != 0.0 && (g0 < 0.0) != (g1 < 0.0) {
            roots.push(bisect(&g, x0, x1, g0, refine_tol));
        }
    }
    if let Some(&(x, v)) = samples.last() {
        if v == 0.0 {
            roots.push(x);
        }
    }
    roots.dedup();
    roots
}

/// Roots of even multiplicity: interior minima of `|g|` where `g` keeps its
/// sign, bracketed by a sign change of the finite-difference slope and
/// accepted when `|g| <= zero_tol * max |g|` over the samples.
pub fn bracket_even_roots<G: Fn(f64) -> f64>(
    g: G,
    a: f64,
    b: f64,
    plan: SamplingPlan,
    refine_tol: f64,
    zero_tol: f64,
) -> Vec<f64> {
    let samples: Vec<(f64, f64)> = plan
        .points(a, b)
        .into_iter()
        .map(|x| (x, g(x)))
        .filter(|(_, v)| v.is_finite())
        .collect();
    let scale = samples.iter().map(|s| s.1.abs()).fold(0.0, f64::max);
    let mut roots = Vec::new();
    for w in samples.windows(3) {
        let ((x0, g0), (_, g1), (x2, g2)) = (w[0], w[1], w[2]);
        let same_sign = (g0 < 0.0) == (g1 < 0.0) && (g1 < 0.0) == (g2 < 0.0);
        if !(same_sign && g1.abs() <= g0.abs() && g1.abs() <= g2.abs()) {
            continue;
        }
        // Bisect on the sign of d|g|/dx.
        let slope = |x: f64| {
            let h = 1e-6 * (x2 - x0);
            g(x + h).abs() - g(x - h).abs()
        };
        let (mut lo, mut hi) = (x0, x2);
        for _ in 0..MAX_BISECTIONS {
            if hi - lo <= refine_tol * lo.abs().max(hi.abs()) {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if slope(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let x = 0.5 * (lo + hi);
        if g(x).abs() <= zero_tol * scale {
            roots.push(x);
        }
    }
    roots.dedup_by(|p, q| (*p - *q).abs() <= refine_tol * p.abs().max(q.abs()) * 10.0);
    roots
}
