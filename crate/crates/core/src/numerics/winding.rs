//! Winding numbers of complex functions along rectangular contours.
//!
//! The argument of `h` is tracked continuously along the boundary. Each
//! segment between two nodes is recursively halved until both halves change
//! the phase by less than `max_step` and agree with the undivided step, so
//! every accumulated increment is a principal-value phase difference well
//! inside `(-pi/2, pi/2)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{CasimirError, Result};

/// Axis-aligned rectangle, traversed counter-clockwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectContour {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl RectContour {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        if !(re_min < re_max && im_min < im_max) {
            return Err(CasimirError::InvalidParameter(format!(
                "degenerate contour [{re_min:e}, {re_max:e}] x [{im_min:e}, {im_max:e}]"
            )));
        }
        Ok(RectContour {
            re_min,
            re_max,
            im_min,
            im_max,
        })
    }

    /// Rectangle symmetric about the imaginary axis.
    pub fn centered_on_imag_axis(half_width: f64, im_min: f64, im_max: f64) -> Result<Self> {
        Self::new(-half_width, half_width, im_min, im_max)
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.re > self.re_min && z.re < self.re_max && z.im > self.im_min && z.im < self.im_max
    }

    /// Corners in traversal order, closing back on the first.
    pub fn corners(&self) -> [Complex64; 5] {
        [
            Complex64::new(self.re_max, self.im_min),
            Complex64::new(self.re_max, self.im_max),
            Complex64::new(self.re_min, self.im_max),
            Complex64::new(self.re_min, self.im_min),
            Complex64::new(self.re_max, self.im_min),
        ]
    }

    pub fn inflate(&self, factor: f64) -> Result<Self> {
        let (cx, cy) = (0.5 * (self.re_min + self.re_max), 0.5 * (self.im_min + self.im_max));
        let (hx, hy) = (0.5 * (self.re_max - self.re_min) * factor, 0.5 * (self.im_max - self.im_min) * factor);
        Self::new(cx - hx, cx + hx, cy - hy, cy + hy)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WindingOptions {
    /// Uniform starting nodes per edge.
    pub nodes_per_edge: usize,
    /// Imaginary coordinates near which extra, log-spaced nodes are placed on
    /// the vertical edges (accumulation points, interval ends).
    pub hot_spots: Vec<f64>,
    pub max_step: f64,
    pub max_depth: u32,
}

impl Default for WindingOptions {
    fn default() -> Self {
        WindingOptions {
            nodes_per_edge: 400,
            hot_spots: Vec::new(),
            max_step: 0.5,
            max_depth: 64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindingResult {
    pub n: i64,
    /// Total phase change divided by `2 pi`.
    pub raw: f64,
    pub evaluations: usize,
}

impl WindingResult {
    pub fn residual(&self) -> f64 {
        (self.raw - self.n as f64).abs()
    }
}

const RESIDUAL_LIMIT: f64 = 0.05;

fn edge_nodes(a: Complex64, b: Complex64, opts: &WindingOptions) -> Vec<f64> {
    let n = opts.nodes_per_edge.max(2);
    let mut ts: Vec<f64> = (0..n).map(|i| i as f64 / n as f64).collect();
    if a.re == b.re && a.im != b.im {
        for &y in &opts.hot_spots {
            let t0 = (y - a.im) / (b.im - a.im);
            if !(0.0..1.0).contains(&t0) {
                continue;
            }
            for j in 1..=40 {
                let d = 10f64.powf(-12.0 + 11.0 * j as f64 / 40.0);
                for t in [t0 - d, t0 + d] {
                    if t > 0.0 && t < 1.0 {
                        ts.push(t);
                    }
                }
            }
        }
    }
    ts.sort_by(|x, y| x.total_cmp(y));
    ts.dedup();
    ts
}

struct Tracker<'a, H> {
    h: &'a H,
    opts: &'a WindingOptions,
    evaluations: usize,
}

impl<H: Fn(Complex64) -> Complex64> Tracker<'_, H> {
    fn eval(&mut self, z: Complex64) -> Result<Complex64> {
        self.evaluations += 1;
        let v = (self.h)(z);
        if !(v.re.is_finite() && v.im.is_finite()) || v == Complex64::new(0.0, 0.0) {
            return Err(CasimirError::PhaseTracking { at: z });
        }
        Ok(v)
    }

    fn segment(&mut self, a: Complex64, b: Complex64, ha: Complex64, hb: Complex64, depth: u32) -> Result<f64> {
        let mid = 0.5 * (a + b);
        let hm = self.eval(mid)?;
        let d1 = (hm / ha).arg();
        let d2 = (hb / hm).arg();
        let whole = (hb / ha).arg();
        let max_step = self.opts.max_step;
        if d1.abs() < max_step && d2.abs() < max_step && (d1 + d2 - whole).abs() < 1e-6 {
            return Ok(d1 + d2);
        }
        if depth >= self.opts.max_depth || mid == a || mid == b {
            return Err(CasimirError::PhaseTracking { at: mid });
        }
        Ok(self.segment(a, mid, ha, hm, depth + 1)? + self.segment(mid, b, hm, hb, depth + 1)?)
    }
}

/// Winding number of `h` along `contour`: zeros minus poles inside, for `h`
/// meromorphic in the rectangle and finite and nonzero on its boundary.
pub fn winding_number<H>(h: H, contour: &RectContour, opts: &WindingOptions) -> Result<WindingResult>
where
    H: Fn(Complex64) -> Complex64,
{
    let mut tracker = Tracker {
        h: &h,
        opts,
        evaluations: 0,
    };
    let corners = contour.corners();
    let mut total = 0.0;
    for edge in corners.windows(2) {
        let (a, b) = (edge[0], edge[1]);
        let ts = edge_nodes(a, b, opts);
        let points: Vec<Complex64> = ts.iter().map(|&t| a + (b - a) * t).chain(std::iter::once(b)).collect();
        let mut prev = tracker.eval(points[0])?;
        for w in points.windows(2) {
            let next = tracker.eval(w[1])?;
            total += tracker.segment(w[0], w[1], prev, next, 0)?;
            prev = next;
        }
    }
    let raw = total / (2.0 * PI);
    let result = WindingResult {
        n: raw.round() as i64,
        raw,
        evaluations: tracker.evaluations,
    };
    if result.residual() >= RESIDUAL_LIMIT {
        return Err(CasimirError::WindingResidual {
            residual: result.residual(),
        });
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn unit_box() -> RectContour {
        RectContour::new(-1.0, 1.0, -1.0, 1.0).unwrap()
    }

    #[test]
    fn single_zero() {
        let z0 = c(0.2, -0.3);
        let w = winding_number(|z| z - z0, &unit_box(), &WindingOptions::default()).unwrap();
        assert_eq!(w.n, 1);
        assert!(w.residual() < 1e-12);
    }

    #[test]
    fn zero_and_double_pole() {
        let (a, b) = (c(0.5, 0.5), c(-0.4, 0.1));
        let w = winding_number(|z| (z - a) / ((z - b) * (z - b)), &unit_box(), &WindingOptions::default()).unwrap();
        assert_eq!(w.n, -1);
    }

    #[test]
    fn outside_points_do_not_count() {
        let w = winding_number(|z| (z - c(3.0, 0.0)) / (z - c(0.0, 5.0)), &unit_box(), &WindingOptions::default())
            .unwrap();
        assert_eq!(w.n, 0);
    }

    #[test]
    fn invariant_under_refinement_and_inflation() {
        let h = |z: Complex64| (z - c(0.1, 0.1)).powi(3) / (z + c(0.3, 0.0));
        let coarse = WindingOptions {
            nodes_per_edge: 8,
            ..WindingOptions::default()
        };
        let fine = WindingOptions {
            nodes_per_edge: 2000,
            ..WindingOptions::default()
        };
        let n1 = winding_number(h, &unit_box(), &coarse).unwrap().n;
        let n2 = winding_number(h, &unit_box(), &fine).unwrap().n;
        let n3 = winding_number(h, &unit_box().inflate(1.5).unwrap(), &coarse).unwrap().n;
        assert_eq!((n1, n2, n3), (2, 2, 2));
    }

    #[test]
    fn essential_oscillation_is_tracked() {
        // exp(50 z) winds nowhere but spins fast along vertical edges.
        let h = |z: Complex64| (50.0 * z).exp() * (z - c(0.0, 0.5));
        let w = winding_number(
            h,
            &unit_box(),
            &WindingOptions {
                nodes_per_edge: 4,
                ..WindingOptions::default()
            },
        )
        .unwrap();
        assert_eq!(w.n, 1);
    }

    #[test]
    fn zero_on_contour_fails() {
        let err = winding_number(|z| z - c(1.0, 0.0), &unit_box(), &WindingOptions::default()).unwrap_err();
        assert!(matches!(err, CasimirError::PhaseTracking { .. }));
    }

    #[test]
    fn degenerate_rectangle_rejected() {
        assert!(RectContour::new(1.0, 1.0, 0.0, 1.0).is_err());
    }
}
