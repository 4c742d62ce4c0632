//! Numerical kernels: quadrature, root bracketing and winding numbers.

pub mod quad;
pub mod roots;
pub mod winding;

pub use quad::{
    adaptive_quad, adaptive_quad_with, log_quad, semi_infinite_quad, semi_infinite_quad_from, Decay, QuadOptions,
    QuadratureResult,
};
pub use roots::{bracket_even_roots, bracket_roots, SamplingPlan};
pub use winding::{winding_number, RectContour, WindingOptions, WindingResult};
