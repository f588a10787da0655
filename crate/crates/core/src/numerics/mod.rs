//! Shared numerical kernel.

pub mod quad;
pub mod roots;
pub mod sum;
pub mod weight;

pub use quad::{adaptive_integral, adaptive_integral_with_breaks, Quadrature, QuadratureConfig};
pub use roots::{bisect, Root};
pub use sum::{compensated_sum, running_sums, CompensatedSum};
pub use weight::{Antiderivative, PiecewiseConstantWeight, PowerWeight, Weight, WeightSpec};
