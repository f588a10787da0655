//! Sharp Hardy-type inequalities with negative exponents, in discrete and
//! continuous form, and their use in bounding the self-improvement of
//! Muckenhoupt `A_q` conditions for monotone weights on `[0, 1)`.
//!
//! * [`numerics`]: weights with exact power integrals, adaptive quadrature, bisection.
//! * [`discrete`]: weighted prefix means and the series inequalities.
//! * [`continuous`]: the Hardy mean on an interval and the integral inequalities.
//! * [`muckenhoupt`]: `A_p` characteristics, the critical exponent `p₀`, and the
//!   self-improvement bound.
//! * [`fuzz`]: seeded random corpora used by the CLI and the acceptance suite.

pub mod continuous;
pub mod discrete;
pub mod error;
pub mod fuzz;
pub mod muckenhoupt;
pub mod numerics;
pub mod report;

pub use error::{HardyError, Result};
pub use numerics::{QuadratureConfig, Weight};
pub use report::{InequalityReport, Relation};
