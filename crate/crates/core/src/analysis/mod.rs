//! Generating functions and quadratic trunk shapes.

pub mod poincare;
pub mod qpoly;
pub mod quadratic;

pub use poincare::{poincare_series, DenominatorFactor, RationalSeries};
pub use qpoly::QPoly;
pub use quadratic::{
    classify_closed_form, classify_quadratic, trunk_shape, BaseLength, QuadraticClass,
    QuadraticKind,
};
