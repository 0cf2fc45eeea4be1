//! Multiprecision real and complex arithmetic.

mod complex;
mod elementary;
mod real;

pub use complex::HPComplex;
pub use elementary::{ln2, pi};
pub use real::{bits_for_digits, Real};
