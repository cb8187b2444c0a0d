//! Generic numerical building blocks: bracketed root finding, sign-change
//! scanning, adaptive quadrature and tail estimates for level sums.

pub mod quad;
pub mod roots;
pub mod tail;

pub use quad::adaptive_simpson;
pub use roots::{scan_sign_changes, solve_bracketed, Root, RootOptions};
