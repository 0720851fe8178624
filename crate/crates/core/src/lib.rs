//! Numerics for the Schrodinger representation of the Heisenberg group.
//!
//! Functions on `R^n` and on phase space `R^{2n}` are sampled on tensor grids
//! (Gauss-Hermite or uniform). On top of that sit Hermite expansions, the
//! Fourier-Wigner and Weyl transforms, twisted convolution, the Hermite and
//! special Hermite semigroups, Bargmann-side coefficient bounds and the
//! factorization and mapping checks.

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bargmann;
pub mod error;
pub mod factorization;
pub mod harness;
pub mod numerics;
pub mod semigroups;
pub mod special;
pub mod wigner;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
