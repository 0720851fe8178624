pub mod coeffs;
pub mod hermite;
pub mod laguerre;
pub mod mehler;

pub use coeffs::{hermite_coeffs, hermite_synthesis, projection_pk, synthesize_on_axes, synthesize_on_grid, HermiteCoefficients};
pub use hermite::{hermite_eval, hermite_eval_complex, hermite_eval_log, hermite_fn, hermite_row, multi_indices, MultiIndex};
pub use laguerre::{gauss_laguerre_nodes, laguerre_eval, laguerre_function, laguerre_row};
pub use mehler::mehler_kernel;
