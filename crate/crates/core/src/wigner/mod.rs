pub mod pairs;
pub mod radial;
pub mod twisted;
pub mod weyl;
#[allow(clippy::module_inception)]
pub mod wigner;

pub use radial::{radial_constant, weyl_radial_laguerre, RadialWeyl};
pub use twisted::twisted_convolution;
pub use weyl::{weyl_apply_kernel, weyl_matrix_kernel, weyl_matrix_spectral, WeylKernel, WeylOperatorMatrix};
pub use wigner::{special_hermite, special_hermite_pairings, wigner_transform, wigner_transform_on};
