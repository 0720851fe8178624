pub mod envelope;
pub mod fourier;
pub mod function;
pub mod grid;
pub mod tensor;

pub use envelope::{envelope_plateau, EnvelopeSample, Plateau};
pub use fourier::{fourier_transform, inverse_fourier_transform, partial_fourier_1, partial_fourier_2, symplectic_fourier};
pub use function::{inner_product, reflect, PhaseSpaceFunction, Sampled, SampledFunction};
pub use grid::{gauss_hermite_nodes, Axis, AxisKind, GridSpec};
