pub mod cauchy;
pub mod decay;
pub mod transform;
pub mod bounds;
pub mod hardy;

pub use bounds::{coeff_bound_exponential_check, coeff_bound_gaussian_check, BoundReport, BoundStatus};
pub use cauchy::{default_radii, taylor_coeffs_cauchy, CauchyCoefficient};
pub use decay::{certify_decay, fit_decay_hypothesis, DecayCertificate, DecayHypothesis, DecayKind, Side};
pub use hardy::{case_i_probe, hardy_classify, minimal_type_check, ClassificationResult, HardyCase, MinimalTypeReport};
pub use transform::{bargmann_series, bargmann_transform, hermite_from_taylor, taylor_from_hermite};
