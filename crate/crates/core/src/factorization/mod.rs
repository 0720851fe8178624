//! Factorization of analytic and entire vectors, the converse mapping
//! checks and closure of the decay classes under twisted convolution.

pub mod certify;
pub mod closure;
pub mod factorize;
pub mod mapping;
pub mod schwartz;
pub mod tensor;

pub use certify::{certify_phase, fit_phase_t, PhaseCertificate};
pub use factorize::{factorize_analytic, factorize_entire, FactorizationReport};
pub use mapping::{random_coefficients, random_hermite_function, weyl_maps_into_es_check, weyl_maps_into_ms_check, MappingReport};
pub use closure::{algebra_closure_check, algebra_closure_check_entire, closure_chain_check, heat_semigroup_law_error, ClosureReport};
pub use schwartz::{schwartz_mapping_check, SchwartzReport};
pub use tensor::{tensor_estimate_check, TensorEstimateReport};
