pub mod bergman;
pub mod gutzmer;
pub mod heat;
pub mod membership;
pub mod multipliers;

pub use bergman::{bergman_norm_ratio_check, hermite_bergman_isometry_check, pointwise_analytic_bound_check, IsometryReport, PointwiseReport, RatioReport};
pub use gutzmer::{gutzmer_check_1d, GutzmerReport};
pub use heat::{calibrate_heat_constant, heat_kernel_shape, special_hermite_heat_kernel};
pub use membership::{analytic_membership, entire_membership, poisson_membership, tail_verdict, MembershipReport, Space, Verdict};
pub use multipliers::{hermite_semigroup, poisson_hermite_semigroup};
