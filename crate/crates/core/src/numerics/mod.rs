//! Special functions and adaptive quadrature.

pub mod cubature;
pub mod quadrature;
pub mod special;

pub use cubature::{integrate_2d, integrate_2d_weighted, AxisSingularities, AxisWeights, Domain2d};
pub use quadrature::{
    integrate_1d, integrate_weighted, Edge, IntegralResult, PowerWeight, QuadratureSpec, SingularityAnnotation,
};
pub use special::{
    beta_fn, euler_gamma, gamma_fn, log_case_constant, lower_inc_gamma, scaled_lower_inc, scaled_lower_inc_ext,
    EULER_GAMMA,
};
