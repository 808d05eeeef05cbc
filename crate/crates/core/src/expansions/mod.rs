//! Closed-form constants and truncated large-`T` expansions, with the
//! quadrature oracles and order-fitting helpers used to check them.

pub mod decay;
pub mod fit;
pub mod oracles;
pub mod series;
pub mod sigma;

pub use decay::{decay_check, decay_exponent, DecayRow};
pub use fit::{loglog_slope, max_over_median};
pub use oracles::{lemma_oracle, log_case_integral};
pub use series::{lemma_expansion, theorem_expansion, ExpansionResult, ExpansionTerm, LemmaId};
pub use sigma::{a_const, asymptote_params, sigma_consts, sigma_h2, AsymptoteParams, SigmaConstants};
