//! Non-additive integration and decision evaluation on finite state spaces.
//!
//! * [`states_acts`]: state spaces, acts, supports, comonotonicity.
//! * [`capacity`]: capacities over the powerset, conjugation, convexity.
//! * [`integration`]: Choquet, Šipoš and piecewise-linear CPT functionals.
//! * [`representation`]: extract CPT parameters from black-box functionals,
//!   or find witnesses that a functional is not of CPT form.
//! * [`elicitation`]: loss aversion from certainty equivalents.
//! * [`io`]: capacity JSON, acts CSV and elicitation CSV.

// `!(x <= eps)` is used on purpose so NaN counts as a failure.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod capacity;
pub mod elicitation;
pub mod integration;
pub mod io;
pub mod representation;
pub mod states_acts;

pub use capacity::{Capacity, CapacityError};
pub use integration::{
    certainty_equivalent, choquet, cpt, hedging_gap, sipos, CptParams, IntegrationError,
    DEFAULT_EPS,
};
pub use states_acts::{Act, StateError, StateSpace, Subset};
