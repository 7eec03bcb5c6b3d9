//! Verification and calculus on realizations: linearized lost-abbey
//! equations, Taylor–Taylor series, difference-differential operators and
//! sampled nc-function properties.

mod delta;
mod harness;
mod la;
mod lla;
mod taylor;
mod word;

pub use delta::{delta_block, delta_closed_form, delta_closed_form_pencil_inverse};
pub use harness::{nc_property_harness, sample_in_domain, HarnessCheck, HarnessReport};
pub use la::{la_check_series, LaCondition, LaReport, LaViolation};
pub use lla::{lla_check, lla_check_extended, unit_label, LlaCertified, LlaEquation, LlaReport, LlaViolation, LlaWitness};
pub use taylor::{tt_coefficient, tt_series_eval, tt_series_eval_bruteforce};
pub use word::Word;
