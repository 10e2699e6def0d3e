//! Superconformal vector fields, contact forms and membership tests.

pub mod contact;
pub mod field;
pub mod form;

pub use contact::{contact_distribution_check, k_f, srs_transition_check, standard_distribution, DistributionReport};
pub use field::{svect_member, SVectorField};
pub use form::{k_member, lie_deriv_form, pair, OneForm};
