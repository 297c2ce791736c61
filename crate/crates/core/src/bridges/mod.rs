//! Encodings of other formalisms as reliability theories: layered modal
//! categories and the propositional ATMS.

pub mod atms;
pub mod modal;

pub use atms::{atms_encode, atms_labels, atms_nogoods, parse_atms, AtmsProblem, Justification};
pub use modal::{from_modal_categories, ModalCategories};
