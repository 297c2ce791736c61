//! Reasoning with inconsistent propositional knowledge ordered by a partial
//! reliability relation.
//!
//! A [`ReliabilityTheory`] is a finite set of identified premises plus a
//! strict partial order saying which premises are less reliable than which.
//! From it the crate computes:
//!
//! * the most reliable consistent premise sets and skeptical / credulous
//!   consequence ([`extensions`]),
//! * undermining and supporting arguments and the believed-premise fixed
//!   point ([`arguments`]),
//! * preferred models, conditionals and revision ([`semantics`]),
//! * the equivalent abstract argumentation framework ([`af`]),
//! * encodings of layered belief categories and of an ATMS ([`bridges`]).
//!
//! ```
//! use inconlog::{extensions, theory_file, Limits};
//!
//! let theory = theory_file::parse_theory(
//!     "premise p1: phi\n\
//!      premise p2: phi -> psi\n\
//!      premise p3: !psi\n\
//!      premise p4: alpha\n\
//!      order p3 < p1\n\
//!      order p3 < p2\n",
//! )
//! .unwrap();
//! let prepared = theory.prepare(Limits::default()).unwrap();
//! let psi = inconlog::parse_formula("psi").unwrap();
//! assert!(extensions::skeptical_entails(&prepared, &psi).unwrap());
//! ```

pub mod af;
pub mod arguments;
pub mod bridges;
pub mod cli;
mod error;
pub mod extensions;
pub mod formula;
mod search;
pub mod semantics;
mod set;
pub mod theory;
pub mod theory_file;

pub use error::{Error, Result};
pub use formula::{evaluate, parse_formula, Formula, Interpretation};
pub use set::PremiseSet;
pub use theory::{Premise, PreparedTheory, ReliabilityTheory, TotalOrder, ValidationReport};

pub const DEFAULT_MAX_ATOMS: usize = 20;
pub const DEFAULT_MAX_EXTENSIONS: usize = 100_000;
pub const DEFAULT_MUS_BUDGET: usize = 24;
pub const DEFAULT_MAX_ARGUMENTS: usize = 512;

/// Caps on the exhaustive procedures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Atoms up to which truth tables are used instead of DPLL, and the hard
    /// cap for model enumeration.
    pub max_atoms: usize,
    /// Linear extensions enumerated before giving up.
    pub max_extensions: usize,
    /// Largest premise set searched for minimal subsets. At most 63.
    pub mus_budget: usize,
    /// Largest argumentation framework searched for stable extensions.
    pub max_arguments: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_atoms: DEFAULT_MAX_ATOMS,
            max_extensions: DEFAULT_MAX_EXTENSIONS,
            mus_budget: DEFAULT_MUS_BUDGET,
            max_arguments: DEFAULT_MAX_ARGUMENTS,
        }
    }
}
