//! The propositional language: formulas over `¬` and `→`, interpretations,
//! and the classical consequence oracle.
//!
//! Conjunction and disjunction exist only as parse-time sugar:
//! `a & b` becomes `!(a -> !b)` and `a | b` becomes `!a -> b`.

use std::collections::BTreeSet;
use std::fmt;

mod dpll;
mod oracle;
mod parser;
mod table;

pub use oracle::{all_interpretations, entails, is_consistent, Backend, Oracle};
pub use parser::parse_formula;
pub(crate) use table::{AtomUniverse, TruthTable};

pub(crate) use dpll::solve as dpll_solve;

/// A propositional formula after desugaring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Not(Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn implies(left: Formula, right: Formula) -> Self {
        Formula::Implies(Box::new(left), Box::new(right))
    }

    /// `a ∧ b`, written as `¬(a → ¬b)`.
    pub fn and(left: Formula, right: Formula) -> Self {
        Formula::not(Formula::implies(left, Formula::not(right)))
    }

    /// `a ∨ b`, written as `¬a → b`.
    pub fn or(left: Formula, right: Formula) -> Self {
        Formula::implies(Formula::not(left), right)
    }

    /// `(a → b) ∧ (b → a)`.
    pub fn iff(left: Formula, right: Formula) -> Self {
        Formula::and(
            Formula::implies(left.clone(), right.clone()),
            Formula::implies(right, left),
        )
    }

    /// Left-nested conjunction of `parts`, `None` when empty.
    pub fn conjunction(parts: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        parts.into_iter().reduce(Formula::and)
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub(crate) fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(name) => {
                if !out.contains(name) {
                    out.insert(name.clone());
                }
            }
            Formula::Not(inner) => inner.collect_atoms(out),
            Formula::Implies(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    pub fn evaluate(&self, m: &Interpretation) -> bool {
        evaluate(self, m)
    }
}

/// Classical truth of `f` under `m`.
pub fn evaluate(f: &Formula, m: &Interpretation) -> bool {
    match f {
        Formula::Atom(name) => m.contains(name),
        Formula::Not(inner) => !evaluate(inner, m),
        Formula::Implies(l, r) => !evaluate(l, m) || evaluate(r, m),
    }
}

// Printing produces text that parses back to the identical tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(name) => f.write_str(name),
            Formula::Not(inner) => match inner.as_ref() {
                Formula::Implies(..) => write!(f, "!({inner})"),
                _ => write!(f, "!{inner}"),
            },
            Formula::Implies(l, r) => {
                match l.as_ref() {
                    Formula::Implies(..) => write!(f, "({l})")?,
                    _ => write!(f, "{l}")?,
                }
                write!(f, " -> {r}")
            }
        }
    }
}

/// A valuation: the set of atoms that are true. Every other atom is false.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interpretation {
    pub atoms_true: BTreeSet<String>,
}

impl Interpretation {
    pub fn new<I, S>(atoms: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Interpretation {
            atoms_true: atoms.into_iter().map(Into::into).collect(),
        }
    }

    pub fn contains(&self, atom: &str) -> bool {
        self.atoms_true.contains(atom)
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.atoms_true.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(a)?;
        }
        f.write_str("}")
    }
}
