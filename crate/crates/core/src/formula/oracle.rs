use std::collections::BTreeSet;

use super::{dpll, AtomUniverse, Formula, Interpretation};
use crate::error::{Error, Result};
use crate::DEFAULT_MAX_ATOMS;

/// Which satisfiability procedure the oracle runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    /// Truth tables up to the atom cap, DPLL above it.
    #[default]
    Auto,
    TruthTable,
    Dpll,
}

/// Classical satisfiability and consequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    pub max_atoms: usize,
    pub backend: Backend,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle::new(DEFAULT_MAX_ATOMS)
    }
}

impl Oracle {
    pub fn new(max_atoms: usize) -> Self {
        Oracle {
            max_atoms,
            backend: Backend::Auto,
        }
    }

    pub fn with_backend(mut self, backend: Backend) -> Self {
        self.backend = backend;
        self
    }

    pub(crate) fn uses_tables(&self, atoms: usize) -> bool {
        match self.backend {
            Backend::Auto => atoms <= self.max_atoms,
            Backend::TruthTable => true,
            Backend::Dpll => false,
        }
    }

    /// Some interpretation satisfying every formula. With truth tables this
    /// is the first model in bitmask order.
    pub fn model<'a>(&self, fs: impl IntoIterator<Item = &'a Formula>) -> Option<Interpretation> {
        let fs: Vec<&Formula> = fs.into_iter().collect();
        let universe = AtomUniverse::of(fs.iter().copied());
        if !self.uses_tables(universe.len()) {
            return dpll::solve(fs);
        }
        let mut acc = universe.all();
        for f in fs {
            acc.and_assign(&universe.table(f));
            if acc.is_zero() {
                return None;
            }
        }
        acc.first_one().map(|i| universe.interpretation(i))
    }

    pub fn is_consistent<'a>(&self, fs: impl IntoIterator<Item = &'a Formula>) -> bool {
        self.model(fs).is_some()
    }

    pub fn entails<'a>(&self, fs: impl IntoIterator<Item = &'a Formula>, goal: &Formula) -> bool {
        let negated = Formula::not(goal.clone());
        let mut all: Vec<&Formula> = fs.into_iter().collect();
        all.push(&negated);
        self.model(all).is_none()
    }
}

/// True iff some interpretation satisfies every member of `fs`.
pub fn is_consistent(fs: &[Formula]) -> bool {
    Oracle::default().is_consistent(fs)
}

/// True iff every model of `fs` satisfies `goal`.
pub fn entails(fs: &[Formula], goal: &Formula) -> bool {
    Oracle::default().entails(fs, goal)
}

/// All `2^n` interpretations over `atoms`, ordered by inclusion bitmask over
/// the sorted atoms.
pub fn all_interpretations(atoms: &BTreeSet<String>, cap: usize) -> Result<Vec<Interpretation>> {
    if atoms.len() > cap {
        return Err(Error::AtomCapExceeded {
            atoms: atoms.len(),
            cap,
        });
    }
    let universe = AtomUniverse::new(atoms.clone());
    Ok((0..universe.interpretation_count())
        .map(|i| universe.interpretation(i))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;

    fn p(t: &str) -> Formula {
        parse_formula(t).unwrap()
    }

    fn ps(ts: &[&str]) -> Vec<Formula> {
        ts.iter().map(|t| p(t)).collect()
    }

    #[test]
    fn consistency_examples() {
        assert!(is_consistent(&ps(&["a", "a -> b"])));
        assert!(!is_consistent(&ps(&["a", "!a"])));
        assert!(!is_consistent(&ps(&["a", "!a & !b", "b"])));
        assert!(is_consistent(&[]));
    }

    #[test]
    fn entailment_examples() {
        assert!(entails(&ps(&["phi", "phi -> psi"]), &p("psi")));
        assert!(entails(&[], &p("a | !a")));
        assert!(entails(&ps(&["a & b"]), &p("b")));
        assert!(!entails(&ps(&["a | b"]), &p("b")));
    }

    #[test]
    fn interpretations_in_bitmask_order() {
        let none: BTreeSet<String> = BTreeSet::new();
        assert_eq!(
            all_interpretations(&none, 20).unwrap(),
            vec![Interpretation::default()]
        );
        let a: BTreeSet<String> = ["a".to_string()].into();
        assert_eq!(
            all_interpretations(&a, 20).unwrap(),
            vec![Interpretation::default(), Interpretation::new(["a"])]
        );
        let ab: BTreeSet<String> = ["b".to_string(), "a".to_string()].into();
        let all = all_interpretations(&ab, 20).unwrap();
        assert_eq!(all.len(), 4);
        assert_eq!(all[1], Interpretation::new(["a"]));
        assert_eq!(all[2], Interpretation::new(["b"]));
        assert!(matches!(
            all_interpretations(&ab, 1),
            Err(Error::AtomCapExceeded { atoms: 2, cap: 1 })
        ));
    }

    #[test]
    fn above_cap_uses_dpll() {
        let fs = ps(&["a", "a -> b", "b -> c"]);
        let oracle = Oracle::new(2);
        assert!(!oracle.uses_tables(3));
        assert!(oracle.entails(&fs, &p("c")));
        assert!(!oracle.entails(&fs, &p("!c")));
    }
}
