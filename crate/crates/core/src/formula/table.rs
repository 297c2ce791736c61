use std::collections::{BTreeSet, HashMap};

use super::{Formula, Interpretation};

/// A fixed, sorted atom universe. Interpretation `i` makes atom `j` true iff
/// bit `j` of `i` is set, so index order is the bitmask order.
#[derive(Debug, Clone)]
pub(crate) struct AtomUniverse {
    atoms: Vec<String>,
    index: HashMap<String, usize>,
}

const ATOM_WORDS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

impl AtomUniverse {
    pub fn new(atoms: BTreeSet<String>) -> Self {
        let atoms: Vec<String> = atoms.into_iter().collect();
        let index = atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();
        AtomUniverse { atoms, index }
    }

    pub fn of<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> Self {
        let mut atoms = BTreeSet::new();
        for f in formulas {
            f.collect_atoms(&mut atoms);
        }
        AtomUniverse::new(atoms)
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn interpretation_count(&self) -> usize {
        1usize << self.atoms.len()
    }

    fn word_count(&self) -> usize {
        (self.interpretation_count() / 64).max(1)
    }

    fn last_mask(&self) -> u64 {
        let n = self.interpretation_count();
        if n >= 64 {
            u64::MAX
        } else {
            (1u64 << n) - 1
        }
    }

    pub fn interpretation(&self, index: usize) -> Interpretation {
        Interpretation {
            atoms_true: self
                .atoms
                .iter()
                .enumerate()
                .filter(|(j, _)| index >> j & 1 == 1)
                .map(|(_, a)| a.clone())
                .collect(),
        }
    }

    fn atom_table(&self, j: usize) -> TruthTable {
        let words = self.word_count();
        let mut out = Vec::with_capacity(words);
        for w in 0..words {
            let word = if j < 6 {
                ATOM_WORDS[j]
            } else if (w >> (j - 6)) & 1 == 1 {
                u64::MAX
            } else {
                0
            };
            out.push(word);
        }
        let mut t = TruthTable { words: out };
        t.mask_tail(self.last_mask());
        t
    }

    /// Truth table of `f`. Atoms outside the universe are read as false.
    pub fn table(&self, f: &Formula) -> TruthTable {
        match f {
            Formula::Atom(name) => match self.index.get(name) {
                Some(&j) => self.atom_table(j),
                None => TruthTable::zeros(self.word_count()),
            },
            Formula::Not(inner) => {
                let mut t = self.table(inner);
                for w in &mut t.words {
                    *w = !*w;
                }
                t.mask_tail(self.last_mask());
                t
            }
            Formula::Implies(l, r) => {
                let mut t = self.table(l);
                let r = self.table(r);
                for (w, rw) in t.words.iter_mut().zip(&r.words) {
                    *w = !*w | rw;
                }
                t.mask_tail(self.last_mask());
                t
            }
        }
    }

    pub fn all(&self) -> TruthTable {
        let mut t = TruthTable {
            words: vec![u64::MAX; self.word_count()],
        };
        t.mask_tail(self.last_mask());
        t
    }
}

/// One bit per interpretation of an [`AtomUniverse`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct TruthTable {
    words: Vec<u64>,
}

impl TruthTable {
    fn zeros(words: usize) -> Self {
        TruthTable {
            words: vec![0; words],
        }
    }

    fn mask_tail(&mut self, mask: u64) {
        if let Some(last) = self.words.last_mut() {
            *last &= mask;
        }
    }

    pub fn and_assign(&mut self, other: &TruthTable) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w &= o;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn get(&self, index: usize) -> bool {
        self.words[index / 64] >> (index % 64) & 1 == 1
    }

    pub fn first_one(&self) -> Option<usize> {
        self.ones().next()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + bit)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{evaluate, parse_formula};

    #[test]
    fn tables_agree_with_evaluation() {
        for text in [
            "a",
            "!a",
            "a -> b",
            "a & !c | b",
            "(a -> g) & (g -> f) -> !h",
        ] {
            let f = parse_formula(text).unwrap();
            let u = AtomUniverse::of([&f]);
            let t = u.table(&f);
            for i in 0..u.interpretation_count() {
                assert_eq!(
                    t.get(i),
                    evaluate(&f, &u.interpretation(i)),
                    "{text} at {i}"
                );
            }
        }
    }

    #[test]
    fn wide_universe_has_no_stray_bits() {
        let atoms: BTreeSet<String> = (0..8).map(|i| format!("x{i}")).collect();
        let u = AtomUniverse::new(atoms);
        let f = parse_formula("x7 & !x6 & x0").unwrap();
        let t = u.table(&f);
        assert_eq!(t.ones().count(), 256 / 8);
        for i in t.ones() {
            assert!(evaluate(&f, &u.interpretation(i)));
        }
    }
}
