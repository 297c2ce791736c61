//! Tseitin encoding plus a small DPLL search, used when a formula set has too
//! many atoms for truth tables.

use std::collections::HashMap;

use super::{Formula, Interpretation};

type Lit = i32;

struct Cnf {
    atoms: HashMap<String, i32>,
    next_var: i32,
    clauses: Vec<Vec<Lit>>,
}

impl Cnf {
    fn new() -> Self {
        Cnf {
            atoms: HashMap::new(),
            next_var: 1,
            clauses: Vec::new(),
        }
    }

    fn fresh(&mut self) -> i32 {
        let v = self.next_var;
        self.next_var += 1;
        v
    }

    fn encode(&mut self, f: &Formula) -> Lit {
        match f {
            Formula::Atom(name) => {
                if let Some(&v) = self.atoms.get(name) {
                    return v;
                }
                let v = self.fresh();
                self.atoms.insert(name.clone(), v);
                v
            }
            Formula::Not(inner) => -self.encode(inner),
            Formula::Implies(l, r) => {
                let l = self.encode(l);
                let r = self.encode(r);
                let g = self.fresh();
                // g <-> (!l | r)
                self.clauses.push(vec![-g, -l, r]);
                self.clauses.push(vec![l, g]);
                self.clauses.push(vec![-r, g]);
                g
            }
        }
    }
}

enum Propagation {
    Conflict,
    Done,
}

fn value(assign: &[i8], lit: Lit) -> i8 {
    let v = assign[lit.unsigned_abs() as usize];
    if lit > 0 {
        v
    } else {
        -v
    }
}

fn propagate(clauses: &[Vec<Lit>], assign: &mut [i8]) -> Propagation {
    loop {
        let mut changed = false;
        for clause in clauses {
            let mut unassigned = None;
            let mut open = 0;
            let mut satisfied = false;
            for &lit in clause {
                match value(assign, lit) {
                    1 => {
                        satisfied = true;
                        break;
                    }
                    0 => {
                        open += 1;
                        unassigned = Some(lit);
                    }
                    _ => {}
                }
            }
            if satisfied {
                continue;
            }
            match (open, unassigned) {
                (0, _) => return Propagation::Conflict,
                (1, Some(lit)) => {
                    assign[lit.unsigned_abs() as usize] = if lit > 0 { 1 } else { -1 };
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            return Propagation::Done;
        }
    }
}

fn search(clauses: &[Vec<Lit>], mut assign: Vec<i8>) -> Option<Vec<i8>> {
    if let Propagation::Conflict = propagate(clauses, &mut assign) {
        return None;
    }
    // Branch on a literal of the shortest open clause.
    let mut pick: Option<(usize, Lit)> = None;
    for clause in clauses {
        if clause.iter().any(|&l| value(&assign, l) == 1) {
            continue;
        }
        let open: Vec<Lit> = clause
            .iter()
            .copied()
            .filter(|&l| value(&assign, l) == 0)
            .collect();
        if pick.is_none_or(|(n, _)| open.len() < n) {
            pick = Some((open.len(), open[0]));
        }
    }
    let Some((_, lit)) = pick else {
        return Some(assign);
    };
    let var = lit.unsigned_abs() as usize;
    for choice in [lit.signum() as i8, -lit.signum() as i8] {
        let mut next = assign.clone();
        next[var] = choice;
        if let Some(model) = search(clauses, next) {
            return Some(model);
        }
    }
    None
}

/// A model of all `formulas`, or `None` if they are jointly unsatisfiable.
/// Atoms left open by the search are reported false.
pub(crate) fn solve<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> Option<Interpretation> {
    let mut cnf = Cnf::new();
    for f in formulas {
        let root = cnf.encode(f);
        cnf.clauses.push(vec![root]);
    }
    let assign = vec![0i8; cnf.next_var as usize];
    let model = search(&cnf.clauses, assign)?;
    Some(Interpretation {
        atoms_true: cnf
            .atoms
            .iter()
            .filter(|(_, &v)| model[v as usize] == 1)
            .map(|(a, _)| a.clone())
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{evaluate, parse_formula};

    fn parse_all(texts: &[&str]) -> Vec<Formula> {
        texts.iter().map(|t| parse_formula(t).unwrap()).collect()
    }

    #[test]
    fn finds_models_that_satisfy() {
        let fs = parse_all(&["a -> b", "a", "!c | !b", "d | c"]);
        let m = solve(&fs).expect("satisfiable");
        assert!(fs.iter().all(|f| evaluate(f, &m)));
        assert!(m.contains("d"));
    }

    #[test]
    fn detects_unsatisfiable_sets() {
        assert!(solve(&parse_all(&["a", "!a"])).is_none());
        assert!(solve(&parse_all(&["a", "!a & !b", "b"])).is_none());
        assert!(solve(&parse_all(&["(a | b) & (!a | b) & (a | !b) & (!a | !b)"])).is_none());
    }

    #[test]
    fn empty_set_is_satisfiable() {
        assert_eq!(solve(&[]), Some(Interpretation::default()));
    }
}
