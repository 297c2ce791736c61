//! Preferential model semantics: the preference relation between
//! interpretations, preferred models, conditionals and revision.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::extensions::skeptical_entails;
use crate::formula::{all_interpretations, Formula, Interpretation};
use crate::{Premise, PremiseSet, PreparedTheory, ReliabilityTheory};

/// Why `more` is preferred over `less`: each premise only `less` satisfies is
/// paired with a strictly more reliable premise only `more` satisfies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferenceWitness {
    pub less: Interpretation,
    pub more: Interpretation,
    /// `(φ, ψ)` with `φ ≺ ψ`, as premise indices.
    pub pairing: Vec<(usize, usize)>,
}

/// Premises satisfied by `m`.
pub fn prem_of(t: &PreparedTheory, m: &Interpretation) -> PremiseSet {
    t.prem_of(m)
}

/// `m ⊑ n` on premise patterns.
pub(crate) fn pattern_below(t: &PreparedTheory, m: &PremiseSet, n: &PremiseSet) -> bool {
    pattern_pairing(t, m, n).is_some()
}

fn pattern_pairing(
    t: &PreparedTheory,
    m: &PremiseSet,
    n: &PremiseSet,
) -> Option<Vec<(usize, usize)>> {
    if m == n {
        return None;
    }
    let only_n = n.difference(m);
    m.difference(n)
        .iter()
        .map(|phi| {
            t.more_reliable_than(phi)
                .intersection(&only_n)
                .iter()
                .next()
                .map(|psi| (phi, psi))
        })
        .collect()
}

/// `m ⊑ n`: `n` is preferred over `m`.
pub fn prefers(t: &PreparedTheory, m: &Interpretation, n: &Interpretation) -> bool {
    pattern_below(t, &t.prem_of(m), &t.prem_of(n))
}

/// The pairing behind `m ⊑ n`, if it holds.
pub fn preference_witness(
    t: &PreparedTheory,
    m: &Interpretation,
    n: &Interpretation,
) -> Option<PreferenceWitness> {
    pattern_pairing(t, &t.prem_of(m), &t.prem_of(n)).map(|pairing| PreferenceWitness {
        less: m.clone(),
        more: n.clone(),
        pairing,
    })
}

/// The ⊑-maximal interpretations over the atoms of the premises.
pub fn preferred_models(t: &PreparedTheory) -> Result<Vec<Interpretation>> {
    preferred_models_over(t, &BTreeSet::new())
}

/// As [`preferred_models`], with `extra` atoms added to the universe.
pub fn preferred_models_over(
    t: &PreparedTheory,
    extra: &BTreeSet<String>,
) -> Result<Vec<Interpretation>> {
    let mut atoms = extra.clone();
    for p in t.premises() {
        p.formula.collect_atoms(&mut atoms);
    }
    let all = all_interpretations(&atoms, t.limits().max_atoms)?;
    let patterns: Vec<PremiseSet> = all.iter().map(|m| t.prem_of(m)).collect();
    let distinct: BTreeSet<&PremiseSet> = patterns.iter().collect();
    let maximal: BTreeSet<&PremiseSet> = distinct
        .iter()
        .copied()
        .filter(|m| !distinct.iter().any(|n| pattern_below(t, m, n)))
        .collect();
    Ok(all
        .into_iter()
        .zip(&patterns)
        .filter(|(_, p)| maximal.contains(p))
        .map(|(m, _)| m)
        .collect())
}

/// `α |~ β`: β holds skeptically once α is added as the most reliable
/// premise. An unsatisfiable α has no models and entails every β.
pub fn conditional(t: &PreparedTheory, alpha: &Formula, beta: &Formula) -> Result<bool> {
    if !t.oracle().is_consistent([alpha]) {
        return Ok(true);
    }
    let revised = revise(t, alpha).prepare(t.limits())?;
    skeptical_entails(&revised, beta)
}

/// `Σ \ α` plus α above every remaining premise. Premises whose formula is
/// syntactically α are dropped along with their order pairs; the new premise
/// gets the first free id `__revision_k`.
pub fn revise(t: &PreparedTheory, alpha: &Formula) -> ReliabilityTheory {
    let kept: Vec<Premise> = t
        .premises()
        .iter()
        .filter(|p| &p.formula != alpha)
        .cloned()
        .collect();
    let kept_ids: BTreeSet<&str> = kept.iter().map(|p| p.id.as_str()).collect();
    let id = (0..)
        .map(|k| format!("__revision_{k}"))
        .find(|id| !kept_ids.contains(id.as_str()))
        .expect("unbounded");
    let mut order: BTreeSet<(String, String)> = t
        .closed_order()
        .into_iter()
        .filter(|(x, y)| kept_ids.contains(x.as_str()) && kept_ids.contains(y.as_str()))
        .collect();
    for p in &kept {
        order.insert((p.id.clone(), id.clone()));
    }
    let mut premises = kept;
    premises.push(Premise {
        id,
        formula: alpha.clone(),
    });
    ReliabilityTheory { premises, order }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extensions::all_extensions;
    use crate::formula::parse_formula;
    use crate::Limits;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn prepare(t: ReliabilityTheory) -> PreparedTheory {
        t.prepare(Limits::default()).unwrap()
    }

    fn example1() -> PreparedTheory {
        prepare(
            ReliabilityTheory::new()
                .with("p1", "phi")
                .with("p2", "phi -> psi")
                .with("p3", "!psi")
                .with("p4", "alpha")
                .with_order("p3", "p1")
                .with_order("p3", "p2"),
        )
    }

    fn expansion() -> PreparedTheory {
        prepare(
            ReliabilityTheory::new()
                .with("1", "a & b")
                .with("2", "!a & b")
                .with("3", "a & !b")
                .with("4", "!a & !b")
                .with_order("3", "2")
                .with_order("4", "1"),
        )
    }

    #[test]
    fn prem_of_examples() {
        let t = example1();
        let m = Interpretation::new(["phi", "psi", "alpha"]);
        assert_eq!(t.ids(&prem_of(&t, &m)), ["p1", "p2", "p4"]);
        let abg = prepare(ReliabilityTheory::new().with("x", "a").with("y", "b"));
        assert!(prem_of(&abg, &Interpretation::default()).is_empty());
        assert_eq!(prem_of(&abg, &Interpretation::new(["a", "b"])), abg.all());
    }

    #[test]
    fn preference_example() {
        let t = prepare(
            ReliabilityTheory::new()
                .with("alpha", "alpha")
                .with("beta", "beta")
                .with("gamma", "gamma")
                .with_order("gamma", "alpha"),
        );
        let m = Interpretation::new(["alpha", "beta"]);
        let n = Interpretation::new(["beta", "gamma"]);
        assert!(prefers(&t, &n, &m));
        assert!(!prefers(&t, &m, &n));
        assert!(!prefers(&t, &m, &m));
        let w = preference_witness(&t, &n, &m).unwrap();
        assert_eq!(
            w.pairing,
            [(t.index_of("gamma").unwrap(), t.index_of("alpha").unwrap())]
        );

        let fewer = Interpretation::new(["beta"]);
        assert!(prefers(&t, &fewer, &m));
    }

    #[test]
    fn preferred_models_match_extensions() {
        let t = example1();
        let models = preferred_models(&t).unwrap();
        let r = all_extensions(&t).unwrap();
        let mut atoms = BTreeSet::new();
        for prem in t.premises() {
            prem.formula.collect_atoms(&mut atoms);
        }
        let expected: Vec<Interpretation> = all_interpretations(&atoms, 20)
            .unwrap()
            .into_iter()
            .filter(|m| r.members.iter().any(|d| d.is_subset(&t.prem_of(m))))
            .collect();
        assert_eq!(models, expected);
        assert_eq!(models, vec![Interpretation::new(["alpha", "phi", "psi"])]);

        let empty = prepare(ReliabilityTheory::new());
        assert_eq!(
            preferred_models(&empty).unwrap(),
            vec![Interpretation::default()]
        );
    }

    #[test]
    fn conditional_examples() {
        let t = prepare(ReliabilityTheory::new().with("r", "phi -> psi"));
        assert!(conditional(&t, &p("phi"), &p("psi")).unwrap());
        assert!(conditional(&t, &p("a"), &p("a")).unwrap());
        let empty = prepare(ReliabilityTheory::new());
        assert!(!conditional(&empty, &p("a"), &p("b")).unwrap());
        assert!(conditional(&empty, &p("a & !a"), &p("b")).unwrap());
    }

    #[test]
    fn revision_examples() {
        let t = expansion();
        let alpha = p("a");
        let revised = prepare(revise(&t, &alpha));
        assert!(skeptical_entails(&revised, &alpha).unwrap());

        let t = example1();
        let revised = revise(&t, &p("!psi"));
        assert_eq!(revised.premises.len(), 4);
        let last = revised.premises.last().unwrap();
        assert_eq!(last.id, "__revision_0");
        assert_eq!(last.formula, p("!psi"));
        for id in ["p1", "p2", "p4"] {
            assert!(revised.order.contains(&(id.to_string(), last.id.clone())));
        }
        assert!(!revised.order.iter().any(|(x, y)| x == "p3" || y == "p3"));

        let empty = prepare(ReliabilityTheory::new());
        let single = revise(&empty, &p("a"));
        assert_eq!(single.premises.len(), 1);
        assert!(single.order.is_empty());
    }

    #[test]
    fn revision_is_idempotent() {
        let t = example1();
        let alpha = p("gamma | psi");
        let once = revise(&t, &alpha);
        let twice = revise(&prepare(once.clone()), &alpha);
        assert_eq!(once, twice);
    }

    #[test]
    fn naive_expansion_does_not_believe_alpha() {
        let t = expansion();
        let expanded = prepare(
            ReliabilityTheory {
                premises: t.premises().to_vec(),
                order: t.closed_order(),
            }
            .with("5", "a"),
        );
        assert!(!skeptical_entails(&expanded, &p("a")).unwrap());
    }
}
