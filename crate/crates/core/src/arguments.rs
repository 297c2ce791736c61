//! Supporting and undermining arguments, `Out`, the believed-premise fixed
//! point Δ and belief-set queries.
//!
//! Argument generation is done by saturation: all minimal unsatisfiable
//! subsets are computed once and every undermining argument is read off them.
//! Supporting arguments are computed per query as minimal entailing subsets.

use std::fmt;

use crate::error::{Error, Result};
use crate::formula::{AtomUniverse, Formula};
use crate::search;
use crate::{PremiseSet, PreparedTheory, TotalOrder};

/// `P ⇒ φ`: the premises `support` entail `conclusion`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportingArgument {
    pub support: PremiseSet,
    pub conclusion: Formula,
}

/// `P ⇏ φ`: believing `support` forces withdrawing the premise `victim`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnderminingArgument {
    pub support: PremiseSet,
    pub victim: usize,
}

impl UnderminingArgument {
    pub fn display<'a>(&'a self, t: &'a PreparedTheory) -> impl fmt::Display + 'a {
        Shown(move |f: &mut fmt::Formatter<'_>| {
            write!(f, "{} ⇏ {}", t.format_set(&self.support), t.id(self.victim))
        })
    }
}

impl SupportingArgument {
    pub fn display<'a>(&'a self, t: &'a PreparedTheory) -> impl fmt::Display + 'a {
        Shown(move |f: &mut fmt::Formatter<'_>| {
            write!(f, "{} ⇒ {}", t.format_set(&self.support), self.conclusion)
        })
    }
}

struct Shown<F>(F);

impl<F: Fn(&mut fmt::Formatter<'_>) -> fmt::Result> fmt::Display for Shown<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        (self.0)(f)
    }
}

/// A believed-premise set and the linear extension that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeliefState {
    pub delta: PremiseSet,
    pub order: TotalOrder,
}

/// Every minimal unsatisfiable subset of the premises, smallest first.
pub fn minimal_unsat_subsets(t: &PreparedTheory) -> Result<&[PremiseSet]> {
    let budget = t.limits().mus_budget.min(63);
    if t.len() > budget {
        return Err(Error::MusBudgetExceeded {
            size: t.len(),
            budget,
        });
    }
    Ok(t.muses.get_or_init(|| {
        let seed = t
            .maximal_consistent_patterns()
            .map(<[_]>::to_vec)
            .unwrap_or_default();
        search::minimal_bad_subsets(&t.all(), seed, |s| t.witness(s))
    }))
}

fn sorted(mut args: Vec<UnderminingArgument>) -> Vec<UnderminingArgument> {
    args.sort_by_cached_key(|a| (a.victim, a.support.iter().collect::<Vec<_>>()));
    args.dedup();
    args
}

/// One argument per MUS, against its least reliable member under
/// `order`.
pub fn undermining_args_linear(
    t: &PreparedTheory,
    order: &TotalOrder,
) -> Result<Vec<UnderminingArgument>> {
    let mut args = Vec::new();
    for m in minimal_unsat_subsets(t)? {
        let victim = t.min_under(order, m)?;
        args.push(UnderminingArgument {
            support: m.without(victim),
            victim,
        });
    }
    Ok(sorted(args))
}

/// One argument per MUS and per minimal member under the partial
/// order.
pub fn undermining_args_partial(t: &PreparedTheory) -> Result<Vec<UnderminingArgument>> {
    let mut args = Vec::new();
    for m in minimal_unsat_subsets(t)? {
        for victim in t.minimal_elements(m)?.iter() {
            args.push(UnderminingArgument {
                support: m.without(victim),
                victim,
            });
        }
    }
    Ok(sorted(args))
}

/// `Out(S)`: victims of the arguments whose support lies inside `s`.
pub fn out_set(args: &[UnderminingArgument], s: &PremiseSet) -> PremiseSet {
    args.iter()
        .filter(|a| a.support.is_subset(s))
        .map(|a| a.victim)
        .collect()
}

/// Δ by the most-reliable-first sweep: every premise is visited once and each
/// argument is inspected only when its victim is visited.
pub fn believed_premises(order: &TotalOrder, args: &[UnderminingArgument]) -> BeliefState {
    believed_premises_counted(order, args).0
}

/// [`believed_premises`] together with the number of support checks made.
pub fn believed_premises_counted(
    order: &TotalOrder,
    args: &[UnderminingArgument],
) -> (BeliefState, usize) {
    let n = order.ranking().len();
    let mut by_victim: Vec<Vec<&UnderminingArgument>> = vec![Vec::new(); n];
    for a in args {
        by_victim[a.victim].push(a);
    }
    let mut delta = PremiseSet::full(n);
    let mut steps = 0;
    for &phi in order.ranking() {
        for a in &by_victim[phi] {
            steps += 1;
            if a.support.is_subset(&delta) {
                delta.remove(phi);
                break;
            }
        }
    }
    (
        BeliefState {
            delta,
            order: order.clone(),
        },
        steps,
    )
}

/// Δ for `order` from the undermining arguments.
pub fn belief_state(t: &PreparedTheory, order: &TotalOrder) -> Result<BeliefState> {
    Ok(believed_premises(
        order,
        &undermining_args_linear(t, order)?,
    ))
}

/// Whether the belief set of `state` contains `goal`.
pub fn belief_holds(t: &PreparedTheory, state: &BeliefState, goal: &Formula) -> bool {
    t.entails(&state.delta, goal)
}

/// Every subset-minimal `P ⊆ Δ` entailing `goal`.
pub fn supports(
    t: &PreparedTheory,
    state: &BeliefState,
    goal: &Formula,
) -> Result<Vec<SupportingArgument>> {
    supports_in(t, &state.delta, goal)
}

/// Every subset-minimal `P ⊆ delta` entailing `goal`; an error unless
/// `delta` entails `goal`.
pub fn supports_in(
    t: &PreparedTheory,
    delta: &PremiseSet,
    goal: &Formula,
) -> Result<Vec<SupportingArgument>> {
    if !t.entails(delta, goal) {
        return Err(Error::NotBelieved(goal.to_string()));
    }
    Ok(minimal_supports(t, delta, goal)
        .into_iter()
        .map(|support| SupportingArgument {
            support,
            conclusion: goal.clone(),
        })
        .collect())
}

/// Minimal subsets of `within` whose formulas entail `goal`, in
/// size-then-index order.
pub(crate) fn minimal_supports(
    t: &PreparedTheory,
    within: &PremiseSet,
    goal: &Formula,
) -> Vec<PremiseSet> {
    let negated = Formula::not(goal.clone());
    let universe = AtomUniverse::of(t.formulas(within).chain([&negated]));
    if t.oracle().uses_tables(universe.len()) {
        let tables: Vec<_> = (0..t.len())
            .map(|i| {
                if within.contains(i) {
                    Some(universe.table(t.formula(i)))
                } else {
                    None
                }
            })
            .collect();
        let base = universe.table(&negated);
        search::minimal_bad_subsets(within, Vec::new(), |s| {
            let mut acc = base.clone();
            for i in s.iter() {
                acc.and_assign(tables[i].as_ref().expect("member of within"));
                if acc.is_zero() {
                    return None;
                }
            }
            let model = acc.first_one()?;
            Some(
                within
                    .iter()
                    .filter(|&i| tables[i].as_ref().is_some_and(|tb| tb.get(model)))
                    .collect(),
            )
        })
    } else {
        search::minimal_bad_subsets(within, Vec::new(), |s| {
            crate::formula::dpll_solve(t.formulas(s).chain([&negated]))
                .map(|m| t.prem_of(&m).intersection(within))
        })
    }
}

/// The belief-set pass: one scan over `args`, keeping the conclusions whose
/// support lies inside Δ.
pub fn belief_set<'a>(args: &'a [SupportingArgument], delta: &PremiseSet) -> Vec<&'a Formula> {
    belief_set_counted(args, delta).0
}

/// [`belief_set`] together with the number of arguments inspected.
pub fn belief_set_counted<'a>(
    args: &'a [SupportingArgument],
    delta: &PremiseSet,
) -> (Vec<&'a Formula>, usize) {
    let mut steps = 0;
    let kept = args
        .iter()
        .inspect(|_| steps += 1)
        .filter(|a| a.support.is_subset(delta))
        .map(|a| &a.conclusion)
        .collect();
    (kept, steps)
}

/// `{φ} ⇒ φ` for every premise.
pub fn premise_arguments(t: &PreparedTheory) -> Vec<SupportingArgument> {
    (0..t.len())
        .map(|i| SupportingArgument {
            support: PremiseSet::new().with(i),
            conclusion: t.formula(i).clone(),
        })
        .collect()
}

/// Saturation log for one linear extension: the premise arguments, then each
/// undermining argument followed by the Δ it leads to, then the supports of
/// `goal` if it is believed.
pub fn trace(
    t: &PreparedTheory,
    order: &TotalOrder,
    goal: Option<&Formula>,
) -> Result<Vec<String>> {
    let mut lines: Vec<String> = premise_arguments(t)
        .iter()
        .map(|a| a.display(t).to_string())
        .collect();
    let args = undermining_args_linear(t, order)?;
    // Arguments are added in sweep order so each Δ is an actual step.
    let pos = order.positions();
    let mut staged: Vec<&UnderminingArgument> = args.iter().collect();
    staged.sort_by_key(|a| pos[a.victim]);
    let mut added = Vec::new();
    for a in staged {
        added.push(a.clone());
        lines.push(a.display(t).to_string());
        let state = believed_premises(order, &added);
        lines.push(format!("Δ = {}", t.format_set(&state.delta)));
    }
    if let Some(goal) = goal {
        let state = believed_premises(order, &args);
        match supports(t, &state, goal) {
            Ok(sup) => lines.extend(sup.iter().map(|a| a.display(t).to_string())),
            Err(Error::NotBelieved(_)) => lines.push(format!("not believed: {goal}")),
            Err(e) => return Err(e),
        }
    }
    Ok(lines)
}
