//! The abstract argumentation view: arguments, attacks, grounded and stable
//! extensions, and the check that discards extensions whose withdrawals
//! cannot be ordered consistently with the reliability relation.

use std::collections::BTreeMap;

use sha2::{Digest, Sha256};

use crate::arguments::{
    premise_arguments, undermining_args_linear, undermining_args_partial, SupportingArgument,
    UnderminingArgument,
};
use crate::error::{Error, Result};
use crate::extensions::{acyclic_choice, add_below};
use crate::formula::Formula;
use crate::{PremiseSet, PreparedTheory, TotalOrder};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Argument {
    Supporting {
        support: PremiseSet,
        conclusion: Formula,
    },
    Undermining {
        support: PremiseSet,
        victim: usize,
    },
}

impl Argument {
    pub fn support(&self) -> &PremiseSet {
        match self {
            Argument::Supporting { support, .. } | Argument::Undermining { support, .. } => support,
        }
    }

    pub fn victim(&self) -> Option<usize> {
        match self {
            Argument::Undermining { victim, .. } => Some(*victim),
            Argument::Supporting { .. } => None,
        }
    }

    /// `s_` or `u_` followed by 12 hex digits of a SHA-256 over the sorted
    /// support ids and the conclusion or victim.
    pub fn name(&self, t: &PreparedTheory) -> String {
        let (prefix, tail) = match self {
            Argument::Supporting { conclusion, .. } => ("s", conclusion.to_string()),
            Argument::Undermining { victim, .. } => ("u", t.id(*victim).to_string()),
        };
        let canonical = format!("{}|{}", t.ids(self.support()).join(","), tail);
        let digest = Sha256::digest(canonical.as_bytes());
        let hex: String = digest.iter().take(6).map(|b| format!("{b:02x}")).collect();
        format!("{prefix}_{hex}")
    }

    pub fn describe(&self, t: &PreparedTheory) -> String {
        match self {
            Argument::Supporting {
                support,
                conclusion,
            } => {
                format!("{} ⇒ {}", t.format_set(support), conclusion)
            }
            Argument::Undermining { support, victim } => {
                format!("{} ⇏ {}", t.format_set(support), t.id(*victim))
            }
        }
    }
}

impl From<SupportingArgument> for Argument {
    fn from(a: SupportingArgument) -> Self {
        Argument::Supporting {
            support: a.support,
            conclusion: a.conclusion,
        }
    }
}

impl From<UnderminingArgument> for Argument {
    fn from(a: UnderminingArgument) -> Self {
        Argument::Undermining {
            support: a.support,
            victim: a.victim,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArgumentationFramework {
    pub arguments: Vec<Argument>,
    /// `(a, b)`: argument `a` attacks argument `b`, as indices.
    pub attacks: Vec<(usize, usize)>,
    attackers: Vec<Vec<usize>>,
    attacked: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtensionStatus {
    Stable,
    Grounded,
}

/// A set of argument indices of one framework.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArgExtension {
    pub members: Vec<usize>,
    pub status: ExtensionStatus,
}

/// Builds the framework: `P ⇏ φ` attacks every argument with φ in its
/// support. Arguments are deduplicated and sorted.
pub fn build_af(args: impl IntoIterator<Item = Argument>) -> ArgumentationFramework {
    let mut arguments: Vec<Argument> = args.into_iter().collect();
    arguments.sort();
    arguments.dedup();
    let n = arguments.len();
    let mut attacks = Vec::new();
    let mut attackers = vec![Vec::new(); n];
    let mut attacked = vec![Vec::new(); n];
    for (a, arg) in arguments.iter().enumerate() {
        let Some(victim) = arg.victim() else {
            continue;
        };
        for (b, target) in arguments.iter().enumerate() {
            if target.support().contains(victim) {
                attacks.push((a, b));
                attackers[b].push(a);
                attacked[a].push(b);
            }
        }
    }
    ArgumentationFramework {
        arguments,
        attacks,
        attackers,
        attacked,
    }
}

/// Premise arguments plus the undermining arguments of `order`.
pub fn linear_framework(t: &PreparedTheory, order: &TotalOrder) -> Result<ArgumentationFramework> {
    let under = undermining_args_linear(t, order)?;
    Ok(build_af(
        premise_arguments(t)
            .into_iter()
            .map(Argument::from)
            .chain(under.into_iter().map(Argument::from)),
    ))
}

/// Premise arguments plus the partial-order undermining arguments.
pub fn partial_framework(t: &PreparedTheory) -> Result<ArgumentationFramework> {
    let under = undermining_args_partial(t)?;
    Ok(build_af(
        premise_arguments(t)
            .into_iter()
            .map(Argument::from)
            .chain(under.into_iter().map(Argument::from)),
    ))
}

impl ArgumentationFramework {
    pub fn len(&self) -> usize {
        self.arguments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arguments.is_empty()
    }

    pub fn attackers(&self, b: usize) -> &[usize] {
        &self.attackers[b]
    }

    pub fn attacks(&self, a: usize, b: usize) -> bool {
        self.attacked[a].contains(&b)
    }

    /// Conflict-free and attacking every outside argument.
    pub fn is_stable(&self, members: &[usize]) -> bool {
        let mut inside = vec![false; self.len()];
        for &m in members {
            inside[m] = true;
        }
        (0..self.len()).all(|b| {
            let hit = self.attackers[b].iter().any(|&a| inside[a]);
            if inside[b] {
                !hit
            } else {
                hit
            }
        })
    }

    /// The `arg(..).` / `att(..).` text export, each block sorted.
    pub fn export(&self, t: &PreparedTheory) -> String {
        let names: Vec<String> = self.arguments.iter().map(|a| a.name(t)).collect();
        let mut args: Vec<String> = names.iter().map(|n| format!("arg({n}).")).collect();
        args.sort();
        let mut atts: Vec<String> = self
            .attacks
            .iter()
            .map(|&(a, b)| format!("att({},{}).", names[a], names[b]))
            .collect();
        atts.sort();
        let mut out = String::new();
        for line in args.iter().chain(&atts) {
            out.push_str(line);
            out.push('\n');
        }
        out
    }
}

/// Least fixed point of the defense operator.
pub fn grounded_extension(af: &ArgumentationFramework) -> ArgExtension {
    let n = af.len();
    let mut inside = vec![false; n];
    loop {
        // Defeated: attacked by a current member.
        let defeated: Vec<bool> = (0..n)
            .map(|b| af.attackers[b].iter().any(|&a| inside[a]))
            .collect();
        let next: Vec<bool> = (0..n)
            .map(|b| af.attackers[b].iter().all(|&a| defeated[a]))
            .collect();
        if next == inside {
            break;
        }
        inside = next;
    }
    ArgExtension {
        members: (0..n).filter(|&i| inside[i]).collect(),
        status: ExtensionStatus::Grounded,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Label {
    In,
    Out,
    Open,
}

/// All stable extensions, by labelling with backtracking.
pub fn stable_extensions(af: &ArgumentationFramework, budget: usize) -> Result<Vec<ArgExtension>> {
    if af.len() > budget {
        return Err(Error::ArgumentBudgetExceeded {
            count: af.len(),
            budget,
        });
    }
    let mut out = Vec::new();
    label_search(af, vec![Label::Open; af.len()], &mut out);
    out.sort_by(|a, b| a.members.cmp(&b.members));
    Ok(out)
}

fn label_search(af: &ArgumentationFramework, mut labels: Vec<Label>, out: &mut Vec<ArgExtension>) {
    if !propagate(af, &mut labels) {
        return;
    }
    let Some(pick) = labels.iter().position(|l| *l == Label::Open) else {
        let members: Vec<usize> = (0..af.len()).filter(|&i| labels[i] == Label::In).collect();
        if af.is_stable(&members) {
            out.push(ArgExtension {
                members,
                status: ExtensionStatus::Stable,
            });
        }
        return;
    };
    for choice in [Label::In, Label::Out] {
        let mut next = labels.clone();
        next[pick] = choice;
        label_search(af, next, out);
    }
}

// Forces labels implied by stability; false on a contradiction.
fn propagate(af: &ArgumentationFramework, labels: &mut [Label]) -> bool {
    loop {
        let mut changed = false;
        for b in 0..af.len() {
            let attackers = &af.attackers[b];
            let any_in = attackers.iter().any(|&a| labels[a] == Label::In);
            let open: Vec<usize> = attackers
                .iter()
                .copied()
                .filter(|&a| labels[a] == Label::Open)
                .collect();
            match labels[b] {
                Label::In => {
                    if any_in {
                        return false;
                    }
                    for a in open {
                        labels[a] = Label::Out;
                        changed = true;
                    }
                    for &c in &af.attacked[b] {
                        match labels[c] {
                            Label::In => return false,
                            Label::Open => {
                                labels[c] = Label::Out;
                                changed = true;
                            }
                            Label::Out => {}
                        }
                    }
                }
                Label::Out => {
                    if !any_in {
                        match open.len() {
                            0 => return false,
                            1 => {
                                labels[open[0]] = Label::In;
                                changed = true;
                            }
                            _ => {}
                        }
                    }
                }
                Label::Open => {
                    if any_in {
                        labels[b] = Label::Out;
                        changed = true;
                    } else if open.is_empty() {
                        labels[b] = Label::In;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

/// Undermining arguments of `ext`, grouped by victim.
fn withdrawals(
    af: &ArgumentationFramework,
    ext: &ArgExtension,
) -> BTreeMap<usize, Vec<PremiseSet>> {
    let mut by_victim: BTreeMap<usize, Vec<PremiseSet>> = BTreeMap::new();
    for &m in &ext.members {
        if let Argument::Undermining { support, victim } = &af.arguments[m] {
            by_victim.entry(*victim).or_default().push(support.clone());
        }
    }
    by_victim
}

/// Whether `ext` is discarded: no choice of one of its undermining arguments
/// per withdrawn premise, each putting its victim below its support, keeps
/// the reliability order acyclic. When every withdrawn premise has a single
/// undermining argument in `ext` this is exactly [`induced_order_is_cyclic`].
pub fn is_ignored(t: &PreparedTheory, af: &ArgumentationFramework, ext: &ArgExtension) -> bool {
    let mut options: Vec<(usize, Vec<PremiseSet>)> = withdrawals(af, ext).into_iter().collect();
    options.sort_by_key(|(_, s)| s.len());
    let above: Vec<PremiseSet> = (0..t.len())
        .map(|x| t.more_reliable_than(x).clone())
        .collect();
    !acyclic_choice(&options, above)
}

/// The literal check: ≺ plus `φ ≺ ψ` for every `P ⇏ φ` in `ext` and `ψ ∈ P`,
/// closed transitively, contains a cycle.
pub fn induced_order_is_cyclic(
    t: &PreparedTheory,
    af: &ArgumentationFramework,
    ext: &ArgExtension,
) -> bool {
    let mut above: Vec<PremiseSet> = (0..t.len())
        .map(|x| t.more_reliable_than(x).clone())
        .collect();
    for (victim, supports) in withdrawals(af, ext) {
        for s in supports {
            match add_below(&above, victim, &s) {
                Some(next) => above = next,
                None => return true,
            }
        }
    }
    false
}

/// Δ of a non-ignored extension: Σ minus the victims of its undermining
/// arguments.
pub fn af_belief_state(
    t: &PreparedTheory,
    af: &ArgumentationFramework,
    ext: &ArgExtension,
) -> Result<PremiseSet> {
    if is_ignored(t, af, ext) {
        return Err(Error::IgnoredExtension);
    }
    Ok(victims(t, af, ext))
}

fn victims(t: &PreparedTheory, af: &ArgumentationFramework, ext: &ArgExtension) -> PremiseSet {
    let out: PremiseSet = ext
        .members
        .iter()
        .filter_map(|&m| af.arguments[m].victim())
        .collect();
    t.all().difference(&out)
}

/// One stable extension of the partial-order framework with its Δ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule4Outcome {
    pub extension: ArgExtension,
    pub delta: PremiseSet,
    pub ignored: bool,
}

/// Every stable extension of the partial-order framework, with Δ and the ignored
/// flag.
pub fn rule4_outcomes(t: &PreparedTheory) -> Result<(ArgumentationFramework, Vec<Rule4Outcome>)> {
    let af = partial_framework(t)?;
    let outcomes = stable_extensions(&af, t.limits().max_arguments)?
        .into_iter()
        .map(|ext| Rule4Outcome {
            delta: victims(t, &af, &ext),
            ignored: is_ignored(t, &af, &ext),
            extension: ext,
        })
        .collect();
    Ok((af, outcomes))
}
