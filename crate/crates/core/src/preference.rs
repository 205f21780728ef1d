//! Attack-reverse preference adjustment, the binary intra-agent order and the
//! trust-derived inter-agent order.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::af::{AfError, ArgumentId, ArgumentationFrame, Attack};
use crate::epistemic::{AgentId, EpistemicError, MmaState};
use crate::violation::{Condition, Violation};

/// A strict preference `lower < higher` over arguments.
pub trait StrictPreference {
    fn is_less(&self, lower: &ArgumentId, higher: &ArgumentId) -> bool;
}

/// An explicit strict order. Reflexive pairs are implicit and only the strict
/// part is stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreferenceOrder {
    strict: BTreeSet<(ArgumentId, ArgumentId)>,
}

impl PreferenceOrder {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_strict(pairs: impl IntoIterator<Item = (ArgumentId, ArgumentId)>) -> Self {
        PreferenceOrder {
            strict: pairs.into_iter().filter(|(a, b)| a != b).collect(),
        }
    }

    /// Takes the transitive closure of a `≤` relation and keeps the strict
    /// part: `a < b` iff `a ≤ b` and not `b ≤ a`.
    pub fn from_leq(pairs: impl IntoIterator<Item = (ArgumentId, ArgumentId)>) -> Self {
        let mut leq: BTreeSet<(ArgumentId, ArgumentId)> = pairs.into_iter().collect();
        loop {
            let extra: Vec<_> = leq
                .iter()
                .flat_map(|(a, b)| {
                    leq.iter()
                        .filter(move |(c, _)| c == b)
                        .map(move |(_, d)| (a.clone(), d.clone()))
                })
                .filter(|p| !leq.contains(p))
                .collect();
            if extra.is_empty() {
                break;
            }
            leq.extend(extra);
        }
        let strict = leq
            .iter()
            .filter(|(a, b)| a != b && !leq.contains(&(b.clone(), a.clone())))
            .cloned()
            .collect();
        PreferenceOrder { strict }
    }

    pub fn strict_pairs(&self) -> &BTreeSet<(ArgumentId, ArgumentId)> {
        &self.strict
    }

    pub fn is_empty(&self) -> bool {
        self.strict.is_empty()
    }
}

impl StrictPreference for PreferenceOrder {
    fn is_less(&self, lower: &ArgumentId, higher: &ArgumentId) -> bool {
        self.strict.contains(&(lower.clone(), higher.clone()))
    }
}

/// Replaces each attack from a strictly less preferred argument by the
/// reversed attack; all other attacks are kept. Arguments are untouched.
pub fn adjust<P: StrictPreference + ?Sized>(
    f: &ArgumentationFrame,
    p: &P,
) -> Result<ArgumentationFrame, AfError> {
    f.require_dung()?;
    let attacks: BTreeSet<Attack> = f
        .attacks()
        .iter()
        .map(|(a, b)| {
            if p.is_less(a, b) {
                (b.clone(), a.clone())
            } else {
                (a.clone(), b.clone())
            }
        })
        .collect();
    Ok(f.with_attacks(attacks))
}

/// Element of the intra-agent order domain: an argument or one of the two
/// distinguished tiers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum OrderElement {
    Bottom,
    Arg(ArgumentId),
    Top,
}

/// Binary intra-agent preference: arguments of `universe` sit either at the
/// top tier (`factual`) or at the bottom tier.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntraPreference {
    factual: BTreeSet<ArgumentId>,
    universe: BTreeSet<ArgumentId>,
}

impl IntraPreference {
    /// Fails with the arguments of `factual` that lie outside `universe`.
    pub fn new(
        factual: BTreeSet<ArgumentId>,
        universe: BTreeSet<ArgumentId>,
    ) -> Result<Self, Vec<ArgumentId>> {
        let outside: Vec<ArgumentId> = factual.difference(&universe).cloned().collect();
        if outside.is_empty() {
            Ok(IntraPreference { factual, universe })
        } else {
            Err(outside)
        }
    }

    /// Reads a binary order from an explicit `≤` relation over
    /// `universe ∪ {⊥, ⊤}`, checking the domain, the top/bottom pairs and the
    /// binary split.
    pub fn from_relation(
        universe: BTreeSet<ArgumentId>,
        leq: &BTreeSet<(OrderElement, OrderElement)>,
    ) -> Result<Self, Vec<Violation>> {
        use OrderElement::{Arg, Bottom, Top};
        let mut violations = Vec::new();
        let in_domain = |x: &OrderElement| match x {
            Arg(a) => universe.contains(a),
            _ => true,
        };
        for (x, y) in leq {
            if !in_domain(x) || !in_domain(y) {
                violations.push(Violation::new(
                    Condition::PartialOrder1,
                    vec![format!("{x:?}"), format!("{y:?}")],
                    "pair outside the argument domain",
                ));
            }
        }
        let has = |x: OrderElement, y: OrderElement| leq.contains(&(x, y));
        if !has(Bottom, Top) || has(Top, Bottom) {
            violations.push(Violation::new(
                Condition::TopAndBottom,
                vec![],
                "bottom must lie strictly below top",
            ));
        }
        let mut factual = BTreeSet::new();
        for a in &universe {
            if !has(Bottom, Arg(a.clone())) || !has(Arg(a.clone()), Top) {
                violations.push(Violation::new(
                    Condition::TopAndBottom,
                    vec![a.to_string()],
                    "argument not bounded by bottom and top",
                ));
            }
            let top = has(Top, Arg(a.clone()));
            let bottom = has(Arg(a.clone()), Bottom);
            if top == bottom {
                violations.push(Violation::new(
                    Condition::Binary,
                    vec![a.to_string()],
                    "argument must be equivalent to exactly one of top and bottom",
                ));
            }
            if top {
                factual.insert(a.clone());
            }
        }
        if violations.is_empty() {
            Ok(IntraPreference { factual, universe })
        } else {
            Err(violations)
        }
    }

    pub fn factual(&self) -> &BTreeSet<ArgumentId> {
        &self.factual
    }

    pub fn universe(&self) -> &BTreeSet<ArgumentId> {
        &self.universe
    }

    pub fn is_factual(&self, a: &ArgumentId) -> bool {
        self.factual.contains(a)
    }

    /// The explicit strict order: every bottom-tier argument below every
    /// top-tier argument.
    pub fn to_order(&self) -> PreferenceOrder {
        let lower = self.universe.difference(&self.factual);
        PreferenceOrder::from_strict(
            lower.flat_map(|b| self.factual.iter().map(move |a| (b.clone(), a.clone()))),
        )
    }
}

impl StrictPreference for IntraPreference {
    fn is_less(&self, lower: &ArgumentId, higher: &ArgumentId) -> bool {
        self.universe.contains(lower)
            && !self.factual.contains(lower)
            && self.factual.contains(higher)
    }
}

/// Free-function form of [`IntraPreference::to_order`].
pub fn to_order(p: &IntraPreference) -> PreferenceOrder {
    p.to_order()
}

/// Trust-derived order of one agent over mutually attacking public arguments
/// owned by different agents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterPreference {
    pub owner: AgentId,
    pub leq: BTreeSet<(ArgumentId, ArgumentId)>,
}

impl InterPreference {
    /// Strict part of the pairwise relation, without transitive closure.
    pub fn to_order(&self) -> PreferenceOrder {
        PreferenceOrder::from_strict(
            self.leq
                .iter()
                .filter(|(a, b)| !self.leq.contains(&(b.clone(), a.clone())))
                .cloned(),
        )
    }
}

impl StrictPreference for InterPreference {
    fn is_less(&self, lower: &ArgumentId, higher: &ArgumentId) -> bool {
        lower != higher
            && self.leq.contains(&(lower.clone(), higher.clone()))
            && !self.leq.contains(&(higher.clone(), lower.clone()))
    }
}

/// `(a1, a2)` is in the order of `e` iff `a1` and `a2` attack each other
/// publicly, belong to the scopes of `e1` and `e2`, are known to `e`, neither
/// is factual to `e`, and `e` trusts `e1` no more than `e2`.
pub fn derive_inter(m: &MmaState, e: &AgentId) -> Result<InterPreference, EpistemicError> {
    let aware = m.aware_of(e)?;
    let own = m.intra(e, e)?;
    let public = &m.public;
    let mut leq = BTreeSet::new();
    for (a1, a2) in public.attacks() {
        if a1 == a2 || !public.has_attack(a2, a1) {
            continue;
        }
        if !aware.contains_arg(a1) || !aware.contains_arg(a2) {
            continue;
        }
        if own.is_factual(a1) || own.is_factual(a2) {
            continue;
        }
        let (Some(e1), Some(e2)) = (m.owner_of(a1), m.owner_of(a2)) else {
            continue;
        };
        if m.trust_value(e, e1)? <= m.trust_value(e, e2)? {
            leq.insert((a1.clone(), a2.clone()));
        }
    }
    Ok(InterPreference {
        owner: e.clone(),
        leq,
    })
}
