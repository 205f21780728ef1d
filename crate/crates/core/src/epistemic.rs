//! The manipulable multi-agent state, its validation, perceived (opponent
//! model) frames and the trust-neutral / trust-adjusted semantics.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::af::{
    self, AfError, ArgumentId, ArgumentationFrame, ExtensionSet, FrameKind, SemanticsKind,
};
use crate::preference::{self, IntraPreference};
use crate::violation::{Condition, Violation};

/// Identifier of an agent, e.g. `e1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AgentId(String);

impl AgentId {
    pub fn new(id: impl Into<String>) -> Self {
        AgentId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for AgentId {
    fn from(s: &str) -> Self {
        AgentId(s.to_owned())
    }
}

impl From<String> for AgentId {
    fn from(s: String) -> Self {
        AgentId(s)
    }
}

impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Agent-to-agent trust. Larger means more trusted.
pub type Trust = i64;

/// Ordered `(viewer, subject)` pair.
pub type AgentPair = (AgentId, AgentId);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EpistemicError {
    #[error("unknown agent `{0}`")]
    UnknownAgent(AgentId),
    #[error("no semantics recorded for ({0}, {1})")]
    MissingSemantics(AgentId, AgentId),
    #[error("no trust value recorded for ({0}, {1})")]
    MissingTrust(AgentId, AgentId),
    #[error("factual arguments of ({0}, {1}) outside the viewer's awareness: {2:?}")]
    FactualOutsideAwareness(AgentId, AgentId, Vec<ArgumentId>),
    #[error("opponent model of {1} held by {0} violates the epistemic bounds")]
    OmegaOutOfBounds(AgentId, AgentId),
    #[error(transparent)]
    Frame(#[from] AfError),
}

/// A snapshot of the multi-agent argumentation.
///
/// `factual` entries absent from the map stand for the all-bottom order.
/// `omega` holds optional opponent models; absent pairs use the lower
/// epistemic bound.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MmaState {
    pub global: ArgumentationFrame,
    pub public: ArgumentationFrame,
    pub agents: BTreeSet<AgentId>,
    pub scope: BTreeMap<AgentId, ArgumentationFrame>,
    pub aware: BTreeMap<AgentId, ArgumentationFrame>,
    pub sem: BTreeMap<AgentPair, SemanticsKind>,
    pub factual: BTreeMap<AgentPair, BTreeSet<ArgumentId>>,
    pub trust: BTreeMap<AgentPair, Trust>,
    pub omega: BTreeMap<AgentPair, ArgumentationFrame>,
}

/// `viewer`'s model of `subject`'s local argumentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerceivedFrame {
    pub viewer: AgentId,
    pub subject: AgentId,
    pub frame: ArgumentationFrame,
}

fn pair(v: &AgentId, s: &AgentId) -> AgentPair {
    (v.clone(), s.clone())
}

impl MmaState {
    fn require_agent(&self, e: &AgentId) -> Result<(), EpistemicError> {
        if self.agents.contains(e) {
            Ok(())
        } else {
            Err(EpistemicError::UnknownAgent(e.clone()))
        }
    }

    pub fn scope_of(&self, e: &AgentId) -> Result<&ArgumentationFrame, EpistemicError> {
        self.require_agent(e)?;
        self.scope
            .get(e)
            .ok_or_else(|| EpistemicError::UnknownAgent(e.clone()))
    }

    pub fn aware_of(&self, e: &AgentId) -> Result<&ArgumentationFrame, EpistemicError> {
        self.require_agent(e)?;
        self.aware
            .get(e)
            .ok_or_else(|| EpistemicError::UnknownAgent(e.clone()))
    }

    pub fn semantics_of(
        &self,
        viewer: &AgentId,
        subject: &AgentId,
    ) -> Result<SemanticsKind, EpistemicError> {
        self.require_agent(viewer)?;
        self.require_agent(subject)?;
        self.sem
            .get(&pair(viewer, subject))
            .copied()
            .ok_or_else(|| EpistemicError::MissingSemantics(viewer.clone(), subject.clone()))
    }

    pub fn trust_value(
        &self,
        viewer: &AgentId,
        subject: &AgentId,
    ) -> Result<Trust, EpistemicError> {
        self.require_agent(viewer)?;
        self.require_agent(subject)?;
        self.trust
            .get(&pair(viewer, subject))
            .copied()
            .ok_or_else(|| EpistemicError::MissingTrust(viewer.clone(), subject.clone()))
    }

    /// Arguments `viewer` takes as factual when modelling `subject`.
    pub fn factual_of(&self, viewer: &AgentId, subject: &AgentId) -> BTreeSet<ArgumentId> {
        self.factual
            .get(&pair(viewer, subject))
            .cloned()
            .unwrap_or_default()
    }

    /// The binary intra-agent order `viewer` applies to `subject`, over the
    /// arguments `viewer` is aware of.
    pub fn intra(
        &self,
        viewer: &AgentId,
        subject: &AgentId,
    ) -> Result<IntraPreference, EpistemicError> {
        self.require_agent(subject)?;
        let universe = self.aware_of(viewer)?.args().clone();
        IntraPreference::new(self.factual_of(viewer, subject), universe).map_err(|outside| {
            EpistemicError::FactualOutsideAwareness(viewer.clone(), subject.clone(), outside)
        })
    }

    /// The agent whose scope holds `a`, if any.
    pub fn owner_of(&self, a: &ArgumentId) -> Option<&AgentId> {
        self.scope
            .iter()
            .find(|(_, f)| f.contains_arg(a))
            .map(|(e, _)| e)
    }

    fn pairs(&self) -> impl Iterator<Item = (&AgentId, &AgentId)> {
        self.agents
            .iter()
            .flat_map(move |v| self.agents.iter().map(move |s| (v, s)))
    }

    /// Lower epistemic bound: the public frame plus the part of `subject`'s
    /// scope that `viewer` is aware of.
    pub fn omega_lower_bound(
        &self,
        viewer: &AgentId,
        subject: &AgentId,
    ) -> Result<ArgumentationFrame, EpistemicError> {
        let shared = self.aware_of(viewer)?.intersection(self.scope_of(subject)?);
        Ok(self.public.union(&shared))
    }

    /// Every broken well-formedness condition. Empty iff the state is a
    /// manipulable multi-agent argumentation.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        self.check_codomain(&mut out);
        self.check_totality(&mut out);
        if out.iter().any(|v| v.condition == Condition::Totality) {
            return out;
        }
        self.check_local_scopes(&mut out);
        self.check_awareness(&mut out);
        self.check_orders(&mut out);
        self.check_knowledge(&mut out);
        self.check_omega(&mut out);
        out
    }

    fn check_codomain(&self, out: &mut Vec<Violation>) {
        let mut frame = |name: String, f: &ArgumentationFrame, nonempty: bool| {
            if f.kind() != FrameKind::Dung {
                out.push(Violation::new(
                    Condition::Codomain,
                    vec![name.clone()],
                    "frame is not Dung",
                ));
            }
            if !f.is_subframe_of(&self.global) {
                out.push(Violation::new(
                    Condition::Codomain,
                    vec![name.clone()],
                    "frame is not a sub-frame of the global frame",
                ));
            }
            if nonempty && f.args().is_empty() {
                out.push(Violation::new(
                    Condition::Codomain,
                    vec![name],
                    "frame is empty",
                ));
            }
        };
        frame("public".into(), &self.public, false);
        for (e, f) in &self.scope {
            frame(format!("scope({e})"), f, true);
        }
        for (e, f) in &self.aware {
            frame(format!("aware({e})"), f, true);
        }
        if self.global.kind() != FrameKind::Dung {
            out.push(Violation::new(
                Condition::Codomain,
                vec!["global".into()],
                "global frame is not Dung",
            ));
        }
    }

    fn check_totality(&self, out: &mut Vec<Violation>) {
        for e in &self.agents {
            if !self.scope.contains_key(e) {
                out.push(Violation::new(
                    Condition::Totality,
                    vec![e.to_string()],
                    "agent has no scope",
                ));
            }
            if !self.aware.contains_key(e) {
                out.push(Violation::new(
                    Condition::Totality,
                    vec![e.to_string()],
                    "agent has no awareness frame",
                ));
            }
        }
        let known = |e: &AgentId| self.agents.contains(e);
        for e in self.scope.keys().chain(self.aware.keys()) {
            if !known(e) {
                out.push(Violation::new(
                    Condition::Totality,
                    vec![e.to_string()],
                    "frame for an unknown agent",
                ));
            }
        }
        let keys = self
            .sem
            .keys()
            .chain(self.factual.keys())
            .chain(self.trust.keys())
            .chain(self.omega.keys());
        for (v, s) in keys {
            if !known(v) || !known(s) {
                out.push(Violation::new(
                    Condition::Totality,
                    vec![v.to_string(), s.to_string()],
                    "entry for an unknown agent",
                ));
            }
        }
        for (v, s) in self.pairs() {
            if !self.sem.contains_key(&pair(v, s)) {
                out.push(Violation::new(
                    Condition::Totality,
                    vec![v.to_string(), s.to_string()],
                    "no semantics recorded",
                ));
            }
            if !self.trust.contains_key(&pair(v, s)) {
                out.push(Violation::new(
                    Condition::Totality,
                    vec![v.to_string(), s.to_string()],
                    "no trust value recorded",
                ));
            }
        }
    }

    fn check_local_scopes(&self, out: &mut Vec<Violation>) {
        for (e, f) in &self.scope {
            let induced = self.global.restrict(f.args());
            if induced.attacks() != f.attacks() {
                let diff: Vec<String> = induced
                    .attacks()
                    .symmetric_difference(f.attacks())
                    .map(|(a, b)| format!("({a},{b})"))
                    .collect();
                out.push(Violation::new(
                    Condition::LocalScopes,
                    std::iter::once(e.to_string()).chain(diff).collect(),
                    "scope attacks differ from the global attacks among its arguments",
                ));
            }
        }
        let scopes: Vec<(&AgentId, &ArgumentationFrame)> = self.scope.iter().collect();
        for (i, (e1, f1)) in scopes.iter().enumerate() {
            for (e2, f2) in &scopes[i + 1..] {
                let shared: Vec<String> = f1
                    .args()
                    .intersection(f2.args())
                    .map(|a| a.to_string())
                    .collect();
                if !shared.is_empty() {
                    out.push(Violation::new(
                        Condition::LocalScopes,
                        [e1.to_string(), e2.to_string()]
                            .into_iter()
                            .chain(shared)
                            .collect(),
                        "scopes share arguments",
                    ));
                }
            }
        }
    }

    fn check_awareness(&self, out: &mut Vec<Violation>) {
        for e in &self.agents {
            let (Some(scope), Some(aware)) = (self.scope.get(e), self.aware.get(e)) else {
                continue;
            };
            if !scope.is_subframe_of(aware) {
                out.push(Violation::new(
                    Condition::LocalAgentArgumentation,
                    vec![e.to_string()],
                    "scope is not a sub-frame of the agent's awareness",
                ));
            }
            if !self.public.is_subframe_of(aware) {
                out.push(Violation::new(
                    Condition::PublicSubsumption,
                    vec![e.to_string()],
                    "public frame is not a sub-frame of the agent's awareness",
                ));
            }
        }
    }

    fn check_orders(&self, out: &mut Vec<Violation>) {
        for ((v, s), factual) in &self.factual {
            let Some(aware) = self.aware.get(v) else {
                continue;
            };
            let outside: Vec<String> = factual
                .difference(aware.args())
                .map(|a| a.to_string())
                .collect();
            if !outside.is_empty() {
                out.push(Violation::new(
                    Condition::PartialOrder1,
                    [v.to_string(), s.to_string()]
                        .into_iter()
                        .chain(outside)
                        .collect(),
                    "factual arguments outside the viewer's awareness",
                ));
            }
        }
    }

    fn check_knowledge(&self, out: &mut Vec<Violation>) {
        for (e1, e2) in self.pairs() {
            let Some(scope2) = self.scope.get(e2) else {
                continue;
            };
            let own1 = self.factual_of(e1, e1);
            let own2 = self.factual_of(e2, e2);
            let model = self.factual_of(e1, e2);
            for a in own1.iter().filter(|a| scope2.contains_arg(a)) {
                if !own2.contains(a) || !model.contains(a) {
                    out.push(Violation::new(
                        Condition::Knowledge,
                        vec![e1.to_string(), e2.to_string(), a.to_string()],
                        "argument factual to the viewer is not factual to its owner or the viewer's model of the owner",
                    ));
                }
            }
        }
    }

    fn check_omega(&self, out: &mut Vec<Violation>) {
        for ((v, s), w) in &self.omega {
            if v == s {
                out.push(Violation::new(
                    Condition::EpistemicBounds,
                    vec![v.to_string()],
                    "an agent's model of itself is its awareness and cannot be overridden",
                ));
                continue;
            }
            if !self.omega_within_bounds(v, s, w) {
                out.push(Violation::new(
                    Condition::EpistemicBounds,
                    vec![v.to_string(), s.to_string()],
                    "opponent model outside the epistemic bounds",
                ));
            }
        }
    }

    fn omega_within_bounds(&self, v: &AgentId, s: &AgentId, w: &ArgumentationFrame) -> bool {
        match (self.omega_lower_bound(v, s), self.aware_of(v)) {
            (Ok(lower), Ok(upper)) => lower.is_subframe_of(w) && w.is_subframe_of(upper),
            _ => false,
        }
    }
}

/// Free-function form of [`MmaState::validate`].
pub fn validate(m: &MmaState) -> Vec<Violation> {
    m.validate()
}

/// `viewer`'s model of `subject`'s local argumentation: the awareness frame
/// when they coincide, otherwise the recorded opponent model or the lower
/// epistemic bound.
pub fn perceived(
    m: &MmaState,
    viewer: &AgentId,
    subject: &AgentId,
) -> Result<PerceivedFrame, EpistemicError> {
    let frame = if viewer == subject {
        m.aware_of(viewer)?.clone()
    } else {
        m.require_agent(subject)?;
        match m.omega.get(&pair(viewer, subject)) {
            Some(w) if m.omega_within_bounds(viewer, subject, w) => w.clone(),
            Some(_) => {
                return Err(EpistemicError::OmegaOutOfBounds(
                    viewer.clone(),
                    subject.clone(),
                ))
            }
            None => m.omega_lower_bound(viewer, subject)?,
        }
    };
    Ok(PerceivedFrame {
        viewer: viewer.clone(),
        subject: subject.clone(),
        frame,
    })
}

/// The perceived frame adjusted by `viewer`'s model of `subject`'s intra
/// order.
pub fn adjusted_perceived(
    m: &MmaState,
    viewer: &AgentId,
    subject: &AgentId,
) -> Result<ArgumentationFrame, EpistemicError> {
    let p = perceived(m, viewer, subject)?;
    Ok(preference::adjust(&p.frame, &m.intra(viewer, subject)?)?)
}

/// The public frame adjusted by `viewer`'s model of `subject`'s intra order.
pub fn public_model(
    m: &MmaState,
    viewer: &AgentId,
    subject: &AgentId,
) -> Result<ArgumentationFrame, EpistemicError> {
    Ok(preference::adjust(&m.public, &m.intra(viewer, subject)?)?)
}

pub fn trust_neutral_public_semantics(
    m: &MmaState,
    viewer: &AgentId,
    subject: &AgentId,
) -> Result<ExtensionSet, EpistemicError> {
    let kind = m.semantics_of(viewer, subject)?;
    Ok(af::semantics(kind, &public_model(m, viewer, subject)?)?)
}

pub fn trust_neutral_local_semantics(
    m: &MmaState,
    viewer: &AgentId,
    subject: &AgentId,
) -> Result<ExtensionSet, EpistemicError> {
    let kind = m.semantics_of(viewer, subject)?;
    Ok(af::semantics(
        kind,
        &adjusted_perceived(m, viewer, subject)?,
    )?)
}

/// `e`'s own public model further adjusted by its trust-derived order.
pub fn trust_adjusted_public_frame(
    m: &MmaState,
    e: &AgentId,
) -> Result<ArgumentationFrame, EpistemicError> {
    let own = public_model(m, e, e)?;
    let inter = preference::derive_inter(m, e)?;
    Ok(preference::adjust(&own, &inter)?)
}

pub fn trust_adjusted_public_semantics(
    m: &MmaState,
    e: &AgentId,
) -> Result<ExtensionSet, EpistemicError> {
    let kind = m.semantics_of(e, e)?;
    Ok(af::semantics(kind, &trust_adjusted_public_frame(m, e)?)?)
}
