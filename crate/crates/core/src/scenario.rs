//! Scenario documents, script replay with tracing, and semantic queries.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::io::Read;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::af::{ArgumentId, ArgumentationFrame, Attack, ExtensionSet, SemanticsKind};
use crate::dynamics::{self, AnnouncementEvent, Detection, Transition, TrustPolicy};
use crate::epistemic::{self, AgentId, EpistemicError, MmaState, Trust};
use crate::violation::{self, Violation};

/// The bundled end-game scenario.
pub const MAFIA_ENDGAME: &str = include_str!("../fixtures/mafia_endgame.json");

pub const DEFAULT_TRUST_CAP: Trust = 1000;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("read error: {0}")]
    Io(#[from] std::io::Error),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("trust value {value} for ({viewer}, {subject}) outside [-{cap}, {cap}]")]
    TrustOutOfRange {
        viewer: AgentId,
        subject: AgentId,
        value: Trust,
        cap: Trust,
    },
    #[error("initial state is invalid:\n{}", violation::render(.0))]
    Invalid(Vec<Violation>),
    #[error("step {step} is out of range; the script has {len} steps")]
    StepOutOfRange { step: usize, len: usize },
    #[error("step {step} ({label}): {source}")]
    Step {
        step: usize,
        label: String,
        source: dynamics::DynamicsError,
    },
    #[error(transparent)]
    Epistemic(#[from] EpistemicError),
}

// ---- document schema ----

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArgumentDoc {
    pub id: ArgumentId,
    pub owner: AgentId,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemanticsEntry {
    pub viewer: AgentId,
    pub subject: AgentId,
    pub semantics: SemanticsKind,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GsemDoc {
    #[serde(default = "default_kind")]
    pub default: SemanticsKind,
    #[serde(default)]
    pub entries: Vec<SemanticsEntry>,
}

fn default_kind() -> SemanticsKind {
    SemanticsKind::Preferred
}

impl Default for GsemDoc {
    fn default() -> Self {
        GsemDoc {
            default: default_kind(),
            entries: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactualEntry {
    pub viewer: AgentId,
    pub subject: AgentId,
    pub arguments: BTreeSet<ArgumentId>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrustEntry {
    pub viewer: AgentId,
    pub subject: AgentId,
    pub value: Trust,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrustDoc {
    #[serde(default)]
    pub default: Trust,
    #[serde(default)]
    pub entries: Vec<TrustEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OmegaEntry {
    pub viewer: AgentId,
    pub subject: AgentId,
    pub frame: ArgumentationFrame,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepDoc {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub label: String,
    pub announcers: BTreeSet<AgentId>,
    #[serde(default)]
    pub arguments: BTreeSet<ArgumentId>,
    #[serde(default)]
    pub attacks: BTreeSet<Attack>,
}

/// The on-disk JSON shape of a scenario.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub notes: String,
    #[serde(default = "default_cap")]
    pub trust_cap: Trust,
    pub arguments: Vec<ArgumentDoc>,
    #[serde(default)]
    pub global_attacks: BTreeSet<Attack>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub public: Option<ArgumentationFrame>,
    /// Defaults to grouping `arguments` by owner.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scopes: Option<BTreeMap<AgentId, BTreeSet<ArgumentId>>>,
    pub awareness: BTreeMap<AgentId, ArgumentationFrame>,
    #[serde(default)]
    pub gsem: GsemDoc,
    #[serde(default)]
    pub factual: Vec<FactualEntry>,
    #[serde(default)]
    pub trust: TrustDoc,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub omega_overrides: Vec<OmegaEntry>,
    #[serde(default)]
    pub script: Vec<StepDoc>,
    #[serde(default)]
    pub policy: TrustPolicy,
}

fn default_cap() -> Trust {
    DEFAULT_TRUST_CAP
}

// ---- loaded scenario ----

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptStep {
    pub label: String,
    pub event: AnnouncementEvent,
}

/// A validated initial state with its announcement script.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub initial: MmaState,
    pub labels: BTreeMap<ArgumentId, String>,
    pub script: Vec<ScriptStep>,
    pub policy: TrustPolicy,
    pub trust_cap: Trust,
    pub notes: String,
}

fn schema(msg: impl Into<String>) -> ScenarioError {
    ScenarioError::Schema(msg.into())
}

pub fn load_scenario(mut source: impl Read) -> Result<Scenario, ScenarioError> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    load_str(&text)
}

pub fn load_str(text: &str) -> Result<Scenario, ScenarioError> {
    from_document(serde_json::from_str(text)?)
}

pub fn load_path(path: impl AsRef<std::path::Path>) -> Result<Scenario, ScenarioError> {
    load_str(&std::fs::read_to_string(path)?)
}

/// The bundled end-game scenario, loaded.
pub fn mafia_endgame() -> Scenario {
    load_str(MAFIA_ENDGAME).expect("bundled scenario is valid")
}

pub fn from_document(doc: Document) -> Result<Scenario, ScenarioError> {
    if doc.trust_cap < 0 {
        return Err(schema("trust_cap must be non-negative"));
    }
    let mut labels = BTreeMap::new();
    let mut owners: BTreeMap<ArgumentId, AgentId> = BTreeMap::new();
    for a in &doc.arguments {
        if a.id.as_str().is_empty() || a.owner.as_str().is_empty() {
            return Err(schema("empty argument or owner id"));
        }
        if owners.insert(a.id.clone(), a.owner.clone()).is_some() {
            return Err(schema(format!("argument `{}` declared twice", a.id)));
        }
        if !a.label.is_empty() {
            labels.insert(a.id.clone(), a.label.clone());
        }
    }
    let global =
        ArgumentationFrame::new(owners.keys().cloned(), doc.global_attacks.iter().cloned())
            .map_err(|e| schema(format!("global_attacks: {e}")))?;

    let agents: BTreeSet<AgentId> = owners
        .values()
        .chain(doc.awareness.keys())
        .cloned()
        .collect();
    let known_agent = |e: &AgentId, ctx: &str| {
        if agents.contains(e) {
            Ok(())
        } else {
            Err(schema(format!("{ctx}: unknown agent `{e}`")))
        }
    };
    let known_arg = |a: &ArgumentId, ctx: &str| {
        if owners.contains_key(a) {
            Ok(())
        } else {
            Err(schema(format!("{ctx}: undeclared argument `{a}`")))
        }
    };

    let scope_args: BTreeMap<AgentId, BTreeSet<ArgumentId>> = match &doc.scopes {
        Some(scopes) => {
            for (e, xs) in scopes {
                known_agent(e, "scopes")?;
                for a in xs {
                    known_arg(a, "scopes")?;
                }
            }
            for (a, e) in &owners {
                if !scopes.get(e).is_some_and(|xs| xs.contains(a)) {
                    return Err(schema(format!(
                        "scopes: `{a}` is owned by `{e}` but not in its scope"
                    )));
                }
            }
            scopes.clone()
        }
        None => {
            let mut m: BTreeMap<AgentId, BTreeSet<ArgumentId>> = BTreeMap::new();
            for (a, e) in &owners {
                m.entry(e.clone()).or_default().insert(a.clone());
            }
            m
        }
    };
    let scope = scope_args
        .iter()
        .map(|(e, xs)| (e.clone(), global.restrict(xs)))
        .collect();

    let mut sem = BTreeMap::new();
    for v in &agents {
        for s in &agents {
            sem.insert((v.clone(), s.clone()), doc.gsem.default);
        }
    }
    for en in &doc.gsem.entries {
        known_agent(&en.viewer, "gsem")?;
        known_agent(&en.subject, "gsem")?;
        sem.insert((en.viewer.clone(), en.subject.clone()), en.semantics);
    }

    // Missing and empty entries both mean nothing is factual.
    let mut factual = BTreeMap::new();
    let mut seen = BTreeSet::new();
    for en in &doc.factual {
        known_agent(&en.viewer, "factual")?;
        known_agent(&en.subject, "factual")?;
        for a in &en.arguments {
            known_arg(a, "factual")?;
        }
        let key = (en.viewer.clone(), en.subject.clone());
        if !seen.insert(key.clone()) {
            return Err(schema(format!(
                "factual: duplicate entry for ({}, {})",
                en.viewer, en.subject
            )));
        }
        if !en.arguments.is_empty() {
            factual.insert(key, en.arguments.clone());
        }
    }

    let mut trust = BTreeMap::new();
    for v in &agents {
        for s in &agents {
            trust.insert((v.clone(), s.clone()), doc.trust.default);
        }
    }
    for en in &doc.trust.entries {
        known_agent(&en.viewer, "trust")?;
        known_agent(&en.subject, "trust")?;
        trust.insert((en.viewer.clone(), en.subject.clone()), en.value);
    }
    for ((v, s), &value) in &trust {
        if value.abs() > doc.trust_cap {
            return Err(ScenarioError::TrustOutOfRange {
                viewer: v.clone(),
                subject: s.clone(),
                value,
                cap: doc.trust_cap,
            });
        }
    }

    let mut omega = BTreeMap::new();
    for en in &doc.omega_overrides {
        known_agent(&en.viewer, "omega_overrides")?;
        known_agent(&en.subject, "omega_overrides")?;
        omega.insert((en.viewer.clone(), en.subject.clone()), en.frame.clone());
    }

    let script = doc
        .script
        .iter()
        .enumerate()
        .map(|(i, st)| {
            let payload =
                ArgumentationFrame::new(st.arguments.iter().cloned(), st.attacks.iter().cloned())
                    .map_err(|e| schema(format!("script step {}: {e}", i + 1)))?;
            Ok(ScriptStep {
                label: st.label.clone(),
                event: AnnouncementEvent {
                    payload,
                    announcers: st.announcers.clone(),
                },
            })
        })
        .collect::<Result<Vec<_>, ScenarioError>>()?;

    let initial = MmaState {
        global,
        public: doc.public.clone().unwrap_or_default(),
        agents,
        scope,
        aware: doc.awareness.clone(),
        sem,
        factual,
        trust,
        omega,
    };
    let violations = initial.validate();
    if !violations.is_empty() {
        return Err(ScenarioError::Invalid(violations));
    }
    Ok(Scenario {
        initial,
        labels,
        script,
        policy: doc.policy,
        trust_cap: doc.trust_cap,
        notes: doc.notes,
    })
}

fn most_common<T: Ord + Copy>(xs: impl Iterator<Item = T>, fallback: T) -> T {
    let mut counts: BTreeMap<T, usize> = BTreeMap::new();
    for x in xs {
        *counts.entry(x).or_default() += 1;
    }
    counts
        .into_iter()
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
        .map_or(fallback, |(x, _)| x)
}

/// The document form of a scenario; loading it gives back an equal scenario.
pub fn to_document(sc: &Scenario) -> Document {
    let m = &sc.initial;
    let arguments = m
        .global
        .args()
        .iter()
        .map(|a| ArgumentDoc {
            id: a.clone(),
            owner: m.owner_of(a).cloned().unwrap_or_else(|| AgentId::new("")),
            label: sc.labels.get(a).cloned().unwrap_or_default(),
        })
        .collect();
    let gsem_default = most_common(m.sem.values().copied(), SemanticsKind::Preferred);
    let trust_default = most_common(m.trust.values().copied(), 0);
    Document {
        notes: sc.notes.clone(),
        trust_cap: sc.trust_cap,
        arguments,
        global_attacks: m.global.attacks().clone(),
        public: (!m.public.is_empty()).then(|| m.public.clone()),
        scopes: Some(
            m.scope
                .iter()
                .map(|(e, f)| (e.clone(), f.args().clone()))
                .collect(),
        ),
        awareness: m.aware.clone(),
        gsem: GsemDoc {
            default: gsem_default,
            entries: m
                .sem
                .iter()
                .filter(|(_, k)| **k != gsem_default)
                .map(|((v, s), k)| SemanticsEntry {
                    viewer: v.clone(),
                    subject: s.clone(),
                    semantics: *k,
                })
                .collect(),
        },
        factual: m
            .factual
            .iter()
            .filter(|(_, xs)| !xs.is_empty())
            .map(|((v, s), xs)| FactualEntry {
                viewer: v.clone(),
                subject: s.clone(),
                arguments: xs.clone(),
            })
            .collect(),
        trust: TrustDoc {
            default: trust_default,
            entries: m
                .trust
                .iter()
                .filter(|(_, t)| **t != trust_default)
                .map(|((v, s), t)| TrustEntry {
                    viewer: v.clone(),
                    subject: s.clone(),
                    value: *t,
                })
                .collect(),
        },
        omega_overrides: m
            .omega
            .iter()
            .map(|((v, s), f)| OmegaEntry {
                viewer: v.clone(),
                subject: s.clone(),
                frame: f.clone(),
            })
            .collect(),
        script: sc
            .script
            .iter()
            .map(|st| StepDoc {
                label: st.label.clone(),
                announcers: st.event.announcers.clone(),
                arguments: st.event.payload.args().clone(),
                attacks: st.event.payload.attacks().clone(),
            })
            .collect(),
        policy: sc.policy,
    }
}

pub fn to_json(sc: &Scenario) -> String {
    let mut s = serde_json::to_string_pretty(&to_document(sc)).expect("documents serialize");
    s.push('\n');
    s
}

// ---- traces ----

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FrameDelta {
    pub arguments: BTreeSet<ArgumentId>,
    pub attacks: BTreeSet<Attack>,
}

impl FrameDelta {
    fn between(before: &ArgumentationFrame, after: &ArgumentationFrame) -> Self {
        FrameDelta {
            arguments: after.args().difference(before.args()).cloned().collect(),
            attacks: after
                .attacks()
                .difference(before.attacks())
                .cloned()
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictRecord {
    pub viewer: AgentId,
    pub subject: AgentId,
    #[serde(flatten)]
    pub detection: Detection,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrustRecord {
    pub viewer: AgentId,
    pub subject: AgentId,
    pub value: Trust,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AgentSemantics {
    pub agent: AgentId,
    pub extensions: ExtensionSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub step: usize,
    pub label: String,
    pub announcers: BTreeSet<AgentId>,
    pub payload: ArgumentationFrame,
    pub public_added: FrameDelta,
    pub global_added: FrameDelta,
    pub verdicts: Vec<VerdictRecord>,
    pub trust_before: Vec<TrustRecord>,
    pub trust_after: Vec<TrustRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trust_adjusted: Option<Vec<AgentSemantics>>,
}

/// Where and why a run stopped early.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Halt {
    pub step: usize,
    pub label: String,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub policy: TrustPolicy,
    pub steps: Vec<TraceStep>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub halted: Option<Halt>,
    /// `states[k]` is the state after `k` steps.
    #[serde(skip)]
    pub states: Vec<MmaState>,
}

impl Trace {
    pub fn final_state(&self) -> &MmaState {
        self.states
            .last()
            .expect("a trace holds at least the initial state")
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("traces serialize");
        s.push('\n');
        s
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Overrides the scenario's policy.
    pub policy: Option<TrustPolicy>,
    /// Record each agent's trust-adjusted public semantics after every step.
    pub trust_adjusted: bool,
}

fn trust_records(m: &MmaState) -> Vec<TrustRecord> {
    m.trust
        .iter()
        .map(|((v, s), t)| TrustRecord {
            viewer: v.clone(),
            subject: s.clone(),
            value: *t,
        })
        .collect()
}

pub fn run(sc: &Scenario) -> Result<Trace, ScenarioError> {
    run_with(sc, RunOptions::default())
}

/// Folds the update over the script. An invalid announcement stops the run;
/// the trace then holds the steps before it and a [`Halt`].
pub fn run_with(sc: &Scenario, opts: RunOptions) -> Result<Trace, ScenarioError> {
    let policy = opts.policy.unwrap_or(sc.policy);
    let mut trace = Trace {
        policy,
        steps: Vec::new(),
        halted: None,
        states: vec![sc.initial.clone()],
    };
    for (i, st) in sc.script.iter().enumerate() {
        let m = trace.final_state();
        let t: Transition = match dynamics::announce(m, &st.event) {
            Ok(t) => t,
            Err(dynamics::DynamicsError::InvalidAnnouncement(violations)) => {
                trace.halted = Some(Halt {
                    step: i + 1,
                    label: st.label.clone(),
                    violations,
                });
                break;
            }
            Err(source) => {
                return Err(ScenarioError::Step {
                    step: i + 1,
                    label: st.label.clone(),
                    source,
                })
            }
        };
        let detections = dynamics::detection_matrix(&t)?;
        let after = dynamics::revise(&t.before, &t.event, &t.after, policy)?;
        let trust_adjusted = if opts.trust_adjusted {
            Some(
                after
                    .agents
                    .iter()
                    .map(|e| {
                        Ok(AgentSemantics {
                            agent: e.clone(),
                            extensions: epistemic::trust_adjusted_public_semantics(&after, e)?,
                        })
                    })
                    .collect::<Result<Vec<_>, EpistemicError>>()?,
            )
        } else {
            None
        };
        trace.steps.push(TraceStep {
            step: i + 1,
            label: st.label.clone(),
            announcers: st.event.announcers.clone(),
            payload: st.event.payload.clone(),
            public_added: FrameDelta::between(&t.before.public, &after.public),
            global_added: FrameDelta::between(&t.before.global, &after.global),
            verdicts: detections
                .into_iter()
                .map(|((v, s), detection)| VerdictRecord {
                    viewer: v,
                    subject: s,
                    detection,
                })
                .collect(),
            trust_before: trust_records(&t.before),
            trust_after: trust_records(&after),
            trust_adjusted,
        });
        trace.states.push(after);
    }
    Ok(trace)
}

/// The state after the first `k` script steps.
pub fn state_at(sc: &Scenario, k: usize) -> Result<MmaState, ScenarioError> {
    if k > sc.script.len() {
        return Err(ScenarioError::StepOutOfRange {
            step: k,
            len: sc.script.len(),
        });
    }
    let mut m = sc.initial.clone();
    for (i, st) in sc.script[..k].iter().enumerate() {
        m = dynamics::update(&m, &st.event, sc.policy).map_err(|source| ScenarioError::Step {
            step: i + 1,
            label: st.label.clone(),
            source,
        })?;
    }
    Ok(m)
}

/// Plain-text table of a trace.
pub fn render_trace(trace: &Trace) -> String {
    let mut out = String::new();
    let frame = |d: &FrameDelta| {
        let args: Vec<&str> = d.arguments.iter().map(|a| a.as_str()).collect();
        let atts: Vec<String> = d
            .attacks
            .iter()
            .map(|(a, b)| format!("({a},{b})"))
            .collect();
        format!("{{{}}} {{{}}}", args.join(","), atts.join(","))
    };
    for st in &trace.steps {
        let by: Vec<&str> = st.announcers.iter().map(|e| e.as_str()).collect();
        let _ = writeln!(
            out,
            "step {} {} by {}: {}",
            st.step,
            st.label,
            by.join(","),
            st.payload
        );
        let _ = writeln!(out, "  public +{}", frame(&st.public_added));
        for v in &st.verdicts {
            let _ = writeln!(
                out,
                "  {} on {}: {:<7} S={{{}}} source={} target={}",
                v.viewer,
                v.subject,
                v.detection.verdict.to_string(),
                v.detection
                    .relevant
                    .iter()
                    .map(|a| a.as_str())
                    .collect::<Vec<_>>()
                    .join(","),
                v.detection.source,
                v.detection.target
            );
        }
        for (b, a) in st.trust_before.iter().zip(&st.trust_after) {
            if b.value != a.value {
                let _ = writeln!(
                    out,
                    "  trust {}->{}: {} -> {}",
                    a.viewer, a.subject, b.value, a.value
                );
            }
        }
        if let Some(ta) = &st.trust_adjusted {
            for s in ta {
                let _ = writeln!(out, "  trust-adjusted {}: {}", s.agent, s.extensions);
            }
        }
    }
    if let Some(h) = &trace.halted {
        let _ = writeln!(out, "halted at step {} {}:", h.step, h.label);
        for v in &h.violations {
            let _ = writeln!(out, "  {v}");
        }
    }
    out
}

// ---- queries ----

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum View {
    Public,
    Local,
    TrustAdjusted,
}

impl std::str::FromStr for View {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "public" => Ok(View::Public),
            "local" => Ok(View::Local),
            "trust-adjusted" | "trust_adjusted" => Ok(View::TrustAdjusted),
            _ => Err(format!(
                "unknown view `{s}` (public, local, trust-adjusted)"
            )),
        }
    }
}

/// Semantics of `viewer`'s model of `subject`. The trust-adjusted view is
/// `viewer`'s own and ignores `subject`. `kind` replaces the recorded
/// semantics for the pair.
pub fn query(
    m: &MmaState,
    viewer: &AgentId,
    subject: &AgentId,
    view: View,
    kind: Option<SemanticsKind>,
) -> Result<ExtensionSet, EpistemicError> {
    let overridden;
    let m = match kind {
        Some(k) => {
            let mut c = m.clone();
            let key = match view {
                View::TrustAdjusted => (viewer.clone(), viewer.clone()),
                _ => (viewer.clone(), subject.clone()),
            };
            c.semantics_of(&key.0, &key.1)?;
            c.sem.insert(key, k);
            overridden = c;
            &overridden
        }
        None => m,
    };
    match view {
        View::Public => epistemic::trust_neutral_public_semantics(m, viewer, subject),
        View::Local => epistemic::trust_neutral_local_semantics(m, viewer, subject),
        View::TrustAdjusted => epistemic::trust_adjusted_public_semantics(m, viewer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> AgentId {
        s.into()
    }

    #[test]
    fn bundled_fixture_loads() {
        let sc = mafia_endgame();
        assert_eq!(sc.script.len(), 4);
        assert_eq!(sc.initial.agents.len(), 3);
        assert_eq!(sc.labels[&ArgumentId::from("a1")], "e1 is Killer");
    }

    #[test]
    fn queries_at_d() {
        let sc = mafia_endgame();
        let d = state_at(&sc, 3).unwrap();
        assert_eq!(
            query(&d, &e("e2"), &e("e1"), View::Public, None).unwrap(),
            ExtensionSet::of(&[&["a2", "a3", "a9"]])
        );
        assert_eq!(
            query(&d, &e("e2"), &e("e1"), View::Local, None).unwrap(),
            ExtensionSet::of(&[&["a1", "a4", "a5"]])
        );
        assert_eq!(
            query(&sc.initial, &e("e1"), &e("e1"), View::Public, None).unwrap(),
            ExtensionSet::with_empty()
        );
    }

    #[test]
    fn kind_override() {
        let sc = mafia_endgame();
        let d = state_at(&sc, 3).unwrap();
        let g = query(
            &d,
            &e("e2"),
            &e("e1"),
            View::Public,
            Some(SemanticsKind::Complete),
        )
        .unwrap();
        assert!(!g.is_empty());
        assert!(g.contains(
            &["a2", "a3", "a9"]
                .into_iter()
                .map(ArgumentId::from)
                .collect()
        ));
    }

    #[test]
    fn empty_script() {
        let mut sc = mafia_endgame();
        sc.script.clear();
        let t = run(&sc).unwrap();
        assert!(t.steps.is_empty());
        assert_eq!(t.final_state(), &sc.initial);
    }

    #[test]
    fn run_halts_at_invalid_step() {
        let mut sc = mafia_endgame();
        let again = sc.script[0].clone();
        sc.script.insert(1, again);
        let t = run(&sc).unwrap();
        assert_eq!(t.steps.len(), 1);
        assert_eq!(t.halted.as_ref().unwrap().step, 2);
        assert!(state_at(&sc, 2).is_err());
    }

    #[test]
    fn overlapping_scopes_fail_validation() {
        let mut doc: Document = serde_json::from_str(MAFIA_ENDGAME).unwrap();
        let mut scopes: BTreeMap<AgentId, BTreeSet<ArgumentId>> = BTreeMap::new();
        for a in &doc.arguments {
            scopes
                .entry(a.owner.clone())
                .or_default()
                .insert(a.id.clone());
        }
        scopes.entry(e("e2")).or_default().insert("a1".into());
        doc.scopes = Some(scopes);
        let err = from_document(doc).unwrap_err();
        match err {
            ScenarioError::Invalid(v) => {
                assert!(v
                    .iter()
                    .any(|v| v.condition == crate::violation::Condition::LocalScopes))
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn trust_cap() {
        let mut doc: Document = serde_json::from_str(MAFIA_ENDGAME).unwrap();
        doc.trust.entries.push(TrustEntry {
            viewer: e("e1"),
            subject: e("e2"),
            value: 1001,
        });
        assert!(matches!(
            from_document(doc.clone()),
            Err(ScenarioError::TrustOutOfRange { .. })
        ));
        doc.trust_cap = 2000;
        assert!(from_document(doc).is_ok());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = MAFIA_ENDGAME.replacen("\"arguments\"", "\"argumnets\"", 1);
        assert!(matches!(load_str(&text), Err(ScenarioError::Parse(_))));
    }

    #[test]
    fn document_round_trip() {
        let sc = mafia_endgame();
        let again = load_str(&to_json(&sc)).unwrap();
        assert_eq!(again, sc);
    }
}
