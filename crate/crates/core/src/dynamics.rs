//! Public announcements, detection of honesty and deception, trust revision
//! and the composed update.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::af::{ArgumentId, ArgumentationFrame, ExtensionSet};
use crate::epistemic::{self, AgentId, AgentPair, EpistemicError, MmaState};
use crate::violation::{self, Condition, Violation};

/// A pre-Dung payload made public by one or more agents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnouncementEvent {
    pub payload: ArgumentationFrame,
    pub announcers: BTreeSet<AgentId>,
}

impl AnnouncementEvent {
    pub fn new(payload: ArgumentationFrame, announcers: impl IntoIterator<Item = AgentId>) -> Self {
        AnnouncementEvent {
            payload,
            announcers: announcers.into_iter().collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DetectionVerdict {
    Honest,
    Dishonest,
    Undetermined,
}

impl DetectionVerdict {
    pub fn symbol(self) -> &'static str {
        match self {
            DetectionVerdict::Honest => "hnst",
            DetectionVerdict::Dishonest => "dishnst",
            DetectionVerdict::Undetermined => "?",
        }
    }
}

impl fmt::Display for DetectionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Trust increments applied on detected honesty and deception.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrustPolicy {
    pub honest: u32,
    pub dishonest: u32,
}

impl Default for TrustPolicy {
    fn default() -> Self {
        TrustPolicy {
            honest: 1,
            dishonest: 1,
        }
    }
}

impl std::str::FromStr for TrustPolicy {
    type Err = String;

    /// Parses `H,D`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (h, d) = s
            .split_once(',')
            .ok_or_else(|| format!("expected H,D, got `{s}`"))?;
        let parse = |x: &str| x.trim().parse::<u32>().map_err(|e| format!("`{x}`: {e}"));
        Ok(TrustPolicy {
            honest: parse(h)?,
            dishonest: parse(d)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynamicsError {
    #[error("invalid announcement:\n{}", violation::render(.0))]
    InvalidAnnouncement(Vec<Violation>),
    #[error(transparent)]
    Epistemic(#[from] EpistemicError),
}

impl From<crate::af::AfError> for DynamicsError {
    fn from(e: crate::af::AfError) -> Self {
        DynamicsError::Epistemic(e.into())
    }
}

/// An announcement together with the states before and after it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub before: MmaState,
    pub event: AnnouncementEvent,
    pub after: MmaState,
}

/// Definedness of an announcement in `m`.
///
/// Besides the leak and repetition conditions on the payload, announcers
/// must be known agents and payload arguments must already exist in the
/// global frame. A payload is a repetition when it is empty, when one of its
/// attacks between public arguments is already public, or when one of its
/// already-public arguments brings no new incident attack.
pub fn check_announcement(m: &MmaState, ev: &AnnouncementEvent) -> Vec<Violation> {
    let mut out = Vec::new();
    let payload = &ev.payload;
    let public = &m.public;

    if ev.announcers.is_empty() {
        out.push(Violation::new(
            Condition::Announcement,
            vec![],
            "no announcing agent",
        ));
    }
    for e in ev.announcers.iter().filter(|e| !m.agents.contains(*e)) {
        out.push(Violation::new(
            Condition::Announcement,
            vec![e.to_string()],
            "unknown announcing agent",
        ));
    }
    for a in payload.args().iter().filter(|a| !m.global.contains_arg(a)) {
        out.push(Violation::new(
            Condition::Announcement,
            vec![a.to_string()],
            "argument absent from the global frame",
        ));
    }

    let visible = |a: &ArgumentId| payload.contains_arg(a) || public.contains_arg(a);
    for (a, b) in payload.attacks() {
        let dangling: Vec<String> = [a, b]
            .into_iter()
            .filter(|x| !visible(x))
            .map(|x| x.to_string())
            .collect();
        if !dangling.is_empty() {
            out.push(Violation::new(
                Condition::NoLeak,
                std::iter::once(format!("({a},{b})"))
                    .chain(dangling)
                    .collect(),
                "attack endpoint neither announced nor public",
            ));
        }
    }

    if payload.args().is_empty() && payload.attacks().is_empty() {
        out.push(Violation::new(
            Condition::NoRepetition,
            vec![],
            "empty announcement",
        ));
    }
    for (a, b) in payload.attacks() {
        if public.has_attack(a, b) {
            out.push(Violation::new(
                Condition::NoRepetition,
                vec![format!("({a},{b})")],
                "attack is already public",
            ));
        }
    }
    for a in payload.args().iter().filter(|a| public.contains_arg(a)) {
        let fresh = payload
            .attacks()
            .iter()
            .any(|(x, y)| (x == a || y == a) && !public.has_attack(x, y));
        if !fresh {
            out.push(Violation::new(
                Condition::NoRepetition,
                vec![a.to_string()],
                "argument is already public and brings no new attack",
            ));
        }
    }
    out
}

/// Makes the payload public: it is added to the global frame, the public
/// frame, every awareness frame and every opponent model. Scope attacks are
/// re-induced from the new global frame.
pub fn announce(m: &MmaState, ev: &AnnouncementEvent) -> Result<Transition, DynamicsError> {
    let violations = check_announcement(m, ev);
    if !violations.is_empty() {
        return Err(DynamicsError::InvalidAnnouncement(violations));
    }
    let payload = &ev.payload;
    let mut after = m.clone();
    after.global = m.global.union(payload);
    after.public = m.public.union(payload);
    for f in after.aware.values_mut() {
        *f = f.union(payload);
    }
    for f in after.omega.values_mut() {
        *f = f.union(payload);
    }
    for f in after.scope.values_mut() {
        *f = after.global.restrict(f.args());
    }
    Ok(Transition {
        before: m.clone(),
        event: ev.clone(),
        after,
    })
}

/// `{ X ∩ keep : X ∈ g }`.
pub fn restrict_extensions(g: &ExtensionSet, keep: &BTreeSet<ArgumentId>) -> ExtensionSet {
    g.iter()
        .map(|x| x.intersection(keep).cloned().collect())
        .collect()
}

/// Intermediate values of a detection, for reporting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Detection {
    pub verdict: DetectionVerdict,
    /// Payload arguments from the subject's scope.
    pub relevant: BTreeSet<ArgumentId>,
    pub source: ExtensionSet,
    pub target: ExtensionSet,
}

/// Detection on an already computed post-announcement state.
pub fn detect_in(
    after: &MmaState,
    viewer: &AgentId,
    subject: &AgentId,
    ev: &AnnouncementEvent,
) -> Result<Detection, EpistemicError> {
    let relevant: BTreeSet<ArgumentId> = ev
        .payload
        .args()
        .intersection(after.scope_of(subject)?.args())
        .cloned()
        .collect();
    let source = restrict_extensions(
        &epistemic::trust_neutral_public_semantics(after, viewer, subject)?,
        &relevant,
    );
    let target = restrict_extensions(
        &epistemic::trust_neutral_local_semantics(after, viewer, subject)?,
        &relevant,
    );
    let verdict = if relevant.is_empty() {
        DetectionVerdict::Undetermined
    } else if source.common(&target).is_empty() {
        DetectionVerdict::Dishonest
    } else if source == target && {
        let intra = after.intra(viewer, subject)?;
        relevant.iter().all(|a| intra.is_factual(a))
    } {
        DetectionVerdict::Honest
    } else {
        DetectionVerdict::Undetermined
    };
    Ok(Detection {
        verdict,
        relevant,
        source,
        target,
    })
}

pub fn detect_detailed(
    m: &MmaState,
    viewer: &AgentId,
    subject: &AgentId,
    ev: &AnnouncementEvent,
) -> Result<Detection, DynamicsError> {
    let t = announce(m, ev)?;
    Ok(detect_in(&t.after, viewer, subject, ev)?)
}

/// `viewer`'s verdict on `subject` for announcing `ev` in `m`.
pub fn detect(
    m: &MmaState,
    viewer: &AgentId,
    subject: &AgentId,
    ev: &AnnouncementEvent,
) -> Result<DetectionVerdict, DynamicsError> {
    Ok(detect_detailed(m, viewer, subject, ev)?.verdict)
}

/// Detections for every ordered pair of distinct agents.
pub fn detection_matrix(t: &Transition) -> Result<BTreeMap<AgentPair, Detection>, EpistemicError> {
    let mut out = BTreeMap::new();
    for v in &t.after.agents {
        for s in t.after.agents.iter().filter(|s| *s != v) {
            out.insert((v.clone(), s.clone()), detect_in(&t.after, v, s, &t.event)?);
        }
    }
    Ok(out)
}

pub fn verdict_matrix(
    t: &Transition,
) -> Result<BTreeMap<AgentPair, DetectionVerdict>, EpistemicError> {
    Ok(detection_matrix(t)?
        .into_iter()
        .map(|(k, d)| (k, d.verdict))
        .collect())
}

fn apply(
    m2: &MmaState,
    verdicts: &BTreeMap<AgentPair, DetectionVerdict>,
    policy: TrustPolicy,
) -> MmaState {
    let mut m3 = m2.clone();
    for (key, verdict) in verdicts {
        let Some(v) = m3.trust.get_mut(key) else {
            continue;
        };
        *v = match verdict {
            DetectionVerdict::Honest => v.saturating_add(policy.honest.into()),
            DetectionVerdict::Dishonest => v.saturating_sub(policy.dishonest.into()),
            DetectionVerdict::Undetermined => *v,
        };
    }
    m3
}

/// Trust revision of `m2` from the verdicts of the transition `m1 → m2`.
pub fn revise(
    m1: &MmaState,
    ev: &AnnouncementEvent,
    m2: &MmaState,
    policy: TrustPolicy,
) -> Result<MmaState, EpistemicError> {
    let t = Transition {
        before: m1.clone(),
        event: ev.clone(),
        after: m2.clone(),
    };
    Ok(apply(m2, &verdict_matrix(&t)?, policy))
}

/// Announcement followed by trust revision.
pub fn update(
    m: &MmaState,
    ev: &AnnouncementEvent,
    policy: TrustPolicy,
) -> Result<MmaState, DynamicsError> {
    let t = announce(m, ev)?;
    Ok(apply(&t.after, &verdict_matrix(&t)?, policy))
}
