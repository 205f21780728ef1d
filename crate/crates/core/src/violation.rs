use std::fmt;

use serde::{Deserialize, Serialize};

/// The well-formedness condition a [`Violation`] breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    /// Every frame of the state is Dung and sits inside the global frame;
    /// scopes and awareness are nonempty.
    Codomain,
    /// A map that must be total over the agents is missing an entry.
    Totality,
    LocalScopes,
    LocalAgentArgumentation,
    PublicSubsumption,
    PartialOrder1,
    TopAndBottom,
    Binary,
    Knowledge,
    PartialOrder2,
    EpistemicBounds,
    /// Payload attack endpoint is neither announced nor public.
    NoLeak,
    /// Payload repeats what is already public.
    NoRepetition,
    /// Payload mentions an argument outside the global frame, or announcers
    /// are empty or unknown.
    Announcement,
}

impl Condition {
    pub fn name(self) -> &'static str {
        match self {
            Condition::Codomain => "codomain",
            Condition::Totality => "totality",
            Condition::LocalScopes => "local scopes",
            Condition::LocalAgentArgumentation => "local agent argumentation",
            Condition::PublicSubsumption => "public subsumption",
            Condition::PartialOrder1 => "partial order 1",
            Condition::TopAndBottom => "top and bottom",
            Condition::Binary => "binary",
            Condition::Knowledge => "knowledge",
            Condition::PartialOrder2 => "partial order 2",
            Condition::EpistemicBounds => "epistemic bounds",
            Condition::NoLeak => "no leak",
            Condition::NoRepetition => "no repetition",
            Condition::Announcement => "announcement",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.name())
    }
}

/// A broken condition and the offending agents, arguments or attacks.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub condition: Condition,
    pub elements: Vec<String>,
    pub message: String,
}

impl Violation {
    pub fn new(condition: Condition, elements: Vec<String>, message: impl Into<String>) -> Self {
        Violation {
            condition,
            elements,
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.condition, self.message)?;
        if !self.elements.is_empty() {
            write!(f, " [{}]", self.elements.join(", "))?;
        }
        Ok(())
    }
}

/// Renders violations one per line.
pub fn render(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("\n")
}
