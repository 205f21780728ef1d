//! Multi-agent argumentation with epistemic opponent models, public
//! announcements, deception detection and trust revision.
//!
//! The layers build on each other:
//!
//! * [`af`]: Dung frames and complete, preferred and grounded semantics.
//! * [`oracle`]: a brute-force reference for the semantics.
//! * [`preference`]: attack-reverse adjustment and the intra- and
//!   inter-agent orders.
//! * [`epistemic`]: the multi-agent state, its validation and the semantics
//!   an agent attributes to another.
//! * [`dynamics`]: announcements, detection, trust revision and updates.
//! * [`scenario`] and [`export`]: scenario files, traces and DOT output.

pub mod af;
pub mod dynamics;
pub mod epistemic;
pub mod export;
pub mod oracle;
pub mod preference;
pub mod scenario;
pub mod violation;

pub use af::{
    AcceptanceMode, AfError, ArgumentId, ArgumentationFrame, Attack, Extension, ExtensionSet,
    FrameKind, SemanticsKind, SetOp,
};
pub use dynamics::{AnnouncementEvent, DetectionVerdict, TrustPolicy};
pub use epistemic::{AgentId, EpistemicError, MmaState, PerceivedFrame, Trust};
pub use preference::{InterPreference, IntraPreference, PreferenceOrder, StrictPreference};
pub use scenario::{Scenario, Trace};
pub use violation::{Condition, Violation};
