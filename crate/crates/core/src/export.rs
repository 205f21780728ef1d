//! Graphviz DOT rendering of state frames.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::af::{ArgumentId, ArgumentationFrame};
use crate::epistemic::{self, AgentId, EpistemicError, MmaState};

/// Which frame of a state to render.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViewSelector {
    Global,
    Public,
    Aware(AgentId),
    Scope(AgentId),
    Perceived(AgentId, AgentId),
    Adjusted(AgentId, AgentId),
    PublicModel(AgentId, AgentId),
    TrustAdjusted(AgentId),
}

impl std::str::FromStr for ViewSelector {
    type Err = String;

    /// `global`, `public`, `aware:e`, `scope:e`, `perceived:v:s`,
    /// `adjusted:v:s`, `public-model:v:s` or `trust-adjusted:e`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let a = |i: usize| AgentId::new(parts[i]);
        Ok(match parts.as_slice() {
            ["global"] => ViewSelector::Global,
            ["public"] => ViewSelector::Public,
            ["aware", _] => ViewSelector::Aware(a(1)),
            ["scope", _] => ViewSelector::Scope(a(1)),
            ["perceived", _, _] => ViewSelector::Perceived(a(1), a(2)),
            ["adjusted", _, _] => ViewSelector::Adjusted(a(1), a(2)),
            ["public-model", _, _] => ViewSelector::PublicModel(a(1), a(2)),
            ["trust-adjusted", _] => ViewSelector::TrustAdjusted(a(1)),
            _ => return Err(format!("unknown view selector `{s}`")),
        })
    }
}

pub fn select(m: &MmaState, view: &ViewSelector) -> Result<ArgumentationFrame, EpistemicError> {
    Ok(match view {
        ViewSelector::Global => m.global.clone(),
        ViewSelector::Public => m.public.clone(),
        ViewSelector::Aware(e) => m.aware_of(e)?.clone(),
        ViewSelector::Scope(e) => m.scope_of(e)?.clone(),
        ViewSelector::Perceived(v, s) => epistemic::perceived(m, v, s)?.frame,
        ViewSelector::Adjusted(v, s) => epistemic::adjusted_perceived(m, v, s)?,
        ViewSelector::PublicModel(v, s) => epistemic::public_model(m, v, s)?,
        ViewSelector::TrustAdjusted(e) => epistemic::trust_adjusted_public_frame(m, e)?,
    })
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Renders `f` as a DOT digraph. Arguments of `m`'s public frame are filled,
/// and arguments are grouped into one cluster per owning agent.
pub fn render_dot(
    m: &MmaState,
    f: &ArgumentationFrame,
    labels: &BTreeMap<ArgumentId, String>,
) -> String {
    let mut out = String::from("digraph mma {\n");
    if f.args().is_empty() && f.attacks().is_empty() {
        out.push_str("}\n");
        return out;
    }
    out.push_str("  node [shape=ellipse];\n");
    let node = |a: &ArgumentId| {
        let mut label = a.to_string();
        if let Some(l) = labels.get(a) {
            label = format!("{a}\\n{}", l.replace('"', "\\\""));
        }
        let mut attrs = format!("label=\"{label}\"");
        if m.public.contains_arg(a) {
            attrs.push_str(", style=filled, fillcolor=lightgrey, public=true");
        }
        format!("{} [{attrs}];", quote(a.as_str()))
    };
    let mut grouped: BTreeMap<Option<&AgentId>, Vec<&ArgumentId>> = BTreeMap::new();
    for a in f.args() {
        grouped.entry(m.owner_of(a)).or_default().push(a);
    }
    for (owner, args) in &grouped {
        match owner {
            Some(e) => {
                let _ = writeln!(out, "  subgraph {} {{", quote(&format!("cluster_{e}")));
                let _ = writeln!(out, "    label={};", quote(e.as_str()));
                for a in args {
                    let _ = writeln!(out, "    {}", node(a));
                }
                out.push_str("  }\n");
            }
            None => {
                for a in args {
                    let _ = writeln!(out, "  {}", node(a));
                }
            }
        }
    }
    for (a, b) in f.attacks() {
        let _ = writeln!(out, "  {} -> {};", quote(a.as_str()), quote(b.as_str()));
    }
    out.push_str("}\n");
    out
}

pub fn export_graph(
    m: &MmaState,
    view: &ViewSelector,
    labels: &BTreeMap<ArgumentId, String>,
) -> Result<String, EpistemicError> {
    Ok(render_dot(m, &select(m, view)?, labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::epistemic::tests::state_d;

    #[test]
    fn selectors_parse() {
        assert_eq!(
            "public".parse::<ViewSelector>().unwrap(),
            ViewSelector::Public
        );
        assert_eq!(
            "adjusted:e2:e1".parse::<ViewSelector>().unwrap(),
            ViewSelector::Adjusted("e2".into(), "e1".into())
        );
        assert!("aware".parse::<ViewSelector>().is_err());
        assert!("nonsense:x".parse::<ViewSelector>().is_err());
    }

    #[test]
    fn empty_frame_is_header_only() {
        let m = state_d();
        assert_eq!(
            render_dot(&m, &ArgumentationFrame::empty(), &BTreeMap::new()),
            "digraph mma {\n}\n"
        );
    }

    #[test]
    fn public_nodes_are_flagged() {
        let m = state_d();
        let dot = export_graph(&m, &ViewSelector::Global, &BTreeMap::new()).unwrap();
        assert_eq!(dot.matches("public=true").count(), 5);
        assert_eq!(dot.matches(" -> ").count(), m.global.attacks().len());
        assert!(dot.contains("subgraph \"cluster_e3\""));
    }

    #[test]
    fn labels_are_escaped() {
        let m = state_d();
        let labels = BTreeMap::from([(ArgumentId::from("a1"), "say \"hi\"".to_string())]);
        let dot = export_graph(&m, &ViewSelector::Scope("e1".into()), &labels).unwrap();
        assert!(dot.contains("label=\"a1\\nsay \\\"hi\\\"\""));
    }
}
