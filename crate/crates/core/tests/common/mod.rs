#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use mma::dynamics::{self, AnnouncementEvent};
use mma::scenario::{self, Scenario};
use mma::{AgentId, ArgumentId, ArgumentationFrame, Attack, MmaState, SemanticsKind};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture(name: &str) -> Scenario {
    let path = format!("{}/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"));
    scenario::load_path(path).unwrap()
}

pub fn fixture_path(name: &str) -> String {
    format!("{}/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

pub const FIXTURES: [&str; 4] = [
    "mafia_endgame",
    "mafia_endgame_honest",
    "mafia_endgame_trust_e1",
    "mafia_endgame_trust_e2",
];

pub fn ids(xs: &[&str]) -> BTreeSet<ArgumentId> {
    xs.iter().map(|&a| ArgumentId::from(a)).collect()
}

pub fn atts(xs: &[(&str, &str)]) -> BTreeSet<Attack> {
    xs.iter().map(|&(a, b)| (a.into(), b.into())).collect()
}

pub fn e(s: &str) -> AgentId {
    s.into()
}

fn subset<T: Clone, R: Rng>(rng: &mut R, xs: impl IntoIterator<Item = T>, p: f64) -> Vec<T> {
    xs.into_iter().filter(|_| rng.gen_bool(p)).collect()
}

/// A random state satisfying every well-formedness condition.
pub fn random_state(seed: u64) -> MmaState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_agents = rng.gen_range(2..=4);
    let agents: Vec<AgentId> = (1..=n_agents)
        .map(|i| AgentId::new(format!("e{i}")))
        .collect();
    let mut owned: BTreeMap<AgentId, BTreeSet<ArgumentId>> = BTreeMap::new();
    let mut next = 1;
    for ag in &agents {
        for _ in 0..rng.gen_range(1..=3) {
            owned
                .entry(ag.clone())
                .or_default()
                .insert(ArgumentId::new(format!("a{next}")));
            next += 1;
        }
    }
    let all: Vec<ArgumentId> = owned.values().flatten().cloned().collect();
    let density = rng.gen_range(0.1..0.4);
    let mut attacks = BTreeSet::new();
    for a in &all {
        for b in &all {
            if rng.gen_bool(density) {
                attacks.insert((a.clone(), b.clone()));
            }
        }
    }
    let global = ArgumentationFrame::dung(all.clone(), attacks).unwrap();
    let scope: BTreeMap<AgentId, ArgumentationFrame> = owned
        .iter()
        .map(|(ag, xs)| (ag.clone(), global.restrict(xs)))
        .collect();

    let public_args: BTreeSet<ArgumentId> = subset(&mut rng, all.iter().cloned(), 0.3)
        .into_iter()
        .collect();
    let induced = global.restrict(&public_args);
    let public = ArgumentationFrame::dung(
        public_args.iter().cloned(),
        subset(&mut rng, induced.attacks().iter().cloned(), 0.7),
    )
    .unwrap();

    let mut aware = BTreeMap::new();
    for ag in &agents {
        let mut args: BTreeSet<ArgumentId> = owned[ag].union(&public_args).cloned().collect();
        args.extend(subset(&mut rng, all.iter().cloned(), 0.3));
        let extra = subset(
            &mut rng,
            global.restrict(&args).attacks().iter().cloned(),
            0.6,
        );
        let f = ArgumentationFrame::dung(
            args,
            scope[ag]
                .attacks()
                .iter()
                .chain(public.attacks())
                .cloned()
                .chain(extra),
        )
        .unwrap();
        aware.insert(ag.clone(), f);
    }

    let own: BTreeMap<AgentId, BTreeSet<ArgumentId>> = agents
        .iter()
        .map(|ag| {
            (
                ag.clone(),
                subset(&mut rng, owned[ag].iter().cloned(), 0.4)
                    .into_iter()
                    .collect(),
            )
        })
        .collect();
    let known_facts: BTreeSet<ArgumentId> = own.values().flatten().cloned().collect();
    let mut factual = BTreeMap::new();
    for v in &agents {
        let mut mine = own[v].clone();
        let visible: Vec<ArgumentId> = known_facts.intersection(aware[v].args()).cloned().collect();
        mine.extend(subset(&mut rng, visible, 0.5));
        if !mine.is_empty() {
            factual.insert((v.clone(), v.clone()), mine.clone());
        }
        for s in agents.iter().filter(|s| *s != v) {
            let mut model: BTreeSet<ArgumentId> = mine.intersection(&owned[s]).cloned().collect();
            model.extend(subset(&mut rng, aware[v].args().iter().cloned(), 0.2));
            if !model.is_empty() {
                factual.insert((v.clone(), s.clone()), model);
            }
        }
    }

    let mut sem = BTreeMap::new();
    let mut trust = BTreeMap::new();
    let mut omega = BTreeMap::new();
    for v in &agents {
        for s in &agents {
            sem.insert(
                (v.clone(), s.clone()),
                *SemanticsKind::ALL.choose(&mut rng).unwrap(),
            );
            trust.insert((v.clone(), s.clone()), rng.gen_range(-3..=3));
            if v != s && rng.gen_bool(0.2) {
                omega.insert((v.clone(), s.clone()), aware[v].clone());
            }
        }
    }
    let m = MmaState {
        global,
        public,
        agents: agents.into_iter().collect(),
        scope,
        aware,
        sem,
        factual,
        trust,
        omega,
    };
    let violations = m.validate();
    assert!(
        violations.is_empty(),
        "generator produced an invalid state: {violations:?}"
    );
    m
}

/// A random valid announcement whose arguments avoid `avoid`, if one is
/// found.
pub fn random_announcement(
    m: &MmaState,
    seed: u64,
    avoid: &BTreeSet<ArgumentId>,
) -> Option<AnnouncementEvent> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let candidates: Vec<ArgumentId> = m.global.args().difference(avoid).cloned().collect();
    let agents: Vec<AgentId> = m.agents.iter().cloned().collect();
    for _ in 0..50 {
        let args: BTreeSet<ArgumentId> = subset(&mut rng, candidates.iter().cloned(), 0.4)
            .into_iter()
            .collect();
        let reachable: Vec<ArgumentId> = args.union(m.public.args()).cloned().collect();
        let mut attacks = BTreeSet::new();
        for a in &args {
            for b in &reachable {
                if rng.gen_bool(0.2) {
                    attacks.insert((a.clone(), b.clone()));
                }
                if rng.gen_bool(0.2) {
                    attacks.insert((b.clone(), a.clone()));
                }
            }
        }
        let payload = ArgumentationFrame::new(args, attacks).unwrap();
        let by = agents.choose(&mut rng).unwrap().clone();
        let ev = AnnouncementEvent::new(payload, [by]);
        if dynamics::check_announcement(m, &ev).is_empty() {
            return Some(ev);
        }
    }
    None
}

/// Every state reached by replaying each fixture's script.
pub fn fixture_states() -> Vec<MmaState> {
    FIXTURES
        .iter()
        .flat_map(|name| scenario::run(&fixture(name)).unwrap().states)
        .collect()
}
