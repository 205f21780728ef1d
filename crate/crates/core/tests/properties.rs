mod common;

use std::collections::BTreeSet;

use common::*;
use mma::af::{self, SemanticsKind};
use mma::dynamics::{self, DetectionVerdict, TrustPolicy};
use mma::oracle::{self, oracle_semantics, random_frame};
use mma::preference::{self, IntraPreference, PreferenceOrder, StrictPreference};
use mma::scenario;
use mma::{ArgumentId, ArgumentationFrame, MmaState};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn frame_from_seed(seed: u64, n: usize, density: f64) -> ArgumentationFrame {
    random_frame(&mut ChaCha8Rng::seed_from_u64(seed), n, density)
}

fn random_order(f: &ArgumentationFrame, seed: u64) -> PreferenceOrder {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // A random ranking gives a strict partial order.
    let rank: Vec<(ArgumentId, u8)> = f
        .args()
        .iter()
        .map(|a| (a.clone(), rng.gen_range(0..3)))
        .collect();
    PreferenceOrder::from_strict(rank.iter().flat_map(|(a, ra)| {
        rank.iter()
            .filter(move |(_, rb)| ra < rb)
            .map(move |(b, _)| (a.clone(), b.clone()))
    }))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn solver_matches_oracle(seed in any::<u64>(), n in 0usize..=8, density in 0.05f64..0.6) {
        let f = frame_from_seed(seed, n, density);
        let d = oracle::cross_check(&f).unwrap();
        prop_assert!(d.is_empty(), "{:?}", d);
    }

    #[test]
    fn semantics_relations(seed in any::<u64>(), n in 0usize..=9, density in 0.05f64..0.6) {
        let f = frame_from_seed(seed, n, density);
        let complete = af::complete_sets(&f).unwrap();
        let preferred = af::preferred_sets(&f).unwrap();
        let grounded = af::grounded_set(&f).unwrap();
        prop_assert_eq!(grounded.len(), 1);
        let g = grounded.iter().next().unwrap();
        prop_assert!(complete.contains(g));
        for c in complete.iter() {
            prop_assert!(g.is_subset(c));
            prop_assert!(af::is_conflict_free(c, &f).unwrap());
            prop_assert!(preferred.iter().any(|p| c.is_subset(p)));
        }
        for p in preferred.iter() {
            prop_assert!(complete.contains(p));
        }
        prop_assert!(!preferred.is_empty());
    }

    #[test]
    fn adjustment_invariants(seed in any::<u64>(), n in 0usize..=8, density in 0.05f64..0.6) {
        let f = frame_from_seed(seed, n, density);
        let p = random_order(&f, seed ^ 0x5eed);
        let g = preference::adjust(&f, &p).unwrap();
        prop_assert_eq!(g.args(), f.args());
        prop_assert!(g.attacks().len() <= f.attacks().len());
        for (a, b) in g.attacks() {
            prop_assert!(f.has_attack(a, b) || f.has_attack(b, a));
        }
        prop_assert_eq!(preference::adjust(&g, &p).unwrap(), g.clone());
        for (a, b) in f.attacks() {
            if p.is_less(a, b) {
                prop_assert!(g.has_attack(b, a) && !g.has_attack(a, b));
            }
        }
    }

    #[test]
    fn factual_without_conflicts_leaves_frame_alone(seed in any::<u64>(), n in 1usize..=8) {
        let f = frame_from_seed(seed, n, 0.3);
        let involved: BTreeSet<ArgumentId> = f.attacks().iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
        let quiet: BTreeSet<ArgumentId> = f.args().difference(&involved).cloned().collect();
        let p = IntraPreference::new(quiet, f.args().clone()).unwrap();
        prop_assert_eq!(preference::adjust(&f, &p).unwrap(), f);
    }

    #[test]
    fn random_states_satisfy_faithful_scopes(seed in any::<u64>()) {
        let m = random_state(seed);
        prop_assert!(faithful_scopes(&m));
    }

    #[test]
    fn local_scope_preservation(seed in any::<u64>()) {
        let m = random_state(seed);
        for ag in m.agents.clone() {
            let avoid = m.scope[&ag].args().clone();
            if let Some(ev) = random_announcement(&m, seed.wrapping_add(1), &avoid) {
                let t = dynamics::announce(&m, &ev).unwrap();
                prop_assert_eq!(&t.after.scope[&ag], &m.scope[&ag]);
                prop_assert!(t.after.validate().is_empty(), "{:?}", t.after.validate());
            }
        }
    }

    #[test]
    fn updates_change_the_state(seed in any::<u64>(), h in 0u32..3, d in 0u32..3) {
        let m = random_state(seed);
        if let Some(ev) = random_announcement(&m, seed, &BTreeSet::new()) {
            let m2 = dynamics::update(&m, &ev, TrustPolicy { honest: h, dishonest: d }).unwrap();
            prop_assert_ne!(&m2.public, &m.public);
            prop_assert_ne!(m2, m);
        }
    }

    #[test]
    fn announcements_are_monotone(seed in any::<u64>()) {
        let m = random_state(seed);
        if let Some(ev) = random_announcement(&m, seed, &BTreeSet::new()) {
            let t = dynamics::announce(&m, &ev).unwrap();
            let a = &t.after;
            prop_assert!(m.public.is_subframe_of(&a.public));
            prop_assert!(m.global.is_subframe_of(&a.global));
            for ag in &m.agents {
                prop_assert!(m.aware[ag].is_subframe_of(&a.aware[ag]));
                prop_assert_eq!(m.scope[ag].args(), a.scope[ag].args());
            }
            prop_assert_eq!(&m.factual, &a.factual);
            prop_assert_eq!(&m.agents, &a.agents);
            prop_assert_eq!(&m.sem, &a.sem);
            prop_assert_eq!(&m.trust, &a.trust);

            let r = dynamics::revise(&m, &ev, a, TrustPolicy::default()).unwrap();
            let mut same = r.clone();
            same.trust = a.trust.clone();
            prop_assert_eq!(&same, a);
        }
    }

    #[test]
    fn verdicts_are_exclusive(seed in any::<u64>()) {
        let m = random_state(seed);
        if let Some(ev) = random_announcement(&m, seed, &BTreeSet::new()) {
            let t = dynamics::announce(&m, &ev).unwrap();
            for (_, d) in dynamics::detection_matrix(&t).unwrap() {
                let disjoint = d.source.common(&d.target).is_empty();
                let equal = d.source == d.target;
                prop_assert!(!(disjoint && equal));
                prop_assert!(!d.source.is_empty() && !d.target.is_empty());
                match d.verdict {
                    DetectionVerdict::Honest => prop_assert!(equal && !d.relevant.is_empty()),
                    DetectionVerdict::Dishonest => prop_assert!(disjoint && !d.relevant.is_empty()),
                    DetectionVerdict::Undetermined => {}
                }
            }
        }
    }

    #[test]
    fn uniform_trust_makes_trust_adjustment_neutral(seed in any::<u64>()) {
        let mut m = random_state(seed);
        for t in m.trust.values_mut() {
            *t = 0;
        }
        for ag in &m.agents {
            prop_assert_eq!(
                mma::epistemic::trust_adjusted_public_semantics(&m, ag).unwrap(),
                mma::epistemic::trust_neutral_public_semantics(&m, ag, ag).unwrap()
            );
        }
    }

    #[test]
    fn perceived_frames_respect_bounds(seed in any::<u64>()) {
        let m = random_state(seed);
        for v in &m.agents {
            for s in &m.agents {
                let p = mma::epistemic::perceived(&m, v, s).unwrap();
                prop_assert!(p.frame.is_subframe_of(&m.aware[v]));
                prop_assert!(m.omega_lower_bound(v, s).unwrap().is_subframe_of(&p.frame));
                if v == s {
                    prop_assert_eq!(&p.frame, &m.aware[v]);
                }
            }
        }
    }

    #[test]
    fn scenario_round_trip(seed in any::<u64>()) {
        let m = random_state(seed);
        let sc = mma::Scenario {
            initial: m,
            labels: Default::default(),
            script: Vec::new(),
            policy: TrustPolicy::default(),
            trust_cap: 1000,
            notes: String::new(),
        };
        let again = scenario::load_str(&scenario::to_json(&sc)).unwrap();
        prop_assert_eq!(again, sc);
    }
}

pub fn faithful_scopes(m: &MmaState) -> bool {
    m.agents.iter().all(|ag| {
        let scope = &m.scope[ag];
        let inside: BTreeSet<_> = m.aware[ag]
            .attacks()
            .union(m.global.attacks())
            .filter(|(a, b)| scope.contains_arg(a) && scope.contains_arg(b))
            .cloned()
            .collect();
        &inside == scope.attacks()
    })
}

#[test]
fn fixture_states_satisfy_faithful_scopes() {
    for m in fixture_states() {
        assert!(m.validate().is_empty());
        assert!(faithful_scopes(&m));
    }
}

#[test]
fn fixture_round_trips() {
    for name in FIXTURES {
        let sc = fixture(name);
        assert_eq!(
            scenario::load_str(&scenario::to_json(&sc)).unwrap(),
            sc,
            "{name}"
        );
    }
}

#[test]
fn grounded_is_the_meet_of_complete_on_all_small_frames() {
    for n in 0..=3 {
        for f in oracle::all_frames(n) {
            let complete = oracle_semantics(SemanticsKind::Complete, &f).unwrap();
            let mut it = complete.iter();
            let first = it.next().unwrap().clone();
            let meet = it.fold(first, |acc, c| acc.intersection(c).cloned().collect());
            let g = af::grounded_set(&f).unwrap();
            assert_eq!(g.len(), 1);
            assert!(g.contains(&meet));
        }
    }
}
