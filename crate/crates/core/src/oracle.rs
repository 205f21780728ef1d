//! Brute-force reference semantics.
//!
//! Enumerates every subset of the argument set and applies the textbook
//! definitions directly (conflict-free, defends, admissible, complete, then
//! preferred as the maximal complete sets and grounded as their
//! intersection). It shares no enumeration code with [`crate::af`] and exists
//! to cross-check it.

use std::collections::BTreeSet;

use rand::Rng;
use thiserror::Error;

use crate::af::{self, ArgumentId, ArgumentationFrame, Extension, ExtensionSet, SemanticsKind};

pub const MAX_ORACLE_ARGS: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("frame has {0} arguments; the oracle enumerates at most {MAX_ORACLE_ARGS}")]
    TooLarge(usize),
    #[error(transparent)]
    Frame(#[from] af::AfError),
}

struct Matrix {
    names: Vec<ArgumentId>,
    // attackers[i] has bit j set iff j attacks i
    attackers: Vec<u32>,
}

impl Matrix {
    fn build(f: &ArgumentationFrame) -> Self {
        let names: Vec<ArgumentId> = f.args().iter().cloned().collect();
        let pos = |a: &ArgumentId| names.iter().position(|n| n == a).unwrap();
        let mut attackers = vec![0u32; names.len()];
        for (a, b) in f.attacks() {
            attackers[pos(b)] |= 1 << pos(a);
        }
        Matrix { names, attackers }
    }

    fn attacks(&self, from: usize, to: usize) -> bool {
        self.attackers[to] >> from & 1 == 1
    }

    fn conflict_free(&self, s: u32) -> bool {
        members(s, self.names.len())
            .all(|i| members(s, self.names.len()).all(|j| !self.attacks(i, j)))
    }

    fn defends(&self, s: u32, x: usize) -> bool {
        let n = self.names.len();
        (0..n)
            .filter(|&y| self.attacks(y, x))
            .all(|y| members(s, n).any(|d| self.attacks(d, y)))
    }

    fn admissible(&self, s: u32) -> bool {
        self.conflict_free(s) && members(s, self.names.len()).all(|x| self.defends(s, x))
    }

    fn complete(&self, s: u32) -> bool {
        let n = self.names.len();
        self.admissible(s)
            && (0..n)
                .filter(|&x| self.defends(s, x))
                .all(|x| s >> x & 1 == 1)
    }

    fn to_extension(&self, s: u32) -> Extension {
        members(s, self.names.len())
            .map(|i| self.names[i].clone())
            .collect()
    }
}

fn members(s: u32, n: usize) -> impl Iterator<Item = usize> {
    (0..n).filter(move |&i| s >> i & 1 == 1)
}

/// Semantics by exhaustive subset enumeration.
pub fn oracle_semantics(
    kind: SemanticsKind,
    f: &ArgumentationFrame,
) -> Result<ExtensionSet, OracleError> {
    f.require_dung()?;
    let n = f.args().len();
    if n > MAX_ORACLE_ARGS {
        return Err(OracleError::TooLarge(n));
    }
    let m = Matrix::build(f);
    let complete: Vec<u32> = (0..(1u32 << n)).filter(|&s| m.complete(s)).collect();
    let chosen: Vec<u32> = match kind {
        SemanticsKind::Complete => complete,
        SemanticsKind::Preferred => complete
            .iter()
            .copied()
            .filter(|&s| !complete.iter().any(|&t| t != s && s & t == s))
            .collect(),
        SemanticsKind::Grounded => vec![complete.iter().fold(mask(n), |acc, &s| acc & s)],
    };
    Ok(chosen.into_iter().map(|s| m.to_extension(s)).collect())
}

fn mask(n: usize) -> u32 {
    if n == 0 {
        0
    } else {
        u32::MAX >> (32 - n)
    }
}

/// Random Dung frame over `a1..an` where each ordered pair (self-attacks
/// included) is an attack with probability `density`.
pub fn random_frame<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> ArgumentationFrame {
    let names: Vec<ArgumentId> = (1..=n).map(|i| ArgumentId::new(format!("a{i}"))).collect();
    let mut attacks = BTreeSet::new();
    for a in &names {
        for b in &names {
            if rng.gen_bool(density) {
                attacks.insert((a.clone(), b.clone()));
            }
        }
    }
    ArgumentationFrame::dung(names, attacks).expect("endpoints drawn from the argument set")
}

/// Every Dung frame over `n` named arguments (all 2^(n*n) attack relations).
pub fn all_frames(n: usize) -> impl Iterator<Item = ArgumentationFrame> {
    let names: Vec<ArgumentId> = (1..=n).map(|i| ArgumentId::new(format!("a{i}"))).collect();
    let pairs: Vec<(ArgumentId, ArgumentId)> = names
        .iter()
        .flat_map(|a| names.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    let total: u64 = 1 << pairs.len();
    (0..total).map(move |bits| {
        let attacks = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, p)| p.clone());
        ArgumentationFrame::dung(names.clone(), attacks).expect("closed pairs")
    })
}

/// A frame where the solver and the oracle disagree.
#[derive(Debug, Clone)]
pub struct Disagreement {
    pub frame: ArgumentationFrame,
    pub kind: SemanticsKind,
    pub solver: ExtensionSet,
    pub oracle: ExtensionSet,
}

/// Compares [`af::semantics`] with [`oracle_semantics`] on all three kinds.
pub fn cross_check(f: &ArgumentationFrame) -> Result<Vec<Disagreement>, OracleError> {
    let mut out = Vec::new();
    for kind in SemanticsKind::ALL {
        let solver = af::semantics(kind, f)?;
        let oracle = oracle_semantics(kind, f)?;
        if solver != oracle {
            out.push(Disagreement {
                frame: f.clone(),
                kind,
                solver,
                oracle,
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Default)]
pub struct CheckReport {
    pub frames: usize,
    pub disagreements: Vec<Disagreement>,
}

/// Exhaustive frames up to `exhaustive_max` arguments followed by `trials`
/// seeded random frames of 0..=`max_args` arguments with densities cycling
/// through 0.1..=0.5.
pub fn run_check(
    exhaustive_max: usize,
    max_args: usize,
    trials: usize,
    seed: u64,
) -> Result<CheckReport, OracleError> {
    use rand::SeedableRng;
    let mut report = CheckReport::default();
    for n in 0..=exhaustive_max {
        for f in all_frames(n) {
            report.frames += 1;
            report.disagreements.extend(cross_check(&f)?);
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let n = rng.gen_range(0..=max_args);
        let density = [0.1, 0.2, 0.3, 0.4, 0.5][t % 5];
        let f = random_frame(&mut rng, n, density);
        report.frames += 1;
        report.disagreements.extend(cross_check(&f)?);
    }
    Ok(report)
}
