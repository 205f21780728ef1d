//! Dung and pre-Dung argumentation frameworks with exact complete, preferred
//! and grounded semantics.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Identifier of an abstract argument, e.g. `a1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ArgumentId(String);

impl ArgumentId {
    pub fn new(id: impl Into<String>) -> Self {
        ArgumentId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for ArgumentId {
    fn from(s: &str) -> Self {
        ArgumentId(s.to_owned())
    }
}

impl From<String> for ArgumentId {
    fn from(s: String) -> Self {
        ArgumentId(s)
    }
}

impl fmt::Display for ArgumentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An attack `(attacker, attacked)`.
pub type Attack = (ArgumentId, ArgumentId);

/// A set of arguments; the members of an [`ExtensionSet`].
pub type Extension = BTreeSet<ArgumentId>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AfError {
    #[error("empty argument identifier")]
    EmptyId,
    #[error("unknown argument `{0}`")]
    UnknownArgument(ArgumentId),
    #[error("attack ({0}, {1}) has no endpoint in the argument set")]
    DanglingAttack(ArgumentId, ArgumentId),
    #[error("frame is pre-Dung: attack ({0}, {1}) leaves the argument set")]
    NotDung(ArgumentId, ArgumentId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrameKind {
    Dung,
    PreDung,
}

/// Argument set plus attack relation.
///
/// Every attack has at least one endpoint among the arguments. When both
/// endpoints of every attack are arguments the frame is a Dung frame,
/// otherwise it is pre-Dung (the shape of a partial public announcement).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFrame", into = "RawFrame")]
pub struct ArgumentationFrame {
    args: BTreeSet<ArgumentId>,
    attacks: BTreeSet<Attack>,
}

#[derive(Serialize, Deserialize)]
struct RawFrame {
    arguments: Vec<ArgumentId>,
    #[serde(default)]
    attacks: Vec<Attack>,
}

impl TryFrom<RawFrame> for ArgumentationFrame {
    type Error = AfError;

    fn try_from(raw: RawFrame) -> Result<Self, AfError> {
        ArgumentationFrame::new(raw.arguments, raw.attacks)
    }
}

impl From<ArgumentationFrame> for RawFrame {
    fn from(f: ArgumentationFrame) -> Self {
        RawFrame {
            arguments: f.args.into_iter().collect(),
            attacks: f.attacks.into_iter().collect(),
        }
    }
}

impl ArgumentationFrame {
    /// Builds a Dung or pre-Dung frame. Rejects attacks with no endpoint in
    /// `args`.
    pub fn new(
        args: impl IntoIterator<Item = ArgumentId>,
        attacks: impl IntoIterator<Item = Attack>,
    ) -> Result<Self, AfError> {
        let args: BTreeSet<ArgumentId> = args.into_iter().collect();
        if args.iter().any(|a| a.as_str().is_empty()) {
            return Err(AfError::EmptyId);
        }
        let attacks: BTreeSet<Attack> = attacks.into_iter().collect();
        for (a, b) in &attacks {
            if a.as_str().is_empty() || b.as_str().is_empty() {
                return Err(AfError::EmptyId);
            }
            if !args.contains(a) && !args.contains(b) {
                return Err(AfError::DanglingAttack(a.clone(), b.clone()));
            }
        }
        Ok(ArgumentationFrame { args, attacks })
    }

    /// Builds a frame that must be Dung.
    pub fn dung(
        args: impl IntoIterator<Item = ArgumentId>,
        attacks: impl IntoIterator<Item = Attack>,
    ) -> Result<Self, AfError> {
        let f = Self::new(args, attacks)?;
        f.require_dung()?;
        Ok(f)
    }

    /// Convenience constructor from string slices.
    pub fn from_strs(args: &[&str], attacks: &[(&str, &str)]) -> Result<Self, AfError> {
        Self::new(
            args.iter().map(|&a| ArgumentId::from(a)),
            attacks.iter().map(|&(a, b)| (a.into(), b.into())),
        )
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn args(&self) -> &BTreeSet<ArgumentId> {
        &self.args
    }

    pub fn attacks(&self) -> &BTreeSet<Attack> {
        &self.attacks
    }

    pub fn is_empty(&self) -> bool {
        self.args.is_empty() && self.attacks.is_empty()
    }

    pub fn contains_arg(&self, a: &ArgumentId) -> bool {
        self.args.contains(a)
    }

    pub fn has_attack(&self, a: &ArgumentId, b: &ArgumentId) -> bool {
        self.attacks.contains(&(a.clone(), b.clone()))
    }

    pub fn kind(&self) -> FrameKind {
        if self.first_dangling().is_none() {
            FrameKind::Dung
        } else {
            FrameKind::PreDung
        }
    }

    fn first_dangling(&self) -> Option<&Attack> {
        self.attacks
            .iter()
            .find(|(a, b)| !self.args.contains(a) || !self.args.contains(b))
    }

    pub fn require_dung(&self) -> Result<(), AfError> {
        match self.first_dangling() {
            None => Ok(()),
            Some((a, b)) => Err(AfError::NotDung(a.clone(), b.clone())),
        }
    }

    fn require_members<'a>(
        &self,
        s: impl IntoIterator<Item = &'a ArgumentId>,
    ) -> Result<(), AfError> {
        for a in s {
            if !self.args.contains(a) {
                return Err(AfError::UnknownArgument(a.clone()));
            }
        }
        Ok(())
    }

    /// Arguments attacking `a`.
    pub fn attackers_of<'a>(
        &'a self,
        a: &'a ArgumentId,
    ) -> impl Iterator<Item = &'a ArgumentId> + 'a {
        self.attacks
            .iter()
            .filter(move |(_, t)| t == a)
            .map(|(s, _)| s)
    }

    /// Sub-frame containment: arguments and attacks both included.
    pub fn is_subframe_of(&self, other: &ArgumentationFrame) -> bool {
        self.args.is_subset(&other.args) && self.attacks.is_subset(&other.attacks)
    }

    /// The sub-frame induced by `keep`. The result is always Dung.
    pub fn restrict(&self, keep: &BTreeSet<ArgumentId>) -> ArgumentationFrame {
        let args: BTreeSet<ArgumentId> = self.args.intersection(keep).cloned().collect();
        let attacks = self
            .attacks
            .iter()
            .filter(|(a, b)| args.contains(a) && args.contains(b))
            .cloned()
            .collect();
        ArgumentationFrame { args, attacks }
    }

    /// Union or intersection of two frames, keeping only attacks between
    /// arguments of the combined set.
    pub fn combine(&self, other: &ArgumentationFrame, op: SetOp) -> ArgumentationFrame {
        let (args, attacks): (BTreeSet<ArgumentId>, BTreeSet<Attack>) = match op {
            SetOp::Union => (
                self.args.union(&other.args).cloned().collect(),
                self.attacks.union(&other.attacks).cloned().collect(),
            ),
            SetOp::Intersection => (
                self.args.intersection(&other.args).cloned().collect(),
                self.attacks.intersection(&other.attacks).cloned().collect(),
            ),
        };
        let attacks = attacks
            .into_iter()
            .filter(|(a, b)| args.contains(a) && args.contains(b))
            .collect();
        ArgumentationFrame { args, attacks }
    }

    pub fn union(&self, other: &ArgumentationFrame) -> ArgumentationFrame {
        self.combine(other, SetOp::Union)
    }

    pub fn intersection(&self, other: &ArgumentationFrame) -> ArgumentationFrame {
        self.combine(other, SetOp::Intersection)
    }

    /// Same arguments, replaced attack relation. Used by preference
    /// adjustment, which never touches the argument set.
    pub(crate) fn with_attacks(&self, attacks: BTreeSet<Attack>) -> ArgumentationFrame {
        ArgumentationFrame {
            args: self.args.clone(),
            attacks,
        }
    }
}

impl fmt::Display for ArgumentationFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({{")?;
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}},{{")?;
        for (i, (a, b)) in self.attacks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({a},{b})")?;
        }
        write!(f, "}})")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetOp {
    Union,
    Intersection,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SemanticsKind {
    Complete,
    Preferred,
    Grounded,
}

impl SemanticsKind {
    pub const ALL: [SemanticsKind; 3] = [Self::Complete, Self::Preferred, Self::Grounded];

    pub fn name(self) -> &'static str {
        match self {
            Self::Complete => "complete",
            Self::Preferred => "preferred",
            Self::Grounded => "grounded",
        }
    }
}

impl fmt::Display for SemanticsKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SemanticsKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "complete" | "co" => Ok(Self::Complete),
            "preferred" | "pr" => Ok(Self::Preferred),
            "grounded" | "gr" => Ok(Self::Grounded),
            other => Err(format!("unknown semantics `{other}`")),
        }
    }
}

/// A set of extensions. Iteration order is lexicographic over the sorted
/// member ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExtensionSet(BTreeSet<Extension>);

impl ExtensionSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// `{∅}`.
    pub fn with_empty() -> Self {
        std::iter::once(Extension::new()).collect()
    }

    pub fn insert(&mut self, e: Extension) -> bool {
        self.0.insert(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: &Extension) -> bool {
        self.0.contains(e)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Extension> {
        self.0.iter()
    }

    pub fn as_set(&self) -> &BTreeSet<Extension> {
        &self.0
    }

    /// Extensions present in both sets.
    pub fn common(&self, other: &ExtensionSet) -> ExtensionSet {
        self.0.intersection(&other.0).cloned().collect()
    }

    /// Convenience for tests and fixtures: `ExtensionSet::of(&[&["a1"], &[]])`.
    pub fn of(sets: &[&[&str]]) -> Self {
        sets.iter()
            .map(|s| s.iter().map(|&a| ArgumentId::from(a)).collect())
            .collect()
    }
}

impl FromIterator<Extension> for ExtensionSet {
    fn from_iter<I: IntoIterator<Item = Extension>>(iter: I) -> Self {
        ExtensionSet(iter.into_iter().collect())
    }
}

impl IntoIterator for ExtensionSet {
    type Item = Extension;
    type IntoIter = std::collections::btree_set::IntoIter<Extension>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl fmt::Display for ExtensionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{{")?;
            for (j, a) in e.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AcceptanceMode {
    Credulous,
    Skeptical,
}

pub fn is_conflict_free(s: &Extension, f: &ArgumentationFrame) -> Result<bool, AfError> {
    f.require_dung()?;
    f.require_members(s)?;
    Ok(!f
        .attacks
        .iter()
        .any(|(a, b)| s.contains(a) && s.contains(b)))
}

/// Whether every attacker of `a` is attacked by some member of `s`.
pub fn defends(s: &Extension, a: &ArgumentId, f: &ArgumentationFrame) -> Result<bool, AfError> {
    f.require_dung()?;
    f.require_members(s)?;
    f.require_members(std::iter::once(a))?;
    Ok(f.attackers_of(a)
        .all(|attacker| s.iter().any(|d| f.has_attack(d, attacker))))
}

pub fn complete_sets(f: &ArgumentationFrame) -> Result<ExtensionSet, AfError> {
    f.require_dung()?;
    Ok(Solver::new(f).complete())
}

pub fn preferred_sets(f: &ArgumentationFrame) -> Result<ExtensionSet, AfError> {
    f.require_dung()?;
    let solver = Solver::new(f);
    let complete = solver.complete_masks();
    Ok(solver.to_extensions(maximal(&complete)))
}

/// The grounded extension as a singleton set; the least fixpoint of the
/// defense operator.
pub fn grounded_set(f: &ArgumentationFrame) -> Result<ExtensionSet, AfError> {
    f.require_dung()?;
    let solver = Solver::new(f);
    let (grounded, _) = solver.grounded_labelling();
    Ok(solver.to_extensions(vec![grounded]))
}

pub fn semantics(kind: SemanticsKind, f: &ArgumentationFrame) -> Result<ExtensionSet, AfError> {
    match kind {
        SemanticsKind::Complete => complete_sets(f),
        SemanticsKind::Preferred => preferred_sets(f),
        SemanticsKind::Grounded => grounded_set(f),
    }
}

pub fn acceptance(
    a: &ArgumentId,
    kind: SemanticsKind,
    f: &ArgumentationFrame,
    mode: AcceptanceMode,
) -> Result<bool, AfError> {
    f.require_members(std::iter::once(a))?;
    let exts = semantics(kind, f)?;
    Ok(match mode {
        AcceptanceMode::Credulous => exts.iter().any(|e| e.contains(a)),
        AcceptanceMode::Skeptical => exts.iter().all(|e| e.contains(a)),
    })
}

/// Free-function form of [`ArgumentationFrame::restrict`].
pub fn restrict(f: &ArgumentationFrame, keep: &BTreeSet<ArgumentId>) -> ArgumentationFrame {
    f.restrict(keep)
}

/// Free-function form of [`ArgumentationFrame::combine`].
pub fn combine(f1: &ArgumentationFrame, f2: &ArgumentationFrame, op: SetOp) -> ArgumentationFrame {
    f1.combine(f2, op)
}

/// Bit-packed argument set indexed by the solver's argument order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            (0..64)
                .filter(move |b| word >> b & 1 == 1)
                .map(move |b| w * 64 + b)
        })
    }
}

/// Index-based view of a Dung frame for enumeration.
struct Solver<'f> {
    names: Vec<&'f ArgumentId>,
    attackers: Vec<Vec<usize>>,
    targets: Vec<Vec<usize>>,
}

impl<'f> Solver<'f> {
    fn new(f: &'f ArgumentationFrame) -> Self {
        let names: Vec<&ArgumentId> = f.args.iter().collect();
        let index: BTreeMap<&ArgumentId, usize> =
            names.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let mut attackers = vec![Vec::new(); names.len()];
        let mut targets = vec![Vec::new(); names.len()];
        for (a, b) in &f.attacks {
            let (ia, ib) = (index[a], index[b]);
            attackers[ib].push(ia);
            targets[ia].push(ib);
        }
        Solver {
            names,
            attackers,
            targets,
        }
    }

    fn len(&self) -> usize {
        self.names.len()
    }

    /// Grounded labelling by fixpoint iteration: returns (in, out).
    fn grounded_labelling(&self) -> (Bits, Bits) {
        let n = self.len();
        let mut inn = Bits::new(n);
        let mut out = Bits::new(n);
        loop {
            let mut changed = false;
            for a in 0..n {
                if inn.get(a) || out.get(a) {
                    continue;
                }
                if self.attackers[a].iter().all(|&b| out.get(b)) {
                    inn.set(a);
                    changed = true;
                } else if self.attackers[a].iter().any(|&b| inn.get(b)) {
                    out.set(a);
                    changed = true;
                }
            }
            if !changed {
                return (inn, out);
            }
        }
    }

    /// Every complete extension contains the grounded one and excludes what
    /// it attacks, so the search only branches over the undecided rest.
    fn complete_masks(&self) -> Vec<Bits> {
        let (inn, out) = self.grounded_labelling();
        let undecided: Vec<usize> = (0..self.len())
            .filter(|&a| !inn.get(a) && !out.get(a))
            .collect();
        let mut found = Vec::new();
        let mut current = inn;
        self.branch(&undecided, 0, &mut current, &mut found);
        found
    }

    fn branch(&self, order: &[usize], depth: usize, current: &mut Bits, found: &mut Vec<Bits>) {
        if depth == order.len() {
            if self.is_complete(current) {
                found.push(current.clone());
            }
            return;
        }
        let a = order[depth];
        self.branch(order, depth + 1, current, found);
        let conflicts = self.attackers[a].iter().any(|&b| b == a || current.get(b))
            || self.targets[a].iter().any(|&b| current.get(b));
        if !conflicts {
            current.set(a);
            self.branch(order, depth + 1, current, found);
            current.clear(a);
        }
    }

    fn defended_by(&self, s: &Bits, a: usize) -> bool {
        self.attackers[a]
            .iter()
            .all(|&b| self.attackers[b].iter().any(|&d| s.get(d)))
    }

    fn is_complete(&self, s: &Bits) -> bool {
        (0..self.len()).all(|a| s.get(a) == self.defended_by(s, a))
    }

    fn to_extensions(&self, masks: impl IntoIterator<Item = Bits>) -> ExtensionSet {
        masks
            .into_iter()
            .map(|m| m.ones().map(|i| self.names[i].clone()).collect())
            .collect()
    }

    fn complete(&self) -> ExtensionSet {
        self.to_extensions(self.complete_masks())
    }
}

fn maximal(sets: &[Bits]) -> Vec<Bits> {
    sets.iter()
        .filter(|s| !sets.iter().any(|t| t != *s && s.is_subset(t)))
        .cloned()
        .collect()
}
