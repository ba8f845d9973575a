//! Bounded checker for candidate limit-bisimulation witnesses.
//!
//! A net of systems over ℕ is sampled on bounded arithmetic progressions and
//! a candidate relation is explored as a game: from every related pair the
//! candidate's transitions must be matched by the net (second condition) and
//! every uniform move of the net, on any sampled cofinal subset and for any
//! periodic choice of successors, must be matched by the candidate (third
//! condition). Infinite branching is truncated at `horizon + 2` successors.
//! A candidate move onto a strand that the net offers on fewer than
//! [`MIN_TAIL`] tail samples is beyond the bounds and is skipped, as are net
//! moves onto too sparse subsets.
//!
//! "Eventually" is read on the tail: indices at least `horizon / 2`, of which
//! at least [`MIN_TAIL`] must be sampled. "Unbounded" is read as strictly
//! increasing on the tail. A pass means no violation exists within the
//! bounds; it is not a proof.

use std::borrow::Cow;
use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{early_choice_lts, delayed_choice_lts, Lts};
use crate::family::CofinalSample;

/// Fewest tail samples for an "eventually" judgement.
pub const MIN_TAIL: usize = 2;

/// States of the systems handled here: explicit states by name, and the
/// states `⊥`, `(k, l)`, `(ω, l)` of the fan systems.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NetState {
    Named(String),
    Bot,
    Pair(usize, usize),
    Omega(usize),
}

impl fmt::Display for NetState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NetState::Named(s) => f.write_str(s),
            NetState::Bot => f.write_str("⊥"),
            NetState::Pair(k, l) => write!(f, "({k},{l})"),
            NetState::Omega(l) => write!(f, "(ω,{l})"),
        }
    }
}

/// A transition system that may be infinitely branching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SystemDesc {
    Explicit(Lts),
    /// Strands `⊥ → (k,0) → … → (k,k)` for every `k`, plus the infinite
    /// strand `⊥ → (ω,0) → (ω,1) → …` when `with_omega`; single label `a`.
    Fan { with_omega: bool },
    /// The strands `k < m` of the fan.
    FanDay(usize),
}

const FAN_LABEL: &str = "a";

impl SystemDesc {
    pub fn initial(&self) -> NetState {
        match self {
            SystemDesc::Explicit(l) => NetState::Named(l.state_name(l.initial()).to_string()),
            _ => NetState::Bot,
        }
    }

    pub fn labels(&self) -> Vec<String> {
        match self {
            SystemDesc::Explicit(l) => l.alphabet().to_vec(),
            _ => vec![FAN_LABEL.to_string()],
        }
    }

    /// Successors under `label`, at most `bound + 1` fan strands, in a fixed order.
    pub fn successors(&self, x: &NetState, label: &str, bound: usize) -> Vec<NetState> {
        match self {
            SystemDesc::Explicit(l) => {
                let (NetState::Named(name), Some(a)) = (x, l.label(label)) else {
                    return Vec::new();
                };
                let Some(s) = l.state(name) else { return Vec::new() };
                l.successors(s, a)
                    .into_iter()
                    .map(|y| NetState::Named(l.state_name(y).to_string()))
                    .collect()
            }
            SystemDesc::Fan { with_omega } => {
                if label != FAN_LABEL {
                    return Vec::new();
                }
                match *x {
                    NetState::Bot => {
                        let mut v: Vec<NetState> = (0..=bound).map(|k| NetState::Pair(k, 0)).collect();
                        if *with_omega {
                            v.push(NetState::Omega(0));
                        }
                        v
                    }
                    NetState::Pair(k, l) if l < k => vec![NetState::Pair(k, l + 1)],
                    NetState::Omega(l) if *with_omega => vec![NetState::Omega(l + 1)],
                    _ => Vec::new(),
                }
            }
            SystemDesc::FanDay(m) => {
                if label != FAN_LABEL {
                    return Vec::new();
                }
                match *x {
                    NetState::Bot => (0..(*m).min(bound + 1)).map(|k| NetState::Pair(k, 0)).collect(),
                    NetState::Pair(k, l) if l < k && k < *m => vec![NetState::Pair(k, l + 1)],
                    _ => Vec::new(),
                }
            }
        }
    }
}

/// A net of systems indexed by ℕ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NetDesc {
    Constant(SystemDesc),
    /// Day `n` holds the strands `k < n`.
    FanDays,
}

impl NetDesc {
    fn system_at(&self, n: usize) -> Cow<'_, SystemDesc> {
        match self {
            NetDesc::Constant(s) => Cow::Borrowed(s),
            NetDesc::FanDays => Cow::Owned(SystemDesc::FanDay(n)),
        }
    }
}

/// A subnet `{x_k | k ∈ C}` on a sampled cofinal set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SampledNet {
    sample: CofinalSample,
    indices: Vec<usize>,
    states: Vec<NetState>,
}

impl SampledNet {
    fn new(sample: CofinalSample, states: Vec<NetState>) -> Self {
        let indices: Vec<usize> = sample.members().collect();
        debug_assert_eq!(indices.len(), states.len());
        SampledNet { sample, indices, states }
    }

    pub fn sample(&self) -> &CofinalSample {
        &self.sample
    }

    pub fn states(&self) -> &[NetState] {
        &self.states
    }

    /// Positional sub-progression.
    fn restrict(&self, offset: usize, stride: usize) -> Option<SampledNet> {
        let sample = self.sample.sub(offset, stride)?;
        let states = self.states.iter().skip(offset).step_by(stride).cloned().collect();
        Some(SampledNet::new(sample, states))
    }

    fn tail(&self) -> &[NetState] {
        let from = self.sample.horizon() / 2;
        let start = self.indices.partition_point(|&k| k < from);
        &self.states[start..]
    }

    fn summary(&self) -> String {
        let shown: Vec<String> = self
            .indices
            .iter()
            .zip(&self.states)
            .take(6)
            .map(|(k, x)| format!("{k}:{x}"))
            .collect();
        let more = if self.states.len() > 6 { ", …" } else { "" };
        format!(
            "{{{}+{}t ≤ {}}} [{}{more}]",
            self.sample.offset(),
            self.sample.stride(),
            self.sample.horizon(),
            shown.join(", ")
        )
    }
}

/// The candidate relation between candidate states and subnets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WitnessRelation {
    /// `x` related to nets eventually constant at `x`.
    Identity,
    /// `⊥` to the all-`⊥` net, `(k,l)` to nets eventually `(k,l)`, and
    /// `(ω,l)` to nets eventually on level `l` with unbounded strand index.
    FanOmega,
    /// `star` to nets eventually inside `options` visiting each of them
    /// infinitely often; every other state as in `Identity`.
    DelayedChoice { star: String, options: Vec<String> },
}

impl WitnessRelation {
    /// `None` when the tail is too short to judge.
    fn relate(&self, x: &NetState, net: &SampledNet) -> Option<bool> {
        let tail = net.tail();
        if tail.len() < MIN_TAIL {
            return None;
        }
        let constant = |s: &NetState| tail.iter().all(|y| y == s);
        Some(match self {
            WitnessRelation::Identity => constant(x),
            WitnessRelation::FanOmega => match x {
                NetState::Bot => net.states.iter().all(|y| *y == NetState::Bot),
                NetState::Pair(..) => constant(x),
                NetState::Omega(l) => {
                    let mut prev = None;
                    tail.iter().all(|y| match *y {
                        NetState::Pair(k, l2) if l2 == *l && prev.map_or(true, |p| k > p) => {
                            prev = Some(k);
                            true
                        }
                        _ => false,
                    })
                }
                NetState::Named(_) => false,
            },
            WitnessRelation::DelayedChoice { star, options } => match x {
                NetState::Named(s) if s == star => {
                    let inside = tail
                        .iter()
                        .all(|y| matches!(y, NetState::Named(n) if options.contains(n)));
                    let seen: BTreeSet<&NetState> = tail.iter().collect();
                    inside
                        && options
                            .iter()
                            .all(|o| seen.contains(&NetState::Named(o.clone())))
                }
                _ => constant(x),
            },
        })
    }
}

/// How the second condition may re-index the net.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Bullet2Reading {
    /// Only a tail `{k ∈ C | k ≥ n₀}` of the given cofinal set, any `n₀`.
    Literal,
    /// Any sampled cofinal subset of the given cofinal set.
    CofinalRestriction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessSpec {
    pub candidate: SystemDesc,
    pub net: NetDesc,
    pub relation: WitnessRelation,
    pub reading: Bullet2Reading,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessBounds {
    /// Largest positional offset of a sampled subset.
    pub max_offset: usize,
    /// Largest positional stride of a sampled subset.
    pub max_stride: usize,
    /// Largest net index.
    pub horizon: usize,
    /// Number of transitions explored from the initial pair.
    pub depth: usize,
}

impl WitnessBounds {
    pub fn new(max_offset: usize, max_stride: usize, horizon: usize, depth: usize) -> Self {
        WitnessBounds { max_offset, max_stride, horizon, depth }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessStats {
    pub pairs: usize,
    pub candidate_moves: usize,
    pub net_moves: usize,
    /// Net moves whose successor subnet is too sparse to judge.
    pub skipped_moves: usize,
    /// Candidate moves onto strands the net offers too rarely to judge.
    pub skipped_candidate_moves: usize,
    pub max_depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessViolation {
    pub bullet: u8,
    pub depth: usize,
    pub state: String,
    pub net: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum WitnessOutcome {
    /// No violation within the bounds. Not a proof.
    Pass { stats: WitnessStats },
    Violation(WitnessViolation),
}

impl WitnessOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, WitnessOutcome::Pass { .. })
    }

    pub fn violated_bullet(&self) -> Option<u8> {
        match self {
            WitnessOutcome::Violation(v) => Some(v.bullet),
            WitnessOutcome::Pass { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("bounds too small: {0}")]
    BoundsTooSmall(String),
}

/// One choice per position: which successor a periodic strategy takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Atom {
    /// The `i`-th successor.
    Pos(usize),
    /// Successor `k mod len` at net index `k`.
    Cycle,
    /// The last successor.
    Last,
    /// The successor equal to the candidate's target state.
    Match,
}

fn periodic(atoms: &[Atom]) -> Vec<Vec<Atom>> {
    let mut out: Vec<Vec<Atom>> = atoms.iter().map(|&a| vec![a]).collect();
    for &a in atoms {
        for &b in atoms {
            if a != b {
                out.push(vec![a, b]);
            }
        }
    }
    out
}

struct Checker<'a> {
    spec: &'a WitnessSpec,
    bounds: WitnessBounds,
    bound: usize,
    net_selectors: Vec<Vec<Atom>>,
    witness_selectors: Vec<Vec<Atom>>,
    restrictions: Vec<(usize, usize)>,
    whole: Vec<(usize, usize)>,
    labels: Vec<String>,
}

impl Checker<'_> {
    /// Applies a periodic successor choice at every sampled index.
    fn choose(&self, net: &SampledNet, label: &str, sel: &[Atom], target: Option<&NetState>) -> Vec<Option<NetState>> {
        net.indices
            .iter()
            .zip(&net.states)
            .enumerate()
            .map(|(p, (&k, x))| {
                let succ = self.spec.net.system_at(k).successors(x, label, self.bound);
                match sel[p % sel.len()] {
                    Atom::Pos(i) => succ.get(i).cloned(),
                    Atom::Cycle => (!succ.is_empty()).then(|| succ[k % succ.len()].clone()),
                    Atom::Last => succ.last().cloned(),
                    Atom::Match => target.and_then(|t| succ.iter().find(|y| *y == t).cloned()),
                }
            })
            .collect()
    }

    /// Fan strands are truncated, so a candidate move onto a strand state
    /// is judged only if the net offers that state on at least
    /// [`MIN_TAIL`] tail samples.
    fn visible(&self, net: &SampledNet, label: &str, target: &NetState) -> bool {
        if !matches!(target, NetState::Pair(..)) {
            return true;
        }
        let from = net.sample.horizon() / 2;
        let in_tail = net
            .indices
            .iter()
            .zip(&net.states)
            .filter(|&(&k, x)| k >= from && self.spec.net.system_at(k).successors(x, label, self.bound).contains(target))
            .count();
        in_tail >= MIN_TAIL
    }

    /// The net move at every sampled index, or `None` if some index has no
    /// matching successor.
    fn step(&self, net: &SampledNet, label: &str, sel: &[Atom]) -> Option<SampledNet> {
        let states = self.choose(net, label, sel, None).into_iter().collect::<Option<Vec<_>>>()?;
        Some(SampledNet::new(net.sample, states))
    }

    /// The net move from the least `n₀` after which every index has a
    /// matching successor.
    fn step_from_some_n0(&self, net: &SampledNet, label: &str, sel: &[Atom], target: &NetState) -> Option<SampledNet> {
        let choices = self.choose(net, label, sel, Some(target));
        let from = choices.iter().rposition(Option::is_none).map_or(0, |q| q + 1);
        let trimmed = net.restrict(from, 1)?;
        let states = choices.into_iter().skip(from).map(|c| c.expect("defined after n₀")).collect();
        Some(SampledNet::new(trimmed.sample, states))
    }

    fn violation(&self, bullet: u8, depth: usize, x: &NetState, net: &SampledNet, detail: String) -> WitnessOutcome {
        WitnessOutcome::Violation(WitnessViolation {
            bullet,
            depth,
            state: x.to_string(),
            net: net.summary(),
            detail,
        })
    }

    fn run(&self) -> Result<WitnessOutcome, WitnessError> {
        let full = CofinalSample::full(self.bounds.horizon);
        let init_states = full.members().map(|k| self.spec.net.system_at(k).initial()).collect();
        let init_net = SampledNet::new(full, init_states);
        let x0 = self.spec.candidate.initial();
        match self.spec.relation.relate(&x0, &init_net) {
            None => {
                return Err(WitnessError::BoundsTooSmall(format!(
                    "horizon {} leaves fewer than {MIN_TAIL} tail samples",
                    self.bounds.horizon
                )))
            }
            Some(false) => {
                return Ok(self.violation(1, 0, &x0, &init_net, "initial states are not related".into()));
            }
            Some(true) => {}
        }

        let mut stats = WitnessStats::default();
        let mut seen: HashSet<(NetState, SampledNet)> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert((x0.clone(), init_net.clone()));
        queue.push_back((x0, init_net, 0usize));
        while let Some((x, net, depth)) = queue.pop_front() {
            stats.pairs += 1;
            stats.max_depth = stats.max_depth.max(depth);
            if depth >= self.bounds.depth {
                continue;
            }
            let mut found = Vec::new();

            // Second condition: candidate moves are matched by the net.
            for label in &self.labels {
                for x2 in self.spec.candidate.successors(&x, label, self.bound) {
                    if !self.visible(&net, label, &x2) {
                        stats.skipped_candidate_moves += 1;
                        continue;
                    }
                    stats.candidate_moves += 1;
                    let subsets = match self.spec.reading {
                        Bullet2Reading::Literal => &self.whole,
                        Bullet2Reading::CofinalRestriction => &self.restrictions,
                    };
                    let answer = subsets.iter().find_map(|&(o, s)| {
                        let sub = net.restrict(o, s)?;
                        self.witness_selectors.iter().find_map(|sel| {
                            let next = self.step_from_some_n0(&sub, label, sel, &x2)?;
                            (self.spec.relation.relate(&x2, &next) == Some(true)).then_some(next)
                        })
                    });
                    match answer {
                        Some(next) => found.push((x2, next)),
                        None => {
                            return Ok(self.violation(
                                2,
                                depth,
                                &x,
                                &net,
                                format!("no subnet follows {x} -{label}-> {x2}"),
                            ))
                        }
                    }
                }
            }

            // Third condition: uniform net moves are matched by the candidate.
            for label in &self.labels {
                let candidates = self.spec.candidate.successors(&x, label, self.bound);
                let mut moves: HashSet<SampledNet> = HashSet::new();
                for &(o, s) in &self.restrictions {
                    let Some(d) = net.restrict(o, s) else { continue };
                    for sel in &self.net_selectors {
                        if let Some(next) = self.step(&d, label, sel) {
                            moves.insert(next);
                        }
                    }
                }
                let mut moves: Vec<SampledNet> = moves.into_iter().collect();
                moves.sort_by(|a, b| (a.sample.offset(), a.sample.stride(), &a.states).cmp(&(b.sample.offset(), b.sample.stride(), &b.states)));
                for next in moves {
                    if next.tail().len() < MIN_TAIL {
                        stats.skipped_moves += 1;
                        continue;
                    }
                    stats.net_moves += 1;
                    let answer = candidates.iter().find_map(|x2| {
                        self.restrictions.iter().find_map(|&(o, s)| {
                            let b = next.restrict(o, s)?;
                            (self.spec.relation.relate(x2, &b) == Some(true)).then(|| (x2.clone(), b))
                        })
                    });
                    match answer {
                        Some(pair) => found.push(pair),
                        None => {
                            return Ok(self.violation(
                                3,
                                depth,
                                &x,
                                &net,
                                format!("no {label}-successor matches the net move to {}", next.summary()),
                            ))
                        }
                    }
                }
            }

            for (x2, n2) in found {
                if seen.insert((x2.clone(), n2.clone())) {
                    queue.push_back((x2, n2, depth + 1));
                }
            }
        }
        Ok(WitnessOutcome::Pass { stats })
    }
}

pub fn check_limit_bisim_witness(spec: &WitnessSpec, bounds: WitnessBounds) -> Result<WitnessOutcome, WitnessError> {
    if bounds.max_stride == 0 {
        return Err(WitnessError::BoundsTooSmall("stride bound must be positive".into()));
    }
    let restrictions: Vec<(usize, usize)> = (1..=bounds.max_stride)
        .flat_map(|s| (0..=bounds.max_offset).map(move |o| (o, s)))
        .collect();
    let mut labels = spec.candidate.labels();
    for l in spec.net.system_at(0).labels() {
        if !labels.contains(&l) {
            labels.push(l);
        }
    }
    labels.sort();
    let checker = Checker {
        spec,
        bounds,
        bound: bounds.horizon + 1,
        net_selectors: periodic(&[Atom::Pos(0), Atom::Pos(1), Atom::Pos(2), Atom::Cycle, Atom::Last]),
        witness_selectors: periodic(&[Atom::Match, Atom::Pos(0), Atom::Pos(1), Atom::Pos(2), Atom::Cycle, Atom::Last]),
        restrictions,
        whole: vec![(0, 1)],
        labels,
    };
    checker.run()
}

/// The infinite-strand limit against the constant net over the fan.
pub fn witness_one() -> WitnessSpec {
    WitnessSpec {
        candidate: SystemDesc::Fan { with_omega: true },
        net: NetDesc::Constant(SystemDesc::Fan { with_omega: false }),
        relation: WitnessRelation::FanOmega,
        reading: Bullet2Reading::Literal,
    }
}

/// The delayed-choice limit against the constant net over the early choice.
pub fn witness_two(reading: Bullet2Reading) -> WitnessSpec {
    WitnessSpec {
        candidate: SystemDesc::Explicit(delayed_choice_lts()),
        net: NetDesc::Constant(SystemDesc::Explicit(early_choice_lts())),
        relation: WitnessRelation::DelayedChoice { star: "*".into(), options: vec!["2".into(), "3".into()] },
        reading,
    }
}

/// The fan against its own constant net with the eventually-constant relation.
pub fn naive_constant_fan() -> WitnessSpec {
    WitnessSpec {
        candidate: SystemDesc::Fan { with_omega: false },
        net: NetDesc::Constant(SystemDesc::Fan { with_omega: false }),
        relation: WitnessRelation::Identity,
        reading: Bullet2Reading::Literal,
    }
}

/// An explicit system against its own constant net, eventually-constant relation.
pub fn constant_identity(lts: Lts) -> WitnessSpec {
    WitnessSpec {
        candidate: SystemDesc::Explicit(lts.clone()),
        net: NetDesc::Constant(SystemDesc::Explicit(lts)),
        relation: WitnessRelation::Identity,
        reading: Bullet2Reading::Literal,
    }
}

pub const BUILTIN_WITNESSES: [&str; 5] = ["witness-1", "witness-2", "witness-2-literal", "naive-fan", "fan-days"];

pub fn builtin_witness(name: &str) -> Option<WitnessSpec> {
    Some(match name {
        "witness-1" => witness_one(),
        "witness-2" => witness_two(Bullet2Reading::CofinalRestriction),
        "witness-2-literal" => witness_two(Bullet2Reading::Literal),
        "naive-fan" => naive_constant_fan(),
        "fan-days" => WitnessSpec { net: NetDesc::FanDays, ..witness_one() },
        _ => return None,
    })
}
