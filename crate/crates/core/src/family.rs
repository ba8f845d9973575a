//! Inverse directed families of partial history-preserving maps.
//!
//! Maps run from higher to lower indices: `f(i, j): U_j → U_i` for `i ⪯ j`.
//! Coherence is `f(i, k)(u) = f(i, j)(f(j, k)(u))`.
//!
//! Families over ℕ are stored as a truncation `0..=horizon` holding only the
//! successive steps `f(n, n+1)`; longer maps are derived by composition and
//! then checked for coherence on every triple.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::maps::{compose, same_order, validate_php_direct, MapError, PartialFn, PhpMap};
use crate::order::{OrderBuilder, PrefixOrder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("coherence fails for indices {i} ⪯ {j} ⪯ {k}")]
    CoherenceViolation { i: usize, j: usize, k: usize },
    #[error("map at diagonal index {i} is not the identity")]
    NotIdentityAtDiagonal { i: usize },
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("no map stored for {i} ⪯ {j}")]
    MissingMap { i: usize, j: usize },
    #[error("map {i} ⪯ {j} is not history preserving: {source}")]
    InvalidMap { i: usize, j: usize, source: MapError },
    #[error("bad index structure: {0}")]
    BadIndex(String),
    #[error("family kind not honoured at index {index}: {reason}")]
    KindViolation { index: usize, reason: String },
    #[error("unknown builtin family `{0}`")]
    UnknownName(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
}

/// Directed index set: either a finite preorder or a truncated ℕ-chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DirectedIndex {
    NatChain { horizon: usize },
    FinitePoset { elements: Vec<String>, relation: Vec<(String, String)> },
}

/// What the family promises beyond its stored truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FamilyKind {
    /// Every step from `stable_from` on is an isomorphism.
    ExplicitStable { stable_from: usize },
    /// `U_n ⊆ U_{n+1}` and each step is the partial identity on `U_n`.
    IncreasingPartialIdentity,
    /// Produced on demand by a [`ChainGenerator`]; no persistence promise.
    Generator,
    /// Explicitly stored maps with no persistence promise.
    Explicit,
}

/// A compiled index: `le[i][j]` means `i ⪯ j`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct IndexTable {
    names: Vec<String>,
    le: Vec<Vec<bool>>,
    top: usize,
}

impl DirectedIndex {
    fn compile(&self) -> Result<IndexTable, FamilyError> {
        match self {
            DirectedIndex::NatChain { horizon } => {
                let n = horizon + 1;
                Ok(IndexTable {
                    names: (0..n).map(|i| i.to_string()).collect(),
                    le: (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect(),
                    top: *horizon,
                })
            }
            DirectedIndex::FinitePoset { elements, relation } => {
                let n = elements.len();
                if n == 0 {
                    return Err(FamilyError::BadIndex("empty index set".into()));
                }
                let pos = |s: &str| {
                    elements
                        .iter()
                        .position(|e| e == s)
                        .ok_or_else(|| FamilyError::BadIndex(format!("unknown index `{s}`")))
                };
                let mut le = vec![vec![false; n]; n];
                for (a, b) in relation {
                    le[pos(a)?][pos(b)?] = true;
                }
                for i in 0..n {
                    if !le[i][i] {
                        return Err(FamilyError::BadIndex(format!("`{}` is not reflexive", elements[i])));
                    }
                    for j in 0..n {
                        for k in 0..n {
                            if le[i][j] && le[j][k] && !le[i][k] {
                                return Err(FamilyError::BadIndex(format!(
                                    "not transitive at `{}`, `{}`, `{}`",
                                    elements[i], elements[j], elements[k]
                                )));
                            }
                        }
                    }
                }
                for a in 0..n {
                    for b in 0..n {
                        if !(0..n).any(|c| le[a][c] && le[b][c]) {
                            return Err(FamilyError::BadIndex(format!(
                                "`{}` and `{}` have no upper bound",
                                elements[a], elements[b]
                            )));
                        }
                    }
                }
                let top = (0..n)
                    .find(|&t| (0..n).all(|i| le[i][t]))
                    .ok_or_else(|| FamilyError::BadIndex("no greatest element".into()))?;
                Ok(IndexTable { names: elements.clone(), le, top })
            }
        }
    }

    pub fn is_chain(&self) -> bool {
        matches!(self, DirectedIndex::NatChain { .. })
    }
}

/// Maps of a candidate family, before validation.
#[derive(Debug, Clone)]
pub enum CandidateMaps {
    /// `steps[n] : U_{n+1} → U_n`.
    Steps(Vec<PartialFn>),
    /// One map per comparable pair `(i, j)` with `i ⪯ j`, diagonal included.
    Pairs(BTreeMap<(usize, usize), PartialFn>),
}

#[derive(Debug, Clone)]
pub struct FamilyCandidate {
    pub index: DirectedIndex,
    pub objects: Vec<Arc<PrefixOrder>>,
    pub maps: CandidateMaps,
    pub kind: FamilyKind,
}

/// A validated inverse directed family over a finite index or truncated chain.
#[derive(Debug, Clone)]
pub struct InverseFamily {
    index: DirectedIndex,
    table: IndexTable,
    objects: Vec<Arc<PrefixOrder>>,
    /// All maps `f(i, j)` for `i ⪯ j`, stored or derived.
    maps: BTreeMap<(usize, usize), PhpMap>,
    kind: FamilyKind,
}

fn check_endpoints(map: &PartialFn, objects: &[Arc<PrefixOrder>], i: usize, j: usize) -> Result<(), FamilyError> {
    if !same_order(&map.source, &objects[j]) || !same_order(&map.target, &objects[i]) {
        return Err(FamilyError::TypeMismatch(format!(
            "map {i} ⪯ {j} must go from object {j} to object {i}"
        )));
    }
    Ok(())
}

pub fn validate_family(candidate: FamilyCandidate) -> Result<InverseFamily, FamilyError> {
    let FamilyCandidate { index, objects, maps, kind } = candidate;
    let table = index.compile()?;
    let n = table.names.len();
    if objects.len() != n {
        return Err(FamilyError::TypeMismatch(format!(
            "{} objects for an index of size {n}",
            objects.len()
        )));
    }
    let mut all: BTreeMap<(usize, usize), PhpMap> = BTreeMap::new();
    match maps {
        CandidateMaps::Steps(steps) => {
            if !index.is_chain() {
                return Err(FamilyError::TypeMismatch("successive steps need a chain index".into()));
            }
            if steps.len() + 1 != n {
                return Err(FamilyError::TypeMismatch(format!(
                    "{} steps for {n} objects",
                    steps.len()
                )));
            }
            for (i, step) in steps.into_iter().enumerate() {
                check_endpoints(&step, &objects, i, i + 1)?;
                let m = validate_php_direct(step).map_err(|source| FamilyError::InvalidMap { i, j: i + 1, source })?;
                all.insert((i, i + 1), m);
            }
            for i in 0..n {
                all.insert((i, i), PhpMap::identity(objects[i].clone()));
            }
            // f(i, j) = f(i, i+1) ∘ f(i+1, j), built from the top down.
            for gap in 2..n {
                for i in 0..n - gap {
                    let j = i + gap;
                    let m = compose(&all[&(i, i + 1)], &all[&(i + 1, j)])
                        .map_err(|e| FamilyError::TypeMismatch(e.to_string()))?;
                    all.insert((i, j), m);
                }
            }
        }
        CandidateMaps::Pairs(pairs) => {
            for ((i, j), raw) in pairs {
                if i >= n || j >= n || !table.le[i][j] {
                    return Err(FamilyError::TypeMismatch(format!("map stored for non-comparable pair ({i}, {j})")));
                }
                check_endpoints(&raw, &objects, i, j)?;
                let m = validate_php_direct(raw).map_err(|source| FamilyError::InvalidMap { i, j, source })?;
                all.insert((i, j), m);
            }
            for i in 0..n {
                for j in 0..n {
                    if table.le[i][j] && !all.contains_key(&(i, j)) {
                        return Err(FamilyError::MissingMap { i, j });
                    }
                }
            }
        }
    }

    for i in 0..n {
        if !all[&(i, i)].same_as(&PhpMap::identity(objects[i].clone())) {
            return Err(FamilyError::NotIdentityAtDiagonal { i });
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !table.le[i][j] {
                continue;
            }
            for k in 0..n {
                if !table.le[j][k] {
                    continue;
                }
                let via = compose(&all[&(i, j)], &all[&(j, k)])
                    .map_err(|e| FamilyError::TypeMismatch(e.to_string()))?;
                if !via.same_as(&all[&(i, k)]) {
                    return Err(FamilyError::CoherenceViolation { i, j, k });
                }
            }
        }
    }

    let family = InverseFamily { index, table, objects, maps: all, kind };
    family.check_kind()?;
    Ok(family)
}

impl InverseFamily {
    fn check_kind(&self) -> Result<(), FamilyError> {
        let chain_only = |what: &str| {
            if self.index.is_chain() {
                Ok(())
            } else {
                Err(FamilyError::KindViolation { index: 0, reason: format!("{what} requires a chain index") })
            }
        };
        match self.kind {
            FamilyKind::ExplicitStable { stable_from } => {
                chain_only("explicit-stable")?;
                for n in stable_from..self.horizon() {
                    let step = self.step(n);
                    match step.inverse() {
                        Some(Ok(_)) => {}
                        Some(Err(e)) => {
                            return Err(FamilyError::KindViolation { index: n, reason: format!("inverse is not a morphism: {e}") })
                        }
                        None => {
                            return Err(FamilyError::KindViolation { index: n, reason: "step is not a bijection".into() })
                        }
                    }
                }
            }
            FamilyKind::IncreasingPartialIdentity => {
                chain_only("increasing-partial-identity")?;
                for n in 0..self.horizon() {
                    let (lower, upper) = (&self.objects[n], &self.objects[n + 1]);
                    let step = self.step(n);
                    for u in upper.ids() {
                        let expected = lower.id(upper.name(u));
                        if step.get(u) != expected {
                            return Err(FamilyError::KindViolation {
                                index: n,
                                reason: format!("step is not the partial identity at `{}`", upper.name(u)),
                            });
                        }
                    }
                    if let Some(missing) = lower.ids().find(|&v| upper.id(lower.name(v)).is_none()) {
                        return Err(FamilyError::KindViolation {
                            index: n,
                            reason: format!("`{}` does not persist", lower.name(missing)),
                        });
                    }
                }
            }
            FamilyKind::Generator | FamilyKind::Explicit => {}
        }
        Ok(())
    }

    pub fn index(&self) -> &DirectedIndex {
        &self.index
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn is_chain(&self) -> bool {
        self.index.is_chain()
    }

    /// Number of index elements.
    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// Greatest stored index (the horizon, for chains).
    pub fn top(&self) -> usize {
        self.table.top
    }

    /// Largest stored chain index; for finite posets the greatest element.
    pub fn horizon(&self) -> usize {
        self.table.top
    }

    pub fn index_name(&self, i: usize) -> &str {
        &self.table.names[i]
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.table.le[i][j]
    }

    pub fn object(&self, i: usize) -> &Arc<PrefixOrder> {
        &self.objects[i]
    }

    pub fn objects(&self) -> &[Arc<PrefixOrder>] {
        &self.objects
    }

    /// `f(i, j): U_j → U_i`; panics unless `i ⪯ j`.
    pub fn map(&self, i: usize, j: usize) -> &PhpMap {
        self.maps
            .get(&(i, j))
            .unwrap_or_else(|| panic!("indices {i} and {j} are not comparable"))
    }

    /// `f(n, n+1)` on a chain.
    pub fn step(&self, n: usize) -> &PhpMap {
        self.map(n, n + 1)
    }

    /// The first `horizon + 1` objects of a chain family, revalidated.
    pub fn truncate(&self, horizon: usize) -> Result<InverseFamily, FamilyError> {
        if !self.is_chain() {
            return Err(FamilyError::TypeMismatch("only chain families truncate".into()));
        }
        if horizon > self.horizon() {
            return Err(FamilyError::BadParams(format!(
                "horizon {horizon} beyond stored horizon {}",
                self.horizon()
            )));
        }
        let steps = (0..horizon).map(|n| self.step(n).as_partial_fn().clone()).collect();
        validate_family(FamilyCandidate {
            index: DirectedIndex::NatChain { horizon },
            objects: self.objects[..=horizon].to_vec(),
            maps: CandidateMaps::Steps(steps),
            kind: self.kind,
        })
    }
}

/// Structured-text family: objects and maps are given by reference.
/// Chains list `steps` (`steps[n] : objects[n+1] → objects[n]`); finite
/// posets list one map per comparable pair of index names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDocument {
    pub index: DirectedIndex,
    pub objects: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub steps: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub maps: Vec<PairRef>,
    pub kind: FamilyKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRef {
    pub i: String,
    pub j: String,
    pub map: String,
}

/// On-demand producer of a chain family. Implementations must be pure:
/// repeated calls with the same arguments give the same result.
pub trait ChainGenerator {
    fn object(&self, n: usize) -> PrefixOrder;
    /// The step `U_{n+1} → U_n`.
    fn step(&self, n: usize, upper: &Arc<PrefixOrder>, lower: &Arc<PrefixOrder>) -> PartialFn;
}

impl InverseFamily {
    /// Materializes `0..=horizon` of a generated chain and validates it.
    pub fn generate(gen: &dyn ChainGenerator, horizon: usize, kind: FamilyKind) -> Result<InverseFamily, FamilyError> {
        let objects: Vec<Arc<PrefixOrder>> = (0..=horizon).map(|n| Arc::new(gen.object(n))).collect();
        let steps = (0..horizon)
            .map(|n| gen.step(n, &objects[n + 1], &objects[n]))
            .collect();
        validate_family(FamilyCandidate {
            index: DirectedIndex::NatChain { horizon },
            objects,
            maps: CandidateMaps::Steps(steps),
            kind,
        })
    }
}

/// Partial identity by element name: defined on `upper` elements that also
/// occur in `lower`.
pub fn partial_identity(upper: &Arc<PrefixOrder>, lower: &Arc<PrefixOrder>) -> PartialFn {
    let graph = upper.ids().map(|u| lower.id(upper.name(u))).collect();
    PartialFn { source: upper.clone(), target: lower.clone(), graph }
}

pub fn pair_name(k: usize, l: usize) -> String {
    format!("({k},{l})")
}

pub const BOTTOM: &str = "bot";

/// Builds `{⊥} ∪ {(k, l) | k < strands, l < len(k)}` with `⊥ ⪯ (k, 0) ⪯ (k, 1) ⪯ …`.
fn fan_order(strands: usize, len: impl Fn(usize) -> usize) -> PrefixOrder {
    let mut b = OrderBuilder::new();
    let bot = b.add(BOTTOM, None).expect("fresh name");
    for k in 0..strands {
        let mut prev = bot;
        for l in 0..len(k) {
            prev = b.add(pair_name(k, l), Some(prev)).expect("fresh name");
        }
    }
    b.build()
}

/// `Y(n) = {(k,l) | l ≤ k < n} ∪ {⊥}`: one new strand per day.
pub fn fan_strand_object(n: usize) -> PrefixOrder {
    fan_order(n, |k| k + 1)
}

/// `X(n) = {(k,l) | l ≤ n − k − 1} ∪ {⊥}`: every strand grows each day.
pub fn fan_grow_object(n: usize) -> PrefixOrder {
    fan_order(n, |k| n - k)
}

struct FanStrand;
struct FanGrow;

impl ChainGenerator for FanStrand {
    fn object(&self, n: usize) -> PrefixOrder {
        fan_strand_object(n)
    }
    fn step(&self, _n: usize, upper: &Arc<PrefixOrder>, lower: &Arc<PrefixOrder>) -> PartialFn {
        partial_identity(upper, lower)
    }
}

impl ChainGenerator for FanGrow {
    fn object(&self, n: usize) -> PrefixOrder {
        fan_grow_object(n)
    }
    fn step(&self, _n: usize, upper: &Arc<PrefixOrder>, lower: &Arc<PrefixOrder>) -> PartialFn {
        partial_identity(upper, lower)
    }
}

pub fn fan_strand(n: usize) -> InverseFamily {
    InverseFamily::generate(&FanStrand, n, FamilyKind::IncreasingPartialIdentity)
        .expect("fan_strand is a valid family")
}

pub fn fan_grow(n: usize) -> InverseFamily {
    InverseFamily::generate(&FanGrow, n, FamilyKind::IncreasingPartialIdentity)
        .expect("fan_grow is a valid family")
}

/// The constant family of identities on `order`, indices `0..=n`.
pub fn constant(order: PrefixOrder, n: usize) -> InverseFamily {
    let order = Arc::new(order);
    let objects = vec![order.clone(); n + 1];
    let steps = (0..n).map(|_| PhpMap::identity(order.clone()).into_partial_fn()).collect();
    validate_family(FamilyCandidate {
        index: DirectedIndex::NatChain { horizon: n },
        objects,
        maps: CandidateMaps::Steps(steps),
        kind: FamilyKind::ExplicitStable { stable_from: 0 },
    })
    .expect("constant identity family is valid")
}

#[derive(Debug, Clone, Default)]
pub struct BuiltinParams {
    pub n: usize,
    pub order: Option<PrefixOrder>,
    pub flows: Option<crate::flows::FlowSet>,
}

pub const BUILTIN_NAMES: [&str; 4] = ["fan_strand", "fan_grow", "constant", "dyadic_tower"];

pub fn builtin_family(name: &str, params: &BuiltinParams) -> Result<InverseFamily, FamilyError> {
    match name {
        "fan_strand" => Ok(fan_strand(params.n)),
        "fan_grow" => Ok(fan_grow(params.n)),
        "constant" => {
            let order = params
                .order
                .clone()
                .ok_or_else(|| FamilyError::BadParams("constant needs an order".into()))?;
            Ok(constant(order, params.n))
        }
        "dyadic_tower" => {
            let flows = params
                .flows
                .as_ref()
                .ok_or_else(|| FamilyError::BadParams("dyadic_tower needs a flow set".into()))?;
            crate::flows::dyadic_tower(flows, params.n).map(|t| t.family().clone())
        }
        other => Err(FamilyError::UnknownName(other.to_string())),
    }
}

/// A bounded arithmetic progression `{offset + stride·t} ∩ [0, horizon]`,
/// standing in for a cofinal subset of ℕ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CofinalSample {
    offset: usize,
    stride: usize,
    horizon: usize,
}

impl CofinalSample {
    pub fn new(offset: usize, stride: usize, horizon: usize) -> Result<Self, FamilyError> {
        if stride == 0 {
            return Err(FamilyError::BadParams("stride must be positive".into()));
        }
        if offset > horizon {
            return Err(FamilyError::BadParams(format!("offset {offset} beyond horizon {horizon}")));
        }
        Ok(CofinalSample { offset, stride, horizon })
    }

    /// All of `0..=horizon`.
    pub fn full(horizon: usize) -> Self {
        CofinalSample { offset: 0, stride: 1, horizon }
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn stride(&self) -> usize {
        self.stride
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn members(&self) -> impl Iterator<Item = usize> {
        (self.offset..=self.horizon).step_by(self.stride)
    }

    pub fn contains(&self, n: usize) -> bool {
        n >= self.offset && n <= self.horizon && (n - self.offset) % self.stride == 0
    }

    /// The sub-progression taking every `stride`-th member starting at
    /// position `offset`; `None` if it would be empty.
    pub fn sub(&self, offset: usize, stride: usize) -> Option<CofinalSample> {
        CofinalSample::new(self.offset + offset * self.stride, stride * self.stride, self.horizon).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fan_object_sizes() {
        for n in 0..=6 {
            let expected = n * (n + 1) / 2 + 1;
            assert_eq!(fan_strand_object(n).len(), expected);
            assert_eq!(fan_grow_object(n).len(), expected);
        }
    }

    #[test]
    fn builtin_chains_validate() {
        let f = fan_strand(8);
        assert_eq!(f.len(), 9);
        assert_eq!(f.kind(), FamilyKind::IncreasingPartialIdentity);
        let g = fan_grow(4);
        for n in 0..4 {
            assert_eq!(g.step(n).domain().count(), g.object(n).len());
        }
    }

    #[test]
    fn constant_family_steps_are_total_identities() {
        let c = constant(fan_strand_object(2), 5);
        for n in 0..5 {
            assert!(c.step(n).is_total());
            assert!(c.step(n).same_as(&PhpMap::identity(c.object(n).clone())));
        }
    }

    fn three_chain(f02: PartialFn, objects: Vec<Arc<PrefixOrder>>) -> FamilyCandidate {
        let mut pairs = BTreeMap::new();
        for i in 0..3 {
            pairs.insert((i, i), PhpMap::identity(objects[i].clone()).into_partial_fn());
        }
        pairs.insert((0, 1), partial_identity(&objects[1], &objects[0]));
        pairs.insert((1, 2), partial_identity(&objects[2], &objects[1]));
        pairs.insert((0, 2), f02);
        FamilyCandidate {
            index: DirectedIndex::FinitePoset {
                elements: vec!["0".into(), "1".into(), "2".into()],
                relation: vec![
                    ("0".into(), "0".into()),
                    ("1".into(), "1".into()),
                    ("2".into(), "2".into()),
                    ("0".into(), "1".into()),
                    ("1".into(), "2".into()),
                    ("0".into(), "2".into()),
                ],
            },
            objects,
            maps: CandidateMaps::Pairs(pairs),
            kind: FamilyKind::Explicit,
        }
    }

    #[test]
    fn stored_long_map_must_cohere() {
        let objects: Vec<Arc<PrefixOrder>> = (0..3).map(|n| Arc::new(fan_strand_object(n))).collect();
        let good = three_chain(partial_identity(&objects[2], &objects[0]), objects.clone());
        assert!(validate_family(good).is_ok());
        let empty = PhpMap::empty(objects[2].clone(), objects[0].clone()).into_partial_fn();
        let bad = three_chain(empty, objects);
        assert_eq!(
            validate_family(bad).unwrap_err(),
            FamilyError::CoherenceViolation { i: 0, j: 1, k: 2 }
        );
    }

    #[test]
    fn diagonal_must_be_identity() {
        let objects: Vec<Arc<PrefixOrder>> = (0..3).map(|n| Arc::new(fan_strand_object(n))).collect();
        let mut c = three_chain(partial_identity(&objects[2], &objects[0]), objects.clone());
        if let CandidateMaps::Pairs(p) = &mut c.maps {
            p.insert((1, 1), PhpMap::empty(objects[1].clone(), objects[1].clone()).into_partial_fn());
        }
        assert_eq!(validate_family(c).unwrap_err(), FamilyError::NotIdentityAtDiagonal { i: 1 });
    }

    #[test]
    fn mismatched_endpoints_rejected() {
        let a = Arc::new(fan_strand_object(1));
        let b = Arc::new(fan_strand_object(2));
        let c = FamilyCandidate {
            index: DirectedIndex::NatChain { horizon: 1 },
            objects: vec![a.clone(), b.clone()],
            maps: CandidateMaps::Steps(vec![partial_identity(&a, &b)]),
            kind: FamilyKind::Explicit,
        };
        assert!(matches!(validate_family(c), Err(FamilyError::TypeMismatch(_))));
    }

    #[test]
    fn stable_kind_rejects_non_bijective_steps() {
        let a = Arc::new(fan_strand_object(1));
        let b = Arc::new(fan_strand_object(2));
        let c = FamilyCandidate {
            index: DirectedIndex::NatChain { horizon: 1 },
            objects: vec![a.clone(), b.clone()],
            maps: CandidateMaps::Steps(vec![partial_identity(&b, &a)]),
            kind: FamilyKind::ExplicitStable { stable_from: 0 },
        };
        assert!(matches!(validate_family(c), Err(FamilyError::KindViolation { index: 0, .. })));
    }

    #[test]
    fn non_directed_index_rejected() {
        let idx = DirectedIndex::FinitePoset {
            elements: vec!["a".into(), "b".into()],
            relation: vec![("a".into(), "a".into()), ("b".into(), "b".into())],
        };
        assert!(matches!(idx.compile(), Err(FamilyError::BadIndex(_))));
    }

    #[test]
    fn builtin_dispatch() {
        let p = BuiltinParams { n: 3, ..Default::default() };
        assert_eq!(builtin_family("fan_grow", &p).unwrap().len(), 4);
        assert!(matches!(builtin_family("nope", &p), Err(FamilyError::UnknownName(_))));
        assert!(matches!(builtin_family("constant", &p), Err(FamilyError::BadParams(_))));
    }

    #[test]
    fn cofinal_samples() {
        let c = CofinalSample::new(1, 2, 9).unwrap();
        assert_eq!(c.members().collect::<Vec<_>>(), [1, 3, 5, 7, 9]);
        let d = c.sub(1, 2).unwrap();
        assert_eq!(d.members().collect::<Vec<_>>(), [3, 7]);
        assert!(d.contains(7) && !d.contains(5));
        assert!(CofinalSample::new(0, 0, 3).is_err());
        assert!(c.sub(5, 1).is_none());
    }
}
