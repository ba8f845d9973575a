//! Partial history-preserving maps between prefix orders.
//!
//! Two independent validators are provided. [`validate_php_direct`] checks the
//! defining equation `f(u⁻) = f(u)⁻` on a prefix-closed domain;
//! [`validate_php_structural`] checks order preservation plus backward
//! simulation using only `⪯` queries. The test suite cross-checks them.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::order::{ExecId, PrefixOrder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("domain is not prefix closed at `{u}`")]
    DomainNotPrefixClosed { u: String },
    #[error("`{u}` is defined but `{below}` ⪯ `{u}` is not")]
    DomainNotDownClosed { u: String, below: String },
    #[error("history of `{u}` is not preserved")]
    HistoryNotPreserved { u: String },
    #[error("`{u}` ⪯ `{u2}` but their images are not ordered")]
    NotOrderPreserving { u: String, u2: String },
    #[error("`{v}` ⪯ f(`{u}`) has no preimage below `{u}`")]
    BackwardSimFails { u: String, v: String },
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("`{0}` is mapped more than once")]
    NotAFunction(String),
}

/// A partial function between two orders, not yet validated.
///
/// Partiality is absence: `graph[u]` is `None` outside the domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialFn {
    pub source: Arc<PrefixOrder>,
    pub target: Arc<PrefixOrder>,
    pub graph: Vec<Option<ExecId>>,
}

impl PartialFn {
    pub fn new(source: Arc<PrefixOrder>, target: Arc<PrefixOrder>, graph: Vec<Option<ExecId>>) -> Result<Self, MapError> {
        if graph.len() != source.len() {
            return Err(MapError::TypeMismatch(format!(
                "graph has {} entries for a source of {} elements",
                graph.len(),
                source.len()
            )));
        }
        if let Some(v) = graph.iter().flatten().find(|v| !target.contains(**v)) {
            return Err(MapError::UnknownElement(v.to_string()));
        }
        Ok(PartialFn { source, target, graph })
    }

    pub fn from_pairs<'a>(
        source: Arc<PrefixOrder>,
        target: Arc<PrefixOrder>,
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self, MapError> {
        let mut graph = vec![None; source.len()];
        for (from, to) in pairs {
            let u = source.id(from).ok_or_else(|| MapError::UnknownElement(from.to_string()))?;
            let v = target.id(to).ok_or_else(|| MapError::UnknownElement(to.to_string()))?;
            if graph[u.index()].replace(v).is_some() {
                return Err(MapError::NotAFunction(from.to_string()));
            }
        }
        Ok(PartialFn { source, target, graph })
    }

    pub fn get(&self, u: ExecId) -> Option<ExecId> {
        self.graph[u.index()]
    }

    pub fn domain(&self) -> impl Iterator<Item = ExecId> + '_ {
        self.source.ids().filter(|&u| self.graph[u.index()].is_some())
    }
}

/// A validated partial history-preserving map.
#[derive(Clone, PartialEq, Eq)]
pub struct PhpMap {
    raw: PartialFn,
}

impl fmt::Debug for PhpMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<(&str, &str)> = self
            .pairs()
            .map(|(u, v)| (self.source().name(u), self.target().name(v)))
            .collect();
        f.debug_struct("PhpMap").field("pairs", &pairs).finish()
    }
}

fn name(order: &PrefixOrder, u: ExecId) -> String {
    order.name(u).to_string()
}

/// Accepts iff the domain is prefix closed and `f(u⁻) = f(u)⁻` for every
/// defined `u`. Reports the first violating element in id order.
pub fn validate_php_direct(candidate: PartialFn) -> Result<PhpMap, MapError> {
    let src = &candidate.source;
    let tgt = &candidate.target;
    for u in src.ids() {
        if candidate.get(u).is_none() {
            continue;
        }
        if src.history_chain(u).iter().any(|&w| candidate.get(w).is_none()) {
            return Err(MapError::DomainNotPrefixClosed { u: name(src, u) });
        }
    }
    for u in src.ids() {
        let Some(fu) = candidate.get(u) else { continue };
        let image: BTreeSet<ExecId> = src
            .history_chain(u)
            .into_iter()
            .filter_map(|w| candidate.get(w))
            .collect();
        let hist: BTreeSet<ExecId> = tgt.history_chain(fu).into_iter().collect();
        if image != hist {
            return Err(MapError::HistoryNotPreserved { u: name(src, u) });
        }
    }
    Ok(PhpMap { raw: candidate })
}

/// Accepts iff the domain is down-closed, `f` is order preserving on its
/// domain, and `f` is a backward simulation. Comparable pairs are read off
/// the down-sets; no history is compared as a set.
///
/// The down-closure check is the morphism's standing assumption: without it
/// a map like `{a ≺ b} → {x}`, `b ↦ x` satisfies the other two clauses.
pub fn validate_php_structural(candidate: PartialFn) -> Result<PhpMap, MapError> {
    let src = &candidate.source;
    let tgt = &candidate.target;
    let dom: Vec<ExecId> = candidate.domain().collect();
    for &u in &dom {
        if let Some(w) = src.history_chain(u).into_iter().find(|&w| candidate.get(w).is_none()) {
            return Err(MapError::DomainNotDownClosed { u: name(src, u), below: name(src, w) });
        }
    }
    for &u2 in &dom {
        let fu2 = candidate.get(u2).unwrap();
        for u in src.history_chain(u2) {
            let fu = candidate.get(u).unwrap();
            if !tgt.le(fu, fu2) {
                return Err(MapError::NotOrderPreserving { u: name(src, u), u2: name(src, u2) });
            }
        }
    }
    for &u in &dom {
        let fu = candidate.get(u).unwrap();
        let below_u = src.history_chain(u);
        for v in tgt.history_chain(fu) {
            let found = below_u.iter().any(|&w| candidate.get(w) == Some(v));
            if !found {
                return Err(MapError::BackwardSimFails { u: name(src, u), v: name(tgt, v) });
            }
        }
    }
    Ok(PhpMap { raw: candidate })
}

impl PhpMap {
    pub fn identity(order: Arc<PrefixOrder>) -> PhpMap {
        let graph = order.ids().map(Some).collect();
        PhpMap { raw: PartialFn { source: order.clone(), target: order, graph } }
    }

    /// The map undefined everywhere.
    pub fn empty(source: Arc<PrefixOrder>, target: Arc<PrefixOrder>) -> PhpMap {
        let graph = vec![None; source.len()];
        PhpMap { raw: PartialFn { source, target, graph } }
    }

    pub fn source(&self) -> &Arc<PrefixOrder> {
        &self.raw.source
    }

    pub fn target(&self) -> &Arc<PrefixOrder> {
        &self.raw.target
    }

    pub fn get(&self, u: ExecId) -> Option<ExecId> {
        self.raw.get(u)
    }

    pub fn graph(&self) -> &[Option<ExecId>] {
        &self.raw.graph
    }

    pub fn as_partial_fn(&self) -> &PartialFn {
        &self.raw
    }

    pub fn into_partial_fn(self) -> PartialFn {
        self.raw
    }

    pub fn domain(&self) -> impl Iterator<Item = ExecId> + '_ {
        self.raw.domain()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (ExecId, ExecId)> + '_ {
        self.raw.graph.iter().enumerate().filter_map(|(i, v)| v.map(|v| (ExecId(i), v)))
    }

    pub fn is_total(&self) -> bool {
        self.raw.graph.iter().all(Option::is_some)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.raw.graph.iter().flatten().all(|v| seen.insert(*v))
    }

    pub fn is_surjective(&self) -> bool {
        let image: BTreeSet<ExecId> = self.raw.graph.iter().flatten().copied().collect();
        image.len() == self.target().len()
    }

    /// Every defined `u` carries the same label as `f(u)`.
    pub fn preserves_labels(&self) -> bool {
        self.pairs()
            .all(|(u, v)| self.source().label(u) == self.target().label(v))
    }

    /// The inverse of a bijection, validated as a map in its own right.
    pub fn inverse(&self) -> Option<Result<PhpMap, MapError>> {
        if !(self.is_total() && self.is_injective() && self.is_surjective()) {
            return None;
        }
        let mut graph = vec![None; self.target().len()];
        for (u, v) in self.pairs() {
            graph[v.index()] = Some(u);
        }
        let raw = PartialFn { source: self.target().clone(), target: self.source().clone(), graph };
        Some(validate_php_direct(raw))
    }

    /// Same source, target and graph, where orders are compared structurally.
    pub fn same_as(&self, other: &PhpMap) -> bool {
        same_order(self.source(), other.source())
            && same_order(self.target(), other.target())
            && self.graph() == other.graph()
    }
}

pub(crate) fn same_order(a: &Arc<PrefixOrder>, b: &Arc<PrefixOrder>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// `f ∘ g`: first `g`, then `f`. Defined where both legs are defined.
pub fn compose(f: &PhpMap, g: &PhpMap) -> Result<PhpMap, MapError> {
    if !same_order(f.source(), g.target()) {
        return Err(MapError::TypeMismatch(
            "source of the outer map differs from target of the inner map".into(),
        ));
    }
    let graph = g.graph().iter().map(|v| v.and_then(|v| f.get(v))).collect();
    Ok(PhpMap {
        raw: PartialFn { source: g.source().clone(), target: f.target().clone(), graph },
    })
}

pub fn identity(order: Arc<PrefixOrder>) -> PhpMap {
    PhpMap::identity(order)
}

/// Structured-text schema for one map: `{source_ref, target_ref, pairs}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDocument {
    pub source_ref: String,
    pub target_ref: String,
    pub pairs: Vec<MapPair>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapPair {
    pub from: String,
    pub to: String,
}

impl MapDocument {
    pub fn from_map(map: &PhpMap, source_ref: &str, target_ref: &str) -> MapDocument {
        MapDocument {
            source_ref: source_ref.to_string(),
            target_ref: target_ref.to_string(),
            pairs: map
                .pairs()
                .map(|(u, v)| MapPair {
                    from: map.source().name(u).to_string(),
                    to: map.target().name(v).to_string(),
                })
                .collect(),
        }
    }

    pub fn resolve(&self, source: Arc<PrefixOrder>, target: Arc<PrefixOrder>) -> Result<PartialFn, MapError> {
        PartialFn::from_pairs(source, target, self.pairs.iter().map(|p| (p.from.as_str(), p.to.as_str())))
    }
}

/// Every partial function `source → target` whose domain contains
/// `required`, in lexicographic order of graphs.
pub fn all_partial_functions(
    source: &Arc<PrefixOrder>,
    target: &Arc<PrefixOrder>,
    required: &[ExecId],
) -> impl Iterator<Item = PartialFn> {
    let n = source.len();
    let choices = target.len() + 1;
    let required: BTreeSet<usize> = required.iter().map(|u| u.index()).collect();
    let start: Vec<usize> = (0..n).map(|i| usize::from(required.contains(&i))).collect();
    let source = source.clone();
    let target = target.clone();
    let mut digits = Some(start.clone());
    std::iter::from_fn(move || {
        let current = digits.take()?;
        // advance odometer; digit 0 means undefined, d > 0 means target d-1
        let mut next = current.clone();
        let mut i = 0;
        loop {
            if i == n {
                break;
            }
            next[i] += 1;
            if next[i] < choices {
                digits = Some(next);
                break;
            }
            next[i] = start[i];
            i += 1;
        }
        if choices == 1 && !required.is_empty() {
            return None;
        }
        let graph = current.iter().map(|&d| d.checked_sub(1).map(ExecId)).collect();
        Some(PartialFn { source: source.clone(), target: target.clone(), graph })
    })
}
