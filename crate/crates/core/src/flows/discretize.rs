use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::order::{ExecId, OrderBuilder, PrefixOrder};

use super::{Dyadic, FlowSet};

/// Name of a sample sequence: `ε` or `(v₀,v₁,…)`.
pub fn seq_name(values: &[Dyadic]) -> String {
    if values.is_empty() {
        return "ε".to_string();
    }
    let parts: Vec<String> = values.iter().map(Dyadic::to_string).collect();
    format!("({})", parts.join(","))
}

/// The prefix order of sample sequences at one grid level.
#[derive(Debug, Clone)]
pub struct Discretization {
    level: u32,
    order: Arc<PrefixOrder>,
    seqs: Vec<Vec<Dyadic>>,
    lookup: HashMap<Vec<Dyadic>, ExecId>,
}

impl Discretization {
    /// Closes `sequences` under prefixes; `ε` is always present.
    pub fn from_sequences(level: u32, sequences: impl IntoIterator<Item = Vec<Dyadic>>) -> Discretization {
        let mut b = TrieBuilder::new(level);
        for s in sequences {
            b.insert(&s);
        }
        b.finish()
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn order(&self) -> &Arc<PrefixOrder> {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.seqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seqs.is_empty()
    }

    pub fn seq(&self, id: ExecId) -> &[Dyadic] {
        &self.seqs[id.index()]
    }

    pub fn lookup(&self, values: &[Dyadic]) -> Option<ExecId> {
        self.lookup.get(values).copied()
    }
}

/// Inserts sequences prefix by prefix; parents always precede children.
pub(crate) struct TrieBuilder {
    level: u32,
    builder: OrderBuilder,
    seqs: Vec<Vec<Dyadic>>,
    lookup: HashMap<Vec<Dyadic>, ExecId>,
}

impl TrieBuilder {
    pub(crate) fn new(level: u32) -> TrieBuilder {
        let mut t = TrieBuilder { level, builder: OrderBuilder::new(), seqs: Vec::new(), lookup: HashMap::new() };
        t.insert(&[]);
        t
    }

    pub(crate) fn insert(&mut self, values: &[Dyadic]) -> ExecId {
        if let Some(&id) = self.lookup.get(values) {
            return id;
        }
        let parent = match values.split_last() {
            Some((_, init)) => Some(self.insert(init)),
            None => None,
        };
        let id = self.builder.add(seq_name(values), parent).expect("sequence names are unique");
        self.seqs.push(values.to_vec());
        self.lookup.insert(values.to_vec(), id);
        id
    }

    pub(crate) fn finish(self) -> Discretization {
        Discretization {
            level: self.level,
            order: Arc::new(self.builder.build()),
            seqs: self.seqs,
            lookup: self.lookup,
        }
    }
}

/// All sample sequences of members of `flows` on the `2^{-k}` grid.
pub fn discretize(flows: &FlowSet, k: u32) -> Discretization {
    Discretization::from_sequences(k, flows.generators.iter().map(|g| g.samples(k)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RefineMode {
    /// The recursive definition, applied one level at a time.
    #[default]
    Recursion,
    /// Keep every other sample.
    Subsample,
}

/// `f_{k,l}` by the recursion `f(ε) = ε`, `f([x]) = ε`,
/// `f(x x' σ) = f_{k,l-1}(x · f_{k,l}(σ))`, with `f_{k,k} = id`.
///
/// Only the single step `l = k + 1` is coherent; longer spans disagree with
/// the composite of steps (see the tests).
pub fn refine_recursive(sigma: &[Dyadic], k: u32, l: u32) -> Vec<Dyadic> {
    assert!(k <= l, "refinement goes from a finer level to a coarser one");
    if l == k {
        return sigma.to_vec();
    }
    if sigma.len() < 2 {
        return Vec::new();
    }
    let mut v = vec![sigma[0].clone()];
    v.extend(refine_recursive(&sigma[2..], k, l));
    refine_recursive(&v, k, l - 1)
}

/// Samples at even positions.
pub fn subsample(sigma: &[Dyadic]) -> Vec<Dyadic> {
    sigma.iter().step_by(2).cloned().collect()
}

/// One refinement step from level `n + 1` to level `n`.
pub fn refine_step(sigma: &[Dyadic], mode: RefineMode) -> Vec<Dyadic> {
    match mode {
        RefineMode::Recursion => refine_recursive(sigma, 0, 1),
        RefineMode::Subsample => subsample(sigma),
    }
}

/// `f_{k,l}` as the composite of single steps.
pub fn refine(sigma: &[Dyadic], k: u32, l: u32, mode: RefineMode) -> Vec<Dyadic> {
    assert!(k <= l, "refinement goes from a finer level to a coarser one");
    let mut v = sigma.to_vec();
    for _ in k..l {
        v = refine_step(&v, mode);
    }
    v
}
