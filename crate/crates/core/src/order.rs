//! Finite prefix orders.
//!
//! A prefix order is a partial order in which every down-set is a chain. For
//! finite carriers this is exactly a rooted forest, so [`PrefixOrder`] stores
//! one optional parent per execution and derives `⪯` as the
//! reflexive-transitive closure of the parent relation.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of an execution inside one [`PrefixOrder`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ExecId(pub(crate) usize);

impl ExecId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ExecId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// The four prefix-order axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Reflexive,
    Transitive,
    AntiSymmetric,
    DownwardTotal,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Reflexive => "reflexive",
            Axiom::Transitive => "transitive",
            Axiom::AntiSymmetric => "anti-symmetric",
            Axiom::DownwardTotal => "downward-total",
        };
        f.write_str(s)
    }
}

/// One failed axiom together with the elements that witness the failure.
///
/// The witness has one entry for reflexivity, two for anti-symmetry and three
/// for transitivity (`a ⪯ b ⪯ c` but not `a ⪯ c`) and downward totality
/// (`a ⪯ c`, `b ⪯ c`, `a` and `b` incomparable).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: Vec<String>,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at ({})", self.axiom, self.witness.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element id `{0}`")]
    DuplicateId(String),
    #[error("parent chain through `{0}` is cyclic")]
    Cycle(String),
    #[error("not a prefix order: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    AxiomViolations(Vec<AxiomViolation>),
}

/// One line of the structured-text schema: `{id, parent?, label?}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementEntry {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parent: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// A finite prefix order stored as a parent forest.
#[derive(Clone)]
pub struct PrefixOrder {
    names: Vec<String>,
    parent: Vec<Option<ExecId>>,
    labels: Vec<Option<String>>,
    depth: Vec<usize>,
    children: Vec<Vec<ExecId>>,
    lookup: HashMap<String, ExecId>,
}

impl PartialEq for PrefixOrder {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.parent == other.parent && self.labels == other.labels
    }
}

impl Eq for PrefixOrder {}

impl fmt::Debug for PrefixOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PrefixOrder")
            .field("elements", &self.to_entries())
            .finish()
    }
}

impl Default for PrefixOrder {
    fn default() -> Self {
        Self::empty()
    }
}

/// Incremental construction of a [`PrefixOrder`]; parents must be added
/// before their children.
#[derive(Debug, Default)]
pub struct OrderBuilder {
    names: Vec<String>,
    parent: Vec<Option<ExecId>>,
    labels: Vec<Option<String>>,
    lookup: HashMap<String, ExecId>,
}

impl OrderBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, name: impl Into<String>, parent: Option<ExecId>) -> Result<ExecId, OrderError> {
        self.add_labeled(name, parent, None)
    }

    pub fn add_labeled(
        &mut self,
        name: impl Into<String>,
        parent: Option<ExecId>,
        label: Option<String>,
    ) -> Result<ExecId, OrderError> {
        let name = name.into();
        if self.lookup.contains_key(&name) {
            return Err(OrderError::DuplicateId(name));
        }
        if let Some(p) = parent {
            if p.0 >= self.names.len() {
                return Err(OrderError::UnknownElement(p.to_string()));
            }
        }
        let id = ExecId(self.names.len());
        self.lookup.insert(name.clone(), id);
        self.names.push(name);
        self.parent.push(parent);
        self.labels.push(label);
        Ok(id)
    }

    pub fn get(&self, name: &str) -> Option<ExecId> {
        self.lookup.get(name).copied()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn build(self) -> PrefixOrder {
        PrefixOrder::from_parts(self.names, self.parent, self.labels)
    }
}

impl PrefixOrder {
    pub fn empty() -> Self {
        Self::from_parts(Vec::new(), Vec::new(), Vec::new())
    }

    /// Parents must precede children (guaranteed by every caller).
    fn from_parts(names: Vec<String>, parent: Vec<Option<ExecId>>, labels: Vec<Option<String>>) -> Self {
        let n = names.len();
        let mut depth = vec![0; n];
        let mut children = vec![Vec::new(); n];
        for i in 0..n {
            if let Some(p) = parent[i] {
                depth[i] = depth[p.0] + 1;
                children[p.0].push(ExecId(i));
            }
        }
        let lookup = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), ExecId(i)))
            .collect();
        PrefixOrder { names, parent, labels, depth, children, lookup }
    }

    /// Builds an order from `{id, parent?, label?}` entries given in any order.
    pub fn from_entries(entries: &[ElementEntry]) -> Result<Self, OrderError> {
        let mut by_name: HashMap<&str, usize> = HashMap::new();
        for (i, e) in entries.iter().enumerate() {
            if by_name.insert(e.id.as_str(), i).is_some() {
                return Err(OrderError::DuplicateId(e.id.clone()));
            }
        }
        for e in entries {
            if let Some(p) = &e.parent {
                if !by_name.contains_key(p.as_str()) {
                    return Err(OrderError::UnknownElement(p.clone()));
                }
            }
        }
        // Place each entry after its parent, keeping input order otherwise.
        let mut placed: Vec<Option<ExecId>> = vec![None; entries.len()];
        let mut builder = OrderBuilder::new();
        for start in 0..entries.len() {
            let mut chain = Vec::new();
            let mut cur = start;
            while placed[cur].is_none() {
                if chain.contains(&cur) {
                    return Err(OrderError::Cycle(entries[cur].id.clone()));
                }
                chain.push(cur);
                match &entries[cur].parent {
                    Some(p) => cur = by_name[p.as_str()],
                    None => break,
                }
            }
            for &i in chain.iter().rev() {
                if placed[i].is_some() {
                    continue;
                }
                let parent = entries[i].parent.as_ref().map(|p| {
                    placed[by_name[p.as_str()]].expect("parent placed before child")
                });
                let id = builder.add_labeled(entries[i].id.clone(), parent, entries[i].label.clone())?;
                placed[i] = Some(id);
            }
        }
        Ok(builder.build())
    }

    pub fn to_entries(&self) -> Vec<ElementEntry> {
        self.ids()
            .map(|u| ElementEntry {
                id: self.name(u).to_string(),
                parent: self.parent(u).map(|p| self.name(p).to_string()),
                label: self.label(u).map(str::to_string),
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn ids(&self) -> impl DoubleEndedIterator<Item = ExecId> + ExactSizeIterator + Clone {
        (0..self.names.len()).map(ExecId)
    }

    pub fn contains(&self, u: ExecId) -> bool {
        u.0 < self.names.len()
    }

    pub fn name(&self, u: ExecId) -> &str {
        &self.names[u.0]
    }

    pub fn label(&self, u: ExecId) -> Option<&str> {
        self.labels[u.0].as_deref()
    }

    pub fn id(&self, name: &str) -> Option<ExecId> {
        self.lookup.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<ExecId, OrderError> {
        self.id(name).ok_or_else(|| OrderError::UnknownElement(name.to_string()))
    }

    /// Immediate predecessor.
    pub fn parent(&self, u: ExecId) -> Option<ExecId> {
        self.parent[u.0]
    }

    pub fn children(&self, u: ExecId) -> &[ExecId] {
        &self.children[u.0]
    }

    /// Number of strict predecessors.
    pub fn depth(&self, u: ExecId) -> usize {
        self.depth[u.0]
    }

    pub fn roots(&self) -> impl Iterator<Item = ExecId> + '_ {
        self.ids().filter(|&u| self.parent(u).is_none())
    }

    pub fn maximal(&self) -> impl Iterator<Item = ExecId> + '_ {
        self.ids().filter(|&u| self.children(u).is_empty())
    }

    /// `a ⪯ b`.
    pub fn le(&self, a: ExecId, b: ExecId) -> bool {
        let mut cur = b;
        while self.depth[cur.0] > self.depth[a.0] {
            cur = self.parent[cur.0].expect("depth > 0 implies a parent");
        }
        cur == a
    }

    pub fn comparable(&self, a: ExecId, b: ExecId) -> bool {
        self.le(a, b) || self.le(b, a)
    }

    /// The history `u⁻`, listed from the root up to `u`.
    pub fn history_chain(&self, u: ExecId) -> Vec<ExecId> {
        let mut chain = vec![u];
        let mut cur = u;
        while let Some(p) = self.parent(cur) {
            chain.push(p);
            cur = p;
        }
        chain.reverse();
        chain
    }

    pub fn history(&self, u: ExecId) -> Result<PrefixClosedSet<'_>, OrderError> {
        if !self.contains(u) {
            return Err(OrderError::UnknownElement(u.to_string()));
        }
        Ok(PrefixClosedSet {
            order: self,
            members: self.history_chain(u).into_iter().collect(),
        })
    }

    /// The future `u⁺` (not necessarily a chain).
    pub fn future(&self, u: ExecId) -> Result<BTreeSet<ExecId>, OrderError> {
        if !self.contains(u) {
            return Err(OrderError::UnknownElement(u.to_string()));
        }
        let mut out = BTreeSet::new();
        let mut stack = vec![u];
        while let Some(v) = stack.pop() {
            out.insert(v);
            stack.extend_from_slice(self.children(v));
        }
        Ok(out)
    }

    /// Wraps `members` as a prefix-closed set, or returns an element whose
    /// parent is missing.
    pub fn prefix_closed<'a>(
        &'a self,
        members: impl IntoIterator<Item = ExecId>,
    ) -> Result<PrefixClosedSet<'a>, ExecId> {
        let members: BTreeSet<ExecId> = members.into_iter().collect();
        for &u in &members {
            if let Some(p) = self.parent(u) {
                if !members.contains(&p) {
                    return Err(u);
                }
            }
        }
        Ok(PrefixClosedSet { order: self, members })
    }

    /// Every pair `(a, b)` with `a ⪯ b`.
    pub fn relation_pairs(&self) -> Vec<(ExecId, ExecId)> {
        let mut out = Vec::new();
        for b in self.ids() {
            for a in self.history_chain(b) {
                out.push((a, b));
            }
        }
        out.sort();
        out
    }

    /// Restriction to a prefix-closed subset; ids are renumbered, names kept.
    pub fn restrict(&self, keep: &BTreeSet<ExecId>) -> Result<PrefixOrder, OrderError> {
        let mut builder = OrderBuilder::new();
        let mut new_id = HashMap::new();
        for u in self.ids().filter(|u| keep.contains(u)) {
            let parent = match self.parent(u) {
                Some(p) => Some(*new_id.get(&p).ok_or_else(|| {
                    OrderError::UnknownElement(self.name(p).to_string())
                })?),
                None => None,
            };
            let id = builder.add_labeled(self.name(u), parent, self.labels[u.0].clone())?;
            new_id.insert(u, id);
        }
        Ok(builder.build())
    }

    /// Canonical string of the underlying unlabelled forest; two orders are
    /// isomorphic iff their shapes are equal.
    pub fn shape(&self) -> String {
        self.canonical(false)
    }

    /// Like [`PrefixOrder::shape`] but also distinguishes labels.
    pub fn labeled_shape(&self) -> String {
        self.canonical(true)
    }

    fn canonical(&self, with_labels: bool) -> String {
        let mut code: Vec<String> = vec![String::new(); self.len()];
        let mut by_depth: Vec<ExecId> = self.ids().collect();
        by_depth.sort_by_key(|u| std::cmp::Reverse(self.depth(*u)));
        for u in by_depth {
            let mut kids: Vec<&str> = self.children(u).iter().map(|c| code[c.0].as_str()).collect();
            kids.sort_unstable();
            let mut s = String::from("(");
            if with_labels {
                s.push_str(&format!("{:?}", self.label(u)));
            }
            for k in kids {
                s.push_str(k);
            }
            s.push(')');
            code[u.0] = s;
        }
        let mut roots: Vec<&str> = self.roots().map(|r| code[r.0].as_str()).collect();
        roots.sort_unstable();
        roots.concat()
    }

    pub fn is_isomorphic(&self, other: &PrefixOrder) -> bool {
        self.len() == other.len() && self.shape() == other.shape()
    }

    /// DOT rendering, edges drawn from each execution to its extensions.
    pub fn to_dot(&self, graph_name: &str) -> String {
        let mut out = format!("digraph \"{}\" {{\n", escape_dot(graph_name));
        out.push_str("  rankdir=BT;\n");
        for u in self.ids() {
            let text = match self.label(u) {
                Some(l) => format!("{}\\n{}", escape_dot(self.name(u)), escape_dot(l)),
                None => escape_dot(self.name(u)),
            };
            out.push_str(&format!("  n{} [label=\"{}\"];\n", u.0, text));
        }
        for u in self.ids() {
            if let Some(p) = self.parent(u) {
                out.push_str(&format!("  n{} -> n{};\n", p.0, u.0));
            }
        }
        out.push_str("}\n");
        out
    }
}

fn escape_dot(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// A prefix-closed subset of a particular order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixClosedSet<'a> {
    order: &'a PrefixOrder,
    members: BTreeSet<ExecId>,
}

impl<'a> PrefixClosedSet<'a> {
    pub fn order(&self) -> &'a PrefixOrder {
        self.order
    }

    pub fn members(&self) -> &BTreeSet<ExecId> {
        &self.members
    }

    pub fn contains(&self, u: ExecId) -> bool {
        self.members.contains(&u)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_chain(&self) -> bool {
        let v: Vec<ExecId> = self.members.iter().copied().collect();
        v.iter()
            .enumerate()
            .all(|(i, &a)| v[i + 1..].iter().all(|&b| self.order.comparable(a, b)))
    }

    pub fn names(&self) -> Vec<&'a str> {
        self.members.iter().map(|&u| self.order.name(u)).collect()
    }
}

/// An explicit element set with a relation, as supplied from outside.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCandidate {
    pub elements: Vec<String>,
    pub relation: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<String, String>,
}

/// Checks all four axioms on an explicit relation and, if they hold, returns
/// the canonical forest. Reflexive pairs must be present in the relation.
///
/// Every failed axiom is reported once, with the first witness found.
pub fn validate_order(candidate: &RelationCandidate) -> Result<PrefixOrder, OrderError> {
    let n = candidate.elements.len();
    let mut index: HashMap<&str, usize> = HashMap::with_capacity(n);
    for (i, e) in candidate.elements.iter().enumerate() {
        if index.insert(e.as_str(), i).is_some() {
            return Err(OrderError::DuplicateId(e.clone()));
        }
    }
    let mut rel = vec![vec![false; n]; n];
    for (a, b) in &candidate.relation {
        let ia = *index.get(a.as_str()).ok_or_else(|| OrderError::UnknownElement(a.clone()))?;
        let ib = *index.get(b.as_str()).ok_or_else(|| OrderError::UnknownElement(b.clone()))?;
        rel[ia][ib] = true;
    }
    for l in candidate.labels.keys() {
        if !index.contains_key(l.as_str()) {
            return Err(OrderError::UnknownElement(l.clone()));
        }
    }
    let name = |i: usize| candidate.elements[i].clone();

    let mut violations = Vec::new();
    if let Some(a) = (0..n).find(|&a| !rel[a][a]) {
        violations.push(AxiomViolation { axiom: Axiom::Reflexive, witness: vec![name(a)] });
    }
    'trans: for a in 0..n {
        for b in 0..n {
            if !rel[a][b] {
                continue;
            }
            for c in 0..n {
                if rel[b][c] && !rel[a][c] {
                    violations.push(AxiomViolation {
                        axiom: Axiom::Transitive,
                        witness: vec![name(a), name(b), name(c)],
                    });
                    break 'trans;
                }
            }
        }
    }
    'anti: for a in 0..n {
        for b in a + 1..n {
            if rel[a][b] && rel[b][a] {
                violations.push(AxiomViolation {
                    axiom: Axiom::AntiSymmetric,
                    witness: vec![name(a), name(b)],
                });
                break 'anti;
            }
        }
    }
    'total: for c in 0..n {
        for a in 0..n {
            if !rel[a][c] {
                continue;
            }
            for b in a + 1..n {
                if rel[b][c] && !rel[a][b] && !rel[b][a] {
                    violations.push(AxiomViolation {
                        axiom: Axiom::DownwardTotal,
                        witness: vec![name(a), name(b), name(c)],
                    });
                    break 'total;
                }
            }
        }
    }
    if !violations.is_empty() {
        return Err(OrderError::AxiomViolations(violations));
    }

    // The strict down-set of each element is a chain; its maximum is the parent.
    let rel = &rel;
    let below = |c: usize| (0..n).filter(move |&a| a != c && rel[a][c]);
    let entries: Vec<ElementEntry> = (0..n)
        .map(|c| {
            let parent = below(c).find(|&p| below(c).all(|a| rel[a][p]));
            ElementEntry {
                id: name(c),
                parent: parent.map(name),
                label: candidate.labels.get(&candidate.elements[c]).cloned(),
            }
        })
        .collect();
    PrefixOrder::from_entries(&entries)
}

/// Exports an order as its reflexive-transitive relation.
pub fn to_relation(order: &PrefixOrder) -> RelationCandidate {
    RelationCandidate {
        elements: order.ids().map(|u| order.name(u).to_string()).collect(),
        relation: order
            .relation_pairs()
            .into_iter()
            .map(|(a, b)| (order.name(a).to_string(), order.name(b).to_string()))
            .collect(),
        labels: order
            .ids()
            .filter_map(|u| order.label(u).map(|l| (order.name(u).to_string(), l.to_string())))
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    /// DOT-compatible graph document.
    Dot,
    /// JSON list of `{id, parent?, label?}`.
    Text,
}

/// The structured-text document for one order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderDocument {
    pub elements: Vec<ElementEntry>,
}

pub fn export(order: &PrefixOrder, format: ExportFormat) -> String {
    match format {
        ExportFormat::Dot => order.to_dot("order"),
        ExportFormat::Text => {
            let doc = OrderDocument { elements: order.to_entries() };
            serde_json::to_string_pretty(&doc).expect("order document serializes") + "\n"
        }
    }
}

#[derive(Debug, Error)]
pub enum ImportError {
    #[error("malformed order document: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// Parses a structured-text order document. Blank input is the empty order.
pub fn import(text: &str) -> Result<PrefixOrder, ImportError> {
    if text.trim().is_empty() {
        return Ok(PrefixOrder::empty());
    }
    let doc: OrderDocument = serde_json::from_str(text)?;
    Ok(PrefixOrder::from_entries(&doc.elements)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(list: &[(&str, &str)]) -> Vec<(String, String)> {
        list.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    fn strings(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    fn y2_candidate() -> RelationCandidate {
        let els = ["bot", "(0,0)", "(1,0)", "(1,1)"];
        let mut rel: Vec<(&str, &str)> = els.iter().map(|e| (*e, *e)).collect();
        rel.extend([("bot", "(0,0)"), ("bot", "(1,0)"), ("bot", "(1,1)"), ("(1,0)", "(1,1)")]);
        RelationCandidate { elements: strings(&els), relation: pairs(&rel), labels: BTreeMap::new() }
    }

    #[test]
    fn y2_relation_is_valid() {
        let order = validate_order(&y2_candidate()).unwrap();
        assert_eq!(order.len(), 4);
        let top = order.id("(1,1)").unwrap();
        assert_eq!(order.name(order.parent(top).unwrap()), "(1,0)");
        assert_eq!(order.roots().count(), 1);
    }

    #[test]
    fn empty_relation_is_empty_order() {
        let order = validate_order(&RelationCandidate::default()).unwrap();
        assert!(order.is_empty());
    }

    #[test]
    fn diamond_bottom_fails_downward_totality() {
        let c = RelationCandidate {
            elements: strings(&["a", "b", "c"]),
            relation: pairs(&[("a", "a"), ("b", "b"), ("c", "c"), ("a", "c"), ("b", "c")]),
            labels: BTreeMap::new(),
        };
        match validate_order(&c) {
            Err(OrderError::AxiomViolations(v)) => {
                assert_eq!(v.len(), 1);
                assert_eq!(v[0].axiom, Axiom::DownwardTotal);
                assert_eq!(v[0].witness, strings(&["a", "b", "c"]));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn reports_every_failed_axiom() {
        let c = RelationCandidate {
            elements: strings(&["a", "b", "c"]),
            relation: pairs(&[("a", "b"), ("b", "a"), ("b", "c")]),
            labels: BTreeMap::new(),
        };
        let Err(OrderError::AxiomViolations(v)) = validate_order(&c) else {
            panic!("expected violations");
        };
        let axioms: Vec<Axiom> = v.iter().map(|v| v.axiom).collect();
        assert_eq!(axioms, [Axiom::Reflexive, Axiom::Transitive, Axiom::AntiSymmetric]);
    }

    #[test]
    fn unknown_element_in_relation() {
        let c = RelationCandidate {
            elements: strings(&["a"]),
            relation: pairs(&[("a", "z")]),
            labels: BTreeMap::new(),
        };
        assert_eq!(validate_order(&c), Err(OrderError::UnknownElement("z".into())));
    }

    #[test]
    fn history_and_future() {
        let order = validate_order(&y2_candidate()).unwrap();
        let top = order.id("(1,1)").unwrap();
        let h = order.history(top).unwrap();
        assert!(h.is_chain());
        assert_eq!(h.names(), ["bot", "(1,0)", "(1,1)"]);
        let bot = order.id("bot").unwrap();
        assert_eq!(order.future(bot).unwrap().len(), 4);
        assert_eq!(order.future(top).unwrap().len(), 1);
        assert_eq!(order.history(bot).unwrap().len(), 1);
        assert!(order.history(ExecId(17)).is_err());
    }

    #[test]
    fn from_entries_rejects_cycles_and_duplicates() {
        let e = |id: &str, p: Option<&str>| ElementEntry {
            id: id.into(),
            parent: p.map(Into::into),
            label: None,
        };
        assert_eq!(
            PrefixOrder::from_entries(&[e("a", Some("b")), e("b", Some("a"))]),
            Err(OrderError::Cycle("a".into()))
        );
        assert_eq!(
            PrefixOrder::from_entries(&[e("a", None), e("a", None)]),
            Err(OrderError::DuplicateId("a".into()))
        );
        // children may precede parents
        let o = PrefixOrder::from_entries(&[e("c", Some("b")), e("b", Some("a")), e("a", None)]).unwrap();
        assert!(o.le(o.id("a").unwrap(), o.id("c").unwrap()));
    }

    #[test]
    fn export_is_deterministic_and_round_trips() {
        let order = validate_order(&y2_candidate()).unwrap();
        let dot = export(&order, ExportFormat::Dot);
        assert_eq!(dot.matches("[label=").count(), 4);
        assert_eq!(dot, export(&order, ExportFormat::Dot));
        let text = export(&order, ExportFormat::Text);
        assert_eq!(import(&text).unwrap(), order);
        assert_eq!(import("").unwrap(), PrefixOrder::empty());
        assert_eq!(export(&PrefixOrder::empty(), ExportFormat::Dot).matches("->").count(), 0);
    }

    #[test]
    fn prefix_closed_detects_missing_parent() {
        let order = validate_order(&y2_candidate()).unwrap();
        let top = order.id("(1,1)").unwrap();
        assert_eq!(order.prefix_closed([top]).unwrap_err(), top);
        assert!(order.prefix_closed(order.history_chain(top)).is_ok());
    }
}
