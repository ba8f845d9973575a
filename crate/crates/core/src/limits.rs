//! Limit executions (threads) of an inverse family and the projective limit.
//!
//! At a stored horizon every limit execution is determined by its element at
//! the greatest index: the third condition forces definedness there, the first
//! fixes every lower element as its image, and the second forces definedness
//! wherever that image exists. [`enumerate_threads`] builds threads this way
//! and then re-checks all three conditions on each one.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::family::{FamilyKind, InverseFamily};
use crate::maps::{compose, same_order, validate_php_direct, MapError, PartialFn, PhpMap};
use crate::order::{validate_order, ElementEntry, ExecId, OrderError, PrefixOrder, RelationCandidate};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LimitError {
    #[error("horizon {horizon} exceeds the stored family horizon {stored}")]
    HorizonExceedsFamily { horizon: usize, stored: usize },
    #[error("exact limits need an increasing or stable chain family")]
    WrongFamilyKind,
    #[error("thread order is not a prefix order: {0}")]
    NotAPrefixOrder(OrderError),
    #[error("thread `{thread}` breaks limit condition {bullet}: {detail}")]
    ThreadInvalid { thread: String, bullet: u8, detail: String },
    #[error("projection {i} is not history preserving: {source}")]
    ProjectionInvalid { i: usize, source: MapError },
    #[error("naturality fails for {i} ⪯ {j} at thread `{thread}`")]
    NaturalityFails { i: usize, j: usize, thread: String },
    #[error("cone does not commute: ρ_{i}(`{w}`) ≠ f({i},{j})(ρ_{j}(`{w}`))")]
    ConeNotCommuting { i: usize, j: usize, w: String },
    #[error("ρ(`{w}`) is not a limit execution")]
    MediatingNotThread { w: String },
    #[error("mediating map is invalid: {0}")]
    MediatingInvalid(MapError),
    #[error("mediating map is not unique: {0} candidates")]
    NotUnique(usize),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
}

/// Whether the family structure guarantees that threads persist unchanged
/// beyond the stored horizon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certainty {
    Exact,
    HorizonApproximate,
}

/// A limit execution restricted to the stored indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitThread {
    name: String,
    assignment: Vec<Option<ExecId>>,
    certainty: Certainty,
}

impl LimitThread {
    /// Name of the element at the greatest index.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// `π_i` of this thread.
    pub fn at(&self, i: usize) -> Option<ExecId> {
        self.assignment.get(i).copied().flatten()
    }

    pub fn assignment(&self) -> &[Option<ExecId>] {
        &self.assignment
    }

    /// Least index where the thread is defined.
    pub fn start(&self) -> usize {
        self.assignment
            .iter()
            .position(Option::is_some)
            .expect("threads are non-empty")
    }

    pub fn certainty(&self) -> Certainty {
        self.certainty
    }
}

/// Serialized thread: `{start, assignments, certainty}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreadDocument {
    pub name: String,
    pub start: usize,
    pub assignments: Vec<(usize, String)>,
    pub certainty: Certainty,
}

/// The projective limit at a horizon: threads plus their prefix order.
#[derive(Debug, Clone)]
pub struct ThreadOrder {
    family: Arc<InverseFamily>,
    horizon: usize,
    /// `threads[k]` is the thread of element `k` in `order`.
    threads: Vec<LimitThread>,
    order: Arc<PrefixOrder>,
}

fn certainty_of(family: &InverseFamily, horizon: usize) -> Certainty {
    if !family.is_chain() {
        return Certainty::Exact;
    }
    match family.kind() {
        FamilyKind::IncreasingPartialIdentity => Certainty::Exact,
        FamilyKind::ExplicitStable { stable_from } if horizon >= stable_from => Certainty::Exact,
        _ => Certainty::HorizonApproximate,
    }
}

/// Indices taken into account at a horizon.
fn index_range(family: &InverseFamily, horizon: usize) -> (usize, usize) {
    if family.is_chain() {
        (horizon + 1, horizon)
    } else {
        (family.len(), family.top())
    }
}

/// Checks the three limit-execution conditions on one assignment, with the
/// third truncated to the indices below `len`.
pub fn check_thread(family: &InverseFamily, assignment: &[Option<ExecId>], name: &str) -> Result<(), LimitError> {
    let fail = |bullet: u8, detail: String| LimitError::ThreadInvalid { thread: name.to_string(), bullet, detail };
    let n = assignment.len();
    if assignment.iter().all(Option::is_none) {
        return Err(fail(1, "empty".into()));
    }
    for i in 0..n {
        for j in 0..n {
            if !family.le(i, j) {
                continue;
            }
            let f = family.map(i, j);
            if let (Some(u), Some(v)) = (assignment[i], assignment[j]) {
                if f.get(v) != Some(u) {
                    return Err(fail(1, format!("f({i},{j}) disagrees")));
                }
            }
            if let Some(v) = assignment[j] {
                if f.get(v).is_some() && assignment[i].is_none() {
                    return Err(fail(2, format!("image at {i} missing")));
                }
            }
            if assignment[i].is_some() && assignment[j].is_none() {
                return Err(fail(3, format!("undefined at {j} ⪰ {i}")));
            }
        }
    }
    Ok(())
}

fn build_thread(
    family: &InverseFamily,
    len: usize,
    top: usize,
    u: ExecId,
    certainty: Certainty,
) -> Result<LimitThread, LimitError> {
    let assignment: Vec<Option<ExecId>> = (0..len)
        .map(|i| if family.le(i, top) { family.map(i, top).get(u) } else { None })
        .collect();
    let name = family.object(top).name(u).to_string();
    check_thread(family, &assignment, &name)?;
    Ok(LimitThread { name, assignment, certainty })
}

/// The single thread through element `u` at the greatest index, without
/// building the whole limit order.
pub fn thread_through(family: &InverseFamily, horizon: usize, u: ExecId) -> Result<LimitThread, LimitError> {
    if family.is_chain() && horizon > family.horizon() {
        return Err(LimitError::HorizonExceedsFamily { horizon, stored: family.horizon() });
    }
    let (len, top) = index_range(family, horizon);
    if u.index() >= family.object(top).len() {
        return Err(LimitError::TypeMismatch(format!("no element {} at index {top}", u.index())));
    }
    build_thread(family, len, top, u, certainty_of(family, horizon))
}

pub fn enumerate_threads(family: &InverseFamily, horizon: usize) -> Result<ThreadOrder, LimitError> {
    if family.is_chain() && horizon > family.horizon() {
        return Err(LimitError::HorizonExceedsFamily { horizon, stored: family.horizon() });
    }
    let (len, top) = index_range(family, horizon);
    let certainty = certainty_of(family, horizon);
    let top_order = family.object(top);

    let mut candidates = Vec::with_capacity(top_order.len());
    for u in top_order.ids() {
        candidates.push(build_thread(family, len, top, u, certainty)?);
    }

    let order = thread_relation(family, &candidates)?;
    let mut threads: Vec<Option<LimitThread>> = vec![None; candidates.len()];
    for t in candidates {
        let id = order.id(&t.name).expect("thread named in its order");
        threads[id.index()] = Some(t);
    }
    Ok(ThreadOrder {
        family: Arc::new(family.clone()),
        horizon,
        threads: threads.into_iter().map(|t| t.expect("one thread per element")).collect(),
        order: Arc::new(order),
    })
}

/// `H ⊑ K` iff `π_i(H) ⪯ π_i(K)` wherever both are defined; the result
/// must pass the four prefix-order axioms.
fn thread_relation(family: &InverseFamily, threads: &[LimitThread]) -> Result<PrefixOrder, LimitError> {
    let mut relation = Vec::new();
    for h in threads {
        for k in threads {
            let below = h.assignment.iter().zip(&k.assignment).enumerate().all(|(i, pair)| match pair {
                (Some(a), Some(b)) => family.object(i).le(*a, *b),
                _ => true,
            });
            if below {
                relation.push((h.name.clone(), k.name.clone()));
            }
        }
    }
    let candidate = RelationCandidate {
        elements: threads.iter().map(|t| t.name.clone()).collect(),
        relation,
        labels: BTreeMap::new(),
    };
    validate_order(&candidate).map_err(LimitError::NotAPrefixOrder)
}

impl ThreadOrder {
    pub fn order(&self) -> &Arc<PrefixOrder> {
        &self.order
    }

    pub fn family(&self) -> &InverseFamily {
        &self.family
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn threads(&self) -> &[LimitThread] {
        &self.threads
    }

    pub fn len(&self) -> usize {
        self.threads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.threads.is_empty()
    }

    pub fn thread(&self, id: ExecId) -> &LimitThread {
        &self.threads[id.index()]
    }

    pub fn find(&self, name: &str) -> Option<&LimitThread> {
        self.order.id(name).map(|id| self.thread(id))
    }

    /// Number of indices each thread assigns.
    pub fn index_count(&self) -> usize {
        index_range(&self.family, self.horizon).0
    }

    /// The thread with exactly this assignment, if any.
    pub fn lookup(&self, assignment: &[Option<ExecId>]) -> Option<ExecId> {
        self.threads
            .iter()
            .position(|t| t.assignment == assignment)
            .map(ExecId)
    }

    /// `π_i` as an unvalidated partial function.
    pub fn projection_fn(&self, i: usize) -> PartialFn {
        PartialFn {
            source: self.order.clone(),
            target: self.family.object(i).clone(),
            graph: self.threads.iter().map(|t| t.at(i)).collect(),
        }
    }

    pub fn to_documents(&self) -> Vec<ThreadDocument> {
        self.threads
            .iter()
            .map(|t| ThreadDocument {
                name: t.name.clone(),
                start: t.start(),
                assignments: t
                    .assignment
                    .iter()
                    .enumerate()
                    .filter_map(|(i, u)| u.map(|u| (i, self.family.object(i).name(u).to_string())))
                    .collect(),
                certainty: t.certainty,
            })
            .collect()
    }
}

/// `π_i : lim → U_i`, validated as a history-preserving map.
pub fn projection(threads: &ThreadOrder, i: usize) -> Result<PhpMap, LimitError> {
    if i >= threads.index_count() {
        return Err(LimitError::TypeMismatch(format!("index {i} beyond the horizon")));
    }
    validate_php_direct(threads.projection_fn(i)).map_err(|source| LimitError::ProjectionInvalid { i, source })
}

/// `f(i, j) ∘ π_j = π_i` for every comparable pair.
pub fn check_naturality(threads: &ThreadOrder) -> Result<(), LimitError> {
    let n = threads.index_count();
    let projections = (0..n).map(|i| projection(threads, i)).collect::<Result<Vec<_>, _>>()?;
    let family = threads.family();
    for i in 0..n {
        for j in 0..n {
            if !family.le(i, j) {
                continue;
            }
            let lhs = compose(family.map(i, j), &projections[j]).map_err(|e| LimitError::TypeMismatch(e.to_string()))?;
            if let Some(k) = (0..threads.len()).find(|&k| lhs.graph()[k] != projections[i].graph()[k]) {
                return Err(LimitError::NaturalityFails { i, j, thread: threads.threads[k].name.clone() });
            }
        }
    }
    Ok(())
}

/// Limit of a chain family whose structure makes it exact.
#[derive(Debug, Clone)]
pub struct ExactLimit {
    pub order: PrefixOrder,
    /// For each element, the first index at which it appears; it persists
    /// through every later stored index.
    pub first_index: BTreeMap<String, usize>,
}

pub fn exact_chain_limit(family: &InverseFamily) -> Result<ExactLimit, LimitError> {
    if !family.is_chain() {
        return Err(LimitError::WrongFamilyKind);
    }
    match family.kind() {
        FamilyKind::IncreasingPartialIdentity => {
            let mut first_index = BTreeMap::new();
            let mut entries: Vec<ElementEntry> = Vec::new();
            for n in 0..=family.horizon() {
                let u_n = family.object(n);
                for u in u_n.ids() {
                    let name = u_n.name(u);
                    if first_index.contains_key(name) {
                        continue;
                    }
                    first_index.insert(name.to_string(), n);
                    entries.push(ElementEntry {
                        id: name.to_string(),
                        parent: u_n.parent(u).map(|p| u_n.name(p).to_string()),
                        label: u_n.label(u).map(str::to_string),
                    });
                }
            }
            for (name, &n) in &first_index {
                if let Some(m) = (n..=family.horizon()).find(|&m| family.object(m).id(name).is_none()) {
                    return Err(LimitError::ThreadInvalid {
                        thread: name.clone(),
                        bullet: 3,
                        detail: format!("disappears at index {m}"),
                    });
                }
            }
            let order = PrefixOrder::from_entries(&entries).map_err(LimitError::NotAPrefixOrder)?;
            Ok(ExactLimit { order, first_index })
        }
        FamilyKind::ExplicitStable { stable_from } if stable_from <= family.horizon() => {
            let order = (**family.object(stable_from)).clone();
            let first_index = order.ids().map(|u| (order.name(u).to_string(), stable_from)).collect();
            Ok(ExactLimit { order, first_index })
        }
        _ => Err(LimitError::WrongFamilyKind),
    }
}

/// A cone over the stored indices: one leg `ρ_i : W → U_i` per index.
#[derive(Debug, Clone)]
pub struct Cone {
    pub apex: Arc<PrefixOrder>,
    pub legs: Vec<PhpMap>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum Uniqueness {
    /// All maps satisfying the cone equations were enumerated.
    Exhaustive { candidates: usize },
    /// At most one thread matches each apex element.
    Pointwise,
}

#[derive(Debug, Clone)]
pub struct UniversalReport {
    pub threads: ThreadOrder,
    pub mediating: PhpMap,
    pub uniqueness: Uniqueness,
}

/// Apex size up to which uniqueness is checked by exhaustive search.
pub const EXHAUSTIVE_APEX_LIMIT: usize = 6;

pub fn check_universal_property(
    family: &InverseFamily,
    cone: &Cone,
    horizon: usize,
) -> Result<UniversalReport, LimitError> {
    let threads = enumerate_threads(family, horizon)?;
    let n = threads.index_count();
    let apex = &cone.apex;
    if cone.legs.len() != n {
        return Err(LimitError::TypeMismatch(format!("{} legs for {n} indices", cone.legs.len())));
    }
    for (i, leg) in cone.legs.iter().enumerate() {
        if !same_order(leg.source(), apex) || !same_order(leg.target(), family.object(i)) {
            return Err(LimitError::TypeMismatch(format!("leg {i} has the wrong endpoints")));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !family.le(i, j) {
                continue;
            }
            for w in apex.ids() {
                let via = cone.legs[j].get(w).and_then(|v| family.map(i, j).get(v));
                if cone.legs[i].get(w) != via {
                    return Err(LimitError::ConeNotCommuting { i, j, w: apex.name(w).to_string() });
                }
            }
        }
    }

    let rho = |w: ExecId| -> Vec<Option<ExecId>> { cone.legs.iter().map(|leg| leg.get(w)).collect() };
    let mut graph = Vec::with_capacity(apex.len());
    for w in apex.ids() {
        let a = rho(w);
        if a.iter().all(Option::is_none) {
            graph.push(None);
            continue;
        }
        match threads.lookup(&a) {
            Some(h) => graph.push(Some(h)),
            None => return Err(LimitError::MediatingNotThread { w: apex.name(w).to_string() }),
        }
    }
    let raw = PartialFn { source: apex.clone(), target: threads.order.clone(), graph };
    let mediating = validate_php_direct(raw).map_err(LimitError::MediatingInvalid)?;
    for (i, leg) in cone.legs.iter().enumerate() {
        let p = projection(&threads, i)?;
        let back = compose(&p, &mediating).map_err(|e| LimitError::TypeMismatch(e.to_string()))?;
        if back.graph() != leg.graph() {
            return Err(LimitError::MediatingInvalid(MapError::TypeMismatch(format!("π_{i} ∘ u ≠ ρ_{i}"))));
        }
    }

    let uniqueness = if apex.len() <= EXHAUSTIVE_APEX_LIMIT {
        let count = count_factorizations(&threads, cone, &mediating)?;
        Uniqueness::Exhaustive { candidates: count }
    } else {
        for w in apex.ids() {
            let a = rho(w);
            let matching = threads.threads.iter().filter(|t| t.assignment == a).count();
            if matching > 1 {
                return Err(LimitError::NotUnique(matching));
            }
        }
        Uniqueness::Pointwise
    };
    Ok(UniversalReport { threads, mediating, uniqueness })
}

/// Enumerates every partial map `W → lim` with `π_i ∘ u = ρ_i` for all `i`
/// that is history preserving, and checks it equals `mediating`.
fn count_factorizations(threads: &ThreadOrder, cone: &Cone, mediating: &PhpMap) -> Result<usize, LimitError> {
    let apex = &cone.apex;
    // Options per apex element: undefined, or any thread, pruned by the
    // cone equations (which every factorization must satisfy pointwise).
    let options: Vec<Vec<Option<ExecId>>> = apex
        .ids()
        .map(|w| {
            std::iter::once(None)
                .chain(threads.order.ids().map(Some))
                .filter(|h| {
                    cone.legs
                        .iter()
                        .enumerate()
                        .all(|(i, leg)| h.and_then(|h| threads.thread(h).at(i)) == leg.get(w))
                })
                .collect()
        })
        .collect();
    let mut count = 0;
    let mut graph = vec![None; apex.len()];
    let mut stack = vec![0usize; apex.len()];
    let mut pos = 0;
    if apex.is_empty() {
        return Ok(1);
    }
    loop {
        if stack[pos] < options[pos].len() {
            graph[pos] = options[pos][stack[pos]];
            stack[pos] += 1;
            if pos + 1 == apex.len() {
                let raw = PartialFn { source: apex.clone(), target: threads.order.clone(), graph: graph.clone() };
                if let Ok(m) = validate_php_direct(raw) {
                    if !m.same_as(mediating) {
                        return Err(LimitError::NotUnique(count + 2));
                    }
                    count += 1;
                }
            } else {
                pos += 1;
                stack[pos] = 0;
            }
        } else if pos == 0 {
            break;
        } else {
            pos -= 1;
        }
    }
    if count != 1 {
        return Err(LimitError::NotUnique(count));
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{constant, fan_grow, fan_strand, fan_strand_object, partial_identity, validate_family};
    use crate::family::{CandidateMaps, DirectedIndex, FamilyCandidate};
    use crate::order::OrderBuilder;

    /// Independent oracle: all assignments satisfying the three conditions,
    /// by brute force over every choice per index.
    fn brute_force_threads(family: &InverseFamily, len: usize) -> Vec<Vec<Option<ExecId>>> {
        let sizes: Vec<usize> = (0..len).map(|i| family.object(i).len() + 1).collect();
        let total: usize = sizes.iter().product();
        let mut out = Vec::new();
        for mut code in 0..total {
            let a: Vec<Option<ExecId>> = sizes
                .iter()
                .map(|&s| {
                    let d = code % s;
                    code /= s;
                    d.checked_sub(1).map(ExecId)
                })
                .collect();
            if check_thread(family, &a, "x").is_ok() {
                out.push(a);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn threads_match_brute_force() {
        for fam in [fan_strand(3), fan_grow(3)] {
            let t = enumerate_threads(&fam, 3).unwrap();
            let mut got: Vec<_> = t.threads().iter().map(|t| t.assignment().to_vec()).collect();
            got.sort();
            assert_eq!(got, brute_force_threads(&fam, 4));
        }
    }

    #[test]
    fn strand_thread_starts_after_its_strand_appears() {
        let t = enumerate_threads(&fan_strand(4), 4).unwrap();
        assert_eq!(t.len(), 11);
        let h = t.find("(2,1)").unwrap();
        assert_eq!(h.start(), 3);
        assert_eq!(h.certainty(), Certainty::Exact);
        let p3 = projection(&t, 3).unwrap();
        for (k, th) in t.threads().iter().enumerate() {
            assert_eq!(p3.graph()[k].is_none(), th.start() > 3);
        }
    }

    #[test]
    fn single_point_family() {
        let mut b = OrderBuilder::new();
        b.add("bot", None).unwrap();
        let fam = constant(b.build(), 0);
        let t = enumerate_threads(&fam, 0).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.threads()[0].assignment(), &[Some(ExecId(0))]);
    }

    #[test]
    fn horizon_checked() {
        assert!(matches!(
            enumerate_threads(&fan_strand(2), 3),
            Err(LimitError::HorizonExceedsFamily { horizon: 3, stored: 2 })
        ));
    }

    #[test]
    fn exact_limits_of_builtins() {
        let l = exact_chain_limit(&fan_strand(4)).unwrap();
        assert_eq!(l.order, fan_strand_object(4));
        assert_eq!(l.first_index["(3,0)"], 4);
        let t = enumerate_threads(&fan_grow(5), 5).unwrap();
        assert!(exact_chain_limit(&fan_grow(5)).unwrap().order.is_isomorphic(t.order()));
    }

    #[test]
    fn naturality_and_projections() {
        let t = enumerate_threads(&fan_grow(4), 4).unwrap();
        check_naturality(&t).unwrap();
        for i in 0..=4 {
            crate::maps::validate_php_structural(t.projection_fn(i)).unwrap();
        }
    }

    #[test]
    fn empty_thread_order_projection_is_empty() {
        let fam = constant(PrefixOrder::empty(), 2);
        let t = enumerate_threads(&fam, 2).unwrap();
        assert!(t.is_empty());
        assert_eq!(projection(&t, 1).unwrap().domain().count(), 0);
    }

    fn identity_cone(n: usize) -> (InverseFamily, Cone) {
        let fam = fan_strand(n);
        let apex = fam.object(n).clone();
        let legs = (0..=n)
            .map(|i| validate_php_direct(partial_identity(&apex, fam.object(i))).unwrap())
            .collect();
        (fam, Cone { apex, legs })
    }

    #[test]
    fn universal_property_of_strand_cone() {
        let (fam, cone) = identity_cone(3);
        let r = check_universal_property(&fam, &cone, 3).unwrap();
        assert!(r.mediating.is_total() && r.mediating.is_injective() && r.mediating.is_surjective());
        assert_eq!(r.uniqueness, Uniqueness::Pointwise);
        let (fam, cone) = identity_cone(2);
        let r = check_universal_property(&fam, &cone, 2).unwrap();
        assert_eq!(r.uniqueness, Uniqueness::Exhaustive { candidates: 1 });
    }

    #[test]
    fn point_cone_hits_root_thread() {
        let fam = fan_strand(2);
        let mut b = OrderBuilder::new();
        b.add("w", None).unwrap();
        let apex = Arc::new(b.build());
        let legs = (0..=2)
            .map(|i| {
                let raw = PartialFn::from_pairs(apex.clone(), fam.object(i).clone(), [("w", "bot")]).unwrap();
                validate_php_direct(raw).unwrap()
            })
            .collect();
        let r = check_universal_property(&fam, &Cone { apex, legs }, 2).unwrap();
        let h = r.mediating.get(ExecId(0)).unwrap();
        assert_eq!(r.threads.thread(h).name(), "bot");
    }

    #[test]
    fn non_commuting_cone_rejected() {
        let (fam, mut cone) = identity_cone(2);
        cone.legs[0] = PhpMap::empty(cone.apex.clone(), fam.object(0).clone());
        assert!(matches!(
            check_universal_property(&fam, &cone, 2),
            Err(LimitError::ConeNotCommuting { i: 0, .. })
        ));
    }

    #[test]
    fn generator_family_threads_are_approximate() {
        let objects: Vec<Arc<PrefixOrder>> = (0..3).map(|n| Arc::new(fan_strand_object(n))).collect();
        let steps = (0..2).map(|n| partial_identity(&objects[n + 1], &objects[n])).collect();
        let fam = validate_family(FamilyCandidate {
            index: DirectedIndex::NatChain { horizon: 2 },
            objects,
            maps: CandidateMaps::Steps(steps),
            kind: FamilyKind::Generator,
        })
        .unwrap();
        let t = enumerate_threads(&fam, 2).unwrap();
        assert!(t.threads().iter().all(|t| t.certainty() == Certainty::HorizonApproximate));
        assert!(exact_chain_limit(&fam).is_err());
    }
}
