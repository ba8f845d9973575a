use std::collections::BTreeMap;

use crate::family::{validate_family, CandidateMaps, DirectedIndex, FamilyCandidate, FamilyError, FamilyKind, InverseFamily};
use crate::limits::{thread_through, LimitThread};
use crate::maps::{validate_php_direct, validate_php_structural, MapError, PartialFn};

use super::{discretize, refine_step, Discretization, Dyadic, FlowError, FlowSet, RefineMode, Signal};

/// Discretizations `Φ_0, …, Φ_K` joined by single refinement steps.
#[derive(Debug, Clone)]
pub struct Tower {
    levels: Vec<Discretization>,
    family: InverseFamily,
    mode: RefineMode,
}

impl Tower {
    /// Level `n + 1` must refine into level `n`; each step is validated by
    /// both history-preservation checks before the family is assembled.
    pub fn from_levels(levels: Vec<Discretization>, mode: RefineMode) -> Result<Tower, FamilyError> {
        if levels.is_empty() {
            return Err(FamilyError::BadParams("a tower needs at least one level".into()));
        }
        let mut steps = Vec::with_capacity(levels.len() - 1);
        for n in 0..levels.len() - 1 {
            let (coarse, fine) = (&levels[n], &levels[n + 1]);
            let invalid = |source: MapError| FamilyError::InvalidMap { i: n, j: n + 1, source };
            let mut graph = Vec::with_capacity(fine.len());
            for u in fine.order().ids() {
                let image = refine_step(fine.seq(u), mode);
                let v = coarse
                    .lookup(&image)
                    .ok_or_else(|| invalid(MapError::UnknownElement(super::seq_name(&image))))?;
                graph.push(Some(v));
            }
            let step = PartialFn { source: fine.order().clone(), target: coarse.order().clone(), graph };
            validate_php_structural(step.clone()).map_err(invalid)?;
            validate_php_direct(step.clone()).map_err(invalid)?;
            steps.push(step);
        }
        let family = validate_family(FamilyCandidate {
            index: DirectedIndex::NatChain { horizon: levels.len() - 1 },
            objects: levels.iter().map(|l| l.order().clone()).collect(),
            maps: CandidateMaps::Steps(steps),
            kind: FamilyKind::Generator,
        })?;
        Ok(Tower { levels, family, mode })
    }

    pub fn family(&self) -> &InverseFamily {
        &self.family
    }

    pub fn level(&self, k: usize) -> &Discretization {
        &self.levels[k]
    }

    pub fn levels(&self) -> &[Discretization] {
        &self.levels
    }

    /// `K`.
    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn mode(&self) -> RefineMode {
        self.mode
    }
}

/// `Φ_0 ← Φ_1 ← … ← Φ_K` for a flow set, by recursive refinement.
pub fn dyadic_tower(flows: &FlowSet, k: usize) -> Result<Tower, FamilyError> {
    dyadic_tower_with(flows, k, RefineMode::Recursion)
}

pub fn dyadic_tower_with(flows: &FlowSet, k: usize, mode: RefineMode) -> Result<Tower, FamilyError> {
    let levels = (0..=k as u32).map(|n| discretize(flows, n)).collect();
    Tower::from_levels(levels, mode)
}

/// The thread whose top element is the full level-`K` discretization of `f`.
pub fn thread_of_flow(tower: &Tower, f: &Signal) -> Result<LimitThread, FlowError> {
    let k = tower.top();
    let samples = f.samples(k as u32);
    let u = tower.level(k).lookup(&samples).ok_or(FlowError::FlowNotInSet)?;
    Ok(thread_through(tower.family(), k, u)?)
}

/// A function on grid points recovered from a thread.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reconstruction {
    pub depth: u32,
    /// `None` when the thread is the empty sequence at every level.
    pub domain_end: Option<Dyadic>,
    /// `(t, h(t))` at `t = n / 2^depth`, increasing in `t`.
    pub samples: Vec<(Dyadic, Dyadic)>,
}

impl Reconstruction {
    /// `|h(t) - h(t')| ≤ c·|t - t'|` over every pair of samples.
    pub fn is_lipschitz(&self, c: &Dyadic) -> bool {
        self.samples.iter().enumerate().all(|(i, (t, x))| {
            self.samples[i + 1..]
                .iter()
                .all(|(t2, x2)| (x2 - x).abs() <= c * &(t2 - t).abs())
        })
    }

    pub fn increments(&self) -> Vec<Dyadic> {
        self.samples.windows(2).map(|w| &w[1].1 - &w[0].1).collect()
    }

    pub fn values(&self) -> Vec<Dyadic> {
        self.samples.iter().map(|(_, v)| v.clone()).collect()
    }
}

/// Collects `n / 2^i ↦ value` from every level of the thread and reads the
/// function off the depth-`depth` grid.
pub fn reconstruct(tower: &Tower, thread: &LimitThread, depth: u32) -> Result<Reconstruction, FlowError> {
    let mut points: BTreeMap<Dyadic, Dyadic> = BTreeMap::new();
    for (i, level) in tower.levels().iter().enumerate() {
        let Some(u) = thread.at(i) else { continue };
        for (n, v) in level.seq(u).iter().enumerate() {
            let t = Dyadic::grid(n as u64, i as u32);
            if let Some(prev) = points.insert(t.clone(), v.clone()) {
                if prev != *v {
                    return Err(FlowError::InconsistentThread(format!("values {prev} and {v} at t = {t}")));
                }
            }
        }
    }
    let Some(end) = points.keys().next_back().cloned() else {
        return Ok(Reconstruction { depth, domain_end: None, samples: Vec::new() });
    };
    let mut samples = Vec::new();
    let mut n = 0u64;
    loop {
        let t = Dyadic::grid(n, depth);
        if t > end {
            break;
        }
        let v = points
            .get(&t)
            .ok_or_else(|| FlowError::InconsistentThread(format!("no sample at t = {t}")))?;
        samples.push((t, v.clone()));
        n += 1;
    }
    Ok(Reconstruction { depth, domain_end: Some(end), samples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::{check_thread, enumerate_threads};

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn standard_tower_is_a_family() {
        let t = dyadic_tower(&FlowSet::standard(), 3).unwrap();
        assert_eq!(t.family().len(), 4);
        assert_eq!(t.family().kind(), FamilyKind::Generator);
        assert!(t.level(3).order().id("(0,1/8,1/4,3/8,1/2,5/8,3/4,7/8,1)").is_some());
    }

    #[test]
    fn subsample_tower_is_a_family_too() {
        let t = dyadic_tower_with(&FlowSet::standard(), 3, RefineMode::Subsample).unwrap();
        assert_eq!(t.mode(), RefineMode::Subsample);
    }

    #[test]
    fn flows_round_trip_through_threads() {
        let flows = FlowSet::standard();
        let t = dyadic_tower(&flows, 4).unwrap();
        for f in &flows.generators {
            let thread = thread_of_flow(&t, f).unwrap();
            check_thread(t.family(), thread.assignment(), thread.name()).unwrap();
            for depth in 0..=4 {
                let r = reconstruct(&t, &thread, depth).unwrap();
                assert_eq!(r.domain_end, Some(d("1")));
                let expected: Vec<Dyadic> = f.samples(depth);
                assert_eq!(r.values(), expected);
            }
        }
    }

    #[test]
    fn foreign_flow_has_no_thread() {
        let t = dyadic_tower(&FlowSet::standard(), 2).unwrap();
        let cube = Signal::polynomial(vec![d("0"), d("0"), d("0"), d("1")], d("1"));
        assert_eq!(thread_of_flow(&t, &cube).unwrap_err(), FlowError::FlowNotInSet);
    }

    #[test]
    fn threads_reconstruct_consistently() {
        let t = dyadic_tower(&FlowSet::standard(), 3).unwrap();
        let limit = enumerate_threads(t.family(), 3).unwrap();
        for th in limit.threads() {
            let r = reconstruct(&t, th, 0).unwrap();
            if let Some(end) = &r.domain_end {
                assert!(*end <= d("1"));
            }
        }
    }
}
