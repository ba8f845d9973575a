use std::collections::{BTreeMap, BTreeSet};

use super::{Lts, LtsError};

/// Outcome of partition refinement on the disjoint union of two systems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BisimResult {
    /// The largest bisimulation, as `(state of p, state of q)` name pairs.
    Bisimilar { relation: Vec<(String, String)> },
    /// The initial states fall into different blocks after `level` rounds.
    Distinguished { level: usize },
}

impl BisimResult {
    pub fn is_bisimilar(&self) -> bool {
        matches!(self, BisimResult::Bisimilar { .. })
    }
}

/// Partition refinement: blocks are split by the set of `(label, block)`
/// pairs reachable in one step until the partition is stable.
pub fn bisimilar(p: &Lts, q: &Lts) -> Result<BisimResult, LtsError> {
    if p.alphabet() != q.alphabet() {
        return Err(LtsError::AlphabetMismatch);
    }
    let np = p.states().len();
    let n = np + q.states().len();
    let mut succ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for &(x, a, y) in p.transitions() {
        succ[x].push((a, y));
    }
    for &(x, a, y) in q.transitions() {
        succ[np + x].push((a, np + y));
    }
    let (ip, iq) = (p.initial(), np + q.initial());

    let mut block = vec![0usize; n];
    let mut blocks = 1;
    let mut level = 0;
    loop {
        let mut index: BTreeMap<(usize, BTreeSet<(usize, usize)>), usize> = BTreeMap::new();
        let next: Vec<usize> = (0..n)
            .map(|x| {
                let sig: BTreeSet<(usize, usize)> = succ[x].iter().map(|&(a, y)| (a, block[y])).collect();
                let len = index.len();
                *index.entry((block[x], sig)).or_insert(len)
            })
            .collect();
        let stable = index.len() == blocks;
        block = next;
        blocks = index.len();
        if stable {
            break;
        }
        level += 1;
        if block[ip] != block[iq] {
            return Ok(BisimResult::Distinguished { level });
        }
    }
    if block[ip] != block[iq] {
        return Ok(BisimResult::Distinguished { level });
    }
    let mut relation = Vec::new();
    for x in 0..np {
        for y in np..n {
            if block[x] == block[y] {
                relation.push((p.state_name(x).to_string(), q.state_name(y - np).to_string()));
            }
        }
    }
    Ok(BisimResult::Bisimilar { relation })
}
