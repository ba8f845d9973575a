//! Saw-tooth flow sets and the closure gained by passing to the limit.
//!
//! At resolution `2^{-m}` a flow switching between slopes `+1` and `-1`
//! gains, over one `2^{-k}` step, any increment `(2j - 2^{m-k})·2^{-m}`.
//! Level `k` of the tower holds every sample sequence built from such
//! increments; the all-zero sequence is among them once `m > k`, so the
//! zero function appears as a limit execution even though no member flow
//! has slope zero anywhere.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::limits::thread_through;
use crate::order::ExecId;

use super::discretize::TrieBuilder;
use super::{reconstruct, Discretization, Dyadic, FlowError, RefineMode, Tower};

/// Increments realizable over one `2^{-k}` step with switches on the
/// `2^{-m}` grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IncrementLattice {
    pub k: u32,
    pub m: u32,
}

impl IncrementLattice {
    pub fn new(k: u32, m: u32) -> Result<IncrementLattice, FlowError> {
        if m < k {
            return Err(FlowError::BadResolution { k, m });
        }
        Ok(IncrementLattice { k, m })
    }

    pub fn values(&self) -> Vec<Dyadic> {
        let cells = 1i64 << (self.m - self.k);
        (0..=cells).map(|j| Dyadic::new(2 * j - cells, self.m)).collect()
    }
}

/// Every sequence starting at `0` with `steps` increments from the lattice,
/// closed under prefixes.
pub fn increment_discretization(j: u32, m: u32, steps: usize) -> Result<Discretization, FlowError> {
    let lattice = IncrementLattice::new(j, m)?.values();
    let mut trie = TrieBuilder::new(j);
    let mut seq = vec![Dyadic::zero()];
    fn grow(trie: &mut TrieBuilder, seq: &mut Vec<Dyadic>, lattice: &[Dyadic], left: usize) {
        trie.insert(seq);
        if left == 0 {
            return;
        }
        for a in lattice {
            let next = seq.last().expect("starts at zero") + a;
            seq.push(next);
            grow(trie, seq, lattice, left - 1);
            seq.pop();
        }
    }
    grow(&mut trie, &mut seq, &lattice, steps);
    Ok(trie.finish())
}

/// Levels `0..=k` over the horizon `T = len · 2^{-k}`.
pub fn inclusion_tower(k: u32, m: u32, len: usize) -> Result<Tower, FlowError> {
    if m < k + 1 {
        return Err(FlowError::BadResolution { k, m });
    }
    if len % (1usize << k) != 0 {
        return Err(FlowError::BadParams(format!("len {len} is not a multiple of 2^{k}")));
    }
    let levels = (0..=k)
        .map(|j| increment_discretization(j, m, len >> (k - j)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Tower::from_levels(levels, RefineMode::Recursion)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InclusionReport {
    pub k: u32,
    pub m: u32,
    pub len: usize,
    /// Elements at the top level.
    pub top_size: usize,
    pub zero_member: bool,
    pub threads_checked: usize,
    /// Top elements of sampled threads whose reconstruction is not 1-Lipschitz.
    pub lipschitz_failures: Vec<String>,
    pub zero_increments_zero: bool,
}

impl InclusionReport {
    pub fn passed(&self) -> bool {
        self.zero_member && self.lipschitz_failures.is_empty() && self.zero_increments_zero && self.threads_checked > 0
    }
}

/// Builds the saw-tooth tower and checks sampled threads: each must
/// reconstruct to a 1-Lipschitz function, and the zero thread must exist
/// with every increment zero.
///
/// Threads are built one at a time from maximal top elements; at most
/// `sample_limit` of them are drawn (seeded) besides the zero thread.
pub fn inclusion_demo(k: u32, m: u32, len: usize, sample_limit: usize, seed: u64) -> Result<InclusionReport, FlowError> {
    let tower = inclusion_tower(k, m, len)?;
    let top = tower.level(k as usize);
    let zero_seq = vec![Dyadic::zero(); len + 1];
    let zero = top.lookup(&zero_seq);

    let mut maximal: Vec<ExecId> = top.order().maximal().collect();
    if maximal.len() > sample_limit {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        maximal.shuffle(&mut rng);
        maximal.truncate(sample_limit);
    }
    if let Some(z) = zero {
        if !maximal.contains(&z) {
            maximal.push(z);
        }
    }

    let one = Dyadic::one();
    let mut lipschitz_failures = Vec::new();
    for &u in &maximal {
        let thread = thread_through(tower.family(), k as usize, u)?;
        let r = reconstruct(&tower, &thread, k)?;
        if !r.is_lipschitz(&one) {
            lipschitz_failures.push(thread.name().to_string());
        }
    }

    let zero_increments_zero = match zero {
        Some(z) => {
            let thread = thread_through(tower.family(), k as usize, z)?;
            let r = reconstruct(&tower, &thread, k)?;
            r.samples.len() == len + 1 && r.increments().iter().all(Dyadic::is_zero)
        }
        None => false,
    };

    Ok(InclusionReport {
        k,
        m,
        len,
        top_size: top.len(),
        zero_member: zero.is_some(),
        threads_checked: maximal.len(),
        lipschitz_failures,
        zero_increments_zero,
    })
}
