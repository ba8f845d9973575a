use serde::{Deserialize, Serialize};

use super::{Dyadic, FlowError, FlowSet, Piece, Signal};

/// A function to be tested against a flow set, known either exactly or by
/// its samples on successive grids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Candidate {
    Signal { signal: Signal },
    /// `levels[d][n]` is the value at `n / 2^d`.
    Ladder { end: Dyadic, levels: Vec<Vec<Dyadic>> },
}

impl Candidate {
    pub fn end(&self) -> Dyadic {
        match self {
            Candidate::Signal { signal } => signal.end().clone(),
            Candidate::Ladder { end, .. } => end.clone(),
        }
    }

    /// Value at grid point `n / 2^depth`, if known.
    pub fn value(&self, n: u64, depth: u32) -> Option<Dyadic> {
        match self {
            Candidate::Signal { signal } => signal.eval(&Dyadic::grid(n, depth)),
            Candidate::Ladder { levels, .. } => levels.get(depth as usize)?.get(n as usize).cloned(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum RefuteOutcome {
    /// On `points` the candidate differs from every member of equal domain.
    Refuted { depth: u32, points: Vec<Dyadic> },
    /// Up to `depth`, some member agrees with the candidate on every grid point.
    NoneFound { depth: u32, unrefuted: usize },
}

/// Searches grids of depth `0..=max_depth` for a finite set of times on
/// which the candidate disagrees with every member flow of the same domain.
pub fn refute_search(flows: &FlowSet, candidate: &Candidate, max_depth: u32) -> Result<RefuteOutcome, FlowError> {
    let end = candidate.end();
    let members = flows.members_on(&end);
    let mut unrefuted = members.len();
    for depth in 0..=max_depth {
        let last = end.floor_shl(depth);
        let mut points = Vec::new();
        unrefuted = 0;
        for member in &members {
            let mut witness = None;
            let mut n = 0u64;
            while num_bigint::BigInt::from(n) <= last {
                let mine = candidate
                    .value(n, depth)
                    .ok_or_else(|| FlowError::BadParams(format!("candidate has no value at {n}/2^{depth}")))?;
                let t = Dyadic::grid(n, depth);
                if member.eval(&t) != Some(mine) {
                    witness = Some(t);
                    break;
                }
                n += 1;
            }
            match witness {
                Some(t) => points.push(t),
                None => unrefuted += 1,
            }
        }
        if unrefuted == 0 {
            points.sort();
            points.dedup();
            return Ok(RefuteOutcome::Refuted { depth, points });
        }
    }
    Ok(RefuteOutcome::NoneFound { depth: max_depth, unrefuted })
}

/// `tooth_j` for `j = 0..=max_j` on `[0, end]`: zero on the `2^{-j}` grid,
/// slope `+1` then `-1` on each cell.
pub fn saw_teeth(max_j: u32, end: Dyadic) -> FlowSet {
    let one = Dyadic::one();
    let teeth = (0..=max_j)
        .map(|j| {
            let mut pieces = Vec::new();
            let mut n = 0u64;
            while Dyadic::grid(n, j) < end || n == 0 {
                pieces.push(Piece { end: Dyadic::grid(2 * n + 1, j + 1), slope: one.clone() });
                pieces.push(Piece { end: Dyadic::grid(n + 1, j), slope: -&one });
                n += 1;
            }
            Signal::piecewise(Dyadic::zero(), pieces, end.clone()).expect("teeth cover the domain")
        })
        .collect();
    FlowSet::new(teeth)
}
