//! Worked examples with a pass/fail verdict each.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::family::{constant, fan_grow, fan_grow_object, fan_strand, fan_strand_object};
use crate::flows::inclusion_demo;
use crate::limits::{check_naturality, enumerate_threads, exact_chain_limit, LimitError};
use crate::lts::witness::{check_limit_bisim_witness, witness_one, witness_two, Bullet2Reading, WitnessBounds, WitnessOutcome};
use crate::lts::{early_choice_lts, delayed_choice_lts, unfold};
use crate::maps::{all_partial_functions, validate_php_direct, PhpMap};
use crate::order::PrefixOrder;
use crate::sample::random_order;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DemoReport {
    pub name: String,
    pub passed: bool,
    pub lines: Vec<String>,
}

impl DemoReport {
    fn new(name: &str) -> Self {
        DemoReport { name: name.to_string(), passed: true, lines: Vec::new() }
    }

    fn check(&mut self, ok: bool, line: String) {
        self.passed &= ok;
        self.lines.push(format!("{} {line}", if ok { "ok  " } else { "FAIL" }));
    }

    fn note(&mut self, line: String) {
        self.lines.push(format!("     {line}"));
    }
}

pub const DEMOS: [&str; 6] = [
    "fan-two-limits",
    "constant-identity",
    "delayed-choice-impossible",
    "ying-witness-1",
    "ying-witness-2",
    "inclusion-closure",
];

/// Bounds used by both witness demos.
pub const WITNESS_BOUNDS: WitnessBounds = WitnessBounds { max_offset: 4, max_stride: 4, horizon: 32, depth: 6 };

pub fn run_demo(name: &str, seed: u64) -> Option<DemoReport> {
    Some(match name {
        "fan-two-limits" => fan_two_limits(8),
        "constant-identity" => constant_identity(seed, 20, 5),
        "delayed-choice-impossible" => delayed_choice_impossible(),
        "ying-witness-1" => witness_demo(1, WITNESS_BOUNDS),
        "ying-witness-2" => witness_demo(2, WITNESS_BOUNDS),
        "inclusion-closure" => inclusion_closure(seed),
        _ => return None,
    })
}

fn strand_len(order: &PrefixOrder, k: usize) -> usize {
    let prefix = format!("({k},");
    order.ids().filter(|&u| order.name(u).starts_with(&prefix)).count()
}

/// One sequence, two families of maps, two limits: strands that stay put
/// versus strands that grow every day.
pub fn fan_two_limits(max_n: usize) -> DemoReport {
    let mut r = DemoReport::new("fan-two-limits");
    for n in 2..=max_n {
        let limits = (|| -> Result<_, LimitError> {
            let ys = exact_chain_limit(&fan_strand(n))?.order;
            let xs = exact_chain_limit(&fan_grow(n))?.order;
            let yt = enumerate_threads(&fan_strand(n), n)?;
            let xt = enumerate_threads(&fan_grow(n), n)?;
            check_naturality(&yt)?;
            check_naturality(&xt)?;
            Ok((ys, xs, yt, xt))
        })();
        match limits {
            Ok((ys, xs, yt, xt)) => {
                let ok = ys.is_isomorphic(&fan_strand_object(n))
                    && xs.is_isomorphic(&fan_grow_object(n))
                    && ys.is_isomorphic(yt.order())
                    && xs.is_isomorphic(xt.order());
                r.check(
                    ok,
                    format!(
                        "N={n}: strand limit {} elements, grow limit {} elements; strand 0 has length {} vs {}",
                        ys.len(),
                        xs.len(),
                        strand_len(&ys, 0),
                        strand_len(&xs, 0)
                    ),
                );
            }
            Err(e) => r.check(false, format!("N={n}: {e}")),
        }
    }
    r.note("strand 0 stays at length 1 in one limit and grows with N in the other".into());
    r
}

/// The thread order of the constant identity family is the object itself.
pub fn constant_identity(seed: u64, count: usize, n: usize) -> DemoReport {
    let mut r = DemoReport::new("constant-identity");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut matched = 0;
    for _ in 0..count {
        let size = rng.gen_range(0..=6);
        let order = random_order(&mut rng, size);
        match enumerate_threads(&constant(order.clone(), n), n) {
            Ok(t) if t.order().is_isomorphic(&order) => matched += 1,
            Ok(_) => r.check(false, format!("thread order differs for {}", order.shape())),
            Err(e) => r.check(false, format!("{e}")),
        }
    }
    r.check(matched == count, format!("{matched}/{count} random orders recovered (seed {seed}, N={n})"));
    r
}

/// Counts PHP maps from the delayed-choice unfolding to the early-choice
/// unfolding that are defined on the delayed branch point and both its
/// futures.
pub fn delayed_choice_maps() -> (Vec<PhpMap>, Vec<PhpMap>) {
    let early = unfold(&early_choice_lts(), 2).order().clone();
    let delayed = unfold(&delayed_choice_lts(), 2).order().clone();
    let required: Vec<_> = ["1-a->*", "1-a->*-b->4", "1-a->*-c->5"]
        .iter()
        .map(|n| delayed.id(n).expect("delayed branch present"))
        .collect();
    let mut labeled = Vec::new();
    let mut unlabeled = Vec::new();
    for f in all_partial_functions(&delayed, &early, &required) {
        if let Ok(m) = validate_php_direct(f) {
            if m.preserves_labels() {
                labeled.push(m.clone());
            }
            unlabeled.push(m);
        }
    }
    (labeled, unlabeled)
}

pub fn delayed_choice_impossible() -> DemoReport {
    let mut r = DemoReport::new("delayed-choice-impossible");
    let (labeled, unlabeled) = delayed_choice_maps();
    r.check(labeled.is_empty(), format!("{} label-preserving maps defined on a†, ab†, ac†", labeled.len()));
    r.check(!unlabeled.is_empty(), format!("{} maps when labels are ignored", unlabeled.len()));
    if let Some(m) = unlabeled.iter().find(|m| {
        let img = |n: &str| m.get(m.source().id(n).expect("present")).map(|v| m.target().name(v).to_string());
        img("1-a->*-b->4") == img("1-a->*-c->5")
    }) {
        let pairs: Vec<String> = m
            .pairs()
            .map(|(u, v)| format!("{} ↦ {}", m.source().name(u), m.target().name(v)))
            .collect();
        r.note(format!("collapsing example: {}", pairs.join(", ")));
    }
    r
}

fn outcome_line(outcome: &WitnessOutcome) -> String {
    match outcome {
        WitnessOutcome::Pass { stats } => format!(
            "no violation: {} pairs, {} candidate moves, {} net moves, depth {}",
            stats.pairs, stats.candidate_moves, stats.net_moves, stats.max_depth
        ),
        WitnessOutcome::Violation(v) => {
            format!("condition {} fails at `{}` (depth {}): {}", v.bullet, v.state, v.depth, v.detail)
        }
    }
}

pub fn witness_demo(which: u8, bounds: WitnessBounds) -> DemoReport {
    let name = format!("ying-witness-{which}");
    let mut r = DemoReport::new(&name);
    let bounds_text = format!(
        "offsets ≤ {}, strides ≤ {}, N={}, D={}",
        bounds.max_offset, bounds.max_stride, bounds.horizon, bounds.depth
    );
    let spec = if which == 1 { witness_one() } else { witness_two(Bullet2Reading::CofinalRestriction) };
    match check_limit_bisim_witness(&spec, bounds) {
        Ok(o) => r.check(o.is_pass(), format!("{bounds_text}: {}", outcome_line(&o))),
        Err(e) => r.check(false, format!("{e}")),
    }
    if which == 2 {
        if let Ok(o) = check_limit_bisim_witness(&witness_two(Bullet2Reading::Literal), bounds) {
            r.note(format!("tail-only reading of the second condition: {}", outcome_line(&o)));
        }
    }
    r
}

pub fn inclusion_closure(seed: u64) -> DemoReport {
    let mut r = DemoReport::new("inclusion-closure");
    for k in 1..=3 {
        match inclusion_demo(k, k + 1, 8, 10_000, seed) {
            Ok(rep) => r.check(
                rep.passed(),
                format!(
                    "k={k} m={}: {} sequences at the top, zero member {}, {} threads 1-Lipschitz, zero increments all 0: {}",
                    rep.m,
                    rep.top_size,
                    rep.zero_member,
                    rep.threads_checked - rep.lipschitz_failures.len(),
                    rep.zero_increments_zero
                ),
            ),
            Err(e) => r.check(false, format!("k={k}: {e}")),
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delayed_choice_counts() {
        let (labeled, unlabeled) = delayed_choice_maps();
        assert!(labeled.is_empty());
        assert!(!unlabeled.is_empty());
    }

    #[test]
    fn small_demos_pass() {
        assert!(fan_two_limits(5).passed);
        assert!(constant_identity(1, 5, 3).passed);
    }

    #[test]
    fn unknown_demo() {
        assert!(run_demo("nope", 0).is_none());
    }
}
