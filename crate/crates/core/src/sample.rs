//! Seeded random generators for property checks and demos.

use std::sync::Arc;

use rand::Rng;

use crate::lts::Lts;
use crate::maps::PartialFn;
use crate::order::{ExecId, OrderBuilder, PrefixOrder};

/// A random forest on exactly `n` elements named `e0, e1, …`; each element
/// picks a root slot or an earlier parent uniformly.
pub fn random_order<R: Rng + ?Sized>(rng: &mut R, n: usize) -> PrefixOrder {
    let mut b = OrderBuilder::new();
    for i in 0..n {
        let slot = rng.gen_range(0..=i);
        let parent = (slot < i).then_some(ExecId(slot));
        b.add(format!("e{i}"), parent).expect("fresh name");
    }
    b.build()
}

/// Like [`random_order`], with labels drawn from `alphabet`.
pub fn random_labeled_order<R: Rng + ?Sized>(rng: &mut R, n: usize, alphabet: &[&str]) -> PrefixOrder {
    let mut b = OrderBuilder::new();
    for i in 0..n {
        let slot = rng.gen_range(0..=i);
        let parent = (slot < i).then_some(ExecId(slot));
        let label = alphabet[rng.gen_range(0..alphabet.len())].to_string();
        b.add_labeled(format!("e{i}"), parent, Some(label)).expect("fresh name");
    }
    b.build()
}

/// Any partial function, each element undefined with probability `1/(|target|+1)`.
pub fn random_partial_fn<R: Rng + ?Sized>(rng: &mut R, source: &Arc<PrefixOrder>, target: &Arc<PrefixOrder>) -> PartialFn {
    let graph = source
        .ids()
        .map(|_| {
            let d = rng.gen_range(0..=target.len());
            (d > 0).then(|| ExecId(d - 1))
        })
        .collect();
    PartialFn { source: source.clone(), target: target.clone(), graph }
}

/// A partial function built to be history preserving: roots go to roots,
/// and a child goes either where its parent went or to a child of that.
/// Each element is dropped (with its future) with probability `drop`.
pub fn random_php_fn<R: Rng + ?Sized>(
    rng: &mut R,
    source: &Arc<PrefixOrder>,
    target: &Arc<PrefixOrder>,
    drop: f64,
) -> PartialFn {
    let mut graph: Vec<Option<ExecId>> = vec![None; source.len()];
    let roots: Vec<ExecId> = target.roots().collect();
    for u in source.ids() {
        if rng.gen_bool(drop) {
            continue;
        }
        let choices: Vec<ExecId> = match source.parent(u) {
            None => roots.clone(),
            Some(p) => match graph[p.index()] {
                None => continue,
                Some(fp) => std::iter::once(fp).chain(target.children(fp).iter().copied()).collect(),
            },
        };
        if !choices.is_empty() {
            graph[u.index()] = Some(choices[rng.gen_range(0..choices.len())]);
        }
    }
    PartialFn { source: source.clone(), target: target.clone(), graph }
}

/// A random system on `states` states over `alphabet`, each possible
/// transition present with probability `density`.
pub fn random_lts<R: Rng + ?Sized>(rng: &mut R, states: usize, alphabet: &[&str], density: f64) -> Lts {
    let names: Vec<String> = (0..states.max(1)).map(|i| format!("s{i}")).collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut transitions = Vec::new();
    for &x in &names {
        for &a in alphabet {
            for &y in &names {
                if rng.gen_bool(density) {
                    transitions.push((x, a, y));
                }
            }
        }
    }
    Lts::new(&names, alphabet, names[0], &transitions).expect("generated system is well formed")
}
