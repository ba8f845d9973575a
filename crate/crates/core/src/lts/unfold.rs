use std::collections::BTreeMap;
use std::sync::Arc;

use crate::maps::{validate_php_direct, PartialFn, PhpMap};
use crate::order::{ExecId, OrderBuilder, PrefixOrder};

use super::Lts;

/// A run `ρ : σ⁻ → X`, stored as its visited states and observed word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub states: Vec<usize>,
    pub word: Vec<usize>,
}

/// Runs of length at most `depth`, prefix ordered, with `λ` into the
/// observed words.
#[derive(Debug, Clone)]
pub struct RunOrder {
    order: Arc<PrefixOrder>,
    runs: Vec<Run>,
    words: Arc<PrefixOrder>,
    lambda: PhpMap,
    alphabet: Vec<String>,
    depth: usize,
}

/// Display name of a word: symbols concatenated when all labels are single
/// characters, dot-separated otherwise; `ε` when empty.
pub fn word_name(alphabet: &[String], word: &[usize]) -> String {
    if word.is_empty() {
        return "ε".to_string();
    }
    let sep = if alphabet.iter().all(|a| a.chars().count() == 1) { "" } else { "." };
    word.iter().map(|&a| alphabet[a].as_str()).collect::<Vec<_>>().join(sep)
}

fn words_order(alphabet: &[String], words: impl IntoIterator<Item = Vec<usize>>) -> PrefixOrder {
    let mut b = OrderBuilder::new();
    let mut sorted: Vec<Vec<usize>> = words.into_iter().collect();
    sorted.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    sorted.dedup();
    let mut ids: BTreeMap<Vec<usize>, ExecId> = BTreeMap::new();
    for w in sorted {
        let parent = if w.is_empty() { None } else { Some(ids[&w[..w.len() - 1]]) };
        let name = word_name(alphabet, &w);
        let id = b.add_labeled(name.clone(), parent, Some(name)).expect("distinct words");
        ids.insert(w, id);
    }
    b.build()
}

/// `A^{≤d}` ordered by prefix; each word is labeled by itself.
pub fn string_order(alphabet: &[String], depth: usize) -> PrefixOrder {
    let mut all = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for w in &frontier {
            for a in 0..alphabet.len() {
                let mut v: Vec<usize> = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    words_order(alphabet, all)
}

/// Words of length at most `depth` observed along runs of `lts`.
pub fn language_order(lts: &Lts, depth: usize) -> PrefixOrder {
    unfold(lts, depth).words.as_ref().clone()
}

pub fn unfold(lts: &Lts, depth: usize) -> RunOrder {
    let alphabet = lts.alphabet().to_vec();
    let mut b = OrderBuilder::new();
    let mut runs = Vec::new();
    let root = Run { states: vec![lts.initial()], word: Vec::new() };
    let root_name = lts.state_name(lts.initial()).to_string();
    let root_id = b
        .add_labeled(root_name.clone(), None, Some(word_name(&alphabet, &[])))
        .expect("fresh");
    runs.push(root);
    let mut frontier = vec![(root_id, root_name, 0usize)];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (id, name, k) in frontier {
            let last = *runs[k].states.last().expect("runs are non-empty");
            for (a, y) in lts.outgoing(last) {
                let mut run = runs[k].clone();
                run.states.push(y);
                run.word.push(a);
                let child_name = format!("{name}-{}->{}", alphabet[a], lts.state_name(y));
                let label = word_name(&alphabet, &run.word);
                let child = b.add_labeled(child_name.clone(), Some(id), Some(label)).expect("run names are unique");
                runs.push(run);
                next.push((child, child_name, runs.len() - 1));
            }
        }
        frontier = next;
    }
    let order = Arc::new(b.build());
    let words = Arc::new(words_order(&alphabet, runs.iter().map(|r| r.word.clone())));
    let graph = runs
        .iter()
        .map(|r| words.id(&word_name(&alphabet, &r.word)))
        .collect();
    let lambda = validate_php_direct(PartialFn { source: order.clone(), target: words.clone(), graph })
        .expect("λ of an unfolding is history preserving");
    RunOrder { order, runs, words, lambda, alphabet, depth }
}

impl RunOrder {
    pub fn order(&self) -> &Arc<PrefixOrder> {
        &self.order
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn run(&self, id: ExecId) -> &Run {
        &self.runs[id.index()]
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// The observed-word order `λ` maps into.
    pub fn words(&self) -> &Arc<PrefixOrder> {
        &self.words
    }

    pub fn lambda(&self) -> &PhpMap {
        &self.lambda
    }

    /// `λ` into a larger word order, matching words by name.
    pub fn lambda_into(&self, strings: &Arc<PrefixOrder>) -> PartialFn {
        let graph = self
            .runs
            .iter()
            .map(|r| strings.id(&word_name(&self.alphabet, &r.word)))
            .collect();
        PartialFn { source: self.order.clone(), target: strings.clone(), graph }
    }

    /// The unfolding as a tree-shaped LTS: runs become states and runs of
    /// maximal length become sinks.
    pub fn to_lts(&self) -> Lts {
        let names: Vec<&str> = self.order.ids().map(|u| self.order.name(u)).collect();
        let mut transitions = Vec::new();
        for u in self.order.ids() {
            if let Some(p) = self.order.parent(u) {
                let a = *self.run(u).word.last().expect("non-root runs observe a label");
                transitions.push((self.order.name(p), self.alphabet[a].as_str(), self.order.name(u)));
            }
        }
        let alphabet: Vec<&str> = self.alphabet.iter().map(String::as_str).collect();
        let root = self.order.name(ExecId(0));
        Lts::new(&names, &alphabet, root, &transitions).expect("unfolding is well formed")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lts::{early_choice_lts, delayed_choice_lts};

    #[test]
    fn early_choice_unfolds_to_five_runs() {
        let r = unfold(&early_choice_lts(), 2);
        let names: Vec<&str> = r.order().ids().map(|u| r.order().name(u)).collect();
        assert_eq!(names, ["1", "1-a->2", "1-a->3", "1-a->2-b->4", "1-a->3-c->5"]);
        let labels: Vec<&str> = r.order().ids().map(|u| r.order().label(u).unwrap()).collect();
        assert_eq!(labels, ["ε", "a", "a", "ab", "ac"]);
        assert!(r.lambda().is_total());
    }

    #[test]
    fn delayed_choice_unfolds_to_eight_runs() {
        let r = unfold(&delayed_choice_lts(), 2);
        assert_eq!(r.order().len(), 8);
        assert!(r.order().id("1-a->*").is_some());
        assert_eq!(r.order().future(ExecId(0)).unwrap().len(), 8);
    }

    #[test]
    fn self_loop_unfolds_to_chain() {
        let l = Lts::new(&["s"], &["a"], "s", &[("s", "a", "s")]).unwrap();
        let r = unfold(&l, 3);
        assert_eq!(r.order().len(), 4);
        assert_eq!(r.order().maximal().count(), 1);
        let top = r.order().maximal().next().unwrap();
        assert_eq!(r.order().label(top), Some("aaa"));
    }

    #[test]
    fn lambda_into_full_string_order() {
        let l = early_choice_lts();
        let r = unfold(&l, 2);
        let strings = Arc::new(string_order(l.alphabet(), 2));
        assert_eq!(strings.len(), 13);
        let lam = validate_php_direct(r.lambda_into(&strings)).unwrap();
        assert!(lam.is_total() && !lam.is_injective());
    }

    #[test]
    fn multi_char_labels_are_dotted() {
        let alphabet = vec!["go".to_string(), "stop".to_string()];
        assert_eq!(word_name(&alphabet, &[0, 1]), "go.stop");
        assert_eq!(word_name(&alphabet, &[]), "ε");
    }

    #[test]
    fn to_lts_of_unfolding() {
        let r = unfold(&early_choice_lts(), 2);
        let t = r.to_lts();
        assert_eq!(t.states().len(), 5);
        assert_eq!(t.transitions().len(), 4);
        assert!(!t.is_deterministic());
    }
}
