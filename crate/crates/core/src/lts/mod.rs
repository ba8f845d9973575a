//! Labeled transition systems and their run semantics.

mod bisim;
mod unfold;
pub mod witness;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use bisim::{bisimilar, BisimResult};
pub use unfold::{language_order, string_order, unfold, word_name, RunOrder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LtsError {
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("alphabets differ")]
    AlphabetMismatch,
}

/// `⟨X, A, i, →⟩` with states and labels stored by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lts {
    states: Vec<String>,
    alphabet: Vec<String>,
    initial: usize,
    /// Sorted, deduplicated `(from, label, to)` triples.
    transitions: Vec<(usize, usize, usize)>,
}

/// Structured-text schema for an LTS.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LtsDocument {
    pub states: Vec<String>,
    pub alphabet: Vec<String>,
    pub initial: String,
    pub transitions: Vec<(String, String, String)>,
}

impl Lts {
    pub fn new<S: AsRef<str>>(
        states: &[S],
        alphabet: &[S],
        initial: &str,
        transitions: &[(S, S, S)],
    ) -> Result<Lts, LtsError> {
        let states: Vec<String> = states.iter().map(|s| s.as_ref().to_string()).collect();
        let mut seen = BTreeSet::new();
        for s in &states {
            if !seen.insert(s) {
                return Err(LtsError::DuplicateState(s.clone()));
            }
        }
        let mut alphabet: Vec<String> = alphabet.iter().map(|s| s.as_ref().to_string()).collect();
        alphabet.sort();
        alphabet.dedup();
        let state = |s: &str| {
            states
                .iter()
                .position(|x| x == s)
                .ok_or_else(|| LtsError::UnknownState(s.to_string()))
        };
        let label = |a: &str| {
            alphabet
                .binary_search_by(|x| x.as_str().cmp(a))
                .map_err(|_| LtsError::UnknownLabel(a.to_string()))
        };
        let initial = state(initial)?;
        let mut ts = Vec::with_capacity(transitions.len());
        for (x, a, y) in transitions {
            ts.push((state(x.as_ref())?, label(a.as_ref())?, state(y.as_ref())?));
        }
        ts.sort_unstable();
        ts.dedup();
        Ok(Lts { states, alphabet, initial, transitions: ts })
    }

    pub fn from_document(doc: &LtsDocument) -> Result<Lts, LtsError> {
        let ts: Vec<(&str, &str, &str)> = doc
            .transitions
            .iter()
            .map(|(x, a, y)| (x.as_str(), a.as_str(), y.as_str()))
            .collect();
        let states: Vec<&str> = doc.states.iter().map(String::as_str).collect();
        let alphabet: Vec<&str> = doc.alphabet.iter().map(String::as_str).collect();
        Lts::new(&states, &alphabet, &doc.initial, &ts)
    }

    pub fn to_document(&self) -> LtsDocument {
        LtsDocument {
            states: self.states.clone(),
            alphabet: self.alphabet.clone(),
            initial: self.states[self.initial].clone(),
            transitions: self
                .transitions
                .iter()
                .map(|&(x, a, y)| (self.states[x].clone(), self.alphabet[a].clone(), self.states[y].clone()))
                .collect(),
        }
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn state_name(&self, x: usize) -> &str {
        &self.states[x]
    }

    pub fn state(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn label(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|s| s == name)
    }

    pub fn transitions(&self) -> &[(usize, usize, usize)] {
        &self.transitions
    }

    /// Outgoing `(label, target)` pairs of `x`, sorted.
    pub fn outgoing(&self, x: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let start = self.transitions.partition_point(|t| t.0 < x);
        self.transitions[start..]
            .iter()
            .take_while(move |t| t.0 == x)
            .map(|&(_, a, y)| (a, y))
    }

    /// Targets of `x` under label `a`, sorted by state index.
    pub fn successors(&self, x: usize, a: usize) -> Vec<usize> {
        self.outgoing(x).filter(|&(b, _)| b == a).map(|(_, y)| y).collect()
    }

    pub fn is_deterministic(&self) -> bool {
        self.transitions.windows(2).all(|w| (w[0].0, w[0].1) != (w[1].0, w[1].1))
    }

    /// DOT rendering with labeled edges.
    pub fn to_dot(&self, graph_name: &str) -> String {
        let mut out = format!("digraph \"{graph_name}\" {{\n");
        for (x, s) in self.states.iter().enumerate() {
            let shape = if x == self.initial { "doublecircle" } else { "circle" };
            out.push_str(&format!("  \"{s}\" [shape={shape}];\n"));
        }
        for &(x, a, y) in &self.transitions {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                self.states[x], self.states[y], self.alphabet[a]
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// `1 -a-> 2, 1 -a-> 3, 2 -b-> 4, 3 -c-> 5`: the early choice.
pub fn early_choice_lts() -> Lts {
    Lts::new(
        &["1", "2", "3", "4", "5"],
        &["a", "b", "c"],
        "1",
        &[("1", "a", "2"), ("1", "a", "3"), ("2", "b", "4"), ("3", "c", "5")],
    )
    .expect("well formed")
}

/// The early choice plus a delayed choice through `*`.
pub fn delayed_choice_lts() -> Lts {
    Lts::new(
        &["1", "2", "3", "4", "5", "*"],
        &["a", "b", "c"],
        "1",
        &[
            ("1", "a", "2"),
            ("1", "a", "3"),
            ("2", "b", "4"),
            ("3", "c", "5"),
            ("1", "a", "*"),
            ("*", "b", "4"),
            ("*", "c", "5"),
        ],
    )
    .expect("well formed")
}
