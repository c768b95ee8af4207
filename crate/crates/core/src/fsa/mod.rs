//! Finite state automata over an [`Alphabet`].
//!
//! A single [`Fsa`] type covers both deterministic and nondeterministic
//! machines; the `deterministic` flag is maintained as transitions are added.
//! Deterministic machines may be partial (a missing transition rejects).
//! States are plain indices `0..num_states()`.

mod count;
mod io;
mod ops;

pub use count::WordCounts;
pub use io::FsaJson;
pub use ops::{comparator, project_first, PairFsa};

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter, Word};

pub type StateId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fsa {
    alphabet: Alphabet,
    initial: StateId,
    accepts: Vec<bool>,
    /// Out-edges per state, sorted by (label, target), without duplicates.
    edges: Vec<Vec<(Letter, StateId)>>,
    deterministic: bool,
}

impl Fsa {
    /// A machine with `num_states` states (at least one), no transitions and
    /// no accept states.
    pub fn new(alphabet: Alphabet, num_states: usize, initial: StateId) -> Self {
        let n = num_states.max(1);
        assert!(initial < n, "initial state out of range");
        Fsa {
            alphabet,
            initial,
            accepts: vec![false; n],
            edges: vec![Vec::new(); n],
            deterministic: true,
        }
    }

    /// Machine accepting every word over the alphabet.
    pub fn universal(alphabet: Alphabet) -> Self {
        let mut f = Fsa::new(alphabet, 1, 0);
        f.set_accept(0, true);
        for a in f.alphabet.clone().letters() {
            f.add_transition(0, a, 0);
        }
        f
    }

    /// Machine accepting nothing.
    pub fn empty(alphabet: Alphabet) -> Self {
        Fsa::new(alphabet, 1, 0)
    }

    pub fn add_state(&mut self, accept: bool) -> StateId {
        self.accepts.push(accept);
        self.edges.push(Vec::new());
        self.accepts.len() - 1
    }

    pub fn set_accept(&mut self, s: StateId, accept: bool) {
        self.accepts[s] = accept;
    }

    pub fn add_transition(&mut self, from: StateId, label: Letter, to: StateId) {
        assert!(
            from < self.num_states() && to < self.num_states(),
            "state out of range"
        );
        assert!(self.alphabet.contains(label), "label outside alphabet");
        let out = &mut self.edges[from];
        match out.binary_search(&(label, to)) {
            Ok(_) => {}
            Err(pos) => {
                let clash = (pos > 0 && out[pos - 1].0 == label)
                    || (pos < out.len() && out[pos].0 == label);
                if clash {
                    self.deterministic = false;
                }
                out.insert(pos, (label, to));
            }
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.accepts.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_accept(&self, s: StateId) -> bool {
        self.accepts[s]
    }

    pub fn accept_states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.num_states()).filter(|&s| self.accepts[s])
    }

    pub fn is_deterministic(&self) -> bool {
        self.deterministic
    }

    pub fn all_accepting(&self) -> bool {
        self.accepts.iter().all(|&b| b)
    }

    pub fn out_edges(&self, s: StateId) -> &[(Letter, StateId)] {
        &self.edges[s]
    }

    pub fn num_transitions(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    /// Every transition as `(source, label, target)`.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, Letter, StateId)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .flat_map(|(s, out)| out.iter().map(move |&(a, t)| (s, a, t)))
    }

    pub fn successors(&self, s: StateId, a: Letter) -> impl Iterator<Item = StateId> + '_ {
        let out = &self.edges[s];
        let start = out.partition_point(|&(b, _)| b < a);
        out[start..]
            .iter()
            .take_while(move |&&(b, _)| b == a)
            .map(|&(_, t)| t)
    }

    /// The unique successor in a deterministic machine (first successor
    /// otherwise).
    pub fn next(&self, s: StateId, a: Letter) -> Option<StateId> {
        self.successors(s, a).next()
    }

    /// State reached by reading `w` from the initial state (deterministic
    /// machines).
    pub fn run(&self, w: &Word) -> Option<StateId> {
        w.letters()
            .iter()
            .try_fold(self.initial, |s, &a| self.next(s, a))
    }

    /// States visited while reading `w`, starting with the initial state.
    pub fn trace(&self, w: &Word) -> Option<Vec<StateId>> {
        let mut out = Vec::with_capacity(w.len() + 1);
        let mut s = self.initial;
        out.push(s);
        for &a in w.letters() {
            s = self.next(s, a)?;
            out.push(s);
        }
        Some(out)
    }

    /// Whether some run from the initial state reads `w` and ends in an
    /// accept state.
    pub fn accepts(&self, w: &Word) -> Result<bool> {
        self.alphabet.check_word(w)?;
        if self.deterministic {
            return Ok(self.run(w).is_some_and(|s| self.accepts[s]));
        }
        let mut current = vec![self.initial];
        let mut mark = vec![false; self.num_states()];
        for &a in w.letters() {
            let mut next = Vec::new();
            for &s in &current {
                for t in self.successors(s, a) {
                    if !mark[t] {
                        mark[t] = true;
                        next.push(t);
                    }
                }
            }
            for &t in &next {
                mark[t] = false;
            }
            if next.is_empty() {
                return Ok(false);
            }
            current = next;
        }
        Ok(current.iter().any(|&s| self.accepts[s]))
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        seen[self.initial] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(s) = queue.pop_front() {
            for &(_, t) in &self.edges[s] {
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    fn reverse_edges(&self) -> Vec<Vec<StateId>> {
        let mut rev = vec![Vec::new(); self.num_states()];
        for (s, _, t) in self.transitions() {
            rev[t].push(s);
        }
        rev
    }

    /// For each state, the length of a shortest path to an accept state.
    pub fn distance_to_accept(&self) -> Vec<Option<usize>> {
        let rev = self.reverse_edges();
        let mut dist = vec![None; self.num_states()];
        let mut queue = VecDeque::new();
        for s in self.accept_states() {
            dist[s] = Some(0);
            queue.push_back(s);
        }
        while let Some(t) = queue.pop_front() {
            let d = dist[t].expect("queued states have distances");
            for &s in &rev[t] {
                if dist[s].is_none() {
                    dist[s] = Some(d + 1);
                    queue.push_back(s);
                }
            }
        }
        dist
    }

    /// Whether every state lies on a path from the initial state to an
    /// accept state. A machine with an empty language counts as trimmed when
    /// it is the single initial state without transitions.
    pub fn is_trimmed(&self) -> bool {
        let reach = self.reachable();
        let dist = self.distance_to_accept();
        if dist[self.initial].is_none() {
            return self.num_states() == 1 && self.edges[0].is_empty();
        }
        (0..self.num_states()).all(|s| reach[s] && dist[s].is_some())
    }

    /// Removes states that are unreachable or cannot reach an accept state.
    /// States are renumbered in breadth-first order from the initial state.
    pub fn trim(&self) -> Fsa {
        let reach = self.reachable();
        let dist = self.distance_to_accept();
        if dist[self.initial].is_none() {
            return Fsa::empty(self.alphabet.clone());
        }
        let live = |s: StateId| reach[s] && dist[s].is_some();
        let mut new_id = vec![usize::MAX; self.num_states()];
        let mut order = vec![self.initial];
        new_id[self.initial] = 0;
        let mut i = 0;
        while i < order.len() {
            let s = order[i];
            i += 1;
            for &(_, t) in &self.edges[s] {
                if live(t) && new_id[t] == usize::MAX {
                    new_id[t] = order.len();
                    order.push(t);
                }
            }
        }
        let mut out = Fsa::new(self.alphabet.clone(), order.len(), 0);
        for (ni, &s) in order.iter().enumerate() {
            out.accepts[ni] = self.accepts[s];
            for &(a, t) in &self.edges[s] {
                if live(t) {
                    out.add_transition(ni, a, new_id[t]);
                }
            }
        }
        out
    }

    /// Copy with the accept flag of every state set to `accept`.
    pub fn with_all_accepting(&self, accept: bool) -> Fsa {
        let mut out = self.clone();
        out.accepts.iter_mut().for_each(|b| *b = accept);
        out
    }

    /// Errors unless both machines use alphabets with identical symbol names.
    pub(crate) fn check_same_alphabet(&self, other: &Fsa) -> Result<()> {
        if self.alphabet.names() == other.alphabet.names() {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }
}
