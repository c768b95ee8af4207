use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::fsa::{Fsa, StateId};
use crate::word::{Alphabet, Letter, SymbolOrder, Word};

/// Automaton over the pair alphabet `A x A` of a base alphabet. Pair
/// `(a, b)` is the letter `a * |A| + b`; both coordinates advance together,
/// so only equal-length pairs of words are read.
#[derive(Debug, Clone)]
pub struct PairFsa {
    base: Alphabet,
    fsa: Fsa,
}

impl PairFsa {
    pub fn new(base: Alphabet, fsa: Fsa) -> Result<Self> {
        if fsa.alphabet().len() != base.len() * base.len() {
            return Err(Error::AlphabetMismatch);
        }
        Ok(PairFsa { base, fsa })
    }

    pub fn base(&self) -> &Alphabet {
        &self.base
    }

    pub fn fsa(&self) -> &Fsa {
        &self.fsa
    }

    pub fn pair_letter(&self, a: Letter, b: Letter) -> Letter {
        Letter((a.index() * self.base.len() + b.index()) as u16)
    }

    pub fn split(&self, p: Letter) -> (Letter, Letter) {
        let n = self.base.len();
        (
            Letter((p.index() / n) as u16),
            Letter((p.index() % n) as u16),
        )
    }

    /// Accepts `(u, v)`; words of different lengths are never accepted.
    pub fn accepts_pair(&self, u: &Word, v: &Word) -> Result<bool> {
        if u.len() != v.len() {
            return Ok(false);
        }
        let w: Word = u
            .letters()
            .iter()
            .zip(v.letters())
            .map(|(&a, &b)| self.pair_letter(a, b))
            .collect();
        self.fsa.accepts(&w)
    }

    pub fn intersect(&self, other: &PairFsa) -> Result<PairFsa> {
        if self.base.names() != other.base.names() {
            return Err(Error::AlphabetMismatch);
        }
        Ok(PairFsa {
            base: self.base.clone(),
            fsa: self.fsa.intersect(&other.fsa)?,
        })
    }
}

/// `{ u : (u, v) accepted for some v }`, generally nondeterministic.
pub fn project_first(q: &PairFsa) -> Fsa {
    let src = q.fsa();
    let mut out = Fsa::new(q.base.clone(), src.num_states(), src.initial());
    for s in 0..src.num_states() {
        out.set_accept(s, src.is_accept(s));
    }
    for (s, p, t) in src.transitions() {
        out.add_transition(s, q.split(p).0, t);
    }
    out
}

/// Three-state comparator over `A x A` accepting the equal-length pairs
/// `(u, v)` with `v` strictly smaller than `u` lexicographically.
///
/// States: 0 undecided, 1 first smaller, 2 second smaller (accepting).
pub fn comparator(base: &Alphabet, order: &SymbolOrder) -> PairFsa {
    let pairs = Alphabet::pairs(base);
    let mut f = Fsa::new(pairs, 3, 0);
    f.set_accept(2, true);
    let n = base.len();
    for a in base.letters() {
        for b in base.letters() {
            let p = Letter((a.index() * n + b.index()) as u16);
            let decided = match order.rank(a).cmp(&order.rank(b)) {
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Less => 1,
                std::cmp::Ordering::Greater => 2,
            };
            f.add_transition(0, p, decided);
            f.add_transition(1, p, 1);
            f.add_transition(2, p, 2);
        }
    }
    PairFsa {
        base: base.clone(),
        fsa: f,
    }
}

impl Fsa {
    /// Product machine accepting `L(self) ∩ L(other)`; only reachable pairs
    /// are built. Works for nondeterministic inputs.
    pub fn intersect(&self, other: &Fsa) -> Result<Fsa> {
        self.check_same_alphabet(other)?;
        let mut ids: HashMap<(StateId, StateId), StateId> = HashMap::new();
        let start = (self.initial(), other.initial());
        ids.insert(start, 0);
        let mut pairs = vec![start];
        let mut out = Fsa::new(self.alphabet().clone(), 1, 0);
        out.set_accept(0, self.is_accept(start.0) && other.is_accept(start.1));
        let mut i = 0;
        while i < pairs.len() {
            let (s, t) = pairs[i];
            let (es, et) = (self.out_edges(s), other.out_edges(t));
            let (mut x, mut y) = (0, 0);
            while x < es.len() && y < et.len() {
                let (a, b) = (es[x].0, et[y].0);
                if a < b {
                    x += 1;
                } else if b < a {
                    y += 1;
                } else {
                    let x_end = x + es[x..].iter().take_while(|e| e.0 == a).count();
                    let y_end = y + et[y..].iter().take_while(|e| e.0 == a).count();
                    for &(_, s2) in &es[x..x_end] {
                        for &(_, t2) in &et[y..y_end] {
                            let id = *ids.entry((s2, t2)).or_insert_with(|| {
                                pairs.push((s2, t2));
                                out.add_state(self.is_accept(s2) && other.is_accept(t2))
                            });
                            out.add_transition(i, a, id);
                        }
                    }
                    x = x_end;
                    y = y_end;
                }
            }
            i += 1;
        }
        Ok(out)
    }

    /// Machine accepting `L(self) ∪ L(other)`: disjoint union behind a fresh
    /// initial state. Nondeterministic in general.
    pub fn union(&self, other: &Fsa) -> Result<Fsa> {
        self.check_same_alphabet(other)?;
        let off = 1 + self.num_states();
        let mut out = Fsa::new(self.alphabet().clone(), off + other.num_states(), 0);
        out.set_accept(
            0,
            self.is_accept(self.initial()) || other.is_accept(other.initial()),
        );
        for s in 0..self.num_states() {
            out.set_accept(1 + s, self.is_accept(s));
        }
        for s in 0..other.num_states() {
            out.set_accept(off + s, other.is_accept(s));
        }
        for (s, a, t) in self.transitions() {
            out.add_transition(1 + s, a, 1 + t);
            if s == self.initial() {
                out.add_transition(0, a, 1 + t);
            }
        }
        for (s, a, t) in other.transitions() {
            out.add_transition(off + s, a, off + t);
            if s == other.initial() {
                out.add_transition(0, a, off + t);
            }
        }
        Ok(out)
    }

    /// Subset construction over reachable subsets. The empty subset is not
    /// materialized, so the result may be partial.
    pub fn determinize(&self) -> Fsa {
        if self.is_deterministic() {
            return self.clone();
        }
        let mut ids: HashMap<Vec<StateId>, StateId> = HashMap::new();
        let start = vec![self.initial()];
        ids.insert(start.clone(), 0);
        let mut subsets = vec![start];
        let mut out = Fsa::new(self.alphabet().clone(), 1, 0);
        out.set_accept(0, self.is_accept(self.initial()));
        let mut i = 0;
        let mut moves: Vec<(Letter, StateId)> = Vec::new();
        while i < subsets.len() {
            moves.clear();
            for &s in &subsets[i] {
                moves.extend_from_slice(self.out_edges(s));
            }
            moves.sort_unstable();
            moves.dedup();
            let mut j = 0;
            while j < moves.len() {
                let a = moves[j].0;
                let k = j + moves[j..].iter().take_while(|m| m.0 == a).count();
                let target: Vec<StateId> = moves[j..k].iter().map(|m| m.1).collect();
                let id = match ids.get(&target) {
                    Some(&id) => id,
                    None => {
                        let accept = target.iter().any(|&t| self.is_accept(t));
                        let id = out.add_state(accept);
                        ids.insert(target.clone(), id);
                        subsets.push(target);
                        id
                    }
                };
                out.add_transition(i, a, id);
                j = k;
            }
            i += 1;
        }
        out
    }

    /// Deterministic machine with a transition for every (state, letter);
    /// missing transitions go to a rejecting sink.
    pub fn complete(&self) -> Fsa {
        let mut out = self.determinize();
        let letters: Vec<Letter> = out.alphabet().letters().collect();
        let mut sink = None;
        for s in 0..out.num_states() {
            for &a in &letters {
                if out.next(s, a).is_none() {
                    let k = *sink.get_or_insert_with(|| {
                        let k = out.add_state(false);
                        for &b in &letters {
                            out.add_transition(k, b, k);
                        }
                        k
                    });
                    out.add_transition(s, a, k);
                }
            }
        }
        out
    }

    /// Machine for `A* \ L(self)`, relative to the full free monoid.
    pub fn complement(&self) -> Fsa {
        let mut out = self.complete();
        for s in 0..out.num_states() {
            let acc = out.is_accept(s);
            out.set_accept(s, !acc);
        }
        out
    }

    /// Machine for `L(self) \ L(other)`.
    pub fn difference(&self, other: &Fsa) -> Result<Fsa> {
        self.intersect(&other.complement())
    }

    /// Minimal deterministic machine for the same language, by Moore
    /// partition refinement on the trimmed determinization. State 0 is the
    /// initial state; the rest follow breadth-first order.
    pub fn minimize(&self) -> Fsa {
        let d = self.determinize().trim();
        let n = d.num_states();
        let letters: Vec<Letter> = d.alphabet().letters().collect();
        // block ids; usize::MAX stands for the implicit dead state
        let mut block: Vec<usize> = (0..n).map(|s| usize::from(d.is_accept(s))).collect();
        let mut count = 0;
        loop {
            let mut sig_ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let mut next = vec![0; n];
            for s in 0..n {
                let sig: Vec<usize> = letters
                    .iter()
                    .map(|&a| d.next(s, a).map_or(usize::MAX, |t| block[t]))
                    .collect();
                let len = sig_ids.len();
                next[s] = *sig_ids.entry((block[s], sig)).or_insert(len);
            }
            let new_count = sig_ids.len();
            block = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        quotient(&d, &block)
    }
}

/// Quotient of a deterministic machine by a congruence given as block ids.
/// Blocks are renumbered breadth-first from the initial state's block.
pub(crate) fn quotient(d: &Fsa, block: &[usize]) -> Fsa {
    let nblocks = block.iter().copied().max().map_or(0, |m| m + 1);
    let mut new_id = vec![usize::MAX; nblocks];
    let mut rep = Vec::new();
    let mut queue = VecDeque::from([d.initial()]);
    new_id[block[d.initial()]] = 0;
    rep.push(d.initial());
    while let Some(s) = queue.pop_front() {
        for &(_, t) in d.out_edges(s) {
            if new_id[block[t]] == usize::MAX {
                new_id[block[t]] = rep.len();
                rep.push(t);
                queue.push_back(t);
            }
        }
    }
    let mut out = Fsa::new(d.alphabet().clone(), rep.len(), 0);
    for (i, &s) in rep.iter().enumerate() {
        out.set_accept(i, d.is_accept(s));
        for &(a, t) in d.out_edges(s) {
            out.add_transition(i, a, new_id[block[t]]);
        }
    }
    out
}
