//! Equality recognizer for a geodesic language and its short-lex
//! unique-representative sublanguage.
//!
//! The recognizer reads pairs `(u, v)` of equal-length words letter by letter,
//! tracking both machine states and the discrepancy `g = ū_t⁻¹ v̄_t` between
//! the prefixes read so far. The pair is accepted when both words are in the
//! language and `g` returns to the identity. Pairs whose discrepancy ever
//! leaves the ball of radius `r` are dropped, so `r` must bound how far apart
//! equal-element geodesics in the language travel.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::cone::{build_with_escalation, ConeAutomaton, WindowFilter};
use crate::error::{Error, Result};
use crate::fsa::{comparator, project_first, Fsa, PairFsa, StateId};
use crate::group::{enumerate_ball, GroupModel};
use crate::word::{Alphabet, Letter, SymbolOrder, Word};

/// Pair-automaton recognizing `{(u, v) : u, v ∈ L(l), ū = v̄}` among pairs
/// whose prefix discrepancy stays within `r`.
///
/// No oracle check is made; see [`equality_recognizer`].
pub fn equality_recognizer_unchecked(l: &Fsa, model: &GroupModel, r: usize) -> Result<PairFsa> {
    if !l.is_deterministic() {
        return Err(Error::NondeterministicInput);
    }
    if l.alphabet().names() != model.alphabet().names() {
        return Err(Error::AlphabetMismatch);
    }
    let al = model.alphabet();
    let n = al.len();
    let ball = enumerate_ball(model, r)?;
    let ball_ids: HashMap<&Word, usize> = ball.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let ball_words: Vec<&Word> = ball.iter().collect();

    let mut ids: HashMap<(StateId, StateId, usize), StateId> = HashMap::new();
    let start = (l.initial(), l.initial(), 0);
    ids.insert(start, 0);
    let mut states = vec![start];
    let mut q = Fsa::new(Alphabet::pairs(al), 1, 0);
    let accept = |s: StateId, t: StateId, g: usize| l.is_accept(s) && l.is_accept(t) && g == 0;
    q.set_accept(0, accept(start.0, start.1, 0));
    let mut i = 0;
    while i < states.len() {
        let (s, t, gi) = states[i];
        let g = ball_words[gi];
        for &(a, s2) in l.out_edges(s) {
            let left = model.mul_letter(&Word::empty(), al.inverse(a));
            let left = model.mul_word(&left, g);
            for &(b, t2) in l.out_edges(t) {
                let h = model.mul_letter(&left, b);
                let Some(&hi) = ball_ids.get(&h) else {
                    continue;
                };
                let key = (s2, t2, hi);
                let id = *ids.entry(key).or_insert_with(|| {
                    states.push(key);
                    q.add_state(accept(s2, t2, hi))
                });
                q.add_transition(i, Letter((a.index() * n + b.index()) as u16), id);
            }
        }
        i += 1;
    }
    PairFsa::new(al.clone(), q.trim())
}

/// Largest prefix discrepancy `max_t |ū_t⁻¹ v̄_t|` of two words.
pub fn prefix_discrepancy(model: &GroupModel, u: &Word, v: &Word) -> usize {
    let al = model.alphabet();
    let mut g = Word::empty();
    let mut worst = 0;
    for t in 0..u.len().max(v.len()) {
        if let Some(&a) = u.letters().get(t) {
            g = model.mul_word(&model.mul_letter(&Word::empty(), al.inverse(a)), &g);
        }
        if let Some(&b) = v.letters().get(t) {
            g = model.mul_letter(&g, b);
        }
        worst = worst.max(g.len());
    }
    worst
}

/// Words of `L(l)` up to length `depth`, grouped by the element they spell.
/// Groups are keyed by normal form; words within a group are short-lex sorted.
pub fn words_by_element(
    l: &Fsa,
    model: &GroupModel,
    depth: usize,
) -> Result<BTreeMap<Word, Vec<Word>>> {
    let mut groups: BTreeMap<Word, Vec<Word>> = BTreeMap::new();
    for w in l.words_up_to(depth)? {
        groups.entry(model.normal_form(&w)?).or_default().push(w);
    }
    Ok(groups)
}

/// Pairs `(u, v)` of equal-element words of `L(l)` up to length `depth` whose
/// discrepancy exceeds `r`, reporting the first in short-lex order of `u`
/// then `v`, together with the largest discrepancy over all pairs.
fn first_violation(
    l: &Fsa,
    model: &GroupModel,
    r: usize,
    depth: usize,
) -> Result<Option<(Word, Word, usize)>> {
    let groups = words_by_element(l, model, depth)?;
    let mut worst = 0;
    let mut first: Option<(Word, Word)> = None;
    let shortlex =
        |x: &(Word, Word), y: &(Word, Word)| (x.0.len(), &x.0, &x.1) < (y.0.len(), &y.0, &y.1);
    for ws in groups.values() {
        for u in ws {
            for v in ws {
                if u == v {
                    continue;
                }
                let d = prefix_discrepancy(model, u, v);
                worst = worst.max(d);
                if d > r {
                    let cand = (u.clone(), v.clone());
                    if first.as_ref().is_none_or(|f| shortlex(&cand, f)) {
                        first = Some(cand);
                    }
                }
            }
        }
    }
    Ok(first.map(|(u, v)| (u, v, worst)))
}

/// Equality recognizer at bound `r`, cross-checked against the equal-element
/// pairs of `L(l)` up to length `check_depth`. Fails with
/// [`Error::BoundTooSmall`] if one of those pairs travels further apart than
/// `r`; `needed` is the largest discrepancy seen.
pub fn equality_recognizer(
    l: &Fsa,
    model: &GroupModel,
    r: usize,
    check_depth: usize,
) -> Result<PairFsa> {
    if let Some((u, v, needed)) = first_violation(l, model, r, check_depth)? {
        let al = model.alphabet();
        return Err(Error::BoundTooSmall {
            r,
            needed,
            left: al.format_word(&u),
            right: al.format_word(&v),
        });
    }
    equality_recognizer_unchecked(l, model, r)
}

/// Grows `r` from `r_hint` until the oracle check at `check_depth` passes,
/// failing with [`Error::NonStabilization`] beyond `max_r`.
pub fn auto_equality_recognizer(
    l: &Fsa,
    model: &GroupModel,
    r_hint: usize,
    check_depth: usize,
    max_r: usize,
) -> Result<(PairFsa, usize)> {
    let mut r = r_hint;
    let mut attempts = 0;
    loop {
        attempts += 1;
        match equality_recognizer(l, model, r, check_depth) {
            Ok(q) => return Ok((q, r)),
            Err(Error::BoundTooSmall { needed, .. }) if needed <= max_r => r = needed,
            Err(Error::BoundTooSmall { needed, .. }) => {
                return Err(Error::NonStabilization {
                    what: "fellow-travel bound".into(),
                    attempts,
                    last: needed,
                })
            }
            Err(e) => return Err(e),
        }
    }
}

/// `J = { u : (u, u) ∈ Q, no (u, w) ∈ Q with w ≺ u }`, minimized.
pub fn lex_least(q: &PairFsa, order: &SymbolOrder) -> Result<Fsa> {
    let firsts = project_first(q).determinize();
    let beaten = project_first(&q.intersect(&comparator(q.base(), order))?).determinize();
    Ok(firsts.difference(&beaten)?.minimize())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ShortlexOptions {
    /// Starting fellow-travel bound.
    pub r_hint: usize,
    pub max_r: usize,
    /// Length up to which equal-element pairs are checked against `r` and
    /// the result is checked to be a bijection onto elements.
    pub check_depth: usize,
    pub depth_budget: usize,
    pub max_escalations: usize,
}

impl Default for ShortlexOptions {
    fn default() -> Self {
        ShortlexOptions {
            r_hint: 4,
            max_r: 24,
            check_depth: 4,
            depth_budget: 40,
            max_escalations: 3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ShortlexLanguage {
    pub fsa: Fsa,
    pub cone: ConeAutomaton,
    pub r: usize,
    pub recognizer_states: usize,
}

/// Cone automaton, then equality recognizer with auto-grown `r`, then the
/// lexicographically least representatives. The result is checked to have
/// exactly one word per element reached by the filtered language, at every
/// length up to `opts.check_depth`.
pub fn unique_rep_language(
    model: &GroupModel,
    filter: &WindowFilter,
    m: usize,
    order: &SymbolOrder,
    opts: &ShortlexOptions,
) -> Result<ShortlexLanguage> {
    let (cone, _) = build_with_escalation(
        model,
        m,
        filter,
        opts.depth_budget,
        opts.max_escalations,
        None,
    )?;
    let (q, r) =
        auto_equality_recognizer(cone.fsa(), model, opts.r_hint, opts.check_depth, opts.max_r)?;
    let fsa = lex_least(&q, order)?;
    check_bijection(&fsa, cone.fsa(), model, opts.check_depth)?;
    Ok(ShortlexLanguage {
        fsa,
        recognizer_states: q.fsa().num_states(),
        cone,
        r,
    })
}

/// Checks that `j` has one word per element spelled by `l`, length by length.
pub fn check_bijection(j: &Fsa, l: &Fsa, model: &GroupModel, depth: usize) -> Result<()> {
    let groups = words_by_element(l, model, depth)?;
    let mut elements = vec![0usize; depth + 1];
    for ws in groups.values() {
        elements[ws[0].len()] += 1;
    }
    let mut seen = HashMap::new();
    let mut words = vec![0usize; depth + 1];
    for w in j.words_up_to(depth)? {
        let nf = model.normal_form(&w)?;
        if let Some(prev) = seen.insert(nf, w.clone()) {
            let al = model.alphabet();
            return Err(Error::InvalidAutomaton(format!(
                "`{}` and `{}` represent the same element",
                al.format_word(&prev),
                al.format_word(&w)
            )));
        }
        words[w.len()] += 1;
    }
    if words != elements {
        return Err(Error::InvalidAutomaton(format!(
            "representative counts {words:?} differ from element counts {elements:?}"
        )));
    }
    Ok(())
}
