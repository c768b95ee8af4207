//! Tails, restricted cones, cone signatures and the cone-type automaton.
//!
//! For a geodesic word `u` and locality `m`:
//! - the tail `T_m(u)` is the set of elements `g` with `|g| <= m` and
//!   `|ū g| < |ū|`;
//! - the restricted cone `Cone_m(u)` is the set of words `w` with
//!   `|w| <= m` such that `u w` is geodesic and passes the window filter.
//!
//! The pair of the two is the signature of `u`. The automaton is built by a
//! breadth-first search over signature classes, then minimized, so its states
//! are the cone types of the filtered geodesic language.

mod automaton;
mod filter;

pub use automaton::{
    build_cone_automaton, build_with_budget, build_with_escalation, validate_automaton,
    validate_fsa, ConeAutomaton, EscalationStep, Mismatch, ValidationReport, DEFAULT_CLASS_BUDGET,
};
pub use filter::{FilterSpec, WindowFilter};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{enumerate_ball, GroupModel};
use crate::word::{Letter, Word};

/// Sorted list of tail elements (normal forms).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Tail(pub Vec<Word>);

/// Sorted list of cone words.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RestrictedCone(pub Vec<Word>);

impl RestrictedCone {
    pub fn contains(&self, w: &Word) -> bool {
        self.0.binary_search(w).is_ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ConeSignature {
    pub m: usize,
    pub tail: Tail,
    pub cone: RestrictedCone,
}

fn sort_shortlex(ws: &mut [Word]) {
    ws.sort_by(|u, v| u.len().cmp(&v.len()).then_with(|| u.cmp(v)));
}

fn check_geodesic(model: &GroupModel, u: &Word) -> Result<Word> {
    let nf = model.normal_form(u)?;
    if nf.len() != u.len() {
        return Err(Error::NotGeodesic(model.alphabet().format_word(u)));
    }
    Ok(nf)
}

fn check_filtered(model: &GroupModel, u: &Word, filter: &WindowFilter) -> Result<Word> {
    let nf = check_geodesic(model, u)?;
    if !filter.passes(u) {
        return Err(Error::FilterRejected(model.alphabet().format_word(u)));
    }
    Ok(nf)
}

/// `T_n(u)`, by scanning the ball `B(e, n)`.
pub fn tail(model: &GroupModel, u: &Word, n: usize) -> Result<Tail> {
    let nf = check_geodesic(model, u)?;
    let ball: Vec<Word> = enumerate_ball(model, n)?.iter().cloned().collect();
    Ok(tail_from_ball(model, &nf, &ball))
}

fn tail_from_ball(model: &GroupModel, nf: &Word, ball: &[Word]) -> Tail {
    let mut out: Vec<Word> = ball
        .iter()
        .filter(|g| model.mul_word(nf, g).len() < nf.len())
        .cloned()
        .collect();
    sort_shortlex(&mut out);
    Tail(out)
}

/// `Cone_n(u)`: extensions of length at most `n` keeping `u w` geodesic and
/// filter-passing.
pub fn restricted_cone(
    model: &GroupModel,
    u: &Word,
    n: usize,
    filter: &WindowFilter,
) -> Result<RestrictedCone> {
    let nf = check_filtered(model, u, filter)?;
    Ok(cone_of(model, u, &nf, n, filter))
}

fn cone_of(
    model: &GroupModel,
    u: &Word,
    nf: &Word,
    n: usize,
    filter: &WindowFilter,
) -> RestrictedCone {
    let mut out = Vec::new();
    let mut word = u.letters().to_vec();
    extend(model, filter, nf, u.len(), n, &mut word, &mut out);
    sort_shortlex(&mut out);
    RestrictedCone(out)
}

fn extend(
    model: &GroupModel,
    filter: &WindowFilter,
    nf: &Word,
    base: usize,
    n: usize,
    word: &mut Vec<Letter>,
    out: &mut Vec<Word>,
) {
    out.push(Word::from_letters(word[base..].to_vec()));
    if word.len() - base == n {
        return;
    }
    for a in model.alphabet().letters() {
        let next = model.mul_letter(nf, a);
        if next.len() != word.len() + 1 {
            continue;
        }
        word.push(a);
        if filter.passes_last(word) {
            extend(model, filter, &next, base, n, word, out);
        }
        word.pop();
    }
}

/// Signature of a geodesic, filter-passing word.
pub fn signature(
    model: &GroupModel,
    u: &Word,
    m: usize,
    filter: &WindowFilter,
) -> Result<ConeSignature> {
    let nf = check_filtered(model, u, filter)?;
    let ball: Vec<Word> = enumerate_ball(model, m)?.iter().cloned().collect();
    Ok(signature_with_ball(model, u, &nf, m, filter, &ball))
}

pub(crate) fn signature_with_ball(
    model: &GroupModel,
    u: &Word,
    nf: &Word,
    m: usize,
    filter: &WindowFilter,
    ball: &[Word],
) -> ConeSignature {
    ConeSignature {
        m,
        tail: tail_from_ball(model, nf, ball),
        cone: cone_of(model, u, nf, m, filter),
    }
}

/// Whether the geodesics `u` and `v` stay within `bound` of each other when
/// traversed at unit speed (the shorter one waits at its endpoint). Their
/// endpoints must be equal or adjacent.
pub fn brute_force_fellow_traveling(
    model: &GroupModel,
    u: &Word,
    v: &Word,
    bound: f64,
) -> Result<bool> {
    check_geodesic(model, u)?;
    check_geodesic(model, v)?;
    if model.distance(u, v)? > 1 {
        let al = model.alphabet();
        return Err(Error::EndpointMismatch(
            al.format_word(u),
            al.format_word(v),
        ));
    }
    for t in 0..=u.len().max(v.len()) {
        let d = model.distance(&u.prefix(t.min(u.len())), &v.prefix(t.min(v.len())))?;
        if d as f64 > bound {
            return Ok(false);
        }
    }
    Ok(true)
}
