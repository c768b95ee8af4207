//! Pumping accepted prefixes through a repeated automaton state.
//!
//! Reading a prefix of length at least `i + S + 1` through an `S`-state
//! deterministic machine, two of the states after `i, ..., i + S` letters
//! coincide. Splitting there gives `prefix = u v q` with the machine in the
//! same state after `u` and after `u v`, so every `u vⁿ` is accepted when all
//! states accept.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fsa::{Fsa, StateId};
use crate::group::GroupModel;
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PumpDecomposition {
    pub u: Word,
    pub v: Word,
    pub q: Word,
    /// The state reached after both `u` and `u v`.
    pub state: StateId,
}

/// Earliest split `prefix = u v q` with `|u| >= i`, `v` nonempty and equal
/// states after `u` and `u v`: the first `k` whose state already occurred at
/// some `j` in `i..k`.
pub fn pump_decomposition(fsa: &Fsa, prefix: &Word, i: usize) -> Result<PumpDecomposition> {
    if !fsa.is_deterministic() {
        return Err(Error::NondeterministicInput);
    }
    let needed = i + fsa.num_states() + 1;
    if prefix.len() < needed {
        return Err(Error::PrefixTooShort {
            needed,
            got: prefix.len(),
        });
    }
    let not_accepted = || Error::NotAccepted(fsa.alphabet().format_word(prefix));
    if !fsa.accepts(prefix)? {
        return Err(not_accepted());
    }
    let trace = fsa.trace(prefix).ok_or_else(not_accepted)?;
    let mut first_seen = vec![None; fsa.num_states()];
    for (k, &s) in trace.iter().enumerate().skip(i) {
        if let Some(j) = first_seen[s] {
            return Ok(PumpDecomposition {
                u: prefix.prefix(j),
                v: prefix.slice(j, k),
                q: prefix.slice(k, prefix.len()),
                state: s,
            });
        }
        first_seen[s] = Some(k);
    }
    unreachable!(
        "pigeonhole: {} positions over {} states",
        fsa.num_states() + 1,
        fsa.num_states()
    )
}

/// `u vⁿ`.
pub fn periodic_word(d: &PumpDecomposition, n: usize) -> Word {
    d.u.concat(&d.v.repeat(n))
}

/// Normal form of `u v u⁻¹`.
pub fn morse_element_candidate(model: &GroupModel, d: &PumpDecomposition) -> Result<Word> {
    let w = d.u.concat(&d.v).concat(&d.u.inverse(model.alphabet()));
    model.normal_form(&w)
}

/// Checks `|gⁿ| >= n·|v| - 2|u|` for `n = 1..=max_n`, returning the first
/// power that violates it.
pub fn check_linear_power_growth(
    model: &GroupModel,
    d: &PumpDecomposition,
    max_n: usize,
) -> Result<Option<usize>> {
    let g = morse_element_candidate(model, d)?;
    let mut p = Word::empty();
    for n in 1..=max_n {
        p = model.multiply(&p, &g);
        if (p.len() as i64) < (n * d.v.len()) as i64 - 2 * d.u.len() as i64 {
            return Ok(Some(n));
        }
    }
    Ok(None)
}
