//! Word counts, growth rates and growth series of automata, the free-factor
//! extension, and growth-gap checks.

mod matrix;
mod series;

pub use matrix::{
    adjacency_matrix, count_matrix, pf_eigenvalue, CountMatrix, DEFAULT_PF_ITERATIONS,
    DEFAULT_PF_TOLERANCE,
};
pub use series::{rational_series, RationalSeries, HELD_OUT_TERMS};

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fsa::{Fsa, WordCounts};
use crate::group::GroupModel;
use crate::subgroup::SubgroupOracle;
use crate::word::Word;

/// Exponential growth rate of `L(fsa)`: the spectral radius of the count
/// matrix of the trimmed deterministic machine, raised to 1 for nonempty
/// finite languages (whose counts are eventually constant) and 0 for the
/// empty language.
pub fn growth_rate(fsa: &Fsa, tol: f64) -> Result<f64> {
    let live = fsa.determinize().trim();
    if live.accept_states().next().is_none() {
        return Ok(0.0);
    }
    let rho = pf_eigenvalue(&count_matrix(&live)?, tol, DEFAULT_PF_ITERATIONS)?;
    Ok(rho.max(1.0))
}

/// Machine for `(L(J) w)* (L(J) ∪ {ε})`: from every accept state a fresh
/// chain of `|w| - 1` states spells `w` back to the initial state, which
/// becomes accepting. The result is trimmed and may be nondeterministic if
/// `J` already has an edge labeled `w[0]` at an accept state.
pub fn extend_with_free_factor(j: &Fsa, w: &Word) -> Result<Fsa> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    j.alphabet().check_word(w)?;
    let mut out = j.clone();
    let s0 = out.initial();
    let letters = w.letters();
    for s in j.accept_states() {
        let mut from = s;
        for &a in &letters[..letters.len() - 1] {
            let next = out.add_state(false);
            out.add_transition(from, a, next);
            from = next;
        }
        out.add_transition(from, letters[letters.len() - 1], s0);
    }
    out.set_accept(s0, true);
    Ok(out.trim())
}

#[derive(Debug, Clone, Serialize)]
pub struct GapVerdict {
    pub sub: f64,
    pub sup: f64,
    pub margin: f64,
    pub passed: bool,
}

/// Passes iff `growth(sub) + margin <= growth(sup)`.
pub fn strict_gap_check(sub: &Fsa, sup: &Fsa, margin: f64) -> Result<GapVerdict> {
    let a = growth_rate(sub, DEFAULT_PF_TOLERANCE)?;
    let b = growth_rate(sup, DEFAULT_PF_TOLERANCE)?;
    Ok(GapVerdict {
        sub: a,
        sup: b,
        margin,
        passed: a + margin <= b,
    })
}

/// `|B(e, k) ∩ H|` for `k = 0..=n`, from the subgroup's own element
/// enumeration.
pub fn subgroup_growth_counts(h: &SubgroupOracle, n: usize) -> Result<Vec<u64>> {
    let mut sphere = vec![0u64; n + 1];
    for x in h.elements_within(n)? {
        sphere[x.len()] += 1;
    }
    let mut total = 0;
    Ok(sphere
        .into_iter()
        .map(|c| {
            total += c;
            total
        })
        .collect())
}

/// `|B(e, k) ∩ H|` by scanning the whole ball; an independent check of
/// [`subgroup_growth_counts`] at small radii.
pub fn subgroup_growth_counts_by_ball(
    model: &GroupModel,
    h: &SubgroupOracle,
    n: usize,
) -> Result<Vec<u64>> {
    let ball = crate::group::enumerate_ball(model, n)?;
    let mut total = 0;
    Ok((0..=n)
        .map(|k| {
            total += ball.sphere(k).iter().filter(|x| h.contains(x)).count() as u64;
            total
        })
        .collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthReport {
    /// States of the trimmed deterministic machine.
    pub states: usize,
    pub counts: WordCounts,
    pub pf_eigenvalue: f64,
    pub growth_rate: f64,
    pub sphere_series: Option<RationalSeries>,
    pub cumulative_series: Option<RationalSeries>,
}

/// Counts up to `terms` (at least enough to fit and validate the series),
/// growth rate, and, when `series` is set, growth series for sphere counts
/// (recurrence order at most the state count) and cumulative counts (one
/// more, for the extra factor `1/(1 - x)`).
pub fn growth_report(fsa: &Fsa, terms: usize, series: bool) -> Result<GrowthReport> {
    let live = fsa.determinize().trim();
    let s = live.num_states();
    let needed = 2 * (s + 1) + 1 + HELD_OUT_TERMS;
    let n = if series { terms.max(needed) } else { terms };
    let counts = live.count_words(n)?;
    let pf = pf_eigenvalue(
        &count_matrix(&live)?,
        DEFAULT_PF_TOLERANCE,
        DEFAULT_PF_ITERATIONS,
    )?;
    let empty = live.accept_states().next().is_none();
    let big = |v: &[num_bigint::BigUint]| {
        v.iter()
            .map(|x| BigInt::from(x.clone()))
            .collect::<Vec<_>>()
    };
    let (sphere_series, cumulative_series) = if series {
        (
            Some(rational_series(&big(&counts.sphere), s)?),
            Some(rational_series(&big(&counts.cumulative), s + 1)?),
        )
    } else {
        (None, None)
    };
    Ok(GrowthReport {
        states: s,
        counts,
        pf_eigenvalue: pf,
        growth_rate: if empty { 0.0 } else { pf.max(1.0) },
        sphere_series,
        cumulative_series,
    })
}
