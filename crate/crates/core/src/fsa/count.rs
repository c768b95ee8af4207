use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fsa::{Fsa, StateId};
use crate::word::{Letter, Word};

/// Upper bound on the number of words [`Fsa::words_up_to`] will materialize.
pub const WORD_LIST_BUDGET: usize = 5_000_000;

/// Accepted-word counts by length: `sphere[n]` words of length exactly `n`,
/// `cumulative[n]` of length at most `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WordCounts {
    #[serde(serialize_with = "decimal_strings")]
    pub sphere: Vec<BigUint>,
    #[serde(serialize_with = "decimal_strings")]
    pub cumulative: Vec<BigUint>,
}

fn decimal_strings<S: serde::Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

impl WordCounts {
    fn from_sphere(sphere: Vec<BigUint>) -> Self {
        let mut total = BigUint::zero();
        let cumulative = sphere
            .iter()
            .map(|c| {
                total += c;
                total.clone()
            })
            .collect();
        WordCounts { sphere, cumulative }
    }

    pub fn max_len(&self) -> usize {
        self.sphere.len() - 1
    }

    /// Sphere counts as `u64`, or `None` if one overflows.
    pub fn sphere_u64(&self) -> Option<Vec<u64>> {
        self.sphere.iter().map(ToPrimitive::to_u64).collect()
    }

    pub fn cumulative_u64(&self) -> Option<Vec<u64>> {
        self.cumulative.iter().map(ToPrimitive::to_u64).collect()
    }
}

impl Fsa {
    /// Counts accepted words of each length `0..=n` by dynamic programming
    /// over the transition structure. Exact for deterministic machines;
    /// nondeterministic input is rejected since paths would be overcounted.
    pub fn count_words(&self, n: usize) -> Result<WordCounts> {
        if !self.is_deterministic() {
            return Err(Error::NondeterministicInput);
        }
        Ok(WordCounts::from_sphere(self.count_paths(n)))
    }

    /// Number of accepting paths of each length; equals the word count for
    /// deterministic machines.
    pub(crate) fn count_paths(&self, n: usize) -> Vec<BigUint> {
        let mut cur = vec![BigUint::zero(); self.num_states()];
        cur[self.initial()] = BigUint::from(1u8);
        let mut sphere = Vec::with_capacity(n + 1);
        for len in 0..=n {
            let mut here = BigUint::zero();
            for s in self.accept_states() {
                here += &cur[s];
            }
            sphere.push(here);
            if len == n {
                break;
            }
            let mut next = vec![BigUint::zero(); self.num_states()];
            for (s, _, t) in self.transitions() {
                if !cur[s].is_zero() {
                    next[t] += &cur[s];
                }
            }
            cur = next;
        }
        sphere
    }

    /// Every accepted word of length at most `n`, each once, in short-lex
    /// order of letter indices. Nondeterministic machines are determinized
    /// first.
    pub fn words_up_to(&self, n: usize) -> Result<Vec<Word>> {
        let d = self.determinize();
        let dist = d.distance_to_accept();
        let mut out = Vec::new();
        let mut word = Vec::new();
        collect(&d, &dist, d.initial(), n, &mut word, &mut out)?;
        out.sort_by(|u, v| u.len().cmp(&v.len()).then_with(|| u.cmp(v)));
        Ok(out)
    }
}

fn collect(
    d: &Fsa,
    dist: &[Option<usize>],
    s: StateId,
    n: usize,
    word: &mut Vec<Letter>,
    out: &mut Vec<Word>,
) -> Result<()> {
    if d.is_accept(s) {
        out.push(Word::from_letters(word.clone()));
        if out.len() > WORD_LIST_BUDGET {
            return Err(Error::budget("word listing", WORD_LIST_BUDGET));
        }
    }
    if word.len() == n {
        return Ok(());
    }
    for &(a, t) in d.out_edges(s) {
        if dist[t].is_some_and(|k| word.len() + 1 + k <= n) {
            word.push(a);
            collect(d, dist, t, n, word, out)?;
            word.pop();
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fsa::tests::{a_star, even_a, unary};

    #[test]
    fn counts_for_unary_languages() {
        let c = a_star().count_words(4).unwrap();
        assert_eq!(c.sphere_u64().unwrap(), vec![1; 5]);
        assert_eq!(c.cumulative_u64().unwrap(), vec![1, 2, 3, 4, 5]);
        let e = even_a().count_words(4).unwrap();
        assert_eq!(e.sphere_u64().unwrap(), vec![1, 0, 1, 0, 1]);
        assert_eq!(e.max_len(), 4);
    }

    #[test]
    fn nondeterministic_input_is_rejected() {
        let mut f = Fsa::new(unary(), 2, 0);
        f.add_transition(0, Letter(0), 0);
        f.add_transition(0, Letter(0), 1);
        assert_eq!(f.count_words(3), Err(Error::NondeterministicInput));
        assert_eq!(
            f.determinize()
                .count_words(3)
                .unwrap()
                .sphere_u64()
                .unwrap(),
            vec![0; 4]
        );
    }

    #[test]
    fn listing_matches_counts() {
        let e = even_a();
        let ws = e.words_up_to(6).unwrap();
        assert_eq!(
            ws.iter().map(Word::len).collect::<Vec<_>>(),
            vec![0, 2, 4, 6]
        );
    }
}
