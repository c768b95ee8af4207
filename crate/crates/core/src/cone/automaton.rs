use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::cone::{signature_with_ball, ConeSignature, WindowFilter};
use crate::error::{Error, Result};
use crate::fsa::{Fsa, StateId};
use crate::group::{enumerate_ball, enumerate_geodesic_words, GroupModel};
use crate::word::{Letter, Word};

/// Default cap on the number of signature classes explored by a build.
pub const DEFAULT_CLASS_BUDGET: usize = 20_000;

/// Deterministic automaton for a filtered geodesic language. Every state is
/// accepting; state 0 is the class of the empty word.
#[derive(Debug, Clone)]
pub struct ConeAutomaton {
    fsa: Fsa,
    m: usize,
    filter: WindowFilter,
    raw_classes: usize,
    representatives: Vec<Word>,
    signatures: Vec<ConeSignature>,
    lookup: HashMap<ConeSignature, StateId>,
}

impl ConeAutomaton {
    pub fn fsa(&self) -> &Fsa {
        &self.fsa
    }

    pub fn into_fsa(self) -> Fsa {
        self.fsa
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn filter(&self) -> &WindowFilter {
        &self.filter
    }

    pub fn num_states(&self) -> usize {
        self.fsa.num_states()
    }

    /// Number of distinct signatures met during the build, before states
    /// with identical futures were merged.
    pub fn raw_classes(&self) -> usize {
        self.raw_classes
    }

    /// Short-lex least word reaching `s` in the breadth-first build.
    pub fn representative(&self, s: StateId) -> &Word {
        &self.representatives[s]
    }

    /// Signature of the representative of `s`.
    pub fn signature_of_state(&self, s: StateId) -> &ConeSignature {
        &self.signatures[s]
    }

    /// State whose class contains words with this signature, if any was met.
    pub fn state_of_signature(&self, sig: &ConeSignature) -> Option<StateId> {
        self.lookup.get(sig).copied()
    }

    pub fn accepts(&self, w: &Word) -> Result<bool> {
        self.fsa.accepts(w)
    }
}

struct Builder<'a> {
    model: &'a GroupModel,
    filter: &'a WindowFilter,
    m: usize,
    ball: Vec<Word>,
}

impl Builder<'_> {
    /// Signatures of the one-letter filtered geodesic extensions of `u`.
    fn extensions(&self, u: &Word, nf: &Word) -> Vec<Option<(Word, Word, ConeSignature)>> {
        self.model
            .alphabet()
            .letters()
            .map(|a| {
                let next = self.model.mul_letter(nf, a);
                if next.len() != u.len() + 1 {
                    return None;
                }
                let ua = u.appended(a);
                if !self.filter.passes_last(ua.letters()) {
                    return None;
                }
                let sig =
                    signature_with_ball(self.model, &ua, &next, self.m, self.filter, &self.ball);
                Some((ua, next, sig))
            })
            .collect()
    }

    fn inconsistency(&self, left: &Word, right: &Word, a: Letter, detail: &str) -> Error {
        let al = self.model.alphabet();
        Error::InconsistentLocality {
            m: self.m,
            left: al.format_word(left),
            right: al.format_word(right),
            letter: al.name(a).to_string(),
            detail: detail.to_string(),
        }
    }
}

/// Builds the cone-type automaton at locality `m`.
///
/// Signature classes are explored breadth first, each from its first (short-lex
/// least) representative, over words of length at most `depth_budget`. Every
/// time a word lands in an existing class, its one-letter extensions are
/// compared with those of the class representative; any disagreement in
/// membership or in successor signature is reported as
/// [`Error::InconsistentLocality`]. The class machine is then minimized.
pub fn build_cone_automaton(
    model: &GroupModel,
    m: usize,
    filter: &WindowFilter,
    depth_budget: usize,
) -> Result<ConeAutomaton> {
    build_with_budget(model, m, filter, depth_budget, DEFAULT_CLASS_BUDGET)
}

pub fn build_with_budget(
    model: &GroupModel,
    m: usize,
    filter: &WindowFilter,
    depth_budget: usize,
    class_budget: usize,
) -> Result<ConeAutomaton> {
    let ball: Vec<Word> = enumerate_ball(model, m)?.iter().cloned().collect();
    let b = Builder {
        model,
        filter,
        m,
        ball,
    };
    let letters: Vec<Letter> = model.alphabet().letters().collect();

    let root_sig = signature_with_ball(model, &Word::empty(), &Word::empty(), m, filter, &b.ball);
    let mut ids: HashMap<ConeSignature, StateId> = HashMap::from([(root_sig.clone(), 0)]);
    let mut reps: Vec<(Word, Word)> = vec![(Word::empty(), Word::empty())];
    let mut sigs = vec![root_sig];
    let mut ext_cache: Vec<Option<Vec<Option<ConeSignature>>>> = vec![None];
    let mut raw = Fsa::new(model.alphabet().clone(), 1, 0);
    raw.set_accept(0, true);

    let mut i = 0;
    while i < reps.len() {
        let (u, nf) = reps[i].clone();
        let exts = b.extensions(&u, &nf);
        ext_cache[i] = Some(
            exts.iter()
                .map(|e| e.as_ref().map(|x| x.2.clone()))
                .collect(),
        );
        for (k, ext) in exts.into_iter().enumerate() {
            let Some((ua, ua_nf, sig)) = ext else {
                continue;
            };
            let target = match ids.get(&sig) {
                Some(&c) => {
                    if ext_cache[c].is_none() {
                        let (v, vnf) = &reps[c];
                        let e = b.extensions(v, vnf);
                        ext_cache[c] = Some(e.into_iter().map(|x| x.map(|x| x.2)).collect());
                    }
                    let theirs = ext_cache[c].as_ref().expect("cached above");
                    let ours = b.extensions(&ua, &ua_nf);
                    for (j, (o, t)) in ours.iter().zip(theirs).enumerate() {
                        let detail = match (o, t) {
                            (Some(_), None) => "only the first extends",
                            (None, Some(_)) => "only the second extends",
                            (Some(o), Some(t)) if o.2 != *t => "successor signatures differ",
                            _ => continue,
                        };
                        return Err(b.inconsistency(&ua, &reps[c].0, letters[j], detail));
                    }
                    c
                }
                None => {
                    if ua.len() > depth_budget {
                        return Err(Error::budget("cone automaton search depth", depth_budget));
                    }
                    if reps.len() >= class_budget {
                        return Err(Error::budget("cone automaton classes", class_budget));
                    }
                    let c = raw.add_state(true);
                    ids.insert(sig.clone(), c);
                    reps.push((ua, ua_nf));
                    sigs.push(sig);
                    ext_cache.push(None);
                    c
                }
            };
            raw.add_transition(i, letters[k], target);
        }
        i += 1;
    }

    let fsa = raw.minimize();
    let mut representatives = vec![None; fsa.num_states()];
    let mut signatures = vec![None; fsa.num_states()];
    let mut lookup = HashMap::new();
    for (c, (u, _)) in reps.iter().enumerate() {
        let s = fsa.run(u).expect("representatives are accepted");
        if representatives[s].is_none() {
            representatives[s] = Some(u.clone());
            signatures[s] = Some(sigs[c].clone());
        }
        lookup.insert(sigs[c].clone(), s);
    }
    Ok(ConeAutomaton {
        fsa,
        m,
        filter: filter.clone(),
        raw_classes: reps.len(),
        representatives: representatives
            .into_iter()
            .map(|r| r.expect("every state has a class"))
            .collect(),
        signatures: signatures
            .into_iter()
            .map(|r| r.expect("every state has a class"))
            .collect(),
        lookup,
    })
}

/// One attempt of an escalating build.
#[derive(Debug, Clone, Serialize)]
pub struct EscalationStep {
    pub m: usize,
    pub outcome: String,
}

/// Builds at `m`, `m + 1`, ... until a build is consistent (and, when
/// `validate_depth` is given, agrees with the brute-force language up to that
/// length), giving up after `max_escalations` increases.
pub fn build_with_escalation(
    model: &GroupModel,
    m: usize,
    filter: &WindowFilter,
    depth_budget: usize,
    max_escalations: usize,
    validate_depth: Option<usize>,
) -> Result<(ConeAutomaton, Vec<EscalationStep>)> {
    let mut steps = Vec::new();
    for mi in m..=m + max_escalations {
        match build_cone_automaton(model, mi, filter, depth_budget) {
            Ok(auto) => {
                if let Some(n) = validate_depth {
                    let report = validate_automaton(&auto, model, filter, n)?;
                    if !report.passed() {
                        steps.push(EscalationStep {
                            m: mi,
                            outcome: format!(
                                "validation failed at depth {n}: {} mismatches",
                                report.mismatch_count
                            ),
                        });
                        continue;
                    }
                }
                steps.push(EscalationStep {
                    m: mi,
                    outcome: format!("ok: {} states", auto.num_states()),
                });
                return Ok((auto, steps));
            }
            Err(e @ Error::InconsistentLocality { .. }) => steps.push(EscalationStep {
                m: mi,
                outcome: e.to_string(),
            }),
            Err(e) => return Err(e),
        }
    }
    Err(Error::NonStabilization {
        what: "cone locality".into(),
        attempts: max_escalations + 1,
        last: m + max_escalations,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub word: String,
    pub in_machine: bool,
    pub in_oracle: bool,
}

/// Comparison of a machine against the brute-force filtered geodesic language.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub depth: usize,
    pub machine_words: usize,
    pub oracle_words: usize,
    pub mismatch_count: usize,
    /// The first few mismatches in short-lex order.
    pub mismatches: Vec<Mismatch>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.mismatch_count == 0
    }
}

const REPORTED_MISMATCHES: usize = 20;

pub fn validate_automaton(
    auto: &ConeAutomaton,
    model: &GroupModel,
    filter: &WindowFilter,
    n: usize,
) -> Result<ValidationReport> {
    validate_fsa(auto.fsa(), model, filter, n)
}

/// Lists every word of length at most `n` accepted by exactly one of `fsa`
/// and the brute-force oracle.
pub fn validate_fsa(
    fsa: &Fsa,
    model: &GroupModel,
    filter: &WindowFilter,
    n: usize,
) -> Result<ValidationReport> {
    let machine: BTreeSet<Word> = fsa.words_up_to(n)?.into_iter().collect();
    let oracle: BTreeSet<Word> = enumerate_geodesic_words(model, n, Some(filter))?
        .into_iter()
        .collect();
    let mut diff: Vec<(&Word, bool)> = machine
        .difference(&oracle)
        .map(|w| (w, true))
        .chain(oracle.difference(&machine).map(|w| (w, false)))
        .collect();
    diff.sort_by(|x, y| x.0.len().cmp(&y.0.len()).then_with(|| x.0.cmp(y.0)));
    let al = model.alphabet();
    Ok(ValidationReport {
        depth: n,
        machine_words: machine.len(),
        oracle_words: oracle.len(),
        mismatch_count: diff.len(),
        mismatches: diff
            .into_iter()
            .take(REPORTED_MISMATCHES)
            .map(|(w, in_machine)| Mismatch {
                word: al.format_word(w),
                in_machine,
                in_oracle: !in_machine,
            })
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::FilterSpec;
    use crate::group::builtin;

    fn model(name: &str) -> GroupModel {
        builtin(name).unwrap().unwrap().model
    }

    #[test]
    fn f2_has_five_states() {
        let g = model("f2");
        let auto = build_cone_automaton(&g, 1, &WindowFilter::trivial(), 20).unwrap();
        assert_eq!(auto.num_states(), 5);
        assert!(auto.fsa().all_accepting());
        assert!(auto.fsa().is_deterministic());
        assert_eq!(auto.fsa().trim(), *auto.fsa());
        assert!(auto.representative(0).is_empty());
    }

    #[test]
    fn z2_has_nine_states() {
        let g = model("z2");
        let auto = build_cone_automaton(&g, 2, &WindowFilter::trivial(), 20).unwrap();
        assert_eq!(auto.num_states(), 9);
        assert!(validate_automaton(&auto, &g, &WindowFilter::trivial(), 8)
            .unwrap()
            .passed());
    }

    #[test]
    fn locality_zero_is_inconsistent() {
        let g = model("f2");
        let err = build_cone_automaton(&g, 0, &WindowFilter::trivial(), 20).unwrap_err();
        assert!(matches!(err, Error::InconsistentLocality { m: 0, .. }));
        let (auto, steps) =
            build_with_escalation(&g, 0, &WindowFilter::trivial(), 20, 3, Some(6)).unwrap();
        assert_eq!(auto.m(), 1);
        assert_eq!(steps.len(), 2);
    }

    #[test]
    fn escalation_gives_up() {
        let g = model("f2");
        let err = build_with_escalation(&g, 0, &WindowFilter::trivial(), 20, 0, None).unwrap_err();
        assert!(matches!(err, Error::NonStabilization { attempts: 1, .. }));
    }

    #[test]
    fn class_budget_is_enforced() {
        let g = model("z2");
        let err = build_with_budget(&g, 2, &WindowFilter::trivial(), 20, 3).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
        let err = build_cone_automaton(&g, 2, &WindowFilter::trivial(), 0).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn signature_lookup_round_trips() {
        let g = model("z2");
        let f = WindowFilter::trivial();
        let auto = build_cone_automaton(&g, 2, &f, 20).unwrap();
        let w = g.alphabet().parse_word("x x y").unwrap();
        let sig = crate::cone::signature(&g, &w, 2, &f).unwrap();
        assert_eq!(auto.state_of_signature(&sig), auto.fsa().run(&w));
    }

    #[test]
    fn flipped_accept_flag_is_caught() {
        let g = model("f2");
        let f = WindowFilter::trivial();
        let auto = build_cone_automaton(&g, 1, &f, 20).unwrap();
        let mut broken = auto.fsa().clone();
        broken.set_accept(1, false);
        let report = validate_fsa(&broken, &g, &f, 8).unwrap();
        assert!(!report.passed());
        let first = &report.mismatches[0];
        assert!(first.in_oracle && !first.in_machine);
        assert_eq!(first.word, g.alphabet().format_word(auto.representative(1)));
    }

    #[test]
    fn filtered_builds() {
        for (name, filter) in [("z2*z", "syllable:1"), ("raag-abc", "commuting:1")] {
            let g = model(name);
            let f = WindowFilter::new(filter.parse::<FilterSpec>().unwrap(), &g);
            let (auto, _) = build_with_escalation(&g, 2, &f, 30, 3, Some(6)).unwrap();
            assert!(
                validate_automaton(&auto, &g, &f, 7).unwrap().passed(),
                "{name}"
            );
        }
    }
}
