//! Subgroup membership oracles and the subgroup languages built from them.
//!
//! For a subgroup `H` and `k >= 0`, the neighborhood automaton has the ball
//! `B(e, k)` as state set and an edge `g -a-> g'` whenever `g ā g'⁻¹ ∈ H`.
//! A word is read along a path of such states exactly when every vertex of
//! its path in the Cayley graph lies within `k` of `H`; the state records the
//! offset of the current vertex from a nearby element of `H`. Making only the
//! identity accepting gives `L_{H,k}`, the words into `H` whose paths stay
//! `k`-close to `H`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::cone::{build_with_escalation, ConeAutomaton, WindowFilter};
use crate::error::{Error, Result};
use crate::fsa::Fsa;
use crate::group::{enumerate_ball, geodesics_to, GroupModel};
use crate::shortlex::{unique_rep_language, ShortlexOptions};
use crate::word::{Letter, SymbolOrder, Word};

/// Default distortion bound for subgroups given by generating words.
pub const DEFAULT_DISTORTION: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubgroupKind {
    /// `⟨g⟩` for a word `g`.
    Cyclic(Word),
    /// Subgroup generated by the given words.
    Generated(Vec<Word>),
    /// Subgroup generated by a set of alphabet letters, for models whose
    /// normal forms of its elements use only those letters (factors of free
    /// products, special subgroups of RAAGs, free factors).
    Factor(Vec<Letter>),
    Trivial,
    Whole,
}

/// Membership oracle for a subgroup.
///
/// For `Cyclic` and `Generated`, membership of `x` is decided by searching
/// subgroup words of length at most `distortion * |x|`. This is exact when
/// every element of `H` has a subgroup word at most `distortion` times its
/// length in `G`, and may report false negatives otherwise.
#[derive(Clone)]
pub struct SubgroupOracle {
    model: GroupModel,
    kind: SubgroupKind,
    distortion: usize,
    /// Normal forms of the generators and their inverses.
    gens: Vec<Word>,
    letters: HashSet<Letter>,
    memo: Arc<Mutex<HashMap<Word, bool>>>,
}

impl fmt::Debug for SubgroupOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubgroupOracle")
            .field("kind", &self.kind)
            .field("distortion", &self.distortion)
            .finish()
    }
}

impl SubgroupOracle {
    pub fn new(model: &GroupModel, kind: SubgroupKind, distortion: usize) -> Result<Self> {
        let al = model.alphabet();
        let mut gens = Vec::new();
        let mut letters = HashSet::new();
        match &kind {
            SubgroupKind::Cyclic(w) => {
                let g = model.normal_form(w)?;
                gens.push(model.inverse_nf(&g));
                gens.insert(0, g);
            }
            SubgroupKind::Generated(ws) => {
                for w in ws {
                    let g = model.normal_form(w)?;
                    gens.push(model.inverse_nf(&g));
                    gens.push(g);
                }
            }
            SubgroupKind::Factor(ls) => {
                for &a in ls {
                    al.check_word(&Word::from_letters(vec![a]))?;
                    letters.insert(a);
                    letters.insert(al.inverse(a));
                }
            }
            SubgroupKind::Trivial | SubgroupKind::Whole => {}
        }
        gens.retain(|g| !g.is_empty());
        gens.sort();
        gens.dedup();
        if distortion == 0 {
            return Err(Error::InvalidSpec(
                "distortion bound must be positive".into(),
            ));
        }
        Ok(SubgroupOracle {
            model: model.clone(),
            kind,
            distortion,
            gens,
            letters,
            memo: Arc::new(Mutex::new(HashMap::new())),
        })
    }

    pub fn cyclic(model: &GroupModel, g: &Word) -> Result<Self> {
        SubgroupOracle::new(model, SubgroupKind::Cyclic(g.clone()), DEFAULT_DISTORTION)
    }

    pub fn trivial(model: &GroupModel) -> Self {
        SubgroupOracle::new(model, SubgroupKind::Trivial, 1).expect("trivial subgroup")
    }

    pub fn whole(model: &GroupModel) -> Self {
        SubgroupOracle::new(model, SubgroupKind::Whole, 1).expect("whole group")
    }

    pub fn kind(&self) -> &SubgroupKind {
        &self.kind
    }

    pub fn distortion(&self) -> usize {
        self.distortion
    }

    pub fn model(&self) -> &GroupModel {
        &self.model
    }

    pub fn describe(&self) -> String {
        let al = self.model.alphabet();
        match &self.kind {
            SubgroupKind::Cyclic(w) => {
                format!(
                    "cyclic <{}> (distortion {})",
                    al.format_word(w),
                    self.distortion
                )
            }
            SubgroupKind::Generated(ws) => format!(
                "generated by {} (distortion {})",
                ws.iter()
                    .map(|w| al.format_word(w))
                    .collect::<Vec<_>>()
                    .join(", "),
                self.distortion
            ),
            SubgroupKind::Factor(ls) => format!(
                "factor <{}>",
                ls.iter()
                    .map(|&a| al.name(a))
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
            SubgroupKind::Trivial => "trivial".into(),
            SubgroupKind::Whole => "whole group".into(),
        }
    }

    /// Whether the element with normal form `nf` lies in the subgroup.
    pub fn contains(&self, nf: &Word) -> bool {
        if nf.is_empty() {
            return true;
        }
        match &self.kind {
            SubgroupKind::Trivial => false,
            SubgroupKind::Whole => true,
            SubgroupKind::Factor(_) => nf.letters().iter().all(|a| self.letters.contains(a)),
            SubgroupKind::Cyclic(_) | SubgroupKind::Generated(_) => {
                if let Some(&hit) = self.memo.lock().expect("memo lock").get(nf) {
                    return hit;
                }
                let hit = self.search(nf);
                self.memo.lock().expect("memo lock").insert(nf.clone(), hit);
                hit
            }
        }
    }

    /// Breadth-first search over subgroup words of length at most
    /// `distortion * |x|`.
    fn search(&self, x: &Word) -> bool {
        let radius = self.distortion * x.len();
        if let SubgroupKind::Cyclic(_) = self.kind {
            return self.powers(radius).iter().any(|p| p == x);
        }
        let mut seen = HashSet::from([Word::empty()]);
        let mut layer = vec![Word::empty()];
        for _ in 0..radius {
            let mut next = Vec::new();
            for y in &layer {
                for g in &self.gens {
                    let z = self.model.multiply(y, g);
                    if z == *x {
                        return true;
                    }
                    if seen.insert(z.clone()) {
                        next.push(z);
                    }
                }
            }
            if next.is_empty() || seen.len() > self.model.element_budget() {
                break;
            }
            layer = next;
        }
        false
    }

    /// `g^n` for `1 <= |n| <= radius`, skipping repeats for torsion.
    fn powers(&self, radius: usize) -> Vec<Word> {
        let mut out = Vec::new();
        if self.gens.is_empty() {
            return out;
        }
        for g in &self.gens {
            let mut p = Word::empty();
            for _ in 0..radius {
                p = self.model.multiply(&p, g);
                if p.is_empty() {
                    break;
                }
                out.push(p.clone());
            }
        }
        out
    }

    /// Every element of the subgroup of length at most `n`, short-lex sorted
    /// by letter index.
    pub fn elements_within(&self, n: usize) -> Result<Vec<Word>> {
        let mut out: Vec<Word> = match &self.kind {
            SubgroupKind::Trivial => vec![Word::empty()],
            SubgroupKind::Whole => enumerate_ball(&self.model, n)?.iter().cloned().collect(),
            SubgroupKind::Factor(_) => {
                let mut seen = HashSet::from([Word::empty()]);
                let mut layer = vec![Word::empty()];
                for _ in 0..n {
                    let mut next = Vec::new();
                    for y in &layer {
                        for &a in &self.letters {
                            let z = self.model.mul_letter(y, a);
                            if z.len() <= n && seen.insert(z.clone()) {
                                next.push(z);
                            }
                        }
                    }
                    if seen.len() > self.model.element_budget() {
                        return Err(Error::budget(
                            "subgroup elements",
                            self.model.element_budget(),
                        ));
                    }
                    layer = next;
                }
                seen.into_iter().collect()
            }
            SubgroupKind::Cyclic(_) => {
                let mut v: Vec<Word> = self
                    .powers(self.distortion * n)
                    .into_iter()
                    .filter(|p| p.len() <= n)
                    .collect();
                v.push(Word::empty());
                v
            }
            SubgroupKind::Generated(_) => {
                let mut seen = HashSet::from([Word::empty()]);
                let mut layer = vec![Word::empty()];
                for _ in 0..self.distortion * n {
                    let mut next = Vec::new();
                    for y in &layer {
                        for g in &self.gens {
                            let z = self.model.multiply(y, g);
                            if seen.insert(z.clone()) {
                                next.push(z);
                            }
                        }
                    }
                    if seen.len() > self.model.element_budget() {
                        return Err(Error::budget(
                            "subgroup elements",
                            self.model.element_budget(),
                        ));
                    }
                    if next.is_empty() {
                        break;
                    }
                    layer = next;
                }
                seen.into_iter().filter(|h| h.len() <= n).collect()
            }
        };
        out.sort_by(|u, v| u.len().cmp(&v.len()).then_with(|| u.cmp(v)));
        out.dedup();
        Ok(out)
    }

    /// Distance from the element `nf` to the subgroup, if it is at most `k`.
    pub fn distance_within(&self, nf: &Word, k: usize) -> Result<Option<usize>> {
        let mut best: Option<usize> = None;
        for h in self.elements_within(nf.len() + k)? {
            let d = self.model.multiply(&self.model.inverse_nf(&h), nf).len();
            if d <= k && best.is_none_or(|b| d < b) {
                best = Some(d);
            }
        }
        Ok(best)
    }
}

/// The neighborhood machine with the given accept rule.
fn offset_automaton(
    model: &GroupModel,
    h: &SubgroupOracle,
    k: usize,
    only_identity: bool,
) -> Result<Fsa> {
    let ball: Vec<Word> = enumerate_ball(model, k)?.iter().cloned().collect();
    let ids: HashMap<&Word, usize> = ball.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut f = Fsa::new(model.alphabet().clone(), ball.len(), 0);
    for (i, _) in ball.iter().enumerate() {
        f.set_accept(i, !only_identity || i == 0);
    }
    let near = h.elements_within(2 * k + 1)?;
    let letters: Vec<Letter> = model.alphabet().letters().collect();
    if near.len() <= ball.len() {
        // g' = h⁻¹ g ā for h ∈ H, kept when |g'| <= k
        let inverses: Vec<Word> = near.iter().map(|x| model.inverse_nf(x)).collect();
        for (i, g) in ball.iter().enumerate() {
            for &a in &letters {
                let ga = model.mul_letter(g, a);
                for hinv in &inverses {
                    let g2 = model.multiply(hinv, &ga);
                    if let Some(&j) = ids.get(&g2) {
                        f.add_transition(i, a, j);
                    }
                }
            }
        }
    } else {
        let inverses: Vec<Word> = ball.iter().map(|x| model.inverse_nf(x)).collect();
        for (i, g) in ball.iter().enumerate() {
            for &a in &letters {
                let ga = model.mul_letter(g, a);
                for (j, g2inv) in inverses.iter().enumerate() {
                    if h.contains(&model.multiply(&ga, g2inv)) {
                        f.add_transition(i, a, j);
                    }
                }
            }
        }
    }
    Ok(f)
}

/// Words whose Cayley-graph path stays within `k` of `H`. All states accept;
/// the machine is generally nondeterministic.
pub fn neighborhood_automaton(model: &GroupModel, h: &SubgroupOracle, k: usize) -> Result<Fsa> {
    offset_automaton(model, h, k, false)
}

/// `L_{H,k}`: words into `H` whose path stays within `k` of `H`.
pub fn subgroup_word_automaton(model: &GroupModel, h: &SubgroupOracle, k: usize) -> Result<Fsa> {
    offset_automaton(model, h, k, true)
}

/// `L_{H,k} ∩ L(cone)`, deterministic and minimized.
pub fn stable_language_from(
    cone: &Fsa,
    model: &GroupModel,
    h: &SubgroupOracle,
    k: usize,
) -> Result<Fsa> {
    let lhk = subgroup_word_automaton(model, h, k)?;
    Ok(cone.intersect(&lhk)?.minimize())
}

pub fn stable_language(
    model: &GroupModel,
    h: &SubgroupOracle,
    k: usize,
    filter: &WindowFilter,
    m: usize,
) -> Result<Fsa> {
    let cone = build_cone(model, filter, m)?;
    stable_language_from(cone.fsa(), model, h, k)
}

/// `J_H = J_M ∩ L_{H,k}`, deterministic and minimized.
pub fn unique_rep_subgroup_language(
    model: &GroupModel,
    h: &SubgroupOracle,
    k: usize,
    filter: &WindowFilter,
    m: usize,
    order: &SymbolOrder,
) -> Result<Fsa> {
    let j = unique_rep_language(model, filter, m, order, &ShortlexOptions::default())?;
    let lhk = subgroup_word_automaton(model, h, k)?;
    Ok(j.fsa.intersect(&lhk)?.minimize())
}

fn build_cone(model: &GroupModel, filter: &WindowFilter, m: usize) -> Result<ConeAutomaton> {
    let defaults = ShortlexOptions::default();
    Ok(build_with_escalation(
        model,
        m,
        filter,
        defaults.depth_budget,
        defaults.max_escalations,
        None,
    )?
    .0)
}

/// `L_H` up to length `n` by brute force: filtered geodesic words ending in
/// `H`, in short-lex order of letter indices.
pub fn oracle_subgroup_geodesics(
    model: &GroupModel,
    h: &SubgroupOracle,
    filter: &WindowFilter,
    n: usize,
) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    for x in h.elements_within(n)? {
        out.extend(geodesics_to(model, &x, Some(filter))?);
    }
    out.sort_by(|u, v| u.len().cmp(&v.len()).then_with(|| u.cmp(v)));
    Ok(out)
}

/// Words up to length `n` in exactly one of `L(fsa)` and the oracle `L_H`.
pub fn compare_with_oracle(
    fsa: &Fsa,
    model: &GroupModel,
    h: &SubgroupOracle,
    filter: &WindowFilter,
    n: usize,
) -> Result<Vec<Word>> {
    let machine: BTreeSet<Word> = fsa.words_up_to(n)?.into_iter().collect();
    let oracle: BTreeSet<Word> = oracle_subgroup_geodesics(model, h, filter, n)?
        .into_iter()
        .collect();
    let mut diff: Vec<Word> = machine.symmetric_difference(&oracle).cloned().collect();
    diff.sort_by(|u, v| u.len().cmp(&v.len()).then_with(|| u.cmp(v)));
    Ok(diff)
}

#[derive(Debug, Clone, Serialize)]
pub struct KAttempt {
    pub k: usize,
    pub states: usize,
    pub mismatches: usize,
    /// Shortest oracle word the machine misses (or wrongly accepts).
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum KEscalation {
    /// The machine at this `k` matched the oracle at the validation depth.
    Matched { k: usize, attempts: Vec<KAttempt> },
    /// Every `k` up to the cap disagreed with the oracle. This is
    /// inconclusive: it does not show the subgroup is unstable.
    CapHit { cap: usize, attempts: Vec<KAttempt> },
}

impl KEscalation {
    pub fn attempts(&self) -> &[KAttempt] {
        match self {
            KEscalation::Matched { attempts, .. } | KEscalation::CapHit { attempts, .. } => {
                attempts
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            KEscalation::Matched { k, .. } => format!("matched at k = {k}"),
            KEscalation::CapHit { cap, .. } => format!("inconclusive/cap-hit (k <= {cap})"),
        }
    }
}

/// Grows `k` from `k_start` until the stable language matches the oracle
/// `L_H` up to `depth`, or `cap` is passed.
pub fn escalate_k(
    model: &GroupModel,
    h: &SubgroupOracle,
    filter: &WindowFilter,
    m: usize,
    k_start: usize,
    cap: usize,
    depth: usize,
) -> Result<KEscalation> {
    let cone = build_cone(model, filter, m)?;
    let mut attempts = Vec::new();
    for k in k_start..=cap {
        let fsa = stable_language_from(cone.fsa(), model, h, k)?;
        let diff = compare_with_oracle(&fsa, model, h, filter, depth)?;
        attempts.push(KAttempt {
            k,
            states: fsa.num_states(),
            mismatches: diff.len(),
            witness: diff.first().map(|w| model.alphabet().format_word(w)),
        });
        if diff.is_empty() {
            return Ok(KEscalation::Matched { k, attempts });
        }
    }
    Ok(KEscalation::CapHit { cap, attempts })
}

/// Default validation depth for [`escalate_k`] with cap `cap`.
pub fn default_validation_depth(cap: usize) -> usize {
    2 * cap + 2
}

#[derive(Debug, Clone, Serialize)]
pub struct NeighborhoodReport {
    /// Number of live states: the claimed bound on distance to `H`.
    pub bound: usize,
    pub words_checked: usize,
    pub violations: Vec<String>,
}

impl NeighborhoodReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks, for accepted words of length at most `n`, that the word ends in
/// `H` and every vertex of its path is within (live state count) of `H`.
pub fn regularity_neighborhood_bound(
    fsa: &Fsa,
    model: &GroupModel,
    h: &SubgroupOracle,
    n: usize,
) -> Result<NeighborhoodReport> {
    let live = fsa.trim();
    let bound = live.num_states();
    let near = h.elements_within(n + bound)?;
    let inverses: Vec<Word> = near.iter().map(|x| model.inverse_nf(x)).collect();
    let close = |p: &Word| {
        inverses
            .iter()
            .any(|hinv| model.multiply(hinv, p).len() <= bound)
    };
    let al = model.alphabet();
    let words = live.words_up_to(n)?;
    let mut violations = Vec::new();
    for w in &words {
        let end = model.normal_form(w)?;
        if !h.contains(&end) {
            violations.push(format!(
                "`{}` does not end in the subgroup",
                al.format_word(w)
            ));
            continue;
        }
        let mut p = Word::empty();
        for (t, &a) in w.letters().iter().enumerate() {
            p = model.mul_letter(&p, a);
            if !close(&p) {
                violations.push(format!(
                    "`{}`: vertex after {} letters is farther than {bound} from the subgroup",
                    al.format_word(w),
                    t + 1
                ));
                break;
            }
        }
    }
    Ok(NeighborhoodReport {
        bound,
        words_checked: words.len(),
        violations,
    })
}
