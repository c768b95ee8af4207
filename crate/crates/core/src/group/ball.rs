use std::collections::HashMap;

use crate::cone::WindowFilter;
use crate::error::{Error, Result};
use crate::group::GroupModel;
use crate::word::Word;

/// The ball `B(e, r)`: every element of length at most `r`, keyed by normal
/// form, with its geodesic length. Spheres keep BFS discovery order.
#[derive(Debug, Clone)]
pub struct Ball {
    radius: usize,
    lengths: HashMap<Word, usize>,
    spheres: Vec<Vec<Word>>,
}

impl Ball {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn contains(&self, nf: &Word) -> bool {
        self.lengths.contains_key(nf)
    }

    pub fn length_of(&self, nf: &Word) -> Option<usize> {
        self.lengths.get(nf).copied()
    }

    pub fn sphere(&self, k: usize) -> &[Word] {
        self.spheres.get(k).map_or(&[], Vec::as_slice)
    }

    /// Elements in order of increasing length.
    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.spheres.iter().flatten()
    }

    pub fn sphere_sizes(&self) -> Vec<usize> {
        self.spheres.iter().map(Vec::len).collect()
    }
}

/// Breadth-first enumeration of `B(e, n)` in the Cayley graph.
pub fn enumerate_ball(model: &GroupModel, n: usize) -> Result<Ball> {
    let budget = model.element_budget();
    let mut lengths = HashMap::from([(Word::empty(), 0usize)]);
    let mut spheres = vec![vec![Word::empty()]];
    for r in 1..=n {
        let mut next = Vec::new();
        for x in &spheres[r - 1] {
            for a in model.alphabet().letters() {
                let y = model.mul_letter(x, a);
                if !lengths.contains_key(&y) {
                    lengths.insert(y.clone(), r);
                    next.push(y);
                    if lengths.len() > budget {
                        return Err(Error::budget("ball enumeration", budget));
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        spheres.push(next);
    }
    Ok(Ball {
        radius: n,
        lengths,
        spheres,
    })
}

/// Every geodesic word of length at most `n` (passing `filter` on every
/// window, when given), in short-lex order of letter indices.
pub fn enumerate_geodesic_words(
    model: &GroupModel,
    n: usize,
    filter: Option<&WindowFilter>,
) -> Result<Vec<Word>> {
    let budget = model.element_budget();
    let mut out = Vec::new();
    let mut word = Vec::new();
    walk_geodesics(model, n, filter, &Word::empty(), &mut word, &mut |w| {
        out.push(Word::from_letters(w.to_vec()));
        if out.len() > budget {
            Err(Error::budget("geodesic word enumeration", budget))
        } else {
            Ok(())
        }
    })?;
    out.sort_by(|u, v| u.len().cmp(&v.len()).then_with(|| u.cmp(v)));
    Ok(out)
}

/// Every geodesic word spelling the element `target` (a normal form) that
/// passes `filter`, in short-lex order of letter indices. A prefix `p` is
/// extended only while `|p̄| + d(p̄, target) = |target|`.
pub fn geodesics_to(
    model: &GroupModel,
    target: &Word,
    filter: Option<&WindowFilter>,
) -> Result<Vec<Word>> {
    let budget = model.element_budget();
    let n = target.len();
    let mut out = Vec::new();
    let mut word = Vec::new();
    // `rest` is the normal form of p̄⁻¹ target
    fn go(
        model: &GroupModel,
        filter: Option<&WindowFilter>,
        rest: &Word,
        n: usize,
        word: &mut Vec<crate::word::Letter>,
        out: &mut Vec<Word>,
        budget: usize,
    ) -> Result<()> {
        if word.len() == n {
            out.push(Word::from_letters(word.clone()));
            if out.len() > budget {
                return Err(Error::budget("geodesic enumeration", budget));
            }
            return Ok(());
        }
        let al = model.alphabet();
        for a in al.letters() {
            // (p a)⁻¹ target = a⁻¹ rest
            let next = model.mul_word(&model.mul_letter(&Word::empty(), al.inverse(a)), rest);
            if next.len() + 1 != rest.len() {
                continue;
            }
            word.push(a);
            if filter.is_none_or(|f| f.passes_last(word)) {
                go(model, filter, &next, n, word, out, budget)?;
            }
            word.pop();
        }
        Ok(())
    }
    go(model, filter, target, n, &mut word, &mut out, budget)?;
    Ok(out)
}

/// Depth-first walk over filtered geodesic words extending `word` (whose
/// normal form is `nf`), calling `visit` on each. Non-geodesic and rejected
/// prefixes are pruned; both conditions are prefix-closed.
fn walk_geodesics(
    model: &GroupModel,
    n: usize,
    filter: Option<&WindowFilter>,
    nf: &Word,
    word: &mut Vec<crate::word::Letter>,
    visit: &mut dyn FnMut(&[crate::word::Letter]) -> Result<()>,
) -> Result<()> {
    visit(word)?;
    if word.len() == n {
        return Ok(());
    }
    for a in model.alphabet().letters() {
        let next = model.mul_letter(nf, a);
        if next.len() != word.len() + 1 {
            continue;
        }
        word.push(a);
        if filter.is_none_or(|f| f.passes_last(word)) {
            walk_geodesics(model, n, filter, &next, word, visit)?;
        }
        word.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::FilterSpec;

    #[test]
    fn ball_sizes() {
        let f2 = GroupModel::free(&["a", "b"]).unwrap();
        assert_eq!(enumerate_ball(&f2, 2).unwrap().len(), 17);
        assert_eq!(enumerate_ball(&f2, 0).unwrap().len(), 1);
        let z2 = GroupModel::abelian(&["x", "y"]).unwrap();
        for n in 0..6 {
            assert_eq!(enumerate_ball(&z2, n).unwrap().len(), 2 * n * n + 2 * n + 1);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let f2 = GroupModel::free(&["a", "b"]).unwrap().with_budget(100);
        assert!(matches!(
            enumerate_ball(&f2, 5),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn geodesic_words_small_cases() {
        let f2 = GroupModel::free(&["a", "b"]).unwrap();
        let words = enumerate_geodesic_words(&f2, 1, None).unwrap();
        let spelled: Vec<String> = words.iter().map(|w| f2.alphabet().format_word(w)).collect();
        assert_eq!(spelled, ["ε", "a", "a^-1", "b", "b^-1"]);

        let z2 = GroupModel::abelian(&["x", "y"]).unwrap();
        let words = enumerate_geodesic_words(&z2, 2, None).unwrap();
        assert_eq!(words.len(), 1 + 4 + 12);
    }

    #[test]
    fn filter_prunes_syllables() {
        let g = GroupModel::raag(&["a", "b", "c"], &[("a", "b")]).unwrap();
        let f = WindowFilter::new(FilterSpec::SyllableBound(1), &g);
        let words = enumerate_geodesic_words(&g, 2, Some(&f)).unwrap();
        let aa = g.alphabet().parse_word("a a").unwrap();
        let ab = g.alphabet().parse_word("a b").unwrap();
        assert!(!words.contains(&aa));
        assert!(words.contains(&ab));
    }

    #[test]
    fn geodesics_to_fixed_element() {
        let z2 = GroupModel::abelian(&["x", "y"]).unwrap();
        let t = z2.alphabet().parse_word("x x y y y").unwrap();
        assert_eq!(geodesics_to(&z2, &t, None).unwrap().len(), 10);
        let all = enumerate_geodesic_words(&z2, 5, None).unwrap();
        let brute = all
            .iter()
            .filter(|w| z2.normal_form(w).unwrap() == t)
            .count();
        assert_eq!(brute, 10);
        let f2 = GroupModel::free(&["a", "b"]).unwrap();
        let ab = f2.alphabet().parse_word("a b").unwrap();
        assert_eq!(geodesics_to(&f2, &ab, None).unwrap(), vec![ab]);
    }

    #[test]
    fn finite_group_ball_saturates() {
        let z3 = GroupModel::finite(
            vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
            &[("t", 1)],
        )
        .unwrap();
        let ball = enumerate_ball(&z3, 5).unwrap();
        assert_eq!(ball.len(), 3);
        assert_eq!(ball.sphere_sizes(), vec![1, 2]);
    }
}
