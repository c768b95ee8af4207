//! Window filters: local conditions checked on every subword of bounded
//! length. A filtered geodesic language is the set of geodesic words all of
//! whose windows of length `scale()` pass the filter.
//!
//! Shipped filters:
//! - `trivial`: accepts everything (scale 0), giving the full geodesic language;
//! - `syllable:s`: rejects windows with more than `s` consecutive copies of one
//!   letter, i.e. a generator syllable `x^(s+1)`;
//! - `commuting:s`: rejects windows with more than `s` consecutive letters that
//!   pairwise commute in the group (a flat strip in a RAAG).
//!
//! Every shipped filter is subword-closed, so a word passes iff the windows
//! ending at each of its letters pass.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupModel;
use crate::word::{Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FilterSpec {
    Trivial,
    SyllableBound(usize),
    CommutingBlock(usize),
}

impl FromStr for FilterSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n.trim(), Some(p.trim())),
            None => (s.trim(), None),
        };
        let param = || -> Result<usize> {
            let p = param
                .ok_or_else(|| Error::InvalidSpec(format!("filter `{name}` needs a parameter")))?;
            let v: usize = p
                .parse()
                .map_err(|_| Error::InvalidSpec(format!("bad filter parameter `{p}`")))?;
            if v == 0 {
                return Err(Error::InvalidSpec(
                    "filter parameter must be positive".into(),
                ));
            }
            Ok(v)
        };
        match name {
            "trivial" | "none" => Ok(FilterSpec::Trivial),
            "syllable" => Ok(FilterSpec::SyllableBound(param()?)),
            "commuting" => Ok(FilterSpec::CommutingBlock(param()?)),
            other => Err(Error::InvalidSpec(format!("unknown filter `{other}`"))),
        }
    }
}

impl fmt::Display for FilterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FilterSpec::Trivial => write!(f, "trivial"),
            FilterSpec::SyllableBound(s) => write!(f, "syllable:{s}"),
            FilterSpec::CommutingBlock(s) => write!(f, "commuting:{s}"),
        }
    }
}

/// A filter resolved against a concrete group (commutation data is looked up
/// once at construction).
#[derive(Debug, Clone)]
pub struct WindowFilter {
    spec: FilterSpec,
    commutes: Vec<Vec<bool>>,
}

impl WindowFilter {
    pub fn trivial() -> Self {
        WindowFilter {
            spec: FilterSpec::Trivial,
            commutes: Vec::new(),
        }
    }

    pub fn new(spec: FilterSpec, model: &GroupModel) -> Self {
        let commutes = match spec {
            FilterSpec::CommutingBlock(_) => {
                let al = model.alphabet();
                al.letters()
                    .map(|a| al.letters().map(|b| model.letters_commute(a, b)).collect())
                    .collect()
            }
            _ => Vec::new(),
        };
        WindowFilter { spec, commutes }
    }

    pub fn spec(&self) -> FilterSpec {
        self.spec
    }

    pub fn is_trivial(&self) -> bool {
        self.spec == FilterSpec::Trivial
    }

    /// Window length `B`; windows of this length (or the whole word, if
    /// shorter) are tested.
    pub fn scale(&self) -> usize {
        match self.spec {
            FilterSpec::Trivial => 0,
            FilterSpec::SyllableBound(s) | FilterSpec::CommutingBlock(s) => s + 1,
        }
    }

    pub fn accepts_window(&self, window: &[Letter]) -> bool {
        match self.spec {
            FilterSpec::Trivial => true,
            FilterSpec::SyllableBound(s) => {
                let mut run = 0;
                let mut prev = None;
                for &a in window {
                    run = if prev == Some(a) { run + 1 } else { 1 };
                    prev = Some(a);
                    if run > s {
                        return false;
                    }
                }
                true
            }
            FilterSpec::CommutingBlock(s) => {
                if window.len() <= s {
                    return true;
                }
                window.windows(s + 1).all(|block| {
                    !block.iter().enumerate().all(|(i, &a)| {
                        block[i + 1..]
                            .iter()
                            .all(|&b| self.commutes[a.index()][b.index()])
                    })
                })
            }
        }
    }

    /// Whether every window of `w` passes.
    pub fn passes(&self, w: &Word) -> bool {
        let b = self.scale();
        if b == 0 {
            return true;
        }
        let letters = w.letters();
        if letters.len() <= b {
            return self.accepts_window(letters);
        }
        letters.windows(b).all(|win| self.accepts_window(win))
    }

    /// Whether `w` passes, given that `w` minus its last letter already does.
    pub fn passes_last(&self, w: &[Letter]) -> bool {
        let b = self.scale();
        if b == 0 {
            return true;
        }
        let start = w.len().saturating_sub(b);
        self.accepts_window(&w[start..])
    }
}

impl fmt::Display for WindowFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.spec.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z2_free_z() -> GroupModel {
        GroupModel::raag(&["a", "b", "c"], &[("a", "b")]).unwrap()
    }

    #[test]
    fn parse_specs() {
        assert_eq!(
            "trivial".parse::<FilterSpec>().unwrap(),
            FilterSpec::Trivial
        );
        assert_eq!(
            "syllable:2".parse::<FilterSpec>().unwrap(),
            FilterSpec::SyllableBound(2)
        );
        assert_eq!(
            "commuting:1".parse::<FilterSpec>().unwrap(),
            FilterSpec::CommutingBlock(1)
        );
        assert!("syllable".parse::<FilterSpec>().is_err());
        assert!("syllable:0".parse::<FilterSpec>().is_err());
        assert!("bogus:1".parse::<FilterSpec>().is_err());
        assert_eq!(FilterSpec::SyllableBound(3).to_string(), "syllable:3");
    }

    #[test]
    fn syllable_bound() {
        let g = z2_free_z();
        let f = WindowFilter::new(FilterSpec::SyllableBound(1), &g);
        let w = |s| g.alphabet().parse_word(s).unwrap();
        assert!(!f.passes(&w("a a")));
        assert!(f.passes(&w("a b")));
        assert!(f.passes(&w("a c a")));
        assert!(!f.passes(&w("b c c a")));
        assert!(f.passes(&Word::empty()));
    }

    #[test]
    fn commuting_block() {
        let g = z2_free_z();
        let f = WindowFilter::new(FilterSpec::CommutingBlock(1), &g);
        let w = |s| g.alphabet().parse_word(s).unwrap();
        assert!(!f.passes(&w("a b")));
        assert!(!f.passes(&w("c c")));
        assert!(f.passes(&w("a c b c a")));
        let f2 = WindowFilter::new(FilterSpec::CommutingBlock(2), &g);
        assert!(f2.passes(&w("a b c")));
        assert!(!f2.passes(&w("a b a c")));
    }

    proptest! {
        // subword closure: every window of an accepted window is accepted
        #[test]
        fn subword_closed(letters in proptest::collection::vec(0u16..6, 0..7), s in 1usize..3, kind in 0u8..2) {
            let g = z2_free_z();
            let spec = if kind == 0 { FilterSpec::SyllableBound(s) } else { FilterSpec::CommutingBlock(s) };
            let f = WindowFilter::new(spec, &g);
            let w: Vec<Letter> = letters.into_iter().map(Letter).collect();
            if f.accepts_window(&w) {
                for i in 0..=w.len() {
                    for j in i..=w.len() {
                        prop_assert!(f.accepts_window(&w[i..j]));
                    }
                }
            }
        }

        #[test]
        fn incremental_check_matches_full(letters in proptest::collection::vec(0u16..6, 1..9), s in 1usize..3) {
            let g = z2_free_z();
            let f = WindowFilter::new(FilterSpec::SyllableBound(s), &g);
            let w: Vec<Letter> = letters.into_iter().map(Letter).collect();
            let full = f.passes(&Word::from_letters(w.clone()));
            let incremental = (1..=w.len()).all(|n| f.passes_last(&w[..n]));
            prop_assert_eq!(full, incremental);
        }
    }
}
