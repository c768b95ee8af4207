//! Symbols, alphabets and words.
//!
//! A [`Letter`] is an index into an [`Alphabet`]. The alphabet fixes the
//! symbol names, the inverse pairing `a <-> a^-1`, and the default total order
//! on symbols (index order). Words are plain letter sequences; they carry no
//! reference to their alphabet.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter(pub u16);

impl Letter {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, a: Letter) {
        self.0.push(a);
    }

    pub fn pop(&mut self) -> Option<Letter> {
        self.0.pop()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn appended(&self, a: Letter) -> Word {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        out.extend_from_slice(&self.0);
        out.push(a);
        Word(out)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        out.extend_from_slice(&self.0);
        out.extend_from_slice(&other.0);
        Word(out)
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n].to_vec())
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    pub fn repeat(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    /// Formal inverse: reversed, each letter replaced by its inverse.
    pub fn inverse(&self, alphabet: &Alphabet) -> Word {
        Word(self.0.iter().rev().map(|&a| alphabet.inverse(a)).collect())
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Finite symmetric generating set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alphabet {
    names: Vec<String>,
    inverse: Vec<Letter>,
}

impl Alphabet {
    /// Builds an alphabet from names and an inverse table. The table must be
    /// an involution; a symbol may be its own inverse.
    pub fn new(names: Vec<String>, inverse: Vec<usize>) -> Result<Self> {
        if names.len() != inverse.len() {
            return Err(Error::InvalidSpec("inverse table length mismatch".into()));
        }
        if names.len() > u16::MAX as usize {
            return Err(Error::InvalidSpec("alphabet too large".into()));
        }
        for (i, &j) in inverse.iter().enumerate() {
            if j >= names.len() || inverse[j] != i {
                return Err(Error::InvalidSpec(format!(
                    "inverse pairing is not an involution at `{}`",
                    names[i]
                )));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for n in &names {
            if n.is_empty() || n.chars().any(char::is_whitespace) {
                return Err(Error::InvalidSpec(format!("bad symbol name `{n}`")));
            }
            if !seen.insert(n.as_str()) {
                return Err(Error::InvalidSpec(format!("duplicate symbol `{n}`")));
            }
        }
        Ok(Alphabet {
            names,
            inverse: inverse.into_iter().map(|j| Letter(j as u16)).collect(),
        })
    }

    /// Alphabet `g, g^-1` for each generator name, in that order.
    pub fn from_generators<S: AsRef<str>>(gens: &[S]) -> Result<Self> {
        let mut names = Vec::with_capacity(gens.len() * 2);
        let mut inverse = Vec::with_capacity(gens.len() * 2);
        for (i, g) in gens.iter().enumerate() {
            names.push(g.as_ref().to_string());
            names.push(format!("{}^-1", g.as_ref()));
            inverse.push(2 * i + 1);
            inverse.push(2 * i);
        }
        Alphabet::new(names, inverse)
    }

    /// Alphabet of ordered pairs `(a,b)`; pair `(a,b)` has index `a * n + b`.
    pub fn pairs(base: &Alphabet) -> Alphabet {
        let n = base.len();
        let mut names = Vec::with_capacity(n * n);
        let mut inverse = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                names.push(format!("({},{})", base.names[a], base.names[b]));
                inverse.push(Letter(
                    (base.inverse[a].index() * n + base.inverse[b].index()) as u16,
                ));
            }
        }
        Alphabet { names, inverse }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.names.len()).map(|i| Letter(i as u16))
    }

    pub fn name(&self, a: Letter) -> &str {
        &self.names[a.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    #[inline]
    pub fn inverse(&self, a: Letter) -> Letter {
        self.inverse[a.index()]
    }

    pub fn inverse_table(&self) -> Vec<usize> {
        self.inverse.iter().map(|a| a.index()).collect()
    }

    pub fn contains(&self, a: Letter) -> bool {
        a.index() < self.names.len()
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.letters().iter().find(|a| !self.contains(**a)) {
            Some(a) => Err(Error::UnknownSymbol(format!("#{}", a.0))),
            None => Ok(()),
        }
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.lookup(name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    fn lookup(&self, token: &str) -> Option<Letter> {
        if let Some(i) = self.names.iter().position(|n| n == token) {
            return Some(Letter(i as u16));
        }
        // a⁻¹ and A as aliases for a^-1
        if let Some(base) = token.strip_suffix("⁻¹") {
            return self.lookup(&format!("{base}^-1"));
        }
        let mut chars = token.chars();
        if let (Some(c), None) = (chars.next(), chars.next()) {
            if c.is_uppercase() {
                let lower: String = c.to_lowercase().collect();
                return self.lookup(&format!("{lower}^-1"));
            }
        }
        None
    }

    /// Parses a word. Tokens are whitespace separated; a token that is not a
    /// symbol name is split greedily into the longest matching names, so
    /// `"ab a^-1"` and `"a b a⁻¹"` parse alike. `ε` and the empty string are
    /// the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut out = Vec::new();
        for token in text.split_whitespace() {
            if token == "ε" {
                continue;
            }
            if let Some(a) = self.lookup(token) {
                out.push(a);
                continue;
            }
            let chars: Vec<(usize, char)> = token.char_indices().collect();
            let mut pos = 0;
            while pos < chars.len() {
                let start = chars[pos].0;
                let mut found = None;
                for end in (pos + 1..=chars.len()).rev() {
                    let stop = chars.get(end).map_or(token.len(), |c| c.0);
                    if let Some(a) = self.lookup(&token[start..stop]) {
                        found = Some((a, end));
                        break;
                    }
                }
                match found {
                    Some((a, end)) => {
                        out.push(a);
                        pos = end;
                    }
                    None => return Err(Error::UnknownSymbol(token[start..].to_string())),
                }
            }
        }
        Ok(Word(out))
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "ε".to_string();
        }
        w.letters()
            .iter()
            .map(|&a| self.names.get(a.index()).map_or("?", String::as_str))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A total order on the symbols of an alphabet, used for lexicographic
/// comparisons. `rank[a]` is the position of letter `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolOrder {
    rank: Vec<usize>,
}

impl SymbolOrder {
    /// Index order of the alphabet.
    pub fn natural(alphabet: &Alphabet) -> Self {
        SymbolOrder {
            rank: (0..alphabet.len()).collect(),
        }
    }

    /// Order given as a list of symbol names, smallest first. Every symbol
    /// must appear exactly once.
    pub fn from_names<S: AsRef<str>>(alphabet: &Alphabet, names: &[S]) -> Result<Self> {
        if names.len() != alphabet.len() {
            return Err(Error::InvalidSpec(format!(
                "order lists {} symbols, alphabet has {}",
                names.len(),
                alphabet.len()
            )));
        }
        let mut rank = vec![usize::MAX; alphabet.len()];
        for (pos, n) in names.iter().enumerate() {
            let a = alphabet.letter(n.as_ref())?;
            if rank[a.index()] != usize::MAX {
                return Err(Error::InvalidSpec(format!(
                    "symbol `{}` listed twice",
                    n.as_ref()
                )));
            }
            rank[a.index()] = pos;
        }
        Ok(SymbolOrder { rank })
    }

    #[inline]
    pub fn rank(&self, a: Letter) -> usize {
        self.rank[a.index()]
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    /// Short-lex comparison: length first, then lexicographic by rank.
    pub fn shortlex_cmp(&self, u: &Word, v: &Word) -> std::cmp::Ordering {
        u.len().cmp(&v.len()).then_with(|| {
            u.letters()
                .iter()
                .map(|&a| self.rank(a))
                .cmp(v.letters().iter().map(|&a| self.rank(a)))
        })
    }
}

/// Display adapter pairing a word with its alphabet.
pub struct Spelled<'a>(pub &'a Alphabet, pub &'a Word);

impl fmt::Display for Spelled<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.format_word(self.1))
    }
}
