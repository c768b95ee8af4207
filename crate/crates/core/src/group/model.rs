use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter, Word};

/// Default cap on the number of elements (or words) a single enumeration may
/// produce before it fails with `BudgetExceeded`.
pub const DEFAULT_ELEMENT_BUDGET: usize = 2_000_000;

/// A finitely generated group with a solvable word problem and computable
/// geodesic normal forms.
///
/// Elements are represented by their normal form, a geodesic word that is
/// canonical for the element. All operations below assume their `nf`
/// arguments are normal forms produced by this model.
#[derive(Debug, Clone)]
pub struct GroupModel {
    alphabet: Alphabet,
    kind: Kind,
    element_budget: usize,
}

#[derive(Debug, Clone)]
enum Kind {
    Free,
    Abelian,
    /// `commutes[i][j]` for generator indices.
    Raag {
        commutes: Vec<Vec<bool>>,
    },
    FreeProduct(Arc<Factors>),
    DirectProduct(Arc<Factors>),
    Finite(Arc<FiniteGroup>),
}

#[derive(Debug)]
struct Factors {
    models: Vec<GroupModel>,
    offsets: Vec<u16>,
    /// Global letter -> (factor, local letter).
    owner: Vec<(usize, Letter)>,
}

impl Factors {
    fn new(models: Vec<GroupModel>) -> Result<(Self, Alphabet)> {
        let mut names = Vec::new();
        let mut inverse = Vec::new();
        let mut offsets = Vec::new();
        let mut owner = Vec::new();
        for (fi, m) in models.iter().enumerate() {
            let off = names.len();
            offsets.push(off as u16);
            for a in m.alphabet.letters() {
                names.push(m.alphabet.name(a).to_string());
                inverse.push(off + m.alphabet.inverse(a).index());
                owner.push((fi, a));
            }
        }
        let alphabet = Alphabet::new(names, inverse)?;
        Ok((
            Factors {
                models,
                offsets,
                owner,
            },
            alphabet,
        ))
    }

    fn global(&self, factor: usize, local: Letter) -> Letter {
        Letter(self.offsets[factor] + local.0)
    }

    fn local_word(&self, letters: &[Letter]) -> Word {
        letters.iter().map(|&a| self.owner[a.index()].1).collect()
    }
}

#[derive(Debug)]
struct FiniteGroup {
    /// Element of each letter.
    letter_element: Vec<usize>,
    table: Vec<Vec<usize>>,
    /// Shortlex-least geodesic word of each element.
    words: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl GroupModel {
    /// Free group on the given generators.
    pub fn free<S: AsRef<str>>(generators: &[S]) -> Result<Self> {
        Ok(Self::with_kind(
            Alphabet::from_generators(generators)?,
            Kind::Free,
        ))
    }

    /// Free abelian group `Z^n` on the given generators.
    pub fn abelian<S: AsRef<str>>(generators: &[S]) -> Result<Self> {
        Ok(Self::with_kind(
            Alphabet::from_generators(generators)?,
            Kind::Abelian,
        ))
    }

    /// Right-angled Artin group; `edges` lists commuting generator pairs.
    pub fn raag<S: AsRef<str>>(generators: &[S], edges: &[(S, S)]) -> Result<Self> {
        let alphabet = Alphabet::from_generators(generators)?;
        let n = generators.len();
        let gen_index = |name: &str| {
            generators
                .iter()
                .position(|g| g.as_ref() == name)
                .ok_or_else(|| Error::InvalidSpec(format!("unknown generator `{name}`")))
        };
        let mut commutes = vec![vec![false; n]; n];
        for (x, y) in edges {
            let (i, j) = (gen_index(x.as_ref())?, gen_index(y.as_ref())?);
            if i == j {
                return Err(Error::InvalidSpec(format!(
                    "commutation edge `{}` is a loop",
                    x.as_ref()
                )));
            }
            commutes[i][j] = true;
            commutes[j][i] = true;
        }
        Ok(Self::with_kind(alphabet, Kind::Raag { commutes }))
    }

    pub fn free_product(factors: Vec<GroupModel>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidSpec("free product needs a factor".into()));
        }
        let (f, alphabet) = Factors::new(factors)?;
        Ok(Self::with_kind(alphabet, Kind::FreeProduct(Arc::new(f))))
    }

    pub fn direct_product(factors: Vec<GroupModel>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidSpec("direct product needs a factor".into()));
        }
        let (f, alphabet) = Factors::new(factors)?;
        Ok(Self::with_kind(alphabet, Kind::DirectProduct(Arc::new(f))))
    }

    /// Finite group from a multiplication table (`table[x][y] = x*y`, identity
    /// at index 0) and named generating elements. A generator of order two
    /// becomes a single self-inverse symbol; any other generator `g` yields
    /// symbols `g` and `g^-1`.
    pub fn finite<S: AsRef<str>>(
        table: Vec<Vec<usize>>,
        generators: &[(S, usize)],
    ) -> Result<Self> {
        let n = table.len();
        if n == 0
            || table
                .iter()
                .any(|row| row.len() != n || row.iter().any(|&x| x >= n))
        {
            return Err(Error::InvalidSpec(
                "multiplication table must be square".into(),
            ));
        }
        for (x, row) in table.iter().enumerate() {
            if table[0][x] != x || row[0] != x {
                return Err(Error::InvalidSpec("element 0 must be the identity".into()));
            }
        }
        let inv_of = |x: usize| (0..n).find(|&y| table[x][y] == 0);
        let mut names = Vec::new();
        let mut inverse = Vec::new();
        let mut letter_element = Vec::new();
        for (name, elem) in generators {
            let elem = *elem;
            if elem >= n {
                return Err(Error::InvalidSpec(format!(
                    "generator element {elem} out of range"
                )));
            }
            let inv = inv_of(elem)
                .ok_or_else(|| Error::InvalidSpec("table is not a group (no inverse)".into()))?;
            let i = names.len();
            if inv == elem {
                names.push(name.as_ref().to_string());
                inverse.push(i);
                letter_element.push(elem);
            } else {
                names.push(name.as_ref().to_string());
                names.push(format!("{}^-1", name.as_ref()));
                inverse.push(i + 1);
                inverse.push(i);
                letter_element.push(elem);
                letter_element.push(inv);
            }
        }
        let alphabet = Alphabet::new(names, inverse)?;

        // BFS in letter order visits elements with their shortlex-least words.
        let mut words: Vec<Option<Word>> = vec![None; n];
        words[0] = Some(Word::empty());
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let wx = words[x].clone().expect("queued elements have words");
            for a in alphabet.letters() {
                let y = table[x][letter_element[a.index()]];
                if words[y].is_none() {
                    words[y] = Some(wx.appended(a));
                    queue.push_back(y);
                }
            }
        }
        let words: Vec<Word> = words
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(|| Error::InvalidSpec("generators do not generate the group".into()))?;
        let index = words
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        Ok(Self::with_kind(
            alphabet,
            Kind::Finite(Arc::new(FiniteGroup {
                letter_element,
                table,
                words,
                index,
            })),
        ))
    }

    fn with_kind(alphabet: Alphabet, kind: Kind) -> Self {
        GroupModel {
            alphabet,
            kind,
            element_budget: DEFAULT_ELEMENT_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.element_budget = budget;
        self
    }

    pub fn element_budget(&self) -> usize {
        self.element_budget
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            Kind::Free => "free",
            Kind::Abelian => "abelian",
            Kind::Raag { .. } => "raag",
            Kind::FreeProduct(_) => "free_product",
            Kind::DirectProduct(_) => "direct_product",
            Kind::Finite(_) => "finite",
        }
    }

    pub fn is_finite(&self) -> bool {
        match &self.kind {
            Kind::Finite(_) => true,
            Kind::DirectProduct(f) => f.models.iter().all(GroupModel::is_finite),
            Kind::FreeProduct(f) => f.models.len() == 1 && f.models[0].is_finite(),
            _ => self.alphabet.is_empty(),
        }
    }

    /// Normal form of `nf * a`.
    pub fn mul_letter(&self, nf: &Word, a: Letter) -> Word {
        match &self.kind {
            Kind::Free => {
                let mut out = nf.clone();
                if out.last() == Some(self.alphabet.inverse(a)) {
                    out.pop();
                } else {
                    out.push(a);
                }
                out
            }
            Kind::Abelian => {
                let rank = self.alphabet.len() / 2;
                let mut exps = vec![0i64; rank];
                for &b in nf.letters().iter().chain(std::iter::once(&a)) {
                    let g = b.index() / 2;
                    exps[g] += if b.index() % 2 == 0 { 1 } else { -1 };
                }
                abelian_word(&exps)
            }
            Kind::Raag { commutes } => {
                let mut letters = nf.letters().to_vec();
                raag_append(&mut letters, a, &self.alphabet, commutes);
                Word::from_letters(raag_lex_normal(&letters, commutes))
            }
            Kind::FreeProduct(f) => {
                let (fi, local) = f.owner[a.index()];
                let letters = nf.letters();
                // last syllable = maximal suffix from one factor
                let start = letters
                    .iter()
                    .rposition(|b| f.owner[b.index()].0 != fi)
                    .map_or(0, |p| p + 1);
                let mut out = letters[..start].to_vec();
                let syllable = f.local_word(&letters[start..]);
                let updated = f.models[fi].mul_letter(&syllable, local);
                out.extend(updated.letters().iter().map(|&b| f.global(fi, b)));
                Word::from_letters(out)
            }
            Kind::DirectProduct(f) => {
                let (fi, local) = f.owner[a.index()];
                let letters = nf.letters();
                let start = letters
                    .iter()
                    .position(|b| f.owner[b.index()].0 >= fi)
                    .unwrap_or(letters.len());
                let end = letters
                    .iter()
                    .position(|b| f.owner[b.index()].0 > fi)
                    .unwrap_or(letters.len());
                let part = f.local_word(&letters[start..end]);
                let updated = f.models[fi].mul_letter(&part, local);
                let mut out = letters[..start].to_vec();
                out.extend(updated.letters().iter().map(|&b| f.global(fi, b)));
                out.extend_from_slice(&letters[end..]);
                Word::from_letters(out)
            }
            Kind::Finite(g) => {
                let x = g.index[nf];
                let y = g.table[x][g.letter_element[a.index()]];
                g.words[y].clone()
            }
        }
    }

    /// Normal form of `nf * w` for an arbitrary word `w`.
    pub fn mul_word(&self, nf: &Word, w: &Word) -> Word {
        w.letters()
            .iter()
            .fold(nf.clone(), |acc, &a| self.mul_letter(&acc, a))
    }

    /// Canonical geodesic representative of the element spelled by `w`.
    pub fn normal_form(&self, w: &Word) -> Result<Word> {
        self.alphabet.check_word(w)?;
        Ok(self.mul_word(&Word::empty(), w))
    }

    /// `|w̄|`, the length of a geodesic for the element spelled by `w`.
    pub fn geodesic_length(&self, w: &Word) -> Result<usize> {
        Ok(self.normal_form(w)?.len())
    }

    pub fn is_geodesic(&self, w: &Word) -> Result<bool> {
        Ok(self.geodesic_length(w)? == w.len())
    }

    /// Normal form of the inverse of a normal form.
    pub fn inverse_nf(&self, nf: &Word) -> Word {
        self.mul_word(&Word::empty(), &nf.inverse(&self.alphabet))
    }

    /// Normal form of `x * y` for normal forms `x`, `y`.
    pub fn multiply(&self, x: &Word, y: &Word) -> Word {
        self.mul_word(x, y)
    }

    /// Distance in the Cayley graph between the elements spelled by `u`, `v`.
    pub fn distance(&self, u: &Word, v: &Word) -> Result<usize> {
        let w = u.inverse(&self.alphabet).concat(v);
        self.geodesic_length(&w)
    }

    /// Whether the two letters commute as group elements.
    pub fn letters_commute(&self, a: Letter, b: Letter) -> bool {
        let ab = self.mul_word(&Word::empty(), &Word::from_letters(vec![a, b]));
        let ba = self.mul_word(&Word::empty(), &Word::from_letters(vec![b, a]));
        ab == ba
    }

    /// Factor index of a letter for product models; `None` otherwise.
    pub fn factor_of(&self, a: Letter) -> Option<usize> {
        match &self.kind {
            Kind::FreeProduct(f) | Kind::DirectProduct(f) => Some(f.owner[a.index()].0),
            _ => None,
        }
    }
}

fn abelian_word(exps: &[i64]) -> Word {
    let mut out = Vec::new();
    for (g, &e) in exps.iter().enumerate() {
        let letter = if e >= 0 { 2 * g } else { 2 * g + 1 };
        out.extend(std::iter::repeat_n(
            Letter(letter as u16),
            e.unsigned_abs() as usize,
        ));
    }
    Word::from_letters(out)
}

#[inline]
fn raag_commute(x: Letter, y: Letter, commutes: &[Vec<bool>]) -> bool {
    commutes[x.index() / 2][y.index() / 2]
}

/// Appends `a` to a reduced word, cancelling against the rightmost `a^-1`
/// that can be shuffled to the end.
fn raag_append(letters: &mut Vec<Letter>, a: Letter, alphabet: &Alphabet, commutes: &[Vec<bool>]) {
    let inv = alphabet.inverse(a);
    for i in (0..letters.len()).rev() {
        let b = letters[i];
        if b == inv {
            letters.remove(i);
            return;
        }
        if !raag_commute(a, b, commutes) {
            break;
        }
    }
    letters.push(a);
}

/// Lexicographically least word (by letter index) in the commutation class.
fn raag_lex_normal(letters: &[Letter], commutes: &[Vec<bool>]) -> Vec<Letter> {
    let mut rest = letters.to_vec();
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let mut best: Option<usize> = None;
        for p in 0..rest.len() {
            let movable = rest[..p]
                .iter()
                .all(|&b| raag_commute(rest[p], b, commutes));
            if movable && best.is_none_or(|q| rest[p] < rest[q]) {
                best = Some(p);
            }
        }
        let p = best.expect("the first letter is always movable");
        out.push(rest.remove(p));
    }
    out
}
