use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::catoid::Catoid;

/// A word over a finite alphabet. Ordered shortlex: by length, then
/// lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<char>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&word_label(self))
    }
}

pub(crate) fn word_label(w: &Word) -> String {
    if w.is_empty() {
        "eps".to_string()
    } else {
        w.0.iter().collect()
    }
}

pub(crate) fn all_words(alphabet: &[char], max_len: usize) -> Vec<Word> {
    let mut sigma: Vec<char> = alphabet.to_vec();
    sigma.sort_unstable();
    sigma.dedup();
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let next: Vec<Word> = layer
            .iter()
            .flat_map(|w| {
                sigma.iter().map(move |&c| {
                    let mut v = w.0.clone();
                    v.push(c);
                    Word(v)
                })
            })
            .collect();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out.sort();
    out
}

/// All interleavings of `v` and `w` that keep the letter order of each.
pub fn shuffle(v: &[char], w: &[char]) -> BTreeSet<Word> {
    // (av) ∥ (bw) = a(v ∥ bw) ∪ b(av ∥ w), with v ∥ ε = ε ∥ v = {v}
    if v.is_empty() {
        return BTreeSet::from([Word(w.to_vec())]);
    }
    if w.is_empty() {
        return BTreeSet::from([Word(v.to_vec())]);
    }
    let mut out = BTreeSet::new();
    for rest in shuffle(&v[1..], w) {
        let mut x = vec![v[0]];
        x.extend(rest.0);
        out.insert(Word(x));
    }
    for rest in shuffle(v, &w[1..]) {
        let mut x = vec![w[0]];
        x.extend(rest.0);
        out.insert(Word(x));
    }
    out
}

/// The free monoid `A*` cut off at `max_len`.
#[derive(Debug, Clone)]
pub struct FreeMonoid {
    alphabet: Vec<char>,
    max_len: usize,
    words: Vec<Word>,
}

/// The free monoid over `alphabet` with words of length at most `max_len`.
/// Composition is concatenation; `ε` is the only identity.
pub fn free_monoid(alphabet: &[char], max_len: usize) -> FreeMonoid {
    FreeMonoid {
        alphabet: alphabet.to_vec(),
        max_len,
        words: all_words(alphabet, max_len),
    }
}

impl FreeMonoid {
    pub fn word(&self, s: &str) -> Word {
        Word(s.chars().collect())
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }
}

impl Catoid for FreeMonoid {
    type Elem = Word;

    fn name(&self) -> String {
        "words".into()
    }

    fn universe(&self) -> &[Word] {
        &self.words
    }

    fn compose(&self, y: &Word, z: &Word) -> BTreeSet<Word> {
        if y.len() + z.len() <= self.max_len {
            BTreeSet::from([y.concat(z)])
        } else {
            BTreeSet::new()
        }
    }

    fn source(&self, _x: &Word) -> Word {
        Word::empty()
    }

    fn target(&self, _x: &Word) -> Word {
        Word::empty()
    }

    fn decompose2(&self, x: &Word) -> Vec<(Word, Word)> {
        (0..=x.len())
            .map(|i| (Word(x.0[..i].to_vec()), Word(x.0[i..].to_vec())))
            .collect()
    }

    fn escapes(&self, y: &Word, z: &Word) -> bool {
        y.len() + z.len() > self.max_len
    }

    fn is_truncated(&self) -> bool {
        true
    }

    fn label(&self, x: &Word) -> String {
        word_label(x)
    }

    fn enumerate(&self, bound: usize) -> Vec<Word> {
        self.words.iter().filter(|w| w.len() <= bound).cloned().collect()
    }
}

/// Words under the shuffle multioperation, cut off at `max_len`.
#[derive(Debug, Clone)]
pub struct ShuffleCatoid {
    max_len: usize,
    words: Vec<Word>,
}

/// The shuffle catoid over `alphabet`: a catoid that is not a category.
pub fn shuffle_catoid(alphabet: &[char], max_len: usize) -> ShuffleCatoid {
    ShuffleCatoid {
        max_len,
        words: all_words(alphabet, max_len),
    }
}

impl ShuffleCatoid {
    pub fn word(&self, s: &str) -> Word {
        Word(s.chars().collect())
    }
}

/// Splits of `x` into two complementary subsequences, each pair once.
pub(crate) fn unshuffle(x: &Word) -> Vec<(Word, Word)> {
    let n = x.len();
    let mut out = BTreeSet::new();
    for mask in 0u64..(1u64 << n) {
        let mut y = Vec::new();
        let mut z = Vec::new();
        for (i, &c) in x.0.iter().enumerate() {
            if mask >> i & 1 == 1 {
                y.push(c);
            } else {
                z.push(c);
            }
        }
        out.insert((Word(y), Word(z)));
    }
    out.into_iter().collect()
}

impl Catoid for ShuffleCatoid {
    type Elem = Word;

    fn name(&self) -> String {
        "shuffle".into()
    }

    fn universe(&self) -> &[Word] {
        &self.words
    }

    fn compose(&self, y: &Word, z: &Word) -> BTreeSet<Word> {
        if y.len() + z.len() <= self.max_len {
            shuffle(&y.0, &z.0)
        } else {
            BTreeSet::new()
        }
    }

    fn source(&self, _x: &Word) -> Word {
        Word::empty()
    }

    fn target(&self, _x: &Word) -> Word {
        Word::empty()
    }

    fn decompose2(&self, x: &Word) -> Vec<(Word, Word)> {
        unshuffle(x)
    }

    fn escapes(&self, y: &Word, z: &Word) -> bool {
        y.len() + z.len() > self.max_len
    }

    fn is_truncated(&self) -> bool {
        true
    }

    fn label(&self, x: &Word) -> String {
        word_label(x)
    }

    fn enumerate(&self, bound: usize) -> Vec<Word> {
        self.words.iter().filter(|w| w.len() <= bound).cloned().collect()
    }
}
