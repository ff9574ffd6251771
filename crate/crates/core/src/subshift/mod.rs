//! Language semigroups of one-sided subshifts, cut off at a finite depth.

mod automaton;
mod report;

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

pub use automaton::FollowerAutomaton;
pub use report::*;

use crate::error::{Error, Result};
use crate::semigroup::{Elem, Semigroup};

/// A finite word, as indices into the alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.0.clone();
        w.extend_from_slice(&other.0);
        Word(w)
    }

    fn shortlex(&self) -> (usize, &[u8]) {
        (self.0.len(), &self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LanguageSource {
    Forbidden(Vec<Word>),
    Explicit(Vec<Word>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct SpecDocument {
    alphabet: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    forbidden: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    words: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    depth: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubshiftSpec {
    alphabet: Vec<char>,
    source: LanguageSource,
    depth: Option<usize>,
}

impl SubshiftSpec {
    pub fn forbidden(alphabet: &str, forbidden: &[&str]) -> Result<Self> {
        Self::from_parts(alphabet.chars().collect(), Some(forbidden), None, None)
    }

    pub fn explicit(alphabet: &str, words: &[&str]) -> Result<Self> {
        Self::from_parts(alphabet.chars().collect(), None, Some(words), None)
    }

    pub fn with_depth(mut self, depth: usize) -> Self {
        self.depth = Some(depth);
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SpecDocument =
            serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        let mut alphabet = Vec::new();
        for a in &doc.alphabet {
            let mut cs = a.chars();
            match (cs.next(), cs.next()) {
                (Some(c), None) => alphabet.push(c),
                _ => return Err(Error::InvalidSpec(format!("symbol {a:?} is not a single character"))),
            }
        }
        fn as_refs(v: &Option<Vec<String>>) -> Option<Vec<&str>> {
            v.as_ref().map(|v| v.iter().map(String::as_str).collect())
        }
        let f = as_refs(&doc.forbidden);
        let w = as_refs(&doc.words);
        Self::from_parts(alphabet, f.as_deref(), w.as_deref(), doc.depth)
    }

    fn from_parts(
        alphabet: Vec<char>,
        forbidden: Option<&[&str]>,
        words: Option<&[&str]>,
        depth: Option<usize>,
    ) -> Result<Self> {
        if alphabet.is_empty() || alphabet.len() > u8::MAX as usize {
            return Err(Error::InvalidSpec("alphabet size".into()));
        }
        let distinct: HashSet<char> = alphabet.iter().copied().collect();
        if distinct.len() != alphabet.len() {
            return Err(Error::InvalidSpec("repeated symbol".into()));
        }
        if depth == Some(0) {
            return Err(Error::InvalidSpec("depth must be at least 1".into()));
        }
        let mut spec = SubshiftSpec {
            alphabet,
            source: LanguageSource::Forbidden(Vec::new()),
            depth,
        };
        let parse = |list: &[&str]| list.iter().map(|w| spec.parse(w)).collect::<Result<Vec<_>>>();
        spec.source = match (forbidden, words) {
            (Some(f), None) => LanguageSource::Forbidden(parse(f)?),
            (None, Some(w)) => LanguageSource::Explicit(parse(w)?),
            _ => return Err(Error::InvalidSpec("give exactly one of forbidden and words".into())),
        };
        Ok(spec)
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn source(&self) -> &LanguageSource {
        &self.source
    }

    pub fn depth(&self) -> Option<usize> {
        self.depth
    }

    pub fn parse(&self, text: &str) -> Result<Word> {
        if text.is_empty() {
            return Err(Error::InvalidSpec("empty word".into()));
        }
        text.chars()
            .map(|c| {
                self.alphabet
                    .iter()
                    .position(|&a| a == c)
                    .map(|i| i as u8)
                    .ok_or_else(|| Error::InvalidSpec(format!("symbol {c:?} not in the alphabet")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn render(&self, w: &Word) -> String {
        w.0.iter().map(|&i| self.alphabet[i as usize]).collect()
    }
}

/// The words of length at most `depth`, in shortlex order.
#[derive(Clone, Debug)]
pub struct Language {
    spec: SubshiftSpec,
    depth: usize,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    automaton: Option<FollowerAutomaton>,
}

impl Language {
    /// `depth` overrides the one in the spec. Explicit languages default to
    /// their longest word.
    pub fn build(spec: &SubshiftSpec, depth: Option<usize>) -> Result<Self> {
        let depth = depth.or(spec.depth);
        if depth == Some(0) {
            return Err(Error::InvalidSpec("depth must be at least 1".into()));
        }
        let k = spec.alphabet.len();
        let (depth, words, automaton) = match &spec.source {
            LanguageSource::Forbidden(forbidden) => {
                let depth = depth.ok_or_else(|| Error::InvalidSpec("missing depth".into()))?;
                let a = FollowerAutomaton::new(k, forbidden);
                let mut words = Vec::new();
                let mut level: Vec<(Word, usize)> = vec![(Word(Vec::new()), FollowerAutomaton::START)];
                for _ in 0..depth {
                    let mut grown = Vec::new();
                    for (w, q) in &level {
                        for x in 0..k as u8 {
                            if let Some(r) = a.step(*q, x).filter(|&r| a.is_live(r)) {
                                let mut v = w.0.clone();
                                v.push(x);
                                grown.push((Word(v), r));
                            }
                        }
                    }
                    words.extend(grown.iter().map(|(w, _)| w.clone()));
                    level = grown;
                }
                (depth, words, Some(a))
            }
            LanguageSource::Explicit(list) => {
                let set: HashSet<&Word> = list.iter().collect();
                if set.len() != list.len() {
                    return Err(Error::InvalidSpec("repeated word".into()));
                }
                for w in list {
                    let n = w.len();
                    for f in [Word(w.0[..n - 1].to_vec()), Word(w.0[1..].to_vec())] {
                        if !f.is_empty() && !set.contains(&f) {
                            return Err(Error::NotFactorClosed(spec.render(&f)));
                        }
                    }
                }
                let longest = list.iter().map(Word::len).max().unwrap_or(1);
                let depth = depth.unwrap_or(longest);
                let mut words: Vec<Word> = list.iter().filter(|w| w.len() <= depth).cloned().collect();
                words.sort_by(|a, b| a.shortlex().cmp(&b.shortlex()));
                (depth, words, None)
            }
        };
        let index = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        Ok(Language { spec: spec.clone(), depth, words, index, automaton })
    }

    pub fn spec(&self) -> &SubshiftSpec {
        &self.spec
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn position(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.index.contains_key(w)
    }

    pub fn automaton(&self) -> Option<&FollowerAutomaton> {
        self.automaton.as_ref()
    }

    /// Membership in the language with no depth limit.
    pub fn admissible(&self, w: &Word) -> bool {
        match &self.automaton {
            Some(a) => a.admissible(&w.0),
            None => self.contains(w),
        }
    }

    pub fn render(&self, w: &Word) -> String {
        self.spec.render(w)
    }

    pub fn names(&self) -> Vec<String> {
        self.words.iter().map(|w| self.render(w)).collect()
    }

    /// Every prefix and suffix of a word is a word.
    pub fn factor_closure_failure(&self) -> Option<Word> {
        self.words.iter().find_map(|w| {
            (1..w.len())
                .flat_map(|k| [Word(w.0[..k].to_vec()), Word(w.0[k..].to_vec())])
                .find(|f| !self.contains(f))
        })
    }
}

pub fn build_language(spec: &SubshiftSpec, depth: Option<usize>) -> Result<Language> {
    Language::build(spec, depth)
}

/// `L ∪ {0}` with concatenation, products falling outside `L` sent to 0.
#[derive(Clone, Debug)]
pub struct ShiftSemigroup {
    language: Language,
    semigroup: Semigroup,
}

impl ShiftSemigroup {
    pub fn new(language: Language) -> Result<Self> {
        let names = language.names();
        let zero = if names.iter().any(|n| n == "0") { "_0" } else { "0" };
        let n = language.len() + 1;
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == 0 || j == 0 {
                            return 0;
                        }
                        let w = language.words[i - 1].concat(&language.words[j - 1]);
                        language.position(&w).map_or(0, |k| k + 1)
                    })
                    .collect()
            })
            .collect();
        let all = std::iter::once(zero.to_string()).chain(names).collect();
        let semigroup = Semigroup::from_table(all, 0, rows)?;
        Ok(ShiftSemigroup { language, semigroup })
    }

    pub fn language(&self) -> &Language {
        &self.language
    }

    pub fn semigroup(&self) -> &Semigroup {
        &self.semigroup
    }

    pub fn elem(&self, w: &Word) -> Option<Elem> {
        self.language.position(w).map(|i| i + 1)
    }

    pub fn word(&self, s: Elem) -> Option<&Word> {
        s.checked_sub(1).map(|i| &self.language.words[i])
    }

    /// Elements named by the words of `text`, e.g. `"ab"`.
    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        let w = self.language.spec.parse(text)?;
        self.elem(&w).ok_or(Error::InadmissibleWord(text.to_string()))
    }
}

pub fn language_semigroup(spec: &SubshiftSpec, depth: Option<usize>) -> Result<ShiftSemigroup> {
    ShiftSemigroup::new(Language::build(spec, depth)?)
}

impl fmt::Display for ShiftSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} words up to length {}", self.language.len(), self.language.depth)
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn no_repetition_language() {
        let l = build_language(&no_repetition(), Some(3)).unwrap();
        assert_eq!(l.len(), 15);
        let by_len = |k| l.words().iter().filter(|w| w.len() == k).count();
        assert_eq!((by_len(1), by_len(2), by_len(3)), (3, 6, 6));
        // avoids every forbidden word but cannot continue
        assert!(!l.contains(&l.spec().parse("aa").unwrap()));
        assert!(l.factor_closure_failure().is_none());
    }

    #[test]
    fn full_shift_language() {
        let l = build_language(&full_shift(), Some(2)).unwrap();
        assert_eq!(l.names(), ["0", "1", "00", "01", "10", "11"]);
        let s = ShiftSemigroup::new(l).unwrap();
        assert_eq!(s.semigroup().size(), 7);
        assert_eq!(s.semigroup().name(0), "_0");
    }

    #[test]
    fn explicit_language() {
        let s = language_semigroup(&four_word_language(), None).unwrap();
        assert_eq!(s.language().names(), ["a", "b", "aa", "ba"]);
        let g = s.semigroup();
        let e = |n| g.index_of(n).unwrap();
        assert_eq!(g.mul(e("b"), e("a")), e("ba"));
        assert_eq!(g.mul(e("a"), e("a")), e("aa"));
        assert_eq!(g.mul(e("a"), e("b")), 0);
        assert_eq!(g.mul(e("aa"), e("a")), 0);
        assert_eq!(g.mul(e("b"), e("b")), 0);
    }

    #[test]
    fn explicit_language_must_be_factor_closed() {
        let spec = SubshiftSpec::explicit("ab", &["a", "ab"]).unwrap();
        assert_eq!(build_language(&spec, None).unwrap_err(), Error::NotFactorClosed("b".into()));
    }

    #[test]
    fn spec_documents() {
        let spec = SubshiftSpec::from_json(r#"{"alphabet":["a","b"],"words":["a","b","aa","ba"]}"#).unwrap();
        assert_eq!(spec, four_word_language());
        let spec = SubshiftSpec::from_json(r#"{"alphabet":["0","1"],"forbidden":["11"],"depth":4}"#).unwrap();
        assert_eq!(spec, golden_mean().with_depth(4));
        for bad in [
            r#"{"alphabet":["ab"],"words":["ab"]}"#,
            r#"{"alphabet":["a"],"words":["b"]}"#,
            r#"{"alphabet":["a"],"words":["a"],"forbidden":["aa"]}"#,
            r#"{"alphabet":["a"],"forbidden":["aa"],"depth":0}"#,
        ] {
            assert!(matches!(SubshiftSpec::from_json(bad), Err(Error::InvalidSpec(_))), "{bad}");
        }
        assert!(matches!(build_language(&golden_mean(), None), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn language_semigroups_are_well_behaved() {
        for (spec, depth) in [
            (no_repetition(), 3),
            (full_shift(), 3),
            (golden_mean(), 4),
            (four_word_language(), 2),
            (short_words(), 2),
        ] {
            let s = language_semigroup(&spec, Some(depth)).unwrap();
            let g = s.semigroup();
            let r = g.classify();
            assert!(r.zero_left_cancellative.holds && r.zero_right_cancellative.holds);
            assert!(g.admits_lcms());
            assert!(r.idempotents.is_empty());
        }
    }

    #[test]
    fn short_words_not_categorical() {
        let s = language_semigroup(&short_words(), None).unwrap();
        let g = s.semigroup();
        let v = g.classify().categorical_at_zero;
        assert!(!v.holds);
        let [a, b, c] = v.witness.unwrap();
        let e = |n| g.index_of(n).unwrap();
        assert_eq!((g.mul(a, b), g.mul(b, c)), (e("ab"), e("bc")));
    }
}
