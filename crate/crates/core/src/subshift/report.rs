use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::{FollowerAutomaton, ShiftSemigroup, Word};
use crate::error::{Error, Result};
use crate::hull::InverseHull;
use crate::semigroup::{Elem, Unitized, Verdict};
use crate::set::Subset;
use crate::spectrum::Spectrum;
use crate::strings::{is_open, is_string, StringSpace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BridgeEntry {
    pub word: String,
    pub string: usize,
    pub open: bool,
    pub maximal: bool,
    /// The word has the full depth, standing in for an infinite word.
    pub full_length: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WordStringBridge {
    pub entries: Vec<BridgeEntry>,
    pub injective: bool,
    pub surjective: bool,
    /// Some prefix set failed to be a string.
    pub not_a_string: Option<String>,
}

impl WordStringBridge {
    pub fn is_bijection(&self) -> bool {
        self.injective && self.surjective && self.not_a_string.is_none()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WordEval {
    pub value: bool,
    /// Every word the criterion looked at fits within the depth.
    pub within_horizon: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Cardinality {
    Empty,
    Finite(Vec<String>),
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteWitness {
    pub u: Option<String>,
    pub lambda: Vec<String>,
    pub members: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroundUltraReport {
    pub depth: usize,
    pub lambda_bound: usize,
    /// every `F_Λ` is empty or infinite, with no depth limit
    pub empty_or_infinite: Verdict<FiniteWitness>,
    /// every nonempty `θ_u(F_Λ)` is infinite, with no depth limit
    pub constructible_infinite: Verdict<FiniteWitness>,
    /// the sets `E_a`, a a letter, cover the depth-limited semilattice
    pub letter_cover: Verdict<String>,
    /// no ground ultra-characters at this depth; the witness lists them all
    pub no_ground_ultra: Verdict<Vec<String>>,
    /// every ultra-character comes from a word of full length
    pub ultra_from_long_words: Verdict<String>,
    /// The depth-limited conditions disagree with the unlimited ones.
    pub truncation_disagreement: bool,
}

impl ShiftSemigroup {
    pub fn word_string_bridge(&self) -> Result<WordStringBridge> {
        let s = self.semigroup();
        let space = StringSpace::new(s)?;
        let maximal = space.maximal();
        let mut hit = vec![false; space.len()];
        let mut entries = Vec::new();
        let mut injective = true;
        let mut not_a_string = None;
        for (i, w) in self.language().words().iter().enumerate() {
            let prefixes = (1..=w.len()).map(|k| self.elem(&Word(w.0[..k].to_vec())).expect("factor closed"));
            let delta = Subset::from_indices(s.size(), prefixes);
            let name = self.language().render(w);
            if !is_string(s, &delta).holds {
                not_a_string.get_or_insert(name.clone());
                continue;
            }
            let Some(j) = space.find(&delta) else {
                not_a_string.get_or_insert(name.clone());
                continue;
            };
            injective &= !std::mem::replace(&mut hit[j], true);
            entries.push(BridgeEntry {
                word: name,
                string: j,
                open: is_open(s, &delta),
                maximal: maximal.contains(&j),
                full_length: w.len() == self.language().depth(),
            });
            debug_assert_eq!(i + 1, space.top(j));
        }
        Ok(WordStringBridge {
            entries,
            injective,
            surjective: hit.iter().all(|&h| h),
            not_a_string,
        })
    }

    /// `μ ‖ ν` exactly when μ is a prefix of ν.
    pub fn divisibility_is_prefix(&self) -> Verdict<[Elem; 2]> {
        let s = self.semigroup();
        let failure = s.nonzero().find_map(|m| {
            s.nonzero()
                .find(|&n| {
                    let (a, b) = (self.word(m).unwrap(), self.word(n).unwrap());
                    s.divides_elem(m, n) != b.0.starts_with(&a.0)
                })
                .map(|n| [m, n])
        });
        Verdict::from_failure(failure)
    }

    /// Whether `φ_{δ_ω}` is 1 on `u·F_Λ`, read off the words: `u` is a proper
    /// prefix of `ω = uη` and every `tη` is admissible.
    pub fn char_eval_by_word(&self, omega: &Word, u: Option<&Word>, lambda: &[Word]) -> Result<WordEval> {
        let l = self.language();
        let bad = |w: &Word| Error::InadmissibleWord(l.render(w));
        if !l.contains(omega) {
            return Err(bad(omega));
        }
        if let Some(t) = lambda.iter().chain(u).find(|t| !l.contains(t)) {
            return Err(bad(t));
        }
        let k = u.map_or(0, Word::len);
        if u.is_some_and(|u| k >= omega.len() || !omega.0.starts_with(&u.0)) {
            return Ok(WordEval { value: false, within_horizon: true });
        }
        let eta = Word(omega.0[k..].to_vec());
        let mut value = true;
        let mut within_horizon = true;
        for t in lambda.iter().chain(u) {
            let w = t.concat(&eta);
            within_horizon &= w.len() <= l.depth();
            value &= l.admissible(&w);
        }
        Ok(WordEval { value, within_horizon })
    }

    /// Word criterion against the depth-limited spectrum, for every word and
    /// every nonzero constructible set. Returns the cases inside the horizon
    /// that disagree, and how many cases were outside it.
    pub fn char_eval_disagreements(&self, sp: &Spectrum) -> Result<(Vec<(String, usize)>, usize)> {
        let s = self.semigroup();
        let mut bad = Vec::new();
        let mut outside = 0;
        for (i, w) in self.language().words().iter().enumerate() {
            let string = delta_index(self, sp, i + 1)?;
            if sp.is_degenerate_string(string) {
                continue;
            }
            let phi = sp.phi_of_string(string)?;
            for x in sp.lattice().nonzero() {
                let witness = &sp.lattice().get(x).witnesses[0];
                let u = witness.u.elem().map(|e| self.word(e).cloned().expect("nonzero"));
                let mut lambda = Vec::new();
                for t in witness.lambda.iter().filter_map(|t| t.elem()) {
                    match self.word(t) {
                        Some(w) => lambda.push(w.clone()),
                        None => return Err(Error::BadLambda(s.name(t).to_string())),
                    }
                }
                let e = self.char_eval_by_word(w, u.as_ref(), &lambda)?;
                if !e.within_horizon {
                    outside += 1;
                } else if e.value != sp.eval(phi, x) {
                    bad.push((self.language().render(w), x));
                }
            }
        }
        Ok((bad, outside))
    }

    /// Size of `u·F_Λ` with no depth limit, for a language given by
    /// forbidden factors.
    pub fn constructible_infinite(&self, lambda: &[Word], u: Option<&Word>) -> Result<Cardinality> {
        let l = self.language();
        let a = l.automaton().ok_or(Error::ExplicitLanguageUnsupported)?;
        let mut starts = vec![FollowerAutomaton::START];
        for t in lambda.iter().chain(u) {
            match a.run(FollowerAutomaton::START, &t.0) {
                Some(q) if a.is_live(q) => starts.push(q),
                _ => return Ok(Cardinality::Empty),
            }
        }
        let found = product_search(a, starts);
        Ok(match found {
            None => Cardinality::Infinite,
            Some(xs) if xs.is_empty() => Cardinality::Empty,
            Some(mut xs) => {
                let prefix = u.cloned().unwrap_or(Word(Vec::new()));
                xs.sort_by(|a, b| (a.len(), &a.0).cmp(&(b.len(), &b.0)));
                Cardinality::Finite(xs.iter().map(|x| l.render(&prefix.concat(x))).collect())
            }
        })
    }

    pub fn ground_ultra_report(&self, lambda_bound: usize) -> Result<GroundUltraReport> {
        let l = self.language();
        if l.automaton().is_none() {
            return Err(Error::ExplicitLanguageUnsupported);
        }
        let words = l.words();
        let mut first_finite = None;
        let mut first_constructible = None;
        let mut family = Vec::new();
        for size in 1..=lambda_bound.min(words.len()) {
            family.clear();
            family.extend(0..size);
            loop {
                let lambda: Vec<Word> = family.iter().map(|&i| words[i].clone()).collect();
                let names = || lambda.iter().map(|w| l.render(w)).collect::<Vec<_>>();
                if first_finite.is_none() {
                    if let Cardinality::Finite(m) = self.constructible_infinite(&lambda, None)? {
                        first_finite = Some(FiniteWitness { u: None, lambda: names(), members: m });
                    }
                }
                if first_constructible.is_none() {
                    for u in std::iter::once(None).chain(lambda.iter().map(Some)) {
                        if let Cardinality::Finite(m) = self.constructible_infinite(&lambda, u)? {
                            first_constructible = Some(FiniteWitness {
                                u: u.map(|w| l.render(w)),
                                lambda: names(),
                                members: m,
                            });
                            break;
                        }
                    }
                }
                if first_finite.is_some() && first_constructible.is_some() {
                    break;
                }
                if !next_combination(&mut family, words.len()) {
                    break;
                }
            }
        }

        let s = self.semigroup();
        let sp = Spectrum::new(s)?;
        let lattice = sp.lattice();
        let letters: Vec<Subset> = (0..l.spec().alphabet().len() as u8)
            .filter_map(|x| self.elem(&Word(vec![x])))
            .map(|e| sp.theta().map(e).range())
            .collect();
        let uncovered = lattice
            .nonzero()
            .find(|&x| !letters.iter().any(|e| e.intersects(lattice.members(x))))
            .map(|x| format!("{{{}}}", s.set_names(lattice.members(x)).join(",")));
        let ultra = sp.ultra();
        let grounds: Vec<String> =
            ultra.iter().copied().filter(|&c| sp.is_ground(c)).map(|c| sp.char_label(c)).collect();
        let ground = (!grounds.is_empty()).then_some(grounds);
        let mut from_long = Vec::new();
        for (i, w) in words.iter().enumerate() {
            let string = delta_index(self, &sp, i + 1)?;
            if w.len() == l.depth() && !sp.is_degenerate_string(string) {
                from_long.push(sp.phi_of_string(string)?);
            }
        }
        let stray = ultra.iter().copied().find(|c| !from_long.contains(c)).map(|c| sp.char_label(c));

        let verdicts = [
            first_finite.is_none(),
            first_constructible.is_none(),
            uncovered.is_none(),
            ground.is_none(),
            stray.is_none(),
        ];
        Ok(GroundUltraReport {
            depth: l.depth(),
            lambda_bound,
            empty_or_infinite: Verdict::from_failure(first_finite),
            constructible_infinite: Verdict::from_failure(first_constructible),
            letter_cover: Verdict::from_failure(uncovered),
            no_ground_ultra: Verdict::from_failure(ground),
            ultra_from_long_words: Verdict::from_failure(stray),
            truncation_disagreement: verdicts.iter().any(|&v| v != verdicts[0]),
        })
    }
}

fn delta_index(s: &ShiftSemigroup, sp: &Spectrum, e: Elem) -> Result<usize> {
    let delta = s.semigroup().divisors(e)?;
    sp.strings().find(&delta).ok_or(Error::NoWitness)
}

/// Accepted words `x ≠ ε` of the product of runs started at `starts`,
/// accepting when every component sits in a live state. `None` when there
/// are infinitely many.
fn product_search(a: &FollowerAutomaton, starts: Vec<usize>) -> Option<Vec<Word>> {
    let accepting = |q: &[usize]| q.iter().all(|&r| a.is_live(r));
    let mut states = vec![starts.clone()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(starts, 0)]);
    let mut edges: Vec<Vec<(u8, usize)>> = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let mut out = Vec::new();
        for x in 0..a.symbols() as u8 {
            let next: Option<Vec<usize>> = states[i].iter().map(|&q| a.step(q, x)).collect();
            if let Some(next) = next {
                let id = *index.entry(next.clone()).or_insert_with(|| {
                    states.push(next);
                    states.len() - 1
                });
                out.push((x, id));
            }
        }
        edges.push(out);
        i += 1;
    }
    // keep states from which an accepting state is reachable
    let n = states.len();
    let mut useful: Vec<bool> = states.iter().map(|q| accepting(q)).collect();
    loop {
        let mut changed = false;
        for q in 0..n {
            if !useful[q] && edges[q].iter().any(|&(_, r)| useful[r]) {
                useful[q] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    // cycle among useful states means infinitely many words
    let mut colour = vec![0u8; n];
    fn cyclic(q: usize, edges: &[Vec<(u8, usize)>], useful: &[bool], colour: &mut [u8]) -> bool {
        colour[q] = 1;
        for &(_, r) in &edges[q] {
            if !useful[r] {
                continue;
            }
            if colour[r] == 1 || (colour[r] == 0 && cyclic(r, edges, useful, colour)) {
                return true;
            }
        }
        colour[q] = 2;
        false
    }
    if useful[0] && cyclic(0, &edges, &useful, &mut colour) {
        return None;
    }
    let mut found = Vec::new();
    let mut stack = vec![(0usize, Vec::new())];
    while let Some((q, w)) = stack.pop() {
        if !w.is_empty() && accepting(&states[q]) {
            found.push(Word(w.clone()));
        }
        for &(x, r) in &edges[q] {
            if useful[r] {
                let mut v = w.clone();
                v.push(x);
                stack.push((r, v));
            }
        }
    }
    Some(found)
}

/// Steps through increasing index sequences over `0..n`.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Every nonzero hull element has a single `(u, F_Λ, v)` among its normal forms.
pub fn normal_form_uniqueness(hull: &InverseHull) -> Verdict<usize> {
    let theta = hull.theta();
    let failure = hull.elements().iter().position(|h| {
        if h.map.is_empty() {
            return false;
        }
        let keys: BTreeMap<(Unitized, Unitized), Vec<Option<Subset>>> =
            h.witnesses.iter().fold(BTreeMap::new(), |mut acc, w| {
                let f = theta.f_lambda(&w.lambda).ok().map(|(f, _)| f);
                acc.entry((w.u, w.v)).or_default().push(f);
                acc
            });
        keys.len() > 1 || keys.values().any(|fs| fs.iter().any(|f| *f != fs[0]))
    });
    Verdict::from_failure(failure)
}
