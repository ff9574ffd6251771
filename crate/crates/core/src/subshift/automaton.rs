use std::collections::HashMap;

use super::Word;

/// Deterministic automaton over the last `m - 1` symbols, where `m` is the
/// longest forbidden factor.
#[derive(Clone, Debug)]
pub struct FollowerAutomaton {
    symbols: usize,
    states: Vec<Word>,
    next: Vec<Vec<Option<usize>>>,
    live: Vec<bool>,
}

impl FollowerAutomaton {
    pub const START: usize = 0;

    pub fn new(symbols: usize, forbidden: &[Word]) -> Self {
        let memory = forbidden.iter().map(Word::len).max().unwrap_or(1).saturating_sub(1);
        let clean = |w: &[u8]| (1..=w.len()).all(|k| !forbidden.iter().any(|f| f.0 == w[w.len() - k..]));
        let mut states = vec![Word(Vec::new())];
        let mut index: HashMap<Word, usize> = HashMap::from([(Word(Vec::new()), 0)]);
        let mut next = Vec::new();
        let mut i = 0;
        while i < states.len() {
            let mut row = Vec::with_capacity(symbols);
            for x in 0..symbols as u8 {
                let mut w = states[i].0.clone();
                w.push(x);
                if !clean(&w) {
                    row.push(None);
                    continue;
                }
                let tail = Word(w[w.len().saturating_sub(memory)..].to_vec());
                let id = *index.entry(tail.clone()).or_insert_with(|| {
                    states.push(tail);
                    states.len() - 1
                });
                row.push(Some(id));
            }
            next.push(row);
            i += 1;
        }
        // peel off states with no way to continue
        let mut live = vec![true; states.len()];
        loop {
            let mut changed = false;
            for q in 0..states.len() {
                if live[q] && !next[q].iter().flatten().any(|&r| live[r]) {
                    live[q] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        FollowerAutomaton { symbols, states, next, live }
    }

    pub fn symbols(&self) -> usize {
        self.symbols
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state(&self, q: usize) -> &Word {
        &self.states[q]
    }

    pub fn step(&self, q: usize, x: u8) -> Option<usize> {
        self.next[q][x as usize]
    }

    pub fn run(&self, q: usize, w: &[u8]) -> Option<usize> {
        w.iter().try_fold(q, |q, &x| self.step(q, x))
    }

    /// Some infinite word can be read from `q`.
    pub fn is_live(&self, q: usize) -> bool {
        self.live[q]
    }

    /// `w` avoids the forbidden factors and extends to an infinite word.
    pub fn admissible(&self, w: &[u8]) -> bool {
        !w.is_empty() && self.run(Self::START, w).is_some_and(|q| self.live[q])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_mean() {
        let a = FollowerAutomaton::new(2, &[Word(vec![1, 1])]);
        assert_eq!(a.len(), 3);
        assert!(a.admissible(&[1, 0, 1]));
        assert!(!a.admissible(&[1, 1]));
        assert!(!a.admissible(&[]));
    }

    #[test]
    fn dead_ends_are_not_live() {
        // after "ab" nothing may follow
        let forbidden = [Word(vec![1, 0]), Word(vec![1, 1]), Word(vec![0, 0])];
        let a = FollowerAutomaton::new(2, &forbidden);
        assert!(!a.admissible(&[0]));
        assert!(!a.admissible(&[0, 1]));
    }
}
