//! Groupoid of germs of the hull acting on an invariant set of characters.

use std::collections::HashMap;
use std::fmt::Write;

use serde::Serialize;

use super::{CharId, Spectrum};
use crate::error::{Error, Result};
use crate::rep::PartialBijection;
use crate::semigroup::Verdict;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GermArrow {
    /// Index of the first hull element found with this germ.
    pub rep: usize,
    /// The representative cut down to the minimal set of the source.
    pub germ: PartialBijection,
    pub source: CharId,
    pub target: CharId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupoidAxioms {
    pub composition_closed: Verdict<[usize; 2]>,
    pub associative: Verdict<[usize; 3]>,
    pub units: Verdict<usize>,
    pub inverses: Verdict<usize>,
}

impl GroupoidAxioms {
    pub fn holds(&self) -> bool {
        self.composition_closed.holds && self.associative.holds && self.units.holds && self.inverses.holds
    }
}

#[derive(Clone, Debug)]
pub struct GermGroupoid {
    objects: Vec<CharId>,
    arrows: Vec<GermArrow>,
    index: HashMap<(PartialBijection, CharId), usize>,
    units: HashMap<CharId, usize>,
}

impl GermGroupoid {
    pub fn objects(&self) -> &[CharId] {
        &self.objects
    }

    pub fn arrows(&self) -> &[GermArrow] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn unit(&self, c: CharId) -> Option<usize> {
        self.units.get(&c).copied()
    }

    pub fn find(&self, germ: &PartialBijection, source: CharId) -> Option<usize> {
        self.index.get(&(germ.clone(), source)).copied()
    }

    /// `a·b`, defined when the source of `a` is the target of `b`.
    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        let (x, y) = (&self.arrows[a], &self.arrows[b]);
        if x.source != y.target {
            return None;
        }
        self.find(&x.germ.after(&y.germ), y.source)
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        let x = &self.arrows[a];
        self.find(&x.germ.invert(), x.target)
    }

    pub fn isotropy(&self, c: CharId) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| self.arrows[a].source == c && self.arrows[a].target == c)
            .collect()
    }

    pub fn axioms(&self) -> GroupoidAxioms {
        let n = self.len();
        let mut closed = None;
        let mut assoc = None;
        'c: for a in 0..n {
            for b in 0..n {
                if self.arrows[a].source == self.arrows[b].target && self.compose(a, b).is_none() {
                    closed = Some([a, b]);
                    break 'c;
                }
            }
        }
        if closed.is_none() {
            'a: for a in 0..n {
                for b in 0..n {
                    let Some(ab) = self.compose(a, b) else { continue };
                    for c in 0..n {
                        let Some(bc) = self.compose(b, c) else { continue };
                        if self.compose(ab, c) != self.compose(a, bc) {
                            assoc = Some([a, b, c]);
                            break 'a;
                        }
                    }
                }
            }
        }
        let units = (0..n).find(|&a| {
            let x = &self.arrows[a];
            let (Some(l), Some(r)) = (self.unit(x.target), self.unit(x.source)) else {
                return true;
            };
            self.compose(l, a) != Some(a) || self.compose(a, r) != Some(a)
        });
        let inverses = (0..n).find(|&a| {
            let x = &self.arrows[a];
            match self.inverse(a) {
                Some(i) => {
                    self.compose(i, a) != self.unit(x.source) || self.compose(a, i) != self.unit(x.target)
                }
                None => true,
            }
        });
        GroupoidAxioms {
            composition_closed: Verdict::from_failure(closed),
            associative: Verdict::from_failure(assoc),
            units: Verdict::from_failure(units),
            inverses: Verdict::from_failure(inverses),
        }
    }

    pub fn to_dot(&self, spectrum: &Spectrum) -> String {
        let s = spectrum.semigroup();
        let mut out = String::from("digraph germs {\n");
        for &c in &self.objects {
            let _ = writeln!(out, "  c{c} [label=\"{}\"];", spectrum.char_label(c));
        }
        for (a, x) in self.arrows.iter().enumerate() {
            if self.unit(x.source) == Some(a) {
                continue;
            }
            let label = spectrum.hull().elements()[x.rep]
                .witnesses
                .first()
                .map(|w| w.render(s))
                .unwrap_or_else(|| format!("h{}", x.rep));
            let _ = writeln!(out, "  c{} -> c{} [label=\"{label}\"];", x.source, x.target);
        }
        out.push_str("}\n");
        out
    }
}

impl Spectrum {
    /// Germs `[h, φ]` for `φ ∈ Y`; `Y` must be invariant under the hull.
    pub fn germ_groupoid(&self, objects: &[CharId]) -> Result<GermGroupoid> {
        let mut objects = objects.to_vec();
        objects.sort_unstable();
        objects.dedup();
        let mut arrows = Vec::new();
        let mut index = HashMap::new();
        for (k, h) in self.hull().elements().iter().enumerate() {
            for &c in &objects {
                let Some(target) = self.hull_act(&h.map, c) else { continue };
                if objects.binary_search(&target).is_err() {
                    return Err(Error::NotInvariant(format!(
                        "{} moves {} to {}",
                        h.witnesses.first().map(|w| w.render(self.semigroup())).unwrap_or_else(|| format!("h{k}")),
                        self.char_label(c),
                        self.char_label(target)
                    )));
                }
                let germ = h.map.restrict(self.min_set(c));
                index.entry((germ.clone(), c)).or_insert_with(|| {
                    arrows.push(GermArrow { rep: k, germ, source: c, target });
                    arrows.len() - 1
                });
            }
        }
        let mut units = HashMap::new();
        for &c in &objects {
            let id = PartialBijection::identity(self.min_set(c));
            if let Some(&a) = index.get(&(id, c)) {
                units.insert(c, a);
            }
        }
        Ok(GermGroupoid { objects, arrows, index, units })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::fixtures::*;

    #[test]
    fn germs_over_unital_chain() {
        let c = unital_chain();
        let sp = Spectrum::new(&c).unwrap();
        let all: Vec<CharId> = sp.characters().collect();
        let g = sp.germ_groupoid(&all).unwrap();
        assert!(g.axioms().holds());
        assert_eq!(g.units.len(), all.len());
        let ultra = sp.ultra();
        let gu = sp.germ_groupoid(&ultra).unwrap();
        assert!(gu.axioms().holds());
        assert!(gu.len() <= g.len());
        assert!(g.to_dot(&sp).starts_with("digraph germs {"));
    }

    #[test]
    fn non_invariant_set_is_rejected() {
        let w = four_words();
        let sp = Spectrum::new(&w).unwrap();
        let grounds: Vec<CharId> = sp.characters().filter(|&c| sp.is_ground(c)).collect();
        assert!(matches!(sp.germ_groupoid(&grounds), Err(Error::NotInvariant(_))));
    }
}
