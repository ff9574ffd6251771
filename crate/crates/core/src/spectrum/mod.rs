//! Characters of the semilattice of constructible sets and the maps
//! relating them to strings.
//!
//! A character of a finite semilattice is determined by the least set it
//! sends to 1, so characters are stored as an index into the semilattice.

mod dual;
mod germs;

pub use dual::*;
pub use germs::*;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hull::{e_one_ideal, InverseHull, Semilattice};
use crate::rep::Representation;
use crate::semigroup::{Elem, Semigroup, Verdict};
use crate::set::Subset;
use crate::strings::{classify_element, interior, is_open, StringSpace};

/// Character index.
pub type CharId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterClass {
    pub ultra: bool,
    pub open: bool,
    pub ground: bool,
    pub in_e_one: bool,
    /// On a finite semilattice this is taken to mean ultra.
    pub tight: bool,
    pub essentially_tight: bool,
}

/// Everything needed to talk about the spectrum of 𝔈(S).
#[derive(Clone, Debug)]
pub struct Spectrum {
    semigroup: Semigroup,
    hull: InverseHull,
    lattice: Semilattice,
    strings: StringSpace,
    star: Representation,
    e_one: Vec<bool>,
    eps: Vec<Option<Subset>>,
    mins: Vec<usize>,
    char_of: Vec<Option<CharId>>,
    source_idx: Vec<usize>,
    range_idx: Vec<usize>,
}

impl Spectrum {
    pub fn new(s: &Semigroup) -> Result<Self> {
        let hull = InverseHull::generate(s)?;
        let lattice = hull.semilattice();
        let strings = StringSpace::new(s)?;
        let star = strings.star_rep(s);
        let theta = hull.theta();
        let mut e_one = vec![false; lattice.len()];
        for i in e_one_ideal(s, theta, &lattice) {
            e_one[i] = true;
        }
        let eps = (0..lattice.len())
            .map(|x| {
                let w = lattice.get(x).witnesses.first()?;
                Some(Subset::from_indices(
                    strings.len(),
                    (0..strings.len()).filter(|&i| {
                        strings
                            .star_image_membership(s, theta, w.u, &w.lambda, i)
                            .expect("stored witnesses are well formed")
                    }),
                ))
            })
            .collect();
        let mins: Vec<usize> = lattice.nonzero().collect();
        let mut char_of = vec![None; lattice.len()];
        for (c, &m) in mins.iter().enumerate() {
            char_of[m] = Some(c);
        }
        let find = |set: Subset| lattice.find(&set).expect("F_s and E_s are constructible");
        let source_idx = (0..s.size()).map(|a| find(theta.map(a).domain())).collect();
        let range_idx = (0..s.size()).map(|a| find(theta.map(a).range())).collect();
        Ok(Spectrum {
            semigroup: s.clone(),
            hull,
            lattice,
            strings,
            star,
            e_one,
            eps,
            mins,
            char_of,
            source_idx,
            range_idx,
        })
    }

    pub fn semigroup(&self) -> &Semigroup {
        &self.semigroup
    }

    pub fn hull(&self) -> &InverseHull {
        &self.hull
    }

    pub fn theta(&self) -> &Representation {
        self.hull.theta()
    }

    pub fn lattice(&self) -> &Semilattice {
        &self.lattice
    }

    pub fn strings(&self) -> &StringSpace {
        &self.strings
    }

    pub fn star(&self) -> &Representation {
        &self.star
    }

    pub fn char_count(&self) -> usize {
        self.mins.len()
    }

    pub fn characters(&self) -> impl Iterator<Item = CharId> {
        0..self.mins.len()
    }

    /// Semilattice index of the least set in the support.
    pub fn min(&self, c: CharId) -> usize {
        self.mins[c]
    }

    pub fn min_set(&self, c: CharId) -> &Subset {
        self.lattice.members(self.mins[c])
    }

    /// The character whose least set is the given semilattice element.
    pub fn char_with_min(&self, x: usize) -> Option<CharId> {
        self.char_of[x]
    }

    /// Character generated by a set of S′, if that set is constructible and nonempty.
    pub fn char_with_min_set(&self, set: &Subset) -> Option<CharId> {
        self.lattice.find(set).and_then(|x| self.char_of[x])
    }

    pub fn eval(&self, c: CharId, x: usize) -> bool {
        self.lattice.leq(self.mins[c], x)
    }

    /// `φ` at an arbitrary subset of S′ known to be constructible.
    pub fn eval_set(&self, c: CharId, set: &Subset) -> bool {
        self.min_set(c).is_subset(set)
    }

    pub fn support(&self, c: CharId) -> Vec<usize> {
        (0..self.lattice.len()).filter(|&x| self.eval(c, x)).collect()
    }

    /// Semilattice index of F_s.
    pub fn source_index(&self, s: Elem) -> usize {
        self.source_idx[s]
    }

    /// Semilattice index of E_s.
    pub fn range_index(&self, s: Elem) -> usize {
        self.range_idx[s]
    }

    pub fn in_e_one_set(&self, x: usize) -> bool {
        self.e_one[x]
    }

    pub fn is_ultra(&self, c: CharId) -> bool {
        let m = self.mins[c];
        !self.lattice.nonzero().any(|y| y != m && self.lattice.leq(y, m))
    }

    pub fn ultra(&self) -> Vec<CharId> {
        self.characters().filter(|&c| self.is_ultra(c)).collect()
    }

    /// ε(X) as a set of string indices.
    pub fn epsilon(&self, x: usize) -> Result<&Subset> {
        self.eps[x].as_ref().ok_or(Error::NoWitness)
    }

    /// First `(set, witness)` whose ε differs from that of the set's first witness.
    pub fn epsilon_consistency(&self) -> Verdict<[usize; 2]> {
        let s = &self.semigroup;
        for x in 0..self.lattice.len() {
            let Some(first) = &self.eps[x] else { continue };
            for (k, w) in self.lattice.get(x).witnesses.iter().enumerate().skip(1) {
                let other = self
                    .strings
                    .star_image(s, &self.star, self.theta(), w.u, &w.lambda)
                    .expect("stored witnesses are well formed");
                if other != *first {
                    return Verdict::from_failure(Some([x, k]));
                }
            }
        }
        Verdict::from_failure(None)
    }

    pub fn is_degenerate_string(&self, sigma: usize) -> bool {
        let set = self.strings.get(sigma);
        set.len() == 1
            && classify_element(&self.semigroup, set.first().unwrap())
                .map(|c| c.degenerate)
                .unwrap_or(false)
    }

    /// Support `{X : σ ∈ ε(X)}`, possibly empty.
    pub fn string_support(&self, sigma: usize) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for x in 0..self.lattice.len() {
            if self.epsilon(x)?.contains(sigma) {
                out.push(x);
            }
        }
        Ok(out)
    }

    /// `φ_σ`.
    pub fn phi_of_string(&self, sigma: usize) -> Result<CharId> {
        if self.is_degenerate_string(sigma) {
            return Err(Error::DegenerateString);
        }
        let support = self.string_support(sigma)?;
        let mut meet = Subset::full(self.theta().slots());
        for &x in &support {
            meet.intersect_with(self.lattice.members(x));
        }
        let c = support
            .first()
            .and_then(|_| self.char_with_min_set(&meet))
            .ok_or(Error::DegenerateString)?;
        debug_assert_eq!(self.support(c), support);
        Ok(c)
    }

    /// `σ_φ = {s : φ(E_s) = 1}`.
    pub fn sigma_of_char(&self, c: CharId) -> Subset {
        let s = &self.semigroup;
        Subset::from_indices(s.size(), (0..s.size()).filter(|&a| self.eval(c, self.range_idx[a])))
    }

    pub fn string_index(&self, set: &Subset) -> Option<usize> {
        self.strings.find(set)
    }

    pub fn is_open_char(&self, c: CharId) -> bool {
        let sigma = self.sigma_of_char(c);
        !sigma.is_empty() && is_open(&self.semigroup, &sigma)
    }

    pub fn is_ground(&self, c: CharId) -> bool {
        self.sigma_of_char(c).is_empty()
    }

    pub fn classify_character(&self, c: CharId) -> CharacterClass {
        let ultra = self.is_ultra(c);
        CharacterClass {
            ultra,
            open: self.is_open_char(c),
            ground: self.is_ground(c),
            in_e_one: self.e_one[self.mins[c]],
            tight: ultra,
            essentially_tight: self.is_essentially_tight(c, 1),
        }
    }

    /// Literal sweep over families `Y₁..Yₙ` with `1 ≤ n ≤ family_bound`
    /// (the empty family alone when the bound is 0). Every symmetric
    /// difference of subsets of a finite set is finite, so each family
    /// imposes `φ(X) = φ(Y₁) ∨ … ∨ φ(Yₙ)`.
    pub fn is_essentially_tight(&self, c: CharId, family_bound: usize) -> bool {
        self.essential_tightness_failure(c, family_bound).is_none()
    }

    /// `(X, family)` violating the defining identity.
    pub fn essential_tightness_failure(
        &self,
        c: CharId,
        family_bound: usize,
    ) -> Option<(usize, Vec<usize>)> {
        let l = self.lattice.len();
        let sizes: Vec<usize> = if family_bound == 0 { vec![0] } else { (1..=family_bound).collect() };
        for k in sizes {
            let mut family = vec![0; k];
            loop {
                let join = family.iter().any(|&y| self.eval(c, y));
                for x in 0..l {
                    if self.eval(c, x) != join {
                        return Some((x, family));
                    }
                }
                if !next_multiset(&mut family, l) {
                    break;
                }
            }
        }
        None
    }

    /// Checks the equivalence of `φ ∈ 𝔈̂₁`, `φ(E_s) = 1` for some s, and `σ_φ ≠ ∅`.
    pub fn e_one_equivalence(&self) -> Verdict<CharId> {
        let s = &self.semigroup;
        Verdict::from_failure(self.characters().find(|&c| {
            let a = self.e_one[self.mins[c]];
            let b = (0..s.size()).any(|x| self.eval(c, self.range_idx[x]));
            let d = !self.sigma_of_char(c).is_empty();
            a != b || b != d
        }))
    }

    /// Nonempty `σ_φ` is a string closed under every lcm witness.
    pub fn sigma_is_lcm_closed_string(&self) -> Verdict<CharId> {
        let s = &self.semigroup;
        Verdict::from_failure(self.characters().find(|&c| {
            let sigma = self.sigma_of_char(c);
            if sigma.is_empty() {
                return false;
            }
            if !crate::strings::is_string(s, &sigma).holds {
                return true;
            }
            let open = sigma.iter().any(|a| {
                sigma
                    .iter()
                    .any(|b| s.lcm(a, b).witnesses.iter().any(|&r| !sigma.contains(r)))
            });
            open
        }))
    }

    /// `φ_σ` vanishes exactly on degenerate strings; otherwise
    /// `σ_{φ_σ}` is the interior of σ, and open strings are recovered.
    pub fn string_character_laws(&self) -> Result<Verdict<usize>> {
        for i in 0..self.strings.len() {
            let support = self.string_support(i)?;
            let degenerate = self.is_degenerate_string(i);
            if support.is_empty() != degenerate {
                return Ok(Verdict::from_failure(Some(i)));
            }
            if degenerate {
                continue;
            }
            let c = self.phi_of_string(i)?;
            let sigma = self.strings.get(i);
            if self.sigma_of_char(c) != interior(&self.semigroup, sigma) {
                return Ok(Verdict::from_failure(Some(i)));
            }
            if is_open(&self.semigroup, sigma)
                && (!self.e_one[self.mins[c]] || self.sigma_of_char(c) != *sigma)
            {
                return Ok(Verdict::from_failure(Some(i)));
            }
        }
        Ok(Verdict::from_failure(None))
    }

    /// For open φ, `φ ≤ Φ(Σ(φ))` pointwise.
    pub fn open_char_below_phi_sigma(&self) -> Result<Verdict<CharId>> {
        for c in self.characters().filter(|&c| self.is_open_char(c)) {
            let Some(i) = self.string_index(&self.sigma_of_char(c)) else {
                return Ok(Verdict::from_failure(Some(c)));
            };
            let d = self.phi_of_string(i)?;
            if !self.lattice.leq(self.mins[d], self.mins[c]) {
                return Ok(Verdict::from_failure(Some(c)));
            }
        }
        Ok(Verdict::from_failure(None))
    }

    pub fn char_label(&self, c: CharId) -> String {
        format!("{{{}}}", self.semigroup.set_names(self.min_set(c)).join(","))
    }

    pub fn string_label(&self, i: usize) -> String {
        self.strings.label(&self.semigroup, i)
    }
}

/// Steps through nondecreasing sequences over `0..l`.
fn next_multiset(family: &mut [usize], l: usize) -> bool {
    for i in (0..family.len()).rev() {
        if family[i] + 1 < l {
            let v = family[i] + 1;
            for f in &mut family[i..] {
                *f = v;
            }
            return true;
        }
    }
    false
}
