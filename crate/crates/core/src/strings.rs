//! Strings: nonempty, zero-free, hereditary and directed subsets of S.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rep::{PartialBijection, Representation};
use crate::semigroup::{Elem, Semigroup, Unitized, Verdict};
use crate::set::Subset;

/// Largest S′ for which strings are enumerated.
pub const STRING_LIMIT: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StringViolation {
    Empty,
    ContainsZero,
    /// `divisor ‖ member` but the divisor is missing
    NotHereditary { divisor: Elem, member: Elem },
    /// no common multiple of the pair inside the set
    NotDirected([Elem; 2]),
}

pub fn is_string(s: &Semigroup, set: &Subset) -> Verdict<StringViolation> {
    Verdict::from_failure(string_violation(s, set))
}

fn string_violation(s: &Semigroup, set: &Subset) -> Option<StringViolation> {
    if set.is_empty() {
        return Some(StringViolation::Empty);
    }
    if set.contains(s.zero()) {
        return Some(StringViolation::ContainsZero);
    }
    for t in set.iter() {
        for d in 0..s.size() {
            if s.divides_elem(d, t) && !set.contains(d) {
                return Some(StringViolation::NotHereditary { divisor: d, member: t });
            }
        }
    }
    let members = set.to_vec();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if !members.iter().any(|&m| s.divides_elem(a, m) && s.divides_elem(b, m)) {
                return Some(StringViolation::NotDirected([a, b]));
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ElementClass {
    pub prime: bool,
    pub irreducible: bool,
    pub degenerate: bool,
}

pub fn classify_element(s: &Semigroup, x: Elem) -> Result<ElementClass> {
    let delta = s.divisors(x)?;
    let n = s.size();
    let prime = delta.len() == 1;
    let irreducible = !(0..n).any(|a| (0..n).any(|b| s.mul(a, b) == x));
    let kills = (0..n).all(|a| s.mul(a, x) == s.zero());
    Ok(ElementClass {
        prime,
        irreducible,
        degenerate: irreducible && kills,
    })
}

/// `r*σ`, the hereditary closure of rσ.
pub fn star_apply(s: &Semigroup, r: Elem, sigma: &Subset) -> Result<Subset> {
    let mut out = Subset::empty(s.size());
    for x in sigma.iter() {
        let p = s.mul(r, x);
        if p == s.zero() {
            return Err(Error::ZeroHit {
                r: s.name(r).to_string(),
                s: s.name(x).to_string(),
            });
        }
        out.union_with(&s.divisors(p)?);
    }
    Ok(out)
}

/// `r⁻¹*σ = {t : rt ∈ σ}`.
pub fn star_inverse(s: &Semigroup, r: Elem, sigma: &Subset) -> Result<Subset> {
    if !sigma.intersects(s.right_ideal(r)) {
        return Err(Error::EmptyIntersection(s.name(r).to_string()));
    }
    Ok(Subset::from_indices(
        s.size(),
        (0..s.size()).filter(|&t| sigma.contains(s.mul(r, t))),
    ))
}

/// `{s : sx ∈ σ for some x}`.
pub fn interior(s: &Semigroup, sigma: &Subset) -> Subset {
    let n = s.size();
    Subset::from_indices(n, (0..n).filter(|&a| (0..n).any(|x| sigma.contains(s.mul(a, x)))))
}

pub fn is_open(s: &Semigroup, sigma: &Subset) -> bool {
    interior(s, sigma) == *sigma
}

/// The strings of S in canonical order.
#[derive(Clone, Debug)]
pub struct StringSpace {
    strings: Vec<Subset>,
    index: HashMap<Subset, usize>,
    // some s with σ = δ_s
    tops: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaximalityReport {
    pub maximal: Vec<usize>,
    /// `(r, σ)` with σ maximal in F⋆_r but `θ⋆_r(σ)` not maximal
    pub forward_failures: Vec<(Elem, usize)>,
    /// `(r, σ)` with σ maximal in E⋆_r but `θ⋆_r⁻¹(σ)` not maximal
    pub inverse_failures: Vec<(Elem, usize)>,
}

impl StringSpace {
    /// In a finite semigroup every string has a largest element m and
    /// equals δ_m, so the strings are the distinct divisor sets.
    pub fn new(s: &Semigroup) -> Result<Self> {
        let size = s.size() - 1;
        if size > STRING_LIMIT {
            return Err(Error::CarrierTooLarge { size, limit: STRING_LIMIT });
        }
        let mut found: Vec<(Subset, Elem)> = Vec::new();
        let mut seen: HashMap<Subset, ()> = HashMap::new();
        for x in s.nonzero() {
            let d = s.divisors(x)?;
            if seen.insert(d.clone(), ()).is_none() {
                found.push((d, x));
            }
        }
        found.sort();
        let index = found.iter().enumerate().map(|(i, (d, _))| (d.clone(), i)).collect();
        let (strings, tops) = found.into_iter().unzip();
        Ok(StringSpace { strings, index, tops })
    }

    pub fn len(&self) -> usize {
        self.strings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }

    pub fn strings(&self) -> &[Subset] {
        &self.strings
    }

    pub fn get(&self, i: usize) -> &Subset {
        &self.strings[i]
    }

    pub fn find(&self, sigma: &Subset) -> Option<usize> {
        self.index.get(sigma).copied()
    }

    /// An element whose divisor set is the i-th string.
    pub fn top(&self, i: usize) -> Elem {
        self.tops[i]
    }

    pub fn label(&self, s: &Semigroup, i: usize) -> String {
        format!("{{{}}}", s.set_names(&self.strings[i]).join(","))
    }

    /// θ⋆ as a representation on the string indices.
    pub fn star_rep(&self, s: &Semigroup) -> Representation {
        let k = self.len();
        let maps = (0..s.size())
            .map(|r| {
                let pairs = (0..k).filter_map(|i| {
                    let image = star_apply(s, r, &self.strings[i]).ok()?;
                    Some((i, self.find(&image).expect("image of a string is a string")))
                });
                PartialBijection::from_pairs(k, pairs).expect("θ⋆ is injective")
            })
            .collect();
        let labels = (0..k).map(|i| self.label(s, i)).collect();
        Representation::new(labels, Subset::full(k), maps).expect("maps stay on the carrier")
    }

    /// F⋆_r through the inclusion `σ ⊆ F_r`.
    pub fn source_set(&self, theta: &Representation, u: Unitized) -> Subset {
        let f = theta.source(u);
        Subset::from_indices(self.len(), (0..self.len()).filter(|&i| self.strings[i].is_subset(&f)))
    }

    /// E⋆_r through `σ ∩ E_r ≠ ∅`.
    pub fn target_set(&self, theta: &Representation, u: Unitized) -> Subset {
        let e = theta.target(u);
        Subset::from_indices(self.len(), (0..self.len()).filter(|&i| self.strings[i].intersects(&e)))
    }

    /// F⋆_Λ, strings inside F_Λ.
    pub fn lambda_source(&self, theta: &Representation, lambda: &[Unitized]) -> Result<Subset> {
        let (f, _) = theta.f_lambda(lambda)?;
        Ok(Subset::from_indices(
            self.len(),
            (0..self.len()).filter(|&i| self.strings[i].is_subset(&f)),
        ))
    }

    /// Whether σ lies in `θ⋆_u(F⋆_Λ)`, decided by `∅ ≠ σ ∩ E_u ⊆ θ_u(F_Λ)`.
    pub fn star_image_membership(
        &self,
        s: &Semigroup,
        theta: &Representation,
        u: Unitized,
        lambda: &[Unitized],
        sigma: usize,
    ) -> Result<bool> {
        check_lambda(s, u, lambda)?;
        let (f, _) = theta.f_lambda(lambda)?;
        let image = theta.map_unitized(u).image(&f);
        let meet = self.strings[sigma].intersection(&theta.target(u));
        Ok(!meet.is_empty() && meet.is_subset(&image))
    }

    /// `θ⋆_u(F⋆_Λ)` computed pointwise.
    pub fn star_image(
        &self,
        s: &Semigroup,
        star: &Representation,
        theta: &Representation,
        u: Unitized,
        lambda: &[Unitized],
    ) -> Result<Subset> {
        check_lambda(s, u, lambda)?;
        let src = self.lambda_source(theta, lambda)?;
        Ok(star.map_unitized(u).image(&src))
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| {
                !(0..self.len()).any(|j| j != i && self.strings[i].is_subset(&self.strings[j]))
            })
            .collect()
    }

    pub fn maximality_report(&self, s: &Semigroup, star: &Representation) -> MaximalityReport {
        let maximal = self.maximal();
        let is_max = |i: usize| maximal.contains(&i);
        let mut forward_failures = Vec::new();
        let mut inverse_failures = Vec::new();
        for r in 0..s.size() {
            let f = star.map(r);
            for &i in &maximal {
                if let Some(j) = f.get(i) {
                    if !is_max(j) {
                        forward_failures.push((r, i));
                    }
                }
            }
            let inv = f.invert();
            for &i in &maximal {
                if let Some(j) = inv.get(i) {
                    if !is_max(j) {
                        inverse_failures.push((r, i));
                    }
                }
            }
        }
        MaximalityReport { maximal, forward_failures, inverse_failures }
    }
}

fn check_lambda(s: &Semigroup, u: Unitized, lambda: &[Unitized]) -> Result<()> {
    if !lambda.iter().any(|x| x.elem().is_some()) {
        return Err(Error::BadLambda("lambda must meet S".into()));
    }
    if !lambda.contains(&u) {
        return Err(Error::BadLambda(format!("{} is not in lambda", s.unitized_name(u))));
    }
    Ok(())
}

/// Checks `δ_{sx} = θ⋆_s(δ_x)` for every s and every x in F_s.
pub fn delta_covariance_check(s: &Semigroup) -> Result<Verdict<[Elem; 2]>> {
    let z = s.zero();
    for a in 0..s.size() {
        for x in s.nonzero() {
            let ax = s.mul(a, x);
            if ax == z {
                continue;
            }
            if s.divisors(ax)? != star_apply(s, a, &s.divisors(x)?)? {
                return Ok(Verdict::from_failure(Some([a, x])));
            }
        }
    }
    Ok(Verdict::from_failure(None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::check_representation;
    use crate::semigroup::fixtures::*;

    fn set(s: &Semigroup, names: &[&str]) -> Subset {
        Subset::from_indices(s.size(), names.iter().map(|n| s.index_of(n).unwrap()))
    }

    fn named(s: &Semigroup, sp: &StringSpace, idx: &[usize]) -> Vec<Vec<String>> {
        idx.iter().map(|&i| s.set_names(sp.get(i))).collect()
    }

    #[test]
    fn string_checks() {
        let c = unital_chain();
        assert_eq!(
            is_string(&c, &set(&c, &["aa"])).witness,
            Some(StringViolation::NotHereditary { divisor: 1, member: 3 })
        );
        let w = four_words();
        assert!(is_string(&w, &set(&w, &["b", "ba"])).holds);
        assert!(matches!(
            is_string(&w, &set(&w, &["a", "b"])).witness,
            Some(StringViolation::NotDirected(_))
        ));
        for x in w.nonzero() {
            assert!(is_string(&w, &w.divisors(x).unwrap()).holds);
        }
    }

    #[test]
    fn enumerations() {
        let c = unital_chain();
        let sp = StringSpace::new(&c).unwrap();
        let all: Vec<usize> = (0..sp.len()).collect();
        assert_eq!(named(&c, &sp, &all), vec![vec!["1"], vec!["1", "a"], vec!["1", "a", "aa"]]);
        assert_eq!(named(&c, &sp, &sp.maximal()), vec![vec!["1", "a", "aa"]]);

        let w = four_words();
        let sp = StringSpace::new(&w).unwrap();
        let all: Vec<usize> = (0..sp.len()).collect();
        assert_eq!(
            named(&w, &sp, &all),
            vec![vec!["a"], vec!["b"], vec!["a", "aa"], vec!["b", "ba"]]
        );
        assert_eq!(named(&w, &sp, &sp.maximal()), vec![vec!["a", "aa"], vec!["b", "ba"]]);
    }

    #[test]
    fn element_classes() {
        let p = prime_idempotent();
        let cls = classify_element(&p, 2).unwrap();
        assert!(cls.prime && !cls.irreducible);
        let w = four_words();
        let b = classify_element(&w, 2).unwrap();
        assert!(b.degenerate && b.irreducible && b.prime);
        let c = unital_chain();
        assert!(!classify_element(&c, 2).unwrap().prime);
        assert_eq!(classify_element(&c, 0), Err(Error::ZeroArgument));
    }

    #[test]
    fn star_action() {
        let w = four_words();
        let (a, b) = (1, 2);
        assert_eq!(star_apply(&w, b, &set(&w, &["a"])).unwrap(), set(&w, &["b", "ba"]));
        assert!(matches!(star_apply(&w, a, &set(&w, &["b"])), Err(Error::ZeroHit { .. })));
        assert_eq!(star_inverse(&w, b, &set(&w, &["b", "ba"])).unwrap(), set(&w, &["a"]));
        assert!(matches!(
            star_inverse(&w, a, &set(&w, &["b"])),
            Err(Error::EmptyIntersection(_))
        ));
        let c = unital_chain();
        assert_eq!(star_apply(&c, 2, &set(&c, &["1"])).unwrap(), set(&c, &["1", "a"]));
        assert_eq!(
            star_inverse(&c, 2, &set(&c, &["1", "a", "aa"])).unwrap(),
            set(&c, &["1", "a"])
        );
    }

    #[test]
    fn star_rep_tables() {
        let c = unital_chain();
        let sp = StringSpace::new(&c).unwrap();
        let star = sp.star_rep(&c);
        let theta = Representation::regular(&c).unwrap();
        let a = Unitized::Elem(2);
        assert_eq!(star.source(a).to_vec(), vec![0, 1]);
        assert_eq!(star.target(a).to_vec(), vec![1, 2]);
        assert_eq!(sp.source_set(&theta, a), star.source(a));
        assert_eq!(sp.target_set(&theta, a), star.target(a));
        let r = check_representation(&c, &star);
        assert!(r.is_representation.holds && r.covariance.holds);

        let lam = [Unitized::Elem(2), Unitized::Elem(3)];
        assert!(sp.star_image_membership(&c, &theta, a, &lam, 1).unwrap());
        assert!(!sp.star_image_membership(&c, &theta, a, &lam, 0).unwrap());
        assert_eq!(sp.star_image(&c, &star, &theta, a, &lam).unwrap().to_vec(), vec![1]);
        assert!(matches!(
            sp.star_image_membership(&c, &theta, Unitized::Unit, &[Unitized::Unit], 0),
            Err(Error::BadLambda(_))
        ));
    }

    #[test]
    fn interiors() {
        let w = four_words();
        assert_eq!(interior(&w, &set(&w, &["a", "aa"])), set(&w, &["a"]));
        let c = unital_chain();
        let sp = StringSpace::new(&c).unwrap();
        assert!(sp.strings().iter().all(|x| is_open(&c, x)));
    }

    #[test]
    fn maximality_is_forward_invariant_only() {
        let w = four_words();
        let sp = StringSpace::new(&w).unwrap();
        let rep = sp.maximality_report(&w, &sp.star_rep(&w));
        assert!(rep.forward_failures.is_empty());
        let ba = sp.find(&set(&w, &["b", "ba"])).unwrap();
        assert!(rep.inverse_failures.contains(&(2, ba)));
    }

    #[test]
    fn delta_is_covariant() {
        for s in [unital_chain(), prime_idempotent(), four_words()] {
            assert!(delta_covariance_check(&s).unwrap().holds);
        }
    }
}
