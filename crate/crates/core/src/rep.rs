//! Partial bijections on a finite carrier and representations of a semigroup by them.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::{Elem, Semigroup, Unitized, Verdict};
use crate::set::Subset;

const UNDEFINED: u32 = u32::MAX;

/// An injective partial map on `0..size`.
///
/// Composition reads right to left: `f.after(g)` is `f∘g`, defined at x when
/// g is defined at x and f is defined at g(x). With this order the regular
/// representation satisfies `θ_s∘θ_t = θ_st`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialBijection {
    map: Vec<u32>,
}

impl PartialBijection {
    pub fn empty(size: usize) -> Self {
        PartialBijection { map: vec![UNDEFINED; size] }
    }

    pub fn identity(on: &Subset) -> Self {
        let mut f = Self::empty(on.universe());
        for x in on.iter() {
            f.map[x] = x as u32;
        }
        f
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(size: usize, pairs: I) -> Result<Self> {
        let mut f = Self::empty(size);
        let mut hit = Subset::empty(size);
        for (x, y) in pairs {
            if x >= size || y >= size {
                return Err(Error::CarrierMismatch(size, x.max(y) + 1));
            }
            if hit.contains(y) || f.map[x] != UNDEFINED {
                return Err(Error::NotInjective(y));
            }
            hit.insert(y);
            f.map[x] = y as u32;
        }
        Ok(f)
    }

    pub fn size(&self) -> usize {
        self.map.len()
    }

    pub fn get(&self, x: usize) -> Option<usize> {
        match self.map[x] {
            UNDEFINED => None,
            y => Some(y as usize),
        }
    }

    /// Defined `(source, target)` pairs in source order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.map
            .iter()
            .enumerate()
            .filter(|(_, &y)| y != UNDEFINED)
            .map(|(x, &y)| (x, y as usize))
    }

    pub fn domain(&self) -> Subset {
        Subset::from_indices(self.size(), self.pairs().map(|(x, _)| x))
    }

    pub fn range(&self) -> Subset {
        Subset::from_indices(self.size(), self.pairs().map(|(_, y)| y))
    }

    pub fn is_empty(&self) -> bool {
        self.map.iter().all(|&y| y == UNDEFINED)
    }

    /// Identity on its domain.
    pub fn is_idempotent(&self) -> bool {
        self.pairs().all(|(x, y)| x == y)
    }

    /// `self∘g`, assuming equal carriers.
    pub fn after(&self, g: &PartialBijection) -> PartialBijection {
        debug_assert_eq!(self.size(), g.size());
        PartialBijection {
            map: g
                .map
                .iter()
                .map(|&y| if y == UNDEFINED { UNDEFINED } else { self.map[y as usize] })
                .collect(),
        }
    }

    /// `self∘g`.
    pub fn compose(&self, g: &PartialBijection) -> Result<PartialBijection> {
        if self.size() != g.size() {
            return Err(Error::CarrierMismatch(self.size(), g.size()));
        }
        Ok(self.after(g))
    }

    pub fn invert(&self) -> PartialBijection {
        let mut inv = Self::empty(self.size());
        for (x, y) in self.pairs() {
            inv.map[y] = x as u32;
        }
        inv
    }

    /// `self∘id_X`.
    pub fn restrict(&self, x: &Subset) -> PartialBijection {
        let mut f = self.clone();
        for (i, slot) in f.map.iter_mut().enumerate() {
            if !x.contains(i) {
                *slot = UNDEFINED;
            }
        }
        f
    }

    /// Image of `X ∩ domain`.
    pub fn image(&self, x: &Subset) -> Subset {
        Subset::from_indices(self.size(), x.iter().filter_map(|i| self.get(i)))
    }

    /// Preimage of `X ∩ range`.
    pub fn preimage(&self, x: &Subset) -> Subset {
        Subset::from_indices(
            self.size(),
            self.pairs().filter(|&(_, y)| x.contains(y)).map(|(i, _)| i),
        )
    }
}

impl fmt::Debug for PartialBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.pairs()).finish()
    }
}

/// A semigroup acting by partial bijections on a labelled carrier Ω.
///
/// Slots outside `carrier` exist only so that carrier points can share
/// indices with semigroup elements; no map touches them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    labels: Vec<String>,
    carrier: Subset,
    maps: Vec<PartialBijection>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RepresentationFailure {
    ZeroNotEmpty,
    Product([Elem; 2]),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepresentationCheck {
    pub is_representation: Verdict<RepresentationFailure>,
    pub is_essential: bool,
    /// witness `(s, t)` where one of the two covariance identities fails
    pub covariance: Verdict<[Elem; 2]>,
}

impl Representation {
    pub fn new(
        labels: Vec<String>,
        carrier: Subset,
        maps: Vec<PartialBijection>,
    ) -> Result<Self> {
        let size = labels.len();
        if carrier.universe() != size {
            return Err(Error::CarrierMismatch(size, carrier.universe()));
        }
        for m in &maps {
            if m.size() != size {
                return Err(Error::CarrierMismatch(size, m.size()));
            }
            if !m.domain().is_subset(&carrier) || !m.range().is_subset(&carrier) {
                return Err(Error::MalformedTable("map leaves the carrier".into()));
            }
        }
        Ok(Representation { labels, carrier, maps })
    }

    /// θ on S′: `θ_s` sends x to sx wherever sx is nonzero.
    pub fn regular(s: &Semigroup) -> Result<Self> {
        s.require_left_cancellative()?;
        let n = s.size();
        let z = s.zero();
        let maps = (0..n)
            .map(|a| {
                let mut f = PartialBijection::empty(n);
                if a != z {
                    for x in s.nonzero() {
                        let y = s.mul(a, x);
                        if y != z {
                            f.map[x] = y as u32;
                        }
                    }
                }
                f
            })
            .collect();
        Ok(Representation {
            labels: s.names().to_vec(),
            carrier: s.nonzero_set(),
            maps,
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn carrier(&self) -> &Subset {
        &self.carrier
    }

    pub fn slots(&self) -> usize {
        self.labels.len()
    }

    pub fn map(&self, s: Elem) -> &PartialBijection {
        &self.maps[s]
    }

    pub fn maps(&self) -> &[PartialBijection] {
        &self.maps
    }

    /// The adjoined unit acts as the identity of Ω.
    pub fn map_unitized(&self, u: Unitized) -> PartialBijection {
        match u {
            Unitized::Unit => PartialBijection::identity(&self.carrier),
            Unitized::Elem(s) => self.maps[s].clone(),
        }
    }

    /// F_u, the domain of π_u.
    pub fn source(&self, u: Unitized) -> Subset {
        match u {
            Unitized::Unit => self.carrier.clone(),
            Unitized::Elem(s) => self.maps[s].domain(),
        }
    }

    /// E_u, the range of π_u.
    pub fn target(&self, u: Unitized) -> Subset {
        match u {
            Unitized::Unit => self.carrier.clone(),
            Unitized::Elem(s) => self.maps[s].range(),
        }
    }

    /// F_Λ and the identity on it.
    pub fn f_lambda(&self, lambda: &[Unitized]) -> Result<(Subset, PartialBijection)> {
        if lambda.is_empty() {
            return Err(Error::EmptyLambda);
        }
        let mut set = self.carrier.clone();
        for &u in lambda {
            if let Unitized::Elem(s) = u {
                set.intersect_with(&self.maps[s].domain());
            }
        }
        let id = PartialBijection::identity(&set);
        Ok((set, id))
    }

    /// Sorted `(source, target)` label pairs.
    pub fn named_pairs(&self, f: &PartialBijection) -> Vec<(String, String)> {
        f.pairs()
            .map(|(x, y)| (self.labels[x].clone(), self.labels[y].clone()))
            .collect()
    }

    pub fn set_labels(&self, set: &Subset) -> Vec<String> {
        set.iter().map(|i| self.labels[i].clone()).collect()
    }
}

pub fn check_representation(s: &Semigroup, pi: &Representation) -> RepresentationCheck {
    let n = s.size();
    let mut failure = None;
    if !pi.map(s.zero()).is_empty() {
        failure = Some(RepresentationFailure::ZeroNotEmpty);
    }
    'rep: for a in 0..n {
        for b in 0..n {
            if failure.is_some() {
                break 'rep;
            }
            if pi.map(a).after(pi.map(b)) != *pi.map(s.mul(a, b)) {
                failure = Some(RepresentationFailure::Product([a, b]));
            }
        }
    }

    let mut covered = Subset::empty(pi.slots());
    for m in pi.maps() {
        covered.union_with(&m.domain());
        covered.union_with(&m.range());
    }

    let e = |x: Elem| PartialBijection::identity(&pi.map(x).range());
    let f = |x: Elem| PartialBijection::identity(&pi.map(x).domain());
    let mut cov = None;
    'cov: for a in 0..n {
        for b in 0..n {
            let pa = pi.map(a);
            let first = pa.after(&e(b)) == e(s.mul(a, b)).after(pa);
            let second = f(b).after(pa) == pa.after(&f(s.mul(b, a)));
            if !(first && second) {
                cov = Some([a, b]);
                break 'cov;
            }
        }
    }

    RepresentationCheck {
        is_representation: Verdict::from_failure(failure),
        is_essential: covered == *pi.carrier(),
        covariance: Verdict::from_failure(cov),
    }
}

/// Checks `E_r = E_s ∩ E_t` for every pair of S̃ and every lcm witness r.
pub fn respects_lcms(s: &Semigroup, pi: &Representation) -> Result<Verdict<[Unitized; 3]>> {
    s.require_lcms()?;
    let n = s.size();
    let all: Vec<Unitized> = [Unitized::Unit].into_iter().chain((0..n).map(Unitized::Elem)).collect();
    for (i, &u) in all.iter().enumerate() {
        for &v in &all[i..] {
            let meet = pi.target(u).intersection(&pi.target(v));
            let witnesses = match (u, v) {
                (Unitized::Elem(a), Unitized::Elem(b)) => {
                    s.lcm(a, b).witnesses.into_iter().map(Unitized::Elem).collect()
                }
                _ => vec![s.lcm_unitized(u, v)?],
            };
            if let Some(r) = witnesses.into_iter().find(|&r| pi.target(r) != meet) {
                return Ok(Verdict::from_failure(Some([u, v, r])));
            }
        }
    }
    Ok(Verdict::from_failure(None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::fixtures::*;

    fn pb(size: usize, pairs: &[(usize, usize)]) -> PartialBijection {
        PartialBijection::from_pairs(size, pairs.iter().copied()).unwrap()
    }

    #[test]
    fn composition_basics() {
        let f = pb(4, &[(0, 1), (1, 2)]);
        let empty = PartialBijection::empty(4);
        assert!(empty.after(&f).is_empty());
        let x = Subset::from_indices(4, [0, 1, 2]);
        let y = Subset::from_indices(4, [1, 2, 3]);
        assert_eq!(
            PartialBijection::identity(&x).after(&PartialBijection::identity(&y)),
            PartialBijection::identity(&x.intersection(&y))
        );
        assert_eq!(f.compose(&PartialBijection::empty(3)), Err(Error::CarrierMismatch(4, 3)));
        // f∘f: 0 -> 2 only
        assert_eq!(f.after(&f), pb(4, &[(0, 2)]));
    }

    #[test]
    fn inversion() {
        let f = pb(5, &[(0, 3), (2, 1), (4, 0)]);
        assert_eq!(f.invert().invert(), f);
        assert_eq!(f.invert().after(&f), PartialBijection::identity(&f.domain()));
        assert_eq!(f.after(&f.invert()), PartialBijection::identity(&f.range()));
        assert!(PartialBijection::empty(3).invert().is_empty());
        let x = Subset::from_indices(5, [1, 4]);
        assert_eq!(PartialBijection::identity(&x).invert(), PartialBijection::identity(&x));
        assert_eq!(
            PartialBijection::from_pairs(3, [(0, 1), (2, 1)]),
            Err(Error::NotInjective(1))
        );
    }

    #[test]
    fn regular_representation_of_unital_chain() {
        let c = unital_chain();
        let th = Representation::regular(&c).unwrap();
        let (one, a, aa) = (1, 2, 3);
        assert_eq!(th.map(a).domain().to_vec(), vec![one, a]);
        assert_eq!(th.map(a).range().to_vec(), vec![a, aa]);
        assert_eq!(th.map(a).after(th.map(a)), *th.map(aa));
        assert_eq!(th.map(aa).pairs().collect::<Vec<_>>(), vec![(one, aa)]);
        assert_eq!(th.map(a).invert().pairs().collect::<Vec<_>>(), vec![(a, one), (aa, a)]);
        assert!(th.map(0).is_empty());
        let r = check_representation(&c, &th);
        assert!(r.is_representation.holds && r.is_essential && r.covariance.holds);
        assert!(respects_lcms(&c, &th).unwrap().holds);
    }

    #[test]
    fn regular_representation_of_prime_idempotent() {
        let p = prime_idempotent();
        let th = Representation::regular(&p).unwrap();
        assert_eq!(th.map(2).pairs().collect::<Vec<_>>(), vec![(1, 2)]);
        assert!(respects_lcms(&p, &th).unwrap().holds);
    }

    #[test]
    fn mutated_assignment_is_not_a_representation() {
        let c = unital_chain();
        let th = Representation::regular(&c).unwrap();
        let mut maps = th.maps().to_vec();
        maps[2] = pb(4, &[(1, 2), (2, 1)]);
        let bad = Representation::new(th.labels().to_vec(), th.carrier().clone(), maps).unwrap();
        let r = check_representation(&c, &bad);
        assert!(!r.is_representation.holds);
        assert!(matches!(r.is_representation.witness, Some(RepresentationFailure::Product(_))));
    }

    #[test]
    fn contrived_representation_breaks_lcm_ranges() {
        // a: p -> q -> r, aa: p -> r, b and ba empty
        let w = four_words();
        let labels = vec!["p".to_string(), "q".into(), "r".into()];
        let e = PartialBijection::empty(3);
        let maps = vec![e.clone(), pb(3, &[(0, 1), (1, 2)]), e.clone(), pb(3, &[(0, 2)]), e];
        let pi = Representation::new(labels, Subset::full(3), maps).unwrap();
        assert!(check_representation(&w, &pi).is_representation.holds);
        let v = respects_lcms(&w, &pi).unwrap();
        assert!(!v.holds);
        let [s, t, r] = v.witness.unwrap();
        assert_eq!(
            (w.unitized_name(s), w.unitized_name(t), w.unitized_name(r)),
            ("a", "aa", "0")
        );
    }

    #[test]
    fn f_lambda_values() {
        let c = unital_chain();
        let th = Representation::regular(&c).unwrap();
        let (set, id) = th.f_lambda(&[Unitized::Unit]).unwrap();
        assert_eq!(set, *th.carrier());
        assert_eq!(id, PartialBijection::identity(th.carrier()));
        let lam = [Unitized::Elem(2), Unitized::Elem(3)];
        assert_eq!(th.f_lambda(&lam).unwrap().0.to_vec(), vec![1]);
        let with_unit = [Unitized::Elem(2), Unitized::Elem(3), Unitized::Unit];
        assert_eq!(th.f_lambda(&lam).unwrap(), th.f_lambda(&with_unit).unwrap());
        assert_eq!(th.f_lambda(&[]), Err(Error::EmptyLambda));
    }

    #[test]
    fn regular_needs_left_cancellation() {
        // xx = xy = z, everything else zero
        let names = vec!["0".to_string(), "x".into(), "y".into(), "z".into()];
        let mut rows = vec![vec![0; 4]; 4];
        rows[1][1] = 3;
        rows[1][2] = 3;
        let s = Semigroup::from_table(names, 0, rows).unwrap();
        assert!(matches!(Representation::regular(&s), Err(Error::NotLeftCancellative(..))));
    }
}
