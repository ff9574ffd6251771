//! The dual action of S and of the hull on characters, and what it says
//! about open, ground and ultra characters.

use std::collections::HashMap;

use serde::Serialize;

use super::{CharId, Spectrum};
use crate::error::{Error, Result};
use crate::rep::{PartialBijection, Representation};
use crate::semigroup::{Elem, Unitized, Verdict};
use crate::set::Subset;
use crate::strings::{is_open, star_inverse};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NonOpenDecomposition {
    pub u: Unitized,
    pub ground: CharId,
    /// How many pairs `(u, ground)` produce the character; 1 when unique.
    pub candidates: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualStringLaws {
    /// `σ` of `θ̂_s⁻¹φ` is `{p : sp ∈ σ_φ}`
    pub back_invariance: Verdict<(Elem, CharId)>,
    /// pulling back along s lands in `θ⋆_s⁻¹(σ_φ)` or in the ground
    pub back_on_strings: Verdict<(Elem, CharId)>,
    /// pushing forward along s gives `θ⋆_s(σ_φ)`, or δ_s from a ground character
    pub birth_of_string: Verdict<(Elem, CharId)>,
    /// `σ_φ = δ_s` with `s ∉ sS` pulls back to a ground character
    pub ground_orbit: Verdict<(Elem, CharId)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CovarianceReport {
    /// `φ_σ ∈ F̂_s ⇔ σ ∈ F⋆_s`, `θ̂_s φ_σ = φ_{θ⋆_s σ}`, and the inverse analogues
    pub dual: Verdict<(Elem, usize)>,
    /// `Φ(ρ(h)σ) = h·Φ(σ)` over the hull
    pub hull: Verdict<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RhoReport {
    pub well_defined: Verdict<usize>,
    pub extends_star: Verdict<Elem>,
    pub multiplicative: Verdict<(usize, usize)>,
    pub inverse_preserving: Verdict<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UltraClassification {
    /// open ultra characters with an open quasi-maximal string giving them
    pub open: Vec<(CharId, usize)>,
    /// non-open ultra characters as `θ̂_u` of a ground ultra character
    pub non_open: Vec<(CharId, Unitized, CharId)>,
    /// S∝
    pub quasi_maximal: Vec<usize>,
    pub open_without_string: Vec<CharId>,
    pub open_quasi_maximal_not_open_ultra: Vec<usize>,
    pub non_open_without_ground_ultra: Vec<CharId>,
    pub ground_ultra_orbit_failures: Vec<(Unitized, CharId)>,
    pub open_maximal_not_ultra: Vec<usize>,
    pub relatively_maximal_not_ultra: Vec<usize>,
}

impl UltraClassification {
    pub fn holds(&self) -> bool {
        self.open_without_string.is_empty()
            && self.open_quasi_maximal_not_open_ultra.is_empty()
            && self.non_open_without_ground_ultra.is_empty()
            && self.ground_ultra_orbit_failures.is_empty()
            && self.open_maximal_not_ultra.is_empty()
            && self.relatively_maximal_not_ultra.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceFailure {
    pub elem: Elem,
    pub character: CharId,
    pub inverse: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectraSubsets {
    pub ultra: Vec<CharId>,
    pub max: Vec<CharId>,
    /// Identified with the ultra set on finite semilattices.
    pub tight: Vec<CharId>,
    pub open: Vec<CharId>,
    pub ultra_invariant: Verdict<InvarianceFailure>,
    pub max_invariant: Verdict<InvarianceFailure>,
    pub tight_invariant: Verdict<InvarianceFailure>,
    pub open_invariant: Verdict<InvarianceFailure>,
    pub max_within_tight: bool,
}

impl Spectrum {
    /// The character whose support is `{X : keep(X)}`, if that is a nonzero filter.
    fn char_from_support(&self, keep: impl Fn(usize) -> bool) -> Option<CharId> {
        let l = self.lattice();
        let mut meet: Option<Subset> = None;
        for x in 0..l.len() {
            if keep(x) {
                let m = l.members(x);
                meet = Some(match meet {
                    None => m.clone(),
                    Some(acc) => acc.intersection(m),
                });
            }
        }
        let c = self.char_with_min_set(&meet?)?;
        debug_assert!((0..l.len()).all(|x| keep(x) == self.eval(c, x)));
        Some(c)
    }

    pub fn in_dual_source(&self, s: Elem, c: CharId) -> bool {
        self.eval(c, self.source_index(s))
    }

    pub fn in_dual_target(&self, s: Elem, c: CharId) -> bool {
        self.eval(c, self.range_index(s))
    }

    /// `θ̂_s φ : X ↦ φ(θ_s⁻¹(E_s ∩ X))`.
    pub fn dual_apply(&self, s: Elem, c: CharId) -> Result<CharId> {
        if !self.in_dual_source(s, c) {
            return Err(Error::DomainViolation(self.semigroup().name(s).to_string()));
        }
        let th = self.theta().map(s);
        self.char_from_support(|x| self.eval_set(c, &th.preimage(self.lattice().members(x))))
            .ok_or_else(|| Error::DomainViolation(self.semigroup().name(s).to_string()))
    }

    /// `θ̂_s⁻¹ φ : X ↦ φ(θ_s(F_s ∩ X))`.
    pub fn dual_inverse(&self, s: Elem, c: CharId) -> Result<CharId> {
        if !self.in_dual_target(s, c) {
            return Err(Error::DomainViolation(self.semigroup().name(s).to_string()));
        }
        let th = self.theta().map(s);
        self.char_from_support(|x| self.eval_set(c, &th.image(self.lattice().members(x))))
            .ok_or_else(|| Error::DomainViolation(self.semigroup().name(s).to_string()))
    }

    pub fn dual_unitized(&self, u: Unitized, c: CharId) -> Result<CharId> {
        match u {
            Unitized::Unit => Ok(c),
            Unitized::Elem(s) => self.dual_apply(s, c),
        }
    }

    fn in_dual_source_unitized(&self, u: Unitized, c: CharId) -> bool {
        match u {
            Unitized::Unit => true,
            Unitized::Elem(s) => self.in_dual_source(s, c),
        }
    }

    /// θ̂ as a representation on character indices.
    pub fn dual_rep(&self) -> Representation {
        let k = self.char_count();
        let maps = (0..self.semigroup().size())
            .map(|s| {
                let pairs = self.characters().filter_map(|c| Some((c, self.dual_apply(s, c).ok()?)));
                PartialBijection::from_pairs(k, pairs).expect("dual maps are injective")
            })
            .collect();
        let labels = self.characters().map(|c| self.char_label(c)).collect();
        Representation::new(labels, Subset::full(k), maps).expect("maps stay on the carrier")
    }

    /// `h·φ : X ↦ φ(h⁻¹(X))`, defined when `φ(dom h) = 1`.
    pub fn hull_act(&self, h: &PartialBijection, c: CharId) -> Option<CharId> {
        if !self.eval_set(c, &h.domain()) {
            return None;
        }
        self.char_from_support(|x| self.eval_set(c, &h.preimage(self.lattice().members(x))))
    }

    pub fn dual_string_laws(&self) -> DualStringLaws {
        let s = self.semigroup();
        let n = s.size();
        let mut back = None;
        let mut back_str = None;
        let mut birth = None;
        let mut orbit = None;
        for a in 0..n {
            for c in self.characters() {
                let sigma = self.sigma_of_char(c);
                if self.in_dual_target(a, c) {
                    let pulled = self.sigma_of_char(self.dual_inverse(a, c).unwrap());
                    let expect = Subset::from_indices(n, (0..n).filter(|&p| sigma.contains(s.mul(a, p))));
                    if back.is_none() && pulled != expect {
                        back = Some((a, c));
                    }
                    let inner = crate::strings::interior(s, &sigma);
                    let ok = sigma.contains(a)
                        && if inner.contains(a) {
                            let hits = sigma.intersects(&self.theta().map(a).range());
                            hits && star_inverse(s, a, &sigma).ok() == Some(pulled.clone())
                        } else {
                            pulled.is_empty()
                        };
                    if back_str.is_none() && !ok {
                        back_str = Some((a, c));
                    }
                }
                if self.in_dual_source(a, c) {
                    let d = self.dual_apply(a, c).unwrap();
                    let pushed = self.sigma_of_char(d);
                    let ok = self.in_e_one_set(self.min(d))
                        && if sigma.is_empty() {
                            Some(pushed.clone()) == s.divisors(a).ok()
                        } else {
                            sigma.is_subset(&self.theta().map(a).domain())
                                && crate::strings::star_apply(s, a, &sigma).ok() == Some(pushed.clone())
                        };
                    if birth.is_none() && !ok {
                        birth = Some((a, c));
                    }
                }
                if a != s.zero()
                    && !s.right_ideal(a).contains(a)
                    && Some(&sigma) == s.divisors(a).ok().as_ref()
                {
                    let ok = self.in_dual_target(a, c)
                        && self.is_ground(self.dual_inverse(a, c).unwrap());
                    if orbit.is_none() && !ok {
                        orbit = Some((a, c));
                    }
                }
            }
        }
        DualStringLaws {
            back_invariance: Verdict::from_failure(back),
            back_on_strings: Verdict::from_failure(back_str),
            birth_of_string: Verdict::from_failure(birth),
            ground_orbit: Verdict::from_failure(orbit),
        }
    }

    /// All `(u, φ₀)` with φ₀ ground in F̂_u and `θ̂_u φ₀ = φ`.
    pub fn ground_preimages(&self, c: CharId) -> Vec<(Unitized, CharId)> {
        let n = self.semigroup().size();
        let grounds: Vec<CharId> = self.characters().filter(|&g| self.is_ground(g)).collect();
        let mut out = Vec::new();
        for u in [Unitized::Unit].into_iter().chain((0..n).map(Unitized::Elem)) {
            for &g in &grounds {
                if self.in_dual_source_unitized(u, g) && self.dual_unitized(u, g).ok() == Some(c) {
                    out.push((u, g));
                }
            }
        }
        out
    }

    pub fn nonopen_decomposition(&self, c: CharId) -> Result<NonOpenDecomposition> {
        if self.is_open_char(c) {
            return Err(Error::NotApplicable("character is open".into()));
        }
        let found = self.ground_preimages(c);
        let &(u, ground) = found
            .first()
            .ok_or_else(|| Error::NotApplicable("no ground preimage".into()))?;
        Ok(NonOpenDecomposition { u, ground, candidates: found.len() })
    }

    /// Every non-open character has exactly one ground preimage and every
    /// image of a ground character is non-open.
    pub fn nonopen_uniqueness(&self) -> Verdict<CharId> {
        let n = self.semigroup().size();
        for c in self.characters() {
            let count = self.ground_preimages(c).len();
            let open = self.is_open_char(c);
            if (open && count != 0) || (!open && count != 1) {
                return Verdict::from_failure(Some(c));
            }
        }
        for g in self.characters().filter(|&g| self.is_ground(g)) {
            for a in 0..n {
                if let Ok(d) = self.dual_apply(a, g) {
                    if self.is_open_char(d) {
                        return Verdict::from_failure(Some(d));
                    }
                }
            }
        }
        Verdict::from_failure(None)
    }

    pub fn covariance(&self) -> Result<CovarianceReport> {
        let s = self.semigroup();
        let star = self.star();
        let mut dual = None;
        'outer: for a in 0..s.size() {
            for i in 0..self.strings().len() {
                if self.is_degenerate_string(i) {
                    continue;
                }
                let phi = self.phi_of_string(i)?;
                let f = star.map(a).get(i);
                if self.in_dual_source(a, phi) != f.is_some() {
                    dual = Some((a, i));
                    break 'outer;
                }
                if let Some(j) = f {
                    if self.dual_apply(a, phi).ok() != self.phi_of_string(j).ok() {
                        dual = Some((a, i));
                        break 'outer;
                    }
                }
                let b = star.map(a).invert().get(i);
                if self.in_dual_target(a, phi) != b.is_some() {
                    dual = Some((a, i));
                    break 'outer;
                }
                if let Some(j) = b {
                    if self.dual_inverse(a, phi).ok() != self.phi_of_string(j).ok() {
                        dual = Some((a, i));
                        break 'outer;
                    }
                }
            }
        }
        let mut hull = None;
        if self.hull().admits_lcms() {
            'h: for (k, h) in self.hull().elements().iter().enumerate() {
                let r = self.rho(k)?;
                for i in 0..self.strings().len() {
                    if self.is_degenerate_string(i) {
                        continue;
                    }
                    let phi = self.phi_of_string(i)?;
                    let moved = self.hull_act(&h.map, phi);
                    let expect = match r.get(i) {
                        Some(j) => Some(self.phi_of_string(j)?),
                        None => None,
                    };
                    if moved != expect {
                        hull = Some((k, i));
                        break 'h;
                    }
                }
            }
        }
        Ok(CovarianceReport {
            dual: Verdict::from_failure(dual),
            hull: Verdict::from_failure(hull),
        })
    }

    /// ρ on the k-th hull element, evaluated through its first normal form.
    pub fn rho(&self, k: usize) -> Result<PartialBijection> {
        self.semigroup().require_lcms()?;
        let w = self.hull().elements()[k].witnesses.first().ok_or(Error::NoWitness)?;
        self.rho_of_form(&w.u, &w.lambda, &w.v)
    }

    fn rho_of_form(&self, u: &Unitized, lambda: &[Unitized], v: &Unitized) -> Result<PartialBijection> {
        let star = self.star();
        let src = self.strings().lambda_source(self.theta(), lambda)?;
        Ok(star
            .map_unitized(*u)
            .restrict(&src)
            .after(&star.map_unitized(*v).invert()))
    }

    pub fn rho_laws(&self) -> Result<RhoReport> {
        let hull = self.hull();
        let rhos: Vec<PartialBijection> =
            (0..hull.len()).map(|k| self.rho(k)).collect::<Result<_>>()?;
        let mut well_defined = None;
        for (k, e) in hull.elements().iter().enumerate() {
            for w in &e.witnesses[1..] {
                if self.rho_of_form(&w.u, &w.lambda, &w.v)? != rhos[k] {
                    well_defined = Some(k);
                }
            }
            if well_defined.is_some() {
                break;
            }
        }
        let s = self.semigroup();
        let theta = self.theta();
        let extends_star = (0..s.size()).find(|&a| {
            let k = hull.find(theta.map(a)).expect("generators lie in the hull");
            rhos[k] != *self.star().map(a)
        });
        // products with generators reach every product
        let mut gens = Vec::new();
        for a in 0..s.size() {
            gens.push(hull.find(theta.map(a)).unwrap());
            gens.push(hull.find(&theta.map(a).invert()).unwrap());
        }
        let mut multiplicative = None;
        'm: for k in 0..hull.len() {
            for &g in &gens {
                let p = hull.elements()[k].map.after(&hull.elements()[g].map);
                let j = hull.find(&p).expect("hull is closed");
                if rhos[j] != rhos[k].after(&rhos[g]) {
                    multiplicative = Some((k, g));
                    break 'm;
                }
            }
        }
        let inverse_preserving = (0..hull.len()).find(|&k| {
            let j = hull.find(&hull.elements()[k].map.invert()).expect("hull is closed");
            rhos[j] != rhos[k].invert()
        });
        Ok(RhoReport {
            well_defined: Verdict::from_failure(well_defined),
            extends_star: Verdict::from_failure(extends_star),
            multiplicative: Verdict::from_failure(multiplicative),
            inverse_preserving: Verdict::from_failure(inverse_preserving),
        })
    }

    /// Sets `F_Λ` for nonempty `Λ ⊆ S`.
    fn lambda_sources(&self) -> Vec<Subset> {
        let n = self.semigroup().size();
        let mut out: Vec<Subset> = Vec::new();
        let mut seen = HashMap::new();
        for a in 0..n {
            let f = self.theta().map(a).domain();
            if seen.insert(f.clone(), ()).is_none() {
                out.push(f);
            }
        }
        let mut i = 0;
        while i < out.len() {
            for a in 0..n {
                let m = out[i].intersection(&self.theta().map(a).domain());
                if seen.insert(m.clone(), ()).is_none() {
                    out.push(m);
                }
            }
            i += 1;
        }
        out
    }

    pub fn ultra_classification(&self) -> Result<UltraClassification> {
        let s = self.semigroup();
        let k = self.strings().len();
        let mut phi = vec![None; k];
        for (i, slot) in phi.iter_mut().enumerate() {
            if !self.is_degenerate_string(i) {
                *slot = Some(self.phi_of_string(i)?);
            }
        }
        let open_string = |i: usize| is_open(s, self.strings().get(i));
        let quasi_maximal: Vec<usize> =
            (0..k).filter(|&i| phi[i].is_some_and(|c| self.is_ultra(c))).collect();

        let mut open = Vec::new();
        let mut open_without_string = Vec::new();
        let mut non_open = Vec::new();
        let mut non_open_without_ground_ultra = Vec::new();
        for c in self.ultra() {
            if self.is_open_char(c) {
                match quasi_maximal.iter().find(|&&i| open_string(i) && phi[i] == Some(c)) {
                    Some(&i) => open.push((c, i)),
                    None => open_without_string.push(c),
                }
            } else {
                match self.nonopen_decomposition(c) {
                    Ok(d) if self.is_ultra(d.ground) => non_open.push((c, d.u, d.ground)),
                    _ => non_open_without_ground_ultra.push(c),
                }
            }
        }
        let open_quasi_maximal_not_open_ultra = quasi_maximal
            .iter()
            .copied()
            .filter(|&i| open_string(i) && !phi[i].is_some_and(|c| self.is_open_char(c)))
            .collect();

        let mut ground_ultra_orbit_failures = Vec::new();
        for g in self.ultra().into_iter().filter(|&g| self.is_ground(g)) {
            for a in 0..s.size() {
                if let Ok(d) = self.dual_apply(a, g) {
                    if !self.is_ultra(d) || self.is_open_char(d) {
                        ground_ultra_orbit_failures.push((Unitized::Elem(a), g));
                    }
                }
            }
        }

        let maximal = self.strings().maximal();
        let open_maximal_not_ultra = maximal
            .iter()
            .copied()
            .filter(|&i| open_string(i) && !phi[i].is_some_and(|c| self.is_ultra(c)))
            .collect();

        let mut relatively_maximal_not_ultra = Vec::new();
        for d in self.lambda_sources() {
            let inside: Vec<usize> = (0..k).filter(|&i| self.strings().get(i).is_subset(&d)).collect();
            for &i in &inside {
                let sigma = self.strings().get(i);
                let top = !inside.iter().any(|&j| j != i && sigma.is_subset(self.strings().get(j)));
                if top
                    && open_string(i)
                    && !phi[i].is_some_and(|c| self.is_ultra(c))
                    && !relatively_maximal_not_ultra.contains(&i)
                {
                    relatively_maximal_not_ultra.push(i);
                }
            }
        }

        Ok(UltraClassification {
            open,
            non_open,
            quasi_maximal,
            open_without_string,
            open_quasi_maximal_not_open_ultra,
            non_open_without_ground_ultra,
            ground_ultra_orbit_failures,
            open_maximal_not_ultra,
            relatively_maximal_not_ultra,
        })
    }

    /// First place where θ̂_s or θ̂_s⁻¹ leads out of the subset.
    pub fn invariance(&self, subset: &[CharId]) -> Verdict<InvarianceFailure> {
        let n = self.semigroup().size();
        for a in 0..n {
            for &c in subset {
                if let Ok(d) = self.dual_apply(a, c) {
                    if !subset.contains(&d) {
                        return Verdict::from_failure(Some(InvarianceFailure { elem: a, character: c, inverse: false }));
                    }
                }
                if let Ok(d) = self.dual_inverse(a, c) {
                    if !subset.contains(&d) {
                        return Verdict::from_failure(Some(InvarianceFailure { elem: a, character: c, inverse: true }));
                    }
                }
            }
        }
        Verdict::from_failure(None)
    }

    /// `{φ_σ : σ maximal}`, skipping degenerate maximal strings.
    pub fn max_characters(&self) -> Result<Vec<CharId>> {
        let mut out = Vec::new();
        for i in self.strings().maximal() {
            if !self.is_degenerate_string(i) {
                out.push(self.phi_of_string(i)?);
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    pub fn spectra_subsets(&self) -> Result<SpectraSubsets> {
        let ultra = self.ultra();
        let max = self.max_characters()?;
        let tight = ultra.clone();
        let open: Vec<CharId> = self.characters().filter(|&c| self.is_open_char(c)).collect();
        Ok(SpectraSubsets {
            ultra_invariant: self.invariance(&ultra),
            max_invariant: self.invariance(&max),
            tight_invariant: self.invariance(&tight),
            open_invariant: self.invariance(&open),
            max_within_tight: max.iter().all(|c| tight.contains(c)),
            ultra,
            max,
            tight,
            open,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::check_representation;
    use crate::semigroup::fixtures::*;
    use crate::semigroup::Semigroup;

    fn set(s: &Semigroup, names: &[&str]) -> Subset {
        Subset::from_indices(s.size(), names.iter().map(|n| s.index_of(n).unwrap()))
    }

    #[test]
    fn dual_map_on_four_words() {
        let w = four_words();
        let sp = Spectrum::new(&w).unwrap();
        let ground = sp.char_with_min_set(&set(&w, &["a"])).unwrap();
        let upper = sp.char_with_min_set(&set(&w, &["ba"])).unwrap();
        assert_eq!(sp.dual_apply(2, ground), Ok(upper));
        assert_eq!(sp.dual_inverse(2, upper), Ok(ground));
        assert!(matches!(sp.dual_apply(3, ground), Err(Error::DomainViolation(_))));
        let d = sp.nonopen_decomposition(upper).unwrap();
        assert_eq!((d.u, d.ground, d.candidates), (Unitized::Elem(2), ground, 1));
        let d = sp.nonopen_decomposition(ground).unwrap();
        assert_eq!((d.u, d.ground), (Unitized::Unit, ground));
        let r = check_representation(&w, &sp.dual_rep());
        assert!(r.is_representation.holds);
        assert_eq!(sp.sigma_of_char(sp.dual_apply(2, ground).unwrap()), set(&w, &["b"]));
    }

    #[test]
    fn open_characters_do_not_decompose() {
        let c = unital_chain();
        let sp = Spectrum::new(&c).unwrap();
        assert!(matches!(sp.nonopen_decomposition(0), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn laws_on_fixtures() {
        for s in [unital_chain(), prime_idempotent(), four_words()] {
            let sp = Spectrum::new(&s).unwrap();
            let laws = sp.dual_string_laws();
            assert!(laws.back_invariance.holds, "{s:?}");
            assert!(laws.back_on_strings.holds, "{s:?}");
            assert!(laws.birth_of_string.holds, "{s:?}");
            assert!(laws.ground_orbit.holds, "{s:?}");
            assert!(sp.nonopen_uniqueness().holds);
            let cov = sp.covariance().unwrap();
            assert!(cov.dual.holds && cov.hull.holds);
            let rho = sp.rho_laws().unwrap();
            assert!(rho.well_defined.holds && rho.extends_star.holds);
            assert!(rho.multiplicative.holds && rho.inverse_preserving.holds);
            assert!(sp.ultra_classification().unwrap().holds());
            assert!(check_representation(&s, &sp.dual_rep()).is_representation.holds);
        }
    }

    #[test]
    fn ultra_classification_of_examples() {
        let c = unital_chain();
        let sp = Spectrum::new(&c).unwrap();
        let u = sp.ultra_classification().unwrap();
        assert_eq!(u.quasi_maximal.len(), 3);
        assert_eq!(u.open.len(), 3);
        assert!(u.non_open.is_empty());

        let w = four_words();
        let sp = Spectrum::new(&w).unwrap();
        let u = sp.ultra_classification().unwrap();
        let upper = sp.char_with_min_set(&set(&w, &["ba"])).unwrap();
        let ground = sp.char_with_min_set(&set(&w, &["a"])).unwrap();
        assert!(u.non_open.contains(&(upper, Unitized::Elem(2), ground)));
    }

    #[test]
    fn spectra_subsets_of_unital_chain() {
        let c = unital_chain();
        let sp = Spectrum::new(&c).unwrap();
        let sub = sp.spectra_subsets().unwrap();
        let top = sp.char_with_min_set(&set(&c, &["aa"])).unwrap();
        assert_eq!(sub.max, vec![top]);
        assert_eq!(sub.tight.len(), 3);
        assert!(sub.max_within_tight);
        assert!(sub.ultra_invariant.holds);
    }

    #[test]
    fn rho_extends_theta_star() {
        let c = unital_chain();
        let sp = Spectrum::new(&c).unwrap();
        let k = sp.hull().find(sp.theta().map(2)).unwrap();
        assert_eq!(sp.rho(k).unwrap(), *sp.star().map(2));
        let fa = PartialBijection::identity(&sp.theta().map(2).domain());
        let k = sp.hull().find(&fa).unwrap();
        let fstar = sp.strings().source_set(sp.theta(), Unitized::Elem(2));
        assert_eq!(sp.rho(k).unwrap(), PartialBijection::identity(&fstar));
    }
}
