//! The invariant suite behind `verify`: every law the library claims,
//! checked on one input.

use std::collections::BTreeMap;
use std::fmt::Debug;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;
use crate::hull::{normal_forms, InverseHull};
use crate::rep::{check_representation, respects_lcms};
use crate::semigroup::{Elem, Semigroup, Verdict};
use crate::spectrum::Spectrum;
use crate::strings::{classify_element, delta_covariance_check, is_string, star_apply, star_inverse};
use crate::set::Subset;
use crate::subshift::{normal_form_uniqueness, Cardinality, Language, ShiftSemigroup, Word};

/// Germ groupoids with more arrows than this are not checked for associativity.
pub const GERM_ARROW_LIMIT: usize = 400;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    /// A failure counts as a violation.
    pub enforced: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Suite {
    pub checks: Vec<Check>,
    /// Checks that do not apply to this input, with the reason.
    pub skipped: BTreeMap<String, String>,
    pub findings: BTreeMap<String, Value>,
}

impl Suite {
    fn check<W: Debug>(&mut self, name: &str, v: &Verdict<W>) {
        self.push(name, v.holds, true, v.witness.as_ref().map(|w| format!("{w:?}")));
    }

    fn check_elems<const N: usize>(&mut self, s: &Semigroup, name: &str, v: &Verdict<[Elem; N]>) {
        let w = v.witness.map(|w| format!("{:?}", w.map(|x| s.name(x))));
        self.push(name, v.holds, true, w);
    }

    fn note<W: Debug>(&mut self, name: &str, v: &Verdict<W>) {
        self.push(name, v.holds, false, v.witness.as_ref().map(|w| format!("{w:?}")));
    }

    fn flag(&mut self, name: &str, holds: bool, witness: impl FnOnce() -> String) {
        let w = (!holds).then(witness);
        self.push(name, holds, true, w);
    }

    fn push(&mut self, name: &str, holds: bool, enforced: bool, witness: Option<String>) {
        self.checks.push(Check { name: name.to_string(), holds, enforced, witness });
    }

    fn skip(&mut self, name: &str, why: &str) {
        self.skipped.insert(name.to_string(), why.to_string());
    }

    pub fn violations(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.enforced && !c.holds).collect()
    }

    pub fn is_clean(&self) -> bool {
        self.violations().is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn absorb(&mut self, prefix: &str, other: Suite) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
        for (k, v) in other.skipped {
            self.skipped.insert(format!("{prefix}{k}"), v);
        }
        for (k, v) in other.findings {
            self.findings.insert(format!("{prefix}{k}"), v);
        }
    }
}

/// Runs every check that applies to `s`.
pub fn verify_semigroup(s: &Semigroup) -> Result<Suite> {
    let mut suite = Suite::default();
    let report = s.classify();
    suite.check_elems(s, "zero-left-cancellative", &report.zero_left_cancellative);
    if !report.zero_left_cancellative.holds {
        suite.skip("everything else", "needs a 0-left-cancellative semigroup");
        return Ok(suite);
    }
    let lcms = s.admits_lcms();
    suite.findings.insert("admits lcms".into(), json!(lcms));
    let lcm_only = "needs least common multiples";

    let sp = Spectrum::new(s)?;
    let theta = sp.theta();
    let rc = check_representation(s, theta);
    suite.check("regular representation is a representation", &rc.is_representation);
    suite.push("regular representation is essential", rc.is_essential, false, None);
    suite.check("regular representation covariance", &rc.covariance);
    if lcms {
        suite.check("regular representation respects lcms", &respects_lcms(s, theta)?);
    } else {
        suite.skip("regular representation respects lcms", lcm_only);
    }

    hull_checks(&mut suite, s, sp.hull(), lcms)?;
    string_checks(&mut suite, s, &sp)?;
    spectrum_checks(&mut suite, &sp, lcms)?;
    Ok(suite)
}

fn hull_checks(suite: &mut Suite, s: &Semigroup, hull: &InverseHull, lcms: bool) -> Result<()> {
    suite.findings.insert("hull size".into(), json!(hull.len()));
    if lcms {
        let nf = normal_forms(s)?;
        let mut a: Vec<_> = hull.elements().iter().map(|h| h.map.clone()).collect();
        let mut b: Vec<_> = nf.elements.iter().map(|h| h.map.clone()).collect();
        a.sort();
        b.sort();
        let missing = a.iter().find(|m| b.binary_search(m).is_err());
        let extra = b.iter().find(|m| a.binary_search(m).is_err());
        suite.flag("hull equals its normal forms", a == b, || format!("{missing:?} / {extra:?}"));
        let no_witness = hull.elements().iter().position(|h| h.witnesses.is_empty());
        suite.check("every hull element has a normal form", &Verdict::from_failure(no_witness));
        suite.note("normal form unique per element", &normal_form_uniqueness(hull));
    } else {
        suite.skip("hull equals its normal forms", "needs least common multiples");
    }
    let lattice = hull.semilattice();
    let mut closed = None;
    for i in 0..lattice.len() {
        for j in 0..lattice.len() {
            if lattice.meet(i, j).is_none() {
                closed.get_or_insert([i, j]);
            }
        }
    }
    suite.check("constructible sets closed under intersection", &Verdict::from_failure(closed));
    suite.findings.insert("constructible sets".into(), json!(lattice.len() - 1));
    Ok(())
}

fn string_checks(suite: &mut Suite, s: &Semigroup, sp: &Spectrum) -> Result<()> {
    let strings = sp.strings();
    let star = sp.star();
    let theta = sp.theta();
    suite.findings.insert("strings".into(), json!(strings.len()));
    let not_string = (0..strings.len()).find(|&i| !is_string(s, strings.get(i)).holds);
    suite.check("every divisor set is a string", &Verdict::from_failure(not_string));
    suite.check("divisor sets move covariantly", &delta_covariance_check(s)?);
    let sc = check_representation(s, star);
    suite.check("string action is a representation", &sc.is_representation);
    suite.check("string action covariance", &sc.covariance);

    let mut round = None;
    'r: for r in s.nonzero() {
        for i in 0..strings.len() {
            let sigma = strings.get(i);
            if let Ok(img) = star_apply(s, r, sigma) {
                if star_inverse(s, r, &img).ok().as_ref() != Some(sigma) {
                    round = Some((r, i));
                    break 'r;
                }
            }
            if sigma.intersects(&theta.map(r).range()) {
                if let Ok(pre) = star_inverse(s, r, sigma) {
                    if star_apply(s, r, &pre).ok().as_ref() != Some(sigma) {
                        round = Some((r, i));
                        break 'r;
                    }
                }
            }
        }
    }
    suite.check("string action round trips", &Verdict::from_failure(round));

    let mut membership = None;
    let mut source = None;
    'w: for x in sp.lattice().nonzero() {
        for w in &sp.lattice().get(x).witnesses {
            let mut lambda = w.lambda.clone();
            if !lambda.contains(&w.u) {
                lambda.push(w.u);
                lambda.sort_unstable();
            }
            let Ok(direct) = strings.star_image(s, star, theta, w.u, &lambda) else { continue };
            for i in 0..strings.len() {
                if strings.star_image_membership(s, theta, w.u, &lambda, i)? != direct.contains(i) {
                    membership = Some((x, i));
                    break 'w;
                }
            }
            let (f, _) = theta.f_lambda(&lambda)?;
            let inside = Subset::from_indices(strings.len(), (0..strings.len()).filter(|&i| strings.get(i).is_subset(&f)));
            let mut by_maps = Subset::full(strings.len());
            for &t in &lambda {
                by_maps.intersect_with(&strings.source_set(theta, t));
            }
            if inside != by_maps {
                source = Some(x);
                break 'w;
            }
        }
    }
    suite.check("string images of constructible sets", &Verdict::from_failure(membership));
    suite.check("string domains of constructible sets", &Verdict::from_failure(source));

    let m = strings.maximality_report(s, star);
    let fwd = m.forward_failures.first().copied();
    suite.check("maximal strings stay maximal going forward", &Verdict::from_failure(fwd));
    let back = m.inverse_failures.first().copied();
    suite.note("maximal strings stay maximal going back", &Verdict::from_failure(back));

    let mut prime = None;
    for a in s.nonzero() {
        let single = Subset::from_indices(s.size(), [a]);
        if is_string(s, &single).holds != classify_element(s, a)?.prime {
            prime = Some(a);
            break;
        }
    }
    suite.check("singleton strings are the primes", &Verdict::from_failure(prime));
    Ok(())
}

fn spectrum_checks(suite: &mut Suite, sp: &Spectrum, lcms: bool) -> Result<()> {
    let s = sp.semigroup();
    let lcm_only = "needs least common multiples";
    suite.findings.insert("characters".into(), json!(sp.char_count()));
    suite.findings.insert("ultra characters".into(), json!(sp.ultra().len()));

    suite.check("string sets of constructible sets do not depend on the form", &sp.epsilon_consistency());
    suite.check("characters nonzero on some E_s are those with a string", &sp.e_one_equivalence());
    suite.check("string of a character is an lcm-closed string", &sp.sigma_is_lcm_closed_string());
    suite.check("characters of strings", &sp.string_character_laws()?);
    suite.check("open characters lie below the character of their string", &sp.open_char_below_phi_sigma()?);

    let dual = sp.dual_rep();
    let dc = check_representation(s, &dual);
    suite.check("dual action is a representation", &dc.is_representation);
    let laws = sp.dual_string_laws();
    suite.check("dual pull-back and strings", &laws.back_invariance);
    suite.check("dual pull-back lands in the string or the ground", &laws.back_on_strings);
    suite.check("dual push-forward and strings", &laws.birth_of_string);
    suite.check("divisor strings of non-idempotent-like tops pull back to ground", &laws.ground_orbit);
    suite.check("non-open characters come from a unique ground character", &sp.nonopen_uniqueness());

    let cov = sp.covariance()?;
    suite.check("characters of strings move covariantly", &cov.dual);
    let sub = sp.spectra_subsets()?;
    suite.check("ultra characters are invariant", &sub.ultra_invariant);
    suite.check("tight characters are invariant", &sub.tight_invariant);
    suite.note("characters of maximal strings are invariant", &sub.max_invariant);
    suite.note("open characters are invariant", &sub.open_invariant);
    suite.push("characters of maximal strings are tight", sub.max_within_tight, false, None);

    let tight = sp.characters().find(|&c| sp.is_essentially_tight(c, 1));
    suite.check("no essentially tight characters", &Verdict::from_failure(tight));

    if lcms {
        suite.check("hull action matches the string action", &cov.hull);
        let rho = sp.rho_laws()?;
        suite.check("string hull map is well defined", &rho.well_defined);
        suite.check("string hull map extends the string action", &rho.extends_star);
        suite.check("string hull map is multiplicative", &rho.multiplicative);
        suite.check("string hull map preserves inverses", &rho.inverse_preserving);
        let u = sp.ultra_classification()?;
        let v = |xs: &[usize]| Verdict::from_failure(xs.first().copied());
        suite.check("open ultra characters come from open quasi-maximal strings", &v(&u.open_without_string));
        suite.check(
            "open quasi-maximal strings give open ultra characters",
            &v(&u.open_quasi_maximal_not_open_ultra),
        );
        suite.check("non-open ultra characters come from ground ultra ones", &v(&u.non_open_without_ground_ultra));
        suite.check(
            "ground ultra characters move to non-open ultra ones",
            &Verdict::from_failure(u.ground_ultra_orbit_failures.first().copied()),
        );
        suite.check("open maximal strings give ultra characters", &v(&u.open_maximal_not_ultra));
        suite.check(
            "relatively maximal open strings give ultra characters",
            &v(&u.relatively_maximal_not_ultra),
        );
        suite.findings.insert("quasi-maximal strings".into(), json!(u.quasi_maximal.len()));
    } else {
        for name in ["string hull map", "ultra classification", "hull action matches the string action"] {
            suite.skip(name, lcm_only);
        }
    }

    for (label, set) in [("all", sp.characters().collect::<Vec<_>>()), ("ultra", sub.ultra.clone())] {
        let name = format!("germ groupoid over {label} characters");
        let g = sp.germ_groupoid(&set)?;
        suite.findings.insert(format!("germs over {label} characters"), json!(g.len()));
        if g.len() > GERM_ARROW_LIMIT {
            suite.skip(&name, "too many arrows");
            continue;
        }
        let ax = g.axioms();
        suite.flag(&name, ax.holds(), || format!("{ax:?}"));
    }
    Ok(())
}

/// Language-level checks, then the semigroup suite on the language semigroup.
pub fn verify_subshift(shift: &ShiftSemigroup, lambda_bound: usize) -> Result<Suite> {
    let mut suite = Suite::default();
    let l = shift.language();
    let s = shift.semigroup();
    suite.findings.insert("words".into(), json!(l.len()));
    suite.findings.insert("depth".into(), json!(l.depth()));
    let closure = l.factor_closure_failure().map(|w| l.render(&w));
    suite.check("language is factor closed", &Verdict::from_failure(closure));
    let r = s.classify();
    suite.check_elems(s, "language semigroup is 0-right-cancellative", &r.zero_right_cancellative);
    suite.flag("language semigroup admits lcms", s.admits_lcms(), || "no lcm".into());
    suite.flag("language semigroup has no nonzero idempotents", r.idempotents.is_empty(), || {
        format!("{:?}", s.set_names(&Subset::from_indices(s.size(), r.idempotents.iter().copied())))
    });
    suite.note("language semigroup is categorical at zero", &r.categorical_at_zero);
    suite.check("division is the prefix order", &shift.divisibility_is_prefix());
    let bridge = shift.word_string_bridge()?;
    suite.flag("words and strings correspond", bridge.is_bijection(), || format!("{bridge:?}"));
    let hull = InverseHull::generate(s)?;
    suite.check("normal forms are unique", &normal_form_uniqueness(&hull));

    let sp = Spectrum::new(s)?;
    let (bad, outside) = shift.char_eval_disagreements(&sp)?;
    suite.check("words evaluate characters", &Verdict::from_failure(bad.first().cloned()));
    suite.findings.insert("word evaluations beyond the depth".into(), json!(outside));

    if l.automaton().is_some() {
        let g = shift.ground_ultra_report(lambda_bound)?;
        if let Some(w) = &g.empty_or_infinite.witness {
            let lambda: Vec<Word> = w.lambda.iter().map(|t| l.spec().parse(t)).collect::<Result<_>>()?;
            suite.flag("finite constructible sets agree with a deeper cut", deeper_agrees(shift, &lambda)?, || {
                format!("{:?}", w.lambda)
            });
            suite.findings.insert(
                "finite constructible set".into(),
                json!({"lambda": w.lambda, "members": w.members}),
            );
        }
        suite.findings.insert("ground ultra report".into(), serde_json::to_value(&g).expect("plain data"));
    } else {
        suite.skip("ground ultra report", "explicit languages are not subshifts");
    }
    suite.absorb("semigroup: ", verify_semigroup(s)?);
    Ok(suite)
}

/// Cuts the language deep enough that a finite `F_Λ` is seen in full, and
/// compares.
fn deeper_agrees(shift: &ShiftSemigroup, lambda: &[Word]) -> Result<bool> {
    let l = shift.language();
    let Cardinality::Finite(members) = shift.constructible_infinite(lambda, None)? else {
        return Ok(true);
    };
    let longest = members.iter().map(|m| m.chars().count()).max().unwrap_or(0);
    let memory = lambda.iter().map(Word::len).max().unwrap_or(0);
    let deep = ShiftSemigroup::new(Language::build(l.spec(), Some(longest + memory + 1))?)?;
    let d = deep.semigroup();
    let mut f = d.nonzero_set();
    for t in lambda {
        let e = deep.elem(t).expect("shorter than the cut");
        let col = Subset::from_indices(d.size(), d.nonzero().filter(|&x| d.mul(e, x) != d.zero()));
        f.intersect_with(&col);
    }
    let got: Vec<String> = f.iter().map(|x| d.name(x).to_string()).collect();
    Ok(got == members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::fixtures::*;
    use crate::subshift::{fixtures::*, language_semigroup};

    #[test]
    fn fixtures_are_clean() {
        for s in [unital_chain(), prime_idempotent(), four_words()] {
            let suite = verify_semigroup(&s).unwrap();
            assert!(suite.is_clean(), "{:?}", suite.violations());
            assert!(suite.skipped.is_empty(), "{:?}", suite.skipped);
        }
    }

    #[test]
    fn subshifts_are_clean() {
        let shift = language_semigroup(&no_repetition(), Some(3)).unwrap();
        let suite = verify_subshift(&shift, 3).unwrap();
        assert!(suite.is_clean(), "{:?}", suite.violations());
        assert_eq!(
            suite.findings["finite constructible set"],
            json!({"lambda": ["a", "b"], "members": ["c"]})
        );
        for (spec, d) in [(four_word_language(), 2), (golden_mean(), 4), (full_shift(), 3), (short_words(), 2)] {
            let shift = language_semigroup(&spec, Some(d)).unwrap();
            let suite = verify_subshift(&shift, 2).unwrap();
            assert!(suite.is_clean(), "{:?}", suite.violations());
        }
    }
}
