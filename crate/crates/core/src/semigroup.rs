//! Finite semigroups with zero, given by multiplication tables.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::set::Subset;

/// Dense element index.
pub type Elem = usize;

/// An element of S with an external unit adjoined.
///
/// `Unit` acts as a two-sided identity and never coincides with any element of
/// S, not even with an identity S may already have. `Elem` may wrap the zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Unitized {
    Unit,
    Elem(Elem),
}

impl Unitized {
    pub fn elem(self) -> Option<Elem> {
        match self {
            Unitized::Unit => None,
            Unitized::Elem(s) => Some(s),
        }
    }
}

/// Display name of the adjoined unit.
pub const UNIT_NAME: &str = "~1";

/// On-disk form: `table[i][j]` names the product of `elements[i]` by `elements[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupDocument {
    pub elements: Vec<String>,
    pub zero: String,
    pub table: Vec<Vec<String>>,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Semigroup {
    names: Vec<String>,
    zero: Elem,
    table: Vec<Elem>,
    // sS for every s, zero included
    ideals: Vec<Subset>,
}

/// Outcome of a universally quantified check, with the first failure found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict<W> {
    pub holds: bool,
    pub witness: Option<W>,
}

impl<W> Verdict<W> {
    pub fn from_failure(witness: Option<W>) -> Self {
        Verdict { holds: witness.is_none(), witness }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    /// witness `(s, t, r)`: `st = sr != 0`, `t != r`
    pub zero_left_cancellative: Verdict<[Elem; 3]>,
    /// witness `(s, t, r)`: `ts = rs != 0`, `t != r`
    pub zero_right_cancellative: Verdict<[Elem; 3]>,
    /// witness `(r, s, t)`: `rs != 0`, `st != 0`, `rst = 0`
    pub categorical_at_zero: Verdict<[Elem; 3]>,
    /// witness `(s, t)`: distinct with `sx = tx` for all x
    pub right_reductive: Verdict<[Elem; 2]>,
    /// witness `s`: no idempotent e with `se = s`
    pub right_local_units: Verdict<Elem>,
    pub idempotents: Vec<Elem>,
    pub unital: Option<Elem>,
    /// Only decided for right reductive 0-left cancellative semigroups.
    pub orthogonal_idempotents: Option<Verdict<[Elem; 2]>>,
}

/// All least common multiples of a pair, smallest index first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lcm {
    pub witnesses: Vec<Elem>,
}

impl Lcm {
    pub fn canonical(&self) -> Option<Elem> {
        self.witnesses.first().copied()
    }
}

impl Semigroup {
    /// Builds a semigroup from index rows, checking every axiom.
    pub fn from_table(names: Vec<String>, zero: Elem, rows: Vec<Vec<Elem>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::MalformedTable("no elements".into()));
        }
        let mut seen = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if seen.insert(name.as_str(), i).is_some() {
                return Err(Error::MalformedTable(format!("duplicate element {name}")));
            }
        }
        if zero >= n {
            return Err(Error::MalformedTable("zero out of range".into()));
        }
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::MalformedTable(format!("table must be {n}x{n}")));
        }
        if rows.iter().flatten().any(|&x| x >= n) {
            return Err(Error::MalformedTable("entry out of range".into()));
        }
        let table: Vec<Elem> = rows.into_iter().flatten().collect();
        if let Some(i) = zero_law_failure(n, zero, &table) {
            return Err(Error::ZeroLawViolation(names[i].clone()));
        }
        if let Some([i, j, k]) = associativity_failure(n, &table) {
            return Err(Error::NonAssociative(
                names[i].clone(),
                names[j].clone(),
                names[k].clone(),
            ));
        }
        Ok(Self::assemble(names, zero, table))
    }

    fn assemble(names: Vec<String>, zero: Elem, table: Vec<Elem>) -> Self {
        let n = names.len();
        let ideals = (0..n)
            .map(|s| Subset::from_indices(n, table[s * n..(s + 1) * n].iter().copied()))
            .collect();
        Semigroup { names, zero, table, ideals }
    }

    pub fn load(doc: &SemigroupDocument) -> Result<Self> {
        let index: HashMap<&str, Elem> = doc
            .elements
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::MalformedTable(format!("unknown element {name}")))
        };
        let zero = lookup(&doc.zero)?;
        let rows = doc
            .table
            .iter()
            .map(|row| row.iter().map(|x| lookup(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_table(doc.elements.clone(), zero, rows)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SemigroupDocument =
            serde_json::from_str(text).map_err(|e| Error::MalformedTable(e.to_string()))?;
        Self::load(&doc)
    }

    pub fn to_document(&self) -> SemigroupDocument {
        let n = self.size();
        SemigroupDocument {
            elements: self.names.clone(),
            zero: self.names[self.zero].clone(),
            table: (0..n)
                .map(|i| (0..n).map(|j| self.names[self.mul(i, j)].clone()).collect())
                .collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, s: Elem) -> &str {
        &self.names[s]
    }

    pub fn unitized_name(&self, u: Unitized) -> &str {
        match u {
            Unitized::Unit => UNIT_NAME,
            Unitized::Elem(s) => self.name(s),
        }
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|x| x == name)
    }

    pub fn mul(&self, s: Elem, t: Elem) -> Elem {
        self.table[s * self.size() + t]
    }

    /// `u·x` with the adjoined unit acting trivially.
    pub fn act(&self, u: Unitized, x: Elem) -> Elem {
        match u {
            Unitized::Unit => x,
            Unitized::Elem(s) => self.mul(s, x),
        }
    }

    /// S′ as a list.
    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.size()).filter(move |&s| s != self.zero)
    }

    /// S′ as a set.
    pub fn nonzero_set(&self) -> Subset {
        Subset::from_indices(self.size(), self.nonzero())
    }

    /// sS, zero included.
    pub fn right_ideal(&self, s: Elem) -> &Subset {
        &self.ideals[s]
    }

    /// Nonzero idempotents.
    pub fn idempotents(&self) -> Vec<Elem> {
        self.nonzero().filter(|&e| self.mul(e, e) == e).collect()
    }

    pub fn unit(&self) -> Option<Elem> {
        let n = self.size();
        (0..n).find(|&u| (0..n).all(|x| self.mul(u, x) == x && self.mul(x, u) == x))
    }

    /// First `(s, t, r)` with `st = sr != 0` and `t != r`.
    pub fn left_cancellation_failure(&self) -> Option<[Elem; 3]> {
        let n = self.size();
        for s in 0..n {
            let mut first: HashMap<Elem, Elem> = HashMap::new();
            for t in 0..n {
                let p = self.mul(s, t);
                if p == self.zero {
                    continue;
                }
                if let Some(&r) = first.get(&p) {
                    return Some([s, r, t]);
                }
                first.insert(p, t);
            }
        }
        None
    }

    pub fn is_zero_left_cancellative(&self) -> bool {
        self.left_cancellation_failure().is_none()
    }

    pub fn require_left_cancellative(&self) -> Result<()> {
        match self.left_cancellation_failure() {
            None => Ok(()),
            Some([s, t, r]) => Err(Error::NotLeftCancellative(
                self.names[s].clone(),
                self.names[t].clone(),
                self.names[r].clone(),
            )),
        }
    }

    fn right_cancellation_failure(&self) -> Option<[Elem; 3]> {
        let n = self.size();
        for s in 0..n {
            let mut first: HashMap<Elem, Elem> = HashMap::new();
            for t in 0..n {
                let p = self.mul(t, s);
                if p == self.zero {
                    continue;
                }
                if let Some(&r) = first.get(&p) {
                    return Some([s, r, t]);
                }
                first.insert(p, t);
            }
        }
        None
    }

    fn categorical_failure(&self) -> Option<[Elem; 3]> {
        let n = self.size();
        let z = self.zero;
        let mut fallback = None;
        for r in 0..n {
            for s in 0..n {
                let rs = self.mul(r, s);
                if rs == z {
                    continue;
                }
                for t in 0..n {
                    let st = self.mul(s, t);
                    if st == z || self.mul(rs, t) != z {
                        continue;
                    }
                    if r != s && s != t && r != t {
                        return Some([r, s, t]);
                    }
                    fallback.get_or_insert([r, s, t]);
                }
            }
        }
        fallback
    }

    fn reductive_failure(&self) -> Option<[Elem; 2]> {
        let n = self.size();
        for s in 0..n {
            for t in s + 1..n {
                if (0..n).all(|x| self.mul(s, x) == self.mul(t, x)) {
                    return Some([s, t]);
                }
            }
        }
        None
    }

    fn local_unit_failure(&self) -> Option<Elem> {
        let idem = self.idempotents();
        self.nonzero()
            .find(|&s| !idem.iter().any(|&e| self.mul(s, e) == s))
    }

    pub fn classify(&self) -> PropertyReport {
        let zlc = Verdict::from_failure(self.left_cancellation_failure());
        let rr = Verdict::from_failure(self.reductive_failure());
        let idempotents = self.idempotents();
        let orthogonal_idempotents = (zlc.holds && rr.holds).then(|| {
            let mut bad = None;
            'outer: for &e in &idempotents {
                for &f in &idempotents {
                    if e != f && self.mul(e, f) != self.zero {
                        bad = Some([e, f]);
                        break 'outer;
                    }
                }
            }
            Verdict::from_failure(bad)
        });
        PropertyReport {
            zero_left_cancellative: zlc,
            zero_right_cancellative: Verdict::from_failure(self.right_cancellation_failure()),
            categorical_at_zero: Verdict::from_failure(self.categorical_failure()),
            right_reductive: rr,
            right_local_units: Verdict::from_failure(self.local_unit_failure()),
            idempotents,
            unital: self.unit(),
            orthogonal_idempotents,
        }
    }

    /// The idempotent `s⁺` with `s s⁺ = s`.
    pub fn right_local_unit(&self, s: Elem) -> Result<Elem> {
        if s == self.zero {
            return Err(Error::ZeroArgument);
        }
        self.require_left_cancellative()?;
        if !self.ideals[s].contains(s) {
            return Err(Error::NoRightUnit(self.names[s].clone()));
        }
        self.idempotents()
            .into_iter()
            .find(|&e| self.mul(s, e) == s)
            .ok_or_else(|| Error::NoRightUnit(self.names[s].clone()))
    }

    /// `s ‖ t`: t lies in `{s} ∪ sS`.
    pub fn divides_elem(&self, s: Elem, t: Elem) -> bool {
        s == t || self.ideals[s].contains(t)
    }

    /// Divisibility on S̃: some `w` in S̃ has `uw = v`.
    pub fn divides(&self, u: Unitized, v: Unitized) -> bool {
        match (u, v) {
            (Unitized::Unit, _) => true,
            (Unitized::Elem(_), Unitized::Unit) => false,
            (Unitized::Elem(s), Unitized::Elem(t)) => self.divides_elem(s, t),
        }
    }

    /// δ_s, the divisors of a nonzero s.
    pub fn divisors(&self, s: Elem) -> Result<Subset> {
        if s == self.zero {
            return Err(Error::ZeroArgument);
        }
        Ok(Subset::from_indices(
            self.size(),
            (0..self.size()).filter(|&t| self.divides_elem(t, s)),
        ))
    }

    pub fn lcm(&self, s: Elem, t: Elem) -> Lcm {
        let meet = self.ideals[s].intersection(&self.ideals[t]);
        let witnesses = (0..self.size())
            .filter(|&r| {
                self.ideals[r] == meet && self.divides_elem(s, r) && self.divides_elem(t, r)
            })
            .collect();
        Lcm { witnesses }
    }

    pub fn lcm_failure(&self) -> Option<(Elem, Elem)> {
        let n = self.size();
        (0..n)
            .flat_map(|s| (s..n).map(move |t| (s, t)))
            .find(|&(s, t)| self.lcm(s, t).witnesses.is_empty())
    }

    pub fn admits_lcms(&self) -> bool {
        self.lcm_failure().is_none()
    }

    pub fn require_lcms(&self) -> Result<()> {
        match self.lcm_failure() {
            None => Ok(()),
            Some((s, t)) => Err(Error::NoLcms(self.names[s].clone(), self.names[t].clone())),
        }
    }

    pub fn lcm_unitized(&self, u: Unitized, v: Unitized) -> Result<Unitized> {
        match (u, v) {
            (Unitized::Unit, w) | (w, Unitized::Unit) => Ok(w),
            (Unitized::Elem(s), Unitized::Elem(t)) => self
                .lcm(s, t)
                .canonical()
                .map(Unitized::Elem)
                .ok_or_else(|| Error::NoLcm(self.names[s].clone(), self.names[t].clone())),
        }
    }

    /// Sorted member names, for reports.
    pub fn set_names(&self, set: &Subset) -> Vec<String> {
        set.iter().map(|i| self.names[i].clone()).collect()
    }
}

impl fmt::Debug for Semigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Semigroup")
            .field("elements", &self.names)
            .field("zero", &self.names[self.zero])
            .finish()
    }
}

fn zero_law_failure(n: usize, zero: Elem, table: &[Elem]) -> Option<Elem> {
    (0..n).find(|&i| table[zero * n + i] != zero || table[i * n + zero] != zero)
}

/// First `(i, j, k)` with `(ij)k != i(jk)`.
pub fn associativity_failure(n: usize, table: &[Elem]) -> Option<[Elem; 3]> {
    for i in 0..n {
        for j in 0..n {
            let ij = table[i * n + j];
            for k in 0..n {
                if table[ij * n + k] != table[i * n + table[j * n + k]] {
                    return Some([i, j, k]);
                }
            }
        }
    }
    None
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn idx(s: &Semigroup, name: &str) -> Elem {
        s.index_of(name).unwrap()
    }

    #[test]
    fn loads_trivial_semigroup() {
        let doc = SemigroupDocument {
            elements: vec!["0".into()],
            zero: "0".into(),
            table: vec![vec!["0".into()]],
        };
        let s = Semigroup::load(&doc).unwrap();
        assert_eq!(s.size(), 1);
        assert!(s.nonzero().next().is_none());
    }

    #[test]
    fn rejects_malformed_documents() {
        let bad = r#"{"elements":["0","x"],"zero":"0","table":[["0","0"],["0"]]}"#;
        assert!(matches!(Semigroup::from_json(bad), Err(Error::MalformedTable(_))));
        let unknown = r#"{"elements":["0"],"zero":"z","table":[["0"]]}"#;
        assert!(matches!(Semigroup::from_json(unknown), Err(Error::MalformedTable(_))));
        let dup = r#"{"elements":["0","0"],"zero":"0","table":[["0","0"],["0","0"]]}"#;
        assert!(matches!(Semigroup::from_json(dup), Err(Error::MalformedTable(_))));
        let zero_law = r#"{"elements":["0","x"],"zero":"0","table":[["0","x"],["0","x"]]}"#;
        assert_eq!(
            Semigroup::from_json(zero_law).unwrap_err(),
            Error::ZeroLawViolation("x".into())
        );
    }

    #[test]
    fn rejects_non_associative_table() {
        // xx = y, yx = 0, xy = x: (xx)x = 0 but x(xx) = x
        let names = vec!["0".to_string(), "x".into(), "y".into()];
        let rows = vec![vec![0, 0, 0], vec![0, 2, 1], vec![0, 0, 0]];
        let err = Semigroup::from_table(names, 0, rows).unwrap_err();
        assert!(matches!(err, Error::NonAssociative(..)));
    }

    #[test]
    fn prime_idempotent_classification() {
        let s = prime_idempotent();
        let r = s.classify();
        assert!(r.zero_left_cancellative.holds);
        assert!(r.zero_right_cancellative.holds);
        assert!(r.categorical_at_zero.holds);
        assert!(r.right_reductive.holds);
        assert!(r.right_local_units.holds);
        assert_eq!(r.idempotents, vec![idx(&s, "e")]);
        assert_eq!(r.unital, None);
        assert_eq!(r.orthogonal_idempotents.map(|v| v.holds), Some(true));
    }

    #[test]
    fn unital_chain_is_not_categorical() {
        let s = unital_chain();
        let r = s.classify();
        assert!(r.zero_left_cancellative.holds);
        assert!(r.zero_right_cancellative.holds);
        assert!(r.right_reductive.holds);
        assert!(r.right_local_units.holds);
        assert_eq!(r.unital, Some(idx(&s, "1")));
        let [x, y, z] = r.categorical_at_zero.witness.unwrap();
        assert_ne!(s.mul(x, y), 0);
        assert_ne!(s.mul(y, z), 0);
        assert_eq!(s.mul(s.mul(x, y), z), 0);
    }

    #[test]
    fn right_local_units() {
        let s = prime_idempotent();
        assert_eq!(s.right_local_unit(idx(&s, "s")), Ok(idx(&s, "e")));
        let c = unital_chain();
        assert_eq!(c.right_local_unit(idx(&c, "a")), Ok(idx(&c, "1")));
        let w = four_words();
        assert_eq!(
            w.right_local_unit(idx(&w, "a")),
            Err(Error::NoRightUnit("a".into()))
        );
    }

    #[test]
    fn divisibility() {
        let c = unital_chain();
        let (a, aa) = (idx(&c, "a"), idx(&c, "aa"));
        for w in 0..c.size() {
            assert!(c.divides(Unitized::Unit, Unitized::Elem(w)));
        }
        assert!(c.divides(Unitized::Elem(a), Unitized::Elem(aa)));
        assert!(!c.divides(Unitized::Elem(a), Unitized::Unit));
        let p = prime_idempotent();
        assert!(!p.divides_elem(idx(&p, "e"), idx(&p, "s")));
        assert_eq!(c.set_names(&c.divisors(a).unwrap()), ["1", "a"]);
        assert_eq!(c.set_names(&c.divisors(aa).unwrap()), ["1", "a", "aa"]);
        assert_eq!(p.set_names(&p.divisors(idx(&p, "s")).unwrap()), ["s"]);
        assert_eq!(c.divisors(0), Err(Error::ZeroArgument));
    }

    #[test]
    fn least_common_multiples() {
        let c = unital_chain();
        let (a, aa) = (idx(&c, "a"), idx(&c, "aa"));
        assert_eq!(c.lcm(a, aa).canonical(), Some(aa));
        assert!(c.admits_lcms());
        let p = prime_idempotent();
        let (e, s) = (idx(&p, "e"), idx(&p, "s"));
        assert_eq!(p.lcm(s, s).canonical(), Some(s));
        assert_eq!(p.lcm(e, s).canonical(), Some(0));
        assert!(p.admits_lcms());
        assert_eq!(
            c.lcm_unitized(Unitized::Unit, Unitized::Elem(a)),
            Ok(Unitized::Elem(a))
        );
        assert_eq!(
            c.lcm_unitized(Unitized::Unit, Unitized::Unit),
            Ok(Unitized::Unit)
        );
        assert_eq!(
            c.lcm_unitized(Unitized::Elem(a), Unitized::Elem(aa)),
            Ok(Unitized::Elem(aa))
        );
    }

    #[test]
    fn document_round_trip() {
        let s = four_words();
        let back = Semigroup::load(&s.to_document()).unwrap();
        assert_eq!(s, back);
    }
}
