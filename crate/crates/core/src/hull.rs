//! The inverse hull generated by the regular representation and its
//! semilattice of constructible sets.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write;

use crate::error::Result;
use crate::rep::{PartialBijection, Representation};
use crate::semigroup::{Elem, Semigroup, Unitized};
use crate::set::Subset;

/// The term `θ_u f_Λ θ_v⁻¹`, with u and v in Λ and Λ meeting S.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    pub u: Unitized,
    pub lambda: Vec<Unitized>,
    pub v: Unitized,
}

impl NormalForm {
    pub fn evaluate(&self, theta: &Representation) -> PartialBijection {
        let (_, f) = theta.f_lambda(&self.lambda).expect("lambda is nonempty");
        theta
            .map_unitized(self.u)
            .after(&f)
            .after(&theta.map_unitized(self.v).invert())
    }

    pub fn render(&self, s: &Semigroup) -> String {
        format!(
            "({}, {}, {})",
            s.unitized_name(self.u),
            render_lambda(s, &self.lambda),
            s.unitized_name(self.v)
        )
    }
}

pub fn render_lambda(s: &Semigroup, lambda: &[Unitized]) -> String {
    let names: Vec<&str> = lambda.iter().map(|&u| s.unitized_name(u)).collect();
    format!("{{{}}}", names.join(","))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullElement {
    pub map: PartialBijection,
    pub witnesses: Vec<NormalForm>,
}

/// `(u, Λ)` with `X = θ_u(F_Λ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetWitness {
    pub u: Unitized,
    pub lambda: Vec<Unitized>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructibleSet {
    pub members: Subset,
    pub witnesses: Vec<SetWitness>,
}

/// Constructible sets under inclusion, `∅` always first.
#[derive(Clone, Debug)]
pub struct Semilattice {
    sets: Vec<ConstructibleSet>,
    index: HashMap<Subset, usize>,
}

impl Semilattice {
    fn from_sets(mut sets: Vec<ConstructibleSet>) -> Self {
        sets.sort_by(|a, b| a.members.cmp(&b.members));
        let index = sets
            .iter()
            .enumerate()
            .map(|(i, c)| (c.members.clone(), i))
            .collect();
        Semilattice { sets, index }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[ConstructibleSet] {
        &self.sets
    }

    pub fn get(&self, i: usize) -> &ConstructibleSet {
        &self.sets[i]
    }

    pub fn members(&self, i: usize) -> &Subset {
        &self.sets[i].members
    }

    pub fn find(&self, members: &Subset) -> Option<usize> {
        self.index.get(members).copied()
    }

    pub fn empty_index(&self) -> usize {
        0
    }

    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        self.find(&self.sets[i].members.intersection(&self.sets[j].members))
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.sets[i].members.is_subset(&self.sets[j].members)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| !self.sets[i].members.is_empty())
    }

    /// Minimal nonzero sets.
    pub fn atoms(&self) -> Vec<usize> {
        self.nonzero()
            .filter(|&i| !self.nonzero().any(|j| j != i && self.leq(j, i)))
            .collect()
    }

    /// Covering pairs `(lower, upper)`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.leq(i, j) {
                    continue;
                }
                let between = (0..n).any(|k| k != i && k != j && self.leq(i, k) && self.leq(k, j));
                if !between {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// ℋ(S) together with the regular representation generating it.
#[derive(Clone, Debug)]
pub struct InverseHull {
    theta: Representation,
    elements: Vec<HullElement>,
    index: HashMap<PartialBijection, usize>,
    // normal forms with u = v, grouped by the set θ_u(F_Λ)
    set_witnesses: BTreeMap<Subset, Vec<SetWitness>>,
    lcms: bool,
}

impl InverseHull {
    /// Closes `{θ_s}` under composition and inversion, then attaches every
    /// normal form found by [`normal_forms`] to the element it evaluates to.
    pub fn generate(s: &Semigroup) -> Result<Self> {
        let theta = Representation::regular(s)?;
        let maps = closure(&theta);
        let index: HashMap<PartialBijection, usize> =
            maps.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let mut elements: Vec<HullElement> = maps
            .into_iter()
            .map(|map| HullElement { map, witnesses: Vec::new() })
            .collect();
        let forms = enumerate_forms(s, &theta);
        let mut set_witnesses: BTreeMap<Subset, Vec<SetWitness>> = BTreeMap::new();
        for (nf, map) in forms.forms {
            if nf.u == nf.v {
                set_witnesses
                    .entry(map.domain())
                    .or_default()
                    .push(SetWitness { u: nf.u, lambda: nf.lambda.clone() });
            }
            if let Some(&i) = index.get(&map) {
                elements[i].witnesses.push(nf);
            }
        }
        Ok(InverseHull {
            theta,
            elements,
            index,
            set_witnesses,
            lcms: s.admits_lcms(),
        })
    }

    pub fn theta(&self) -> &Representation {
        &self.theta
    }

    pub fn elements(&self) -> &[HullElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn find(&self, map: &PartialBijection) -> Option<usize> {
        self.index.get(map).copied()
    }

    pub fn admits_lcms(&self) -> bool {
        self.lcms
    }

    /// Domains of the idempotents, plus `∅`.
    pub fn semilattice(&self) -> Semilattice {
        let mut seen: BTreeMap<Subset, ()> = BTreeMap::new();
        seen.insert(Subset::empty(self.theta.slots()), ());
        for e in &self.elements {
            if e.map.is_idempotent() {
                seen.insert(e.map.domain(), ());
            }
        }
        let sets = seen
            .into_keys()
            .map(|members| {
                let witnesses = self.set_witnesses.get(&members).cloned().unwrap_or_default();
                ConstructibleSet { members, witnesses }
            })
            .collect();
        Semilattice::from_sets(sets)
    }
}

fn closure(theta: &Representation) -> Vec<PartialBijection> {
    let mut gens = Vec::new();
    for m in theta.maps() {
        gens.push(m.clone());
        gens.push(m.invert());
    }
    let mut seen: HashMap<PartialBijection, ()> = HashMap::new();
    let mut out = Vec::new();
    for g in &gens {
        if seen.insert(g.clone(), ()).is_none() {
            out.push(g.clone());
        }
    }
    let mut next = 0;
    while next < out.len() {
        let h = out[next].clone();
        next += 1;
        for g in &gens {
            let p = h.after(g);
            if seen.insert(p.clone(), ()).is_none() {
                out.push(p);
            }
        }
    }
    out
}

/// Sets whose identity lies in the inverse semigroup generated by the maps
/// of `pi`, together with `∅`, in increasing order.
pub fn constructible_for(pi: &Representation) -> Vec<Subset> {
    let mut sets: Vec<Subset> = closure(pi)
        .into_iter()
        .filter(PartialBijection::is_idempotent)
        .map(|m| m.domain())
        .collect();
    sets.push(Subset::empty(pi.slots()));
    sets.sort();
    sets.dedup();
    sets
}

pub fn hull_closure(s: &Semigroup) -> Result<InverseHull> {
    InverseHull::generate(s)
}

pub fn constructible_sets(s: &Semigroup) -> Result<Semilattice> {
    Ok(InverseHull::generate(s)?.semilattice())
}

struct Forms {
    forms: Vec<(NormalForm, PartialBijection)>,
}

/// Every value of `θ_u f_Λ θ_v⁻¹`, one witness per `(u, F_Λ, v)`.
///
/// The term only depends on u, v and the set `F_Λ`, so Λ runs over
/// `{u, v} ∪ Λ'` where Λ' is a smallest subset of S reaching each
/// intersection of sets `F_s` (or empty, when u or v already lies in S).
fn enumerate_forms(s: &Semigroup, theta: &Representation) -> Forms {
    let n = s.size();
    let carrier = theta.carrier().clone();

    // intersections of the F_s, with a smallest generating Λ'
    let mut family: Vec<(Subset, Vec<Elem>)> = Vec::new();
    let mut seen: HashMap<Subset, ()> = HashMap::new();
    for a in 0..n {
        let f = theta.map(a).domain();
        if seen.insert(f.clone(), ()).is_none() {
            family.push((f, vec![a]));
        }
    }
    let mut next = 0;
    while next < family.len() {
        let (set, rep) = family[next].clone();
        next += 1;
        for a in 0..n {
            let meet = set.intersection(&theta.map(a).domain());
            if seen.insert(meet.clone(), ()).is_none() {
                let mut r = rep.clone();
                r.push(a);
                r.sort_unstable();
                r.dedup();
                family.push((meet, r));
            }
        }
    }

    let all: Vec<Unitized> = [Unitized::Unit]
        .into_iter()
        .chain((0..n).map(Unitized::Elem))
        .collect();
    let mut forms = Vec::new();
    for &u in &all {
        for &v in &all {
            let base = theta.source(u).intersection(&theta.source(v));
            let mut done: HashMap<Subset, ()> = HashMap::new();
            let in_s = u != Unitized::Unit || v != Unitized::Unit;
            let free = in_s.then(|| (carrier.clone(), Vec::new()));
            for (d, rep) in free.into_iter().chain(family.iter().cloned()) {
                let d = base.intersection(&d);
                if done.insert(d.clone(), ()).is_some() {
                    continue;
                }
                let mut lambda: Vec<Unitized> = rep.into_iter().map(Unitized::Elem).collect();
                lambda.push(u);
                lambda.push(v);
                lambda.sort_unstable();
                lambda.dedup();
                let map = theta
                    .map_unitized(u)
                    .restrict(&d)
                    .after(&theta.map_unitized(v).invert());
                forms.push((NormalForm { u, lambda, v }, map));
            }
        }
    }
    Forms { forms }
}

/// Result of the normal-form enumeration.
#[derive(Clone, Debug)]
pub struct NormalForms {
    pub elements: Vec<HullElement>,
    /// Whether S admits least common multiples, so that the enumeration is
    /// guaranteed to reach the whole hull.
    pub hypotheses_hold: bool,
}

/// All maps `θ_u f_Λ θ_v⁻¹`, grouped with their witnesses, sorted by map.
pub fn normal_forms(s: &Semigroup) -> Result<NormalForms> {
    let theta = Representation::regular(s)?;
    let mut grouped: BTreeMap<PartialBijection, Vec<NormalForm>> = BTreeMap::new();
    for (nf, map) in enumerate_forms(s, &theta).forms {
        grouped.entry(map).or_default().push(nf);
    }
    Ok(NormalForms {
        elements: grouped
            .into_iter()
            .map(|(map, witnesses)| HullElement { map, witnesses })
            .collect(),
        hypotheses_hold: s.admits_lcms(),
    })
}

/// 𝔈₁(S): constructible sets inside some `E_s`.
pub fn e_one_ideal(s: &Semigroup, theta: &Representation, lattice: &Semilattice) -> Vec<usize> {
    let ranges: Vec<Subset> = (0..s.size()).map(|a| theta.map(a).range()).collect();
    (0..lattice.len())
        .filter(|&i| ranges.iter().any(|e| lattice.members(i).is_subset(e)))
        .collect()
}

/// DOT digraph of the covering relation, edges pointing upwards.
pub fn hasse_export(s: &Semigroup, lattice: &Semilattice) -> String {
    let label = |i: usize| format!("{{{}}}", s.set_names(lattice.members(i)).join(","));
    let mut order: Vec<usize> = (0..lattice.len()).collect();
    order.sort_by_key(|&i| label(i));
    let mut id = vec![0; lattice.len()];
    for (k, &i) in order.iter().enumerate() {
        id[i] = k;
    }
    let mut out = String::from("digraph constructible {\n");
    for (k, &i) in order.iter().enumerate() {
        let _ = writeln!(out, "  n{k} [label=\"{}\"];", label(i));
    }
    let mut edges: Vec<(usize, usize)> = lattice
        .covers()
        .into_iter()
        .map(|(a, b)| (id[a], id[b]))
        .collect();
    edges.sort_unstable();
    for (a, b) in edges {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}
