//! Corpus and brute-force oracles shared by the integration tests. The
//! oracles work on raw tables and never call into the library's algorithms.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use semihull::subshift::{language_semigroup, SubshiftSpec};
use semihull::Semigroup;

pub const UNITAL_CHAIN: &str = include_str!("../../../../data/unital_chain.json");
pub const PRIME_IDEMPOTENT: &str = include_str!("../../../../data/prime_idempotent.json");
pub const FOUR_WORDS: &str = include_str!("../../../../data/four_words.json");
pub const NO_REPETITION: &str = include_str!("../../../../data/no_repetition.json");
pub const SHORT_WORDS: &str = include_str!("../../../../data/short_words.json");
pub const GOLDEN_MEAN: &str = include_str!("../../../../data/golden_mean.json");
pub const FULL_SHIFT: &str = include_str!("../../../../data/full_shift.json");

pub fn semigroup(text: &str) -> Semigroup {
    Semigroup::from_json(text).unwrap()
}

pub fn shift(text: &str, depth: Option<usize>) -> semihull::subshift::ShiftSemigroup {
    language_semigroup(&SubshiftSpec::from_json(text).unwrap(), depth).unwrap()
}

/// Examples 1 to 5 and the golden mean shift at depth 4.
pub fn corpus() -> Vec<(&'static str, Semigroup)> {
    vec![
        ("unital chain", semigroup(UNITAL_CHAIN)),
        ("prime idempotent", semigroup(PRIME_IDEMPOTENT)),
        ("four words", shift(FOUR_WORDS, None).semigroup().clone()),
        ("no repetition", shift(NO_REPETITION, Some(3)).semigroup().clone()),
        ("short words", shift(SHORT_WORDS, None).semigroup().clone()),
        ("golden mean", shift(GOLDEN_MEAN, Some(4)).semigroup().clone()),
    ]
}

pub fn idx(s: &Semigroup, name: &str) -> usize {
    s.index_of(name).unwrap_or_else(|| panic!("no element {name}"))
}

pub fn names(s: &Semigroup, xs: impl IntoIterator<Item = usize>) -> BTreeSet<String> {
    xs.into_iter().map(|x| s.name(x).to_string()).collect()
}

pub fn set_of(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

/// A plain table with zero at `z`.
#[derive(Clone, Debug)]
pub struct Raw {
    pub n: usize,
    pub z: usize,
    pub t: Vec<usize>,
}

impl Raw {
    pub fn of(s: &Semigroup) -> Self {
        let n = s.size();
        let t = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| s.mul(i, j)).collect();
        Raw { n, z: s.zero(), t }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.t[a * self.n + b]
    }

    pub fn nonzero(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&x| x != self.z)
    }

    /// `a ‖ b`: b is a or a multiple of a.
    pub fn divides(&self, a: usize, b: usize) -> bool {
        a == b || (0..self.n).any(|x| self.mul(a, x) == b)
    }

    pub fn ideal(&self, a: usize) -> BTreeSet<usize> {
        (0..self.n).map(|x| self.mul(a, x)).collect()
    }

    pub fn admits_lcms(&self) -> bool {
        (0..self.n).all(|a| {
            (0..self.n).all(|b| {
                let meet: BTreeSet<usize> = self.ideal(a).intersection(&self.ideal(b)).copied().collect();
                (0..self.n).any(|r| self.ideal(r) == meet && self.divides(a, r) && self.divides(b, r))
            })
        })
    }

    /// `θ_u` on slots `0..n`, with `None` standing for the unit.
    pub fn theta(&self, u: Option<usize>) -> Map {
        (0..self.n)
            .map(|x| {
                if x == self.z {
                    return None;
                }
                match u {
                    None => Some(x),
                    Some(a) => Some(self.mul(a, x)).filter(|&y| y != self.z),
                }
            })
            .collect()
    }

    pub fn source(&self, u: Option<usize>) -> BTreeSet<usize> {
        domain(&self.theta(u))
    }

    pub fn unitized(&self) -> Vec<Option<usize>> {
        std::iter::once(None).chain((0..self.n).map(Some)).collect()
    }
}

pub type Map = Vec<Option<usize>>;

/// `f ∘ g`
pub fn after(f: &Map, g: &Map) -> Map {
    g.iter().map(|y| y.and_then(|y| f[y])).collect()
}

pub fn invert(f: &Map) -> Map {
    let mut out = vec![None; f.len()];
    for (x, y) in f.iter().enumerate() {
        if let Some(y) = y {
            out[*y] = Some(x);
        }
    }
    out
}

pub fn domain(f: &Map) -> BTreeSet<usize> {
    f.iter().enumerate().filter(|(_, y)| y.is_some()).map(|(x, _)| x).collect()
}

pub fn identity(n: usize, set: &BTreeSet<usize>) -> Map {
    (0..n).map(|x| set.contains(&x).then_some(x)).collect()
}

/// The inverse semigroup generated by the `θ_s`, by breadth-first search.
pub fn closure(raw: &Raw) -> BTreeSet<Map> {
    let mut gens = Vec::new();
    for a in 0..raw.n {
        let m = raw.theta(Some(a));
        gens.push(invert(&m));
        gens.push(m);
    }
    let mut seen: BTreeSet<Map> = gens.iter().cloned().collect();
    let mut queue: Vec<Map> = seen.iter().cloned().collect();
    while let Some(h) = queue.pop() {
        for g in &gens {
            for p in [after(&h, g), after(g, &h)] {
                if seen.insert(p.clone()) {
                    queue.push(p);
                }
            }
        }
    }
    seen
}

/// Every `θ_u f_Λ θ_v⁻¹` with `u, v ∈ Λ ⊆ S̃` and Λ meeting S.
pub fn literal_normal_forms(raw: &Raw) -> BTreeSet<Map> {
    let all = raw.unitized();
    let m = all.len();
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << m) {
        let lambda: Vec<Option<usize>> = (0..m).filter(|&i| mask & (1 << i) != 0).map(|i| all[i]).collect();
        if !lambda.iter().any(Option::is_some) {
            continue;
        }
        let mut f: BTreeSet<usize> = raw.nonzero().collect();
        for &t in &lambda {
            f = f.intersection(&raw.source(t)).copied().collect();
        }
        let id = identity(raw.n, &f);
        for &u in &lambda {
            for &v in &lambda {
                out.insert(after(&after(&raw.theta(u), &id), &invert(&raw.theta(v))));
            }
        }
    }
    out
}

/// Domains of idempotents in the closure, plus `∅`.
pub fn constructible(raw: &Raw) -> BTreeSet<BTreeSet<usize>> {
    let mut sets: BTreeSet<BTreeSet<usize>> =
        closure(raw).iter().filter(|m| after(m, m) == **m).map(domain).collect();
    sets.insert(BTreeSet::new());
    sets
}

/// Filters of a finite intersection-closed family (nonempty, without `∅`,
/// upward and meet closed), each given by its least member.
pub fn character_mins(sets: &BTreeSet<BTreeSet<usize>>) -> BTreeSet<BTreeSet<usize>> {
    let sets: Vec<&BTreeSet<usize>> = sets.iter().collect();
    let k = sets.len();
    assert!(k <= 24, "too many sets for the brute force");
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << k) {
        let inside = |i: usize| mask & (1 << i) != 0;
        let members: Vec<usize> = (0..k).filter(|&i| inside(i)).collect();
        if members.iter().any(|&i| sets[i].is_empty()) {
            continue;
        }
        let upward = (0..k).all(|j| inside(j) || !members.iter().any(|&i| sets[i].is_subset(sets[j])));
        let meets = members.iter().all(|&i| {
            members.iter().all(|&j| {
                let m: BTreeSet<usize> = sets[i].intersection(sets[j]).copied().collect();
                (0..k).any(|l| inside(l) && *sets[l] == m)
            })
        });
        if upward && meets {
            let min = members.iter().map(|&i| sets[i]).min_by_key(|s| s.len()).unwrap();
            out.insert(min.clone());
        }
    }
    out
}

/// Subsets of S′ that are nonempty, closed under divisors and directed.
pub fn brute_strings(raw: &Raw) -> BTreeSet<BTreeSet<usize>> {
    let elems: Vec<usize> = raw.nonzero().collect();
    let k = elems.len();
    assert!(k <= 20);
    let div: Vec<Vec<bool>> = (0..raw.n).map(|a| (0..raw.n).map(|b| raw.divides(a, b)).collect()).collect();
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << k) {
        let sigma: Vec<usize> = (0..k).filter(|&i| mask & (1 << i) != 0).map(|i| elems[i]).collect();
        let hereditary = sigma
            .iter()
            .all(|&s| elems.iter().all(|&t| !div[t][s] || sigma.contains(&t)));
        let directed = sigma
            .iter()
            .all(|&r| sigma.iter().all(|&s| sigma.iter().any(|&t| div[r][t] && div[s][t])));
        if hereditary && directed {
            out.insert(sigma.into_iter().collect());
        }
    }
    out
}

/// Germs `(h, φ)` for characters with the given least sets, merged when
/// `h` and `k` agree on some member of the support of φ. Counts classes.
pub fn germ_count(raw: &Raw, lattice: &BTreeSet<BTreeSet<usize>>, objects: &BTreeSet<BTreeSet<usize>>) -> usize {
    let hull: Vec<Map> = closure(raw).into_iter().collect();
    let mut total = 0;
    for min in objects {
        let support: Vec<&BTreeSet<usize>> = lattice.iter().filter(|x| min.is_subset(x)).collect();
        let live: Vec<usize> = (0..hull.len()).filter(|&h| min.is_subset(&domain(&hull[h]))).collect();
        let mut parent: HashMap<usize, usize> = live.iter().map(|&h| (h, h)).collect();
        fn find(p: &mut HashMap<usize, usize>, x: usize) -> usize {
            let y = p[&x];
            if y == x {
                return x;
            }
            let r = find(p, y);
            p.insert(x, r);
            r
        }
        for (i, &h) in live.iter().enumerate() {
            for &k in &live[i + 1..] {
                let agree = support.iter().any(|x| {
                    let dh = domain(&hull[h]);
                    let dk = domain(&hull[k]);
                    x.is_subset(&dh) && x.is_subset(&dk) && x.iter().all(|&p| hull[h][p] == hull[k][p])
                });
                if agree {
                    let (a, b) = (find(&mut parent, h), find(&mut parent, k));
                    parent.insert(a, b);
                }
            }
        }
        let roots: BTreeSet<usize> = live.iter().map(|&h| find(&mut parent, h)).collect();
        total += roots.len();
    }
    total
}

/// Ultra characters: least sets that are minimal nonempty members.
pub fn ultra_mins(lattice: &BTreeSet<BTreeSet<usize>>) -> BTreeSet<BTreeSet<usize>> {
    let nonzero: Vec<&BTreeSet<usize>> = lattice.iter().filter(|x| !x.is_empty()).collect();
    nonzero
        .iter()
        .filter(|x| !nonzero.iter().any(|y| y.len() < x.len() && y.is_subset(x)))
        .map(|x| (*x).clone())
        .collect()
}
