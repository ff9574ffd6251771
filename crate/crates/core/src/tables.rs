//! Small multiplication tables: every one of a given size, or a seeded sample.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::semigroup::{associativity_failure, Elem, Semigroup};

const NAMES: [&str; 8] = ["0", "a", "b", "c", "d", "e", "f", "g"];
pub const MAX_SIZE: usize = NAMES.len();

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Census {
    pub candidates: u64,
    pub associative: u64,
    pub left_cancellative: u64,
    pub with_lcms: u64,
}

fn names(n: usize) -> Vec<String> {
    NAMES[..n].iter().map(|s| s.to_string()).collect()
}

fn build(n: usize, table: &[Elem]) -> Semigroup {
    let rows = table.chunks(n).map(<[Elem]>::to_vec).collect();
    Semigroup::from_table(names(n), 0, rows).expect("checked table")
}

/// No row repeats a nonzero entry.
fn rows_injective(n: usize, table: &[Elem]) -> bool {
    (1..n).all(|i| {
        let row = &table[i * n..(i + 1) * n];
        (1..n).all(|j| row[j] == 0 || !row[j + 1..].contains(&row[j]))
    })
}

/// Calls `f` on every 0-left-cancellative semigroup of size `n` admitting
/// lcms, with zero at index 0 and the other entries free.
pub fn exhaustive(n: usize, mut f: impl FnMut(&Semigroup)) -> Census {
    assert!((1..=MAX_SIZE).contains(&n));
    let free = (n - 1) * (n - 1);
    let mut table = vec![0; n * n];
    let mut digits = vec![0usize; free];
    let mut census = Census::default();
    loop {
        for (k, &d) in digits.iter().enumerate() {
            table[(k / (n - 1) + 1) * n + k % (n - 1) + 1] = d;
        }
        census.candidates += 1;
        if associativity_failure(n, &table).is_none() {
            census.associative += 1;
            if rows_injective(n, &table) {
                census.left_cancellative += 1;
                let s = build(n, &table);
                if s.admits_lcms() {
                    census.with_lcms += 1;
                    f(&s);
                }
            }
        }
        // odometer
        let mut k = 0;
        while k < free {
            digits[k] += 1;
            if digits[k] < n {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
        if k == free {
            return census;
        }
    }
}

/// Whether the filled part of a table can still be associative.
fn consistent(n: usize, table: &[Option<Elem>]) -> bool {
    let at = |i: usize, j: usize| table[i * n + j];
    for i in 1..n {
        for j in 1..n {
            let Some(ij) = at(i, j) else { continue };
            for k in 1..n {
                let Some(jk) = at(j, k) else { continue };
                if let (Some(l), Some(r)) = (at(ij, k), at(i, jk)) {
                    if l != r {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn fill(n: usize, table: &mut [Option<Elem>], cell: usize, rng: &mut ChaCha8Rng, budget: &mut u32) -> bool {
    if cell == n * n {
        return true;
    }
    let (i, j) = (cell / n, cell % n);
    if i == 0 || j == 0 {
        table[cell] = Some(0);
        return fill(n, table, cell + 1, rng, budget);
    }
    let mut values: Vec<Elem> = (0..n).collect();
    values.shuffle(rng);
    for v in values {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        if v != 0 && (1..j).any(|k| table[i * n + k] == Some(v)) {
            continue;
        }
        table[cell] = Some(v);
        if consistent(n, table) && fill(n, table, cell + 1, rng, budget) {
            return true;
        }
    }
    table[cell] = None;
    false
}

/// `count` random 0-left-cancellative semigroups with lcms, of sizes
/// `2..=max_size`, reproducible from `seed`.
pub fn random_tables(seed: u64, count: usize, max_size: usize) -> Vec<Semigroup> {
    assert!((2..=MAX_SIZE).contains(&max_size));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(2..=max_size);
        let mut table = vec![None; n * n];
        let mut budget = 20_000;
        if !fill(n, &mut table, 0, &mut rng, &mut budget) {
            continue;
        }
        let table: Vec<Elem> = table.into_iter().map(Option::unwrap).collect();
        let s = build(n, &table);
        if s.admits_lcms() {
            out.push(s);
        }
    }
    out
}
