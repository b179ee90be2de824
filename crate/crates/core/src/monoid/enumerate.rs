use std::collections::BTreeSet;

use itertools::Itertools;

use super::{FiniteMonoid, MonoidError};
use crate::par::{self, Strategy};

/// Orders above this are refused: with the unit row and column pinned the
/// search space is `n^((n-1)^2)`, i.e. 262 144 raw tables at order 4, which
/// takes well under a second. Order 5 would be `5^16`.
pub const MAX_ENUMERATION_ORDER: usize = 4;

const NAMES: [&str; 4] = ["E", "a", "b", "c"];

/// One monoid per isomorphism class of the given order, in canonical order.
pub fn enumerate_monoids(n: usize) -> Result<Vec<FiniteMonoid>, MonoidError> {
    enumerate_monoids_with(n, Strategy::default())
}

pub fn enumerate_monoids_with(n: usize, strategy: Strategy) -> Result<Vec<FiniteMonoid>, MonoidError> {
    if n > MAX_ENUMERATION_ORDER {
        return Err(MonoidError::OrderCap { requested: n, cap: MAX_ENUMERATION_ORDER });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let cells: Vec<(usize, usize)> = (1..n).cartesian_product(1..n).collect();
    // fan out over the values of the first two free cells
    let split = cells.len().min(2);
    let prefixes: Vec<Vec<usize>> =
        (0..split).map(|_| 0..n).multi_cartesian_product().collect::<Vec<_>>();
    let prefixes = if prefixes.is_empty() { vec![Vec::new()] } else { prefixes };

    let tables = par::flat_map(strategy, &prefixes, |prefix| {
        let mut table = identity_frame(n);
        for (&(i, j), &v) in cells.iter().zip(prefix) {
            table[i * n + j] = v;
        }
        let mut out = Vec::new();
        if partial_associative(&table, n) {
            fill(&mut table, n, &cells, prefix.len(), &mut out);
        }
        out.into_iter().map(|t| canonical_of(&t, n, 0)).collect()
    });

    let classes: BTreeSet<Vec<usize>> = tables.into_iter().collect();
    Ok(classes
        .into_iter()
        .enumerate()
        .map(|(k, table)| {
            let elements = NAMES[..n].iter().map(|s| s.to_string()).collect();
            FiniteMonoid::from_flat_unchecked(format!("M{n}_{}", k + 1), elements, 0, table)
        })
        .collect())
}

const UNSET: usize = usize::MAX;

fn identity_frame(n: usize) -> Vec<usize> {
    let mut t = vec![UNSET; n * n];
    for x in 0..n {
        t[x] = x;
        t[x * n] = x;
    }
    t
}

fn fill(table: &mut Vec<usize>, n: usize, cells: &[(usize, usize)], next: usize, out: &mut Vec<Vec<usize>>) {
    if next == cells.len() {
        out.push(table.clone());
        return;
    }
    let (i, j) = cells[next];
    for v in 0..n {
        table[i * n + j] = v;
        if partial_associative(table, n) {
            fill(table, n, cells, next + 1, out);
        }
    }
    table[i * n + j] = UNSET;
}

// Every triple whose four lookups are all defined must associate.
fn partial_associative(t: &[usize], n: usize) -> bool {
    for x in 0..n {
        for y in 0..n {
            let xy = t[x * n + y];
            if xy == UNSET {
                continue;
            }
            for z in 0..n {
                let yz = t[y * n + z];
                if yz == UNSET {
                    continue;
                }
                let left = t[xy * n + z];
                let right = t[x * n + yz];
                if left != UNSET && right != UNSET && left != right {
                    return false;
                }
            }
        }
    }
    true
}

/// Lexicographically least relabelled table over all bijections sending the
/// unit to index 0.
pub fn canonical_table(m: &FiniteMonoid) -> Vec<usize> {
    canonical_of(m.flat_table(), m.order(), m.unit())
}

fn canonical_of(table: &[usize], n: usize, unit: usize) -> Vec<usize> {
    let others: Vec<usize> = (0..n).filter(|&i| i != unit).collect();
    let mut best: Option<Vec<usize>> = None;
    for perm in others.iter().copied().permutations(others.len()) {
        // relabel[old] = new
        let mut relabel = vec![0; n];
        relabel[unit] = 0;
        for (new, &old) in perm.iter().enumerate() {
            relabel[old] = new + 1;
        }
        let mut inverse = vec![0; n];
        for (old, &new) in relabel.iter().enumerate() {
            inverse[new] = old;
        }
        let candidate: Vec<usize> = (0..n * n)
            .map(|cell| {
                let (a, b) = (inverse[cell / n], inverse[cell % n]);
                relabel[table[a * n + b]]
            })
            .collect();
        if best.as_ref().is_none_or(|b| candidate < *b) {
            best = Some(candidate);
        }
    }
    best.unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{find_isomorphism, verify_monoid};

    #[test]
    fn small_orders() {
        assert_eq!(enumerate_monoids(1).unwrap().len(), 1);
        let two = enumerate_monoids(2).unwrap();
        assert_eq!(two.len(), 2);
        // a² = E and a² = a
        let squares: Vec<usize> = two.iter().map(|m| m.mul(1, 1)).collect();
        assert_eq!(squares, vec![0, 1]);
        assert!(enumerate_monoids(0).unwrap().is_empty());
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(enumerate_monoids(5), Err(MonoidError::OrderCap { requested: 5, cap: 4 }));
    }

    #[test]
    fn every_enumerated_table_is_a_monoid_and_classes_are_distinct() {
        for n in 1..=3 {
            let all = enumerate_monoids(n).unwrap();
            for m in &all {
                assert!(verify_monoid(&m.to_raw()).unwrap().is_ok());
            }
            for (i, m) in all.iter().enumerate() {
                for other in &all[i + 1..] {
                    assert!(find_isomorphism(m, other).is_none());
                }
            }
        }
    }

    #[test]
    fn canonical_form_is_relabel_invariant() {
        let m3 = crate::corpus::m3();
        let shuffled = FiniteMonoid::from_names(
            "x",
            &["z", "one", "x"],
            "one",
            &[&["z", "z", "z"], &["z", "one", "x"], &["z", "x", "z"]],
        )
        .unwrap();
        assert_eq!(canonical_table(&m3), canonical_table(&shuffled));
    }

    #[test]
    fn strategies_give_identical_output() {
        let seq = enumerate_monoids_with(4, Strategy::Sequential).unwrap();
        let par = enumerate_monoids_with(4, Strategy::Parallel).unwrap();
        assert_eq!(seq, par);
    }
}
