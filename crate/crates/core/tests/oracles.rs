//! The library checked against naive brute force.

use std::collections::BTreeSet;

use itertools::Itertools;
use monocat_core::corpus;
use monocat_core::ideal::{self, IdealSubset};
use monocat_core::monoid::{enumerate_monoids, enumerate_monoids_with, homomorphisms, FiniteMonoid};
use monocat_core::Strategy;

fn golden_counts() -> Vec<(usize, usize)> {
    include_str!("golden/monoid_counts.txt")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let (n, c) = l.split_whitespace().map(|s| s.parse().unwrap()).collect_tuple().unwrap();
            (n, c)
        })
        .collect()
}

/// Associative tables with unit 0, up to relabelings fixing 0.
fn brute_force_count(n: usize) -> usize {
    let perms: Vec<Vec<usize>> = (1..n).permutations(n - 1).map(|p| [vec![0], p].concat()).collect();
    let mut classes = BTreeSet::new();
    for free in (0..(n - 1) * (n - 1)).map(|_| 0..n).multi_cartesian_product() {
        let mut t = vec![0; n * n];
        for x in 0..n {
            t[x] = x;
            t[x * n] = x;
        }
        for (c, &v) in free.iter().enumerate() {
            t[(c / (n - 1) + 1) * n + c % (n - 1) + 1] = v;
        }
        let assoc = (0..n)
            .cartesian_product(0..n)
            .cartesian_product(0..n)
            .all(|((a, b), c)| t[t[a * n + b] * n + c] == t[a * n + t[b * n + c]]);
        if assoc {
            let canon = perms
                .iter()
                .map(|p| {
                    let mut inv = vec![0; n];
                    for (i, &pi) in p.iter().enumerate() {
                        inv[pi] = i;
                    }
                    (0..n * n).map(|c| p[t[inv[c / n] * n + inv[c % n]]]).collect::<Vec<_>>()
                })
                .min()
                .unwrap();
            classes.insert(canon);
        }
    }
    classes.len()
}

#[test]
fn monoid_counts_match_golden_and_brute_force() {
    for (n, expected) in golden_counts() {
        assert_eq!(enumerate_monoids(n).unwrap().len(), expected, "order {n}");
        assert_eq!(brute_force_count(n), expected, "brute force, order {n}");
    }
}

#[test]
fn enumeration_is_strategy_independent() {
    for n in 1..=4 {
        assert_eq!(
            enumerate_monoids_with(n, Strategy::Sequential).unwrap(),
            enumerate_monoids_with(n, Strategy::Parallel).unwrap()
        );
    }
}

fn all_maps_that_are_homs(m: &FiniteMonoid, x: &FiniteMonoid) -> Vec<Vec<usize>> {
    (0..m.order())
        .map(|_| 0..x.order())
        .multi_cartesian_product()
        .filter(|f| {
            f[m.unit()] == x.unit()
                && (0..m.order()).cartesian_product(0..m.order()).all(|(a, b)| f[m.mul(a, b)] == x.mul(f[a], f[b]))
        })
        .collect()
}

#[test]
fn hom_search_matches_all_maps() {
    let mut ms: Vec<FiniteMonoid> = (1..=3).flat_map(|n| enumerate_monoids(n).unwrap()).collect();
    ms.extend([corpus::m3(), corpus::m4(), corpus::nilpotent_cubic()]);
    for m in &ms {
        for x in &ms {
            assert_eq!(homomorphisms(m, x), all_maps_that_are_homs(m, x), "{} -> {}", m.name(), x.name());
        }
    }
}

#[test]
fn ideal_classification_matches_definitions() {
    for m in (1..=4).flat_map(|n| enumerate_monoids(n).unwrap()) {
        let n = m.order();
        for c in ideal::enumerate_ideals(&m, 8).unwrap() {
            let q = c.ideal.members();
            let inq = |x: usize| q.contains(&x);
            let absorbs = q.iter().all(|&x| (0..n).all(|y| inq(m.mul(x, y)) && inq(m.mul(y, x))));
            assert!(absorbs);
            let non_units = || (0..n).filter(|&x| x != m.unit());
            let associative = non_units().cartesian_product(non_units()).cartesian_product(non_units()).all(
                |((a, b), c)| !inq(m.mul(m.mul(a, b), c)) || inq(m.mul(a, b)) || inq(m.mul(b, c)),
            );
            let prime = (0..n).cartesian_product(0..n).all(|(x, y)| inq(m.mul(x, y)) == (inq(x) || inq(y)));
            assert_eq!((c.associative, c.prime), (associative, prime), "{} {}", m.name(), c.ideal.render(&m));
            assert!(!prime || associative);
        }
    }
}

#[test]
fn n3_zero_is_absorbing_but_not_associative() {
    let n3 = corpus::nilpotent_cubic();
    let zero = corpus::ideal(&n3, &["0"]);
    assert!(ideal::is_ideal(&n3, &zero).unwrap());
    let a = n3.index_of("a").unwrap();
    assert_eq!(ideal::is_associative_ideal(&n3, &zero).unwrap().witness(), Some(&[a, a, a]));
    assert!(ideal::quotient_to_zero(&n3, &IdealSubset::from_members(vec![3])).is_err());
}
