use super::FiniteMonoid;

/// Finds a unit-preserving bijection `m → n` that carries `m`'s table onto `n`'s.
///
/// `result[i]` is the index in `n` of element `i` of `m`.
pub fn find_isomorphism(m: &FiniteMonoid, n: &FiniteMonoid) -> Option<Vec<usize>> {
    if m.order() != n.order() {
        return None;
    }
    let size = m.order();
    let mut map = vec![usize::MAX; size];
    let mut used = vec![false; size];
    map[m.unit()] = n.unit();
    used[n.unit()] = true;
    // idempotents must go to idempotents; cheap filter before the search
    let idem_m = (0..size).filter(|&i| m.is_idempotent(i)).count();
    let idem_n = (0..size).filter(|&i| n.is_idempotent(i)).count();
    if idem_m != idem_n {
        return None;
    }
    if search(m, n, &mut map, &mut used, 0) {
        Some(map)
    } else {
        None
    }
}

fn search(m: &FiniteMonoid, n: &FiniteMonoid, map: &mut [usize], used: &mut [bool], next: usize) -> bool {
    if next == m.order() {
        return true;
    }
    if next == m.unit() {
        return consistent(m, n, map) && search(m, n, map, used, next + 1);
    }
    for v in 0..n.order() {
        if used[v] || m.is_idempotent(next) != n.is_idempotent(v) {
            continue;
        }
        map[next] = v;
        used[v] = true;
        if consistent(m, n, map) && search(m, n, map, used, next + 1) {
            return true;
        }
        used[v] = false;
        map[next] = usize::MAX;
    }
    false
}

// Rechecks every assigned pair, so products whose value was assigned after
// their operands are covered. An open product may not claim a taken image.
fn consistent(m: &FiniteMonoid, n: &FiniteMonoid, map: &[usize]) -> bool {
    let size = m.order();
    let assigned = |i: usize| map[i] != usize::MAX;
    (0..size).filter(|&x| assigned(x)).all(|x| {
        (0..size).filter(|&y| assigned(y)).all(|y| {
            let xy = m.mul(x, y);
            let image = n.mul(map[x], map[y]);
            if assigned(xy) {
                map[xy] == image
            } else {
                !map.contains(&image)
            }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn renaming_is_found() {
        let m3 = corpus::m3();
        // same table with elements listed in a different order: [0, E, a]
        let renamed = FiniteMonoid::from_names(
            "M3r",
            &["z", "one", "x"],
            "one",
            &[&["z", "z", "z"], &["z", "one", "x"], &["z", "x", "z"]],
        )
        .unwrap();
        let iso = find_isomorphism(&m3, &renamed).unwrap();
        assert_eq!(iso, vec![1, 2, 0]);
    }

    #[test]
    fn group_and_semilattice_of_order_two_differ() {
        let z2 = FiniteMonoid::from_names("Z2", &["E", "a"], "E", &[&["E", "a"], &["a", "E"]]).unwrap();
        let sl = FiniteMonoid::from_names("SL", &["E", "a"], "E", &[&["E", "a"], &["a", "a"]]).unwrap();
        assert_eq!(find_isomorphism(&z2, &sl), None);
    }

    #[test]
    fn late_products_are_checked() {
        // M3 with a·a landing on the last index, against the table where a·a = a
        let idem = FiniteMonoid::from_names(
            "I3",
            &["E", "a", "0"],
            "E",
            &[&["E", "a", "0"], &["a", "a", "0"], &["0", "0", "0"]],
        )
        .unwrap();
        assert_eq!(find_isomorphism(&corpus::m3(), &idem), None);
        let swapped = FiniteMonoid::from_names(
            "M3s",
            &["E", "0", "a"],
            "E",
            &[&["E", "0", "a"], &["0", "0", "0"], &["a", "0", "0"]],
        )
        .unwrap();
        assert_eq!(find_isomorphism(&corpus::m3(), &swapped), Some(vec![0, 2, 1]));
    }

    #[test]
    fn order_mismatch() {
        assert_eq!(find_isomorphism(&corpus::m3(), &FiniteMonoid::trivial()), None);
    }
}
