use super::{require_associative, require_ideal, IdealError, IdealSubset};
use crate::monoid::{FiniteMonoid, MonoidHom};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientResult {
    pub quotient: FiniteMonoid,
    /// Index of the collapsed ideal in `quotient`.
    pub zero: usize,
    pub projection: MonoidHom,
}

/// Identifies all of `Q` with a single absorbing element.
///
/// Elements outside `Q` keep their names and relative order; the zero takes
/// the position of the first member of `Q`. A singleton `Q` keeps its name.
pub fn quotient_to_zero(m: &FiniteMonoid, q: &IdealSubset) -> Result<QuotientResult, IdealError> {
    require_associative(m, q)?;
    let first_q = q.members()[0];
    let zero_name = if q.len() == 1 {
        m.element_name(first_q).to_string()
    } else {
        fresh_name(m, q, "0")
    };

    let mut names = Vec::new();
    let mut projection = vec![0; m.order()];
    let mut zero = 0;
    for x in 0..m.order() {
        if q.contains(x) {
            if x == first_q {
                zero = names.len();
                names.push(zero_name.clone());
            }
        } else {
            projection[x] = names.len();
            names.push(m.element_name(x).to_string());
        }
    }
    for &x in q.members() {
        projection[x] = zero;
    }

    let k = names.len();
    let mut table = vec![usize::MAX; k * k];
    for x in 0..m.order() {
        for y in 0..m.order() {
            table[projection[x] * k + projection[y]] = projection[m.mul(x, y)];
        }
    }
    let quotient = FiniteMonoid::from_flat_unchecked(
        format!("{}/{}", m.name(), q.render(m)),
        names,
        projection[m.unit()],
        table,
    );
    let projection = MonoidHom::new(m.clone(), quotient.clone(), projection);
    Ok(QuotientResult { quotient, zero, projection })
}

fn fresh_name(m: &FiniteMonoid, q: &IdealSubset, base: &str) -> String {
    let taken = |s: &str| (0..m.order()).any(|i| !q.contains(i) && m.element_name(i) == s);
    let mut name = base.to_string();
    while taken(&name) {
        name.push('\'');
    }
    name
}

/// Quotient by the smallest congruence containing `pairs`, with the class
/// representatives (least index per class) as elements.
pub fn congruence_quotient(m: &FiniteMonoid, pairs: &[(usize, usize)]) -> (FiniteMonoid, Vec<usize>) {
    let n = m.order();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut root = x;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = x;
        while parent[cur] != root {
            let next = parent[cur];
            parent[cur] = root;
            cur = next;
        }
        root
    }
    fn union(parent: &mut [usize], a: usize, b: usize) -> bool {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        parent[hi] = lo;
        true
    }
    for &(a, b) in pairs {
        union(&mut parent, a, b);
    }
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in x + 1..n {
                if find(&mut parent, x) != find(&mut parent, y) {
                    continue;
                }
                for z in 0..n {
                    changed |= union(&mut parent, m.mul(x, z), m.mul(y, z));
                    changed |= union(&mut parent, m.mul(z, x), m.mul(z, y));
                }
            }
        }
        if !changed {
            break;
        }
    }
    let roots: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    let reps: Vec<usize> = (0..n).filter(|&x| roots[x] == x).collect();
    let class_of: Vec<usize> = roots.iter().map(|r| reps.binary_search(r).expect("root is a representative")).collect();
    let k = reps.len();
    let mut table = vec![0; k * k];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            table[i * k + j] = class_of[m.mul(a, b)];
        }
    }
    let names = reps.iter().map(|&r| m.element_name(r).to_string()).collect();
    let quotient = FiniteMonoid::from_flat_unchecked(format!("{}/~", m.name()), names, class_of[m.unit()], table);
    (quotient, class_of)
}

/// Identifies every member of `Q` with the unit. For any ideal this collapses
/// the monoid to a single element.
pub fn quotient_to_unit(m: &FiniteMonoid, q: &IdealSubset) -> Result<FiniteMonoid, IdealError> {
    require_ideal(m, q)?;
    let pairs: Vec<(usize, usize)> = q.members().iter().map(|&x| (x, m.unit())).collect();
    Ok(congruence_quotient(m, &pairs).0)
}
