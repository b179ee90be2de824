use super::{FiniteMonoid, MonoidError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidHom {
    pub source: FiniteMonoid,
    pub target: FiniteMonoid,
    /// `map[i]` is the target index of source element `i`.
    pub map: Vec<usize>,
}

impl MonoidHom {
    pub fn new(source: FiniteMonoid, target: FiniteMonoid, map: Vec<usize>) -> Self {
        MonoidHom { source, target, map }
    }

    pub fn identity(m: &FiniteMonoid) -> Self {
        MonoidHom { source: m.clone(), target: m.clone(), map: (0..m.order()).collect() }
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &y in &self.map {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// `other ∘ self`, i.e. first `self` then `other`.
    pub fn then(&self, other: &MonoidHom) -> MonoidHom {
        MonoidHom {
            source: self.source.clone(),
            target: other.target.clone(),
            map: self.map.iter().map(|&y| other.map[y]).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomReport {
    Ok,
    UnitNotPreserved { image: String },
    /// `map(x·y) != map(x)·map(y)`; the first failing pair in row-major order.
    ProductNotPreserved { x: String, y: String },
}

impl HomReport {
    pub fn is_ok(&self) -> bool {
        matches!(self, HomReport::Ok)
    }
}

pub(crate) fn check_map(source: &FiniteMonoid, target: &FiniteMonoid, map: &[usize]) -> Result<HomReport, MonoidError> {
    if map.len() != source.order() {
        return Err(MonoidError::MapLength { map: map.len(), source_order: source.order() });
    }
    if let Some((i, &v)) = map.iter().enumerate().find(|(_, &v)| v >= target.order()) {
        return Err(MonoidError::MapOutOfRange { element: source.element_name(i).to_string(), value: v });
    }
    if map[source.unit()] != target.unit() {
        return Ok(HomReport::UnitNotPreserved { image: target.element_name(map[source.unit()]).to_string() });
    }
    for x in 0..source.order() {
        for y in 0..source.order() {
            if map[source.mul(x, y)] != target.mul(map[x], map[y]) {
                return Ok(HomReport::ProductNotPreserved {
                    x: source.element_name(x).to_string(),
                    y: source.element_name(y).to_string(),
                });
            }
        }
    }
    Ok(HomReport::Ok)
}

pub fn check_hom(h: &MonoidHom) -> Result<HomReport, MonoidError> {
    check_map(&h.source, &h.target, &h.map)
}

/// Every homomorphism `source → target`, as index maps in lexicographic order.
///
/// Exhaustive over all `|target|^(|source|-1)` maps with the unit pinned,
/// pruned as soon as an assigned product disagrees.
pub fn homomorphisms(source: &FiniteMonoid, target: &FiniteMonoid) -> Vec<Vec<usize>> {
    let n = source.order();
    let mut map = vec![usize::MAX; n];
    map[source.unit()] = target.unit();
    let mut out = Vec::new();
    extend(source, target, &mut map, 0, &mut out);
    out
}

fn extend(source: &FiniteMonoid, target: &FiniteMonoid, map: &mut Vec<usize>, next: usize, out: &mut Vec<Vec<usize>>) {
    let n = source.order();
    if next == n {
        out.push(map.clone());
        return;
    }
    if next == source.unit() {
        if consistent(source, target, map) {
            extend(source, target, map, next + 1, out);
        }
        return;
    }
    for v in 0..target.order() {
        map[next] = v;
        if consistent(source, target, map) {
            extend(source, target, map, next + 1, out);
        }
    }
    map[next] = usize::MAX;
}

// Rechecks every pair whose operands and product are all assigned, so a
// product assigned after its operands is still covered.
fn consistent(source: &FiniteMonoid, target: &FiniteMonoid, map: &[usize]) -> bool {
    let n = source.order();
    let assigned = |i: usize| map[i] != usize::MAX;
    (0..n).filter(|&x| assigned(x)).all(|x| {
        (0..n).filter(|&y| assigned(y)).all(|y| {
            let xy = source.mul(x, y);
            !assigned(xy) || map[xy] == target.mul(map[x], map[y])
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn collapse_m3_to_two_element_zero_monoid() {
        let m3 = corpus::m3();
        let two = corpus::two_element_zero();
        let h = MonoidHom::new(m3.clone(), two.clone(), vec![0, 1, 1]);
        assert_eq!(check_hom(&h).unwrap(), HomReport::Ok);
        assert!(check_hom(&MonoidHom::identity(&m3)).unwrap().is_ok());
    }

    #[test]
    fn sending_a_to_unit_fails_at_a_a() {
        let h = MonoidHom::new(corpus::m3(), corpus::two_element_zero(), vec![0, 0, 1]);
        assert_eq!(check_hom(&h).unwrap(), HomReport::ProductNotPreserved { x: "a".into(), y: "a".into() });
    }

    #[test]
    fn length_mismatch_is_structural() {
        let h = MonoidHom::new(corpus::m3(), corpus::two_element_zero(), vec![0, 1]);
        assert!(matches!(check_hom(&h), Err(MonoidError::MapLength { map: 2, source_order: 3 })));
    }

    #[test]
    fn hom_search_matches_filtering_all_maps() {
        let mut corpus = crate::monoid::enumerate_monoids(3).unwrap();
        // products landing on a later index
        corpus.extend([corpus::m3(), corpus::m4()]);
        for m in &corpus {
            for x in &corpus {
                let found = homomorphisms(m, x);
                let mut brute = Vec::new();
                let n = m.order();
                let k = x.order();
                for code in 0..k.pow(n as u32) {
                    let map: Vec<usize> = (0..n).map(|i| (code / k.pow((n - 1 - i) as u32)) % k).collect();
                    if check_map(m, x, &map).unwrap().is_ok() {
                        brute.push(map);
                    }
                }
                assert_eq!(found, brute, "{} -> {}", m.name(), x.name());
            }
        }
    }
}
