//! Brute-force check that `M → M0 ← {E,0}` is the pushout of
//! `M ← {E}∪Q → {E,0}`, against a finite corpus of test monoids.
//!
//! Universality over all monoids is not finitely checkable, so every report
//! carries the names of the corpus it was checked against.

use super::{quotient_to_zero, require_associative, IdealError, IdealSubset, QuotientResult};
use crate::monoid::{check_hom, homomorphisms, verify_monoid, FiniteMonoid, MonoidError, MonoidHom};
use crate::par::{self, Strategy};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoconePair {
    /// `h1: M → X`
    pub h1: Vec<usize>,
    /// `h0: {E,0} → X`
    pub h0: Vec<usize>,
    /// Every `r: M0 → X` with `r∘projection = h1` and `r∘induced = h0`.
    pub mediators: Vec<Vec<usize>>,
}

impl CoconePair {
    pub fn has_unique_mediator(&self) -> bool {
        self.mediators.len() == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusRecord {
    pub target: String,
    pub pairs: Vec<CoconePair>,
}

impl CorpusRecord {
    pub fn unique(&self) -> bool {
        self.pairs.iter().all(CoconePair::has_unique_mediator)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PushoutWitness {
    /// `{E} ∪ Q` as a submonoid of `M`.
    pub corner: FiniteMonoid,
    pub two_element: FiniteMonoid,
    pub inclusion: MonoidHom,
    pub collapse: MonoidHom,
    pub apex: QuotientResult,
    /// `{E,0} → M0`, sending `0` to the collapsed ideal.
    pub induced: MonoidHom,
    pub commutes: bool,
    pub corpus: Vec<CorpusRecord>,
}

impl PushoutWitness {
    pub fn passes(&self) -> bool {
        self.commutes && self.corpus.iter().all(CorpusRecord::unique)
    }

    pub fn cocone_count(&self) -> usize {
        self.corpus.iter().map(|r| r.pairs.len()).sum()
    }
}

pub fn verify_pushout(
    m: &FiniteMonoid,
    q: &IdealSubset,
    corpus: &[FiniteMonoid],
) -> Result<PushoutWitness, IdealError> {
    verify_pushout_with(m, q, corpus, Strategy::default())
}

pub fn verify_pushout_with(
    m: &FiniteMonoid,
    q: &IdealSubset,
    corpus: &[FiniteMonoid],
    strategy: Strategy,
) -> Result<PushoutWitness, IdealError> {
    require_associative(m, q)?;
    for x in corpus {
        let report = verify_monoid(&x.to_raw())?;
        if !report.is_ok() {
            return Err(MonoidError::Axioms(report).into());
        }
    }

    let corner_members: Vec<usize> = (0..m.order()).filter(|&i| i == m.unit() || q.contains(i)).collect();
    let local = |i: usize| corner_members.binary_search(&i).expect("corner member");
    let k = corner_members.len();
    let mut table = vec![0; k * k];
    for (a, &x) in corner_members.iter().enumerate() {
        for (b, &y) in corner_members.iter().enumerate() {
            table[a * k + b] = local(m.mul(x, y));
        }
    }
    let corner = FiniteMonoid::from_flat_unchecked(
        format!("{{E}}+{}", q.render(m)),
        corner_members.iter().map(|&i| m.element_name(i).to_string()).collect(),
        local(m.unit()),
        table,
    );
    let two = crate::corpus::two_element_zero();
    let (two_unit, two_zero) = (two.unit(), 1 - two.unit());

    let inclusion = MonoidHom::new(corner.clone(), m.clone(), corner_members.clone());
    let collapse = MonoidHom::new(
        corner.clone(),
        two.clone(),
        corner_members.iter().map(|&i| if i == m.unit() { two_unit } else { two_zero }).collect(),
    );
    let apex = quotient_to_zero(m, q)?;
    let mut induced_map = vec![0; 2];
    induced_map[two_unit] = apex.quotient.unit();
    induced_map[two_zero] = apex.zero;
    let induced = MonoidHom::new(two.clone(), apex.quotient.clone(), induced_map);

    debug_assert!(check_hom(&inclusion).map(|r| r.is_ok()).unwrap_or(false));
    debug_assert!(check_hom(&collapse).map(|r| r.is_ok()).unwrap_or(false));
    let commutes = check_hom(&induced)?.is_ok()
        && inclusion.then(&apex.projection).map == collapse.then(&induced).map;

    let records = par::map(strategy, corpus, |x| corpus_record(m, q, &two, &apex, &induced, x));

    Ok(PushoutWitness { corner, two_element: two, inclusion, collapse, apex, induced, commutes, corpus: records })
}

fn corpus_record(
    m: &FiniteMonoid,
    q: &IdealSubset,
    two: &FiniteMonoid,
    apex: &QuotientResult,
    induced: &MonoidHom,
    x: &FiniteMonoid,
) -> CorpusRecord {
    let h1s = homomorphisms(m, x);
    let h0s = homomorphisms(two, x);
    let rs = homomorphisms(&apex.quotient, x);
    let two_zero = 1 - two.unit();
    let mut pairs = Vec::new();
    for h1 in &h1s {
        for h0 in &h0s {
            // commuting constraint: h1 on the corner equals h0 after the collapse
            if !q.members().iter().all(|&y| h1[y] == h0[two_zero]) {
                continue;
            }
            let mediators = rs
                .iter()
                .filter(|r| {
                    (0..m.order()).all(|i| r[apex.projection.map[i]] == h1[i])
                        && (0..two.order()).all(|j| r[induced.map[j]] == h0[j])
                })
                .cloned()
                .collect();
            pairs.push(CoconePair { h1: h1.clone(), h0: h0.clone(), mediators });
        }
    }
    CorpusRecord { target: x.name().to_string(), pairs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{self, ideal};

    #[test]
    fn m3_zero_against_order_three_corpus() {
        let m3 = corpus::m3();
        let mut all = Vec::new();
        for n in 1..=3 {
            all.extend(crate::monoid::enumerate_monoids(n).unwrap());
        }
        let w = verify_pushout(&m3, &ideal(&m3, &["0"]), &all).unwrap();
        assert!(w.commutes);
        assert!(w.passes());
        assert_eq!(w.corpus.len(), all.len());
    }

    #[test]
    fn trivial_target_has_one_cocone() {
        let m3 = corpus::m3();
        let w = verify_pushout(&m3, &ideal(&m3, &["a", "0"]), &[FiniteMonoid::trivial()]).unwrap();
        assert!(w.passes());
        assert_eq!(w.cocone_count(), 1);
    }

    #[test]
    fn invalid_corpus_member_is_structural() {
        let m3 = corpus::m3();
        let broken = FiniteMonoid::from_flat_unchecked("bad".into(), vec!["E".into(), "a".into()], 0, vec![0, 0, 1, 1]);
        let err = verify_pushout(&m3, &ideal(&m3, &["0"]), &[broken]).unwrap_err();
        assert!(matches!(err, IdealError::Monoid(MonoidError::Axioms(_))));
    }
}
