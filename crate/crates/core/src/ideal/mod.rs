//! Two-sided ideals of finite monoids: recognition, the associativity
//! condition on triples, primality, generation and enumeration.
//!
//! An [`IdealSubset`] here is always nonempty and never contains the unit;
//! identifying a unit-containing ideal with `E` collapses the whole monoid
//! (see [`quotient_to_unit`]).

pub mod free;
mod pushout;
mod quotient;

use std::fmt;

use thiserror::Error;

use crate::monoid::{FiniteMonoid, MonoidError};
use crate::verdict::Verdict;

pub use pushout::{verify_pushout, verify_pushout_with, CoconePair, CorpusRecord, PushoutWitness};
pub use quotient::{congruence_quotient, quotient_to_unit, quotient_to_zero, QuotientResult};

/// Ideals are enumerated by power-set scan; larger monoids are refused.
pub const DEFAULT_IDEAL_SCAN_CAP: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("ideal subset is empty")]
    Empty,
    #[error("ideal contains the unit `{0}`, which identifies the whole monoid with E")]
    ContainsUnit(String),
    #[error("member index {0} is out of range")]
    OutOfRange(usize),
    #[error("not a two-sided ideal: {x}·{y} leaves the subset")]
    NotAnIdeal { x: String, y: String },
    #[error("not an associative ideal: ({0},{1},{2}) has abc in Q but ab, bc outside")]
    NotAssociative(String, String, String),
    #[error("seed generates the whole monoid")]
    SeedGeneratesWholeMonoid,
    #[error("monoid of order {order} exceeds the ideal scan cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}

/// A set of element indices, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdealSubset {
    members: Vec<usize>,
}

impl IdealSubset {
    pub fn from_members(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        IdealSubset { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn mask(&self, order: usize) -> Vec<bool> {
        let mut mask = vec![false; order];
        for &i in &self.members {
            if i < order {
                mask[i] = true;
            }
        }
        mask
    }

    /// `{a,0}` style rendering with element names.
    pub fn render(&self, m: &FiniteMonoid) -> String {
        let names: Vec<&str> = self.members.iter().map(|&i| m.element_name(i)).collect();
        format!("{{{}}}", names.join(","))
    }
}

pub(crate) fn admissible(m: &FiniteMonoid, q: &IdealSubset) -> Result<(), IdealError> {
    if q.is_empty() {
        return Err(IdealError::Empty);
    }
    if let Some(&bad) = q.members.iter().find(|&&i| i >= m.order()) {
        return Err(IdealError::OutOfRange(bad));
    }
    if q.contains(m.unit()) {
        return Err(IdealError::ContainsUnit(m.element_name(m.unit()).to_string()));
    }
    Ok(())
}

fn absorption_failure(m: &FiniteMonoid, q: &IdealSubset) -> Option<(usize, usize)> {
    for &x in q.members() {
        for y in 0..m.order() {
            if !q.contains(m.mul(x, y)) {
                return Some((x, y));
            }
            if !q.contains(m.mul(y, x)) {
                return Some((y, x));
            }
        }
    }
    None
}

/// Two-sided absorption: `x ∈ Q` implies `xy, yx ∈ Q` for every `y`.
pub fn is_ideal(m: &FiniteMonoid, q: &IdealSubset) -> Result<bool, IdealError> {
    admissible(m, q)?;
    Ok(absorption_failure(m, q).is_none())
}

pub(crate) fn require_ideal(m: &FiniteMonoid, q: &IdealSubset) -> Result<(), IdealError> {
    admissible(m, q)?;
    match absorption_failure(m, q) {
        None => Ok(()),
        Some((x, y)) => Err(IdealError::NotAnIdeal {
            x: m.element_name(x).to_string(),
            y: m.element_name(y).to_string(),
        }),
    }
}

pub(crate) fn associativity_failure(m: &FiniteMonoid, q: &IdealSubset) -> Option<[usize; 3]> {
    let mask = q.mask(m.order());
    for a in m.non_units() {
        for b in m.non_units() {
            let ab = m.mul(a, b);
            for c in m.non_units() {
                let bc = m.mul(b, c);
                if mask[m.mul(ab, c)] && !mask[ab] && !mask[bc] {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

/// For all non-unit `a, b, c`: `abc ∈ Q` implies `ab ∈ Q` or `bc ∈ Q`.
pub fn is_associative_ideal(m: &FiniteMonoid, q: &IdealSubset) -> Result<Verdict<[usize; 3]>, IdealError> {
    require_ideal(m, q)?;
    Ok(Verdict::from_first(associativity_failure(m, q)))
}

pub(crate) fn require_associative(m: &FiniteMonoid, q: &IdealSubset) -> Result<(), IdealError> {
    match is_associative_ideal(m, q)? {
        Verdict::Holds => Ok(()),
        Verdict::Fails([a, b, c]) => Err(IdealError::NotAssociative(
            m.element_name(a).to_string(),
            m.element_name(b).to_string(),
            m.element_name(c).to_string(),
        )),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimeDirection {
    /// `xy ∈ P` but neither factor is.
    ProductWithoutFactor,
    /// a factor is in `P` but `xy` is not.
    FactorWithoutProduct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeWitness {
    pub x: usize,
    pub y: usize,
    pub direction: PrimeDirection,
}

/// `xy ∈ P ⇔ (x ∈ P ∨ y ∈ P)` for every pair.
pub fn is_prime_ideal(m: &FiniteMonoid, q: &IdealSubset) -> Result<Verdict<PrimeWitness>, IdealError> {
    require_ideal(m, q)?;
    let mask = q.mask(m.order());
    for x in 0..m.order() {
        for y in 0..m.order() {
            let product = mask[m.mul(x, y)];
            let factor = mask[x] || mask[y];
            if product != factor {
                let direction =
                    if product { PrimeDirection::ProductWithoutFactor } else { PrimeDirection::FactorWithoutProduct };
                return Ok(Verdict::Fails(PrimeWitness { x, y, direction }));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Smallest two-sided ideal containing `seed`: all products `u·s·v`.
pub fn generated_ideal(m: &FiniteMonoid, seed: &IdealSubset) -> Result<IdealSubset, IdealError> {
    if seed.is_empty() {
        return Err(IdealError::Empty);
    }
    if let Some(&bad) = seed.members().iter().find(|&&i| i >= m.order()) {
        return Err(IdealError::OutOfRange(bad));
    }
    let mut mask = seed.mask(m.order());
    loop {
        let mut grew = false;
        for x in 0..m.order() {
            if !mask[x] {
                continue;
            }
            for y in 0..m.order() {
                for p in [m.mul(x, y), m.mul(y, x)] {
                    if !mask[p] {
                        mask[p] = true;
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    if mask[m.unit()] {
        return Err(IdealError::SeedGeneratesWholeMonoid);
    }
    Ok(IdealSubset::from_members((0..m.order()).filter(|&i| mask[i]).collect()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifiedIdeal {
    pub ideal: IdealSubset,
    pub associative: bool,
    pub prime: bool,
}

/// Every admissible two-sided ideal, flagged associative/prime, ordered by
/// size then member indices.
pub fn enumerate_ideals(m: &FiniteMonoid, cap: usize) -> Result<Vec<ClassifiedIdeal>, IdealError> {
    if m.order() > cap {
        return Err(IdealError::CapExceeded { order: m.order(), cap });
    }
    let candidates: Vec<usize> = m.non_units().collect();
    let mut found = Vec::new();
    for bits in 1u64..(1u64 << candidates.len()) {
        let members = candidates.iter().enumerate().filter(|(k, _)| bits & (1 << k) != 0).map(|(_, &i)| i).collect();
        let q = IdealSubset::from_members(members);
        if absorption_failure(m, &q).is_some() {
            continue;
        }
        let associative = associativity_failure(m, &q).is_none();
        let prime = is_prime_ideal(m, &q)?.holds();
        found.push(ClassifiedIdeal { ideal: q, associative, prime });
    }
    found.sort_by(|a, b| (a.ideal.len(), &a.ideal).cmp(&(b.ideal.len(), &b.ideal)));
    Ok(found)
}

pub fn enumerate_associative_ideals(m: &FiniteMonoid) -> Result<Vec<ClassifiedIdeal>, IdealError> {
    enumerate_associative_ideals_capped(m, DEFAULT_IDEAL_SCAN_CAP)
}

pub fn enumerate_associative_ideals_capped(m: &FiniteMonoid, cap: usize) -> Result<Vec<ClassifiedIdeal>, IdealError> {
    Ok(enumerate_ideals(m, cap)?.into_iter().filter(|c| c.associative).collect())
}

/// Every `x ∉ Q` has `y ∉ Q` with `xy ∉ Q` and `z ∉ Q` with `zx ∉ Q`.
///
/// With `allow_unit_witness` off, the unit and every local unit are barred
/// from serving as `y` or `z`.
pub fn weak_simplicity_check(
    m: &FiniteMonoid,
    q: &IdealSubset,
    allow_unit_witness: bool,
) -> Result<Verdict<usize>, IdealError> {
    require_ideal(m, q)?;
    let mask = q.mask(m.order());
    let barred: Vec<bool> = if allow_unit_witness {
        vec![false; m.order()]
    } else {
        let mut barred = vec![false; m.order()];
        barred[m.unit()] = true;
        for e in crate::bridge::local_units_unchecked(m, q).non_unit {
            barred[e] = true;
        }
        barred
    };
    let witnesses: Vec<usize> = (0..m.order()).filter(|&y| !mask[y] && !barred[y]).collect();
    for x in (0..m.order()).filter(|&x| !mask[x]) {
        let right = witnesses.iter().any(|&y| !mask[m.mul(x, y)]);
        let left = witnesses.iter().any(|&z| !mask[m.mul(z, x)]);
        if !(right && left) {
            return Ok(Verdict::Fails(x));
        }
    }
    Ok(Verdict::Holds)
}

impl fmt::Display for PrimeWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}) {:?}", self.x, self.y, self.direction)
    }
}
