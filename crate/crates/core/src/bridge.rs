//! From a monoid with an associative ideal to a category and back.
//!
//! Local units play the part of objects: an element `e ∉ Q` is a local unit
//! when it acts as the identity on every non-unit `x` wherever `ex` (resp.
//! `xe`) avoids `Q`, and `ee ∉ Q`. The global unit is reported separately.
//! Quantifying over non-unit `x` follows the convention of the associative
//! ideal condition; `e·E = e` would otherwise rule out every `e ≠ E`.

use std::fmt;

use thiserror::Error;

use crate::category::{self, CategoryReport, FiniteCategory, MonoidWithZero};
use crate::ideal::{self, IdealError, IdealSubset};
use crate::monoid::FiniteMonoid;
use crate::verdict::Verdict;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BridgeError {
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error("{x}·{y} is the unit, so the non-unit elements are not closed under the product")]
    UnitProduct { x: String, y: String },
    #[error("partial product is not weakly associative at ({0},{1},{2})")]
    WeakAssociativity(String, String, String),
    #[error("category side is invalid: {0}")]
    InvalidCategory(CategoryReport),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalUnits {
    pub unit: usize,
    /// Local units other than the global unit, in index order.
    pub non_unit: Vec<usize>,
}

impl LocalUnits {
    /// All local units including the global unit, in index order.
    pub fn all(&self) -> Vec<usize> {
        let mut v = self.non_unit.clone();
        v.push(self.unit);
        v.sort_unstable();
        v
    }
}

fn is_local_unit(m: &FiniteMonoid, mask: &[bool], e: usize) -> bool {
    if e == m.unit() || mask[e] || mask[m.mul(e, e)] {
        return false;
    }
    m.non_units().all(|x| {
        let (ex, xe) = (m.mul(e, x), m.mul(x, e));
        (mask[ex] || ex == x) && (mask[xe] || xe == x)
    })
}

pub(crate) fn local_units_unchecked(m: &FiniteMonoid, q: &IdealSubset) -> LocalUnits {
    let mask = q.mask(m.order());
    LocalUnits { unit: m.unit(), non_unit: (0..m.order()).filter(|&e| is_local_unit(m, &mask, e)).collect() }
}

/// Local units of `M` relative to the ideal `Q`. Only absorption is
/// required of `Q`, so extended monoids from [`adjoin_local_unit`] qualify.
pub fn local_units(m: &FiniteMonoid, q: &IdealSubset) -> Result<LocalUnits, IdealError> {
    ideal::require_ideal(m, q)?;
    Ok(local_units_unchecked(m, q))
}

/// Every non-unit `x ∉ Q` has local units `e, e'` with `ex ∉ Q` and `xe' ∉ Q`.
/// The global unit counts as a witness only when `include_unit` is set.
pub fn check_unit_coverage(m: &FiniteMonoid, q: &IdealSubset, include_unit: bool) -> Result<Verdict<usize>, IdealError> {
    let units = local_units(m, q)?;
    let mut witnesses = units.non_unit.clone();
    if include_unit {
        witnesses.push(units.unit);
    }
    let mask = q.mask(m.order());
    for x in m.non_units().filter(|&x| !mask[x]) {
        let left = witnesses.iter().any(|&e| !mask[m.mul(e, x)]);
        let right = witnesses.iter().any(|&e| !mask[m.mul(x, e)]);
        if !(left && right) {
            return Ok(Verdict::Fails(x));
        }
    }
    Ok(Verdict::Holds)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjoinedUnit {
    pub monoid: FiniteMonoid,
    /// Index of the fresh element (always the last one).
    pub fresh: usize,
}

/// Adjoins a fresh element `u` acting as the identity on every non-unit
/// element, with `u·u = u` and `E·u = u·E = u`. Indices of the input are kept,
/// so `Q` is unchanged.
///
/// Refused when two non-units multiply to the unit: `u` would then break
/// associativity (`(u·x)·y = E` but `u·(x·y) = u`).
///
/// The extension generally breaks the triple condition on `Q`: for `x` with
/// `x·x ∈ Q`, the triple `(x, u, x)` has `x·u·x ∈ Q` but `x·u, u·x ∉ Q`. Only
/// absorption is required of `Q` here, and [`monoid_to_partial_extended`]
/// accepts the result.
pub fn adjoin_local_unit(m: &FiniteMonoid, q: &IdealSubset) -> Result<AdjoinedUnit, BridgeError> {
    ideal::require_ideal(m, q)?;
    for x in m.non_units() {
        for y in m.non_units() {
            if m.mul(x, y) == m.unit() {
                return Err(BridgeError::UnitProduct {
                    x: m.element_name(x).to_string(),
                    y: m.element_name(y).to_string(),
                });
            }
        }
    }
    let n = m.order();
    let fresh = n;
    let mut name = "u".to_string();
    while m.index_of(&name).is_some() {
        name.push('\'');
    }
    let mut names = m.elements().to_vec();
    names.push(name);
    let k = n + 1;
    let mut table = vec![0; k * k];
    for x in 0..n {
        for y in 0..n {
            table[x * k + y] = m.mul(x, y);
        }
    }
    for x in 0..k {
        let acted = if x == m.unit() { fresh } else { x };
        table[fresh * k + x] = acted;
        table[x * k + fresh] = acted;
    }
    let monoid = FiniteMonoid::from_flat_unchecked(format!("{}+u", m.name()), names, m.unit(), table);
    debug_assert!(crate::monoid::verify_monoid(&monoid.to_raw()).map(|r| r.is_ok()).unwrap_or(false));
    Ok(AdjoinedUnit { monoid, fresh })
}

/// The carrier `M − ({E} ∪ Q)` with the product kept only where it avoids `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialCompositionStructure {
    pub name: String,
    pub carrier: Vec<String>,
    /// Row-major `k × k`, `None` where undefined.
    pub product: Vec<Option<usize>>,
    /// Carrier indices of the local units.
    pub local_units: Vec<usize>,
    /// Carrier index → index in the source monoid.
    pub source_index: Vec<usize>,
}

impl PartialCompositionStructure {
    pub fn size(&self) -> usize {
        self.carrier.len()
    }

    pub fn get(&self, a: usize, b: usize) -> Option<usize> {
        self.product[a * self.size() + b]
    }

    pub fn defined_pairs(&self) -> Vec<(usize, usize)> {
        let k = self.size();
        (0..k).flat_map(|a| (0..k).map(move |b| (a, b))).filter(|&(a, b)| self.get(a, b).is_some()).collect()
    }

    /// If `ab` and `bc` are defined then so are `(ab)c` and `a(bc)`, and they agree.
    pub fn weak_associativity(&self) -> Verdict<[usize; 3]> {
        let k = self.size();
        for a in 0..k {
            for b in 0..k {
                let Some(ab) = self.get(a, b) else { continue };
                for c in 0..k {
                    let Some(bc) = self.get(b, c) else { continue };
                    match (self.get(ab, c), self.get(a, bc)) {
                        (Some(l), Some(r)) if l == r => {}
                        _ => return Verdict::Fails([a, b, c]),
                    }
                }
            }
        }
        Verdict::Holds
    }

    fn is_local_unit(&self, e: usize) -> bool {
        self.get(e, e) == Some(e)
            && (0..self.size()).all(|x| {
                self.get(e, x).is_none_or(|y| y == x) && self.get(x, e).is_none_or(|y| y == x)
            })
    }
}

/// Requires `Q` to be an associative ideal, which makes the partial product
/// weakly associative; that is re-verified before returning.
pub fn monoid_to_partial(m: &FiniteMonoid, q: &IdealSubset) -> Result<PartialCompositionStructure, BridgeError> {
    ideal::require_associative(m, q)?;
    let p = partial_structure(m, q)?;
    if let Verdict::Fails([a, b, c]) = p.weak_associativity() {
        return Err(BridgeError::WeakAssociativity(p.carrier[a].clone(), p.carrier[b].clone(), p.carrier[c].clone()));
    }
    Ok(p)
}

/// As [`monoid_to_partial`], for an extended monoid in which `Q` is only
/// known to be an ideal. Weak associativity is not enforced;
/// [`partial_to_category`] diagnoses what goes wrong instead.
pub fn monoid_to_partial_extended(
    m: &FiniteMonoid,
    q: &IdealSubset,
) -> Result<PartialCompositionStructure, BridgeError> {
    ideal::require_ideal(m, q)?;
    partial_structure(m, q)
}

fn partial_structure(m: &FiniteMonoid, q: &IdealSubset) -> Result<PartialCompositionStructure, BridgeError> {
    let source_index: Vec<usize> = m.non_units().filter(|&x| !q.contains(x)).collect();
    let k = source_index.len();
    let mut local = vec![usize::MAX; m.order()];
    for (i, &x) in source_index.iter().enumerate() {
        local[x] = i;
    }
    let mut product = vec![None; k * k];
    for (i, &a) in source_index.iter().enumerate() {
        for (j, &b) in source_index.iter().enumerate() {
            let ab = m.mul(a, b);
            if ab == m.unit() {
                return Err(BridgeError::UnitProduct {
                    x: m.element_name(a).to_string(),
                    y: m.element_name(b).to_string(),
                });
            }
            if !q.contains(ab) {
                product[i * k + j] = Some(local[ab]);
            }
        }
    }
    let mut p = PartialCompositionStructure {
        name: m.name().to_string(),
        carrier: source_index.iter().map(|&x| m.element_name(x).to_string()).collect(),
        product,
        local_units: Vec::new(),
        source_index,
    };
    p.local_units = (0..k).filter(|&e| p.is_local_unit(e)).collect();
    Ok(p)
}

/// Why a partial structure is only a weak category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnosis {
    NoLeftUnit(String),
    NoRightUnit(String),
    MultipleLeftUnits(String, Vec<String>),
    MultipleRightUnits(String, Vec<String>),
    /// `cod f = dom g` but `f∗g` is undefined.
    MissingComposite(String, String),
    /// `f∗g` is defined but `cod f ≠ dom g`.
    SpuriousComposite(String, String),
    Axioms(CategoryReport),
}

impl fmt::Display for Diagnosis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnosis::NoLeftUnit(x) => write!(f, "{x} has no left local unit in carrier"),
            Diagnosis::NoRightUnit(x) => write!(f, "{x} has no right local unit in carrier"),
            Diagnosis::MultipleLeftUnits(x, us) => write!(f, "{x} has several left local units {}", us.join(",")),
            Diagnosis::MultipleRightUnits(x, us) => write!(f, "{x} has several right local units {}", us.join(",")),
            Diagnosis::MissingComposite(a, b) => write!(f, "{a}*{b} is composable but undefined"),
            Diagnosis::SpuriousComposite(a, b) => write!(f, "{a}*{b} is defined but not composable"),
            Diagnosis::Axioms(r) => write!(f, "category axioms fail: {r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartialOutcome {
    /// Every element has exactly one left and one right local unit, so the
    /// domain/codomain assignment is forced and the category is unique.
    Category(FiniteCategory),
    Weak(Diagnosis),
}

impl PartialOutcome {
    pub fn category(&self) -> Option<&FiniteCategory> {
        match self {
            PartialOutcome::Category(k) => Some(k),
            PartialOutcome::Weak(_) => None,
        }
    }

    pub fn diagnosis(&self) -> Option<&Diagnosis> {
        match self {
            PartialOutcome::Category(_) => None,
            PartialOutcome::Weak(d) => Some(d),
        }
    }
}

/// Reads a category off a partial structure: local units become objects,
/// each element's unique left/right local unit its domain/codomain.
pub fn partial_to_category(p: &PartialCompositionStructure) -> PartialOutcome {
    let name = |i: usize| p.carrier[i].clone();
    let names = |v: &[usize]| v.iter().map(|&i| name(i)).collect::<Vec<_>>();
    let mut dom = vec![0; p.size()];
    let mut cod = vec![0; p.size()];
    for x in 0..p.size() {
        let left: Vec<usize> = p.local_units.iter().copied().filter(|&e| p.get(e, x).is_some()).collect();
        let right: Vec<usize> = p.local_units.iter().copied().filter(|&e| p.get(x, e).is_some()).collect();
        match left.len() {
            0 => return PartialOutcome::Weak(Diagnosis::NoLeftUnit(name(x))),
            1 => {}
            _ => return PartialOutcome::Weak(Diagnosis::MultipleLeftUnits(name(x), names(&left))),
        }
        match right.len() {
            0 => return PartialOutcome::Weak(Diagnosis::NoRightUnit(name(x))),
            1 => {}
            _ => return PartialOutcome::Weak(Diagnosis::MultipleRightUnits(name(x), names(&right))),
        }
        dom[x] = left[0];
        cod[x] = right[0];
    }
    for f in 0..p.size() {
        for g in 0..p.size() {
            match (cod[f] == dom[g], p.get(f, g).is_some()) {
                (true, false) => return PartialOutcome::Weak(Diagnosis::MissingComposite(name(f), name(g))),
                (false, true) => return PartialOutcome::Weak(Diagnosis::SpuriousComposite(name(f), name(g))),
                _ => {}
            }
        }
    }

    let object_of = |e: usize| p.local_units.iter().position(|&u| u == e).expect("local unit");
    let objects = names(&p.local_units);
    let arrows = (0..p.size())
        .map(|x| category::Arrow { name: name(x), dom: object_of(dom[x]), cod: object_of(cod[x]) })
        .collect();
    let identities = p.local_units.clone();
    let composition = p.defined_pairs().into_iter().map(|(a, b)| ((a, b), p.get(a, b).expect("defined"))).collect();
    let k = match FiniteCategory::from_parts(p.name.clone(), objects, arrows, identities, composition) {
        Ok(k) => k,
        Err(e) => unreachable!("indices come from the carrier: {e}"),
    };
    let report = category::verify_category(&k);
    if report.is_ok() {
        PartialOutcome::Category(k)
    } else {
        PartialOutcome::Weak(Diagnosis::Axioms(report))
    }
}

/// A bijection between carriers preserving definedness and products.
pub fn find_partial_isomorphism(p: &PartialCompositionStructure, r: &PartialCompositionStructure) -> Option<Vec<usize>> {
    if p.size() != r.size() || p.defined_pairs().len() != r.defined_pairs().len() {
        return None;
    }
    let mut map = vec![usize::MAX; p.size()];
    let mut used = vec![false; r.size()];
    search_partial(p, r, &mut map, &mut used, 0).then_some(map)
}

fn search_partial(
    p: &PartialCompositionStructure,
    r: &PartialCompositionStructure,
    map: &mut [usize],
    used: &mut [bool],
    next: usize,
) -> bool {
    if next == p.size() {
        return true;
    }
    for cand in 0..r.size() {
        if used[cand] {
            continue;
        }
        map[next] = cand;
        // carrier indices up to `next` are assigned; products assigned only
        // later are checked then
        let consistent = (0..=next).all(|a| {
            (0..=next).all(|b| match (p.get(a, b), r.get(map[a], map[b])) {
                (None, None) => true,
                (Some(ab), Some(img)) => map[ab] == usize::MAX || map[ab] == img,
                _ => false,
            })
        });
        if consistent {
            used[cand] = true;
            if search_partial(p, r, map, used, next + 1) {
                return true;
            }
            used[cand] = false;
        }
        map[next] = usize::MAX;
    }
    false
}

/// `K → (K1, {0^}) → partial structure → category`, compared with `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryRoundTrip {
    pub completed: MonoidWithZero,
    pub partial: PartialCompositionStructure,
    pub outcome: PartialOutcome,
    /// The recovered category is isomorphic to the input.
    pub reproduced: bool,
}

pub fn category_round_trip(k: &FiniteCategory) -> Result<CategoryRoundTrip, BridgeError> {
    let report = category::verify_category(k);
    if !report.is_ok() {
        return Err(BridgeError::InvalidCategory(report));
    }
    let (completed, _) = category::category_to_monoid_unchecked(k);
    let partial = monoid_to_partial(&completed.monoid, &completed.zero_ideal())?;
    let outcome = partial_to_category(&partial);
    let reproduced = outcome.category().is_some_and(|back| category::find_category_isomorphism(k, back).is_some());
    Ok(CategoryRoundTrip { completed, partial, outcome, reproduced })
}

/// `(M, Q) → partial structure → category`, and when that only gives a
/// weak category, the same after adjoining a local unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidRoundTrip {
    pub partial: PartialCompositionStructure,
    pub outcome: PartialOutcome,
    /// For a category outcome: completing it again gives a partial structure
    /// isomorphic to `partial`.
    pub reproduced: Option<bool>,
    pub adjoined: Option<(AdjoinedUnit, PartialOutcome)>,
}

pub fn monoid_round_trip(m: &FiniteMonoid, q: &IdealSubset) -> Result<MonoidRoundTrip, BridgeError> {
    let partial = monoid_to_partial(m, q)?;
    let outcome = partial_to_category(&partial);
    let (reproduced, adjoined) = match &outcome {
        PartialOutcome::Category(k) => {
            let (k1, _) = category::category_to_monoid_unchecked(k);
            let again = monoid_to_partial(&k1.monoid, &k1.zero_ideal())?;
            (Some(find_partial_isomorphism(&partial, &again).is_some()), None)
        }
        PartialOutcome::Weak(_) => match adjoin_local_unit(m, q) {
            Ok(ext) => {
                let p1 = monoid_to_partial_extended(&ext.monoid, q)?;
                let after = partial_to_category(&p1);
                (None, Some((ext, after)))
            }
            Err(BridgeError::UnitProduct { .. }) => (None, None),
            Err(e) => return Err(e),
        },
    };
    Ok(MonoidRoundTrip { partial, outcome, reproduced, adjoined })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Clause {
    /// `R(E, Ê)` and `E` has no other partner.
    Unit,
    /// Every member of `Q` is related to `o` and only to `o`.
    Ideal,
    /// Every element of the monoid side has a partner.
    Total,
    /// Every carrier element has exactly one arrow partner.
    ArrowsFromMonoid,
    /// Every arrow has exactly one carrier partner.
    MonoidFromArrows,
    /// Local units correspond to identity arrows, both ways.
    LocalUnits,
    /// `(a,x), (b,y) ∈ R ⇒ (ab, x∗y) ∈ R`.
    Products,
}

impl Clause {
    pub const ALL: [Clause; 7] = [
        Clause::Unit,
        Clause::Ideal,
        Clause::Total,
        Clause::ArrowsFromMonoid,
        Clause::MonoidFromArrows,
        Clause::LocalUnits,
        Clause::Products,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Clause::Unit => "unit",
            Clause::Ideal => "ideal",
            Clause::Total => "total",
            Clause::ArrowsFromMonoid => "arrow-bijection-monoid",
            Clause::MonoidFromArrows => "arrow-bijection-category",
            Clause::LocalUnits => "local-units",
            Clause::Products => "products",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseResult {
    pub clause: Clause,
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrespondenceR {
    /// `(monoid element, completed-category element)` pairs.
    pub pairs: Vec<(usize, usize)>,
    /// The category completed with `Ê` and `o = ∅̂`.
    pub completed: MonoidWithZero,
    pub clauses: Vec<ClauseResult>,
}

impl CorrespondenceR {
    pub fn passes(&self) -> bool {
        self.clauses.iter().all(|c| c.holds)
    }

    fn partners_of(&self, a: usize) -> Vec<usize> {
        self.pairs.iter().filter(|p| p.0 == a).map(|p| p.1).collect()
    }

    fn partners_in_monoid(&self, x: usize) -> Vec<usize> {
        self.pairs.iter().filter(|p| p.1 == x).map(|p| p.0).collect()
    }
}

/// Builds the homomorphic relation between `(M, Q)` and `K` and checks each
/// of its clauses. The arrow bijection is searched as an isomorphism of the
/// two partial composition structures.
pub fn build_and_verify_r(m: &FiniteMonoid, q: &IdealSubset, k: &FiniteCategory) -> Result<CorrespondenceR, BridgeError> {
    let report = category::verify_category(k);
    if !report.is_ok() {
        return Err(BridgeError::InvalidCategory(report));
    }
    let pm = monoid_to_partial(m, q)?;
    let (k1, _) = category::category_to_monoid_unchecked(k);
    let pk = monoid_to_partial(&k1.monoid, &k1.zero_ideal())?;
    let big_unit = k1.monoid.unit();
    let o = k1.zero;

    let mut pairs = vec![(m.unit(), big_unit)];
    pairs.extend(q.members().iter().map(|&x| (x, o)));
    if let Some(beta) = find_partial_isomorphism(&pm, &pk) {
        for (i, &j) in beta.iter().enumerate() {
            pairs.push((pm.source_index[i], pk.source_index[j]));
        }
    }
    let mut r = CorrespondenceR { pairs, completed: k1, clauses: Vec::new() };
    let arrows: Vec<usize> = pk.source_index.clone();
    let k1m = &r.completed.monoid;
    let name_m = |a: usize| m.element_name(a).to_string();
    let name_k = |x: usize| k1m.element_name(x).to_string();

    let mut clauses = Vec::new();
    let mut push = |clause: Clause, failure: Option<String>| {
        clauses.push(ClauseResult { clause, holds: failure.is_none(), detail: failure.unwrap_or_default() });
    };

    let unit_partners = r.partners_of(m.unit());
    push(Clause::Unit, (unit_partners != vec![big_unit]).then(|| format!("E related to {} elements", unit_partners.len())));

    let bad_q = q.members().iter().copied().find(|&x| r.partners_of(x) != vec![o]);
    push(Clause::Ideal, bad_q.map(|x| format!("{} not related to o alone", name_m(x))));

    let orphan = (0..m.order()).find(|&a| r.partners_of(a).is_empty());
    push(Clause::Total, orphan.map(|a| format!("{} has no partner", name_m(a))));

    let bad_carrier = pm.source_index.iter().copied().find(|&a| {
        r.partners_of(a).iter().filter(|x| arrows.contains(x)).count() != 1
    });
    push(
        Clause::ArrowsFromMonoid,
        bad_carrier.map(|a| format!("{} carrier elements vs {} arrows, {} unmatched", pm.size(), arrows.len(), name_m(a))),
    );

    let bad_arrow = arrows.iter().copied().find(|&x| {
        r.partners_in_monoid(x).iter().filter(|a| pm.source_index.contains(a)).count() != 1
    });
    push(
        Clause::MonoidFromArrows,
        bad_arrow.map(|x| format!("{} arrows vs {} carrier elements, {} unmatched", arrows.len(), pm.size(), name_k(x))),
    );

    let m_units = local_units_unchecked(m, q).non_unit;
    let k_units: Vec<usize> = pk.local_units.iter().map(|&i| pk.source_index[i]).collect();
    let mut unit_failure = None;
    for &(a, x) in &r.pairs {
        if a == m.unit() || q.contains(a) {
            continue;
        }
        if m_units.contains(&a) != k_units.contains(&x) {
            unit_failure = Some(format!("{} ~ {} disagree on being a local unit", name_m(a), name_k(x)));
            break;
        }
    }
    push(Clause::LocalUnits, unit_failure);

    let mut product_failure = None;
    'outer: for &(a, x) in &r.pairs {
        for &(b, y) in &r.pairs {
            let ab = m.mul(a, b);
            let xy = k1m.mul(x, y);
            if !r.pairs.contains(&(ab, xy)) {
                product_failure = Some(format!(
                    "({},{}) ({},{}) but not ({},{})",
                    name_m(a),
                    name_k(x),
                    name_m(b),
                    name_k(y),
                    name_m(ab),
                    name_k(xy)
                ));
                break 'outer;
            }
        }
    }
    push(Clause::Products, product_failure);

    r.clauses = clauses;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{category_to_monoid, find_category_isomorphism};
    use crate::corpus::{self, ideal};

    fn k2_monoid() -> MonoidWithZero {
        category_to_monoid(&corpus::k2()).unwrap().0
    }

    #[test]
    fn local_units_of_k2_monoid() {
        let mz = k2_monoid();
        let lu = local_units(&mz.monoid, &mz.zero_ideal()).unwrap();
        let names: Vec<&str> = lu.all().iter().map(|&i| mz.monoid.element_name(i)).collect();
        assert_eq!(names, vec!["E^", "idA", "idB"]);
    }

    #[test]
    fn m3_has_only_the_global_unit() {
        let m3 = corpus::m3();
        let lu = local_units(&m3, &ideal(&m3, &["0"])).unwrap();
        assert!(lu.non_unit.is_empty());
        assert_eq!(lu.unit, 0);
    }

    #[test]
    fn coverage() {
        let mz = k2_monoid();
        assert!(check_unit_coverage(&mz.monoid, &mz.zero_ideal(), false).unwrap().holds());
        let m3 = corpus::m3();
        let q = ideal(&m3, &["0"]);
        assert_eq!(check_unit_coverage(&m3, &q, false).unwrap(), Verdict::Fails(1));
        assert!(check_unit_coverage(&m3, &q, true).unwrap().holds());
    }

    #[test]
    fn adjoined_unit_is_local() {
        let m3 = corpus::m3();
        let q = ideal(&m3, &["0"]);
        let ext = adjoin_local_unit(&m3, &q).unwrap();
        assert_eq!(ext.monoid.order(), 4);
        assert!(crate::monoid::verify_monoid(&ext.monoid.to_raw()).unwrap().is_ok());
        assert_eq!(local_units(&ext.monoid, &q).unwrap().non_unit, vec![ext.fresh]);
        for x in m3.non_units() {
            assert_eq!(ext.monoid.mul(ext.fresh, x), x);
            assert_eq!(ext.monoid.mul(x, ext.fresh), x);
        }
    }

    #[test]
    fn adjoining_twice() {
        let m3 = corpus::m3();
        let q = ideal(&m3, &["0"]);
        let once = adjoin_local_unit(&m3, &q).unwrap();
        let twice = adjoin_local_unit(&once.monoid, &q).unwrap();
        let (u1, u2) = (once.fresh, twice.fresh);
        let m = &twice.monoid;
        assert!(crate::monoid::verify_monoid(&m.to_raw()).unwrap().is_ok());
        // both act as the identity on every element of the original monoid
        for x in m3.non_units() {
            for u in [u1, u2] {
                assert_eq!(m.mul(u, x), x);
                assert_eq!(m.mul(x, u), x);
            }
        }
        // the newer unit absorbs the older one's role: u1·u2 = u1 ≠ u2
        assert_eq!(m.mul(u1, u2), u1);
        assert_eq!(local_units(m, &q).unwrap().non_unit, vec![u2]);
    }

    #[test]
    fn trivial_monoid_has_no_admissible_ideal() {
        let t = FiniteMonoid::trivial();
        let err = adjoin_local_unit(&t, &IdealSubset::from_members(vec![0])).unwrap_err();
        assert!(matches!(err, BridgeError::Ideal(IdealError::ContainsUnit(_))));
    }

    #[test]
    fn partial_structures() {
        let mz = k2_monoid();
        let p = monoid_to_partial(&mz.monoid, &mz.zero_ideal()).unwrap();
        assert_eq!(p.carrier, vec!["idA", "idB", "f"]);
        let named: Vec<(&str, &str)> =
            p.defined_pairs().iter().map(|&(a, b)| (p.carrier[a].as_str(), p.carrier[b].as_str())).collect();
        assert_eq!(named, vec![("idA", "idA"), ("idA", "f"), ("idB", "idB"), ("f", "idB")]);

        let m3 = corpus::m3();
        let p = monoid_to_partial(&m3, &ideal(&m3, &["0"])).unwrap();
        assert_eq!(p.carrier, vec!["a"]);
        assert!(p.defined_pairs().is_empty());

        let m4 = corpus::m4();
        let p = monoid_to_partial(&m4, &ideal(&m4, &["q1", "q2"])).unwrap();
        assert_eq!(p.carrier, vec!["a"]);
        assert!(p.defined_pairs().is_empty());
    }

    #[test]
    fn round_trip_k2_and_loop() {
        for k in [corpus::k2(), corpus::idempotent_loop()] {
            let (mz, _) = category_to_monoid(&k).unwrap();
            let p = monoid_to_partial(&mz.monoid, &mz.zero_ideal()).unwrap();
            let back = partial_to_category(&p);
            let back = back.category().expect("round trip succeeds");
            assert!(find_category_isomorphism(&k, back).is_some());
        }
    }

    #[test]
    fn m3_is_diagnosed() {
        let m3 = corpus::m3();
        let q = ideal(&m3, &["0"]);
        let p = monoid_to_partial(&m3, &q).unwrap();
        let outcome = partial_to_category(&p);
        assert_eq!(outcome.diagnosis(), Some(&Diagnosis::NoLeftUnit("a".into())));
        assert_eq!(outcome.diagnosis().unwrap().to_string(), "a has no left local unit in carrier");

        let ext = adjoin_local_unit(&m3, &q).unwrap();
        let err = monoid_to_partial(&ext.monoid, &q).unwrap_err();
        assert_eq!(err, BridgeError::Ideal(IdealError::NotAssociative("a".into(), "u".into(), "a".into())));
        let p = monoid_to_partial_extended(&ext.monoid, &q).unwrap();
        assert_eq!(partial_to_category(&p).diagnosis(), Some(&Diagnosis::MissingComposite("a".into(), "a".into())));
    }

    #[test]
    fn round_trip_reports() {
        for k in corpus::categories() {
            let rt = category_round_trip(&k).unwrap();
            assert!(rt.reproduced, "{}", k.name());
        }
        let m3 = corpus::m3();
        let rt = monoid_round_trip(&m3, &ideal(&m3, &["0"])).unwrap();
        assert_eq!(rt.outcome.diagnosis(), Some(&Diagnosis::NoLeftUnit("a".into())));
        let (_, after) = rt.adjoined.unwrap();
        assert_eq!(after.diagnosis(), Some(&Diagnosis::MissingComposite("a".into(), "a".into())));
        let mz = k2_monoid();
        let rt = monoid_round_trip(&mz.monoid, &mz.zero_ideal()).unwrap();
        assert_eq!(rt.reproduced, Some(true));
    }

    #[test]
    fn relation_r_for_k2() {
        let k = corpus::k2();
        let mz = k2_monoid();
        let r = build_and_verify_r(&mz.monoid, &mz.zero_ideal(), &k).unwrap();
        assert!(r.passes(), "{:?}", r.clauses);
    }

    #[test]
    fn relation_r_cardinality_mismatch() {
        let m3 = corpus::m3();
        let r = build_and_verify_r(&m3, &ideal(&m3, &["0"]), &corpus::empty_category()).unwrap();
        let failed: Vec<Clause> = r.clauses.iter().filter(|c| !c.holds).map(|c| c.clause).collect();
        assert!(failed.contains(&Clause::ArrowsFromMonoid));
        let detail = &r.clauses.iter().find(|c| c.clause == Clause::ArrowsFromMonoid).unwrap().detail;
        assert!(detail.starts_with("1 carrier elements vs 0 arrows"));
    }

    #[test]
    fn relation_r_vacuous_for_empty_category() {
        let k = corpus::empty_category();
        let (mz, _) = category_to_monoid(&k).unwrap();
        let r = build_and_verify_r(&mz.monoid, &mz.zero_ideal(), &k).unwrap();
        assert!(r.passes());
    }
}
