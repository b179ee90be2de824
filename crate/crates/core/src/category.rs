//! Finite categories as explicit data, and their completion to a monoid
//! with an associative zero.
//!
//! Composition is diagrammatic: `f∗g` means "f then g" and is defined
//! exactly when `cod f = dom g`. Identity arrows are stored per object.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::ideal::{self, IdealSubset};
use crate::monoid::FiniteMonoid;
use crate::verdict::Verdict;

/// Name of the adjoined global unit in the completed monoid.
pub const BIG_UNIT: &str = "E^";
/// Name of the adjoined erasing element in the completed monoid.
pub const BIG_ZERO: &str = "0^";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("arrow `{arrow}` refers to missing object index {object}")]
    DanglingObject { arrow: String, object: usize },
    #[error("identity of object `{object}` refers to missing arrow index {arrow}")]
    DanglingIdentity { object: String, arrow: usize },
    #[error("composition refers to missing arrow index {0}")]
    DanglingArrow(usize),
    #[error("identity list has {identities} entries for {objects} objects")]
    IdentityCount { identities: usize, objects: usize },
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("composite {f}*{g} defined twice: `{first}` and `{second}`")]
    ConflictingComposite { f: String, g: String, first: String, second: String },
    #[error("category axioms fail: {0}")]
    Invalid(CategoryReport),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    name: String,
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<usize>,
    composition: BTreeMap<(usize, usize), usize>,
}

impl FiniteCategory {
    /// Assembles a category from raw parts, checking only that every
    /// reference resolves. Axioms are checked by [`verify_category`].
    pub fn from_parts(
        name: impl Into<String>,
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<usize>,
        composition: BTreeMap<(usize, usize), usize>,
    ) -> Result<Self, CategoryError> {
        for (i, o) in objects.iter().enumerate() {
            if objects[..i].contains(o) {
                return Err(CategoryError::DuplicateName(o.clone()));
            }
        }
        for (i, a) in arrows.iter().enumerate() {
            if arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(CategoryError::DuplicateName(a.name.clone()));
            }
            for object in [a.dom, a.cod] {
                if object >= objects.len() {
                    return Err(CategoryError::DanglingObject { arrow: a.name.clone(), object });
                }
            }
        }
        if identities.len() != objects.len() {
            return Err(CategoryError::IdentityCount { identities: identities.len(), objects: objects.len() });
        }
        for (o, &id) in identities.iter().enumerate() {
            if id >= arrows.len() {
                return Err(CategoryError::DanglingIdentity { object: objects[o].clone(), arrow: id });
            }
        }
        for (&(f, g), &h) in &composition {
            for a in [f, g, h] {
                if a >= arrows.len() {
                    return Err(CategoryError::DanglingArrow(a));
                }
            }
        }
        Ok(FiniteCategory { name: name.into(), objects, arrows, identities, composition })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identities[object]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, arrow: usize) -> bool {
        self.identities.contains(&arrow)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn composable(&self, f: usize, g: usize) -> bool {
        self.arrows[f].cod == self.arrows[g].dom
    }

    /// `f∗g` if defined.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.composition.get(&(f, g)).copied()
    }

    pub fn composition(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.composition
    }
}

/// Builds categories by name, inferring identity arrows and their composites.
#[derive(Debug, Clone, Default)]
pub struct CategoryBuilder {
    name: String,
    objects: Vec<String>,
    identity_names: BTreeMap<String, String>,
    arrows: Vec<(String, String, String)>,
    composites: Vec<(String, String, String)>,
}

impl CategoryBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        CategoryBuilder { name: name.into(), ..Default::default() }
    }

    pub fn object(&mut self, name: &str) -> &mut Self {
        self.objects.push(name.to_string());
        self
    }

    pub fn objects(&mut self, names: &[&str]) -> &mut Self {
        for n in names {
            self.object(n);
        }
        self
    }

    /// Names the identity arrow of `object`; defaults to `id<object>`.
    pub fn identity(&mut self, object: &str, arrow: &str) -> &mut Self {
        self.identity_names.insert(object.to_string(), arrow.to_string());
        self
    }

    pub fn arrow(&mut self, name: &str, dom: &str, cod: &str) -> &mut Self {
        self.arrows.push((name.to_string(), dom.to_string(), cod.to_string()));
        self
    }

    /// Declares `f∗g = h` (diagrammatic).
    pub fn compose(&mut self, f: &str, g: &str, h: &str) -> &mut Self {
        self.composites.push((f.to_string(), g.to_string(), h.to_string()));
        self
    }

    pub fn build(&self) -> Result<FiniteCategory, CategoryError> {
        let object = |name: &str| {
            self.objects.iter().position(|o| o == name).ok_or_else(|| CategoryError::UnknownName(name.to_string()))
        };
        for o in self.identity_names.keys() {
            object(o)?;
        }
        let mut arrows = Vec::new();
        let mut identities = Vec::new();
        for (i, o) in self.objects.iter().enumerate() {
            let name = self.identity_names.get(o).cloned().unwrap_or_else(|| format!("id{o}"));
            identities.push(arrows.len());
            arrows.push(Arrow { name, dom: i, cod: i });
        }
        for (name, dom, cod) in &self.arrows {
            arrows.push(Arrow { name: name.clone(), dom: object(dom)?, cod: object(cod)? });
        }
        for (i, a) in arrows.iter().enumerate() {
            if arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(CategoryError::DuplicateName(a.name.clone()));
            }
        }
        let arrow = |name: &str| {
            arrows.iter().position(|a| a.name == name).ok_or_else(|| CategoryError::UnknownName(name.to_string()))
        };

        let mut composition = BTreeMap::new();
        let mut insert = |f: usize, g: usize, h: usize| -> Result<(), CategoryError> {
            match composition.insert((f, g), h) {
                Some(prev) if prev != h => Err(CategoryError::ConflictingComposite {
                    f: arrows[f].name.clone(),
                    g: arrows[g].name.clone(),
                    first: arrows[prev].name.clone(),
                    second: arrows[h].name.clone(),
                }),
                _ => Ok(()),
            }
        };
        for (f, a) in arrows.iter().enumerate() {
            insert(identities[a.dom], f, f)?;
            insert(f, identities[a.cod], f)?;
        }
        for (f, g, h) in &self.composites {
            insert(arrow(f)?, arrow(g)?, arrow(h)?)?;
        }
        FiniteCategory::from_parts(self.name.clone(), self.objects.clone(), arrows, identities, composition)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CategoryViolation {
    IdentityShape { object: String },
    MissingComposite { f: String, g: String },
    SpuriousComposite { f: String, g: String },
    CompositeEnds { f: String, g: String, composite: String },
    IdentityLaw { arrow: String },
    Associativity { f: String, g: String, h: String },
}

impl fmt::Display for CategoryViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CategoryViolation::IdentityShape { object } => write!(f, "identity of {object} is not an endo-arrow"),
            CategoryViolation::MissingComposite { f: a, g } => write!(f, "missing composite {a}*{g}"),
            CategoryViolation::SpuriousComposite { f: a, g } => write!(f, "composite {a}*{g} of non-composable pair"),
            CategoryViolation::CompositeEnds { f: a, g, composite } => {
                write!(f, "composite {a}*{g} = {composite} has wrong domain or codomain")
            }
            CategoryViolation::IdentityLaw { arrow } => write!(f, "identity law fails at {arrow}"),
            CategoryViolation::Associativity { f: a, g, h } => write!(f, "associativity fails at ({a},{g},{h})"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CategoryReport {
    pub violations: Vec<CategoryViolation>,
}

impl CategoryReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for CategoryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

pub fn verify_category(k: &FiniteCategory) -> CategoryReport {
    let name = |a: usize| k.arrows[a].name.clone();
    let n = k.arrows.len();
    let mut violations = Vec::new();
    for (o, &id) in k.identities.iter().enumerate() {
        if k.arrows[id].dom != o || k.arrows[id].cod != o {
            violations.push(CategoryViolation::IdentityShape { object: k.objects[o].clone() });
        }
    }
    for f in 0..n {
        for g in 0..n {
            match (k.composable(f, g), k.compose(f, g)) {
                (true, None) => violations.push(CategoryViolation::MissingComposite { f: name(f), g: name(g) }),
                (false, Some(_)) => violations.push(CategoryViolation::SpuriousComposite { f: name(f), g: name(g) }),
                (true, Some(h)) => {
                    if k.arrows[h].dom != k.arrows[f].dom || k.arrows[h].cod != k.arrows[g].cod {
                        violations.push(CategoryViolation::CompositeEnds { f: name(f), g: name(g), composite: name(h) });
                    }
                }
                (false, None) => {}
            }
        }
    }
    for f in 0..n {
        let a = &k.arrows[f];
        let left = k.compose(k.identities[a.dom], f);
        let right = k.compose(f, k.identities[a.cod]);
        if left.is_some_and(|x| x != f) || right.is_some_and(|x| x != f) {
            violations.push(CategoryViolation::IdentityLaw { arrow: name(f) });
        }
    }
    for f in 0..n {
        for g in 0..n {
            let Some(fg) = k.compose(f, g) else { continue };
            for h in 0..n {
                let (Some(gh), Some(left)) = (k.compose(g, h), k.compose(fg, h)) else { continue };
                if k.compose(f, gh) != Some(left) {
                    violations.push(CategoryViolation::Associativity { f: name(f), g: name(g), h: name(h) });
                }
            }
        }
    }
    CategoryReport { violations }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidWithZero {
    pub monoid: FiniteMonoid,
    pub zero: usize,
}

impl MonoidWithZero {
    pub fn zero_ideal(&self) -> IdealSubset {
        IdealSubset::from_members(vec![self.zero])
    }
}

/// Adjoins a global unit `E^` and an erasing element `0^`, sending every
/// non-composable pair to `0^`. Elements are ordered `[E^, arrows..., 0^]`.
///
/// Returns the monoid together with the embedding `arrow index → element index`.
pub fn category_to_monoid(k: &FiniteCategory) -> Result<(MonoidWithZero, Vec<usize>), CategoryError> {
    let report = verify_category(k);
    if !report.is_ok() {
        return Err(CategoryError::Invalid(report));
    }
    Ok(category_to_monoid_unchecked(k))
}

pub(crate) fn category_to_monoid_unchecked(k: &FiniteCategory) -> (MonoidWithZero, Vec<usize>) {
    let arrows = k.arrows.len();
    let n = arrows + 2;
    let unit = 0;
    let zero = n - 1;
    let embed: Vec<usize> = (1..=arrows).collect();
    let mut names = vec![BIG_UNIT.to_string()];
    names.extend(k.arrows.iter().map(|a| a.name.clone()));
    names.push(BIG_ZERO.to_string());

    let mut table = vec![zero; n * n];
    for x in 0..n {
        table[unit * n + x] = x;
        table[x * n + unit] = x;
    }
    for f in 0..arrows {
        for g in 0..arrows {
            if let Some(h) = k.compose(f, g) {
                table[embed[f] * n + embed[g]] = embed[h];
            }
        }
    }
    let monoid = FiniteMonoid::from_flat_unchecked(format!("{}^", k.name), names, unit, table);
    (MonoidWithZero { monoid, zero }, embed)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroFailure {
    NotAbsorbing(usize),
    /// `abc = 0` with `ab ≠ 0` and `bc ≠ 0`.
    Triple([usize; 3]),
}

/// `0` absorbs, and `abc = 0 ⇒ ab = 0 ∨ bc = 0` over non-unit `a, b, c`.
pub fn verify_associative_zero(mz: &MonoidWithZero) -> Verdict<ZeroFailure> {
    let m = &mz.monoid;
    let z = mz.zero;
    if let Some(x) = (0..m.order()).find(|&x| m.mul(x, z) != z || m.mul(z, x) != z) {
        return Verdict::Fails(ZeroFailure::NotAbsorbing(x));
    }
    let q = mz.zero_ideal();
    Verdict::from_first(ideal::associativity_failure(m, &q).map(ZeroFailure::Triple))
}

/// Structural isomorphism: a bijection on objects and one on arrows that
/// respects dom/cod, identities and composition.
pub fn find_category_isomorphism(k: &FiniteCategory, l: &FiniteCategory) -> Option<(Vec<usize>, Vec<usize>)> {
    if k.objects.len() != l.objects.len() || k.arrows.len() != l.arrows.len() || k.composition.len() != l.composition.len()
    {
        return None;
    }
    use itertools::Itertools;
    for object_map in (0..l.objects.len()).permutations(k.objects.len()) {
        let mut arrow_map = vec![usize::MAX; k.arrows.len()];
        let mut used = vec![false; l.arrows.len()];
        let mut ok = true;
        for (o, &id) in k.identities.iter().enumerate() {
            let target = l.identities[object_map[o]];
            if used[target] {
                ok = false;
                break;
            }
            arrow_map[id] = target;
            used[target] = true;
        }
        if ok && extend_arrow_map(k, l, &object_map, &mut arrow_map, &mut used, 0) {
            return Some((object_map, arrow_map));
        }
    }
    None
}

fn extend_arrow_map(
    k: &FiniteCategory,
    l: &FiniteCategory,
    objects: &[usize],
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    next: usize,
) -> bool {
    if next == k.arrows.len() {
        return composition_preserved(k, l, map);
    }
    if map[next] != usize::MAX {
        return extend_arrow_map(k, l, objects, map, used, next + 1);
    }
    let a = &k.arrows[next];
    for cand in 0..l.arrows.len() {
        let b = &l.arrows[cand];
        if used[cand] || l.is_identity(cand) || b.dom != objects[a.dom] || b.cod != objects[a.cod] {
            continue;
        }
        map[next] = cand;
        used[cand] = true;
        if extend_arrow_map(k, l, objects, map, used, next + 1) {
            return true;
        }
        used[cand] = false;
        map[next] = usize::MAX;
    }
    false
}

fn composition_preserved(k: &FiniteCategory, l: &FiniteCategory, map: &[usize]) -> bool {
    k.composition.iter().all(|(&(f, g), &h)| l.compose(map[f], map[g]) == Some(map[h]))
}
