//! Finite monoids given by total multiplication tables.
//!
//! Elements are opaque names; every algorithm in the crate works on indices
//! into [`FiniteMonoid::elements`]. Rows of the table are the left factor.

mod enumerate;
mod hom;
mod iso;

use std::fmt;

use thiserror::Error;

pub use enumerate::{canonical_table, enumerate_monoids, enumerate_monoids_with, MAX_ENUMERATION_ORDER};
pub use hom::{check_hom, homomorphisms, HomReport, MonoidHom};
pub use iso::find_isomorphism;

/// Structural problems: the data does not even describe a table.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("table has {rows} rows but {elements} elements")]
    RowCount { rows: usize, elements: usize },
    #[error("row {row} has {len} entries, expected {expected}")]
    RowLength { row: usize, len: usize, expected: usize },
    #[error("entry ({row},{col}) = {value} is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("unit index {0} is out of range")]
    UnitOutOfRange(usize),
    #[error("monoid has no elements")]
    Empty,
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("map has {map} entries but source has {source_order} elements")]
    MapLength { map: usize, source_order: usize },
    #[error("map sends `{element}` to index {value}, out of range for the target")]
    MapOutOfRange { element: String, value: usize },
    #[error("enumeration is capped at order {cap}, refused order {requested}")]
    OrderCap { requested: usize, cap: usize },
    #[error("table violates the monoid axioms: {0}")]
    Axioms(ValidationReport),
}

/// A square table with a designated unit, not yet known to be a monoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTable {
    pub elements: Vec<String>,
    pub unit: usize,
    pub rows: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonoidViolation {
    /// `unit·x != x` (Left) or `x·unit != x` (Right).
    UnitLaw { side: Side, element: String, got: String },
    /// `(x·y)·z != x·(y·z)`.
    Associativity { x: String, y: String, z: String },
}

impl fmt::Display for MonoidViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidViolation::UnitLaw { side: Side::Left, element, got } => {
                write!(f, "unit-law left at (unit,{element}) gives {got}")
            }
            MonoidViolation::UnitLaw { side: Side::Right, element, got } => {
                write!(f, "unit-law right at ({element},unit) gives {got}")
            }
            MonoidViolation::Associativity { x, y, z } => write!(f, "associativity at ({x},{y},{z})"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<MonoidViolation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

fn check_structure(raw: &RawTable) -> Result<(), MonoidError> {
    let n = raw.elements.len();
    if n == 0 {
        return Err(MonoidError::Empty);
    }
    for (i, name) in raw.elements.iter().enumerate() {
        if raw.elements[..i].contains(name) {
            return Err(MonoidError::DuplicateName(name.clone()));
        }
    }
    if raw.unit >= n {
        return Err(MonoidError::UnitOutOfRange(raw.unit));
    }
    if raw.rows.len() != n {
        return Err(MonoidError::RowCount { rows: raw.rows.len(), elements: n });
    }
    for (r, row) in raw.rows.iter().enumerate() {
        if row.len() != n {
            return Err(MonoidError::RowLength { row: r, len: row.len(), expected: n });
        }
        if let Some((c, &v)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(MonoidError::EntryOutOfRange { row: r, col: c, value: v });
        }
    }
    Ok(())
}

/// Checks every unit-law instance and every associativity triple.
///
/// Structural defects (non-square table, out-of-range entries) are reported
/// as `Err`; axiom failures are listed in the returned report.
pub fn verify_monoid(raw: &RawTable) -> Result<ValidationReport, MonoidError> {
    check_structure(raw)?;
    let n = raw.elements.len();
    let t = &raw.rows;
    let e = raw.unit;
    let name = |i: usize| raw.elements[i].clone();
    let mut violations = Vec::new();
    for x in 0..n {
        if t[e][x] != x {
            violations.push(MonoidViolation::UnitLaw { side: Side::Left, element: name(x), got: name(t[e][x]) });
        }
        if t[x][e] != x {
            violations.push(MonoidViolation::UnitLaw { side: Side::Right, element: name(x), got: name(t[x][e]) });
        }
    }
    for x in 0..n {
        for y in 0..n {
            let xy = t[x][y];
            for z in 0..n {
                if t[xy][z] != t[x][t[y][z]] {
                    violations.push(MonoidViolation::Associativity { x: name(x), y: name(y), z: name(z) });
                }
            }
        }
    }
    Ok(ValidationReport { violations })
}

/// A finite sequence of element indices; the empty word is allowed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }
}

impl From<Vec<usize>> for Word {
    fn from(letters: Vec<usize>) -> Self {
        Word(letters)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteMonoid {
    name: String,
    elements: Vec<String>,
    unit: usize,
    table: Vec<usize>,
}

impl FiniteMonoid {
    /// Builds a monoid, rejecting structural defects and axiom violations.
    pub fn new(
        name: impl Into<String>,
        elements: Vec<String>,
        unit: usize,
        rows: Vec<Vec<usize>>,
    ) -> Result<Self, MonoidError> {
        let raw = RawTable { elements, unit, rows };
        let report = verify_monoid(&raw)?;
        if !report.is_ok() {
            return Err(MonoidError::Axioms(report));
        }
        Ok(Self::from_raw_unchecked(name.into(), raw))
    }

    /// Convenience constructor from `&str` names.
    pub fn from_names(name: &str, elements: &[&str], unit: &str, rows: &[&[&str]]) -> Result<Self, MonoidError> {
        let elements: Vec<String> = elements.iter().map(|s| s.to_string()).collect();
        let index = |s: &str| elements.iter().position(|e| e == s).unwrap_or(usize::MAX);
        let unit = index(unit);
        let rows = rows.iter().map(|row| row.iter().map(|s| index(s)).collect()).collect();
        Self::new(name, elements, unit, rows)
    }

    pub(crate) fn from_raw_unchecked(name: String, raw: RawTable) -> Self {
        let table = raw.rows.into_iter().flatten().collect();
        FiniteMonoid { name, elements: raw.elements, unit: raw.unit, table }
    }

    pub(crate) fn from_flat_unchecked(name: String, elements: Vec<String>, unit: usize, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), elements.len() * elements.len());
        FiniteMonoid { name, elements, unit, table }
    }

    /// The one-element monoid `{E}`.
    pub fn trivial() -> Self {
        FiniteMonoid { name: "trivial".into(), elements: vec!["E".into()], unit: 0, table: vec![0] }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Same table, new element names. Panics if the count differs.
    pub fn with_element_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.elements.len());
        self.elements = names;
        self
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element_name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.elements.len() + b]
    }

    pub fn row(&self, a: usize) -> &[usize] {
        let n = self.elements.len();
        &self.table[a * n..(a + 1) * n]
    }

    pub fn flat_table(&self) -> &[usize] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order()).map(|a| self.row(a).to_vec()).collect()
    }

    pub fn to_raw(&self) -> RawTable {
        RawTable { elements: self.elements.clone(), unit: self.unit, rows: self.rows() }
    }

    /// Indices of every element other than the unit.
    pub fn non_units(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.order()).filter(move |&i| i != self.unit)
    }

    /// Left fold of the table over `w`; the empty word evaluates to the unit.
    pub fn product(&self, w: &Word) -> usize {
        w.0.iter().fold(self.unit, |acc, &x| self.mul(acc, x))
    }

    /// Builds a word from element names.
    pub fn word(&self, names: &[&str]) -> Option<Word> {
        names.iter().map(|n| self.index_of(n)).collect::<Option<Vec<_>>>().map(Word)
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }
}

impl fmt::Display for FiniteMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "monoid {}", self.name)?;
        writeln!(f, "elements {}", self.elements.join(" "))?;
        writeln!(f, "unit {}", self.elements[self.unit])?;
        for a in 0..self.order() {
            let row: Vec<&str> = self.row(a).iter().map(|&b| self.elements[b].as_str()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
