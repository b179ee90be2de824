//! Line-oriented text formats for monoids, categories and existence
//! relations.
//!
//! Every format ignores blank lines and `#` comments. The first keyword line
//! (`monoid`, `category` or `rel`) names the structure.
//!
//! ```text
//! monoid M3             category K2               rel alternating
//! elements E a 0        order diagrammatic        alphabet a b
//! unit E                objects A B               exists a b
//! E a 0                 identity A idA            pair a b
//! a 0 0                 arrow f A B               pair b a
//! 0 0 0                 compose f idB = f
//! ideal Q0 0
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::category::{CategoryBuilder, CategoryError, FiniteCategory};
use crate::chain::{BinaryExistence, ChainError};
use crate::ideal::IdealSubset;
use crate::monoid::{FiniteMonoid, MonoidError, RawTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TextError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("empty input")]
    Empty,
    #[error("no ideal `{0}` in the file")]
    UnknownIdeal(String),
    #[error("missing `{0}` line")]
    MissingLine(&'static str),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

fn syntax<T>(line: usize, message: impl Into<String>) -> Result<T, TextError> {
    Err(TextError::Syntax { line, message: message.into() })
}

/// Non-blank, comment-stripped lines with 1-based numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let words: Vec<&str> = raw.split('#').next().unwrap_or("").split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

fn header<'a>(it: &mut impl Iterator<Item = (usize, Vec<&'a str>)>, keyword: &str) -> Result<String, TextError> {
    match it.next() {
        None => Err(TextError::Empty),
        Some((_, w)) if w.len() == 2 && w[0] == keyword => Ok(w[1].to_string()),
        Some((line, _)) => syntax(line, format!("expected `{keyword} <name>`")),
    }
}

/// A monoid table as written, before validation, with its named ideals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidFile {
    pub name: String,
    pub table: RawTable,
    pub ideals: Vec<(String, Vec<String>)>,
}

impl MonoidFile {
    /// Validates the table.
    pub fn monoid(&self) -> Result<FiniteMonoid, MonoidError> {
        FiniteMonoid::new(self.name.clone(), self.table.elements.clone(), self.table.unit, self.table.rows.clone())
    }

    /// The named ideal, or the first one when `name` is `None`.
    pub fn ideal(&self, m: &FiniteMonoid, name: Option<&str>) -> Result<(String, IdealSubset), TextError> {
        let found = match name {
            Some(n) => self.ideals.iter().find(|(k, _)| k == n),
            None => self.ideals.first(),
        };
        let Some((key, members)) = found else {
            return Err(TextError::UnknownIdeal(name.unwrap_or("<first>").to_string()));
        };
        let idx = members
            .iter()
            .map(|s| m.index_of(s).ok_or_else(|| TextError::UnknownIdeal(format!("{key}: element {s}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((key.clone(), IdealSubset::from_members(idx)))
    }
}

pub fn parse_monoid(text: &str) -> Result<MonoidFile, TextError> {
    let mut it = lines(text);
    let name = header(&mut it, "monoid")?;
    let (line, w) = it.next().ok_or(TextError::Empty)?;
    if w[0] != "elements" || w.len() < 2 {
        return syntax(line, "expected `elements <e>...`");
    }
    let elements: Vec<String> = w[1..].iter().map(|s| s.to_string()).collect();
    let index = |line: usize, s: &str| match elements.iter().position(|e| e == s) {
        Some(i) => Ok(i),
        None => syntax(line, format!("unknown element `{s}`")),
    };
    let (line, w) = it.next().ok_or(TextError::Empty)?;
    if w.len() != 2 || w[0] != "unit" {
        return syntax(line, "expected `unit <e>`");
    }
    let unit = index(line, w[1])?;
    let mut rows = Vec::new();
    let mut ideals = Vec::new();
    for (line, w) in it {
        if w[0] == "ideal" {
            if w.len() < 3 {
                return syntax(line, "expected `ideal <name> <e>...`");
            }
            for s in &w[2..] {
                index(line, s)?;
            }
            ideals.push((w[1].to_string(), w[2..].iter().map(|s| s.to_string()).collect()));
        } else if !ideals.is_empty() {
            return syntax(line, "table rows must precede ideal lines");
        } else {
            if w.len() != elements.len() {
                return syntax(line, format!("row has {} entries, expected {}", w.len(), elements.len()));
            }
            rows.push(w.iter().map(|s| index(line, s)).collect::<Result<Vec<_>, _>>()?);
        }
    }
    if rows.len() != elements.len() {
        return Err(MonoidError::RowCount { rows: rows.len(), elements: elements.len() }.into());
    }
    Ok(MonoidFile { name, table: RawTable { elements, unit, rows }, ideals })
}

/// The monoid in file form, followed by the given ideals.
pub fn render_monoid(m: &FiniteMonoid, ideals: &[(String, IdealSubset)]) -> String {
    let mut out = m.to_string();
    for (name, q) in ideals {
        let members: Vec<&str> = q.members().iter().map(|&i| m.element_name(i)).collect();
        writeln!(out, "ideal {name} {}", members.join(" ")).unwrap();
    }
    out
}

pub fn parse_category(text: &str) -> Result<FiniteCategory, TextError> {
    let mut it = lines(text);
    let name = header(&mut it, "category")?;
    match it.next() {
        Some((_, w)) if w == ["order", "diagrammatic"] => {}
        Some((line, _)) => return syntax(line, "expected `order diagrammatic`"),
        None => return Err(TextError::Empty),
    }
    let mut b = CategoryBuilder::new(name);
    for (line, w) in it {
        match (w[0], w.len()) {
            ("objects", _) => {
                b.objects(&w[1..]);
            }
            ("identity", 3) => {
                b.identity(w[1], w[2]);
            }
            ("arrow", 4) => {
                b.arrow(w[1], w[2], w[3]);
            }
            ("compose", 5) if w[3] == "=" => {
                b.compose(w[1], w[2], w[4]);
            }
            _ => return syntax(line, format!("unrecognized line `{}`", w.join(" "))),
        }
    }
    Ok(b.build()?)
}

/// File form of a category; composites involving an identity are implied.
pub fn render_category(k: &FiniteCategory) -> String {
    let mut out = String::new();
    writeln!(out, "category {}", k.name()).unwrap();
    writeln!(out, "order diagrammatic").unwrap();
    writeln!(out, "objects {}", k.objects().join(" ")).unwrap();
    for (o, obj) in k.objects().iter().enumerate() {
        writeln!(out, "identity {obj} {}", k.arrows()[k.identity(o)].name).unwrap();
    }
    for (i, a) in k.arrows().iter().enumerate() {
        if !k.is_identity(i) {
            writeln!(out, "arrow {} {} {}", a.name, k.objects()[a.dom], k.objects()[a.cod]).unwrap();
        }
    }
    for (&(f, g), &h) in k.composition() {
        if !k.is_identity(f) && !k.is_identity(g) {
            let name = |i: usize| &k.arrows()[i].name;
            writeln!(out, "compose {} {} = {}", name(f), name(g), name(h)).unwrap();
        }
    }
    out
}

pub fn parse_rel(text: &str) -> Result<BinaryExistence, TextError> {
    let mut it = lines(text);
    let name = header(&mut it, "rel")?;
    let mut alphabet: Option<Vec<&str>> = None;
    let mut exists = Vec::new();
    let mut pairs = Vec::new();
    for (line, w) in it {
        match (w[0], w.len()) {
            ("alphabet", _) if alphabet.is_none() => alphabet = Some(w[1..].to_vec()),
            ("exists", _) => exists.extend_from_slice(&w[1..]),
            ("pair", 3) => pairs.push((w[1], w[2])),
            _ => return syntax(line, format!("unrecognized line `{}`", w.join(" "))),
        }
    }
    let Some(alphabet) = alphabet else { return Err(TextError::MissingLine("alphabet")) };
    Ok(BinaryExistence::from_names(&name, &alphabet, &exists, &pairs)?)
}

/// A parsed input file of any of the three kinds.
#[derive(Debug, Clone)]
pub enum Document {
    Monoid(MonoidFile),
    Category(FiniteCategory),
    Rel(BinaryExistence),
}

pub fn parse_document(text: &str) -> Result<Document, TextError> {
    let first = lines(text).next().ok_or(TextError::Empty)?;
    match first.1[0] {
        "monoid" => parse_monoid(text).map(Document::Monoid),
        "category" => parse_category(text).map(Document::Category),
        "rel" => parse_rel(text).map(Document::Rel),
        other => syntax(first.0, format!("unknown structure kind `{other}`")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::find_category_isomorphism;
    use crate::chain::examples;
    use crate::corpus;

    const M3: &str = "# the three-element example\nmonoid M3\nelements E a 0\nunit E\nE a 0\na 0 0\n0 0 0\nideal Q0 0\nideal Qa a 0\n";

    #[test]
    fn monoid_round_trip() {
        let file = parse_monoid(M3).unwrap();
        let m = file.monoid().unwrap();
        assert_eq!(m, corpus::m3());
        let (name, q) = file.ideal(&m, Some("Qa")).unwrap();
        assert_eq!(name, "Qa");
        assert_eq!(q, corpus::ideal(&m, &["a", "0"]));
        let rendered = render_monoid(&m, &[("Q0".into(), file.ideal(&m, None).unwrap().1)]);
        assert_eq!(parse_monoid(&rendered).unwrap().ideals, vec![("Q0".to_string(), vec!["0".to_string()])]);
    }

    #[test]
    fn monoid_errors_carry_lines() {
        let err = parse_monoid("monoid M\nelements E a\nunit E\nE a\na b\n").unwrap_err();
        assert_eq!(err, TextError::Syntax { line: 5, message: "unknown element `b`".into() });
        let err = parse_monoid("monoid M\nelements E a\nunit E\nE a\n").unwrap_err();
        assert!(matches!(err, TextError::Monoid(MonoidError::RowCount { .. })));
        // associativity failures are not parse errors
        let file = parse_monoid("monoid M\nelements E a\nunit E\nE a\na E\n").unwrap();
        assert!(file.monoid().is_ok());
    }

    #[test]
    fn category_round_trip() {
        for k in corpus::categories() {
            let text = render_category(&k);
            let back = parse_category(&text).unwrap();
            assert!(find_category_isomorphism(&k, &back).is_some(), "{}", k.name());
            assert_eq!(render_category(&back), text);
        }
    }

    #[test]
    fn category_requires_order_line() {
        let err = parse_category("category K\nobjects A\n").unwrap_err();
        assert_eq!(err, TextError::Syntax { line: 2, message: "expected `order diagrammatic`".into() });
    }

    #[test]
    fn rel_round_trip() {
        for rel in examples::all() {
            assert_eq!(parse_rel(&rel.to_string()).unwrap(), rel);
        }
    }

    #[test]
    fn document_dispatch() {
        assert!(matches!(parse_document(M3), Ok(Document::Monoid(_))));
        assert!(matches!(parse_document("group G\n"), Err(TextError::Syntax { line: 1, .. })));
        assert_eq!(parse_document("# nothing\n").unwrap_err(), TextError::Empty);
    }
}
