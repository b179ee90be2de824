//! Partially existing sequences over a finite alphabet.
//!
//! Existence of a word is decided by its letters and adjacent pairs alone. The
//! set of non-existing words is a two-sided ideal of the free monoid; all
//! free-monoid claims here are checked up to an explicit length bound.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::ideal::free::{words_up_to, BoundedWordIdeal, FreePrimeWitness, Letters};
use crate::par::{self, Strategy};
use crate::verdict::Verdict;

pub const MAX_CHAIN_LENGTH: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),
    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(String),
    #[error("pair ({0}, {1}) exists but `{2}` does not")]
    PairOnMissingSymbol(String, String, String),
    #[error("length {requested} exceeds the cap of {cap}")]
    LengthCap { requested: usize, cap: usize },
}

/// How a word of length at least two is reduced to pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Reading {
    /// `ex(x_j, x_{j+1})` for every adjacent pair.
    #[default]
    Adjacent,
    /// `ex(x_1, x_{j+1})`: every later letter paired with the first.
    Literal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryExistence {
    name: String,
    alphabet: Vec<String>,
    unary: Vec<bool>,
    binary: Vec<bool>,
}

impl BinaryExistence {
    pub fn new(
        name: impl Into<String>,
        alphabet: Vec<String>,
        unary: Vec<bool>,
        binary: Vec<bool>,
    ) -> Result<Self, ChainError> {
        let n = alphabet.len();
        assert_eq!(unary.len(), n, "unary mask length");
        assert_eq!(binary.len(), n * n, "binary matrix size");
        let mut seen = BTreeSet::new();
        for s in &alphabet {
            if !seen.insert(s.as_str()) {
                return Err(ChainError::DuplicateSymbol(s.clone()));
            }
        }
        for x in 0..n {
            for y in 0..n {
                if binary[x * n + y] && !(unary[x] && unary[y]) {
                    let missing = if unary[x] { y } else { x };
                    return Err(ChainError::PairOnMissingSymbol(
                        alphabet[x].clone(),
                        alphabet[y].clone(),
                        alphabet[missing].clone(),
                    ));
                }
            }
        }
        Ok(BinaryExistence { name: name.into(), alphabet, unary, binary })
    }

    /// Builds from symbol names: `exists` lists the unary mask, `pairs` the
    /// true binary entries.
    pub fn from_names(name: &str, alphabet: &[&str], exists: &[&str], pairs: &[(&str, &str)]) -> Result<Self, ChainError> {
        let alphabet: Vec<String> = alphabet.iter().map(|s| s.to_string()).collect();
        let index = |s: &str| alphabet.iter().position(|a| a == s).ok_or_else(|| ChainError::UnknownSymbol(s.into()));
        let n = alphabet.len();
        let mut unary = vec![false; n];
        for s in exists {
            unary[index(s)?] = true;
        }
        let mut binary = vec![false; n * n];
        for (x, y) in pairs {
            binary[index(x)? * n + index(y)?] = true;
        }
        BinaryExistence::new(name, alphabet, unary, binary)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn size(&self) -> usize {
        self.alphabet.len()
    }

    pub fn exists(&self, x: usize) -> bool {
        self.unary[x]
    }

    pub fn pair(&self, x: usize, y: usize) -> bool {
        self.binary[x * self.size() + y]
    }

    /// Sets one binary entry, keeping the symbol-existence invariant.
    pub fn with_pair(&self, x: usize, y: usize) -> Result<Self, ChainError> {
        let mut binary = self.binary.clone();
        binary[x * self.size() + y] = true;
        BinaryExistence::new(self.name.clone(), self.alphabet.clone(), self.unary.clone(), binary)
    }

    pub fn symbol(&self, s: &str) -> Result<usize, ChainError> {
        self.alphabet.iter().position(|a| a == s).ok_or_else(|| ChainError::UnknownSymbol(s.into()))
    }

    /// Whitespace-separated symbols, or one symbol per character when the
    /// text has no whitespace.
    pub fn parse_word(&self, text: &str) -> Result<Letters, ChainError> {
        let text = text.trim();
        if text.contains(char::is_whitespace) {
            text.split_whitespace().map(|s| self.symbol(s)).collect()
        } else {
            text.chars().map(|c| self.symbol(&c.to_string())).collect()
        }
    }

    pub fn render_word(&self, w: &[usize]) -> String {
        let single = self.alphabet.iter().all(|s| s.chars().count() == 1);
        let parts = w.iter().map(|&i| self.alphabet[i].as_str());
        if single {
            parts.collect()
        } else {
            parts.collect::<Vec<_>>().join(" ")
        }
    }

    /// The complete relation: every symbol and every pair exists.
    pub fn free(name: &str, alphabet: &[&str]) -> Self {
        let n = alphabet.len();
        BinaryExistence::new(name, alphabet.iter().map(|s| s.to_string()).collect(), vec![true; n], vec![true; n * n])
            .expect("complete relation")
    }
}

impl fmt::Display for BinaryExistence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rel {}", self.name)?;
        writeln!(f, "alphabet {}", self.alphabet.join(" "))?;
        let exists: Vec<&str> = (0..self.size()).filter(|&x| self.unary[x]).map(|x| self.alphabet[x].as_str()).collect();
        writeln!(f, "exists {}", exists.join(" "))?;
        for x in 0..self.size() {
            for y in 0..self.size() {
                if self.pair(x, y) {
                    writeln!(f, "pair {} {}", self.alphabet[x], self.alphabet[y])?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelAxiom {
    /// `∃a∃b: ex(a,b)`
    SomePair,
    /// `∃a: ex(a)`
    SomeSymbol,
    /// `ex(x) ⇒ ∃y: ex(x,y)`, failing at the named symbol.
    RightExtension(String),
    /// `ex(x) ⇒ ∃z: ex(z,x)`, failing at the named symbol.
    LeftExtension(String),
}

impl fmt::Display for RelAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelAxiom::SomePair => write!(f, "exists a b . ex(a,b)"),
            RelAxiom::SomeSymbol => write!(f, "exists a . ex(a)"),
            RelAxiom::RightExtension(x) => write!(f, "right extension at {x}"),
            RelAxiom::LeftExtension(x) => write!(f, "left extension at {x}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RelReport {
    pub failures: Vec<RelAxiom>,
}

impl RelReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the non-emptiness and extension axioms. The ternary axiom is the
/// rule by which [`ex_word`] reduces longer words, so it holds by definition.
pub fn validate_rel(rel: &BinaryExistence) -> RelReport {
    let n = rel.size();
    let mut failures = Vec::new();
    if !(0..n).any(|x| (0..n).any(|y| rel.pair(x, y))) {
        failures.push(RelAxiom::SomePair);
    }
    if !(0..n).any(|x| rel.exists(x)) {
        failures.push(RelAxiom::SomeSymbol);
    }
    for x in (0..n).filter(|&x| rel.exists(x)) {
        if !(0..n).any(|y| rel.pair(x, y)) {
            failures.push(RelAxiom::RightExtension(rel.alphabet[x].clone()));
        }
        if !(0..n).any(|z| rel.pair(z, x)) {
            failures.push(RelAxiom::LeftExtension(rel.alphabet[x].clone()));
        }
    }
    RelReport { failures }
}

fn check_letters(rel: &BinaryExistence, w: &[usize]) -> Result<(), ChainError> {
    match w.iter().find(|&&x| x >= rel.size()) {
        Some(x) => Err(ChainError::UnknownSymbol(format!("#{x}"))),
        None => Ok(()),
    }
}

fn ex_unchecked(rel: &BinaryExistence, w: &[usize], reading: Reading) -> bool {
    match w {
        [] => true,
        [x] => rel.exists(*x),
        _ => match reading {
            Reading::Adjacent => w.windows(2).all(|p| rel.pair(p[0], p[1])),
            Reading::Literal => w[1..].iter().all(|&y| rel.pair(w[0], y)),
        },
    }
}

pub fn ex_word(rel: &BinaryExistence, w: &[usize]) -> Result<bool, ChainError> {
    ex_word_with(rel, w, Reading::Adjacent)
}

pub fn ex_word_with(rel: &BinaryExistence, w: &[usize], reading: Reading) -> Result<bool, ChainError> {
    check_letters(rel, w)?;
    Ok(ex_unchecked(rel, w, reading))
}

/// Nonempty words that exist, up to `max_len`, length-then-lex.
pub fn enumerate_chains(rel: &BinaryExistence, max_len: usize) -> Result<Vec<Letters>, ChainError> {
    enumerate_chains_with(rel, max_len, Reading::Adjacent, Strategy::default())
}

/// Existing words are closed under prefixes in both readings, so each length
/// is grown from the previous one; extending a lex-ordered level letter by
/// letter keeps the next level lex-ordered.
pub fn enumerate_chains_with(
    rel: &BinaryExistence,
    max_len: usize,
    reading: Reading,
    strategy: Strategy,
) -> Result<Vec<Letters>, ChainError> {
    if max_len > MAX_CHAIN_LENGTH {
        return Err(ChainError::LengthCap { requested: max_len, cap: MAX_CHAIN_LENGTH });
    }
    let n = rel.size();
    let mut level: Vec<Letters> = if max_len == 0 { Vec::new() } else { (0..n).filter(|&x| rel.exists(x)).map(|x| vec![x]).collect() };
    let mut out = Vec::new();
    for _ in 1..max_len {
        let next = par::flat_map(strategy, &level, |w| {
            let anchor = match reading {
                Reading::Adjacent => w[w.len() - 1],
                Reading::Literal => w[0],
            };
            (0..n)
                .filter(|&y| rel.pair(anchor, y))
                .map(|y| {
                    let mut longer = w.clone();
                    longer.push(y);
                    longer
                })
                .collect()
        });
        out.append(&mut level);
        level = next;
    }
    out.append(&mut level);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourProperties {
    pub bound: usize,
    /// A chain with a contiguous factor that does not exist.
    pub factor_closure: Verdict<Letters>,
    /// A chain shorter than the bound with no right extension.
    pub right_extension: Verdict<Letters>,
    /// A chain shorter than the bound with no left extension.
    pub left_extension: Verdict<Letters>,
    /// A word whose existence changes when concatenated with the empty word.
    pub empty_neutrality: Verdict<Letters>,
    /// A symbol whose single-letter word disagrees with the unary mask.
    pub unit_length: Verdict<usize>,
}

impl FourProperties {
    pub fn extension(&self) -> bool {
        self.right_extension.holds() && self.left_extension.holds()
    }

    pub fn all_hold(&self) -> bool {
        self.factor_closure.holds() && self.extension() && self.empty_neutrality.holds() && self.unit_length.holds()
    }
}

/// Exhaustive check of the four sequence properties over all words up to
/// `max_len`. The relation need not satisfy [`validate_rel`]; failures of the
/// extension axioms show up here as extension failures.
pub fn verify_four_properties(rel: &BinaryExistence, max_len: usize) -> Result<FourProperties, ChainError> {
    if max_len > MAX_CHAIN_LENGTH {
        return Err(ChainError::LengthCap { requested: max_len, cap: MAX_CHAIN_LENGTH });
    }
    let ex = |w: &[usize]| ex_unchecked(rel, w, Reading::Adjacent);
    let n = rel.size();
    let words = words_up_to(n, max_len);
    let chains: Vec<&Letters> = words.iter().filter(|w| ex(w)).collect();

    let factor_closure = Verdict::from_first(
        chains
            .iter()
            .find(|w| (0..w.len()).any(|i| (i + 1..=w.len()).any(|j| !ex(&w[i..j]))))
            .map(|w| w.to_vec()),
    );
    let short = || chains.iter().filter(|w| w.len() < max_len);
    let right_extension = Verdict::from_first(
        short()
            .find(|w| {
                !(0..n).any(|y| {
                    let mut longer = w.to_vec();
                    longer.push(y);
                    ex(&longer)
                })
            })
            .map(|w| w.to_vec()),
    );
    let left_extension = Verdict::from_first(
        short()
            .find(|w| {
                !(0..n).any(|z| {
                    let mut longer = vec![z];
                    longer.extend_from_slice(w);
                    ex(&longer)
                })
            })
            .map(|w| w.to_vec()),
    );
    let empty: &[usize] = &[];
    let empty_neutrality = Verdict::from_first(std::iter::once(Vec::new()).chain(words.iter().cloned()).find(|w| {
        ex(&[w.as_slice(), empty].concat()) != ex(w) || ex(&[empty, w.as_slice()].concat()) != ex(w)
    }));
    let unit_length = Verdict::from_first((0..n).find(|&x| ex(&[x]) != rel.exists(x)));
    Ok(FourProperties { bound: max_len, factor_closure, right_extension, left_extension, empty_neutrality, unit_length })
}

/// Words containing a forbidden letter or a forbidden adjacent pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenFactorIdeal {
    pub alphabet: Vec<String>,
    pub forbidden_letters: Vec<usize>,
    pub forbidden_pairs: Vec<(usize, usize)>,
    pub bound: usize,
}

impl ForbiddenFactorIdeal {
    pub fn contains(&self, w: &[usize]) -> bool {
        w.iter().any(|x| self.forbidden_letters.contains(x))
            || w.windows(2).any(|p| self.forbidden_pairs.contains(&(p[0], p[1])))
    }

    /// No word at all is forbidden.
    pub fn is_empty(&self) -> bool {
        self.forbidden_letters.is_empty() && self.forbidden_pairs.is_empty()
    }

    pub fn as_bounded(&self) -> BoundedWordIdeal<impl Fn(&[usize]) -> bool + '_> {
        BoundedWordIdeal::new(self.alphabet.len(), self.bound, move |w: &[usize]| self.contains(w))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelIdealReport {
    pub ideal: ForbiddenFactorIdeal,
    pub two_sided: Verdict<(Letters, Letters)>,
    pub associative: Verdict<(Letters, Letters, Letters)>,
    pub prime: Verdict<FreePrimeWitness>,
    /// A word up to the bound where `ex(w)` and `w ∉ Q` disagree.
    pub matches_ex: Verdict<Letters>,
}

impl RelIdealReport {
    /// Ideal, associative and in agreement with `ex`, within the bound.
    pub fn passes(&self) -> bool {
        self.two_sided.holds() && self.associative.holds() && self.matches_ex.holds()
    }
}

/// The non-existing words as an ideal of the free monoid, re-verified by
/// brute force on every word up to `bound`.
pub fn ideal_from_rel(rel: &BinaryExistence, bound: usize) -> Result<RelIdealReport, ChainError> {
    if bound > MAX_CHAIN_LENGTH {
        return Err(ChainError::LengthCap { requested: bound, cap: MAX_CHAIN_LENGTH });
    }
    let n = rel.size();
    let forbidden_letters: Vec<usize> = (0..n).filter(|&x| !rel.exists(x)).collect();
    let forbidden_pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| rel.exists(x) && rel.exists(y) && !rel.pair(x, y))
        .collect();
    let ideal = ForbiddenFactorIdeal { alphabet: rel.alphabet.clone(), forbidden_letters, forbidden_pairs, bound };
    let (two_sided, associative, prime) = {
        let bounded = ideal.as_bounded();
        (bounded.is_ideal(), bounded.associativity(), bounded.primality())
    };
    let matches_ex = Verdict::from_first(
        words_up_to(n, bound).into_iter().find(|w| ex_unchecked(rel, w, Reading::Adjacent) == ideal.contains(w)),
    );
    Ok(RelIdealReport { ideal, two_sided, associative, prime, matches_ex })
}

/// Relations used by the tests, the benches and the CLI examples.
pub mod examples {
    use super::BinaryExistence;

    /// `a` and `b` must alternate.
    pub fn alternating() -> BinaryExistence {
        BinaryExistence::from_names("alternating", &["a", "b"], &["a", "b"], &[("a", "b"), ("b", "a")]).unwrap()
    }

    /// Only `ab` is a pair; `b` has no right extension and `a` no left one.
    pub fn dead_end() -> BinaryExistence {
        BinaryExistence::from_names("dead_end", &["a", "b"], &["a", "b"], &[("a", "b")]).unwrap()
    }

    /// Every symbol exists, no pair does.
    pub fn singletons() -> BinaryExistence {
        BinaryExistence::from_names("singletons", &["a", "b"], &["a", "b"], &[]).unwrap()
    }

    /// Everything but the factor `ab`.
    pub fn no_ab() -> BinaryExistence {
        BinaryExistence::from_names("no_ab", &["a", "b"], &["a", "b"], &[("a", "a"), ("b", "a"), ("b", "b")]).unwrap()
    }

    /// Words avoiding the letter `a`.
    pub fn no_a() -> BinaryExistence {
        BinaryExistence::from_names("no_a", &["a", "b"], &["b"], &[("b", "b")]).unwrap()
    }

    /// A three-letter cycle `a → b → c → a`.
    pub fn cycle() -> BinaryExistence {
        BinaryExistence::from_names("cycle", &["a", "b", "c"], &["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")])
            .unwrap()
    }

    pub fn free_ab() -> BinaryExistence {
        BinaryExistence::free("free_ab", &["a", "b"])
    }

    pub fn all() -> Vec<BinaryExistence> {
        vec![alternating(), dead_end(), singletons(), no_ab(), no_a(), cycle(), free_ab()]
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    fn render(rel: &BinaryExistence, ws: &[Letters]) -> Vec<String> {
        ws.iter().map(|w| rel.render_word(w)).collect()
    }

    #[test]
    fn validation_examples() {
        assert!(validate_rel(&alternating()).is_ok());
        let lonely = BinaryExistence::from_names("lonely", &["a", "b"], &["a", "b"], &[("a", "a")]).unwrap();
        let report = validate_rel(&lonely);
        assert_eq!(report.failures, vec![RelAxiom::RightExtension("b".into()), RelAxiom::LeftExtension("b".into())]);
        let empty = BinaryExistence::from_names("empty", &[], &[], &[]).unwrap();
        assert!(validate_rel(&empty).failures.contains(&RelAxiom::SomeSymbol));
    }

    #[test]
    fn pair_on_missing_symbol_is_rejected() {
        let err = BinaryExistence::from_names("bad", &["a", "b"], &["a"], &[("a", "b")]).unwrap_err();
        assert_eq!(err, ChainError::PairOnMissingSymbol("a".into(), "b".into(), "b".into()));
    }

    #[test]
    fn ex_word_examples() {
        let rel = alternating();
        assert!(ex_word(&rel, &rel.parse_word("aba").unwrap()).unwrap());
        assert!(!ex_word(&rel, &rel.parse_word("aab").unwrap()).unwrap());
        assert!(ex_word(&rel, &[]).unwrap());
        assert_eq!(rel.parse_word("abc"), Err(ChainError::UnknownSymbol("c".into())));
        assert!(ex_word(&rel, &[5]).is_err());
    }

    #[test]
    fn literal_reading_differs() {
        let rel = alternating();
        let aba = rel.parse_word("aba").unwrap();
        assert!(!ex_word_with(&rel, &aba, Reading::Literal).unwrap());
        let abb = rel.parse_word("abb").unwrap();
        assert!(ex_word_with(&rel, &abb, Reading::Literal).unwrap());
        assert!(!ex_word(&rel, &abb).unwrap());
    }

    #[test]
    fn chain_examples() {
        let rel = alternating();
        assert_eq!(render(&rel, &enumerate_chains(&rel, 3).unwrap()), ["a", "b", "ab", "ba", "aba", "bab"]);
        let rel = singletons();
        assert_eq!(render(&rel, &enumerate_chains(&rel, 4).unwrap()), ["a", "b"]);
        let one = BinaryExistence::free("one", &["a"]);
        assert_eq!(render(&one, &enumerate_chains(&one, 3).unwrap()), ["a", "aa", "aaa"]);
        assert!(matches!(enumerate_chains(&one, 13), Err(ChainError::LengthCap { .. })));
    }

    #[test]
    fn chains_match_filter_in_both_readings() {
        for rel in all() {
            for reading in [Reading::Adjacent, Reading::Literal] {
                let expected: Vec<Letters> =
                    words_up_to(rel.size(), 6).into_iter().filter(|w| ex_unchecked(&rel, w, reading)).collect();
                let mut got = enumerate_chains_with(&rel, 6, reading, Strategy::Sequential).unwrap();
                assert_eq!(got, enumerate_chains_with(&rel, 6, reading, Strategy::Parallel).unwrap());
                got.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
                let mut sorted = expected.clone();
                sorted.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
                assert_eq!(got, sorted, "{}", rel.name());
            }
        }
    }

    #[test]
    fn four_property_examples() {
        assert!(verify_four_properties(&alternating(), 6).unwrap().all_hold());
        assert!(verify_four_properties(&free_ab(), 6).unwrap().all_hold());
        let p = verify_four_properties(&dead_end(), 4).unwrap();
        assert!(p.factor_closure.holds());
        assert_eq!(p.right_extension, Verdict::Fails(vec![1]));
        assert_eq!(p.left_extension, Verdict::Fails(vec![0]));
        assert!(!p.extension());
    }

    #[test]
    fn ideal_examples() {
        let r = ideal_from_rel(&no_ab(), 8).unwrap();
        assert!(r.passes());
        assert_eq!(r.prime, Verdict::Fails(FreePrimeWitness { x: vec![0], y: vec![1], product_without_factor: true }));
        let r = ideal_from_rel(&no_a(), 6).unwrap();
        assert!(r.passes());
        assert!(r.prime.holds());
        let r = ideal_from_rel(&free_ab(), 5).unwrap();
        assert!(r.ideal.is_empty());
        assert!(r.passes() && r.prime.holds());
    }

    #[test]
    fn display_lists_pairs() {
        assert_eq!(
            alternating().to_string(),
            "rel alternating\nalphabet a b\nexists a b\npair a b\npair b a\n"
        );
    }
}
