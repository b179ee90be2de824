//! Classical evaluation in finite structures by exhaustive quantifier
//! expansion.

use std::collections::BTreeMap;

use thiserror::Error;

use super::{Formula, Term};
use crate::ideal::IdealSubset;
use crate::monoid::FiniteMonoid;
use crate::par::{self, Strategy};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("predicate `{0}` of arity {1} is not interpreted")]
    UninterpretedPredicate(String, usize),
    #[error("function `{0}` of arity {1} is not interpreted")]
    UninterpretedFunction(String, usize),
    #[error("variable `{0}` is not bound")]
    UnboundVariable(String),
    #[error("table for `{name}` has {found} entries, expected {expected}")]
    TableSize { name: String, expected: usize, found: usize },
    #[error("table for `{name}` has value {value} outside the domain")]
    OutOfDomain { name: String, value: usize },
}

/// Predicates and functions keyed by name and arity; tables are row-major
/// over `domain^arity`. Constants are nullary functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteStructure {
    domain: Vec<String>,
    predicates: BTreeMap<(String, usize), Vec<bool>>,
    functions: BTreeMap<(String, usize), Vec<usize>>,
}

fn table_len(n: usize, arity: usize) -> usize {
    n.pow(arity as u32)
}

fn index(n: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &a| acc * n + a)
}

fn tuples(n: usize, arity: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..table_len(n, arity)).map(move |mut k| {
        let mut t = vec![0; arity];
        for slot in t.iter_mut().rev() {
            *slot = k % n;
            k /= n;
        }
        t
    })
}

impl FiniteStructure {
    pub fn new(domain: Vec<String>) -> Self {
        FiniteStructure { domain, predicates: BTreeMap::new(), functions: BTreeMap::new() }
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn size(&self) -> usize {
        self.domain.len()
    }

    pub fn set_predicate(&mut self, name: &str, arity: usize, table: Vec<bool>) -> Result<(), EvalError> {
        let expected = table_len(self.size(), arity);
        if table.len() != expected {
            return Err(EvalError::TableSize { name: name.into(), expected, found: table.len() });
        }
        self.predicates.insert((name.into(), arity), table);
        Ok(())
    }

    pub fn set_function(&mut self, name: &str, arity: usize, table: Vec<usize>) -> Result<(), EvalError> {
        let expected = table_len(self.size(), arity);
        if table.len() != expected {
            return Err(EvalError::TableSize { name: name.into(), expected, found: table.len() });
        }
        if let Some(&value) = table.iter().find(|&&v| v >= self.size()) {
            return Err(EvalError::OutOfDomain { name: name.into(), value });
        }
        self.functions.insert((name.into(), arity), table);
        Ok(())
    }

    /// Tabulates `f` over every argument tuple.
    pub fn define_predicate(&mut self, name: &str, arity: usize, f: impl Fn(&[usize]) -> bool) {
        let table = tuples(self.size(), arity).map(|t| f(&t)).collect();
        self.predicates.insert((name.into(), arity), table);
    }

    pub fn define_function(&mut self, name: &str, arity: usize, f: impl Fn(&[usize]) -> usize) -> Result<(), EvalError> {
        let table = tuples(self.size(), arity).map(|t| f(&t)).collect();
        self.set_function(name, arity, table)
    }

    pub fn set_constant(&mut self, name: &str, value: usize) -> Result<(), EvalError> {
        self.set_function(name, 0, vec![value])
    }

    pub fn function(&self, name: &str, arity: usize) -> Option<&[usize]> {
        self.functions.get(&(name.to_string(), arity)).map(Vec::as_slice)
    }

    pub fn predicate(&self, name: &str, arity: usize) -> Option<&[bool]> {
        self.predicates.get(&(name.to_string(), arity)).map(Vec::as_slice)
    }

    /// Domain `M`, `op` the product, binary `ex(u,v)` iff `u·v ∉ Q`, unary
    /// `ex(x)` iff `x ∉ Q`, and the constant `e0` for the unit.
    pub fn from_monoid_ideal(m: &FiniteMonoid, q: &IdealSubset) -> Self {
        let mut s = FiniteStructure::new(m.elements().to_vec());
        s.set_function("op", 2, m.flat_table().to_vec()).expect("product table");
        s.set_constant("e0", m.unit()).expect("unit");
        s.define_predicate("ex", 2, |t| !q.contains(m.mul(t[0], t[1])));
        s.define_predicate("ex", 1, |t| !q.contains(t[0]));
        s
    }
}

type Env<'a> = Vec<(&'a str, usize)>;

fn term(s: &FiniteStructure, t: &Term, env: &Env<'_>) -> Result<usize, EvalError> {
    match t {
        Term::Var(v) => {
            env.iter().rev().find(|(n, _)| n == v).map(|&(_, x)| x).ok_or_else(|| EvalError::UnboundVariable(v.clone()))
        }
        Term::Const(c) => s
            .function(c, 0)
            .map(|tab| tab[0])
            .ok_or_else(|| EvalError::UninterpretedFunction(c.clone(), 0)),
        Term::App(f, args) => {
            let tab = s.function(f, args.len()).ok_or_else(|| EvalError::UninterpretedFunction(f.clone(), args.len()))?;
            let vals = args.iter().map(|a| term(s, a, env)).collect::<Result<Vec<_>, _>>()?;
            Ok(tab[index(s.size(), &vals)])
        }
    }
}

fn eval<'a>(s: &FiniteStructure, f: &'a Formula, env: &mut Env<'a>) -> Result<bool, EvalError> {
    Ok(match f {
        Formula::Atom(p, args) => {
            let tab = s.predicate(p, args.len()).ok_or_else(|| EvalError::UninterpretedPredicate(p.clone(), args.len()))?;
            let vals = args.iter().map(|a| term(s, a, env)).collect::<Result<Vec<_>, _>>()?;
            tab[index(s.size(), &vals)]
        }
        Formula::Eq(a, b) => term(s, a, env)? == term(s, b, env)?,
        Formula::Not(g) => !eval(s, g, env)?,
        Formula::And(a, b) => eval(s, a, env)? && eval(s, b, env)?,
        Formula::Or(a, b) => eval(s, a, env)? || eval(s, b, env)?,
        Formula::Implies(a, b) => !eval(s, a, env)? || eval(s, b, env)?,
        Formula::Iff(a, b) => eval(s, a, env)? == eval(s, b, env)?,
        Formula::Forall(v, g) | Formula::Exists(v, g) => {
            let universal = matches!(f, Formula::Forall(..));
            for x in 0..s.size() {
                env.push((v, x));
                let r = eval(s, g, env);
                env.pop();
                if r? != universal {
                    return Ok(!universal);
                }
            }
            universal
        }
    })
}

/// Evaluates with the given variables bound.
pub(super) fn eval_open(s: &FiniteStructure, f: &Formula, bound: &[(&str, usize)]) -> Result<bool, EvalError> {
    let mut env: Env<'_> = bound.to_vec();
    eval(s, f, &mut env)
}

pub fn evaluate(f: &Formula, s: &FiniteStructure) -> Result<bool, EvalError> {
    evaluate_with(f, s, Strategy::default())
}

/// The outermost quantifier is split across workers. Branch results are
/// combined in domain order with the same short-circuit as the sequential
/// loop, so the outcome, errors included, does not depend on the strategy.
pub fn evaluate_with(f: &Formula, s: &FiniteStructure, strategy: Strategy) -> Result<bool, EvalError> {
    match f {
        Formula::Forall(v, g) | Formula::Exists(v, g) if strategy.is_parallel() => {
            let domain: Vec<usize> = (0..s.size()).collect();
            let results = par::map(strategy, &domain, |&x| eval(s, g, &mut vec![(v.as_str(), x)]));
            let universal = matches!(f, Formula::Forall(..));
            for r in results {
                if r? != universal {
                    return Ok(!universal);
                }
            }
            Ok(universal)
        }
        _ => eval(s, f, &mut Vec::new()),
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_formula;
    use super::*;
    use crate::category::category_to_monoid;
    use crate::corpus;

    #[test]
    fn reflexive_equality_everywhere() {
        let f = parse_formula("forall x . forall y . (ex(x, y) implies eq(op(x, y), op(x, y)))").unwrap();
        for (_, m, q) in corpus::monoid_ideal_pairs() {
            let s = FiniteStructure::from_monoid_ideal(&m, &q);
            assert!(evaluate(&f, &s).unwrap());
        }
    }

    #[test]
    fn no_global_unit_among_arrows() {
        let (mz, _) = category_to_monoid(&corpus::k2()).unwrap();
        let m = &mz.monoid;
        // drop the big unit; the remaining carrier is closed under the product
        let keep: Vec<usize> = m.non_units().collect();
        let mut s = FiniteStructure::new(keep.iter().map(|&i| m.element_name(i).to_string()).collect());
        s.define_function("op", 2, |t| keep.iter().position(|&k| k == m.mul(keep[t[0]], keep[t[1]])).unwrap())
            .unwrap();
        let f = parse_formula("exists e . forall x . eq(op(e, x), x)").unwrap();
        assert!(!evaluate(&f, &s).unwrap());
        assert!(!evaluate_with(&f, &s, Strategy::Sequential).unwrap());
    }

    #[test]
    fn uninterpreted_symbol_is_named() {
        let s = FiniteStructure::from_monoid_ideal(&corpus::m3(), &corpus::ideal(&corpus::m3(), &["0"]));
        let f = parse_formula("forall x . p(x, x)").unwrap();
        assert_eq!(evaluate(&f, &s), Err(EvalError::UninterpretedPredicate("p".into(), 2)));
        let f = parse_formula("forall x . eq(tau2_e0(x), x)").unwrap();
        assert_eq!(evaluate(&f, &s), Err(EvalError::UninterpretedFunction("tau2_e0".into(), 1)));
    }

    #[test]
    fn table_sizes_are_checked() {
        let mut s = FiniteStructure::new(vec!["a".into(), "b".into()]);
        assert!(matches!(s.set_function("f", 1, vec![0]), Err(EvalError::TableSize { .. })));
        assert!(matches!(s.set_function("f", 1, vec![0, 2]), Err(EvalError::OutOfDomain { .. })));
    }
}
