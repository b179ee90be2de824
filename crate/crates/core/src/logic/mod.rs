//! First-order axioms: syntax, localization to an existence predicate, and
//! evaluation in finite structures.

mod eval;
mod localize;
mod parse;
mod theory;

use std::collections::BTreeSet;
use std::fmt;

pub use eval::{evaluate, evaluate_with, EvalError, FiniteStructure};
pub use localize::{localize, LocalizationReport, Rewrite, Warning, EX, OP};
pub use parse::{parse_axioms, parse_formula, ParseError};
pub use theory::{
    check_localized_monoid_theory, AxiomResult, MonoidTheoryReport, TauInterpretation, MONOID_AXIOMS,
};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn app(name: &str, args: Vec<Term>) -> Term {
        Term::App(name.to_string(), args)
    }

    fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Term::Var(v) => {
                out.insert(v);
            }
            Term::Const(_) => {}
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(String, Vec<Term>),
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str, args: Vec<Term>) -> Formula {
        Formula::Atom(name.to_string(), args)
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    /// Left-nested conjunction; `None` for an empty list.
    pub fn conjunction(parts: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        parts.into_iter().reduce(Formula::and)
    }

    /// Variables occurring free, in name order.
    pub fn free_vars(&self) -> Vec<String> {
        fn walk<'a>(f: &'a Formula, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
            let terms = |ts: &mut dyn Iterator<Item = &'a Term>, bound: &Vec<&'a str>, out: &mut BTreeSet<String>| {
                let mut vars = BTreeSet::new();
                ts.for_each(|t| t.collect_vars(&mut vars));
                out.extend(vars.into_iter().filter(|v| !bound.contains(v)).map(String::from));
            };
            match f {
                Formula::Atom(_, args) => terms(&mut args.iter(), bound, out),
                Formula::Eq(a, b) => terms(&mut [a, b].into_iter(), bound, out),
                Formula::Not(g) => walk(g, bound, out),
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                    walk(a, bound, out);
                    walk(b, bound, out);
                }
                Formula::Forall(v, g) | Formula::Exists(v, g) => {
                    bound.push(v);
                    walk(g, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = BTreeSet::new();
        walk(self, &mut Vec::new(), &mut out);
        out.into_iter().collect()
    }

    /// Existentially closes over the free variables.
    pub fn exists_closure(&self) -> Formula {
        self.free_vars().into_iter().rev().fold(self.clone(), |f, v| Formula::Exists(v, Box::new(f)))
    }

    fn is_quantifier(&self) -> bool {
        matches!(self, Formula::Forall(..) | Formula::Exists(..))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) | Term::Const(v) => f.write_str(v),
            Term::App(name, args) => write_call(f, name, args),
        }
    }
}

fn write_call(f: &mut fmt::Formatter<'_>, name: &str, args: &[Term]) -> fmt::Result {
    write!(f, "{name}(")?;
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str(")")
}

// A quantifier scopes as far right as possible, so it needs parentheses
// wherever something could follow it.
fn write_operand(f: &mut fmt::Formatter<'_>, g: &Formula) -> fmt::Result {
    if g.is_quantifier() {
        write!(f, "({g})")
    } else {
        write!(f, "{g}")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let binary = |f: &mut fmt::Formatter<'_>, a: &Formula, op: &str, b: &Formula| {
            f.write_str("(")?;
            write_operand(f, a)?;
            write!(f, " {op} {b})")
        };
        match self {
            Formula::Atom(name, args) if args.is_empty() => f.write_str(name),
            Formula::Atom(name, args) => write_call(f, name, args),
            Formula::Eq(a, b) => write!(f, "eq({a}, {b})"),
            Formula::Not(g) => {
                f.write_str("not ")?;
                write_operand(f, g)
            }
            Formula::And(a, b) => binary(f, a, "and", b),
            Formula::Or(a, b) => binary(f, a, "or", b),
            Formula::Implies(a, b) => binary(f, a, "implies", b),
            Formula::Iff(a, b) => binary(f, a, "iff", b),
            Formula::Forall(v, g) => write!(f, "forall {v} . {g}"),
            Formula::Exists(v, g) => write!(f, "exists {v} . {g}"),
        }
    }
}
