//! Rewrites axioms so they only speak about existing products.
//!
//! Each atom is rewritten in place. Constants are replaced by unary terms of
//! an adjacent variable, then the atom becomes `guard implies atom`, where
//! the guard asserts `ex` of every adjacent pair: adjacent arguments of a
//! user predicate with two or more arguments, and adjacent leaves of every
//! maximal `op` product. Equality and `ex` itself are never guarded.

use super::{Formula, Term};

pub const EX: &str = "ex";
pub const OP: &str = "op";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rewrite {
    /// A constant replaced by `symbol(var)`.
    Constant { axiom: usize, constant: String, symbol: String, var: String },
    /// An atom wrapped in its existence guard.
    Guard { axiom: usize, atom: String, guard: Formula },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Warning {
    pub axiom: usize,
    pub constant: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizationReport {
    pub input: Vec<Formula>,
    pub output: Vec<Formula>,
    pub trace: Vec<Rewrite>,
    /// Axioms passed through unchanged because a constant has no adjacent
    /// variable.
    pub warnings: Vec<Warning>,
}

impl LocalizationReport {
    pub fn guards(&self) -> impl Iterator<Item = &Formula> {
        self.trace.iter().filter_map(|r| match r {
            Rewrite::Guard { guard, .. } => Some(guard),
            Rewrite::Constant { .. } => None,
        })
    }
}

pub fn tau_left(constant: &str) -> String {
    format!("tau2_{constant}")
}

pub fn tau_right(constant: &str) -> String {
    format!("tau1_{constant}")
}

struct Pass<'a> {
    axiom: usize,
    trace: &'a mut Vec<Rewrite>,
    stranded: Option<String>,
}

/// Leaves of a maximal product, left to right.
fn op_leaves(t: &Term) -> Vec<&Term> {
    match t {
        Term::App(f, args) if f == OP => args.iter().flat_map(op_leaves).collect(),
        _ => vec![t],
    }
}

fn ex_pairs(seq: &[&Term], out: &mut Vec<Formula>) {
    for w in seq.windows(2) {
        let g = Formula::atom(EX, vec![w[0].clone(), w[1].clone()]);
        if !out.contains(&g) {
            out.push(g);
        }
    }
}

fn product_guards(t: &Term, out: &mut Vec<Formula>) {
    match t {
        Term::App(f, _) if f == OP => {
            let leaves = op_leaves(t);
            ex_pairs(&leaves, out);
            leaves.into_iter().for_each(|l| product_guards(l, out));
        }
        Term::App(_, args) => args.iter().for_each(|a| product_guards(a, out)),
        _ => {}
    }
}

/// The guard conjuncts an atom needs, in first-occurrence order.
fn required_guards(atom: &Formula) -> Vec<Formula> {
    let mut out = Vec::new();
    match atom {
        Formula::Atom(name, args) if name != EX => {
            if args.len() >= 2 {
                ex_pairs(&args.iter().collect::<Vec<_>>(), &mut out);
            }
            args.iter().for_each(|a| product_guards(a, &mut out));
        }
        Formula::Eq(a, b) => {
            product_guards(a, &mut out);
            product_guards(b, &mut out);
        }
        _ => {}
    }
    out
}

fn conjuncts(f: &Formula, out: &mut Vec<Formula>) {
    match f {
        Formula::And(a, b) => {
            conjuncts(a, out);
            conjuncts(b, out);
        }
        _ => out.push(f.clone()),
    }
}

fn is_atomic(f: &Formula) -> bool {
    matches!(f, Formula::Atom(..) | Formula::Eq(..))
}

/// `premise implies atom` where the premise already holds every guard the
/// atom needs.
fn already_guarded(premise: &Formula, atom: &Formula) -> bool {
    if !is_atomic(atom) {
        return false;
    }
    let mut have = Vec::new();
    conjuncts(premise, &mut have);
    let needed = required_guards(atom);
    !needed.is_empty()
        && have.iter().all(|g| matches!(g, Formula::Atom(n, _) if n == EX))
        && needed.iter().all(|g| have.contains(g))
}

impl Pass<'_> {
    /// Replaces constants in one sequence of adjacent terms.
    fn sequence(&mut self, seq: Vec<Term>) -> Vec<Term> {
        let mut out = seq.clone();
        for (i, t) in seq.iter().enumerate() {
            let Term::Const(c) = t else { continue };
            let left = i.checked_sub(1).and_then(|j| match &seq[j] {
                Term::Var(v) => Some(v),
                _ => None,
            });
            let right = match seq.get(i + 1) {
                Some(Term::Var(v)) => Some(v),
                _ => None,
            };
            let (symbol, var) = match (left, right) {
                (Some(x), _) => (tau_right(c), x.clone()),
                (None, Some(y)) => (tau_left(c), y.clone()),
                (None, None) => {
                    self.stranded.get_or_insert_with(|| c.clone());
                    continue;
                }
            };
            out[i] = Term::app(&symbol, vec![Term::Var(var.clone())]);
            self.trace.push(Rewrite::Constant { axiom: self.axiom, constant: c.clone(), symbol, var });
        }
        out
    }

    fn term(&mut self, t: &Term) -> Term {
        match t {
            Term::App(f, _) if f == OP => {
                let leaves: Vec<Term> = op_leaves(t).into_iter().cloned().collect();
                let replaced = self.arguments(&leaves);
                rebuild(t, &mut replaced.into_iter())
            }
            Term::App(f, args) => Term::App(f.clone(), self.arguments(args)),
            Term::Var(_) | Term::Const(_) => t.clone(),
        }
    }

    fn arguments(&mut self, args: &[Term]) -> Vec<Term> {
        // constants directly in the argument list are handled by the sequence
        // pass, so only compound arguments are rewritten first
        let inner: Vec<Term> = args
            .iter()
            .map(|a| match a {
                Term::Const(_) => a.clone(),
                _ => self.term(a),
            })
            .collect();
        self.sequence(inner)
    }

    fn atom(&mut self, f: &Formula) -> Formula {
        let rewritten = match f {
            Formula::Atom(name, _) if name == EX => return f.clone(),
            Formula::Atom(name, args) => Formula::Atom(name.clone(), self.arguments(args)),
            Formula::Eq(a, b) => {
                let mut args = self.arguments(&[a.clone(), b.clone()]).into_iter();
                Formula::Eq(args.next().unwrap(), args.next().unwrap())
            }
            _ => unreachable!("atomic formula"),
        };
        match Formula::conjunction(required_guards(&rewritten)) {
            None => rewritten,
            Some(guard) => {
                self.trace.push(Rewrite::Guard { axiom: self.axiom, atom: rewritten.to_string(), guard: guard.clone() });
                Formula::implies(guard, rewritten)
            }
        }
    }

    fn formula(&mut self, f: &Formula) -> Formula {
        let bin = |s: &mut Self, a: &Formula, b: &Formula| (Box::new(s.formula(a)), Box::new(s.formula(b)));
        match f {
            Formula::Atom(..) | Formula::Eq(..) => self.atom(f),
            Formula::Implies(p, a) if already_guarded(p, a) => f.clone(),
            Formula::Not(g) => Formula::Not(Box::new(self.formula(g))),
            Formula::And(a, b) => {
                let (a, b) = bin(self, a, b);
                Formula::And(a, b)
            }
            Formula::Or(a, b) => {
                let (a, b) = bin(self, a, b);
                Formula::Or(a, b)
            }
            Formula::Implies(a, b) => {
                let (a, b) = bin(self, a, b);
                Formula::Implies(a, b)
            }
            Formula::Iff(a, b) => {
                let (a, b) = bin(self, a, b);
                Formula::Iff(a, b)
            }
            Formula::Forall(v, g) => Formula::Forall(v.clone(), Box::new(self.formula(g))),
            Formula::Exists(v, g) => Formula::Exists(v.clone(), Box::new(self.formula(g))),
        }
    }
}

/// Reassembles a product with the same bracketing from rewritten leaves.
fn rebuild(shape: &Term, leaves: &mut impl Iterator<Item = Term>) -> Term {
    match shape {
        Term::App(f, args) if f == OP => Term::App(f.clone(), args.iter().map(|a| rebuild(a, leaves)).collect()),
        _ => leaves.next().expect("leaf count"),
    }
}

pub fn localize(axioms: &[Formula]) -> LocalizationReport {
    let mut output = Vec::with_capacity(axioms.len());
    let mut trace = Vec::new();
    let mut warnings = Vec::new();
    for (axiom, f) in axioms.iter().enumerate() {
        let mut local = Vec::new();
        let mut pass = Pass { axiom, trace: &mut local, stranded: None };
        let g = pass.formula(f);
        match pass.stranded {
            Some(constant) => {
                warnings.push(Warning { axiom, constant });
                output.push(f.clone());
            }
            None => {
                trace.append(&mut local);
                output.push(g);
            }
        }
    }
    LocalizationReport { input: axioms.to_vec(), output, trace, warnings }
}

#[cfg(test)]
mod tests {
    use super::super::parse_axioms;
    use super::*;

    fn run(text: &str) -> LocalizationReport {
        localize(&parse_axioms(text).unwrap())
    }

    #[test]
    fn unit_axiom() {
        let r = run("forall x . eq(op(e0, x), x)");
        assert_eq!(r.output[0].to_string(), "forall x . (ex(tau2_e0(x), x) implies eq(op(tau2_e0(x), x), x))");
        assert_eq!(
            r.trace[0],
            Rewrite::Constant { axiom: 0, constant: "e0".into(), symbol: "tau2_e0".into(), var: "x".into() }
        );
        let r = run("forall x . eq(op(x, e0), x)");
        assert_eq!(r.output[0].to_string(), "forall x . (ex(x, tau1_e0(x)) implies eq(op(x, tau1_e0(x)), x))");
    }

    #[test]
    fn associativity() {
        let r = run("forall x . forall y . forall z . eq(op(op(x, y), z), op(x, op(y, z)))");
        assert_eq!(
            r.output[0].to_string(),
            "forall x . forall y . forall z . ((ex(x, y) and ex(y, z)) implies eq(op(op(x, y), z), op(x, op(y, z))))"
        );
    }

    #[test]
    fn unary_predicates_without_constants_are_untouched() {
        let r = run("forall x . (p(x) implies not q(x))");
        assert_eq!(r.output, r.input);
        assert!(r.trace.is_empty() && r.warnings.is_empty());
    }

    #[test]
    fn predicate_arguments_are_guarded() {
        let r = run("forall x . forall y . (r(x, c, y) or s(x))");
        assert_eq!(
            r.output[0].to_string(),
            "forall x . forall y . (((ex(x, tau1_c(x)) and ex(tau1_c(x), y)) implies r(x, tau1_c(x), y)) or s(x))"
        );
    }

    #[test]
    fn stranded_constant_passes_through() {
        let r = run("p(c, d)\nforall x . p(x, x)");
        assert_eq!(r.output[0], r.input[0]);
        assert_eq!(r.warnings, vec![Warning { axiom: 0, constant: "c".into() }]);
        assert_eq!(r.output[1].to_string(), "forall x . (ex(x, x) implies p(x, x))");
    }

    #[test]
    fn idempotent_on_guards() {
        let once = run("forall x . eq(op(e0, x), x)\nforall x . forall y . forall z . eq(op(op(x, y), z), op(x, op(y, z)))");
        let twice = localize(&once.output);
        assert_eq!(twice.output, once.output);
        assert!(twice.trace.is_empty());
    }
}
