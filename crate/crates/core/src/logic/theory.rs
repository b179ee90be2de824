//! The localized monoid axioms evaluated on a monoid with an associative
//! ideal, with the fresh unary symbols interpreted by local units.

use super::eval::eval_open;
use super::{evaluate, localize, parse_axioms, EvalError, FiniteStructure, Formula, LocalizationReport, Term};
use crate::bridge::{local_units, LocalUnits};
use crate::ideal::{self, IdealError, IdealSubset};
use crate::monoid::FiniteMonoid;

/// Associativity and the two unit laws.
pub const MONOID_AXIOMS: &str = "\
forall x . forall y . forall z . eq(op(op(x, y), z), op(x, op(y, z)))
forall x . eq(op(e0, x), x)
forall x . eq(op(x, e0), x)
";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauInterpretation {
    pub symbol: String,
    /// The table used for evaluation: per element, the first local unit that
    /// satisfies the axiom instance with a true guard, else the global unit.
    pub chosen: Vec<usize>,
    /// Per element, every candidate that satisfies the instance with a true
    /// guard. Empty where only vacuous choices exist.
    pub witnesses: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomResult {
    pub axiom: Formula,
    pub holds: bool,
    /// Whether the guard, existentially closed, is true in the structure.
    pub guard_satisfiable: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidTheoryReport {
    pub localization: LocalizationReport,
    pub local_units: LocalUnits,
    pub taus: Vec<TauInterpretation>,
    pub axioms: Vec<AxiomResult>,
    pub structure: FiniteStructure,
}

impl MonoidTheoryReport {
    pub fn passes(&self) -> bool {
        self.axioms.iter().all(|a| a.holds)
    }
}

fn premise(f: &Formula) -> Option<&Formula> {
    match f {
        Formula::Forall(_, g) | Formula::Exists(_, g) => premise(g),
        Formula::Implies(p, _) => Some(p),
        _ => None,
    }
}

/// The unary symbols applied to a variable, with that variable's quantifier
/// as the body to test per element.
fn tau_sites(f: &Formula) -> Option<(String, &str, &Formula)> {
    fn find(t: &Term) -> Option<String> {
        match t {
            Term::App(s, args) if args.len() == 1 && s.starts_with("tau") => Some(s.clone()),
            Term::App(_, args) => args.iter().find_map(find),
            _ => None,
        }
    }
    fn in_formula(f: &Formula) -> Option<String> {
        match f {
            Formula::Atom(_, args) => args.iter().find_map(find),
            Formula::Eq(a, b) => find(a).or_else(|| find(b)),
            Formula::Not(g) | Formula::Forall(_, g) | Formula::Exists(_, g) => in_formula(g),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                in_formula(a).or_else(|| in_formula(b))
            }
        }
    }
    match f {
        Formula::Forall(v, body) => in_formula(body).map(|s| (s, v.as_str(), body.as_ref())),
        _ => None,
    }
}

pub fn check_localized_monoid_theory(m: &FiniteMonoid, q: &IdealSubset) -> Result<MonoidTheoryReport, IdealError> {
    ideal::require_associative(m, q)?;
    let axioms = parse_axioms(MONOID_AXIOMS).expect("monoid axioms parse");
    let localization = localize(&axioms);
    let units = local_units(m, q)?;
    let mut candidates = units.non_unit.clone();
    candidates.push(units.unit);

    let mut structure = FiniteStructure::from_monoid_ideal(m, q);
    let mut taus = Vec::new();
    for f in &localization.output {
        let Some((symbol, var, body)) = tau_sites(f) else { continue };
        let guard = premise(body);
        let mut chosen = Vec::with_capacity(m.order());
        let mut witnesses = Vec::with_capacity(m.order());
        for x in 0..m.order() {
            let found: Vec<usize> = candidates
                .iter()
                .copied()
                .filter(|&c| {
                    let mut trial = structure.clone();
                    trial.set_function(&symbol, 1, vec![c; m.order()]).expect("candidate in domain");
                    let env = [(var, x)];
                    let holds = eval_open(&trial, body, &env).unwrap_or(false);
                    let live = guard.is_none_or(|g| eval_open(&trial, g, &env).unwrap_or(false));
                    holds && live
                })
                .collect();
            chosen.push(found.first().copied().unwrap_or(units.unit));
            witnesses.push(found);
        }
        structure.set_function(&symbol, 1, chosen.clone()).expect("chosen in domain");
        taus.push(TauInterpretation { symbol, chosen, witnesses });
    }

    let results = localization
        .output
        .iter()
        .map(|f| -> Result<AxiomResult, EvalError> {
            let guard_satisfiable = premise(f).map(|g| evaluate(&g.exists_closure(), &structure)).transpose()?;
            Ok(AxiomResult { axiom: f.clone(), holds: evaluate(f, &structure)?, guard_satisfiable })
        })
        .collect::<Result<Vec<_>, _>>()
        .expect("every symbol of the localized axioms is interpreted");
    Ok(MonoidTheoryReport { localization, local_units: units, taus, axioms: results, structure })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::category_to_monoid;
    use crate::corpus::{self, ideal};

    fn names(m: &FiniteMonoid, xs: &[usize]) -> Vec<String> {
        xs.iter().map(|&i| m.element_name(i).to_string()).collect()
    }

    #[test]
    fn m3_uses_the_global_unit() {
        let m3 = corpus::m3();
        let r = check_localized_monoid_theory(&m3, &ideal(&m3, &["0"])).unwrap();
        assert!(r.passes());
        for tau in &r.taus {
            assert!(tau.chosen.iter().all(|&c| c == m3.unit()));
        }
        assert!(r.axioms.iter().all(|a| a.guard_satisfiable == Some(true)));
    }

    #[test]
    fn k2_taus_are_identities() {
        let (mz, _) = category_to_monoid(&corpus::k2()).unwrap();
        let m = &mz.monoid;
        let r = check_localized_monoid_theory(m, &mz.zero_ideal()).unwrap();
        assert!(r.passes());
        let f = m.index_of("f").unwrap();
        let left = r.taus.iter().find(|t| t.symbol == "tau2_e0").unwrap();
        let right = r.taus.iter().find(|t| t.symbol == "tau1_e0").unwrap();
        assert_eq!(m.element_name(left.chosen[f]), "idA");
        assert_eq!(m.element_name(right.chosen[f]), "idB");
        assert_eq!(names(m, &left.witnesses[f]), ["idA", "E^"]);
    }

    #[test]
    fn m4_passes() {
        let m4 = corpus::m4();
        assert!(check_localized_monoid_theory(&m4, &ideal(&m4, &["q1", "q2"])).unwrap().passes());
    }

    #[test]
    fn non_associative_ideal_is_refused() {
        let n3 = corpus::nilpotent_cubic();
        let q = ideal(&n3, &["0"]);
        assert!(matches!(check_localized_monoid_theory(&n3, &q), Err(IdealError::NotAssociative(..))));
    }
}
