use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use itertools::Itertools;
use monocat_core::bridge::{self, PartialOutcome};
use monocat_core::category::{category_to_monoid, verify_associative_zero, verify_category, FiniteCategory};
use monocat_core::chain::{self, BinaryExistence, Reading};
use monocat_core::ideal::{self, IdealSubset};
use monocat_core::logic;
use monocat_core::monoid::{enumerate_monoids_with, verify_monoid, FiniteMonoid};
use monocat_core::text::{self, Document};
use monocat_core::Strategy;

use crate::report::Report;
use crate::{Command, ReadingArg};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn document(path: &Path) -> Result<Document> {
    text::parse_document(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

/// A monoid with one of its ideals. A category file stands for its
/// completion with the ideal `{0^}`, named `zero`.
fn monoid_with_ideal(path: &Path, ideal: Option<&str>) -> Result<(FiniteMonoid, String, IdealSubset)> {
    match document(path)? {
        Document::Monoid(file) => {
            let m = file.monoid().with_context(|| format!("{} is not a monoid", path.display()))?;
            let (name, q) = file.ideal(&m, ideal)?;
            Ok((m, name, q))
        }
        Document::Category(k) => {
            if ideal.is_some_and(|n| n != "zero") {
                bail!("a completed category only has the ideal `zero`");
            }
            let (mz, _) = category_to_monoid(&k)?;
            let q = mz.zero_ideal();
            Ok((mz.monoid, "zero".into(), q))
        }
        Document::Rel(_) => bail!("{} holds a relation, expected a monoid or category", path.display()),
    }
}

fn emit(path: Option<&PathBuf>, body: &str) -> Result<()> {
    if let Some(p) = path {
        fs::write(p, body).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn names(m: &FiniteMonoid, xs: &[usize]) -> String {
    xs.iter().map(|&i| m.element_name(i)).join(",")
}

pub fn run(command: &Command, strategy: Strategy, r: &mut Report) -> Result<()> {
    match command {
        Command::Verify { file } => verify(file, r),
        Command::Ideals { file, cap, allow_unit_witness } => ideals(file, *cap, *allow_unit_witness, r),
        Command::Quotient { file, ideal } => quotient(file, ideal.as_deref(), r),
        Command::Pushout { file, ideal, corpus_order } => pushout(file, ideal.as_deref(), *corpus_order, strategy, r),
        Command::ToMonoid { file, emit } => to_monoid(file, emit.as_ref(), r),
        Command::ToCategory { file, ideal, emit } => to_category(file, ideal.as_deref(), emit.as_ref(), r),
        Command::Roundtrip { file, ideal } => roundtrip(file, ideal.as_deref(), r),
        Command::Chains { file, max_len, bound, reading } => chains(file, *max_len, *bound, *reading, strategy, r),
        Command::Localize { file, emit } => localize(file, emit.as_ref(), r),
        Command::ModelCheck { file, ideal } => model_check(file, ideal.as_deref(), r),
        Command::Search { order } => search(*order, strategy, r),
    }
}

fn verify(path: &Path, r: &mut Report) -> Result<()> {
    match document(path)? {
        Document::Monoid(file) => {
            let report = verify_monoid(&file.table)?;
            r.check("monoid", report.is_ok(), report.violations.first());
            for v in report.violations.iter().skip(1) {
                r.trace(format!("VIOLATION {v}"));
            }
            if report.is_ok() {
                let m = file.monoid()?;
                for (name, _) in &file.ideals {
                    let (_, q) = file.ideal(&m, Some(name))?;
                    let ok = ideal::is_ideal(&m, &q).unwrap_or(false);
                    r.check(&format!("ideal-{name}"), ok, Some(q.render(&m)));
                }
            }
        }
        Document::Category(k) => {
            let report = verify_category(&k);
            r.check("category", report.is_ok(), report.violations.first());
            for v in report.violations.iter().skip(1) {
                r.trace(format!("VIOLATION {v}"));
            }
        }
        Document::Rel(rel) => {
            let report = chain::validate_rel(&rel);
            r.check("rel", report.is_ok(), (!report.is_ok()).then(|| report.failures.iter().join("; ")));
        }
    }
    Ok(())
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn ideals(path: &Path, cap: usize, allow_unit_witness: bool, r: &mut Report) -> Result<()> {
    let (m, _, _) = match document(path)? {
        Document::Monoid(file) if file.ideals.is_empty() => {
            let m = file.monoid()?;
            (m, String::new(), IdealSubset::from_members(vec![]))
        }
        _ => monoid_with_ideal(path, None)?,
    };
    let found = ideal::enumerate_ideals(&m, cap)?;
    r.line(format!("MONOID {} order={} ideals={}", m.name(), m.order(), found.len()));
    let mut lemma = None;
    for c in &found {
        let weak = if c.associative {
            match ideal::weak_simplicity_check(&m, &c.ideal, allow_unit_witness)? {
                monocat_core::Verdict::Holds => "yes".to_string(),
                monocat_core::Verdict::Fails(x) => format!("no({})", m.element_name(x)),
            }
        } else {
            "-".to_string()
        };
        r.line(format!(
            "IDEAL {} associative={} prime={} weakly-simple={weak}",
            c.ideal.render(&m),
            yes(c.associative),
            yes(c.prime)
        ));
        if c.prime && !c.associative && lemma.is_none() {
            lemma = Some(c.ideal.render(&m));
        }
    }
    r.check("prime-implies-associative", lemma.is_none(), lemma);
    Ok(())
}

fn quotient(path: &Path, ideal_name: Option<&str>, r: &mut Report) -> Result<()> {
    let (m, name, q) = monoid_with_ideal(path, ideal_name)?;
    let z = ideal::quotient_to_zero(&m, &q)?;
    r.line(format!(
        "QUOTIENT zero {}/{} order={} zero={}",
        m.name(),
        name,
        z.quotient.order(),
        z.quotient.element_name(z.zero)
    ));
    for line in z.quotient.to_string().lines() {
        r.trace(format!("TABLE {line}"));
    }
    let report = verify_monoid(&z.quotient.to_raw())?;
    r.check("quotient-monoid", report.is_ok(), report.violations.first());
    let outside: Vec<usize> = (0..m.order()).filter(|&x| !q.contains(x)).collect();
    let collision = outside.iter().tuple_combinations().find(|(&a, &b)| z.projection.apply(a) == z.projection.apply(b));
    let lands_on_zero = outside.iter().find(|&&a| z.projection.apply(a) == z.zero);
    let witness = collision
        .map(|(&a, &b)| format!("{} {}", m.element_name(a), m.element_name(b)))
        .or(lands_on_zero.map(|&a| m.element_name(a).to_string()));
    r.check("injective-off-ideal", witness.is_none(), witness);
    let absorbing = (0..z.quotient.order()).all(|x| z.quotient.mul(x, z.zero) == z.zero && z.quotient.mul(z.zero, x) == z.zero);
    r.check("zero-absorbing", absorbing, None::<&str>);

    let u = ideal::quotient_to_unit(&m, &q)?;
    r.line(format!("QUOTIENT unit {}/{} order={}", m.name(), name, u.order()));
    r.check("unit-collapse-trivial", u.order() == 1, Some(format!("order {}", u.order())));
    Ok(())
}

fn pushout(path: &Path, ideal_name: Option<&str>, corpus_order: usize, strategy: Strategy, r: &mut Report) -> Result<()> {
    let (m, name, q) = monoid_with_ideal(path, ideal_name)?;
    let mut corpus = Vec::new();
    for n in 1..=corpus_order {
        corpus.extend(enumerate_monoids_with(n, strategy)?);
    }
    let w = ideal::verify_pushout_with(&m, &q, &corpus, strategy)?;
    r.line(format!(
        "PUSHOUT {}/{} apex-order={} corpus={} cocones={}",
        m.name(),
        name,
        w.apex.quotient.order(),
        w.corpus.len(),
        w.cocone_count()
    ));
    for rec in &w.corpus {
        r.trace(format!("COCONES {} count={} unique={}", rec.target, rec.pairs.len(), yes(rec.unique())));
    }
    r.check("square-commutes", w.commutes, None::<&str>);
    let bad = w.corpus.iter().find(|rec| !rec.unique()).map(|rec| rec.target.clone());
    r.check("unique-mediator", bad.is_none(), bad);
    Ok(())
}

fn to_monoid(path: &Path, emit_path: Option<&PathBuf>, r: &mut Report) -> Result<()> {
    let Document::Category(k) = document(path)? else { bail!("{} is not a category file", path.display()) };
    let report = verify_category(&k);
    r.check("category", report.is_ok(), report.violations.first());
    if !report.is_ok() {
        return Ok(());
    }
    let (mz, embed) = category_to_monoid(&k)?;
    let m = &mz.monoid;
    let body = text::render_monoid(m, &[("zero".into(), mz.zero_ideal())]);
    for line in body.lines() {
        r.trace(format!("TABLE {line}"));
    }
    emit(emit_path, &body)?;
    r.line(format!("MONOID {} order={} unit={} zero={}", m.name(), m.order(), m.element_name(m.unit()), m.element_name(mz.zero)));
    let vr = verify_monoid(&m.to_raw())?;
    r.check("monoid", vr.is_ok(), vr.violations.first());
    let zr = verify_associative_zero(&mz);
    r.check("associative-zero", zr.holds(), zr.witness().map(|w| format!("{w:?}")));
    let injective = embed.iter().all_unique();
    r.check("embedding-injective", injective, None::<&str>);
    let broken = k.composition().iter().find(|(&(f, g), &h)| m.mul(embed[f], embed[g]) != embed[h]);
    let witness = broken.map(|(&(f, g), _)| format!("{}*{}", k.arrows()[f].name, k.arrows()[g].name));
    r.check("embedding-composition", witness.is_none(), witness);
    Ok(())
}

fn to_category(path: &Path, ideal_name: Option<&str>, emit_path: Option<&PathBuf>, r: &mut Report) -> Result<()> {
    let (m, name, q) = monoid_with_ideal(path, ideal_name)?;
    let p = bridge::monoid_to_partial(&m, &q)?;
    r.line(format!("PARTIAL {}/{} carrier={} defined={} local-units={}", m.name(), name, p.size(), p.defined_pairs().len(), p.local_units.len()));
    for (a, b) in p.defined_pairs() {
        r.trace(format!("DEFINED {}*{} = {}", p.carrier[a], p.carrier[b], p.carrier[p.get(a, b).unwrap()]));
    }
    match bridge::partial_to_category(&p) {
        PartialOutcome::Category(k) => {
            let body = text::render_category(&k);
            for line in body.lines() {
                r.trace(format!("CATEGORY {line}"));
            }
            emit(emit_path, &body)?;
            r.pass("category");
        }
        PartialOutcome::Weak(d) => {
            r.line(format!("WEAK {}", d));
            r.fail("category", d.to_string());
        }
    }
    Ok(())
}

fn relation_checks(m: &FiniteMonoid, q: &IdealSubset, k: &FiniteCategory, r: &mut Report) -> Result<()> {
    let rel = bridge::build_and_verify_r(m, q, k)?;
    for c in &rel.clauses {
        r.check(&format!("R-{}", c.clause.label()), c.holds, (!c.holds).then(|| c.detail.clone()));
    }
    for &(a, x) in &rel.pairs {
        r.trace(format!("R {} {}", m.element_name(a), rel.completed.monoid.element_name(x)));
    }
    Ok(())
}

fn roundtrip(path: &Path, ideal_name: Option<&str>, r: &mut Report) -> Result<()> {
    match document(path)? {
        Document::Category(k) => {
            let rt = bridge::category_round_trip(&k)?;
            match &rt.outcome {
                PartialOutcome::Category(_) if rt.reproduced => r.line(format!("ROUNDTRIP {} OK", k.name())),
                PartialOutcome::Category(_) => {
                    r.line(format!("ROUNDTRIP {} FAIL not isomorphic", k.name()));
                    r.mark_failed();
                }
                PartialOutcome::Weak(d) => {
                    r.line(format!("ROUNDTRIP {} WEAK {}", k.name(), d));
                    r.mark_failed();
                }
            }
            relation_checks(&rt.completed.monoid, &rt.completed.zero_ideal(), &k, r)?;
        }
        Document::Monoid(_) => {
            let (m, _, q) = monoid_with_ideal(path, ideal_name)?;
            let rt = bridge::monoid_round_trip(&m, &q)?;
            match &rt.outcome {
                PartialOutcome::Category(k) => {
                    if rt.reproduced == Some(true) {
                        r.line(format!("ROUNDTRIP {} OK", m.name()));
                    } else {
                        r.line(format!("ROUNDTRIP {} FAIL partial structures differ", m.name()));
                        r.mark_failed();
                    }
                    relation_checks(&m, &q, k, r)?;
                }
                PartialOutcome::Weak(d) => {
                    r.line(format!("ROUNDTRIP {} WEAK {}", m.name(), d));
                    r.mark_failed();
                    match &rt.adjoined {
                        Some((ext, PartialOutcome::Weak(after))) => r.line(format!(
                            "ADJOINED {} WEAK {}",
                            ext.monoid.element_name(ext.fresh),
                            after
                        )),
                        Some((ext, PartialOutcome::Category(_))) => {
                            r.line(format!("ADJOINED {} OK", ext.monoid.element_name(ext.fresh)))
                        }
                        None => r.line("ADJOINED none products of non-units reach the unit"),
                    }
                }
            }
        }
        Document::Rel(_) => bail!("{} holds a relation, expected a monoid or category", path.display()),
    }
    Ok(())
}

fn chains(
    path: &Path,
    max_len: usize,
    bound: usize,
    reading: ReadingArg,
    strategy: Strategy,
    r: &mut Report,
) -> Result<()> {
    let Document::Rel(rel) = document(path)? else { bail!("{} is not a relation file", path.display()) };
    let valid = chain::validate_rel(&rel);
    r.check("rel", valid.is_ok(), (!valid.is_ok()).then(|| valid.failures.iter().join("; ")));
    let (reading, label) = match reading {
        ReadingArg::Adjacent => (Reading::Adjacent, "adjacent"),
        ReadingArg::Literal => (Reading::Literal, "literal"),
    };
    let found = chain::enumerate_chains_with(&rel, max_len, reading, strategy)?;
    r.line(format!("CHAINS {} count={} max-len={max_len} reading={label}", rel.name(), found.len()));
    for w in &found {
        r.line(format!("CHAIN {}", rel.render_word(w)));
    }
    let p = chain::verify_four_properties(&rel, max_len)?;
    let word = |rel: &BinaryExistence, w: &Vec<usize>| if w.is_empty() { "()".to_string() } else { rel.render_word(w) };
    r.check("factor-closure", p.factor_closure.holds(), p.factor_closure.witness().map(|w| word(&rel, w)));
    r.check("right-extension", p.right_extension.holds(), p.right_extension.witness().map(|w| word(&rel, w)));
    r.check("left-extension", p.left_extension.holds(), p.left_extension.witness().map(|w| word(&rel, w)));
    r.check("empty-neutrality", p.empty_neutrality.holds(), p.empty_neutrality.witness().map(|w| word(&rel, w)));
    r.check("unit-length", p.unit_length.holds(), p.unit_length.witness().map(|&x| rel.alphabet()[x].clone()));

    let q = chain::ideal_from_rel(&rel, bound)?;
    r.line(format!("BOUND {bound}"));
    let pair = |w: &(Vec<usize>, Vec<usize>)| format!("{} {}", word(&rel, &w.0), word(&rel, &w.1));
    r.check("ideal-two-sided", q.two_sided.holds(), q.two_sided.witness().map(pair));
    r.check(
        "ideal-associative",
        q.associative.holds(),
        q.associative.witness().map(|(a, b, c)| format!("{} {} {}", word(&rel, a), word(&rel, b), word(&rel, c))),
    );
    r.check("ex-matches-complement", q.matches_ex.holds(), q.matches_ex.witness().map(|w| word(&rel, w)));
    match q.prime.witness() {
        None => r.line("PRIME yes"),
        Some(w) => r.line(format!("PRIME no {} {}", word(&rel, &w.x), word(&rel, &w.y))),
    }
    Ok(())
}

fn localize(path: &Path, emit_path: Option<&PathBuf>, r: &mut Report) -> Result<()> {
    let axioms = logic::parse_axioms(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    let report = logic::localize(&axioms);
    for f in &report.output {
        r.line(format!("AXIOM {f}"));
    }
    for rw in &report.trace {
        match rw {
            logic::Rewrite::Constant { axiom, constant, symbol, var } => {
                r.trace(format!("REWRITE {} constant {constant} -> {symbol}({var})", axiom + 1))
            }
            logic::Rewrite::Guard { axiom, atom, guard } => r.trace(format!("REWRITE {} guard {atom} by {guard}", axiom + 1)),
        }
    }
    for w in &report.warnings {
        r.line(format!("WARN {} constant {} has no adjacent variable", w.axiom + 1, w.constant));
    }
    emit(emit_path, &report.output.iter().map(|f| format!("{f}\n")).collect::<String>())?;
    Ok(())
}

fn model_check(path: &Path, ideal_name: Option<&str>, r: &mut Report) -> Result<()> {
    let (m, name, q) = monoid_with_ideal(path, ideal_name)?;
    let report = logic::check_localized_monoid_theory(&m, &q)?;
    r.line(format!("MODEL {}/{} local-units={}", m.name(), name, names(&m, &report.local_units.all())));
    for (i, a) in report.axioms.iter().enumerate() {
        r.trace(format!("AXIOM {} {}", i + 1, a.axiom));
        r.check(&format!("axiom-{}", i + 1), a.holds, None::<&str>);
        if let Some(sat) = a.guard_satisfiable {
            r.check(&format!("guard-{}-satisfiable", i + 1), sat, None::<&str>);
        }
    }
    for tau in &report.taus {
        for x in 0..m.order() {
            let w = &tau.witnesses[x];
            r.line(format!(
                "TAU {} {} -> {} witnesses={}",
                tau.symbol,
                m.element_name(x),
                m.element_name(tau.chosen[x]),
                if w.is_empty() { "-".to_string() } else { names(&m, w) }
            ));
        }
    }
    Ok(())
}

fn search(order: usize, strategy: Strategy, r: &mut Report) -> Result<()> {
    let mut scanned = 0;
    let mut total = 0;
    let mut lemma = None;
    for n in 1..=order {
        for m in enumerate_monoids_with(n, strategy)? {
            scanned += 1;
            for c in ideal::enumerate_ideals(&m, ideal::DEFAULT_IDEAL_SCAN_CAP)? {
                total += 1;
                if c.associative && !c.prime {
                    r.line(format!("ASSOC_NOT_PRIME {} {}", m.name(), c.ideal.render(&m)));
                    for line in m.to_string().lines() {
                        r.trace(format!("TABLE {line}"));
                    }
                }
                if c.prime && !c.associative && lemma.is_none() {
                    lemma = Some(format!("{} {}", m.name(), c.ideal.render(&m)));
                }
            }
        }
    }
    r.line(format!("SCANNED monoids={scanned} ideals={total}"));
    r.check("prime-implies-associative", lemma.is_none(), lemma);
    Ok(())
}
