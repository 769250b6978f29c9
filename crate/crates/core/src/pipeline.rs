//! The commands behind the CLI, each producing a [`Report`], and the
//! per-instance checks run over the bundled corpus.

use num_traits::Zero;

use crate::chaincx::{betti, verify_chain_map, Verdict};
use crate::corpus;
use crate::error::{Error, Result};
use crate::instance::{Instance, InstanceFile};
use crate::intrinsic::{Convention, OrbifoldMorseSystem};
use crate::quotient::EquivariantMorseSystem;
use crate::report::{render_vector, Report, Status, Table};
use crate::simplicial::{compare, homology, GSimplicialComplex};

fn wrong_kind(expected: &str, file: &InstanceFile) -> Error {
    Error::WrongKind {
        expected: expected.to_string(),
        found: file.kind.to_string(),
    }
}

fn convention_name(c: Convention) -> &'static str {
    match c {
        Convention::Plus => "plus",
        Convention::Minus => "minus",
    }
}

fn betti_table(title: &str, v: &[usize]) -> Table {
    let mut t = Table::new(title, &["degree", "betti"]);
    for (k, b) in v.iter().enumerate() {
        t.push([k.to_string(), b.to_string()]);
    }
    t
}

fn orbit_table(s: &EquivariantMorseSystem) -> Table {
    let mut t = Table::new("critical orbits", &["orbit", "members", "index", "isotropy", "orientable"]);
    for o in s.classify() {
        let members: Vec<&str> = o.members.iter().map(|&m| s.crit_points()[m].label.as_str()).collect();
        t.push([
            s.crit_points()[o.members[0]].label.clone(),
            members.join(" "),
            o.index.to_string(),
            o.iso_order.to_string(),
            if o.orientable { "yes" } else { "no" }.to_string(),
        ]);
    }
    t
}

fn violation_table(s: &EquivariantMorseSystem, r: &mut Report) -> bool {
    let v = s.validate();
    r.note(format!("self-indexing: {}", if v.self_indexing { "yes" } else { "no" }));
    if v.is_valid() {
        r.note("all equivariance laws hold");
        return true;
    }
    let mut t = Table::new("violations", &["law", "witness"]);
    for x in &v.violations {
        t.push([x.law().to_string(), x.to_string()]);
    }
    r.table(t);
    r.escalate(Status::ValidationFailure);
    false
}

fn d_squared_table(s: &OrbifoldMorseSystem, r: &mut Report) -> bool {
    let d = s.verify_d_squared();
    let mut t = Table::new("d-squared", &["convention", "holds", "witness"]);
    for (name, v) in [("plus", &d.plus), ("minus", &d.minus)] {
        let witness = match v {
            Verdict::Holds => String::new(),
            Verdict::Fails(w) => format!("{} -> {}: {}", w.from, w.to, w.value),
        };
        t.push([name.to_string(), if v.holds() { "yes" } else { "no" }.to_string(), witness]);
    }
    r.table(t);
    if !d.holds() {
        r.escalate(Status::ValidationFailure);
    }
    d.holds()
}

fn crit_table(s: &OrbifoldMorseSystem) -> Table {
    let mut t = Table::new("orbifold critical points", &["label", "index", "isotropy", "orientable"]);
    for c in s.crit_points() {
        t.push([
            c.label.clone(),
            c.index.to_string(),
            c.iso_order.to_string(),
            if c.orientable { "yes" } else { "no" }.to_string(),
        ]);
    }
    t
}

/// Intrinsic homology with boundary matrices; `None` when `∂² ≠ 0`.
fn intrinsic_homology(s: &OrbifoldMorseSystem, convention: Convention, r: &mut Report) -> Result<Option<Vec<usize>>> {
    let c = s.complex(convention);
    for t in Table::boundaries(&format!("boundary {}", convention_name(convention)), &c) {
        r.table(t);
    }
    if !d_squared_table(s, r) {
        return Ok(None);
    }
    let b = betti(&c)?;
    r.note(format!("betti {}", render_vector(&b)));
    r.table(betti_table("betti", &b));
    Ok(Some(b))
}

fn simplicial_summary(k: &GSimplicialComplex, r: &mut Report) {
    let mut t = Table::new("triangulation", &["dimension", "simplices"]);
    for (d, n) in k.complex().f_vector().iter().enumerate() {
        t.push([d.to_string(), n.to_string()]);
    }
    r.table(t);
    r.note(format!("group order: {}", k.group().order()));
    r.note(format!("regular: {}", if k.is_regular() { "yes" } else { "no" }));
    if let Some(l) = k.subcomplex() {
        r.note(format!("relative to a subcomplex with {} simplices", l.f_vector().iter().sum::<usize>()));
    }
}

pub fn cmd_validate(file: &InstanceFile) -> Result<Report> {
    let mut r = Report::new("validate", &file.name);
    match file.build()? {
        Instance::GlobalQuotient(s) => {
            violation_table(&s, &mut r);
            r.table(orbit_table(&s));
        }
        Instance::Intrinsic(s) => {
            r.table(crit_table(&s));
            d_squared_table(&s, &mut r);
        }
        Instance::Simplicial(k) => simplicial_summary(&k, &mut r),
        Instance::Comparison(s, k) => {
            violation_table(&s, &mut r);
            r.table(orbit_table(&s));
            simplicial_summary(&k, &mut r);
        }
    }
    Ok(r)
}

pub fn cmd_homology(file: &InstanceFile, convention: Convention) -> Result<Report> {
    let mut r = Report::new("homology", &file.name);
    r.note(format!("convention: {}", convention_name(convention)));
    match file.build()? {
        Instance::GlobalQuotient(s) => {
            if !violation_table(&s, &mut r) {
                return Ok(r);
            }
            r.table(orbit_table(&s));
            let invariant = betti(&s.invariant_boundary()?)?;
            let derived = s.derive_intrinsic()?;
            if let Some(b) = intrinsic_homology(&derived, convention, &mut r)? {
                r.note(format!("invariant subcomplex betti {}", render_vector(&invariant)));
                if b != invariant {
                    r.escalate(Status::Mismatch);
                }
            }
        }
        Instance::Intrinsic(s) => {
            r.table(crit_table(&s));
            intrinsic_homology(&s, convention, &mut r)?;
        }
        Instance::Simplicial(k) => {
            simplicial_summary(&k, &mut r);
            let whole = homology(k.complex(), k.subcomplex())?;
            let invariant = k.invariant_homology()?;
            let quotient = k.quotient()?.homology()?;
            let mut t = Table::new("betti", &["degree", "complex", "invariant", "quotient"]);
            for d in 0..whole.len() {
                t.push([d, whole[d], invariant[d], quotient.get(d).copied().unwrap_or(0)]);
            }
            r.table(t);
            r.note(format!("betti {}", render_vector(&quotient)));
            if !same_padded(&invariant, &quotient) {
                r.escalate(Status::Mismatch);
            }
        }
        Instance::Comparison(..) => return Err(wrong_kind("global_quotient, intrinsic or simplicial", file)),
    }
    Ok(r)
}

/// The intrinsic instance derived from a global quotient, with its report.
pub fn cmd_derive(file: &InstanceFile) -> Result<(Report, Option<InstanceFile>)> {
    let Instance::GlobalQuotient(s) = file.build()? else {
        return Err(wrong_kind("global_quotient", file));
    };
    let mut r = Report::new("derive", &file.name);
    if !violation_table(&s, &mut r) {
        return Ok((r, None));
    }
    let derived = s.derive_intrinsic()?;
    r.table(crit_table(&derived));
    let mut t = Table::new("n(p,q)", &["from", "to", "n"]);
    let crit = derived.crit_points();
    for (p, cp) in crit.iter().enumerate().filter(|(_, c)| c.orientable && c.index > 0) {
        for (q, cq) in crit.iter().enumerate() {
            if cq.orientable && cq.index + 1 == cp.index {
                t.push([cp.label.clone(), cq.label.clone(), derived.coefficient(p, q, Convention::Plus).to_string()]);
            }
        }
    }
    r.table(t);
    let mut out = InstanceFile::from_intrinsic(
        &format!("{}_intrinsic", file.name),
        &format!("orbit-space data derived from {}", file.name),
        &derived,
    );
    let b = betti(&derived.boundary_plus())?;
    r.note(format!("betti {}", render_vector(&b)));
    out.expected = Some(crate::instance::Expected {
        betti: Some(b),
        ..Default::default()
    });
    Ok((r, Some(out)))
}

fn same_padded(a: &[usize], b: &[usize]) -> bool {
    let n = a.len().max(b.len());
    (0..n).all(|i| a.get(i).copied().unwrap_or(0) == b.get(i).copied().unwrap_or(0))
}

pub fn cmd_compare(file: &InstanceFile) -> Result<Report> {
    let Instance::Comparison(s, k) = file.build()? else {
        return Err(wrong_kind("comparison", file));
    };
    let mut r = Report::new("compare", &file.name);
    if !violation_table(&s, &mut r) {
        return Ok(r);
    }
    let c = compare(&s, &k)?;
    let n = c.morse.len().max(c.quotient.len());
    let mut t = Table::new("betti", &["degree", "morse", "quotient", "invariant"]);
    let at = |v: &[usize], d: usize| v.get(d).copied().unwrap_or(0).to_string();
    for d in 0..n {
        t.push([d.to_string(), at(&c.morse, d), at(&c.quotient, d), at(&c.invariant, d)]);
    }
    r.table(t);
    let verdict = c.agrees() && same_padded(&c.quotient, &c.invariant);
    r.note(format!(
        "morse {} {} quotient {}",
        render_vector(&c.morse),
        if verdict { "==" } else { "!=" },
        render_vector(&c.quotient)
    ));
    if !verdict {
        r.escalate(Status::Mismatch);
    }
    Ok(r)
}

/// One corpus expectation and its outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

fn check(name: &str, expected: impl ToString, actual: impl ToString) -> Check {
    let (expected, actual) = (expected.to_string(), actual.to_string());
    Check {
        name: name.to_string(),
        pass: expected == actual,
        expected,
        actual,
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn intrinsic_checks(prefix: &str, s: &OrbifoldMorseSystem, want_d2: bool, want_betti: Option<&[usize]>, out: &mut Vec<Check>) -> Result<()> {
    let d2 = s.verify_d_squared().holds();
    out.push(check(&format!("{prefix}d-squared"), yes_no(want_d2), yes_no(d2)));
    let pairing = s.pairing_check(s.ambient_dim())?;
    out.push(check(&format!("{prefix}pairing"), "holds", if pairing.holds() { "holds" } else { "fails" }));
    if !d2 {
        return Ok(());
    }
    out.push(check(
        &format!("{prefix}psi chain map"),
        "holds",
        if verify_chain_map(&s.psi()).holds() { "holds" } else { "fails" },
    ));
    let plus = betti(&s.boundary_plus())?;
    let minus = betti(&s.boundary_minus())?;
    out.push(check(&format!("{prefix}betti plus = minus"), render_vector(&plus), render_vector(&minus)));
    if let Some(b) = want_betti {
        out.push(check(&format!("{prefix}betti"), render_vector(b), render_vector(&plus)));
    }
    Ok(())
}

fn morse_checks(s: &EquivariantMorseSystem, file: &InstanceFile, out: &mut Vec<Check>) -> Result<bool> {
    let want = file.expected();
    let valid = s.validate().is_valid();
    out.push(check("valid", yes_no(want.valid.unwrap_or(true)), yes_no(valid)));
    if !valid {
        return Ok(false);
    }
    if let Some(labels) = &want.non_orientable {
        let found: Vec<String> = s
            .classify()
            .iter()
            .filter(|o| !o.orientable)
            .map(|o| s.crit_points()[o.members[0]].label.clone())
            .collect();
        out.push(check("non-orientable orbits", labels.join(" "), found.join(" ")));
    }
    let invariant = betti(&s.invariant_boundary()?)?;
    if let Some(b) = &want.betti {
        out.push(check("invariant betti", render_vector(b), render_vector(&invariant)));
    }
    let derived = s.derive_intrinsic()?;
    intrinsic_checks("derived ", &derived, true, Some(&invariant), out)?;
    let mut triples = 0;
    for (p, q, r) in s.broken_triples() {
        s.broken_weight(p, q, r)?;
        triples += 1;
    }
    out.push(check("broken weights agree", triples, triples));
    let orbits = s.classify();
    let mut nonzero_sums = 0;
    for a in orbits.iter().filter(|o| o.orientable && o.index >= 2) {
        for c in orbits.iter().filter(|o| o.orientable && o.index + 2 == a.index) {
            if !s.broken_weight_total(a.members[0], c.members[0])?.is_zero() {
                nonzero_sums += 1;
            }
        }
    }
    out.push(check("broken weight sums nonzero", 0, nonzero_sums));
    Ok(true)
}

/// Every expectation the corpus runner checks for one instance.
pub fn run_checks(file: &InstanceFile) -> Result<Vec<Check>> {
    let want = file.expected();
    let mut out = Vec::new();
    match file.build()? {
        Instance::GlobalQuotient(s) => {
            morse_checks(&s, file, &mut out)?;
        }
        Instance::Intrinsic(s) => {
            intrinsic_checks("", &s, want.d_squared.unwrap_or(true), want.betti.as_deref(), &mut out)?;
        }
        Instance::Simplicial(k) => {
            out.push(check("regular", "yes", yes_no(k.is_regular())));
            let quotient = k.quotient()?.homology()?;
            let invariant = k.invariant_homology()?;
            out.push(check("invariant = quotient", render_vector(&invariant), render_vector(&quotient)));
            if let Some(b) = &want.betti {
                out.push(check("quotient betti", render_vector(b), render_vector(&quotient)));
            }
        }
        Instance::Comparison(s, k) => {
            if morse_checks(&s, file, &mut out)? {
                let c = compare(&s, &k)?;
                out.push(check("regular", "yes", yes_no(k.is_regular())));
                out.push(check("morse = quotient", render_vector(&c.morse), render_vector(&c.quotient)));
                out.push(check("invariant = quotient", render_vector(&c.invariant), render_vector(&c.quotient)));
            }
        }
    }
    Ok(out)
}

pub fn cmd_corpus_list() -> Result<Report> {
    let mut r = Report::new("corpus list", "corpus");
    let mut t = Table::new("instances", &["name", "kind", "description"]);
    for f in corpus::files()? {
        t.push([f.name.clone(), f.kind.to_string(), f.description.clone()]);
    }
    r.table(t);
    Ok(r)
}

pub fn cmd_corpus_run(filter: Option<&str>) -> Result<Report> {
    let files = corpus::files()?;
    let selected: Vec<&InstanceFile> = files.iter().filter(|f| filter.is_none_or(|n| f.name == n)).collect();
    if let (Some(name), true) = (filter, selected.is_empty()) {
        return Err(Error::UnknownLabel {
            label: name.to_string(),
            context: "corpus".into(),
        });
    }
    let mut r = Report::new("corpus run", filter.unwrap_or("corpus"));
    let mut t = Table::new("checks", &["instance", "check", "expected", "actual", "verdict"]);
    let (mut passed, mut total) = (0, 0);
    for f in selected {
        let checks = match run_checks(f) {
            Ok(c) => c,
            Err(e) => vec![Check {
                name: "runs".into(),
                expected: "no error".into(),
                actual: e.to_string(),
                pass: false,
            }],
        };
        for c in checks {
            total += 1;
            if c.pass {
                passed += 1;
            } else {
                r.escalate(Status::Mismatch);
            }
            t.push([f.name.clone(), c.name, c.expected, c.actual, if c.pass { "pass" } else { "FAIL" }.to_string()]);
        }
    }
    r.note(format!("{passed}/{total} checks pass"));
    r.table(t);
    Ok(r)
}
