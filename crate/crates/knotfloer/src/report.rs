//! Structured reports behind each command-line subcommand.
//!
//! Every builder returns a [`Report`] holding both a JSON tree and an aligned
//! text rendering; errors split into bad input (exit 2) and failed computation (exit 1).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num::BigRational;
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::complexes::{homology, Alexander, UComplex};
use crate::fixtures::{self, Fixture, Store};
use crate::heegaard::{
    alexander_normalize, homology_in_grading, DomainSolver, Generator, HeegaardDiagram,
    HeegaardError,
};
use crate::hfk_catalog::{
    hat_table_t2, kunneth_table, minus_table_t2, refined_compare, Comparison, HfkTable,
    RefinedInvariant,
};
use crate::surgery::{
    cobordism_signature, connected_sum, fmt_rational, ClassicalInvariants, SurgeryPresentation,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReportError {
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("computation failed: {0}")]
    Compute(String),
}

impl ReportError {
    pub fn exit_code(&self) -> i32 {
        match self {
            ReportError::BadInput(_) => 2,
            ReportError::Compute(_) => 1,
        }
    }
}

fn bad(e: impl std::fmt::Display) -> ReportError {
    ReportError::BadInput(e.to_string())
}

fn fail(e: impl std::fmt::Display) -> ReportError {
    ReportError::Compute(e.to_string())
}

/// Diagram errors raised while parsing are bad input; the rest are computational.
fn diagram_error(e: HeegaardError) -> ReportError {
    use HeegaardError::*;
    match e {
        Parse(_) | CurveCount(..) | UnknownPoint(_) | PointIncidence { .. }
        | UnknownRegion(_) | BadSign(_) | Quadrants { .. } | Euler { .. }
        | MarkedNotGenerator(_) | NoMarked | MissingM => bad(e),
        _ => fail(e),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub kind: &'static str,
    /// False when the report records a failed check (exit code 1).
    pub pass: bool,
    pub data: Value,
    pub text: String,
}

impl Report {
    fn new(kind: &'static str, data: Value, text: String) -> Self {
        Report {
            kind,
            pass: true,
            data,
            text,
        }
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut v = json!({"report": self.kind, "pass": self.pass});
            if let (Value::Object(out), Value::Object(d)) = (&mut v, &self.data) {
                out.extend(d.clone());
            }
            serde_json::to_string_pretty(&v).expect("report serializes")
        } else {
            self.text.clone()
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

fn rat(v: &BigRational) -> Value {
    json!(fmt_rational(v))
}

fn fields(rows: &[(&str, String)]) -> String {
    let w = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<w$}  {v}\n"))
        .collect()
}

/// Knot argument: `T2,m` names a (2,m) torus knot; anything else is a file path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KnotSpec {
    Torus(i64),
    Path(String),
}

pub fn parse_knot(s: &str) -> Result<KnotSpec, ReportError> {
    match s.strip_prefix("T2,") {
        Some(m) => m
            .trim()
            .parse()
            .map(KnotSpec::Torus)
            .map_err(|_| bad(format!("cannot read torus parameter in {s:?}"))),
        None => Ok(KnotSpec::Path(s.to_string())),
    }
}

fn torus_m(s: &str) -> Result<i64, ReportError> {
    match parse_knot(s)? {
        KnotSpec::Torus(m) => Ok(m),
        KnotSpec::Path(_) => Err(bad(format!("{s:?} is not of the form T2,m"))),
    }
}

// ---- surgery ----

pub fn surgery(text: &str) -> Result<Report, ReportError> {
    let p = SurgeryPresentation::from_json(text).map_err(bad)?;
    let inv = ClassicalInvariants::of(&p).map_err(fail)?;
    let sigma = if p.components.is_empty() {
        Some(0)
    } else {
        cobordism_signature(&p).ok()
    };
    let d3 = inv.d3.as_ref().map(fmt_rational);
    let data = json!({
        "tb": rat(&inv.tb),
        "rot": rat(&inv.rot),
        "sl": rat(&inv.sl),
        "d3": d3,
        "signature": sigma,
        "components": p.components.len(),
    });
    let text = fields(&[
        ("tb", fmt_rational(&inv.tb)),
        ("rot", fmt_rational(&inv.rot)),
        ("sl", fmt_rational(&inv.sl)),
        ("d3", d3.unwrap_or_else(|| "undefined".into())),
        ("signature", sigma.map_or("undefined".into(), |s| s.to_string())),
        ("components", p.components.len().to_string()),
    ]);
    Ok(Report::new("surgery", data, text))
}

// ---- hfk tables ----

fn table_report(kind: &'static str, title: String, t: &HfkTable) -> Report {
    let mut text = format!("{title}\n{}", t.to_grid());
    if let Some((a, m)) = t.tower_top {
        let _ = writeln!(text, "tower top  (A={a}, M={m})");
        for g in &t.torsion {
            let verified = if g.order_verified { "" } else { " (order unverified)" };
            let _ = writeln!(
                text,
                "torsion    (A={}, M={}) order {}{verified}",
                g.alexander, g.maslov, g.order
            );
        }
    }
    let mut data = t.to_json();
    data["knot"] = json!(title);
    Report::new(kind, data, text)
}

pub fn hfk_table(m: i64, minus: bool) -> Result<Report, ReportError> {
    let t = if minus {
        minus_table_t2(m)
    } else {
        hat_table_t2(m)
    }
    .map_err(bad)?;
    Ok(table_report("hfk-table", format!("T(2,{m})"), &t))
}

/// Homology of a complex file, as a table of summands.
pub fn hfk_complex(text: &str) -> Result<Report, ReportError> {
    let c = UComplex::from_json(text).map_err(bad)?;
    let h = homology(&c);
    let mut rows = Vec::new();
    let mut out = String::from("generator  A  M  order\n");
    for s in &h.summands {
        let order = s.order.map_or("tower".to_string(), |k| k.to_string());
        let m = s.maslov.map_or("-".to_string(), |m| m.to_string());
        let _ = writeln!(out, "{}  {}  {m}  {order}", s.generator, s.alexander);
        rows.push(json!({"generator": s.generator, "A": s.alexander, "M": s.maslov, "order": s.order}));
    }
    let marked: Vec<Value> = h
        .class_coordinates()
        .iter()
        .map(|(n, c)| json!({"marked": n, "zero": c.is_zero()}))
        .collect();
    for (n, c) in h.class_coordinates() {
        let _ = writeln!(out, "marked {n}: {}", if c.is_zero() { "zero" } else { "nonzero" });
    }
    Ok(Report::new(
        "hfk-complex",
        json!({"summands": rows, "classes": marked}),
        out,
    ))
}

pub fn hfk_sum(knots: &[String], total: Option<i64>) -> Result<Report, ReportError> {
    if knots.len() < 2 {
        return Err(bad("hfk sum needs at least two knots"));
    }
    let ms = knots
        .iter()
        .map(|k| torus_m(k))
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = hat_table_t2(ms[0]).map_err(bad)?;
    for &m in &ms[1..] {
        t = kunneth_table(&t, &hat_table_t2(m).map_err(bad)?).map_err(fail)?;
    }
    let title = ms
        .iter()
        .map(|m| format!("T(2,{m})"))
        .collect::<Vec<_>>()
        .join(" # ");
    let Some(s) = total else {
        return Ok(table_report("hfk-sum", title, &t));
    };
    let pieces: Vec<(&Alexander, i64, u32)> = t.at_total(s);
    let mut text = format!("{title}, total Alexander grading {s}\n");
    for (a, m, d) in &pieces {
        let _ = writeln!(text, "{a}  M={m}  dim {d}");
    }
    let data = json!({
        "knot": title,
        "total": s,
        "pieces": pieces.iter().map(|(a, m, d)| json!({"A": a, "M": m, "dim": d})).collect::<Vec<_>>(),
    });
    Ok(Report::new("hfk-sum", data, text))
}

// ---- diagrams ----

fn parse_diagram(text: &str) -> Result<HeegaardDiagram, ReportError> {
    HeegaardDiagram::from_json(text).map_err(diagram_error)
}

pub fn diagram_analyze(text: &str) -> Result<Report, ReportError> {
    let d = parse_diagram(text)?;
    let solver = DomainSolver::new(&d).map_err(diagram_error)?;
    let gr = solver.gradings().map_err(diagram_error)?;
    let hist = gr.histogram();
    let m = d.intersection_matrix(&[], &[]);
    let matrix: Vec<Vec<Value>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| rat(m.get(i, j))).collect())
        .collect();
    let mut text = fields(&[
        ("genus", d.genus().to_string()),
        ("generators", gr.generators.len().to_string()),
        ("points", d.points().len().to_string()),
        ("regions", d.regions().len().to_string()),
    ]);
    text.push_str("Alexander histogram\n");
    for (a, c) in &hist {
        let _ = writeln!(text, "{a:>5}  {c}");
    }
    text.push_str("intersection matrix\n");
    for row in &matrix {
        let cells: Vec<String> = row
            .iter()
            .map(|v| format!("{:>4}", v.as_str().unwrap_or("?")))
            .collect();
        let _ = writeln!(text, "{}", cells.join(""));
    }
    let data = json!({
        "genus": d.genus(),
        "generators": gr.generators.len(),
        "histogram": hist.iter().map(|(a, c)| json!({"A": a, "count": c})).collect::<Vec<_>>(),
        "intersection_matrix": matrix,
        "census": fixtures::census(&d),
    });
    Ok(Report::new("diagram-analyze", data, text))
}

/// Absolute bigrading of `x` in a triply pointed diagram, normalizing each
/// coordinate separately by the parity rule on its marginal distribution.
pub fn absolute_bigrading(
    solver: &DomainSolver<'_>,
    gens: &[Generator],
    x: &Generator,
) -> Result<(i64, i64), HeegaardError> {
    let mut s1 = Vec::with_capacity(gens.len());
    let mut s2 = Vec::with_capacity(gens.len());
    for y in gens {
        let (a, b) = solver
            .rel_bigrading(y, x)?
            .ok_or_else(|| HeegaardError::Undetermined(vec![(String::new(), String::new())]))?;
        s1.push(a);
        s2.push(b);
    }
    Ok((alexander_normalize(&s1)?, alexander_normalize(&s2)?))
}

pub fn diagram_invariant(text: &str) -> Result<Report, ReportError> {
    let d = parse_diagram(text)?;
    let x = d.marked().cloned().ok_or_else(|| bad("diagram has no marked generator"))?;
    let solver = DomainSolver::new(&d).map_err(diagram_error)?;
    let gr = solver.gradings().map_err(diagram_error)?;
    let a = gr.of(&x).ok_or_else(|| fail("marked generator has no grading"))?;
    let cycle = solver.verify_invariant_cycle().map_err(diagram_error)?;
    let peers = gr.in_grading(a).len();
    let top = gr.histogram().keys().last() == Some(&a);
    let class = match homology_in_grading(&solver, &gr, a) {
        Ok(h) => Some(h.marked_class.is_some_and(|c| !c.is_zero())),
        Err(HeegaardError::Undetermined(_)) => None,
        Err(e) => return Err(diagram_error(e)),
    };
    let bigrading = if d.m().is_some() {
        Some(absolute_bigrading(&solver, &gr.generators, &x).map_err(diagram_error)?)
    } else {
        None
    };
    let class_text = match class {
        Some(true) => "nonzero",
        Some(false) => "zero",
        None => "undetermined",
    };
    let mut rows = vec![
        ("marked", d.generator_name(&x)),
        ("alexander", a.to_string()),
        ("generators in grading", peers.to_string()),
        ("maximal grading", top.to_string()),
        ("cycle", cycle.to_string()),
        ("class", class_text.to_string()),
    ];
    if let Some((s1, s2)) = bigrading {
        rows.push(("bigrading", format!("({s1},{s2})")));
    }
    let data = json!({
        "marked": d.generator_name(&x),
        "alexander": a,
        "generators_in_grading": peers,
        "maximal": top,
        "cycle": cycle,
        "class": class_text,
        "bigrading": bigrading,
    });
    let mut r = Report::new("diagram-invariant", data, fields(&rows));
    r.pass = cycle && class != Some(false);
    Ok(r)
}

// ---- composites and the refined comparison ----

/// Connected sum of Legendrian knots, each given by a surgery presentation and its knot type.
#[derive(Clone, Debug, Deserialize)]
pub struct Composite {
    pub summands: Vec<CompositeSummand>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct CompositeSummand {
    pub presentation: PresentationRef,
    /// Knot type carrying the invariant, in the `T2,m` grammar.
    pub knot: String,
    /// Whether the summand's invariant is known to be nonzero.
    #[serde(default = "yes")]
    pub nonzero: bool,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum PresentationRef {
    Fixture { fixture: String, params: Vec<usize> },
    Inline(SurgeryPresentation),
}

impl PresentationRef {
    pub fn resolve(&self, store: &Store) -> Result<SurgeryPresentation, ReportError> {
        match self {
            PresentationRef::Inline(p) => {
                p.validate().map_err(bad)?;
                Ok(p.clone())
            }
            PresentationRef::Fixture { fixture, params } => {
                match fixtures::build_from(store, fixture, params).map_err(bad)? {
                    Fixture::Surgery(p) => Ok(p),
                    _ => Err(bad(format!("{fixture} is not a surgery presentation"))),
                }
            }
        }
    }
}

/// Classical invariants, per-summand Alexander gradings and Maslov grading of a composite.
#[derive(Clone, Debug, PartialEq)]
pub struct CompositeInvariants {
    pub classical: ClassicalInvariants,
    pub refined: RefinedInvariant,
    pub slot_dim: u32,
}

fn integral(v: &BigRational, what: &str) -> Result<i64, ReportError> {
    if !v.is_integer() {
        return Err(fail(format!("{what} = {} is not an integer", fmt_rational(v))));
    }
    use num::ToPrimitive;
    v.to_integer().to_i64().ok_or_else(|| fail(format!("{what} overflows")))
}

/// The invariant of a summand sits at A = (tb − rot + 1)/2 and M = 2A − d3.
pub fn composite_invariants(c: &Composite, store: &Store) -> Result<CompositeInvariants, ReportError> {
    if c.summands.len() != 2 {
        return Err(bad(format!(
            "a composite needs exactly two summands, found {}",
            c.summands.len()
        )));
    }
    let mut classical: Option<ClassicalInvariants> = None;
    let mut alex = Vec::new();
    let mut maslov = Some(0i64);
    let mut tables = Vec::new();
    for s in &c.summands {
        let p = s.presentation.resolve(store)?;
        let inv = ClassicalInvariants::of(&p).map_err(fail)?;
        let twice = integral(&(&inv.tb - &inv.rot + BigRational::from_integer(1.into())), "tb - rot + 1")?;
        if twice % 2 != 0 {
            return Err(fail("tb - rot + 1 is odd"));
        }
        let a = twice / 2;
        maslov = match (&inv.d3, maslov) {
            (Some(d3), Some(acc)) => Some(acc + 2 * a - integral(d3, "d3")?),
            _ => None,
        };
        alex.push(a);
        tables.push(hat_table_t2(torus_m(&s.knot)?).map_err(bad)?);
        classical = Some(match classical {
            None => inv,
            Some(prev) => connected_sum(&prev, &inv),
        });
    }
    let table = kunneth_table(&tables[0], &tables[1]).map_err(fail)?;
    let key = Alexander(alex.clone());
    let slot_dim = match maslov {
        Some(m) => table.dim(&key, m),
        None => table.dim_at(&key),
    };
    Ok(CompositeInvariants {
        classical: classical.expect("two summands"),
        refined: RefinedInvariant {
            bigrading: (alex[0], alex[1]),
            maslov,
            nonzero: c.summands.iter().all(|s| s.nonzero),
        },
        slot_dim,
    })
}

fn verdict_name(c: Comparison) -> &'static str {
    match c {
        Comparison::Equal => "equal",
        Comparison::Distinct => "distinct",
        Comparison::Inconclusive => "inconclusive",
    }
}

pub fn distinguish(text_a: &str, text_b: &str, store: &Store) -> Result<Report, ReportError> {
    let parse = |t: &str| serde_json::from_str::<Composite>(t).map_err(bad);
    let a = composite_invariants(&parse(text_a)?, store)?;
    let b = composite_invariants(&parse(text_b)?, store)?;
    let slot = if a.refined.bigrading == b.refined.bigrading {
        a.slot_dim
    } else {
        1
    };
    let verdict = refined_compare(&a.refined, &b.refined, slot);
    let same_classical = a.classical.tb == b.classical.tb
        && a.classical.rot == b.classical.rot
        && a.classical.d3 == b.classical.d3;
    let side = |c: &CompositeInvariants| {
        json!({
            "tb": rat(&c.classical.tb),
            "rot": rat(&c.classical.rot),
            "d3": c.classical.d3.as_ref().map(fmt_rational),
            "bigrading": c.refined.bigrading,
            "maslov": c.refined.maslov,
            "slot_dim": c.slot_dim,
        })
    };
    let line = |c: &CompositeInvariants| {
        format!(
            "tb {} rot {} d3 {} bigrading ({},{}) slot dim {}",
            fmt_rational(&c.classical.tb),
            fmt_rational(&c.classical.rot),
            c.classical.d3.as_ref().map_or("undefined".into(), fmt_rational),
            c.refined.bigrading.0,
            c.refined.bigrading.1,
            c.slot_dim
        )
    };
    let text = fields(&[
        ("A", line(&a)),
        ("B", line(&b)),
        ("classical invariants", if same_classical { "equal" } else { "differ" }.into()),
        ("verdict", verdict_name(verdict).into()),
    ]);
    let data = json!({
        "a": side(&a),
        "b": side(&b),
        "classical_equal": same_classical,
        "verdict": verdict_name(verdict),
    });
    Ok(Report::new("distinguish", data, text))
}

// ---- fixtures ----

pub fn fixtures_check(store: &Store) -> Result<Report, ReportError> {
    let r = fixtures::manifest_check(store).map_err(bad)?;
    let mut text = String::new();
    for e in &r.entries {
        let status = if e.pass() { "ok  " } else { "FAIL" };
        let _ = writeln!(text, "{status} {}", e.file);
        if let Some(err) = &e.error {
            let _ = writeln!(text, "     {err}");
        }
        for c in e.checks.iter().filter(|c| !c.pass) {
            let _ = writeln!(text, "     {}: expected {} found {}", c.key, c.expected, c.found);
        }
    }
    for w in &r.warnings {
        let _ = writeln!(text, "warning: {w}");
    }
    let failed: Vec<&str> = r.failures().map(|e| e.file.as_str()).collect();
    let _ = writeln!(text, "{} fixtures, {} failed", r.entries.len(), failed.len());
    let counts: BTreeMap<&str, usize> = [("fixtures", r.entries.len()), ("failed", failed.len())].into();
    let data = json!({"summary": counts, "failed": failed, "warnings": r.warnings, "entries": r.entries});
    let mut rep = Report::new("fixtures-check", data, text);
    rep.pass = r.pass();
    Ok(rep)
}
