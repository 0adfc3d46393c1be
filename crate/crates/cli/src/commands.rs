use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use nfold::axioms::{solution_trace, solve_axiom, AxiomInstance, Multiplicity};
use nfold::lill::{fold_budget, lill_trace, solve_real_roots};
use nfold::numtheory::{
    check_polygon, check_section, section_required_n, totient_report, Factorization,
};
use nfold::polygon::build_polygon;
use nfold::section::m_sect;
use nfold::trace::{emit_svg, verify, ConstructionReport, JsonDocument, Viewport};
use nfold::{Error, FoldTrace, Line, Point, Polynomial, Tolerance};
use serde_json::Value;

use crate::{Artifacts, Cli, Command};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_PREDICATE: u8 = 2;
pub const EXIT_VERIFY: u8 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NumericFailure(_) => EXIT_VERIFY,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<u8, Failure>;

pub fn run(cli: &Cli) -> Outcome {
    let tol = match cli.tol {
        Some(e) => Tolerance::with_incidence(e)?,
        None => Tolerance::default(),
    };
    match &cli.command {
        Command::Check { m, folds } => check(*m, *folds),
        Command::Msect {
            angle_deg,
            parts,
            out,
        } => msect(*angle_deg, *parts, out, &tol),
        Command::Polygon { m, folds, out } => polygon(*m, *folds, out, &tol),
        Command::Solve { coeffs, root, out } => solve(coeffs, *root, out, &tol),
        Command::Axiom { id, json, out, svg } => {
            axiom(*id, json, out.as_deref(), svg.as_deref(), &tol)
        }
    }
}

fn format_factors(f: &Factorization) -> String {
    if f.factors.is_empty() {
        return "1".into();
    }
    f.factors
        .iter()
        .map(|&(p, e)| {
            if e == 1 {
                p.to_string()
            } else {
                format!("{p}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join(" * ")
}

fn check(m: u64, folds: Option<u64>) -> Outcome {
    let report = totient_report(m)?;
    println!("m = {m}");
    println!(
        "phi(m) = {} = {}",
        report.phi,
        format_factors(&report.phi_factors)
    );
    println!("largest prime of phi(m) = {}", report.largest_prime);
    println!("required n = {}", report.required_n);
    println!(
        "m-section of an angle: required n = {}",
        section_required_n(m)?
    );
    let Some(n) = folds else {
        return Ok(EXIT_OK);
    };
    let ok = if m >= 3 {
        check_polygon(m, n)?
    } else {
        check_section(m, n)?
    };
    if ok {
        println!("constructible with {n}-fold origami");
        Ok(EXIT_OK)
    } else {
        println!(
            "not guaranteed with {n}-fold origami (needs {})",
            report.required_n
        );
        Ok(EXIT_PREDICATE)
    }
}

/// Verifies the trace, writes the requested artifacts, and prints the
/// verification summary.
fn finish(
    construction: String,
    results: BTreeMap<String, f64>,
    budget: usize,
    trace: &FoldTrace,
    out: &Artifacts,
    tol: &Tolerance,
) -> Outcome {
    let verification = verify(trace, tol)?;
    println!("fold width = {}", trace.fold_width());
    println!("fold count = {}", trace.fold_count());
    println!(
        "verification: {} (max residual {:.3e})",
        if verification.ok { "ok" } else { "FAILED" },
        verification.max_residual
    );
    let ok = verification.ok;
    if let Some(path) = &out.json {
        let report = ConstructionReport {
            construction,
            results,
            fold_budget: budget,
            fold_width: trace.fold_width(),
            fold_count: trace.fold_count(),
            verification,
        };
        let doc = JsonDocument::new(Some(report), (!trace.is_empty()).then_some(trace));
        write(path, &doc.to_bytes()?)?;
    }
    if let Some(path) = &out.svg {
        write(path, &emit_svg(trace, Viewport::default())?)?;
    }
    if ok {
        Ok(EXIT_OK)
    } else {
        for f in verify(trace, tol)?.failures {
            eprintln!(
                "step {}: {:?} residual {:.3e}",
                f.step, f.constraint, f.residual
            );
        }
        Ok(EXIT_VERIFY)
    }
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes)
        .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

fn msect(angle_deg: f64, parts: u64, out: &Artifacts, tol: &Tolerance) -> Outcome {
    let theta = angle_deg.to_radians();
    let (phi, trace, plan) = m_sect(theta, parts, tol)?;
    println!("{angle_deg}° / {parts} = {}°", phi.to_degrees());
    println!("required n = {}", plan.required_n);
    let results = BTreeMap::from([
        ("angle_deg".to_string(), angle_deg),
        ("result_deg".to_string(), phi.to_degrees()),
        ("result_rad".to_string(), phi),
    ]);
    finish(
        format!("msect {angle_deg} {parts}"),
        results,
        plan.required_n as usize,
        &trace,
        out,
        tol,
    )
}

fn polygon(m: u64, folds: Option<u64>, out: &Artifacts, tol: &Tolerance) -> Outcome {
    if let Some(n) = folds {
        if !check_polygon(m, n)? {
            println!(
                "the regular {m}-gon is not guaranteed with {n}-fold origami (needs {})",
                totient_report(m)?.required_n
            );
            return Ok(EXIT_PREDICATE);
        }
    }
    let r = build_polygon(m, tol)?;
    println!("regular {m}-gon, required n = {}", r.report.required_n);
    let mut results = BTreeMap::new();
    for (k, v) in r.vertices.iter().enumerate() {
        println!("  V{k} = {v}");
        results.insert(format!("v{k:03}.x"), v.x);
        results.insert(format!("v{k:03}.y"), v.y);
    }
    finish(
        format!("polygon {m}"),
        results,
        r.report.required_n.max(1) as usize,
        &r.trace,
        out,
        tol,
    )
}

fn solve(coeffs: &[f64], root: usize, out: &Artifacts, tol: &Tolerance) -> Outcome {
    if coeffs.is_empty() {
        return Err(Failure::usage("--coeffs needs at least one value"));
    }
    let p = Polynomial::new(coeffs.to_vec())?;
    let sols = solve_real_roots(&p, tol)?;
    println!("p(x) = {p}");
    if sols.is_empty() {
        println!("no real roots in the searchable range");
        return Ok(EXIT_OK);
    }
    let mut results = BTreeMap::new();
    for (k, s) in sols.iter().enumerate() {
        println!("  x{k} = {} (theta = {:.6}°)", s.root, s.theta.to_degrees());
        results.insert(format!("root{k}"), s.root);
    }
    let chosen = sols
        .get(root)
        .ok_or_else(|| Failure::usage(format!("--root {root} but only {} roots", sols.len())))?;
    println!("trace constructs x{root}");
    let trace = lill_trace(&p, chosen)?;
    finish(
        format!("solve {p}"),
        results,
        fold_budget(p.degree()),
        &trace,
        out,
        tol,
    )
}

fn numbers(v: &Value, what: &str, len: usize) -> Result<Vec<f64>, Failure> {
    let bad = || Failure::usage(format!("each {what} must be an array of {len} numbers"));
    let arr = v.as_array().filter(|a| a.len() == len).ok_or_else(bad)?;
    arr.iter().map(|x| x.as_f64().ok_or_else(bad)).collect()
}

fn parse_givens(id: u8, text: &str) -> Result<AxiomInstance, Failure> {
    let doc: Value =
        serde_json::from_str(text).map_err(|e| Failure::usage(format!("invalid JSON: {e}")))?;
    if let Some(op) = doc.get("op").and_then(Value::as_u64) {
        if op != u64::from(id) {
            return Err(Failure::usage(format!(
                "file is for operation {op}, not {id}"
            )));
        }
    }
    let list = |key: &str| -> Vec<Value> {
        doc.get(key)
            .and_then(Value::as_array)
            .cloned()
            .unwrap_or_default()
    };
    let points = list("points")
        .iter()
        .map(|v| numbers(v, "point", 2).map(|c| Point::new(c[0], c[1])))
        .collect::<Result<Vec<_>, _>>()?;
    let lines = list("lines")
        .iter()
        .map(|v| {
            let c = numbers(v, "line", 3)?;
            Line::new(c[0], c[1], c[2]).map_err(Failure::from)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AxiomInstance::new(id, points, lines)?)
}

fn axiom(id: u8, input: &Path, out: Option<&Path>, svg: Option<&Path>, tol: &Tolerance) -> Outcome {
    let text = fs::read_to_string(input)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", input.display())))?;
    let inst = parse_givens(id, &text)?;
    let sol = solve_axiom(&inst, tol)?;
    match sol.multiplicity {
        Multiplicity::Infinite => println!("operation {id}: infinitely many folds"),
        Multiplicity::Empty => println!("operation {id}: no fold"),
        Multiplicity::Finite => {
            println!("operation {id}: {} fold(s)", sol.folds.len());
            for f in &sol.folds {
                println!("  {f}");
            }
        }
    }
    let trace = solution_trace(&inst, &sol);
    if trace.is_empty() {
        if out.is_some() || svg.is_some() {
            eprintln!("no finite fold set; no trace written");
        }
        return Ok(EXIT_OK);
    }
    let results = sol
        .folds
        .iter()
        .enumerate()
        .flat_map(|(k, f)| {
            [
                (format!("fold{k}.a"), f.a()),
                (format!("fold{k}.b"), f.b()),
                (format!("fold{k}.c"), f.c()),
            ]
        })
        .collect();
    let artifacts = Artifacts {
        json: out.map(Path::to_path_buf),
        svg: svg.map(Path::to_path_buf),
    };
    finish(format!("axiom {id}"), results, 1, &trace, &artifacts, tol)
}
