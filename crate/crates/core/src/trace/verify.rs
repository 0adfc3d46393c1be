use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{Constraint, FoldTrace};
use crate::error::{Error, Result};
use crate::geom::{reflect_line, reflect_point, Line, Point, Tolerance};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub step: usize,
    pub constraint: Constraint,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub ok: bool,
    pub max_residual: f64,
    pub failures: Vec<Failure>,
    pub constraints_checked: usize,
}

#[derive(Clone, Copy)]
enum Entity {
    Point(Point),
    Line(Line),
}

struct Scope {
    table: HashMap<String, Entity>,
}

impl Scope {
    fn define(&mut self, name: &str, e: Entity, step: Option<usize>) -> Result<()> {
        if self.table.insert(name.to_string(), e).is_some() {
            let at = step.map_or("inputs".to_string(), |s| format!("step {s}"));
            return Err(Error::Structural(format!(
                "name '{name}' redefined in {at}"
            )));
        }
        Ok(())
    }

    fn point(&self, name: &str, step: usize) -> Result<Point> {
        match self.table.get(name) {
            Some(Entity::Point(p)) => Ok(*p),
            Some(Entity::Line(_)) => Err(Error::Structural(format!(
                "step {step}: '{name}' is a line where a point is required"
            ))),
            None => Err(Error::Structural(format!(
                "step {step}: dangling reference '{name}'"
            ))),
        }
    }

    fn line(&self, name: &str, step: usize) -> Result<Line> {
        match self.table.get(name) {
            Some(Entity::Line(l)) => Ok(*l),
            Some(Entity::Point(_)) => Err(Error::Structural(format!(
                "step {step}: '{name}' is a point where a line is required"
            ))),
            None => Err(Error::Structural(format!(
                "step {step}: dangling reference '{name}'"
            ))),
        }
    }
}

fn scale_of(points: &[Point]) -> f64 {
    points.iter().fold(1.0f64, |m, p| m.max(p.norm()))
}

/// Residual of one incidence, relative to the size of the entities involved
/// (never below an absolute scale of 1).
fn residual(c: &Constraint, scope: &Scope, step: usize) -> Result<f64> {
    Ok(match c {
        Constraint::PointOnLine { point, line } => {
            let p = scope.point(point, step)?;
            let l = scope.line(line, step)?;
            l.eval(p).abs() / scale_of(&[p])
        }
        Constraint::PointMapsToPoint { fold, from, to } => {
            let f = scope.line(fold, step)?;
            let p = scope.point(from, step)?;
            let q = scope.point(to, step)?;
            reflect_point(p, &f).distance(q) / scale_of(&[p, q])
        }
        Constraint::LineMapsToLine { fold, from, to } => {
            let f = scope.line(fold, step)?;
            let s = scope.line(from, step)?;
            let t = scope.line(to, step)?;
            let img = reflect_line(&s, &f);
            let scale = 1.0f64.max(img.c().abs()).max(t.c().abs());
            let same = (img.a() - t.a())
                .abs()
                .max((img.b() - t.b()).abs())
                .max((img.c() - t.c()).abs() / scale);
            let flipped = (img.a() + t.a())
                .abs()
                .max((img.b() + t.b()).abs())
                .max((img.c() + t.c()).abs() / scale);
            same.min(flipped)
        }
    })
}

/// Recomputes every declared incidence of `trace` from its coordinates.
///
/// Returns an error for structural defects (dangling or duplicated names,
/// steps without folds); numeric failures are reported in the result.
pub fn verify(trace: &FoldTrace, tol: &Tolerance) -> Result<VerificationReport> {
    let mut scope = Scope {
        table: HashMap::new(),
    };
    for np in &trace.inputs.points {
        scope.define(&np.name, Entity::Point(np.value), None)?;
    }
    for nl in &trace.inputs.lines {
        scope.define(&nl.name, Entity::Line(nl.value), None)?;
    }
    let mut max_residual = 0.0f64;
    let mut failures = Vec::new();
    let mut checked = 0;
    for (i, step) in trace.steps.iter().enumerate() {
        if step.folds.is_empty() {
            return Err(Error::Structural(format!("step {i} has no fold lines")));
        }
        for nl in step.folds.iter().chain(step.derived_lines.iter()) {
            scope.define(&nl.name, Entity::Line(nl.value), Some(i))?;
        }
        for np in &step.derived_points {
            scope.define(&np.name, Entity::Point(np.value), Some(i))?;
        }
        for c in &step.constraints {
            let r = residual(c, &scope, i)?;
            checked += 1;
            let r = if r.is_nan() { f64::INFINITY } else { r };
            max_residual = max_residual.max(r);
            if r > tol.eps_incidence {
                failures.push(Failure {
                    step: i,
                    constraint: c.clone(),
                    residual: r,
                });
            }
        }
    }
    Ok(VerificationReport {
        ok: max_residual <= tol.eps_incidence,
        max_residual,
        failures,
        constraints_checked: checked,
    })
}
