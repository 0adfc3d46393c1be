//! Fold traces: an ordered record of fold steps, the incidences each step
//! claims, and the points and lines it introduces.
//!
//! Every construction in the crate returns a [`FoldTrace`]; [`verify`]
//! re-derives each declared incidence from the stored coordinates without
//! consulting the code that produced them.

mod json;
mod svg;
mod verify;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Line, Point};

pub use json::{emit_json, load_json, ConstructionReport, JsonDocument, SCHEMA_VERSION};
pub use svg::{emit_svg, Viewport};
pub use verify::{verify, Failure, VerificationReport};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Named<T> {
    pub name: String,
    #[serde(flatten)]
    pub value: T,
}

impl<T> Named<T> {
    pub fn new(name: impl Into<String>, value: T) -> Self {
        Self {
            name: name.into(),
            value,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum StepKind {
    /// One of the eight single-fold operations.
    Axiom { op: u8 },
    /// Simultaneous folds realizing one Lill shooting path.
    LillBundle,
    /// Fold dropping a point perpendicularly onto the x-axis.
    Projection,
    /// Reflection through the origin used to rotate points.
    Rotation,
    /// Crease joining two consecutive polygon vertices.
    Edge,
}

/// A declared incidence between named entities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Constraint {
    PointOnLine {
        point: String,
        line: String,
    },
    PointMapsToPoint {
        fold: String,
        from: String,
        to: String,
    },
    LineMapsToLine {
        fold: String,
        from: String,
        to: String,
    },
}

impl Constraint {
    fn renamed(&self, f: &impl Fn(&str) -> String) -> Constraint {
        match self {
            Constraint::PointOnLine { point, line } => Constraint::PointOnLine {
                point: f(point),
                line: f(line),
            },
            Constraint::PointMapsToPoint { fold, from, to } => Constraint::PointMapsToPoint {
                fold: f(fold),
                from: f(from),
                to: f(to),
            },
            Constraint::LineMapsToLine { fold, from, to } => Constraint::LineMapsToLine {
                fold: f(fold),
                from: f(from),
                to: f(to),
            },
        }
    }
}

/// One fold step: its simultaneous fold lines and the incidences they satisfy.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FoldStep {
    pub kind: StepKind,
    pub folds: Vec<Named<Line>>,
    pub constraints: Vec<Constraint>,
    #[serde(default)]
    pub derived_points: Vec<Named<Point>>,
    #[serde(default)]
    pub derived_lines: Vec<Named<Line>>,
}

impl FoldStep {
    pub fn new(kind: StepKind) -> Self {
        Self {
            kind,
            folds: Vec::new(),
            constraints: Vec::new(),
            derived_points: Vec::new(),
            derived_lines: Vec::new(),
        }
    }

    pub fn fold(mut self, name: impl Into<String>, line: Line) -> Self {
        self.folds.push(Named::new(name, line));
        self
    }

    pub fn point(mut self, name: impl Into<String>, p: Point) -> Self {
        self.derived_points.push(Named::new(name, p));
        self
    }

    pub fn line(mut self, name: impl Into<String>, l: Line) -> Self {
        self.derived_lines.push(Named::new(name, l));
        self
    }

    pub fn on(mut self, point: impl Into<String>, line: impl Into<String>) -> Self {
        self.constraints.push(Constraint::PointOnLine {
            point: point.into(),
            line: line.into(),
        });
        self
    }

    pub fn maps(
        mut self,
        fold: impl Into<String>,
        from: impl Into<String>,
        to: impl Into<String>,
    ) -> Self {
        self.constraints.push(Constraint::PointMapsToPoint {
            fold: fold.into(),
            from: from.into(),
            to: to.into(),
        });
        self
    }

    pub fn maps_line(
        mut self,
        fold: impl Into<String>,
        from: impl Into<String>,
        to: impl Into<String>,
    ) -> Self {
        self.constraints.push(Constraint::LineMapsToLine {
            fold: fold.into(),
            from: from.into(),
            to: to.into(),
        });
        self
    }

    pub fn width(&self) -> usize {
        self.folds.len()
    }
}

/// Named starting points and lines of a construction.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Givens {
    pub points: Vec<Named<Point>>,
    pub lines: Vec<Named<Line>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FoldTrace {
    pub inputs: Givens,
    pub steps: Vec<FoldStep>,
}

/// Conventional names for the shared givens.
pub mod names {
    pub const ORIGIN: &str = "O";
    pub const UNIT: &str = "U";
    pub const X_AXIS: &str = "x-axis";
}

impl FoldTrace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Trace seeded with the origin, the unit point and the x-axis.
    pub fn with_frame() -> Self {
        let mut t = Self::new();
        t.given_point(names::ORIGIN, Point::ORIGIN);
        t.given_point(names::UNIT, Point::UNIT_X);
        t.given_line(names::X_AXIS, Line::X_AXIS);
        t
    }

    pub fn given_point(&mut self, name: impl Into<String>, p: Point) -> &mut Self {
        self.inputs.points.push(Named::new(name, p));
        self
    }

    pub fn given_line(&mut self, name: impl Into<String>, l: Line) -> &mut Self {
        self.inputs.lines.push(Named::new(name, l));
        self
    }

    pub fn push(&mut self, step: FoldStep) -> &mut Self {
        self.steps.push(step);
        self
    }

    /// Largest number of simultaneous folds in any step.
    pub fn fold_width(&self) -> usize {
        self.steps.iter().map(FoldStep::width).max().unwrap_or(0)
    }

    /// Total number of fold lines across all steps.
    pub fn fold_count(&self) -> usize {
        self.steps.iter().map(FoldStep::width).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn find_point(&self, name: &str) -> Option<Point> {
        self.inputs
            .points
            .iter()
            .chain(self.steps.iter().flat_map(|s| s.derived_points.iter()))
            .find(|n| n.name == name)
            .map(|n| n.value)
    }

    pub fn find_line(&self, name: &str) -> Option<Line> {
        self.inputs
            .lines
            .iter()
            .chain(
                self.steps
                    .iter()
                    .flat_map(|s| s.folds.iter().chain(s.derived_lines.iter())),
            )
            .find(|n| n.name == name)
            .map(|n| n.value)
    }

    fn input_point(&self, name: &str) -> Option<Point> {
        self.inputs
            .points
            .iter()
            .find(|n| n.name == name)
            .map(|n| n.value)
    }

    fn input_line(&self, name: &str) -> Option<Line> {
        self.inputs
            .lines
            .iter()
            .find(|n| n.name == name)
            .map(|n| n.value)
    }

    /// Appends `other` after this trace.
    ///
    /// Entities introduced by `other` are renamed to `scope + name`. An input
    /// of `other` listed in `bindings` as `(other_name, own_name)` is
    /// replaced by the named entity of this trace; an unbound input that
    /// this trace already has with the same name and value is shared.
    pub fn splice(
        &mut self,
        other: FoldTrace,
        scope: &str,
        bindings: &[(&str, &str)],
    ) -> Result<()> {
        let mut map: HashMap<String, String> = HashMap::new();
        for (theirs, ours) in bindings {
            let known = self.find_point(ours).is_some() || self.find_line(ours).is_some();
            if !known {
                return Err(Error::Structural(format!(
                    "binding target '{ours}' is not defined"
                )));
            }
            map.insert((*theirs).to_string(), (*ours).to_string());
        }
        for np in other.inputs.points {
            if map.contains_key(&np.name) {
                continue;
            }
            if self.input_point(&np.name) == Some(np.value) {
                map.insert(np.name.clone(), np.name);
            } else {
                let renamed = format!("{scope}{}", np.name);
                map.insert(np.name, renamed.clone());
                self.inputs.points.push(Named::new(renamed, np.value));
            }
        }
        for nl in other.inputs.lines {
            if map.contains_key(&nl.name) {
                continue;
            }
            if self.input_line(&nl.name) == Some(nl.value) {
                map.insert(nl.name.clone(), nl.name);
            } else {
                let renamed = format!("{scope}{}", nl.name);
                map.insert(nl.name, renamed.clone());
                self.inputs.lines.push(Named::new(renamed, nl.value));
            }
        }
        let rename = |n: &str| map.get(n).cloned().unwrap_or_else(|| format!("{scope}{n}"));
        for step in other.steps {
            let scoped = |v: Vec<Named<Line>>| -> Vec<Named<Line>> {
                v.into_iter()
                    .map(|n| Named::new(format!("{scope}{}", n.name), n.value))
                    .collect()
            };
            self.steps.push(FoldStep {
                kind: step.kind,
                folds: scoped(step.folds),
                constraints: step
                    .constraints
                    .iter()
                    .map(|c| c.renamed(&rename))
                    .collect(),
                derived_points: step
                    .derived_points
                    .into_iter()
                    .map(|n| Named::new(format!("{scope}{}", n.name), n.value))
                    .collect(),
                derived_lines: scoped(step.derived_lines),
            });
        }
        Ok(())
    }
}
