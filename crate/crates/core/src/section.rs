//! Division of an angle into `m` equal parts.
//!
//! An angle `θ` is carried as a line through `O`. Folding it onto the
//! x-axis and dropping a perpendicular yields `cos θ`; the multiple-angle
//! equation `T_p(x) = cos θ` is solved by Lill's method, and the largest
//! root `cos(θ/p)` is turned back into a line through `O`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::axioms::{fold_step, solve_axiom, AxiomInstance, Names};
use crate::error::{Error, Result};
use crate::geom::{
    angle_of, line_at_angle, normalize_angle, perpendicular_through, reflect_line, reflect_point,
    Line, Point, Tolerance,
};
use crate::lill::{lill_trace, solve_real_roots};
use crate::numtheory::{factorize, folds_for_prime, is_prime};
use crate::poly::Polynomial;
use crate::trace::{names, FoldStep, FoldTrace, StepKind};

/// Name of the given line carrying the input angle of a section trace.
pub const INPUT_LINE: &str = "ell";
/// Name of the fold carrying the output angle of [`unproject_cos`].
pub const UNPROJECT_OUT: &str = "out";
/// Name of the point `(x, 0)` given to [`unproject_cos`].
pub const UNPROJECT_IN: &str = "X";
/// Name of the output line of a [`p_sect`] trace.
pub const P_SECT_OUT: &str = "unproject.out";

/// How `m_sect` breaks `m` into prime steps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionPlan {
    pub m: u64,
    /// Prime factors of `m` with multiplicity, ascending.
    pub prime_chain: Vec<u64>,
    /// Fold width sufficient for the whole chain.
    pub required_n: u64,
    pub per_step_budgets: Vec<u64>,
}

pub fn section_plan(m: u64) -> Result<SectionPlan> {
    if m < 2 {
        return Err(Error::OutOfDomain(format!("cannot divide into {m} parts")));
    }
    let prime_chain = factorize(m)?.prime_chain();
    let per_step_budgets: Vec<u64> = prime_chain.iter().map(|&p| folds_for_prime(p)).collect();
    Ok(SectionPlan {
        m,
        required_n: per_step_budgets.iter().copied().max().unwrap_or(1),
        prime_chain,
        per_step_budgets,
    })
}

/// One angle in its three interchangeable forms.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngleValue {
    pub theta: f64,
    pub as_line: Line,
    pub as_cos_point: Point,
}

impl AngleValue {
    /// `theta` must lie in `(0, 2π)`.
    pub fn new(theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta < 2.0 * PI) {
            return Err(Error::OutOfDomain(format!(
                "angle {theta} is not in (0, 2π)"
            )));
        }
        Ok(Self {
            theta,
            as_line: line_at_angle(theta, Point::ORIGIN),
            as_cos_point: Point::new(theta.cos(), 0.0),
        })
    }
}

/// `T_p`, from `T_0 = 1`, `T_1 = x`, `T_{k+1} = 2x·T_k − T_{k−1}`.
pub fn chebyshev(p: usize) -> Polynomial {
    // Ascending coefficients.
    let mut prev: Vec<i128> = vec![1];
    let mut cur: Vec<i128> = vec![0, 1];
    if p == 0 {
        return Polynomial::from_integers(&prev);
    }
    for _ in 1..p {
        let mut next = vec![0i128; cur.len() + 1];
        for (i, &c) in cur.iter().enumerate() {
            next[i + 1] += 2 * c;
        }
        for (i, &c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur.reverse();
    Polynomial::from_integers(&cur)
}

fn frame_with_input(ell: Line) -> FoldTrace {
    let mut t = FoldTrace::with_frame();
    t.given_line(INPUT_LINE, ell);
    t
}

/// Folds the line `ell` through `O` onto the x-axis and drops the image of
/// `U` perpendicularly, giving `P = (cos θ, 0)`.
///
/// The trace takes `ell` as the given named [`INPUT_LINE`]; `P` is derived
/// as `P`. A line along the x-axis gives `U` itself and no folds.
pub fn project_cos(ell: &Line, tol: &Tolerance) -> Result<(Point, FoldTrace)> {
    if ell.c().abs() > tol.eps_incidence {
        return Err(Error::Precondition(format!(
            "{ell} does not pass through O"
        )));
    }
    let mut trace = frame_with_input(*ell);
    let theta = angle_of(ell);
    if ell.a().abs() <= tol.eps_incidence {
        return Ok((Point::UNIT_X, trace));
    }
    let chi1 = line_at_angle(theta / 2.0, Point::ORIGIN);
    let q = reflect_point(Point::UNIT_X, &chi1);
    trace.push(
        FoldStep::new(StepKind::Axiom { op: 2 })
            .fold("chi1", chi1)
            .point("Q'", q)
            .maps_line("chi1", INPUT_LINE, names::X_AXIS)
            .maps("chi1", names::UNIT, "Q'")
            .on("Q'", INPUT_LINE),
    );
    let chi2 = perpendicular_through(&Line::X_AXIS, q);
    let p = Point::new(q.x, 0.0);
    trace.push(
        FoldStep::new(StepKind::Projection)
            .fold("chi2", chi2)
            .point("P", p)
            .on("Q'", "chi2")
            .on("P", "chi2")
            .on("P", names::X_AXIS)
            .maps_line("chi2", names::X_AXIS, names::X_AXIS),
    );
    Ok((p, trace))
}

/// Projection of the straight angle: folding along the y-axis sends `U` to
/// `(−1, 0)`.
fn project_straight() -> (Point, FoldTrace) {
    let mut trace = frame_with_input(Line::X_AXIS);
    let p = Point::new(-1.0, 0.0);
    trace.push(
        FoldStep::new(StepKind::Projection)
            .fold("chi2", Line::Y_AXIS)
            .point("P", p)
            .on(names::ORIGIN, "chi2")
            .maps("chi2", names::UNIT, "P")
            .on("P", names::X_AXIS)
            .maps_line("chi2", names::X_AXIS, names::X_AXIS),
    );
    (p, trace)
}

/// Line through `O` at angle `arccos x`, built from the given point
/// `X = (x, 0)`.
///
/// A vertical fold through `X` is followed by the fold through `O` placing
/// `U` onto it (the image above the x-axis is kept), and the fold through
/// `O` and that image. The output fold is named [`UNPROJECT_OUT`].
pub fn unproject_cos(x: f64, tol: &Tolerance) -> Result<(Line, FoldTrace)> {
    if !x.is_finite() || x.abs() > 1.0 + tol.eps_incidence {
        return Err(Error::OutOfDomain(format!("{x} is not a cosine")));
    }
    let x = x.clamp(-1.0, 1.0);
    let mut trace = FoldTrace::with_frame();
    let xp = Point::new(x, 0.0);
    trace.given_point(UNPROJECT_IN, xp);
    if x >= 1.0 {
        return Ok((Line::X_AXIS, trace));
    }

    let vert = AxiomInstance::new(5, vec![xp], vec![Line::X_AXIS])?;
    let v = solve_axiom(&vert, tol)?
        .folds
        .first()
        .copied()
        .ok_or_else(|| Error::NumericFailure("no vertical fold".into()))?;
    trace.push(fold_step(
        &vert,
        &v,
        "v",
        &Names::new(&[UNPROJECT_IN], &[names::X_AXIS]),
    ));

    let onto = AxiomInstance::new(6, vec![Point::UNIT_X, Point::ORIGIN], vec![v])?;
    let w = solve_axiom(&onto, tol)?
        .folds
        .into_iter()
        .max_by(|a, b| {
            reflect_point(Point::UNIT_X, a)
                .y
                .total_cmp(&reflect_point(Point::UNIT_X, b).y)
        })
        .ok_or_else(|| Error::NumericFailure(format!("cannot place U onto x = {x}")))?;
    trace.push(fold_step(
        &onto,
        &w,
        "w",
        &Names::new(&[names::UNIT, names::ORIGIN], &["v"]),
    ));

    let q = reflect_point(Point::UNIT_X, &w);
    let through = AxiomInstance::new(4, vec![Point::ORIGIN, q], vec![])?;
    let out = solve_axiom(&through, tol)?
        .folds
        .first()
        .copied()
        .ok_or_else(|| Error::NumericFailure("image of U fell onto O".into()))?;
    trace.push(fold_step(
        &through,
        &out,
        UNPROJECT_OUT,
        &Names::new(&[names::ORIGIN, "w.P'"], &[]),
    ));
    Ok((out, trace))
}

/// Angle of the unprojected line, read off the image of `U`.
fn unprojected_angle(trace: &FoldTrace) -> f64 {
    trace.find_point("w.P'").map_or(0.0, |q| q.y.atan2(q.x))
}

/// Divides `theta ∈ (0, π]` into `p` equal parts, `p` prime.
///
/// The trace starts from the given line [`INPUT_LINE`] at `theta` and ends
/// with the fold [`P_SECT_OUT`] at `theta / p`.
pub fn p_sect(theta: f64, p: u64, tol: &Tolerance) -> Result<(f64, FoldTrace)> {
    if !is_prime(p) {
        return Err(Error::OutOfDomain(format!("{p} is not prime")));
    }
    if !(theta > 0.0 && theta <= PI) {
        return Err(Error::OutOfDomain(format!(
            "angle {theta} is not in (0, π]"
        )));
    }
    let ell = line_at_angle(theta, Point::ORIGIN);
    let proj_trace = if theta == PI {
        project_straight().1
    } else {
        project_cos(&ell, tol)?.1
    };
    let mut trace = frame_with_input(ell);
    trace.splice(proj_trace, "project.", &[])?;

    let eq = chebyshev(p as usize).minus_constant(theta.cos());
    let sols = solve_real_roots(&eq, tol)?;
    let best = sols
        .iter()
        .filter(|s| s.root.abs() <= 1.0 + tol.eps_report)
        .max_by(|a, b| a.root.total_cmp(&b.root))
        .ok_or_else(|| Error::NumericFailure(format!("no root of T_{p}(x) = cos θ in [-1, 1]")))?;
    trace.splice(lill_trace(&eq, best)?, "lill.", &[])?;

    let (_, un_trace) = unproject_cos(best.root, tol)?;
    let angle = if best.root >= 1.0 {
        0.0
    } else {
        unprojected_angle(&un_trace)
    };
    trace.splice(un_trace, "unproject.", &[])?;
    Ok((angle, trace))
}

/// Divides `theta` into `m` equal parts, one prime at a time in ascending
/// order.
///
/// For `theta ∈ (π, 2π)` the reflected angle `2π − θ` is divided and the
/// result reflected back, so `m` times the returned angle equals `theta`
/// modulo `2π`.
pub fn m_sect(theta: f64, m: u64, tol: &Tolerance) -> Result<(f64, FoldTrace, SectionPlan)> {
    tol.validate()?;
    let plan = section_plan(m)?;
    if !theta.is_finite() {
        return Err(Error::NonFinite(format!("angle {theta}")));
    }
    let theta = normalize_angle(theta);
    if theta == 0.0 {
        return Err(Error::OutOfDomain("cannot divide a zero angle".into()));
    }

    let ell = line_at_angle(theta, Point::ORIGIN);
    let mut trace = frame_with_input(ell);
    let reflected = theta > PI;
    let mut current = INPUT_LINE.to_string();
    let mut angle = theta;
    if reflected {
        angle = 2.0 * PI - theta;
        trace.push(mirror_step(&ell, &current, "mirror0", "ell.mirrored"));
        current = "ell.mirrored".into();
    }

    for (i, &p) in plan.prime_chain.iter().enumerate() {
        let (next, step_trace) = p_sect(angle, p, tol)?;
        let scope = format!("s{}.", i + 1);
        trace.splice(step_trace, &scope, &[(INPUT_LINE, current.as_str())])?;
        current = format!("{scope}{P_SECT_OUT}");
        angle = next;
    }

    if reflected {
        let out = trace
            .find_line(&current)
            .ok_or_else(|| Error::Structural(format!("missing line {current}")))?;
        trace.push(mirror_step(&out, &current, "mirror1", "result"));
        angle = 2.0 * PI - angle;
    }
    Ok((angle, trace, plan))
}

fn mirror_step(line: &Line, line_name: &str, fold: &str, image: &str) -> FoldStep {
    let inst = AxiomInstance {
        op: 3,
        points: vec![],
        lines: vec![Line::X_AXIS],
    };
    fold_step(
        &inst,
        &Line::X_AXIS,
        fold,
        &Names::new(&[], &[names::X_AXIS]),
    )
    .line(image, reflect_line(line, &Line::X_AXIS))
    .maps_line(fold, line_name, image)
}
