//! Regular polygons.
//!
//! For each prime power `q` dividing `m` the point `ξ_q` at angle `2π/q` on
//! the unit circle is built: odd primes climb their period tower with
//! Lill's method and are then divided further by `p`-section, powers of two
//! come from repeated bisection. The components are combined by rotations
//! with Chinese-remainder multiplicities into `ξ_m`, and the vertices are
//! its successive rotations. A rotation by `α` is a fold along the x-axis
//! followed by a fold along the line at `α/2`.

use serde::{Deserialize, Serialize};

use crate::axioms::{fold_step, solve_axiom, AxiomInstance, Names};
use crate::error::{Error, Result};
use crate::geom::{angle_of, line_through, reflect_point, Line, Point, Tolerance};
use crate::lill::{lill_trace, solve_real_roots};
use crate::numtheory::{extended_gcd, factorize, totient_report, TotientReport};
use crate::section::{p_sect, unproject_cos, INPUT_LINE, P_SECT_OUT};
use crate::tower::{build_period_tower, step_polynomial};
use crate::trace::{names, FoldStep, FoldTrace, StepKind};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolygonResult {
    pub m: u64,
    /// Counter-clockwise from `(1, 0)`.
    pub vertices: Vec<Point>,
    pub trace: FoldTrace,
    pub fold_width: usize,
    pub report: TotientReport,
}

/// `cos(2π/p)` for an odd prime `p`, one Lill solve per tower level.
pub fn construct_cos_prime(p: u64, tol: &Tolerance) -> Result<(f64, FoldTrace)> {
    tol.validate()?;
    let tower = build_period_tower(p)?;
    let mut trace = FoldTrace::with_frame();
    let steps: Vec<usize> = (0..tower.depth().max(1)).collect();
    let mut value = 0.0;
    for j in steps {
        let eq = step_polynomial(&tower, j, 0)?;
        let target = if tower.depth() == 0 {
            tower.target(0)
        } else {
            tower.target(j + 1)
        }
        .to_f64();
        let sols = solve_real_roots(&eq, tol)?;
        let best = sols
            .iter()
            .min_by(|a, b| (a.root - target).abs().total_cmp(&(b.root - target).abs()))
            .ok_or_else(|| Error::NumericFailure(format!("p = {p}, level {j}: no real root")))?;
        if (best.root - target).abs() > tol.eps_report {
            return Err(Error::NumericFailure(format!(
                "p = {p}, level {j}: nearest root {} misses the period {target}",
                best.root
            )));
        }
        trace.splice(lill_trace(&eq, best)?, &format!("level{j}."), &[])?;
        value = best.root;
    }
    Ok((value / 2.0, trace))
}

/// Reflects `p` across the fold through `O` and `theta_point`.
///
/// `labels` names `[p, theta_point, fold, image]` in the returned step.
pub fn rotate_by_fold(
    p: Point,
    theta_point: Point,
    labels: [&str; 4],
    tol: &Tolerance,
) -> Result<(Point, FoldStep)> {
    if (theta_point.norm() - 1.0).abs() > tol.eps_incidence {
        return Err(Error::Precondition(format!(
            "{theta_point} is not on the unit circle"
        )));
    }
    let fold = line_through(Point::ORIGIN, theta_point, tol)?;
    let img = reflect_point(p, &fold);
    let [pn, tn, f, imgn] = labels;
    let step = FoldStep::new(StepKind::Rotation)
        .fold(f, fold)
        .point(imgn, img)
        .on(names::ORIGIN, f)
        .on(tn, f)
        .maps(f, pn, imgn);
    Ok((img, step))
}

/// A point on the unit circle at angle `2π/q`, with its trace name.
struct Generator {
    q: u64,
    name: String,
    point: Point,
}

/// Appends the two folds rotating `from` by the angle of `gen`, naming the
/// result `to`.
fn push_rotation(
    trace: &mut FoldTrace,
    from: &str,
    gen: &Generator,
    to: &str,
    tol: &Tolerance,
) -> Result<Point> {
    let p = trace
        .find_point(from)
        .ok_or_else(|| Error::Structural(format!("missing point {from}")))?;
    let (a, b) = (format!("{to}.a"), format!("{to}.b"));
    let mirrored = format!("{to}.mirror");
    let p1 = Point::new(p.x, -p.y);
    trace.push(
        FoldStep::new(StepKind::Rotation)
            .fold(&a, Line::X_AXIS)
            .point(&mirrored, p1)
            .on(names::ORIGIN, &a)
            .on(names::UNIT, &a)
            .maps(&a, from, &mirrored),
    );
    // The perpendicular bisector of U and the generator.
    let half = AxiomInstance::new(1, vec![Point::UNIT_X, gen.point], vec![])?;
    let fold = solve_axiom(&half, tol)?
        .folds
        .first()
        .copied()
        .ok_or_else(|| Error::NumericFailure(format!("generator of {} sits on U", gen.q)))?;
    let p2 = reflect_point(p1, &fold);
    trace.push(
        FoldStep::new(StepKind::Rotation)
            .fold(&b, fold)
            .point(to, p2)
            .maps(&b, names::UNIT, &gen.name)
            .maps(&b, &mirrored, to),
    );
    Ok(p2)
}

/// `ξ` for `q = 2^a` by repeated bisection, starting from the y-axis.
fn power_of_two(trace: &mut FoldTrace, a: u32, tol: &Tolerance) -> Result<Generator> {
    let scope = format!("q{}.", 1u64 << a);
    let y_inst = AxiomInstance::new(5, vec![Point::ORIGIN], vec![Line::X_AXIS])?;
    let mut half = solve_axiom(&y_inst, tol)?.folds[0];
    let mut half_name = format!("{scope}h1");
    let mut xi_name = format!("{scope}xi1");
    let mut xi = reflect_point(Point::UNIT_X, &half);
    trace.push(
        fold_step(
            &y_inst,
            &half,
            &half_name,
            &Names::new(&[names::ORIGIN], &[names::X_AXIS]),
        )
        .point(&xi_name, xi)
        .maps(&half_name, names::UNIT, &xi_name),
    );
    for k in 2..=a {
        let inst = AxiomInstance::new(2, vec![], vec![Line::X_AXIS, half])?;
        let want = angle_of(&half) / 2.0;
        let next = solve_axiom(&inst, tol)?
            .folds
            .into_iter()
            .min_by(|u, v| {
                (angle_of(u) - want)
                    .abs()
                    .total_cmp(&(angle_of(v) - want).abs())
            })
            .ok_or_else(|| Error::NumericFailure("no angle bisector".into()))?;
        let name = format!("{scope}h{k}");
        let xn = format!("{scope}xi{k}");
        xi = reflect_point(Point::UNIT_X, &next);
        trace.push(
            fold_step(
                &inst,
                &next,
                &name,
                &Names::new(&[], &[names::X_AXIS, &half_name]),
            )
            .point(&xn, xi)
            .maps(&name, names::UNIT, &xn),
        );
        half = next;
        half_name = name;
        xi_name = xn;
    }
    Ok(Generator {
        q: 1u64 << a,
        name: xi_name,
        point: xi,
    })
}

/// `ξ` for `q = p^a`, `p` odd: the period tower gives `cos(2π/p)`, then
/// `a − 1` further `p`-sections.
fn odd_prime_power(trace: &mut FoldTrace, p: u64, a: u32, tol: &Tolerance) -> Result<Generator> {
    let q = p.pow(a);
    let scope = format!("q{q}.");
    let (c, cos_trace) = construct_cos_prime(p, tol)?;
    trace.splice(cos_trace, &format!("{scope}cos."), &[])?;
    let (_, un) = unproject_cos(c, tol)?;
    let un_scope = format!("{scope}p1.");
    let mut xi_name = format!("{un_scope}w.P'");
    let mut line_name = format!("{un_scope}out");
    trace.splice(un, &un_scope, &[])?;
    let mut xi = trace.find_point(&xi_name).expect("unprojected point");
    let mut angle = xi.angle();
    for k in 2..=a {
        let (next, sect) = p_sect(angle, p, tol)?;
        let s = format!("{scope}p{k}.");
        trace.splice(sect, &s, &[(INPUT_LINE, line_name.as_str())])?;
        line_name = format!("{s}{P_SECT_OUT}");
        xi_name = format!("{s}unproject.w.P'");
        xi = trace.find_point(&xi_name).expect("unprojected point");
        angle = next;
    }
    Ok(Generator {
        q,
        name: xi_name,
        point: xi,
    })
}

/// Builds the regular `m`-gon inscribed in the unit circle with one vertex
/// at `(1, 0)`.
pub fn build_polygon(m: u64, tol: &Tolerance) -> Result<PolygonResult> {
    tol.validate()?;
    if m < 3 {
        return Err(Error::OutOfDomain(format!(
            "no regular polygon with {m} sides"
        )));
    }
    let report = totient_report(m)?;
    let fm = factorize(m)?;
    let mut trace = FoldTrace::with_frame();

    let mut gens = Vec::new();
    for &(p, a) in &fm.factors {
        gens.push(if p == 2 {
            power_of_two(&mut trace, a, tol)?
        } else {
            odd_prime_power(&mut trace, p, a, tol)?
        });
    }

    // Σ c_i·(m/q_i) ≡ 1 (mod m), so Σ c_i·(2π/q_i) ≡ 2π/m.
    let xi = if gens.len() == 1 {
        gens.pop().unwrap()
    } else {
        let mut current = names::UNIT.to_string();
        let mut point = Point::UNIT_X;
        let mut count = 0;
        for g in &gens {
            let rest = (m / g.q) as i64;
            let (_, inv, _) = extended_gcd(rest, g.q as i64);
            let c = inv.rem_euclid(g.q as i64);
            for _ in 0..c {
                count += 1;
                let to = format!("combine{count}");
                point = push_rotation(&mut trace, &current, g, &to, tol)?;
                current = to;
            }
        }
        Generator {
            q: m,
            name: current,
            point,
        }
    };

    let mut vertex_names = vec![names::UNIT.to_string(), xi.name.clone()];
    let mut vertices = vec![Point::UNIT_X, xi.point];
    for k in 2..m {
        let to = format!("V{k}");
        let prev = vertex_names.last().unwrap().clone();
        vertices.push(push_rotation(&mut trace, &prev, &xi, &to, tol)?);
        vertex_names.push(to);
    }

    for k in 0..m as usize {
        let (a, b) = (&vertex_names[k], &vertex_names[(k + 1) % m as usize]);
        let inst =
            AxiomInstance::new(4, vec![vertices[k], vertices[(k + 1) % m as usize]], vec![])?;
        let edge = solve_axiom(&inst, tol)?
            .folds
            .first()
            .copied()
            .ok_or_else(|| Error::NumericFailure(format!("vertices {a} and {b} coincide")))?;
        let name = format!("edge{k}");
        let mut step = fold_step(&inst, &edge, &name, &Names::new(&[a, b], &[]));
        step.kind = StepKind::Edge;
        trace.push(step);
    }

    Ok(PolygonResult {
        m,
        fold_width: trace.fold_width(),
        vertices,
        trace,
        report,
    })
}
