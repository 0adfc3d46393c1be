//! The eight single-fold operations.
//!
//! | op | givens      | fold                                                    |
//! |----|-------------|---------------------------------------------------------|
//! | 1  | P, Q        | places P onto Q                                         |
//! | 2  | r, s        | aligns r and s                                          |
//! | 3  | r           | along r                                                 |
//! | 4  | P, Q        | through P and Q                                         |
//! | 5  | r, P        | through P, reflecting r onto itself                     |
//! | 6  | r, P, Q     | through Q, placing P onto r                             |
//! | 7  | r, s, P, Q  | placing P onto r and Q onto s                           |
//! | 8  | r, s, P     | placing P onto r, reflecting s onto itself              |

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{
    angle_of, intersect, line_through, perpendicular_through, reflect_point, Intersection, Line,
    Point, Tolerance,
};
use crate::poly::solve_cubic;
use crate::trace::{FoldStep, FoldTrace, StepKind};

/// Givens of one operation, in the order listed in the module table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomInstance {
    pub op: u8,
    #[serde(default)]
    pub points: Vec<Point>,
    #[serde(default)]
    pub lines: Vec<Line>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Multiplicity {
    Finite,
    Infinite,
    Empty,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomSolution {
    /// Admissible folds sorted by `(angle, offset)`; empty unless finite.
    pub folds: Vec<Line>,
    pub multiplicity: Multiplicity,
}

impl AxiomSolution {
    fn finite(mut folds: Vec<Line>) -> Self {
        folds.sort_by(fold_order);
        if folds.is_empty() {
            Self::empty()
        } else {
            Self {
                folds,
                multiplicity: Multiplicity::Finite,
            }
        }
    }

    fn empty() -> Self {
        Self {
            folds: Vec::new(),
            multiplicity: Multiplicity::Empty,
        }
    }

    fn infinite() -> Self {
        Self {
            folds: Vec::new(),
            multiplicity: Multiplicity::Infinite,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolutionCount {
    Finite(usize),
    Infinite,
}

/// Largest finite solution count of each operation.
pub const MAX_SOLUTIONS: [usize; 8] = [1, 2, 1, 1, 1, 2, 3, 1];

fn fold_order(a: &Line, b: &Line) -> Ordering {
    angle_of(a)
        .total_cmp(&angle_of(b))
        .then(a.c().total_cmp(&b.c()))
}

/// Number of points and lines each operation takes.
pub fn arity(op: u8) -> Result<(usize, usize, &'static str)> {
    Ok(match op {
        1 => (2, 0, "points P, Q"),
        2 => (0, 2, "lines r, s"),
        3 => (0, 1, "line r"),
        4 => (2, 0, "points P, Q"),
        5 => (1, 1, "line r and point P"),
        6 => (2, 1, "line r and points P, Q"),
        7 => (2, 2, "lines r, s and points P, Q"),
        8 => (1, 2, "lines r, s and point P"),
        other => return Err(Error::UnknownOperation(other)),
    })
}

impl AxiomInstance {
    pub fn new(op: u8, points: Vec<Point>, lines: Vec<Line>) -> Result<Self> {
        let inst = Self { op, points, lines };
        inst.check_arity()?;
        Ok(inst)
    }

    pub fn check_arity(&self) -> Result<()> {
        let (np, nl, expected) = arity(self.op)?;
        if self.points.len() != np || self.lines.len() != nl {
            return Err(Error::Arity {
                op: self.op,
                expected,
            });
        }
        if let Some(p) = self.points.iter().find(|p| !p.is_finite()) {
            return Err(Error::NonFinite(format!("point {p}")));
        }
        Ok(())
    }
}

fn distinct(p: Point, q: Point, tol: &Tolerance, what: &str) -> Result<()> {
    if p.distance(q) <= tol.eps_incidence {
        return Err(Error::Precondition(format!(
            "{what}: P and Q must be distinct"
        )));
    }
    Ok(())
}

/// All folds satisfying the operation's incidences.
pub fn solve_axiom(inst: &AxiomInstance, tol: &Tolerance) -> Result<AxiomSolution> {
    inst.check_arity()?;
    let pts = &inst.points;
    let lns = &inst.lines;
    match inst.op {
        1 => {
            distinct(pts[0], pts[1], tol, "operation 1")?;
            Ok(AxiomSolution::finite(vec![bisector(pts[0], pts[1])?]))
        }
        2 => Ok(align_lines(&lns[0], &lns[1], tol)),
        3 => Ok(AxiomSolution::finite(vec![lns[0]])),
        4 => {
            distinct(pts[0], pts[1], tol, "operation 4")?;
            Ok(AxiomSolution::finite(vec![line_through(
                pts[0], pts[1], tol,
            )?]))
        }
        5 => Ok(AxiomSolution::finite(vec![perpendicular_through(
            &lns[0], pts[0],
        )])),
        6 => through_point_onto_line(&lns[0], pts[0], pts[1], tol),
        7 => beloch(&lns[0], &lns[1], pts[0], pts[1], tol),
        8 => onto_line_preserving(&lns[0], &lns[1], pts[0], tol),
        other => Err(Error::UnknownOperation(other)),
    }
}

pub fn count_solutions(inst: &AxiomInstance, tol: &Tolerance) -> Result<SolutionCount> {
    let sol = solve_axiom(inst, tol)?;
    Ok(match sol.multiplicity {
        Multiplicity::Infinite => SolutionCount::Infinite,
        _ => SolutionCount::Finite(sol.folds.len()),
    })
}

/// Perpendicular bisector of `p` and `q`.
fn bisector(p: Point, q: Point) -> Result<Line> {
    let d = q - p;
    let n = d * (1.0 / d.norm());
    Line::with_normal(n, p.midpoint(q))
}

fn align_lines(r: &Line, s: &Line, tol: &Tolerance) -> AxiomSolution {
    match intersect(r, s, tol) {
        Intersection::Coincident => AxiomSolution::infinite(),
        Intersection::Parallel => {
            let sign = if r.normal().dot(s.normal()) >= 0.0 {
                1.0
            } else {
                -1.0
            };
            let mid = Line::new(r.a(), r.b(), 0.5 * (r.c() + sign * s.c())).expect("unit normal");
            AxiomSolution::finite(vec![mid])
        }
        Intersection::Point(_) => {
            let folds = [-1.0, 1.0]
                .iter()
                .filter_map(|&k| {
                    Line::new(r.a() + k * s.a(), r.b() + k * s.b(), r.c() + k * s.c()).ok()
                })
                .collect();
            AxiomSolution::finite(folds)
        }
    }
}

/// Operation 6. The image of `p` stays on the circle about `q` through `p`,
/// so candidates are that circle's intersections with `r`.
///
/// When the half-chord squared is within `eps_incidence` of zero the circle
/// is taken as tangent and the single fold through the foot of `q` on `r`
/// is returned.
fn through_point_onto_line(r: &Line, p: Point, q: Point, tol: &Tolerance) -> Result<AxiomSolution> {
    if r.eval(p).abs() <= tol.eps_incidence {
        return Ok(AxiomSolution::infinite());
    }
    let radius2 = (p - q).dot(p - q);
    let d = r.eval(q);
    let foot = r.project(q);
    let half_chord2 = radius2 - d * d;
    let images = if half_chord2.abs() <= tol.eps_incidence {
        vec![foot]
    } else if half_chord2 < 0.0 {
        Vec::new()
    } else {
        let h = half_chord2.sqrt();
        let t = r.direction();
        vec![foot + t * h, foot - t * h]
    };
    let folds = images
        .into_iter()
        .map(|img| bisector(p, img))
        .collect::<Result<Vec<_>>>()?;
    Ok(AxiomSolution::finite(folds))
}

/// Coefficients `[k³, k², k, 1]` of the cubic whose real roots are the
/// slopes of the operation-7 folds.
///
/// With fold normal `n` and offset `c`, placing P on r fixes
/// `c = ρ_P / (2 n·n_r) − n·P` (ρ = signed distance to the target line);
/// substituting into the Q-onto-s condition and homogenizing gives
/// `(n·n)(ρ_Q n·n_r − ρ_P n·n_s) − 2 (n·(Q−P)) (n·n_r)(n·n_s) = 0`.
/// A fold of slope `k` has normal proportional to `(−k, 1)`; vertical
/// folds correspond to a vanishing leading coefficient.
pub fn beloch_cubic(r: &Line, s: &Line, p: Point, q: Point) -> [f64; 4] {
    let rho_p = r.eval(p);
    let rho_q = s.eval(q);
    let d = q - p;
    // Linear forms n·w with n = (−k, 1), as ascending [const, k] pairs.
    let lin = |w: Point| [w.y, -w.x];
    let nr = lin(r.normal());
    let ns = lin(s.normal());
    let nd = lin(d);
    let mul = |a: &[f64], b: &[f64]| {
        let mut out = vec![0.0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    };
    let norm2 = [1.0, 0.0, 1.0];
    let first: Vec<f64> = {
        let inner = [rho_q * nr[0] - rho_p * ns[0], rho_q * nr[1] - rho_p * ns[1]];
        mul(&norm2, &inner)
    };
    let second = mul(&mul(&nd, &nr), &ns);
    let asc: Vec<f64> = (0..4).map(|i| first[i] - 2.0 * second[i]).collect();
    [asc[3], asc[2], asc[1], asc[0]]
}

/// Operation 7 (Beloch fold).
fn beloch(r: &Line, s: &Line, p: Point, q: Point, tol: &Tolerance) -> Result<AxiomSolution> {
    if r.eval(p).abs() <= tol.eps_incidence {
        return Err(Error::Precondition("operation 7: P lies on r".into()));
    }
    if s.eval(q).abs() <= tol.eps_incidence {
        return Err(Error::Precondition("operation 7: Q lies on s".into()));
    }
    let same_lines = matches!(intersect(r, s, tol), Intersection::Coincident);
    if same_lines && p.distance(q) <= tol.eps_incidence {
        return Err(Error::Precondition(
            "operation 7: r, s coincide and P, Q coincide".into(),
        ));
    }
    let [c3, c2, c1, c0] = beloch_cubic(r, s, p, q);
    let Some(slopes) = solve_cubic(c3, c2, c1, c0) else {
        return Ok(AxiomSolution::infinite());
    };
    let mut normals: Vec<Point> = slopes
        .iter()
        .map(|&k| Point::new(-k, 1.0) * (1.0 / k.hypot(1.0)))
        .collect();
    let scale = c3.abs().max(c2.abs()).max(c1.abs()).max(c0.abs());
    if c3.abs() <= 1e-12 * scale {
        normals.push(Point::new(1.0, 0.0));
    }
    let rho_p = r.eval(p);
    let mut folds: Vec<Line> = Vec::new();
    for n in normals {
        let along_r = n.dot(r.normal());
        if along_r.abs() < 1e-12 {
            continue;
        }
        let c = rho_p / (2.0 * along_r) - n.dot(p);
        let Ok(fold) = Line::new(n.x, n.y, c) else {
            continue;
        };
        let p_img = reflect_point(p, &fold);
        let q_img = reflect_point(q, &fold);
        let scale = 1.0f64.max(p.norm()).max(q.norm());
        let ok = r.eval(p_img).abs() <= tol.eps_incidence * scale
            && s.eval(q_img).abs() <= tol.eps_incidence * scale;
        if ok && !folds.iter().any(|f| f.approx_eq(&fold, tol.eps_incidence)) {
            folds.push(fold);
        }
    }
    Ok(AxiomSolution::finite(folds))
}

/// Operation 8. Folds perpendicular to `s` move `p` parallel to `s`.
fn onto_line_preserving(r: &Line, s: &Line, p: Point, tol: &Tolerance) -> Result<AxiomSolution> {
    let t = s.direction();
    let along = r.normal().dot(t);
    let on_r = r.eval(p).abs() <= tol.eps_incidence;
    if along.abs() <= tol.eps_incidence {
        // The track of P is parallel to r: it lies on r or never meets it.
        return Ok(if on_r {
            AxiomSolution::infinite()
        } else {
            AxiomSolution::empty()
        });
    }
    if on_r {
        return Ok(AxiomSolution::finite(vec![Line::with_normal(t, p)?]));
    }
    let lambda = -r.eval(p) / along;
    let img = p + t * lambda;
    Ok(AxiomSolution::finite(vec![bisector(p, img)?]))
}

const POINT_NAMES: [&str; 2] = ["P", "Q"];
const LINE_NAMES: [&str; 2] = ["r", "s"];

/// One step recording `fold` as a solution of `inst`, with every incidence
/// of the operation declared. Givens are referred to as `P`, `Q`, `r`, `s`
/// after renaming through `names`.
pub fn fold_step(inst: &AxiomInstance, fold: &Line, fold_name: &str, names: &Names) -> FoldStep {
    let f = fold_name;
    let p = |i: usize| names.point(i);
    let l = |i: usize| names.line(i);
    let step = FoldStep::new(StepKind::Axiom { op: inst.op }).fold(f, *fold);
    let image = |i: usize| format!("{f}.{}'", POINT_NAMES[i]);
    match inst.op {
        1 => step.maps(f, p(0), p(1)),
        2 => step.maps_line(f, l(0), l(1)),
        3 => {
            let r = inst.lines[0];
            let (r1, r2) = (format!("{f}.r1"), format!("{f}.r2"));
            step.point(&r1, r.anchor())
                .point(&r2, r.anchor() + r.direction())
                .on(&r1, l(0))
                .on(&r2, l(0))
                .on(&r1, f)
                .on(&r2, f)
        }
        4 => step.on(p(0), f).on(p(1), f),
        5 => step.on(p(0), f).maps_line(f, l(0), l(0)),
        6 => step
            .point(image(0), reflect_point(inst.points[0], fold))
            .on(p(1), f)
            .maps(f, p(0), image(0))
            .on(image(0), l(0)),
        7 => step
            .point(image(0), reflect_point(inst.points[0], fold))
            .point(image(1), reflect_point(inst.points[1], fold))
            .maps(f, p(0), image(0))
            .on(image(0), l(0))
            .maps(f, p(1), image(1))
            .on(image(1), l(1)),
        _ => step
            .point(image(0), reflect_point(inst.points[0], fold))
            .maps(f, p(0), image(0))
            .on(image(0), l(0))
            .maps_line(f, l(1), l(1)),
    }
}

/// How the givens of an instance are named inside a trace.
#[derive(Clone, Debug)]
pub struct Names {
    pub points: Vec<String>,
    pub lines: Vec<String>,
}

impl Default for Names {
    fn default() -> Self {
        Self {
            points: POINT_NAMES.iter().map(|s| s.to_string()).collect(),
            lines: LINE_NAMES.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl Names {
    pub fn new(points: &[&str], lines: &[&str]) -> Self {
        Self {
            points: points.iter().map(|s| s.to_string()).collect(),
            lines: lines.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn point(&self, i: usize) -> &str {
        &self.points[i]
    }

    fn line(&self, i: usize) -> &str {
        &self.lines[i]
    }
}

/// Trace listing every admissible fold of `inst` as its own step.
///
/// The steps are alternatives sharing the same givens, not a sequence.
pub fn solution_trace(inst: &AxiomInstance, sol: &AxiomSolution) -> FoldTrace {
    let mut trace = FoldTrace::new();
    for (i, p) in inst.points.iter().enumerate() {
        trace.given_point(POINT_NAMES[i], *p);
    }
    for (i, l) in inst.lines.iter().enumerate() {
        trace.given_line(LINE_NAMES[i], *l);
    }
    let names = Names::default();
    for (i, fold) in sol.folds.iter().enumerate() {
        trace.push(fold_step(inst, fold, &format!("f{}", i + 1), &names));
    }
    trace
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::reflect_line;
    use crate::trace::verify;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn line(a: f64, b: f64, c: f64) -> Line {
        Line::new(a, b, c).unwrap()
    }

    fn solve(op: u8, points: Vec<Point>, lines: Vec<Line>) -> AxiomSolution {
        solve_axiom(&AxiomInstance::new(op, points, lines).unwrap(), &tol()).unwrap()
    }

    #[test]
    fn op1_perpendicular_bisector() {
        let s = solve(1, vec![Point::ORIGIN, Point::new(2.0, 0.0)], vec![]);
        assert_eq!(s.folds.len(), 1);
        assert!(s.folds[0].approx_eq(&line(1.0, 0.0, -1.0), 1e-12));
    }

    #[test]
    fn op2_bisectors_and_degenerate_cases() {
        let s = solve(2, vec![], vec![Line::X_AXIS, Line::Y_AXIS]);
        assert_eq!(s.folds.len(), 2);
        let want = [line(1.0, -1.0, 0.0), line(1.0, 1.0, 0.0)];
        for w in &want {
            assert!(s.folds.iter().any(|f| f.approx_eq(w, 1e-12)));
        }
        let s = solve(2, vec![], vec![Line::X_AXIS, line(0.0, -1.0, 2.0)]);
        assert_eq!(s.folds.len(), 1);
        assert!(s.folds[0].approx_eq(&line(0.0, 1.0, -1.0), 1e-12));
        let s = solve(2, vec![], vec![Line::X_AXIS, Line::X_AXIS]);
        assert_eq!(s.multiplicity, Multiplicity::Infinite);
    }

    #[test]
    fn op3_and_op4_and_op5() {
        let r = line(0.0, 1.0, -3.0);
        assert_eq!(solve(3, vec![], vec![r]).folds, vec![r]);
        let s = solve(4, vec![Point::ORIGIN, Point::new(1.0, 1.0)], vec![]);
        assert!(s.folds[0].approx_eq(&line(1.0, -1.0, 0.0), 1e-12));
        let s = solve(5, vec![Point::new(3.0, 5.0)], vec![Line::X_AXIS]);
        assert!(s.folds[0].approx_eq(&line(1.0, 0.0, -3.0), 1e-12));
    }

    #[test]
    fn op6_two_images() {
        let s = solve(
            6,
            vec![Point::new(0.0, 2.0), Point::ORIGIN],
            vec![Line::X_AXIS],
        );
        assert_eq!(s.folds.len(), 2);
        let mut images: Vec<f64> = s
            .folds
            .iter()
            .map(|f| reflect_point(Point::new(0.0, 2.0), f))
            .map(|p| {
                assert!(p.y.abs() < 1e-12);
                p.x
            })
            .collect();
        images.sort_by(f64::total_cmp);
        assert!((images[0] + 2.0).abs() < 1e-12 && (images[1] - 2.0).abs() < 1e-12);
        let want = [
            bisector(Point::new(0.0, 2.0), Point::new(2.0, 0.0)).unwrap(),
            bisector(Point::new(0.0, 2.0), Point::new(-2.0, 0.0)).unwrap(),
        ];
        for w in &want {
            assert!(s.folds.iter().any(|f| f.approx_eq(w, 1e-12)));
        }
    }

    #[test]
    fn op6_counts() {
        // |QP| = 1 < dist(Q, r) = 3: the circle misses r.
        let inst = AxiomInstance::new(
            6,
            vec![Point::new(0.0, 4.0), Point::new(0.0, 3.0)],
            vec![Line::X_AXIS],
        )
        .unwrap();
        assert_eq!(
            count_solutions(&inst, &tol()).unwrap(),
            SolutionCount::Finite(0)
        );
        // Tangent: |QP| = dist(Q, r) = 3.
        let inst = AxiomInstance::new(
            6,
            vec![Point::new(0.0, 6.0), Point::new(0.0, 3.0)],
            vec![Line::X_AXIS],
        )
        .unwrap();
        let sol = solve_axiom(&inst, &tol()).unwrap();
        assert_eq!(sol.folds.len(), 1);
        assert!(sol.folds[0].approx_eq(&line(0.0, 1.0, -3.0), 1e-12));
        // Within eps_incidence of tangency still yields the single fold.
        let inst = AxiomInstance::new(
            6,
            vec![Point::new(0.0, 6.0 + 1e-11), Point::new(0.0, 3.0)],
            vec![Line::X_AXIS],
        )
        .unwrap();
        assert_eq!(
            count_solutions(&inst, &tol()).unwrap(),
            SolutionCount::Finite(1)
        );
        // P on r is reported as the infinite class.
        let inst =
            AxiomInstance::new(6, vec![Point::UNIT_X, Point::ORIGIN], vec![Line::X_AXIS]).unwrap();
        assert_eq!(
            count_solutions(&inst, &tol()).unwrap(),
            SolutionCount::Infinite
        );
    }

    #[test]
    fn op7_reference_instance() {
        let r = line(0.0, 1.0, 1.0);
        let s = line(1.0, 0.0, 1.0);
        let p = Point::new(0.0, 1.0);
        let q = Point::new(1.0, 0.0);
        let sol = solve(7, vec![p, q], vec![r, s]);
        assert!(!sol.folds.is_empty() && sol.folds.len() <= 3);
        for f in &sol.folds {
            assert!(r.eval(reflect_point(p, f)).abs() < 1e-10);
            assert!(s.eval(reflect_point(q, f)).abs() < 1e-10);
        }
    }

    #[test]
    fn op7_vertical_fold() {
        // x = 1 sends P to (2, 1) on r and Q to (2, -3) on s.
        let p = Point::new(0.0, 1.0);
        let q = Point::new(0.0, -3.0);
        let r = line(1.0, -1.0, -1.0); // through (2,1)
        let s = line(1.0, 1.0, 1.0); // through (2,-3)
        let sol = solve(7, vec![p, q], vec![r, s]);
        assert!(sol
            .folds
            .iter()
            .any(|f| f.approx_eq(&line(1.0, 0.0, -1.0), 1e-9)));
    }

    #[test]
    fn op7_preconditions() {
        let inst = AxiomInstance::new(
            7,
            vec![Point::ORIGIN, Point::ORIGIN],
            vec![Line::Y_AXIS, Line::Y_AXIS],
        );
        assert!(matches!(
            solve_axiom(&inst.unwrap(), &tol()),
            Err(Error::Precondition(_))
        ));
        let inst = AxiomInstance::new(
            7,
            vec![Point::new(1.0, 0.0), Point::new(1.0, 0.0)],
            vec![Line::Y_AXIS, Line::Y_AXIS],
        )
        .unwrap();
        assert!(matches!(
            solve_axiom(&inst, &tol()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn op8_cases() {
        let r = Line::X_AXIS;
        let s = line(1.0, -1.0, 0.0);
        let p = Point::new(0.0, 2.0);
        let sol = solve(8, vec![p], vec![r, s]);
        assert_eq!(sol.folds.len(), 1);
        let f = sol.folds[0];
        assert!(r.eval(reflect_point(p, &f)).abs() < 1e-12);
        assert!(reflect_line(&s, &f).approx_eq(&s, 1e-12));
        // s perpendicular to r is an ordinary instance.
        let sol = solve(8, vec![p], vec![r, Line::Y_AXIS]);
        assert_eq!(sol.folds.len(), 1);
        // s parallel to r: P's track never meets r.
        let sol = solve(8, vec![p], vec![r, line(0.0, 1.0, -5.0)]);
        assert_eq!(sol.multiplicity, Multiplicity::Empty);
        // P on r: the fold through P perpendicular to s fixes P.
        let sol = solve(8, vec![Point::UNIT_X], vec![r, s]);
        assert_eq!(sol.folds.len(), 1);
        assert!(sol.folds[0].eval(Point::UNIT_X).abs() < 1e-12);
        assert!(reflect_line(&s, &sol.folds[0]).approx_eq(&s, 1e-12));
        // P on r and s parallel to r: every fold perpendicular to s works.
        let sol = solve(8, vec![Point::UNIT_X], vec![r, line(0.0, 1.0, -5.0)]);
        assert_eq!(sol.multiplicity, Multiplicity::Infinite);
    }

    #[test]
    fn arity_is_checked() {
        assert!(matches!(
            AxiomInstance::new(1, vec![Point::ORIGIN], vec![]),
            Err(Error::Arity { op: 1, .. })
        ));
        assert!(matches!(
            AxiomInstance::new(9, vec![], vec![]),
            Err(Error::UnknownOperation(9))
        ));
        let bad = AxiomInstance {
            op: 7,
            points: vec![],
            lines: vec![],
        };
        assert!(solve_axiom(&bad, &tol()).is_err());
        assert!(matches!(
            solve_axiom(
                &AxiomInstance::new(1, vec![Point::ORIGIN, Point::ORIGIN], vec![]).unwrap(),
                &tol()
            ),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn folds_are_sorted() {
        let s = solve(2, vec![], vec![Line::X_AXIS, Line::Y_AXIS]);
        let angles: Vec<f64> = s.folds.iter().map(angle_of).collect();
        assert!(angles.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn solution_traces_verify() {
        let cases = [
            AxiomInstance::new(1, vec![Point::ORIGIN, Point::new(2.0, 1.0)], vec![]).unwrap(),
            AxiomInstance::new(2, vec![], vec![Line::X_AXIS, line(1.0, 2.0, 3.0)]).unwrap(),
            AxiomInstance::new(3, vec![], vec![line(0.0, 1.0, -3.0)]).unwrap(),
            AxiomInstance::new(4, vec![Point::ORIGIN, Point::new(2.0, 1.0)], vec![]).unwrap(),
            AxiomInstance::new(5, vec![Point::new(2.0, 1.0)], vec![line(1.0, 2.0, 3.0)]).unwrap(),
            AxiomInstance::new(
                6,
                vec![Point::new(0.0, 2.0), Point::ORIGIN],
                vec![Line::X_AXIS],
            )
            .unwrap(),
            AxiomInstance::new(
                7,
                vec![Point::new(0.0, 1.0), Point::new(1.0, 0.0)],
                vec![line(0.0, 1.0, 1.0), line(1.0, 0.0, 1.0)],
            )
            .unwrap(),
            AxiomInstance::new(
                8,
                vec![Point::new(0.0, 2.0)],
                vec![Line::X_AXIS, line(1.0, -1.0, 0.0)],
            )
            .unwrap(),
        ];
        for inst in &cases {
            let sol = solve_axiom(inst, &tol()).unwrap();
            assert!(!sol.folds.is_empty(), "op {}", inst.op);
            let trace = solution_trace(inst, &sol);
            let report = verify(&trace, &tol()).unwrap();
            assert!(report.ok, "op {}: {:?}", inst.op, report.failures);
        }
    }
}
