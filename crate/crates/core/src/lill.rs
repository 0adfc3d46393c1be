//! Real roots of polynomials by Lill's method.
//!
//! The coefficients `a_m … a_0` are laid out as a right-angle path from the
//! origin `O` to a terminus `T`, turning left by 90° after every segment.
//! A second right-angle path shot from `O` at angle `θ`, bouncing off the
//! direction line of each segment, ends on `T` exactly when `−tan θ` is a
//! root. Realizing that second path by folding takes `max(1, m − 2)`
//! simultaneous folds.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::geom::{reflect_point, Line, Point, Tolerance};
use crate::poly::Polynomial;
use crate::trace::{names, FoldStep, FoldTrace, StepKind};

/// `v` turned left by `k` quarter turns, exactly.
fn quarter_turns(v: Point, k: usize) -> Point {
    match k % 4 {
        0 => v,
        1 => Point::new(-v.y, v.x),
        2 => Point::new(-v.x, -v.y),
        _ => Point::new(v.y, -v.x),
    }
}

/// Unit direction of path segment `k`.
fn segment_dir(k: usize) -> Point {
    quarter_turns(Point::UNIT_X, k)
}

/// The coefficient path of a polynomial.
///
/// Segment `k` runs along `+x` turned left `k` times and has signed length
/// `a_{m−k}`; a zero coefficient leaves a zero-length segment that still
/// turns.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LillPath {
    /// `V_0 = O`, …, `V_{m+1} = T`.
    pub vertices: Vec<Point>,
    /// Signed segment lengths, `a_m` first.
    pub lengths: Vec<f64>,
    pub segment_signs: Vec<i8>,
}

impl LillPath {
    pub fn degree(&self) -> usize {
        self.lengths.len() - 1
    }

    pub fn origin(&self) -> Point {
        self.vertices[0]
    }

    pub fn terminus(&self) -> Point {
        *self.vertices.last().unwrap()
    }

    /// Line carrying segment `k` (through `V_k`, along its direction).
    pub fn direction_line(&self, k: usize) -> Line {
        let d = segment_dir(k);
        Line::with_normal(d.perp(), self.vertices[k]).expect("unit normal")
    }
}

pub fn build_lill_path(p: &Polynomial) -> LillPath {
    let mut vertices = vec![Point::ORIGIN];
    let mut v = Point::ORIGIN;
    for (k, &a) in p.coeffs().iter().enumerate() {
        v = v + segment_dir(k) * a;
        vertices.push(v);
    }
    let segment_signs = p
        .coeffs()
        .iter()
        .map(|&a| {
            if a > 0.0 {
                1
            } else if a < 0.0 {
                -1
            } else {
                0
            }
        })
        .collect();
    LillPath {
        vertices,
        lengths: p.coeffs().to_vec(),
        segment_signs,
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if !theta.is_finite() || theta.abs() >= FRAC_PI_2 {
        return Err(Error::OutOfDomain(format!(
            "shot angle {theta} is not inside (-π/2, π/2)"
        )));
    }
    Ok(())
}

/// Offsets `h_1 … h_m` of the shot pivots along their direction lines for
/// the shot slope `t = tan θ`, with their derivatives in `t`.
fn offsets_at_slope(lengths: &[f64], t: Dd) -> (Vec<Dd>, Vec<Dd>) {
    let m = lengths.len() - 1;
    let mut h = Vec::with_capacity(m);
    let mut dh = Vec::with_capacity(m);
    let (mut prev, mut dprev) = (Dd::ZERO, Dd::ZERO);
    for &a in &lengths[..m] {
        let run = Dd::from_f64(a) - prev;
        let next = run * t;
        let dnext = run - dprev * t;
        h.push(next);
        dh.push(dnext);
        prev = next;
        dprev = dnext;
    }
    (h, dh)
}

/// As [`offsets_at_slope`], with derivatives in `θ`.
fn shot_offsets(lengths: &[f64], theta: f64) -> (Vec<Dd>, Vec<Dd>) {
    let t = theta.tan();
    let (h, dh) = offsets_at_slope(lengths, Dd::from_f64(t));
    let sec2 = 1.0 + t * t;
    (h, dh.into_iter().map(|d| d.mul_f64(sec2)).collect())
}

/// Slope of the shot at `θ`, polished by Newton steps in double-double
/// when `θ` is already a root to working precision. Otherwise `tan θ`.
fn refined_slope(lengths: &[f64], theta: f64) -> Dd {
    let start = Dd::from_f64(theta.tan());
    let bound = 1e-12 * start.hi.abs().max(1.0);
    let a0 = *lengths.last().unwrap();
    let mut t = start;
    for _ in 0..3 {
        let (h, dh) = offsets_at_slope(lengths, t);
        let miss = h.last().unwrap().add_f64(-a0);
        let d = *dh.last().unwrap();
        if miss.hi == 0.0 {
            break;
        }
        let step = miss / d;
        let small = step.hi.abs() <= bound && (t - step - start).hi.abs() <= bound;
        if !small {
            break;
        }
        t = t - step;
    }
    t
}

/// Signed amount by which the shot at angle `θ` misses the terminus,
/// measured along the last path direction. Zero exactly at roots
/// `x = −tan θ`.
pub fn miss_function(path: &LillPath, theta: f64) -> Result<f64> {
    check_theta(theta)?;
    Ok(miss_dd(&path.lengths, theta).0.to_f64())
}

/// Miss value and its derivative in `θ`.
fn miss_dd(lengths: &[f64], theta: f64) -> (Dd, Dd) {
    let (h, dh) = shot_offsets(lengths, theta);
    let a0 = *lengths.last().unwrap();
    (h.last().unwrap().add_f64(-a0), *dh.last().unwrap())
}

/// Pivot points `S_0 = O, S_1, …, S_m` of the shot with slope `t`.
fn shot_points(path: &LillPath, t: Dd) -> Vec<Point> {
    let (h, _) = offsets_at_slope(&path.lengths, t);
    let mut pts = vec![path.origin()];
    for (k, hk) in h.iter().enumerate() {
        let i = k + 1;
        pts.push(path.vertices[i] + segment_dir(i) * hk.to_f64());
    }
    pts
}

/// Number of simultaneous folds needed for a degree-`m` polynomial.
pub fn fold_budget(degree: usize) -> usize {
    degree.saturating_sub(2).max(1)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LillSolution {
    pub root: f64,
    pub theta: f64,
    /// The simultaneous folds `χ_1 … χ_{max(1, m−2)}`.
    pub fold_lines: Vec<Line>,
    /// Shot pivots `S_1 … S_{m−1}`.
    pub pivot_points: Vec<Point>,
    /// `|p(root)| / (max_k |a_k| · max(1, |root|)^m)`.
    pub residual: f64,
}

/// Root search settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LillOptions {
    /// Number of grid samples over `[−theta_max, theta_max]`.
    pub samples: usize,
    pub theta_max: f64,
}

impl Default for LillOptions {
    fn default() -> Self {
        Self {
            samples: 4096,
            theta_max: 89.9f64.to_radians(),
        }
    }
}

impl LillOptions {
    /// Largest root magnitude the scan can reach.
    pub fn root_bound(&self) -> f64 {
        self.theta_max.tan()
    }
}

/// Fold lines `χ_i` of the shot: the line through `S_i` along the shot
/// direction leaving it.
fn fold_lines(shot: &[Point], t: f64, m: usize) -> Vec<Line> {
    let u0 = Point::new(1.0, t) * (1.0 / t.hypot(1.0));
    let chi =
        |i: usize| Line::with_normal(quarter_turns(u0, i).perp(), shot[i]).expect("unit normal");
    match m {
        1 => vec![chi(0)],
        2 => vec![chi(1)],
        _ => (1..=m - 2).map(chi).collect(),
    }
}

fn solution_at(p: &Polynomial, path: &LillPath, theta: f64) -> LillSolution {
    let m = p.degree();
    let slope = refined_slope(&path.lengths, theta);
    let root = -slope.to_f64();
    let shot = shot_points(path, slope);
    let lead = p.coeffs().iter().fold(0.0f64, |a, c| a.max(c.abs()));
    let scale = lead * root.abs().max(1.0).powi(m as i32);
    let residual = p.eval_dd(root).abs() / scale;
    LillSolution {
        root,
        theta,
        fold_lines: fold_lines(&shot, slope.to_f64(), m),
        pivot_points: shot[1..m].to_vec(),
        residual,
    }
}

/// Bisects `f` on `[lo, hi]` (signs at the ends differ) down to adjacent
/// floating-point values.
fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let mut flo = f(lo);
    if flo == 0.0 {
        return lo;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    if f(hi).abs() < flo.abs() {
        hi
    } else {
        lo
    }
}

pub fn solve_real_roots(p: &Polynomial, tol: &Tolerance) -> Result<Vec<LillSolution>> {
    solve_real_roots_with(p, tol, &LillOptions::default())
}

/// Scans the shot angle for sign changes and tangencies of the miss
/// function, one solution per distinct root, ascending by root.
pub fn solve_real_roots_with(
    p: &Polynomial,
    tol: &Tolerance,
    opts: &LillOptions,
) -> Result<Vec<LillSolution>> {
    tol.validate()?;
    if p.degree() == 0 {
        return Err(Error::DegenerateInput(
            "constant polynomial has no roots".into(),
        ));
    }
    if opts.samples < 3 || !(opts.theta_max > 0.0 && opts.theta_max < FRAC_PI_2) {
        return Err(Error::DegenerateInput("invalid root search grid".into()));
    }
    let path = build_lill_path(p);
    let lengths = &path.lengths;
    let miss = |th: f64| miss_dd(lengths, th).0.to_f64();
    let dmiss = |th: f64| miss_dd(lengths, th).1.to_f64();
    let normalized = |th: f64| {
        let x = -th.tan();
        let s = p.magnitude(x);
        if s > 0.0 {
            miss(th).abs() / s
        } else {
            0.0
        }
    };

    let n = opts.samples;
    let step = 2.0 * opts.theta_max / (n - 1) as f64;
    let grid: Vec<f64> = (0..n).map(|i| -opts.theta_max + step * i as f64).collect();
    let vals: Vec<f64> = grid.iter().map(|&th| miss(th)).collect();

    let mut thetas = Vec::new();
    for i in 0..n {
        if vals[i] == 0.0 {
            thetas.push(grid[i]);
        }
        if i + 1 < n && vals[i] * vals[i + 1] < 0.0 {
            thetas.push(bisect(grid[i], grid[i + 1], miss));
        }
    }
    // Pairs of roots hiding between samples, and touching roots.
    for i in 1..n - 1 {
        let (a, b, c) = (vals[i - 1], vals[i], vals[i + 1]);
        let same_sign = a * b > 0.0 && b * c > 0.0;
        if !(same_sign && b.abs() <= a.abs() && b.abs() <= c.abs()) {
            continue;
        }
        let (lo, hi) = (grid[i - 1], grid[i + 1]);
        let (dlo, dhi) = (dmiss(lo), dmiss(hi));
        if dlo * dhi > 0.0 {
            continue;
        }
        let crit = bisect(lo, hi, dmiss);
        let at = miss(crit);
        if at * b < 0.0 {
            thetas.push(bisect(lo, crit, miss));
            thetas.push(bisect(crit, hi, miss));
        } else if normalized(crit) <= tol.eps_incidence {
            thetas.push(crit);
        }
    }

    let mut sols: Vec<LillSolution> = thetas
        .into_iter()
        .map(|th| solution_at(p, &path, th))
        .collect();
    sols.sort_by(|a, b| a.root.total_cmp(&b.root));
    let mut out: Vec<LillSolution> = Vec::with_capacity(sols.len());
    for s in sols {
        match out.last_mut() {
            Some(last)
                if (s.root - last.root).abs() <= 10.0 * tol.eps_root * last.root.abs().max(1.0) =>
            {
                if s.residual < last.residual {
                    *last = s;
                }
            }
            _ => out.push(s),
        }
    }
    Ok(out)
}

fn name(prefix: &str, i: usize) -> String {
    format!("{prefix}{i}")
}

/// Fold trace of one solution: the coefficient path as givens and a single
/// bundle step holding all simultaneous folds.
///
/// The bundle declares that each `χ_i` passes through the pivots `S_i` and
/// `S_{i+1}`, that every pivot lies on its direction line, that consecutive
/// folds are perpendicular, that `χ_1` places `O` onto the line `p` at twice
/// the first segment, and that `χ_{m−2}` places `T` onto the line `q`
/// mirroring the last segment.
pub fn lill_trace(p: &Polynomial, sol: &LillSolution) -> Result<FoldTrace> {
    check_theta(sol.theta)?;
    let m = p.degree();
    if m == 0 {
        return Err(Error::DegenerateInput(
            "constant polynomial has no roots".into(),
        ));
    }
    let path = build_lill_path(p);
    let slope = refined_slope(&path.lengths, sol.theta);
    let shot = shot_points(&path, slope);
    let chis = fold_lines(&shot, slope.to_f64(), m);
    let o = path.origin();
    let t = path.terminus();

    let mut trace = FoldTrace::new();
    trace.given_point(names::ORIGIN, o);
    for k in 1..=m {
        trace.given_point(name("V", k), path.vertices[k]);
    }
    trace.given_point("T", t);
    for k in 1..m {
        trace.given_line(name("L", k), path.direction_line(k));
    }

    let mut step = FoldStep::new(StepKind::LillBundle);
    for (i, chi) in chis.iter().enumerate() {
        step = step.fold(name("chi", i + 1), *chi);
    }
    for (k, s) in shot.iter().enumerate().take(m).skip(1) {
        step = step.point(name("S", k), *s).on(name("S", k), name("L", k));
    }

    if m == 1 {
        trace.push(step.on(names::ORIGIN, "chi1").on("T", "chi1"));
        return Ok(trace);
    }

    let d0 = segment_dir(0);
    let p_line = Line::with_normal(d0, o + d0 * (2.0 * path.lengths[0]))?;
    trace.given_line("p", p_line);
    step = step
        .point("O'", reflect_point(o, &chis[0]))
        .maps("chi1", names::ORIGIN, "O'")
        .on("O'", "p");

    if m == 2 {
        trace.push(step.on("S1", "chi1").on("T", "chi1"));
        return Ok(trace);
    }

    let dm = segment_dir(m);
    let q_line = Line::with_normal(dm, path.vertices[m] - dm * path.lengths[m])?;
    trace.given_line("q", q_line);
    let last = name("chi", m - 2);
    step = step
        .point("T'", reflect_point(t, &chis[m - 3]))
        .maps(last.as_str(), "T", "T'")
        .on("T'", "q");
    for i in 1..=m - 2 {
        step = step
            .on(name("S", i), name("chi", i))
            .on(name("S", i + 1), name("chi", i));
        if i < m - 2 {
            step = step.maps_line(name("chi", i), name("chi", i + 1), name("chi", i + 1));
        }
    }
    trace.push(step);
    Ok(trace)
}
