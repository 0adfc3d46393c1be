//! Reference implementations used as oracles by the integration tests.
//!
//! Nothing here calls into the solvers under test; only the plain data
//! types (`Point`, `Line`) are shared.

#![allow(dead_code)]

use std::f64::consts::PI;

use nfold::{Line, Point};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().fold(0.0, |acc, &a| acc * x + a)
}

fn scale(c: &[f64], x: f64) -> f64 {
    c.iter().fold(0.0, |acc, &a| acc * x.abs() + a.abs())
}

fn bisect(c: &[f64], mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = horner(c, lo);
    for _ in 0..300 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = horner(c, mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Distinct real roots of the polynomial with coefficients `c` (highest
/// degree first), ascending.
///
/// Roots of the derivative split the real line into monotone pieces; each
/// piece holds at most one root, found by bisection. A critical point where
/// the polynomial nearly vanishes counts as a (multiple) root.
pub fn real_roots(c: &[f64]) -> Vec<f64> {
    let start = c.iter().position(|&a| a != 0.0).unwrap_or(c.len());
    let c = &c[start..];
    let m = c.len().saturating_sub(1);
    if m == 0 {
        return vec![];
    }
    if m == 1 {
        return vec![-c[1] / c[0]];
    }
    let deriv: Vec<f64> = c[..m]
        .iter()
        .enumerate()
        .map(|(i, &a)| a * (m - i) as f64)
        .collect();
    let crit = real_roots(&deriv);
    let bound = 1.0 + c[1..].iter().fold(0.0f64, |b, &a| b.max((a / c[0]).abs()));
    let mut knots = vec![-bound];
    knots.extend(crit.iter().copied().filter(|x| x.abs() < bound));
    knots.push(bound);

    let mut roots = Vec::new();
    for w in knots.windows(2) {
        let (l, r) = (w[0], w[1]);
        let (fl, fr) = (horner(c, l), horner(c, r));
        if fl == 0.0 {
            roots.push(l);
        } else if fl * fr < 0.0 {
            roots.push(bisect(c, l, r));
        }
    }
    for &x in &crit {
        if horner(c, x).abs() <= 1e-12 * scale(c, x) {
            roots.push(x);
        }
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * b.abs().max(1.0));
    roots
}

// ---------------------------------------------------------------------------
// Fold-line sweep for the single-fold operations.

fn normal(phi: f64) -> Point {
    Point::new(phi.cos(), phi.sin())
}

fn mirror(p: Point, n: Point, c: f64) -> Point {
    let d = n.x * p.x + n.y * p.y + c;
    Point::new(p.x - 2.0 * d * n.x, p.y - 2.0 * d * n.y)
}

fn eval(l: &Line, p: Point) -> f64 {
    l.a() * p.x + l.b() * p.y + l.c()
}

fn dir(l: &Line) -> Point {
    Point::new(-l.b(), l.a())
}

/// For a fold normal at angle `phi`, the offset forced by the first
/// constraint and the signed residual of the second.
fn sweep_fn(op: u8, pts: &[Point], lines: &[Line], phi: f64) -> Option<(f64, f64)> {
    let n = normal(phi);
    let dot = |p: Point| n.x * p.x + n.y * p.y;
    let cross = |u: Point, v: Point| u.x * v.y - u.y * v.x;
    Some(match op {
        1 => {
            let d = Point::new(pts[1].x - pts[0].x, pts[1].y - pts[0].y);
            let mid = Point::new(0.5 * (pts[0].x + pts[1].x), 0.5 * (pts[0].y + pts[1].y));
            (-dot(mid), cross(n, d))
        }
        2 => {
            let (r, s) = (&lines[0], &lines[1]);
            let nr = Point::new(r.a(), r.b());
            let ns = Point::new(s.a(), s.b());
            let k = 2.0 * dot(nr);
            let img = Point::new(nr.x - k * n.x, nr.y - k * n.y);
            let den = 2.0 * dot(ns);
            if den.abs() < 1e-12 {
                return None;
            }
            let a = Point::new(-r.c() * r.a(), -r.c() * r.b());
            (eval(s, a) / den - dot(a), cross(img, ns))
        }
        4 => (
            -dot(pts[0]),
            dot(Point::new(pts[1].x - pts[0].x, pts[1].y - pts[0].y)),
        ),
        5 => (-dot(pts[0]), cross(n, dir(&lines[0]))),
        6 => {
            let c = -dot(pts[1]);
            (c, eval(&lines[0], mirror(pts[0], n, c)))
        }
        7 | 8 => {
            let r = &lines[0];
            let den = 2.0 * (n.x * r.a() + n.y * r.b());
            if den.abs() < 1e-12 {
                return None;
            }
            let c = eval(r, pts[0]) / den - dot(pts[0]);
            if op == 7 {
                (c, eval(&lines[1], mirror(pts[1], n, c)))
            } else {
                (c, cross(n, dir(&lines[1])))
            }
        }
        _ => return None,
    })
}

/// Largest violation of the incidences of `op` by `fold`, computed from
/// first principles.
pub fn incidence_residual(op: u8, pts: &[Point], lines: &[Line], fold: &Line) -> f64 {
    let n = Point::new(fold.a(), fold.b());
    let c = fold.c();
    let refl = |p: Point| mirror(p, n, c);
    let dist = |p: Point, q: Point| ((p.x - q.x).powi(2) + (p.y - q.y).powi(2)).sqrt();
    // A line is mapped onto `t` when two of its points land on `t`.
    let line_onto = |s: &Line, t: &Line| {
        let a = Point::new(-s.c() * s.a(), -s.c() * s.b());
        let b = Point::new(a.x - s.b(), a.y + s.a());
        eval(t, refl(a)).abs().max(eval(t, refl(b)).abs())
    };
    match op {
        1 => dist(refl(pts[0]), pts[1]),
        2 => line_onto(&lines[0], &lines[1]),
        3 => line_onto(&lines[0], &lines[0]).max(fold.coefficient_distance(&lines[0])),
        4 => eval(fold, pts[0]).abs().max(eval(fold, pts[1]).abs()),
        5 => eval(fold, pts[0])
            .abs()
            .max(line_onto(&lines[0], &lines[0])),
        6 => eval(fold, pts[1])
            .abs()
            .max(eval(&lines[0], refl(pts[0])).abs()),
        7 => eval(&lines[0], refl(pts[0]))
            .abs()
            .max(eval(&lines[1], refl(pts[1])).abs()),
        8 => eval(&lines[0], refl(pts[0]))
            .abs()
            .max(line_onto(&lines[1], &lines[1])),
        _ => f64::INFINITY,
    }
}

/// All admissible folds of a non-degenerate instance, found by sweeping the
/// fold direction over a fine grid and bisecting sign changes of the
/// remaining constraint.
pub fn sweep_folds(op: u8, pts: &[Point], lines: &[Line]) -> Vec<Line> {
    if op == 3 {
        return vec![lines[0]];
    }
    const N: usize = 20_000;
    let g = |phi: f64| sweep_fn(op, pts, lines, phi);
    let mut found: Vec<Line> = Vec::new();
    let mut push = |phi: f64| {
        if let Some((c, _)) = g(phi) {
            let n = normal(phi);
            if let Ok(l) = Line::new(n.x, n.y, c) {
                if incidence_residual(op, pts, lines, &l) <= 1e-7
                    && !found.iter().any(|f| f.coefficient_distance(&l) < 1e-7)
                {
                    found.push(l);
                }
            }
        }
    };
    let step = PI / N as f64;
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..=N {
        let phi = step * i as f64;
        let cur = g(phi).map(|(_, v)| v);
        if let (Some((pphi, pv)), Some(v)) = (prev, cur) {
            if v == 0.0 {
                push(phi);
            } else if pv * v < 0.0 {
                let (mut lo, mut hi, mut flo) = (pphi, phi, pv);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    match g(mid) {
                        Some((_, fm)) if (fm > 0.0) == (flo > 0.0) => {
                            lo = mid;
                            flo = fm;
                        }
                        Some(_) => hi = mid,
                        None => break,
                    }
                }
                push(0.5 * (lo + hi));
            }
        }
        prev = cur.map(|v| (phi, v));
    }
    found
}

/// Random point with coordinates in `[-5, 5]`.
pub fn random_point(rng: &mut impl rand::Rng) -> Point {
    Point::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0))
}

/// Random line with offset in `[-3, 3]`.
pub fn random_line(rng: &mut impl rand::Rng) -> Line {
    let phi: f64 = rng.gen_range(0.0..PI);
    Line::new(phi.cos(), phi.sin(), rng.gen_range(-3.0..3.0)).unwrap()
}
