//! Plane primitives: points, normalized lines, reflections and intersections.
//!
//! Every fold in the engine is a reflection across a [`Line`], so the whole
//! crate is built on the handful of operations in this module.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numeric tolerances shared by every module.
///
/// `eps_root <= eps_incidence <= eps_report` always holds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    /// Incidence checks: point-on-line, fold constraint residuals.
    pub eps_incidence: f64,
    /// Root refinement and deduplication.
    pub eps_root: f64,
    /// Agreement of reported values with analytic targets.
    pub eps_report: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            eps_incidence: 1e-9,
            eps_root: 1e-11,
            eps_report: 1e-8,
        }
    }
}

impl Tolerance {
    pub fn new(eps_incidence: f64, eps_root: f64, eps_report: f64) -> Result<Self> {
        let tol = Self {
            eps_incidence,
            eps_root,
            eps_report,
        };
        tol.validate()?;
        Ok(tol)
    }

    /// Replaces the incidence tolerance, widening or narrowing the other two
    /// only as far as needed to keep the ordering invariant.
    pub fn with_incidence(eps_incidence: f64) -> Result<Self> {
        let d = Self::default();
        Self::new(
            eps_incidence,
            d.eps_root.min(eps_incidence),
            d.eps_report.max(eps_incidence),
        )
    }

    pub fn validate(&self) -> Result<()> {
        let all_positive = [self.eps_incidence, self.eps_root, self.eps_report]
            .iter()
            .all(|e| e.is_finite() && *e > 0.0);
        if !all_positive {
            return Err(Error::InvalidTolerance(
                "tolerances must be finite and strictly positive".into(),
            ));
        }
        if !(self.eps_root <= self.eps_incidence && self.eps_incidence <= self.eps_report) {
            return Err(Error::InvalidTolerance(
                "expected eps_root <= eps_incidence <= eps_report".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };
    pub const UNIT_X: Point = Point { x: 1.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Checked constructor; rejects NaN and infinite coordinates.
    pub fn try_new(x: f64, y: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() {
            Ok(Self { x, y })
        } else {
            Err(Error::NonFinite(format!("point ({x}, {y})")))
        }
    }

    /// Point on the unit circle at angle `theta`.
    pub fn polar(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self { x: c, y: s }
    }

    #[inline]
    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    #[inline]
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn distance(self, other: Point) -> f64 {
        (self - other).norm()
    }

    /// Counter-clockwise quarter turn.
    #[inline]
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    /// Polar angle in `(-π, π]`.
    #[inline]
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn midpoint(self, other: Point) -> Point {
        Point::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.12}, {:.12})", self.x, self.y)
    }
}

/// The locus `a·x + b·y + c = 0` with `(a, b)` a unit normal.
///
/// The sign is canonical (`a > 0`, or `a == 0` and `b > 0`) so two lines
/// describing the same locus have the same coefficients up to rounding.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawLine")]
pub struct Line {
    a: f64,
    b: f64,
    c: f64,
}

#[derive(Deserialize)]
struct RawLine {
    a: f64,
    b: f64,
    c: f64,
}

impl TryFrom<RawLine> for Line {
    type Error = Error;

    fn try_from(raw: RawLine) -> Result<Line> {
        Line::from_normalized(raw.a, raw.b, raw.c)
    }
}

const NORMALIZATION_EPS: f64 = 1e-12;

impl Line {
    /// Normalizes an arbitrary implicit equation.
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::NonFinite(format!("line {a}x + {b}y + {c} = 0")));
        }
        let n = a.hypot(b);
        if n < 1e-300 {
            return Err(Error::DegenerateInput("line with zero normal".into()));
        }
        Ok(Self::canonical(a / n, b / n, c / n))
    }

    /// Accepts coefficients that are already normalized and canonical,
    /// without touching their bits.
    pub fn from_normalized(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::NonFinite(format!("line {a}x + {b}y + {c} = 0")));
        }
        if ((a * a + b * b) - 1.0).abs() > NORMALIZATION_EPS {
            return Err(Error::Schema(format!(
                "line normal ({a}, {b}) is not unit length"
            )));
        }
        if a < 0.0 || (a == 0.0 && b < 0.0) {
            return Err(Error::Schema(format!(
                "line ({a}, {b}, {c}) is not in canonical sign"
            )));
        }
        Ok(Self { a, b, c })
    }

    fn canonical(a: f64, b: f64, c: f64) -> Self {
        if a < 0.0 || (a == 0.0 && b < 0.0) {
            Self {
                a: -a,
                b: -b,
                c: -c,
            }
        } else {
            Self {
                a: a + 0.0,
                b: b + 0.0,
                c: c + 0.0,
            }
        }
    }

    /// Line with unit normal `n` through `p`.
    pub fn with_normal(n: Point, p: Point) -> Result<Self> {
        Self::new(n.x, n.y, -n.dot(p))
    }

    pub const X_AXIS: Line = Line {
        a: 0.0,
        b: 1.0,
        c: 0.0,
    };
    pub const Y_AXIS: Line = Line {
        a: 1.0,
        b: 0.0,
        c: 0.0,
    };

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }
    #[inline]
    pub fn b(&self) -> f64 {
        self.b
    }
    #[inline]
    pub fn c(&self) -> f64 {
        self.c
    }

    #[inline]
    pub fn normal(&self) -> Point {
        Point::new(self.a, self.b)
    }

    /// Unit direction, the normal turned a quarter clockwise.
    #[inline]
    pub fn direction(&self) -> Point {
        Point::new(-self.b, self.a)
    }

    /// Signed distance of `p` from the line.
    #[inline]
    pub fn eval(&self, p: Point) -> f64 {
        self.a * p.x + self.b * p.y + self.c
    }

    /// Closest point of the line to the origin.
    pub fn anchor(&self) -> Point {
        self.normal() * -self.c
    }

    /// Orthogonal projection of `p` onto the line.
    pub fn project(&self, p: Point) -> Point {
        p - self.normal() * self.eval(p)
    }

    pub fn renormalized(&self) -> Result<Self> {
        Self::new(self.a, self.b, self.c)
    }

    /// Distance between two lines as implicit equations, insensitive to sign.
    pub fn coefficient_distance(&self, other: &Line) -> f64 {
        let same = (self.a - other.a)
            .abs()
            .max((self.b - other.b).abs())
            .max((self.c - other.c).abs());
        let flipped = (self.a + other.a)
            .abs()
            .max((self.b + other.b).abs())
            .max((self.c + other.c).abs());
        same.min(flipped)
    }

    pub fn approx_eq(&self, other: &Line, eps: f64) -> bool {
        self.coefficient_distance(other) <= eps
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.12}x + {:.12}y + {:.12} = 0", self.a, self.b, self.c)
    }
}

/// Mirror image of `p` across the fold line `f`.
pub fn reflect_point(p: Point, f: &Line) -> Point {
    p - f.normal() * (2.0 * f.eval(p))
}

/// Image of the line `s` under the fold `f`, in canonical form.
pub fn reflect_line(s: &Line, f: &Line) -> Line {
    let n = s.normal();
    let nf = f.normal();
    let n_img = n - nf * (2.0 * n.dot(nf));
    let anchor_img = reflect_point(s.anchor(), f);
    // A reflection maps a unit normal to a unit normal; only the sign needs fixing.
    Line::canonical(n_img.x, n_img.y, -n_img.dot(anchor_img))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Intersection {
    Point(Point),
    Parallel,
    Coincident,
}

pub fn intersect(l1: &Line, l2: &Line, tol: &Tolerance) -> Intersection {
    let det = l1.a * l2.b - l2.a * l1.b;
    if det.abs() > tol.eps_incidence {
        let x = (l1.b * l2.c - l2.b * l1.c) / det;
        let y = (l2.a * l1.c - l1.a * l2.c) / det;
        return Intersection::Point(Point::new(x, y));
    }
    let s = if l1.normal().dot(l2.normal()) >= 0.0 {
        1.0
    } else {
        -1.0
    };
    if (l1.c - s * l2.c).abs() <= tol.eps_incidence {
        Intersection::Coincident
    } else {
        Intersection::Parallel
    }
}

pub fn line_through(p: Point, q: Point, tol: &Tolerance) -> Result<Line> {
    let d = q - p;
    if d.norm() <= tol.eps_incidence {
        return Err(Error::DegenerateInput(format!(
            "coincident points {p} and {q} do not determine a line"
        )));
    }
    Line::with_normal(d.perp() * (1.0 / d.norm()), p)
}

pub fn perpendicular_through(l: &Line, p: Point) -> Line {
    // The direction of `l` is the normal of the perpendicular.
    let d = l.direction();
    Line::canonical(d.x, d.y, -d.dot(p))
}

pub fn line_at_angle(theta: f64, p: Point) -> Line {
    let n = Point::polar(theta).perp();
    Line::canonical(n.x, n.y, -n.dot(p))
}

/// Direction angle of `l`, in `[0, π)`.
pub fn angle_of(l: &Line) -> f64 {
    let d = l.direction();
    let mut ang = d.y.atan2(d.x);
    if ang < 0.0 {
        ang += PI;
    }
    if ang >= PI {
        ang -= PI;
    }
    ang
}

/// Maps any finite angle into `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let tau = 2.0 * PI;
    let r = theta.rem_euclid(tau);
    if r >= tau {
        0.0
    } else {
        r
    }
}
