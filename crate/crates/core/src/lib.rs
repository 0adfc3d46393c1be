//! Construction engine for origami with up to `n` simultaneous folds per step.
//!
//! * [`geom`]: points, normalized lines, reflections.
//! * [`axioms`]: the eight single-fold operations.
//! * [`lill`]: real roots of polynomials by Lill's method as a bundle of
//!   `max(1, m − 2)` simultaneous folds.
//! * [`section`]: division of an angle into `m` equal parts.
//! * [`polygon`]: constructibility of regular polygons and their vertices.
//! * [`trace`]: fold traces, verification, JSON and SVG output.

pub mod axioms;
pub mod dd;
pub mod error;
pub mod geom;
pub mod lill;
pub mod numtheory;
pub mod poly;
pub mod polygon;
pub mod section;
pub mod tower;
pub mod trace;

pub use error::{Error, Result};
pub use geom::{Line, Point, Tolerance};
pub use poly::Polynomial;
pub use trace::{FoldStep, FoldTrace, VerificationReport};
