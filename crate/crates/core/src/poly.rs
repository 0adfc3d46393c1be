//! Real polynomials stored highest degree first.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dd::Dd;
use crate::error::{Error, Result};

/// `a_m·x^m + … + a_1·x + a_0`, stored as `[a_m, …, a_0]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

/// Smallest leading coefficient accepted by [`Polynomial::new`].
pub const LEADING_EPS: f64 = 1e-9;

impl Polynomial {
    /// Builds a polynomial from coefficients, highest degree first.
    ///
    /// The leading coefficient must exceed [`LEADING_EPS`] in magnitude.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::DegenerateInput("empty coefficient list".into()));
        }
        if let Some(bad) = coeffs.iter().find(|c| !c.is_finite()) {
            return Err(Error::NonFinite(format!("coefficient {bad}")));
        }
        if coeffs[0].abs() <= LEADING_EPS {
            return Err(Error::DegenerateInput(format!(
                "leading coefficient {} is zero",
                coeffs[0]
            )));
        }
        Ok(Self { coeffs })
    }

    /// Like [`Polynomial::new`] but drops leading zeros first.
    pub fn trimmed(coeffs: &[f64]) -> Result<Self> {
        let start = coeffs
            .iter()
            .position(|c| c.abs() > LEADING_EPS)
            .ok_or_else(|| Error::DegenerateInput("zero polynomial".into()))?;
        Self::new(coeffs[start..].to_vec())
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> f64 {
        self.coeffs[0]
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, &a| acc * x + a)
    }

    /// Horner evaluation carried in double-double.
    pub fn eval_dd(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .fold(Dd::ZERO, |acc, &a| acc.mul_f64(x).add_f64(a))
            .to_f64()
    }

    /// `Σ |a_k|·|x|^k`, the natural scale of `p(x)`.
    pub fn magnitude(&self, x: f64) -> f64 {
        let ax = x.abs();
        self.coeffs.iter().fold(0.0, |acc, &a| acc * ax + a.abs())
    }

    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0f64, |m, a| m.max(a.abs()))
    }

    pub fn derivative(&self) -> Option<Polynomial> {
        let m = self.degree();
        if m == 0 {
            return None;
        }
        let coeffs = self.coeffs[..m]
            .iter()
            .enumerate()
            .map(|(i, &a)| a * (m - i) as f64)
            .collect();
        Some(Polynomial { coeffs })
    }

    /// `q(y) = p(s·y)`; roots of `q` are the roots of `p` divided by `s`.
    pub fn rescaled(&self, s: f64) -> Result<Polynomial> {
        if !(s.is_finite() && s != 0.0) {
            return Err(Error::DegenerateInput(format!("scale factor {s}")));
        }
        let m = self.degree();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &a)| a * s.powi((m - i) as i32))
            .collect();
        Polynomial::new(coeffs)
    }

    /// `p(x) - k`.
    pub fn minus_constant(&self, k: f64) -> Polynomial {
        let mut coeffs = self.coeffs.clone();
        *coeffs.last_mut().unwrap() -= k;
        Polynomial { coeffs }
    }

    /// Monic polynomial with the given roots, expanded in double-double.
    pub fn from_roots_dd(roots: &[Dd]) -> Polynomial {
        // Ascending-order expansion, reversed at the end.
        let mut acc = vec![Dd::ONE];
        for &r in roots {
            let mut next = vec![Dd::ZERO; acc.len() + 1];
            for (i, &c) in acc.iter().enumerate() {
                next[i + 1] = next[i + 1] + c;
                next[i] = next[i] - c * r;
            }
            acc = next;
        }
        let coeffs = acc.iter().rev().map(|c| c.to_f64()).collect();
        Polynomial { coeffs }
    }

    /// Integer-coefficient constructor for exact families (Chebyshev).
    pub(crate) fn from_integers(coeffs: &[i128]) -> Polynomial {
        Polynomial {
            coeffs: coeffs.iter().map(|&c| c as f64).collect(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.degree();
        let mut first = true;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0.0 && m > 0 {
                continue;
            }
            let k = m - i;
            let sign = if a < 0.0 { "-" } else { "+" };
            if first {
                if a < 0.0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = a.abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ if mag != 1.0 => write!(f, "{mag}")?,
                _ => {}
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Distinct real roots of `c3·x³ + c2·x² + c1·x + c0`, ascending.
///
/// A leading coefficient that is negligible against the others drops the
/// degree. An identically zero cubic yields `None`.
pub fn solve_cubic(c3: f64, c2: f64, c1: f64, c0: f64) -> Option<Vec<f64>> {
    let scale = c3.abs().max(c2.abs()).max(c1.abs()).max(c0.abs());
    if scale == 0.0 {
        return None;
    }
    let (c3, c2, c1, c0) = (c3 / scale, c2 / scale, c1 / scale, c0 / scale);
    let negligible = 1e-12;
    let mut roots = if c3.abs() <= negligible {
        if c2.abs() <= negligible {
            if c1.abs() <= negligible {
                if c0.abs() <= negligible {
                    return None;
                }
                Vec::new()
            } else {
                vec![-c0 / c1]
            }
        } else {
            solve_quadratic(c2, c1, c0)
        }
    } else {
        depressed_cubic_roots(c2 / c3, c1 / c3, c0 / c3)
    };
    // Newton polish on the unscaled-by-leading form.
    let f = |x: f64| ((c3 * x + c2) * x + c1) * x + c0;
    let df = |x: f64| (3.0 * c3 * x + 2.0 * c2) * x + c1;
    for r in roots.iter_mut() {
        for _ in 0..3 {
            let d = df(*r);
            if d.abs() < 1e-300 {
                break;
            }
            let step = f(*r) / d;
            if !step.is_finite() {
                break;
            }
            *r -= step;
        }
    }
    roots.sort_by(|a, b| a.total_cmp(b));
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs())));
    Some(roots)
}

fn solve_quadratic(a: f64, b: f64, c: f64) -> Vec<f64> {
    let disc = b * b - 4.0 * a * c;
    let tiny = 1e-14 * (b * b).max((4.0 * a * c).abs());
    if disc < -tiny {
        Vec::new()
    } else if disc <= tiny {
        vec![-b / (2.0 * a)]
    } else {
        let q = -0.5 * (b + b.signum() * disc.sqrt());
        if q == 0.0 {
            vec![0.0]
        } else {
            vec![q / a, c / q]
        }
    }
}

/// Roots of the monic cubic `x³ + a·x² + b·x + c`.
fn depressed_cubic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let shift = a / 3.0;
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let half_q = q / 2.0;
    let third_p = p / 3.0;
    let disc = half_q * half_q + third_p * third_p * third_p;
    let tiny = 1e-14 * (half_q * half_q).max((third_p * third_p * third_p).abs());
    if disc > tiny {
        let s = disc.sqrt();
        let u = (-half_q + s).cbrt();
        let v = (-half_q - s).cbrt();
        vec![u + v - shift]
    } else if disc >= -tiny {
        if p.abs() <= 1e-300 {
            vec![-shift]
        } else {
            let u = (-half_q).cbrt();
            vec![2.0 * u - shift, -u - shift]
        }
    } else {
        let r = (-third_p).sqrt();
        let phi = (-half_q / (r * r * r)).clamp(-1.0, 1.0).acos();
        (0..3)
            .map(|k| 2.0 * r * ((phi + 2.0 * std::f64::consts::PI * k as f64) / 3.0).cos() - shift)
            .collect()
    }
}
