//! Real Gaussian periods of a prime `p`: the tower of fields leading from
//! the rationals to `2cos(2π/p)` in steps of prime degree.

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::numtheory::{factorize, is_prime, primitive_root_mod};
use crate::poly::Polynomial;

/// Periods of the half-residue classes modulo `p`.
///
/// With `h = (p − 1)/2`, generator `g` and step degrees `d_1 ≤ d_2 ≤ …`
/// multiplying to `h`, level `j` holds `D_j = d_1⋯d_j` periods
/// `η_{j,i} = Σ_{k ≡ i (mod D_j)} 2cos(2π·g^k/p)` for `0 ≤ k < h`. The
/// children of `η_{j,i}` are `η_{j+1, i + t·D_j}`, and index 0 at every level
/// is the period containing `2cos(2π/p)`.
#[derive(Clone, Debug)]
pub struct PeriodTower {
    pub p: u64,
    pub generator: u64,
    pub level_degrees: Vec<u64>,
    pub levels: Vec<Vec<Dd>>,
}

impl PeriodTower {
    /// Number of split steps.
    pub fn depth(&self) -> usize {
        self.level_degrees.len()
    }

    /// `D_j`, the number of periods on level `j`.
    pub fn width(&self, level: usize) -> usize {
        self.levels[level].len()
    }

    /// Children of period `(level, parent)` on the next level.
    pub fn children(&self, level: usize, parent: usize) -> Result<Vec<Dd>> {
        self.check_position(level, parent)?;
        if level >= self.depth() {
            return Err(Error::OutOfDomain(format!(
                "level {level} is the last level of the tower for {}",
                self.p
            )));
        }
        let stride = self.width(level);
        let d = self.level_degrees[level] as usize;
        Ok((0..d)
            .map(|t| self.levels[level + 1][parent + t * stride])
            .collect())
    }

    /// The period containing `2cos(2π/p)` on each level.
    pub fn target(&self, level: usize) -> Dd {
        self.levels[level][0]
    }

    fn check_position(&self, level: usize, parent: usize) -> Result<()> {
        if level >= self.levels.len() || parent >= self.width(level) {
            return Err(Error::OutOfDomain(format!(
                "no period ({level}, {parent}) in the tower for {}",
                self.p
            )));
        }
        Ok(())
    }
}

pub fn build_period_tower(p: u64) -> Result<PeriodTower> {
    if p < 3 || !is_prime(p) {
        return Err(Error::OutOfDomain(format!("{p} is not an odd prime")));
    }
    let h = (p - 1) / 2;
    let generator = primitive_root_mod(p)?;
    let level_degrees = factorize(h)?.prime_chain();

    // 2cos(2π·g^k/p) for k = 0..h.
    let mut residue = 1u64;
    let mut leaves = Vec::with_capacity(h as usize);
    for _ in 0..h {
        leaves.push(Dd::cos_two_pi_frac(residue as i64, p as i64).mul_f64(2.0));
        residue = residue * generator % p;
    }

    let mut levels = Vec::with_capacity(level_degrees.len() + 1);
    let mut width = 1usize;
    levels.push(vec![leaves.iter().fold(Dd::ZERO, |a, &b| a + b)]);
    for &d in &level_degrees {
        width *= d as usize;
        let mut level = vec![Dd::ZERO; width];
        for (k, &v) in leaves.iter().enumerate() {
            level[k % width] = level[k % width] + v;
        }
        levels.push(level);
    }
    Ok(PeriodTower {
        p,
        generator,
        level_degrees,
        levels,
    })
}

/// Monic polynomial whose roots are the children of period
/// `(level, parent)`.
///
/// A tower without splits (`p = 3`) has the single step `x − η_{0,0}`.
pub fn step_polynomial(tower: &PeriodTower, level: usize, parent: usize) -> Result<Polynomial> {
    tower.check_position(level, parent)?;
    if tower.depth() == 0 {
        return Ok(Polynomial::from_roots_dd(&[tower.levels[0][0]]));
    }
    Ok(Polynomial::from_roots_dd(&tower.children(level, parent)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Dd, b: f64, eps: f64) -> bool {
        (a.to_f64() - b).abs() < eps
    }

    #[test]
    fn eleven() {
        let t = build_period_tower(11).unwrap();
        assert_eq!(t.generator, 2);
        assert_eq!(t.level_degrees, vec![5]);
        assert!(close(t.levels[0][0], -1.0, 1e-30));
        let mut last: Vec<f64> = t.levels[1].iter().map(|v| v.to_f64()).collect();
        last.sort_by(f64::total_cmp);
        let mut want: Vec<f64> = (1..=5)
            .map(|k| 2.0 * (2.0 * std::f64::consts::PI * k as f64 / 11.0).cos())
            .collect();
        want.sort_by(f64::total_cmp);
        for (a, b) in last.iter().zip(&want) {
            assert!((a - b).abs() < 1e-15);
        }
        let q = step_polynomial(&t, 0, 0).unwrap();
        let want = [1.0, 1.0, -4.0, -3.0, 3.0, 1.0];
        for (a, b) in q.coeffs().iter().zip(want) {
            assert!((a - b).abs() < 1e-12, "{q}");
        }
    }

    #[test]
    fn seventeen() {
        let t = build_period_tower(17).unwrap();
        assert_eq!(t.level_degrees, vec![2, 2, 2]);
        let s = 17f64.sqrt();
        let mut first: Vec<f64> = t.levels[1].iter().map(|v| v.to_f64()).collect();
        first.sort_by(f64::total_cmp);
        assert!((first[0] - (-1.0 - s) / 2.0).abs() < 1e-15);
        assert!((first[1] - (-1.0 + s) / 2.0).abs() < 1e-15);
        let q = step_polynomial(&t, 0, 0).unwrap();
        let rounded: Vec<f64> = q.coeffs().iter().map(|c| c.round()).collect();
        assert_eq!(rounded, vec![1.0, 1.0, -4.0]);
    }

    #[test]
    fn three() {
        let t = build_period_tower(3).unwrap();
        assert!(t.level_degrees.is_empty());
        assert!(close(t.target(0), -1.0, 1e-30));
        let q = step_polynomial(&t, 0, 0).unwrap();
        assert_eq!(q.coeffs(), &[1.0, 1.0]);
    }

    #[test]
    fn telescoping_and_target() {
        for p in [5u64, 7, 13, 17, 31, 43, 199] {
            let t = build_period_tower(p).unwrap();
            assert!((t.levels[0][0] + Dd::ONE).abs().hi < 1e-28, "p={p}");
            for j in 0..t.depth() {
                for i in 0..t.width(j) {
                    let sum = t
                        .children(j, i)
                        .unwrap()
                        .into_iter()
                        .fold(Dd::ZERO, |a, b| a + b);
                    assert!((sum - t.levels[j][i]).abs().hi < 1e-28);
                }
            }
            let last = t.target(t.depth());
            let want = Dd::cos_two_pi_frac(1, p as i64).mul_f64(2.0);
            assert!((last - want).abs().hi < 1e-30);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(build_period_tower(15).is_err());
        assert!(build_period_tower(2).is_err());
        let t = build_period_tower(13).unwrap();
        assert!(step_polynomial(&t, 5, 0).is_err());
        assert!(step_polynomial(&t, 0, 1).is_err());
    }
}
