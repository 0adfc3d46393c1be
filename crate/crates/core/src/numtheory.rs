//! Integer plumbing for the constructibility predicates: factorization,
//! totients and primitive roots.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest integer accepted by [`factorize`] (trial division).
pub const FACTOR_BOUND: u64 = 1_000_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub m: u64,
    /// `(prime, exponent)`, primes ascending.
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Every prime repeated by its exponent, ascending.
    pub fn prime_chain(&self) -> Vec<u64> {
        self.factors
            .iter()
            .flat_map(|&(p, e)| std::iter::repeat_n(p, e as usize))
            .collect()
    }

    /// Largest prime factor, or 1 for `m = 1`.
    pub fn largest_prime(&self) -> u64 {
        self.factors.last().map_or(1, |&(p, _)| p)
    }

    pub fn product(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e)).product()
    }
}

pub fn factorize(m: u64) -> Result<Factorization> {
    if m == 0 || m > FACTOR_BOUND {
        return Err(Error::Unsupported(format!(
            "{m} is outside the factorization range 1..={FACTOR_BOUND}"
        )));
    }
    let mut factors = Vec::new();
    let mut n = m;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            factors.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push((n, 1));
    }
    Ok(Factorization { m, factors })
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn euler_phi(m: u64) -> Result<u64> {
    let f = factorize(m)?;
    Ok(f.factors.iter().fold(m, |acc, &(p, _)| acc / p * (p - 1)))
}

/// Fold width sufficient for steps whose largest prime degree is `p`.
pub fn folds_for_prime(p: u64) -> u64 {
    p.saturating_sub(2).max(1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TotientReport {
    pub m: u64,
    pub phi: u64,
    pub phi_factors: Factorization,
    pub largest_prime: u64,
    /// `max(1, largest_prime − 2)`.
    pub required_n: u64,
}

pub fn totient_report(m: u64) -> Result<TotientReport> {
    let phi = euler_phi(m)?;
    let phi_factors = factorize(phi)?;
    let largest_prime = phi_factors.largest_prime();
    Ok(TotientReport {
        m,
        phi,
        phi_factors,
        largest_prime,
        required_n: folds_for_prime(largest_prime),
    })
}

/// Fold width sufficient to divide any angle into `m` equal parts.
pub fn section_required_n(m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::OutOfDomain(format!("cannot divide into {m} parts")));
    }
    Ok(folds_for_prime(factorize(m)?.largest_prime()))
}

fn check_folds(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::OutOfDomain("fold count must be at least 1".into()));
    }
    Ok(())
}

/// Whether every angle can be divided into `m` parts with `n`-fold origami:
/// the largest prime factor of `m` is at most `n + 2`.
pub fn check_section(m: u64, n: u64) -> Result<bool> {
    check_folds(n)?;
    Ok(section_required_n(m)? <= n)
}

/// Whether the regular `m`-gon is `n`-fold constructible: the largest prime
/// factor of `φ(m)` is at most `n + 2`.
pub fn check_polygon(m: u64, n: u64) -> Result<bool> {
    check_folds(n)?;
    if m < 3 {
        return Err(Error::OutOfDomain(format!(
            "no regular polygon with {m} sides"
        )));
    }
    Ok(totient_report(m)?.required_n <= n)
}

/// Sectioning by every prime of `φ(m)` implies the polygon predicate.
pub fn gleason_consistency(m: u64, n: u64) -> Result<bool> {
    let report = totient_report(m)?;
    let mut antecedent = true;
    for q in report.phi_factors.primes() {
        antecedent &= check_section(q, n)?;
    }
    Ok(!antecedent || check_polygon(m, n)?)
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut acc: u128 = 1;
    let mut base = b as u128 % m128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m128;
        }
        base = base * base % m128;
        e >>= 1;
    }
    acc as u64
}

/// Smallest generator of the multiplicative group modulo the prime `p`.
pub fn primitive_root_mod(p: u64) -> Result<u64> {
    if p < 3 || !is_prime(p) {
        return Err(Error::OutOfDomain(format!("{p} is not an odd prime")));
    }
    let order_primes: Vec<u64> = factorize(p - 1)?.primes().collect();
    (2..p)
        .find(|&g| {
            order_primes
                .iter()
                .all(|&q| pow_mod(g, (p - 1) / q, p) != 1)
        })
        .ok_or_else(|| Error::NumericFailure(format!("no primitive root modulo {p}")))
}

/// Multiplicative order of `g` modulo `p` (for tests and sanity checks).
pub fn multiplicative_order(g: u64, p: u64) -> u64 {
    let mut x = g % p;
    let mut k = 1;
    while x != 1 {
        x = x * g % p;
        k += 1;
    }
    k
}

/// `(x, y)` with `a·x + b·y = gcd(a, b)`.
pub fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = extended_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}
