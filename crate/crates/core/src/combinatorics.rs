//! Exact integer combinatorics: totient, multinomials, necklace counts,
//! restricted partitions and bounded compositions.
//!
//! All counts are [`BigUint`]; nothing here wraps on overflow.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Multiplicities `(β_1, …, β_r)` of object kinds in a multiset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiplicityVector(Vec<u64>);

impl MultiplicityVector {
    pub fn new(entries: Vec<u64>) -> Self {
        MultiplicityVector(entries)
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn kinds(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    /// The vector with zero entries removed.
    pub fn nonzero(&self) -> MultiplicityVector {
        MultiplicityVector(self.0.iter().copied().filter(|&b| b > 0).collect())
    }

    /// gcd of the entries; 0 for an all-zero or empty vector.
    pub fn gcd(&self) -> u64 {
        self.0.iter().fold(0, |g, &b| g.gcd(&b))
    }
}

impl From<Vec<u64>> for MultiplicityVector {
    fn from(entries: Vec<u64>) -> Self {
        MultiplicityVector(entries)
    }
}

impl fmt::Display for MultiplicityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", body.join(","))
    }
}

/// A partition of `n`, stored with parts in non-increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegerPartition {
    parts: Vec<u64>,
}

impl IntegerPartition {
    pub fn new(mut parts: Vec<u64>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        IntegerPartition { parts }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn total(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Distinct part values in increasing order, with their multiplicities.
    pub fn multiplicities(&self) -> (Vec<u64>, MultiplicityVector) {
        let mut values: Vec<u64> = Vec::new();
        let mut counts: Vec<u64> = Vec::new();
        for &p in self.parts.iter().rev() {
            match values.last() {
                Some(&last) if last == p => *counts.last_mut().unwrap() += 1,
                _ => {
                    values.push(p);
                    counts.push(1);
                }
            }
        }
        (values, MultiplicityVector(counts))
    }

    pub fn distinct_parts(&self) -> usize {
        self.multiplicities().0.len()
    }
}

impl fmt::Display for IntegerPartition {
    /// Parts in increasing order, e.g. `2+2+4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.parts.iter().rev().map(u64::to_string).collect();
        f.write_str(&body.join("+"))
    }
}

/// Euler's totient.
pub fn totient(m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::domain("totient is undefined at 0"));
    }
    let mut rest = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            while rest % p == 0 {
                rest /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if rest > 1 {
        result -= result / rest;
    }
    Ok(result)
}

/// Positive divisors of `n` in increasing order. Empty for `n = 0`.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc * (n - i) is always divisible by (i + 1) here
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub(crate) fn multinomial(parts: impl IntoIterator<Item = u64>) -> BigUint {
    let mut acc = BigUint::one();
    let mut running = 0;
    for b in parts {
        running += b;
        acc *= binomial(running, b);
    }
    acc
}

/// Linear arrangements of a multiset: `(Σβ)! / Π β_i!`.
pub fn linear_arrangements(beta: &MultiplicityVector) -> Result<BigUint> {
    if beta.total() == 0 {
        return Err(Error::domain(format!(
            "linear arrangements need at least one object, got {beta}"
        )));
    }
    Ok(multinomial(beta.entries().iter().copied()))
}

/// Necklaces (arrangements on a circle up to rotation) of a multiset.
///
/// Zero entries are ignored. Uses the totient-weighted multinomial sum over
/// divisors of `gcd(β)`, which is exact.
pub fn circular_arrangements(beta: &MultiplicityVector) -> Result<BigUint> {
    let beta = beta.nonzero();
    let m = beta.total();
    if m == 0 {
        return Err(Error::domain(
            "circular arrangements need at least one object",
        ));
    }
    let mut sum = BigUint::zero();
    for d in divisors(beta.gcd()) {
        let phi = totient(d)?;
        sum += multinomial(beta.entries().iter().map(|b| b / d)) * phi;
    }
    let (quotient, remainder) = sum.div_rem(&BigUint::from(m));
    debug_assert!(remainder.is_zero());
    Ok(quotient)
}

/// All partitions of `n` with every part `>= min_part`, in lexicographic
/// order of their non-increasing part lists.
pub fn partitions_with_min_part(n: u64, min_part: u64) -> Vec<IntegerPartition> {
    fn go(rest: u64, max: u64, min: u64, prefix: &mut Vec<u64>, out: &mut Vec<IntegerPartition>) {
        if rest == 0 {
            out.push(IntegerPartition {
                parts: prefix.clone(),
            });
            return;
        }
        for p in min..=max.min(rest) {
            prefix.push(p);
            go(rest - p, p, min, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let min = min_part.max(1);
    go(n, n, min, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Partitions of `n` into parts `>= 2` with at least two distinct part values.
pub fn enumerate_mixed_partitions(n: u64) -> Result<Vec<IntegerPartition>> {
    if n < 2 {
        return Err(Error::domain(format!(
            "mixed partitions need n >= 2, got {n}"
        )));
    }
    Ok(partitions_with_min_part(n, 2)
        .into_iter()
        .filter(|p| p.distinct_parts() >= 2)
        .collect())
}

/// All length-`kinds` vectors of nonnegative integers summing to `total`,
/// ordered by decreasing first entry, then recursively.
pub fn enumerate_multiplicity_solutions(
    kinds: usize,
    total: u64,
) -> Result<Vec<MultiplicityVector>> {
    if total == 0 {
        return Err(Error::domain("multiplicity solutions need total >= 1"));
    }
    fn go(kinds: usize, rest: u64, prefix: &mut Vec<u64>, out: &mut Vec<MultiplicityVector>) {
        if kinds == 1 {
            prefix.push(rest);
            out.push(MultiplicityVector(prefix.clone()));
            prefix.pop();
            return;
        }
        for first in (0..=rest).rev() {
            prefix.push(first);
            go(kinds - 1, rest - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if kinds > 0 {
        go(kinds, total, &mut Vec::with_capacity(kinds), &mut out);
    }
    Ok(out)
}

/// Number of necklaces of length `len` over an alphabet of `letters`
/// symbols, i.e. `Σ_{x} CP(x̂)` over all multiplicity solutions. Computed
/// directly as `(1/len) Σ_{d | len} φ(d) letters^(len/d)`.
pub fn necklaces_over_alphabet(letters: &BigUint, len: u64) -> BigUint {
    if letters.is_zero() || len == 0 {
        return BigUint::zero();
    }
    let mut sum = BigUint::zero();
    for d in divisors(len) {
        let phi = totient(d).expect("divisors are positive");
        sum += letters.pow((len / d) as u32) * phi;
    }
    sum / len
}
