//! The orbit-counting formula.
//!
//! A closed side sequence through side 1 splits into pure blocks (walks that
//! touch side 1 only at their start). Counting proceeds by block sizes:
//!
//! * partitions of `n` with at least two distinct block sizes contribute
//!   `F(p) · Π P(p_i)`, where `F(p)` is the number of circular arrangements of
//!   the sizes and `P(r)` the number of pure blocks of length `r`;
//! * partitions into `n/d` equal blocks of size `d` contribute the number of
//!   necklaces of length `n/d` over the `P(d)` pure blocks of that size;
//! * orbits of every proper divisor period `1 < d < n` are subtracted, since
//!   their repeated traversals were counted above.
//!
//! `O(2) = 2` is a base convention of the recursion: it stands for the two
//! sequences that alternate between side 1 and one other side, which are not
//! realizable as orbits. The brute-force oracle reports 0 at `n = 2`.
//!
//! The mixed term is evaluated exactly as stated above. When a size arrangement
//! has a nontrivial rotational symmetry (sizes `a, b, a, b` and the like) the
//! product overcounts block necklaces; [`OrbitCounter::diagnose`] reports the
//! exact per-partition value alongside, and [`OrbitCounter::corrected_count`]
//! evaluates the recursion with the exact terms.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::combinatorics::{
    circular_arrangements, divisors, enumerate_mixed_partitions, multinomial,
    necklaces_over_alphabet, totient, IntegerPartition,
};
use crate::exec::{self, Exec};
use crate::transition::TransitionSystem;
use crate::{Error, Result};

pub(crate) mod big_json {
    use num_bigint::BigUint;
    use serde::{Serialize, Serializer};

    /// Writes a [`BigUint`] as a plain JSON number of arbitrary length.
    pub fn serialize<S: Serializer>(value: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        let number: serde_json::Number = value
            .to_string()
            .parse()
            .map_err(serde::ser::Error::custom)?;
        number.serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MixedTerm {
    #[serde(serialize_with = "partition_json")]
    pub partition: IntegerPartition,
    /// Circular arrangements of the block sizes.
    #[serde(with = "big_json")]
    pub necklaces: BigUint,
    /// Product of the pure-block counts over all parts.
    #[serde(with = "big_json")]
    pub pure_product: BigUint,
    #[serde(with = "big_json")]
    pub contribution: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EqualPartTerm {
    pub divisor: u64,
    /// Number of distinct pure blocks of length `divisor`.
    #[serde(with = "big_json")]
    pub pure_kinds: BigUint,
    #[serde(with = "big_json")]
    pub contribution: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubtractionTerm {
    pub divisor: u64,
    #[serde(with = "big_json")]
    pub orbits: BigUint,
}

/// Every term of the counting formula for one `(k, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountBreakdown {
    pub k: u32,
    pub n: u64,
    pub mixed_terms: Vec<MixedTerm>,
    pub equal_part_terms: Vec<EqualPartTerm>,
    pub subtraction_terms: Vec<SubtractionTerm>,
    #[serde(with = "big_json")]
    pub total: BigUint,
}

impl CountBreakdown {
    pub fn mixed_total(&self) -> BigUint {
        self.mixed_terms.iter().map(|t| &t.contribution).sum()
    }

    pub fn equal_part_total(&self) -> BigUint {
        self.equal_part_terms.iter().map(|t| &t.contribution).sum()
    }

    pub fn subtraction_total(&self) -> BigUint {
        self.subtraction_terms.iter().map(|t| &t.orbits).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitCount {
    pub k: u32,
    pub n: u64,
    #[serde(with = "big_json")]
    pub count: BigUint,
}

/// Printed versus exact count of block necklaces for one mixed partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionDiagnosis {
    #[serde(serialize_with = "partition_json")]
    pub partition: IntegerPartition,
    #[serde(with = "big_json")]
    pub formula_term: BigUint,
    #[serde(with = "big_json")]
    pub exact_term: BigUint,
}

impl PartitionDiagnosis {
    pub fn agrees(&self) -> bool {
        self.formula_term == self.exact_term
    }
}

fn partition_json<S: serde::Serializer>(
    p: &IntegerPartition,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(p.parts().iter().rev())
}

/// Evaluates the counting formula for one polygon, caching pure-block
/// counts and orbit counts of smaller periods.
///
/// The cache is owned by the counter (`&mut self`); share results across
/// threads by building one counter per thread.
#[derive(Debug, Clone)]
pub struct OrbitCounter {
    system: TransitionSystem,
    pure: Vec<BigUint>,
    memo: Option<HashMap<u64, BigUint>>,
    corrected_memo: HashMap<u64, BigUint>,
    exec: Exec,
}

impl OrbitCounter {
    pub fn new(k: u32) -> Result<Self> {
        Ok(OrbitCounter {
            system: TransitionSystem::new(k)?,
            pure: Vec::new(),
            memo: Some(HashMap::new()),
            corrected_memo: HashMap::new(),
            exec: Exec::default(),
        })
    }

    /// A counter that recomputes every smaller period from scratch.
    pub fn without_memo(k: u32) -> Result<Self> {
        Ok(OrbitCounter {
            memo: None,
            ..Self::new(k)?
        })
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn system(&self) -> &TransitionSystem {
        &self.system
    }

    pub fn k(&self) -> u32 {
        self.system.k()
    }

    fn check_period(n: u64) -> Result<()> {
        if n < 2 {
            return Err(Error::domain(format!(
                "period n must be at least 2, got {n}"
            )));
        }
        Ok(())
    }

    /// `P(r)` with a growable table.
    pub fn pure_orbits(&mut self, r: u64) -> BigUint {
        if (r as usize) >= self.pure.len() {
            let target = (r + 1).max(2 * self.pure.len() as u64).max(16);
            self.pure = self.system.pure_orbit_counts(target - 1);
        }
        self.pure[r as usize].clone()
    }

    fn ensure_pure(&mut self, n: u64) {
        self.pure_orbits(n);
    }

    pub fn count(&mut self, n: u64) -> Result<OrbitCount> {
        Self::check_period(n)?;
        let count = self.count_value(n)?;
        Ok(OrbitCount {
            k: self.k(),
            n,
            count,
        })
    }

    fn count_value(&mut self, n: u64) -> Result<BigUint> {
        if n == 2 {
            return Ok(BigUint::from(2u8));
        }
        if let Some(hit) = self.memo.as_ref().and_then(|m| m.get(&n)) {
            return Ok(hit.clone());
        }
        let total = self.breakdown_unchecked(n)?.total;
        if let Some(memo) = self.memo.as_mut() {
            memo.insert(n, total.clone());
        }
        Ok(total)
    }

    pub fn breakdown(&mut self, n: u64) -> Result<CountBreakdown> {
        if n < 3 {
            return Err(Error::domain(format!(
                "the breakdown needs n >= 3 (n = 2 is a base convention), got {n}"
            )));
        }
        self.breakdown_unchecked(n)
    }

    fn breakdown_unchecked(&mut self, n: u64) -> Result<CountBreakdown> {
        self.ensure_pure(n);
        let pure = &self.pure;

        let partitions = enumerate_mixed_partitions(n)?;
        let mixed_terms: Vec<MixedTerm> = exec::map_collect(self.exec, &partitions, |p| {
            let (_, beta) = p.multiplicities();
            let necklaces = circular_arrangements(&beta).expect("partitions are nonempty");
            let pure_product: BigUint = p
                .parts()
                .iter()
                .map(|&r| pure[r as usize].clone())
                .product();
            MixedTerm {
                partition: p.clone(),
                contribution: &necklaces * &pure_product,
                necklaces,
                pure_product,
            }
        });

        let equal_part_terms: Vec<EqualPartTerm> = divisors(n)
            .into_iter()
            .filter(|&d| d != 1)
            .map(|d| {
                let kinds = pure[d as usize].clone();
                EqualPartTerm {
                    divisor: d,
                    contribution: necklaces_over_alphabet(&kinds, n / d),
                    pure_kinds: kinds,
                }
            })
            .collect();

        let mut subtraction_terms = Vec::new();
        for d in divisors(n).into_iter().filter(|&d| d != 1 && d != n) {
            subtraction_terms.push(SubtractionTerm {
                divisor: d,
                orbits: self.count_value(d)?,
            });
        }

        let mut breakdown = CountBreakdown {
            k: self.k(),
            n,
            mixed_terms,
            equal_part_terms,
            subtraction_terms,
            total: BigUint::zero(),
        };
        let positive = breakdown.mixed_total() + breakdown.equal_part_total();
        let negative = breakdown.subtraction_total();
        if positive < negative {
            return Err(Error::domain(format!(
                "counting formula went negative at k = {}, n = {n}",
                self.k()
            )));
        }
        breakdown.total = positive - negative;
        Ok(breakdown)
    }

    /// Exact number of necklaces of pure blocks whose size multiset is `p`:
    /// a Burnside average over block rotations, in which a rotation by
    /// `m / t` positions fixes `multinomial(m/t; β/t) · Π P(a_i)^(β_i/t)`
    /// sequences.
    pub fn exact_block_necklaces(&mut self, p: &IntegerPartition) -> BigUint {
        self.ensure_pure(p.total());
        let (values, beta) = p.multiplicities();
        let m = beta.total();
        let mut sum = BigUint::zero();
        for t in divisors(beta.gcd()) {
            let arrangements = multinomial(beta.entries().iter().map(|b| b / t));
            let kinds: BigUint = values
                .iter()
                .zip(beta.entries())
                .map(|(&a, &b)| self.pure[a as usize].pow((b / t) as u32))
                .product();
            sum += arrangements * kinds * totient(t).expect("t >= 1");
        }
        let (q, r) = sum.div_rem(&BigUint::from(m));
        debug_assert!(r.is_zero());
        q
    }

    /// Compares each mixed term of the formula with the exact block-necklace count.
    pub fn diagnose(&mut self, n: u64) -> Result<Vec<PartitionDiagnosis>> {
        let breakdown = self.breakdown(n)?;
        Ok(breakdown
            .mixed_terms
            .into_iter()
            .map(|t| {
                let exact = self.exact_block_necklaces(&t.partition);
                PartitionDiagnosis {
                    partition: t.partition,
                    formula_term: t.contribution,
                    exact_term: exact,
                }
            })
            .collect())
    }

    /// The recursion with every mixed term replaced by its exact value.
    pub fn corrected_count(&mut self, n: u64) -> Result<BigUint> {
        Self::check_period(n)?;
        if n == 2 {
            return Ok(BigUint::from(2u8));
        }
        if let Some(hit) = self.corrected_memo.get(&n) {
            return Ok(hit.clone());
        }
        self.ensure_pure(n);
        let mut total = BigUint::zero();
        for p in enumerate_mixed_partitions(n)? {
            total += self.exact_block_necklaces(&p);
        }
        for d in divisors(n).into_iter().filter(|&d| d != 1) {
            total += necklaces_over_alphabet(&self.pure[d as usize], n / d);
        }
        for d in divisors(n).into_iter().filter(|&d| d != 1 && d != n) {
            total -= self.corrected_count(d)?;
        }
        self.corrected_memo.insert(n, total.clone());
        Ok(total)
    }
}

/// Number of periodic orbits of period `n` through side 1 of the regular
/// `(2k+1)`-gon, by the counting formula. `n = 2` returns the base value 2.
pub fn count_orbits(k: u32, n: u64) -> Result<OrbitCount> {
    OrbitCounter::new(k)?.count(n)
}

pub fn count_breakdown(k: u32, n: u64) -> Result<CountBreakdown> {
    OrbitCounter::new(k)?.breakdown(n)
}
