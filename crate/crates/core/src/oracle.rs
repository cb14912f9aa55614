//! Brute-force ground truth: enumerate every closed side word through side 1
//! and count rotation classes directly.
//!
//! A class of primitive cyclic words has exactly one member that is strictly
//! smaller than all of its proper rotations (its Lyndon representative), and
//! since side 1 is the smallest label that member starts at side 1. Counting
//! orbits therefore needs no class set: enumerate the walks that start at
//! side 1 and keep those that are Lyndon words with at least three distinct
//! sides.

use std::fmt;
use std::str::FromStr;

use crate::exec::{self, Exec};
use crate::transition::TransitionSystem;
use crate::{Error, Result};

/// Default upper bound on the period for exhaustive enumeration (`2^(n-1)` walks).
pub const DEFAULT_ENUMERATION_CAP: usize = 26;

/// Depth at which walks are split into independent tasks.
const SPLIT_DEPTH: usize = 10;

/// The cyclic sequence of side labels visited by an orbit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SideWord(Vec<u32>);

impl SideWord {
    pub fn new(labels: Vec<u32>) -> Result<Self> {
        if labels.len() < 2 {
            return Err(Error::domain(format!(
                "a side word needs at least 2 labels, got {}",
                labels.len()
            )));
        }
        Ok(SideWord(labels))
    }

    pub fn labels(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn distinct_sides(&self) -> usize {
        let mut seen = self.0.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// Checks every step, including the wrap from the last label to the first.
    pub fn check_admissible(&self, system: &TransitionSystem) -> Result<()> {
        for &label in &self.0 {
            system.check_label(label)?;
        }
        let n = self.0.len();
        for i in 0..n {
            let (from, to) = (self.0[i], self.0[(i + 1) % n]);
            if !system.is_successor(from, to) {
                return Err(Error::Inadmissible {
                    position: i + 1,
                    from,
                    to,
                    allowed: system.successors_unchecked(from),
                });
            }
        }
        Ok(())
    }

    pub fn rotated(&self, by: usize) -> SideWord {
        let mut v = self.0.clone();
        let n = v.len();
        v.rotate_left(by % n.max(1));
        SideWord(v)
    }
}

impl fmt::Display for SideWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&body.join(","))
    }
}

impl FromStr for SideWord {
    type Err = Error;

    /// Parses comma-separated 1-based labels, e.g. `1,2,3`.
    fn from_str(s: &str) -> Result<Self> {
        let labels = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::domain(format!("invalid side label {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        SideWord::new(labels)
    }
}

/// Start index of the lexicographically least rotation (Booth).
fn least_rotation(s: &[u32]) -> usize {
    let n = s.len();
    let at = |idx: isize| s[idx as usize % n];
    let mut failure = vec![-1isize; 2 * n];
    let mut k: isize = 0;
    for j in 1..(2 * n) as isize {
        let sj = at(j);
        let mut i = failure[(j - k - 1) as usize];
        while i != -1 && sj != at(k + i + 1) {
            if sj < at(k + i + 1) {
                k = j - i - 1;
            }
            i = failure[i as usize];
        }
        if sj != at(k + i + 1) {
            // here i == -1
            if sj < at(k) {
                k = j;
            }
            failure[(j - k) as usize] = -1;
        } else {
            failure[(j - k) as usize] = i + 1;
        }
    }
    k as usize % n.max(1)
}

/// The lexicographically smallest rotation.
pub fn canonical_rotation(word: &SideWord) -> SideWord {
    word.rotated(least_rotation(&word.0))
}

/// `true` unless the word is a repetition of a strictly shorter block.
pub fn is_primitive(word: &SideWord) -> bool {
    let s = &word.0;
    let n = s.len();
    (1..n)
        .filter(|d| n % d == 0)
        .all(|d| (d..n).any(|i| s[i] != s[i - d]))
}

/// Strictly smaller than every proper rotation (Duval's scan).
fn is_lyndon(s: &[u32]) -> bool {
    let n = s.len();
    let (mut k, mut j) = (0, 1);
    while j < n && s[k] <= s[j] {
        if s[k] < s[j] {
            k = 0;
        } else {
            k += 1;
        }
        j += 1;
    }
    j == n && k == 0
}

fn at_least_three_sides(s: &[u32]) -> bool {
    let a = s[0];
    match s.iter().find(|&&x| x != a) {
        Some(&b) => s.iter().any(|&x| x != a && x != b),
        None => false,
    }
}

/// Exhaustive enumerator for one polygon.
#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    system: TransitionSystem,
    cap: usize,
    exec: Exec,
}

impl Oracle {
    pub fn new(k: u32) -> Result<Self> {
        Ok(Oracle {
            system: TransitionSystem::new(k)?,
            cap: DEFAULT_ENUMERATION_CAP,
            exec: Exec::default(),
        })
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn system(&self) -> &TransitionSystem {
        &self.system
    }

    fn check(&self, n: usize) -> Result<()> {
        if n < 2 {
            return Err(Error::domain(format!(
                "period n must be at least 2, got {n}"
            )));
        }
        if n > self.cap {
            return Err(Error::ResourceCap { n, cap: self.cap });
        }
        Ok(())
    }

    /// Walk prefixes of length `min(n, SPLIT_DEPTH)` starting at side 1, in DFS order.
    fn prefixes(&self, n: usize) -> Vec<Vec<u32>> {
        let depth = n.min(SPLIT_DEPTH);
        let mut layer = vec![vec![1u32]];
        for _ in 1..depth {
            layer = layer
                .into_iter()
                .flat_map(|p| {
                    let (a, b) = self.system.successors_unchecked(*p.last().unwrap());
                    [a, b].into_iter().map(move |s| {
                        let mut q = p.clone();
                        q.push(s);
                        q
                    })
                })
                .collect();
        }
        layer
    }

    /// Visits every closed walk of length `n` that extends `prefix`.
    fn extend<F: FnMut(&[u32])>(&self, prefix: &[u32], n: usize, visit: &mut F) {
        fn go<F: FnMut(&[u32])>(
            sys: &TransitionSystem,
            buf: &mut Vec<u32>,
            n: usize,
            visit: &mut F,
        ) {
            let last = *buf.last().unwrap();
            if buf.len() == n {
                if sys.is_successor(last, 1) {
                    visit(buf);
                }
                return;
            }
            let (a, b) = sys.successors_unchecked(last);
            for s in [a, b] {
                buf.push(s);
                go(sys, buf, n, visit);
                buf.pop();
            }
        }
        let mut buf = Vec::with_capacity(n);
        buf.extend_from_slice(prefix);
        go(&self.system, &mut buf, n, visit);
    }

    /// All closed walks `1 → … → 1` of length `n` as words starting at side 1,
    /// in DFS order (first successor first).
    pub fn closed_words(&self, n: usize) -> Result<Vec<SideWord>> {
        self.check(n)?;
        let chunks = exec::map_collect(self.exec, &self.prefixes(n), |p| {
            let mut out = Vec::new();
            self.extend(p, n, &mut |w| out.push(SideWord(w.to_vec())));
            out
        });
        Ok(chunks.into_iter().flatten().collect())
    }

    /// Rotation classes of primitive closed words of length `n` with at least
    /// three distinct sides. `0` at `n = 2`.
    pub fn count(&self, n: usize) -> Result<u64> {
        self.check(n)?;
        Ok(exec::map_sum(self.exec, &self.prefixes(n), |p| {
            let mut hits = 0u64;
            self.extend(p, n, &mut |w| {
                if is_lyndon(w) && at_least_three_sides(w) {
                    hits += 1;
                }
            });
            hits
        }))
    }

    /// The canonical representatives counted by [`Oracle::count`], sorted.
    pub fn canonical_orbits(&self, n: usize) -> Result<Vec<SideWord>> {
        self.check(n)?;
        let chunks = exec::map_collect(self.exec, &self.prefixes(n), |p| {
            let mut out = Vec::new();
            self.extend(p, n, &mut |w| {
                if is_lyndon(w) && at_least_three_sides(w) {
                    out.push(SideWord(w.to_vec()));
                }
            });
            out
        });
        let mut all: Vec<SideWord> = chunks.into_iter().flatten().collect();
        all.sort();
        Ok(all)
    }
}

pub fn enumerate_closed_words(k: u32, n: usize) -> Result<Vec<SideWord>> {
    Oracle::new(k)?.closed_words(n)
}

pub fn count_orbits_bruteforce(k: u32, n: usize) -> Result<u64> {
    Oracle::new(k)?.count(n)
}

pub fn list_canonical_orbits(k: u32, n: usize) -> Result<Vec<SideWord>> {
    Oracle::new(k)?.canonical_orbits(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use proptest::prelude::*;
    use std::collections::BTreeMap;

    fn w(labels: &[u32]) -> SideWord {
        SideWord::new(labels.to_vec()).unwrap()
    }

    fn words(list: &[&[u32]]) -> Vec<SideWord> {
        list.iter().map(|l| w(l)).collect()
    }

    fn min_rotation_naive(word: &SideWord) -> SideWord {
        (0..word.len()).map(|r| word.rotated(r)).min().unwrap()
    }

    #[test]
    fn closed_word_examples() {
        let mut four = enumerate_closed_words(1, 4).unwrap();
        four.sort();
        let mut expected = words(&[
            &[1, 2, 1, 2],
            &[1, 3, 1, 3],
            &[1, 2, 1, 3],
            &[1, 3, 1, 2],
            &[1, 2, 3, 2],
            &[1, 3, 2, 3],
        ]);
        expected.sort();
        assert_eq!(four, expected);
        assert!(enumerate_closed_words(2, 3).unwrap().is_empty());
        assert_eq!(
            enumerate_closed_words(1, 3).unwrap(),
            words(&[&[1, 2, 3], &[1, 3, 2]])
        );
    }

    #[test]
    fn canonical_rotation_examples() {
        assert_eq!(
            canonical_rotation(&w(&[1, 3, 2, 1, 2, 3])),
            w(&[1, 2, 3, 1, 3, 2])
        );
        assert_eq!(canonical_rotation(&w(&[1, 2, 3])), w(&[1, 2, 3]));
        assert_eq!(canonical_rotation(&w(&[2, 3, 1])), w(&[1, 2, 3]));
    }

    #[test]
    fn primitivity_examples() {
        assert!(!is_primitive(&w(&[1, 2, 1, 2])));
        assert!(is_primitive(&w(&[1, 2, 3, 2])));
        assert!(!is_primitive(&w(&[1, 2, 3, 1, 2, 3])));
        assert!(!is_primitive(&w(&[2, 2])));
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(count_orbits_bruteforce(1, 8).unwrap(), 30);
        assert_eq!(count_orbits_bruteforce(2, 6).unwrap(), 10);
        assert_eq!(count_orbits_bruteforce(1, 2).unwrap(), 0);
        assert_eq!(
            list_canonical_orbits(1, 4).unwrap(),
            words(&[&[1, 2, 1, 3], &[1, 2, 3, 2], &[1, 3, 2, 3]])
        );
    }

    #[test]
    fn listing_examples() {
        assert_eq!(
            list_canonical_orbits(1, 3).unwrap(),
            words(&[&[1, 2, 3], &[1, 3, 2]])
        );
        assert_eq!(
            list_canonical_orbits(2, 5).unwrap(),
            words(&[&[1, 3, 5, 2, 4], &[1, 4, 2, 5, 3]])
        );
        let six = list_canonical_orbits(1, 6).unwrap();
        for expected in [w(&[1, 2, 3, 2, 1, 3]), w(&[1, 2, 1, 3, 1, 2])] {
            assert!(six.contains(&canonical_rotation(&expected)), "{expected}");
        }
    }

    #[test]
    fn cap_and_domain_errors() {
        let oracle = Oracle::new(1).unwrap().with_cap(8);
        assert_eq!(oracle.count(9), Err(Error::ResourceCap { n: 9, cap: 8 }));
        assert!(oracle.count(1).is_err());
        assert!(Oracle::new(0).is_err());
    }

    #[test]
    fn admissibility() {
        let tri = TransitionSystem::new(1).unwrap();
        assert!(w(&[1, 2, 3]).check_admissible(&tri).is_ok());
        match w(&[1, 2, 2]).check_admissible(&tri) {
            Err(Error::Inadmissible {
                from: 2,
                to: 2,
                position: 2,
                ..
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(w(&[1, 4]).check_admissible(&tri).is_err());
        assert!("1, 2,3".parse::<SideWord>().is_ok());
        assert!("1,x".parse::<SideWord>().is_err());
        assert!("1".parse::<SideWord>().is_err());
    }

    #[test]
    fn every_enumerated_word_is_admissible() {
        for k in 1..=3 {
            let sys = TransitionSystem::new(k).unwrap();
            for n in 2..=12 {
                for word in enumerate_closed_words(k, n).unwrap() {
                    assert_eq!(word.labels()[0], 1);
                    word.check_admissible(&sys).unwrap();
                }
            }
        }
    }

    #[test]
    fn enumeration_size_matches_walk_count() {
        for k in 1..=5u32 {
            let sys = TransitionSystem::new(k).unwrap();
            for n in 2..=20usize {
                let words = Oracle::new(k).unwrap().closed_words(n).unwrap();
                assert_eq!(
                    BigUint::from(words.len()),
                    sys.closed_walk_count_binomial(n as u64),
                    "k={k} n={n}"
                );
            }
        }
    }

    #[test]
    fn lyndon_count_matches_class_set() {
        for k in 1..=3 {
            for n in 2..=12 {
                let mut classes = std::collections::BTreeSet::new();
                for word in enumerate_closed_words(k, n).unwrap() {
                    if is_primitive(&word) && word.distinct_sides() >= 3 {
                        classes.insert(min_rotation_naive(&word));
                    }
                }
                let listed = list_canonical_orbits(k, n).unwrap();
                assert_eq!(
                    listed,
                    classes.into_iter().collect::<Vec<_>>(),
                    "k={k} n={n}"
                );
            }
        }
    }

    #[test]
    fn class_sizes_account_for_every_walk() {
        for k in 1..=3 {
            for n in 2..=12 {
                let all = enumerate_closed_words(k, n).unwrap();
                let mut classes: BTreeMap<SideWord, usize> = BTreeMap::new();
                for word in &all {
                    *classes.entry(canonical_rotation(word)).or_default() += 1;
                }
                let mut total = 0;
                for (rep, members) in &classes {
                    let starts: std::collections::BTreeSet<SideWord> = (0..n)
                        .map(|r| rep.rotated(r))
                        .filter(|x| x.labels()[0] == 1)
                        .collect();
                    assert_eq!(starts.len(), *members);
                    if is_primitive(rep) {
                        let ones = rep.labels().iter().filter(|&&x| x == 1).count();
                        assert_eq!(*members, ones);
                    }
                    total += members;
                }
                assert_eq!(total, all.len());
            }
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        for k in 1..=2 {
            for n in [5, 11, 14] {
                let seq = Oracle::new(k).unwrap().with_exec(Exec::Sequential);
                let par = Oracle::new(k).unwrap().with_exec(Exec::Parallel);
                assert_eq!(seq.count(n).unwrap(), par.count(n).unwrap());
                assert_eq!(
                    seq.canonical_orbits(n).unwrap(),
                    par.canonical_orbits(n).unwrap()
                );
                assert_eq!(seq.closed_words(n).unwrap(), par.closed_words(n).unwrap());
            }
        }
    }

    proptest! {
        #[test]
        fn booth_matches_naive(labels in proptest::collection::vec(1u32..4, 2..16)) {
            let word = SideWord::new(labels).unwrap();
            prop_assert_eq!(canonical_rotation(&word), min_rotation_naive(&word));
        }

        #[test]
        fn canonical_rotation_is_class_invariant(
            labels in proptest::collection::vec(1u32..6, 2..20),
            by in 0usize..40,
        ) {
            let word = SideWord::new(labels).unwrap();
            let canon = canonical_rotation(&word);
            prop_assert_eq!(canonical_rotation(&canon), canon.clone());
            prop_assert_eq!(canonical_rotation(&word.rotated(by)), canon);
        }

        #[test]
        fn lyndon_iff_primitive_and_minimal(labels in proptest::collection::vec(1u32..4, 2..14)) {
            let word = SideWord::new(labels).unwrap();
            let expected = is_primitive(&word) && canonical_rotation(&word) == word;
            prop_assert_eq!(is_lyndon(word.labels()), expected);
        }
    }
}
