//! Side-transition graph of a regular `(2k+1)`-gon.
//!
//! A perpendicular raised from side `i` can only reach sides `i+k` and
//! `i+k+1` (1-based, cyclic). Closed walks through side 1 in this graph are
//! the candidate side sequences of periodic orbits; walks in the graph with
//! side 1 removed count the "pure" blocks between consecutive visits to side 1.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::combinatorics::binomial;
use crate::exec::Exec;
use crate::matrix::ExactMatrix;
use crate::{Error, Result};

/// The transition system of the regular polygon with `2k + 1` sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TransitionSystem {
    k: u32,
}

impl TransitionSystem {
    pub fn new(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::domain("k must be at least 1 (the triangle)"));
        }
        if k > 1 << 20 {
            return Err(Error::domain(format!("k = {k} is unreasonably large")));
        }
        Ok(TransitionSystem { k })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Number of sides, `2k + 1`.
    pub fn sides(&self) -> u32 {
        2 * self.k + 1
    }

    /// Reduces any integer to a side label in `1..=2k+1`.
    pub fn wrap(&self, x: i64) -> u32 {
        let m = self.sides() as i64;
        ((x - 1).rem_euclid(m) + 1) as u32
    }

    pub fn check_label(&self, i: u32) -> Result<()> {
        if i == 0 || i > self.sides() {
            return Err(Error::domain(format!(
                "side label {i} is outside 1..={}",
                self.sides()
            )));
        }
        Ok(())
    }

    /// The two sides reachable from side `i`, as `(i + k, i + k + 1)`.
    pub fn successors(&self, i: u32) -> Result<(u32, u32)> {
        self.check_label(i)?;
        Ok(self.successors_unchecked(i))
    }

    #[inline]
    pub(crate) fn successors_unchecked(&self, i: u32) -> (u32, u32) {
        let m = self.sides();
        ((i + self.k - 1) % m + 1, (i + self.k) % m + 1)
    }

    pub fn is_successor(&self, from: u32, to: u32) -> bool {
        let (a, b) = self.successors_unchecked(from);
        to == a || to == b
    }

    /// Sides from which side 1 is reachable: `k + 1` and `k + 2`.
    pub fn entry_sides(&self) -> [u32; 2] {
        [self.k + 1, self.k + 2]
    }

    pub fn adjacency_matrix(&self) -> ExactMatrix {
        let m = self.sides();
        let mut a = ExactMatrix::zeros(m as usize);
        for i in 1..=m {
            let (s, t) = self.successors_unchecked(i);
            a[((i - 1) as usize, (s - 1) as usize)] = BigUint::one();
            a[((i - 1) as usize, (t - 1) as usize)] = BigUint::one();
        }
        a
    }

    /// Adjacency matrix with every edge touching side 1 deleted.
    pub fn pruned_adjacency_matrix(&self) -> ExactMatrix {
        let mut b = self.adjacency_matrix();
        for j in 0..self.sides() as usize {
            b[(0, j)] = BigUint::zero();
            b[(j, 0)] = BigUint::zero();
        }
        b
    }

    /// Closed walks of length `n` from side 1 back to side 1: entry (1,1) of `A^n`.
    pub fn closed_walk_count(&self, n: u64) -> BigUint {
        self.closed_walk_count_with(n, Exec::default())
    }

    pub fn closed_walk_count_with(&self, n: u64, exec: Exec) -> BigUint {
        self.adjacency_matrix().pow_with(n, exec)[(0, 0)].clone()
    }

    /// Same count via `A = C^k + C^(k+1)` and the binomial theorem: the
    /// coefficient of the identity is the sum of `binom(n, j)` over the `j`
    /// with `(k+1) n - j ≡ 0 (mod 2k+1)`.
    pub fn closed_walk_count_binomial(&self, n: u64) -> BigUint {
        let m = self.sides() as u64;
        let k1 = (self.k as u64 + 1) % m;
        let base = (k1 * (n % m)) % m;
        (0..=n)
            .filter(|j| (base + m - j % m) % m == 0)
            .map(|j| binomial(n, j))
            .sum()
    }

    /// Pure orbits of length `r`: the sum of the `{k+1, k+2}` block of `B^(r-2)`.
    pub fn pure_orbit_count(&self, r: u64) -> Result<BigUint> {
        if r < 2 {
            return Err(Error::domain(format!(
                "pure orbits need length r >= 2, got {r}"
            )));
        }
        let power = self.pruned_adjacency_matrix().pow(r - 2);
        let idx: Vec<usize> = self
            .entry_sides()
            .iter()
            .map(|&s| (s - 1) as usize)
            .collect();
        Ok(power.submatrix_sum(&idx, &idx))
    }

    /// `P(r)` for every `r` in `0..=max_r` (entries below 2 are zero), by
    /// propagating the two entry rows of `B` one step at a time.
    pub fn pure_orbit_counts(&self, max_r: u64) -> Vec<BigUint> {
        let m = self.sides() as usize;
        let entry = self.entry_sides();
        let mut out = vec![BigUint::zero(); (max_r + 1) as usize];
        let mut rows: Vec<Vec<BigUint>> = entry
            .iter()
            .map(|&s| {
                let mut v = vec![BigUint::zero(); m];
                v[(s - 1) as usize] = BigUint::one();
                v
            })
            .collect();
        for r in 2..=max_r {
            out[r as usize] = rows
                .iter()
                .flat_map(|row| entry.iter().map(move |&s| &row[(s - 1) as usize]))
                .sum();
            for row in rows.iter_mut() {
                let mut next = vec![BigUint::zero(); m];
                for (idx, value) in row.iter().enumerate() {
                    let from = idx as u32 + 1;
                    if from == 1 || value.is_zero() {
                        continue;
                    }
                    let (s, t) = self.successors_unchecked(from);
                    for to in [s, t] {
                        if to != 1 {
                            next[(to - 1) as usize] += value;
                        }
                    }
                }
                *row = next;
            }
        }
        out
    }
}
