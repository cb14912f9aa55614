//! Dense square matrices over arbitrary-precision nonnegative integers.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::exec::{self, Exec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    order: usize,
    entries: Vec<BigUint>,
}

impl ExactMatrix {
    pub fn zeros(order: usize) -> Self {
        ExactMatrix {
            order,
            entries: vec![BigUint::zero(); order * order],
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m[(i, i)] = BigUint::one();
        }
        m
    }

    /// Builds a matrix from row-major small integers.
    pub fn from_rows(rows: &[Vec<u64>]) -> Self {
        let order = rows.len();
        let mut m = Self::zeros(order);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), order, "matrix must be square");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = BigUint::from(v);
            }
        }
        m
    }

    /// The cyclic shift `C` with a single 1 in column `i + 1 (mod order)` of row `i`.
    pub fn cyclic_shift(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m[(i, (i + 1) % order)] = BigUint::one();
        }
        m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn row(&self, i: usize) -> &[BigUint] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn row_sums(&self) -> Vec<BigUint> {
        (0..self.order).map(|i| self.row(i).iter().sum()).collect()
    }

    /// Sum of the entries in the given rows and columns (0-based).
    pub fn submatrix_sum(&self, rows: &[usize], cols: &[usize]) -> BigUint {
        let mut s = BigUint::zero();
        for &i in rows {
            for &j in cols {
                s += &self[(i, j)];
            }
        }
        s
    }

    pub fn is_circulant(&self) -> bool {
        let n = self.order;
        (0..n).all(|i| (0..n).all(|j| self[(i, j)] == self[(0, (j + n - i) % n)]))
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.order;
        (0..n).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn add(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.order, other.order);
        ExactMatrix {
            order: self.order,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        self.mul_with(other, Exec::default())
    }

    /// Matrix product; rows are computed independently, optionally in parallel.
    pub fn mul_with(&self, other: &ExactMatrix, exec: Exec) -> ExactMatrix {
        assert_eq!(self.order, other.order, "order mismatch");
        let n = self.order;
        let rows: Vec<usize> = (0..n).collect();
        let computed: Vec<Vec<BigUint>> = exec::map_collect(exec, &rows, |&i| {
            let mut out = vec![BigUint::zero(); n];
            for (l, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (slot, b) in out.iter_mut().zip(other.row(l)) {
                    if !b.is_zero() {
                        *slot += a * b;
                    }
                }
            }
            out
        });
        ExactMatrix {
            order: n,
            entries: computed.into_iter().flatten().collect(),
        }
    }

    pub fn pow(&self, e: u64) -> ExactMatrix {
        self.pow_with(e, Exec::default())
    }

    /// Exact power by repeated squaring; `M^0` is the identity.
    pub fn pow_with(&self, mut e: u64, exec: Exec) -> ExactMatrix {
        let mut result = ExactMatrix::identity(self.order);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_with(&base, exec);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_with(&base, exec);
            }
        }
        result
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = BigUint;

    fn index(&self, (i, j): (usize, usize)) -> &BigUint {
        &self.entries[i * self.order + j]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigUint {
        &mut self.entries[i * self.order + j]
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|v| v.to_string()).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.order {
            let row: Vec<String> = cells[i * self.order..(i + 1) * self.order]
                .iter()
                .map(|c| format!("{c:>width$}"))
                .collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}
