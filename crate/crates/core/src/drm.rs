//! Symmetric distance matrices and the distance-requirement construction.
//!
//! One matrix type serves two roles: the *distance requirement matrix* of a
//! function (how much pairwise distance an encoding still has to supply) and
//! the *codeword distance matrix* of a code (how much it actually has). Both
//! are symmetric with a zero diagonal and are indexed by the lexicographic
//! order of `F_2^k`.

use crate::bits::{BinaryWord, MessageWord};
use crate::boolfn::BooleanFunctionSpec;
use crate::error::Error;

/// Symmetric non-negative integer matrix with a zero diagonal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DistanceMatrix {
    order: usize,
    entries: Vec<u32>,
}

impl DistanceMatrix {
    /// Builds from a symmetric generator; only `i < j` pairs are evaluated.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut entries = vec![0u32; order * order];
        for i in 0..order {
            for j in (i + 1)..order {
                let d = f(i, j);
                entries[i * order + j] = d;
                entries[j * order + i] = d;
            }
        }
        Self { order, entries }
    }

    /// Validates and adopts a full matrix.
    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self, Error> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return Err(Error::MalformedMatrix);
        }
        let mut entries = vec![0u32; order * order];
        for (i, row) in rows.iter().enumerate() {
            for (j, &d) in row.iter().enumerate() {
                entries[i * order + j] = d;
            }
        }
        let m = Self { order, entries };
        for i in 0..order {
            if m.get(i, i) != 0 {
                return Err(Error::MalformedMatrix);
            }
            for j in (i + 1)..order {
                if m.get(i, j) != m.get(j, i) {
                    return Err(Error::MalformedMatrix);
                }
            }
        }
        Ok(m)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.order + j]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        (0..self.order)
            .map(|i| self.entries[i * self.order..(i + 1) * self.order].to_vec())
            .collect()
    }

    /// First-row sum and strict-upper-triangle sum.
    pub fn metrics(&self) -> DmMetrics {
        let first_row_sum = (0..self.order).map(|j| self.get(0, j) as u64).sum();
        let mut upper_diagonal_sum = 0u64;
        for i in 0..self.order {
            for j in (i + 1)..self.order {
                upper_diagonal_sum += self.get(i, j) as u64;
            }
        }
        DmMetrics { first_row_sum, upper_diagonal_sum }
    }

    /// Entrywise comparison against another matrix of the same order.
    pub fn compare(&self, other: &Self) -> Result<DmOrdering, Error> {
        if self.order != other.order {
            return Err(Error::OrderMismatch { left: self.order, right: other.order });
        }
        let mut le = true;
        let mut ge = true;
        for (a, b) in self.entries.iter().zip(&other.entries) {
            le &= a <= b;
            ge &= a >= b;
        }
        Ok(match (le, ge) {
            (true, true) => DmOrdering::Equal,
            (true, false) => DmOrdering::LessOrEqual,
            (false, true) => DmOrdering::GreaterOrEqual,
            (false, false) => DmOrdering::Incomparable,
        })
    }

    /// Canonical byte key of the strict upper triangle, used to group matrices
    /// by exact entrywise identity. Entries are capped at `u8`, which holds for
    /// every matrix this crate produces (values never exceed `k + r`).
    pub fn upper_triangle_key(&self) -> Vec<u8> {
        let mut key = Vec::with_capacity(self.order * (self.order - 1) / 2);
        for i in 0..self.order {
            for j in (i + 1)..self.order {
                let d = self.get(i, j);
                debug_assert!(d <= u8::MAX as u32);
                key.push(d as u8);
            }
        }
        key
    }
}

impl std::fmt::Debug for DistanceMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "DistanceMatrix(order={})", self.order)?;
        for row in self.rows() {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

/// Outcome of the entrywise comparison of two matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DmOrdering {
    Equal,
    LessOrEqual,
    GreaterOrEqual,
    Incomparable,
}

/// First-row and upper-triangle sums of a distance matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DmMetrics {
    pub first_row_sum: u64,
    pub upper_diagonal_sum: u64,
}

/// Distance requirement matrix of `f` for correction capability `t`.
///
/// Entry `(i, j)` is `max(2t + 1 - d_H(u_i, u_j), 0)` when `f(u_i) != f(u_j)`
/// and zero otherwise, over all of `F_2^k` in lexicographic order.
pub fn distance_requirement_matrix(f: &BooleanFunctionSpec, t: u32) -> DistanceMatrix {
    let messages: Vec<MessageWord> = MessageWord::all(f.k()).collect();
    let values: Vec<bool> = messages
        .iter()
        .map(|&u| f.evaluate(u).expect("messages come from the function's own domain"))
        .collect();
    let bound = 2 * t + 1;
    DistanceMatrix::from_fn(messages.len(), |i, j| {
        if values[i] == values[j] {
            0
        } else {
            let d = messages[i]
                .distance(&messages[j])
                .expect("all messages share length k");
            bound.saturating_sub(d)
        }
    })
}
