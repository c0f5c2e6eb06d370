//! The standard-form problem: minimize `c'x` subject to `Ax = b`, `x >= 0`.

use alloc::vec::Vec;

use crate::{Error, Result, Scalar};

/// Dense standard-form problem data. Rows of `a` are constraints; `b` is the
/// right-hand side; `c` the objective. No rank assumption is made here — rank
/// handling happens when the initial tableau is built.
#[derive(Clone, Debug, PartialEq)]
pub struct Problem<S> {
    pub a: Vec<Vec<S>>,
    pub b: Vec<S>,
    pub c: Vec<S>,
}

impl<S: Scalar> Problem<S> {
    /// Build and validate a problem.
    pub fn new(a: Vec<Vec<S>>, b: Vec<S>, c: Vec<S>) -> Result<Self> {
        let p = Problem { a, b, c };
        p.validate()?;
        Ok(p)
    }

    pub fn num_rows(&self) -> usize {
        self.a.len()
    }

    /// Column count. Falls back to the objective length so that row-reduced
    /// problems with zero remaining rows keep their width.
    pub fn num_cols(&self) -> usize {
        self.a.first().map_or(self.c.len(), Vec::len)
    }

    /// Check dimensional consistency, naming the offending field.
    pub fn validate(&self) -> Result<()> {
        if self.a.is_empty() {
            return Err(Error::Empty { field: "A" });
        }
        let n = self.a[0].len();
        if n == 0 {
            return Err(Error::Empty { field: "A" });
        }
        for (i, row) in self.a.iter().enumerate() {
            if row.len() != n {
                return Err(Error::RaggedRow { row: i, expected: n, found: row.len() });
            }
        }
        if self.b.len() != self.a.len() {
            return Err(Error::RhsLength { expected: self.a.len(), found: self.b.len() });
        }
        if self.c.len() != n {
            return Err(Error::ObjectiveLength { expected: n, found: self.c.len() });
        }
        Ok(())
    }

    /// `Ax - b`. Exactly zero over rationals certifies `Ax = b`.
    pub fn residual(&self, x: &[S]) -> Result<Vec<S>> {
        if x.len() != self.num_cols() {
            return Err(Error::SolutionLength { expected: self.num_cols(), found: x.len() });
        }
        Ok(self
            .a
            .iter()
            .zip(&self.b)
            .map(|(row, bi)| {
                let ax = row
                    .iter()
                    .zip(x)
                    .fold(S::zero(), |acc, (aij, xj)| acc + aij.clone() * xj.clone());
                ax - bi.clone()
            })
            .collect())
    }

    /// `c'x`.
    pub fn objective_value(&self, x: &[S]) -> Result<S> {
        if x.len() != self.num_cols() {
            return Err(Error::SolutionLength { expected: self.num_cols(), found: x.len() });
        }
        Ok(self
            .c
            .iter()
            .zip(x)
            .fold(S::zero(), |acc, (cj, xj)| acc + cj.clone() * xj.clone()))
    }
}
