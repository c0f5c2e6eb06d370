//! Column bases and the scheme `(Ã, b̃) = (A_J⁻¹A, A_J⁻¹b)`.
//!
//! A tableau always refers to a full-row-rank problem: the constructor runs
//! Gaussian elimination, drops dependent rows that reduce to `0 = 0`, and
//! rejects systems where a dependent row reduces to `0 = beta` with nonzero
//! `beta`. Each tableau row carries the column whose unit vector it holds
//! (`row_basis`); the standard pivot keeps rows physically sorted by that
//! column, the unsorted variant leaves row order alone.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Problem, Result, Scalar, Tolerance};

/// Strictly increasing tuple of column indices (0-based). Values are only
/// created on paths that verified the corresponding column submatrix is
/// regular.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Basis {
    cols: Vec<usize>,
}

impl Basis {
    pub fn new(cols: Vec<usize>, num_cols: usize) -> Result<Self> {
        if cols.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Contract("basis indices must be strictly increasing"));
        }
        if let Some(&last) = cols.last() {
            if last >= num_cols {
                return Err(Error::IndexOutOfRange { what: "basis column", index: last, bound: num_cols });
            }
        }
        Ok(Basis { cols })
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn len(&self) -> usize {
        self.cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn contains(&self, col: usize) -> bool {
        self.cols.binary_search(&col).is_ok()
    }
}

/// What the Gaussian-elimination start found out about the row structure.
#[derive(Clone, Debug, PartialEq)]
pub struct RankReport<S> {
    pub rank: usize,
    /// Original (0-based) indices of dependent rows that were dropped.
    pub dropped_rows: Vec<usize>,
    /// True whenever the tableau was built; inconsistent systems error out
    /// instead.
    pub consistent: bool,
    /// Pivot entries chosen during elimination, in order. Used downstream to
    /// judge how numerically mild an instance is.
    pub gauss_pivots: Vec<S>,
}

/// The scheme `(Ã, b̃)` for some basis of a (reduced) problem, together with
/// that problem. Column `row_basis[k]` of `Ã` is the `k`-th unit vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Tableau<S> {
    problem: Problem<S>,
    row_basis: Vec<usize>,
    a: Vec<Vec<S>>,
    b: Vec<S>,
}

impl<S: Scalar> Tableau<S> {
    /// Gaussian elimination start: scan columns left to right, pick a pivot
    /// row per column (first nonzero over rationals, largest magnitude over
    /// floats), and reduce. Dependent rows that reduce to `0 = 0` are
    /// dropped; `0 = beta` with nonzero `beta` is an inconsistent system.
    pub fn initial(p: &Problem<S>, tol: &Tolerance) -> Result<(Self, RankReport<S>)> {
        p.validate()?;
        let m = p.num_rows();
        let n = p.num_cols();

        let mut work_a = p.a.clone();
        let mut work_b = p.b.clone();
        let mut orig: Vec<usize> = (0..m).collect();

        let mut rank = 0usize;
        let mut basis = Vec::new();
        let mut gauss_pivots = Vec::new();

        for col in 0..n {
            if rank == m {
                break;
            }
            let mut chosen: Option<usize> = None;
            for r in rank..m {
                if work_a[r][col].classify_sign(tol)?.is_zero() {
                    continue;
                }
                match chosen {
                    None => chosen = Some(r),
                    Some(best) => {
                        if work_a[r][col].better_pivot(&work_a[best][col]) {
                            chosen = Some(r);
                        }
                    }
                }
            }
            let Some(pr) = chosen else { continue };
            work_a.swap(rank, pr);
            work_b.swap(rank, pr);
            orig.swap(rank, pr);
            gauss_pivots.push(work_a[rank][col].clone());
            eliminate(&mut work_a, &mut work_b, rank, col);
            basis.push(col);
            rank += 1;
        }

        // Dependent rows must read 0 = 0; report the smallest original row
        // that violates this.
        let mut bad_row: Option<usize> = None;
        for r in rank..m {
            if !work_b[r].classify_sign(tol)?.is_zero() {
                bad_row = Some(match bad_row {
                    None => orig[r],
                    Some(prev) => prev.min(orig[r]),
                });
            }
        }
        if let Some(row) = bad_row {
            return Err(Error::Inconsistent { row });
        }

        let mut dropped_rows: Vec<usize> = orig[rank..].to_vec();
        dropped_rows.sort_unstable();

        let reduced = Problem {
            a: orig[..rank].iter().map(|&r| p.a[r].clone()).collect(),
            b: orig[..rank].iter().map(|&r| p.b[r].clone()).collect(),
            c: p.c.clone(),
        };
        work_a.truncate(rank);
        work_b.truncate(rank);

        let t = Tableau { problem: reduced, row_basis: basis, a: work_a, b: work_b };
        debug_assert!(t.unit_columns_ok());
        let report = RankReport { rank, dropped_rows, consistent: true, gauss_pivots };
        Ok((t, report))
    }

    /// Build the scheme for an arbitrary regular basis of a full-row-rank
    /// problem. Rows come out sorted by basis column.
    pub fn from_basis(p: &Problem<S>, basis: &Basis, tol: &Tolerance) -> Result<Self> {
        p.validate()?;
        let m = p.num_rows();
        if basis.len() != m {
            return Err(Error::Contract("basis size must equal the row count"));
        }
        if let Some(&last) = basis.cols().last() {
            if last >= p.num_cols() {
                return Err(Error::IndexOutOfRange {
                    what: "basis column",
                    index: last,
                    bound: p.num_cols(),
                });
            }
        }

        let mut work_a = p.a.clone();
        let mut work_b = p.b.clone();
        for (k, &col) in basis.cols().iter().enumerate() {
            let mut chosen: Option<usize> = None;
            for r in k..m {
                if work_a[r][col].classify_sign(tol)?.is_zero() {
                    continue;
                }
                match chosen {
                    None => chosen = Some(r),
                    Some(best) => {
                        if work_a[r][col].better_pivot(&work_a[best][col]) {
                            chosen = Some(r);
                        }
                    }
                }
            }
            let Some(pr) = chosen else {
                return Err(Error::SingularBasis);
            };
            work_a.swap(k, pr);
            work_b.swap(k, pr);
            eliminate(&mut work_a, &mut work_b, k, col);
        }

        let t = Tableau {
            problem: p.clone(),
            row_basis: basis.cols().to_vec(),
            a: work_a,
            b: work_b,
        };
        debug_assert!(t.unit_columns_ok());
        Ok(t)
    }

    #[cfg(test)]
    pub(crate) fn from_parts(
        problem: Problem<S>,
        row_basis: Vec<usize>,
        a: Vec<Vec<S>>,
        b: Vec<S>,
    ) -> Self {
        let t = Tableau { problem, row_basis, a, b };
        debug_assert!(t.unit_columns_ok());
        t
    }

    pub fn num_rows(&self) -> usize {
        self.row_basis.len()
    }

    pub fn num_cols(&self) -> usize {
        self.problem.num_cols()
    }

    /// The (reduced) problem this scheme is equivalent to.
    pub fn problem(&self) -> &Problem<S> {
        &self.problem
    }

    /// Basis column held by each row, in storage order.
    pub fn row_basis(&self) -> &[usize] {
        &self.row_basis
    }

    /// The basis as a sorted tuple.
    pub fn basis(&self) -> Basis {
        let mut cols = self.row_basis.clone();
        cols.sort_unstable();
        Basis { cols }
    }

    pub fn matrix(&self) -> &[Vec<S>] {
        &self.a
    }

    pub fn rhs(&self) -> &[S] {
        &self.b
    }

    pub fn entry(&self, row: usize, col: usize) -> &S {
        &self.a[row][col]
    }

    pub fn is_row_sorted(&self) -> bool {
        self.row_basis.windows(2).all(|w| w[0] < w[1])
    }

    /// Exchange the basis column of `row` for `col` and re-sort rows so the
    /// unit vectors appear in basis order.
    pub fn pivot(&self, row: usize, col: usize, tol: &Tolerance) -> Result<Self> {
        let mut t = self.pivot_unsorted(row, col, tol)?;
        t.sort_rows();
        Ok(t)
    }

    /// Same exchange but leaving the physical row order untouched.
    pub fn pivot_unsorted(&self, row: usize, col: usize, tol: &Tolerance) -> Result<Self> {
        if row >= self.num_rows() {
            return Err(Error::IndexOutOfRange { what: "row", index: row, bound: self.num_rows() });
        }
        if col >= self.num_cols() {
            return Err(Error::IndexOutOfRange { what: "column", index: col, bound: self.num_cols() });
        }
        if self.row_basis.contains(&col) {
            return Err(Error::ColumnAlreadyBasic { col });
        }
        if self.a[row][col].classify_sign(tol)?.is_zero() {
            return Err(Error::DegeneratePivot { row, col });
        }
        let mut t = self.clone();
        eliminate(&mut t.a, &mut t.b, row, col);
        t.row_basis[row] = col;
        Ok(t)
    }

    /// The basic solution `x` with `x[row_basis[k]] = b̃[k]` and zeros
    /// elsewhere.
    pub fn basic_solution(&self) -> Vec<S> {
        let mut x = vec![S::zero(); self.num_cols()];
        for (k, &j) in self.row_basis.iter().enumerate() {
            x[j] = self.b[k].clone();
        }
        x
    }

    /// Row `i` of `A_J⁻¹`: the vector `y` with `y'A_J = e_i'`, obtained by
    /// solving the transposed basis system. Consequently `y'A` is row `i` of
    /// `Ã` and `y'b = b̃_i`.
    pub fn basis_inverse_row(&self, row: usize, tol: &Tolerance) -> Result<Vec<S>> {
        let m = self.num_rows();
        if row >= m {
            return Err(Error::IndexOutOfRange { what: "row", index: row, bound: m });
        }
        // Augmented transposed system B' y = e_row with B[:,k] = A[:, j_k].
        let mut aug: Vec<Vec<S>> = (0..m)
            .map(|r| {
                let mut line: Vec<S> = (0..m)
                    .map(|c| self.problem.a[c][self.row_basis[r]].clone())
                    .collect();
                line.push(if r == row { S::one() } else { S::zero() });
                line
            })
            .collect();

        for col in 0..m {
            let mut chosen: Option<usize> = None;
            for r in col..m {
                if aug[r][col].classify_sign(tol)?.is_zero() {
                    continue;
                }
                match chosen {
                    None => chosen = Some(r),
                    Some(best) => {
                        if aug[r][col].better_pivot(&aug[best][col]) {
                            chosen = Some(r);
                        }
                    }
                }
            }
            let Some(pr) = chosen else {
                return Err(Error::Internal("basis matrix is singular"));
            };
            aug.swap(col, pr);
            let piv = aug[col][col].clone();
            for k in 0..=m {
                if k == col {
                    continue;
                }
                aug[col][k] = aug[col][k].clone() / piv.clone();
            }
            aug[col][col] = S::one();
            for r in 0..m {
                if r == col {
                    continue;
                }
                let f = aug[r][col].clone();
                if f.is_zero() {
                    continue;
                }
                for k in 0..=m {
                    if k == col {
                        continue;
                    }
                    aug[r][k] = aug[r][k].clone() - f.clone() * aug[col][k].clone();
                }
                aug[r][col] = S::zero();
            }
        }

        Ok(aug.into_iter().map(|mut line| line.pop().expect("augmented column")).collect())
    }

    fn sort_rows(&mut self) {
        let mut rows: Vec<(usize, Vec<S>, S)> = self
            .row_basis
            .drain(..)
            .zip(self.a.drain(..))
            .zip(self.b.drain(..))
            .map(|((jb, ar), br)| (jb, ar, br))
            .collect();
        rows.sort_by_key(|r| r.0);
        for (jb, ar, br) in rows {
            self.row_basis.push(jb);
            self.a.push(ar);
            self.b.push(br);
        }
    }

    fn unit_columns_ok(&self) -> bool {
        self.row_basis.iter().enumerate().all(|(k, &j)| {
            self.a.iter().enumerate().all(|(r, line)| {
                if r == k {
                    line[j] == S::one()
                } else {
                    line[j] == S::zero()
                }
            })
        })
    }
}

/// Scale `row` so the entry at `col` becomes exactly one, then clear `col`
/// in every other row. Basis entries are written exactly, not left to
/// arithmetic, so unit columns stay crisp under floats too.
fn eliminate<S: Scalar>(a: &mut [Vec<S>], b: &mut [S], row: usize, col: usize) {
    let n = a[row].len();
    let piv = a[row][col].clone();
    for k in 0..n {
        if k == col {
            continue;
        }
        a[row][k] = a[row][k].clone() / piv.clone();
    }
    a[row][col] = S::one();
    b[row] = b[row].clone() / piv;

    for r in 0..a.len() {
        if r == row {
            continue;
        }
        let f = a[r][col].clone();
        if f.is_zero() {
            continue;
        }
        for k in 0..n {
            if k == col {
                continue;
            }
            a[r][k] = a[r][k].clone() - f.clone() * a[row][k].clone();
        }
        a[r][col] = S::zero();
        b[r] = b[r].clone() - f.clone() * b[row].clone();
    }
}
