//! Phase 2: Bland-rule simplex from a feasible tableau.
//!
//! Entering column: minimal index with negative reduced cost. Leaving row:
//! minimal ratio, ties broken by minimal basic column. Both choices being
//! minimal-index rules out cycling. The reduced-cost row is carried across
//! pivots and initialized from the original objective at the start.

use alloc::vec;
use alloc::vec::Vec;

use crate::tableau::Basis;
use crate::{Error, Result, Scalar, Tableau, Tolerance};

#[derive(Clone, Debug, PartialEq)]
pub enum SimplexStatus<S> {
    Optimal { objective: S },
    /// Improving ray `d`: `Ad = 0`, `d >= 0`, `c'd < 0`, so the objective is
    /// unbounded below along `x + t·d`.
    Unbounded { ray: Vec<S> },
}

/// One simplex exchange, recorded before the pivot is applied.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplexStep<S> {
    pub iteration: u64,
    pub basis: Basis,
    pub leaving: usize,
    pub entering: usize,
    pub row: usize,
    pub rhs: Vec<S>,
    pub pivot_value: S,
    /// Reduced cost of the entering column at decision time.
    pub reduced_cost: S,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimplexRun<S> {
    pub status: SimplexStatus<S>,
    /// Final tableau: optimal basis, or the basis the ray was found at.
    pub tableau: Tableau<S>,
    pub iterations: u64,
    pub trace: Vec<SimplexStep<S>>,
}

impl<S: Scalar> SimplexRun<S> {
    pub fn solution(&self) -> Vec<S> {
        self.tableau.basic_solution()
    }
}

/// Minimize `c'x` from a feasible tableau. `c` must cover all columns and
/// `b̃ >= 0` must hold on entry.
pub fn run_simplex<S: Scalar>(
    start: Tableau<S>,
    c: &[S],
    tol: &Tolerance,
    max_iter: u64,
) -> Result<SimplexRun<S>> {
    let n = start.num_cols();
    if c.len() != n {
        return Err(Error::ObjectiveLength { expected: n, found: c.len() });
    }
    for v in start.rhs() {
        if v.classify_sign(tol)?.is_negative() {
            return Err(Error::Contract("phase 2 requires a feasible start"));
        }
    }

    let mut t = start;
    // Reduced costs r_j = c_j - sum_k c_{j_k} ã_{k,j}, and the objective at
    // the current basic solution.
    let mut reduced: Vec<S> = (0..n)
        .map(|j| {
            let mut r = c[j].clone();
            for (k, &jk) in t.row_basis().iter().enumerate() {
                r = r - c[jk].clone() * t.entry(k, j).clone();
            }
            r
        })
        .collect();
    let mut objective = t
        .row_basis()
        .iter()
        .zip(t.rhs())
        .fold(S::zero(), |acc, (&jk, bk)| acc + c[jk].clone() * bk.clone());

    let mut iterations = 0u64;
    let mut trace = Vec::new();

    loop {
        let mut entering = None;
        for (j, r) in reduced.iter().enumerate() {
            if r.classify_sign(tol)?.is_negative() {
                entering = Some(j);
                break;
            }
        }
        let Some(entering) = entering else {
            return Ok(SimplexRun {
                status: SimplexStatus::Optimal { objective },
                tableau: t,
                iterations,
                trace,
            });
        };

        // Ratio test over rows with a positive entry in the entering column;
        // ties go to the smaller basic column.
        let mut pick: Option<(usize, S)> = None;
        for i in 0..t.num_rows() {
            if !t.entry(i, entering).classify_sign(tol)?.is_positive() {
                continue;
            }
            let ratio = t.rhs()[i].clone() / t.entry(i, entering).clone();
            pick = Some(match pick {
                None => (i, ratio),
                Some((best_row, best_ratio)) => {
                    match (ratio.clone() - best_ratio.clone()).classify_sign(tol)? {
                        crate::Sign::Negative => (i, ratio),
                        crate::Sign::Zero if t.row_basis()[i] < t.row_basis()[best_row] => {
                            (i, ratio)
                        }
                        _ => (best_row, best_ratio),
                    }
                }
            });
        }

        let Some((row, _)) = pick else {
            // No positive entry: moving along the entering column is a
            // feasible improving ray.
            let mut ray = vec![S::zero(); n];
            ray[entering] = S::one();
            for (k, &jk) in t.row_basis().iter().enumerate() {
                ray[jk] = -t.entry(k, entering).clone();
            }
            return Ok(SimplexRun {
                status: SimplexStatus::Unbounded { ray },
                tableau: t,
                iterations,
                trace,
            });
        };

        if iterations >= max_iter {
            return Err(Error::AntiCycling { iterations });
        }
        iterations += 1;
        let reduced_cost = reduced[entering].clone();
        trace.push(SimplexStep {
            iteration: iterations,
            basis: t.basis(),
            leaving: t.row_basis()[row],
            entering,
            row,
            rhs: t.rhs().to_vec(),
            pivot_value: t.entry(row, entering).clone(),
            reduced_cost: reduced_cost.clone(),
        });

        t = t.pivot(row, entering, tol)?;

        // Update the carried objective row from the post-pivot row that now
        // holds the entering column's unit vector.
        let unit_row = t
            .row_basis()
            .iter()
            .position(|&jk| jk == entering)
            .ok_or(Error::Internal("entering column missing from basis after pivot"))?;
        for j in 0..n {
            if j == entering {
                continue;
            }
            reduced[j] = reduced[j].clone() - reduced_cost.clone() * t.entry(unit_row, j).clone();
        }
        reduced[entering] = S::zero();
        objective = objective + reduced_cost * t.rhs()[unit_row].clone();
    }
}
