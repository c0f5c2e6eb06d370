//! Phase 1: drive the basic solution to feasibility without artificial
//! variables.
//!
//! Each step picks the first row whose right-hand side is negative (first by
//! storage order when rows are kept sorted, first by basic column in the
//! unsorted variant), then the first negative entry in that row, and
//! exchanges the two columns. If the selected row has no negative entry the
//! problem is infeasible and the row yields a Farkas certificate. No column
//! base can repeat, so the loop terminates; the iteration cap is a self-check
//! only.

use alloc::vec::Vec;

use crate::tableau::Basis;
use crate::{Error, Result, Scalar, Tableau, Tolerance};

/// Which variant of the exchange rule to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotRule {
    /// Rows are physically re-sorted after every exchange; the row scan is
    /// by storage order.
    Sorted,
    /// Row order is never touched; the scan picks the negative-rhs row whose
    /// basic column is minimal.
    Unsorted,
}

/// Outcome of one selection step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PivotDecision {
    AlreadyFeasible,
    Pivot { row: usize, entering: usize, leaving: usize },
    InfeasibleRow { row: usize },
}

/// Farkas-style witness: `y'A >= 0` componentwise and `y'b < 0` over the
/// tableau's (reduced) problem, so `Ax = b, x >= 0` has no solution. `row` is
/// the tableau row the witness came from.
#[derive(Clone, Debug, PartialEq)]
pub struct InfeasibilityCertificate<S> {
    pub row: usize,
    pub y: Vec<S>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Phase1Outcome<S> {
    Feasible(Tableau<S>),
    Infeasible(InfeasibilityCertificate<S>),
}

/// One executed exchange, recorded before the pivot is applied.
#[derive(Clone, Debug, PartialEq)]
pub struct PivotStep<S> {
    /// 1-based count of this pivot within the run.
    pub iteration: u64,
    /// Sorted basis snapshot at decision time.
    pub basis: Basis,
    pub leaving: usize,
    pub entering: usize,
    /// Storage row the pivot happened in.
    pub row: usize,
    /// Right-hand side snapshot at decision time, in storage order.
    pub rhs: Vec<S>,
    pub pivot_value: S,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Phase1Report<S> {
    pub outcome: Phase1Outcome<S>,
    pub iterations: u64,
    pub trace: Vec<PivotStep<S>>,
}

impl<S> Phase1Report<S> {
    pub fn is_feasible(&self) -> bool {
        matches!(self.outcome, Phase1Outcome::Feasible(_))
    }
}

/// Selection for the sorted tableau: minimal row with negative rhs, then
/// minimal column with a negative entry in that row.
pub fn select_pivot_sorted<S: Scalar>(t: &Tableau<S>, tol: &Tolerance) -> Result<PivotDecision> {
    debug_assert!(t.is_row_sorted());
    let mut row = None;
    for i in 0..t.num_rows() {
        if t.rhs()[i].classify_sign(tol)?.is_negative() {
            row = Some(i);
            break;
        }
    }
    decide_for_row(t, tol, row)
}

/// Selection when rows are stored in arbitrary order: among negative-rhs
/// rows, the one whose basic column is minimal fixes the leaving column
/// first; the entering column is then the minimal negative entry.
pub fn select_pivot_unsorted<S: Scalar>(t: &Tableau<S>, tol: &Tolerance) -> Result<PivotDecision> {
    let mut row: Option<usize> = None;
    for i in 0..t.num_rows() {
        if t.rhs()[i].classify_sign(tol)?.is_negative() {
            row = Some(match row {
                None => i,
                Some(best) => {
                    if t.row_basis()[i] < t.row_basis()[best] {
                        i
                    } else {
                        best
                    }
                }
            });
        }
    }
    decide_for_row(t, tol, row)
}

fn decide_for_row<S: Scalar>(
    t: &Tableau<S>,
    tol: &Tolerance,
    row: Option<usize>,
) -> Result<PivotDecision> {
    let Some(i) = row else {
        return Ok(PivotDecision::AlreadyFeasible);
    };
    for j in 0..t.num_cols() {
        if t.entry(i, j).classify_sign(tol)?.is_negative() {
            debug_assert!(!t.row_basis().contains(&j), "entering column must be nonbasic");
            return Ok(PivotDecision::Pivot { row: i, entering: j, leaving: t.row_basis()[i] });
        }
    }
    Ok(PivotDecision::InfeasibleRow { row: i })
}

/// Certificate for a failed second step: `y` is the corresponding row of
/// `A_J⁻¹`, so `y'A` equals the nonnegative scheme row and `y'b` the negative
/// right-hand side.
pub fn make_certificate<S: Scalar>(
    t: &Tableau<S>,
    row: usize,
    tol: &Tolerance,
) -> Result<InfeasibilityCertificate<S>> {
    if row >= t.num_rows() {
        return Err(Error::IndexOutOfRange { what: "row", index: row, bound: t.num_rows() });
    }
    if !t.rhs()[row].classify_sign(tol)?.is_negative() {
        return Err(Error::Contract("certificate row must have negative rhs"));
    }
    for j in 0..t.num_cols() {
        if t.entry(row, j).classify_sign(tol)?.is_negative() {
            return Err(Error::Contract("certificate row must be componentwise nonnegative"));
        }
    }
    let y = t.basis_inverse_row(row, tol)?;
    Ok(InfeasibilityCertificate { row, y })
}

/// Iterate select + exchange until the basic solution is feasible or a row
/// proves infeasibility. `max_iter` caps the pivot count; exceeding it over
/// rationals would contradict the no-repeated-basis guarantee and is reported
/// as [`Error::AntiCycling`].
pub fn run_phase1<S: Scalar>(
    start: Tableau<S>,
    rule: PivotRule,
    tol: &Tolerance,
    max_iter: u64,
) -> Result<Phase1Report<S>> {
    let mut t = start;
    let mut iterations = 0u64;
    let mut trace = Vec::new();

    loop {
        let decision = match rule {
            PivotRule::Sorted => select_pivot_sorted(&t, tol)?,
            PivotRule::Unsorted => select_pivot_unsorted(&t, tol)?,
        };
        match decision {
            PivotDecision::AlreadyFeasible => {
                return Ok(Phase1Report { outcome: Phase1Outcome::Feasible(t), iterations, trace });
            }
            PivotDecision::InfeasibleRow { row } => {
                let certificate = make_certificate(&t, row, tol)?;
                return Ok(Phase1Report {
                    outcome: Phase1Outcome::Infeasible(certificate),
                    iterations,
                    trace,
                });
            }
            PivotDecision::Pivot { row, entering, leaving } => {
                if iterations >= max_iter {
                    return Err(Error::AntiCycling { iterations });
                }
                iterations += 1;
                trace.push(PivotStep {
                    iteration: iterations,
                    basis: t.basis(),
                    leaving,
                    entering,
                    row,
                    rhs: t.rhs().to_vec(),
                    pivot_value: t.entry(row, entering).clone(),
                });
                t = match rule {
                    PivotRule::Sorted => t.pivot(row, entering, tol)?,
                    PivotRule::Unsorted => t.pivot_unsorted(row, entering, tol)?,
                };
            }
        }
    }
}
