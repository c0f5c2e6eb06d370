//! Trace output: one JSON object per pivot, written as JSON lines. Indices
//! are 1-based; `b` is the right-hand side at decision time; with the full
//! option every line also carries the scheme matrix.

use feasolve::phase1::{Phase1Report, PivotRule, PivotStep};
use feasolve::phase2::{SimplexRun, SimplexStep};
use feasolve::{Error, Scalar, Tableau, Tolerance};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct TraceLine {
    pub phase: u8,
    pub iter: u64,
    /// Sorted 1-based basis at decision time.
    pub basis: Vec<usize>,
    pub leaving: usize,
    pub entering: usize,
    pub row: usize,
    pub b: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced_cost: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<Vec<String>>>,
}

fn strings<S: Scalar>(values: &[S]) -> Vec<String> {
    values.iter().map(|v| v.to_string()).collect()
}

fn matrix_strings<S: Scalar>(t: &Tableau<S>) -> Vec<Vec<String>> {
    t.matrix().iter().map(|row| strings(row)).collect()
}

fn phase1_line<S: Scalar>(step: &PivotStep<S>, scheme: Option<Vec<Vec<String>>>) -> TraceLine {
    TraceLine {
        phase: 1,
        iter: step.iteration,
        basis: step.basis.cols().iter().map(|&c| c + 1).collect(),
        leaving: step.leaving + 1,
        entering: step.entering + 1,
        row: step.row + 1,
        b: strings(&step.rhs),
        reduced_cost: None,
        a: scheme,
    }
}

fn phase2_line<S: Scalar>(step: &SimplexStep<S>, scheme: Option<Vec<Vec<String>>>) -> TraceLine {
    TraceLine {
        phase: 2,
        iter: step.iteration,
        basis: step.basis.cols().iter().map(|&c| c + 1).collect(),
        leaving: step.leaving + 1,
        entering: step.entering + 1,
        row: step.row + 1,
        b: strings(&step.rhs),
        reduced_cost: Some(step.reduced_cost.to_string()),
        a: scheme,
    }
}

/// Collect trace lines for a run. When `full` is set, the pivots are replayed
/// from the initial tableau so each line carries the scheme it acted on.
pub fn collect_trace<S: Scalar>(
    initial: &Tableau<S>,
    rule: PivotRule,
    phase1: &Phase1Report<S>,
    phase2: Option<&SimplexRun<S>>,
    tol: &Tolerance,
    full: bool,
) -> Result<Vec<TraceLine>, Error> {
    let mut lines = Vec::new();
    let mut replay = if full { Some(initial.clone()) } else { None };

    for step in &phase1.trace {
        let scheme = replay.as_ref().map(matrix_strings);
        lines.push(phase1_line(step, scheme));
        if let Some(t) = replay.take() {
            replay = Some(match rule {
                PivotRule::Sorted => t.pivot(step.row, step.entering, tol)?,
                PivotRule::Unsorted => t.pivot_unsorted(step.row, step.entering, tol)?,
            });
        }
    }

    if let Some(run) = phase2 {
        for step in &run.trace {
            let scheme = replay.as_ref().map(matrix_strings);
            lines.push(phase2_line(step, scheme));
            if let Some(t) = replay.take() {
                replay = Some(t.pivot(step.row, step.entering, tol)?);
            }
        }
    }
    Ok(lines)
}

#[cfg(test)]
mod tests {
    use super::*;
    use feasolve::phase1::run_phase1;
    use feasolve::{Problem, Rational, Tolerance};

    #[test]
    fn trace_lines_are_one_based_and_carry_the_rhs() {
        let qrow = |vals: &[i64]| -> Vec<Rational> {
            vals.iter().map(|&v| Rational::from_int(v)).collect()
        };
        let p = Problem::new(
            vec![qrow(&[1, 0, -1]), qrow(&[0, 1, 1])],
            qrow(&[-1, 2]),
            qrow(&[0, 0, 0]),
        )
        .unwrap();
        let tol = Tolerance::EXACT;
        let (t, _) = Tableau::initial(&p, &tol).unwrap();
        let report = run_phase1(t.clone(), PivotRule::Sorted, &tol, 100).unwrap();
        let lines = collect_trace(&t, PivotRule::Sorted, &report, None, &tol, true).unwrap();
        assert_eq!(lines.len(), 1);
        let line = &lines[0];
        assert_eq!(line.phase, 1);
        assert_eq!(line.iter, 1);
        assert_eq!(line.basis, vec![1, 2]);
        assert_eq!(line.leaving, 1);
        assert_eq!(line.entering, 3);
        assert_eq!(line.row, 1);
        assert_eq!(line.b, vec!["-1", "2"]);
        assert_eq!(
            line.a.as_ref().unwrap(),
            &vec![vec!["1", "0", "-1"], vec!["0", "1", "1"]]
        );
        let json = serde_json::to_string(line).unwrap();
        assert!(json.starts_with("{\"phase\":1,\"iter\":1,\"basis\":[1,2]"));
    }
}
